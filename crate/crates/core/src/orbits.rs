//! Orbits of the maximal torus of G₂ on S⁶.
//!
//! Points are written `p = (x1, x2, x3, y0, y1, y2, y3)` in the basis
//! `e1, …, e7`. The torus fixes `x1` and rotates the pairs `(x2, x3)`,
//! `(y0, y1)`, `(y2, y3)`; every two-dimensional orbit is a flat torus in the
//! hyperplane `x1 = const`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use serde::Serialize;

use crate::g2::{cartan_generators, torus_flow, ParameterConvention, PARAMETER_CONVENTION};
use crate::linalg::{apply, gram_schmidt, Matrix2, Matrix7};
use crate::octonion::{cross, ImOctonion};
use crate::{Error, Result};

/// `min(α, β, γ)` must exceed this for the orbit to be two-dimensional.
pub const REGULARITY_TOL: f64 = 1e-10;
pub const UNIT_TOL: f64 = 1e-12;
pub const SLICE_TOL: f64 = 1e-12;
pub const DENOMINATOR_TOL: f64 = 1e-12;
/// Singular values above this count towards the affine dimension.
pub const RANK_TOL: f64 = 1e-8;
pub const MIN_FULLNESS_SAMPLES: usize = 50;

/// A unit vector of Im O with its cached regularity sums.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrbitPoint {
    coords: [f64; 7],
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl OrbitPoint {
    /// Rejects points off the unit sphere by more than [`UNIT_TOL`].
    pub fn new(coords: [f64; 7]) -> Result<Self> {
        let norm = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self::new_unchecked(coords))
    }

    /// Normalizes the input first; rejects the zero vector.
    pub fn normalized(coords: [f64; 7]) -> Result<Self> {
        let norm = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self::new_unchecked(coords.map(|x| x / norm)))
    }

    fn new_unchecked(c: [f64; 7]) -> Self {
        let [_, x2, x3, y0, y1, y2, y3] = c;
        Self {
            coords: c,
            alpha: x2 * x2 + x3 * x3 + y0 * y0 + y1 * y1,
            beta: x2 * x2 + x3 * x3 + y2 * y2 + y3 * y3,
            gamma: y0 * y0 + y1 * y1 + y2 * y2 + y3 * y3,
        }
    }

    pub fn from_im(v: &ImOctonion) -> Result<Self> {
        Self::new(v.coords())
    }

    pub fn coords(&self) -> [f64; 7] {
        self.coords
    }

    pub fn im(&self) -> ImOctonion {
        ImOctonion::from_coords(self.coords)
    }

    pub fn x1(&self) -> f64 {
        self.coords[0]
    }

    pub fn regularity(&self) -> Regularity {
        Regularity {
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma,
            is_regular: self.alpha.min(self.beta).min(self.gamma) > REGULARITY_TOL,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.regularity().is_regular
    }

    fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::NonRegular { alpha: self.alpha, beta: self.beta, gamma: self.gamma })
        }
    }

    /// Squared moduli `(|z1|², |z2|², |z3|²)` of `z1 = x2 + i x3`,
    /// `z2 = y0 + i y1`, `z3 = y2 + i y3`, the torus invariants besides `x1`.
    pub fn moduli(&self) -> [f64; 3] {
        let [_, x2, x3, y0, y1, y2, y3] = self.coords;
        [x2 * x2 + x3 * x3, y0 * y0 + y1 * y1, y2 * y2 + y3 * y3]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Regularity {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub is_regular: bool,
}

pub fn regularity(p: &OrbitPoint) -> Regularity {
    p.regularity()
}

/// Orientation of the `(y0, y1)` rotation under the second torus parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowSign {
    /// The G₂ torus: `(e2,e3)` by `t`, `(e4,e5)` by `s`, `(e6,e7)` by `t + s`.
    G2,
    /// `(e4,e5)` rotated by `−s` instead; not a subgroup of G₂.
    FlippedY0Y1,
}

impl FlowSign {
    /// Angles of the `(e2,e3)`, `(e4,e5)`, `(e6,e7)` rotations per unit `t` and `s`.
    fn weights(self) -> [[f64; 2]; 3] {
        match self {
            Self::G2 => [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]],
            Self::FlippedY0Y1 => [[1.0, 0.0], [0.0, -1.0], [1.0, 1.0]],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::G2 => "g2",
            Self::FlippedY0Y1 => "flipped_y0y1",
        }
    }

    /// Generators `(A, B)` of the flow.
    pub fn generators(self) -> (Matrix7, Matrix7) {
        match self {
            Self::G2 => {
                let (a, b) = cartan_generators();
                (a.0, b.0)
            }
            Self::FlippedY0Y1 => {
                let w = self.weights();
                let gen = |k: usize| {
                    let mut m = Matrix7::zeros();
                    for (plane, wk) in w.iter().enumerate() {
                        let (i, j) = (2 * plane + 1, 2 * plane + 2);
                        m[(j, i)] = wk[k];
                        m[(i, j)] = -wk[k];
                    }
                    m
                };
                (gen(0), gen(1))
            }
        }
    }

    /// `exp(tA + sB)`.
    pub fn flow(self, t: f64, s: f64) -> Matrix7 {
        match self {
            Self::G2 => *torus_flow(t, s).matrix(),
            Self::FlippedY0Y1 => {
                let mut m = Matrix7::identity();
                for (plane, [wt, ws]) in self.weights().iter().enumerate() {
                    let (sn, cs) = (wt * t + ws * s).sin_cos();
                    let (i, j) = (2 * plane + 1, 2 * plane + 2);
                    m[(i, i)] = cs;
                    m[(j, j)] = cs;
                    m[(j, i)] = sn;
                    m[(i, j)] = -sn;
                }
                m
            }
        }
    }
}

/// `g_{t,s}·p` under the G₂ torus.
pub fn act(p: &OrbitPoint, t: f64, s: f64) -> OrbitPoint {
    OrbitPoint::new_unchecked(torus_flow(t, s).apply(&p.im()).coords())
}

/// Tangent data of an orbit at `p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrbitTangents {
    /// `∂_t (g_{t,s} p)` at the origin.
    pub x_bar: ImOctonion,
    /// `∂_s (g_{t,s} p)` at the origin.
    pub y_bar: ImOctonion,
    /// Gram–Schmidt orthonormalization of `(x_bar, y_bar)`.
    pub x: ImOctonion,
    pub y: ImOctonion,
}

pub fn tangent_frame(p: &OrbitPoint) -> Result<OrbitTangents> {
    tangent_frame_for(p, FlowSign::G2)
}

pub fn tangent_frame_for(p: &OrbitPoint, sign: FlowSign) -> Result<OrbitTangents> {
    p.require_regular()?;
    let (a, b) = sign.generators();
    let v = p.im();
    let (x_bar, y_bar) = (apply(&a, &v), apply(&b, &v));
    let q = gram_schmidt(&[x_bar, y_bar], 0.0)
        .ok_or(Error::NonRegular { alpha: p.alpha, beta: p.beta, gamma: p.gamma })?;
    Ok(OrbitTangents { x_bar, y_bar, x: q[0], y: q[1] })
}

/// The displayed vectors `(0,−x3,x2,0,0,y3,−y2)` and `(0,0,0,−y1,y0,−y3,y2)`.
/// The first is not tangent to any G₂-torus orbit in general; the flow
/// tangent has `(−y3, y2)` in its last two slots.
pub fn printed_tangents(p: &OrbitPoint) -> (ImOctonion, ImOctonion) {
    let [_, x2, x3, y0, y1, y2, y3] = p.coords;
    (
        ImOctonion::from_coords([0.0, -x3, x2, 0.0, 0.0, y3, -y2]),
        ImOctonion::from_coords([0.0, 0.0, 0.0, -y1, y0, -y3, y2]),
    )
}

/// `|⟨X, p×Y⟩|` for the orthonormalized flow tangents.
pub fn orbit_slant_cos(p: &OrbitPoint) -> Result<f64> {
    orbit_slant_cos_for(p, FlowSign::G2)
}

pub fn orbit_slant_cos_for(p: &OrbitPoint, sign: FlowSign) -> Result<f64> {
    let f = tangent_frame_for(p, sign)?;
    Ok(f.x.dot(&cross(&p.im(), &f.y)).abs().min(1.0))
}

/// `√(αβ − (x2² + x3²)²)`, equal to `√(uv + uw + vw)` in the moduli.
fn slant_denominator(p: &OrbitPoint) -> f64 {
    let [_, x2, x3, ..] = p.coords;
    let r = x2 * x2 + x3 * x3;
    (p.alpha * p.beta - r * r).max(0.0).sqrt()
}

/// `|x3y1y2 − x2y0y2 − x2y1y3 − x3y0y3| / √(αβ − (x2²+x3²)²)`.
pub fn printed_slant_cos(p: &OrbitPoint) -> Result<f64> {
    p.require_regular()?;
    let [_, x2, x3, y0, y1, y2, y3] = p.coords;
    let num = x3 * y1 * y2 - x2 * y0 * y2 - x2 * y1 * y3 - x3 * y0 * y3;
    Ok(num.abs() / slant_denominator(p))
}

/// Closed form of [`orbit_slant_cos`]: three times [`printed_slant_cos`].
pub fn corrected_slant_cos(p: &OrbitPoint) -> Result<f64> {
    Ok((3.0 * printed_slant_cos(p)?).min(1.0))
}

/// Coordinates on the slice `x2 = y0 = 0`: `x1`, `a`, `b` in `[−π/2, π/2]`
/// and `c` in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrbitParam {
    pub x1: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// `x3 = R sin a cos b`, `y1 = R sin b`, `y2 = R cos a sin c cos b`,
/// `y3 = R cos a cos c cos b` with `R = √(1 − x1²)`.
pub fn param_to_point(q: &OrbitParam) -> OrbitPoint {
    let r = (1.0 - q.x1 * q.x1).max(0.0).sqrt();
    let (sa, ca) = q.a.sin_cos();
    let (sb, cb) = q.b.sin_cos();
    let (sc, cc) = q.c.sin_cos();
    let coords = [q.x1, 0.0, r * sa * cb, 0.0, r * sb, r * ca * sc * cb, r * ca * cc * cb];
    OrbitPoint::new(coords).expect("parameterization is unit by construction")
}

/// The displayed closed form
/// `sin 2b sin 2a / (2√(4 sin²b + cos²b sin²2a)) · √(1−x1²) · sin c`.
/// Returns 0 when `x1 = ±1` (vanishing factor); other non-regular images are rejected.
pub fn slant_cos_param(q: &OrbitParam) -> Result<f64> {
    let r = (1.0 - q.x1 * q.x1).max(0.0).sqrt();
    if r == 0.0 {
        return Ok(0.0);
    }
    param_to_point(q).require_regular()?;
    let (s2a, s2b) = ((2.0 * q.a).sin(), (2.0 * q.b).sin());
    let (sb, cb) = q.b.sin_cos();
    let den = 2.0 * (4.0 * sb * sb + cb * cb * s2a * s2a).sqrt();
    Ok(s2b * s2a / den * r * q.c.sin())
}

/// `(1/√3)(0, 0, 1, 0, 1, cos c, sin c)`.
pub fn minimal_family_point(c: f64) -> OrbitPoint {
    let k = 1.0 / 3f64.sqrt();
    let (s, co) = c.sin_cos();
    OrbitPoint::new([0.0, 0.0, k, 0.0, k, k * co, k * s]).expect("unit by construction")
}

/// The displayed mean-curvature formula at a slice point
/// `(x1, 0, x3, 0, y1, y2, y3)`:
/// `(2x1, 0, N(x3,y1)/D, 0, N(y1,x3)/D, y2(2 − (x3²+y1²)/D), y3(2 − (x3²+y1²)/D))`
/// with `D = (y1²+y2²+y3²)x3² + y1²(y2²+y3²)` and
/// `N(u, v) = u((2u²+2y2²+2y3²−1)v² + (2u²−1)(y2²+y3²))`.
pub fn printed_mean_curvature(p: &OrbitPoint) -> Result<ImOctonion> {
    let [x1, x2, x3, y0, y1, y2, y3] = p.coords;
    if x2.abs() > SLICE_TOL || y0.abs() > SLICE_TOL {
        return Err(Error::NotOnSlice { x2, y0 });
    }
    let w = y2 * y2 + y3 * y3;
    let d = (y1 * y1 + w) * x3 * x3 + y1 * y1 * w;
    if d <= DENOMINATOR_TOL {
        return Err(Error::DegenerateDenominator { value: d });
    }
    let n = |u: f64, v: f64| u * ((2.0 * u * u + 2.0 * w - 1.0) * v * v + (2.0 * u * u - 1.0) * w);
    let k = 2.0 - (x3 * x3 + y1 * y1) / d;
    Ok(ImOctonion::from_coords([2.0 * x1, 0.0, n(x3, y1) / d, 0.0, n(y1, x3) / d, y2 * k, y3 * k]))
}

/// The torus element `(t, s)` carrying `p` to the slice `x2 = y0 = 0` with
/// `x3, y1 ≥ 0`, and the image point.
pub fn move_to_slice(p: &OrbitPoint) -> (f64, f64, OrbitPoint) {
    let [_, x2, x3, y0, y1, ..] = p.coords;
    let t = x2.atan2(x3);
    let s = y0.atan2(y1);
    let mut q = act(p, t, s).coords;
    // the rotation leaves rounding-level residue in the zeroed slots
    q[1] = 0.0;
    q[3] = 0.0;
    (t, s, OrbitPoint::new_unchecked(q))
}

/// Intrinsic and extrinsic geometry of an orbit at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitGeometry {
    pub point: OrbitPoint,
    /// First fundamental form in `(t, s)`.
    pub metric: Matrix2,
    /// `h11, h12, h22`: normal parts (in S⁶) of the second derivatives.
    pub second_ff: [ImOctonion; 3],
    pub gauss_k: f64,
    /// `g^{ij} h_ij`.
    pub mean_h: ImOctonion,
    pub slant_cos: f64,
    pub sign: FlowSign,
}

impl OrbitGeometry {
    pub fn mean_h_norm(&self) -> f64 {
        self.mean_h.norm()
    }

    pub fn slant_angle(&self) -> f64 {
        self.slant_cos.clamp(0.0, 1.0).acos()
    }

    pub fn convention(&self) -> String {
        let param = match PARAMETER_CONVENTION {
            ParameterConvention::Full => "full",
            ParameterConvention::Half => "half",
        };
        format!("{}/{}-angle", self.sign.label(), param)
    }
}

impl Serialize for OrbitGeometry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let metric = [[self.metric[(0, 0)], self.metric[(0, 1)]], [self.metric[(1, 0)], self.metric[(1, 1)]]];
        let mut st = s.serialize_struct("OrbitGeometry", 8)?;
        st.serialize_field("point", &self.point.coords)?;
        st.serialize_field("metric", &metric)?;
        st.serialize_field("K", &self.gauss_k)?;
        st.serialize_field("H", &self.mean_h)?;
        st.serialize_field("H_norm", &self.mean_h_norm())?;
        st.serialize_field("slant_cos", &self.slant_cos)?;
        st.serialize_field("slant_angle_rad", &self.slant_angle())?;
        st.serialize_field("convention", &self.convention())?;
        st.end()
    }
}

pub fn orbit_geometry(p: &OrbitPoint) -> Result<OrbitGeometry> {
    orbit_geometry_for(p, FlowSign::G2)
}

/// Geometry of `r(t, s) = exp(tA + sB)p` at the origin. `A` and `B` commute,
/// so `r_tt = A²p`, `r_ts = ABp`, `r_ss = B²p`.
pub fn orbit_geometry_for(p: &OrbitPoint, sign: FlowSign) -> Result<OrbitGeometry> {
    let tangents = tangent_frame_for(p, sign)?;
    let (a, b) = sign.generators();
    let v = p.im();
    let (ra, rb) = (tangents.x_bar, tangents.y_bar);
    let metric = Matrix2::new(ra.dot(&ra), ra.dot(&rb), rb.dot(&ra), rb.dot(&rb));
    let basis = [v, tangents.x, tangents.y];
    let normal = |w: ImOctonion| basis.iter().fold(w, |acc, e| acc - acc.dot(e) * *e);
    let h = [normal(apply(&(a * a), &v)), normal(apply(&(a * b), &v)), normal(apply(&(b * b), &v))];
    let det = metric.determinant();
    let gauss_k = 1.0 + (h[0].dot(&h[2]) - h[1].dot(&h[1])) / det;
    let inv = metric.try_inverse().expect("regular orbit has a nondegenerate metric");
    let mean_h = inv[(0, 0)] * h[0] + (inv[(0, 1)] + inv[(1, 0)]) * h[1] + inv[(1, 1)] * h[2];
    let slant_cos = tangents.x.dot(&cross(&v, &tangents.y)).abs().min(1.0);
    Ok(OrbitGeometry { point: *p, metric, second_ff: h, gauss_k, mean_h, slant_cos, sign })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fullness {
    pub ambient_dim: usize,
    pub n_samples: usize,
}

/// Affine dimension of the orbit sampled on an `m × m` grid of `(t, s)`
/// with `m² ≥ n_samples`, and the common `x1` coordinate.
pub fn linear_fullness(p: &OrbitPoint, n_samples: usize) -> Result<(Fullness, f64)> {
    if n_samples < MIN_FULLNESS_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_FULLNESS_SAMPLES} samples, got {n_samples}"
        )));
    }
    let m = (n_samples as f64).sqrt().ceil() as usize;
    let n = m * m;
    let v = p.im();
    let pts: Vec<ImOctonion> = (0..n)
        .map(|k| {
            let (t, s) = (2.0 * PI * (k / m) as f64 / m as f64, 2.0 * PI * (k % m) as f64 / m as f64);
            torus_flow(t, s).apply(&v)
        })
        .collect();
    let mean = pts.iter().fold(ImOctonion::zero(), |acc, q| acc + *q);
    let mean = (1.0 / n as f64) * mean;
    let cloud = nalgebra::DMatrix::<f64>::from_fn(7, n, |i, j| (pts[j].0[i] - mean.0[i]) / (n as f64).sqrt());
    let dim = cloud.singular_values().iter().filter(|sv| **sv > RANK_TOL).count();
    let offset = pts[0][0];
    debug_assert!(pts.iter().all(|q| q[0] == offset));
    Ok((Fullness { ambient_dim: dim, n_samples: n }, offset))
}

/// One axis of a scan grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisSpec {
    /// `n` nodes `lo + k(hi − lo)/n`, `k = 0..n` (closed-open).
    Lattice { lo: f64, hi: f64, n: usize },
    Values(Vec<f64>),
}

impl AxisSpec {
    pub fn nodes(&self) -> Vec<f64> {
        match self {
            Self::Lattice { lo, hi, n } => (0..*n).map(|k| lo + (hi - lo) * k as f64 / *n as f64).collect(),
            Self::Values(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanGrid {
    pub x1: AxisSpec,
    pub a: AxisSpec,
    pub b: AxisSpec,
    pub c: AxisSpec,
}

impl ScanGrid {
    /// The full parameter box with `n` nodes per axis.
    pub fn uniform(n: usize) -> Self {
        Self {
            x1: AxisSpec::Lattice { lo: -1.0, hi: 1.0, n },
            a: AxisSpec::Lattice { lo: -FRAC_PI_2, hi: FRAC_PI_2, n },
            b: AxisSpec::Lattice { lo: -FRAC_PI_2, hi: FRAC_PI_2, n },
            c: AxisSpec::Lattice { lo: 0.0, hi: 2.0 * PI, n },
        }
    }
}

impl Default for ScanGrid {
    fn default() -> Self {
        Self::uniform(32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub param: OrbitParam,
    /// First-principles slant cosine; 0 for non-regular nodes.
    pub slant_cos: f64,
    pub slant_angle_rad: f64,
    /// NaN for non-regular nodes.
    pub mean_h_norm: f64,
    /// NaN for non-regular nodes.
    pub gauss_k: f64,
    pub regular: bool,
}

fn scan_row(q: OrbitParam) -> ScanRow {
    let p = param_to_point(&q);
    match orbit_geometry(&p) {
        Ok(g) => ScanRow {
            param: q,
            slant_cos: g.slant_cos,
            slant_angle_rad: g.slant_angle(),
            mean_h_norm: g.mean_h_norm(),
            gauss_k: g.gauss_k,
            regular: true,
        },
        Err(_) => ScanRow {
            param: q,
            slant_cos: 0.0,
            slant_angle_rad: FRAC_PI_2,
            mean_h_norm: f64::NAN,
            gauss_k: f64::NAN,
            regular: false,
        },
    }
}

/// Row-major scan (`x1` slowest, `c` fastest).
pub fn slant_scan(grid: &ScanGrid) -> Vec<ScanRow> {
    let (xs, as_, bs, cs) = (grid.x1.nodes(), grid.a.nodes(), grid.b.nodes(), grid.c.nodes());
    let mut rows = Vec::with_capacity(xs.len() * as_.len() * bs.len() * cs.len());
    for &x1 in &xs {
        for &a in &as_ {
            for &b in &bs {
                for &c in &cs {
                    rows.push(scan_row(OrbitParam { x1, a, b, c }));
                }
            }
        }
    }
    rows
}

/// Number of width-0.01 bins covering `[0, 1/3]`.
pub const BIN_COUNT: usize = 34;
pub const BIN_WIDTH: f64 = 0.01;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanSummary {
    pub n_rows: usize,
    pub n_regular: usize,
    pub max_slant_cos: f64,
    pub argmax: Option<OrbitParam>,
    pub min_slant_cos: f64,
    /// Regular rows with `slant_cos > 1/3 + 1e−9`.
    pub above_one_third: usize,
    /// Occupancy of `[k·0.01, (k+1)·0.01)`, the last bin closed at 1/3.
    pub bins: Vec<usize>,
    pub all_bins_populated: bool,
    pub max_abs_gauss_k: f64,
    pub min_mean_h_norm: f64,
}

/// Bin index in `[0, 1/3]`, or `None` above it.
pub fn bin_of(c: f64) -> Option<usize> {
    if !(0.0..=1.0 / 3.0).contains(&c) {
        return None;
    }
    Some(((c / BIN_WIDTH) as usize).min(BIN_COUNT - 1))
}

pub fn summarize<'a>(values: impl IntoIterator<Item = &'a ScanRow>) -> ScanSummary {
    let mut s = ScanSummary {
        n_rows: 0,
        n_regular: 0,
        max_slant_cos: f64::NEG_INFINITY,
        argmax: None,
        min_slant_cos: f64::INFINITY,
        above_one_third: 0,
        bins: vec![0; BIN_COUNT],
        all_bins_populated: false,
        max_abs_gauss_k: 0.0,
        min_mean_h_norm: f64::INFINITY,
    };
    for r in values {
        s.n_rows += 1;
        if !r.regular {
            continue;
        }
        s.n_regular += 1;
        if r.slant_cos > s.max_slant_cos {
            s.max_slant_cos = r.slant_cos;
            s.argmax = Some(r.param);
        }
        s.min_slant_cos = s.min_slant_cos.min(r.slant_cos);
        if r.slant_cos > 1.0 / 3.0 + 1e-9 {
            s.above_one_third += 1;
        }
        if let Some(k) = bin_of(r.slant_cos) {
            s.bins[k] += 1;
        }
        s.max_abs_gauss_k = s.max_abs_gauss_k.max(r.gauss_k.abs());
        s.min_mean_h_norm = s.min_mean_h_norm.min(r.mean_h_norm);
    }
    s.all_bins_populated = s.bins.iter().all(|&n| n > 0);
    s
}

pub const CSV_HEADER: &str = "x1,a,b,c,slant_cos,slant_angle_rad,mean_H_norm,gauss_K,regular";

/// CSV with 17 significant digits, `\n` line ends.
pub fn rows_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 200 + 80);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let q = r.param;
        for v in [q.x1, q.a, q.b, q.c, r.slant_cos, r.slant_angle_rad, r.mean_h_norm, r.gauss_k] {
            let _ = write!(out, "{v:.16e},");
        }
        out.push_str(if r.regular { "1\n" } else { "0\n" });
    }
    out
}
