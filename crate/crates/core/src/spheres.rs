//! Wirtinger angles and the slant 2-spheres cut out of S⁶ by affine 3-planes.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::calibration::Plane3;
use crate::g2::G2Automorphism;
use crate::octonion::{cross, ImOctonion};
use crate::{Error, Result};

/// Orthonormality tolerance of [`TangentFrame::new`].
pub const FRAME_TOL: f64 = 1e-10;
/// Angles within this of 0 or π/2 are classified as almost complex or totally real.
pub const ANGLE_EPS: f64 = 1e-8;
pub const MIN_SAMPLES: usize = 8;

/// Decision thresholds on the spread of `cos θ` over samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlantThresholds {
    /// Spread below this declares the surface slant.
    pub slant_spread: f64,
    /// Spread above this declares it not slant.
    pub not_slant_spread: f64,
}

impl Default for SlantThresholds {
    fn default() -> Self {
        Self { slant_spread: 1e-9, not_slant_spread: 1e-4 }
    }
}

/// A point of S⁶ with an orthonormal basis of a tangent 2-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentFrame {
    pub p: ImOctonion,
    pub x: ImOctonion,
    pub y: ImOctonion,
}

impl TangentFrame {
    pub fn new(p: ImOctonion, x: ImOctonion, y: ImOctonion) -> Result<Self> {
        for v in [&p, &x, &y] {
            let n = v.norm();
            if (n - 1.0).abs() > FRAME_TOL {
                return Err(Error::NotUnit { norm: n });
            }
        }
        for inner in [p.dot(&x), p.dot(&y)] {
            if inner.abs() > FRAME_TOL {
                return Err(Error::NotTangent { inner });
            }
        }
        let xy = x.dot(&y);
        if xy.abs() > FRAME_TOL {
            return Err(Error::NotOrthonormal { deviation: xy.abs() });
        }
        Ok(Self { p, x, y })
    }

    /// Wirtinger angle in `[0, π/2]`, as `atan2(‖FX‖, |⟨JX, Y⟩|)` where `FX`
    /// is the part of `JX` normal to the plane. Stable near both ends.
    pub fn angle(&self) -> f64 {
        let jx = cross(&self.p, &self.x);
        let t = jx.dot(&self.y);
        let normal = jx - t * self.y;
        normal.norm().atan2(t.abs())
    }
}

/// `|⟨X, p×Y⟩|`.
pub fn wirtinger_cos(f: &TangentFrame) -> f64 {
    f.x.dot(&cross(&f.p, &f.y)).abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    AlmostComplex,
    ProperSlant,
    TotallyReal,
    NotSlant,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::AlmostComplex => "almost_complex",
            Self::ProperSlant => "proper_slant",
            Self::TotallyReal => "totally_real",
            Self::NotSlant => "not_slant",
        }
    }

    pub fn of_angle(angle: f64) -> Self {
        if angle < ANGLE_EPS {
            Self::AlmostComplex
        } else if (angle - FRAC_PI_2).abs() < ANGLE_EPS {
            Self::TotallyReal
        } else {
            Self::ProperSlant
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlantReport {
    pub is_slant: bool,
    pub classification: Classification,
    pub angle_rad: Option<f64>,
    pub cos_angle: Option<f64>,
    /// max − min of `cos θ` over the samples.
    pub spread: f64,
    pub n_samples: usize,
}

impl SlantReport {
    /// Decides slant-ness from per-sample frames.
    pub fn from_frames(frames: &[TangentFrame], thresholds: &SlantThresholds) -> Result<Self> {
        let n = frames.len();
        let cos: Vec<f64> = frames.iter().map(wirtinger_cos).collect();
        let (lo, hi) = cos.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| (lo.min(*c), hi.max(*c)));
        let spread = hi - lo;
        if spread < thresholds.slant_spread {
            let angle = frames.iter().map(TangentFrame::angle).sum::<f64>() / n as f64;
            let cos_angle = cos.iter().sum::<f64>() / n as f64;
            Ok(Self {
                is_slant: true,
                classification: Classification::of_angle(angle),
                angle_rad: Some(angle),
                cos_angle: Some(cos_angle),
                spread,
                n_samples: n,
            })
        } else if spread > thresholds.not_slant_spread {
            Ok(Self {
                is_slant: false,
                classification: Classification::NotSlant,
                angle_rad: None,
                cos_angle: None,
                spread,
                n_samples: n,
            })
        } else {
            Err(Error::Inconclusive { spread })
        }
    }
}

/// `S²_r = (c + π) ∩ S⁶` with `c ⊥ π` and `‖c‖² + r² = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereSection {
    pub plane: Plane3,
    pub radius: f64,
    pub center: ImOctonion,
}

impl SphereSection {
    pub fn new(plane: Plane3, radius: f64, center: ImOctonion) -> Result<Self> {
        if !(radius > 0.0 && radius <= 1.0) {
            return Err(Error::InvalidSection(format!("radius {radius} is outside (0, 1]")));
        }
        for f in plane.frame() {
            let ip = f.dot(&center);
            if ip.abs() > FRAME_TOL {
                return Err(Error::InvalidSection(format!("center is not orthogonal to the plane (inner product {ip:e})")));
            }
        }
        let defect = center.dot(&center) + radius * radius - 1.0;
        if defect.abs() > 1e-12 {
            return Err(Error::InvalidSection(format!("‖c‖² + r² − 1 = {defect:e}")));
        }
        Ok(Self { plane, radius, center })
    }

    pub fn great(plane: Plane3) -> Self {
        Self { plane, radius: 1.0, center: ImOctonion::zero() }
    }

    /// The section with center `√(1−r²)·dir` for a unit `dir ⊥ π`.
    pub fn with_center_direction(plane: Plane3, radius: f64, dir: &ImOctonion) -> Result<Self> {
        Self::new(plane, radius, (1.0 - radius * radius).sqrt() * dir.normalize())
    }

    pub fn transformed(&self, g: &G2Automorphism) -> Self {
        Self { plane: self.plane.transformed(g), radius: self.radius, center: g.apply(&self.center) }
    }

    /// Point and tangent frame at parameters `(z, θ)` of the unit sphere
    /// `u = (√(1−z²)cos θ, √(1−z²)sin θ, z)` in plane coordinates. The tangent
    /// frame is `(∂u/∂θ, ∂u/∂z)` normalized; `|z| < 1` is required.
    pub fn frame_at(&self, z: f64, theta: f64) -> TangentFrame {
        let [f1, f2, f3] = self.plane.frame();
        let rho = (1.0 - z * z).sqrt();
        let (sn, cs) = theta.sin_cos();
        let u = (rho * cs) * *f1 + (rho * sn) * *f2 + z * *f3;
        let x = -sn * *f1 + cs * *f2;
        let y = (-z * cs) * *f1 + (-z * sn) * *f2 + rho * *f3;
        TangentFrame { p: self.center + self.radius * u, x, y }
    }

    /// `n` Fibonacci-lattice frames; deterministic in `n`.
    pub fn fibonacci_frames(&self, n: usize) -> Vec<TangentFrame> {
        let golden = PI * (3.0 - 5f64.sqrt());
        (0..n)
            .map(|k| {
                let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
                self.frame_at(z, golden * k as f64)
            })
            .collect()
    }
}

/// The two admissible centers `±√(1−r²)[π]/‖[π]‖` of slant small spheres.
pub fn slant_center(plane: &Plane3, r: f64) -> Result<[ImOctonion; 2]> {
    if plane.is_associative() {
        return Err(Error::AssociativePlane { phi: plane.phi() });
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!("radius {r} is outside (0, 1)")));
    }
    let dir = plane.associator().normalize();
    let c = (1.0 - r * r).sqrt() * dir;
    // subtraction from zero avoids printing -0
    Ok([c, ImOctonion::zero() - c])
}

fn check_samples(n: usize) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!("need at least {MIN_SAMPLES} samples, got {n}")));
    }
    Ok(())
}

pub fn analyze_great_sphere(plane: &Plane3, n_samples: usize) -> Result<SlantReport> {
    analyze_great_sphere_with(plane, n_samples, &SlantThresholds::default())
}

pub fn analyze_great_sphere_with(plane: &Plane3, n_samples: usize, t: &SlantThresholds) -> Result<SlantReport> {
    check_samples(n_samples)?;
    SlantReport::from_frames(&SphereSection::great(*plane).fibonacci_frames(n_samples), t)
}

pub fn analyze_small_sphere(section: &SphereSection, n_samples: usize) -> Result<SlantReport> {
    analyze_small_sphere_with(section, n_samples, &SlantThresholds::default())
}

/// Radius-one sections are analyzed as great spheres.
pub fn analyze_small_sphere_with(section: &SphereSection, n_samples: usize, t: &SlantThresholds) -> Result<SlantReport> {
    if section.radius == 1.0 {
        return analyze_great_sphere_with(&section.plane, n_samples, t);
    }
    check_samples(n_samples)?;
    SlantReport::from_frames(&section.fibonacci_frames(n_samples), t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calibration::canonical_plane;
    use crate::sampling::Sampler;

    fn e(i: usize) -> ImOctonion {
        ImOctonion::basis(i)
    }

    fn span(i: usize, j: usize, k: usize) -> Plane3 {
        Plane3::from_spanning(&e(i), &e(j), &e(k)).unwrap()
    }

    #[test]
    fn wirtinger_examples() {
        assert_eq!(wirtinger_cos(&TangentFrame::new(e(1), e(2), e(3)).unwrap()), 1.0);
        assert_eq!(wirtinger_cos(&TangentFrame::new(e(1), e(2), e(5)).unwrap()), 0.0);
        assert!(matches!(TangentFrame::new(e(1), e(1), e(2)), Err(Error::NotTangent { .. })));
    }

    #[test]
    fn wirtinger_is_rotation_invariant() {
        let mut s = Sampler::new(31);
        for _ in 0..500 {
            let p = s.unit_im();
            let x = s.tangent_at(&p);
            let y = s.unit_orthogonal(&[p, x]);
            let f = TangentFrame::new(p, x, y).unwrap();
            let a = s.uniform(0.0, 2.0 * PI);
            let (sn, cs) = a.sin_cos();
            let g = TangentFrame::new(p, cs * x + sn * y, -sn * x + cs * y).unwrap();
            assert!((wirtinger_cos(&f) - wirtinger_cos(&g)).abs() < 1e-12);
            assert!((f.angle().cos() - wirtinger_cos(&f)).abs() < 1e-12);
        }
    }

    #[test]
    fn great_sphere_examples() {
        let r = analyze_great_sphere(&span(1, 2, 3), 32).unwrap();
        assert_eq!(r.classification, Classification::AlmostComplex);
        assert!(r.angle_rad.unwrap() < 1e-12);
        let r = analyze_great_sphere(&span(1, 2, 7), 32).unwrap();
        assert_eq!(r.classification, Classification::TotallyReal);
        let p = Plane3::from_spanning(&e(1), &e(2), &(e(3) - e(7))).unwrap();
        let r = analyze_great_sphere(&p, 32).unwrap();
        assert_eq!(r.classification, Classification::ProperSlant);
        assert!((r.angle_rad.unwrap() - PI / 4.0).abs() < 1e-12);
        assert!(analyze_great_sphere(&p, 4).is_err());
    }

    #[test]
    fn center_examples() {
        let h = 3f64.sqrt() / 2.0;
        let [c1, c2] = slant_center(&span(1, 2, 7), 0.5).unwrap();
        assert!((c1 - h * -e(4)).max_abs() < 1e-15 && (c2 - h * e(4)).max_abs() < 1e-15);
        let [c1, _] = slant_center(&span(1, 2, 4), 0.5).unwrap();
        assert!((c1 - h * e(7)).max_abs() < 1e-15);
        assert!(matches!(slant_center(&span(1, 2, 3), 0.5), Err(Error::AssociativePlane { .. })));
    }

    #[test]
    fn small_sphere_examples() {
        let h = 3f64.sqrt() / 2.0;
        let s = SphereSection::new(span(1, 2, 3), 0.5, h * e(7)).unwrap();
        let r = analyze_small_sphere(&s, 64).unwrap();
        assert!(r.is_slant && (r.angle_rad.unwrap() - PI / 3.0).abs() < 1e-12);
        let s = SphereSection::new(span(1, 2, 7), 0.5, -h * e(4)).unwrap();
        let r = analyze_small_sphere(&s, 64).unwrap();
        assert_eq!(r.classification, Classification::TotallyReal);
        let s = SphereSection::new(span(1, 2, 7), 0.5, h * e(5)).unwrap();
        let r = analyze_small_sphere(&s, 64).unwrap();
        assert!(!r.is_slant && r.spread > 0.01);
        assert!(SphereSection::new(span(1, 2, 7), 0.5, e(5)).is_err());
        assert!(SphereSection::new(span(1, 2, 7), 0.5, h * e(1)).is_err());
    }

    #[test]
    fn radius_one_routes_to_great_sphere() {
        let s = SphereSection::new(canonical_plane(0.3), 1.0, ImOctonion::zero()).unwrap();
        let a = analyze_small_sphere(&s, 32).unwrap();
        let b = analyze_great_sphere(&canonical_plane(0.3), 32).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sample_frames_are_valid() {
        let mut s = Sampler::new(32);
        let plane = s.plane();
        let dir = plane.complement()[0];
        let sec = SphereSection::with_center_direction(plane, 0.4, &dir).unwrap();
        for f in sec.fibonacci_frames(100) {
            TangentFrame::new(f.p, f.x, f.y).unwrap();
        }
    }

    #[test]
    fn report_json_keys() {
        let r = analyze_great_sphere(&span(1, 2, 7), 16).unwrap();
        let v = serde_json::to_value(r).unwrap();
        for k in ["is_slant", "classification", "angle_rad", "cos_angle", "spread", "n_samples"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert_eq!(v["classification"], "totally_real");
    }
}
