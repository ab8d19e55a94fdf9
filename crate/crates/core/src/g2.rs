//! The Lie algebra g₂ as derivations of O, automorphisms built from basic
//! triples, and the maximal-torus flow fixing `e1`.
//!
//! Matrices act on column coordinate vectors of Im O in the basis `e1, …, e7`
//! (row/column index `k` ↔ `e_{k+1}`).

use nalgebra::Matrix2;
use serde::Serialize;

use crate::linalg::{apply, rows7, Matrix7};
use crate::octonion::{ImOctonion, Octonion};
use crate::structure::{basis_product, IntOctonion};
use crate::{Error, Result};

/// Tolerance of [`is_automorphism`].
pub const AUTOMORPHISM_TOL: f64 = 1e-10;
/// Tolerance of the floating-point path of [`is_derivation`].
pub const DERIVATION_TOL: f64 = 1e-12;
/// Tolerance of the basic-triple preconditions.
pub const BASIC_TRIPLE_TOL: f64 = 1e-8;

/// How the torus parameters `(t, s)` relate to the half-normalized
/// generators `E_[i,j] = (E_ij − E_ji)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParameterConvention {
    /// `exp(t·X)` with `X` a sum of `E_[i,j]` rotates each plane by `t/2`.
    Half,
    /// The generators are doubled so that `torus_flow(t, 0)` rotates the
    /// `(e2, e3)` plane by exactly `t`.
    Full,
}

pub const PARAMETER_CONVENTION: ParameterConvention = ParameterConvention::Full;

/// Element of so(7).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct So7Matrix(pub Matrix7);

impl So7Matrix {
    pub fn zero() -> Self {
        Self(Matrix7::zeros())
    }

    /// `E_[i,j] = (E_ij − E_ji)/2` with 1-based indices; `E_[j,i] = −E_[i,j]`.
    pub fn unit(i: usize, j: usize) -> Self {
        assert!(i != j && (1..=7).contains(&i) && (1..=7).contains(&j));
        let mut m = Matrix7::zeros();
        m[(i - 1, j - 1)] = 0.5;
        m[(j - 1, i - 1)] = -0.5;
        Self(m)
    }

    /// Sum of `E_[i,j]` over the listed index pairs.
    pub fn from_terms(terms: &[(usize, usize)]) -> Self {
        terms.iter().fold(Self::zero(), |acc, &(i, j)| Self(acc.0 + Self::unit(i, j).0))
    }

    pub fn skew_residual(&self) -> f64 {
        (self.0 + self.0.transpose()).amax()
    }

    pub fn scale(&self, k: f64) -> Self {
        Self(self.0 * k)
    }

    pub fn exp(&self) -> Matrix7 {
        self.0.exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivationCheck {
    pub passes: bool,
    /// Largest coordinate of `D(xy) − D(x)y − xD(y)` over basis pairs.
    pub residual: f64,
    /// Whether the decision was made in integer arithmetic.
    pub exact: bool,
}

/// Leibniz test `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)` over the 21 unordered
/// imaginary basis pairs. Matrices with half-integer entries are checked in
/// exact integer arithmetic after doubling.
pub fn is_derivation(d: &So7Matrix) -> DerivationCheck {
    let doubled = d.0 * 2.0;
    let integral = doubled.iter().all(|x| x.fract() == 0.0 && x.abs() < 1e12);
    if integral {
        let m: [[i64; 7]; 7] = std::array::from_fn(|i| std::array::from_fn(|j| doubled[(i, j)] as i64));
        let apply_int = |k: usize| -> IntOctonion {
            // image of e_k (1-based) under the doubled matrix
            let mut c = [0i64; 8];
            for (row, slot) in c[1..].iter_mut().enumerate() {
                *slot = m[row][k - 1];
            }
            IntOctonion(c)
        };
        let mut worst = 0i64;
        for i in 1..8 {
            for j in (i + 1)..8 {
                let p = basis_product(i, j);
                let lhs = i64::from(p.sign) * apply_int(p.index);
                let rhs = apply_int(i) * IntOctonion::basis(j) + IntOctonion::basis(i) * apply_int(j);
                let diff = lhs - rhs;
                worst = worst.max(diff.0.iter().map(|x| x.abs()).max().unwrap_or(0));
            }
        }
        DerivationCheck { passes: worst == 0, residual: worst as f64 / 2.0, exact: true }
    } else {
        let mut worst: f64 = 0.0;
        for i in 1..8 {
            for j in (i + 1)..8 {
                let (ei, ej) = (ImOctonion::basis(i), ImOctonion::basis(j));
                let p = basis_product(i, j);
                let lhs: Octonion = (f64::from(p.sign) * apply(&d.0, &ImOctonion::basis(p.index))).into();
                let rhs = apply(&d.0, &ei).mul_full(&ej) + ei.mul_full(&apply(&d.0, &ej));
                worst = worst.max((lhs - rhs).max_abs());
            }
        }
        DerivationCheck { passes: worst < DERIVATION_TOL, residual: worst, exact: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorAudit {
    pub name: &'static str,
    /// Index pairs `(i, j)` of the summed `E_[i,j]` as printed.
    pub terms: Vec<(usize, usize)>,
    pub passes: bool,
    pub residual: f64,
    /// Verdict when every `E_[i,j]` with `i > j` is read as `E_[j,i]`.
    pub passes_index_sorted: bool,
}

/// The fourteen printed combinations `P0…P6, Q0…Q6` of `E_[i,j]`.
pub const PRINTED_G2_BASIS: [(&str, [(usize, usize); 2]); 14] = [
    ("P0", [(3, 2), (6, 7)]),
    ("Q0", [(4, 5), (6, 7)]),
    ("P1", [(1, 3), (5, 7)]),
    ("Q1", [(6, 4), (5, 7)]),
    ("P2", [(2, 1), (7, 4)]),
    ("Q2", [(6, 5), (7, 4)]),
    ("P3", [(1, 4), (7, 2)]),
    ("Q3", [(3, 6), (7, 2)]),
    ("P4", [(5, 1), (3, 7)]),
    ("Q4", [(2, 6), (3, 7)]),
    ("P5", [(1, 7), (3, 5)]),
    ("Q5", [(4, 2), (3, 5)]),
    ("P6", [(6, 1), (1, 3)]),
    ("Q6", [(5, 2), (1, 3)]),
];

/// The printed generators as matrices, in [`PRINTED_G2_BASIS`] order.
pub fn g2_standard_basis() -> Vec<(&'static str, So7Matrix)> {
    PRINTED_G2_BASIS
        .iter()
        .map(|(name, terms)| (*name, So7Matrix::from_terms(terms)))
        .collect()
}

/// Derivation test of every printed generator.
pub fn derivation_audit() -> Vec<GeneratorAudit> {
    PRINTED_G2_BASIS
        .iter()
        .map(|(name, terms)| {
            let check = is_derivation(&So7Matrix::from_terms(terms));
            let sorted: Vec<(usize, usize)> = terms.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
            GeneratorAudit {
                name,
                terms: terms.to_vec(),
                passes: check.passes,
                residual: check.residual,
                passes_index_sorted: is_derivation(&So7Matrix::from_terms(&sorted)).passes,
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AutomorphismCheck {
    pub passes: bool,
    pub orthogonality_residual: f64,
    pub product_residual: f64,
}

impl AutomorphismCheck {
    pub fn residual(&self) -> f64 {
        self.orthogonality_residual.max(self.product_residual)
    }
}

/// Orthogonality and `M(e_i)·M(e_j) = M(e_i e_j)` on all 49 imaginary pairs.
pub fn is_automorphism(m: &Matrix7) -> AutomorphismCheck {
    let orth = (m.transpose() * m - Matrix7::identity()).amax();
    let images: Vec<Octonion> = (1..8).map(|k| apply(m, &ImOctonion::basis(k)).into()).collect();
    let mut worst: f64 = 0.0;
    for i in 1..8 {
        for j in 1..8 {
            let p = basis_product(i, j);
            let expected = if p.index == 0 {
                f64::from(p.sign) * Octonion::ONE
            } else {
                f64::from(p.sign) * images[p.index - 1]
            };
            worst = worst.max((images[i - 1] * images[j - 1] - expected).max_abs());
        }
    }
    AutomorphismCheck {
        passes: orth < AUTOMORPHISM_TOL && worst < AUTOMORPHISM_TOL,
        orthogonality_residual: orth,
        product_residual: worst,
    }
}

/// Element of G₂ ⊂ SO(7) acting on Im O.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct G2Automorphism {
    matrix: Matrix7,
}

impl G2Automorphism {
    pub fn identity() -> Self {
        Self { matrix: Matrix7::identity() }
    }

    /// Wraps a matrix after checking it with [`is_automorphism`].
    pub fn try_from_matrix(matrix: Matrix7) -> Result<Self> {
        let check = is_automorphism(&matrix);
        if check.passes {
            Ok(Self { matrix })
        } else {
            Err(Error::InvalidArgument(format!(
                "matrix is not an octonion automorphism (residual {:e})",
                check.residual()
            )))
        }
    }

    pub(crate) fn from_matrix_unchecked(matrix: Matrix7) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix7 {
        &self.matrix
    }

    pub fn apply(&self, v: &ImOctonion) -> ImOctonion {
        apply(&self.matrix, v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &G2Automorphism) -> G2Automorphism {
        Self { matrix: self.matrix * other.matrix }
    }

    pub fn inverse(&self) -> G2Automorphism {
        Self { matrix: self.matrix.transpose() }
    }

    pub fn check(&self) -> AutomorphismCheck {
        is_automorphism(&self.matrix)
    }

    pub fn rows(&self) -> [[f64; 7]; 7] {
        rows7(&self.matrix)
    }
}

impl Serialize for G2Automorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// The automorphism with `e1 ↦ h1`, `e2 ↦ h2`, `e4 ↦ h3`.
pub fn automorphism_from_basic_triple(
    h1: &ImOctonion,
    h2: &ImOctonion,
    h3: &ImOctonion,
) -> Result<G2Automorphism> {
    for (condition, v) in [("‖h1‖ − 1", h1), ("‖h2‖ − 1", h2), ("‖h3‖ − 1", h3)] {
        let dev = v.norm() - 1.0;
        if dev.abs() > BASIC_TRIPLE_TOL {
            return Err(Error::NotBasicTriple { condition, value: dev });
        }
    }
    let h12 = h1.mul_im(h2);
    for (condition, value) in [
        ("⟨h1, h2⟩", h1.dot(h2)),
        ("⟨h1, h3⟩", h1.dot(h3)),
        ("⟨h2, h3⟩", h2.dot(h3)),
        ("⟨h3, h1h2⟩", h3.dot(&h12)),
    ] {
        if value.abs() > BASIC_TRIPLE_TOL {
            return Err(Error::NotBasicTriple { condition, value });
        }
    }
    let cols = [*h1, *h2, h12, *h3, h1.mul_im(h3), h2.mul_im(h3), h12.mul_im(h3)];
    let matrix = Matrix7::from_fn(|i, j| cols[j].0[i]);
    Ok(G2Automorphism { matrix })
}

/// Invariant planes of the torus, oriented as complex lines of `J_{e1}`
/// (`e1·e2 = e3`, `e1·e4 = e5`, `e1·e7 = e6`), with the integer weight
/// `(w_t, w_s)` of the rotation angle `w_t·t + w_s·s` in each.
pub const TORUS_WEIGHTS: [((usize, usize), [i32; 2]); 3] =
    [((2, 3), [1, 0]), ((4, 5), [0, 1]), ((7, 6), [-1, -1])];

/// Generators `(A, B)` of the torus in the full-angle convention:
/// `A = 2(E_[3,2] + E_[7,6])`, `B = 2(E_[5,4] + E_[7,6])`.
///
/// `B = −2·Q0` for the printed `Q0`. The printed `P0 = E_[3,2] + E_[6,7]`
/// is not a derivation; `A` keeps its `(e2, e3)` block and reverses the
/// `(e6, e7)` block.
pub fn cartan_generators() -> (So7Matrix, So7Matrix) {
    (
        So7Matrix::from_terms(&[(3, 2), (7, 6)]).scale(2.0),
        So7Matrix::from_terms(&[(5, 4), (7, 6)]).scale(2.0),
    )
}

/// An element `g_{t,s}` of the maximal torus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusFlow {
    pub t: f64,
    pub s: f64,
    matrix: G2Automorphism,
}

impl TorusFlow {
    pub fn automorphism(&self) -> &G2Automorphism {
        &self.matrix
    }

    pub fn matrix(&self) -> &Matrix7 {
        self.matrix.matrix()
    }

    pub fn apply(&self, v: &ImOctonion) -> ImOctonion {
        self.matrix.apply(v)
    }

    /// Rotation angle of each plane in [`TORUS_WEIGHTS`].
    pub fn plane_angles(&self) -> [f64; 3] {
        TORUS_WEIGHTS.map(|(_, [wt, ws])| f64::from(wt) * self.t + f64::from(ws) * self.s)
    }
}

/// `exp(tA + sB)` assembled as three plane rotations; `e1` is fixed exactly.
pub fn torus_flow(t: f64, s: f64) -> TorusFlow {
    let mut m = Matrix7::identity();
    for ((a, b), [wt, ws]) in TORUS_WEIGHTS {
        let angle = f64::from(wt) * t + f64::from(ws) * s;
        let (sn, cs) = angle.sin_cos();
        let rot = Matrix2::new(cs, -sn, sn, cs);
        let idx = [a - 1, b - 1];
        for r in 0..2 {
            for c in 0..2 {
                m[(idx[r], idx[c])] = rot[(r, c)];
            }
        }
    }
    TorusFlow { t, s, matrix: G2Automorphism::from_matrix_unchecked(m) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octonion::{assoc_form, cross};
    use crate::sampling::Sampler;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn e(i: usize) -> ImOctonion {
        ImOctonion::basis(i)
    }

    #[test]
    fn unit_generators_are_skew() {
        for (_, g) in g2_standard_basis() {
            assert_eq!(g.skew_residual(), 0.0);
        }
        assert_eq!(So7Matrix::unit(3, 2).0, -So7Matrix::unit(2, 3).0);
    }

    #[test]
    fn derivation_examples() {
        let zero = is_derivation(&So7Matrix::zero());
        assert!(zero.passes && zero.exact && zero.residual == 0.0);
        let q0 = is_derivation(&So7Matrix::from_terms(&[(4, 5), (6, 7)]));
        assert!(q0.passes && q0.exact);
        let e12 = is_derivation(&So7Matrix::unit(1, 2));
        assert!(!e12.passes && e12.residual > 0.0);
    }

    #[test]
    fn printed_p0_is_not_a_derivation_but_its_sorted_reading_is() {
        let audit = derivation_audit();
        let p0 = audit.iter().find(|a| a.name == "P0").unwrap();
        assert!(!p0.passes);
        assert_eq!(p0.residual, 1.0);
        assert!(p0.passes_index_sorted);
        let q0 = audit.iter().find(|a| a.name == "Q0").unwrap();
        assert!(q0.passes && q0.passes_index_sorted);
    }

    #[test]
    fn audit_verdicts() {
        let passing: Vec<&str> = derivation_audit().iter().filter(|a| a.passes).map(|a| a.name).collect();
        assert_eq!(passing, ["Q0", "P1", "Q1", "Q2", "P4", "P5"]);
    }

    #[test]
    fn cartan_pair_are_exact_derivations_and_commute() {
        let (a, b) = cartan_generators();
        assert!(is_derivation(&a).passes && is_derivation(&a).exact);
        assert!(is_derivation(&b).passes && is_derivation(&b).exact);
        assert_eq!(a.0 * b.0 - b.0 * a.0, Matrix7::zeros());
        let q0 = So7Matrix::from_terms(&[(4, 5), (6, 7)]);
        assert_eq!(b.0, q0.0 * -2.0);
    }

    #[test]
    fn random_skew_matrix_is_not_a_derivation() {
        let mut s = Sampler::new(11);
        let m = s.skew7();
        let c = is_derivation(&m);
        assert!(!c.passes && !c.exact && c.residual > 1e-3);
    }

    #[test]
    fn automorphism_examples() {
        assert!(is_automorphism(&Matrix7::identity()).passes);
        let neg = is_automorphism(&-Matrix7::identity());
        assert!(!neg.passes);
        assert_eq!(neg.product_residual, 2.0);
        let (a, _) = cartan_generators();
        let mut s = Sampler::new(12);
        let tau = s.uniform(-10.0, 10.0);
        assert!(is_automorphism(&(a.0 * tau).exp()).passes);
    }

    #[test]
    fn basic_triple_examples() {
        assert_eq!(
            automorphism_from_basic_triple(&e(1), &e(2), &e(4)).unwrap(),
            G2Automorphism::identity()
        );
        let g = automorphism_from_basic_triple(&e(2), &e(3), &e(5)).unwrap();
        assert_eq!(g.apply(&e(3)), e(1));
        assert_eq!(g.apply(&e(5)), e(7));
        assert_eq!(g.apply(&e(6)), -e(6));
        assert_eq!(g.apply(&e(7)), -e(4));
        assert!(g.check().passes);
        let err = automorphism_from_basic_triple(&e(1), &e(2), &e(3)).unwrap_err();
        assert!(matches!(err, Error::NotBasicTriple { condition: "⟨h3, h1h2⟩", .. }));
        assert!(matches!(
            automorphism_from_basic_triple(&e(1), &(e(1) + e(2)).normalize(), &e(4)),
            Err(Error::NotBasicTriple { condition: "⟨h1, h2⟩", .. })
        ));
    }

    #[test]
    fn random_basic_triples_give_automorphisms_preserving_structure() {
        let mut s = Sampler::new(13);
        for _ in 0..200 {
            let g = s.g2_element();
            let c = g.check();
            assert!(c.passes, "{c:?}");
            assert!((g.matrix().determinant() - 1.0).abs() < 1e-10);
            let (x, y, z) = (s.im_octonion(), s.im_octonion(), s.im_octonion());
            let (gx, gy, gz) = (g.apply(&x), g.apply(&y), g.apply(&z));
            assert!((assoc_form(&gx, &gy, &gz) - assoc_form(&x, &y, &z)).abs() < 1e-10);
            assert!((cross(&gx, &gy) - g.apply(&cross(&x, &y))).max_abs() < 1e-10);
            assert!((gx.dot(&gy) - x.dot(&y)).abs() < 1e-10);
        }
    }

    #[test]
    fn torus_flow_examples() {
        assert_eq!(*torus_flow(0.0, 0.0).matrix(), Matrix7::identity());
        let q = torus_flow(FRAC_PI_2, 0.0).apply(&e(2));
        assert!((q - e(3)).max_abs() < 1e-15);
        let full = torus_flow(2.0 * PI, 2.0 * PI);
        assert!((full.matrix() - Matrix7::identity()).amax() < 1e-12);
    }

    #[test]
    fn torus_flow_matches_matrix_exponential() {
        let (a, b) = cartan_generators();
        let mut s = Sampler::new(14);
        for _ in 0..100 {
            let (t, u) = (s.uniform(-7.0, 7.0), s.uniform(-7.0, 7.0));
            let reference = (a.0 * t + b.0 * u).exp();
            let flow = torus_flow(t, u);
            assert!((flow.matrix() - reference).amax() < 1e-10);
            let c = flow.automorphism().check();
            assert!(c.residual() < 1e-12, "{c:?}");
        }
    }

    #[test]
    fn torus_is_an_abelian_group_fixing_e1() {
        let mut s = Sampler::new(15);
        for _ in 0..100 {
            let (t1, s1, t2, s2) = (s.uniform(-5.0, 5.0), s.uniform(-5.0, 5.0), s.uniform(-5.0, 5.0), s.uniform(-5.0, 5.0));
            let lhs = torus_flow(t1, s1).matrix() * torus_flow(t2, s2).matrix();
            assert!((lhs - torus_flow(t1 + t2, s1 + s2).matrix()).amax() < 1e-12);
            let g = torus_flow(t1, s1);
            assert_eq!(g.apply(&e(1)), e(1));
            let x = s.im_octonion();
            assert_eq!(g.apply(&x)[0], x[0]);
        }
    }

    #[test]
    fn torus_weights_sum_to_zero() {
        let sum = TORUS_WEIGHTS.iter().fold([0, 0], |acc, (_, w)| [acc[0] + w[0], acc[1] + w[1]]);
        assert_eq!(sum, [0, 0]);
        let angles = torus_flow(0.7, -1.9).plane_angles();
        assert!(angles.iter().sum::<f64>().abs() < 1e-15);
        for ((a, b), _) in TORUS_WEIGHTS {
            assert_eq!(e(1).mul_full(&e(a)), Octonion::from(e(b)));
        }
    }

    #[test]
    fn derivations_from_torus_exponentiate_to_derivations() {
        // The derivative of torus_flow at the origin recovers A and B.
        let (a, b) = cartan_generators();
        let h = 1e-6;
        let da = (torus_flow(h, 0.0).matrix() - torus_flow(-h, 0.0).matrix()) / (2.0 * h);
        let db = (torus_flow(0.0, h).matrix() - torus_flow(0.0, -h).matrix()) / (2.0 * h);
        assert!((da - a.0).amax() < 1e-9);
        assert!((db - b.0).amax() < 1e-9);
    }
}
