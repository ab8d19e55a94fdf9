//! Three-dimensional subspaces of Im O: the associative form φ(π), the
//! plane associator [π], Cayley–Dickson frames and reduction to the
//! canonical planes `π₀^φ = span(e1, e2, φe3 − √(1−φ²)e7)`.

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::g2::{automorphism_from_basic_triple, G2Automorphism};
use crate::linalg::{gram_schmidt, singular_values, subspace_distance, Matrix7};
use crate::octonion::{assoc_form, associator, ImOctonion, Octonion};
use crate::{Error, Result};

/// Orthonormality tolerance of [`Plane3::from_orthonormal`].
pub const FRAME_TOL: f64 = 1e-12;
/// Smallest admissible singular value of spanning vectors.
pub const RANK_TOL: f64 = 1e-8;
/// Planes with φ above `1 − ASSOCIATIVE_TOL` are treated as associative.
pub const ASSOCIATIVE_TOL: f64 = 1e-8;
/// Largest principal angle accepted as subspace equality.
pub const SUBSPACE_TOL: f64 = 1e-8;
/// φ values closer than this are declared equal by [`g2_equivalent`].
pub const PHI_EQUAL_TOL: f64 = 1e-9;

/// An oriented orthonormal 3-frame of Im O.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Plane3 {
    frame: [ImOctonion; 3],
}

impl Plane3 {
    /// Gram–Schmidt in input order. Rejects inputs whose smallest singular
    /// value is at most [`RANK_TOL`].
    pub fn from_spanning(v1: &ImOctonion, v2: &ImOctonion, v3: &ImOctonion) -> Result<Self> {
        let vs = [*v1, *v2, *v3];
        let smallest = singular_values(&vs)[2];
        if smallest <= RANK_TOL {
            return Err(Error::RankDeficient { singular_value: smallest });
        }
        let q = gram_schmidt(&vs, 0.0).ok_or(Error::RankDeficient { singular_value: smallest })?;
        Ok(Self { frame: [q[0], q[1], q[2]] })
    }

    /// Wraps a frame that is already orthonormal within [`FRAME_TOL`].
    pub fn from_orthonormal(frame: [ImOctonion; 3]) -> Result<Self> {
        let mut dev: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((frame[i].dot(&frame[j]) - target).abs());
            }
        }
        if dev > FRAME_TOL {
            return Err(Error::NotOrthonormal { deviation: dev });
        }
        Ok(Self { frame })
    }

    pub fn frame(&self) -> &[ImOctonion; 3] {
        &self.frame
    }

    /// φ(f1, f2, f3) = ⟨f1, f2 f3⟩ for this frame; its sign follows the orientation.
    pub fn phi_signed(&self) -> f64 {
        let [f1, f2, f3] = &self.frame;
        assoc_form(f1, f2, f3)
    }

    /// φ(π) ∈ [0, 1].
    pub fn phi(&self) -> f64 {
        self.phi_signed().abs().min(1.0)
    }

    /// [f1, f2, f3] for this frame; changes sign with the orientation.
    pub fn associator(&self) -> ImOctonion {
        let [f1, f2, f3] = self.frame.map(Octonion::from);
        associator(&f1, &f2, &f3).imaginary()
    }

    pub fn is_associative(&self) -> bool {
        self.phi() > 1.0 - ASSOCIATIVE_TOL
    }

    /// The same subspace with `f3` negated, so that `phi_signed ≥ 0`.
    pub fn positively_oriented(&self) -> (Self, bool) {
        if self.phi_signed() < 0.0 {
            let [f1, f2, f3] = self.frame;
            (Self { frame: [f1, f2, -f3] }, true)
        } else {
            (*self, false)
        }
    }

    /// The image plane under an automorphism.
    pub fn transformed(&self, g: &G2Automorphism) -> Self {
        Self { frame: self.frame.map(|f| g.apply(&f)) }
    }

    /// Largest principal angle to another plane.
    pub fn distance(&self, other: &Plane3) -> f64 {
        subspace_distance(&self.frame, &other.frame)
    }

    pub fn same_subspace(&self, other: &Plane3) -> bool {
        self.distance(other) < SUBSPACE_TOL
    }

    /// Orthonormal basis of the orthogonal complement in Im O.
    pub fn complement(&self) -> [ImOctonion; 4] {
        let mut basis: Vec<ImOctonion> = self.frame.to_vec();
        for k in 1..8 {
            if basis.len() == 7 {
                break;
            }
            let mut v = ImOctonion::basis(k);
            for _ in 0..2 {
                for b in &basis {
                    v = v - v.dot(b) * *b;
                }
            }
            // at most three basis vectors can lose more than this to a 3-plane
            if v.norm() > 0.25 {
                basis.push(v.normalize());
            }
        }
        [basis[3], basis[4], basis[5], basis[6]]
    }
}

impl Serialize for Plane3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Plane3", 1)?;
        st.serialize_field("frame", &self.frame)?;
        st.end()
    }
}

pub fn plane_from_spanning(v1: &ImOctonion, v2: &ImOctonion, v3: &ImOctonion) -> Result<Plane3> {
    Plane3::from_spanning(v1, v2, v3)
}

pub fn phi_of_plane(p: &Plane3) -> f64 {
    p.phi()
}

pub fn associator_of_plane(p: &Plane3) -> ImOctonion {
    p.associator()
}

/// The seven vectors `f1, f2, f3, f2f3, f3f1, f1f2, [f1,f2,f3]`.
pub fn gram_vectors(p: &Plane3) -> [ImOctonion; 7] {
    let [f1, f2, f3] = p.frame;
    [f1, f2, f3, f2.mul_im(&f3), f3.mul_im(&f1), f1.mul_im(&f2), p.associator()]
}

/// Gram matrix of [`gram_vectors`].
pub fn gram_frame(p: &Plane3) -> Matrix7 {
    let v = gram_vectors(p);
    Matrix7::from_fn(|i, j| v[i].dot(&v[j]))
}

/// The predicted Gram pattern: unit diagonal on the first six entries,
/// `φ` at `(1,4), (2,5), (3,6)` and their mirrors, `4(1 − φ²)` at `(7,7)`.
/// `phi` is the oriented value `⟨f1, f2f3⟩` of the frame.
pub fn gram_pattern(phi: f64) -> Matrix7 {
    let mut m = Matrix7::zeros();
    for k in 0..6 {
        m[(k, k)] = 1.0;
    }
    for k in 0..3 {
        m[(k, k + 3)] = phi;
        m[(k + 3, k)] = phi;
    }
    m[(6, 6)] = 4.0 * (1.0 - phi * phi);
    m
}

/// Largest deviation of the Gram matrix from [`gram_pattern`].
pub fn gram_pattern_residual(p: &Plane3) -> f64 {
    (gram_frame(p) - gram_pattern(p.phi_signed())).amax()
}

/// `F1 … F7` built from the frame: `F1 = f1`, `F2 = f2`, `F3 = f1f2`,
/// `F4 = [π]/‖[π]‖`, `F5 = F1F4`, `F6 = F2F4`, `F7 = F3F4`.
pub fn cayley_dickson_frame(p: &Plane3) -> Result<[ImOctonion; 7]> {
    let phi = p.phi();
    if phi > 1.0 - ASSOCIATIVE_TOL {
        return Err(Error::AssociativePlane { phi });
    }
    let [f1, f2, _] = p.frame;
    let f3_ = f1.mul_im(&f2);
    let f4 = (1.0 / (2.0 * (1.0 - phi * phi).sqrt())) * p.associator();
    Ok([f1, f2, f3_, f4, f1.mul_im(&f4), f2.mul_im(&f4), f3_.mul_im(&f4)])
}

/// Residuals of the closed forms
/// `F5 = (σφ f1 + f2f3)/√(1−φ²)`, `F6 = (σφ f2 + f3f1)/√(1−φ²)`,
/// `F7 = (−f3 + φ f1f2)/√(1−φ²)` with `φ = ⟨f1, f2f3⟩`, for the sign `σ`
/// of the first two. Only `σ = −1` is consistent with `F5 ⊥ f1`.
pub fn closed_form_residuals(p: &Plane3, sigma: f64) -> Result<[f64; 3]> {
    let f = cayley_dickson_frame(p)?;
    let [f1, f2, f3] = p.frame;
    let phi = p.phi_signed();
    let k = 1.0 / (1.0 - phi * phi).sqrt();
    let f5 = k * (sigma * phi * f1 + f2.mul_im(&f3));
    let f6 = k * (sigma * phi * f2 + f3.mul_im(&f1));
    let f7 = k * (-f3 + phi * f1.mul_im(&f2));
    Ok([(f[4] - f5).max_abs(), (f[5] - f6).max_abs(), (f[6] - f7).max_abs()])
}

/// π₀^φ with frame `(e1, e2, φe3 − √(1−φ²)e7)`.
pub fn canonical_plane(phi: f64) -> Plane3 {
    let phi = phi.clamp(0.0, 1.0);
    let f3 = phi * ImOctonion::basis(3) - (1.0 - phi * phi).sqrt() * ImOctonion::basis(7);
    Plane3 { frame: [ImOctonion::basis(1), ImOctonion::basis(2), f3] }
}

/// A G₂ element carrying a plane onto π₀^φ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalReduction {
    pub phi: f64,
    pub automorphism: G2Automorphism,
    pub target: Plane3,
    /// Whether `f3` was negated so that `⟨f1, f2f3⟩ ≥ 0` before the
    /// Cayley–Dickson frame was built. With this orientation and
    /// `F4 = +[π]/‖[π]‖`, the image of `f3` is exactly `φe3 − √(1−φ²)e7`.
    pub f3_negated: bool,
    /// Whether the associative branch (`φ = 1`) was taken.
    pub associative: bool,
}

impl CanonicalReduction {
    /// Principal-angle distance between the image of `source` and the target.
    pub fn residual(&self, source: &Plane3) -> f64 {
        source.transformed(&self.automorphism).distance(&self.target)
    }
}

impl Serialize for CanonicalReduction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CanonicalReduction", 5)?;
        st.serialize_field("frame", self.target.frame())?;
        st.serialize_field("phi", &self.phi)?;
        st.serialize_field("matrix", &self.automorphism)?;
        st.serialize_field("f3_negated", &self.f3_negated)?;
        st.serialize_field("associative", &self.associative)?;
        st.end()
    }
}

/// Constructive reduction of a plane to its canonical representative.
pub fn reduce_to_canonical(p: &Plane3) -> CanonicalReduction {
    let (oriented, f3_negated) = p.positively_oriented();
    let phi = p.phi();
    if phi > 1.0 - ASSOCIATIVE_TOL {
        let [f1, f2, _] = oriented.frame;
        let f12 = f1.mul_im(&f2);
        // complete (f1, f2) by the basis vector farthest from span(f1, f2, f1f2)
        let h3 = (1..8)
            .map(|k| {
                let c = ImOctonion::basis(k);
                [f1, f2, f12].iter().fold(c, |acc, b| acc - acc.dot(b) * *b)
            })
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("seven candidates")
            .normalize();
        let g = automorphism_from_basic_triple(&f1, &f2, &h3).expect("completion is a basic triple");
        return CanonicalReduction {
            phi: 1.0,
            automorphism: g.inverse(),
            target: canonical_plane(1.0),
            f3_negated,
            associative: true,
        };
    }
    let f = cayley_dickson_frame(&oriented).expect("non-associative branch");
    let g = automorphism_from_basic_triple(&f[0], &f[1], &f[3]).expect("F1, F2, F4 is a basic triple");
    CanonicalReduction { phi, automorphism: g.inverse(), target: canonical_plane(phi), f3_negated, associative: false }
}

/// Outcome of [`g2_equivalent`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub phi: (f64, f64),
    /// `g2⁻¹ ∘ g1`, carrying the first plane onto the second.
    pub witness: Option<G2Automorphism>,
    /// Principal-angle distance between the witness image and the second plane.
    pub image_distance: Option<f64>,
}

/// Decides G₂-equivalence of two planes by comparing φ and builds a witness.
pub fn g2_equivalent(a: &Plane3, b: &Plane3) -> Equivalence {
    let phi = (a.phi(), b.phi());
    if (phi.0 - phi.1).abs() >= PHI_EQUAL_TOL {
        return Equivalence { equivalent: false, phi, witness: None, image_distance: None };
    }
    let ra = reduce_to_canonical(a);
    let rb = reduce_to_canonical(b);
    let w = rb.automorphism.inverse().compose(&ra.automorphism);
    let d = a.transformed(&w).distance(b);
    Equivalence { equivalent: true, phi, witness: Some(w), image_distance: Some(d) }
}
