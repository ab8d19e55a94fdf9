//! Seeded random inputs for the property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::calibration::Plane3;
use crate::g2::{automorphism_from_basic_triple, G2Automorphism, So7Matrix};
use crate::linalg::Matrix7;
use crate::octonion::{ImOctonion, Octonion, Vector7};
use crate::orbits::OrbitPoint;

/// Rotation-invariant samplers over a ChaCha8 stream.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform on `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    pub fn octonion(&mut self) -> Octonion {
        Octonion(std::array::from_fn(|_| self.normal()))
    }

    pub fn im_octonion(&mut self) -> ImOctonion {
        ImOctonion(Vector7::from_fn(|_, _| self.normal()))
    }

    /// Uniform point of S⁶.
    pub fn unit_im(&mut self) -> ImOctonion {
        loop {
            let v = self.im_octonion();
            if v.norm() > 1e-6 {
                return v.normalize();
            }
        }
    }

    /// Unit vector orthogonal to every vector in `against` (assumed orthonormal).
    pub fn unit_orthogonal(&mut self, against: &[ImOctonion]) -> ImOctonion {
        loop {
            let mut v = self.im_octonion();
            for _ in 0..2 {
                for a in against {
                    v = v - v.dot(a) * *a;
                }
            }
            if v.norm() > 1e-6 {
                return v.normalize();
            }
        }
    }

    /// Unit tangent vector to S⁶ at the unit point `p`.
    pub fn tangent_at(&mut self, p: &ImOctonion) -> ImOctonion {
        self.unit_orthogonal(&[*p])
    }

    /// Gaussian element of so(7).
    pub fn skew7(&mut self) -> So7Matrix {
        let m = Matrix7::from_fn(|_, _| self.normal());
        So7Matrix((m - m.transpose()) * 0.5)
    }

    /// Uniformly distributed basic triple `(h1, h2, h3)`.
    pub fn basic_triple(&mut self) -> (ImOctonion, ImOctonion, ImOctonion) {
        let h1 = self.unit_im();
        let h2 = self.unit_orthogonal(&[h1]);
        let h3 = self.unit_orthogonal(&[h1, h2, h1.mul_im(&h2)]);
        (h1, h2, h3)
    }

    /// Random element of G₂, the composition of two basic-triple automorphisms.
    pub fn g2_element(&mut self) -> G2Automorphism {
        let (a1, a2, a3) = self.basic_triple();
        let (b1, b2, b3) = self.basic_triple();
        let g = automorphism_from_basic_triple(&a1, &a2, &a3).expect("sampled triple is basic");
        let h = automorphism_from_basic_triple(&b1, &b2, &b3).expect("sampled triple is basic");
        g.compose(&h)
    }

    /// Three Gaussian vectors orthonormalized; redrawn on rank deficiency.
    pub fn plane(&mut self) -> Plane3 {
        loop {
            let (a, b, c) = (self.im_octonion(), self.im_octonion(), self.im_octonion());
            if let Ok(p) = Plane3::from_spanning(&a, &b, &c) {
                return p;
            }
        }
    }

    /// Uniform point of S⁶ whose torus orbit is two-dimensional.
    pub fn regular_orbit_point(&mut self) -> OrbitPoint {
        loop {
            let p = OrbitPoint::new(self.unit_im().coords()).expect("unit sample");
            if p.is_regular() {
                return p;
            }
        }
    }

    /// Regular orbit point on the slice `x2 = y0 = 0`.
    pub fn slice_point(&mut self) -> OrbitPoint {
        loop {
            let mut c = self.im_octonion().coords();
            c[1] = 0.0;
            c[3] = 0.0;
            let n = c.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n < 1e-6 {
                continue;
            }
            let p = OrbitPoint::new(c.map(|x| x / n)).expect("unit sample");
            if p.is_regular() {
                return p;
            }
        }
    }
}
