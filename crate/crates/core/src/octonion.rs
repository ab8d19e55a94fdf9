//! Floating-point Cayley algebra and the almost complex structure of S⁶.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use nalgebra::SVector;
use serde::{Deserialize, Serialize};

use crate::structure::structure_table;
use crate::{Error, Result};

/// Column vector in Im O ≅ ℝ⁷.
pub type Vector7 = SVector<f64, 7>;

/// Tolerance for the unit-norm and tangency preconditions of [`j_structure`].
pub const J_PRECONDITION_TOL: f64 = 1e-10;

/// Element of the Cayley algebra in the basis `e0, …, e7`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Octonion(pub [f64; 8]);

/// Element of Im O in the basis `e1, …, e7`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImOctonion(pub Vector7);

impl Octonion {
    pub const ZERO: Self = Self([0.0; 8]);
    pub const ONE: Self = Self([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Self(c)
    }

    pub fn real(&self) -> f64 {
        self.0[0]
    }

    pub fn imaginary(&self) -> ImOctonion {
        ImOctonion(Vector7::from_fn(|i, _| self.0[i + 1]))
    }

    pub fn conj(&self) -> Self {
        let mut c = self.0;
        for x in &mut c[1..] {
            *x = -*x;
        }
        Self(c)
    }

    pub fn norm_squared(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Index<usize> for Octonion {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        let table = structure_table();
        let mut out = [0.0; 8];
        for (i, row) in table.iter().enumerate() {
            let xi = self.0[i];
            if xi == 0.0 {
                continue;
            }
            for (j, p) in row.iter().enumerate() {
                out[p.index] += f64::from(p.sign) * xi * rhs.0[j];
            }
        }
        Octonion(out)
    }
}

impl Mul<Octonion> for f64 {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        Octonion(rhs.0.map(|x| self * x))
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        Octonion(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl AddAssign for Octonion {
    fn add_assign(&mut self, rhs: Octonion) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        Octonion(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion(self.0.map(|x| -x))
    }
}

impl From<ImOctonion> for Octonion {
    fn from(x: ImOctonion) -> Self {
        let mut c = [0.0; 8];
        c[1..].copy_from_slice(x.0.as_slice());
        Octonion(c)
    }
}

impl ImOctonion {
    pub fn zero() -> Self {
        Self(Vector7::zeros())
    }

    /// `e_i` for `i ∈ 1..=7`.
    pub fn basis(i: usize) -> Self {
        assert!((1..=7).contains(&i), "imaginary basis index must be in 1..=7, got {i}");
        let mut v = Vector7::zeros();
        v[i - 1] = 1.0;
        Self(v)
    }

    pub fn from_coords(c: [f64; 7]) -> Self {
        Self(Vector7::from(c))
    }

    pub fn coords(&self) -> [f64; 7] {
        self.0.into()
    }

    pub fn dot(&self, o: &ImOctonion) -> f64 {
        self.0.dot(&o.0)
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn normalize(&self) -> Self {
        Self(self.0.normalize())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.amax()
    }

    /// Full octonion product of two imaginary elements.
    pub fn mul_full(&self, o: &ImOctonion) -> Octonion {
        Octonion::from(*self) * Octonion::from(*o)
    }

    /// Imaginary part of the product; equals the product when the factors are orthogonal.
    pub fn mul_im(&self, o: &ImOctonion) -> ImOctonion {
        self.mul_full(o).imaginary()
    }

    pub fn cross(&self, o: &ImOctonion) -> ImOctonion {
        cross(self, o)
    }
}

impl Index<usize> for ImOctonion {
    type Output = f64;
    /// Zero-based coordinate: index 0 is the `e1` component.
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for ImOctonion {
    type Output = ImOctonion;
    fn add(self, o: ImOctonion) -> ImOctonion {
        ImOctonion(self.0 + o.0)
    }
}

impl Sub for ImOctonion {
    type Output = ImOctonion;
    fn sub(self, o: ImOctonion) -> ImOctonion {
        ImOctonion(self.0 - o.0)
    }
}

impl Neg for ImOctonion {
    type Output = ImOctonion;
    fn neg(self) -> ImOctonion {
        ImOctonion(-self.0)
    }
}

impl Mul<ImOctonion> for f64 {
    type Output = ImOctonion;
    fn mul(self, o: ImOctonion) -> ImOctonion {
        ImOctonion(o.0 * self)
    }
}

impl From<Vector7> for ImOctonion {
    fn from(v: Vector7) -> Self {
        Self(v)
    }
}

impl Serialize for ImOctonion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ImOctonion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        <[f64; 7]>::deserialize(d).map(Self::from_coords)
    }
}

impl fmt::Display for ImOctonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords().iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            if !first {
                f.write_str(if *c < 0.0 { " - " } else { " + " })?;
            } else if *c < 0.0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            if a == 1.0 {
                write!(f, "e{}", i + 1)?;
            } else {
                write!(f, "{a}·e{}", i + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn multiply(x: &Octonion, y: &Octonion) -> Octonion {
    *x * *y
}

pub fn conjugate(x: &Octonion) -> Octonion {
    x.conj()
}

/// Real part of ½(x ȳ + y x̄).
pub fn inner(x: &Octonion, y: &Octonion) -> f64 {
    0.5 * (*x * y.conj() + *y * x.conj()).real()
}

/// ½(xy − yx).
pub fn cross(x: &ImOctonion, y: &ImOctonion) -> ImOctonion {
    let (a, b) = (Octonion::from(*x), Octonion::from(*y));
    (0.5 * (a * b - b * a)).imaginary()
}

/// (xy)z − x(yz).
pub fn associator(x: &Octonion, y: &Octonion, z: &Octonion) -> Octonion {
    (*x * *y) * *z - *x * (*y * *z)
}

/// The associative 3-form ⟨x, yz⟩.
pub fn assoc_form(x: &ImOctonion, y: &ImOctonion, z: &ImOctonion) -> f64 {
    inner(&Octonion::from(*x), &y.mul_full(z))
}

/// J_p(X) = p × X on T_pS⁶.
pub fn j_structure(p: &ImOctonion, x: &ImOctonion) -> Result<ImOctonion> {
    let n = p.norm();
    if (n - 1.0).abs() > J_PRECONDITION_TOL {
        return Err(Error::NotUnit { norm: n });
    }
    let ip = p.dot(x);
    if ip.abs() > J_PRECONDITION_TOL {
        return Err(Error::NotTangent { inner: ip });
    }
    Ok(cross(p, x))
}

/// Tangential part at `p` of the central difference of `t ↦ J_{γ(t)} γ'(t)`
/// along the great circle `γ(t) = cos t·p + sin t·X` (unit `p`, unit `X ⊥ p`).
/// This is `(∇_X J)X` to second order in `h`; it vanishes on a nearly Kähler S⁶.
pub fn nearly_kaehler_defect(p: &ImOctonion, x: &ImOctonion, h: f64) -> f64 {
    let at = |t: f64| {
        let (s, c) = t.sin_cos();
        let g = c * *p + s * *x;
        let dg = -s * *p + c * *x;
        cross(&g, &dg)
    };
    let d = (1.0 / (2.0 * h)) * (at(h) - at(-h));
    (d - d.dot(p) * *p).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Sampler;

    fn e(i: usize) -> Octonion {
        Octonion::basis(i)
    }

    fn ie(i: usize) -> ImOctonion {
        ImOctonion::basis(i)
    }

    #[test]
    fn basis_products_from_table() {
        assert_eq!(e(1) * e(2), e(3));
        assert_eq!(e(4) * e(7), e(3));
        let mut s = Sampler::new(1);
        let x = s.octonion();
        assert_eq!(e(0) * x, x);
        assert_eq!(x * e(0), x);
    }

    #[test]
    fn conjugation() {
        assert_eq!(conjugate(&e(0)), e(0));
        assert_eq!(conjugate(&e(3)), -e(3));
        let mut s = Sampler::new(2);
        let (x, y) = (s.octonion(), s.octonion());
        assert_eq!(x.conj().conj(), x);
        assert!(((x * y).conj() - y.conj() * x.conj()).max_abs() < 1e-12);
        let xxbar = x * x.conj();
        assert!((xxbar - x.norm_squared() * Octonion::ONE).max_abs() < 1e-12);
    }

    #[test]
    fn inner_product_is_euclidean() {
        assert_eq!(inner(&e(2), &e(2)), 1.0);
        assert_eq!(inner(&e(1), &e(5)), 0.0);
        let mut s = Sampler::new(3);
        for _ in 0..100 {
            let (x, y, z) = (s.octonion(), s.octonion(), s.octonion());
            let dot: f64 = x.0.iter().zip(y.0).map(|(a, b)| a * b).sum();
            assert!((inner(&x, &y) - dot).abs() < 1e-12);
            let lhs = inner(&(x * y), &(x * z));
            assert!((lhs - inner(&x, &x) * inner(&y, &z)).abs() < 1e-11);
        }
    }

    #[test]
    fn cross_product_values() {
        assert_eq!(cross(&ie(1), &ie(2)), ie(3));
        assert_eq!(cross(&ie(4), &ie(5)), ie(1));
        let mut s = Sampler::new(4);
        let x = s.im_octonion();
        assert!(cross(&x, &x).max_abs() < 1e-15);
    }

    #[test]
    fn associator_values() {
        assert_eq!(associator(&e(1), &e(2), &e(3)), Octonion::ZERO);
        assert_eq!(associator(&e(1), &e(2), &e(4)), 2.0 * e(7));
        let mut s = Sampler::new(5);
        let (x, y) = (s.octonion(), s.octonion());
        assert!(associator(&x, &x, &y).max_abs() < 1e-12);
    }

    #[test]
    fn associator_is_totally_antisymmetric_on_imaginaries() {
        let mut s = Sampler::new(6);
        for _ in 0..50 {
            let (x, y, z) = (s.im_octonion(), s.im_octonion(), s.im_octonion());
            let (ox, oy, oz) = (x.into(), y.into(), z.into());
            let a = associator(&ox, &oy, &oz);
            assert!((a + associator(&oy, &ox, &oz)).max_abs() < 1e-12);
            assert!((a + associator(&ox, &oz, &oy)).max_abs() < 1e-12);
            assert!((a - associator(&oy, &oz, &ox)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn assoc_form_values() {
        assert_eq!(assoc_form(&ie(1), &ie(2), &ie(3)), 1.0);
        assert_eq!(assoc_form(&ie(1), &ie(2), &ie(4)), 0.0);
        let mut s = Sampler::new(7);
        let (x, y) = (s.im_octonion(), s.im_octonion());
        assert!(assoc_form(&x, &x, &y).abs() < 1e-12);
    }

    #[test]
    fn j_structure_values() {
        assert_eq!(j_structure(&ie(1), &ie(2)).unwrap(), ie(3));
        let j2 = j_structure(&ie(1), &j_structure(&ie(1), &ie(2)).unwrap()).unwrap();
        assert_eq!(j2, -ie(2));
        assert_eq!(j_structure(&ie(1), &ie(5)).unwrap(), -ie(4));
    }

    #[test]
    fn j_structure_rejects_bad_input() {
        assert!(matches!(
            j_structure(&(2.0 * ie(1)), &ie(2)),
            Err(Error::NotUnit { .. })
        ));
        assert!(matches!(
            j_structure(&ie(1), &(ie(1) + ie(2))),
            Err(Error::NotTangent { .. })
        ));
    }

    #[test]
    fn j_is_almost_hermitian() {
        let mut s = Sampler::new(8);
        for _ in 0..100 {
            let p = s.unit_im();
            let x = s.tangent_at(&p);
            let y = s.tangent_at(&p);
            let jx = j_structure(&p, &x).unwrap();
            let jy = j_structure(&p, &y).unwrap();
            assert!(jx.dot(&p).abs() < 1e-12);
            assert!((jx.dot(&jy) - x.dot(&y)).abs() < 1e-12);
            let jjx = j_structure(&p, &jx).unwrap();
            assert!((jjx + x).max_abs() < 1e-12);
        }
    }

    #[test]
    fn display_is_readable() {
        assert_eq!((-2.0 * ie(4)).to_string(), "-2·e4");
        assert_eq!((ie(1) - ie(7)).to_string(), "e1 - e7");
        assert_eq!(ImOctonion::zero().to_string(), "0");
    }
}
