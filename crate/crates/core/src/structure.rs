//! Exact multiplication table of the octonions.
//!
//! The table is generated from the Cayley–Dickson doubling
//! `(q, r)(s, t) = (qs - t̄r, tq + rs̄)` over integer quaternions, with
//! `e0 = (1,0), e1 = (i,0), e2 = (j,0), e3 = (k,0), e4 = (0,1), e5 = (0,i),
//! e6 = (0,j), e7 = (0,k)`. [`PRINTED_TABLE`] is an independent transcription
//! of the published 7×7 table; the two are compared in the tests.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

/// Signed basis element `sign * e_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedBasis {
    pub sign: i8,
    pub index: usize,
}

impl SignedBasis {
    pub const fn new(sign: i8, index: usize) -> Self {
        Self { sign, index }
    }
}

const fn sb(sign: i8, index: usize) -> SignedBasis {
    SignedBasis::new(sign, index)
}

/// Products `e_i · e_j` for `i, j ∈ 1..=7`, row `i`, column `j`, as printed.
pub const PRINTED_TABLE: [[SignedBasis; 7]; 7] = [
    [sb(-1, 0), sb(1, 3), sb(-1, 2), sb(1, 5), sb(-1, 4), sb(-1, 7), sb(1, 6)],
    [sb(-1, 3), sb(-1, 0), sb(1, 1), sb(1, 6), sb(1, 7), sb(-1, 4), sb(-1, 5)],
    [sb(1, 2), sb(-1, 1), sb(-1, 0), sb(1, 7), sb(-1, 6), sb(1, 5), sb(-1, 4)],
    [sb(-1, 5), sb(-1, 6), sb(-1, 7), sb(-1, 0), sb(1, 1), sb(1, 2), sb(1, 3)],
    [sb(1, 4), sb(-1, 7), sb(1, 6), sb(-1, 1), sb(-1, 0), sb(-1, 3), sb(1, 2)],
    [sb(1, 7), sb(1, 4), sb(-1, 5), sb(-1, 2), sb(1, 3), sb(-1, 0), sb(-1, 1)],
    [sb(-1, 6), sb(1, 5), sb(1, 4), sb(-1, 3), sb(-1, 2), sb(1, 1), sb(-1, 0)],
];

/// Integer quaternion `a + bi + cj + dk`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntQuaternion(pub [i64; 4]);

impl IntQuaternion {
    pub fn conj(self) -> Self {
        let [a, b, c, d] = self.0;
        Self([a, -b, -c, -d])
    }
}

impl Mul for IntQuaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = o.0;
        Self([
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ])
    }
}

impl Add for IntQuaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for IntQuaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

/// Octonion with integer coordinates, multiplied directly by the
/// Cayley–Dickson rule (no table lookup). This is the exact arithmetic path.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntOctonion(pub [i64; 8]);

impl IntOctonion {
    pub fn basis(i: usize) -> Self {
        let mut c = [0; 8];
        c[i] = 1;
        Self(c)
    }

    fn halves(self) -> (IntQuaternion, IntQuaternion) {
        let c = self.0;
        (
            IntQuaternion([c[0], c[1], c[2], c[3]]),
            IntQuaternion([c[4], c[5], c[6], c[7]]),
        )
    }

    fn from_halves(q: IntQuaternion, r: IntQuaternion) -> Self {
        Self([q.0[0], q.0[1], q.0[2], q.0[3], r.0[0], r.0[1], r.0[2], r.0[3]])
    }

    pub fn conj(self) -> Self {
        let mut c = self.0;
        for x in &mut c[1..] {
            *x = -*x;
        }
        Self(c)
    }

    /// The single nonzero coordinate as a signed basis element, if there is one with |coefficient| = 1.
    pub fn as_signed_basis(self) -> Option<SignedBasis> {
        let nz: Vec<usize> = (0..8).filter(|&i| self.0[i] != 0).collect();
        match nz.as_slice() {
            [k] if self.0[*k].abs() == 1 => Some(SignedBasis::new(self.0[*k].signum() as i8, *k)),
            _ => None,
        }
    }
}

impl Mul for IntOctonion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (q, r) = self.halves();
        let (s, t) = o.halves();
        Self::from_halves(q * s - t.conj() * r, t * q + r * s.conj())
    }
}

impl Add for IntOctonion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for IntOctonion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for IntOctonion {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|x| -x))
    }
}

impl Mul<IntOctonion> for i64 {
    type Output = IntOctonion;
    fn mul(self, o: IntOctonion) -> IntOctonion {
        IntOctonion(o.0.map(|x| self * x))
    }
}

/// Full 8×8 table `e_i e_j` generated by Cayley–Dickson doubling.
pub fn structure_table() -> &'static [[SignedBasis; 8]; 8] {
    static TABLE: OnceLock<[[SignedBasis; 8]; 8]> = OnceLock::new();
    TABLE.get_or_init(|| {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (IntOctonion::basis(i) * IntOctonion::basis(j))
                    .as_signed_basis()
                    .expect("basis products are signed basis elements")
            })
        })
    })
}

/// `e_i · e_j` for `i, j ∈ 0..8`.
#[inline]
pub fn basis_product(i: usize, j: usize) -> SignedBasis {
    structure_table()[i][j]
}

/// Nonzero structure constants of the imaginary part, as `(i, j, k, sign)`
/// with `e_i e_j = sign · e_k` and `i, j, k ∈ 1..=7`, `k ≠ 0`.
pub fn imaginary_structure_constants() -> Vec<(usize, usize, usize, i8)> {
    let table = structure_table();
    let mut out = Vec::with_capacity(42);
    for (i, row) in table.iter().enumerate().skip(1) {
        for (j, p) in row.iter().enumerate().skip(1) {
            if p.index != 0 {
                out.push((i, j, p.index, p.sign));
            }
        }
    }
    out
}

/// Entries of the generated table that disagree with [`PRINTED_TABLE`], as
/// `(i, j, generated, printed)`. Empty when the transcription is faithful.
pub fn printed_table_mismatches() -> Vec<(usize, usize, SignedBasis, SignedBasis)> {
    let mut out = Vec::new();
    for i in 1..8 {
        for j in 1..8 {
            let generated = basis_product(i, j);
            let printed = PRINTED_TABLE[i - 1][j - 1];
            if generated != printed {
                out.push((i, j, generated, printed));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_table_matches_printed_table() {
        assert!(printed_table_mismatches().is_empty());
    }

    #[test]
    fn unit_is_two_sided_identity() {
        for i in 0..8 {
            assert_eq!(basis_product(0, i), sb(1, i));
            assert_eq!(basis_product(i, 0), sb(1, i));
        }
    }

    #[test]
    fn imaginary_units_square_to_minus_one_and_anticommute() {
        for i in 1..8 {
            assert_eq!(basis_product(i, i), sb(-1, 0));
            for j in 1..8 {
                if i != j {
                    let a = basis_product(i, j);
                    let b = basis_product(j, i);
                    assert_eq!(a.index, b.index);
                    assert_eq!(a.sign, -b.sign);
                }
            }
        }
    }

    #[test]
    fn spot_products() {
        assert_eq!(basis_product(1, 2), sb(1, 3));
        assert_eq!(basis_product(4, 7), sb(1, 3));
        assert_eq!(basis_product(1, 5), sb(-1, 4));
    }

    #[test]
    fn seven_quaternionic_lines() {
        // Each unordered imaginary pair closes on a third unit; the triples form a Fano plane.
        let mut lines = std::collections::BTreeSet::new();
        for (i, j, k, _) in imaginary_structure_constants() {
            let mut t = [i, j, k];
            t.sort();
            lines.insert(t);
        }
        assert_eq!(lines.len(), 7);
        assert_eq!(imaginary_structure_constants().len(), 42);
    }

    #[test]
    fn integer_path_is_alternative() {
        let xs: Vec<IntOctonion> = (0..8)
            .map(|k| IntOctonion(std::array::from_fn(|i| ((i as i64 * 7 + k * 3) % 5) - 2)))
            .collect();
        for x in &xs {
            for y in &xs {
                assert_eq!((*x * *x) * *y, *x * (*x * *y));
                assert_eq!((*y * *x) * *x, *y * (*x * *x));
            }
        }
    }
}
