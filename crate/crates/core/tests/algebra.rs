use proptest::prelude::*;
use slant_core::g2::{
    automorphism_from_basic_triple, cartan_generators, is_automorphism, is_derivation, torus_flow, TORUS_WEIGHTS,
};
use slant_core::octonion::{assoc_form, associator, cross, inner, j_structure, multiply};
use slant_core::{ImOctonion, Octonion};

// Quaternion-pair multiplication in floating point, written independently of
// the table-driven product.
fn qmul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn qconj(a: [f64; 4]) -> [f64; 4] {
    [a[0], -a[1], -a[2], -a[3]]
}

fn cd_mul(x: &Octonion, y: &Octonion) -> Octonion {
    let (q, r) = ([x.0[0], x.0[1], x.0[2], x.0[3]], [x.0[4], x.0[5], x.0[6], x.0[7]]);
    let (s, t) = ([y.0[0], y.0[1], y.0[2], y.0[3]], [y.0[4], y.0[5], y.0[6], y.0[7]]);
    let a = qmul(q, s);
    let b = qmul(qconj(t), r);
    let c = qmul(t, q);
    let d = qmul(r, qconj(s));
    Octonion([a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3], c[0] + d[0], c[1] + d[1], c[2] + d[2], c[3] + d[3]])
}

fn oct() -> impl Strategy<Value = Octonion> {
    prop::array::uniform8(-2.0f64..2.0).prop_map(Octonion)
}

fn imo() -> impl Strategy<Value = ImOctonion> {
    prop::array::uniform7(-2.0f64..2.0).prop_map(ImOctonion::from_coords)
}

fn e(i: usize) -> ImOctonion {
    ImOctonion::basis(i)
}

#[test]
fn spot_values() {
    assert_eq!(multiply(&Octonion::basis(1), &Octonion::basis(2)), Octonion::basis(3));
    assert_eq!(multiply(&Octonion::basis(4), &Octonion::basis(7)), Octonion::basis(3));
    assert_eq!(cross(&e(1), &e(2)), e(3));
    assert_eq!(cross(&e(4), &e(5)), e(1));
    let a = associator(&Octonion::basis(1), &Octonion::basis(2), &Octonion::basis(4));
    assert_eq!(a, 2.0 * Octonion::basis(7));
    assert_eq!(assoc_form(&e(1), &e(2), &e(3)), 1.0);
    assert_eq!(assoc_form(&e(1), &e(2), &e(4)), 0.0);
    assert_eq!(j_structure(&e(1), &e(2)).unwrap(), e(3));
    assert_eq!(j_structure(&e(1), &e(5)).unwrap(), -e(4));
    assert_eq!(inner(&Octonion::basis(2), &Octonion::basis(2)), 1.0);
    assert_eq!(inner(&Octonion::basis(1), &Octonion::basis(5)), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn product_agrees_with_quaternion_pairs(x in oct(), y in oct()) {
        prop_assert!((x * y - cd_mul(&x, &y)).max_abs() < 1e-12);
    }

    #[test]
    fn norm_is_multiplicative(x in oct(), y in oct()) {
        prop_assert!(((x * y).norm() - x.norm() * y.norm()).abs() < 1e-12 * (1.0 + x.norm() * y.norm()));
    }

    #[test]
    fn conjugation_reverses_products(x in oct(), y in oct()) {
        prop_assert!(((x * y).conj() - y.conj() * x.conj()).max_abs() < 1e-12);
        prop_assert_eq!(x.conj().conj(), x);
        let n = x * x.conj();
        prop_assert!((n - x.norm_squared() * Octonion::ONE).max_abs() < 1e-12);
    }

    #[test]
    fn alternative_laws(x in oct(), y in oct()) {
        prop_assert!((x.conj() * (x * y) - (x.conj() * x) * y).max_abs() < 1e-11);
        prop_assert!(associator(&x, &x, &y).max_abs() < 1e-11);
        prop_assert!(associator(&y, &x, &x).max_abs() < 1e-11);
    }

    #[test]
    fn imaginary_product_splits(x in imo(), y in imo()) {
        let lhs = x.mul_full(&y) + x.dot(&y) * Octonion::ONE - Octonion::from(cross(&x, &y));
        prop_assert!(lhs.max_abs() < 1e-12);
        prop_assert!(cross(&x, &x).max_abs() == 0.0);
    }

    #[test]
    fn inner_is_compatible_with_left_multiplication(x in oct(), y in oct(), z in oct()) {
        let lhs = inner(&(x * y), &(x * z));
        let rhs = inner(&x, &x) * inner(&y, &z);
        prop_assert!((lhs - rhs).abs() < 1e-11 * (1.0 + rhs.abs()));
    }

    #[test]
    fn assoc_form_is_alternating(x in imo(), y in imo(), z in imo()) {
        let v = assoc_form(&x, &y, &z);
        prop_assert!((assoc_form(&y, &x, &z) + v).abs() < 1e-11);
        prop_assert!((assoc_form(&y, &z, &x) - v).abs() < 1e-11);
        prop_assert!(assoc_form(&x, &x, &y).abs() < 1e-11);
    }

    #[test]
    fn torus_flow_is_an_automorphism(t in -20.0f64..20.0, s in -20.0f64..20.0) {
        let g = torus_flow(t, s);
        prop_assert!(g.automorphism().check().residual() < 1e-12);
        prop_assert_eq!(g.apply(&e(1)), e(1));
        let sum: f64 = g.plane_angles().iter().sum();
        prop_assert!(sum.abs() < 1e-12);
    }

    #[test]
    fn torus_flow_matches_the_exponential(t in -6.0f64..6.0, s in -6.0f64..6.0) {
        let (a, b) = cartan_generators();
        let reference = (a.0 * t + b.0 * s).exp();
        prop_assert!((torus_flow(t, s).matrix() - reference).amax() < 1e-10);
    }

    #[test]
    fn torus_commutes_with_cross_product(t in -6.0f64..6.0, s in -6.0f64..6.0, x in imo(), y in imo()) {
        let g = torus_flow(t, s);
        prop_assert!((g.apply(&cross(&x, &y)) - cross(&g.apply(&x), &g.apply(&y))).max_abs() < 1e-10);
    }
}

#[test]
fn weights_close_under_multiplication() {
    for ((a, b), _) in TORUS_WEIGHTS {
        assert_eq!(e(1).mul_im(&e(a)), e(b));
    }
}

#[test]
fn half_integer_derivations_are_decided_exactly() {
    let (a, b) = cartan_generators();
    for m in [a, b] {
        let c = is_derivation(&m.scale(0.5));
        assert!(c.passes && c.exact);
    }
}

#[test]
fn basic_triple_is_an_automorphism_and_matches_columns() {
    let h1 = (e(1) + e(2)).normalize();
    let h2 = e(4);
    let h3 = h1.mul_im(&h2).mul_im(&e(7));
    let h3 = (h3 - h3.dot(&h1) * h1 - h3.dot(&h2) * h2).normalize();
    let h3 = (h3 - h3.dot(&h1.mul_im(&h2)) * h1.mul_im(&h2)).normalize();
    let g = automorphism_from_basic_triple(&h1, &h2, &h3).unwrap();
    assert!(is_automorphism(g.matrix()).passes);
    assert!((g.apply(&e(1)) - h1).max_abs() < 1e-15);
    assert!((g.apply(&e(4)) - h3).max_abs() < 1e-15);
}
