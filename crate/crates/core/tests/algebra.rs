use bvk_core::bicomplex::NULL_CONE_TOL;
use bvk_core::{Bicomplex, Conjugation, ModulusAxis, Subalgebra};
use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use proptest::prelude::*;

fn close(a: Bicomplex, b: Bicomplex, tol: f64) -> bool {
    (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
}

fn element() -> impl Strategy<Value = Bicomplex> {
    prop::array::uniform4(-3.0..3.0f64).prop_map(Bicomplex::from_components)
}

fn conjugation() -> impl Strategy<Value = Conjugation> {
    prop::sample::select(Conjugation::ALL.to_vec())
}

/// Left-multiplication by `w` as a real 4×4 matrix, built from the basis
/// products.
fn mul_matrix(w: Bicomplex) -> Matrix4<f64> {
    let basis = [Bicomplex::ONE, Bicomplex::I1, Bicomplex::I2, Bicomplex::J];
    Matrix4::from_fn(|r, c| (w * basis[c]).components()[r])
}

#[test]
fn multiplication_table() {
    let (i1, i2, j) = (Bicomplex::I1, Bicomplex::I2, Bicomplex::J);
    assert_eq!(i1 * i2, j);
    assert_eq!(i2 * i1, j);
    assert_eq!(i1 * i1, -Bicomplex::ONE);
    assert_eq!(i2 * i2, -Bicomplex::ONE);
    assert_eq!(j * j, Bicomplex::ONE);
    assert_eq!(Bicomplex::E1 * Bicomplex::E2, Bicomplex::ZERO);
    assert_eq!((Bicomplex::ONE + i1) * (Bicomplex::ONE + i2), Bicomplex::new(1.0, 1.0, 1.0, 1.0));
}

#[test]
fn conjugation_examples() {
    let w = Bicomplex::from_z(Complex64::new(2.0, 3.0), Complex64::new(5.0, 7.0));
    assert_eq!(w.conj(Conjugation::Dagger2), Bicomplex::new(2.0, 3.0, -5.0, -7.0));
    let one = Bicomplex::new(1.0, 1.0, 1.0, 1.0);
    assert_eq!(one.conj(Conjugation::Identity), one);
    assert_eq!(Conjugation::Dagger1.compose(Conjugation::Dagger2), Conjugation::Dagger3);
    assert_eq!(Conjugation::Identity.compose(Conjugation::Dagger3), Conjugation::Dagger3);
    assert_eq!(Conjugation::Dagger3.compose(Conjugation::Dagger3), Conjugation::Identity);
}

#[test]
fn modulus_examples() {
    let w = Bicomplex::I1 + Bicomplex::I2;
    assert_eq!(w.modulus_sq(ModulusAxis::I1), Bicomplex::ZERO);
    assert_eq!(Bicomplex::ONE.modulus_sq(ModulusAxis::I1), Bicomplex::ONE);
    assert_eq!(Bicomplex::new(2.0, 0.0, 3.0, 0.0).modulus_sq(ModulusAxis::I1), Bicomplex::real(13.0));
    assert_eq!(Bicomplex::J.norm(), 1.0);
    assert_eq!(Bicomplex::new(1.0, 1.0, 1.0, 1.0).norm(), 2.0);
}

#[test]
fn inverse_examples() {
    assert_eq!(Bicomplex::real(2.0).inverse().unwrap(), Bicomplex::real(0.5));
    assert_eq!(Bicomplex::I2.inverse().unwrap(), -Bicomplex::I2);
    assert!(Bicomplex::E1.inverse().is_err());
    assert!((Bicomplex::I1 + Bicomplex::I2).scale(5.0).is_null_cone(NULL_CONE_TOL));
    assert!(!Bicomplex::ONE.is_null_cone(NULL_CONE_TOL));
    assert!(Bicomplex::E2.is_null_cone(NULL_CONE_TOL));
}

#[test]
fn idempotent_examples() {
    let p = Bicomplex::I2.to_idempotent();
    assert_eq!((p.p1, p.p2), (Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0)));
    let p = Bicomplex::J.to_idempotent();
    assert_eq!((p.p1, p.p2), (Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)));
}

#[test]
fn pi_examples() {
    assert_eq!(Bicomplex::I1.pi_map(), Bicomplex::I2);
    assert_eq!(Bicomplex::J.pi_map(), Bicomplex::J);
    let w = Bicomplex::new(1.0, 2.0, 3.0, 4.0);
    assert_eq!(w.conj(Conjugation::Dagger1).pi_map(), w.pi_map().conj(Conjugation::Dagger2));
    // the map is an involution, not idempotent
    assert_eq!(w.pi_map().pi_map(), w);
    assert_ne!(w.pi_map().pi_map(), w.pi_map());
}

#[test]
fn text_form_round_trips() {
    for w in [Bicomplex::new(1.0, -2.0, 0.5, 3.25), Bicomplex::J, Bicomplex::new(-0.1, 0.0, 0.0, 1e-20)] {
        assert_eq!(w.to_string().parse::<Bicomplex>().unwrap(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in element(), b in element(), c in element()) {
        prop_assert!(close((a * b) * c, a * (b * c), 1e-12));
        prop_assert!(close(a * (b + c), a * b + a * c, 1e-12));
        prop_assert!(close(a * b, b * a, 1e-12));
        prop_assert_eq!(a + b, b + a);
    }

    #[test]
    fn ring_axioms_exact_on_dyadics(
        a in prop::array::uniform4(-64i32..64),
        b in prop::array::uniform4(-64i32..64),
        c in prop::array::uniform4(-64i32..64),
    ) {
        let d = |v: [i32; 4]| Bicomplex::from_components(v.map(|x| f64::from(x) / 8.0));
        let (a, b, c) = (d(a), d(b), d(c));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a * b, b * a);
    }

    #[test]
    fn conjugations_are_ring_involutions(s in element(), t in element(), k in conjugation()) {
        prop_assert_eq!((s + t).conj(k), s.conj(k) + t.conj(k));
        prop_assert_eq!(s.conj(k).conj(k), s);
        prop_assert!(close((s * t).conj(k), s.conj(k) * t.conj(k), 1e-12));
    }

    #[test]
    fn klein_group(w in element(), a in conjugation(), b in conjugation()) {
        prop_assert_eq!(w.conj(a).conj(b), w.conj(a.compose(b)));
        prop_assert_eq!(a.compose(b), b.compose(a));
    }

    #[test]
    fn moduli_land_in_subalgebras(w in element()) {
        let floor = 1e-13 * 1f64.max(w.norm_sqr());
        prop_assert!(Subalgebra::ComplexI1.leak(w.modulus_sq(ModulusAxis::I1)) <= floor);
        prop_assert!(Subalgebra::ComplexI2.leak(w.modulus_sq(ModulusAxis::I2)) <= floor);
        prop_assert!(Subalgebra::Hyperbolic.leak(w.modulus_sq(ModulusAxis::J)) <= floor);
        let e = w.modulus_sq(ModulusAxis::J).w0 - w.components().iter().map(|c| c * c).sum::<f64>();
        prop_assert!(e.abs() <= 1e-12 * 1f64.max(w.norm_sqr()));
    }

    #[test]
    fn inverse_matches_linear_solve(w in element()) {
        prop_assume!(!w.is_null_cone(NULL_CONE_TOL));
        let inv = w.inverse().unwrap();
        prop_assert!(close(w * inv, Bicomplex::ONE, 1e-12));
        let m = mul_matrix(w);
        if let Some(x) = m.lu().solve(&Vector4::new(1.0, 0.0, 0.0, 0.0)) {
            let solved = Bicomplex::new(x[0], x[1], x[2], x[3]);
            prop_assert!(close(inv, solved, 1e-9), "{inv} vs {solved}");
        }
        let m2 = w.modulus_sq(ModulusAxis::I1);
        prop_assert!(close(w * w.conj(Conjugation::Dagger2) * m2.inverse().unwrap(), Bicomplex::ONE, 1e-10));
    }

    #[test]
    fn null_cone_elements(re in -3.0..3.0f64, im in -3.0..3.0f64, plus in any::<bool>()) {
        prop_assume!(re.abs() + im.abs() > 1e-3);
        let unit = if plus { Bicomplex::I1 + Bicomplex::I2 } else { Bicomplex::I1 - Bicomplex::I2 };
        let w = Bicomplex::from_complex(Complex64::new(re, im)) * unit;
        prop_assert!(w.is_null_cone(NULL_CONE_TOL));
        prop_assert!(w.to_idempotent().is_null_cone(NULL_CONE_TOL));
        prop_assert!(w.inverse().is_err());
    }

    #[test]
    fn idempotent_transport(a in element(), b in element()) {
        let (pa, pb) = (a.to_idempotent(), b.to_idempotent());
        prop_assert!(close(Bicomplex::from_idempotent(pa), a, 1e-15));
        let cmp = |w: Bicomplex, p1: Complex64, p2: Complex64| {
            let q = w.to_idempotent();
            (q.p1 - p1).norm() + (q.p2 - p2).norm() <= 1e-12 * 1f64.max(w.norm())
        };
        prop_assert!(cmp(a + b, pa.p1 + pb.p1, pa.p2 + pb.p2));
        prop_assert!(cmp(a - b, pa.p1 - pb.p1, pa.p2 - pb.p2));
        prop_assert!(cmp(a * b, pa.p1 * pb.p1, pa.p2 * pb.p2));
        prop_assert!(cmp(a.scale(-1.5), pa.p1 * -1.5, pa.p2 * -1.5));
    }

    #[test]
    fn pi_properties(a in element(), b in element()) {
        prop_assert_eq!(a.pi_map().pi_map(), a);
        prop_assert_eq!((a + b).pi_map(), a.pi_map() + b.pi_map());
        prop_assert!(close((a * b).pi_map(), a.pi_map() * b.pi_map(), 1e-12));
        prop_assert_eq!(a.conj(Conjugation::Dagger2).pi_map(), a.pi_map().conj(Conjugation::Dagger1));
        prop_assert_eq!(a.conj(Conjugation::Dagger3).pi_map(), a.pi_map().conj(Conjugation::Dagger3));
        if let (Ok(q), Ok(pq)) = (a.checked_div(b), a.pi_map().checked_div(b.pi_map())) {
            prop_assert!(close(q.pi_map(), pq, 1e-9));
        }
    }

    #[test]
    fn text_round_trip(w in element()) {
        prop_assert_eq!(w.to_string().parse::<Bicomplex>().unwrap(), w);
    }
}
