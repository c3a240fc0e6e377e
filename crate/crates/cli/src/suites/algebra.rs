//! Ring, conjugation, modulus, inverse, null-cone, idempotent and π
//! properties on seeded random elements.

use std::time::Instant;

use bvk_core::grid::GridMeta;
use bvk_core::report::rel_residual;
use bvk_core::tolerances;
use bvk_core::{Bicomplex, Conjugation, ModulusAxis, ResidualReport, Subalgebra};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const SUITE: &str = "algebra";
pub const SAMPLES: usize = 1000;
const RANGE: f64 = 2.0;

fn element(rng: &mut ChaCha8Rng) -> Bicomplex {
    Bicomplex::new(
        rng.gen_range(-RANGE..RANGE),
        rng.gen_range(-RANGE..RANGE),
        rng.gen_range(-RANGE..RANGE),
        rng.gen_range(-RANGE..RANGE),
    )
}

fn meta(seed: u64) -> GridMeta {
    GridMeta {
        kind: "random".into(),
        description: format!("{SAMPLES} seeded elements in [-{RANGE},{RANGE}]^4, seed {seed}"),
        points: SAMPLES,
        spacing: 0.0,
    }
}

struct Ctx<'a> {
    rng: &'a mut ChaCha8Rng,
    seed: u64,
    out: Vec<ResidualReport>,
}

impl Ctx<'_> {
    /// Worst residual of `f` over fresh random triples.
    fn case(&mut self, id: &str, anchor: &str, f: impl Fn(Bicomplex, Bicomplex, Bicomplex) -> f64) {
        let start = Instant::now();
        let mut worst = 0.0_f64;
        let mut sum = 0.0;
        for _ in 0..SAMPLES {
            let (a, b, c) = (element(self.rng), element(self.rng), element(self.rng));
            let r = f(a, b, c);
            let r = if r.is_nan() { f64::INFINITY } else { r };
            worst = worst.max(r);
            sum += r;
        }
        let mut rep = ResidualReport::new(SUITE, id, anchor, meta(self.seed), tolerances::ALGEBRA).with_max(worst);
        rep.mean_residual = bvk_core::report::finite_or_max(sum / SAMPLES as f64);
        self.out.push(rep.timed(start));
    }
}

fn max3(a: f64, b: f64, c: f64) -> f64 {
    a.max(b).max(c)
}

fn pair_residual(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> f64 {
    rel_residual(Bicomplex::from_z(a.0, a.1), Bicomplex::from_z(b.0, b.1))
}

#[allow(clippy::eq_op)]
pub fn cases(rng: &mut ChaCha8Rng, seed: u64) -> Vec<ResidualReport> {
    let mut cx = Ctx { rng, seed, out: Vec::new() };
    cx.case("ring:add-associative-commutative", "commutative ring axioms", |a, b, c| {
        rel_residual((a + b) + c, a + (b + c)).max(rel_residual(a + b, b + a))
    });
    cx.case("ring:mul-associative", "commutative ring axioms", |a, b, c| rel_residual((a * b) * c, a * (b * c)));
    cx.case("ring:mul-commutative", "commutative ring axioms", |a, b, _| rel_residual(a * b, b * a));
    cx.case("ring:distributive", "commutative ring axioms", |a, b, c| rel_residual(a * (b + c), a * b + a * c));
    cx.case("ring:identities", "commutative ring axioms", |a, _, _| {
        max3(
            rel_residual(a + Bicomplex::ZERO, a),
            rel_residual(a * Bicomplex::ONE, a),
            rel_residual(a - a, Bicomplex::ZERO),
        )
    });
    cx.case("ring:unit-products", "i1 i2 = j, j^2 = 1", |a, _, _| {
        let (i1, i2, j) = (Bicomplex::I1, Bicomplex::I2, Bicomplex::J);
        max3(rel_residual(i1 * i2, j), rel_residual(j * j, Bicomplex::ONE), rel_residual(a * j * j, a))
    });
    for k in &Conjugation::ALL[1..] {
        let k = *k;
        cx.case(
            &format!("conjugation:{}", k.index()),
            "conjugations are additive, involutive and multiplicative",
            move |s, t, _| {
                max3(
                    rel_residual((s + t).conj(k), s.conj(k) + t.conj(k)),
                    rel_residual(s.conj(k).conj(k), s),
                    rel_residual((s * t).conj(k), s.conj(k) * t.conj(k)),
                )
            },
        );
    }
    cx.case("conjugation:klein-table", "conjugations form the Klein four-group", |w, _, _| {
        let mut worst = 0.0_f64;
        for a in Conjugation::ALL {
            for b in Conjugation::ALL {
                worst = worst.max(rel_residual(w.conj(a).conj(b), w.conj(a.compose(b))));
            }
        }
        worst
    });
    cx.case("modulus:i1", "|w|^2_i1 = w w^2 = z1^2 + z2^2", |w, _, _| {
        let m = w.modulus_sq(ModulusAxis::I1);
        let (z1, z2) = (w.z1(), w.z2());
        rel_residual(m, Bicomplex::from_complex(z1 * z1 + z2 * z2)) + Subalgebra::ComplexI1.leak(m) / 1f64.max(w.norm_sqr())
    });
    cx.case("modulus:i2", "|w|^2_i2 = w w^1 = |z1|^2 - |z2|^2 + 2Re(z1 conj z2) i2", |w, _, _| {
        let m = w.modulus_sq(ModulusAxis::I2);
        let (z1, z2) = (w.z1(), w.z2());
        let expect = Bicomplex::new(z1.norm_sqr() - z2.norm_sqr(), 0.0, 2.0 * (z1 * z2.conj()).re, 0.0);
        rel_residual(m, expect) + Subalgebra::ComplexI2.leak(m) / 1f64.max(w.norm_sqr())
    });
    cx.case("modulus:j", "|w|^2_j = w w^3 = |z1|^2 + |z2|^2 - 2Im(z1 conj z2) j", |w, _, _| {
        let m = w.modulus_sq(ModulusAxis::J);
        let (z1, z2) = (w.z1(), w.z2());
        let expect = Bicomplex::new(z1.norm_sqr() + z2.norm_sqr(), 0.0, 0.0, -2.0 * (z1 * z2.conj()).im);
        rel_residual(m, expect)
            + Subalgebra::Hyperbolic.leak(m) / 1f64.max(w.norm_sqr())
            + (m.w0 - w.norm_sqr()).abs() / 1f64.max(w.norm_sqr())
    });
    cx.case("inverse:identity", "w w^2 / |w|^2_i1 = 1", |w, _, _| {
        if w.is_null_cone(bvk_core::bicomplex::NULL_CONE_TOL) {
            return 0.0;
        }
        let m = w.modulus_sq(ModulusAxis::I1);
        let via_modulus = w.conj(Conjugation::Dagger2) * m.inverse().unwrap_or(Bicomplex::ZERO);
        match w.inverse() {
            Ok(inv) => rel_residual(w * inv, Bicomplex::ONE).max(rel_residual(inv, via_modulus)),
            Err(_) => f64::INFINITY,
        }
    });
    // For each sample draw, one element on the cone and one generic element.
    cx.case("null-cone:characterization", "null cone = {z(i1 +- i2)}", |a, b, _| {
        let z = a.z1();
        let sign = if b.w0 >= 0.0 { 1.0 } else { -1.0 };
        let cone = Bicomplex::from_complex(z) * Bicomplex::new(0.0, 1.0, sign, 0.0);
        let mut r = if cone.is_null_cone(bvk_core::bicomplex::NULL_CONE_TOL) { 0.0 } else { 1.0 };
        r += cone.p1().norm().min(cone.p2().norm()) / 1f64.max(cone.norm());
        if cone.inverse().is_ok() {
            r += 1.0;
        }
        // a generic element is off the cone unless one idempotent component vanishes
        let generic_off = !b.is_null_cone(bvk_core::bicomplex::NULL_CONE_TOL);
        let components_off = b.p1().norm().min(b.p2().norm()) > 1e-5 * 1f64.max(b.norm());
        if generic_off != components_off {
            r += 1.0;
        }
        r
    });
    cx.case("idempotent:round-trip", "unique idempotent representation", |w, _, _| {
        let p = w.to_idempotent();
        rel_residual(Bicomplex::from_idempotent(p), w)
            .max(rel_residual(w, Bicomplex::from_complex(p.p1) * Bicomplex::E1 + Bicomplex::from_complex(p.p2) * Bicomplex::E2))
    });
    cx.case("idempotent:transport", "ring operations act componentwise on idempotent components", |a, b, _| {
        let (pa, pb) = (a.to_idempotent(), b.to_idempotent());
        let t = |w: Bicomplex| {
            let p = w.to_idempotent();
            (p.p1, p.p2)
        };
        let mut r = pair_residual(t(a + b), (pa.p1 + pb.p1, pa.p2 + pb.p2))
            .max(pair_residual(t(a - b), (pa.p1 - pb.p1, pa.p2 - pb.p2)))
            .max(pair_residual(t(a * b), (pa.p1 * pb.p1, pa.p2 * pb.p2)))
            .max(pair_residual(t(a * 0.75), (pa.p1 * 0.75, pa.p2 * 0.75)));
        if let Ok(inv) = b.inverse() {
            r = r.max(pair_residual(t(inv), (pb.p1.inv(), pb.p2.inv())));
        }
        r
    });
    cx.case("pi:involution", "pi swaps the i1 and i2 components", |w, _, _| {
        rel_residual(w.pi_map().pi_map(), w)
            .max(rel_residual(w.pi_map(), Bicomplex::new(w.w0, w.w2, w.w1, w.w3)))
    });
    cx.case("pi:homomorphism", "pi is additive and multiplicative", |a, b, _| {
        let mut r = rel_residual((a + b).pi_map(), a.pi_map() + b.pi_map())
            .max(rel_residual((a * b).pi_map(), a.pi_map() * b.pi_map()));
        if let (Ok(q), Ok(pq)) = (a.checked_div(b), a.pi_map().checked_div(b.pi_map())) {
            r = r.max(rel_residual(q.pi_map(), pq));
        }
        r
    });
    cx.case("pi:conjugations", "pi exchanges dagger1 and dagger2 and fixes dagger3", |w, _, _| {
        let p = w.pi_map();
        max3(
            rel_residual(w.conj(Conjugation::Dagger1).pi_map(), p.conj(Conjugation::Dagger2)),
            rel_residual(w.conj(Conjugation::Dagger2).pi_map(), p.conj(Conjugation::Dagger1)),
            rel_residual(w.conj(Conjugation::Dagger3).pi_map(), p.conj(Conjugation::Dagger3)),
        )
    });
    cx.case("norm:euclidean", "|w| = sqrt(Re |w|^2_j)", |w, _, _| {
        let n = w.norm();
        let via_j = w.modulus_sq(ModulusAxis::J).w0.sqrt();
        let direct = w.components().iter().map(|c| c * c).sum::<f64>().sqrt();
        (n - via_j).abs().max((n - direct).abs()) / 1f64.max(n)
    });
    cx.out
}
