//! Randomised properties over small algebras, corings and scalars.

mod oracle;

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use coring_lab::algebra::{
    cyclic_table, group_algebra, matrix_algebra, tensor_algebra, truncated_polynomial, upper_triangular, Algebra,
    AlgebraExtension,
};
use coring_lab::bimodule::regular_bimodule;
use coring_lab::cochain::{cohomology_report, relative_hochschild_complex, ComplexOptions};
use coring_lab::coring::dual_coring;
use coring_lab::duality::DualityContext;
use coring_lab::exactlin::{Field, Scalar};
use coring_lab::operadic::OperadContext;

fn small_algebra(f: Field, kind: u8, n: usize) -> Algebra {
    match kind % 4 {
        0 => truncated_polynomial(f, n).unwrap(),
        1 => matrix_algebra(f, n.min(2)),
        2 => upper_triangular(f, n.min(2)),
        _ => group_algebra(f, &cyclic_table(n)).unwrap(),
    }
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

fn vector(f: Field, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| f.from_i64(x)).collect()
}

fn opts() -> ComplexOptions {
    ComplexOptions { max_space: 20000 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_strings_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let q = Field::Rational;
        let s = q.parse(&format!("{n}/{d}")).unwrap();
        prop_assert_eq!(q.parse(&s.to_json_string()).unwrap(), s.clone());
        prop_assert_eq!(s * q.from_i64(d), q.from_i64(n));
    }

    #[test]
    fn field_axioms(p in prime(), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        for f in [Field::prime(p).unwrap(), Field::Rational] {
            let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
            prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
            if !a.is_zero() {
                prop_assert!((a.clone() * a.inv()).is_one());
            }
            prop_assert!((a.clone() - a).is_zero());
        }
    }

    #[test]
    fn gf_p_fractions_reduce(p in prime(), n in -100i64..100, d in 1i64..100) {
        let f = Field::prime(p).unwrap();
        let r = f.parse(&format!("{n}/{d}"));
        if d % p as i64 == 0 {
            prop_assert!(r.is_err());
        } else {
            prop_assert_eq!(r.unwrap() * f.from_i64(d), f.from_i64(n));
        }
    }

    #[test]
    fn tensor_products_are_associative_and_unital(
        p in prime(), k1 in 0u8..4, n1 in 1usize..4, k2 in 0u8..4, n2 in 1usize..4,
        x in prop::collection::vec(-3i64..4, 64),
        y in prop::collection::vec(-3i64..4, 64),
        z in prop::collection::vec(-3i64..4, 64),
    ) {
        let f = Field::prime(p).unwrap();
        let t = tensor_algebra(&small_algebra(f, k1, n1), &small_algebra(f, k2, n2)).unwrap();
        let d = t.dim();
        let (x, y, z) = (vector(f, &x[..d]), vector(f, &y[..d]), vector(f, &z[..d]));
        let lhs = t.mul_dense(&t.mul_dense(&x, &y), &z);
        let rhs = t.mul_dense(&x, &t.mul_dense(&y, &z));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(t.mul_dense(&t.unit_dense(), &x), x.clone());
        prop_assert_eq!(t.mul_dense(&x, &t.unit_dense()), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn hochschild_dims_match_the_oracle(p in prime(), m in 2usize..5) {
        let f = Field::prime(p).unwrap();
        let ext = AlgebraExtension::over_field(Arc::new(truncated_polynomial(f, m).unwrap()));
        let cx = relative_hochschild_complex(&ext, Arc::new(regular_bimodule(ext.big().clone())), 3).unwrap();
        prop_assert!(cx.verify_square_zero());
        let mut dims = cohomology_report(&cx).unwrap().dims;
        dims.truncate(3);
        prop_assert_eq!(dims, oracle::truncated(p as i64, m).cohomology(2));
    }

    #[test]
    fn m1_squares_to_zero_and_cup_is_associative(p in prime(), kind in 0u8..4, n in 2usize..4, seed in any::<u64>()) {
        let f = Field::prime(p).unwrap();
        let ext = AlgebraExtension::over_field(Arc::new(small_algebra(f, kind, n)));
        let ctx = OperadContext::endomorphism(&ext, 3, &opts()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ctx.sample(1, &mut rng);
        let b = ctx.sample(1, &mut rng);
        let c = ctx.sample(1, &mut rng);
        prop_assert!(ctx.m1(&ctx.m1(&a).unwrap()).unwrap().is_zero());
        let left = ctx.cup(&ctx.cup(&a, &b).unwrap(), &c).unwrap();
        let right = ctx.cup(&a, &ctx.cup(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left.values, right.values);
    }

    #[test]
    fn rop_is_linear_and_commutes_with_m1(p in prime(), m in 2usize..4, seed in any::<u64>()) {
        let f = Field::prime(p).unwrap();
        let ext = AlgebraExtension::over_field(Arc::new(truncated_polynomial(f, m).unwrap()));
        let dc = dual_coring(&ext).unwrap();
        let ctx = DualityContext::new(dc.coring, 2, &opts()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for n in 0..2 {
            let g = ctx.coend().sample(n, &mut rng);
            let h = ctx.coend().sample(n, &mut rng);
            let sum = ctx.rop_map(&g.add(&h)).unwrap();
            prop_assert_eq!(sum.values, ctx.rop_map(&g).unwrap().add(&ctx.rop_map(&h).unwrap()).values);
            let lhs = ctx.rop_map(&ctx.coend().m1(&g).unwrap()).unwrap();
            let rhs = ctx.end().m1(&ctx.rop_map(&g).unwrap()).unwrap();
            prop_assert_eq!(lhs.values, rhs.values);
        }
    }
}
