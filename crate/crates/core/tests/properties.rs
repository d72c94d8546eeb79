mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use ratdecomp::cli::parse_rational_function;
use ratdecomp::decompose::{compute_u_linear, compute_u_series, mobius_relation};
use ratdecomp::factor::squarefree_part;
use ratdecomp::fields::{Field, PrimeField, Rationals};
use ratdecomp::grs::near_separated;
use ratdecomp::pencil::{canonical_generator, compose};
use ratdecomp::polys::{gcd, is_squarefree, MultiPoly};
use ratdecomp::Stream;

use common::*;

fn names() -> Vec<String> {
    vec!["X".into(), "Y".into()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn both_u_solvers_agree(seed in any::<u64>(), du in 2usize..=3, dh in 1u32..=3) {
        let k = PrimeField::new(10007).unwrap();
        let mut rng = Stream::seed_from_u64(seed);
        let u = rand_u(&k, du, &mut rng);
        let h = rand_h(&k, 2, dh, &mut rng);
        let f = compose(&u, &h);
        prop_assert_eq!(compute_u_linear(&f, &h), Ok(u.clone()));
        prop_assert_eq!(compute_u_series(&f, &h), Ok(u));
    }

    #[test]
    fn canonical_generator_is_equivalent(seed in any::<u64>(), dh in 1u32..=3) {
        let k = Rationals;
        let mut rng = Stream::seed_from_u64(seed);
        let h = rand_h(&k, 2, dh, &mut rng);
        let c = canonical_generator(&h);
        prop_assert!(mobius_relation(&c, &h).is_some());
        prop_assert_eq!(canonical_generator(&c), c);
    }

    #[test]
    fn printed_functions_reparse(seed in any::<u64>(), d in 1u32..=4) {
        let k = Rationals;
        let mut rng = Stream::seed_from_u64(seed);
        let h = rand_h(&k, 2, d, &mut rng);
        let text = h.fmt_with(&names());
        prop_assert_eq!(parse_rational_function(&text, &names(), &k).unwrap(), h);
    }

    #[test]
    fn near_separated_is_antisymmetric(seed in any::<u64>(), d in 1u32..=3) {
        let k = PrimeField::new(101).unwrap();
        let mut rng = Stream::seed_from_u64(seed);
        let big = near_separated(&rand_h(&k, 2, d, &mut rng)).poly;
        prop_assert_eq!(big.swap_halves(), big.neg());
        let diag: Vec<MultiPoly<PrimeField>> = (0..4).map(|i| MultiPoly::var(k, 2, i % 2)).collect();
        prop_assert!(big.compose_all(&diag).is_zero());
    }

    #[test]
    fn squares_are_detected(seed in any::<u64>(), d in 1u32..=3) {
        let k = Rationals;
        let mut rng = Stream::seed_from_u64(seed);
        let p = rand_poly(&k, 2, d, &mut rng);
        let g = rand_poly(&k, 2, 1, &mut rng);
        let sq = p.mul(&g).mul(&g);
        prop_assert!(!is_squarefree(&sq));
        let parts = squarefree_part(&sq).unwrap();
        prop_assert!(parts.factors.iter().any(|(h, m)| *m >= 2 && h.tdeg() >= 1));
        let back = parts.factors.iter().fold(MultiPoly::constant(k, 2, parts.unit.clone()), |acc, (h, m)| acc.mul(&h.pow(*m as u32)));
        prop_assert_eq!(back, sq);
    }

    #[test]
    fn gcd_divides_both(seed in any::<u64>()) {
        let k = PrimeField::new(101).unwrap();
        let mut rng = Stream::seed_from_u64(seed);
        let c = rand_poly(&k, 2, 1, &mut rng);
        let a = rand_poly(&k, 2, 2, &mut rng).mul(&c);
        let b = rand_poly(&k, 2, 2, &mut rng).mul(&c);
        let g = gcd(&a, &b);
        prop_assert!(g.divides(&a) && g.divides(&b) && c.divides(&g));
        prop_assert!(k.is_one(g.lead_coeff()));
    }
}
