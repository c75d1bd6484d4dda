use mpcodes::oracle::{enumerate, min_distance_exhaustive, Subspace};
use mpcodes::random::random_code;
use mpcodes::{galois_inner_product, Distance, DistanceConfig, Elem, Field, LinearCode};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn order() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 4, 5, 8, 9])
}

fn code(q: u32, seed: u64, max_n: usize) -> (Field, LinearCode, ChaCha8Rng) {
    let f = Field::of_order(q).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(0..=n);
    let c = random_code(&mut rng, &f, n, k);
    (f, c, rng)
}

/// Every vector of `F^n` in counting order.
fn all_vectors(f: &Field, n: usize) -> Vec<Vec<Elem>> {
    let q = f.order();
    (0..q.pow(n as u32))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = x % q;
                    x /= q;
                    f.elem(d).unwrap()
                })
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dual_dimensions_add_up(q in order(), seed: u64) {
        let (f, c, _) = code(q, seed, 9);
        for ell in 0..f.degree() {
            prop_assert_eq!(c.dim() + c.galois_dual(ell).unwrap().dim(), c.len());
        }
    }

    #[test]
    fn galois_duals_invert_each_other(q in order(), seed: u64) {
        let (f, c, _) = code(q, seed, 9);
        let e = f.degree();
        for ell in 0..e {
            let back = c.galois_dual(ell).unwrap().galois_dual((e - ell) % e).unwrap();
            prop_assert_eq!(&back, &c);
        }
    }

    #[test]
    fn subcode_test_matches_membership(q in order(), seed: u64) {
        let (f, a, mut rng) = code(q, seed, 6);
        let k = rng.gen_range(0..=a.len());
        let b = match rng.gen_range(0..3) {
            0 => a.sum(&random_code(&mut rng, &f, a.len(), 1)).unwrap(),
            _ => random_code(&mut rng, &f, a.len(), k),
        };
        prop_assume!((q as u64).pow(a.dim() as u32) <= 1 << 12);
        let words = enumerate(&a, 1 << 12).unwrap();
        let by_members = words.words.iter().all(|w| Subspace::of_code(&b).contains(w));
        prop_assert_eq!(a.is_subcode_of(&b).unwrap(), by_members);
    }

    #[test]
    fn distance_strategies_agree(q in order(), seed: u64) {
        let (_, c, _) = code(q, seed, 8);
        prop_assume!(c.dim() > 0);
        let enum_only = DistanceConfig { enum_cap: u64::MAX, lw_cap: 1 };
        let lw_only = DistanceConfig { enum_cap: 1, lw_cap: u64::MAX };
        let by_enum = c.min_distance(&enum_only).unwrap();
        let by_lw = c.min_distance(&lw_only).unwrap();
        prop_assert_eq!(by_enum.exact(), by_lw.exact());
        prop_assert_eq!(by_enum, Distance::Exact { d: by_enum.exact().unwrap(), strategy: mpcodes::Strategy::Enumeration });
        if (q as u64).pow(c.dim() as u32) <= 1 << 16 {
            prop_assert_eq!(by_enum.exact(), Some(min_distance_exhaustive(&c, 1 << 16).unwrap()));
        }
    }

    #[test]
    fn dual_is_the_annihilator(q in order(), seed: u64) {
        let (f, c, _) = code(q, seed, 4);
        prop_assume!((q as u64).pow(c.len() as u32) <= 1 << 12);
        for ell in 0..f.degree() {
            let dual = c.galois_dual(ell).unwrap();
            for x in all_vectors(&f, c.len()) {
                let orth = c
                    .generator()
                    .row_iter()
                    .all(|g| galois_inner_product(&f, g, &x, ell).unwrap().is_zero());
                prop_assert_eq!(orth, dual.contains(&x));
            }
        }
    }
}
