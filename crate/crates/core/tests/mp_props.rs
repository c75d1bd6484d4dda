use mpcodes::oracle::{self, so_by_definition, VerifyConfig};
use mpcodes::random::{random_completion, random_mp, random_mp_shaped, InstanceSpec, Shape};
use mpcodes::{DistanceConfig, Field, GeneralCheckConfig, LinearCode, MpCode, Verdict};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> (MpCode, u32, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mp, ell) = random_mp(&mut rng, &InstanceSpec::default());
    (mp, ell, rng)
}

fn shaped(seed: u64, q: u32, shape: Shape) -> (MpCode, u32, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = Field::of_order(q).unwrap();
    let ell = (seed % f.degree() as u64) as u32;
    let (mp, ell) = random_mp_shaped(&mut rng, &f, ell, shape, &InstanceSpec::default());
    (mp, ell, rng)
}

fn order() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 4, 5, 8, 9])
}

fn shape() -> impl Strategy<Value = Shape> {
    prop::sample::select(vec![Shape::FullRank, Shape::RankDeficient, Shape::Tall])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn structured_dual_is_the_dual_of_the_expansion(seed: u64) {
        let (mp, ell, _) = instance(seed);
        let expected = mp.expand().galois_dual(ell).unwrap();
        prop_assert_eq!(&mp.dual_general(ell).unwrap(), &expected);
        prop_assert_eq!(&mp.dual(ell).unwrap(), &expected);
        let e = mp.field().degree();
        prop_assert_eq!(expected.dim() + mp.expand().dim(), mp.len());
        prop_assert_eq!(expected.galois_dual((e - ell) % e).unwrap(), mp.expand());
    }

    #[test]
    fn self_orthogonality_check_is_exact(q in order(), seed: u64, s in shape()) {
        let (mp, ell, _) = shaped(seed, q, s);
        let report = mp.check_self_orthogonal(ell).unwrap();
        let code = mp.expand();
        let truth = code.is_galois_self_orthogonal(ell).unwrap();
        prop_assert_eq!(report.verdict == Verdict::Holds, truth);
        prop_assert!(report.verdict != Verdict::Inconclusive);
        prop_assert_eq!(so_by_definition(code.generator(), ell), truth);
    }

    #[test]
    fn full_rank_dual_containment_is_exact_and_completion_free(q in order(), seed: u64) {
        let (mp, ell, mut rng) = shaped(seed, q, Shape::FullRank);
        let code = mp.expand();
        let truth = code.galois_dual(ell).unwrap().is_subcode_of(&code).unwrap();
        let base = mp.check_dual_containing_full_rank(ell).unwrap();
        prop_assert_eq!(base.verdict == Verdict::Holds, truth);
        for _ in 0..5 {
            let b = random_completion(&mut rng, mp.matrix());
            let other = mp.check_dual_containing_full_rank_with(&b, ell).unwrap();
            prop_assert_eq!(other.verdict, base.verdict);
            prop_assert_eq!(other.requirements().is_empty(), base.requirements().is_empty());
        }
    }

    #[test]
    fn general_dual_containment_is_sound(q in order(), seed: u64, s in shape()) {
        let (mp, ell, _) = shaped(seed, q, s);
        let report = mp.check_dual_containing_general(ell, &GeneralCheckConfig::default()).unwrap();
        let code = mp.expand();
        let truth = code.galois_dual(ell).unwrap().is_subcode_of(&code).unwrap();
        if report.verdict == Verdict::Holds {
            prop_assert!(truth);
        }
        prop_assert!(report.verdict != Verdict::Fails || !truth);
    }

    #[test]
    fn expansion_is_the_sum_over_partition_blocks(seed: u64) {
        let (mp, _, _) = instance(seed);
        let part = mp.row_partition();
        let mut acc = LinearCode::zero(mp.field(), mp.len());
        for block in &part.blocks {
            acc = acc.sum(&mp.restrict(block).unwrap().expand()).unwrap();
        }
        prop_assert_eq!(acc, mp.expand());
        let mut seen: Vec<usize> = part.blocks.concat();
        seen.extend(&part.discarded);
        seen.sort();
        prop_assert_eq!(seen, (0..mp.m()).collect::<Vec<_>>());
    }

    #[test]
    fn distance_bounds_never_exceed_the_distance(q in order(), seed: u64, s in shape()) {
        let (mp, _, _) = shaped(seed, q, s);
        let code = mp.expand();
        prop_assume!(code.dim() > 0);
        let cfg = DistanceConfig::default();
        let d = code.min_distance(&cfg).unwrap();
        if mp.matrix().is_nsc().unwrap() {
            prop_assert!(mp.blackmore_bound(&cfg).unwrap() <= d.upper());
        }
        if mp.matrix().has_full_row_rank() {
            prop_assert!(mp.cao_bound(&cfg).unwrap() <= d.upper());
        }
    }

    #[test]
    fn oracle_agrees_with_structured_results(seed: u64) {
        let (mp, ell, _) = instance(seed);
        let report = oracle::verify(&mp, ell, &[], &VerifyConfig::default()).unwrap();
        prop_assert!(report.all_agree(), "{}", report);
    }
}
