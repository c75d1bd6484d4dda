//! Acceptance criteria 1–7. Runs without the libtest harness so that each
//! criterion prints exactly one `PASS`/`FAIL` line; exits nonzero if any fail.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use mpcodes::format::parse_mp;
use mpcodes::mpcode::{dc_conditions, dc_conditions_with, reduce_requirements};
use mpcodes::oracle::so_by_definition;
use mpcodes::random::{random_completion, seeded_instances, InstanceSpec};
use mpcodes::search::{search, Mode, SearchConfig};
use mpcodes::{
    Condition, Distance, DistanceConfig, Field, GeneralCheckConfig, LinearCode, Matrix, MpCode,
    Strategy, Verdict,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load(name: &str) -> MpCode {
    let text = std::fs::read_to_string(fixtures().join(name)).expect("fixture exists");
    parse_mp(&text).expect("fixture parses").mp
}

fn matrix(q: u32, rows: &[&str]) -> Matrix {
    Matrix::from_tokens(&Field::of_order(q).unwrap(), rows).unwrap()
}

fn exact(code: &LinearCode, cfg: &DistanceConfig) -> Result<(usize, Strategy), String> {
    match code.min_distance(cfg).map_err(|e| e.to_string())? {
        Distance::Exact { d, strategy } => Ok((d, strategy)),
        b => Err(format!("distance not exact: {b:?}")),
    }
}

/// Asserts `[n,k,d]` exactly and returns the strategy used.
fn params(
    what: &str,
    code: &LinearCode,
    n: usize,
    k: usize,
    d: usize,
    cfg: &DistanceConfig,
) -> Result<Strategy, String> {
    let (got, strategy) = exact(code, cfg)?;
    ensure!(
        (code.len(), code.dim(), got) == (n, k, d),
        "{what}: got [{},{},{got}], expected [{n},{k},{d}]",
        code.len(),
        code.dim()
    );
    Ok(strategy)
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure!(took <= limit, "{what} took {took:?}, limit {limit:?}");
    Ok(())
}

fn c1_f5_full_rank() -> Check {
    let t = Instant::now();
    let cfg = DistanceConfig::default();
    let mp = load("f5_full_rank.mp");
    params("expansion", &mp.expand(), 20, 5, 12, &cfg)?;
    let dual = mp.dual_full_rank(0).map_err(|e| e.to_string())?;
    params("dual", &dual.code, 20, 15, 4, &cfg)?;
    ensure!(
        dual.code == mp.expand().euclidean_dual(),
        "closed-form dual differs from direct dual"
    );
    within(t, Duration::from_secs(10), "criterion")?;
    Ok("[20,5,12], dual [20,15,4]".into())
}

fn c2_f8_galois_dual() -> Check {
    let mp = load("f8_galois_dual.mp");
    let t = Instant::now();
    let big = DistanceConfig {
        enum_cap: 1 << 27,
        ..DistanceConfig::default()
    };
    let s = params("expansion", &mp.expand(), 50, 9, 20, &big)?;
    ensure!(
        s == Strategy::Enumeration,
        "expansion distance not by full enumeration"
    );
    within(t, Duration::from_secs(600), "enumeration of 8^9 words")?;

    let t = Instant::now();
    let a = mp.matrix();
    let b = a
        .vstack(&matrix(8, &["1 0 0 0 0", "0 1 0 0 0", "0 0 1 0 0"]))
        .unwrap();
    let dual = mp.dual_full_rank_with(&b, 2).map_err(|e| e.to_string())?;
    let s = params("dual", &dual.code, 50, 41, 3, &DistanceConfig::default())?;
    ensure!(
        s == Strategy::LowWeight,
        "dual distance not by low-weight search"
    );
    within(t, Duration::from_secs(10), "dual")?;

    let displayed = matrix(
        8,
        &[
            "0 0 0 0 a^5",
            "0 0 0 a^4 a^2",
            "1 0 0 a^2 1",
            "0 1 0 a a",
            "0 0 1 a^3 a^5",
        ],
    );
    ensure!(
        dual.mp.matrix() == &displayed,
        "transformed matrix:\n{}",
        dual.mp.matrix()
    );
    let direct = b.frobenius_map(1).inverse().unwrap().transpose();
    ensure!(
        direct == displayed,
        "(σ(B)^-1)ᵀ computed directly:\n{direct}"
    );
    ensure!(
        dual.code == mp.dual_full_rank(2).unwrap().code,
        "dual depends on the completion"
    );
    Ok("[50,9,20] by enumeration, dual [50,41,3] by low-weight, (σ(B)^-1)ᵀ matches".into())
}

fn c3_rank_deficient() -> Check {
    let cfg = DistanceConfig::default();
    let t = Instant::now();
    let bin = load("binary_rank_deficient.mp");
    ensure!(
        !bin.matrix().has_full_row_rank(),
        "binary matrix unexpectedly of full row rank"
    );
    ensure!(
        bin.row_partition().blocks == vec![vec![0, 2], vec![1, 3]],
        "partition {:?}",
        bin.row_partition()
    );
    params("binary expansion", &bin.expand(), 10, 7, 2, &cfg)?;
    params(
        "binary dual",
        &bin.dual_general(0).map_err(|e| e.to_string())?,
        10,
        3,
        5,
        &cfg,
    )?;
    within(t, Duration::from_secs(10), "binary instance")?;

    let t = Instant::now();
    let f4 = load("f4_rank_deficient.mp");
    ensure!(
        !f4.matrix().has_full_row_rank(),
        "F4 matrix unexpectedly of full row rank"
    );
    let s = params("F4 expansion", &f4.expand(), 24, 20, 3, &cfg)?;
    ensure!(s == Strategy::LowWeight, "F4 expansion distance by {s}");
    let dual = f4.dual_general(0).map_err(|e| e.to_string())?;
    let s = params("F4 dual", &dual, 24, 4, 15, &cfg)?;
    ensure!(s == Strategy::Enumeration, "F4 dual distance by {s}");
    within(t, Duration::from_secs(10), "F4 instance")?;
    Ok("[10,7,2] / [10,3,5]; [24,20,3] / [24,4,15]".into())
}

fn c4_self_orthogonal() -> Check {
    let t = Instant::now();
    let cfg = DistanceConfig::default();

    let ex = load("f4_hermitian_so.mp");
    let r = ex.check_self_orthogonal(1).map_err(|e| e.to_string())?;
    ensure!(
        r.verdict == Verdict::Holds,
        "Hermitian 2x4 verdict {}",
        r.verdict
    );
    ensure!(
        r.condition_matrix == matrix(4, &["0 0", "0 1"]),
        "Hermitian 2x4 product\n{}",
        r.condition_matrix
    );
    params("Hermitian 2x4 expansion", &ex.expand(), 20, 5, 12, &cfg)?;

    let five = load("f4_so_5x3.mp");
    let r = five.check_self_orthogonal(1).map_err(|e| e.to_string())?;
    ensure!(r.verdict == Verdict::Holds, "5x3 verdict {}", r.verdict);
    let product = matrix(
        4,
        &[
            "1 0 a a^2 0",
            "0 0 0 a a^2",
            "a^2 0 1 a^2 a",
            "a a^2 a 0 a",
            "0 a a^2 a^2 1",
        ],
    );
    ensure!(
        r.condition_matrix == product,
        "5x3 product\n{}",
        r.condition_matrix
    );
    let listed = [
        (1, 1),
        (1, 3),
        (1, 4),
        (2, 4),
        (2, 5),
        (3, 3),
        (3, 4),
        (3, 5),
        (4, 5),
        (5, 5),
    ];
    let mut expected: Vec<Condition> = listed
        .iter()
        .map(|&(i, j)| Condition::Orthogonal {
            sub: i - 1,
            sup: j - 1,
        })
        .collect();
    expected.sort();
    let mut got = r.requirements();
    got.sort();
    ensure!(got == expected, "5x3 containments {got:?}");
    params("5x3 expansion", &five.expand(), 15, 5, 4, &cfg)?;
    let dual = five.dual(1).map_err(|e| e.to_string())?;
    params("5x3 dual", &dual, 15, 10, 3, &cfg)?;
    ensure!(
        dual.is_galois_dual_containing(1).unwrap(),
        "5x3 dual is not dual-containing"
    );

    let fixed = load("binary_so_45.mp");
    ensure!(
        fixed.check_self_orthogonal(0).unwrap().verdict == Verdict::Holds,
        "fixed [45,3,24] not SO"
    );
    params("fixed binary instance", &fixed.expand(), 45, 3, 24, &cfg)?;

    let a = matrix(2, &["1 1 1 0 1", "1 1 0 1 1"]);
    let scfg = SearchConfig {
        target: Some(24),
        seed: 1,
        ..SearchConfig::default()
    };
    let out = search(&a, Mode::SelfOrthogonal, 0, 9, &[1, 2], &scfg).map_err(|e| e.to_string())?;
    let cand = out
        .candidates
        .first()
        .ok_or("search found no [45,3,24] instance")?;
    let code = cand.mp.expand();
    params("searched instance", &code, 45, 3, 24, &cfg)?;
    ensure!(
        code.is_galois_self_orthogonal(0).unwrap(),
        "searched instance not self-orthogonal"
    );
    within(t, Duration::from_secs(30), "criterion")?;
    Ok(format!(
        "Hermitian 2x4 holds [20,5,12]; 5x3 holds with 10 containments [15,5,4] / [15,10,3]; search hit [45,3,24] at attempt {}",
        cand.attempt
    ))
}

fn c5_dual_containing() -> Check {
    let t = Instant::now();
    let cfg = DistanceConfig::default();
    let general = GeneralCheckConfig::default();

    let a = matrix(9, &["a^7 a a^7", "2 1 a^7"]);
    let (_, conds) = dc_conditions(&a, 1).map_err(|e| e.to_string())?;
    let reqs = reduce_requirements(conds.into_iter().map(|c| c.2));
    let expected = vec![Condition::Whole(0), Condition::DualIn { sub: 1, sup: 1 }];
    ensure!(reqs == expected, "F9 2x3 requirements {reqs:?}");

    let f9 = load("f9_dc_4x4.mp");
    let r = f9
        .check_dual_containing(1, &general)
        .map_err(|e| e.to_string())?;
    ensure!(r.verdict == Verdict::Holds, "F9 4x4 verdict {}", r.verdict);
    let zeta = matrix(9, &["1 0 a^7 a", "0 0 0 a", "a^5 0 1 a^3", "a^3 a^3 a 0"]);
    ensure!(
        r.condition_matrix == zeta,
        "F9 zeta\n{}",
        r.condition_matrix
    );
    let s = params("F9 expansion", &f9.expand(), 20, 17, 3, &cfg)?;
    ensure!(s == Strategy::LowWeight, "F9 distance by {s}");

    let f5 = load("f5_dc_3x4.mp");
    let r = f5
        .check_dual_containing(0, &general)
        .map_err(|e| e.to_string())?;
    ensure!(r.verdict == Verdict::Holds, "F5 3x4 verdict {}", r.verdict);
    params("F5 expansion", &f5.expand(), 20, 11, 4, &cfg)?;
    let b = f5.matrix().vstack(&matrix(5, &["1 0 0 0"])).unwrap();
    let (zeta, _) = dc_conditions_with(&b, 3, 0).map_err(|e| e.to_string())?;
    let shown = matrix(5, &["2 4 3 0", "4 0 1 0", "3 1 1 1", "0 0 1 0"]);
    ensure!(zeta == shown, "F5 (BBᵀ)^-1\n{zeta}");
    let with = f5.check_dual_containing_full_rank_with(&b, 0).unwrap();
    ensure!(
        with.verdict == Verdict::Holds,
        "F5 verdict with displayed completion {}",
        with.verdict
    );

    let f8 = load("f8_dc_5x5.mp");
    let r = f8
        .check_dual_containing(0, &general)
        .map_err(|e| e.to_string())?;
    ensure!(r.verdict == Verdict::Holds, "F8 5x5 verdict {}", r.verdict);
    params("F8 expansion", &f8.expand(), 25, 22, 3, &cfg)?;
    let shown = matrix(
        8,
        &[
            "a a^6 a^3 a^3 a^2",
            "a^6 a^2 1 a^5 a^5",
            "a^3 1 a^4 a 0",
            "a^3 a^5 a a^5 0",
            "a^2 a^5 0 0 0",
        ],
    );
    ensure!(
        r.condition_matrix == shown,
        "F8 (AAᵀ)^-1\n{}",
        r.condition_matrix
    );

    let tall = load("f3_tall_dc.mp");
    ensure!(
        !tall.matrix().has_full_row_rank(),
        "tall F3 matrix has full row rank"
    );
    let r = tall
        .check_dual_containing(0, &general)
        .map_err(|e| e.to_string())?;
    ensure!(r.verdict == Verdict::Holds, "tall F3 verdict {}", r.verdict);
    ensure!(
        r.pair == Some((vec![0, 1, 2], vec![0, 1, 2])),
        "tall F3 pair {:?}",
        r.pair
    );
    ensure!(
        r.condition_matrix == matrix(3, &["1 1 1", "1 2 0", "1 0 0"]),
        "tall F3 zeta\n{}",
        r.condition_matrix
    );
    params("tall F3 expansion", &tall.expand(), 18, 12, 4, &cfg)?;
    within(t, Duration::from_secs(60), "criterion")?;
    Ok(
        "F9 2x3 requirements; F9 [20,17,3], F5 [20,11,4], F8 [25,22,3], F3 [18,12,4] all hold"
            .into(),
    )
}

#[derive(Default)]
struct Tally {
    instances: usize,
    rank_deficient: usize,
    tall: usize,
    so_holds: usize,
    dc_full_rank: usize,
    dc_holds: usize,
    completions: usize,
    blackmore: usize,
    cao: usize,
}

fn c6_properties() -> Check {
    let t = Instant::now();
    let cfg = DistanceConfig::default();
    let mut tally = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (idx, (mp, ell)) in seeded_instances(6, 600, &InstanceSpec::default())
        .into_iter()
        .enumerate()
    {
        let ctx = |what: &str| {
            format!(
                "instance {idx} (q={}, ell={ell}): {what}",
                mp.field().order()
            )
        };
        let a = mp.matrix();
        let (m, nn) = a.shape();
        tally.instances += 1;
        tally.rank_deficient += usize::from(a.rank() < m);
        tally.tall += usize::from(m > nn);

        // (a) and (d)
        let code = mp.expand();
        let e = mp.field().degree();
        let truth_dual = code.galois_dual(ell).unwrap();
        let dual = mp.dual_general(ell).map_err(|e| ctx(&e.to_string()))?;
        ensure!(dual == truth_dual, "{}", ctx("dual_general differs"));
        ensure!(
            code.dim() + dual.dim() == mp.len(),
            "{}",
            ctx("dimensions do not add up")
        );
        ensure!(
            dual.galois_dual((e - ell) % e).unwrap() == code,
            "{}",
            ctx("double dual differs")
        );

        // (b)
        let so = mp.check_self_orthogonal(ell).unwrap().verdict;
        let so_truth = so_by_definition(code.generator(), ell);
        ensure!(
            (so == Verdict::Holds) == so_truth,
            "{}",
            ctx("self-orthogonality verdict")
        );
        tally.so_holds += usize::from(so_truth);

        // (c)
        let dc_truth = truth_dual.is_subcode_of(&code).unwrap();
        if a.has_full_row_rank() {
            tally.dc_full_rank += 1;
            tally.dc_holds += usize::from(dc_truth);
            let v = mp.check_dual_containing_full_rank(ell).unwrap().verdict;
            ensure!(
                (v == Verdict::Holds) == dc_truth,
                "{}",
                ctx("dual-containment verdict")
            );
            for _ in 0..5 {
                let b = random_completion(&mut rng, a);
                let w = mp
                    .check_dual_containing_full_rank_with(&b, ell)
                    .unwrap()
                    .verdict;
                ensure!(w == v, "{}", ctx("verdict changed with the completion"));
                tally.completions += 1;
            }
        } else {
            let v = mp
                .check_dual_containing_general(ell, &GeneralCheckConfig::default())
                .unwrap()
                .verdict;
            ensure!(
                v != Verdict::Holds || dc_truth,
                "{}",
                ctx("general check unsound")
            );
        }

        // (e)
        if code.dim() > 0 {
            let nsc = a.is_nsc().unwrap();
            let full = a.has_full_row_rank();
            if nsc || full {
                let (d, _) = exact(&code, &cfg).map_err(|e| ctx(&e))?;
                if nsc {
                    let bb = mp.blackmore_bound(&cfg).unwrap();
                    ensure!(bb <= d, "{}", ctx(&format!("NSC bound {bb} > d {d}")));
                    tally.blackmore += 1;
                }
                if full {
                    let cb = mp.cao_bound(&cfg).unwrap();
                    ensure!(cb <= d, "{}", ctx(&format!("full-rank bound {cb} > d {d}")));
                    tally.cao += 1;
                }
            }
        }
    }
    ensure!(tally.instances >= 500, "only {} instances", tally.instances);
    ensure!(
        tally.rank_deficient > 0 && tally.tall > 0,
        "corpus lacks rank-deficient or tall matrices"
    );
    within(t, Duration::from_secs(300), "criterion")?;
    Ok(format!(
        "{} instances ({} rank-deficient, {} with M>N, {} SO); {} full-rank DC checks ({} hold) x5 completions = {}; bounds checked {} NSC / {} full-rank",
        tally.instances,
        tally.rank_deficient,
        tally.tall,
        tally.so_holds,
        tally.dc_full_rank,
        tally.dc_holds,
        tally.completions,
        tally.blackmore,
        tally.cao
    ))
}

fn run_cli(args: &[&str]) -> Result<i32, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mpcodes"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    out.status
        .code()
        .ok_or_else(|| "killed by signal".to_string())
}

fn c7_oracle() -> Check {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "mp"))
        .collect();
    files.sort();
    let (bad, good): (Vec<PathBuf>, Vec<PathBuf>) = files.into_iter().partition(|p| {
        p.file_name()
            .unwrap()
            .to_string_lossy()
            .starts_with("corrupted")
    });
    ensure!(!good.is_empty() && !bad.is_empty(), "fixtures missing");
    for f in &good {
        let code = run_cli(&["verify", f.to_str().unwrap()])?;
        ensure!(code == 0, "verify {} exited {code}", f.display());
    }
    let code = run_cli(&["verify", "--random", "100", "--seed", "7"])?;
    ensure!(code == 0, "verify on 100 random instances exited {code}");
    for f in &bad {
        let code = run_cli(&["verify", f.to_str().unwrap()])?;
        ensure!(
            code != 0,
            "corrupted fixture {} verified cleanly",
            f.display()
        );
    }
    Ok(format!(
        "{} fixtures and 100 random instances agree; {} corrupted fixture rejected",
        good.len(),
        bad.len()
    ))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 F5 construction and dual", c1_f5_full_rank),
        ("2 F8 Galois dual", c2_f8_galois_dual),
        ("3 rank-deficient duals", c3_rank_deficient),
        ("4 self-orthogonality", c4_self_orthogonal),
        ("5 dual-containment", c5_dual_containing),
        ("6 property suite", c6_properties),
        ("7 oracle independence", c7_oracle),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {name} ({secs:.2}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.2}s): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
