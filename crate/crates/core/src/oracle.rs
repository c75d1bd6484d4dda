//! Brute-force ground truth.
//!
//! Everything here is written from the definitions and shares nothing with
//! the structured path beyond field arithmetic: spans are built by their own
//! incremental elimination, duals by sequential orthogonal complements or by
//! exhaustive search, and codes are compared through membership tests.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::lincode::{DistanceConfig, LinearCode};
use crate::matgf::Matrix;
use crate::mpcode::{GeneralCheckConfig, MpCode, Verdict};

/// Default limit on enumerated words.
pub const DEFAULT_CAP: u64 = 1 << 20;

fn count_words(q: u32, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(q as u128);
    }
    acc
}

fn ensure_cap(q: u32, k: usize, cap: u64) -> Result<()> {
    let needed = count_words(q, k);
    if needed > cap as u128 {
        Err(Error::CapExceeded { needed, cap })
    } else {
        Ok(())
    }
}

fn ip(field: &Field, a: &[Elem], b: &[Elem], ell: u32) -> Elem {
    let mut s = Elem::ZERO;
    for (&x, &y) in a.iter().zip(b) {
        s = field.add(s, field.mul(x, field.frobenius(y, ell)));
    }
    s
}

fn axpy(field: &Field, y: &mut [Elem], c: Elem, x: &[Elem]) {
    for (d, &s) in y.iter_mut().zip(x) {
        *d = field.add(*d, field.mul(c, s));
    }
}

/// All codewords of a code.
#[derive(Clone, Debug)]
pub struct CodewordSet {
    pub n: usize,
    pub words: Vec<Vec<Elem>>,
}

/// Every linear combination of `rows`, deduplicated.
pub fn enumerate_span(
    field: &Field,
    n: usize,
    rows: &[Vec<Elem>],
    cap: u64,
) -> Result<CodewordSet> {
    ensure_cap(field.order(), rows.len(), cap)?;
    let q = field.order() as usize;
    let total = q.pow(rows.len() as u32);
    let mut seen = HashSet::with_capacity(total);
    let mut words = Vec::with_capacity(total);
    for idx in 0..total {
        let mut w = vec![Elem::ZERO; n];
        let mut x = idx;
        for r in rows {
            let c = field.elem((x % q) as u32).expect("digit below q");
            x /= q;
            axpy(field, &mut w, c, r);
        }
        if seen.insert(w.clone()) {
            words.push(w);
        }
    }
    Ok(CodewordSet { n, words })
}

/// All `q^k` codewords of `code`.
pub fn enumerate(code: &LinearCode, cap: u64) -> Result<CodewordSet> {
    let rows: Vec<Vec<Elem>> = code.generator().row_iter().map(|r| r.to_vec()).collect();
    let set = enumerate_span(code.field(), code.len(), &rows, cap)?;
    if set.words.len() as u128 != count_words(code.field().order(), code.dim()) {
        return Err(Error::dims("generator rows are dependent"));
    }
    Ok(set)
}

/// A subspace held as a basis with distinct leading positions, each leading
/// entry scaled to 1.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    n: usize,
    basis: Vec<(usize, Vec<Elem>)>,
}

impl Subspace {
    pub fn new(field: &Field, n: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            n,
            basis: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(
        field: &Field,
        n: usize,
        rows: impl IntoIterator<Item = &'a [Elem]>,
    ) -> Subspace {
        let mut s = Subspace::new(field, n);
        for r in rows {
            s.insert(r);
        }
        s
    }

    pub fn of_code(code: &LinearCode) -> Subspace {
        Subspace::spanned_by(code.field(), code.len(), code.generator().row_iter())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &[Elem]> {
        self.basis.iter().map(|(_, v)| v.as_slice())
    }

    fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (lead, b) in &self.basis {
            let c = w[*lead];
            if !c.is_zero() {
                axpy(f, &mut w, f.neg(c), b);
            }
        }
        w
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        let w = self.reduce(v);
        let Some(lead) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let f = self.field.clone();
        let inv = f.inv(w[lead]).expect("nonzero");
        let w: Vec<Elem> = w.iter().map(|&x| f.mul(inv, x)).collect();
        // keep earlier vectors free of the new leading position
        for (_, b) in self.basis.iter_mut() {
            let c = b[lead];
            if !c.is_zero() {
                axpy(&f, b, f.neg(c), &w);
            }
        }
        self.basis.push((lead, w));
        true
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.n && self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Same set of vectors as `code`.
    pub fn equals_code(&self, code: &LinearCode) -> bool {
        code.len() == self.n
            && code.dim() == self.dim()
            && code.generator().row_iter().all(|r| self.contains(r))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().all(|b| other.contains(b))
    }
}

/// `{a : ⟨c, a⟩_ℓ = 0 for all c}` by testing every vector of `GF(q)^n`.
pub fn dual_exhaustive(
    field: &Field,
    n: usize,
    rows: &[Vec<Elem>],
    ell: u32,
    cap: u64,
) -> Result<Subspace> {
    ensure_cap(field.order(), n, cap)?;
    let q = field.order() as usize;
    let mut out = Subspace::new(field, n);
    let mut a = vec![Elem::ZERO; n];
    for idx in 0..q.pow(n as u32) {
        let mut x = idx;
        for slot in a.iter_mut() {
            *slot = field.elem((x % q) as u32).expect("digit below q");
            x /= q;
        }
        if rows.iter().all(|r| ip(field, r, &a, ell).is_zero()) {
            out.insert(&a);
        }
    }
    Ok(out)
}

/// `{a : ⟨c, a⟩_ℓ = 0 for all c}` by cutting `GF(q)^n` down one row at a
/// time. The form is `σ^ℓ`-semilinear in `a`, so a basis vector `b` is
/// corrected by `σ^{-ℓ}(v_b / v_0)·b_0`.
pub fn dual_sequential(field: &Field, n: usize, rows: &[Vec<Elem>], ell: u32) -> Subspace {
    let e = field.degree();
    let back = (e - ell % e) % e;
    let mut basis: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            let mut v = vec![Elem::ZERO; n];
            v[i] = Elem::ONE;
            v
        })
        .collect();
    for r in rows {
        let values: Vec<Elem> = basis.iter().map(|b| ip(field, r, b, ell)).collect();
        let Some(pivot) = values.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let b0 = basis[pivot].clone();
        let v0 = values[pivot];
        let mut next = Vec::with_capacity(basis.len() - 1);
        for (k, mut b) in basis.into_iter().enumerate() {
            if k == pivot {
                continue;
            }
            if !values[k].is_zero() {
                let ratio = field.div(values[k], v0).expect("nonzero");
                let c = field.frobenius(ratio, back);
                axpy(field, &mut b, field.neg(c), &b0);
            }
            next.push(b);
        }
        basis = next;
    }
    Subspace::spanned_by(field, n, basis.iter().map(|b| b.as_slice()))
}

/// The ℓ-Galois dual from the definition: exhaustive when `q^n ≤ cap`,
/// sequential complement otherwise.
pub fn dual_by_definition(code: &LinearCode, ell: u32, cap: u64) -> Result<Subspace> {
    check_level(code.field(), ell)?;
    let rows: Vec<Vec<Elem>> = code.generator().row_iter().map(|r| r.to_vec()).collect();
    let (f, n) = (code.field(), code.len());
    match dual_exhaustive(f, n, &rows, ell, cap) {
        Ok(s) => Ok(s),
        Err(Error::CapExceeded { .. }) => Ok(dual_sequential(f, n, &rows, ell)),
        Err(e) => Err(e),
    }
}

fn check_level(field: &Field, ell: u32) -> Result<()> {
    if ell < field.degree() {
        Ok(())
    } else {
        Err(Error::EllOutOfRange {
            ell,
            e: field.degree(),
        })
    }
}

/// `⟨g, h⟩_ℓ = 0` for every pair of rows of the stored generator.
pub fn so_by_definition(generator: &Matrix, ell: u32) -> bool {
    let f = generator.field();
    generator
        .row_iter()
        .all(|g| generator.row_iter().all(|h| ip(f, g, h, ell).is_zero()))
}

/// `C^{⊥ℓ} ⊆ C` by membership of every dual basis vector.
pub fn dc_by_definition(code: &LinearCode, ell: u32, cap: u64) -> Result<bool> {
    let dual = dual_by_definition(code, ell, cap)?;
    Ok(dual.is_subspace_of(&Subspace::of_code(code)))
}

/// Smallest nonzero weight among all enumerated codewords.
pub fn min_distance_exhaustive(code: &LinearCode, cap: u64) -> Result<usize> {
    if code.dim() == 0 {
        return Err(Error::UndefinedDistance);
    }
    let set = enumerate(code, cap)?;
    Ok(set
        .words
        .iter()
        .map(|w| w.iter().filter(|x| !x.is_zero()).count())
        .filter(|&w| w > 0)
        .min()
        .expect("k >= 1"))
}

/// Span of the vectorized `[c_1 … c_M]·A` over generator rows of each `C_i`.
pub fn expand_by_definition(mp: &MpCode) -> Subspace {
    let f = mp.field();
    let n = mp.constituent_len();
    let nn = mp.n_blocks();
    let a = mp.matrix();
    let mut out = Subspace::new(f, n * nn);
    for (i, c) in mp.constituents().iter().enumerate() {
        for g in c.generator().row_iter() {
            // [0 … g … 0]·A, with g in slot i
            let mut word = Vec::with_capacity(n * nn);
            for k in 0..nn {
                let aik = a.get(i, k);
                word.extend(g.iter().map(|&x| f.mul(x, aik)));
            }
            out.insert(&word);
        }
    }
    out
}

/// A stated fact about an MP instance, checked against the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// Expanded code parameters `[n, k, d]`.
    Code {
        n: usize,
        k: usize,
        d: Option<usize>,
    },
    /// Parameters of the ℓ-Galois dual.
    Dual {
        ell: u32,
        n: usize,
        k: usize,
        d: Option<usize>,
    },
    SelfOrthogonal {
        ell: u32,
        holds: bool,
    },
    DualContaining {
        ell: u32,
        holds: bool,
    },
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = |d: &Option<usize>| d.map_or(String::new(), |d| format!(" {d}"));
        let hf = |h: bool| if h { "holds" } else { "fails" };
        match self {
            Claim::Code { n, k, d: dd } => write!(f, "code {n} {k}{}", d(dd)),
            Claim::Dual { ell, n, k, d: dd } => write!(f, "dual {ell} {n} {k}{}", d(dd)),
            Claim::SelfOrthogonal { ell, holds } => write!(f, "so {ell} {}", hf(*holds)),
            Claim::DualContaining { ell, holds } => write!(f, "dc {ell} {}", hf(*holds)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Agree,
    Disagree,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub status: Status,
    pub what: String,
    pub detail: String,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Agree => "agree",
            Status::Disagree => "DISAGREE",
            Status::Skip => "skip",
        };
        write!(f, "{tag} {}: {}", self.what, self.detail)
    }
}

/// Caps used by [`verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub oracle_cap: u64,
    pub distance: DistanceConfig,
    pub general: GeneralCheckConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            oracle_cap: DEFAULT_CAP,
            distance: DistanceConfig::default(),
            general: GeneralCheckConfig::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub lines: Vec<Line>,
}

impl VerifyReport {
    fn push(&mut self, status: Status, what: &str, detail: impl Into<String>) {
        self.lines.push(Line {
            status,
            what: what.to_string(),
            detail: detail.into(),
        });
    }

    fn compare(&mut self, what: &str, same: bool, detail: impl Into<String>) {
        self.push(
            if same {
                Status::Agree
            } else {
                Status::Disagree
            },
            what,
            detail,
        );
    }

    pub fn all_agree(&self) -> bool {
        self.lines.iter().all(|l| l.status != Status::Disagree)
    }

    pub fn extend(&mut self, other: VerifyReport) {
        self.lines.extend(other.lines);
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

fn distance_line(
    report: &mut VerifyReport,
    what: &str,
    structured: &LinearCode,
    oracle: &Subspace,
    claimed: Option<usize>,
    cfg: &VerifyConfig,
) -> Result<()> {
    if oracle.dim() == 0 {
        if let Some(d) = claimed {
            report.push(
                Status::Disagree,
                what,
                format!("claimed d={d}, code is zero"),
            );
        }
        return Ok(());
    }
    if count_words(oracle.field.order(), oracle.dim()) > cfg.oracle_cap as u128 {
        report.push(
            Status::Skip,
            what,
            format!("q^k above oracle cap {}", cfg.oracle_cap),
        );
        return Ok(());
    }
    let rows: Vec<Vec<Elem>> = oracle.basis().map(|b| b.to_vec()).collect();
    let words = enumerate_span(&oracle.field, oracle.n, &rows, cfg.oracle_cap)?;
    let d = words
        .words
        .iter()
        .map(|w| w.iter().filter(|x| !x.is_zero()).count())
        .filter(|&w| w > 0)
        .min()
        .expect("k >= 1");
    let fast = structured.min_distance(&cfg.distance)?;
    let mut ok = fast.lower() <= d && d <= fast.upper();
    let mut detail = format!("oracle d={d}, structured {}", fast.strategy_label());
    if let Some(exact) = fast.exact() {
        detail.push_str(&format!(" d={exact}"));
    }
    if let Some(c) = claimed {
        ok &= c == d;
        detail.push_str(&format!(", claimed d={c}"));
    }
    report.compare(what, ok, detail);
    Ok(())
}

/// Cross-checks every structured result for `mp` at level `ell` against the
/// oracle, then checks any claims.
pub fn verify(mp: &MpCode, ell: u32, claims: &[Claim], cfg: &VerifyConfig) -> Result<VerifyReport> {
    check_level(mp.field(), ell)?;
    let mut report = VerifyReport::default();
    let f = mp.field().clone();

    let code = mp.expand();
    let span = expand_by_definition(mp);
    report.compare(
        "expand",
        span.equals_code(&code),
        format!(
            "oracle [{},{}], structured [{},{}]",
            span.len(),
            span.dim(),
            code.len(),
            code.dim()
        ),
    );

    let rows: Vec<Vec<Elem>> = span.basis().map(|b| b.to_vec()).collect();
    let dual_code = mp.dual(ell)?;
    let dual_span = dual_sequential(&f, span.len(), &rows, ell);
    report.compare(
        "dual",
        dual_span.equals_code(&dual_code),
        format!(
            "oracle dim {}, structured dim {}",
            dual_span.dim(),
            dual_code.dim()
        ),
    );
    match dual_exhaustive(&f, span.len(), &rows, ell, cfg.oracle_cap) {
        Ok(exhaustive) => report.compare(
            "dual-exhaustive",
            exhaustive.equals_code(&dual_code),
            format!("oracle dim {}", exhaustive.dim()),
        ),
        Err(Error::CapExceeded { .. }) => report.push(
            Status::Skip,
            "dual-exhaustive",
            format!("q^n above oracle cap {}", cfg.oracle_cap),
        ),
        Err(e) => return Err(e),
    }

    let basis = Matrix::from_row_vecs(&f, span.len(), rows.clone())?;
    let so_oracle = so_by_definition(&basis, ell);
    let so = mp.check_self_orthogonal(ell)?;
    report.compare(
        "so",
        (so.verdict == Verdict::Holds) == so_oracle,
        format!("structured {}, oracle {}", so.verdict, so_oracle),
    );

    let dc_oracle = dual_span.is_subspace_of(&span);
    let dc = mp.check_dual_containing(ell, &cfg.general)?;
    let dc_ok = match dc.verdict {
        Verdict::Holds => dc_oracle,
        Verdict::Fails => !dc_oracle,
        Verdict::Inconclusive => true,
    };
    report.compare(
        "dc",
        dc_ok,
        format!("structured {}, oracle {}", dc.verdict, dc_oracle),
    );

    distance_line(&mut report, "distance", &code, &span, None, cfg)?;

    for claim in claims {
        let what = format!("claim {claim}");
        match *claim {
            Claim::Code { n, k, d } => {
                if (n, k) != (span.len(), span.dim()) {
                    report.push(
                        Status::Disagree,
                        &what,
                        format!("oracle [{},{}]", span.len(), span.dim()),
                    );
                } else if d.is_some() {
                    distance_line(&mut report, &what, &code, &span, d, cfg)?;
                } else {
                    report.push(Status::Agree, &what, "length and dimension");
                }
            }
            Claim::Dual { ell: l, n, k, d } => {
                check_level(&f, l)?;
                let ds = dual_sequential(&f, span.len(), &rows, l);
                if (n, k) != (ds.len(), ds.dim()) {
                    report.push(
                        Status::Disagree,
                        &what,
                        format!("oracle [{},{}]", ds.len(), ds.dim()),
                    );
                } else if d.is_some() {
                    let dcode = mp.dual(l)?;
                    distance_line(&mut report, &what, &dcode, &ds, d, cfg)?;
                } else {
                    report.push(Status::Agree, &what, "length and dimension");
                }
            }
            Claim::SelfOrthogonal { ell: l, holds } => {
                check_level(&f, l)?;
                let truth = so_by_definition(&basis, l);
                report.compare(&what, truth == holds, format!("oracle {truth}"));
            }
            Claim::DualContaining { ell: l, holds } => {
                check_level(&f, l)?;
                let truth = dual_sequential(&f, span.len(), &rows, l).is_subspace_of(&span);
                report.compare(&what, truth == holds, format!("oracle {truth}"));
            }
        }
    }
    Ok(report)
}
