//! Self-orthogonality and dual-containment of MP codes, decided from the
//! constituents and a small condition matrix.

use std::collections::BTreeSet;
use std::fmt;

use super::{MpCode, RowPartition};
use crate::error::Result;
use crate::lincode::{check_ell, LinearCode};
use crate::matgf::{for_each_combination, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// Only a sufficient condition was available and none of the tried
    /// candidates satisfied it.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Which matrix a report's condition matrix is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionLabel {
    /// `σ^ℓ(A)·Aᵀ`
    Product,
    /// `ζ = (σ^ℓ(B_γ)·B_ιᵀ)^{-1}`
    Zeta,
}

impl fmt::Display for ConditionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionLabel::Product => "product",
            ConditionLabel::Zeta => "zeta",
        })
    }
}

/// A requirement on the constituents. Indices name rows of `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// `C_sub ⊆ C_sup^{⊥ℓ}`
    Orthogonal { sub: usize, sup: usize },
    /// `C_k = F`
    Whole(usize),
    /// `C_sub^{⊥ℓ} ⊆ C_sup`
    DualIn { sub: usize, sup: usize },
    /// The condition-matrix entry must vanish; it does not.
    ZeroEntry,
    /// No block pair was available to test.
    NoCandidate,
}

impl Condition {
    pub fn describe(&self, ell: u32) -> String {
        match *self {
            Condition::Orthogonal { sub, sup } => format!("C{}⊆C{}^⊥{ell}", sub + 1, sup + 1),
            Condition::Whole(k) => format!("C{}=F", k + 1),
            Condition::DualIn { sub, sup } => format!("C{}^⊥{ell}⊆C{}", sub + 1, sup + 1),
            Condition::ZeroEntry => "entry=0".to_string(),
            Condition::NoCandidate => "no-candidate".to_string(),
        }
    }

    /// Whether the condition holds. `duals[k]` is `C_k^{⊥ℓ}`.
    fn holds(&self, codes: &[LinearCode], duals: &[LinearCode]) -> Result<bool> {
        Ok(match *self {
            Condition::Orthogonal { sub, sup } => codes[sub].is_subcode_of(&duals[sup])?,
            Condition::Whole(k) => codes[k].is_whole(),
            Condition::DualIn { sub, sup } => duals[sub].is_subcode_of(&codes[sup])?,
            Condition::ZeroEntry | Condition::NoCandidate => false,
        })
    }
}

/// One checked condition, tied to entry `(i, j)` of the condition matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub condition: Condition,
    pub ok: bool,
}

/// Outcome of a self-orthogonality or dual-containment check.
///
/// The verdict is `Holds` exactly when every witness is satisfied.
///
/// When `σ^ℓ(A)Aᵀ` is monomial (one nonzero entry per row and column), so is
/// its inverse, and every constituent is paired with exactly one partner:
/// the witness list then reads as a matching of the constituents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub ell: u32,
    pub label: ConditionLabel,
    pub condition_matrix: Matrix,
    pub witnesses: Vec<Witness>,
    /// The `(ι, γ)` row sets behind `condition_matrix` for a general check.
    pub pair: Option<(Vec<usize>, Vec<usize>)>,
    pub notes: Vec<String>,
}

impl CheckReport {
    /// The distinct requirements on the constituents, with those implied by a
    /// `C_k = F` requirement removed.
    pub fn requirements(&self) -> Vec<Condition> {
        reduce_requirements(self.witnesses.iter().map(|w| w.condition))
    }

    pub fn failed(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| !w.ok)
    }
}

fn fmt_set(rows: &[usize]) -> String {
    let items: Vec<String> = rows.iter().map(|r| (r + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict)?;
        if let Some((iota, gamma)) = &self.pair {
            writeln!(f, "pair: {} {}", fmt_set(iota), fmt_set(gamma))?;
        }
        writeln!(f, "{}:", self.label)?;
        write!(f, "{}", self.condition_matrix)?;
        for w in &self.witnesses {
            writeln!(
                f,
                "witness {} {} {} {}",
                w.i + 1,
                w.j + 1,
                w.condition.describe(self.ell),
                if w.ok { "ok" } else { "FAIL" }
            )?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Drops duplicates and any containment made automatic by a required
/// `C_k = F` (then `C_k^{⊥ℓ} = O`).
pub fn reduce_requirements(conds: impl IntoIterator<Item = Condition>) -> Vec<Condition> {
    let conds: Vec<Condition> = conds.into_iter().collect();
    let whole: BTreeSet<usize> = conds
        .iter()
        .filter_map(|c| match c {
            Condition::Whole(k) => Some(*k),
            _ => None,
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in conds {
        if let Condition::DualIn { sub, sup } = c {
            if whole.contains(&sub) || whole.contains(&sup) {
                continue;
            }
        }
        if seen.insert(c) {
            out.push(c);
        }
    }
    out
}

/// A condition matrix and the conditions tied to its nonzero entries `(i, j)`.
pub type Conditions = (Matrix, Vec<(usize, usize, Condition)>);

/// `σ^ℓ` turns `⟨·,·⟩_ℓ` into its mirror image exactly when `2ℓ ≡ 0 (mod e)`;
/// then condition matrices have symmetric support and conditions at `(i,j)`
/// and `(j,i)` coincide.
fn symmetric(e: u32, ell: u32) -> bool {
    (2 * ell).is_multiple_of(e)
}

/// Condition matrix `σ^ℓ(A)Aᵀ` and the containments `C_i ⊆ C_j^{⊥ℓ}` required
/// by its nonzero entries. The code is self-orthogonal iff all hold.
pub fn so_conditions(a: &Matrix, ell: u32) -> Result<Conditions> {
    check_ell(a.field(), ell)?;
    let product = a.frobenius_map(ell).matmul(&a.transpose())?;
    let sym = symmetric(a.field().degree(), ell);
    let mut out = Vec::new();
    for i in 0..product.rows() {
        for j in 0..product.cols() {
            if product.get(i, j).is_zero() || (sym && j < i) {
                continue;
            }
            out.push((i, j, Condition::Orthogonal { sub: i, sup: j }));
        }
    }
    Ok((product, out))
}

/// `ζ = (σ^ℓ(B_γ)B_ιᵀ)^{-1}` and the four families of conditions under which
/// the dual of the ι-code lies in the γ-code. `iota` and `gamma` name the
/// rows of `A` that form the first rows of each completion.
#[allow(clippy::needless_range_loop)]
fn pair_conditions(
    b_iota: &Matrix,
    iota: &[usize],
    b_gamma: &Matrix,
    gamma: &[usize],
    ell: u32,
) -> Result<Conditions> {
    let zeta = b_gamma
        .frobenius_map(ell)
        .matmul(&b_iota.transpose())?
        .inverse()?;
    let sym = iota == gamma && symmetric(b_iota.field().degree(), ell);
    let (mi, mg) = (iota.len(), gamma.len());
    let mut out = Vec::new();
    for i in 0..zeta.rows() {
        for j in 0..zeta.cols() {
            if zeta.get(i, j).is_zero() || (sym && j < i) {
                continue;
            }
            let cond = match (i < mi, j < mg) {
                (false, false) => Condition::ZeroEntry,
                (true, false) => Condition::Whole(iota[i]),
                (false, true) => Condition::Whole(gamma[j]),
                (true, true) => Condition::DualIn {
                    sub: iota[i],
                    sup: gamma[j],
                },
            };
            out.push((i, j, cond));
        }
    }
    Ok((zeta, out))
}

/// `ζ = (σ^ℓ(B)Bᵀ)^{-1}` for the default completion of a full-row-rank `A`,
/// and the conditions that together are equivalent to dual-containment.
pub fn dc_conditions(a: &Matrix, ell: u32) -> Result<Conditions> {
    check_ell(a.field(), ell)?;
    dc_conditions_with(&a.complete_to_invertible()?, a.rows(), ell)
}

/// As [`dc_conditions`] for an explicit invertible completion `b` whose first
/// `m` rows are the defining matrix.
pub fn dc_conditions_with(b: &Matrix, m: usize, ell: u32) -> Result<Conditions> {
    check_ell(b.field(), ell)?;
    let rows: Vec<usize> = (0..m).collect();
    pair_conditions(b, &rows, b, &rows, ell)
}

/// Caps for the search in [`MpCode::check_dual_containing_general`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneralCheckConfig {
    /// Most `(ι, γ)` block pairs tried.
    pub max_pairs: usize,
    /// Most invertible `N`-row submatrices tried.
    pub max_subsets: usize,
}

impl Default for GeneralCheckConfig {
    fn default() -> Self {
        GeneralCheckConfig {
            max_pairs: 64,
            max_subsets: 128,
        }
    }
}

fn evaluate(
    conds: Vec<(usize, usize, Condition)>,
    codes: &[LinearCode],
    duals: &[LinearCode],
) -> Result<Vec<Witness>> {
    conds
        .into_iter()
        .map(|(i, j, condition)| {
            Ok(Witness {
                i,
                j,
                condition,
                ok: condition.holds(codes, duals)?,
            })
        })
        .collect()
}

impl MpCode {
    fn constituent_duals(&self, ell: u32) -> Result<Vec<LinearCode>> {
        self.constituents
            .iter()
            .map(|c| c.galois_dual(ell))
            .collect()
    }

    /// Exact for every defining matrix: `C ⊆ C^{⊥ℓ}` iff `C_i ⊆ C_j^{⊥ℓ}`
    /// whenever entry `(i,j)` of `σ^ℓ(A)Aᵀ` is nonzero.
    pub fn check_self_orthogonal(&self, ell: u32) -> Result<CheckReport> {
        let (product, conds) = so_conditions(&self.matrix, ell)?;
        let duals = self.constituent_duals(ell)?;
        let witnesses = evaluate(conds, &self.constituents, &duals)?;
        let verdict = if witnesses.iter().all(|w| w.ok) {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        Ok(CheckReport {
            verdict,
            ell,
            label: ConditionLabel::Product,
            condition_matrix: product,
            witnesses,
            pair: None,
            notes: Vec::new(),
        })
    }

    /// Exact check of `C^{⊥ℓ} ⊆ C` for full-row-rank `A`.
    pub fn check_dual_containing_full_rank(&self, ell: u32) -> Result<CheckReport> {
        check_ell(self.field(), ell)?;
        let b = self.matrix.complete_to_invertible()?;
        self.check_dual_containing_full_rank_with(&b, ell)
    }

    /// As [`MpCode::check_dual_containing_full_rank`] with a caller-chosen
    /// completion. The verdict does not depend on the choice.
    pub fn check_dual_containing_full_rank_with(
        &self,
        b: &Matrix,
        ell: u32,
    ) -> Result<CheckReport> {
        check_ell(self.field(), ell)?;
        self.check_completion(b)?;
        let rows: Vec<usize> = (0..self.m()).collect();
        let (zeta, conds) = pair_conditions(b, &rows, b, &rows, ell)?;
        let duals = self.constituent_duals(ell)?;
        let witnesses = evaluate(conds, &self.constituents, &duals)?;
        let verdict = if witnesses.iter().all(|w| w.ok) {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        Ok(CheckReport {
            verdict,
            ell,
            label: ConditionLabel::Zeta,
            condition_matrix: zeta,
            witnesses,
            pair: None,
            notes: Vec::new(),
        })
    }

    /// Sufficient check of `C^{⊥ℓ} ⊆ C` for any defining matrix.
    ///
    /// Every independent row set `S` spans an MP code `C^(S) ⊆ C`, so
    /// `C^(ι)⊥ℓ ⊆ C^(γ)` for any pair of independent sets implies
    /// dual-containment. Pairs of partition blocks are tried first, then
    /// (when `rank A = N`) invertible `N`-row submatrices paired with
    /// themselves. Never returns `Fails`. Full-row-rank input is delegated to
    /// the exact check.
    pub fn check_dual_containing_general(
        &self,
        ell: u32,
        cfg: &GeneralCheckConfig,
    ) -> Result<CheckReport> {
        check_ell(self.field(), ell)?;
        let part = RowPartition::of(&self.matrix);
        if part.is_single_block() {
            let mut report = self.check_dual_containing_full_rank(ell)?;
            report.notes.push("full row rank: exact check".to_string());
            return Ok(report);
        }

        let mut notes = Vec::new();
        if !part.discarded.is_empty() {
            notes.push(format!("zero rows {} discarded", fmt_set(&part.discarded)));
        }
        let mut candidates: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let total_pairs = part.blocks.len() * part.blocks.len();
        'pairs: for iota in &part.blocks {
            for gamma in &part.blocks {
                if candidates.len() == cfg.max_pairs {
                    break 'pairs;
                }
                candidates.push((iota.clone(), gamma.clone()));
            }
        }
        if total_pairs > cfg.max_pairs {
            notes.push(format!(
                "cap exceeded: tried {} of {total_pairs} block pairs",
                cfg.max_pairs
            ));
        }

        let nn = self.n_blocks();
        if self.m() > nn && self.matrix.rank() == nn {
            let mut found = 0;
            let mut capped = false;
            for_each_combination(self.m(), nn, |rows| {
                if found == cfg.max_subsets {
                    capped = true;
                    return;
                }
                if part.blocks.iter().any(|b| b == rows) {
                    return;
                }
                let sub = self.matrix.row_submatrix(rows).expect("valid rows");
                if sub.rank() == nn {
                    found += 1;
                    candidates.push((rows.to_vec(), rows.to_vec()));
                }
            });
            if capped {
                notes.push(format!(
                    "cap exceeded: tried {} invertible submatrices",
                    cfg.max_subsets
                ));
            }
        }

        let duals = self.constituent_duals(ell)?;
        let mut first: Option<CheckReport> = None;
        for (iota, gamma) in candidates {
            let b_iota = self.matrix.row_submatrix(&iota)?.complete_to_invertible()?;
            let b_gamma = self
                .matrix
                .row_submatrix(&gamma)?
                .complete_to_invertible()?;
            let (zeta, conds) = pair_conditions(&b_iota, &iota, &b_gamma, &gamma, ell)?;
            let witnesses = evaluate(conds, &self.constituents, &duals)?;
            let holds = witnesses.iter().all(|w| w.ok);
            let report = CheckReport {
                verdict: if holds {
                    Verdict::Holds
                } else {
                    Verdict::Inconclusive
                },
                ell,
                label: ConditionLabel::Zeta,
                condition_matrix: zeta,
                witnesses,
                pair: Some((iota, gamma)),
                notes: Vec::new(),
            };
            if holds {
                return Ok(CheckReport { notes, ..report });
            }
            if first.is_none() {
                first = Some(report);
            }
        }

        notes.push("sufficient condition only; no tried pair satisfies it".to_string());
        Ok(match first {
            Some(report) => CheckReport { notes, ..report },
            None => CheckReport {
                verdict: Verdict::Inconclusive,
                ell,
                label: ConditionLabel::Zeta,
                condition_matrix: Matrix::zeros(self.field(), 0, 0),
                witnesses: vec![Witness {
                    i: 0,
                    j: 0,
                    condition: Condition::NoCandidate,
                    ok: false,
                }],
                pair: None,
                notes,
            },
        })
    }

    /// Exact check for full-row-rank `A`, sufficient check otherwise.
    pub fn check_dual_containing(&self, ell: u32, cfg: &GeneralCheckConfig) -> Result<CheckReport> {
        if self.matrix.has_full_row_rank() {
            self.check_dual_containing_full_rank(ell)
        } else {
            self.check_dual_containing_general(ell, cfg)
        }
    }
}
