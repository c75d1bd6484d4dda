//! Randomized construction of self-orthogonal and dual-containing MP codes
//! for a fixed defining matrix.
//!
//! Constituents are built one at a time inside the subspace cut out by the
//! linear conditions against those already built. Conditions a constituent
//! places on itself are met vector by vector: each new generator is drawn from
//! the space orthogonal to the previous ones and kept only if it is isotropic.
//! Dual-containing codes are found by building their duals as
//! self-orthogonal-type families and dualizing back.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::lincode::{galois_inner_product, Distance, DistanceConfig, LinearCode};
use crate::matgf::Matrix;
use crate::mpcode::{
    dc_conditions, reduce_requirements, so_conditions, Condition, MpCode, Verdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    SelfOrthogonal,
    DualContaining,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Most construction attempts.
    pub attempts: u64,
    /// Stop after this many candidates.
    pub count: usize,
    /// Smallest accepted minimum distance of the expansion.
    pub target: Option<usize>,
    pub seed: u64,
    pub distance: DistanceConfig,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            attempts: 100_000,
            count: 1,
            target: None,
            seed: 0,
            distance: DistanceConfig::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub mp: MpCode,
    pub dim: usize,
    pub distance: Distance,
    /// Attempt number (from 1) that produced it.
    pub attempt: u64,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub requirements: Vec<Condition>,
    pub candidates: Vec<Candidate>,
    pub attempts: u64,
}

/// Pairwise orthogonality demands `C_sub ⊆ C_sup^{⊥ℓ}` on a family of codes,
/// plus codes forced to be zero.
struct Family {
    field: Field,
    n: usize,
    ell: u32,
    dims: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    zero: Vec<bool>,
}

fn random_combination<R: Rng>(rng: &mut R, f: &Field, basis: &Matrix) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; basis.cols()];
    for row in basis.row_iter() {
        let c = f.elem(rng.gen_range(0..f.order())).expect("in range");
        if c.is_zero() {
            continue;
        }
        for (d, &x) in v.iter_mut().zip(row) {
            *d = f.add(*d, f.mul(c, x));
        }
    }
    v
}

impl Family {
    /// Rows `r` with `v` allowed iff `r·v = 0` for each: `⟨v,u⟩_ℓ = 0` needs
    /// `σ^ℓ(u)`, `⟨u,v⟩_ℓ = 0` needs `σ^{e-ℓ}(u)`.
    fn constraint_rows(&self, built: &[LinearCode], i: usize) -> Vec<Vec<Elem>> {
        let e = self.field.degree();
        let fwd = self.ell;
        let back = (e - self.ell) % e;
        let mut rows = Vec::new();
        for &(sub, sup) in &self.pairs {
            if sub == i && sup < i {
                for u in built[sup].generator().row_iter() {
                    rows.push(u.iter().map(|&x| self.field.frobenius(x, fwd)).collect());
                }
            }
            if sup == i && sub < i {
                for u in built[sub].generator().row_iter() {
                    rows.push(u.iter().map(|&x| self.field.frobenius(x, back)).collect());
                }
            }
        }
        rows
    }

    fn allowed(&self, rows: Vec<Vec<Elem>>) -> LinearCode {
        if rows.is_empty() {
            return LinearCode::whole(&self.field, self.n);
        }
        let m = Matrix::from_row_vecs(&self.field, self.n, rows).expect("rows have length n");
        LinearCode::from_generator(&m).euclidean_dual()
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> Option<Vec<LinearCode>> {
        let f = &self.field;
        let mut built: Vec<LinearCode> = Vec::with_capacity(self.dims.len());
        for i in 0..self.dims.len() {
            let k = self.dims[i];
            if self.zero[i] {
                built.push(LinearCode::zero(f, self.n));
                continue;
            }
            let space = self.allowed(self.constraint_rows(&built, i));
            if space.dim() < k {
                return None;
            }
            let isotropic = self.pairs.contains(&(i, i));
            let code = if isotropic {
                self.sample_isotropic(rng, &space, k)?
            } else if space.dim() == k {
                space
            } else {
                self.sample_subspace(rng, &space, k)
            };
            built.push(code);
        }
        Some(built)
    }

    fn sample_subspace<R: Rng>(&self, rng: &mut R, space: &LinearCode, k: usize) -> LinearCode {
        loop {
            let rows: Vec<Vec<Elem>> = (0..k)
                .map(|_| random_combination(rng, &self.field, space.generator()))
                .collect();
            let m = Matrix::from_row_vecs(&self.field, self.n, rows).expect("length n");
            let code = LinearCode::from_generator(&m);
            if code.dim() == k {
                return code;
            }
        }
    }

    fn sample_isotropic<R: Rng>(
        &self,
        rng: &mut R,
        space: &LinearCode,
        k: usize,
    ) -> Option<LinearCode> {
        const TRIES: usize = 64;
        let f = &self.field;
        let e = f.degree();
        let mut chosen: Vec<Vec<Elem>> = Vec::new();
        let mut current = LinearCode::zero(f, self.n);
        while chosen.len() < k {
            let mut rows: Vec<Vec<Elem>> = Vec::new();
            for w in &chosen {
                rows.push(w.iter().map(|&x| f.frobenius(x, self.ell)).collect());
                rows.push(
                    w.iter()
                        .map(|&x| f.frobenius(x, (e - self.ell) % e))
                        .collect(),
                );
            }
            let perp = self.allowed(rows).intersection(space).expect("same shape");
            if perp.dim() <= current.dim() {
                return None;
            }
            let mut found = None;
            for _ in 0..TRIES {
                let v = random_combination(rng, f, perp.generator());
                if current.contains(&v) {
                    continue;
                }
                if galois_inner_product(f, &v, &v, self.ell)
                    .expect("ell in range")
                    .is_zero()
                {
                    found = Some(v);
                    break;
                }
            }
            let v = found?;
            chosen.push(v);
            let m = Matrix::from_row_vecs(f, self.n, chosen.clone()).expect("length n");
            current = LinearCode::from_generator(&m);
        }
        Some(current)
    }
}

fn family_for(
    a: &Matrix,
    mode: Mode,
    ell: u32,
    n: usize,
    dims: &[usize],
) -> Result<(Family, Vec<Condition>)> {
    let f = a.field().clone();
    let e = f.degree();
    if dims.len() != a.rows() {
        return Err(Error::dims(format!(
            "{} dimensions for {} constituents",
            dims.len(),
            a.rows()
        )));
    }
    if let Some(&k) = dims.iter().find(|&&k| k > n) {
        return Err(Error::dims(format!("dimension {k} exceeds length {n}")));
    }
    let m = a.rows();
    match mode {
        Mode::SelfOrthogonal => {
            let (_, conds) = so_conditions(a, ell)?;
            let reqs = reduce_requirements(conds.into_iter().map(|(_, _, c)| c));
            let mut pairs = Vec::new();
            for c in &reqs {
                if let Condition::Orthogonal { sub, sup } = *c {
                    if sub == sup && 2 * dims[sub] > n {
                        return Err(Error::Infeasible(format!(
                            "C{} must be self-orthogonal, so its dimension is at most {}",
                            sub + 1,
                            n / 2
                        )));
                    }
                    pairs.push((sub, sup));
                }
            }
            let zero = dims.iter().map(|&k| k == 0).collect();
            Ok((
                Family {
                    field: f,
                    n,
                    ell,
                    dims: dims.to_vec(),
                    pairs,
                    zero,
                },
                reqs,
            ))
        }
        Mode::DualContaining => {
            if !a.has_full_row_rank() {
                return Err(Error::Infeasible(
                    "dual-containing search needs a defining matrix of full row rank".to_string(),
                ));
            }
            let (_, conds) = dc_conditions(a, ell)?;
            let reqs = reduce_requirements(conds.into_iter().map(|(_, _, c)| c));
            // work with D_i = C_i^{⊥ℓ}: C_sub^{⊥ℓ} ⊆ C_sup iff D_sub ⊆ D_sup^{⊥(e-ℓ)}
            let mut pairs = Vec::new();
            let mut zero = vec![false; m];
            for c in &reqs {
                match *c {
                    Condition::ZeroEntry => {
                        return Err(Error::Infeasible(
                            "a condition-matrix entry outside the constituent block is nonzero"
                                .to_string(),
                        ))
                    }
                    Condition::Whole(k) => {
                        if dims[k] != n {
                            return Err(Error::Infeasible(format!(
                                "C{} must be the whole space but has dimension {} < {n}",
                                k + 1,
                                dims[k]
                            )));
                        }
                        zero[k] = true;
                    }
                    Condition::DualIn { sub, sup } => {
                        if sub == sup && 2 * dims[sub] < n {
                            return Err(Error::Infeasible(format!(
                                "C{} must contain its dual, so its dimension is at least {}",
                                sub + 1,
                                n.div_ceil(2)
                            )));
                        }
                        pairs.push((sub, sup));
                    }
                    _ => {}
                }
            }
            for (k, z) in zero.iter_mut().enumerate() {
                *z |= dims[k] == n;
            }
            Ok((
                Family {
                    field: f,
                    n,
                    ell: (e - ell) % e,
                    dims: dims.iter().map(|&k| n - k).collect(),
                    pairs,
                    zero,
                },
                reqs,
            ))
        }
    }
}

/// Searches for constituents of dimensions `dims` and length `n` that make
/// `[C_1 … C_M]·A` ℓ-Galois self-orthogonal or dual-containing.
pub fn search(
    a: &Matrix,
    mode: Mode,
    ell: u32,
    n: usize,
    dims: &[usize],
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    if n == 0 {
        return Err(Error::dims("constituent length must be positive"));
    }
    let (family, requirements) = family_for(a, mode, ell, n, dims)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut candidates = Vec::new();
    let mut attempt = 0;
    while attempt < cfg.attempts && candidates.len() < cfg.count {
        attempt += 1;
        let Some(built) = family.sample(&mut rng) else {
            continue;
        };
        let constituents = match mode {
            Mode::SelfOrthogonal => built,
            Mode::DualContaining => built
                .iter()
                .map(|d| d.galois_dual(family.ell))
                .collect::<Result<Vec<_>>>()?,
        };
        let mp = MpCode::new(constituents, a.clone())?;
        let report = match mode {
            Mode::SelfOrthogonal => mp.check_self_orthogonal(ell)?,
            Mode::DualContaining => mp.check_dual_containing_full_rank(ell)?,
        };
        debug_assert_eq!(report.verdict, Verdict::Holds);
        if report.verdict != Verdict::Holds {
            continue;
        }
        let code = mp.expand();
        if code.dim() == 0 {
            continue;
        }
        let distance = code.min_distance(&cfg.distance)?;
        if cfg.target.is_some_and(|t| distance.lower() < t) {
            continue;
        }
        candidates.push(Candidate {
            dim: code.dim(),
            distance,
            mp,
            attempt,
        });
    }
    Ok(SearchOutcome {
        requirements,
        candidates,
        attempts: attempt,
    })
}
