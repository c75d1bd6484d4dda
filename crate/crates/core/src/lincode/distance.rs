//! Minimum distance by exhaustive enumeration or low-weight search.
//!
//! Enumeration walks every codeword whose leading nonzero coefficient is 1
//! (one representative per projective point) with an odometer that costs a
//! single vector addition per step. Low-weight search looks for the
//! smallest set of parity-check columns with a vanishing nonzero
//! combination. Both fan out over rayon; the result never depends on the
//! worker count.

use std::fmt;

use rayon::prelude::*;

use super::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceConfig {
    /// Largest `q^k` that may be enumerated.
    pub enum_cap: u64,
    /// Largest cumulative `Σ_w C(n,w)(q-1)^w` for low-weight search.
    pub lw_cap: u64,
}

impl Default for DistanceConfig {
    fn default() -> Self {
        DistanceConfig {
            enum_cap: 1 << 24,
            lw_cap: 1 << 26,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Enumeration,
    LowWeight,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Enumeration => "enum",
            Strategy::LowWeight => "low-weight",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact {
        d: usize,
        strategy: Strategy,
    },
    /// Certified `lower <= d <= upper`; neither strategy fit its cap.
    Bounds {
        lower: usize,
        upper: usize,
    },
}

impl Distance {
    pub fn exact(&self) -> Option<usize> {
        match *self {
            Distance::Exact { d, .. } => Some(d),
            Distance::Bounds { .. } => None,
        }
    }

    pub fn lower(&self) -> usize {
        match *self {
            Distance::Exact { d, .. } => d,
            Distance::Bounds { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> usize {
        match *self {
            Distance::Exact { d, .. } => d,
            Distance::Bounds { upper, .. } => upper,
        }
    }

    pub fn strategy_label(&self) -> &'static str {
        match self {
            Distance::Exact {
                strategy: Strategy::Enumeration,
                ..
            } => "enum",
            Distance::Exact {
                strategy: Strategy::LowWeight,
                ..
            } => "low-weight",
            Distance::Bounds { .. } => "bounds",
        }
    }
}

pub(crate) fn pow_u128(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub(super) fn min_distance(code: &LinearCode, cfg: &DistanceConfig) -> Result<Distance> {
    let k = code.dim();
    if k == 0 {
        return Err(Error::UndefinedDistance);
    }
    let field = code.field();
    let q = field.order() as u128;
    if pow_u128(q, k as u32) <= cfg.enum_cap as u128 {
        let rows: Vec<Vec<Elem>> = code.generator().row_iter().map(|r| r.to_vec()).collect();
        let d = min_weight_of_span(field, &rows);
        return Ok(Distance::Exact {
            d,
            strategy: Strategy::Enumeration,
        });
    }

    let n = code.len();
    let row_min = code
        .generator()
        .row_iter()
        .map(weight)
        .min()
        .expect("k >= 1");
    let upper = row_min.min(n - k + 1);
    let searcher = LowWeight::new(field, &code.parity_check());
    let mut spent: u128 = 0;
    for w in 1..=upper {
        spent = spent.saturating_add(binomial(n, w).saturating_mul(pow_u128(q - 1, w as u32)));
        if spent > cfg.lw_cap as u128 {
            return Ok(Distance::Bounds { lower: w, upper });
        }
        if w == row_min || searcher.has_weight(w) {
            return Ok(Distance::Exact {
                d: w,
                strategy: Strategy::LowWeight,
            });
        }
    }
    unreachable!("a generator row has weight at most `upper`")
}

pub(crate) fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

fn add_into(field: &Field, dst: &mut [Elem], src: &[Elem]) {
    if field.characteristic() == 2 {
        for (d, s) in dst.iter_mut().zip(src) {
            d.0 ^= s.0;
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = field.add(*d, s);
        }
    }
}

fn scaled(field: &Field, c: Elem, v: &[Elem]) -> Vec<Elem> {
    v.iter().map(|&x| field.mul(c, x)).collect()
}

/// Minimum weight over the nonzero vectors of the span of linearly
/// independent `rows`.
pub(crate) fn min_weight_of_span(field: &Field, rows: &[Vec<Elem>]) -> usize {
    let q = field.order() as usize;
    let k = rows.len();
    // step[j][s]: what moving digit j from element s to element s+1 (mod q) adds
    let step: Vec<Vec<Vec<Elem>>> = rows
        .iter()
        .map(|row| {
            (0..q)
                .map(|s| {
                    let from = Elem(s as u32);
                    let to = Elem(((s + 1) % q) as u32);
                    scaled(field, field.sub(to, from), row)
                })
                .collect()
        })
        .collect();

    // Jobs: a leading row t plus a prefix assignment of the next few rows;
    // each job then runs an odometer over the rest.
    let mut jobs: Vec<(Vec<Elem>, usize)> = Vec::new();
    for t in 0..k {
        let free = k - t - 1;
        let mut prefix = 0;
        while prefix < free && q.pow(prefix as u32) < 256 {
            prefix += 1;
        }
        let combos = q.pow(prefix as u32);
        for idx in 0..combos {
            let mut start = rows[t].clone();
            let mut x = idx;
            for j in 0..prefix {
                let c = Elem((x % q) as u32);
                x /= q;
                if !c.is_zero() {
                    add_into(field, &mut start, &scaled(field, c, &rows[t + 1 + j]));
                }
            }
            jobs.push((start, t + 1 + prefix));
        }
    }

    jobs.into_par_iter()
        .map(|(mut current, first)| {
            let tail = &step[first..];
            let m = tail.len();
            let mut digits = vec![0usize; m];
            let mut best = weight(&current);
            'walk: loop {
                let mut j = 0;
                loop {
                    if j == m {
                        break 'walk;
                    }
                    let s = digits[j];
                    add_into(field, &mut current, &tail[j][s]);
                    if s + 1 < q {
                        digits[j] = s + 1;
                        break;
                    }
                    digits[j] = 0;
                    j += 1;
                }
                let w = weight(&current);
                if w < best {
                    best = w;
                }
            }
            best
        })
        .min()
        .expect("k >= 1")
}

/// Searches for codewords of a given weight through the parity checks.
struct LowWeight {
    field: Field,
    n: usize,
    /// multiples[s][c - 1] = c · h_s for column h_s of the parity-check matrix
    multiples: Vec<Vec<Vec<Elem>>>,
}

impl LowWeight {
    fn new(field: &Field, parity: &crate::matgf::Matrix) -> LowWeight {
        let n = parity.cols();
        let cols = parity.transpose();
        let multiples = (0..n)
            .map(|s| {
                (1..field.order())
                    .map(|c| scaled(field, Elem(c), cols.row(s)))
                    .collect()
            })
            .collect();
        LowWeight {
            field: field.clone(),
            n,
            multiples,
        }
    }

    /// Whether some codeword has weight exactly `w`. The first coefficient
    /// is normalized to 1.
    fn has_weight(&self, w: usize) -> bool {
        if w == 0 || w > self.n {
            return false;
        }
        (0..=self.n - w).into_par_iter().any(|s0| {
            let mut syndrome = self.multiples[s0][0].clone();
            self.extend(&mut syndrome, s0 + 1, w - 1)
        })
    }

    fn extend(&self, syndrome: &mut Vec<Elem>, from: usize, left: usize) -> bool {
        if left == 0 {
            return syndrome.iter().all(|x| x.is_zero());
        }
        for s in from..=self.n - left {
            for mult in &self.multiples[s] {
                add_into(&self.field, syndrome, mult);
                let hit = self.extend(syndrome, s + 1, left - 1);
                let neg: Vec<Elem> = mult.iter().map(|&x| self.field.neg(x)).collect();
                add_into(&self.field, syndrome, &neg);
                if hit {
                    return true;
                }
            }
        }
        false
    }
}
