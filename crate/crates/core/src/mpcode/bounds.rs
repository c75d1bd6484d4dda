//! Lower bounds on the minimum distance of an MP code from its constituents.
//!
//! A constituent whose distance is only bracketed contributes its certified
//! lower bound. Zero constituents contribute no codewords and are skipped.

use super::MpCode;
use crate::error::{Error, Result};
use crate::lincode::{DistanceConfig, LinearCode};

impl MpCode {
    fn constituent_lower_bounds(&self, cfg: &DistanceConfig) -> Result<Vec<Option<usize>>> {
        self.constituents
            .iter()
            .map(|c| {
                if c.is_empty() {
                    Ok(None)
                } else {
                    Ok(Some(c.min_distance(cfg)?.lower()))
                }
            })
            .collect()
    }

    /// `min_i (N - i + 1)·d_i` (1-based `i`), valid when `A` is NSC.
    pub fn blackmore_bound(&self, cfg: &DistanceConfig) -> Result<usize> {
        if !self.matrix.is_nsc()? {
            return Err(Error::NotNsc);
        }
        let nn = self.n_blocks();
        self.constituent_lower_bounds(cfg)?
            .into_iter()
            .enumerate()
            .filter_map(|(i, d)| d.map(|d| (nn - i) * d))
            .min()
            .ok_or(Error::UndefinedDistance)
    }

    /// `min_i d_i·D_i` where `D_i` is the minimum distance of the length-`N`
    /// code spanned by the first `i` rows of `A`; valid for full row rank.
    pub fn cao_bound(&self, cfg: &DistanceConfig) -> Result<usize> {
        if !self.matrix.has_full_row_rank() {
            return Err(Error::RankDeficient {
                rank: self.matrix.rank(),
                rows: self.m(),
            });
        }
        let mut best: Option<usize> = None;
        for (i, d) in self.constituent_lower_bounds(cfg)?.into_iter().enumerate() {
            let Some(d) = d else { continue };
            let top: Vec<usize> = (0..=i).collect();
            let rows = LinearCode::from_generator(&self.matrix.row_submatrix(&top)?);
            let di = rows.min_distance(cfg)?.lower();
            best = Some(best.map_or(d * di, |b| b.min(d * di)));
        }
        best.ok_or(Error::UndefinedDistance)
    }
}
