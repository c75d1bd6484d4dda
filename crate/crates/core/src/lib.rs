//! Matrix-product codes over finite fields `GF(p^e)`.
//!
//! Layers, bottom up: field arithmetic ([`gf`]), dense matrices ([`matgf`]),
//! linear codes with Galois duals and minimum distance ([`lincode`]), and MP
//! codes with closed-form duals and constituent-level orthogonality checks
//! ([`mpcode`]). [`oracle`] recomputes everything by brute force so the
//! structured results can be cross-checked.

pub mod error;
pub mod format;
pub mod gf;
pub mod lincode;
pub mod matgf;
pub mod mpcode;
pub mod oracle;
pub mod random;
pub mod search;

pub use error::{Error, Result};
pub use gf::{Elem, Field, FieldElement};
pub use lincode::{galois_inner_product, Distance, DistanceConfig, LinearCode, Strategy};
pub use matgf::Matrix;
pub use mpcode::{
    CheckReport, Condition, GeneralCheckConfig, MpCode, MpDual, RowPartition, Verdict, Witness,
};
