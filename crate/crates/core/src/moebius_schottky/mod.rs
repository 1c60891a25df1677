//! Möbius transformations over the series field, exact disc geometry and
//! rank-2 Schottky data: fundamental-domain checks, normalization, the
//! absolute values of the automorphic functions `u_i`, and the period
//! matrix `log|q_ij|`.

mod automorphy;
mod disc;
mod group;
mod moebius;
mod normalize;
pub mod reference;
mod words;

pub use automorphy::{
    boundary_probe, check_automorphy, log_q, sample_boundary_points, sample_exterior_points, u_log_abs, u_log_abs_truncated, PeriodMatrix,
    TruncatedProduct,
};
pub use disc::Disc;
pub use group::{verify_good_domain, Check, SchottkyRank2, VerificationReport};
pub use moebius::{HomPoint, MoebiusMap, P1Point};
pub use normalize::{conjugate, is_normalized, normalize};
pub use words::{reduced_word_count, reduced_words, Letter, Word};
