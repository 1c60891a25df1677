//! Exact computations on genus-2 Mumford curves given by rank-2 Schottky
//! groups over a field of generalized power series.
//!
//! The pipeline runs from Schottky data (two Möbius generators and four
//! discs forming a good fundamental domain) to the metric skeleton of the
//! curve, the tropicalized Jacobian `R^2 / log|Λ|`, the retraction positions
//! of the marked points that make three rational functions `f, g, h` have
//! principal divisors, the integer slope fields of `log|f|, log|g|, log|h|`
//! on the extended skeleton, and finally the tropical curves in `Q^2` and
//! `Q^3` together with a faithfulness verdict.
//!
//! Everything is exact: valuations live in `Q` and all linear algebra is
//! over the rationals.

pub mod berkovich_tree;
pub mod error;
pub mod faithful_trop;
pub mod moebius_schottky;
pub mod skeleton_jacobian;
pub mod valued_field;

pub use error::{Error, ParseError, Result};
pub use valued_field::{LogAbs, PuiseuxNumber, Rat};
