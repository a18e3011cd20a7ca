//! Combinatorics of multisegments for irreducible representations of
//! `GL_n` over a non-archimedean local field.
//!
//! Segments live on cuspidal lines; multisegments are finite multisets of
//! segments. The crate decides the left and right matching criteria for
//! products `Z(𝔪) × Z(Δ)`, explores the Zelevinsky order, checks closure of
//! the matching class under `≤_Z`, and applies the subtraction rules for
//! big derivatives.

pub mod derive;
pub mod error;
pub mod json;
pub mod matching;
pub mod mpi;
pub mod multiseg;
pub mod notation;
pub mod oracle;
pub mod segment;
pub mod zposet;

pub use error::{Error, Result};
pub use matching::{decide, is_irreducible_product, Matcher, MatchingWitness, Side};
pub use multiseg::Multisegment;
pub use segment::{CuspidalPoint, LineId, LineTable, Segment};
