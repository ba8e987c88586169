//! Ordinal workbench: symbolic ordinals below the first fixed point of the
//! epsilon enumeration, with Cantor normal form arithmetic, the epsilon
//! substitution calculus, finite cover constructions, fundamental sequences,
//! and a certified decision engine for the `<1` relation on the intervals
//! between consecutive epsilon numbers.

pub mod cover;
pub mod engine;
pub mod eta;
pub mod fundseq;
pub mod oracle;
pub mod parse;
pub mod set;
pub mod subst;
pub mod suite;
pub mod term;

pub use parse::{parse, parse_with, ParseError, ParseOptions};
pub use set::FinOrdSet;
pub use subst::{ep_set, in_m, subst, subst_map, IsoWitness};
pub use term::Ordinal;
