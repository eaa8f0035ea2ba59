//! Brute-force reference implementations used to cross-check the engine.
//!
//! Everything here works by exhaustive enumeration of loops up to a complexity bound and
//! compares elements through their canonical normal forms. Nothing in this module calls the
//! engine.

mod brute;
mod enumerate;
mod random;
mod shrink;

pub use brute::{brute_centralizer, brute_centralizer_in, brute_commute_table, brute_divisibility, brute_divisibility_table};
pub use enumerate::{enumerate_elements, enumerate_with, scramble, Element, EnumLimits, MAX_COMPLEXITY};
pub use random::{random_gog, RandomParams};
pub use shrink::{shrink, Counterexample};
