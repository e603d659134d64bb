//! Exact computation of q-multinomial coefficients, inversion statistics of
//! multiset permutations, Sylvester denumerants and cell decompositions of
//! flag spaces over prime fields, each paired with a brute-force oracle.

pub mod denumerant;
pub mod error;
pub mod flagcells;
pub mod inversions;
pub mod polycore;
pub mod qanalogue;
pub mod verify;

pub use error::{Error, Result, DEFAULT_CAP};
pub use flagcells::{FpMatrix, OrderedSetPartition};
pub use inversions::MultisetWord;
pub use polycore::{IntPoly, Rational, TruncatedSeries};
pub use qanalogue::FlagShape;
