//! Exact construction, verification, and characterization of
//! minimum-support eigenfunctions of the Hamming graph `H(n,q)`.
//!
//! Everything is computed over exact rationals. Coordinates are 0-based in
//! the API (coordinate `r` here is coordinate `r+1` in 1-based notation) and
//! a word's index is its base-`q` value with coordinate 0 most significant.

pub mod characterize;
pub mod claims;
pub mod constructions;
pub mod error;
pub mod function;
pub mod hgf;
pub mod linalg;
pub mod perm;
pub mod reduction;
pub mod search;
pub mod spectra;
pub mod word;

pub use characterize::{
    factorize, is_minimum_and_characterized, Factorization, Verdict, VerdictKind,
};
pub use constructions::{
    build_f1, build_f2, counterexample_g, counterexample_h, counterexample_v, elementary,
    min_support_bound, ElementaryFactor, FactorParams, FactorizationCertificate, Family, Regime,
    SupportBound,
};
pub use error::{Error, Result};
pub use function::{integer, rational, GridFunction, Rational};
pub use perm::Permutation;
pub use reduction::{ReductionReport, RestrictionSpec};
pub use search::{
    find_minimum, verify_lower_bound, BoundVerdict, LowerBoundReport, MinimumReport, SearchBudget,
    SearchOutcome, SearchStatus,
};
pub use spectra::EigenRange;
pub use word::Word;
