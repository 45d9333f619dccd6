//! Minkowski-sum decomposition of multisets of non-negative integers.
//!
//! Given a multiset `M`, decide whether it splits as `M = A + B` (the
//! Minkowski sum takes all pairwise element sums, multiplicities included)
//! with both parts different from `{0}`, and compute such a pair. The
//! decision is driven by an iterated local search over candidate
//! sub-multisets scored by greedy placement; small instances can instead be
//! settled exactly by exhaustive enumeration. Through the correspondence
//! between multisets and polynomials with non-negative coefficients, the
//! same engine factors polynomials over the natural numbers.
//!
//! Entry points:
//! - [`Multiset`] and [`SparsePolynomial`]: the exact algebra.
//! - [`score`] / [`quotient`]: placement quality and exact cofactors.
//! - [`iterated_search`] / [`decompose`]: the heuristic search and driver.
//! - [`brute_force_factor_pairs`]: ground truth for small cardinalities.
//! - [`generate`]: reproducible reducible benchmark instances.
//! - [`n_poly_fact`] / [`factor_completely`]: polynomial factorization.

mod arith;
mod instance;
mod multiset;
mod oracle;
mod poly;
mod polyfactor;
mod scoring;
mod search;
mod seeding;

pub use instance::{
    GENERATOR_ID, GeneratedInstance, InstanceError, InstanceSpec, ReadError, generate,
    generate_nth, read_multisets, write_factor_sidecar, write_instances,
};
pub use multiset::{Multiset, MultisetError, ParseMultisetError};
pub use oracle::{
    DEFAULT_BRUTE_FORCE_LIMIT, OracleError, brute_force_factor_pairs, brute_force_is_reducible,
    exhaustive_decompose,
};
pub use poly::{PolyError, PolyParseError, PolyParseErrorKind, SparsePolynomial, parse_polynomial};
pub use polyfactor::{
    DEFAULT_IMAGE_LIMIT, PolyFactorError, factor_completely, is_provably_irreducible,
    multiset_image, n_poly_fact, n_poly_fact_bounded,
};
pub use scoring::{CandidateError, CandidateSolution, PlacementOutcome, quotient, score};
pub use search::{
    DecompositionResult, DivisorAttempt, IrreducibleReason, SearchConfig, SearchError,
    SearchSuccess, decompose, find_local_opt, initial_solution, iterated_search, neighbor_search,
    new_initial_solution,
};
pub use seeding::derive_seed;
