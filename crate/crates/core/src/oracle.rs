//! Exhaustive ground truth for small multisets.
//!
//! Enumerates every candidate factor outright, so results are decisive: a
//! returned pair is re-verified by recomputing the sum, and an empty list
//! proves irreducibility. Exponential in the cardinality, hence the hard
//! size limit; no pruning beyond pinning one 0, so the code stays obviously
//! correct.

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::arith::{is_prime, small_divisors};
use crate::multiset::Multiset;
use crate::scoring::quotient;
use crate::search::{DecompositionResult, IrreducibleReason};

/// Default cardinality cap for exhaustive enumeration.
pub const DEFAULT_BRUTE_FORCE_LIMIT: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("cardinality {n} exceeds the exhaustive enumeration limit {limit}")]
    TooLarge { n: u64, limit: u64 },
    #[error("target must contain the element 0; normalize the input first")]
    MissingZero,
}

/// Every unordered pair `(A, B)` with `A + B` equal to the target, both
/// non-identity. Pairs are ordered smaller-cardinality-first (ties
/// lexicographic) and the list is sorted, so output is deterministic.
pub fn brute_force_factor_pairs(
    target: &Multiset,
    limit: u64,
) -> Result<Vec<(Multiset, Multiset)>, OracleError> {
    let n = target.cardinality();
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    if !target.contains_value(0) {
        return Err(OracleError::MissingZero);
    }

    // Any factor of a 0-containing multiset contains 0 itself, so pin one 0
    // and choose the rest among the remaining occurrences.
    let occurrences: Vec<u64> = target.iter_values().collect();
    let zero_at = occurrences
        .iter()
        .position(|&v| v == 0)
        .expect("checked above");
    let mut rest = occurrences.clone();
    rest.remove(zero_at);

    let mut pairs: BTreeSet<(Multiset, Multiset)> = BTreeSet::new();
    for m in small_divisors(n) {
        let mut seen: BTreeSet<Multiset> = BTreeSet::new();
        for combo in rest.iter().copied().combinations(m as usize - 1) {
            let mut values = combo;
            values.push(0);
            let a = Multiset::from_elements(values).expect("non-empty by the pinned zero");
            if !seen.insert(a.clone()) {
                continue; // equal values yield duplicate candidates
            }
            let b = match quotient(target, &a).expect("candidate built from the target") {
                Some(b) => b,
                None => continue,
            };
            assert_eq!(
                a.minkowski_sum(&b).expect("within the target's range"),
                *target,
                "oracle pair failed re-verification"
            );
            let pair = if (b.cardinality(), &b) < (a.cardinality(), &a) {
                (b, a.clone())
            } else {
                (a.clone(), b)
            };
            pairs.insert(pair);
        }
    }
    Ok(pairs.into_iter().collect())
}

/// True when the target has at least one non-trivial factor pair.
pub fn brute_force_is_reducible(target: &Multiset, limit: u64) -> Result<bool, OracleError> {
    Ok(!brute_force_factor_pairs(target, limit)?.is_empty())
}

/// Decomposition by enumeration rather than search, sharing the result type
/// of the heuristic driver. An empty enumeration is a proof, reported as
/// [`IrreducibleReason::ExhaustedEnumeration`].
pub fn exhaustive_decompose(
    target: &Multiset,
    limit: u64,
) -> Result<DecompositionResult, OracleError> {
    let (offset, core) = target.normalize();
    if offset > 0 {
        let inner = exhaustive_decompose_core(&core, limit)?;
        return Ok(DecompositionResult::TrivialShift {
            offset,
            core: Box::new(inner),
        });
    }
    exhaustive_decompose_core(target, limit)
}

fn exhaustive_decompose_core(
    core: &Multiset,
    limit: u64,
) -> Result<DecompositionResult, OracleError> {
    let n = core.cardinality();
    if n == 1 {
        return Ok(DecompositionResult::Irreducible {
            reason: IrreducibleReason::Identity,
        });
    }
    if is_prime(n) {
        return Ok(DecompositionResult::Irreducible {
            reason: IrreducibleReason::PrimeCardinality,
        });
    }
    let pairs = brute_force_factor_pairs(core, limit)?;
    match pairs.into_iter().next() {
        Some((factor, cofactor)) => {
            let divisor = factor.cardinality();
            Ok(DecompositionResult::Found {
                factor,
                cofactor,
                divisor,
                iterations: 0,
            })
        }
        None => Ok(DecompositionResult::Irreducible {
            reason: IrreducibleReason::ExhaustedEnumeration,
        }),
    }
}
