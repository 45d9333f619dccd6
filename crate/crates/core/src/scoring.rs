//! Greedy placement scoring of candidate factors.
//!
//! A candidate `S` of cardinality `m` is evaluated against a target `M` of
//! cardinality `n` by conceptually filling an `(n/m) x m` matrix row by row.
//! The first row is `S` itself (ascending); every later row is `b + S` where
//! `b` is the minimum of what is still unplaced. Cells are consumed from a
//! working copy of `M` until one is missing, at which point the whole
//! procedure stops. The score is the number of cells placed, so it ranges
//! from `m` (first row only) to `n` (everything placed). A full placement
//! recovers the cofactor: the row multipliers form exactly the multiset `B`
//! with `S + B = M`.
//!
//! The greedy rule is exact: when `0` is in both factors, the minimum of the
//! remainder must start the next row, so `score == n` if and only if `S`
//! divides `M`.

use thiserror::Error;

use crate::multiset::Multiset;

/// Why a multiset is not a valid candidate against a given target.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CandidateError {
    #[error("candidate must contain the element 0")]
    MissingZero,
    #[error("candidate cardinality {0} is smaller than 2")]
    CardinalityTooSmall(u64),
    #[error("candidate cardinality {m} does not divide target cardinality {n}")]
    NotADivisor { m: u64, n: u64 },
    #[error(
        "candidate is not contained in the target: element {value} occurs {have} times but only {allowed} are available"
    )]
    NotContained { value: u64, have: u64, allowed: u64 },
}

/// A sub-multiset of a target, containing 0, of cardinality at least 2 that
/// divides the target's cardinality. The search works exclusively in terms of
/// these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSolution {
    elements: Multiset,
}

impl CandidateSolution {
    /// Validates `elements` as a candidate against `target`.
    pub fn new(elements: Multiset, target: &Multiset) -> Result<Self, CandidateError> {
        if !elements.contains_value(0) {
            return Err(CandidateError::MissingZero);
        }
        if elements.cardinality() < 2 {
            return Err(CandidateError::CardinalityTooSmall(elements.cardinality()));
        }
        check_divides_and_contained(&elements, target)?;
        Ok(Self { elements })
    }

    /// Wraps a multiset whose candidate invariants were established by the
    /// caller (used by search moves that preserve validity).
    pub(crate) fn from_validated(elements: Multiset) -> Self {
        debug_assert!(elements.contains_value(0));
        debug_assert!(elements.cardinality() >= 2);
        Self { elements }
    }

    pub fn elements(&self) -> &Multiset {
        &self.elements
    }

    pub fn cardinality(&self) -> u64 {
        self.elements.cardinality()
    }

    pub fn into_elements(self) -> Multiset {
        self.elements
    }
}

/// Result of one greedy placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacementOutcome {
    /// Number of target elements consumed before the first failure; equals
    /// the target cardinality exactly when the candidate is a factor.
    pub score: u64,
    /// First-column values of every row whose first cell was placed, starting
    /// with the 0 of the first row. Non-decreasing.
    pub multipliers: Vec<u64>,
    /// The cofactor, present iff the placement completed.
    pub quotient: Option<Multiset>,
}

fn check_divides_and_contained(s: &Multiset, target: &Multiset) -> Result<(), CandidateError> {
    let (m, n) = (s.cardinality(), target.cardinality());
    if !n.is_multiple_of(m) {
        return Err(CandidateError::NotADivisor { m, n });
    }
    for &(value, have) in s.entries() {
        let allowed = target.multiplicity(value);
        if have > allowed {
            return Err(CandidateError::NotContained {
                value,
                have,
                allowed,
            });
        }
    }
    Ok(())
}

/// Scores a candidate against a target. The candidate's target-dependent
/// preconditions (containment, divisibility) are re-checked here so the
/// contract holds even if the candidate was built against another multiset.
pub fn score(
    target: &Multiset,
    candidate: &CandidateSolution,
) -> Result<PlacementOutcome, CandidateError> {
    check_divides_and_contained(candidate.elements(), target)?;
    Ok(greedy_placement(target, candidate.elements()))
}

/// Computes `B` with `S + B = target`, if it exists. Unlike [`score`] this
/// also accepts `S = {0}` and `S = target`, for which the quotient is the
/// target itself and `{0}` respectively.
pub fn quotient(target: &Multiset, s: &Multiset) -> Result<Option<Multiset>, CandidateError> {
    if !s.contains_value(0) {
        return Err(CandidateError::MissingZero);
    }
    check_divides_and_contained(s, target)?;
    let outcome = greedy_placement(target, s);
    Ok(outcome.quotient)
}

/// Working copy of the target during placement. Values never move; only the
/// remaining counts change, and the minimum cursor advances monotonically.
struct Remaining {
    values: Vec<u64>,
    counts: Vec<u64>,
    total: u64,
    min_idx: usize,
}

impl Remaining {
    fn new(target: &Multiset) -> Self {
        let values = target.entries().iter().map(|&(v, _)| v).collect();
        let counts = target.entries().iter().map(|&(_, m)| m).collect();
        Self {
            values,
            counts,
            total: target.cardinality(),
            min_idx: 0,
        }
    }

    fn min(&mut self) -> u64 {
        debug_assert!(self.total > 0);
        while self.counts[self.min_idx] == 0 {
            self.min_idx += 1;
        }
        self.values[self.min_idx]
    }

    fn try_remove(&mut self, value: u64) -> bool {
        match self.values.binary_search(&value) {
            Ok(i) if self.counts[i] > 0 => {
                self.counts[i] -= 1;
                self.total -= 1;
                true
            }
            _ => false,
        }
    }

    fn remove_all_of(&mut self, value: u64, count: u64) {
        let i = self
            .values
            .binary_search(&value)
            .expect("candidate is contained in target");
        self.counts[i] = self.counts[i]
            .checked_sub(count)
            .expect("candidate is contained in target");
        self.total -= count;
    }
}

/// The placement itself. Preconditions (0 in `s`, `s` contained in `target`,
/// cardinality divides) are the caller's responsibility.
pub(crate) fn greedy_placement(target: &Multiset, s: &Multiset) -> PlacementOutcome {
    let mut remaining = Remaining::new(target);
    // Row one is the candidate itself; containment guarantees it places.
    for &(value, count) in s.entries() {
        remaining.remove_all_of(value, count);
    }
    let mut placed = s.cardinality();
    let mut multipliers = vec![0u64];

    while remaining.total > 0 {
        let b = remaining.min();
        // The first cell of the row is b + 0 = b, the minimum itself, so it
        // always places and defines the row's multiplier.
        let removed = remaining.try_remove(b);
        debug_assert!(removed);
        placed += 1;
        multipliers.push(b);

        let mut zero_cell_done = false;
        for &(value, count) in s.entries() {
            let reps = if value == 0 && !zero_cell_done {
                zero_cell_done = true;
                count - 1
            } else {
                count
            };
            for _ in 0..reps {
                let cell = match b.checked_add(value) {
                    Some(c) => c,
                    None => {
                        return PlacementOutcome {
                            score: placed,
                            multipliers,
                            quotient: None,
                        };
                    }
                };
                if !remaining.try_remove(cell) {
                    return PlacementOutcome {
                        score: placed,
                        multipliers,
                        quotient: None,
                    };
                }
                placed += 1;
            }
        }
    }

    debug_assert_eq!(placed, target.cardinality());
    let quotient = Multiset::from_elements(multipliers.iter().copied())
        .expect("placement always records the leading zero multiplier");
    PlacementOutcome {
        score: placed,
        multipliers,
        quotient: Some(quotient),
    }
}
