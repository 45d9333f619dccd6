//! Iterated local search for Minkowski-sum decompositions.
//!
//! The search walks candidate sub-multisets of a fixed cardinality `m`:
//! start from a random candidate, climb to a local optimum of the placement
//! score by first-improvement moves that swap one element at a time, and on
//! failure restart from a candidate biased towards the elements that placed
//! well (the first row and first column of the conceptual placement matrix).
//! A local optimum reached twice switches the restart back to a uniform
//! draw, since its pool evidently cannot leave the basin. The decomposition
//! driver runs this for every divisor of the cardinality up to its square
//! root, after splitting off the minimum when the input does not contain 0.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{is_prime, small_divisors};
use crate::multiset::Multiset;
use crate::scoring::{CandidateSolution, greedy_placement};
use crate::seeding::derive_seed;

/// Knobs for [`iterated_search`] and [`decompose`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Restart budget: how many local optima may be visited per cardinality.
    pub max_iterations: u64,
    /// Seed of all random choices; equal seeds give identical runs.
    pub seed: u64,
    /// When true, neighborhoods are scanned in ascending (position, value)
    /// order; when false the scan order is shuffled per call. Both accept the
    /// first strict improvement.
    pub deterministic_neighbor_order: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            seed: 0,
            deterministic_neighbor_order: true,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("target must contain the element 0; normalize the input first")]
    TargetMissingZero,
    #[error(
        "cardinality {m} is not usable for a target of cardinality {n}: \
         it must be at least 2, at most {n}, and divide {n}"
    )]
    InvalidCardinality { m: u64, n: u64 },
}

/// A verified factor pair found by [`iterated_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSuccess {
    /// The candidate of the requested cardinality.
    pub factor: Multiset,
    /// The quotient recovered from the completed placement.
    pub cofactor: Multiset,
    /// Local optima visited, counting the successful one.
    pub iterations: u64,
}

/// One exhausted cardinality inside a [`DecompositionResult::ProbablyIrreducible`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisorAttempt {
    pub divisor: u64,
    pub iterations: u64,
}

/// Why a multiset was classified irreducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibleReason {
    /// The multiset is `{0}`, the identity element.
    Identity,
    /// Factor cardinalities multiply, so a prime cardinality admits no
    /// non-trivial pair.
    PrimeCardinality,
    /// Exhaustive enumeration of all candidates found no pair.
    ExhaustedEnumeration,
}

/// Outcome of [`decompose`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionResult {
    /// `factor + cofactor` equals the input (re-verified before returning).
    Found {
        factor: Multiset,
        cofactor: Multiset,
        divisor: u64,
        iterations: u64,
    },
    /// Proven irreducible.
    Irreducible { reason: IrreducibleReason },
    /// Every divisor exhausted its iteration budget; irreducibility is not
    /// proven, the search just failed to find a pair.
    ProbablyIrreducible { attempts: Vec<DivisorAttempt> },
    /// The input does not contain 0: it splits as `{offset} + core`, and
    /// `core` (which contains 0) was decomposed recursively. An offset of 2
    /// or more is itself further divisible into unit shifts.
    TrivialShift {
        offset: u64,
        core: Box<DecompositionResult>,
    },
}

impl DecompositionResult {
    /// True when the result exhibits a decomposition of the input
    /// (a found pair, or any split of a minimum offset).
    pub fn is_reduction_witness(&self) -> bool {
        matches!(self, Self::Found { .. } | Self::TrivialShift { .. })
    }

    /// The factor pair of a `Found` result, reaching through shift wrappers.
    pub fn found_pair(&self) -> Option<(&Multiset, &Multiset)> {
        match self {
            Self::Found {
                factor, cofactor, ..
            } => Some((factor, cofactor)),
            Self::TrivialShift { core, .. } => core.found_pair(),
            _ => None,
        }
    }
}

fn validate_target_and_cardinality(target: &Multiset, m: u64) -> Result<(), SearchError> {
    if !target.contains_value(0) {
        return Err(SearchError::TargetMissingZero);
    }
    let n = target.cardinality();
    if m < 2 || m > n || !n.is_multiple_of(m) {
        return Err(SearchError::InvalidCardinality { m, n });
    }
    Ok(())
}

/// Maps sorted expanded-occurrence indices back to element values.
fn values_at(source: &Multiset, sorted_indices: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(sorted_indices.len());
    let mut entries = source.entries().iter();
    let (mut value, mut count) = *entries.next().expect("multisets are non-empty");
    let mut base = 0u64;
    for &idx in sorted_indices {
        while idx >= base + count {
            base += count;
            let &(v, c) = entries.next().expect("index within cardinality");
            value = v;
            count = c;
        }
        out.push(value);
    }
    out
}

/// Uniformly samples `amount` occurrences without replacement. With
/// `skip_one_zero` the sample space excludes one occurrence of the value 0
/// (which is the first occurrence, since entries are sorted).
fn sample_occurrence_values<R: Rng + ?Sized>(
    source: &Multiset,
    amount: u64,
    skip_one_zero: bool,
    rng: &mut R,
) -> Vec<u64> {
    let shift = u64::from(skip_one_zero);
    let space = source.cardinality() - shift;
    debug_assert!(amount <= space);
    let picked = rand::seq::index::sample(rng, space as usize, amount as usize);
    let mut indices: Vec<u64> = picked.iter().map(|i| i as u64 + shift).collect();
    indices.sort_unstable();
    values_at(source, &indices)
}

/// Draws a candidate of cardinality `m` from `source`: one pinned 0 plus
/// `m - 1` occurrences sampled uniformly from the rest.
fn draw_candidate<R: Rng + ?Sized>(source: &Multiset, m: u64, rng: &mut R) -> Multiset {
    let mut values = sample_occurrence_values(source, m - 1, true, rng);
    values.push(0);
    Multiset::from_elements(values).expect("candidate has at least the pinned zero")
}

/// A uniformly sampled sub-multiset of the target of cardinality `m`
/// containing 0.
pub fn initial_solution<R: Rng + ?Sized>(
    target: &Multiset,
    m: u64,
    rng: &mut R,
) -> Result<CandidateSolution, SearchError> {
    validate_target_and_cardinality(target, m)?;
    Ok(CandidateSolution::from_validated(draw_candidate(
        target, m, rng,
    )))
}

/// Returns the first neighbor (one element of `s` replaced by a different
/// value of the target, keeping 0-membership and containment) that strictly
/// improves the score, or `s` itself when none does.
pub fn neighbor_search<R: Rng + ?Sized>(
    target: &Multiset,
    s: &CandidateSolution,
    deterministic_order: bool,
    rng: &mut R,
) -> CandidateSolution {
    let base = greedy_placement(target, s.elements()).score;
    if base == target.cardinality() {
        return s.clone();
    }
    let mut moves: Vec<(u64, u64)> = Vec::new();
    for &(out_value, mult) in s.elements().entries() {
        if out_value == 0 && mult < 2 {
            continue; // one occurrence of 0 is never given up
        }
        for &(in_value, _) in target.entries() {
            if in_value == out_value {
                continue;
            }
            if s.elements().multiplicity(in_value) + 1 > target.multiplicity(in_value) {
                continue;
            }
            moves.push((out_value, in_value));
        }
    }
    if !deterministic_order {
        moves.shuffle(rng);
    }
    for (out_value, in_value) in moves {
        let neighbor = s.elements().with_one_replaced(out_value, in_value);
        if greedy_placement(target, &neighbor).score > base {
            return CandidateSolution::from_validated(neighbor);
        }
    }
    s.clone()
}

/// Repeats [`neighbor_search`] until a fixpoint: the result admits no
/// single-element replacement with a strictly better score. Terminates in at
/// most `n - m` improving steps since the score strictly increases.
pub fn find_local_opt<R: Rng + ?Sized>(
    target: &Multiset,
    s: &CandidateSolution,
    deterministic_order: bool,
    rng: &mut R,
) -> CandidateSolution {
    let mut current = s.clone();
    loop {
        let next = neighbor_search(target, &current, deterministic_order, rng);
        if next.elements() == current.elements() {
            return current;
        }
        current = next;
    }
}

/// Failed pool draws tolerated before restarting from a uniform candidate.
const RESAMPLE_ATTEMPTS: u32 = 5;

/// Informed restart: re-draws a candidate of the same cardinality from the
/// pool made of `s` plus the row multipliers of its placement (the parts of
/// the target that placed well). Degenerate pools are padded from the rest
/// of the target, and if five draws in a row reproduce `s`, the restart
/// falls back to a fresh uniform candidate.
pub fn new_initial_solution<R: Rng + ?Sized>(
    target: &Multiset,
    s: &CandidateSolution,
    rng: &mut R,
) -> CandidateSolution {
    let m = s.cardinality();
    let outcome = greedy_placement(target, s.elements());
    // The leading multiplier is the 0 already shared with the first row.
    let mut pool = s.elements().clone();
    for &b in &outcome.multipliers[1..] {
        pool = pool.with_one_more(b);
    }
    if pool.cardinality() < m
        && let Some(rest) = target.difference(&pool)
    {
        let deficit = (m - pool.cardinality()).min(rest.cardinality());
        for v in sample_occurrence_values(&rest, deficit, false, rng) {
            pool = pool.with_one_more(v);
        }
    }
    if pool.cardinality() >= m {
        for _ in 0..RESAMPLE_ATTEMPTS {
            let candidate = draw_candidate(&pool, m, rng);
            if &candidate != s.elements() {
                return CandidateSolution::from_validated(candidate);
            }
        }
    }
    initial_solution(target, m, rng).expect("target and cardinality were already validated")
}

/// Searches for a factor of cardinality `m`: local optimization with
/// informed restarts, at most `config.max_iterations` local optima. A success
/// carries the verified pair and the number of optima visited. With `m`
/// equal to the target cardinality the only candidate is the target itself
/// and the cofactor is `{0}`; callers wanting non-trivial pairs keep
/// `m <= sqrt(n)`, as [`decompose`] does.
///
/// Restarts normally come from the pool of the last optimum, but an optimum
/// seen before means the pool has become a closed loop, so the restart falls
/// back to a fresh uniform candidate. Without this the search can cycle
/// among a handful of early-failing optima whose pools regenerate each
/// other, and no budget recovers it.
pub fn iterated_search(
    target: &Multiset,
    m: u64,
    config: &SearchConfig,
) -> Result<Option<SearchSuccess>, SearchError> {
    validate_target_and_cardinality(target, m)?;
    let n = target.cardinality();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut current = initial_solution(target, m, &mut rng)?;
    let mut visited: HashSet<Multiset> = HashSet::new();
    for iteration in 1..=config.max_iterations {
        let local_opt = find_local_opt(
            target,
            &current,
            config.deterministic_neighbor_order,
            &mut rng,
        );
        let outcome = greedy_placement(target, local_opt.elements());
        if outcome.score == n {
            let cofactor = outcome.quotient.expect("complete placement has a quotient");
            let factor = local_opt.into_elements();
            debug_assert_eq!(
                factor.minkowski_sum(&cofactor).as_ref(),
                Ok(target),
                "completed placement must reproduce the target"
            );
            return Ok(Some(SearchSuccess {
                factor,
                cofactor,
                iterations: iteration,
            }));
        }
        let first_visit = visited.insert(local_opt.elements().clone());
        current = if first_visit {
            new_initial_solution(target, &local_opt, &mut rng)
        } else {
            initial_solution(target, m, &mut rng)?
        };
    }
    Ok(None)
}

/// Full decomposition driver. Splits off the minimum first; on a core
/// containing 0, applies the identity and prime-cardinality shortcuts, then
/// runs [`iterated_search`] for every divisor up to the square root of the
/// cardinality, ascending, with a derived seed per divisor. The first verified
/// pair wins.
pub fn decompose(target: &Multiset, config: &SearchConfig) -> DecompositionResult {
    let (offset, core) = target.normalize();
    if offset > 0 {
        return DecompositionResult::TrivialShift {
            offset,
            core: Box::new(decompose_core(&core, config)),
        };
    }
    decompose_core(target, config)
}

fn decompose_core(core: &Multiset, config: &SearchConfig) -> DecompositionResult {
    debug_assert!(core.contains_value(0));
    let n = core.cardinality();
    if n == 1 {
        return DecompositionResult::Irreducible {
            reason: IrreducibleReason::Identity,
        };
    }
    if is_prime(n) {
        return DecompositionResult::Irreducible {
            reason: IrreducibleReason::PrimeCardinality,
        };
    }
    let mut attempts = Vec::new();
    for (index, divisor) in small_divisors(n).into_iter().enumerate() {
        let per_divisor = SearchConfig {
            seed: derive_seed(config.seed, index as u64),
            ..config.clone()
        };
        match iterated_search(core, divisor, &per_divisor)
            .expect("driver-produced cardinalities satisfy the preconditions")
        {
            Some(SearchSuccess {
                factor,
                cofactor,
                iterations,
            }) => {
                let product = factor
                    .minkowski_sum(&cofactor)
                    .expect("factor product stays within the target's range");
                assert_eq!(product, *core, "found pair failed re-verification");
                return DecompositionResult::Found {
                    factor,
                    cofactor,
                    divisor,
                    iterations,
                };
            }
            None => attempts.push(DivisorAttempt {
                divisor,
                iterations: config.max_iterations,
            }),
        }
    }
    DecompositionResult::ProbablyIrreducible { attempts }
}
