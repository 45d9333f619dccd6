//! Factorization of polynomials with non-negative integer coefficients.
//!
//! A polynomial maps to the multiset of its exponents (repeated coefficient
//! times); products correspond to Minkowski sums, so a decomposition of the
//! multiset image is a factorization of the polynomial. The image has one
//! element per unit of coefficient mass, which can dwarf the sparse
//! representation, so the image cardinality is capped before any search runs.

use thiserror::Error;

use crate::arith::is_prime;
use crate::multiset::{Multiset, MultisetError};
use crate::poly::SparsePolynomial;
use crate::search::{DecompositionResult, SearchConfig, decompose};

/// Default cap on the multiset image cardinality (the coefficient sum).
pub const DEFAULT_IMAGE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyFactorError {
    #[error(
        "polynomial image has {cardinality} elements (sum of coefficients), \
         exceeding the limit of {limit}"
    )]
    ImageTooLarge { cardinality: u64, limit: u64 },
    #[error(transparent)]
    Multiset(#[from] MultisetError),
}

/// The multiset image of `p`, refused beyond `limit` elements.
pub fn multiset_image(p: &SparsePolynomial, limit: u64) -> Result<Multiset, PolyFactorError> {
    let cardinality = p
        .coefficient_sum()
        .map_err(|_| MultisetError::Overflow("coefficient sum"))?;
    if cardinality > limit {
        return Err(PolyFactorError::ImageTooLarge { cardinality, limit });
    }
    Ok(Multiset::from_polynomial(p)?)
}

/// One binary factorization of `p` over the non-negative integers, or `None`
/// when the search classifies it (probably) irreducible. The product of a
/// returned pair equals `p` exactly.
pub fn n_poly_fact(
    p: &SparsePolynomial,
    config: &SearchConfig,
) -> Result<Option<(SparsePolynomial, SparsePolynomial)>, PolyFactorError> {
    n_poly_fact_bounded(p, config, DEFAULT_IMAGE_LIMIT)
}

/// [`n_poly_fact`] with an explicit image cardinality cap.
pub fn n_poly_fact_bounded(
    p: &SparsePolynomial,
    config: &SearchConfig,
    limit: u64,
) -> Result<Option<(SparsePolynomial, SparsePolynomial)>, PolyFactorError> {
    let image = multiset_image(p, limit)?;
    let (offset, core) = image.normalize();
    if offset > 0 {
        // p = x^offset * q; splitting the monomial off is already a
        // factorization unless p is x itself.
        if core.cardinality() == 1 {
            return Ok(if offset >= 2 {
                Some((
                    SparsePolynomial::monomial(1),
                    SparsePolynomial::monomial(offset - 1),
                ))
            } else {
                None
            });
        }
        return Ok(Some((
            SparsePolynomial::monomial(offset),
            core.to_polynomial(),
        )));
    }
    match decompose(&image, config) {
        DecompositionResult::Found {
            factor, cofactor, ..
        } => Ok(Some((factor.to_polynomial(), cofactor.to_polynomial()))),
        _ => Ok(None),
    }
}

/// Splits `p` recursively until every part resists further factorization,
/// and returns the parts sorted by degree then term list. The product of the
/// returned list equals `p`; irreducibility of the parts is heuristic except
/// where [`is_provably_irreducible`] holds.
pub fn factor_completely(
    p: &SparsePolynomial,
    config: &SearchConfig,
) -> Result<Vec<SparsePolynomial>, PolyFactorError> {
    let mut queue = vec![p.clone()];
    let mut parts = Vec::new();
    while let Some(q) = queue.pop() {
        match n_poly_fact(&q, config)? {
            Some((a, b)) => {
                queue.push(a);
                queue.push(b);
            }
            None => parts.push(q),
        }
    }
    parts.sort();
    let product = parts
        .iter()
        .skip(1)
        .try_fold(parts[0].clone(), |acc, f| acc.checked_mul(f))?;
    assert_eq!(&product, p, "factor list failed re-verification");
    Ok(parts)
}

/// True when irreducibility of `p` follows from cardinality arithmetic
/// rather than from the search having given up: the image is a single
/// element (i.e. `p` is `x` or `1`), or it contains 0 and its cardinality is
/// prime.
pub fn is_provably_irreducible(p: &SparsePolynomial) -> bool {
    let Ok(cardinality) = p.coefficient_sum() else {
        return false;
    };
    if cardinality == 1 {
        // A monomial x^k factors into unit shifts unless k <= 1.
        return p.degree() <= 1;
    }
    let has_constant_term = p.terms()[0].0 == 0;
    has_constant_term && is_prime(cardinality)
}
