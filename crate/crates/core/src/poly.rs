//! Sparse polynomials over the non-negative integers.
//!
//! Terms are `(exponent, coefficient)` pairs with strictly increasing
//! exponents and coefficients of at least one. The text grammar is
//! `term ("+" term)*` with `term := [coef]["x"["^" exp]]`: `3x^4`, `2x`,
//! `x^2`, `x`, `7`. Whitespace is ignored. There is no subtraction: these
//! polynomials have non-negative coefficients by construction.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::multiset::{Multiset, MultisetError};

/// A non-zero polynomial with non-negative integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    terms: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero polynomial is not representable")]
    Zero,
    #[error("64-bit overflow in {0}")]
    Overflow(&'static str),
}

/// A polynomial text parse failure, with the byte offset where it occurred.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {kind}")]
pub struct PolyParseError {
    pub position: usize,
    pub kind: PolyParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyParseErrorKind {
    #[error("negative coefficients are not in N[x]")]
    NegativeCoefficient,
    #[error("expected a term (coefficient and/or `x`)")]
    ExpectedTerm,
    #[error("expected an exponent after `^`")]
    ExpectedExponent,
    #[error("expected `+` between terms")]
    ExpectedPlus,
    #[error("integer does not fit in 64 bits")]
    NumberTooLarge,
    #[error("all terms have zero coefficient")]
    ZeroPolynomial,
}

impl SparsePolynomial {
    /// Builds a polynomial from `(exponent, coefficient)` terms. Like terms
    /// are merged and zero coefficients dropped; an all-zero input is an error.
    pub fn from_terms<I>(terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut acc: std::collections::BTreeMap<u64, u64> = std::collections::BTreeMap::new();
        for (exp, coef) in terms {
            if coef == 0 {
                continue;
            }
            let slot = acc.entry(exp).or_insert(0);
            *slot = slot
                .checked_add(coef)
                .ok_or(PolyError::Overflow("coefficient sum"))?;
        }
        if acc.is_empty() {
            return Err(PolyError::Zero);
        }
        Ok(Self {
            terms: acc.into_iter().collect(),
        })
    }

    /// The constant polynomial `c`, `c >= 1`.
    pub fn constant(c: u64) -> Result<Self, PolyError> {
        Self::from_terms([(0, c)])
    }

    /// The monomial `x^exp`.
    pub fn monomial(exp: u64) -> Self {
        Self {
            terms: vec![(exp, 1)],
        }
    }

    /// Terms already sorted with positive coefficients; used by the multiset
    /// conversion where the invariants coincide.
    pub(crate) fn from_sorted_entries(terms: Vec<(u64, u64)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|&(_, c)| c > 0));
        Self { terms }
    }

    pub fn terms(&self) -> &[(u64, u64)] {
        &self.terms
    }

    pub fn degree(&self) -> u64 {
        self.terms[self.terms.len() - 1].0
    }

    /// Sum of the coefficients: the cardinality of the multiset image.
    pub fn coefficient_sum(&self) -> Result<u64, PolyError> {
        let mut total: u64 = 0;
        for &(_, c) in &self.terms {
            total = total
                .checked_add(c)
                .ok_or(PolyError::Overflow("coefficient sum"))?;
        }
        Ok(total)
    }

    /// The multiset whose values are the exponents, repeated coefficient times.
    pub fn to_multiset(&self) -> Result<Multiset, MultisetError> {
        Multiset::from_polynomial(self)
    }

    /// Product computed through the multiset correspondence, so that there is
    /// exactly one multiplication semantics in the crate.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, MultisetError> {
        let product = self.to_multiset()?.minkowski_sum(&other.to_multiset()?)?;
        Ok(product.to_polynomial())
    }
}

impl PartialOrd for SparsePolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SparsePolynomial {
    /// Degree first, then lexicographic on the term list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.terms.cmp(&other.terms))
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(exp, coef)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (exp, coef) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (e, 1) => write!(f, "x^{e}")?,
                (e, c) => write!(f, "{c}x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Parses the polynomial grammar. Reports the byte position of the first
/// offending character; a `-` anywhere is rejected since these polynomials
/// have no negative coefficients.
pub fn parse_polynomial(text: &str) -> Result<SparsePolynomial, PolyParseError> {
    Parser {
        bytes: text.as_bytes(),
        text,
        pos: 0,
    }
    .parse()
}

impl FromStr for SparsePolynomial {
    type Err = PolyParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_polynomial(text)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<SparsePolynomial, PolyParseError> {
        let mut terms: Vec<(u64, u64)> = Vec::new();
        self.skip_ws();
        let first = self.term()?;
        terms.push(first);
        loop {
            self.skip_ws();
            if self.pos == self.bytes.len() {
                break;
            }
            match self.bytes[self.pos] {
                b'+' => {
                    self.pos += 1;
                    self.skip_ws();
                    terms.push(self.term()?);
                }
                b'-' => return Err(self.err(PolyParseErrorKind::NegativeCoefficient)),
                _ => return Err(self.err(PolyParseErrorKind::ExpectedPlus)),
            }
        }
        SparsePolynomial::from_terms(terms).map_err(|_| PolyParseError {
            position: 0,
            kind: PolyParseErrorKind::ZeroPolynomial,
        })
    }

    fn term(&mut self) -> Result<(u64, u64), PolyParseError> {
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'-' {
            return Err(self.err(PolyParseErrorKind::NegativeCoefficient));
        }
        let coef = self.number()?;
        self.skip_ws();
        let has_x = self.pos < self.bytes.len() && self.bytes[self.pos] == b'x';
        if !has_x {
            return match coef {
                Some(c) => Ok((0, c)),
                None => Err(self.err(PolyParseErrorKind::ExpectedTerm)),
            };
        }
        self.pos += 1;
        self.skip_ws();
        let exp = if self.pos < self.bytes.len() && self.bytes[self.pos] == b'^' {
            self.pos += 1;
            self.skip_ws();
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'-' {
                return Err(self.err(PolyParseErrorKind::NegativeCoefficient));
            }
            self.number()?
                .ok_or_else(|| self.err(PolyParseErrorKind::ExpectedExponent))?
        } else {
            1
        };
        Ok((exp, coef.unwrap_or(1)))
    }

    fn number(&mut self) -> Result<Option<u64>, PolyParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        self.text[start..self.pos]
            .parse::<u64>()
            .map(Some)
            .map_err(|_| PolyParseError {
                position: start,
                kind: PolyParseErrorKind::NumberTooLarge,
            })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, kind: PolyParseErrorKind) -> PolyParseError {
        PolyParseError {
            position: self.pos,
            kind,
        }
    }
}
