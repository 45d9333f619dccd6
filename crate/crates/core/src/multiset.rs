//! Multisets of non-negative integers with exact Minkowski-sum algebra.
//!
//! A [`Multiset`] is stored run-length encoded: a sorted list of
//! `(value, multiplicity)` entries. All operations are pure; values are
//! immutable after construction and safe to share across threads.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::poly::SparsePolynomial;

/// Errors from multiset construction and arithmetic.
///
/// Values and multiplicities are 64-bit unsigned; any sum or product that
/// would exceed that width is reported instead of wrapping.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultisetError {
    #[error("multiset must contain at least one element")]
    Empty,
    #[error("value {0} listed with zero multiplicity")]
    ZeroMultiplicity(u64),
    #[error("64-bit overflow in {0}")]
    Overflow(&'static str),
    #[error("set operand required, but value {value} has multiplicity {multiplicity}")]
    NotASet { value: u64, multiplicity: u64 },
}

/// Errors from parsing the multiset text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseMultisetError {
    #[error("empty multiset text")]
    Empty,
    #[error("invalid element `{0}`: expected a non-negative decimal integer")]
    InvalidInteger(String),
    #[error("malformed pair entry at byte {0}: expected `(value:multiplicity)`")]
    MalformedPair(usize),
    #[error(transparent)]
    Invalid(#[from] MultisetError),
}

/// A non-empty multiset of non-negative 64-bit integers.
///
/// Entries are `(value, multiplicity)` pairs with strictly increasing values
/// and multiplicities of at least one. The total cardinality is cached so
/// `cardinality()` is O(1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multiset {
    entries: Vec<(u64, u64)>,
    cardinality: u64,
}

impl Multiset {
    /// Builds a multiset from an explicit list of elements (repetitions kept).
    pub fn from_elements<I>(values: I) -> Result<Self, MultisetError>
    where
        I: IntoIterator<Item = u64>,
    {
        let mut values: Vec<u64> = values.into_iter().collect();
        if values.is_empty() {
            return Err(MultisetError::Empty);
        }
        values.sort_unstable();
        let cardinality = values.len() as u64;
        let mut entries: Vec<(u64, u64)> = Vec::new();
        for v in values {
            match entries.last_mut() {
                Some((last, count)) if *last == v => *count += 1,
                _ => entries.push((v, 1)),
            }
        }
        Ok(Self {
            entries,
            cardinality,
        })
    }

    /// Builds a multiset from `(value, multiplicity)` pairs. Pairs may repeat
    /// a value; multiplicities accumulate. Zero multiplicities are rejected.
    pub fn from_pairs<I>(pairs: I) -> Result<Self, MultisetError>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut acc: std::collections::BTreeMap<u64, u64> = std::collections::BTreeMap::new();
        for (value, multiplicity) in pairs {
            if multiplicity == 0 {
                return Err(MultisetError::ZeroMultiplicity(value));
            }
            let slot = acc.entry(value).or_insert(0);
            *slot = slot
                .checked_add(multiplicity)
                .ok_or(MultisetError::Overflow("multiplicity sum"))?;
        }
        if acc.is_empty() {
            return Err(MultisetError::Empty);
        }
        let mut cardinality: u64 = 0;
        for &m in acc.values() {
            cardinality = cardinality
                .checked_add(m)
                .ok_or(MultisetError::Overflow("cardinality"))?;
        }
        Ok(Self {
            entries: acc.into_iter().collect(),
            cardinality,
        })
    }

    /// The multiset holding a single occurrence of `value`.
    pub fn singleton(value: u64) -> Self {
        Self {
            entries: vec![(value, 1)],
            cardinality: 1,
        }
    }

    /// `{0}`, the identity element of the Minkowski sum.
    pub fn identity() -> Self {
        Self::singleton(0)
    }

    /// Total number of elements, counting repetitions.
    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    /// Number of distinct values.
    pub fn distinct_len(&self) -> usize {
        self.entries.len()
    }

    /// The run-length encoded `(value, multiplicity)` view, sorted by value.
    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    /// Multiplicity of `value`, zero when absent.
    pub fn multiplicity(&self, value: u64) -> u64 {
        match self.entries.binary_search_by_key(&value, |&(v, _)| v) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0,
        }
    }

    pub fn contains_value(&self, value: u64) -> bool {
        self.multiplicity(value) > 0
    }

    pub fn min_value(&self) -> u64 {
        self.entries[0].0
    }

    pub fn max_value(&self) -> u64 {
        self.entries[self.entries.len() - 1].0
    }

    /// Iterates over all elements in ascending order, with repetitions.
    pub fn iter_values(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries
            .iter()
            .flat_map(|&(v, m)| (0..m).map(move |_| v))
    }

    /// Minkowski sum: the multiset of all pairwise element sums, with
    /// multiplicities. The result has cardinality `|A| * |B|`.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self, MultisetError> {
        let cardinality = self
            .cardinality
            .checked_mul(other.cardinality)
            .ok_or(MultisetError::Overflow("cardinality product"))?;
        let mut acc: std::collections::BTreeMap<u64, u64> = std::collections::BTreeMap::new();
        for &(va, ma) in &self.entries {
            for &(vb, mb) in &other.entries {
                let value = va
                    .checked_add(vb)
                    .ok_or(MultisetError::Overflow("element sum"))?;
                let mult = ma
                    .checked_mul(mb)
                    .ok_or(MultisetError::Overflow("multiplicity product"))?;
                let slot = acc.entry(value).or_insert(0);
                *slot = slot
                    .checked_add(mult)
                    .ok_or(MultisetError::Overflow("multiplicity sum"))?;
            }
        }
        Ok(Self {
            entries: acc.into_iter().collect(),
            cardinality,
        })
    }

    /// Minkowski sum of two sets: both operands must have all multiplicities
    /// equal to one, and coinciding pairwise sums collapse to one occurrence.
    pub fn minkowski_set_sum(&self, other: &Self) -> Result<Self, MultisetError> {
        for ms in [self, other] {
            if let Some(&(value, multiplicity)) = ms.entries.iter().find(|&&(_, m)| m > 1) {
                return Err(MultisetError::NotASet {
                    value,
                    multiplicity,
                });
            }
        }
        let mut sums: std::collections::BTreeSet<u64> = std::collections::BTreeSet::new();
        for &(va, _) in &self.entries {
            for &(vb, _) in &other.entries {
                sums.insert(
                    va.checked_add(vb)
                        .ok_or(MultisetError::Overflow("element sum"))?,
                );
            }
        }
        let entries: Vec<(u64, u64)> = sums.into_iter().map(|v| (v, 1)).collect();
        let cardinality = entries.len() as u64;
        Ok(Self {
            entries,
            cardinality,
        })
    }

    /// Containment: every value of `self` occurs in `other` with at least
    /// equal multiplicity.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.entries
            .iter()
            .all(|&(v, m)| m <= other.multiplicity(v))
    }

    /// Multiset difference: keeps `max(mu(x, self) - mu(x, other), 0)` copies
    /// of each value. Returns `None` when nothing remains.
    pub fn difference(&self, other: &Self) -> Option<Self> {
        let mut entries: Vec<(u64, u64)> = Vec::new();
        let mut cardinality: u64 = 0;
        for &(v, m) in &self.entries {
            let kept = m.saturating_sub(other.multiplicity(v));
            if kept > 0 {
                entries.push((v, kept));
                cardinality += kept;
            }
        }
        if entries.is_empty() {
            None
        } else {
            Some(Self {
                entries,
                cardinality,
            })
        }
    }

    /// Splits off the minimum: returns `(offset, core)` with `offset = min`,
    /// `0` in `core`, and `{offset} + core == self`.
    pub fn normalize(&self) -> (u64, Self) {
        let offset = self.min_value();
        if offset == 0 {
            return (0, self.clone());
        }
        let entries = self.entries.iter().map(|&(v, m)| (v - offset, m)).collect();
        (
            offset,
            Self {
                entries,
                cardinality: self.cardinality,
            },
        )
    }

    /// The polynomial with one term per entry: value becomes the exponent,
    /// multiplicity the coefficient.
    pub fn to_polynomial(&self) -> SparsePolynomial {
        SparsePolynomial::from_sorted_entries(self.entries.clone())
    }

    /// Inverse of [`Multiset::to_polynomial`]: exponents become values,
    /// coefficients multiplicities. Fails only if the total coefficient sum
    /// exceeds 64 bits.
    pub fn from_polynomial(p: &SparsePolynomial) -> Result<Self, MultisetError> {
        Self::from_pairs(p.terms().iter().copied())
    }

    /// Render as `(value:multiplicity)` pairs, compact for large multiplicities.
    pub fn to_pair_string(&self) -> String {
        let mut out = String::new();
        for (i, &(v, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("({v}:{m})"));
        }
        out
    }

    /// One more occurrence of `value`. Internal; callers keep cardinality sane.
    pub(crate) fn with_one_more(&self, value: u64) -> Self {
        let mut entries = self.entries.clone();
        match entries.binary_search_by_key(&value, |&(v, _)| v) {
            Ok(i) => entries[i].1 += 1,
            Err(i) => entries.insert(i, (value, 1)),
        }
        Self {
            entries,
            cardinality: self.cardinality + 1,
        }
    }

    /// One occurrence of `out` replaced by one of `into`. Panics if `out` is
    /// absent; internal to neighborhood moves which only drop present values.
    pub(crate) fn with_one_replaced(&self, out: u64, into: u64) -> Self {
        let mut entries = self.entries.clone();
        let i = entries
            .binary_search_by_key(&out, |&(v, _)| v)
            .expect("replaced value must be present");
        if entries[i].1 > 1 {
            entries[i].1 -= 1;
        } else {
            entries.remove(i);
        }
        match entries.binary_search_by_key(&into, |&(v, _)| v) {
            Ok(j) => entries[j].1 += 1,
            Err(j) => entries.insert(j, (into, 1)),
        }
        Self {
            entries,
            cardinality: self.cardinality,
        }
    }
}

impl PartialOrd for Multiset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Multiset {
    /// Lexicographic order on the expanded element sequence, computed on the
    /// run-length encoding so huge multiplicities stay cheap.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut left = self.entries.iter().copied();
        let mut right = other.entries.iter().copied();
        let (mut a, mut b) = (left.next(), right.next());
        loop {
            match (a, b) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((va, ma)), Some((vb, mb))) => {
                    if va != vb {
                        return va.cmp(&vb);
                    }
                    match ma.cmp(&mb) {
                        Ordering::Equal => {
                            a = left.next();
                            b = right.next();
                        }
                        Ordering::Less => {
                            a = left.next();
                            b = Some((vb, mb - ma));
                        }
                        Ordering::Greater => {
                            a = Some((va, ma - mb));
                            b = right.next();
                        }
                    }
                }
            }
        }
    }
}

impl fmt::Display for Multiset {
    /// Flat comma-separated element list, e.g. `0,1,2,2,3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(v, m) in &self.entries {
            for _ in 0..m {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
        }
        Ok(())
    }
}

impl FromStr for Multiset {
    type Err = ParseMultisetError;

    /// Parses either a flat list (`0,1,2,2,3`, comma or whitespace separated)
    /// or pair entries (`(0:1),(2:2)`).
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        if text.trim().is_empty() {
            return Err(ParseMultisetError::Empty);
        }
        if text.contains('(') {
            parse_pair_form(text)
        } else {
            let mut values = Vec::new();
            for token in text.split(|c: char| c == ',' || c.is_whitespace()) {
                if token.is_empty() {
                    continue;
                }
                let v: u64 = token
                    .parse()
                    .map_err(|_| ParseMultisetError::InvalidInteger(token.to_string()))?;
                values.push(v);
            }
            if values.is_empty() {
                return Err(ParseMultisetError::Empty);
            }
            Ok(Self::from_elements(values)?)
        }
    }
}

fn parse_pair_form(text: &str) -> Result<Multiset, ParseMultisetError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    let skip_filler = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos].is_ascii_whitespace() || bytes[*pos] == b',') {
            *pos += 1;
        }
    };
    let read_int = |pos: &mut usize| -> Option<u64> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == start {
            return None;
        }
        text[start..*pos].parse().ok()
    };
    loop {
        skip_filler(&mut pos);
        if pos == bytes.len() {
            break;
        }
        let entry_start = pos;
        if bytes[pos] != b'(' {
            return Err(ParseMultisetError::MalformedPair(entry_start));
        }
        pos += 1;
        let value = read_int(&mut pos).ok_or(ParseMultisetError::MalformedPair(entry_start))?;
        if pos >= bytes.len() || bytes[pos] != b':' {
            return Err(ParseMultisetError::MalformedPair(entry_start));
        }
        pos += 1;
        let mult = read_int(&mut pos).ok_or(ParseMultisetError::MalformedPair(entry_start))?;
        if pos >= bytes.len() || bytes[pos] != b')' {
            return Err(ParseMultisetError::MalformedPair(entry_start));
        }
        pos += 1;
        pairs.push((value, mult));
    }
    if pairs.is_empty() {
        return Err(ParseMultisetError::Empty);
    }
    Ok(Multiset::from_pairs(pairs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(values: &[u64]) -> Multiset {
        Multiset::from_elements(values.iter().copied()).unwrap()
    }

    #[test]
    fn from_elements_run_length_encodes() {
        let m = ms(&[2, 2, 3, 3, 5, 6, 8, 8]);
        assert_eq!(m.entries(), &[(2, 2), (3, 2), (5, 1), (6, 1), (8, 2)]);
        assert_eq!(m.cardinality(), 8);
    }

    #[test]
    fn from_elements_sorts_and_merges() {
        assert_eq!(ms(&[5, 3, 5]).entries(), &[(3, 1), (5, 2)]);
        assert_eq!(ms(&[0]).entries(), &[(0, 1)]);
    }

    #[test]
    fn from_elements_rejects_empty() {
        assert_eq!(Multiset::from_elements([]), Err(MultisetError::Empty));
    }

    #[test]
    fn minkowski_sum_examples() {
        let a = ms(&[0, 1, 3]);
        let b = ms(&[2, 5]);
        assert_eq!(a.minkowski_sum(&b).unwrap(), ms(&[2, 3, 5, 5, 6, 8]));

        let a = ms(&[0, 1, 3, 3]);
        let b = ms(&[2, 2, 5]);
        assert_eq!(
            a.minkowski_sum(&b).unwrap(),
            ms(&[2, 2, 3, 3, 5, 5, 5, 5, 5, 6, 8, 8])
        );
    }

    #[test]
    fn minkowski_sum_identity() {
        let a = ms(&[4, 7, 7, 9]);
        assert_eq!(a.minkowski_sum(&Multiset::identity()).unwrap(), a);
    }

    #[test]
    fn minkowski_sum_overflow_is_an_error() {
        let a = ms(&[u64::MAX]);
        let b = ms(&[1]);
        assert_eq!(
            a.minkowski_sum(&b),
            Err(MultisetError::Overflow("element sum"))
        );
    }

    #[test]
    fn set_sum_collapses_multiplicity() {
        let a = ms(&[0, 1, 3]);
        let b = ms(&[2, 5]);
        // 5 arises both as 0+5 and 3+2 but is kept once.
        assert_eq!(a.minkowski_set_sum(&b).unwrap(), ms(&[2, 3, 5, 6, 8]));
        assert_eq!(
            Multiset::identity()
                .minkowski_set_sum(&Multiset::identity())
                .unwrap(),
            Multiset::identity()
        );
    }

    #[test]
    fn set_sum_by_direct_enumeration() {
        // Independent check: enumerate all pairwise sums of {0,1} twice and dedup.
        let a = ms(&[0, 1]);
        let mut sums = std::collections::BTreeSet::new();
        for x in a.iter_values() {
            for y in a.iter_values() {
                sums.insert(x + y);
            }
        }
        let expected = Multiset::from_elements(sums.iter().copied()).unwrap();
        assert_eq!(a.minkowski_set_sum(&a).unwrap(), expected);
        assert_eq!(expected, ms(&[0, 1, 2]));
    }

    #[test]
    fn set_sum_rejects_multiset_operand() {
        let a = ms(&[0, 1, 1]);
        let b = ms(&[2]);
        assert_eq!(
            a.minkowski_set_sum(&b),
            Err(MultisetError::NotASet {
                value: 1,
                multiplicity: 2
            })
        );
    }

    #[test]
    fn containment() {
        let m = ms(&[0, 1, 2, 2, 3, 3, 3, 3, 5, 5, 5, 5, 6, 7, 9, 9]);
        assert!(ms(&[0, 2, 2, 5]).is_subset_of(&m));
        assert!(m.is_subset_of(&m));
        assert!(!ms(&[2, 2, 2]).is_subset_of(&ms(&[2, 2])));
    }

    #[test]
    fn difference_examples() {
        let a = ms(&[2, 2, 3, 3, 5, 6, 8, 8]);
        let b = ms(&[2, 3, 3, 3, 5, 9]);
        assert_eq!(a.difference(&b), Some(ms(&[2, 6, 8, 8])));
        assert_eq!(a.difference(&a), None);
        // Difference with a disjoint multiset keeps everything.
        assert_eq!(a.difference(&ms(&[1, 4, 9])), Some(a.clone()));
    }

    #[test]
    fn normalize_examples() {
        let (offset, core) = ms(&[2, 4, 3, 4, 3, 5]).normalize();
        assert_eq!(offset, 2);
        assert_eq!(core, ms(&[0, 2, 1, 2, 1, 3]));
        assert_eq!(
            Multiset::singleton(offset).minkowski_sum(&core).unwrap(),
            ms(&[2, 4, 3, 4, 3, 5])
        );

        assert_eq!(ms(&[0, 1, 3]).normalize(), (0, ms(&[0, 1, 3])));
        assert_eq!(ms(&[7]).normalize(), (7, Multiset::identity()));
    }

    #[test]
    fn expanded_lexicographic_order() {
        assert!(ms(&[0, 0, 1]) < ms(&[0, 1, 1]));
        assert!(ms(&[0, 1]) < ms(&[0, 1, 1]));
        assert!(ms(&[0, 1]) < ms(&[0, 3]));
        assert_eq!(ms(&[4, 4]).cmp(&ms(&[4, 4])), Ordering::Equal);
    }

    #[test]
    fn parse_flat_and_pair_forms() {
        assert_eq!(
            "0,1,2,2,3".parse::<Multiset>().unwrap(),
            ms(&[0, 1, 2, 2, 3])
        );
        assert_eq!(
            "0 1 2 2 3".parse::<Multiset>().unwrap(),
            ms(&[0, 1, 2, 2, 3])
        );
        assert_eq!("(0:1),(2:2)".parse::<Multiset>().unwrap(), ms(&[0, 2, 2]));
        assert!(matches!(
            "".parse::<Multiset>(),
            Err(ParseMultisetError::Empty)
        ));
        assert!(matches!(
            "0,x".parse::<Multiset>(),
            Err(ParseMultisetError::InvalidInteger(_))
        ));
        assert!(matches!(
            "(0:0)".parse::<Multiset>(),
            Err(ParseMultisetError::Invalid(
                MultisetError::ZeroMultiplicity(0)
            ))
        ));
        assert!(matches!(
            "(1:2".parse::<Multiset>(),
            Err(ParseMultisetError::MalformedPair(0))
        ));
    }

    #[test]
    fn display_round_trips() {
        let m = ms(&[0, 1, 2, 2, 3]);
        assert_eq!(m.to_string(), "0,1,2,2,3");
        assert_eq!(m.to_string().parse::<Multiset>().unwrap(), m);
        assert_eq!(m.to_pair_string(), "(0:1),(1:1),(2:2),(3:1)");
        assert_eq!(m.to_pair_string().parse::<Multiset>().unwrap(), m);
    }
}
