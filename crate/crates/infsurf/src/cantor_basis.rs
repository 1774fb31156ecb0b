//! Triadic basis intervals of the middle-thirds Cantor set.
//!
//! An interval `[n/3^m, (n+1)/3^m]` is stored as its digit word over `{0, 2}`.
//! Nesting is the prefix order on words, so every comparison is exact.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A ternary digit that survives the middle-third removal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Digit {
    Zero,
    Two,
}

impl Digit {
    pub const ALL: [Digit; 2] = [Digit::Zero, Digit::Two];

    pub fn value(self) -> u8 {
        match self {
            Digit::Zero => 0,
            Digit::Two => 2,
        }
    }

    /// Slot index used by transition tables: 0 for `0`, 1 for `2`.
    pub fn index(self) -> usize {
        match self {
            Digit::Zero => 0,
            Digit::Two => 1,
        }
    }

    pub fn from_index(i: usize) -> Digit {
        if i == 0 {
            Digit::Zero
        } else {
            Digit::Two
        }
    }

    pub fn from_value(v: u8) -> Option<Digit> {
        match v {
            0 => Some(Digit::Zero),
            2 => Some(Digit::Two),
            _ => None,
        }
    }

    pub fn from_char(c: char) -> Option<Digit> {
        match c {
            '0' => Some(Digit::Zero),
            '2' => Some(Digit::Two),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Digit::Zero => '0',
            Digit::Two => '2',
        }
    }

    pub fn flip(self) -> Digit {
        match self {
            Digit::Zero => Digit::Two,
            Digit::Two => Digit::Zero,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("digit {found:?} at position {position} is not 0 or 2")]
    BadDigit { position: usize, found: char },
    #[error("{inner} is not a strict sub-interval of {outer}")]
    NotStrictSubset { inner: String, outer: String },
}

/// Result of comparing two basis intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Equal,
    Disjoint,
    SubsetOf,
    SupersetOf,
}

/// Basis interval `[n/3^m, (n+1)/3^m]` encoded by its digit word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TriadicInterval {
    digits: Vec<Digit>,
}

impl TriadicInterval {
    /// The root interval `[0,1]`.
    pub fn root() -> Self {
        TriadicInterval { digits: Vec::new() }
    }

    pub fn from_digits(digits: Vec<Digit>) -> Self {
        TriadicInterval { digits }
    }

    /// Parses a digit word such as `"202"`.
    pub fn parse(word: &str) -> Result<Self, BasisError> {
        let mut digits = Vec::with_capacity(word.len());
        for (position, c) in word.chars().enumerate() {
            match Digit::from_char(c) {
                Some(d) => digits.push(d),
                None => return Err(BasisError::BadDigit { position, found: c }),
            }
        }
        Ok(TriadicInterval { digits })
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn level(&self) -> usize {
        self.digits.len()
    }

    pub fn word(&self) -> String {
        self.digits.iter().map(|d| d.as_char()).collect()
    }

    pub fn child(&self, d: Digit) -> Self {
        let mut digits = self.digits.clone();
        digits.push(d);
        TriadicInterval { digits }
    }

    /// The two maximal strict sub-intervals, `I·0` then `I·2`.
    pub fn children(&self) -> (Self, Self) {
        (self.child(Digit::Zero), self.child(Digit::Two))
    }

    pub fn parent(&self) -> Option<Self> {
        if self.digits.is_empty() {
            None
        } else {
            Some(TriadicInterval {
                digits: self.digits[..self.digits.len() - 1].to_vec(),
            })
        }
    }

    /// Prefix of length `k` (the enclosing interval at level `k`).
    pub fn truncate(&self, k: usize) -> Self {
        TriadicInterval {
            digits: self.digits[..k.min(self.digits.len())].to_vec(),
        }
    }

    pub fn is_prefix_of(&self, other: &Self) -> bool {
        other.digits.len() >= self.digits.len() && other.digits[..self.digits.len()] == self.digits[..]
    }

    /// The numerator `n` with `I = [n/3^m, (n+1)/3^m]`.
    pub fn numerator(&self) -> BigInt {
        let three = BigInt::from(3u8);
        self.digits
            .iter()
            .fold(BigInt::zero(), |acc, d| acc * &three + BigInt::from(d.value()))
    }

    /// Exact endpoints `(a, b)`.
    pub fn endpoints(&self) -> (BigRational, BigRational) {
        let denom = num_traits::pow(BigInt::from(3u8), self.digits.len());
        let n = self.numerator();
        let a = BigRational::new(n.clone(), denom.clone());
        let b = BigRational::new(n + BigInt::one(), denom);
        (a, b)
    }

    pub fn relation(&self, other: &Self) -> Relation {
        if self.digits == other.digits {
            Relation::Equal
        } else if other.is_prefix_of(self) {
            Relation::SubsetOf
        } else if self.is_prefix_of(other) {
            Relation::SupersetOf
        } else {
            Relation::Disjoint
        }
    }

    /// `i_C(self, outer)`: the first digit of `self` beyond the prefix `outer`.
    pub fn position_code(&self, outer: &Self) -> Result<Digit, BasisError> {
        if self.relation(outer) != Relation::SubsetOf {
            return Err(BasisError::NotStrictSubset {
                inner: self.word(),
                outer: outer.word(),
            });
        }
        Ok(self.digits[outer.level()])
    }

    /// Exact fraction form, e.g. `[2/3,7/9]`.
    pub fn pretty(&self) -> String {
        let (a, b) = self.endpoints();
        format!("[{},{}]", a, b)
    }
}

impl fmt::Display for TriadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl Serialize for TriadicInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.word())
    }
}

impl<'de> Deserialize<'de> for TriadicInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        TriadicInterval::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// All `2^m` intervals of level `m`, in increasing order.
pub fn level_family(m: usize) -> Vec<TriadicInterval> {
    let mut out = vec![TriadicInterval::root()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|i| {
                let (a, b) = i.children();
                [a, b]
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn endpoints_examples() {
        assert_eq!(TriadicInterval::root().endpoints(), (q(0, 1), q(1, 1)));
        assert_eq!(TriadicInterval::parse("0").unwrap().endpoints(), (q(0, 1), q(1, 3)));
        assert_eq!(TriadicInterval::parse("2").unwrap().endpoints(), (q(2, 3), q(1, 1)));
        assert_eq!(TriadicInterval::parse("20").unwrap().endpoints(), (q(2, 3), q(7, 9)));
        assert_eq!(TriadicInterval::parse("20").unwrap().pretty(), "[2/3,7/9]");
    }

    #[test]
    fn relations() {
        let i = |w: &str| TriadicInterval::parse(w).unwrap();
        assert_eq!(i("0").relation(&i("0")), Relation::Equal);
        assert_eq!(i("02").relation(&i("0")), Relation::SubsetOf);
        assert_eq!(i("0").relation(&i("02")), Relation::SupersetOf);
        assert_eq!(i("0").relation(&i("2")), Relation::Disjoint);
    }

    #[test]
    fn position_codes() {
        let i = |w: &str| TriadicInterval::parse(w).unwrap();
        assert_eq!(i("0").position_code(&i("")).unwrap(), Digit::Zero);
        assert_eq!(i("2").position_code(&i("")).unwrap(), Digit::Two);
        assert_eq!(i("202").position_code(&i("2")).unwrap(), Digit::Zero);
        assert!(i("2").position_code(&i("2")).is_err());
        assert!(i("0").position_code(&i("2")).is_err());
    }

    #[test]
    fn children_and_family() {
        let (a, b) = TriadicInterval::parse("2").unwrap().children();
        assert_eq!(a.pretty(), "[2/3,7/9]");
        assert_eq!(b.pretty(), "[8/9,1]");
        assert_eq!(level_family(0).len(), 1);
        assert_eq!(level_family(3).len(), 8);
    }

    #[test]
    fn rejects_middle_digit() {
        assert_eq!(
            TriadicInterval::parse("21"),
            Err(BasisError::BadDigit { position: 1, found: '1' })
        );
    }
}
