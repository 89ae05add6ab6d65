//! Exact rational arithmetic, dense vectors and the simplex kernel.
//!
//! Nothing in here touches floating point. Every predicate further up the
//! stack (edge tests, slab tests, norm comparisons) is decided by the
//! routines in this module.

mod linalg;
mod lp;

use std::fmt;
use std::ops::{Add, Deref, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use linalg::rank;
pub use lp::{
    solve_lp, Constraint, LinearProgram, LpError, LpOutcome, LpStatus, Relation, Sense,
    VariableBound,
};

use crate::error::Error;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// Integer shorthand.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num / den` in lowest terms. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a/b"` or `"a"`, with optional sign on the numerator.
pub fn parse_scalar(text: &str) -> Result<Scalar, Error> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Scalar::new(num, den))
}

/// Canonical string form: `"a"` for integers, `"a/b"` otherwise.
pub fn format_scalar(value: &Scalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Serde adapter that stores a [`Scalar`] as its canonical string.
pub mod scalar_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let text = String::deserialize(d)?;
        parse_scalar(&text).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::super::*;

        pub fn serialize<S: Serializer>(value: &Option<Scalar>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.serialize_some(&format_scalar(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Scalar>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|t| parse_scalar(&t).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

/// A point or direction in ℝⁿ with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    /// The `i`-th standard basis vector of ℝ^`dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, factor: &Scalar) -> Vector {
        Vector(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `self + t·(other − self)`.
    pub fn lerp(&self, other: &Vector, t: &Scalar) -> Vector {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + t * (b - a))
                .collect(),
        )
    }

    pub fn l1(&self) -> Scalar {
        self.0.iter().fold(Scalar::zero(), |acc, c| acc + c.abs())
    }

    pub fn linf(&self) -> Scalar {
        self.0
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn squared_l2(&self) -> Scalar {
        self.dot(self)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_scalar).collect()
    }
}

impl Deref for Vector {
    type Target = [Scalar];

    fn deref(&self) -> &[Scalar] {
        &self.0
    }
}

impl From<Vec<Scalar>> for Vector {
    fn from(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect()
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect()
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        self.0.iter().map(|c| -c).collect()
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_scalar(s))
            .collect::<Result<Vector, _>>()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("6/-4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_scalar(" -7 ").unwrap(), int(-7));
        assert_eq!(format_scalar(&ratio(4, 2)), "2");
        assert_eq!(format_scalar(&ratio(-1, 3)), "-1/3");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("0.5").is_err());
        assert!(parse_scalar("").is_err());
    }

    #[test]
    fn canonical_form_after_arithmetic() {
        let a = ratio(1, 6) + ratio(1, 3);
        assert_eq!(a.numer(), &BigInt::from(1));
        assert_eq!(a.denom(), &BigInt::from(2));
        let b = ratio(2, -4) * ratio(-2, 1);
        assert_eq!(b, int(1));
    }

    #[test]
    fn vector_ops() {
        let a = Vector::from_ints(&[3, -4]);
        let b = Vector::from_ints(&[1, 1]);
        assert_eq!(a.l1(), int(7));
        assert_eq!(a.linf(), int(4));
        assert_eq!(a.squared_l2(), int(25));
        assert_eq!(&a - &b, Vector::from_ints(&[2, -5]));
        assert_eq!(a.lerp(&b, &ratio(1, 2)), Vector::new(vec![int(2), ratio(-3, 2)]));
    }

    #[test]
    fn vector_json_uses_strings() {
        let v = Vector::new(vec![ratio(1, 3), int(-2)]);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"["1/3","-2"]"#);
        let back: Vector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
