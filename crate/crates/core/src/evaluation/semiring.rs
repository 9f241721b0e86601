use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Commutative semiring carrying array entries.
///
/// Fixed-width instances report overflow through `None` instead of wrapping.
pub trait Semiring: Clone + PartialEq + Debug + Send + Sync + 'static {
    /// Short tag used in the array JSON format.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    /// Equality used when comparing arrays. Exact except for floating point.
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    /// The image of `n` under the unique map from the naturals.
    fn from_count(n: u64) -> Option<Self>;

    /// `base^exp` computed in the semiring.
    fn power(base: u64, exp: u64) -> Option<Self> {
        let mut acc = Self::one();
        let mut sq = Self::from_count(base)?;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Some(acc)
    }

    /// Exact rational value, when the carrier embeds in the rationals.
    fn to_rational(&self) -> Option<BigRational> {
        None
    }

    fn to_json(&self) -> Value;
    fn from_json(value: &Value) -> Option<Self>;
}

impl Semiring for i64 {
    const NAME: &'static str = "int";

    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i64::checked_add(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other)
    }
    fn from_count(n: u64) -> Option<Self> {
        i64::try_from(n).ok()
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(BigRational::from_integer(BigInt::from(*self)))
    }
    fn to_json(&self) -> Value {
        Value::from(*self)
    }
    fn from_json(value: &Value) -> Option<Self> {
        value.as_i64()
    }
}

impl Semiring for u64 {
    const NAME: &'static str = "nat";

    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        u64::checked_add(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        u64::checked_mul(*self, *other)
    }
    fn from_count(n: u64) -> Option<Self> {
        Some(n)
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(BigRational::from_integer(BigInt::from(*self)))
    }
    fn to_json(&self) -> Value {
        Value::from(*self)
    }
    fn from_json(value: &Value) -> Option<Self> {
        value.as_u64()
    }
}

impl Semiring for BigRational {
    const NAME: &'static str = "rational";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_count(n: u64) -> Option<Self> {
        Some(BigRational::from_integer(BigInt::from(n)))
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    /// Integers print as JSON strings like `"3"`, fractions as `"-1/2"`.
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(value: &Value) -> Option<Self> {
        match value {
            Value::String(s) => s.trim().parse().ok(),
            Value::Number(n) => n
                .as_i64()
                .map(|i| BigRational::from_integer(BigInt::from(i))),
            _ => None,
        }
    }
}

/// Absolute tolerance for floating-point comparisons.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

impl Semiring for f64 {
    const NAME: &'static str = "float";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn approx_eq(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_TOLERANCE
    }
    fn from_count(n: u64) -> Option<Self> {
        Some(n as f64)
    }
    fn to_json(&self) -> Value {
        Value::from(*self)
    }
    fn from_json(value: &Value) -> Option<Self> {
        value.as_f64()
    }
}

/// Parses an exact rational from text like `3`, `-2/5`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    text.trim().parse().ok()
}

/// Best-effort lossy view for diagnostics.
pub fn rational_to_f64(r: &BigRational) -> Option<f64> {
    let n = r.numer().to_f64()?;
    let d = r.denom().to_f64()?;
    Some(if r.is_negative() {
        -(n.abs() / d)
    } else {
        n / d
    })
}
