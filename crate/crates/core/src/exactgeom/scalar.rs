use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// Default equality tolerance of the floating-point backend.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Arithmetic backend selector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Backend {
    ExactRational,
    Float { tolerance: f64 },
}

impl Backend {
    pub fn float() -> Backend {
        Backend::Float { tolerance: DEFAULT_TOLERANCE }
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            Backend::ExactRational => 0.0,
            Backend::Float { tolerance } => *tolerance,
        }
    }
}

/// Field operations shared by the exact and floating-point backends.
///
/// Sign tests take an explicit tolerance; the exact backend ignores it.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// Hashable canonical key, available only on exact backends.
    type Key: Hash + Eq + Clone;

    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn key(&self) -> Option<Self::Key>;
    fn parse_literal(s: &str) -> Option<Self>;
    /// Nearest representable value of a float.
    fn from_f64_lossy(x: f64) -> Self;
    /// Lossless JSON form: exact values as `"p/q"` strings, floats as numbers.
    fn to_json(&self) -> serde_json::Value;

    fn from_json(v: &serde_json::Value) -> Option<Self> {
        match v {
            serde_json::Value::String(s) => Self::parse_literal(s),
            serde_json::Value::Number(n) => {
                Self::parse_literal(&n.to_string()).or_else(|| n.as_f64().map(Self::from_f64_lossy))
            }
            _ => None,
        }
    }

    /// Sign of `self`, treating `|self| <= tol` as zero.
    fn sign(&self, tol: f64) -> Ordering;

    fn is_zero_tol(&self, tol: f64) -> bool {
        self.sign(tol) == Ordering::Equal
    }

    fn is_pos(&self, tol: f64) -> bool {
        self.sign(tol) == Ordering::Greater
    }

    fn is_neg(&self, tol: f64) -> bool {
        self.sign(tol) == Ordering::Less
    }

    fn cmp_tol(&self, other: &Self, tol: f64) -> Ordering {
        (self.clone() - other).sign(tol)
    }

    fn abs_val(&self) -> Self {
        if self.sign(0.0) == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for Rational {
    type Key = Rational;
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(num, den)
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
    fn key(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn parse_literal(s: &str) -> Option<Self> {
        s.parse().ok()
    }
    fn from_f64_lossy(x: f64) -> Self {
        Rational::from_f64(x).expect("finite float")
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
    fn sign(&self, _tol: f64) -> Ordering {
        self.signum()
    }
}

impl Scalar for f64 {
    type Key = ();
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn key(&self) -> Option<()> {
        None
    }
    fn parse_literal(s: &str) -> Option<Self> {
        let t = s.trim();
        match t.split_once('/') {
            Some((p, q)) => Some(p.trim().parse::<f64>().ok()? / q.trim().parse::<f64>().ok()?),
            None => t.parse().ok(),
        }
    }
    fn from_f64_lossy(x: f64) -> Self {
        x
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self).map_or(serde_json::Value::Null, serde_json::Value::Number)
    }
    fn sign(&self, tol: f64) -> Ordering {
        if *self > tol {
            Ordering::Greater
        } else if *self < -tol {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y)
}

pub fn sub_vec<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

pub fn scale_vec<T: Scalar>(a: &[T], s: &T) -> Vec<T> {
    a.iter().map(|x| x.clone() * s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_sign_respects_tolerance() {
        assert_eq!(1e-10f64.sign(1e-9), Ordering::Equal);
        assert_eq!((-2e-9f64).sign(1e-9), Ordering::Less);
        assert!(f64::parse_literal("1/4").unwrap() == 0.25);
    }

    #[test]
    fn exact_sign_ignores_tolerance() {
        let tiny = Rational::new(1, 1_000_000_000_000);
        assert_eq!(tiny.sign(1.0), Ordering::Greater);
    }

    #[test]
    fn dot_product() {
        let a: Vec<Rational> = vec![Rational::new(1, 2), Rational::from_integer(3)];
        let b: Vec<Rational> = vec![Rational::from_integer(4), Rational::new(1, 3)];
        assert_eq!(dot(&a, &b), Rational::from_integer(3));
    }
}
