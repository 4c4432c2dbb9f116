use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Path counts by length. Only positive counts are stored, so two spectra
/// compare equal iff they agree at every length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LengthSpectrum {
    counts: BTreeMap<usize, BigUint>,
}

impl LengthSpectrum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from `(length, count)` pairs; zero counts are dropped and
    /// repeated lengths are summed.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigUint>,
    {
        let mut s = Self::new();
        for (len, c) in pairs {
            s.add(len, c.into());
        }
        s
    }

    /// `values[k]` is the count at length `start + k`.
    pub fn from_sequence<C: Clone + Into<BigUint>>(start: usize, values: &[C]) -> Self {
        Self::from_pairs(values.iter().cloned().enumerate().map(|(k, c)| (start + k, c)))
    }

    pub fn add(&mut self, len: usize, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.counts.entry(len).or_default() += count;
    }

    pub fn get(&self, len: usize) -> BigUint {
        self.counts.get(&len).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().map(|(&l, c)| (l, c))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn min_len(&self) -> Option<usize> {
        self.counts.keys().next().copied()
    }

    pub fn max_len(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Counts on `[min_len, max_len]`, internal zeros included.
    pub fn contiguous(&self) -> Vec<BigUint> {
        match (self.min_len(), self.max_len()) {
            (Some(a), Some(b)) => (a..=b).map(|l| self.get(l)).collect(),
            _ => Vec::new(),
        }
    }

    /// Positive counts only, in increasing length.
    pub fn positive(&self) -> Vec<BigUint> {
        self.counts.values().cloned().collect()
    }

    fn sequence(&self, support: Support) -> Vec<BigUint> {
        match support {
            Support::Contiguous => self.contiguous(),
            Support::PositiveOnly => self.positive(),
        }
    }

    /// Pointwise `self <= other`.
    pub fn dominated_by(&self, other: &LengthSpectrum) -> bool {
        self.counts.iter().all(|(&l, c)| *c <= other.get(l))
    }

    pub fn is_unimodal(&self, support: Support) -> bool {
        is_unimodal(&self.sequence(support))
    }

    pub fn is_log_concave(&self, support: Support) -> bool {
        is_log_concave(&self.sequence(support))
    }

    pub fn is_ultra_log_concave(&self, support: Support) -> bool {
        is_ultra_log_concave(&self.sequence(support))
    }

    pub fn is_symmetric(&self, support: Support) -> bool {
        is_symmetric(&self.sequence(support))
    }

    /// Lengths attaining the maximum count.
    pub fn modes(&self) -> Vec<usize> {
        let Some(max) = self.counts.values().max() else { return Vec::new() };
        self.counts.iter().filter(|(_, c)| *c == max).map(|(&l, _)| l).collect()
    }

    pub fn analytics(&self) -> Analytics {
        Analytics {
            unimodal: self.is_unimodal(Support::Contiguous),
            log_concave: self.is_log_concave(Support::Contiguous),
            ultra_log_concave: self.is_ultra_log_concave(Support::Contiguous),
            symmetric: self.is_symmetric(Support::Contiguous),
            modes: self.modes(),
        }
    }

    /// `length,count` rows under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("length,count\n");
        for (l, c) in self.iter() {
            out.push_str(&format!("{l},{c}\n"));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut s = Self::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("length") {
                continue;
            }
            let (l, c) = line
                .split_once(',')
                .ok_or_else(|| Error::input(format!("line {}: expected `length,count`", lineno + 1)))?;
            let l: usize = l.trim().parse().map_err(|_| Error::input(format!("line {}: bad length", lineno + 1)))?;
            let c: BigUint = c.trim().parse().map_err(|_| Error::input(format!("line {}: bad count", lineno + 1)))?;
            s.add(l, c);
        }
        Ok(s)
    }

    /// JSON object mapping decimal lengths to decimal-string counts.
    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> =
            self.iter().map(|(l, c)| (l.to_string(), Value::String(c.to_string()))).collect();
        Value::Object(map)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::input("spectrum JSON must be an object"))?;
        let mut s = Self::new();
        for (k, v) in obj {
            let l: usize = k.parse().map_err(|_| Error::input(format!("bad length key {k:?}")))?;
            let c: BigUint = match v {
                Value::String(t) => t.parse().map_err(|_| Error::input(format!("bad count {t:?}")))?,
                Value::Number(n) => n
                    .as_u64()
                    .map(BigUint::from)
                    .ok_or_else(|| Error::input(format!("bad count {n}")))?,
                _ => return Err(Error::input(format!("bad count for length {l}"))),
            };
            s.add(l, c);
        }
        Ok(s)
    }
}

impl fmt::Display for LengthSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (l, c)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}:{c}")?;
        }
        write!(f, "}}")
    }
}

/// Which sequence the shape predicates look at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// Every length between the shortest and longest path, zeros included.
    Contiguous,
    /// Positive counts only, with gaps closed up.
    PositiveOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analytics {
    pub unimodal: bool,
    pub log_concave: bool,
    pub ultra_log_concave: bool,
    pub symmetric: bool,
    pub modes: Vec<usize>,
}

impl fmt::Display for Analytics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool, s: &str| if b { s.to_string() } else { format!("not {s}") };
        let modes: Vec<String> = self.modes.iter().map(|m| m.to_string()).collect();
        write!(
            f,
            "{}; {}; {}; {}; modes {}",
            yn(self.unimodal, "unimodal"),
            yn(self.log_concave, "log-concave"),
            yn(self.ultra_log_concave, "ultra-log-concave"),
            yn(self.symmetric, "symmetric"),
            modes.join(" ")
        )
    }
}

/// Non-decreasing up to some index, non-increasing after it.
pub fn is_unimodal(a: &[BigUint]) -> bool {
    let mut i = 0;
    while i + 1 < a.len() && a[i] <= a[i + 1] {
        i += 1;
    }
    while i + 1 < a.len() && a[i] >= a[i + 1] {
        i += 1;
    }
    i + 1 >= a.len()
}

fn internal_zero(a: &[BigUint]) -> bool {
    let first = a.iter().position(|x| !x.is_zero());
    let last = a.iter().rposition(|x| !x.is_zero());
    match (first, last) {
        (Some(f), Some(l)) => a[f..=l].iter().any(Zero::is_zero),
        _ => false,
    }
}

/// `a[i-1] a[i+1] <= a[i]^2` at every interior index, with no zero strictly
/// between two positive entries.
pub fn is_log_concave(a: &[BigUint]) -> bool {
    !internal_zero(a) && a.windows(3).all(|w| &w[0] * &w[2] <= &w[1] * &w[1])
}

/// With `a = (a_1, ..., a_r)`:
/// `(i+1)(r-i+1) a_{i-1} a_{i+1} <= i(r-i) a_i^2` for `2 <= i <= r-1`,
/// and no internal zeros.
pub fn is_ultra_log_concave(a: &[BigUint]) -> bool {
    if internal_zero(a) {
        return false;
    }
    let r = a.len();
    (2..r).all(|i| {
        let (prev, cur, next) = (&a[i - 2], &a[i - 1], &a[i]);
        let lhs = BigUint::from((i + 1) * (r - i + 1)) * prev * next;
        let rhs = BigUint::from(i * (r - i)) * cur * cur;
        lhs <= rhs
    })
}

pub fn is_symmetric(a: &[BigUint]) -> bool {
    a.iter().eq(a.iter().rev())
}

/// Positions (0-based) of the maximum.
pub fn modes(a: &[BigUint]) -> Vec<usize> {
    let Some(max) = a.iter().max() else { return Vec::new() };
    a.iter().enumerate().filter(|(_, x)| *x == max).map(|(i, _)| i).collect()
}

/// Convenience conversion for literal sequences.
pub fn seq(values: &[u64]) -> Vec<BigUint> {
    values.iter().map(|&v| BigUint::from(v)).collect()
}
