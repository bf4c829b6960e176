//! Exponent vectors over `N ∪ {∞}`.
//!
//! An [`ExpVec`] is simultaneously a monomial (when every entry is finite)
//! and a face of a multicomplex. The derived ordering on [`Exp`] puts every
//! finite value below [`Exp::Inf`], so the derived ordering on [`ExpVec`] is
//! the canonical lexicographic order used for all enumeration downstream.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// A single coordinate: a natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exp {
    Fin(u32),
    Inf,
}

pub use Exp::{Fin, Inf};

impl Exp {
    pub fn is_finite(self) -> bool {
        matches!(self, Fin(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Fin(v) => Some(v),
            Inf => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Fin(0)
    }

    fn add(self, other: Exp) -> Exp {
        match (self, other) {
            (Fin(a), Fin(b)) => Fin(a + b),
            _ => Inf,
        }
    }
}

impl From<u32> for Exp {
    fn from(v: u32) -> Self {
        Fin(v)
    }
}

impl fmt::Display for Exp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(v) => write!(f, "{v}"),
            Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for Exp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Fin(v) => s.serialize_u32(*v),
            Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct ExpVisitor;

        impl Visitor<'_> for ExpVisitor {
            type Value = Exp;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Exp, E> {
                u32::try_from(v).map(Fin).map_err(|_| E::custom("exponent out of range"))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Exp, E> {
                u32::try_from(v).map(Fin).map_err(|_| E::custom("exponent must be non-negative"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Exp, E> {
                match v {
                    "inf" | "INF" | "∞" => Ok(Inf),
                    _ => Err(E::custom(format!("unknown exponent {v:?}"))),
                }
            }
        }

        d.deserialize_any(ExpVisitor)
    }
}

/// A point of `N^n_∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ExpVec(Vec<Exp>);

impl<'de> Deserialize<'de> for ExpVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<Exp>::deserialize(d)?;
        ExpVec::new(entries).map_err(de::Error::custom)
    }
}

impl ExpVec {
    pub fn new(entries: Vec<Exp>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(ExpVec(entries))
    }

    /// Builds a finite vector. Panics if `entries` is empty.
    pub fn finite(entries: &[u32]) -> Self {
        assert!(!entries.is_empty(), "exponent vectors need n >= 1");
        ExpVec(entries.iter().copied().map(Fin).collect())
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "exponent vectors need n >= 1");
        ExpVec(vec![Fin(0); n])
    }

    pub fn infinite(n: usize) -> Self {
        assert!(n >= 1, "exponent vectors need n >= 1");
        ExpVec(vec![Inf; n])
    }

    /// The unit vector `e_i` (0-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Fin(1);
        v
    }

    /// The `{0,∞}` vector with `∞` exactly on `positions`.
    pub fn indicator(n: usize, positions: &[usize]) -> Self {
        let mut v = Self::zeros(n);
        for &i in positions {
            v.0[i] = Inf;
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Exp] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Exp {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: Exp) {
        self.0[i] = value;
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|e| e.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    /// True when every entry is `0` or `∞`.
    pub fn is_zero_inf(&self) -> bool {
        self.0.iter().all(|&e| e == Fin(0) || e == Inf)
    }

    /// Finite entries as `u32`, or `None` if some entry is infinite.
    pub fn to_finite(&self) -> Option<Vec<u32>> {
        self.0.iter().map(|e| e.finite()).collect()
    }

    pub fn require_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::InfiniteEntry(self.to_string()))
        }
    }

    fn check_dim(&self, other: &ExpVec) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() })
        }
    }

    /// Componentwise `self ⪯ other`.
    pub fn leq(&self, other: &ExpVec) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.below(other))
    }

    /// Unchecked [`ExpVec::leq`]; dimensions must agree.
    #[inline]
    pub fn below(&self, other: &ExpVec) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Positions with a finite entry.
    pub fn fpt(&self) -> Vec<usize> {
        self.positions(|e| e.is_finite())
    }

    /// Positions with an infinite entry.
    pub fn infpt(&self) -> Vec<usize> {
        self.positions(|e| !e.is_finite())
    }

    /// Positions `i` with `0 < a(i) < ∞`.
    pub fn fpt_star(&self) -> Vec<usize> {
        self.positions(|e| matches!(e, Fin(v) if v > 0))
    }

    /// Positions with a nonzero entry (finite or infinite).
    pub fn support(&self) -> Vec<usize> {
        self.positions(|e| !e.is_zero())
    }

    fn positions(&self, pred: impl Fn(Exp) -> bool) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, e)| pred(**e)).map(|(i, _)| i).collect()
    }

    /// Sum of the finite entries.
    pub fn degree(&self) -> u64 {
        self.0.iter().filter_map(|e| e.finite()).map(u64::from).sum()
    }

    /// `(fpt, infpt, fpt*)` in one call.
    pub fn support_partition(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        (self.fpt(), self.infpt(), self.fpt_star())
    }

    /// Componentwise maximum `a ∨ b`.
    pub fn join(&self, other: &ExpVec) -> Result<ExpVec> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a.max(b)))
    }

    /// Componentwise minimum `a ∧ b`.
    pub fn meet(&self, other: &ExpVec) -> Result<ExpVec> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a.min(b)))
    }

    /// Componentwise sum; `∞` absorbs.
    pub fn add(&self, other: &ExpVec) -> Result<ExpVec> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, Exp::add))
    }

    /// `self − sub`, defined when `sub` is finite and `sub ⪯ self`.
    pub fn sub(&self, sub: &ExpVec) -> Result<ExpVec> {
        self.check_dim(sub)?;
        if !sub.is_finite() || !sub.below(self) {
            return Err(Error::NotBelow { sub: sub.to_string(), from: self.to_string() });
        }
        Ok(self.zip_with(sub, |a, b| match (a, b) {
            (Fin(x), Fin(y)) => Fin(x - y),
            _ => Inf,
        }))
    }

    /// `max(self − other, 0)` per coordinate, the exponent of `lcm(x^self, x^other) / x^other`.
    /// An infinite `other` coordinate saturates to 0; an infinite `self` coordinate stays infinite.
    pub fn monus(&self, other: &ExpVec) -> ExpVec {
        debug_assert_eq!(self.dim(), other.dim());
        self.zip_with(other, |a, b| match (a, b) {
            (_, Inf) => Fin(0),
            (Inf, Fin(_)) => Inf,
            (Fin(x), Fin(y)) => Fin(x.saturating_sub(y)),
        })
    }

    fn zip_with(&self, other: &ExpVec, f: impl Fn(Exp, Exp) -> Exp) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// Renders a finite vector as a monomial such as `x1^2*x3`; the zero vector is `1`.
pub fn monomial_string(v: &ExpVec) -> String {
    let parts: Vec<String> = v
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| match e {
            Fin(1) => format!("x{}", i + 1),
            _ => format!("x{}^{}", i + 1, e),
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Every finite vector `v` with `v(i) <= caps[i]`, in canonical order.
pub fn grid(caps: &[u32]) -> impl Iterator<Item = ExpVec> + '_ {
    let total: u64 = caps.iter().map(|&c| u64::from(c) + 1).product();
    (0..total).map(move |mut idx| {
        let mut entries = vec![Fin(0); caps.len()];
        for i in (0..caps.len()).rev() {
            let base = u64::from(caps[i]) + 1;
            entries[i] = Fin((idx % base) as u32);
            idx /= base;
        }
        ExpVec(entries)
    })
}
