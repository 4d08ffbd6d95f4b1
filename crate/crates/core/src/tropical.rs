//! The tropical semiring `Z_max = (Z ∪ {-∞}, max, +)` and its matrices.
//!
//! Tropical addition is `max` and tropical multiplication is ordinary `+`.
//! `-∞` is written [`TropicalValue::Bottom`]; it is neutral for `max` and
//! absorbing for `+`. The neutral element of tropical multiplication is `0`.
//!
//! Matrices are dense and row-major. The text format writes one row per line
//! (a `;` also ends a row), entries separated by whitespace, with `-inf` or
//! `-i` for `-∞`. The structured format is a JSON list of rows whose entries
//! are integers or the string `"-inf"`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::Int;

/// An element of `Z_max`.
///
/// The derived order puts `Bottom` below every finite value, which is exactly
/// the order whose maximum is tropical addition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TropicalValue {
    Bottom,
    Finite(Int),
}

impl TropicalValue {
    /// The tropical multiplicative unit, `0`.
    pub const ONE: TropicalValue = TropicalValue::Finite(Int::ZERO);

    pub fn finite(v: i64) -> Self {
        TropicalValue::Finite(Int::from(v))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, TropicalValue::Bottom)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_bottom()
    }

    pub fn as_finite(&self) -> Option<&Int> {
        match self {
            TropicalValue::Finite(v) => Some(v),
            TropicalValue::Bottom => None,
        }
    }

    /// Tropical addition (`max`).
    pub fn oplus(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical multiplication (`+`, with `-∞` absorbing).
    pub fn otimes(&self, other: &Self) -> Self {
        match (self, other) {
            (TropicalValue::Finite(a), TropicalValue::Finite(b)) => TropicalValue::Finite(a + b),
            _ => TropicalValue::Bottom,
        }
    }

    /// Adds `k` to a finite value; `-∞` stays `-∞`.
    pub fn offset(&self, k: &Int) -> Self {
        match self {
            TropicalValue::Finite(a) => TropicalValue::Finite(a + k),
            TropicalValue::Bottom => TropicalValue::Bottom,
        }
    }

    /// The `k`-th tropical power, i.e. `k` times the value. The zeroth power
    /// is the unit `0`, even for `-∞`.
    pub fn pow(&self, k: u64) -> Self {
        if k == 0 {
            return TropicalValue::ONE;
        }
        match self {
            TropicalValue::Finite(a) => TropicalValue::Finite(a.mul_i64(k as i64)),
            TropicalValue::Bottom => TropicalValue::Bottom,
        }
    }

    /// Strictly below zero; `-∞` counts as negative.
    pub fn is_negative(&self) -> bool {
        match self {
            TropicalValue::Finite(a) => a.is_negative(),
            TropicalValue::Bottom => true,
        }
    }
}

impl From<i64> for TropicalValue {
    fn from(v: i64) -> Self {
        TropicalValue::finite(v)
    }
}

impl From<Option<i64>> for TropicalValue {
    fn from(v: Option<i64>) -> Self {
        v.map_or(TropicalValue::Bottom, TropicalValue::finite)
    }
}

impl fmt::Display for TropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalValue::Finite(v) => write!(f, "{v}"),
            TropicalValue::Bottom => f.write_str("-inf"),
        }
    }
}

impl fmt::Debug for TropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TropicalValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "-inf" | "-i" | "-∞" | "⊥" => Ok(TropicalValue::Bottom),
            _ => s
                .parse::<Int>()
                .map(TropicalValue::Finite)
                .map_err(|e| Error::Parse(e.to_string())),
        }
    }
}

impl Serialize for TropicalValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            TropicalValue::Bottom => serializer.serialize_str("-inf"),
            TropicalValue::Finite(v) => match v.to_i64() {
                Some(x) => serializer.serialize_i64(x),
                None => serializer.serialize_str(&v.to_string()),
            },
        }
    }
}

impl<'de> Deserialize<'de> for TropicalValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ValueVisitor;

        impl Visitor<'_> for ValueVisitor {
            type Value = TropicalValue;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or the string \"-inf\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<TropicalValue, E> {
                Ok(TropicalValue::finite(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<TropicalValue, E> {
                Ok(TropicalValue::Finite(Int::from(v)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<TropicalValue, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(ValueVisitor)
    }
}

/// A dense `rows × cols` matrix over `Z_max`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TropicalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<TropicalValue>,
}

impl TropicalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<TropicalValue>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::BadShape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(TropicalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<TropicalValue>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::Parse(format!(
                "ragged matrix: row of length {} after rows of length {c}",
                bad.len()
            )));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for literal matrices; `None` is `-∞`.
    pub fn from_options(rows: &[&[Option<i64>]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| TropicalValue::from(v)).collect())
                .collect(),
        )
    }

    /// Convenience constructor for finite literal matrices.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| TropicalValue::finite(v)).collect())
                .collect(),
        )
    }

    /// `I_d`: `0` on the diagonal, `-∞` elsewhere.
    pub fn identity(d: usize) -> Self {
        let mut m = Self::filled(d, d, TropicalValue::Bottom);
        for i in 0..d {
            m.entries[i * d + i] = TropicalValue::ONE;
        }
        m
    }

    pub fn filled(rows: usize, cols: usize, value: TropicalValue) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        TropicalMatrix {
            rows,
            cols,
            entries: vec![value; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// The dimension of a square matrix.
    pub fn dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &TropicalValue {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TropicalValue) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[TropicalValue] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[TropicalValue] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<TropicalValue>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// True when no entry is `-∞`.
    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(TropicalValue::is_finite)
    }

    /// The tropical product: `(AB)_{ij} = max_k (A_{ik} + B_{kj})`.
    pub fn tmul(&self, other: &TropicalMatrix) -> Result<TropicalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = vec![TropicalValue::Bottom; self.rows * other.cols];
        for i in 0..self.rows {
            let dst = &mut out[i * other.cols..(i + 1) * other.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                let TropicalValue::Finite(a) = a else { continue };
                for (d, b) in dst.iter_mut().zip(other.row(k)) {
                    if let TropicalValue::Finite(b) = b {
                        let s = a + b;
                        match d {
                            TropicalValue::Finite(cur) if *cur >= s => {}
                            _ => *d = TropicalValue::Finite(s),
                        }
                    }
                }
            }
        }
        Ok(TropicalMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: out,
        })
    }

    /// `M^k` by binary exponentiation; `M^0` is the identity.
    pub fn power(&self, mut k: u64) -> Result<TropicalMatrix> {
        let d = self.dim()?;
        let mut result = TropicalMatrix::identity(d);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.tmul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.tmul(&base)?;
            }
        }
        Ok(result)
    }

    /// `‖M‖_∞`: the largest entry (not a norm in the usual sense).
    pub fn norm_inf(&self) -> TropicalValue {
        self.entries
            .iter()
            .max()
            .cloned()
            .unwrap_or(TropicalValue::Bottom)
    }

    /// `k ⊙ M`: adds `k` to every finite entry.
    pub fn offset(&self, k: &Int) -> TropicalMatrix {
        self.map(|v| v.offset(k))
    }

    pub fn map(&self, f: impl Fn(&TropicalValue) -> TropicalValue) -> TropicalMatrix {
        TropicalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> TropicalMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        TropicalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// The largest absolute value among finite entries, `None` if there are none.
    pub fn max_abs_entry(&self) -> Option<Int> {
        self.entries
            .iter()
            .filter_map(TropicalValue::as_finite)
            .map(Int::abs)
            .max()
    }

    /// Row vector times matrix: `(vM)_j = max_i (v_i + M_{ij})`.
    pub fn left_apply(&self, v: &[TropicalValue]) -> Vec<TropicalValue> {
        assert_eq!(v.len(), self.rows, "vector length must match matrix rows");
        let mut out = vec![TropicalValue::Bottom; self.cols];
        for (i, x) in v.iter().enumerate() {
            let TropicalValue::Finite(x) = x else { continue };
            for (d, m) in out.iter_mut().zip(self.row(i)) {
                if let TropicalValue::Finite(m) = m {
                    let s = x + m;
                    match d {
                        TropicalValue::Finite(cur) if *cur >= s => {}
                        _ => *d = TropicalValue::Finite(s),
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for TropicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TropicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl FromStr for TropicalMatrix {
    type Err = Error;

    /// Parses the text format.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(['\n', ';'])
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'))
            .map(|line| {
                line.split_whitespace()
                    .map(str::parse)
                    .collect::<Result<Vec<TropicalValue>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        Self::from_rows(rows)
    }
}

impl Serialize for TropicalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for TropicalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<TropicalValue>>::deserialize(deserializer)?;
        TropicalMatrix::from_rows(rows).map_err(de::Error::custom)
    }
}

/// An exact rational number or `-∞`; the type of cycle means and joint
/// spectral radii.
///
/// Like [`TropicalValue`], `Bottom` sorts below every finite value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rational {
    Bottom,
    Finite(BigRational),
}

impl Rational {
    pub fn zero() -> Self {
        Rational::Finite(BigRational::zero())
    }

    pub fn from_int(v: &Int) -> Self {
        Rational::Finite(BigRational::from_integer(v.to_big()))
    }

    /// `num / den` in lowest terms. Panics if `den` is zero.
    pub fn new(num: &Int, den: &Int) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational::Finite(BigRational::new(num.to_big(), den.to_big()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Rational::new(&Int::from(num), &Int::from(den))
    }

    /// A tropical value divided by a positive length; `-∞` stays `-∞`.
    pub fn per_length(v: &TropicalValue, len: usize) -> Self {
        match v {
            TropicalValue::Finite(x) => Rational::new(x, &Int::from(len)),
            TropicalValue::Bottom => Rational::Bottom,
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Rational::Bottom)
    }

    /// Strictly below zero; `-∞` counts as negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Finite(r) => r.is_negative(),
            Rational::Bottom => true,
        }
    }

    pub fn numer(&self) -> Option<Int> {
        match self {
            Rational::Finite(r) => Some(Int::from(r.numer().clone())),
            Rational::Bottom => None,
        }
    }

    pub fn denom(&self) -> Option<Int> {
        match self {
            Rational::Finite(r) => Some(Int::from(r.denom().clone())),
            Rational::Bottom => None,
        }
    }

    /// Adds an integer; `-∞` stays `-∞`.
    pub fn offset(&self, k: &Int) -> Self {
        match self {
            Rational::Finite(r) => Rational::Finite(r + BigRational::from_integer(k.to_big())),
            Rational::Bottom => Rational::Bottom,
        }
    }

    /// Divides by a positive integer; `-∞` stays `-∞`.
    pub fn div_len(&self, len: usize) -> Self {
        match self {
            Rational::Finite(r) => Rational::Finite(r / BigRational::from_integer(BigInt::from(len))),
            Rational::Bottom => Rational::Bottom,
        }
    }

    /// `self - other` for finite values, `None` if either is `-∞`.
    pub fn finite_difference(&self, other: &Self) -> Option<BigRational> {
        match (self, other) {
            (Rational::Finite(a), Rational::Finite(b)) => Some(a - b),
            _ => None,
        }
    }

    pub fn cmp_int(&self, k: &Int) -> Ordering {
        self.cmp(&Rational::from_int(k))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(&Int::from(v))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Bottom => f.write_str("-inf"),
            Rational::Finite(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Rational::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "-inf" | "-i" | "-∞" | "⊥") {
            return Ok(Rational::Bottom);
        }
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: Int = num.parse().map_err(|_| bad())?;
        let den: Int = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(&num, &den))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
