//! Exact polynomials in `q` with big-integer coefficients, q-integers,
//! q-factorials and the q-Stirling numbers of the second kind.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A polynomial `c_0 + c_1 q + c_2 q^2 + ...` with integer coefficients.
///
/// Stored densely by exponent with trailing zeros trimmed, so equality is
/// coefficient-wise and the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c.into();
        Self::from_dense(coeffs)
    }

    /// `q^e`.
    pub fn q_pow(e: usize) -> Self {
        Self::monomial(1, e)
    }

    /// From coefficients listed by increasing exponent.
    pub fn from_dense(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    /// From counts listed by increasing exponent.
    pub fn from_counts(counts: &[u64]) -> Self {
        Self::from_dense(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigInt>,
    {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in terms {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += c.into();
        }
        Self::from_dense(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent with a non-zero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a non-zero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    /// Dense coefficients, index = exponent.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Non-zero `(exponent, coefficient)` pairs by increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    /// Sparse view keyed by exponent.
    pub fn to_sparse(&self) -> BTreeMap<usize, BigInt> {
        self.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiplies by `q^e`.
    pub fn shift_up(&self, e: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        QPolynomial { coeffs }
    }

    /// Divides by `q^e`, failing if some exponent would become negative.
    pub fn shift_down(&self, e: usize) -> Result<Self> {
        match self.min_degree() {
            None => Ok(Self::zero()),
            Some(low) if low >= e => Ok(QPolynomial {
                coeffs: self.coeffs[e..].to_vec(),
            }),
            Some(low) => Err(Error::Internal(format!(
                "cannot divide by q^{e}: term of degree {low}"
            ))),
        }
    }

    /// First exponent where the two polynomials differ, with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, BigInt, BigInt)> {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).find_map(|e| {
            let a = self.coeff(e);
            let b = other.coeff(e);
            (a != b).then_some((e, a, b))
        })
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;

    fn add(mut self, rhs: QPolynomial) -> QPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::from_dense((0..len).map(|e| self.coeff(e) - rhs.coeff(e)).collect())
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::from_dense(coeffs)
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for QPolynomial {
    /// Ascending exponents, `3*q + 3*q^2 + q^3`; unit coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let unit = magnitude.is_one();
            match e {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !unit {
                        write!(f, "{magnitude}*")?;
                    }
                    if e == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for QPolynomial {
    type Err = Error;

    /// Parses the output of `Display`; whitespace is insignificant.
    fn from_str(s: &str) -> Result<Self> {
        let compact: Vec<(usize, char)> = s
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        let err = |position: usize, message: &str| Error::Parse {
            position,
            message: message.to_string(),
        };
        if compact.is_empty() {
            return Err(err(1, "empty polynomial"));
        }
        let mut terms: Vec<(usize, BigInt)> = Vec::new();
        let mut pos = 0;
        let mut first = true;
        while pos < compact.len() {
            let mut sign = BigInt::one();
            match compact[pos].1 {
                '+' if !first => pos += 1,
                '-' => {
                    sign = -sign;
                    pos += 1;
                }
                _ if first => {}
                _ => return Err(err(compact[pos].0, "expected `+` or `-`")),
            }
            first = false;
            let start = pos;
            while pos < compact.len() && compact[pos].1.is_ascii_digit() {
                pos += 1;
            }
            let digits: String = compact[start..pos].iter().map(|&(_, c)| c).collect();
            let at = |p: usize| compact.get(p).map_or(s.chars().count() + 1, |&(i, _)| i);
            let coeff = if digits.is_empty() {
                None
            } else {
                Some(digits.parse::<BigInt>().map_err(|_| err(at(start), "bad coefficient"))?)
            };
            let has_star = pos < compact.len() && compact[pos].1 == '*';
            if has_star {
                if coeff.is_none() {
                    return Err(err(at(pos), "`*` without a coefficient"));
                }
                pos += 1;
            }
            let exponent = if pos < compact.len() && compact[pos].1 == 'q' {
                if coeff.is_some() && !has_star {
                    return Err(err(at(pos), "expected `*` between coefficient and `q`"));
                }
                pos += 1;
                if pos < compact.len() && compact[pos].1 == '^' {
                    pos += 1;
                    let estart = pos;
                    while pos < compact.len() && compact[pos].1.is_ascii_digit() {
                        pos += 1;
                    }
                    let edigits: String =
                        compact[estart..pos].iter().map(|&(_, c)| c).collect();
                    edigits
                        .parse::<usize>()
                        .map_err(|_| err(at(estart), "expected an exponent after `^`"))?
                } else {
                    1
                }
            } else {
                if has_star {
                    return Err(err(at(pos), "expected `q` after `*`"));
                }
                if coeff.is_none() {
                    return Err(err(at(pos), "expected a coefficient or `q`"));
                }
                0
            };
            terms.push((exponent, sign * coeff.unwrap_or_else(BigInt::one)));
        }
        Ok(QPolynomial::from_terms(terms))
    }
}

impl Serialize for QPolynomial {
    /// `{"coeffs": {"1": 3, "2": 3, "3": 1}}`; coefficients beyond `i64`
    /// are written as decimal strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a QPolynomial);

        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(None)?;
                for (e, c) in self.0.terms() {
                    match c.to_i64() {
                        Some(v) => map.serialize_entry(&e.to_string(), &v)?,
                        None => map.serialize_entry(&e.to_string(), &c.to_string())?,
                    }
                }
                map.end()
            }
        }

        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry("coeffs", &Coeffs(self))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(i64),
            Text(String),
        }

        #[derive(Deserialize)]
        struct Raw {
            coeffs: BTreeMap<String, Coeff>,
        }

        let raw = Raw::deserialize(deserializer)?;
        let mut terms = Vec::new();
        for (e, c) in raw.coeffs {
            let e: usize = e.parse().map_err(de::Error::custom)?;
            let c = match c {
                Coeff::Int(v) => BigInt::from(v),
                Coeff::Text(t) => t.parse::<BigInt>().map_err(de::Error::custom)?,
            };
            terms.push((e, c));
        }
        Ok(QPolynomial::from_terms(terms))
    }
}

/// `[k]_q = 1 + q + ... + q^(k-1)`, with `[0]_q = 0`.
pub fn q_int(k: usize) -> QPolynomial {
    QPolynomial::from_dense(vec![BigInt::one(); k])
}

/// `[k]_q! = [1]_q [2]_q ... [k]_q`, with `[0]_q! = 1`.
pub fn q_factorial(k: usize) -> QPolynomial {
    (1..=k).fold(QPolynomial::one(), |acc, i| &acc * &q_int(i))
}

fn binomial2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Rows `0..=n` of the q-Stirling triangle; row `m` has entries `k = 0..=m`.
fn stirling_rows(n: usize) -> Vec<Vec<QPolynomial>> {
    let mut rows: Vec<Vec<QPolynomial>> = vec![vec![QPolynomial::one()]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let row = (0..=m)
            .map(|k| next_entry(prev, m, k))
            .collect();
        rows.push(row);
    }
    rows
}

/// `S_q(m, k) = q^(k-1) S_q(m-1, k-1) + [k]_q S_q(m-1, k)` for `m >= 1`.
fn next_entry(prev: &[QPolynomial], m: usize, k: usize) -> QPolynomial {
    if k == 0 {
        return QPolynomial::zero();
    }
    let left = prev[k - 1].shift_up(k - 1);
    let right = if k < m {
        &q_int(k) * &prev[k]
    } else {
        QPolynomial::zero()
    };
    left + right
}

/// `S_q(n, k)`, zero when `k > n`.
pub fn q_stirling(n: usize, k: usize) -> QPolynomial {
    if k > n {
        return QPolynomial::zero();
    }
    stirling_rows(n).swap_remove(n).swap_remove(k)
}

/// `S_q(n, k)` with every exponent lowered by `C(k, 2)`.
pub fn shifted_stirling(n: usize, k: usize) -> Result<QPolynomial> {
    if k > n {
        return Err(Error::Domain(format!(
            "shifted q-Stirling number needs n >= k, got n={n} k={k}"
        )));
    }
    q_stirling(n, k).shift_down(binomial2(k))
}

/// Memoised q-Stirling triangle for `n <= n_max`.
///
/// Rows are filled lazily under a write lock; lookups of rows already present
/// only take the read lock.
#[derive(Debug)]
pub struct QStirlingTable {
    n_max: usize,
    rows: RwLock<Vec<Vec<QPolynomial>>>,
}

impl QStirlingTable {
    pub fn new(n_max: usize) -> Self {
        QStirlingTable {
            n_max,
            rows: RwLock::new(vec![vec![QPolynomial::one()]]),
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn get(&self, n: usize, k: usize) -> Result<QPolynomial> {
        if n > self.n_max {
            return Err(Error::Domain(format!(
                "n = {n} exceeds the table bound {}",
                self.n_max
            )));
        }
        if k > n {
            return Ok(QPolynomial::zero());
        }
        {
            let rows = self.rows.read().expect("q-Stirling table lock poisoned");
            if let Some(row) = rows.get(n) {
                return Ok(row[k].clone());
            }
        }
        let mut rows = self.rows.write().expect("q-Stirling table lock poisoned");
        while rows.len() <= n {
            let m = rows.len();
            let row = (0..=m).map(|j| next_entry(&rows[m - 1], m, j)).collect();
            rows.push(row);
        }
        Ok(rows[n][k].clone())
    }
}

/// `sum over the family of q^stat`. A negative value aborts with the
/// offending member as witness; an empty family gives the zero polynomial.
pub fn generating_function<I, T, F>(family: I, statistic: F) -> Result<QPolynomial>
where
    I: IntoIterator<Item = T>,
    T: fmt::Display,
    F: Fn(&T) -> Result<i64>,
{
    let mut counts = Counts::default();
    for item in family {
        let value = statistic(&item)?;
        counts.record(value, || item.to_string())?;
    }
    Ok(counts.to_polynomial())
}

/// Exponent histogram used to accumulate generating functions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Counts(Vec<u64>);

impl Counts {
    pub fn record(&mut self, value: i64, witness: impl FnOnce() -> String) -> Result<()> {
        if value < 0 {
            return Err(Error::NegativeExponent {
                value,
                witness: witness(),
            });
        }
        let e = value as usize;
        if self.0.len() <= e {
            self.0.resize(e + 1, 0);
        }
        self.0[e] += 1;
        Ok(())
    }

    pub fn merge(&mut self, other: &Counts) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn to_polynomial(&self) -> QPolynomial {
        QPolynomial::from_counts(&self.0)
    }
}
