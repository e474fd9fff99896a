//! Exact arithmetic in Z[sqrt 2] and sparse polynomials in t1..tn over it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("monomial {0} has length {1}, expected rank {2}")]
    MonomialLength(String, usize, usize),
    #[error("not a perfect square: {coeff} * {monomial}")]
    NotPerfectSquare { monomial: String, coeff: String },
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// An element `a + b*sqrt(2)` of Z[sqrt 2].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Sqrt2Coeff {
    pub a: BigInt,
    pub b: BigInt,
}

impl Sqrt2Coeff {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Sqrt2Coeff {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn int(a: impl Into<BigInt>) -> Self {
        Sqrt2Coeff {
            a: a.into(),
            b: BigInt::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn sqrt2() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }

    /// Exact division by a rational integer; `None` if it does not divide both parts.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (qa, ra) = (&self.a / d, &self.a % d);
        let (qb, rb) = (&self.b / d, &self.b % d);
        if ra.is_zero() && rb.is_zero() {
            Some(Sqrt2Coeff { a: qa, b: qb })
        } else {
            None
        }
    }

    fn is_negative_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_negative()
    }
}

pub fn coeff_mul(x: &Sqrt2Coeff, y: &Sqrt2Coeff) -> Sqrt2Coeff {
    Sqrt2Coeff {
        a: &x.a * &y.a + BigInt::from(2) * &x.b * &y.b,
        b: &x.a * &y.b + &y.a * &x.b,
    }
}

impl Add for &Sqrt2Coeff {
    type Output = Sqrt2Coeff;
    fn add(self, rhs: &Sqrt2Coeff) -> Sqrt2Coeff {
        Sqrt2Coeff {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &Sqrt2Coeff {
    type Output = Sqrt2Coeff;
    fn sub(self, rhs: &Sqrt2Coeff) -> Sqrt2Coeff {
        Sqrt2Coeff {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &Sqrt2Coeff {
    type Output = Sqrt2Coeff;
    fn mul(self, rhs: &Sqrt2Coeff) -> Sqrt2Coeff {
        coeff_mul(self, rhs)
    }
}

impl Neg for Sqrt2Coeff {
    type Output = Sqrt2Coeff;
    fn neg(self) -> Sqrt2Coeff {
        Sqrt2Coeff { a: -self.a, b: -self.b }
    }
}

impl AddAssign<&Sqrt2Coeff> for Sqrt2Coeff {
    fn add_assign(&mut self, rhs: &Sqrt2Coeff) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl fmt::Display for Sqrt2Coeff {
    /// `a`, `b*sqrt2` or `a + b*sqrt2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write_sqrt2_part(f, &self.b),
            (false, false) => {
                write!(f, "{}", self.a)?;
                if self.b.is_negative() {
                    f.write_str(" - ")?;
                    write_sqrt2_part(f, &-&self.b)
                } else {
                    f.write_str(" + ")?;
                    write_sqrt2_part(f, &self.b)
                }
            }
        }
    }
}

fn write_sqrt2_part(f: &mut fmt::Formatter<'_>, b: &BigInt) -> fmt::Result {
    if b.is_one() {
        f.write_str("sqrt2")
    } else if *b == -BigInt::one() {
        f.write_str("-sqrt2")
    } else {
        write!(f, "{}*sqrt2", b)
    }
}

/// Exponent vector of a monomial in t1..tn.
///
/// Ordered by total degree first; within a degree, exponent vectors compare
/// lexicographically with larger vectors first, so `t1` precedes `t2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(rank: usize) -> Self {
        Monomial(vec![0; rank])
    }

    /// The single variable `t_index` (1-based).
    pub fn var(rank: usize, index: usize) -> Self {
        let mut e = vec![0; rank];
        e[index - 1] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.rank(), other.rank());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Multiplies in `t_index^power` (1-based index).
    pub fn mul_var(&mut self, index: usize, power: u32) {
        self.0[index - 1] += power;
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "t{}", i + 1)?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// Square root of a perfect-square term `c * m`.
///
/// Bundled path families always carry coefficient 1 and even exponents; any
/// other input is reported as an error.
pub fn monomial_sqrt(m: &Monomial, c: &Sqrt2Coeff) -> Result<(Monomial, Sqrt2Coeff), CoeffError> {
    if !c.is_one() || m.0.iter().any(|e| e % 2 != 0) {
        return Err(CoeffError::NotPerfectSquare {
            monomial: m.to_string(),
            coeff: c.to_string(),
        });
    }
    Ok((Monomial(m.0.iter().map(|e| e / 2).collect()), Sqrt2Coeff::one()))
}

/// Sparse polynomial in t1..t_rank with Z[sqrt 2] coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    rank: usize,
    terms: BTreeMap<Monomial, Sqrt2Coeff>,
}

impl Polynomial {
    pub fn zero(rank: usize) -> Self {
        Polynomial {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Sqrt2Coeff::one())
    }

    pub fn constant(rank: usize, c: Sqrt2Coeff) -> Self {
        Self::term(Monomial::one(rank), c)
    }

    /// The variable `t_index` (1-based).
    pub fn var(rank: usize, index: usize) -> Self {
        Self::term(Monomial::var(rank, index), Sqrt2Coeff::one())
    }

    pub fn term(m: Monomial, c: Sqrt2Coeff) -> Self {
        let mut p = Polynomial::zero(m.rank());
        p.add_term(m, c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self, CoeffError>
    where
        I: IntoIterator<Item = (Vec<u32>, Sqrt2Coeff)>,
    {
        let mut p = Polynomial::zero(rank);
        for (exp, c) in terms {
            if exp.len() != rank {
                return Err(CoeffError::MonomialLength(format!("{:?}", exp), exp.len(), rank));
            }
            p.add_term(Monomial(exp), c);
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Sqrt2Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Sqrt2Coeff {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Sqrt2Coeff) {
        assert_eq!(m.rank(), self.rank, "monomial rank mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, CoeffError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, CoeffError> {
        self.check_rank(other)?;
        let mut out = Polynomial::zero(self.rank);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Sqrt2Coeff) -> Polynomial {
        let mut out = Polynomial::zero(self.rank);
        for (m, c1) in &self.terms {
            out.add_term(m.clone(), c1 * c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&Sqrt2Coeff::int(-1))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.rank);
        for _ in 0..e {
            out = out.checked_mul(self).expect("same rank");
        }
        out
    }

    fn check_rank(&self, other: &Polynomial) -> Result<(), CoeffError> {
        if self.rank != other.rank {
            Err(CoeffError::RankMismatch(self.rank, other.rank))
        } else {
            Ok(())
        }
    }

    /// True when every stored coefficient is a positive rational integer.
    pub fn has_positive_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.b.is_zero() && c.a.is_positive())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolynomialJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Polynomial, CoeffError> {
        let j: PolynomialJson = serde_json::from_str(s).map_err(|e| CoeffError::Json(e.to_string()))?;
        Polynomial::try_from(j)
    }
}

pub fn poly_add(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, CoeffError> {
    p.checked_add(q)
}

pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, CoeffError> {
    p.checked_mul(q)
}

pub fn is_integer_poly(p: &Polynomial) -> bool {
    p.terms.values().all(Sqrt2Coeff::is_integer)
}

/// Constant term, i.e. the value at t = 0.
pub fn eval_all_zero(p: &Polynomial) -> Sqrt2Coeff {
    p.coeff(&Monomial::one(p.rank))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative_integer();
            let shown = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", shown)?;
            } else if shown.is_one() {
                write!(f, "{}", m)?;
            } else if shown.a.is_zero() || shown.b.is_zero() {
                write!(f, "{}*{}", shown, m)?;
            } else {
                write!(f, "({})*{}", shown, m)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub a: serde_json::Number,
    pub b: serde_json::Number,
    pub exp: Vec<u32>,
}

/// Wire form: `{"rank": n, "terms": [{"a": .., "b": .., "exp": [..]}, ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub rank: usize,
    pub terms: Vec<TermJson>,
}

fn big_to_number(x: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&x.to_string()).expect("integer literal")
}

fn number_to_big(n: &serde_json::Number) -> Result<BigInt, CoeffError> {
    BigInt::from_str(&n.to_string()).map_err(|_| CoeffError::Json(format!("not an integer: {}", n)))
}

impl From<&Polynomial> for PolynomialJson {
    fn from(p: &Polynomial) -> Self {
        PolynomialJson {
            rank: p.rank,
            terms: p
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    a: big_to_number(&c.a),
                    b: big_to_number(&c.b),
                    exp: m.0.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolynomialJson> for Polynomial {
    type Error = CoeffError;

    fn try_from(j: PolynomialJson) -> Result<Self, CoeffError> {
        let terms = j
            .terms
            .iter()
            .map(|t| {
                Ok((
                    t.exp.clone(),
                    Sqrt2Coeff {
                        a: number_to_big(&t.a)?,
                        b: number_to_big(&t.b)?,
                    },
                ))
            })
            .collect::<Result<Vec<_>, CoeffError>>()?;
        Polynomial::from_terms(j.rank, terms)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolynomialJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolynomialJson::deserialize(d)?;
        Polynomial::try_from(j).map_err(serde::de::Error::custom)
    }
}
