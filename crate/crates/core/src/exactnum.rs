//! Exact arithmetic over the rationals and their multi-quadratic extensions.
//!
//! A [`QNum`] is a finite sum `Σ c_m · √m` where every radicand `m` is a
//! square-free positive integer and every coefficient `c_m` is a nonzero
//! rational. Square roots of distinct square-free integers are linearly
//! independent over ℚ, so this representation is canonical: two values are
//! equal exactly when their term maps are equal.
//!
//! The generators of the field a value lives in are the primes dividing its
//! radicands; every radicand is a product of a subset of them. Merging two
//! values over different generator sets is implicit in the term map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// Highest interval precision (in bits) that an `f64` enclosure can honour.
pub const MAX_INTERVAL_BITS: u32 = 50;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("square root of negative rational {0}")]
    NegativeRadicand(String),
    #[error("radicand {0} does not fit the 64-bit radicand model")]
    RadicandTooLarge(String),
    #[error("cannot parse exact number {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

impl ExactError {
    pub fn code(&self) -> &'static str {
        match self {
            ExactError::NegativeRadicand(_) => "E_NEGATIVE_RADICAND",
            ExactError::RadicandTooLarge(_) => "E_RADICAND_TOO_LARGE",
            ExactError::Parse { .. } => "E_PARSE",
        }
    }
}

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, or `p/q` into a canonical rational.
pub fn parse_rat(s: &str) -> Result<Rat, ExactError> {
    let err = |reason: &str| ExactError::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// Splits `n` into `(s, m)` with `n = s² · m` and `m` square-free.
///
/// After trial division by every `p` with `p³ ≤ rest`, the remaining cofactor
/// has at most two prime factors, so it is either a perfect square or
/// square-free.
pub fn square_free_split(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut rest = n;
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p).saturating_mul(p) <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= p;
        }
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if r * r == rest {
        square *= r;
    } else {
        free *= rest;
    }
    (square, free)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `√a · √b` for square-free `a`, `b`: returns `(g, m)` with `√a·√b = g·√m`.
fn mul_radicands(a: u64, b: u64) -> (u64, u64) {
    let g = a.gcd(&b);
    let m = (a / g)
        .checked_mul(b / g)
        .expect("radicand overflow: product exceeds the 64-bit radicand model");
    (g, m)
}

/// Exact element of ℚ(√d₁, …, √d_k).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QNum {
    // radicand (square-free, 1 for the rational part) -> nonzero coefficient
    terms: BTreeMap<u64, Rat>,
}

impl QNum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut q = Self::zero();
        q.add_term(1, r);
        q
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// `√m` for any non-negative integer `m`, with square factors pulled out.
    pub fn sqrt_int(m: u64) -> Self {
        let (s, free) = square_free_split(m);
        let mut q = Self::zero();
        q.add_term(free, Rat::from_integer(BigInt::from(s)));
        q
    }

    /// The single term `c · √m`; `m` must be square-free.
    pub fn term(c: Rat, m: u64) -> Self {
        debug_assert_eq!(square_free_split(m).0, 1, "radicand {m} not square-free");
        let mut q = Self::zero();
        q.add_term(m, c);
        q
    }

    fn add_term(&mut self, m: u64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a rational, if it has no irrational terms.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rat().is_some()
    }

    /// `(radicand, coefficient)` pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rat)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// Sorted distinct prime generators `d` whose roots `√d` span this value.
    pub fn generators(&self) -> Vec<u64> {
        let mut gens: Vec<u64> = self
            .terms
            .keys()
            .filter(|&&m| m > 1)
            .flat_map(|&m| prime_factors(m))
            .collect();
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        QNum {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Floating-point approximation, for display and sampling only.
    pub fn approx(&self) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64().unwrap_or(f64::NAN) * (*m as f64).sqrt())
            .sum()
    }

    /// Rigorous `f64` enclosure of the value.
    ///
    /// `hi - lo <= 2^-bits * max(1, |value|)` for `bits <= MAX_INTERVAL_BITS`;
    /// larger requests are clamped to that limit.
    pub fn to_interval(&self, bits: u32) -> (f64, f64) {
        let bits = bits.clamp(1, MAX_INTERVAL_BITS);
        let coeff_mass: Rat = self
            .terms
            .iter()
            .filter(|(m, _)| **m > 1)
            .map(|(_, c)| c.abs())
            .fold(Rat::zero(), |a, b| a + b);
        // 2^-k * mass <= 2^-(bits+2)
        let mass_bits = coeff_mass.ceil().to_integer().bits();
        let k = bits as u64 + 3 + mass_bits;
        let scale = BigUint::one() << (2 * k);
        let denom = Rat::from_integer(BigInt::one() << k);

        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        for (m, c) in &self.terms {
            if *m == 1 {
                lo += c;
                hi += c;
                continue;
            }
            let root = (BigUint::from(*m) * &scale).sqrt();
            let r_lo = Rat::from_integer(BigInt::from(root.clone())) / &denom;
            let r_hi = Rat::from_integer(BigInt::from(root + 1u32)) / &denom;
            if c.is_positive() {
                lo += c * r_lo;
                hi += c * r_hi;
            } else {
                lo += c * r_hi;
                hi += c * r_lo;
            }
        }
        (round_down(&lo), round_up(&hi))
    }
}

fn round_down(r: &Rat) -> f64 {
    let mut f = r.to_f64().unwrap_or(f64::NEG_INFINITY);
    if f.is_finite() && Rat::from_float(f).is_some_and(|x| &x > r) {
        f = f.next_down();
    }
    f
}

fn round_up(r: &Rat) -> f64 {
    let mut f = r.to_f64().unwrap_or(f64::INFINITY);
    if f.is_finite() && Rat::from_float(f).is_some_and(|x| &x < r) {
        f = f.next_up();
    }
    f
}

/// Exact square root of a non-negative rational.
///
/// `p/q = (a²·m)/(b²·n)` gives `√(p/q) = a/(b·n) · √(m·n)`; `m` and `n` are
/// coprime because `p/q` is reduced, so `m·n` is square-free.
pub fn sqrt_rational(r: &Rat) -> Result<QNum, ExactError> {
    if r.is_negative() {
        return Err(ExactError::NegativeRadicand(r.to_string()));
    }
    if r.is_zero() {
        return Ok(QNum::zero());
    }
    let too_large = || ExactError::RadicandTooLarge(r.to_string());
    let p = r.numer().to_u64().ok_or_else(too_large)?;
    let q = r.denom().to_u64().ok_or_else(too_large)?;
    let (a, m) = square_free_split(p);
    let (b, n) = square_free_split(q);
    let radicand = m.checked_mul(n).ok_or_else(too_large)?;
    let coeff = Rat::new(
        BigInt::from(a),
        BigInt::from(b) * BigInt::from(n),
    );
    Ok(QNum::term(coeff, radicand))
}

impl From<Rat> for QNum {
    fn from(r: Rat) -> Self {
        QNum::from_rat(r)
    }
}

impl From<i64> for QNum {
    fn from(n: i64) -> Self {
        QNum::from_int(n)
    }
}

impl Add for &QNum {
    type Output = QNum;
    fn add(self, rhs: &QNum) -> QNum {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &QNum {
    type Output = QNum;
    fn sub(self, rhs: &QNum) -> QNum {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &QNum {
    type Output = QNum;
    fn mul(self, rhs: &QNum) -> QNum {
        let mut out = QNum::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let (g, m) = mul_radicands(*ma, *mb);
                out.add_term(m, ca * cb * BigInt::from(g));
            }
        }
        out
    }
}

impl Neg for &QNum {
    type Output = QNum;
    fn neg(self) -> QNum {
        QNum {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for QNum {
            type Output = QNum;
            fn $method(self, rhs: QNum) -> QNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QNum> for QNum {
            type Output = QNum;
            fn $method(self, rhs: &QNum) -> QNum {
                (&self).$method(rhs)
            }
        }
        impl $tr<QNum> for &QNum {
            type Output = QNum;
            fn $method(self, rhs: QNum) -> QNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QNum {
    type Output = QNum;
    fn neg(self) -> QNum {
        -&self
    }
}

impl fmt::Display for QNum {
    /// Writes `5/6 + 1/6*sqrt(11)`; zero is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let shown = if i == 0 {
                c.clone()
            } else if c.is_negative() {
                f.write_str(" - ")?;
                -c
            } else {
                f.write_str(" + ")?;
                c.clone()
            };
            if *m == 1 {
                write!(f, "{shown}")?;
            } else {
                write!(f, "{shown}*sqrt({m})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QNum({self})")
    }
}

impl FromStr for QNum {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).parse_sum()
    }
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input,
            chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn fail<T>(&self, reason: impl Into<String>) -> Result<T, ExactError> {
        Err(ExactError::Parse {
            input: self.input.to_string(),
            reason: reason.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        let n = w.chars().count();
        if self.chars.len() >= self.pos + n
            && self.chars[self.pos..self.pos + n].iter().copied().eq(w.chars())
        {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigUint, ExactError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail(format!("expected digits at position {start}"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        Ok(text.parse().expect("ascii digits"))
    }

    fn sqrt_call(&mut self) -> Result<QNum, ExactError> {
        if !self.eat('(') {
            return self.fail("expected '(' after sqrt");
        }
        let m = self.digits()?;
        if !self.eat(')') {
            return self.fail("expected ')'");
        }
        match m.to_u64() {
            Some(m) => Ok(QNum::sqrt_int(m)),
            None => Err(ExactError::RadicandTooLarge(m.to_string())),
        }
    }

    fn term(&mut self) -> Result<QNum, ExactError> {
        if self.eat_word("sqrt") {
            return self.sqrt_call();
        }
        let num = self.digits()?;
        let den = if self.eat('/') {
            self.digits()?
        } else {
            BigUint::one()
        };
        if den.is_zero() {
            return self.fail("zero denominator");
        }
        let c = Rat::new(BigInt::from(num), BigInt::from(den));
        if self.eat('*') {
            if !self.eat_word("sqrt") {
                return self.fail("expected sqrt after '*'");
            }
            let root = self.sqrt_call()?;
            Ok(root.scale(&c))
        } else {
            Ok(QNum::from_rat(c))
        }
    }

    fn parse_sum(&mut self) -> Result<QNum, ExactError> {
        let mut acc = QNum::zero();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            acc = if negative { acc - t } else { acc + t };
            match self.peek() {
                None => return Ok(acc),
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return self.fail(format!("unexpected {c:?}")),
            }
            self.pos += 1;
        }
    }
}
