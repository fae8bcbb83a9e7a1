//! Trivariate polynomials in `a` (alpha), `q`, `t` with arbitrary-precision
//! rational coefficients.
//!
//! Every exact scalar in the crate is a [`PolyScalar`]; rationals are the
//! constant polynomials. Terms are kept in a canonical map with no zero
//! coefficients, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Build a rational from a numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse `p/q`, an integer, or a finite decimal such as `-0.4` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int_abs = int.trim_start_matches(['-', '+']);
        let int_abs = if int_abs.is_empty() { "0" } else { int_abs };
        let digits: BigInt = format!("{int_abs}{frac}").parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let v = BigRational::new(digits, den);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Canonical `p/q` (or integer) rendering.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Alpha,
    Q,
    T,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Alpha => "a",
            Var::Q => "q",
            Var::T => "t",
        }
    }
}

/// Exponent triple `a^alpha * q^q * t^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub alpha: u32,
    pub q: u32,
    pub t: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { alpha: 0, q: 0, t: 0 };

    pub fn new(alpha: u32, q: u32, t: u32) -> Self {
        Monomial { alpha, q, t }
    }

    pub fn degree(&self) -> u32 {
        self.alpha + self.q + self.t
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match v {
            Var::Alpha => self.alpha,
            Var::Q => self.q,
            Var::T => self.t,
        }
    }

    fn with_exponent(mut self, v: Var, e: u32) -> Self {
        match v {
            Var::Alpha => self.alpha = e,
            Var::Q => self.q = e,
            Var::T => self.t = e,
        }
        self
    }

    fn mul(self, o: Monomial) -> Monomial {
        Monomial::new(self.alpha + o.alpha, self.q + o.q, self.t + o.t)
    }
}

// Graded order, highest total degree first, then lexicographic a > q > t.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| (other.alpha, other.q, other.t).cmp(&(self.alpha, self.q, self.t)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for v in [Var::Alpha, Var::Q, Var::T] {
            match self.exponent(v) {
                0 => {}
                1 => parts.push(v.symbol().to_string()),
                e => parts.push(format!("{}^{e}", v.symbol())),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Exact polynomial in `a`, `q`, `t` over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyScalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl PolyScalar {
    pub fn zero() -> Self {
        PolyScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat_int(n))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PolyScalar { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::ONE.with_exponent(v, 1), Rational::one())
    }

    pub fn alpha() -> Self {
        Self::var(Var::Alpha)
    }

    pub fn q() -> Self {
        Self::var(Var::Q)
    }

    pub fn t() -> Self {
        Self::var(Var::T)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    pub fn min_degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(v)).min()
    }

    /// `Some(d)` when every term has total degree `d`; `None` for mixed or zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyScalar { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Substitute rational values for all three variables.
    pub fn eval(&self, alpha: &Rational, q: &Rational, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let term = c
                * num_traits::pow(alpha.clone(), m.alpha as usize)
                * num_traits::pow(q.clone(), m.q as usize)
                * num_traits::pow(t.clone(), m.t as usize);
            acc += term;
        }
        acc
    }

    pub fn eval_f64(&self, alpha: f64, q: f64, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| rational_to_f64(c) * alpha.powi(m.alpha as i32) * q.powi(m.q as i32) * t.powi(m.t as i32))
            .sum()
    }

    /// Replace one variable by a polynomial.
    pub fn subs(&self, v: Var, value: &PolyScalar) -> PolyScalar {
        let mut powers: Vec<PolyScalar> = vec![PolyScalar::one()];
        let mut out = PolyScalar::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = PolyScalar::monomial(m.with_exponent(v, 0), c.clone());
            out += &rest * &powers[e];
        }
        out
    }

    /// Divide every term by `v^e`; fails if some term has lower degree in `v`.
    pub fn div_var_pow(&self, v: Var, e: u32) -> Option<PolyScalar> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let have = m.exponent(v);
            if have < e {
                return None;
            }
            terms.insert(m.with_exponent(v, have - e), c.clone());
        }
        Some(PolyScalar { terms })
    }

    /// Canonical text, e.g. `a^2*q + 2*a*q + 1`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }

    /// First monomial (in canonical order) where `self` and `other` differ.
    pub fn first_difference(&self, other: &PolyScalar) -> Option<(Monomial, Rational, Rational)> {
        let mut keys: Vec<Monomial> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|m| {
            let (l, r) = (self.coeff(&m), other.coeff(&m));
            (l != r).then_some((m, l, r))
        })
    }
}

/// `[n]_q = 1 + q + ... + q^{n-1}`; `[0]_q = 0`.
pub fn qint(n: u32) -> PolyScalar {
    (0..n).map(|i| PolyScalar::monomial(Monomial::new(0, i, 0), Rational::one())).sum()
}

/// `[n]_{q,t} = sum_{i=1}^n q^{i-1} t^{n-i}`.
pub fn qtint(n: u32) -> PolyScalar {
    (1..=n).map(|i| PolyScalar::monomial(Monomial::new(0, i - 1, n - i), Rational::one())).sum()
}

impl From<Rational> for PolyScalar {
    fn from(c: Rational) -> Self {
        PolyScalar::constant(c)
    }
}

impl From<&Rational> for PolyScalar {
    fn from(c: &Rational) -> Self {
        PolyScalar::constant(c.clone())
    }
}

impl From<i64> for PolyScalar {
    fn from(n: i64) -> Self {
        PolyScalar::int(n)
    }
}

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyScalar({self})")
    }
}

impl FromStr for PolyScalar {
    type Err = Error;

    /// Parses sums of terms like `-3/2*a^2*q + t - 1` (no parentheses).
    fn from_str(s: &str) -> Result<Self> {
        let src = s.replace(' ', "");
        if src.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = PolyScalar::zero();
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in src.chars() {
            // A sign starts a new term unless it follows `^` (no negative exponents anyway).
            if (ch == '+' || ch == '-') && prev.is_some_and(|p| p != '^' && p != '*' && p != '/') {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && prev.is_none() {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        chunks.push((neg, cur));
        for (neg, term) in chunks {
            if term.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let mut coeff = Rational::one();
            let mut mono = Monomial::ONE;
            for factor in term.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => {
                        (b, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?)
                    }
                    None => (factor, 1),
                };
                let var = match base {
                    "a" | "alpha" => Some(Var::Alpha),
                    "q" => Some(Var::Q),
                    "t" => Some(Var::T),
                    _ => None,
                };
                match var {
                    Some(v) => mono = mono.mul(Monomial::ONE.with_exponent(v, exp)),
                    None => coeff *= num_traits::pow(parse_rational(base)?, exp as usize),
                }
            }
            out.add_term(mono, if neg { -coeff } else { coeff });
        }
        Ok(out)
    }
}

impl Add<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for PolyScalar {
    type Output = PolyScalar;
    fn add(mut self, rhs: PolyScalar) -> PolyScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&PolyScalar> for PolyScalar {
    fn add_assign(&mut self, rhs: &PolyScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign for PolyScalar {
    fn add_assign(&mut self, rhs: PolyScalar) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Sub<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for PolyScalar {
    type Output = PolyScalar;
    fn sub(mut self, rhs: PolyScalar) -> PolyScalar {
        self -= &rhs;
        self
    }
}

impl SubAssign<&PolyScalar> for PolyScalar {
    fn sub_assign(&mut self, rhs: &PolyScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Neg for PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        PolyScalar { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        -self.clone()
    }
}

impl Mul<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(*m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: PolyScalar) -> PolyScalar {
        &self * &rhs
    }
}

impl MulAssign<&PolyScalar> for PolyScalar {
    fn mul_assign(&mut self, rhs: &PolyScalar) {
        *self = &*self * rhs;
    }
}

impl Sum for PolyScalar {
    fn sum<I: Iterator<Item = PolyScalar>>(iter: I) -> Self {
        iter.fold(PolyScalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a PolyScalar> for PolyScalar {
    fn sum<I: Iterator<Item = &'a PolyScalar>>(iter: I) -> Self {
        iter.fold(PolyScalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for PolyScalar {
    fn product<I: Iterator<Item = PolyScalar>>(iter: I) -> Self {
        iter.fold(PolyScalar::one(), |acc, x| &acc * &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyScalar {
        s.parse().unwrap()
    }

    #[test]
    fn eval_examples() {
        let aq = PolyScalar::alpha() * PolyScalar::q();
        assert_eq!(aq.eval(&rat(1, 2), &rat(1, 3), &rat(0, 1)), rat(1, 6));
        let one = PolyScalar::one() + PolyScalar::q().scale(&rat(0, 1));
        assert_eq!(one.eval(&rat(7, 3), &rat(-1, 9), &rat(2, 1)), rat(1, 1));
        let f = (PolyScalar::one() + PolyScalar::alpha()) * (PolyScalar::one() + PolyScalar::q());
        // (3/5)(13/10)
        assert_eq!(f.eval(&rat(-2, 5), &rat(3, 10), &rat(0, 1)), rat(39, 50));
    }

    #[test]
    fn arithmetic_examples() {
        let a = PolyScalar::alpha();
        let one = PolyScalar::one();
        assert_eq!((&one + &a) * (&one - &a), p("1 - a^2"));
        let x = p("1 + 2*a*q - 3/4*t");
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).num_terms(), 0);
        let lhs = p("1 + q") * p("1 + q + q^2");
        let half = rat(1, 2);
        assert_eq!(lhs.eval(&rat(0, 1), &half, &rat(0, 1)), rat(21, 8));
    }

    #[test]
    fn qint_and_qtint() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(1), PolyScalar::one());
        assert_eq!(qint(3), p("1 + q + q^2"));
        assert_eq!(qtint(1), PolyScalar::one());
        assert_eq!(qtint(2), p("t + q"));
        assert_eq!(qtint(3), p("t^2 + q*t + q^2"));
        for n in 0..=12 {
            assert_eq!(qint(n) * p("1 - q"), PolyScalar::one() - PolyScalar::q().pow(n));
        }
        for n in 1..=10 {
            assert_eq!(qtint(n).homogeneous_degree(), Some(n - 1));
            assert_eq!(qtint(n).subs(Var::T, &PolyScalar::one()), qint(n));
        }
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p("3 + 2*t + t^2").to_string(), "t^2 + 2*t + 3");
        assert_eq!(p("1 + 2*a*q + a^2*q").to_string(), "a^2*q + 2*a*q + 1");
        assert_eq!(p("-1/2*q + a").to_string(), "a - 1/2*q");
        assert_eq!(PolyScalar::zero().to_string(), "0");
        assert_eq!(p("-a").to_string(), "-a");
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("-2/5").unwrap(), rat(-2, 5));
        assert_eq!(parse_rational("0.4").unwrap(), rat(2, 5));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn subs_and_division() {
        let f = p("q^2*t + q*t^3");
        assert_eq!(f.subs(Var::Q, &PolyScalar::zero()), PolyScalar::zero());
        assert_eq!(f.div_var_pow(Var::T, 1).unwrap(), p("q^2 + q*t^2"));
        assert!(f.div_var_pow(Var::T, 2).is_none());
        let diff = p("1 + q").first_difference(&p("1 + 2*q")).unwrap();
        assert_eq!(diff.0, Monomial::new(0, 1, 0));
    }
}
