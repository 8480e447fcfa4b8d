//! Exact Laurent polynomials in one and two variables over big integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

/// Error produced when reading a polynomial from text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad polynomial text at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: String,
}

/// Selects the variable for [`LaurentPoly2::geom_sum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Bivariate Laurent polynomial with exact integer coefficients.
///
/// Terms are kept in a map keyed by `(x_exp, y_exp)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `c * x^a * y^b`.
    pub fn monomial<C: Into<BigInt>>(c: C, a: i64, b: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c.into());
        p
    }

    /// Builds a polynomial from `(a, b, c)` triples, summing repeats.
    pub fn from_terms<I, C>(it: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (a, b, c) in it {
            p.add_term(a, b, c.into());
        }
        p
    }

    fn add_term(&mut self, a: i64, b: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
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

    /// Coefficient of `x^a y^b`.
    pub fn coeff(&self, a: i64, b: i64) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Terms in ascending `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    /// `(x^p - 1)/(x - 1)` (or in `y`) as a Laurent polynomial, for any integer `p`.
    ///
    /// ```
    /// use knotfam::poly::{LaurentPoly2, Var};
    /// let s = LaurentPoly2::geom_sum(Var::X, -2);
    /// let lhs = &(LaurentPoly2::x() - LaurentPoly2::one()) * &s;
    /// assert_eq!(lhs, LaurentPoly2::monomial(1, -2, 0) - LaurentPoly2::one());
    /// ```
    pub fn geom_sum(var: Var, p: i64) -> Self {
        let range: Box<dyn Iterator<Item = (i64, i64)>> =
            if p >= 0 { Box::new((0..p).map(|i| (i, 1))) } else { Box::new((p..0).map(|i| (i, -1))) };
        let mut out = Self::zero();
        for (i, c) in range {
            match var {
                Var::X => out.add_term(i, 0, BigInt::from(c)),
                Var::Y => out.add_term(0, i, BigInt::from(c)),
            }
        }
        out
    }

    pub fn swap_xy(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect() }
    }

    /// Applies `x -> -x`, `y -> -1/x`.
    pub fn substitute_thistlethwaite(&self) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for (&(a, b), c) in &self.terms {
            let c = if (a + b).rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
            out.add_term(a - b, c);
        }
        out
    }

    /// Non-negative integer power.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact value at integer point; every exponent used must be non-negative
    /// unless the corresponding value is `1` or `-1`.
    pub fn eval_int(&self, x: i64, y: i64) -> Option<BigInt> {
        let mut total = BigInt::zero();
        for (&(a, b), c) in &self.terms {
            total += c * int_pow(x, a)? * int_pow(y, b)?;
        }
        Some(total)
    }

    /// First term of the canonical text order (lowest y-exponent, then lowest x-exponent).
    /// For a 2-connected graph this is `c*x` with `c` the coefficient of `x`.
    ///
    /// ```
    /// use knotfam::poly::LaurentPoly2;
    /// let k4: LaurentPoly2 = "x^3 + 3x^2 + 2x + 4x*y + 2y + 3y^2 + y^3".parse().unwrap();
    /// assert_eq!(k4.leading_term().map(|t| (t.0, t.1, t.2.clone())), Some((1, 0, 2.into())));
    /// ```
    pub fn leading_term(&self) -> Option<(i64, i64, &BigInt)> {
        self.terms.iter().min_by_key(|(&(a, b), _)| (b, a)).map(|(&(a, b), c)| (a, b, c))
    }

    pub fn min_exponents(&self) -> Option<(i64, i64)> {
        let a = self.terms.keys().map(|k| k.0).min()?;
        let b = self.terms.keys().map(|k| k.1).min()?;
        Some((a, b))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// ```
    /// use knotfam::poly::LaurentPoly2;
    /// let n: LaurentPoly2 = "x^3 - 1".parse().unwrap();
    /// let d: LaurentPoly2 = "x - 1".parse().unwrap();
    /// assert_eq!(n.div_exact(&d).unwrap(), "x^2 + x + 1".parse().unwrap());
    /// assert!(d.div_exact(&n).is_none());
    /// ```
    pub fn div_exact(&self, d: &LaurentPoly2) -> Option<LaurentPoly2> {
        let (&(da, db), dc) = d.terms.iter().next_back()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (na, nb) = self.min_exponents()?;
        let (ma, mb) = d.min_exponents()?;
        let max_a = self.terms.keys().map(|k| k.0).max()? - da;
        let max_b = self.terms.keys().map(|k| k.1).max()? - d.terms.keys().map(|k| k.1).max()?;
        let (lo_a, lo_b) = (na - ma, nb - mb);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&(a, b), c)) = rem.terms.iter().next_back() {
            let (qa, qb) = (a - da, b - db);
            if qa < lo_a || qa > max_a || qb < lo_b || qb > max_b {
                return None;
            }
            if !(c % dc).is_zero() {
                return None;
            }
            let q = Self::monomial(c / dc, qa, qb);
            rem = &rem - &(&q * d);
            quot += &q;
        }
        Some(quot)
    }

    /// True when every coefficient is positive.
    pub fn all_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }
}

fn int_pow(v: i64, e: i64) -> Option<BigInt> {
    if e >= 0 {
        return Some(num_traits::pow(BigInt::from(v), e as usize));
    }
    match v {
        1 => Some(BigInt::one()),
        -1 => Some(if e % 2 == 0 { BigInt::one() } else { -BigInt::one() }),
        _ => None,
    }
}

impl Add<&LaurentPoly2> for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(mut self, rhs: LaurentPoly2) -> LaurentPoly2 {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly2> for LaurentPoly2 {
    fn add_assign(&mut self, rhs: &LaurentPoly2) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        -&self
    }
}

impl Sub<&LaurentPoly2> for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, -c);
        }
        out
    }
}

impl Sub for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: LaurentPoly2) -> LaurentPoly2 {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly2> for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: LaurentPoly2) -> LaurentPoly2 {
        &self * &rhs
    }
}

macro_rules! mixed_ops {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                $tr::$m(&self, rhs)
            }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                $tr::$m(self, &rhs)
            }
        }
    )*};
}

mixed_ops!(LaurentPoly2, Add add, Sub sub, Mul mul);

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical text: `c*x^a*y^b` terms joined by ` + `, ordered by y-exponent then
/// x-exponent. Zero exponents are omitted; a constant is written as its bare coefficient.
impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| (b, a));
        for (i, (a, b)) in keys.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", self.terms[&(a, b)])?;
            if a != 0 {
                write!(f, "*x^{a}")?;
            }
            if b != 0 {
                write!(f, "*y^{b}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly2 {
    type Err = PolyParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Self::zero();
        for (c, exps) in parse_terms(s, &['x', 'y'])? {
            out.add_term(exps[0], exps[1], c);
        }
        Ok(out)
    }
}

/// Univariate Laurent polynomial with exact integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly1 {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial<C: Into<BigInt>>(c: C, a: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(a, c.into());
        p
    }

    /// Builds from coefficients of `x^0, x^1, ...`.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(i as i64, c.clone().into());
        }
        p
    }

    fn add_term(&mut self, a: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(a).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: i64) -> BigInt {
        self.terms.get(&a).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&a, c)| (a, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `c * x^k`.
    pub fn scale(&self, c: &BigInt, k: i64) -> Self {
        let mut out = Self::zero();
        for (&a, v) in &self.terms {
            out.add_term(a + k, v * c);
        }
        out
    }

    /// Dense coefficient vector `[c_0, ..., c_d]`; requires no negative exponents.
    pub fn dense_coeffs(&self) -> Option<Vec<BigInt>> {
        if self.min_exp().is_some_and(|m| m < 0) {
            return None;
        }
        let d = self.max_exp().unwrap_or(0);
        let mut v = vec![BigInt::zero(); d as usize + 1];
        for (&a, c) in &self.terms {
            v[a as usize] = c.clone();
        }
        Some(v)
    }

    /// Largest absolute coefficient as `f64`.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }
}

impl Add<&LaurentPoly1> for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn add(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (&a, c) in &rhs.terms {
            out.add_term(a, c.clone());
        }
        out
    }
}

impl Mul<&LaurentPoly1> for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn mul(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for (&a1, c1) in &self.terms {
            for (&a2, c2) in &rhs.terms {
                out.add_term(a1 + a2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ascending exponents, `c*x^a` terms joined by ` + `; the constant term is a bare coefficient.
impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if *a != 0 {
                write!(f, "*x^{a}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly1 {
    type Err = PolyParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Self::zero();
        for (c, exps) in parse_terms(s, &['x'])? {
            out.add_term(exps[0], c);
        }
        Ok(out)
    }
}

/// Shared term reader: `[+-]coeff(*var^exp)*` separated by `+`, whitespace ignored.
/// A term may also start directly with a variable (`x^2`, `-y`).
fn parse_terms(s: &str, vars: &[char]) -> Result<Vec<(BigInt, Vec<i64>)>, PolyParseError> {
    let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let err = |i: usize, msg: &str| PolyParseError {
        pos: chars.get(i).map(|c| c.0).unwrap_or(s.len()),
        msg: msg.to_string(),
    };
    let mut out = Vec::new();
    if chars.len() == 1 && chars[0].1 == '0' {
        return Ok(out);
    }
    let mut i = 0;
    loop {
        if i >= chars.len() {
            return Err(err(i, "expected a term"));
        }
        let mut neg = false;
        while i < chars.len() && (chars[i].1 == '-' || chars[i].1 == '+') {
            neg ^= chars[i].1 == '-';
            i += 1;
        }
        let start = i;
        while i < chars.len() && chars[i].1.is_ascii_digit() {
            i += 1;
        }
        let mut coeff = if i > start {
            let digits: String = chars[start..i].iter().map(|c| c.1).collect();
            digits.parse::<BigInt>().map_err(|_| err(start, "bad coefficient"))?
        } else {
            BigInt::one()
        };
        if neg {
            coeff = -coeff;
        }
        let mut exps = vec![0i64; vars.len()];
        let mut need_factor = i == start || chars.get(i).is_some_and(|c| vars.contains(&c.1));
        loop {
            if i < chars.len() && chars[i].1 == '*' {
                i += 1;
                need_factor = true;
            }
            if !need_factor {
                break;
            }
            need_factor = false;
            let v = chars.get(i).map(|c| c.1).ok_or_else(|| err(i, "expected a variable"))?;
            let vi = vars.iter().position(|&c| c == v).ok_or_else(|| err(i, "unknown variable"))?;
            i += 1;
            let mut e = 1i64;
            if i < chars.len() && chars[i].1 == '^' {
                i += 1;
                let es = i;
                if i < chars.len() && chars[i].1 == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let txt: String = chars[es..i].iter().map(|c| c.1).collect();
                e = txt.parse().map_err(|_| err(es, "bad exponent"))?;
            }
            exps[vi] += e;
        }
        out.push((coeff, exps));
        if i == chars.len() {
            return Ok(out);
        }
        if chars[i].1 != '+' && chars[i].1 != '-' {
            return Err(err(i, "expected '+'"));
        }
        if chars[i].1 == '+' {
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_matches_goldens() {
        let t = LaurentPoly2::from_terms([(2, 0, 1), (1, 0, 1), (0, 1, 1)]);
        assert_eq!(t.to_string(), "1*x^1 + 1*x^2 + 1*y^1");
        let j = LaurentPoly1::from_coeffs(&[-1, 0, -1, 1]);
        assert_eq!(j.to_string(), "-1 + -1*x^2 + 1*x^3");
    }

    #[test]
    fn parse_accepts_explicit_zero_exponents() {
        let p: LaurentPoly2 = "-1*x^-1 + 2*x^0*y^1 + 1*x^2".parse().unwrap();
        let q = LaurentPoly2::from_terms([(-1, 0, -1), (0, 1, 2), (2, 0, 1)]);
        assert_eq!(p, q);
        assert_eq!(q.to_string().parse::<LaurentPoly2>().unwrap(), q);
    }

    #[test]
    fn parse_loose_forms() {
        let p: LaurentPoly2 = " x ^2 - y + 3 ".parse().unwrap();
        assert_eq!(p, LaurentPoly2::from_terms([(2, 0, 1), (0, 1, -1), (0, 0, 3)]));
        assert_eq!("0".parse::<LaurentPoly2>().unwrap(), LaurentPoly2::zero());
        assert!("x^".parse::<LaurentPoly2>().is_err());
        assert!("2*z".parse::<LaurentPoly2>().is_err());
    }

    #[test]
    fn geom_sum_small_cases() {
        assert_eq!(LaurentPoly2::geom_sum(Var::X, 0), LaurentPoly2::zero());
        assert_eq!(LaurentPoly2::geom_sum(Var::X, -1), LaurentPoly2::monomial(-1, -1, 0));
        assert_eq!(LaurentPoly2::geom_sum(Var::Y, 3), LaurentPoly2::from_terms([(0, 0, 1), (0, 1, 1), (0, 2, 1)]));
    }

    #[test]
    fn thistlethwaite_examples() {
        let sub = |p: LaurentPoly2| p.substitute_thistlethwaite();
        assert_eq!(sub(LaurentPoly2::y()), LaurentPoly1::monomial(-1, -1));
        let hopf = sub(LaurentPoly2::x() + LaurentPoly2::y());
        assert_eq!(hopf, &LaurentPoly1::monomial(-1, 1) + &LaurentPoly1::monomial(-1, -1));
    }
}
