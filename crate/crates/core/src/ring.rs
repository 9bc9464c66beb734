//! Exact multivariate polynomials over the rationals.
//!
//! Variables are marks `x_i`; every mark has graded degree 2. Monomials are
//! kept in graded lexicographic order with `x_0 > x_1 > ...`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A marked point on an edge or on the boundary of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mark(pub u32);

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Exponent vector indexed by mark id, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(m: Mark, e: u32) -> Self {
        let mut exps = vec![0; m.0 as usize + 1];
        exps[m.0 as usize] = e;
        let mut out = Monomial { exps };
        out.trim();
        out
    }

    pub fn from_pairs(pairs: &[(Mark, u32)]) -> Self {
        let mut out = Monomial::one();
        for &(m, e) in pairs {
            out = out.mul(&Monomial::var(m, e));
        }
        out
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn exponent(&self, m: Mark) -> u32 {
        self.exps.get(m.0 as usize).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn marks(&self) -> impl Iterator<Item = (Mark, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Mark(i as u32), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.exps.len().max(other.exps.len());
        let mut exps = vec![0; len];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps.get(i).copied().unwrap_or(0) + other.exps.get(i).copied().unwrap_or(0);
        }
        Monomial { exps }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.exps.len() > self.exps.len() {
            return None;
        }
        let mut exps = self.exps.clone();
        for (i, &e) in other.exps.iter().enumerate() {
            if exps[i] < e {
                return None;
            }
            exps[i] -= e;
        }
        let mut out = Monomial { exps };
        out.trim();
        Some(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            let len = self.exps.len().max(other.exps.len());
            for i in 0..len {
                let a = self.exps.get(i).copied().unwrap_or(0);
                let b = other.exps.get(i).copied().unwrap_or(0);
                if a != b {
                    return a.cmp(&b);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, e) in self.marks() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{m}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Polynomial in the marks with exact rational coefficients. No zero
/// coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        Polynomial::constant(rat(c))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn var(m: Mark) -> Self {
        Polynomial::term(Monomial::var(m, 1), Rational::one())
    }

    pub fn var_pow(m: Mark, e: u32) -> Self {
        Polynomial::term(Monomial::var(m, e), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if the polynomial is a constant (zero counts as constant 0).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn marks(&self) -> BTreeSet<Mark> {
        self.terms.keys().flat_map(|m| m.marks().map(|(k, _)| k)).collect()
    }

    pub fn degree_in(&self, m: Mark) -> u32 {
        self.terms.keys().map(|t| t.exponent(m)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Graded degree (2 per variable) if the polynomial is nonzero and homogeneous.
    pub fn graded_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(2 * first as i64)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.graded_degree().is_some()
    }

    /// Substitute marks according to `map`; merged marks multiply.
    pub fn rename_identify(&self, map: &BTreeMap<Mark, Mark>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut mono = Monomial::one();
            for (k, e) in m.marks() {
                let target = map.get(&k).copied().unwrap_or(k);
                mono = mono.mul(&Monomial::var(target, e));
            }
            out.add_term(mono, c.clone());
        }
        out
    }

    /// Substitute a polynomial for one mark.
    pub fn substitute(&self, mark: Mark, value: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        let mut powers: Vec<Polynomial> = vec![Polynomial::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(mark) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = Monomial {
                exps: m
                    .exps
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| if i == mark.0 as usize { 0 } else { x })
                    .collect(),
            };
            let mut rest = rest;
            rest.trim();
            let piece = &Polynomial::term(rest, c.clone()) * &powers[e];
            out = &out + &piece;
        }
        out
    }

    /// Drop every monomial in which some mark has exponent at least `n`,
    /// i.e. reduce modulo the ideal generated by all `x_i^n`.
    pub fn truncate_powers(&self, n: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exps.iter().all(|&e| e < n))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, values: &BTreeMap<Mark, Rational>) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (k, e) in m.marks() {
                let x = values.get(&k).cloned().unwrap_or_else(Rational::zero);
                for _ in 0..e {
                    v *= &x;
                }
            }
            total += v;
        }
        total
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl From<Mark> for Polynomial {
    fn from(m: Mark) -> Self {
        Polynomial::var(m)
    }
}

fn fmt_coeff(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Canonical rendering, terms in decreasing grlex order: `x1^2*x4 - 2*x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_coeff(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coeff(&abs))?;
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exact quotient `num / den`; fails with `NotDivisible` when `den` does not
/// divide `num`.
pub fn exact_div(num: &Polynomial, den: &Polynomial) -> Result<Polynomial> {
    let (lm, lc) = match den.leading_term() {
        Some((m, c)) => (m.clone(), c.clone()),
        None => return Err(Error::DivisionByZero),
    };
    let mut rem = num.clone();
    let mut quot = Polynomial::zero();
    while let Some((m, c)) = rem.leading_term() {
        let Some(qm) = m.div(&lm) else {
            return Err(Error::NotDivisible {
                num: num.to_string(),
                den: den.to_string(),
            });
        };
        let qc = c / &lc;
        let t = Polynomial::term(qm, qc);
        rem = &rem - &(&t * den);
        quot = &quot + &t;
    }
    Ok(quot)
}

/// `π_ij = Σ_{k=0}^{n} x_i^k x_j^{n-k}`.
pub fn pi_polynomial(n: u32, i: Mark, j: Mark) -> Polynomial {
    assert_ne!(i, j, "pi_polynomial needs distinct marks");
    let mut p = Polynomial::zero();
    for k in 0..=n {
        p.add_term(Monomial::from_pairs(&[(i, k), (j, n - k)]), Rational::one());
    }
    p
}

/// The power sum `x^m + y^m` written in `s = x + y` and `p = xy`, via
/// `p_k = s p_{k-1} - p p_{k-2}` with `p_0 = 2`, `p_1 = s`.
pub fn power_sum_in(m: u32, s: &Polynomial, p: &Polynomial) -> Polynomial {
    let mut prev = Polynomial::int(2);
    if m == 0 {
        return prev;
    }
    let mut cur = s.clone();
    for _ in 1..m {
        let next = &(s * &cur) - &(p * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// The polynomials `u_1, u_2` of the thick-edge factorization, with marks
/// `x1, x2` outgoing and `x3, x4` incoming.
pub fn u_pair(n: u32, marks: [Mark; 4]) -> Result<(Polynomial, Polynomial)> {
    let [m1, m2, m3, m4] = marks;
    let x = |m: Mark| Polynomial::var(m);
    let g = power_sum_in(n + 1, &(x(m3) + x(m4)), &(x(m1) * x(m2)));
    let p1 = &Polynomial::var_pow(m1, n + 1) + &Polynomial::var_pow(m2, n + 1);
    let p2 = &Polynomial::var_pow(m3, n + 1) + &Polynomial::var_pow(m4, n + 1);
    let lin = x(m1) + x(m2) - x(m3) - x(m4);
    let quad = x(m1) * x(m2) - x(m3) * x(m4);
    let u1 = exact_div(&(&p1 - &g), &lin)?;
    let u2 = exact_div(&(&g - &p2), &quad)?;
    debug_assert_eq!(&lin * &u1 + &quad * &u2, &p1 - &p2);
    Ok((u1, u2))
}

/// Laurent polynomial in one variable with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct Laurent {
    coeffs: BTreeMap<i64, Rational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        let mut out = Laurent::zero();
        out.add_term(exp, c);
        out
    }

    pub fn one() -> Self {
        Laurent::monomial(0, Rational::one())
    }

    /// `[n] = q^{1-n} + q^{3-n} + ... + q^{n-1}`.
    pub fn quantum_integer(n: u32) -> Self {
        let n = n as i64;
        let mut out = Laurent::zero();
        for i in 0..n {
            out.add_term(1 - n + 2 * i, Rational::one());
        }
        out
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let v = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn shift(&self, k: i64) -> Laurent {
        Laurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `q -> q^{-1}`.
    pub fn invert(&self) -> Laurent {
        Laurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Laurent {
        let mut out = Laurent::zero();
        for (e, v) in &self.coeffs {
            out.add_term(*e, v * c);
        }
        out
    }
}

impl Add<&Laurent> for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&Laurent> for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul<&Laurent> for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = fmt_coeff(&abs);
            match (*e, abs.is_one()) {
                (0, _) => write!(f, "{coeff}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{coeff}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{coeff}*q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Polynomial {
        Polynomial::var(Mark(i))
    }

    #[test]
    fn exact_div_examples() {
        let a = x(1).pow(2) - x(4).pow(2);
        assert_eq!(exact_div(&a, &(x(1) - x(4))).unwrap(), x(1) + x(4));
        let b = x(1).pow(3) - x(4).pow(3);
        assert_eq!(
            exact_div(&b, &(x(1) - x(4))).unwrap(),
            x(1).pow(2) + x(1) * x(4) + x(4).pow(2)
        );
        let err = exact_div(&(x(1) + x(4)), &(x(1) - x(4))).unwrap_err();
        assert!(err.to_string().contains("not divisible"));
        assert!(matches!(exact_div(&x(1), &Polynomial::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn pi_small_cases() {
        let (i, j) = (Mark(1), Mark(4));
        assert_eq!(pi_polynomial(1, i, j), x(1) + x(4));
        assert_eq!(pi_polynomial(2, i, j), x(1).pow(2) + x(1) * x(4) + x(4).pow(2));
        assert_eq!(
            pi_polynomial(3, i, j),
            x(1).pow(3) + x(1).pow(2) * x(4) + x(1) * x(4).pow(2) + x(4).pow(3)
        );
    }

    #[test]
    fn u_pair_n1() {
        let (u1, u2) = u_pair(1, [Mark(1), Mark(2), Mark(3), Mark(4)]).unwrap();
        assert_eq!(u1, x(1) + x(2) + x(3) + x(4));
        assert_eq!(u2, Polynomial::int(-2));
    }

    #[test]
    fn power_sum_n2_is_cubic() {
        // g(s,p) = s^3 - 3ps for x^3 + y^3
        let s = x(7);
        let p = x(8);
        let g = power_sum_in(3, &s, &p);
        assert_eq!(g, s.pow(3) - Polynomial::int(3) * p * s);
    }

    #[test]
    fn rename_identify_examples() {
        let map: BTreeMap<Mark, Mark> = [(Mark(5), Mark(2))].into_iter().collect();
        assert_eq!((x(2) * x(5)).rename_identify(&map), x(2).pow(2));
        assert_eq!((x(1) + x(3)).rename_identify(&BTreeMap::new()), x(1) + x(3));
        let map: BTreeMap<Mark, Mark> = [(Mark(3), Mark(2))].into_iter().collect();
        assert!((x(2) - x(3)).rename_identify(&map).is_zero());
    }

    #[test]
    fn rendering_is_canonical() {
        let p = x(1).pow(2) * x(4) - Polynomial::int(2) * x(2);
        assert_eq!(p.to_string(), "x1^2*x4 - 2*x2");
        let q = Polynomial::constant(rat_frac(-1, 2)) * x(3) + Polynomial::int(1);
        assert_eq!(q.to_string(), "-1/2*x3 + 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_pairs(&[(Mark(1), 2)]);
        let b = Monomial::from_pairs(&[(Mark(1), 1), (Mark(2), 1)]);
        let c = Monomial::from_pairs(&[(Mark(2), 3)]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn quantum_integer_three() {
        let q3 = Laurent::quantum_integer(3);
        assert_eq!(q3.to_string(), "q^-2 + 1 + q^2");
    }
}
