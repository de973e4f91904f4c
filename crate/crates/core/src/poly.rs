//! Exact rationals, sparse multivariate polynomials and the apolarity action.
//!
//! A [`Poly`] lives in `k[x_1, ..., x_n]` with `k = Q`. A [`DiffOp`] is the same
//! data read in the dual variables `X_i = d/dx_i`; applying it differentiates.
//! Terms are kept in graded reverse lexicographic order with the declared
//! variable order, and zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector of a monomial; one entry per ambient variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(powers: Vec<u32>) -> Self {
        Exponent(powers)
    }

    pub fn zero(arity: usize) -> Self {
        Exponent(vec![0; arity])
    }

    /// The exponent of the `i`-th variable alone.
    pub fn unit(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Exponent(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn powers(&self) -> &[u32] {
        &self.0
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        if !other.divides(self) {
            return None;
        }
        Some(Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl Add for &Exponent {
    type Output = Exponent;

    fn add(self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponent {
    /// Graded reverse lexicographic: higher total degree is larger; ties are
    /// broken at the last differing variable, where the smaller power wins.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `arity` variables, in descending
/// grevlex order.
pub fn monomials_of_degree(arity: usize, d: u32) -> Vec<Exponent> {
    fn fill(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Exponent>) {
        if slots == 1 {
            prefix.push(left);
            out.push(Exponent(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            fill(prefix, left - e, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if arity == 0 {
        if d == 0 {
            out.push(Exponent(Vec::new()));
        }
        return out;
    }
    fill(&mut Vec::with_capacity(arity), d, arity, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Sparse polynomial over the rationals with a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn zero(arity: usize) -> Self {
        Poly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        Poly::monomial(Exponent::zero(arity), c)
    }

    pub fn one(arity: usize) -> Self {
        Poly::constant(arity, Rational::one())
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let arity = exp.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { arity, terms }
    }

    /// The variable `x_i`.
    pub fn var(arity: usize, i: usize) -> Self {
        Poly::monomial(Exponent::unit(arity, i), Rational::one())
    }

    /// Builds a polynomial from possibly repeated terms, summing and pruning.
    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Poly::zero(arity);
        for (e, c) in terms {
            if e.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: e.arity(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).max()
    }

    /// The common degree of all terms, or `None` for zero and for
    /// non-homogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Exponent::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Poly) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_arity(other)?;
        let mut out = Poly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.arity);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity {
            return Err(Error::DimensionMismatch {
                expected: self.arity,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.powers()) {
                if k > 0 {
                    t *= x.pow(k as i32);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Quotient `self / divisor` when the division is exact; `None` otherwise.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.arity != self.arity {
            return None;
        }
        let (lead_e, lead_c) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.arity);
        while let Some((e, c)) = rem.leading_term() {
            let qe = e.checked_sub(lead_e)?;
            let qc = c / lead_c;
            let step = Poly::monomial(qe, qc);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// `Some(c)` with `self = c * other` and `c != 0`, if such `c` exists.
    pub fn ratio_to(&self, other: &Poly) -> Option<Rational> {
        if self.arity != other.arity || self.is_zero() || other.is_zero() {
            return None;
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (e, c) = other.leading_term()?;
        let factor = self.coefficient(e) / c;
        if factor.is_zero() {
            return None;
        }
        (other.scale(&factor) == *self).then_some(factor)
    }

    /// The unique positive rational multiple with coprime integer
    /// coefficients and positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        match content(self.terms.values()) {
            Some(mut c) => {
                if self.leading_term().is_some_and(|(_, lc)| lc.is_negative()) {
                    c = -c;
                }
                self.scale(&c.recip())
            }
            None => self.clone(),
        }
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.arity);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[i] -= 1;
            out.add_term(ne, c * rat(k as i64));
        }
        out
    }

    /// Canonical text with the given variable names: grevlex term order,
    /// explicit `*` and `^`.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms() {
            let mono = format_monomial(e, names);
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -Rational::one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }
}

/// Positive rational `g` such that every value divided by `g` is an integer and
/// these integers are coprime. `None` when all values are zero.
pub fn content<'a, I>(values: I) -> Option<Rational>
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    let mut any = false;
    for v in values {
        if v.is_zero() {
            continue;
        }
        any = true;
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    any.then(|| Rational::new(num, den))
}

fn format_monomial(e: &Exponent, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.powers().iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    parts.join("*")
}

/// Default variable names `x1, ..., xn`.
pub fn default_names(arity: usize) -> Vec<String> {
    (1..=arity).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&default_names(self.arity)))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, other: &Poly) -> Poly {
        self.try_add(other).expect("polynomial arity mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, other: &Poly) -> Poly {
        self.try_sub(other).expect("polynomial arity mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, other: &Poly) -> Poly {
        self.try_mul(other).expect("polynomial arity mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

/// A nonzero homogeneous polynomial of degree `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    poly: Poly,
    degree: u32,
}

impl Form {
    pub fn new(poly: Poly) -> Result<Self> {
        let mut degs = poly.terms.keys().map(Exponent::degree);
        let first = degs.next().ok_or(Error::ZeroPolynomial)?;
        if let Some(second) = degs.find(|&d| d != first) {
            return Err(Error::NotHomogeneous { first, second });
        }
        Ok(Form {
            poly,
            degree: first,
        })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn arity(&self) -> usize {
        self.poly.arity
    }

    pub fn scale(&self, c: &Rational) -> Result<Form> {
        Form::new(self.poly.scale(c))
    }
}

/// Element of `Q = k[X_1, ..., X_n]` acting on polynomials by differentiation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    poly: Poly,
}

impl DiffOp {
    pub fn new(poly: Poly) -> Self {
        DiffOp { poly }
    }

    pub fn monomial(exp: Exponent) -> Self {
        DiffOp {
            poly: Poly::monomial(exp, Rational::one()),
        }
    }

    /// The linear operator `a_1 X_1 + ... + a_n X_n`.
    pub fn linear(a: &[Rational]) -> Self {
        let n = a.len();
        let terms = a
            .iter()
            .enumerate()
            .map(|(i, c)| (Exponent::unit(n, i), c.clone()));
        DiffOp {
            poly: Poly::from_terms(n, terms).expect("consistent arity"),
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn arity(&self) -> usize {
        self.poly.arity
    }
}

fn falling_factorial(n: u32, k: u32) -> BigInt {
    (n - k + 1..=n).fold(BigInt::one(), |acc, v| acc * BigInt::from(v))
}

/// `X^alpha` applied to `p`.
pub fn apply_monomial(alpha: &Exponent, p: &Poly) -> Poly {
    let mut out = Poly::zero(p.arity);
    for (beta, c) in &p.terms {
        if let Some(rest) = beta.checked_sub(alpha) {
            let mut factor = BigInt::one();
            for (&b, &a) in beta.powers().iter().zip(alpha.powers()) {
                if a > 0 {
                    factor *= falling_factorial(b, a);
                }
            }
            out.terms.insert(rest, c * Rational::from_integer(factor));
        }
    }
    out
}

/// The apolarity action: `op(d/dx_1, ..., d/dx_n)` applied to `p`.
pub fn apply_diff(op: &DiffOp, p: &Poly) -> Result<Poly> {
    if op.arity() != p.arity {
        return Err(Error::ArityMismatch {
            expected: p.arity,
            found: op.arity(),
        });
    }
    let mut out = Poly::zero(p.arity);
    for (alpha, c) in &op.poly.terms {
        for (e, v) in apply_monomial(alpha, p).terms {
            out.add_term(e, v * c);
        }
    }
    Ok(out)
}

/// `(a_1 X_1 + ... + a_n X_n)^d` applied to `p`, one first-order step at a time.
pub fn power_apply(a: &[Rational], d: u32, p: &Poly) -> Result<Poly> {
    if a.len() != p.arity {
        return Err(Error::DimensionMismatch {
            expected: p.arity,
            found: a.len(),
        });
    }
    let mut q = p.clone();
    for _ in 0..d {
        if q.is_zero() {
            break;
        }
        let mut next = Poly::zero(p.arity);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (e, c) in q.partial(i).terms {
                next.add_term(e, c * ai);
            }
        }
        q = next;
    }
    Ok(q)
}
