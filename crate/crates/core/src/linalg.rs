//! Exact linear algebra over integral domains.
//!
//! All elimination is fraction-free (Bareiss): after `k` pivot steps every
//! entry is a `(k+1)`-minor of the input, so the division by the previous
//! pivot is exact. The same code runs over integers, rationals and
//! polynomial rings.

use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, Rational};

/// The operations fraction-free elimination needs from a coefficient ring.
pub trait Domain: Clone + PartialEq + Debug {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other` if the quotient exists in the ring.
    fn exact_div(&self, other: &Self) -> Option<Self>;
    /// Size estimate used to prefer small pivots.
    fn weight(&self) -> u64;
    /// Number of stored terms, charged against a [`Budget`].
    fn term_count(&self) -> u64 {
        0
    }
}

impl Domain for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
    fn weight(&self) -> u64 {
        self.bits()
    }
}

impl Domain for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
    fn weight(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

impl Domain for Poly {
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Poly::zero(self.arity())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        Poly::exact_div(self, other)
    }
    fn weight(&self) -> u64 {
        let deg = self.total_degree().unwrap_or(0) as u64;
        (self.num_terms() as u64) * 64 + deg
    }
    fn term_count(&self) -> u64 {
        self.num_terms() as u64
    }
}

/// Cumulative cap on the number of polynomial terms produced by elimination.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn charge(&mut self, terms: u64) -> Result<()> {
        self.used = self.used.saturating_add(terms);
        if self.used > self.limit {
            return Err(Error::CapExceeded(format!(
                "elimination produced more than {} polynomial terms",
                self.limit
            )));
        }
        Ok(())
    }
}

/// Result of fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Reduced<T> {
    /// Reduced rows; the first `rank()` rows carry the pivots.
    pub rows: Vec<Vec<T>>,
    /// Original index of each row of `rows`.
    pub order: Vec<usize>,
    /// Pivot column of row `k`, for `k < rank()`.
    pub pivot_cols: Vec<usize>,
    /// Number of row transpositions performed.
    pub swaps: usize,
    /// The last pivot. In Gauss-Jordan mode every pivot row ends with this
    /// value on its pivot.
    pub pivot: Option<T>,
    pub ncols: usize,
}

impl<T: Domain> Reduced<T> {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// Right kernel basis read off a Gauss-Jordan reduction: one vector per
    /// non-pivot column `f`, supported on `f` and the pivot columns left of it.
    /// `one` is the ring unit, used when there are no pivots.
    pub fn kernel(&self, one: &T) -> Vec<Vec<T>> {
        let p = self.pivot.as_ref().unwrap_or(one);
        let zero = p.zero_like();
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivot_cols {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![zero.clone(); self.ncols];
            v[f] = p.clone();
            for (k, &c) in self.pivot_cols.iter().enumerate() {
                v[c] = self.rows[k][f].neg();
            }
            out.push(v);
        }
        out
    }
}

/// Fraction-free elimination of `rows` (each of length `ncols`). With
/// `jordan`, entries above pivots are cleared as well.
pub fn reduce<T: Domain>(
    mut rows: Vec<Vec<T>>,
    ncols: usize,
    jordan: bool,
    budget: &mut Budget,
) -> Result<Reduced<T>> {
    let m = rows.len();
    let mut order: Vec<usize> = (0..m).collect();
    let mut pivot_cols = Vec::new();
    let mut prev: Option<T> = None;
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let best = (r..m)
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].weight());
        let Some(best) = best else { continue };
        if best != r {
            rows.swap(best, r);
            order.swap(best, r);
            swaps += 1;
        }
        let piv = rows[r][c].clone();
        let pivot_row = rows[r].clone();
        let targets: Vec<usize> = if jordan {
            (0..m).filter(|&i| i != r).collect()
        } else {
            (r + 1..m).collect()
        };
        for i in targets {
            let factor = rows[i][c].clone();
            let row = &mut rows[i];
            for j in 0..ncols {
                if j == c {
                    continue;
                }
                let lhs_zero = row[j].is_zero();
                let rhs_zero = factor.is_zero() || pivot_row[j].is_zero();
                if lhs_zero && rhs_zero {
                    continue;
                }
                let mut num = if lhs_zero {
                    piv.zero_like()
                } else {
                    piv.mul(&row[j])
                };
                if !rhs_zero {
                    num = num.sub(&factor.mul(&pivot_row[j]));
                }
                let val = match &prev {
                    Some(p) => num.exact_div(p).ok_or_else(|| {
                        Error::Internal("inexact division in fraction-free elimination".into())
                    })?,
                    None => num,
                };
                budget.charge(val.term_count())?;
                row[j] = val;
            }
            row[c] = piv.zero_like();
        }
        pivot_cols.push(c);
        prev = Some(piv);
        r += 1;
    }
    Ok(Reduced {
        rows,
        order,
        pivot_cols,
        swaps,
        pivot: prev,
        ncols,
    })
}

pub fn transpose<T: Clone>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn rank<T: Domain>(rows: Vec<Vec<T>>, ncols: usize, budget: &mut Budget) -> Result<usize> {
    Ok(reduce(rows, ncols, false, budget)?.rank())
}

/// Determinant by fraction-free forward elimination; `one` is the ring unit
/// (returned for the empty matrix).
pub fn determinant<T: Domain>(rows: Vec<Vec<T>>, one: T, budget: &mut Budget) -> Result<T> {
    let n = rows.len();
    if n == 0 {
        return Ok(one);
    }
    let red = reduce(rows, n, false, budget)?;
    if red.rank() < n {
        return Ok(one.zero_like());
    }
    let p = red.pivot.expect("full rank matrix has a pivot");
    Ok(if red.swaps % 2 == 1 { p.neg() } else { p })
}

/// Greedy maximal independent set of rows: row `i` is kept iff it is not in
/// the span of the rows before it.
pub fn independent_rows<T: Domain>(
    rows: &[Vec<T>],
    ncols: usize,
    budget: &mut Budget,
) -> Result<Vec<usize>> {
    let t = transpose(rows, ncols);
    Ok(reduce(t, rows.len(), false, budget)?.pivot_cols)
}

/// Basis of `{c : sum_i c_i rows[i] = 0}`, one vector per dependent row in
/// greedy order.
pub fn left_kernel<T: Domain>(
    rows: &[Vec<T>],
    ncols: usize,
    one: &T,
    budget: &mut Budget,
) -> Result<Vec<Vec<T>>> {
    let t = transpose(rows, ncols);
    Ok(reduce(t, rows.len(), true, budget)?.kernel(one))
}

/// Determinant by Laplace expansion along rows, memoized over the set of
/// columns still available. Zero entries and zero minors are pruned, which
/// makes this cheap on the structurally sparse matrices the Hessians give.
pub fn det_by_minors<T: Domain>(rows: &[Vec<T>], one: T, budget: &mut Budget) -> Result<T> {
    let n = rows.len();
    if n == 0 {
        return Ok(one);
    }
    if n > 63 {
        return Err(Error::CapExceeded(format!(
            "minor expansion supports at most 63 rows, got {n}"
        )));
    }
    let mut memo: HashMap<u64, T> = HashMap::new();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    minor(rows, 0, full, &one, &mut memo, budget)
}

fn minor<T: Domain>(
    rows: &[Vec<T>],
    row: usize,
    cols: u64,
    one: &T,
    memo: &mut HashMap<u64, T>,
    budget: &mut Budget,
) -> Result<T> {
    if row == rows.len() {
        return Ok(one.clone());
    }
    if let Some(v) = memo.get(&cols) {
        return Ok(v.clone());
    }
    let mut acc = one.zero_like();
    let mut position = 0usize;
    let mut rest = cols;
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let entry = &rows[row][j];
        if !entry.is_zero() {
            let sub = minor(rows, row + 1, cols & !(1u64 << j), one, memo, budget)?;
            if !sub.is_zero() {
                let term = entry.mul(&sub);
                budget.charge(term.term_count())?;
                acc = if position.is_multiple_of(2) {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    Ok(acc)
}

/// Scales each rational row by the lcm of its denominators. Returns the
/// integer rows and the scale factors.
pub fn clear_denominators(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut out = Vec::with_capacity(rows.len());
    let mut scales = Vec::with_capacity(rows.len());
    for row in rows {
        let l = row
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        out.push(
            row.iter()
                .map(|v| v.numer() * (&l / v.denom()))
                .collect(),
        );
        scales.push(l);
    }
    (out, scales)
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !Zero::is_zero(&m[i][c]))?;
        m.swap(p, c);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == c || Zero::is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `c * W = g` for a matrix `W` with linearly independent rows.
#[derive(Clone, Debug)]
pub struct RowSpanSolver {
    rows: Vec<Vec<Rational>>,
    cols: Vec<usize>,
    inv: Vec<Vec<Rational>>,
}

impl RowSpanSolver {
    pub fn new(rows: Vec<Vec<Rational>>, ncols: usize) -> Result<Self> {
        let k = rows.len();
        let (int_rows, _) = clear_denominators(&rows);
        let red = reduce(int_rows, ncols, false, &mut Budget::unlimited())?;
        if red.rank() != k {
            return Err(Error::Internal("basis images are linearly dependent".into()));
        }
        let cols = red.pivot_cols.clone();
        let square: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        let inv = inverse(&square)
            .ok_or_else(|| Error::Internal("pivot block is singular".into()))?;
        Ok(RowSpanSolver { rows, cols, inv })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates of `g` in the row span, or `None` if `g` is outside it.
    pub fn solve(&self, g: &[Rational]) -> Option<Vec<Rational>> {
        let k = self.rows.len();
        let mut c = vec![Rational::zero(); k];
        for (t, &col) in self.cols.iter().enumerate() {
            let gv = &g[col];
            if Zero::is_zero(gv) {
                continue;
            }
            // c = g_cols * inv
            for (i, ci) in c.iter_mut().enumerate() {
                *ci += gv * &self.inv[t][i];
            }
        }
        let ok = (0..g.len()).all(|j| {
            let s: Rational = (0..k).map(|i| &c[i] * &self.rows[i][j]).sum();
            s == g[j]
        });
        ok.then_some(c)
    }
}

pub fn eval_matrix(m: &[Vec<Poly>], point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    m.iter()
        .map(|row| row.iter().map(|p| p.eval(point)).collect())
        .collect()
}
