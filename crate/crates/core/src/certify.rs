//! Certified statements about matrices of polynomials.
//!
//! A nonzero determinant (or a lower bound on rank) is certified by one exact
//! evaluation at a rational point. Vanishing (or an upper bound on rank) is
//! certified by explicit polynomial row dependencies, replayed with exact
//! polynomial arithmetic. Random points only steer the search; nothing is
//! accepted without one of these two certificates.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::{self, Budget};
use crate::poly::{content, Poly, Rational};

/// Deterministic stream of small-integer points. Coordinates lie in
/// `[-B, B]` with `B = 2, 4, 8, ...`, doubling every eight draws.
pub struct PointSampler {
    rng: ChaCha8Rng,
    arity: usize,
    drawn: usize,
}

impl PointSampler {
    /// `salt` separates independent searches driven by the same seed.
    pub fn new(seed: u64, salt: u64, arity: usize) -> Self {
        let mixed = seed ^ salt.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        PointSampler {
            rng: ChaCha8Rng::seed_from_u64(mixed),
            arity,
            drawn: 0,
        }
    }

    pub fn next_point(&mut self) -> Vec<Rational> {
        let bound: i64 = 2 << (self.drawn / 8).min(40);
        self.drawn += 1;
        (0..self.arity)
            .map(|_| Rational::from_integer(BigInt::from(self.rng.gen_range(-bound..=bound))))
            .collect()
    }
}

/// True iff `coeffs` is not all zero and `sum_i coeffs[i] * rows[i] = 0`.
pub fn verify_dependency(rows: &[Vec<Poly>], coeffs: &[Poly]) -> bool {
    if rows.len() != coeffs.len() || coeffs.iter().all(Poly::is_zero) {
        return false;
    }
    let ncols = rows.first().map_or(0, Vec::len);
    (0..ncols).all(|j| {
        let mut acc: Option<Poly> = None;
        for (c, row) in coeffs.iter().zip(rows) {
            if c.is_zero() || row[j].is_zero() {
                continue;
            }
            let t = c * &row[j];
            acc = Some(match acc {
                Some(a) => &a + &t,
                None => t,
            });
        }
        acc.is_none_or(|p| p.is_zero())
    })
}

fn nonzero_count(row: &[Poly]) -> usize {
    row.iter().filter(|p| !p.is_zero()).count()
}

/// A row dependency suggested by a singular evaluation, before its
/// polynomial coefficients are computed.
struct Candidate {
    /// Original row indices; the last one is the dependent row.
    support: Vec<usize>,
    /// Columns on which the other support rows are independent at the point.
    cols: Vec<usize>,
}

/// Dependencies among the rows of `numeric` (the value of `sym` at a point),
/// smallest support first. Rows are scanned sparsest first so that the
/// greedy dependencies tend to have small support.
fn candidates(sym: &[Vec<Poly>], numeric: &[Vec<Rational>]) -> Result<Vec<Candidate>> {
    let ncols = numeric.first().map_or(0, Vec::len);
    let mut order: Vec<usize> = (0..sym.len()).collect();
    order.sort_by_key(|&i| (nonzero_count(&sym[i]), i));
    let ordered: Vec<Vec<Rational>> = order.iter().map(|&i| numeric[i].clone()).collect();
    let one = Rational::from_integer(1.into());
    let kernel = linalg::left_kernel(&ordered, ncols, &one, &mut Budget::unlimited())?;
    let mut out = Vec::with_capacity(kernel.len());
    for v in kernel {
        let positions: Vec<usize> = (0..v.len()).filter(|&k| !Zero::is_zero(&v[k])).collect();
        let (&last, rest) = positions.split_last().expect("kernel vectors are nonzero");
        let head: Vec<Vec<Rational>> = rest.iter().map(|&k| ordered[k].clone()).collect();
        let red = linalg::reduce(head, ncols, false, &mut Budget::unlimited())?;
        if red.rank() != rest.len() {
            return Err(Error::Internal("greedy support rows are dependent".into()));
        }
        let mut support: Vec<usize> = rest.iter().map(|&k| order[k]).collect();
        support.push(order[last]);
        out.push(Candidate {
            support,
            cols: red.pivot_cols,
        });
    }
    out.sort_by_key(|c| c.support.len());
    Ok(out)
}

/// Polynomial coefficients of a candidate by Cramer's rule on the
/// `s x (s-1)` submatrix, scaled to a primitive integer vector.
fn materialize(
    sym: &[Vec<Poly>],
    cand: &Candidate,
    budget: &mut Budget,
) -> Result<Vec<Poly>> {
    let arity = sym[0][0].arity();
    let sub: Vec<Vec<Poly>> = cand
        .support
        .iter()
        .map(|&i| cand.cols.iter().map(|&j| sym[i][j].clone()).collect())
        .collect();
    let mut coeffs = vec![Poly::zero(arity); sym.len()];
    for (k, &i) in cand.support.iter().enumerate() {
        let minor: Vec<Vec<Poly>> = sub
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != k)
            .map(|(_, r)| r.clone())
            .collect();
        let det = linalg::det_by_minors(&minor, Poly::one(arity), budget)?;
        coeffs[i] = if (cand.support.len() - 1 - k).is_multiple_of(2) {
            det
        } else {
            -&det
        };
    }
    Ok(normalize(coeffs))
}

/// Divides a coefficient vector by its joint rational content.
fn normalize(coeffs: Vec<Poly>) -> Vec<Poly> {
    let all: Vec<Rational> = coeffs
        .iter()
        .flat_map(|p| p.terms().map(|(_, c)| c.clone()).collect::<Vec<_>>())
        .collect();
    let Some(mut g) = content(all.iter()) else {
        return coeffs;
    };
    let lead_negative = coeffs
        .iter()
        .rev()
        .find(|p| !p.is_zero())
        .and_then(|p| p.leading_term().map(|(_, c)| c < &Rational::zero()))
        .unwrap_or(false);
    if lead_negative {
        g = -g;
    }
    let inv = g.recip();
    coeffs.iter().map(|p| p.scale(&inv)).collect()
}

/// One verified dependency suggested by a singular evaluation, trying at most
/// `max_tries` candidates.
pub fn dependency_at_point(
    sym: &[Vec<Poly>],
    numeric: &[Vec<Rational>],
    cfg: &Config,
    max_tries: usize,
) -> Result<Option<Vec<Poly>>> {
    let mut budget = Budget::new(cfg.term_budget);
    for cand in candidates(sym, numeric)?.iter().take(max_tries) {
        if cand.support.len() - 1 > cfg.max_symbolic_det_size {
            break;
        }
        let coeffs = match materialize(sym, cand, &mut budget) {
            Ok(c) => c,
            Err(Error::CapExceeded(_)) => break,
            Err(e) => return Err(e),
        };
        if verify_dependency(sym, &coeffs) {
            return Ok(Some(coeffs));
        }
    }
    Ok(None)
}

/// Row dependencies from a symbolic Gauss-Jordan elimination.
pub fn symbolic_dependencies(sym: &[Vec<Poly>], budget: &mut Budget) -> Result<Vec<Vec<Poly>>> {
    let ncols = sym.first().map_or(0, Vec::len);
    let arity = sym.first().and_then(|r| r.first()).map_or(0, Poly::arity);
    let kernel = linalg::left_kernel(sym, ncols, &Poly::one(arity), budget)?;
    let out: Vec<Vec<Poly>> = kernel.into_iter().map(normalize).collect();
    if !out.iter().all(|c| verify_dependency(sym, c)) {
        return Err(Error::Internal("symbolic kernel vector failed replay".into()));
    }
    Ok(out)
}

/// Rank of a polynomial matrix over the fraction field of the polynomial
/// ring, with certificates on both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericRank {
    pub rank: usize,
    /// Point at which the matrix has this rank (lower-bound certificate);
    /// `None` when the rank came from symbolic elimination.
    pub point: Option<Vec<Rational>>,
    /// Independent dependencies among rows (or among columns when
    /// `transposed`), proving the rank cannot be larger.
    pub dependencies: Vec<Vec<Poly>>,
    pub transposed: bool,
}

impl GenericRank {
    pub fn is_full(&self, nrows: usize, ncols: usize) -> bool {
        self.rank == nrows.min(ncols)
    }
}

/// Certified generic rank of `sym` (`nrows x ncols` with entries in
/// `k[a_1..a_n]`).
pub fn generic_rank(
    sym: &[Vec<Poly>],
    ncols: usize,
    arity: usize,
    cfg: &Config,
    salt: u64,
) -> Result<GenericRank> {
    let nrows = sym.len();
    let full = nrows.min(ncols);
    if full == 0 {
        return Ok(GenericRank {
            rank: 0,
            point: None,
            dependencies: Vec::new(),
            transposed: false,
        });
    }
    let transposed = nrows > ncols;
    let oriented = if transposed {
        linalg::transpose(sym, ncols)
    } else {
        sym.to_vec()
    };
    let mut sampler = PointSampler::new(cfg.seed, salt, arity);
    let mut best = 0;
    'points: for _ in 0..cfg.witness_attempt_budget {
        let p = sampler.next_point();
        let numeric = linalg::eval_matrix(&oriented, &p)?;
        let width = oriented[0].len();
        let r = linalg::rank(numeric.clone(), width, &mut Budget::unlimited())?;
        if r == full {
            return Ok(GenericRank {
                rank: r,
                point: Some(p),
                dependencies: Vec::new(),
                transposed,
            });
        }
        if r < best {
            continue;
        }
        best = r;
        let mut budget = Budget::new(cfg.term_budget);
        let mut deps = Vec::new();
        for cand in candidates(&oriented, &numeric)? {
            if cand.support.len() - 1 > cfg.max_symbolic_det_size {
                continue 'points;
            }
            let coeffs = match materialize(&oriented, &cand, &mut budget) {
                Ok(c) => c,
                Err(Error::CapExceeded(_)) => continue 'points,
                Err(e) => return Err(e),
            };
            if !verify_dependency(&oriented, &coeffs) {
                continue 'points;
            }
            deps.push(coeffs);
        }
        return Ok(GenericRank {
            rank: r,
            point: Some(p),
            dependencies: deps,
            transposed,
        });
    }
    let mut budget = Budget::new(cfg.term_budget);
    let deps = symbolic_dependencies(&oriented, &mut budget)?;
    Ok(GenericRank {
        rank: oriented.len() - deps.len(),
        point: None,
        dependencies: deps,
        transposed,
    })
}

/// Determinant of a square numeric matrix.
pub fn numeric_det(m: Vec<Vec<Rational>>) -> Result<Rational> {
    linalg::determinant(m, Rational::from_integer(1.into()), &mut Budget::unlimited())
}
