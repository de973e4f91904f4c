//! Graded pieces of `A = Q / Ann_Q(F)`.
//!
//! `A_d` is identified with the image of `Q_d` in `R_{D-d}` under
//! `phi -> phi(d/dx) F`. The catalecticant `Cat_d` is the matrix of that map
//! in monomial coordinates: its left kernel is `(Ann_Q F)_d` and its rank is
//! `dim A_d`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Budget, RowSpanSolver};
use crate::poly::{apply_monomial, monomials_of_degree, DiffOp, Exponent, Form, Poly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct CatalecticantMatrix {
    pub d: usize,
    pub row_monomials: Vec<Exponent>,
    pub col_monomials: Vec<Exponent>,
    pub entries: Vec<Vec<Rational>>,
}

impl CatalecticantMatrix {
    pub fn nrows(&self) -> usize {
        self.row_monomials.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_monomials.len()
    }

    pub fn rank(&self) -> usize {
        let (rows, _) = linalg::clear_denominators(&self.entries);
        linalg::rank(rows, self.ncols(), &mut Budget::unlimited())
            .expect("integer elimination cannot exceed an unlimited budget")
    }

    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        linalg::clear_denominators(&self.entries)
    }
}

/// Monomials of `Q_d` whose classes form a basis of `A_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub d: usize,
    pub monomials: Vec<Exponent>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn ops(&self) -> Vec<DiffOp> {
        self.monomials.iter().cloned().map(DiffOp::monomial).collect()
    }

    /// Monomials as text in the dual (upper-case) variables.
    pub fn labels(&self, names: &[String]) -> Vec<String> {
        self.monomials
            .iter()
            .map(|e| dual_monomial_text(e, names))
            .collect()
    }
}

/// `X^e` written with upper-cased variable names, `1` for the empty monomial.
pub fn dual_monomial_text(e: &Exponent, names: &[String]) -> String {
    let parts: Vec<String> = e
        .powers()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            let v = names[i].to_uppercase();
            if k == 1 {
                v
            } else {
                format!("{v}^{k}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HilbertFunction {
    pub dims: Vec<usize>,
}

impl HilbertFunction {
    pub fn socle_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn is_symmetric(&self) -> bool {
        self.dims.iter().eq(self.dims.iter().rev())
    }

    pub fn is_unimodal(&self) -> bool {
        let peak = self
            .dims
            .iter()
            .enumerate()
            .max_by_key(|(_, &v)| v)
            .map(|(i, _)| i)
            .unwrap_or(0);
        self.dims[..=peak].windows(2).all(|w| w[0] <= w[1])
            && self.dims[peak..].windows(2).all(|w| w[0] >= w[1])
    }
}

fn check_degree(f: &Form, d: usize) -> Result<()> {
    let max = f.degree() as usize;
    if d > max {
        return Err(Error::DegreeOutOfRange { d, max });
    }
    Ok(())
}

pub fn catalecticant(f: &Form, d: usize) -> Result<CatalecticantMatrix> {
    check_degree(f, d)?;
    let n = f.arity();
    let row_monomials = monomials_of_degree(n, d as u32);
    let col_monomials = monomials_of_degree(n, f.degree() - d as u32);
    let index: HashMap<&Exponent, usize> =
        col_monomials.iter().enumerate().map(|(j, e)| (e, j)).collect();
    let entries = row_monomials
        .iter()
        .map(|alpha| {
            let mut row = vec![Rational::zero(); col_monomials.len()];
            for (e, c) in apply_monomial(alpha, f.poly()).terms() {
                row[index[e]] = c.clone();
            }
            row
        })
        .collect();
    Ok(CatalecticantMatrix {
        d,
        row_monomials,
        col_monomials,
        entries,
    })
}

/// Basis of `(Ann_Q F)_d` with primitive integer coefficients.
pub fn ann_basis(f: &Form, d: usize) -> Result<Vec<DiffOp>> {
    let cat = catalecticant(f, d)?;
    let (rows, scales) = cat.integer_rows();
    let kernel = linalg::left_kernel(&rows, cat.ncols(), &BigInt::from(1), &mut Budget::unlimited())?;
    let n = f.arity();
    kernel
        .into_iter()
        .map(|v| {
            let terms = v
                .iter()
                .zip(&scales)
                .zip(&cat.row_monomials)
                .map(|((c, s), e)| (e.clone(), Rational::from_integer(c * s)));
            Ok(DiffOp::new(Poly::from_terms(n, terms)?.primitive()))
        })
        .collect()
}

/// Greedy grevlex pivot rows of `Cat_d`.
pub fn quotient_basis(f: &Form, d: usize) -> Result<GradedBasis> {
    let cat = catalecticant(f, d)?;
    basis_from(&cat)
}

fn basis_from(cat: &CatalecticantMatrix) -> Result<GradedBasis> {
    let (rows, _) = cat.integer_rows();
    let pivots = linalg::independent_rows(&rows, cat.ncols(), &mut Budget::unlimited())?;
    Ok(GradedBasis {
        d: cat.d,
        monomials: pivots.iter().map(|&i| cat.row_monomials[i].clone()).collect(),
    })
}

pub fn hilbert_function(f: &Form) -> Result<HilbertFunction> {
    let dims = (0..=f.degree() as usize)
        .map(|d| catalecticant(f, d).map(|c| c.rank()))
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertFunction { dims })
}

/// Checks that `A` is a Poincaré duality algebra: `dim A_D = 1` and every
/// pairing `A_d x A_{D-d} -> A_D` is nonsingular.
pub fn gorenstein_selfcheck(f: &Form) -> Result<bool> {
    Ok(Algebra::new(f)?.poincare_duality_holds())
}

/// One graded piece of `A`, with the data needed to express elements of
/// `R_{D-d}` in basis coordinates.
#[derive(Clone, Debug)]
pub struct Piece {
    pub basis: GradedBasis,
    /// `alpha(d/dx) F` for each basis monomial.
    pub images: Vec<Poly>,
    cols: HashMap<Exponent, usize>,
    ncols: usize,
    solver: RowSpanSolver,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// All graded pieces of `A = Q / Ann_Q(F)` for a fixed dual generator.
#[derive(Clone, Debug)]
pub struct Algebra {
    form: Form,
    pieces: Vec<Piece>,
}

impl Algebra {
    pub fn new(f: &Form) -> Result<Self> {
        let mut pieces = Vec::with_capacity(f.degree() as usize + 1);
        for d in 0..=f.degree() as usize {
            let cat = catalecticant(f, d)?;
            let basis = basis_from(&cat)?;
            let cols: HashMap<Exponent, usize> = cat
                .col_monomials
                .iter()
                .cloned()
                .enumerate()
                .map(|(j, e)| (e, j))
                .collect();
            let index: HashMap<&Exponent, usize> = cat
                .row_monomials
                .iter()
                .enumerate()
                .map(|(i, e)| (e, i))
                .collect();
            let rows: Vec<Vec<Rational>> = basis
                .monomials
                .iter()
                .map(|e| cat.entries[index[e]].clone())
                .collect();
            let images = basis
                .monomials
                .iter()
                .map(|e| apply_monomial(e, f.poly()))
                .collect();
            let solver = RowSpanSolver::new(rows, cat.ncols())?;
            pieces.push(Piece {
                basis,
                images,
                cols,
                ncols: cat.ncols(),
                solver,
            });
        }
        Ok(Algebra {
            form: f.clone(),
            pieces,
        })
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn socle_degree(&self) -> usize {
        self.form.degree() as usize
    }

    pub fn arity(&self) -> usize {
        self.form.arity()
    }

    pub fn piece(&self, d: usize) -> &Piece {
        &self.pieces[d]
    }

    pub fn basis(&self, d: usize) -> &GradedBasis {
        &self.pieces[d].basis
    }

    pub fn hilbert(&self) -> HilbertFunction {
        HilbertFunction {
            dims: self.pieces.iter().map(Piece::dim).collect(),
        }
    }

    /// Coordinates of the class whose image in `R_{D-d}` is `g`, in the basis
    /// of `A_d`.
    pub fn coordinates(&self, d: usize, g: &Poly) -> Result<Vec<Rational>> {
        let piece = &self.pieces[d];
        let mut v = vec![Rational::zero(); piece.ncols];
        for (e, c) in g.terms() {
            let j = piece.cols.get(e).ok_or_else(|| {
                Error::Internal(format!("element of wrong degree for A_{d}"))
            })?;
            v[*j] = c.clone();
        }
        piece
            .solver
            .solve(&v)
            .ok_or_else(|| Error::Internal(format!("element not in the image of A_{d}")))
    }

    /// Matrix of the pairing `A_d x A_{D-d} -> k`, `(b, c) -> (b c)(d/dx) F`.
    pub fn pairing_matrix(&self, d: usize) -> Vec<Vec<Rational>> {
        let top = self.socle_degree();
        let left = self.basis(d);
        let right = self.basis(top - d);
        let zero = Exponent::zero(self.arity());
        left.monomials
            .iter()
            .map(|b| {
                right
                    .monomials
                    .iter()
                    .map(|c| apply_monomial(&(b + c), self.form.poly()).coefficient(&zero))
                    .collect()
            })
            .collect()
    }

    pub fn poincare_duality_holds(&self) -> bool {
        let top = self.socle_degree();
        if self.pieces[top].dim() != 1 {
            return false;
        }
        (0..=top / 2).all(|d| {
            let m = self.pairing_matrix(d);
            if m.len() != self.pieces[top - d].dim() {
                return false;
            }
            let det = linalg::determinant(m, Rational::from_integer(1.into()), &mut Budget::unlimited());
            matches!(det, Ok(v) if !v.is_zero())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Poly};

    fn monomial_form(powers: &[u32]) -> Form {
        Form::new(Poly::monomial(Exponent::new(powers.to_vec()), rat(1))).unwrap()
    }

    fn fermat3(s: Rational) -> Form {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let p = &(&(&x.pow(3) + &y.pow(3)) + &z.pow(3)) - &(&(&x * &y) * &z).scale(&(s * rat(6)));
        Form::new(p).unwrap()
    }

    #[test]
    fn one_variable_square() {
        let f = monomial_form(&[2]);
        let cat = catalecticant(&f, 1).unwrap();
        assert_eq!(cat.entries, vec![vec![rat(2)]]);
    }

    #[test]
    fn xyz_first_catalecticant() {
        let f = monomial_form(&[1, 1, 1]);
        let cat = catalecticant(&f, 1).unwrap();
        assert_eq!((cat.nrows(), cat.ncols()), (3, 6));
        // X -> yz, Y -> xz, Z -> xy, each with coefficient 1
        for (i, row) in cat.entries.iter().enumerate() {
            let nz: Vec<usize> = (0..6).filter(|&j| !row[j].is_zero()).collect();
            assert_eq!(nz.len(), 1);
            assert_eq!(row[nz[0]], rat(1));
            let e = &cat.col_monomials[nz[0]];
            assert_eq!(e.powers()[i], 0);
            assert_eq!(e.degree(), 2);
        }
        assert_eq!(
            quotient_basis(&f, 1).unwrap().monomials,
            vec![
                Exponent::new(vec![1, 0, 0]),
                Exponent::new(vec![0, 1, 0]),
                Exponent::new(vec![0, 0, 1])
            ]
        );
    }

    #[test]
    fn xyz_annihilator_in_degree_two() {
        let f = monomial_form(&[1, 1, 1]);
        let ann = ann_basis(&f, 2).unwrap();
        assert_eq!(ann.len(), 3);
        for sq in [[2, 0, 0], [0, 2, 0], [0, 0, 2]] {
            let target = DiffOp::monomial(Exponent::new(sq.to_vec()));
            assert!(ann.contains(&target), "missing {sq:?}");
        }
    }

    #[test]
    fn pure_power() {
        let f = monomial_form(&[5]);
        assert!(ann_basis(&f, 1).unwrap().is_empty());
        assert_eq!(
            quotient_basis(&f, 5).unwrap().monomials,
            vec![Exponent::new(vec![5])]
        );
        assert_eq!(hilbert_function(&f).unwrap().dims, vec![1; 6]);
    }

    #[test]
    fn fermat_cubic() {
        let f = fermat3(rat(1));
        let ann = ann_basis(&f, 2).unwrap();
        assert_eq!(ann.len(), 3);
        for op in &ann {
            assert!(crate::poly::apply_diff(op, f.poly()).unwrap().is_zero());
        }
        assert_eq!(hilbert_function(&f).unwrap().dims, vec![1, 3, 3, 1]);
        assert!(gorenstein_selfcheck(&fermat3(rat(0))).unwrap());
    }

    #[test]
    fn degree_out_of_range() {
        let f = fermat3(rat(1));
        assert_eq!(
            catalecticant(&f, 4).unwrap_err(),
            Error::DegreeOutOfRange { d: 4, max: 3 }
        );
        assert!(ann_basis(&f, 9).is_err());
        assert!(quotient_basis(&f, 9).is_err());
    }

    #[test]
    fn unused_variables_add_linear_annihilators() {
        // x^3 in a ring with two variables: Y kills F
        let f = monomial_form(&[3, 0]);
        let ann = ann_basis(&f, 1).unwrap();
        assert_eq!(ann, vec![DiffOp::monomial(Exponent::new(vec![0, 1]))]);
        assert_eq!(hilbert_function(&f).unwrap().dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = fermat3(rat(2));
        let alg = Algebra::new(&f).unwrap();
        let piece = alg.piece(1);
        let g = &piece.images[0].scale(&rat(3)) - &piece.images[2];
        assert_eq!(alg.coordinates(1, &g).unwrap(), vec![rat(3), rat(0), rat(-1)]);
    }
}
