//! Higher Hessians `Hess^(d) F = det(alpha_i alpha_j F)` over a basis of `A_d`.

use num_traits::Zero;

use crate::apolar::{self, Algebra, GradedBasis};
use crate::certify::{self, PointSampler};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::{self, Budget};
use crate::poly::{apply_diff, apply_monomial, DiffOp, Form, Poly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct HessianMatrix {
    pub d: usize,
    pub basis: GradedBasis,
    pub entries: Vec<Vec<Poly>>,
}

impl HessianMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        linalg::eval_matrix(&self.entries, point)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HessianStatus {
    NonzeroWithWitness {
        point: Vec<Rational>,
        value: Rational,
    },
    ZeroWithDependence {
        coeffs: Vec<Poly>,
        certified: bool,
    },
    SymbolicDet {
        det: Poly,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct HessianReport {
    pub d: usize,
    pub status: HessianStatus,
    pub basis_used: GradedBasis,
}

impl HessianReport {
    /// Whether the Hessian is certified to be identically zero.
    pub fn is_zero(&self) -> bool {
        match &self.status {
            HessianStatus::NonzeroWithWitness { .. } => false,
            HessianStatus::ZeroWithDependence { certified, .. } => *certified,
            HessianStatus::SymbolicDet { det } => det.is_zero(),
        }
    }

    /// Whether the Hessian is certified to be a nonzero polynomial.
    pub fn is_nonzero(&self) -> bool {
        match &self.status {
            HessianStatus::NonzeroWithWitness { value, .. } => !value.is_zero(),
            HessianStatus::ZeroWithDependence { .. } => false,
            HessianStatus::SymbolicDet { det } => !det.is_zero(),
        }
    }
}

fn check_hessian_degree(f: &Form, d: usize) -> Result<()> {
    let max = f.degree() as usize / 2;
    if d > max {
        return Err(Error::DegreeOutOfRange { d, max });
    }
    Ok(())
}

/// `(alpha_i alpha_j)(d/dx) F` for arbitrary operators `alpha_i`.
pub fn hessian_entries(f: &Form, ops: &[DiffOp]) -> Result<Vec<Vec<Poly>>> {
    let mut m = vec![vec![Poly::zero(f.arity()); ops.len()]; ops.len()];
    for i in 0..ops.len() {
        let left = apply_diff(&ops[i], f.poly())?;
        for j in i..ops.len() {
            let v = apply_diff(&ops[j], &left)?;
            m[j][i] = v.clone();
            m[i][j] = v;
        }
    }
    Ok(m)
}

fn monomial_entries(f: &Form, basis: &GradedBasis) -> Vec<Vec<Poly>> {
    let ms = &basis.monomials;
    let mut m = vec![vec![Poly::zero(f.arity()); ms.len()]; ms.len()];
    for i in 0..ms.len() {
        for j in i..ms.len() {
            let v = apply_monomial(&(&ms[i] + &ms[j]), f.poly());
            m[j][i] = v.clone();
            m[i][j] = v;
        }
    }
    m
}

/// The `d`-th Hessian matrix over `basis`; `d = 0` gives `[F]`.
pub fn hessian_matrix(f: &Form, d: usize, basis: &GradedBasis) -> Result<HessianMatrix> {
    check_hessian_degree(f, d)?;
    if basis.d != d {
        return Err(Error::BasisMismatch {
            d,
            reason: format!("basis is for degree {}", basis.d),
        });
    }
    if let Some(e) = basis.monomials.iter().find(|e| e.degree() as usize != d) {
        return Err(Error::BasisMismatch {
            d,
            reason: format!("monomial of degree {}", e.degree()),
        });
    }
    if basis.monomials.iter().any(|e| e.arity() != f.arity()) {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: basis.monomials[0].arity(),
        });
    }
    let cat = apolar::catalecticant(f, d)?;
    let rows: Vec<Vec<Rational>> = basis
        .monomials
        .iter()
        .map(|e| {
            let i = cat.row_monomials.iter().position(|r| r == e).expect("degree checked");
            cat.entries[i].clone()
        })
        .collect();
    let (rows, _) = linalg::clear_denominators(&rows);
    let independent = linalg::rank(rows, cat.ncols(), &mut Budget::unlimited())?;
    if independent != basis.len() || basis.len() != cat.rank() {
        return Err(Error::BasisMismatch {
            d,
            reason: "monomials do not form a basis of A_d".into(),
        });
    }
    Ok(HessianMatrix {
        d,
        basis: basis.clone(),
        entries: monomial_entries(f, basis),
    })
}

pub(crate) fn matrix_from_algebra(alg: &Algebra, d: usize) -> HessianMatrix {
    let basis = alg.basis(d).clone();
    HessianMatrix {
        d,
        entries: monomial_entries(alg.form(), &basis),
        basis,
    }
}

/// Exact symbolic determinant, expanded by memoized minors.
pub fn symbolic_det(m: &HessianMatrix, cfg: &Config) -> Result<Poly> {
    if m.size() > cfg.max_symbolic_det_size {
        return Err(Error::CapExceeded(format!(
            "Hessian of size {} exceeds the symbolic determinant cap {}",
            m.size(),
            cfg.max_symbolic_det_size
        )));
    }
    let arity = m.basis.monomials.first().map_or(0, |e| e.arity());
    let mut budget = Budget::new(cfg.term_budget);
    linalg::det_by_minors(&m.entries, Poly::one(arity), &mut budget)
}

/// `Hess^(d) F` over the canonical quotient basis.
pub fn hessian_det(f: &Form, d: usize, cfg: &Config) -> Result<Poly> {
    check_hessian_degree(f, d)?;
    let basis = apolar::quotient_basis(f, d)?;
    let m = HessianMatrix {
        d,
        entries: monomial_entries(f, &basis),
        basis,
    };
    let mut det = symbolic_det(&m, cfg)?;
    if m.size() == 0 {
        det = Poly::one(f.arity());
    }
    Ok(det)
}

/// Value of `Hess^(d) F` at `a`: entries are evaluated first, then the
/// numeric determinant is taken.
pub fn hessian_eval(f: &Form, d: usize, a: &[Rational]) -> Result<Rational> {
    check_hessian_degree(f, d)?;
    if a.len() != f.arity() {
        return Err(Error::DimensionMismatch {
            expected: f.arity(),
            found: a.len(),
        });
    }
    let basis = apolar::quotient_basis(f, d)?;
    let m = monomial_entries(f, &basis);
    certify::numeric_det(linalg::eval_matrix(&m, a)?)
}

/// Candidates tried per singular point before drawing the next point.
const CANDIDATES_PER_POINT: usize = 3;

/// Decides whether `Hess^(d) F` vanishes identically, with a certificate.
pub fn hessian_report(f: &Form, d: usize, cfg: &Config) -> Result<HessianReport> {
    check_hessian_degree(f, d)?;
    let alg = Algebra::new(f)?;
    report_for_matrix(&matrix_from_algebra(&alg, d), f.arity(), cfg)
}

/// Like [`hessian_report`] but always expands the full determinant.
pub fn hessian_report_symbolic(f: &Form, d: usize, cfg: &Config) -> Result<HessianReport> {
    check_hessian_degree(f, d)?;
    let alg = Algebra::new(f)?;
    let m = matrix_from_algebra(&alg, d);
    let det = symbolic_det(&m, cfg)?;
    Ok(HessianReport {
        d,
        status: HessianStatus::SymbolicDet { det },
        basis_used: m.basis,
    })
}

pub(crate) fn report_for_matrix(
    m: &HessianMatrix,
    arity: usize,
    cfg: &Config,
) -> Result<HessianReport> {
    let d = m.d;
    let done = |status| {
        Ok(HessianReport {
            d,
            status,
            basis_used: m.basis.clone(),
        })
    };
    if m.size() == 0 {
        return done(HessianStatus::SymbolicDet {
            det: Poly::one(arity),
        });
    }
    let mut sampler = PointSampler::new(cfg.seed, d as u64, arity);
    for _ in 0..cfg.witness_attempt_budget {
        let point = sampler.next_point();
        let numeric = m.eval(&point)?;
        let value = certify::numeric_det(numeric.clone())?;
        if !value.is_zero() {
            return done(HessianStatus::NonzeroWithWitness { point, value });
        }
        if let Some(coeffs) =
            certify::dependency_at_point(&m.entries, &numeric, cfg, CANDIDATES_PER_POINT)?
        {
            return done(HessianStatus::ZeroWithDependence {
                coeffs,
                certified: true,
            });
        }
    }
    // No witness and no small dependency: eliminate symbolically.
    let mut budget = Budget::new(cfg.term_budget);
    let det = linalg::determinant(m.entries.clone(), Poly::one(arity), &mut budget)?;
    if !det.is_zero() {
        return done(HessianStatus::SymbolicDet { det });
    }
    let deps = certify::symbolic_dependencies(&m.entries, &mut budget)?;
    let coeffs = deps
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("singular matrix without kernel".into()))?;
    done(HessianStatus::ZeroWithDependence {
        coeffs,
        certified: true,
    })
}
