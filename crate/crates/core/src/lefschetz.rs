//! Strong and weak Lefschetz decisions for `A = Q / Ann_Q(F)`.
//!
//! `L = a_1 X_1 + ... + a_n X_n` is a strong Lefschetz element iff `F(a) != 0`
//! and `Hess^(d) F (a) != 0` for `1 <= d <= D/2`. The rank oracle checks the
//! same thing directly from multiplication matrices and never looks at a
//! Hessian.

use num_traits::Zero;

use crate::apolar::{Algebra, HilbertFunction};
use crate::certify::{self, GenericRank, PointSampler};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::hessian::{self, HessianMatrix, HessianReport};
use crate::linalg::{self, Budget};
use crate::poly::{power_apply, Form, Poly, Rational};

/// Ranks of `x L : A_i -> A_{i+1}` and `x L^(D-2i) : A_i -> A_{D-i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    /// `map_ranks[i]` for `0 <= i < D`.
    pub map_ranks: Vec<usize>,
    pub map_full: Vec<bool>,
    /// `power_ranks[i]` for `0 <= i <= D/2`.
    pub power_ranks: Vec<usize>,
    pub power_bijective: Vec<bool>,
}

impl RankProfile {
    /// Every power map is bijective (strong Lefschetz in the narrow sense).
    pub fn slp(&self) -> bool {
        self.power_bijective.iter().all(|&b| b)
    }

    /// Every degree-one map has full rank.
    pub fn wlp(&self) -> bool {
        self.map_full.iter().all(|&b| b)
    }
}

fn check_point(f: &Form, a: &[Rational]) -> Result<()> {
    if a.len() != f.arity() {
        return Err(Error::DimensionMismatch {
            expected: f.arity(),
            found: a.len(),
        });
    }
    Ok(())
}

/// `F(a)` and `Hess^(d) F (a)` for `d = 1..=D/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementCheck {
    pub form_value: Rational,
    pub hessian_values: Vec<Rational>,
}

impl ElementCheck {
    pub fn is_lefschetz(&self) -> bool {
        !self.form_value.is_zero() && self.hessian_values.iter().all(|v| !v.is_zero())
    }
}

pub fn element_check(f: &Form, a: &[Rational]) -> Result<ElementCheck> {
    check_point(f, a)?;
    let alg = Algebra::new(f)?;
    let mut hessian_values = Vec::new();
    for d in 1..=alg.socle_degree() / 2 {
        let m = hessian::matrix_from_algebra(&alg, d);
        hessian_values.push(certify::numeric_det(m.eval(a)?)?);
    }
    Ok(ElementCheck {
        form_value: f.poly().eval(a)?,
        hessian_values,
    })
}

pub fn is_lefschetz_element(f: &Form, a: &[Rational]) -> Result<bool> {
    Ok(element_check(f, a)?.is_lefschetz())
}

/// Multiplication maps by `L = sum a_i X_i` in quotient-basis coordinates.
pub fn rank_oracle(f: &Form, a: &[Rational]) -> Result<RankProfile> {
    check_point(f, a)?;
    let alg = Algebra::new(f)?;
    let top = alg.socle_degree();
    let hilb = alg.hilbert();
    let mut budget = Budget::unlimited();

    let mut map_ranks = Vec::with_capacity(top);
    let mut map_full = Vec::with_capacity(top);
    for i in 0..top {
        let rows = alg
            .piece(i)
            .images
            .iter()
            .map(|g| alg.coordinates(i + 1, &power_apply(a, 1, g)?))
            .collect::<Result<Vec<_>>>()?;
        let r = linalg::rank(rows, hilb.dims[i + 1], &mut budget)?;
        map_ranks.push(r);
        map_full.push(r == hilb.dims[i].min(hilb.dims[i + 1]));
    }

    let mut power_ranks = Vec::with_capacity(top / 2 + 1);
    let mut power_bijective = Vec::with_capacity(top / 2 + 1);
    for i in 0..=top / 2 {
        let e = (top - 2 * i) as u32;
        let rows = alg
            .piece(i)
            .images
            .iter()
            .map(|g| alg.coordinates(top - i, &power_apply(a, e, g)?))
            .collect::<Result<Vec<_>>>()?;
        let r = linalg::rank(rows, hilb.dims[top - i], &mut budget)?;
        power_ranks.push(r);
        power_bijective.push(r == hilb.dims[i] && r == hilb.dims[top - i]);
    }

    Ok(RankProfile {
        map_ranks,
        map_full,
        power_ranks,
        power_bijective,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlpOutcome {
    pub verdict: bool,
    /// One report per `d = 0..=D/2`, or up to the first zero Hessian.
    pub reports: Vec<HessianReport>,
    /// A point where `F` and every Hessian are nonzero, when `verdict`.
    pub witness: Option<Vec<Rational>>,
    pub first_zero: Option<usize>,
}

/// Salt for the simultaneous witness search in [`has_slp`].
const SLP_WITNESS_SALT: u64 = 0x5157;

pub fn has_slp(f: &Form, cfg: &Config) -> Result<SlpOutcome> {
    let alg = Algebra::new(f)?;
    slp_for(&alg, cfg)
}

fn slp_for(alg: &Algebra, cfg: &Config) -> Result<SlpOutcome> {
    let top = alg.socle_degree();
    let matrices: Vec<HessianMatrix> = (0..=top / 2)
        .map(|d| hessian::matrix_from_algebra(alg, d))
        .collect();
    let mut reports = Vec::with_capacity(matrices.len());
    for m in &matrices {
        let r = hessian::report_for_matrix(m, alg.arity(), cfg)?;
        let zero = r.is_zero();
        reports.push(r);
        if zero {
            return Ok(SlpOutcome {
                verdict: false,
                reports,
                witness: None,
                first_zero: Some(m.d),
            });
        }
    }
    let mut sampler = PointSampler::new(cfg.seed, SLP_WITNESS_SALT, alg.arity());
    for _ in 0..cfg.witness_attempt_budget {
        let p = sampler.next_point();
        let mut all = true;
        for m in &matrices {
            if certify::numeric_det(m.eval(&p)?)?.is_zero() {
                all = false;
                break;
            }
        }
        if all {
            return Ok(SlpOutcome {
                verdict: true,
                reports,
                witness: Some(p),
                first_zero: None,
            });
        }
    }
    Err(Error::CapExceeded(format!(
        "no simultaneous Lefschetz witness among {} points",
        cfg.witness_attempt_budget
    )))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WlpOutcome {
    pub verdict: bool,
    /// Generic ranks over the field of rational functions in `a`.
    pub profile: RankProfile,
    /// Certificates for each `map_ranks[i]`.
    pub map_certificates: Vec<GenericRank>,
}

/// Salt bases for the generic-rank searches in [`has_wlp`].
const MAP_SALT: u64 = 0x1000;
const POWER_SALT: u64 = 0x2000;

/// Matrix of `x L : A_i -> A_{i+1}` with `L = sum a_j X_j`, entries linear
/// forms in the indeterminates `a`.
pub fn multiplication_matrix(alg: &Algebra, i: usize) -> Result<Vec<Vec<Poly>>> {
    let n = alg.arity();
    let width = alg.piece(i + 1).dim();
    alg.piece(i)
        .images
        .iter()
        .map(|g| {
            let mut row = vec![Poly::zero(n); width];
            for j in 0..n {
                let c = alg.coordinates(i + 1, &g.partial(j))?;
                let aj = Poly::var(n, j);
                for (slot, v) in row.iter_mut().zip(c) {
                    if !v.is_zero() {
                        *slot = &*slot + &aj.scale(&v);
                    }
                }
            }
            Ok(row)
        })
        .collect()
}

pub fn has_wlp(f: &Form, cfg: &Config) -> Result<WlpOutcome> {
    let alg = Algebra::new(f)?;
    wlp_for(&alg, cfg)
}

fn wlp_for(alg: &Algebra, cfg: &Config) -> Result<WlpOutcome> {
    let top = alg.socle_degree();
    let n = alg.arity();
    let hilb = alg.hilbert();
    let mut map_ranks = Vec::with_capacity(top);
    let mut map_full = Vec::with_capacity(top);
    let mut map_certificates = Vec::with_capacity(top);
    for i in 0..top {
        let m = multiplication_matrix(alg, i)?;
        let g = certify::generic_rank(&m, hilb.dims[i + 1], n, cfg, MAP_SALT + i as u64)?;
        map_full.push(g.is_full(hilb.dims[i], hilb.dims[i + 1]));
        map_ranks.push(g.rank);
        map_certificates.push(g);
    }
    // The pairing identifies x L^(D-2i) : A_i -> A_{D-i} with (D-2i)! times
    // the i-th Hessian matrix at a, so their generic ranks agree.
    let mut power_ranks = Vec::with_capacity(top / 2 + 1);
    let mut power_bijective = Vec::with_capacity(top / 2 + 1);
    for i in 0..=top / 2 {
        let h = hessian::matrix_from_algebra(alg, i);
        let g = certify::generic_rank(&h.entries, h.size(), n, cfg, POWER_SALT + i as u64)?;
        power_bijective.push(g.rank == hilb.dims[i]);
        power_ranks.push(g.rank);
    }
    let profile = RankProfile {
        map_ranks,
        map_full,
        power_ranks,
        power_bijective,
    };
    Ok(WlpOutcome {
        verdict: profile.wlp(),
        profile,
        map_certificates,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocusEntry {
    pub d: usize,
    pub poly: Poly,
}

/// Defining polynomials of the non-Lefschetz set: `F` and the nonzero
/// higher Hessians. Zero Hessians are listed separately.
#[derive(Clone, Debug, PartialEq)]
pub struct Locus {
    pub entries: Vec<LocusEntry>,
    pub zero_degrees: Vec<usize>,
    /// Pairs `(d1, d2, c)` with `entry(d2) = c * entry(d1)`.
    pub proportional: Vec<(usize, usize, Rational)>,
}

pub fn lefschetz_locus(f: &Form, cfg: &Config) -> Result<Locus> {
    let alg = Algebra::new(f)?;
    let top = alg.socle_degree();
    let reports = (0..=top / 2)
        .map(|d| hessian::report_for_matrix(&hessian::matrix_from_algebra(&alg, d), alg.arity(), cfg))
        .collect::<Result<Vec<_>>>()?;
    locus_for(&alg, &reports, cfg)
}

fn locus_for(alg: &Algebra, reports: &[HessianReport], cfg: &Config) -> Result<Locus> {
    let mut entries = Vec::new();
    let mut zero_degrees = Vec::new();
    for d in 0..=alg.socle_degree() / 2 {
        if reports.get(d).is_some_and(HessianReport::is_zero) {
            zero_degrees.push(d);
            continue;
        }
        let poly = if d == 0 {
            alg.form().poly().clone()
        } else {
            hessian::symbolic_det(&hessian::matrix_from_algebra(alg, d), cfg)?
        };
        if poly.is_zero() {
            zero_degrees.push(d);
        } else {
            entries.push(LocusEntry { d, poly });
        }
    }
    let mut proportional = Vec::new();
    for (i, a) in entries.iter().enumerate() {
        for b in &entries[i + 1..] {
            if let Some(c) = b.poly.ratio_to(&a.poly) {
                proportional.push((a.d, b.d, c));
            }
        }
    }
    Ok(Locus {
        entries,
        zero_degrees,
        proportional,
    })
}

/// Everything known about the Lefschetz properties of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct LefschetzReport {
    pub hilbert: HilbertFunction,
    pub socle_degree: usize,
    pub slp: bool,
    pub wlp: bool,
    pub hessian_reports: Vec<HessianReport>,
    pub witness: Option<Vec<Rational>>,
    pub rank_profile: RankProfile,
    pub locus: Option<Locus>,
    /// Why the locus is absent, when it is.
    pub locus_note: Option<String>,
}

/// Builds `A`, checks Poincaré duality, and decides SLP and WLP. The locus is
/// included when every nonzero Hessian is within the symbolic caps.
pub fn analyze(f: &Form, cfg: &Config) -> Result<LefschetzReport> {
    let alg = Algebra::new(f)?;
    if !alg.poincare_duality_holds() {
        return Err(Error::Internal(
            "constructed algebra fails Poincaré duality".into(),
        ));
    }
    let hilbert = alg.hilbert();
    let slp = slp_for(&alg, cfg)?;
    let wlp = wlp_for(&alg, cfg)?;
    if slp.verdict && !wlp.verdict {
        return Err(Error::Internal("SLP holds but WLP does not".into()));
    }
    let (locus, locus_note) = match locus_for(&alg, &slp.reports, cfg) {
        Ok(l) => (Some(l), None),
        Err(Error::CapExceeded(msg)) => (None, Some(msg)),
        Err(e) => return Err(e),
    };
    Ok(LefschetzReport {
        socle_degree: alg.socle_degree(),
        hilbert,
        slp: slp.verdict,
        wlp: wlp.verdict,
        hessian_reports: slp.reports,
        witness: slp.witness,
        rank_profile: wlp.profile,
        locus,
        locus_note,
    })
}
