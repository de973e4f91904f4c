//! Subcommands and their reports.
//!
//! Every report serializes to the same JSON shape; keys that a command does
//! not compute are `null` (top-level verdicts) or absent (optional sections).
//! Rationals are strings such as `"3"` or `"-1/2"`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::apolar::Algebra;
use crate::catalog::FamilySpec;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::hessian::{self, HessianReport, HessianStatus};
use crate::lefschetz::{self, Locus, RankProfile};
use crate::poly::{Form, Poly, Rational};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Hilbert,
    /// `d = None` reports every `d` in `0..=D/2`.
    Hessian { d: Option<usize>, symbolic: bool },
    Slp,
    Wlp,
    Element { point: Vec<Rational> },
    Locus,
    Catalog,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Hilbert => "hilbert",
            Command::Hessian { .. } => "hessian",
            Command::Slp => "slp",
            Command::Wlp => "wlp",
            Command::Element { .. } => "element",
            Command::Locus => "locus",
            Command::Catalog => "catalog",
        }
    }
}

/// A form with its variable names and, when it came from the catalog, the
/// family it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct Input {
    pub variables: Vec<String>,
    pub form: Form,
    pub family: Option<FamilySpec>,
}

fn q(r: &Rational) -> String {
    r.to_string()
}

fn qs(v: &[Rational]) -> Vec<String> {
    v.iter().map(q).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyJson {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputJson {
    pub variables: Vec<String>,
    pub form: String,
    pub degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HessianJson {
    pub d: usize,
    pub size: usize,
    pub basis: Vec<String>,
    /// `"nonzero"`, `"zero"` or `"unknown"`.
    pub status: &'static str,
    /// `"witness"`, `"dependence"` or `"determinant"`.
    pub certificate: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dependence: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocusEntryJson {
    pub d: usize,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProportionalJson {
    pub d1: usize,
    pub d2: usize,
    /// `hess(d2) = factor * hess(d1)`.
    pub factor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocusJson {
    pub entries: Vec<LocusEntryJson>,
    pub zero_degrees: Vec<usize>,
    pub proportional: Vec<ProportionalJson>,
    /// Some pair of defining polynomials is proportional.
    pub collapsed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankProfileJson {
    pub map_ranks: Vec<usize>,
    pub map_full: Vec<bool>,
    pub power_ranks: Vec<usize>,
    pub power_bijective: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValueJson {
    pub d: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ElementJson {
    pub point: Vec<String>,
    pub is_lefschetz: bool,
    /// `F(a)` at `d = 0`, then `Hess^(d) F (a)`.
    pub values: Vec<ValueJson>,
    pub oracle_slp: bool,
    pub oracle_wlp: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub input: InputJson,
    pub hilbert: Vec<usize>,
    pub socle_degree: usize,
    pub slp: Option<bool>,
    pub wlp: Option<bool>,
    pub hessians: Vec<HessianJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locus: Option<LocusJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locus_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_profile: Option<RankProfileJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<ElementJson>,
    pub timings: Option<Timings>,
}

fn text(p: &Poly, names: &[String]) -> String {
    p.to_text(names)
}

fn hessian_json(r: &HessianReport, names: &[String]) -> HessianJson {
    let mut out = HessianJson {
        d: r.d,
        size: r.basis_used.len(),
        basis: r.basis_used.labels(names),
        status: if r.is_zero() {
            "zero"
        } else if r.is_nonzero() {
            "nonzero"
        } else {
            "unknown"
        },
        certificate: "",
        witness: None,
        value: None,
        dependence: None,
        certified: None,
        det: None,
    };
    match &r.status {
        HessianStatus::NonzeroWithWitness { point, value } => {
            out.certificate = "witness";
            out.witness = Some(qs(point));
            out.value = Some(q(value));
        }
        HessianStatus::ZeroWithDependence { coeffs, certified } => {
            out.certificate = "dependence";
            out.dependence = Some(coeffs.iter().map(|c| text(c, names)).collect());
            out.certified = Some(*certified);
        }
        HessianStatus::SymbolicDet { det } => {
            out.certificate = "determinant";
            out.det = Some(text(det, names));
        }
    }
    out
}

fn locus_json(l: &Locus, names: &[String]) -> LocusJson {
    LocusJson {
        entries: l
            .entries
            .iter()
            .map(|e| LocusEntryJson {
                d: e.d,
                poly: text(&e.poly, names),
            })
            .collect(),
        zero_degrees: l.zero_degrees.clone(),
        proportional: l
            .proportional
            .iter()
            .map(|(d1, d2, c)| ProportionalJson {
                d1: *d1,
                d2: *d2,
                factor: q(c),
            })
            .collect(),
        collapsed: !l.proportional.is_empty(),
    }
}

fn profile_json(p: &RankProfile) -> RankProfileJson {
    RankProfileJson {
        map_ranks: p.map_ranks.clone(),
        map_full: p.map_full.clone(),
        power_ranks: p.power_ranks.clone(),
        power_bijective: p.power_bijective.clone(),
    }
}

/// Runs one subcommand. The algebra is rebuilt and checked for Poincaré
/// duality first; a failure there is an internal error.
pub fn run_command(cmd: &Command, input: &Input, cfg: &Config) -> Result<Report> {
    cfg.validate()?;
    let names = &input.variables;
    if names.len() != input.form.arity() {
        return Err(Error::ArityMismatch {
            expected: input.form.arity(),
            found: names.len(),
        });
    }
    let f = &input.form;
    let alg = Algebra::new(f)?;
    if !alg.poincare_duality_holds() {
        return Err(Error::Internal(
            "constructed algebra fails Poincaré duality".into(),
        ));
    }
    let mut report = Report {
        schema: SCHEMA_VERSION,
        command: cmd.name(),
        input: InputJson {
            variables: names.clone(),
            form: text(f.poly(), names),
            degree: f.degree(),
            family: input.family.as_ref().map(|s| FamilyJson {
                name: s.name.clone(),
                params: s.params.clone(),
            }),
        },
        hilbert: alg.hilbert().dims,
        socle_degree: alg.socle_degree(),
        slp: None,
        wlp: None,
        hessians: Vec::new(),
        witness: None,
        locus: None,
        locus_note: None,
        rank_profile: None,
        element: None,
        timings: None,
    };
    match cmd {
        Command::Hilbert | Command::Catalog => {}
        Command::Hessian { d, symbolic } => {
            let ds: Vec<usize> = match d {
                Some(d) => vec![*d],
                None => (0..=alg.socle_degree() / 2).collect(),
            };
            for d in ds {
                let r = if *symbolic {
                    hessian::hessian_report_symbolic(f, d, cfg)?
                } else {
                    hessian::hessian_report(f, d, cfg)?
                };
                report.hessians.push(hessian_json(&r, names));
            }
        }
        Command::Slp => {
            let full = lefschetz::analyze(f, cfg)?;
            report.slp = Some(full.slp);
            report.wlp = Some(full.wlp);
            report.hessians = full
                .hessian_reports
                .iter()
                .map(|r| hessian_json(r, names))
                .collect();
            report.witness = full.witness.as_deref().map(qs);
            report.locus = full.locus.as_ref().map(|l| locus_json(l, names));
            report.locus_note = full.locus_note;
            report.rank_profile = Some(profile_json(&full.rank_profile));
        }
        Command::Wlp => {
            let w = lefschetz::has_wlp(f, cfg)?;
            report.wlp = Some(w.verdict);
            report.rank_profile = Some(profile_json(&w.profile));
        }
        Command::Element { point } => {
            let chk = lefschetz::element_check(f, point)?;
            let oracle = lefschetz::rank_oracle(f, point)?;
            if chk.is_lefschetz() != oracle.slp() {
                return Err(Error::Internal(
                    "Hessian criterion and multiplication ranks disagree".into(),
                ));
            }
            let mut values = vec![ValueJson {
                d: 0,
                value: q(&chk.form_value),
            }];
            values.extend(chk.hessian_values.iter().enumerate().map(|(i, v)| ValueJson {
                d: i + 1,
                value: q(v),
            }));
            report.element = Some(ElementJson {
                point: qs(point),
                is_lefschetz: chk.is_lefschetz(),
                values,
                oracle_slp: oracle.slp(),
                oracle_wlp: oracle.wlp(),
            });
            report.rank_profile = Some(profile_json(&oracle));
        }
        Command::Locus => {
            let l = lefschetz::lefschetz_locus(f, cfg)?;
            report.locus = Some(locus_json(&l, names));
        }
    }
    Ok(report)
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn verdict(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

/// Plain-text rendering of a report.
pub fn to_human(r: &Report) -> String {
    let mut s = String::new();
    let vars = r.input.variables.join(", ");
    let _ = writeln!(s, "F = {}  in ({vars})", r.input.form);
    if r.command == "catalog" {
        if let Some(fam) = &r.input.family {
            let params: Vec<String> = fam.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "family: {} {}", fam.name, params.join(" "));
        }
        let _ = writeln!(s, "degree: {}", r.input.degree);
    }
    let _ = writeln!(s, "hilbert function: ({})", list(&r.hilbert));
    let _ = writeln!(s, "socle degree: {}", r.socle_degree);
    for h in &r.hessians {
        let _ = write!(s, "Hess^({}) [{}x{}]: {}", h.d, h.size, h.size, h.status);
        match h.certificate {
            "witness" => {
                let _ = write!(
                    s,
                    ", value {} at ({})",
                    h.value.as_deref().unwrap_or(""),
                    list(h.witness.as_deref().unwrap_or(&[]))
                );
            }
            "dependence" => {
                let deps = h.dependence.as_deref().unwrap_or(&[]);
                let tag = if h.certified == Some(true) {
                    "certified row dependence"
                } else {
                    "row dependence"
                };
                let _ = write!(s, ", {tag} ({})", list(deps));
            }
            _ => {
                let _ = write!(s, ", det = {}", h.det.as_deref().unwrap_or(""));
            }
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "  basis: {}", list(&h.basis));
    }
    if let Some(v) = r.slp {
        let _ = writeln!(s, "strong Lefschetz: {}", verdict(v));
    }
    if let Some(v) = r.wlp {
        let _ = writeln!(s, "weak Lefschetz: {}", verdict(v));
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(s, "Lefschetz element coefficients: ({})", list(w));
    }
    if let Some(e) = &r.element {
        let _ = writeln!(s, "point: ({})", list(&e.point));
        for v in &e.values {
            if v.d == 0 {
                let _ = writeln!(s, "  F(a) = {}", v.value);
            } else {
                let _ = writeln!(s, "  Hess^({})(a) = {}", v.d, v.value);
            }
        }
        let _ = writeln!(s, "Lefschetz element: {}", verdict(e.is_lefschetz));
        let _ = writeln!(
            s,
            "multiplication maps: strong {}, weak {}",
            verdict(e.oracle_slp),
            verdict(e.oracle_wlp)
        );
    }
    if let Some(p) = &r.rank_profile {
        let _ = writeln!(s, "ranks of x L: ({})", list(&p.map_ranks));
        let _ = writeln!(s, "ranks of x L^(D-2i): ({})", list(&p.power_ranks));
    }
    if let Some(l) = &r.locus {
        let _ = writeln!(s, "non-Lefschetz locus:");
        for e in &l.entries {
            let _ = writeln!(s, "  d={}: {}", e.d, e.poly);
        }
        if !l.zero_degrees.is_empty() {
            let _ = writeln!(s, "  identically zero at d = {}", list(&l.zero_degrees));
        }
        for p in &l.proportional {
            let _ = writeln!(
                s,
                "  collapse: d={} is {} times d={}",
                p.d2, p.factor, p.d1
            );
        }
    }
    if let Some(n) = &r.locus_note {
        let _ = writeln!(s, "locus omitted: {n}");
    }
    if let Some(t) = &r.timings {
        let _ = writeln!(s, "time: {:.3} ms", t.total_ms);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, FamilySpec};

    fn family(spec: FamilySpec) -> Input {
        let b = catalog::build(&spec).unwrap();
        Input {
            variables: b.variables,
            form: b.form,
            family: Some(spec),
        }
    }

    #[test]
    fn collapse_report() {
        let input = family(FamilySpec::new("fermat").with("n", "3").with("s", "1/2"));
        let r = run_command(&Command::Slp, &input, &Config::default()).unwrap();
        assert_eq!(r.slp, Some(true));
        assert!(r.locus.as_ref().unwrap().collapsed);
        let json = to_json(&r);
        assert!(json.contains("\"schema\": \"1\""));
        assert!(json.contains("\"timings\": null"));
        assert_eq!(json, to_json(&run_command(&Command::Slp, &input, &Config::default()).unwrap()));
        assert!(to_human(&r).contains("collapse"));
    }

    #[test]
    fn element_agrees_with_oracle() {
        let input = family(FamilySpec::new("s3_coinvariant"));
        let point = vec![Rational::from_integer(1.into()); 3];
        let r = run_command(&Command::Element { point }, &input, &Config::default()).unwrap();
        let e = r.element.unwrap();
        assert!(!e.is_lefschetz);
        assert!(!e.oracle_slp);
    }

    #[test]
    fn zero_hessian_json() {
        let input = family(FamilySpec::new("wz_zero_hessian"));
        let cmd = Command::Hessian {
            d: Some(1),
            symbolic: false,
        };
        let r = run_command(&cmd, &input, &Config::default()).unwrap();
        assert_eq!(r.hessians[0].status, "zero");
        assert_eq!(r.hessians[0].certified, Some(true));
        assert_eq!(r.slp, None);
    }
}
