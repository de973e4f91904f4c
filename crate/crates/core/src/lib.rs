//! Artinian Gorenstein algebras `A = Q / Ann_Q(F)` from a homogeneous dual
//! generator `F`, and exact decision procedures for their strong and weak
//! Lefschetz properties via higher Hessians.

pub mod apolar;
pub mod catalog;
pub mod certify;
pub mod config;
pub mod error;
pub mod hessian;
pub mod lefschetz;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod report;

pub use apolar::{Algebra, GradedBasis, HilbertFunction};
pub use catalog::FamilySpec;
pub use config::{Config, OutputFormat};
pub use error::{Error, Result};
pub use hessian::{HessianReport, HessianStatus};
pub use lefschetz::{LefschetzReport, RankProfile};
pub use parse::{parse_poly, ParsedInput};
pub use poly::{DiffOp, Exponent, Form, Poly, Rational};
pub use report::{run_command, Command, Input, Report};
