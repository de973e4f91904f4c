use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use hesslab::catalog::{self, parse_rational, FamilySpec};
use hesslab::parse::{parse_input, validate_variables};
use hesslab::report::{self, Command, Input, Timings};
use hesslab::{Config, Error, OutputFormat, Result};

/// Lefschetz properties of Artinian Gorenstein algebras via higher Hessians.
#[derive(Parser, Debug)]
#[command(name = "hesslab", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for witness-point sampling.
    #[arg(long, global = true, env = "HESSLAB_SEED", default_value_t = 0)]
    seed: u64,

    /// Largest matrix whose determinant is expanded symbolically.
    #[arg(long, global = true, default_value_t = 14)]
    max_det_size: usize,

    /// Random points tried before symbolic fallback.
    #[arg(long, global = true, default_value_t = 1000)]
    witness_budget: usize,

    /// Polynomial terms allowed during one symbolic elimination.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    term_budget: u64,

    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Hilbert function of A.
    Hilbert(InputArgs),
    /// Higher Hessian of F with a certificate.
    Hessian {
        #[command(flatten)]
        input: InputArgs,
        /// Degree d; all d up to D/2 when omitted.
        #[arg(long)]
        d: Option<usize>,
        /// Expand the full determinant.
        #[arg(long)]
        symbolic: bool,
    },
    /// Strong Lefschetz property, with witness and locus.
    Slp(InputArgs),
    /// Weak Lefschetz property and generic ranks.
    Wlp(InputArgs),
    /// Whether a_1 X_1 + ... + a_n X_n is a strong Lefschetz element.
    Element {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated rationals a_1,...,a_n.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Defining polynomials of the non-Lefschetz locus.
    Locus(InputArgs),
    /// Print a catalog form.
    Catalog(InputArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Polynomial expression, e.g. "x^3+y^3+z^3-6*x*y*z".
    #[arg(allow_hyphen_values = true, conflicts_with_all = ["input", "family"])]
    expr: Option<String>,

    /// Declared variable order, e.g. x,y,z.
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,

    /// Read the expression from a UTF-8 file.
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,

    /// Catalog family name.
    #[arg(long)]
    family: Option<String>,

    /// Family parameter n.
    #[arg(long, requires = "family")]
    n: Option<String>,

    /// Family parameter s (rational).
    #[arg(long, requires = "family", allow_hyphen_values = true)]
    s: Option<String>,

    /// Monomial ordering for the stanley family.
    #[arg(long, requires = "family")]
    ordering: Option<String>,

    /// Extra family parameter as key=value.
    #[arg(long = "param", requires = "family", value_parser = parse_param)]
    params: Vec<(String, String)>,
}

fn parse_param(s: &str) -> std::result::Result<(String, String), String> {
    match s.split_once('=') {
        Some((k, v)) if !k.is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(format!("expected key=value, got {s:?}")),
    }
}

impl InputArgs {
    fn resolve(&self) -> Result<Input> {
        if let Some(name) = &self.family {
            if !self.vars.is_empty() {
                return Err(Error::InvalidParameter(
                    "--vars cannot be combined with --family".into(),
                ));
            }
            let mut spec = FamilySpec::new(name.clone());
            for (k, v) in &self.params {
                spec = spec.with(k.clone(), v.clone());
            }
            for (k, v) in [("n", &self.n), ("s", &self.s), ("ordering", &self.ordering)] {
                if let Some(v) = v {
                    spec = spec.with(k, v.clone());
                }
            }
            let built = catalog::build(&spec)?;
            return Ok(Input {
                variables: built.variables,
                form: built.form,
                family: Some(spec),
            });
        }
        let text = match (&self.expr, &self.input) {
            (Some(e), None) => e.clone(),
            (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidParameter(format!("cannot read {}: {e}", path.display()))
            })?,
            _ => {
                return Err(Error::InvalidParameter(
                    "give an expression, --input PATH or --family NAME".into(),
                ))
            }
        };
        if self.vars.is_empty() {
            return Err(Error::InvalidParameter(
                "--vars is required with an expression".into(),
            ));
        }
        let vars = validate_variables(&self.vars)?;
        let parsed = parse_input(&text, &vars)?;
        Ok(Input {
            variables: parsed.variables,
            form: parsed.form,
            family: None,
        })
    }
}

fn parse_point(text: &str) -> Result<Vec<hesslab::Rational>> {
    text.split(',').map(parse_rational).collect()
}

fn run(cli: &Cli) -> Result<String> {
    let cfg = Config {
        max_symbolic_det_size: cli.max_det_size,
        witness_attempt_budget: cli.witness_budget,
        term_budget: cli.term_budget,
        seed: cli.seed,
        output_format: if cli.json {
            OutputFormat::Json
        } else {
            OutputFormat::Human
        },
    };
    cfg.validate()?;
    let (input_args, command) = match &cli.command {
        Cmd::Hilbert(i) => (i, Command::Hilbert),
        Cmd::Hessian { input, d, symbolic } => (
            input,
            Command::Hessian {
                d: *d,
                symbolic: *symbolic,
            },
        ),
        Cmd::Slp(i) => (i, Command::Slp),
        Cmd::Wlp(i) => (i, Command::Wlp),
        Cmd::Element { input, point } => (
            input,
            Command::Element {
                point: parse_point(point)?,
            },
        ),
        Cmd::Locus(i) => (i, Command::Locus),
        Cmd::Catalog(i) => {
            if i.family.is_none() {
                return Err(Error::InvalidParameter("catalog needs --family".into()));
            }
            (i, Command::Catalog)
        }
    };
    let start = Instant::now();
    let input = input_args.resolve()?;
    let mut rep = report::run_command(&command, &input, &cfg)?;
    if cli.timings {
        rep.timings = Some(Timings {
            total_ms: start.elapsed().as_secs_f64() * 1000.0,
        });
    }
    Ok(match cfg.output_format {
        OutputFormat::Json => report::to_json(&rep),
        OutputFormat::Human => report::to_human(&rep),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
