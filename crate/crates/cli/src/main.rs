//! `deepzero`: Wronskian deep-zero analysis from the command line.
//!
//! One binary, subcommand style. Function inputs come from JSON documents
//! (see `doc`), inner functions from their own JSON encoding (see
//! `innerio`). Every subcommand has a `--json` report mode with a stable
//! schema; sampling commands take explicit seeds so reports are
//! reproducible. Exit codes: 0 success, 1 usage error, 2 mathematical
//! precondition failure.
//!
//! The environment variable `DEEPZERO_PRECISION` (`double` | `extended`)
//! selects the numeric mode for evaluation and identity checks; `extended`
//! runs jets and determinants in double-double arithmetic.

mod doc;
mod error;
mod flags;
mod innerio;
mod run;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "deepzero",
    about = "Wronskian deep-zero analysis: exceptional sets, boundary decay, inner-function algebra",
    version
)]
pub struct Cli {
    /// Emit the full report as JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone)]
pub struct DocArgs {
    /// Path to the function-specification document (JSON).
    #[arg(long)]
    pub doc: String,
}

#[derive(Subcommand)]
pub enum Command {
    /// Evaluate a named function at a point.
    Eval {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long)]
        func: String,
        /// Point as `re,im`.
        #[arg(long)]
        at: String,
    },
    /// Derivatives f^(0)..f^(n) at a point, by exact jet arithmetic.
    Jet {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long)]
        func: String,
        #[arg(long)]
        at: String,
        #[arg(long)]
        order: usize,
    },
    /// Wronskian of a named family at a point.
    Wronskian {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long)]
        family: String,
        #[arg(long)]
        at: String,
        /// Include the full derivative matrix in the report.
        #[arg(long)]
        matrix: bool,
    },
    /// Solve the deep-zero coefficient system at a point.
    DeepZero {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long)]
        family: String,
        #[arg(long)]
        at: String,
        /// Relative smallest-singular-value threshold.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Locate the zero set of the family's Wronskian in a region.
    ExceptionalSet {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long)]
        family: String,
        /// Disk region `cre,cim,radius`.
        #[arg(long, conflicts_with = "rect")]
        disk: Option<String>,
        /// Rectangle region `x0,y0,x1,y1`.
        #[arg(long)]
        rect: Option<String>,
        /// Clip the search to `|z| <= rho`.
        #[arg(long)]
        clip: Option<f64>,
        #[arg(long, default_value_t = 24)]
        max_depth: usize,
        #[arg(long, default_value_t = 1e-6)]
        sep_tol: f64,
        #[arg(long, default_value_t = 32)]
        panels: usize,
    },
    /// Verify a Wronskian identity numerically over sampled points.
    IdentityCheck {
        /// monomials | expsum | powers | prepend-poly | replacement | cofactor
        #[arg(long)]
        variant: String,
        /// Exponents for `monomials`, e.g. `0,1,2`.
        #[arg(long)]
        exponents: Option<String>,
        /// Frequencies for `expsum`, e.g. `0,0;1,0;0,-1`.
        #[arg(long)]
        mu: Option<String>,
        /// Inline base function for `powers`/`prepend-poly`: `poly 1,1`.
        #[arg(long)]
        f: Option<String>,
        /// Family size minus one for `powers`/`prepend-poly`.
        #[arg(long)]
        n: Option<u32>,
        /// Document and family for `replacement`/`cofactor`.
        #[arg(long)]
        doc: Option<String>,
        #[arg(long)]
        family: Option<String>,
        /// Coefficients for `replacement`: `re,im;re,im;...`.
        #[arg(long)]
        lambda: Option<String>,
        /// Replaced column index.
        #[arg(long)]
        k: Option<usize>,
        /// Named function g for `cofactor`.
        #[arg(long)]
        g: Option<String>,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Sample radius.
        #[arg(long, default_value_t = 1.5)]
        radius: f64,
    },
    /// Fit the boundary decay order of a function on a Stolz angle or a
    /// level set.
    Decay {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long)]
        func: String,
        /// Stolz angle `vertex_arg_over_pi,aperture`.
        #[arg(long, conflicts_with_all = ["level_h", "eps"])]
        stolz: Option<String>,
        /// Named bounded function h for the level set `{|h| < eps}`.
        #[arg(long, requires = "eps")]
        level_h: Option<String>,
        #[arg(long)]
        eps: Option<f64>,
        /// Dyadic radius schedule `1 - 2^{-m}`, m in lo..=hi.
        #[arg(long, default_value_t = 4)]
        m_lo: u32,
        #[arg(long, default_value_t = 20)]
        m_hi: u32,
        /// Write the slice table as CSV (radius, sup_abs, fit residual).
        #[arg(long)]
        csv: Option<String>,
    },
    /// Grid estimate of the growth-class norm sup |f| (1-|z|)^beta.
    Korenblum {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long)]
        func: String,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 64)]
        radial: usize,
        #[arg(long, default_value_t = 128)]
        angular: usize,
        #[arg(long, default_value_t = 1.0 - 1e-6)]
        r_cap: f64,
    },
    /// Boundary log-distance integral of a boundary set.
    Carleson {
        /// Unimodular points as angles over pi, comma-separated.
        #[arg(long)]
        points: Option<String>,
        /// One arc `t0,t1` (angles over pi).
        #[arg(long)]
        arc: Option<String>,
        /// Dyadic generator truncation.
        #[arg(long)]
        dyadic: Option<u32>,
        #[arg(long, default_value_t = 128)]
        base_panels: usize,
        #[arg(long, default_value_t = 46)]
        grade_levels: u32,
    },
    /// Partial sums and tail of the zero-sequence summability condition.
    BlaschkeSum {
        /// Dyadic generator truncation (`|a_j| = 1 - 2^-j`).
        #[arg(long)]
        dyadic: Option<u32>,
        /// Harmonic generator truncation (`|a_j| = 1 - 1/j`).
        #[arg(long)]
        harmonic: Option<u32>,
        /// Finite list `re,im;re,im;...`.
        #[arg(long)]
        points: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Sample the sublevel set {|h| < eps} on a polar grid.
    Levelset {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long)]
        func: String,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 64)]
        radial: usize,
        #[arg(long, default_value_t = 128)]
        angular: usize,
        #[arg(long, default_value_t = 1.0 - 1e-6)]
        r_cap: f64,
        /// Write the cloud as CSV (re, im, abs_h).
        #[arg(long)]
        csv: Option<String>,
    },
    /// Randomized check of the ball-in-level-set containment.
    LevsetCheck {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long)]
        func: String,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Outer estimate of the boundary spectrum of an inner function.
    Spectrum {
        /// Inner spec: path or inline JSON.
        #[arg(long)]
        inner: String,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = 12)]
        resolution: u32,
    },
    /// Does the first inner function divide the second?
    InnerDivides {
        #[arg(long)]
        i1: String,
        #[arg(long)]
        i2: String,
    },
    /// Drop Blaschke zeros of multiplicity <= n.
    InnerTruncate {
        #[arg(long)]
        inner: String,
        #[arg(long)]
        n: u32,
    },
    /// The dominating inner function: multiplicities raised by n.
    #[command(name = "inner-J", alias = "inner-j")]
    InnerJ {
        #[arg(long)]
        inner: String,
        #[arg(long)]
        n: u32,
    },
}

/// Numeric mode from `DEEPZERO_PRECISION`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    Extended,
}

fn precision_from_env() -> Result<Precision, CliError> {
    match std::env::var("DEEPZERO_PRECISION") {
        Err(_) => Ok(Precision::Double),
        Ok(v) if v == "double" => Ok(Precision::Double),
        Ok(v) if v == "extended" => Ok(Precision::Extended),
        Ok(v) => Err(CliError::Usage(format!(
            "DEEPZERO_PRECISION must be 'double' or 'extended', got '{v}'"
        ))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let precision = match precision_from_env() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match run::dispatch(&cli, precision) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
