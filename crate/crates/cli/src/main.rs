//! `springer`: command-line front end for springer-core.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use springer_core::partitions::Partition;
use springer_core::varieties::DEFAULT_BUDGET;

use crate::output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "springer",
    version,
    about = "Generalized Springer series, split unipotent elements and Y0 tables for Spin_N and SL_n",
    long_about = "Generalized Springer series, split unipotent elements and Y0 tables for Spin_N and SL_n.\n\n\
Exit status: 0 on success, 1 when a verification fails (the report is still written), 2 on a usage error.\n\
TSV output is tab separated with a header row and no quoting. JSON output has sorted keys.\n\
Finite-field elements are printed as integer indices (the base-p digits of the polynomial coefficients)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Cap on enumerated candidates (subspaces, centralizer elements).
    #[arg(long, global = true, env = "SPRINGER_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Spin,
    Sl,
    So,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the generalized Springer series (cuspidal data).
    ///
    /// Spin: one row per d with d = N mod 4 and d(2d-1) <= N, giving the Levi type
    /// and the rank of the relative Weyl group of type B. SL (non-split Frobenius
    /// over F_q): one row per divisor d of the p'-part of n, flagging whether the
    /// central character of order d is F-stable.
    Series(SeriesArgs),
    /// List X_N (or the orthogonal Jordan types with --tilde) as JSON part lists.
    ///
    /// X_N: partitions of N whose even parts have even multiplicity and whose odd
    /// parts occur at most once.
    Xn(XnArgs),
    /// Build the split unipotent element of a class and run its checklist.
    ///
    /// SL: Jordan-form u with an invariant Hermitian form over F_{q^2}, the
    /// component group Z/n'_lambda and tau(a) = -q a. Spin: the split orthogonal form
    /// and shift nilpotent, plus (for lambda in X_N) the Clifford generators x_j, their
    /// squares and their Frobenius signs. Exits 1 if any check fails.
    Split(SplitArgs),
    /// Enumerate flag varieties with strata, orbits and F-stability.
    ///
    /// SL: flags W in W' of dims (d, n-d) over F_{q^2}, x|_W and x|_{V/W'} regular,
    /// x|_{W'/W} of type lambda'. Columns give the Jordan types, the orbit of the
    /// centralizer units and whether the flag is fixed by the unitary Frobenius.
    /// SO: x-stable totally isotropic planes E over F_q with x|_E nonzero and
    /// x|_{E^perp/E} of type lambda'.
    Flags(FlagsArgs),
    /// Two-step branching table for S_{n/d} against the case table 1, 1, 2, 0.
    ///
    /// One row per pair (lambda, lambda') with d dividing every part. With --q the
    /// number of nonempty strata of the SL flag variety over F_q is added.
    Restrict(RestrictArgs),
    /// Emit the characteristic-function tables Y0 with exponents a0 and r.
    ///
    /// SL with non-split Frobenius (--xi-order d): one row per lambda with d dividing
    /// every part. Spin with split Frobenius: rows for the local systems with
    /// xi(epsilon) = -1 that tau fixes. Non-F-stable central characters are refused.
    Tables(TablesArgs),
    /// Run verification suites; exits 1 if any check fails.
    ///
    /// Suites: xn, spin-series, clifford, center, orthonormal, characters, split,
    /// flags, restriction, tables (or all).
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub group: Group,
    /// Dimension N of the spin group.
    #[arg(long = "N", required_if_eq("group", "spin"))]
    pub big_n: Option<u32>,
    /// Rank parameter n of SL_n.
    #[arg(long = "n", required_if_eq("group", "sl"))]
    pub n: Option<u32>,
    /// Field size (SL only).
    #[arg(long, required_if_eq("group", "sl"))]
    pub q: Option<u32>,
}

#[derive(Args, Debug)]
pub struct XnArgs {
    #[arg(long = "N")]
    pub big_n: u32,
    /// List all orthogonal Jordan types (even parts with even multiplicity).
    #[arg(long)]
    pub tilde: bool,
}

#[derive(Args, Debug)]
pub struct SplitArgs {
    #[arg(long, value_enum)]
    pub group: Group,
    /// Parts, comma separated in any order.
    #[arg(long, value_parser = parse_partition)]
    pub lambda: Partition,
    #[arg(long)]
    pub q: u32,
    /// Signs a_k of the Hermitian blocks (SL only), comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub signs: Option<Vec<i32>>,
}

#[derive(Args, Debug)]
pub struct FlagsArgs {
    #[arg(long, value_enum)]
    pub group: Group,
    #[arg(long, value_parser = parse_partition)]
    pub lambda: Partition,
    /// Jordan type of the middle quotient; all candidates when omitted.
    #[arg(long = "lambda-p", value_parser = parse_partition)]
    pub lambda_p: Option<Partition>,
    /// dim W (SL only).
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long)]
    pub q: u32,
    /// Skip the centralizer orbit computation.
    #[arg(long)]
    pub no_orbits: bool,
}

#[derive(Args, Debug)]
pub struct RestrictArgs {
    #[arg(long = "n")]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
    /// Also count strata of the SL flag variety over F_q.
    #[arg(long)]
    pub q: Option<u32>,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[arg(long, value_enum)]
    pub group: Group,
    #[arg(long = "n", required_if_eq("group", "sl"))]
    pub n: Option<u32>,
    #[arg(long = "N", required_if_eq("group", "spin"))]
    pub big_n: Option<u32>,
    #[arg(long)]
    pub q: u32,
    /// Order of the central character (SL).
    #[arg(long = "xi-order", required_if_eq("group", "sl"))]
    pub xi_order: Option<u32>,
    /// Restrict to the spin series of this defect.
    #[arg(long, allow_negative_numbers = true)]
    pub series: Option<i32>,
    /// Use the non-split Frobenius (spin); such tables are refused.
    #[arg(long)]
    pub non_split: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name or "all".
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Largest N for the spin-series suite.
    #[arg(long = "N-max", default_value_t = 20)]
    pub n_max: u32,
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(e) => {
            eprintln!("springer: {e}");
            ExitCode::from(2)
        }
    }
}
