//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use stern_core::roots::RootSetId;
use stern_core::ExactRational;

#[derive(Parser, Debug)]
#[command(name = "stern", version, about = "Stern polynomials: computations and exhaustive verifications")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficients of B_n.
    Poly {
        #[arg(value_parser = parse_big)]
        n: BigUint,
    },
    /// B_n(q) exactly, or modulo a prime.
    Eval {
        #[arg(value_parser = parse_big)]
        n: BigUint,
        #[arg(allow_hyphen_values = true)]
        q: ExactRational,
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Degree e(n) of B_n.
    Degree {
        #[arg(value_parser = parse_big)]
        n: BigUint,
    },
    /// Rational roots and the zero sets R_a.
    Roots {
        #[command(subcommand)]
        action: RootsCommand,
    },
    /// Exhaustive verifications.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// The automaton computing B_n(target) mod p.
    Automaton(AutomatonArgs),
    /// Reciprocal Stern polynomials.
    Reciprocal {
        #[command(subcommand)]
        action: ReciprocalCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum RootsCommand {
    /// Checks that every rational root of B_1..B_max is 0, -1, -1/2 or -1/3.
    Scan {
        #[arg(long, default_value_t = 1 << 20)]
        max: u64,
    },
    /// Members of R_a in [0, max].
    Members {
        #[arg(long, allow_hyphen_values = true)]
        set: RootSetId,
        #[arg(long, default_value_t = 1 << 10)]
        max: u64,
    },
    /// Exact densities #(R_a ∩ [0, 2^i)) / 2^i for i <= imax.
    Density {
        #[arg(long, allow_hyphen_values = true)]
        set: RootSetId,
        #[arg(long, default_value_t = 24)]
        imax: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Rational-root sweep (same as `roots scan`).
    Roots {
        #[command(subcommand)]
        action: VerifyRootsCommand,
    },
    /// b(2n+1) > max(|b(n)|, |b(n+1)|)/2 > 0 at t = -1/k.
    Ineq1 {
        /// Single k; default runs k = 4..=10.
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 100_000)]
        max: u64,
    },
    /// Divisibility, doubling and f*2^k +- m closure of R_{-1/2} and R_{-1/3}.
    Closure {
        #[arg(long, allow_hyphen_values = true)]
        set: Option<RootSetId>,
        #[arg(long, default_value_t = 1 << 20)]
        max: u64,
    },
    /// B(f*2^k +- n)(a) = -+ c * B(n)(a) for a in {-1/2, -1/3}.
    Scaling {
        #[arg(long, allow_hyphen_values = true)]
        set: Option<RootSetId>,
        #[arg(long, default_value_t = 4096)]
        max: u64,
        #[arg(long, default_value_t = 20)]
        kmax: u32,
    },
    /// B(15 + 5*2^m)(-1/2) = -5/32.
    Aperiodicity {
        #[arg(long, default_value_t = 4)]
        m_min: u32,
        #[arg(long, default_value_t = 20)]
        m_max: u32,
    },
    /// Exact zero densities against modular densities.
    Densities {
        #[arg(long, allow_hyphen_values = true)]
        set: Option<RootSetId>,
        #[arg(long, value_delimiter = ',', default_values_t = [7u64, 11, 13])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 24)]
        imax: u32,
    },
    /// Closed form and case split for e(n) = e(n+1).
    DegreesPair {
        #[arg(long, default_value_t = 1 << 20)]
        max: u64,
    },
    /// Closed form for e(n) = e(n+1) = e(n+2).
    DegreesTriple {
        #[arg(long, default_value_t = 1 << 20)]
        max: u64,
    },
    /// No four consecutive equal degrees.
    NoQuad {
        #[arg(long, default_value_t = 1 << 20)]
        max: u64,
    },
    /// Reciprocity and degrees of B_{2^k - u_m} and B_{2^k - v_m}.
    #[command(name = "reciprocal-families", visible_alias = "theorem6")]
    ReciprocalFamilies {
        #[arg(long, default_value_t = 3)]
        m_max: u32,
        #[arg(long, default_value_t = 80)]
        k_max: u32,
    },
    /// B_n(1) against the diatomic recurrence and B_n(2) = n.
    Oracles {
        #[arg(long, default_value_t = 1 << 16)]
        max: u64,
    },
    /// Every check of a profile.
    All {
        #[arg(long, value_enum, default_value_t = Profile::Desk)]
        profile: Profile,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyRootsCommand {
    Scan {
        #[arg(long, default_value_t = 1 << 20)]
        max: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Profile {
    /// Full bounds, a few minutes on a desktop.
    Desk,
    /// Reduced bounds for smoke tests.
    Quick,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("action").multiple(false))]
pub struct AutomatonArgs {
    /// Prime modulus, at least 5.
    #[arg(long)]
    pub p: u64,
    /// Rational point whose residue is t.
    #[arg(long, allow_hyphen_values = true)]
    pub target: ExactRational,
    /// Structure of the reachable component (the default action).
    #[arg(long, group = "action")]
    pub analyze: bool,
    /// Modular densities d(2^i, p) for i <= this value.
    #[arg(long, group = "action", value_name = "I")]
    pub density: Option<u32>,
    /// Cesàro average of d(2^i, p), i < TERMS, against Z/K.
    #[arg(long, group = "action", value_name = "TERMS")]
    pub density_average: Option<u32>,
    /// Cesàro average of the halved adjacency powers up to T.
    #[arg(long, group = "action", value_name = "T")]
    pub cesaro: Option<u32>,
    /// Search for an eventual period of the output sequence.
    #[arg(long, group = "action")]
    pub period_search: bool,
    /// Compare the automaton with direct evaluation for n <= MAX.
    #[arg(long, group = "action", value_name = "MAX")]
    pub check_run: Option<u64>,
    /// Export the reachable component.
    #[arg(long, group = "action", value_enum)]
    pub emit: Option<Emit>,
    #[arg(long, default_value_t = 1024)]
    pub preperiod: usize,
    #[arg(long, default_value_t = 1024)]
    pub period: usize,
    #[arg(long, default_value_t = 1 << 15)]
    pub prefix: usize,
    /// Tolerance (default 1e-3 for --cesaro, 1e-2 for --density-average).
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum ReciprocalCommand {
    /// Whether B_n is palindromic.
    Check {
        #[arg(value_parser = parse_big)]
        n: BigUint,
    },
    /// Exhaustive count of reciprocal indices in [1, max].
    Census {
        #[arg(long, default_value_t = 1 << 20)]
        max: u64,
        /// Include the member list.
        #[arg(long)]
        members: bool,
    },
}

fn parse_big(s: &str) -> Result<BigUint, String> {
    s.parse().map_err(|e| format!("{e}"))
}
