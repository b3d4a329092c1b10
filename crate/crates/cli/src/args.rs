//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcount_core::quadrics::QuadricKind;
use mcount_core::zeta::NamedSpace;
use mcount_core::Partition;

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(name = "mcount", version, about = "Point counts of moduli of genus four curves over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for the enumeration engines.
    #[arg(long, global = true, env = "MCOUNT_THREADS")]
    pub threads: Option<usize>,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact point-count tables.
    Tables(TablesArgs),
    /// Compare enumerated sieve terms with the tabulated polynomials.
    VerifySieve(SieveArgs),
    /// Run the hyperelliptic census and compare with the closed forms.
    VerifyHyperelliptic(HyperellipticArgs),
    /// Signed counts of 4-point sets on the split quadric.
    VerifyQuadruples(QuadrupleArgs),
    /// Frobenius traces on the Euler characteristics of local systems on M_4.
    LocalSystems,
    /// Run every acceptance check.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Space {
    /// Compactifications of M_{4,n}.
    Closed,
    /// M_{4,n}.
    Open,
    /// Truncated counts of M_{4,n} before duality completion.
    Approx,
    /// Boundaries of the compactifications.
    Boundary,
    /// Hyperelliptic loci H_{g,n}.
    Hyperelliptic,
    /// Schur-basis counts of the compactifications, n = 2, 3.
    EquivariantClosed,
    /// Schur-basis counts of M_{4,n}, n = 2, 3.
    EquivariantOpen,
    /// Poincaré polynomials of the compactifications.
    Betti,
    /// Inverse zeta coefficients of the building-block spaces.
    Zeta,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long, value_enum, default_value_t = Space::Closed)]
    pub space: Space,
    /// Number of marked points (all of 0..=3 when omitted).
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=3))]
    pub n: Option<u32>,
    /// Frobenius twist as a comma-separated partition, e.g. 2,1.
    #[arg(long, value_parser = parse_partition)]
    pub twist: Option<Partition>,
    /// Genus for the hyperelliptic tables.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..=20))]
    pub genus: u32,
    /// Space for the zeta tables (all named spaces when omitted).
    #[arg(long, value_parser = parse_space)]
    pub name: Option<NamedSpace>,
    /// Largest coefficient index for the zeta tables.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(0..=24))]
    pub d: u32,
}

#[derive(Debug, Args)]
pub struct SieveArgs {
    /// Quadric family (all three when omitted).
    #[arg(long, value_parser = parse_kind)]
    pub surface: Option<QuadricKind>,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Number of rational marked points (all of 0..=3 when omitted).
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=3))]
    pub marked: Option<u32>,
    /// Frobenius twist of the marked points.
    #[arg(long, value_parser = parse_partition)]
    pub twist: Option<Partition>,
    /// Sieve degree (all of 0..=3 when omitted).
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=3))]
    pub d: Option<u32>,
}

#[derive(Debug, Args)]
pub struct HyperellipticArgs {
    /// Odd prime power.
    #[arg(long, default_value_t = 3)]
    pub q: u32,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=8))]
    pub genus: u32,
    /// Largest extension degree used for the twisted counts.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=3))]
    pub extension: u32,
}

#[derive(Debug, Args)]
pub struct QuadrupleArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

fn parse_kind(s: &str) -> Result<QuadricKind, String> {
    s.parse::<QuadricKind>().map_err(|e| e.to_string())
}

fn parse_space(s: &str) -> Result<NamedSpace, String> {
    s.parse::<NamedSpace>().map_err(|e| e.to_string())
}
