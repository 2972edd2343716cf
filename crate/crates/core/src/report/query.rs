use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::exact_linalg::{parse_rational, Rational};
use crate::matrix_lie::{parse_family_size, ClassicalFamily};
use crate::orbit_theory::{Partition, SOOrbitLabel};
use crate::root_system::LieType;

const AFTER_HELP: &str = "\
Node indices are 1-based. Rationals print as \"num/den\".

Exit codes:
  0  success
  2  usage or input error
  3  result computed, but a certification flag is false";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "toledo",
    version,
    about = "Exact gradings, sl2-triples and Toledo invariants of semisimple Lie algebras",
    after_help = AFTER_HELP
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    output: OutputFormat,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Root-level grading data for any simple type, e.g. `grade B3 --labels 1,0,1`.
    Grade {
        lie_type: String,
        #[arg(long)]
        labels: String,
    },
    /// Toledo report at a generic point of g_1, e.g. `rank so7 --labels 1,0,1`.
    Rank {
        algebra: String,
        #[arg(long, conflicts_with = "theta", required_unless_present = "theta")]
        labels: Option<String>,
        /// Nodes labelled 0; every other node gets 1. May be empty.
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        genus: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Partition data for a classical nilpotent orbit, e.g. `orbit sl5 --partition 2,2,1`.
    Orbit {
        algebra: String,
        #[arg(long)]
        partition: String,
    },
    /// The (r1, r2) orbit in so(2p+q) graded by diag(Id_p, 0, -Id_p).
    SoOrbit {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r1: usize,
        #[arg(long)]
        r2: usize,
        #[arg(long)]
        genus: Option<i64>,
    },
    /// Rank reports for every nonzero 0/1 labelling up to a rank.
    Sweep {
        /// One of A, B, C, D, sl, so, sp.
        family: String,
        #[arg(long)]
        max_rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradingSel {
    Labels(Vec<i64>),
    /// 0-based nodes labelled 0.
    Theta(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFamily {
    A,
    B,
    C,
    D,
    /// Both B and D.
    So,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryKind {
    Grade { lie_type: LieType, labels: Vec<i64> },
    Rank { family: ClassicalFamily, n: usize, grading: GradingSel, genus: Option<i64>, lambda: Rational },
    Orbit { family: ClassicalFamily, n: usize, partition: Partition },
    SoOrbit { label: SOOrbitLabel, genus: Option<i64> },
    Sweep { family: SweepFamily, max_rank: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySpec {
    pub kind: QueryKind,
    pub seed: u64,
    pub output: OutputFormat,
}

#[derive(Debug)]
pub enum ParseError {
    /// Grammar error, or a help/version request.
    Cli(clap::Error),
    /// Well-formed command with invalid values.
    Invalid(Error),
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseError::Cli(e) => write!(f, "{e}"),
            ParseError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

fn int_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<T>().map_err(|_| Error::input(format!("bad {what} entry {x:?}")))).collect()
}

fn check_genus(g: Option<i64>) -> Result<Option<i64>> {
    match g {
        Some(g) if g < 2 => Err(Error::input(format!("genus must be at least 2, got {g}"))),
        other => Ok(other),
    }
}

/// Parses a full argument vector, program name included.
pub fn parse_query<I, T>(argv: I) -> std::result::Result<QuerySpec, ParseError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(ParseError::Cli)?;
    let kind = build_kind(cli.cmd).map_err(ParseError::Invalid)?;
    Ok(QuerySpec { kind, seed: cli.seed, output: cli.output })
}

fn build_kind(cmd: Cmd) -> Result<QueryKind> {
    Ok(match cmd {
        Cmd::Grade { lie_type, labels } => {
            QueryKind::Grade { lie_type: lie_type.parse()?, labels: int_list(&labels, "label")? }
        }
        Cmd::Rank { algebra, labels, theta, genus, lambda } => {
            let (family, n) = parse_family_size(&algebra)?;
            let grading = match (labels, theta) {
                (Some(l), None) => GradingSel::Labels(int_list(&l, "label")?),
                (None, Some(t)) => {
                    let nodes: Vec<usize> = int_list(&t, "theta")?;
                    if nodes.contains(&0) {
                        return Err(Error::input("theta nodes are 1-based"));
                    }
                    GradingSel::Theta(nodes.into_iter().map(|i| i - 1).collect())
                }
                _ => return Err(Error::input("give exactly one of --labels or --theta")),
            };
            let lambda = match lambda {
                Some(s) => parse_rational(&s)?,
                None => Rational::from_integer(0.into()),
            };
            QueryKind::Rank { family, n, grading, genus: check_genus(genus)?, lambda }
        }
        Cmd::Orbit { algebra, partition } => {
            let (family, n) = parse_family_size(&algebra)?;
            QueryKind::Orbit { family, n, partition: partition.parse()? }
        }
        Cmd::SoOrbit { p, q, r1, r2, genus } => {
            QueryKind::SoOrbit { label: SOOrbitLabel::new(p, q, r1, r2)?, genus: check_genus(genus)? }
        }
        Cmd::Sweep { family, max_rank } => {
            let family = match family.as_str() {
                "A" | "a" | "sl" => SweepFamily::A,
                "B" | "b" => SweepFamily::B,
                "C" | "c" | "sp" => SweepFamily::C,
                "D" | "d" => SweepFamily::D,
                "so" => SweepFamily::So,
                other => return Err(Error::input(format!("unknown sweep family {other:?}"))),
            };
            if max_rank == 0 {
                return Err(Error::input("max-rank must be positive"));
            }
            QueryKind::Sweep { family, max_rank }
        }
    })
}
