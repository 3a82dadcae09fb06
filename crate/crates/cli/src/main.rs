use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lawrence_cli::{exit, run, CliError, Command, GraphKind, RunConfig};
use lawrence_core::{Convention, Limits};

#[derive(Parser)]
#[command(
    name = "lawrence",
    version,
    about = "Minimal free resolutions of unimodular Lawrence ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Write the result as JSON to this file.
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<PathBuf>,

    /// Resolve the quotient ring S/J (ring) or the ideal J (ideal).
    #[arg(long, global = true, value_enum, default_value = "ring")]
    convention: ConventionArg,

    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_covectors: usize,

    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_lattice_points: usize,

    /// Suppress the human-readable report.
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Ring,
    Ideal,
}

#[derive(Args)]
struct Input {
    /// Lattice file: `n m` matrix, `ker d n` matrix, or `graph d` edge list.
    file: PathBuf,

    /// For graph files: use the cycle lattice instead of the cut lattice.
    #[arg(long)]
    cographic: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Unimodularity tests and the class group.
    Check(Input),
    /// Circuits of the lattice.
    Circuits(Input),
    /// Minimal generators of the Lawrence ideal.
    Generators(Input),
    /// Minimal free resolution with verification report.
    Resolve(Input),
    /// Resolution of the initial ideal for a generic weight.
    Initial {
        #[command(flatten)]
        input: Input,
        /// 2n integers, x-weights then y-weights, separated by commas.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Fiber of x^a y^b and its resolution.
    Fiber {
        #[command(flatten)]
        input: Input,
        /// `a1,..,an/b1,..,bn`
        #[arg(long)]
        degree: String,
    },
    /// Graphic or cographic lattice of a directed graph, with circuit cross-checks.
    Graph {
        file: PathBuf,
        #[arg(
            long,
            conflicts_with = "cographic",
            required_unless_present = "cographic"
        )]
        graphic: bool,
        #[arg(long)]
        cographic: bool,
    },
    /// Ordered partition resolution of the complete graph K_d.
    Kd {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 7)]
        cap: usize,
    },
    /// Property suite on one lattice.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 25)]
        degrees: usize,
        #[arg(long, default_value_t = 3)]
        weights: usize,
        #[arg(long, default_value_t = 2)]
        max_entry: i64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn parse_list(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| CliError::Usage(format!("not an integer: {t:?}")))
        })
        .collect()
}

fn build(cli: Cli) -> Result<RunConfig, CliError> {
    let mut input = None;
    let mut kind = GraphKind::Graphic;
    let mut seed = 1;
    let mut kd_cap = 7;
    let mut take = |i: Input| {
        input = Some(i.file);
        if i.cographic {
            kind = GraphKind::Cographic;
        }
    };
    let command = match cli.command {
        Cmd::Check(i) => {
            take(i);
            Command::Check
        }
        Cmd::Circuits(i) => {
            take(i);
            Command::Circuits
        }
        Cmd::Generators(i) => {
            take(i);
            Command::Generators
        }
        Cmd::Resolve(i) => {
            take(i);
            Command::Resolve
        }
        Cmd::Initial { input: i, weight } => {
            take(i);
            Command::Initial {
                weight: parse_list(&weight)?,
            }
        }
        Cmd::Fiber { input: i, degree } => {
            take(i);
            let (a, b) = degree
                .split_once('/')
                .ok_or_else(|| CliError::Usage("--degree takes a1,..,an/b1,..,bn".into()))?;
            Command::Fiber {
                a: parse_list(a)?,
                b: parse_list(b)?,
            }
        }
        Cmd::Graph {
            file, cographic, ..
        } => {
            take(Input { file, cographic });
            Command::Graph
        }
        Cmd::Kd { d, cap } => {
            kd_cap = cap;
            Command::Kd { d }
        }
        Cmd::Verify {
            input: i,
            degrees,
            weights,
            max_entry,
            seed: s,
        } => {
            take(i);
            seed = s;
            Command::Verify {
                degrees,
                weights,
                max_entry,
            }
        }
    };
    if cli.max_covectors == 0 || cli.max_lattice_points == 0 {
        return Err(CliError::Usage("caps must be positive".into()));
    }
    Ok(RunConfig {
        command,
        input,
        graph_kind: kind,
        json: cli.json,
        convention: match cli.convention {
            ConventionArg::Ring => Convention::Ring,
            ConventionArg::Ideal => Convention::Ideal,
        },
        limits: Limits {
            max_covectors: cli.max_covectors,
            max_lattice_points: cli.max_lattice_points,
        },
        kd_cap,
        seed,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let quiet = cli.quiet;
    let result = build(cli).and_then(|cfg| run(&cfg));
    match result {
        Ok(out) => {
            if !quiet {
                print!("{}", out.report);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = e.code();
            debug_assert!(code != exit::OK);
            ExitCode::from(code as u8)
        }
    }
}
