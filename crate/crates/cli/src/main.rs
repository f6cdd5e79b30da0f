use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "gcliff", version, about = "Pauli and Clifford groups over finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Tableau,
    Dense,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Natural,
    Embedded,
}

#[derive(Args, Debug, Clone)]
pub struct Io {
    /// Group literal, e.g. "4,2".
    #[arg(long)]
    group: Option<String>,
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Output path; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Residue convention for written documents.
    #[arg(long, value_enum, default_value = "natural")]
    convention: ConventionArg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose a symplectic matrix or tableau into generator gates.
    Decompose {
        #[command(flatten)]
        io: Io,
        /// Recompose and compare, printing gate counts.
        #[arg(long)]
        verify: bool,
    },
    /// Run a circuit on one backend.
    Simulate {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "tableau")]
        backend: Backend,
        #[arg(long, default_value_t = 1024)]
        shots: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Print the exact branch table.
        #[arg(long)]
        branches: bool,
        #[arg(long, default_value_t = gclifford::sim::DEFAULT_DENSE_CAP)]
        dense_cap: usize,
    },
    /// Run the verification suite for a group.
    Verify {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = gclifford::sim::DEFAULT_DENSE_CAP)]
        dense_cap: usize,
        /// Also enumerate the counterexample subgroup when it applies.
        #[arg(long)]
        bfs: bool,
        #[arg(long, default_value_t = gclifford::protocols::BFS_DEFAULT_CAP)]
        bfs_cap: usize,
        /// Random samples per randomized check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Run a single protocol: cx, magic, triple, split.
        #[arg(long)]
        protocol: Option<String>,
        /// With --protocol, also write its circuit here.
        #[arg(long, value_name = "PATH")]
        circuit_out: Option<PathBuf>,
    },
    /// Certificate that CX and one-slot automorphisms miss part of Aut(G²) for G = Z_2 × Z_4.
    Counterexample {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        bfs: bool,
        #[arg(long, default_value_t = gclifford::protocols::BFS_DEFAULT_CAP)]
        bfs_cap: usize,
    },
    /// Divisibility-chain form of a group with the isomorphism.
    Canonicalize {
        #[command(flatten)]
        io: Io,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error[{}]: {}", e.kind(), e.message());
            ExitCode::from(e.code())
        }
    }
}
