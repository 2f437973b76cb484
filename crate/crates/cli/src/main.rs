use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

use commands::Failure;

/// Explore generalized Calkin-Wilf trees and forests.
///
/// Every vertex w of the (u,v) tree has left child w/(uw+1) and right child
/// w+v. With the default flags this is the classical Calkin-Wilf tree.
#[derive(Parser, Debug)]
#[command(name = "cwforest", version)]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug)]
pub struct Opts {
    /// Left step: w -> w/(uw+1)
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub u: u64,

    /// Right step: w -> w+v
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub v: u64,

    /// Root of the tree, as INT or INT/INT
    #[arg(long, global = true, default_value = "1")]
    pub root: String,

    /// Row number (the root is row 0)
    #[arg(long, global = true)]
    pub n: Option<u64>,

    /// 1-based index within a row
    #[arg(long, global = true)]
    pub i: Option<u64>,

    /// Number of rows below the root
    #[arg(long, global = true)]
    pub depth: Option<u64>,

    /// One JSON object per line instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Deepest row any command may materialize
    #[arg(long = "max-row", global = true, default_value_t = cwforest::DEFAULT_MAX_ROW)]
    pub max_row: u64,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Print row --n of the tree at --root
    Row,
    /// Print the vertex at row --n, index --i
    Vertex,
    /// Next vertex in the same row
    Successor { value: String },
    /// Parent of a vertex in the forest
    Parent { value: String },
    /// Ancestor chain up to the orphan root, with continued fractions
    Ancestors { value: String },
    /// Orphan whose tree contains the value
    OrphanRoot { value: String },
    /// Whether the value lies in the tree at --root
    Member { value: String },
    /// Depth of the value below --root
    Depth { value: String },
    /// Path word and exponent vector from --root down to the value
    Path { value: String },
    /// Position matrices of (--n, --i) and its mirrored position
    Mirror,
    /// Binary code of a path word; with --code, the (u,v) code below that root code
    Encode {
        word: String,
        #[arg(long)]
        code: Option<String>,
    },
    /// Parent, orphan root and classical value of a binary code
    Decode { code: String },
    /// Orphans a/b with a, b <= --bound
    Orphans {
        #[arg(long, default_value_t = 10)]
        bound: u64,
    },
    /// Run property suites (default: all); exit status 1 if any fails
    Verify {
        #[arg(long, value_delimiter = ',', value_parser = parse_suite)]
        suite: Vec<cwforest::Suite>,
        /// Box side for the partition suite
        #[arg(long, default_value_t = 20)]
        bound: u64,
    },
    /// Graphviz export of the tree down to --depth (default 10)
    Dot,
}

fn parse_suite(s: &str) -> Result<cwforest::Suite, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let status = match commands::run(&cli, &mut out) {
        Ok(status) => status,
        Err(Failure::Domain(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    };
    let _ = out.flush();
    status
}
