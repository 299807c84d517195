mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact computations with Hopf categories, free and cofree constructions,
/// free groupoids and flat modules.
#[derive(Parser, Debug)]
#[command(name = "hopfcat", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the axioms of any document.
    Check { file: PathBuf },
    /// Solve for the antipode of a semi-Hopf category.
    Antipode {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Opposite, co-opposite or both.
    Variant {
        file: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hom dimensions of the free V-category, by path length.
    FreeCat {
        file: PathBuf,
        #[arg(short = 'L', long = "max-len")]
        max_len: usize,
    },
    /// The free semi-Hopf category on a graph of coalgebras, truncated.
    FreeShopf {
        file: PathBuf,
        #[arg(short = 'L', long = "max-len")]
        max_len: usize,
    },
    /// The free Hopf category on a semi-Hopf category, truncated. A
    /// V-graph or graph input is first replaced by its free semi-Hopf
    /// category.
    FreeHopf {
        file: PathBuf,
        #[arg(short = 'L', long = "max-len")]
        max_len: usize,
        /// Largest letter index; defaults to L.
        #[arg(short = 'I', long = "max-index")]
        max_index: Option<usize>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// List a basis of normal words per hom.
        #[arg(long)]
        words: bool,
    },
    /// Factor a linear map out of a coalgebra through the cofree coalgebra.
    CofreeFactor {
        coalgebra: PathBuf,
        map: PathBuf,
        /// Where to write the image coalgebra.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The weak bialgebra obtained by summing all homs.
    Flatten { file: PathBuf },
    /// Free groupoids on graphs and finite categories.
    #[command(subcommand)]
    Groupoid(GroupoidCommand),
    /// Decide flatness of a module over Z/n.
    FlatTest { module: PathBuf },
    /// Decide whether module maps or V-graph morphisms out of one source
    /// are jointly monic.
    JointlyMonic {
        #[arg(required = true)]
        maps: Vec<PathBuf>,
    },
    /// Compare the free Hopf category on a graph with reduced words of the
    /// free groupoid.
    OracleCompare {
        graph: PathBuf,
        #[arg(short = 'L', long = "max-len")]
        max_len: usize,
        /// Largest letter index.
        #[arg(short = 'I', long = "max-index", default_value_t = 1)]
        max_index: usize,
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GroupoidCommand {
    /// Reduced word counts of the free groupoid on a graph.
    Free {
        graph: PathBuf,
        #[arg(short = 'L', long = "max-len")]
        max_len: usize,
    },
    /// The maximal subgroupoid of a finite category.
    Core {
        category: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the reduced words of the free groupoid on a graph.
    Words {
        graph: PathBuf,
        #[arg(short = 'L', long = "max-len")]
        max_len: usize,
    },
    /// The linearization of a finite category, with its antipode when it
    /// is a groupoid.
    Linearize {
        category: PathBuf,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Which {
    Op,
    Cop,
    Opcop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Echelon,
}

fn main() -> ExitCode {
    // exit quietly when the reader of a pipe goes away
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = commands::init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
