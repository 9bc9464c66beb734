//! `kr`: homology and Euler characteristics of two-strand twist links.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::{Family, Format, Report};

#[derive(Parser, Debug)]
#[command(name = "kr", version, about = "sl(n) homology of two-strand twist tangles by local reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Rank n of sl(n).
    #[arg(long)]
    n: u32,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Print intermediate complexes on stderr.
    #[arg(long)]
    dump: bool,
}

#[derive(Args, Debug, Clone)]
struct WordArgs {
    /// Tangle word: T (positive), M (negative), T^k, trailing ! closes.
    #[arg(long)]
    word: String,
    /// `parallel`: T is one half twist of parallel strands.
    /// `clasp`: T is a clasp of two antiparallel crossings.
    #[arg(long, value_enum, default_value_t = Family::Parallel)]
    family: Family,
    /// Directory for cached results.
    #[arg(long, env = "KR_CACHE")]
    cache: Option<PathBuf>,
}


#[derive(Subcommand, Debug)]
enum Command {
    /// Check the factorization identities, decompositions and clasp reduction.
    VerifyCore {
        #[command(flatten)]
        common: Common,
    },
    /// Reduce the complex of a word and print it.
    Reduce {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        word: WordArgs,
    },
    /// Bigraded homology of a closed word, with the oracle comparison.
    Homology {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        word: WordArgs,
    },
    /// Euler characteristic of a closed word against HOMFLY.
    Euler {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        word: WordArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::VerifyCore { common } => report::verify_core(common.n, common.format),
        Command::Reduce { common, word } => {
            report::reduce(&word.word, common.n, word.family, common.format, common.dump)
        }
        Command::Homology { common, word } | Command::Euler { common, word } => {
            let euler_only = matches!(cli.command, Command::Euler { .. });
            Report::cached(&word.word, common.n, word.family, word.cache.as_deref(), common.dump)
                .map(|r| r.print(common.format, euler_only))
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
