//! `minsupp`: generate, verify and characterize Hamming-graph eigenfunctions.
//!
//! Exit codes: 0 success, 1 usage or regime error (or a failed
//! `paper-check` row), 2 search budget exhausted before a conclusion.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{
    BoundArgs, CharacterizeArgs, GenArgs, MinsupportArgs, PaperCheckArgs, ProjectArgs, ReduceArgs,
    VerifyArgs,
};

#[derive(Debug, Parser)]
#[command(
    name = "minsupp",
    version,
    about = "Minimum-support eigenfunctions of Hamming graphs"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a family member, elementary factor or counterexample as HGF.
    Gen(GenArgs),
    /// Report the eigenspace profile, support and uniformity of a function.
    Verify(VerifyArgs),
    /// Project a function onto U_[i,j].
    Project(ProjectArgs),
    /// Check the slice identities along one or all coordinates.
    Reduce(ReduceArgs),
    /// Search for the minimum support of U_[lo,hi](n,q).
    Minsupport(MinsupportArgs),
    /// Print the support formula for (n,q,i,j), optionally confirming it by search.
    Bound(BoundArgs),
    /// Decide family membership and print a factorization certificate.
    Characterize(CharacterizeArgs),
    /// Run every headline check and print one row per claim.
    PaperCheck(PaperCheckArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => commands::gen(args),
        Command::Verify(args) => commands::verify(args),
        Command::Project(args) => commands::project(args),
        Command::Reduce(args) => commands::reduce(args),
        Command::Minsupport(args) => commands::minsupport(args),
        Command::Bound(args) => commands::bound(args),
        Command::Characterize(args) => commands::characterize(args),
        Command::PaperCheck(args) => commands::paper_check(args),
    };
    match result {
        Ok(output) => {
            output.print(cli.json);
            ExitCode::from(output.code)
        }
        Err(err) => {
            if cli.json {
                println!("{}", serde_json::json!({ "error": err.message }));
            } else {
                eprintln!("error: {}", err.message);
            }
            ExitCode::from(err.code)
        }
    }
}
