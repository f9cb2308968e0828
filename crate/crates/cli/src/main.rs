use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use f2d2p::unit_group::DEFAULT_CLOSURE_CAP;
use f2d2p::Level;
use f2d2p_cli::{cmd_closure, cmd_factor, cmd_report, cmd_verify, GeneratorSet, ReportDocument, VerifyArgs};

#[derive(Parser)]
#[command(name = "f2d2p", version, about = "Unit groups of the group algebra F2[D_2p]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Odd prime p
    #[arg(long)]
    p: u64,
    /// Emit the JSON report instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Exhaustive,
    Structural,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetArg {
    Bicyclic,
    Unitary,
    Central,
    Units,
}

#[derive(Subcommand)]
enum Command {
    /// Factor Phi_p over GF(2) through cyclotomic cosets
    Factor(Common),
    /// Decomposition plan and predicted group orders
    Report(Common),
    /// Check the structure claims; exit 1 if any fails
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "structural")]
        level: LevelArg,
        /// Allow exhaustive scans up to 2p = 22 bits
        #[arg(long)]
        force: bool,
        /// Override the exhaustive bound on 2p
        #[arg(long)]
        max_bits: Option<u32>,
    },
    /// Size of the subgroup generated by a named set and/or explicit elements
    Closure {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        set: Option<SetArg>,
        /// Extra generator as a 2p-character 0/1 string (repeatable)
        #[arg(long = "gen")]
        generators: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: usize,
    },
}

fn emit(doc: &ReportDocument, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(doc).expect("report serializes"));
    } else {
        print!("{}", doc.render_text());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, json) = match cli.command {
        Command::Factor(c) => (cmd_factor(c.p), c.json),
        Command::Report(c) => (cmd_report(c.p), c.json),
        Command::Verify { common, level, force, max_bits } => {
            let level = match level {
                LevelArg::Exhaustive => Level::Exhaustive,
                LevelArg::Structural => Level::Structural,
            };
            (cmd_verify(common.p, VerifyArgs { level, force, max_bits }), common.json)
        }
        Command::Closure { common, set, generators, cap } => {
            let set = set.map(|s| match s {
                SetArg::Bicyclic => GeneratorSet::Bicyclic,
                SetArg::Unitary => GeneratorSet::Unitary,
                SetArg::Central => GeneratorSet::Central,
                SetArg::Units => GeneratorSet::Units,
            });
            (cmd_closure(common.p, set, &generators, cap), common.json)
        }
    };
    match result {
        Ok(doc) => {
            emit(&doc, json);
            ExitCode::from(doc.exit_code() as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
