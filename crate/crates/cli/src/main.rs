use clap::{Parser, Subcommand};
use exrec_cli::{analysis, campaign, commands};
use exrec_core::Error;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "exrec", version, about = "Extended-rectangle synthesis, simulation and threshold analysis")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the code catalog or show one code's stabilizers.
    #[command(subcommand)]
    Codes(commands::CodesCmd),
    /// Encoder circuit and its Latin-rectangle schedule.
    Synth(commands::SynthArgs),
    /// CNOT and location counts of one rectangle.
    Count(commands::CountArgs),
    /// Check that a decoder corrects every error up to its design weight.
    DecodeVerify(commands::VerifyArgs),
    /// Monte Carlo campaign over a p0 grid.
    Simulate(campaign::SimulateArgs),
    /// Pseudo-threshold fits from results files.
    Threshold(analysis::ThresholdArgs),
    /// Overhead table from results files.
    Report(analysis::ReportArgs),
    /// Exhaustive single-fault scan of one ex-Rec.
    ScanSingleFault(commands::CountArgs),
}

/// 2 configuration, 3 resource, 4 invariant violation, 1 anything else.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Parameter(_) | Error::Catalog(_) | Error::Synthesis(_) | Error::Size { .. } => 2,
        Error::Resource(_) | Error::Io(_) => 3,
        Error::Invariant(_) | Error::Contract(_) | Error::Rank { .. } | Error::Construction(_) | Error::Field(_) => 4,
        Error::UnstableFit(_) => 1,
    }
}

fn kind(e: &Error) -> &'static str {
    match exit_code(e) {
        2 => "config",
        3 => "resource",
        4 => "invariant",
        _ => "analysis",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Command::Codes(c) => commands::codes(c),
        Command::Synth(a) => commands::synth(a),
        Command::Count(a) => commands::count(a),
        Command::DecodeVerify(a) => commands::decode_verify(a),
        Command::Simulate(a) => campaign::Campaign::from_args(a).and_then(|c| {
            let bytes = campaign::run(&c)?;
            if c.out.is_none() {
                commands::emit(None, &bytes)?;
            }
            Ok(())
        }),
        Command::Threshold(a) => analysis::threshold(a),
        Command::Report(a) => analysis::report(a),
        Command::ScanSingleFault(a) => commands::scan(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", kind(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}
