use std::process::ExitCode;

use clap::Parser;
use fano_sim::args::{Cli, Command, PresetArgs, JOBS_ENV};
use fano_sim::config::Mode;
use fano_sim::preset::{preset, PRESET_NAMES};
use fano_sim::{run, CliError};

fn show_presets(args: PresetArgs) -> Result<(), CliError> {
    if args.list {
        for name in PRESET_NAMES {
            println!("{name:<26}{}", preset(name)?.description);
        }
    }
    if let Some(name) = args.show {
        let p = preset(&name)?;
        println!("{}", serde_json::to_string_pretty(&p).expect("preset serializes"));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, args) = match cli.command {
        Command::Simulate(a) => (Mode::Simulate, a),
        Command::Steady(a) => (Mode::Steady, a),
        Command::Sweep(a) => (Mode::Sweep, a),
        Command::Preset(p) => {
            return match show_presets(p) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("fano-sim: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            };
        }
    };
    let env = std::env::var(JOBS_ENV).ok();
    let outcome = args
        .into_config(mode, env.as_deref())
        .and_then(|cfg| run(&cfg));
    match outcome {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("{w}");
            }
            for line in &outcome.summary {
                println!("{line}");
            }
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            for failure in &outcome.failures {
                eprintln!("failed {failure}");
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("fano-sim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
