//! Command-line front end: configuration parsing, worker-pool setup,
//! dispatch, and deterministic file emission for the band-structure,
//! topology, and walk-simulation commands.

pub mod axes;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod verify;

use std::time::Instant;

use config::{validate_resolution, Cli, Command, Format};
use error::CliError;
use output::OutputTarget;

/// Executes a parsed command line. Rayon-based grid scans run inside a pool
/// sized by `--jobs`; every command assembles its output deterministically,
/// so the worker count never changes the bytes written.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(jobs) = cli.jobs {
            builder = builder.num_threads(jobs);
        }
        builder
            .build()
            .map_err(|e| CliError::Config(format!("worker pool: {e}")))?
    };
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let target = OutputTarget::new(cli.out.clone());
    match &cli.command {
        Command::Bands(args) => {
            let format = cli.format.unwrap_or(Format::Csv);
            target.write(&commands::bands(args, format)?)
        }
        Command::PhaseDiagram(args) => {
            let format = cli.format.unwrap_or(Format::Json);
            target.write(&commands::phase_diagram_cmd(args, format)?)
        }
        Command::Winding(args) => {
            let format = cli.format.unwrap_or(Format::Json);
            target.write(&commands::winding(args, format)?)
        }
        Command::Simulate(args) => {
            let format = cli.format.unwrap_or(Format::Csv);
            let out = commands::simulate(args, format)?;
            target.write(&out.document)?;
            match out.sidecar {
                Some(sidecar) => target.write_sidecar(&sidecar),
                None => Ok(()),
            }
        }
        Command::MomentsScan(args) => {
            let format = cli.format.unwrap_or(Format::Csv);
            target.write(&commands::moments_scan(args, format)?)
        }
        Command::Verify(args) => {
            validate_resolution(args.resolution)?;
            let started = Instant::now();
            let outcomes = verify::run_all(args.resolution);
            target.write(&verify::render_report(&outcomes))?;
            eprintln!("verify completed in {:.2} s", started.elapsed().as_secs_f64());
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if failed > 0 {
                return Err(CliError::Numerical(format!(
                    "{failed} verification suite(s) failed"
                )));
            }
            Ok(())
        }
    }
}
