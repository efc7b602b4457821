//! Command-line surface: subcommands, flags, and input validation.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use topowalk_core::walk::InitialCoinSpec;
use topowalk_core::{CoinAngle, StepCount};

use crate::error::CliError;

const EXIT_CODE_HELP: &str = "Exit codes:
  0  success
  2  invalid configuration or command line
  3  numerical check failed (degenerate point, non-integer winding, failed verify suite)
  4  I/O failure

The environment variable TOPOWALK_JOBS provides the default for --jobs.";

/// Band structure, winding numbers, phase diagrams, and position-space
/// simulation of 1-D quantum walks with a step-dependent coin.
#[derive(Debug, Parser)]
#[command(name = "topowalk", version, after_help = EXIT_CODE_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for grid scans (0 or unset: one per core). Output is
    /// byte-identical for every worker count.
    #[arg(long, global = true, env = "TOPOWALK_JOBS")]
    pub jobs: Option<usize>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Output format; defaults to csv for tabular commands and json for
    /// phase-diagram and winding.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quasi-energy bands and group velocities over the Brillouin zone.
    Bands(BandsArgs),
    /// Phase regions with winding numbers and gapless boundaries.
    PhaseDiagram(PhaseDiagramArgs),
    /// Winding number at one angle, or over a θ-grid.
    Winding(WindingArgs),
    /// Run the position-space walk; distribution plus a moment report.
    Simulate(SimulateArgs),
    /// M₂/T² against the asymptote L over a list of step counts.
    MomentsScan(MomentsScanArgs),
    /// Run every built-in invariant suite and report the worst error of each.
    Verify(VerifyArgs),
}

#[derive(Debug, clap::Args)]
pub struct BandsArgs {
    /// Step count T.
    #[arg(long)]
    pub steps: u32,

    /// Coin angle θ in radians, within [0, 2π].
    #[arg(long, required_unless_present = "theta_grid")]
    pub theta: Option<f64>,

    /// Sweep θ over an inclusive grid instead of a single value.
    #[arg(long, value_name = "MIN:MAX:N", conflicts_with = "theta")]
    pub theta_grid: Option<GridSpec>,

    /// Momentum samples: the closed [-π, π] grid with this many points,
    /// right endpoint dropped as the duplicate of -π. Odd counts place
    /// k = 0 exactly on the grid.
    #[arg(long, default_value_t = 257)]
    pub k_samples: usize,
}

#[derive(Debug, clap::Args)]
pub struct PhaseDiagramArgs {
    #[arg(long)]
    pub steps: u32,

    /// Re-derive every region's winding from the Brillouin-zone integral at
    /// the region midpoint (slower; resolution applies).
    #[arg(long)]
    pub verify_windings: bool,

    /// Trapezoid resolution for winding integrals.
    #[arg(long, default_value_t = 4096)]
    pub resolution: usize,
}

#[derive(Debug, clap::Args)]
pub struct WindingArgs {
    #[arg(long)]
    pub steps: u32,

    #[arg(long, required_unless_present = "theta_grid")]
    pub theta: Option<f64>,

    #[arg(long, value_name = "MIN:MAX:N", conflicts_with = "theta")]
    pub theta_grid: Option<GridSpec>,

    #[arg(long, default_value_t = 4096)]
    pub resolution: usize,

    /// For θ-grids: also evaluate the winding integral at every non-gapless
    /// grid angle (the closed-form parity rule is always reported).
    #[arg(long)]
    pub verify_windings: bool,
}

#[derive(Debug, clap::Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub steps: u32,

    #[arg(long)]
    pub theta: f64,

    /// Initial coin amplitudes; defaults to the symmetric (|0⟩ + i|1⟩)/√2.
    #[arg(long, value_name = "A_RE,A_IM,B_RE,B_IM")]
    pub initial: Option<InitialArg>,
}

#[derive(Debug, clap::Args)]
pub struct MomentsScanArgs {
    /// Comma-separated list of step counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub steps: Vec<u32>,

    #[arg(long)]
    pub theta: f64,

    #[arg(long, value_name = "A_RE,A_IM,B_RE,B_IM")]
    pub initial: Option<InitialArg>,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    /// Trapezoid resolution used by the winding and quadrature suites.
    #[arg(long, default_value_t = 4096)]
    pub resolution: usize,
}

/// Inclusive θ-grid `MIN:MAX:N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = raw.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected MIN:MAX:N, got {raw:?}"));
        }
        let min: f64 = parts[0].parse().map_err(|e| format!("MIN: {e}"))?;
        let max: f64 = parts[1].parse().map_err(|e| format!("MAX: {e}"))?;
        let count: usize = parts[2].parse().map_err(|e| format!("N: {e}"))?;
        Ok(GridSpec { min, max, count })
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.count < 2 {
            return Err(CliError::Config(format!(
                "theta grid needs at least 2 points, got {}",
                self.count
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min > self.max {
            return Err(CliError::Config(format!(
                "theta grid bounds must be finite with MIN <= MAX, got {}:{}",
                self.min, self.max
            )));
        }
        CoinAngle::new(self.min)?;
        CoinAngle::new(self.max)?;
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let span = self.max - self.min;
        let step = span / (self.count as f64 - 1.0);
        (0..self.count)
            .map(|j| (self.min + j as f64 * step).min(self.max))
            .collect()
    }
}

/// Initial coin state parsed from four comma-separated reals.
#[derive(Debug, Clone, Copy)]
pub struct InitialArg(pub InitialCoinSpec);

impl FromStr for InitialArg {
    type Err = String;

    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = raw.split(',').collect();
        if parts.len() != 4 {
            return Err(format!("expected A_RE,A_IM,B_RE,B_IM, got {raw:?}"));
        }
        let mut values = [0.0f64; 4];
        for (slot, part) in values.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse()
                .map_err(|e| format!("bad amplitude {part:?}: {e}"))?;
        }
        let spec = InitialCoinSpec::new(
            Complex64::new(values[0], values[1]),
            Complex64::new(values[2], values[3]),
        )
        .map_err(|e| e.to_string())?;
        Ok(InitialArg(spec))
    }
}

pub fn parse_steps(steps: u32) -> Result<StepCount, CliError> {
    Ok(StepCount::new(steps)?)
}

pub fn parse_theta(theta: f64) -> Result<CoinAngle, CliError> {
    Ok(CoinAngle::new(theta)?)
}

pub fn validate_k_samples(k_samples: usize) -> Result<(), CliError> {
    if k_samples < 16 {
        return Err(CliError::Config(format!(
            "k-samples must be at least 16, got {k_samples}"
        )));
    }
    Ok(())
}

pub fn validate_resolution(resolution: usize) -> Result<(), CliError> {
    if resolution < 2 {
        return Err(CliError::Config(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    Ok(())
}
