//! Implementations of the data-emitting subcommands. Every command builds
//! its whole output in memory (grid cells may be computed in parallel, but
//! assembly is sequential in grid order), so a given configuration always
//! produces the same bytes.

use rayon::prelude::*;
use topowalk_core::bloch::quasi_energy;
use topowalk_core::topology::{
    group_velocity, is_gapless_angle, phase_diagram, phase_index, verify_windings,
    winding_integral, winding_rule, Band, GaplessPoint, PhaseDiagram,
};
use topowalk_core::walk::{m2_scan, run_walk, InitialCoinSpec, MomentReport, WalkerState};
use topowalk_core::{CoinAngle, Momentum, StepCount};

use crate::axes::k_axis;
use crate::config::{
    parse_steps, parse_theta, validate_k_samples, validate_resolution, BandsArgs, Format,
    MomentsScanArgs, PhaseDiagramArgs, SimulateArgs, WindingArgs,
};
use crate::error::CliError;
use crate::output::{fmt_f64, fmt_opt_csv, fmt_opt_json};

pub const BANDS_CSV_HEADER: &str = "k,E_plus,E_minus,V_plus,V_minus";
pub const BANDS_GRID_CSV_HEADER: &str = "theta,k,E_plus,E_minus,V_plus,V_minus";
pub const SIMULATE_CSV_HEADER: &str = "position,probability";
pub const MOMENTS_CSV_HEADER: &str =
    "T,theta,m1,m2,m2_over_T2,l_value,deviation,alt_m1,alt_m2,alt_m2_over_T2,alt_deviation,spread";

struct BandRow {
    k: f64,
    energy: f64,
    velocity: Option<f64>,
}

fn band_rows(steps: StepCount, theta: CoinAngle, ks: &[Momentum]) -> Vec<BandRow> {
    ks.iter()
        .map(|&k| BandRow {
            k: k.value(),
            energy: quasi_energy(steps, theta, k),
            velocity: group_velocity(steps, theta, k, Band::Plus).ok(),
        })
        .collect()
}

fn band_row_csv(row: &BandRow, theta: Option<f64>) -> String {
    let prefix = theta.map(|t| format!("{},", fmt_f64(t))).unwrap_or_default();
    format!(
        "{prefix}{},{},{},{},{}",
        fmt_f64(row.k),
        fmt_f64(row.energy),
        fmt_f64(-row.energy),
        fmt_opt_csv(row.velocity),
        fmt_opt_csv(row.velocity.map(|v| -v)),
    )
}

fn band_row_json(row: &BandRow, theta: Option<f64>) -> String {
    let prefix = theta
        .map(|t| format!("\"theta\":{},", fmt_f64(t)))
        .unwrap_or_default();
    format!(
        "{{{prefix}\"k\":{},\"E_plus\":{},\"E_minus\":{},\"V_plus\":{},\"V_minus\":{}}}",
        fmt_f64(row.k),
        fmt_f64(row.energy),
        fmt_f64(-row.energy),
        fmt_opt_json(row.velocity),
        fmt_opt_json(row.velocity.map(|v| -v)),
    )
}

pub fn bands(args: &BandsArgs, format: Format) -> Result<String, CliError> {
    let steps = parse_steps(args.steps)?;
    validate_k_samples(args.k_samples)?;
    let ks = k_axis(args.k_samples);

    if let Some(theta) = args.theta {
        let theta = parse_theta(theta)?;
        let rows = band_rows(steps, theta, &ks);
        return Ok(match format {
            Format::Csv => {
                let mut doc = String::from(BANDS_CSV_HEADER);
                for row in &rows {
                    doc.push('\n');
                    doc.push_str(&band_row_csv(row, None));
                }
                doc.push('\n');
                doc
            }
            Format::Json => {
                let body: Vec<String> = rows.iter().map(|r| band_row_json(r, None)).collect();
                format!(
                    "{{\"T\":{},\"theta\":{},\"k_samples\":{},\"rows\":[{}]}}\n",
                    steps.get(),
                    fmt_f64(theta.value()),
                    args.k_samples,
                    body.join(",")
                )
            }
        });
    }

    let grid = args.theta_grid.expect("clap requires theta or theta-grid");
    grid.validate()?;
    let thetas: Vec<CoinAngle> = grid
        .points()
        .into_iter()
        .map(CoinAngle::new)
        .collect::<Result<_, _>>()?;
    let chunks: Vec<Vec<BandRow>> = thetas
        .par_iter()
        .map(|&theta| band_rows(steps, theta, &ks))
        .collect();
    Ok(match format {
        Format::Csv => {
            let mut doc = String::from(BANDS_GRID_CSV_HEADER);
            for (theta, rows) in thetas.iter().zip(&chunks) {
                for row in rows {
                    doc.push('\n');
                    doc.push_str(&band_row_csv(row, Some(theta.value())));
                }
            }
            doc.push('\n');
            doc
        }
        Format::Json => {
            let mut body = Vec::with_capacity(thetas.len() * ks.len());
            for (theta, rows) in thetas.iter().zip(&chunks) {
                for row in rows {
                    body.push(band_row_json(row, Some(theta.value())));
                }
            }
            format!(
                "{{\"T\":{},\"k_samples\":{},\"rows\":[{}]}}\n",
                steps.get(),
                args.k_samples,
                body.join(",")
            )
        }
    })
}

fn boundary_json(point: &GaplessPoint) -> String {
    format!(
        "{{\"theta\":{},\"closing_k0\":\"{}\",\"closing_kpi\":\"{}\"}}",
        fmt_f64(point.theta),
        point.closing_at_k0.label(),
        point.closing_at_kpi.label(),
    )
}

fn phase_diagram_json(diagram: &PhaseDiagram) -> String {
    let regions: Vec<String> = diagram
        .regions
        .iter()
        .map(|r| {
            format!(
                "{{\"m\":{},\"theta_min\":{},\"theta_max\":{},\"winding\":{},\"boundaries\":[{},{}]}}",
                r.index_m,
                fmt_f64(r.theta_min),
                fmt_f64(r.theta_max),
                r.winding,
                boundary_json(&r.left_boundary),
                boundary_json(&r.right_boundary),
            )
        })
        .collect();
    format!(
        "{{\"T\":{},\"regions\":[{}]}}\n",
        diagram.steps.get(),
        regions.join(",")
    )
}

fn phase_diagram_csv(diagram: &PhaseDiagram) -> String {
    let mut doc = String::from(
        "m,theta_min,theta_max,winding,left_theta,left_closing_k0,left_closing_kpi,\
         right_theta,right_closing_k0,right_closing_kpi",
    );
    for r in &diagram.regions {
        doc.push('\n');
        doc.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}",
            r.index_m,
            fmt_f64(r.theta_min),
            fmt_f64(r.theta_max),
            r.winding,
            fmt_f64(r.left_boundary.theta),
            r.left_boundary.closing_at_k0.label(),
            r.left_boundary.closing_at_kpi.label(),
            fmt_f64(r.right_boundary.theta),
            r.right_boundary.closing_at_k0.label(),
            r.right_boundary.closing_at_kpi.label(),
        ));
    }
    doc.push('\n');
    doc
}

pub fn phase_diagram_cmd(args: &PhaseDiagramArgs, format: Format) -> Result<String, CliError> {
    let steps = parse_steps(args.steps)?;
    validate_resolution(args.resolution)?;
    let diagram = phase_diagram(steps);
    if args.verify_windings {
        let deviation = verify_windings(&diagram, args.resolution)?;
        if deviation > 1e-6 {
            return Err(CliError::Numerical(format!(
                "winding integral deviates from the parity rule by {deviation:.3e}"
            )));
        }
    }
    Ok(match format {
        Format::Json => phase_diagram_json(&diagram),
        Format::Csv => phase_diagram_csv(&diagram),
    })
}

struct WindingRow {
    theta: f64,
    index_m: Option<u32>,
    rule: Option<i32>,
    integral: Option<f64>,
}

pub fn winding(args: &WindingArgs, format: Format) -> Result<String, CliError> {
    let steps = parse_steps(args.steps)?;
    validate_resolution(args.resolution)?;

    if let Some(theta) = args.theta {
        let theta = parse_theta(theta)?;
        let rule = winding_rule(steps, theta)?;
        let integral = winding_integral(steps, theta, args.resolution)?;
        return Ok(match format {
            Format::Json => format!(
                "{{\"T\":{},\"theta\":{},\"resolution\":{},\"winding_integral\":{},\"winding_rule\":{}}}\n",
                steps.get(),
                fmt_f64(theta.value()),
                args.resolution,
                fmt_f64(integral),
                rule,
            ),
            Format::Csv => format!(
                "T,theta,resolution,winding_integral,winding_rule\n{},{},{},{},{}\n",
                steps.get(),
                fmt_f64(theta.value()),
                args.resolution,
                fmt_f64(integral),
                rule,
            ),
        });
    }

    let grid = args.theta_grid.expect("clap requires theta or theta-grid");
    grid.validate()?;
    let resolution = args.resolution;
    let want_integral = args.verify_windings;
    let rows: Vec<WindingRow> = grid
        .points()
        .into_par_iter()
        .map(|theta_raw| {
            let theta = CoinAngle::new(theta_raw).expect("validated grid");
            if is_gapless_angle(steps, theta) {
                return Ok(WindingRow {
                    theta: theta_raw,
                    index_m: None,
                    rule: None,
                    integral: None,
                });
            }
            let integral = if want_integral {
                Some(winding_integral(steps, theta, resolution)?)
            } else {
                None
            };
            Ok(WindingRow {
                theta: theta_raw,
                index_m: Some(phase_index(steps, theta)?),
                rule: Some(winding_rule(steps, theta)?),
                integral,
            })
        })
        .collect::<Result<_, CliError>>()?;

    Ok(match format {
        Format::Csv => {
            let mut doc = String::from("theta,m,winding_rule,winding_integral");
            for row in &rows {
                doc.push('\n');
                doc.push_str(&format!(
                    "{},{},{},{}",
                    fmt_f64(row.theta),
                    row.index_m.map(|m| m.to_string()).unwrap_or_default(),
                    row.rule.map(|w| w.to_string()).unwrap_or_default(),
                    fmt_opt_csv(row.integral),
                ));
            }
            doc.push('\n');
            doc
        }
        Format::Json => {
            let body: Vec<String> = rows
                .iter()
                .map(|row| {
                    format!(
                        "{{\"theta\":{},\"gapless\":{},\"m\":{},\"winding_rule\":{},\"winding_integral\":{}}}",
                        fmt_f64(row.theta),
                        row.rule.is_none(),
                        row.index_m.map(|m| m.to_string()).unwrap_or_else(|| "null".into()),
                        row.rule.map(|w| w.to_string()).unwrap_or_else(|| "null".into()),
                        fmt_opt_json(row.integral),
                    )
                })
                .collect();
            format!(
                "{{\"T\":{},\"resolution\":{},\"rows\":[{}]}}\n",
                steps.get(),
                args.resolution,
                body.join(",")
            )
        }
    })
}

fn moment_report_json(report: &MomentReport) -> String {
    format!(
        "{{\"T\":{},\"theta\":{},\"m1\":{},\"m2\":{},\"m2_over_T2\":{},\"l_value\":{},\"deviation\":{}}}",
        report.steps,
        fmt_f64(report.theta),
        fmt_f64(report.m1),
        fmt_f64(report.m2),
        fmt_f64(report.m2_over_t2),
        fmt_f64(report.l_value),
        fmt_f64(report.deviation),
    )
}

fn distribution_csv(state: &WalkerState) -> String {
    let mut doc = String::from(SIMULATE_CSV_HEADER);
    for (x, p) in state.distribution() {
        doc.push('\n');
        doc.push_str(&format!("{x},{}", fmt_f64(p)));
    }
    doc.push('\n');
    doc
}

/// Output of `simulate`: the main document plus an optional sidecar (the
/// moment report accompanies the CSV as a separate JSON document; the JSON
/// format embeds it instead).
pub struct SimulateOutput {
    pub document: String,
    pub sidecar: Option<String>,
}

pub fn simulate(args: &SimulateArgs, format: Format) -> Result<SimulateOutput, CliError> {
    let steps = parse_steps(args.steps)?;
    let theta = parse_theta(args.theta)?;
    let spec = args
        .initial
        .map(|arg| arg.0)
        .unwrap_or_else(InitialCoinSpec::symmetric_default);
    let state = run_walk(steps, theta.value(), &spec);
    let m2 = state.moment(2);
    let m2_over_t2 = m2 / (steps.as_f64() * steps.as_f64());
    let l_value = topowalk_core::topology::l_analytic(steps, theta);
    let report = MomentReport {
        steps: steps.get(),
        theta: theta.value(),
        m1: state.moment(1),
        m2,
        m2_over_t2,
        l_value,
        deviation: (m2_over_t2 - l_value).abs(),
    };
    Ok(match format {
        Format::Csv => SimulateOutput {
            document: distribution_csv(&state),
            sidecar: Some(format!("{}\n", moment_report_json(&report))),
        },
        Format::Json => {
            let pairs: Vec<String> = state
                .distribution()
                .iter()
                .map(|(x, p)| format!("[{x},{}]", fmt_f64(*p)))
                .collect();
            SimulateOutput {
                document: format!(
                    "{{\"T\":{},\"theta\":{},\"distribution\":[{}],\"report\":{}}}\n",
                    steps.get(),
                    fmt_f64(theta.value()),
                    pairs.join(","),
                    moment_report_json(&report),
                ),
                sidecar: None,
            }
        }
    })
}

pub fn moments_scan(args: &MomentsScanArgs, format: Format) -> Result<String, CliError> {
    let theta = parse_theta(args.theta)?;
    let counts: Vec<StepCount> = args
        .steps
        .iter()
        .map(|&t| parse_steps(t))
        .collect::<Result<_, _>>()?;
    let spec = args
        .initial
        .map(|arg| arg.0)
        .unwrap_or_else(InitialCoinSpec::symmetric_default);
    let rows = m2_scan(theta, &counts, &spec)?;
    Ok(match format {
        Format::Csv => {
            let mut doc = String::from(MOMENTS_CSV_HEADER);
            for row in &rows {
                doc.push('\n');
                doc.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    row.primary.steps,
                    fmt_f64(row.primary.theta),
                    fmt_f64(row.primary.m1),
                    fmt_f64(row.primary.m2),
                    fmt_f64(row.primary.m2_over_t2),
                    fmt_f64(row.primary.l_value),
                    fmt_f64(row.primary.deviation),
                    fmt_f64(row.alternate.m1),
                    fmt_f64(row.alternate.m2),
                    fmt_f64(row.alternate.m2_over_t2),
                    fmt_f64(row.alternate.deviation),
                    fmt_f64(row.spread),
                ));
            }
            doc.push('\n');
            doc
        }
        Format::Json => {
            let body: Vec<String> = rows
                .iter()
                .map(|row| {
                    format!(
                        "{{\"T\":{},\"primary\":{},\"alternate\":{},\"spread\":{}}}",
                        row.primary.steps,
                        moment_report_json(&row.primary),
                        moment_report_json(&row.alternate),
                        fmt_f64(row.spread),
                    )
                })
                .collect();
            format!(
                "{{\"theta\":{},\"rows\":[{}]}}\n",
                fmt_f64(theta.value()),
                body.join(",")
            )
        }
    })
}
