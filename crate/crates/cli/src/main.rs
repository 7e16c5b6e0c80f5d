//! Command-line front end: single-point queries, efficiency scans,
//! phase-gate curve tracing, lossless-point search, sequence composition and
//! unit conversion.
//!
//! Exit codes: 0 on success, 2 on argument or input errors, 3 when a
//! requested point sits on a degenerate resonance, 1 on I/O failures.

mod emit;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use spinring::analysis;
use spinring::closed_form;
use spinring::gates;
use spinring::scattering;
use spinring::spin::{tilt_angle, RingConfig};
use spinring::units;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "spinring",
    about = "Spin transmission of a Rashba ring between two leads: analytic \
             and first-principles engines, gate search, unit conversion",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PointFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Scattering,
}

impl From<MethodArg> for gates::Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Closed => gates::Method::ClosedForm,
            MethodArg::Scattering => gates::Method::Scattering,
        }
    }
}

fn angle(s: &str) -> Result<f64, String> {
    emit::parse_angle(s)
}

#[derive(Subcommand)]
enum Command {
    /// Transmission matrix at one parameter point, from both engines.
    Tmatrix {
        #[arg(long)]
        ka: f64,
        #[arg(long)]
        x: f64,
        /// Junction angle in radians; accepts a 'pi' suffix (e.g. 0.5pi).
        #[arg(long, value_parser = angle)]
        gamma: f64,
        #[arg(long, value_enum, default_value_t = PointFormat::Text)]
        format: PointFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Efficiency/phase surface over a (ka, x) window at fixed gamma.
    Scan {
        #[arg(long, value_parser = angle)]
        gamma: f64,
        #[arg(long, default_value_t = 19.0)]
        ka_min: f64,
        #[arg(long, default_value_t = 22.0)]
        ka_max: f64,
        #[arg(long, default_value_t = 0.0)]
        x_min: f64,
        #[arg(long, default_value_t = 3.5)]
        x_max: f64,
        #[arg(long, default_value_t = 500)]
        ka_steps: usize,
        #[arg(long, default_value_t = 350)]
        x_steps: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Trace the curves where the ring acts as a pure gamma phase gate.
    Curves {
        #[arg(long, value_parser = angle)]
        gamma: f64,
        #[arg(long, default_value_t = 19.0)]
        ka_min: f64,
        #[arg(long, default_value_t = 22.0)]
        ka_max: f64,
        #[arg(long, default_value_t = 0.1)]
        x_min: f64,
        #[arg(long, default_value_t = 3.5)]
        x_max: f64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Lossless operating points: along phase-gate curves, or along ka at
    /// fixed x for the diametric ring (gamma = pi, requires --x).
    Lossless {
        #[arg(long, value_parser = angle)]
        gamma: f64,
        /// Spin-orbit ratio for the diametric mode.
        #[arg(long)]
        x: Option<f64>,
        #[arg(long, default_value_t = 19.0)]
        ka_min: f64,
        #[arg(long, default_value_t = 22.0)]
        ka_max: f64,
        #[arg(long, default_value_t = 0.1)]
        x_min: f64,
        #[arg(long, default_value_t = 3.5)]
        x_max: f64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compose a ring sequence from a JSON description and score it against
    /// the standard targets.
    Compose {
        #[arg(long)]
        file: PathBuf,
        /// Override the engine named in the file (default: closed).
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Convert laboratory parameters to (ka, x), or a target tilt angle to
    /// the Rashba coefficient.
    Units {
        /// Ring radius in meters.
        #[arg(long)]
        radius: f64,
        /// Effective mass over the electron mass.
        #[arg(long)]
        mass_ratio: f64,
        /// Carrier energy in eV (forward conversion).
        #[arg(long)]
        energy: Option<f64>,
        /// Rashba coefficient in eV m (forward conversion, default 0).
        #[arg(long)]
        alpha: Option<f64>,
        /// Target tilt angle in radians, in (-pi/2, 0] (inverse conversion).
        #[arg(long, value_parser = angle, allow_hyphen_values = true,
              conflicts_with_all = ["energy", "alpha"])]
        theta: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Ring sequence description accepted by `compose`.
#[derive(Deserialize)]
struct SequenceFile {
    schema_version: u32,
    items: Vec<SequenceItem>,
    #[serde(default)]
    link_phases: Option<Vec<f64>>,
    #[serde(default)]
    method: Option<String>,
}

#[derive(Deserialize)]
struct SequenceItem {
    ka: f64,
    x: f64,
    gamma: f64,
}

enum CliError {
    /// Argument or input problems: exit 2.
    Usage(String),
    /// Degenerate resonance point: exit 3.
    Degenerate(String),
    /// I/O: exit 1.
    Io(String),
}

impl From<spinring::Error> for CliError {
    fn from(e: spinring::Error) -> Self {
        if e.is_degenerate_point() {
            CliError::Degenerate(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

fn write_out(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Tmatrix {
            ka,
            x,
            gamma,
            format,
            output,
        } => {
            let cfg = RingConfig::new(ka, x, gamma)?;
            let dec = closed_form::transmission(&cfg)?;
            let sol = scattering::solve_scattering(&cfg)?;
            let fidelity = gates::fidelity_up_to_phase(&dec.t, &sol.tmat)?;
            let text = match format {
                PointFormat::Text => emit::tmatrix_text(ka, x, gamma, &dec, &sol, fidelity),
                PointFormat::Json => emit::tmatrix_json(ka, x, gamma, &dec, &sol, fidelity),
            };
            write_out(&text, output.as_deref())
        }
        Command::Scan {
            gamma,
            ka_min,
            ka_max,
            x_min,
            x_max,
            ka_steps,
            x_steps,
            format,
            output,
        } => {
            let grid =
                analysis::scan_grid(gamma, (ka_min, ka_max), (x_min, x_max), (ka_steps, x_steps))?;
            let text = match format {
                TableFormat::Csv => emit::scan_to_csv(&grid),
                TableFormat::Json => emit::scan_to_json(&grid),
            };
            write_out(&text, output.as_deref())
        }
        Command::Curves {
            gamma,
            ka_min,
            ka_max,
            x_min,
            x_max,
            format,
            output,
        } => {
            let curves = analysis::delta_zero_curves(gamma, (ka_min, ka_max), (x_min, x_max))?;
            let text = match format {
                TableFormat::Csv => emit::curves_to_csv(&curves),
                TableFormat::Json => emit::curves_to_json(gamma, &curves),
            };
            write_out(&text, output.as_deref())
        }
        Command::Lossless {
            gamma,
            x,
            ka_min,
            ka_max,
            x_min,
            x_max,
            format,
            output,
        } => {
            let diametric = (gamma - std::f64::consts::PI).abs() < 1e-9;
            let (mode, points) = if diametric {
                let x = x.ok_or_else(|| {
                    CliError::Usage(
                        "the diametric mode (gamma = pi) needs --x to fix the cross-section"
                            .into(),
                    )
                })?;
                let kas = analysis::lossless_points_diametric(x, (ka_min, ka_max))?;
                let points: Vec<analysis::CurvePoint> = kas
                    .into_iter()
                    .map(|ka| -> Result<analysis::CurvePoint, CliError> {
                        let dec = closed_form::transmission_diametric(ka, x)?;
                        Ok(analysis::CurvePoint {
                            ka,
                            x,
                            t_mag: dec.t_mag,
                            delta: dec.delta,
                        })
                    })
                    .collect::<Result<_, _>>()?;
                ("diametric", points)
            } else {
                let curves = analysis::delta_zero_curves(gamma, (ka_min, ka_max), (x_min, x_max))?;
                let points: Vec<analysis::CurvePoint> =
                    curves.iter().flat_map(analysis::lossless_points).collect();
                ("curve", points)
            };
            let text = match format {
                TableFormat::Csv => emit::points_to_csv(gamma, &points),
                TableFormat::Json => emit::points_to_json(gamma, mode, &points),
            };
            write_out(&text, output.as_deref())
        }
        Command::Compose {
            file,
            method,
            format,
            output,
        } => {
            let raw = std::fs::read_to_string(&file)
                .map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
            let desc: SequenceFile = serde_json::from_str(&raw)
                .map_err(|e| CliError::Usage(format!("malformed sequence file: {e}")))?;
            if desc.schema_version != 1 {
                return Err(CliError::Usage(format!(
                    "unsupported schema_version {}",
                    desc.schema_version
                )));
            }
            let items: Vec<RingConfig> = desc
                .items
                .iter()
                .map(|i| RingConfig::new(i.ka, i.x, i.gamma))
                .collect::<Result<_, _>>()?;
            let method: gates::Method = match method {
                Some(m) => m.into(),
                None => match desc.method.as_deref() {
                    None | Some("closed") => gates::Method::ClosedForm,
                    Some("scattering") => gates::Method::Scattering,
                    Some(other) => {
                        return Err(CliError::Usage(format!("unknown method '{other}'")))
                    }
                },
            };
            let links = desc
                .link_phases
                .unwrap_or_else(|| vec![0.0; items.len().saturating_sub(1)]);
            let seq = gates::compose_with_links(&items, &links, method)?;
            let fid = emit::TargetFidelities {
                fidelity_x: gates::fidelity_up_to_phase(&seq.composed, &gates::Target::X.matrix())?,
                fidelity_z: gates::fidelity_up_to_phase(&seq.composed, &gates::Target::Z.matrix())?,
                fidelity_h: gates::fidelity_up_to_phase(&seq.composed, &gates::Target::H.matrix())?,
            };
            let method_name = match method {
                gates::Method::ClosedForm => "closed",
                gates::Method::Scattering => "scattering",
            };
            let text = match format {
                TableFormat::Json => emit::sequence_to_json(&seq, method_name, fid),
                TableFormat::Csv => emit::sequence_to_csv(&seq, fid),
            };
            write_out(&text, output.as_deref())
        }
        Command::Units {
            radius,
            mass_ratio,
            energy,
            alpha,
            theta,
            output,
        } => {
            let text = match (theta, energy) {
                (Some(theta), None) => {
                    let alpha_evm = units::alpha_for_theta(theta, radius, mass_ratio)?;
                    emit::units_inverse_text(alpha_evm, (-theta).tan())
                }
                (None, Some(energy)) => {
                    let ring =
                        units::PhysicalRing::new(radius, mass_ratio, alpha.unwrap_or(0.0), energy)?;
                    let (ka, x) = units::to_dimensionless(&ring);
                    emit::units_forward_text(ka, x, tilt_angle(x))
                }
                (None, None) => {
                    return Err(CliError::Usage(
                        "units needs either --energy (forward) or --theta (inverse)".into(),
                    ))
                }
                (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
            };
            write_out(&text, output.as_deref())
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(), // 0 for --help/--version, 2 for usage errors
    };
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Degenerate(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(3);
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}
