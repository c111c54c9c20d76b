use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use efimov::RadialNumerics;
use efimov_cli::{
    find_preset, params_csv, params_for, params_json, ratio_text, run_ratio, run_scan, run_terms,
    scan_csv, scan_json, terms_csv, terms_json, ScanConfig, TermsConfig, PRESETS,
};

/// Exit codes: 0 success, 2 domain or configuration error, 3 I/O error.
const EXIT_DOMAIN: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "efimov",
    version,
    about = "Atom-dimer Efimov physics in the Born-Oppenheimer limit: \
             universal constants, molecular terms and cross-section scans"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Universal constants s0, alpha, beta, theta0 for one mass ratio
    Params(ParamsArgs),
    /// Molecular-term samples (both branches) over a rho grid
    Terms(TermsArgs),
    /// Cross-section scan over a0/a* with a validity report
    Scan(ScanArgs),
    /// Elastic/inelastic peak-height ratio over one resonance period
    Ratio(RatioArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Species {
    /// Built-in mixture preset (Li7-Rb87, Li7-Cs133, Na23-Rb87)
    #[arg(long, conflicts_with = "mass_ratio")]
    preset: Option<String>,
    /// Heavy-to-light mass ratio M/m (overrides the default Li7-Rb87 preset)
    #[arg(long)]
    mass_ratio: Option<f64>,
}

impl Species {
    fn resolve(&self) -> Result<(f64, Option<String>), String> {
        if let Some(name) = &self.preset {
            let p = find_preset(name).ok_or_else(|| {
                format!(
                    "unknown preset '{name}'; available: {}",
                    PRESETS
                        .iter()
                        .map(|p| p.name)
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })?;
            Ok((p.mass_ratio, Some(p.name.to_string())))
        } else if let Some(mr) = self.mass_ratio {
            Ok((mr, None))
        } else {
            let p = &PRESETS[0];
            Ok((p.mass_ratio, Some(p.name.to_string())))
        }
    }
}

#[derive(Args)]
struct NumericsArgs {
    /// Inner matching radius of the radial integration, units of a0
    #[arg(long, default_value_t = 1e-4)]
    rho_min: f64,
    /// Outer matching radius of the radial integration, units of a0
    #[arg(long, default_value_t = 40.0)]
    rho_max: f64,
    /// Local relative tolerance of the adaptive integrator
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

impl NumericsArgs {
    fn build(&self) -> Result<RadialNumerics, efimov::Error> {
        RadialNumerics::new(self.rho_min, self.rho_max, self.tol)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this path instead of stdout
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct ParamsArgs {
    #[command(flatten)]
    species: Species,
    #[command(flatten)]
    numerics: NumericsArgs,
    /// Output format (params defaults to JSON)
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct TermsArgs {
    #[command(flatten)]
    species: Species,
    /// Smallest rho of the term grid
    #[arg(long, default_value_t = 0.1)]
    rho_min: f64,
    /// Largest rho of the term grid
    #[arg(long, default_value_t = 20.0)]
    rho_max: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 200)]
    points: usize,
    /// Log-spaced grid instead of linear
    #[arg(long)]
    log: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    species: Species,
    /// Smallest a0/a* of the scan
    #[arg(long, default_value_t = 0.05)]
    a0_min: f64,
    /// Largest a0/a* of the scan
    #[arg(long, default_value_t = 20.0)]
    a0_max: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 601)]
    points: usize,
    /// Log-spaced grid instead of linear
    #[arg(long)]
    log: bool,
    /// Collision momentum k a0
    #[arg(long, default_value_t = 0.1)]
    ka0: f64,
    /// Inelasticity parameter eta*
    #[arg(long, default_value_t = 0.1)]
    eta_star: f64,
    /// Reference-scan shortcut: ka0 = eta* = 0.1, 1201-point log grid over
    /// two resonance periods
    #[arg(long, conflicts_with_all = ["a0_min", "a0_max", "points", "log", "ka0", "eta_star"])]
    fig2: bool,
    /// Light-heavy interaction range r0, units of a0 (validity report only)
    #[arg(long)]
    r0: Option<f64>,
    /// Short-range black-box radius R0, units of a0 (validity report only)
    #[arg(long)]
    r_box: Option<f64>,
    #[command(flatten)]
    numerics: NumericsArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct RatioArgs {
    #[command(flatten)]
    species: Species,
    /// Collision momentum k a0
    #[arg(long, default_value_t = 0.1)]
    ka0: f64,
    /// Inelasticity parameter eta*
    #[arg(long, default_value_t = 0.1)]
    eta_star: f64,
    #[command(flatten)]
    numerics: NumericsArgs,
    #[arg(long)]
    output: Option<String>,
}

enum CmdError {
    Domain(String),
    Io(String),
}

impl From<efimov::Error> for CmdError {
    fn from(e: efimov::Error) -> Self {
        CmdError::Domain(e.to_string())
    }
}

impl From<String> for CmdError {
    fn from(e: String) -> Self {
        CmdError::Domain(e)
    }
}

fn emit(output: &Option<String>, content: &str) -> Result<(), CmdError> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CmdError::Io(format!("cannot write '{path}': {e}"))),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| CmdError::Io(format!("stdout: {e}"))),
    }
}

fn cmd_params(args: &ParamsArgs) -> Result<(), CmdError> {
    let (mass_ratio, _) = args.species.resolve()?;
    let up = params_for(mass_ratio, &args.numerics.build()?)?;
    let content = match args.format {
        Format::Json => params_json(&up),
        Format::Csv => params_csv(&up),
    };
    emit(&args.output, &content)
}

fn cmd_terms(args: &TermsArgs) -> Result<(), CmdError> {
    let (mass_ratio, preset) = args.species.resolve()?;
    let cfg = TermsConfig {
        mass_ratio,
        preset,
        rho_min: args.rho_min,
        rho_max: args.rho_max,
        points: args.points,
        log: args.log,
    };
    let rows = run_terms(&cfg)?;
    let content = match args.out.format {
        Format::Csv => terms_csv(&cfg, &rows),
        Format::Json => terms_json(&cfg, &rows),
    };
    emit(&args.out.output, &content)
}

fn cmd_scan(args: &ScanArgs) -> Result<(), CmdError> {
    let (mass_ratio, preset) = args.species.resolve()?;
    let numerics = args.numerics.build()?;
    let cfg = if args.fig2 {
        ScanConfig {
            numerics,
            r0: args.r0,
            r_box: args.r_box,
            ..ScanConfig::reference(mass_ratio, preset)
        }
    } else {
        ScanConfig {
            mass_ratio,
            preset,
            a0_min: args.a0_min,
            a0_max: args.a0_max,
            points: args.points,
            log: args.log,
            eta_star: args.eta_star,
            ka0: args.ka0,
            numerics,
            r0: args.r0,
            r_box: args.r_box,
        }
    };
    let up = params_for(cfg.mass_ratio, &cfg.numerics)?;
    let rows = run_scan(&up, &cfg)?;
    let content = match args.out.format {
        Format::Csv => scan_csv(&up, &cfg, &rows),
        Format::Json => scan_json(&up, &cfg, &rows),
    };
    emit(&args.out.output, &content)
}

fn cmd_ratio(args: &RatioArgs) -> Result<(), CmdError> {
    let (mass_ratio, _) = args.species.resolve()?;
    let up = params_for(mass_ratio, &args.numerics.build()?)?;
    let report = run_ratio(&up, args.ka0, args.eta_star)?;
    emit(&args.output, &ratio_text(&report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Params(a) => cmd_params(a),
        Cmd::Terms(a) => cmd_terms(a),
        Cmd::Scan(a) => cmd_scan(a),
        Cmd::Ratio(a) => cmd_ratio(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(CmdError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
