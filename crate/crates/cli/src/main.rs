use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdot_correlations::discord::GqdSettings;
use qdot_correlations::model::{jz_from_geometry, GeometryParams, ModelParams};
use qdot_correlations::sweep::{
    self, emit_csv, emit_plot_script, figure_preset, inspect_point, run_sweep, CorrelationRecord, SweepConfig,
    DEFAULT_EXCITON_MEV,
};
use qdot_correlations::{Error, Result};

/// Thermal correlations (global discord, concurrence bound) of three
/// coupled quantum dots.
#[derive(Parser, Debug)]
#[command(name = "qdot-sweep", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a sweep described by a config file.
    Sweep(SweepArgs),
    /// Regenerate one of the built-in temperature sweeps (CSV + gnuplot script).
    Figure(FigureArgs),
    /// Print every intermediate quantity at a single parameter point.
    Point(PointArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Override a config entry, e.g. `--set hbar_lambda=1,5`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// CSV output path (overrides `output`).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Random restarts of the discord minimizer (overrides `restarts`).
    #[arg(long)]
    restarts: Option<usize>,
    /// Minimizer seed (overrides `seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// Also write a gnuplot script next to the CSV.
    #[arg(long)]
    plot: bool,
}

#[derive(Args, Debug)]
struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    preset: u8,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct PointArgs {
    /// Temperature (K).
    #[arg(long = "T")]
    temperature: f64,
    /// Förster coupling ħλ (meV).
    #[arg(long)]
    lambda: f64,
    /// Field coupling ħΩ (meV).
    #[arg(long = "omega-meV")]
    omega_mev: f64,
    /// Exciton energy ħω (meV).
    #[arg(long = "exciton-meV", default_value_t = DEFAULT_EXCITON_MEV)]
    exciton_mev: f64,
    /// Dipolar shift ħJz (meV); derived from the default geometry if absent.
    #[arg(long = "jz-meV")]
    jz_mev: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: kind={} message={}", error_kind(&e), e);
            ExitCode::FAILURE
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Config(_) => "config",
        Error::Io { .. } => "io",
        Error::InvalidParameter(_) | Error::NonPositiveTemperature(_) => "parameter",
        _ => "numerics",
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::Config("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Sweep(args) => sweep_cmd(args),
        Command::Figure(args) => figure_cmd(args),
        Command::Point(args) => point_cmd(args),
    }
}

fn sweep_cmd(args: SweepArgs) -> Result<()> {
    let text = fs::read_to_string(&args.config)
        .map_err(|e| Error::Io { path: args.config.display().to_string(), message: e.to_string() })?;
    let mut entries: BTreeMap<String, String> = sweep::parse_entries(&text)?;
    for o in &args.overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--set expects KEY=VALUE, got `{o}`")))?;
        let k = k.trim();
        // the two alternatives for an axis replace each other
        for group in [["temps", "temps_range"], ["efield", "hbar_Omega"]] {
            if group.contains(&k) {
                group.iter().for_each(|g| {
                    entries.remove(*g);
                });
            }
        }
        entries.insert(k.to_string(), v.trim().to_string());
    }
    let mut cfg = SweepConfig::from_entries(entries)?;
    if let Some(p) = args.output {
        cfg.output = p;
    }
    if let Some(r) = args.restarts {
        cfg.gqd.random_restarts = r;
    }
    if let Some(s) = args.seed {
        cfg.gqd.seed = s;
    }
    let records = run_sweep(&cfg)?;
    emit_csv(&records, &cfg.output)?;
    if args.plot {
        write_script(&records, &cfg.output)?;
    }
    report(&records, &cfg.output);
    Ok(())
}

fn figure_cmd(args: FigureArgs) -> Result<()> {
    fs::create_dir_all(&args.out)
        .map_err(|e| Error::Io { path: args.out.display().to_string(), message: e.to_string() })?;
    let mut cfg = figure_preset(args.preset)?;
    cfg.output = args.out.join(&cfg.output);
    let records = run_sweep(&cfg)?;
    emit_csv(&records, &cfg.output)?;
    write_script(&records, &cfg.output)?;
    report(&records, &cfg.output);
    Ok(())
}

fn write_script(records: &[CorrelationRecord], csv: &Path) -> Result<()> {
    let name = csv.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    emit_plot_script(records, &name, &csv.with_extension("gp"))
}

fn report(records: &[CorrelationRecord], csv: &Path) {
    let flagged = records.iter().filter(|r| !r.flags.is_empty()).count();
    let beaten = records.iter().filter(|r| r.has_flag("sigma_z_beaten")).count();
    eprintln!(
        "wrote {} points to {} ({} flagged, {} with sigma_z_beaten)",
        records.len(),
        csv.display(),
        flagged,
        beaten
    );
}

fn point_cmd(args: PointArgs) -> Result<()> {
    let jz = match args.jz_mev {
        Some(j) => j,
        None => jz_from_geometry(&GeometryParams::default())?,
    };
    let params = ModelParams::new(args.exciton_mev, args.omega_mev, jz, args.lambda)?;
    let r = inspect_point(&params, args.temperature, &GqdSettings::default())?;
    let p = &r.params;
    println!("T_K                 {}", r.temperature);
    println!(
        "params_meV          omega={} Omega={} Jz={} lambda={}",
        p.exciton_mev, p.field_mev, p.dipolar_mev, p.forster_mev
    );
    println!("partition_function  {:.12e}", r.partition_function);
    println!("blocks              numeric      closed_form");
    let pairs = [
        ("rho11", r.blocks.rho11, r.closed_form_blocks.rho11),
        ("rho22", r.blocks.rho22, r.closed_form_blocks.rho22),
        ("rho23", r.blocks.rho23, r.closed_form_blocks.rho23),
        ("rho44", r.blocks.rho44, r.closed_form_blocks.rho44),
        ("rho46", r.blocks.rho46, r.closed_form_blocks.rho46),
        ("rho88", r.blocks.rho88, r.closed_form_blocks.rho88),
    ];
    for (name, a, b) in pairs {
        println!("  {name:<17} {a:+.12e}  {b:+.12e}");
    }
    println!("entropy_bits        {:.12}", r.entropy);
    let d = &r.discord;
    println!("discord_bits        {:.12}", d.value);
    println!("discord_sigma_z     {:.12}", d.sigma_z_value);
    match d.closed_form_value {
        Some(c) => println!("discord_closed_form {c:.12}"),
        None => println!("discord_closed_form n/a"),
    }
    println!("agreement_gap       {:+.3e}", d.agreement_gap);
    println!("refinement_converged {}", d.converged);
    for (i, (t, f)) in d.minimizer.theta.iter().zip(&d.minimizer.phi).enumerate() {
        println!("minimizer_site{}     theta={t:.9} phi={f:.9}", i + 1);
    }
    for (cut, c) in &r.tau3.terms {
        let weight: f64 = c.iter().map(|x| x * x).sum();
        let cs: Vec<String> = c.iter().map(|x| format!("{x:.6e}")).collect();
        println!("C_{:<17} [{}]  sum_sq={weight:.6e}", cut.to_string(), cs.join(", "));
    }
    println!("tau3                {:.12}", r.tau3.tau3);
    Ok(())
}
