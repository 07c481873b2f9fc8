//! Parameter sweeps over temperature, Förster coupling and field, with CSV
//! and plot-script output.
//!
//! # Config format
//!
//! Flat `key = value` lines; `#` starts a comment and lists are
//! comma-separated. Recognized keys:
//!
//! | key              | meaning                                             |
//! |------------------|-----------------------------------------------------|
//! | `temps`          | temperatures in K                                   |
//! | `temps_range`    | `min, max, steps`, evenly spaced (alternative)      |
//! | `hbar_lambda`    | Förster couplings ħλ, meV                           |
//! | `hbar_Omega`     | field couplings ħΩ, meV                             |
//! | `efield`         | fields in V/m, converted with the dipole (alternative to `hbar_Omega`) |
//! | `hbar_omega`     | exciton detuning ħω, meV (default 5)                |
//! | `hbar_Jz`        | dipolar shift ħJz, meV (default: from geometry)     |
//! | `dipole_debye`   | dipole moment (default 6.0)                         |
//! | `separation_nm`  | dot separation (default 5.0)                        |
//! | `theta`          | dipole/axis angle in radians (default π/2)          |
//! | `cos_de`         | dipole/field alignment (default 1.0)                |
//! | `measures`       | subset of `discord, concurrence_lb, entropy`        |
//! | `output`         | CSV path (default `sweep.csv`)                      |
//! | `restarts`       | random restarts of the discord minimizer (default 16) |
//! | `seed`           | minimizer seed                                      |

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::concurrence::{tau3, tau3_breakdown, Tau3Breakdown};
use crate::discord::{gqd_minimize, DiscordResult, GqdSettings, MeasurementAngles};
use crate::error::{Error, Result};
use crate::model::{build_hamiltonian, jz_from_geometry, omega_from_field, GeometryParams, ModelParams};
use crate::state::von_neumann_entropy;
use crate::thermal::{closed_form_elements, gibbs_state, partition_function, validate_blocks, ClosedFormElements};

pub const MIN_TEMPERATURE: f64 = 0.1;

/// Minimized discord below the σz closed form by more than this sets the
/// `sigma_z_beaten` flag.
pub const SIGMA_Z_TOLERANCE: f64 = 1e-4;

pub const CSV_HEADER: &str =
    "T_K,hbar_lambda_meV,hbar_Omega_meV,hbar_Jz_meV,discord_bits,discord_closed_form_bits,tau3,entropy_bits,flags";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measures {
    pub discord: bool,
    pub concurrence_lb: bool,
    pub entropy: bool,
}

impl Measures {
    pub const ALL: Measures = Measures { discord: true, concurrence_lb: true, entropy: true };
}

#[derive(Clone, Debug, PartialEq)]
pub enum FieldAxis {
    /// ħΩ values in meV.
    Coupling(Vec<f64>),
    /// Field strengths in V/m.
    Efield(Vec<f64>),
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub temps: Vec<f64>,
    pub forster_mev: Vec<f64>,
    pub field: FieldAxis,
    pub exciton_mev: f64,
    /// Explicit ħJz; derived from `geometry` when absent.
    pub dipolar_mev: Option<f64>,
    pub geometry: GeometryParams,
    pub output: PathBuf,
    pub measures: Measures,
    pub gqd: GqdSettings,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.temps.is_empty() || self.forster_mev.is_empty() {
            return Err(Error::Config("temperature and hbar_lambda lists must be non-empty".into()));
        }
        if let Some(t) = self.temps.iter().find(|&&t| !(t >= MIN_TEMPERATURE) || !t.is_finite()) {
            return Err(Error::Config(format!("temperature {t} K is below the minimum {MIN_TEMPERATURE} K")));
        }
        let field = match &self.field {
            FieldAxis::Coupling(v) | FieldAxis::Efield(v) => v,
        };
        if field.is_empty() {
            return Err(Error::Config("field list must be non-empty".into()));
        }
        if !(self.measures.discord || self.measures.concurrence_lb || self.measures.entropy) {
            return Err(Error::Config("measures must name at least one of discord, concurrence_lb, entropy".into()));
        }
        self.geometry.validate()?;
        for &l in &self.forster_mev {
            ModelParams::new(self.exciton_mev, 0.0, self.dipolar_mev.unwrap_or(0.0), l)?;
        }
        Ok(())
    }

    pub fn dipolar(&self) -> Result<f64> {
        match self.dipolar_mev {
            Some(j) => Ok(j),
            None => jz_from_geometry(&self.geometry),
        }
    }

    /// ħΩ values in meV.
    pub fn field_couplings(&self) -> Result<Vec<f64>> {
        match &self.field {
            FieldAxis::Coupling(v) => Ok(v.clone()),
            FieldAxis::Efield(v) => v
                .iter()
                .map(|&e| omega_from_field(&GeometryParams { efield_v_per_m: e, ..self.geometry }))
                .collect(),
        }
    }

    /// Parses the flat `key = value` format described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_entries(parse_entries(text)?)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        Self::parse(&text)
    }

    /// Builds a config from already-split entries; later callers merge CLI
    /// overrides into the map before calling this.
    pub fn from_entries(entries: BTreeMap<String, String>) -> Result<Self> {
        let mut cfg = Self {
            temps: Vec::new(),
            forster_mev: Vec::new(),
            field: FieldAxis::Coupling(Vec::new()),
            exciton_mev: DEFAULT_EXCITON_MEV,
            dipolar_mev: None,
            geometry: GeometryParams::default(),
            output: PathBuf::from("sweep.csv"),
            measures: Measures::ALL,
            gqd: GqdSettings::default(),
        };
        let mut field_seen = false;
        let mut temps_seen = false;
        for (key, value) in &entries {
            match key.as_str() {
                "temps" | "temps_range" => {
                    if std::mem::replace(&mut temps_seen, true) {
                        return Err(Error::Config("give exactly one of temps / temps_range".into()));
                    }
                    cfg.temps = if key == "temps" { parse_list(key, value)? } else { parse_range(value)? };
                }
                "hbar_lambda" => cfg.forster_mev = parse_list(key, value)?,
                "hbar_Omega" | "efield" => {
                    if std::mem::replace(&mut field_seen, true) {
                        return Err(Error::Config("give exactly one of efield / hbar_Omega".into()));
                    }
                    let v = parse_list(key, value)?;
                    cfg.field = if key == "efield" { FieldAxis::Efield(v) } else { FieldAxis::Coupling(v) };
                }
                "hbar_omega" => cfg.exciton_mev = parse_number(key, value)?,
                "hbar_Jz" => cfg.dipolar_mev = Some(parse_number(key, value)?),
                "dipole_debye" => cfg.geometry.dipole_debye = parse_number(key, value)?,
                "separation_nm" => cfg.geometry.separation_nm = parse_number(key, value)?,
                "theta" => cfg.geometry.theta = parse_number(key, value)?,
                "cos_de" => cfg.geometry.cos_de = parse_number(key, value)?,
                "output" => cfg.output = PathBuf::from(value),
                "measures" => cfg.measures = parse_measures(value)?,
                "restarts" => cfg.gqd.random_restarts = parse_integer(key, value)?,
                "seed" => cfg.gqd.seed = parse_integer(key, value)? as u64,
                other => return Err(Error::Config(format!("unknown key `{other}`"))),
            }
        }
        if !temps_seen {
            return Err(Error::Config("missing temps / temps_range".into()));
        }
        if !field_seen {
            return Err(Error::Config("missing efield / hbar_Omega".into()));
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// ħω default (meV), read as the exciton detuning from the drive. Only
/// ħω + ħΩ enters the state, so a bare exciton energy of order 1 eV would
/// freeze every dot into `|1⟩` at any temperature considered here.
pub const DEFAULT_EXCITON_MEV: f64 = 5.0;

pub const DEFAULT_FORSTER_MEV: [f64; 4] = [1.0, 5.0, 10.0, 15.0];

/// Splits `key = value` lines. Duplicate keys are rejected.
pub fn parse_entries(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", n + 1)))?;
        let key = k.trim().to_string();
        if out.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(Error::Config(format!("line {}: duplicate key `{key}`", n + 1)));
        }
    }
    Ok(out)
}

fn parse_number(key: &str, value: &str) -> Result<f64> {
    value
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{value}` as a number")))
}

fn parse_integer(key: &str, value: &str) -> Result<usize> {
    value
        .trim()
        .parse::<usize>()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{value}` as a non-negative integer")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_number(key, s)).collect()
}

fn parse_range(value: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = value.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Config("`temps_range` needs `min, max, steps`".into()));
    }
    let (lo, hi) = (parse_number("temps_range", parts[0])?, parse_number("temps_range", parts[1])?);
    let steps = parse_integer("temps_range", parts[2])?;
    Ok(linspace(lo, hi, steps))
}

fn parse_measures(value: &str) -> Result<Measures> {
    let mut m = Measures { discord: false, concurrence_lb: false, entropy: false };
    for name in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match name {
            "discord" => m.discord = true,
            "concurrence_lb" => m.concurrence_lb = true,
            "entropy" => m.entropy = true,
            other => return Err(Error::Config(format!("unknown measure `{other}`"))),
        }
    }
    Ok(m)
}

pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| if i + 1 == steps { hi } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 })
            .collect(),
    }
}

/// Built-in configs for the three field settings: zero field, ħΩ = 2.5 meV
/// (≈ 20 MV/m with a 6 D dipole) and ħΩ = 5 meV (twice the field).
pub fn figure_preset(n: u8) -> Result<SweepConfig> {
    let field = match n {
        1 => 0.0,
        2 => 2.5,
        3 => 5.0,
        _ => return Err(Error::Config(format!("unknown figure preset {n}; expected 1, 2 or 3"))),
    };
    let cfg = SweepConfig {
        temps: linspace(MIN_TEMPERATURE, 100.0, 100),
        forster_mev: DEFAULT_FORSTER_MEV.to_vec(),
        field: FieldAxis::Coupling(vec![field]),
        exciton_mev: DEFAULT_EXCITON_MEV,
        dipolar_mev: None,
        geometry: GeometryParams::default(),
        output: PathBuf::from(format!("figure{n}.csv")),
        measures: Measures::ALL,
        gqd: GqdSettings::default(),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// One sweep point.
#[derive(Clone, Debug)]
pub struct CorrelationRecord {
    pub temperature: f64,
    pub forster_mev: f64,
    pub field_mev: f64,
    pub dipolar_mev: f64,
    /// Minimized global discord, bits.
    pub discord: f64,
    /// σz closed form, bits.
    pub discord_closed_form: f64,
    pub tau3: f64,
    pub entropy: f64,
    pub minimizer: Option<MeasurementAngles>,
    pub flags: Vec<String>,
}

impl CorrelationRecord {
    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag || f.starts_with(&format!("{flag}:")))
    }
}

fn evaluate_point(
    params: &ModelParams,
    temperature: f64,
    measures: Measures,
    settings: &GqdSettings,
) -> CorrelationRecord {
    let mut rec = CorrelationRecord {
        temperature,
        forster_mev: params.forster_mev,
        field_mev: params.field_mev,
        dipolar_mev: params.dipolar_mev,
        discord: f64::NAN,
        discord_closed_form: f64::NAN,
        tau3: f64::NAN,
        entropy: f64::NAN,
        minimizer: None,
        flags: Vec::new(),
    };
    let rho = match build_hamiltonian(params).and_then(|h| gibbs_state(&h, temperature)) {
        Ok(r) => r,
        Err(e) => {
            rec.flags.push(format!("error:{e}"));
            return rec;
        }
    };
    if let Err(v) = validate_blocks(&rho) {
        rec.flags.push(format!("block_check:{v}"));
    }
    if measures.discord {
        match gqd_minimize(&rho, settings) {
            Ok(r) => {
                rec.discord = r.value;
                rec.discord_closed_form = r.closed_form_value.unwrap_or(f64::NAN);
                rec.minimizer = Some(r.minimizer);
                if r.agreement_gap < -SIGMA_Z_TOLERANCE {
                    rec.flags.push("sigma_z_beaten".into());
                }
                if !r.converged {
                    rec.flags.push("refinement_unconverged".into());
                }
            }
            Err(e) => rec.flags.push(format!("discord_error:{e}")),
        }
    }
    if measures.concurrence_lb {
        match tau3(&rho) {
            Ok(t) => rec.tau3 = t,
            Err(e) => rec.flags.push(format!("tau3_error:{e}")),
        }
    }
    if measures.entropy {
        rec.entropy = von_neumann_entropy(&rho);
    }
    rec
}

/// Evaluates every `(λ, Ω, T)` point, λ-major then Ω then ascending T.
/// Points run in parallel; the output order does not depend on scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<CorrelationRecord>> {
    cfg.validate()?;
    let dipolar = cfg.dipolar()?;
    let fields = cfg.field_couplings()?;
    let mut temps = cfg.temps.clone();
    temps.sort_by(f64::total_cmp);

    let mut points = Vec::with_capacity(cfg.forster_mev.len() * fields.len() * temps.len());
    for &l in &cfg.forster_mev {
        for &o in &fields {
            let p = ModelParams::new(cfg.exciton_mev, o, dipolar, l)?;
            points.extend(temps.iter().map(|&t| (p, t)));
        }
    }
    Ok(points.par_iter().map(|(p, t)| evaluate_point(p, *t, cfg.measures, &cfg.gqd)).collect())
}

/// Everything computed at a single point, for inspection.
#[derive(Clone, Debug)]
pub struct PointReport {
    pub params: ModelParams,
    pub temperature: f64,
    pub partition_function: f64,
    pub blocks: ClosedFormElements,
    pub closed_form_blocks: ClosedFormElements,
    pub entropy: f64,
    pub discord: DiscordResult,
    pub tau3: Tau3Breakdown,
}

pub fn inspect_point(params: &ModelParams, temperature: f64, settings: &GqdSettings) -> Result<PointReport> {
    let h = build_hamiltonian(params)?;
    let rho = gibbs_state(&h, temperature)?;
    let blocks = validate_blocks(&rho).map_err(|v| Error::InvalidDensityMatrix(v.to_string()))?;
    Ok(PointReport {
        params: *params,
        temperature,
        partition_function: partition_function(&h, temperature)?,
        blocks,
        closed_form_blocks: closed_form_elements(params, temperature)?,
        entropy: von_neumann_entropy(&rho),
        discord: gqd_minimize(&rho, settings)?,
        tau3: tau3_breakdown(&rho)?,
    })
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa.to_string()), exp.abs())
    }
}

pub fn csv_string(records: &[CorrelationRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let flags = r.flags.join(";").replace([',', '\n', '\r'], " ");
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            format_sig(r.temperature),
            format_sig(r.forster_mev),
            format_sig(r.field_mev),
            format_sig(r.dipolar_mev),
            format_sig(r.discord),
            format_sig(r.discord_closed_form),
            format_sig(r.tau3),
            format_sig(r.entropy),
            flags
        );
    }
    out
}

pub fn emit_csv(records: &[CorrelationRecord], path: &Path) -> Result<()> {
    if records.is_empty() {
        return Err(Error::Config("no records to write".into()));
    }
    fs::write(path, csv_string(records)).map_err(|e| io_error(path, e))
}

/// gnuplot script drawing discord (top) and τ₃ (bottom) against T, one
/// curve per (λ, Ω) series. `csv_name` is referenced relative to the
/// script's directory.
pub fn plot_script(records: &[CorrelationRecord], csv_name: &str) -> String {
    let mut series: Vec<(f64, f64)> = Vec::new();
    for r in records {
        if !series.contains(&(r.forster_mev, r.field_mev)) {
            series.push((r.forster_mev, r.field_mev));
        }
    }
    let several_fields = series.iter().any(|s| s.1 != series[0].1);
    let png = Path::new(csv_name).with_extension("png");
    let mut s = String::new();
    let _ = writeln!(s, "# gnuplot script; run from this directory with: gnuplot <this file>");
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set terminal pngcairo size 800,900");
    let _ = writeln!(s, "set output '{}'", png.display());
    let _ = writeln!(s, "set multiplot layout 2,1");
    let _ = writeln!(s, "set xlabel 'T (K)'");
    let _ = writeln!(s, "set key top right");
    for (column, label) in [(5, "discord (bits)"), (7, "tau_3")] {
        let _ = writeln!(s, "set ylabel '{label}'");
        let curves: Vec<String> = series
            .iter()
            .map(|&(l, o)| {
                let title = if several_fields {
                    format!("lambda = {} meV, Omega = {} meV", format_sig(l), format_sig(o))
                } else {
                    format!("lambda = {} meV", format_sig(l))
                };
                format!(
                    "'{csv_name}' every ::1 using 1:((abs($2-{})<1e-9 && abs($3-{})<1e-9) ? ${column} : 1/0) with linespoints pt 7 ps 0.4 title '{title}'",
                    format_sig(l),
                    format_sig(o)
                )
            })
            .collect();
        let _ = writeln!(s, "plot {}", curves.join(", \\\n     "));
    }
    let _ = writeln!(s, "unset multiplot");
    s
}

pub fn emit_plot_script(records: &[CorrelationRecord], csv_name: &str, path: &Path) -> Result<()> {
    fs::write(path, plot_script(records, csv_name)).map_err(|e| io_error(path, e))
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), message: e.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_formatting() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(2.5), "2.5");
        assert_eq!(format_sig(0.1), "0.1");
        assert_eq!(format_sig(-0.180_123_456_789_123), "-0.180123456789");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig(1.234e-7), "1.234e-07");
        assert_eq!(format_sig(6.02e23), "6.02e+23");
        assert_eq!(format_sig(123_456_789_012.0), "123456789012");
        assert_eq!(format_sig(f64::NAN), "nan");
    }

    #[test]
    fn config_parsing() {
        let cfg = SweepConfig::parse(
            "# comment\n temps = 1, 2 ,3\nhbar_lambda = 5\nefield = 2e7 # V/m\nmeasures = discord\nseed = 9\n",
        )
        .unwrap();
        assert_eq!(cfg.temps, vec![1.0, 2.0, 3.0]);
        assert_eq!(cfg.gqd.seed, 9);
        assert!(!cfg.measures.entropy);
        let omega = cfg.field_couplings().unwrap();
        assert!((omega[0] - 2.498).abs() < 0.01);
        assert!(cfg.dipolar().unwrap() > 0.0);

        let r = SweepConfig::parse("temps_range = 0.1, 100, 4\nhbar_lambda = 1\nhbar_Omega = 0\n").unwrap();
        assert_eq!(r.temps.len(), 4);
        assert_eq!(r.temps[3], 100.0);
    }

    #[test]
    fn config_errors() {
        let cases = [
            "temps = 1\nhbar_lambda = 1\n",
            "temps = 1\nhbar_lambda = 1\nhbar_Omega = 0\nefield = 1\n",
            "temps = 0.05\nhbar_lambda = 1\nhbar_Omega = 0\n",
            "temps = 1\nhbar_lambda = 1\nhbar_Omega = 0\nmeasures = \n",
            "temps = 1\nhbar_lambda = 1\nhbar_Omega = 0\nbogus = 2\n",
            "temps = 1\ntemps = 2\nhbar_lambda = 1\nhbar_Omega = 0\n",
            "temps = 1\nhbar_lambda = -1\nhbar_Omega = 0\n",
            "temps = x\nhbar_lambda = 1\nhbar_Omega = 0\n",
            "temps = 1\nhbar_lambda\n",
        ];
        for text in cases {
            assert!(matches!(SweepConfig::parse(text), Err(Error::Config(_)) | Err(Error::InvalidParameter(_))), "{text}");
        }
    }

    #[test]
    fn presets() {
        assert_eq!(figure_preset(1).unwrap().field, FieldAxis::Coupling(vec![0.0]));
        assert_eq!(figure_preset(2).unwrap().field, FieldAxis::Coupling(vec![2.5]));
        assert_eq!(figure_preset(3).unwrap().field, FieldAxis::Coupling(vec![5.0]));
        let p = figure_preset(1).unwrap();
        assert!(p.temps.len() >= 100);
        assert_eq!(p.temps[0], 0.1);
        assert_eq!(*p.temps.last().unwrap(), 100.0);
        assert!(p.forster_mev.iter().any(|&l| l < 10.0) && p.forster_mev.iter().any(|&l| l > 10.0));
        assert!(figure_preset(4).is_err());
    }

    #[test]
    fn sweep_order_and_zero_column() {
        let mut cfg = figure_preset(2).unwrap();
        cfg.temps = vec![20.0, 1.0, 5.0];
        cfg.forster_mev = vec![0.0, 3.0];
        cfg.field = FieldAxis::Coupling(vec![0.0, 2.5]);
        let recs = run_sweep(&cfg).unwrap();
        assert_eq!(recs.len(), 12);
        let keys: Vec<(f64, f64, f64)> = recs.iter().map(|r| (r.forster_mev, r.field_mev, r.temperature)).collect();
        assert_eq!(keys[0], (0.0, 0.0, 1.0));
        assert_eq!(keys[2], (0.0, 0.0, 20.0));
        assert_eq!(keys[3], (0.0, 2.5, 1.0));
        assert_eq!(keys[6], (3.0, 0.0, 1.0));
        for r in recs.iter().filter(|r| r.forster_mev == 0.0) {
            assert!(r.discord.abs() < 1e-9 && r.tau3.abs() < 1e-9);
        }
        for r in &recs {
            assert!(r.entropy >= 0.0 && r.entropy <= 3.0);
        }
    }

    #[test]
    fn csv_layout() {
        let mut cfg = figure_preset(1).unwrap();
        cfg.temps = vec![1.0, 2.0];
        cfg.forster_mev = vec![5.0];
        let recs = run_sweep(&cfg).unwrap();
        let text = csv_string(&recs);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1].split(',').count(), 9);
        assert!(emit_csv(&[], Path::new("/nonexistent/x.csv")).is_err());
        let err = emit_csv(&recs, Path::new("/nonexistent/dir/x.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/x.csv"));
    }

    #[test]
    fn unrequested_measures_are_nan() {
        let mut cfg = figure_preset(1).unwrap();
        cfg.temps = vec![3.0];
        cfg.forster_mev = vec![5.0];
        cfg.measures = Measures { discord: false, concurrence_lb: true, entropy: false };
        let rec = &run_sweep(&cfg).unwrap()[0];
        assert!(rec.discord.is_nan() && rec.entropy.is_nan());
        assert!(rec.tau3 > 0.0);
    }

    #[test]
    fn plot_script_curves() {
        let mk = |l: f64, t: f64| CorrelationRecord {
            temperature: t,
            forster_mev: l,
            field_mev: 0.0,
            dipolar_mev: 0.18,
            discord: 0.1,
            discord_closed_form: 0.1,
            tau3: 0.0,
            entropy: 1.0,
            minimizer: None,
            flags: vec![],
        };
        let recs: Vec<_> = [1.0, 5.0, 10.0].iter().flat_map(|&l| [mk(l, 1.0), mk(l, 2.0)]).collect();
        let script = plot_script(&recs, "figure1.csv");
        let plots: Vec<&str> = script.split("\nplot ").skip(1).collect();
        assert_eq!(plots.len(), 2);
        for p in plots {
            assert_eq!(p.matches(" title '").count(), 3);
        }
        assert!(script.contains("'figure1.csv'"));
        assert!(!script.contains('/'.to_string().repeat(2).as_str()));

        let single = plot_script(&recs[..1], "one.csv");
        assert_eq!(single.matches(" title '").count(), 2);
    }
}
