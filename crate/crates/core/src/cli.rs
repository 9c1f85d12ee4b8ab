// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: `eval`, `scan`, `fig` and `verify`.
//!
//! Every option can also come from a config file of flat `key = value` lines
//! (`#` starts a comment) passed with `--config`; keys are the long flag
//! names and flags on the command line win.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::analytic::{evaluate_series, Spacing, TimeGrid};
use crate::asymptotics;
use crate::checks::{run_checks, VerifyOptions};
use crate::error::{Error, Result};
use crate::nonhermitian;
use crate::spectral::{BathSpec, ModelSpec};

const EVAL_HEADER: &str = "t,gamma,P_x,phi,C_x,source";
const SCAN_HEADER: &str = "s,A,B,eps,tau,t,gamma,P_x,phi,C_x,source";

#[derive(Debug, Parser)]
#[command(
    name = "dephasing",
    version,
    about = "Qubit dephasing correlators in the spin-boson model"
)]
pub struct Cli {
    /// Flat `key = value` file supplying defaults for any flag.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form correlators on a time grid.
    ///
    /// CSV columns: t,gamma,P_x,phi,C_x,source.
    Eval(EvalArgs),
    /// Closed-form correlators over the cartesian product of parameter lists.
    ///
    /// CSV columns: s,A,B,eps,tau,t,gamma,P_x,phi,C_x,source.
    Scan(ScanArgs),
    /// Datasets behind the four figures, written as figN.csv.
    ///
    /// fig1: panel,A,t,P_x,abs_C_x. fig2: panel,s,t,P_x,abs_C_x,P_0,
    /// abs_ln_P_over_P0,abs_ln_abs_C_over_P0. fig3: s,tau,t,P_x.
    /// fig4: s,t,tau,P_x.
    Fig(FigArgs),
    /// Cross-validation suite; one `CHECK <name> <pass|fail> <residual>` line
    /// per check, exit status 0 iff all pass.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub tmin: Option<f64>,
    #[arg(long)]
    pub tmax: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Log-spaced grid (requires tmin > 0).
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long = "A")]
    pub a: Option<f64>,
    #[arg(long = "B")]
    pub b: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ScanArgs {
    #[arg(long, value_delimiter = ',')]
    pub s: Vec<f64>,
    #[arg(long = "A", value_delimiter = ',')]
    pub a: Vec<f64>,
    #[arg(long = "B", value_delimiter = ',')]
    pub b: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub tau: Vec<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub id: Option<u8>,
    #[arg(long)]
    pub outdir: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    /// Multiplies every check tolerance.
    #[arg(long = "tol-scale")]
    pub tol_scale: Option<f64>,
}

/// Parsed `key = value` config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile(HashMap<String, String>);

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = HashMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", n + 1)))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Self(map))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    fn value<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.0
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::Config(format!("config key `{key}`: cannot parse `{v}`")))
            })
            .transpose()
    }

    fn list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.0
            .get(key)
            .map(|v| {
                v.split(',')
                    .map(|x| {
                        x.trim().parse().map_err(|_| {
                            Error::Config(format!("config key `{key}`: cannot parse `{x}`"))
                        })
                    })
                    .collect()
            })
            .transpose()
    }

    fn flag(&self, key: &str) -> Result<bool> {
        Ok(self.value::<bool>(key)?.unwrap_or(false))
    }
}

fn pick<T: FromStr>(flag: Option<T>, file: &ConfigFile, key: &str, default: T) -> Result<T> {
    match flag {
        Some(v) => Ok(v),
        None => Ok(file.value(key)?.unwrap_or(default)),
    }
}

fn pick_list(flag: Vec<f64>, file: &ConfigFile, key: &str, default: f64) -> Result<Vec<f64>> {
    if !flag.is_empty() {
        return Ok(flag);
    }
    Ok(file.list(key)?.unwrap_or_else(|| vec![default]))
}

/// Time grid description before it is materialized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    fn resolve(args: &GridArgs, file: &ConfigFile) -> Result<Self> {
        let log = args.log || file.flag("log")?;
        Ok(Self {
            t_min: pick(args.tmin, file, "tmin", if log { 1e-2 } else { 0.0 })?,
            t_max: pick(args.tmax, file, "tmax", 10.0)?,
            points: pick(args.points, file, "points", 101)?,
            spacing: if log { Spacing::Log } else { Spacing::Linear },
        })
    }

    pub fn build(&self) -> Result<TimeGrid> {
        if self.t_min.partial_cmp(&self.t_max) != Some(std::cmp::Ordering::Less) || self.points < 2
        {
            return Err(Error::Grid("need tmin < tmax and points >= 2"));
        }
        match self.spacing {
            Spacing::Linear => TimeGrid::linear(self.t_min, self.t_max, self.points),
            Spacing::Log => TimeGrid::log(self.t_min, self.t_max, self.points),
        }
    }
}

/// Fully resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub enum RunConfig {
    Eval {
        model: ModelSpec,
        grid: GridSpec,
        output_path: Option<PathBuf>,
    },
    Scan {
        s: Vec<f64>,
        a: Vec<f64>,
        b: Vec<f64>,
        eps: Vec<f64>,
        tau_list: Vec<f64>,
        grid: GridSpec,
        output_path: Option<PathBuf>,
    },
    Fig {
        id: u8,
        outdir: PathBuf,
    },
    Verify {
        tol_scale: f64,
    },
}

impl RunConfig {
    pub fn resolve(cli: Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        Ok(match cli.command {
            Command::Eval(e) => {
                let bath = BathSpec::with_tau(
                    pick(e.s, &file, "s", 1.0)?,
                    pick(e.a, &file, "A", 1.0)?,
                    pick(e.b, &file, "B", 1.0)?,
                    pick(e.tau, &file, "tau", 0.0)?,
                )?;
                let eps = pick(e.eps, &file, "eps", 0.0)?;
                RunConfig::Eval {
                    model: ModelSpec::new(bath, eps, 0.0)?,
                    grid: GridSpec::resolve(&e.grid, &file)?,
                    output_path: e.out.or(file.value("out")?),
                }
            }
            Command::Scan(sc) => RunConfig::Scan {
                s: pick_list(sc.s, &file, "s", 1.0)?,
                a: pick_list(sc.a, &file, "A", 1.0)?,
                b: pick_list(sc.b, &file, "B", 1.0)?,
                eps: pick_list(sc.eps, &file, "eps", 0.0)?,
                tau_list: pick_list(sc.tau, &file, "tau", 0.0)?,
                grid: GridSpec::resolve(&sc.grid, &file)?,
                output_path: sc.out.or(file.value("out")?),
            },
            Command::Fig(f) => {
                let id = match f.id {
                    Some(id) => id,
                    None => file
                        .value::<u8>("id")?
                        .ok_or_else(|| Error::Config("fig needs --id".into()))?,
                };
                if !(1..=4).contains(&id) {
                    return Err(Error::Config(format!("unknown figure id {id}")));
                }
                RunConfig::Fig {
                    id,
                    outdir: pick(f.outdir, &file, "outdir", PathBuf::from("."))?,
                }
            }
            Command::Verify(v) => RunConfig::Verify {
                tol_scale: pick(v.tol_scale, &file, "tol-scale", 1.0)?,
            },
        })
    }
}

/// Shortest round-trip decimal; positional for exponents in `[-5, 17)`,
/// scientific otherwise.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..17).contains(&exp) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn row(fields: &[f64]) -> String {
    fields
        .iter()
        .map(|&v| format_number(v))
        .collect::<Vec<_>>()
        .join(",")
}

/// Hermitian model with the same correlators.
fn effective(model: &ModelSpec) -> Result<ModelSpec> {
    if model.bath().is_hermitian() {
        return Ok(*model);
    }
    Ok(model.with_bath(nonhermitian::effective_bath(model.bath())?))
}

fn series_rows(model: &ModelSpec, grid: &TimeGrid) -> Result<Vec<String>> {
    let series = evaluate_series(&effective(model)?, grid)?;
    let label = series.source().label();
    Ok(series
        .points()
        .iter()
        .map(|p| format!("{},{label}", row(&[p.t, p.gamma, p.p_x, p.phi, p.c_x])))
        .collect())
}

pub fn write_eval<W: Write + ?Sized>(
    model: &ModelSpec,
    grid: &TimeGrid,
    out: &mut W,
) -> Result<()> {
    writeln!(out, "{EVAL_HEADER}")?;
    for line in series_rows(model, grid)? {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn write_scan<W: Write + ?Sized>(
    models: &[ModelSpec],
    grid: &TimeGrid,
    out: &mut W,
) -> Result<()> {
    let blocks = models
        .par_iter()
        .map(|m| {
            let b = m.bath();
            let prefix = row(&[b.s(), b.a(), b.b(), m.epsilon(), b.tau()]);
            Ok(series_rows(m, grid)?
                .into_iter()
                .map(|l| format!("{prefix},{l}"))
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    writeln!(out, "{SCAN_HEADER}")?;
    for line in blocks.into_iter().flatten() {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn with_output(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(fs::File::create(p)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

pub const FIG1_A: [f64; 3] = [0.8, 1.0, 2.0];
pub const FIG2_PANELS: [(&str, &[f64]); 4] = [
    ("a", &[0.5, 1.5, 2.0, 2.5, 3.0]),
    ("b", &[1.5, 2.0, 2.5]),
    ("c", &[3.0, 3.5, 4.0]),
    ("d", &[0.25, 0.5, 0.75]),
];
pub const FIG_S: [f64; 3] = [1.0, 0.5, 2.5];
pub const FIG3_TAU: [f64; 6] = [0.0, 0.2, 0.4, 0.6, 1.0, 2.0];
pub const FIG4_T: [f64; 7] = [0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0];

fn short_grid() -> Result<TimeGrid> {
    TimeGrid::linear(0.0, 2.0, 201)
}

fn long_grid() -> Result<TimeGrid> {
    TimeGrid::log(1e-1, 1e4, 101)
}

fn unit_model(s: f64, a: f64, tau: f64) -> Result<ModelSpec> {
    Ok(ModelSpec::unbiased(BathSpec::with_tau(s, a, 1.0, tau)?))
}

fn figure_1() -> Result<Vec<String>> {
    let mut lines = vec!["panel,A,t,P_x,abs_C_x".to_string()];
    let short = short_grid()?;
    let long = long_grid()?;
    let panels = [
        ("a", FIG1_A.to_vec(), &short),
        ("b", vec![0.8], &long),
        ("c", vec![1.0], &long),
        ("d", vec![2.0], &long),
    ];
    for (panel, amps, grid) in panels {
        for a in amps {
            let series = evaluate_series(&unit_model(1.0, a, 0.0)?, grid)?;
            for p in series.points() {
                lines.push(format!("{panel},{}", row(&[a, p.t, p.p_x, p.c_x.abs()])));
            }
        }
    }
    Ok(lines)
}

fn figure_2() -> Result<Vec<String>> {
    let mut lines =
        vec!["panel,s,t,P_x,abs_C_x,P_0,abs_ln_P_over_P0,abs_ln_abs_C_over_P0".to_string()];
    let short = short_grid()?;
    let long = long_grid()?;
    for (panel, svals) in FIG2_PANELS {
        let grid = if panel == "a" { &short } else { &long };
        for &s in svals {
            let model = unit_model(s, 1.0, 0.0)?;
            let p0 = asymptotics::coefficients(model.bath())?.p0;
            for p in evaluate_series(&model, grid)?.points() {
                let lp = (p.p_x / p0).ln().abs();
                let lc = (p.c_x / p0).abs().ln().abs();
                lines.push(format!(
                    "{panel},{}",
                    row(&[s, p.t, p.p_x, p.c_x.abs(), p0, lp, lc])
                ));
            }
        }
    }
    Ok(lines)
}

fn figure_3() -> Result<Vec<String>> {
    let mut lines = vec!["s,tau,t,P_x".to_string()];
    let grid = TimeGrid::log(1e-2, 1e3, 51)?;
    for s in FIG_S {
        for tau in FIG3_TAU {
            let model = effective(&unit_model(s, 1.0, tau)?)?;
            for p in evaluate_series(&model, &grid)?.points() {
                lines.push(row(&[s, tau, p.t, p.p_x]));
            }
        }
    }
    Ok(lines)
}

fn figure_4() -> Result<Vec<String>> {
    let mut lines = vec!["s,t,tau,P_x".to_string()];
    for s in FIG_S {
        for t in FIG4_T {
            for k in 0..201 {
                let tau = 0.01 * k as f64;
                let p = nonhermitian::p_x_nh(&BathSpec::with_tau(s, 1.0, 1.0, tau)?, t)?;
                lines.push(row(&[s, t, tau, p]));
            }
        }
    }
    Ok(lines)
}

/// Writes `fig<id>.csv` into `outdir` and returns its path.
pub fn write_figure(id: u8, outdir: &Path) -> Result<PathBuf> {
    let lines = match id {
        1 => figure_1()?,
        2 => figure_2()?,
        3 => figure_3()?,
        4 => figure_4()?,
        _ => return Err(Error::Config(format!("unknown figure id {id}"))),
    };
    fs::create_dir_all(outdir)?;
    let path = outdir.join(format!("fig{id}.csv"));
    let mut w = BufWriter::new(fs::File::create(&path)?);
    for l in lines {
        writeln!(w, "{l}")?;
    }
    w.flush()?;
    Ok(path)
}

/// Runs a resolved configuration; returns the process exit code.
pub fn execute(cfg: &RunConfig) -> Result<i32> {
    match cfg {
        RunConfig::Eval {
            model,
            grid,
            output_path,
        } => {
            let grid = grid.build()?;
            with_output(output_path.as_deref(), |w| write_eval(model, &grid, w))?;
        }
        RunConfig::Scan {
            s,
            a,
            b,
            eps,
            tau_list,
            grid,
            output_path,
        } => {
            let grid = grid.build()?;
            let mut models = Vec::new();
            for &s in s {
                for &a in a {
                    for &b in b {
                        for &e in eps {
                            for &tau in tau_list {
                                models.push(ModelSpec::new(
                                    BathSpec::with_tau(s, a, b, tau)?,
                                    e,
                                    0.0,
                                )?);
                            }
                        }
                    }
                }
            }
            with_output(output_path.as_deref(), |w| write_scan(&models, &grid, w))?;
        }
        RunConfig::Fig { id, outdir } => {
            let path = write_figure(*id, outdir)?;
            eprintln!("wrote {}", path.display());
        }
        RunConfig::Verify { tol_scale } => {
            let opts = VerifyOptions {
                tol_scale: *tol_scale,
                ..VerifyOptions::default()
            };
            let outcomes = run_checks(&opts);
            let stdout = io::stdout();
            let mut w = stdout.lock();
            for o in &outcomes {
                writeln!(w, "{o}")?;
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            eprintln!(
                "{} of {} checks passed",
                outcomes.len() - failed,
                outcomes.len()
            );
            return Ok(if failed == 0 { 0 } else { 1 });
        }
    }
    Ok(0)
}

/// Entry point shared by the binary; parses `args` and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match RunConfig::resolve(cli).and_then(|cfg| execute(&cfg)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
