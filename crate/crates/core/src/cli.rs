//! The `hemisphere-rc` command-line tool.
//!
//! Exit codes: 0 on success, 2 on any usage, configuration or data error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::bench::{run_bench, BenchRecord, BenchSummary};
use crate::config::RunConfig;
use crate::dataset::{read_csv, write_csv};
use crate::error::{Error, Result};
use crate::estimator::{estimate_fbeta, identification_diagnostic, ChoiceSample, IdentificationReport};
use crate::grid::find_modes;
use crate::simulator::{generate, DgpSummary};
use crate::sphere::{build_quadrature, sphere_area};

#[derive(Debug, Parser)]
#[command(name = "hemisphere-rc", version, about = "Random-coefficient density estimation for binary choice")]
pub struct Cli {
    /// TOML run configuration; defaults apply to omitted keys.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Overrides the output grid resolution.
    #[arg(long, global = true)]
    pub grid_res: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a dataset from the configured model and write it as CSV.
    Simulate {
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate f_β on the output grid; writes CSV plus `<out>.report.json`.
    Estimate {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the identification diagnostic; `--out` also writes it as JSON.
    Diagnose {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo error benchmark; writes CSV plus `<out>.summary.json`.
    Bench {
        #[arg(long)]
        out: PathBuf,
    },
}

/// `<path><suffix>`, e.g. `fit.csv` → `fit.csv.report.json`.
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("report is serializable");
    text.push('\n');
    write_text(path, &text)
}

pub fn cmd_simulate(cfg: &RunConfig, out: &Path) -> Result<ChoiceSample> {
    let (sample, _) = generate(&cfg.dgp_spec()?)?;
    write_csv(out, &sample)?;
    Ok(sample)
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeReport {
    pub point: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub data: PathBuf,
    pub n: usize,
    pub d: usize,
    pub truncation: usize,
    pub trimming_level: f64,
    pub grid_points: usize,
    pub warnings: Vec<String>,
    pub modes: Vec<ModeReport>,
    pub diagnostic: IdentificationReport,
    pub config: RunConfig,
}

pub fn cmd_estimate(data: &Path, cfg: &RunConfig, out: &Path) -> Result<EstimateReport> {
    let parsed = read_csv(data)?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    let sample = &parsed.sample;
    let (n, d) = (sample.len(), sample.dim());
    let est_cfg = cfg.estimator_config(n, d)?;
    let grid = cfg.grid(d)?;
    let est = estimate_fbeta(sample, &est_cfg)?;
    let values = est.evaluate_many(grid.points());

    let mut csv = String::new();
    for j in 0..d {
        write!(csv, "b{j},").expect("writing to a String");
    }
    csv.push_str("fbeta\n");
    for (p, v) in grid.points().iter().zip(&values) {
        for c in p.iter() {
            write!(csv, "{c},").expect("writing to a String");
        }
        writeln!(csv, "{v}").expect("writing to a String");
    }
    write_text(out, &csv)?;

    let modes = find_modes(|b| est.evaluate(b), &grid, 0.25, cfg.grid.neighbour_radius)?
        .into_iter()
        .map(|(p, value)| ModeReport {
            point: p.into_coords(),
            value,
        })
        .collect();
    let quad = build_quadrature(d, cfg.diagnostic.quadrature_resolution, Some(cfg.seed))?;
    let report = EstimateReport {
        data: data.to_path_buf(),
        n,
        d,
        truncation: est_cfg.truncation(),
        trimming_level: est.trimming_level(),
        grid_points: grid.len(),
        warnings: parsed.warnings.clone(),
        modes,
        diagnostic: identification_diagnostic(&est, &quad)?,
        config: cfg.clone(),
    };
    write_json(&sidecar(out, ".report.json"), &report)?;
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagnoseReport {
    pub data: PathBuf,
    pub n: usize,
    pub d: usize,
    /// violation_score above this flags a likely failure of hemisphere support.
    pub threshold: f64,
    pub flagged: bool,
    #[serde(flatten)]
    pub diagnostic: IdentificationReport,
}

impl DiagnoseReport {
    pub fn to_text(&self) -> String {
        let r = &self.diagnostic;
        let mut s = String::new();
        writeln!(s, "data: {} (N = {}, d = {})", self.data.display(), self.n, self.d).unwrap();
        writeln!(s, "best hemisphere direction: {:?}", r.direction).unwrap();
        writeln!(s, "hemisphere mass (+): {:.6}", r.hemisphere_mass_plus).unwrap();
        writeln!(s, "hemisphere mass (-): {:.6}", r.hemisphere_mass_minus).unwrap();
        writeln!(s, "positive mass: {:.6}", r.positive_mass).unwrap();
        writeln!(
            s,
            "violation score: {:.6} (threshold {:.6}) {}",
            r.violation_score,
            self.threshold,
            if self.flagged { "FLAGGED" } else { "ok" }
        )
        .unwrap();
        s
    }
}

pub fn cmd_diagnose(data: &Path, cfg: &RunConfig) -> Result<DiagnoseReport> {
    let parsed = read_csv(data)?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    let sample = &parsed.sample;
    let (n, d) = (sample.len(), sample.dim());
    let est = estimate_fbeta(sample, &cfg.estimator_config(n, d)?)?;
    let quad = build_quadrature(d, cfg.diagnostic.quadrature_resolution, Some(cfg.seed))?;
    let diagnostic = identification_diagnostic(&est, &quad)?;
    let threshold = 0.05 * sphere_area(d);
    Ok(DiagnoseReport {
        data: data.to_path_buf(),
        n,
        d,
        threshold,
        flagged: diagnostic.violation_score > threshold,
        diagnostic,
    })
}

pub fn cmd_bench(cfg: &RunConfig, out: &Path) -> Result<(Vec<BenchRecord>, BenchSummary)> {
    let spec = cfg.dgp_spec()?;
    let est_cfg = cfg.estimator_config(spec.sample_size(), spec.dim())?;
    let (records, summary) = run_bench(&spec, &est_cfg, &cfg.bench_config())?;
    let mut csv = String::from("n,replication,truncation,l1,l2,linf\n");
    for r in &records {
        writeln!(csv, "{},{},{},{},{},{}", r.n, r.replication, r.truncation, r.l1, r.l2, r.linf)
            .expect("writing to a String");
    }
    write_text(out, &csv)?;
    #[derive(Serialize)]
    struct Sidecar<'a> {
        #[serde(flatten)]
        summary: &'a BenchSummary,
        dgp: DgpSummary,
        config: &'a RunConfig,
    }
    write_json(
        &sidecar(out, ".summary.json"),
        &Sidecar {
            summary: &summary,
            dgp: DgpSummary::from(&spec),
            config: cfg,
        },
    )?;
    Ok((records, summary))
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(res) = cli.grid_res {
        cfg.grid.resolution = res;
    }
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli)?;
    match &cli.command {
        Command::Simulate { out } => {
            let s = cmd_simulate(&cfg, out)?;
            eprintln!("wrote {} observations to {}", s.len(), out.display());
        }
        Command::Estimate { data, out } => {
            let r = cmd_estimate(data, &cfg, out)?;
            eprintln!(
                "wrote {} grid values to {} (T = {}, {} mode(s))",
                r.grid_points,
                out.display(),
                r.truncation,
                r.modes.len()
            );
        }
        Command::Diagnose { data, out } => {
            let r = cmd_diagnose(data, &cfg)?;
            print!("{}", r.to_text());
            if let Some(out) = out {
                write_json(out, &r)?;
            }
        }
        Command::Bench { out } => {
            let (records, summary) = cmd_bench(&cfg, out)?;
            for s in &summary.sizes {
                eprintln!("N = {:>6}  T = {}  median L2 = {:.5}", s.n, s.truncation, s.median_l2);
            }
            if let Some(slope) = summary.slope {
                eprintln!("log-log slope of median L2: {slope:.4}");
            }
            eprintln!("wrote {} records to {}", records.len(), out.display());
        }
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be >= 1");
            return 2;
        }
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start thread pool: {e}");
            return 2;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
