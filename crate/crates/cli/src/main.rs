use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hilbert_lab::cantor::DEFAULT_DEPTH_CAP;
use hilbert_lab::{
    boundary_value, build_set, build_set_partial, grid_min_ratio, homogeneity_delta, run_suite, set_from_json, tail_csv,
    tail_sweep, BoundaryKind, CantorSpec, GridSpec, IntervalUnion, Measure, Outcome, Selector, SuiteConfig, Summary,
    Transform,
};
use serde_json::{json, Value};

/// Input errors, distinct from failed and out-of-hypothesis checks.
const EXIT_INPUT: u8 = 2;
const EXIT_FAIL: u8 = 1;
const EXIT_PRECONDITION: u8 = 3;

#[derive(Parser)]
#[command(name = "hilbert-lab", version, about = "Hilbert transforms of measures, level sets and the check suite")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    /// `H = Re F/π`
    H,
    /// `Re F`
    F,
}

impl From<Which> for Transform {
    fn from(w: Which) -> Self {
        match w {
            Which::H => Transform::H,
            Which::F => Transform::F,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Boundary values at points: CSV `x,H,re_F,im_F,status`.
    Transform {
        #[arg(long)]
        measure: PathBuf,
        /// Comma-separated values or a grid `start:stop:points:log|lin`.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distribution function over a threshold grid: CSV `t,lambda,t_lambda`.
    Sweep {
        #[arg(long)]
        measure: PathBuf,
        /// Restrict level sets to this interval union.
        #[arg(long)]
        set: Option<PathBuf>,
        #[arg(long, default_value = "1:1000:16:log", allow_hyphen_values = true)]
        t_grid: String,
        #[arg(long, value_enum, default_value = "h")]
        transform: Which,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a check family and prints a JSON summary.
    Verify {
        /// all, boole, loomis, prop32, prop34, key, thm14, lemma33, poltoratski, prop52 or cantor.
        #[arg(default_value = "all")]
        selector: String,
        /// Extra measure checked alongside the bundled fixtures.
        #[arg(long)]
        measure: Option<PathBuf>,
        /// Set for the homogeneous-set checks on the extra measure.
        #[arg(long)]
        set: Option<PathBuf>,
        /// Threshold grid for the extra measure.
        #[arg(long, allow_hyphen_values = true)]
        t_grid: Option<String>,
        /// Replaces every check's margin tolerance.
        #[arg(long, allow_hyphen_values = true)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 2)]
        seed_k: u64,
        /// Cantor truncation level.
        #[arg(long, default_value_t = 2)]
        levels: u32,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth: u32,
        /// Grid points per decade above the homogeneous-set regime threshold.
        #[arg(long, default_value_t = 64)]
        per_decade: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truncated Cantor-type set with exact rational endpoints.
    BuildSet {
        /// `{"levels", "seed_k"}` or a document carrying a `cantor` field.
        #[arg(long, conflicts_with_all = ["levels", "seed_k"])]
        spec: Option<PathBuf>,
        #[arg(long)]
        levels: Option<u32>,
        #[arg(long)]
        seed_k: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth: u32,
        /// List blocks beyond the depth cap instead of failing.
        #[arg(long)]
        partial: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Homogeneity constant of an interval union.
    Homogeneity {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth: u32,
        /// Also report the grid minimum with this spacing.
        #[arg(long)]
        grid_step: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn load_measure(p: &Path) -> Result<Measure> {
    Measure::from_json(&read(p)?).with_context(|| format!("parsing measure {}", p.display()))
}

fn load_set(p: &Path, cap: u32) -> Result<IntervalUnion> {
    set_from_json(&read(p)?, cap).with_context(|| format!("parsing set {}", p.display()))
}

fn grid(s: &str) -> Result<Vec<f64>> {
    Ok(s.parse::<GridSpec>()?.values()?)
}

fn points(s: &str) -> Result<Vec<f64>> {
    if s.contains(':') {
        return grid(s);
    }
    s.split(',')
        .map(|p| p.trim().parse::<f64>().with_context(|| format!("bad point {p:?}")))
        .collect()
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn num(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:?}")
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

fn transform_csv(mu: &Measure, xs: &[f64]) -> String {
    let mut s = String::from("x,H,re_F,im_F,status\n");
    for &x in xs {
        let b = boundary_value(mu, x);
        let status = match b.kind {
            BoundaryKind::Regular => "ok",
            BoundaryKind::Pole => "pole",
            BoundaryKind::DensityEdge => "edge",
        };
        let h = b.re / std::f64::consts::PI;
        writeln!(s, "{},{},{},{},{status}", num(x), num(h), num(b.re), num(b.im)).expect("write to string");
    }
    s
}

fn cantor_spec(spec: Option<&Path>, levels: Option<u32>, seed_k: Option<u64>) -> Result<CantorSpec> {
    let default = CantorSpec { levels: 1, seed_k: 2 };
    let Some(p) = spec else {
        return Ok(CantorSpec {
            levels: levels.unwrap_or(default.levels),
            seed_k: seed_k.unwrap_or(default.seed_k),
        });
    };
    let v: Value = serde_json::from_str(&read(p)?).with_context(|| format!("parsing {}", p.display()))?;
    let inner = v.get("cantor").cloned().unwrap_or(v);
    serde_json::from_value(inner).with_context(|| format!("no Cantor spec in {}", p.display()))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Transform { measure, points: p, out } => {
            let mu = load_measure(&measure)?;
            emit(out.as_deref(), &transform_csv(&mu, &points(&p)?))?;
        }
        Cmd::Sweep { measure, set, t_grid, transform, out } => {
            let mu = load_measure(&measure)?;
            let s = set.map(|p| load_set(&p, DEFAULT_DEPTH_CAP)).transpose()?;
            let pts = tail_sweep(&mu, &grid(&t_grid)?, s.as_ref(), transform.into())?;
            emit(out.as_deref(), &tail_csv(&pts))?;
        }
        Cmd::Verify { selector, measure, set, t_grid, tol, seed_k, levels, depth, per_decade, out } => {
            let sel: Selector = selector.parse()?;
            if let Some(t) = tol {
                if !(t >= 0.0) {
                    bail!("tolerance must be nonnegative, got {t}");
                }
            }
            let cfg = SuiteConfig {
                tolerance: tol,
                seed_k,
                levels,
                depth_cap: depth,
                per_decade,
                measure: measure.as_deref().map(load_measure).transpose()?,
                set: set.as_deref().map(|p| load_set(p, depth)).transpose()?,
                grid: t_grid.as_deref().map(grid).transpose()?,
                ..SuiteConfig::default()
            };
            let summary = Summary::new(run_suite(sel, &cfg)?);
            let mut text = summary.to_json();
            text.push('\n');
            emit(out.as_deref(), &text)?;
            for r in &summary.reports {
                let state = if r.passed {
                    "pass"
                } else if r.precondition_violation {
                    "precondition"
                } else {
                    "FAIL"
                };
                eprintln!("{state:>12}  {:<22} margin {}", r.check_id, num(r.margin));
            }
            return Ok(match summary.outcome {
                Outcome::Pass => 0,
                Outcome::Fail => EXIT_FAIL,
                Outcome::PreconditionOnly => EXIT_PRECONDITION,
            });
        }
        Cmd::BuildSet { spec, levels, seed_k, depth, partial, out } => {
            let spec = cantor_spec(spec.as_deref(), levels, seed_k)?;
            let set = if partial { build_set_partial(spec, depth)? } else { build_set(spec, depth)? };
            let v = serde_json::to_value(set.document())?;
            emit(out.as_deref(), &pretty(&v))?;
        }
        Cmd::Homogeneity { set, depth, grid_step, out } => {
            let e = load_set(&set, depth)?;
            let r = homogeneity_delta(&e)?;
            let mut v = json!({ "homogeneity": r });
            if let Some(step) = grid_step {
                if !(step > 0.0) {
                    bail!("grid step must be positive, got {step}");
                }
                v["grid_min_ratio"] = json!(grid_min_ratio(&e, step));
                v["grid_step"] = json!(step);
            }
            emit(out.as_deref(), &pretty(&v))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
