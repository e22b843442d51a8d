//! The bundled check families, optionally extended with user inputs.

use std::fmt;
use std::str::FromStr;
use std::thread;

use serde::Serialize;
use serde_json::{json, Value};

use super::fixtures::{
    homogeneous_corpus, mixed_measures, poltoratski_fixtures, singular_pairs, small_corpus, two_intervals, wide_corpus,
};
use super::grid::GridSpec;
use super::singular::measure_echo;
use super::*;
use crate::cantor::{check_cantor_combinatorics, check_lemma42, check_thm16_decay, DEFAULT_DEPTH_CAP};
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::measure::Measure;
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Selector {
    All,
    Boole,
    Loomis,
    Prop32,
    Prop34,
    Key,
    Thm14,
    Lemma33,
    Poltoratski,
    Prop52,
    Cantor,
}

impl Selector {
    pub const EACH: [Selector; 10] = [
        Selector::Boole,
        Selector::Loomis,
        Selector::Prop32,
        Selector::Prop34,
        Selector::Key,
        Selector::Thm14,
        Selector::Lemma33,
        Selector::Poltoratski,
        Selector::Prop52,
        Selector::Cantor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Selector::All => "all",
            Selector::Boole => "boole",
            Selector::Loomis => "loomis",
            Selector::Prop32 => "prop32",
            Selector::Prop34 => "prop34",
            Selector::Key => "key",
            Selector::Thm14 => "thm14",
            Selector::Lemma33 => "lemma33",
            Selector::Poltoratski => "poltoratski",
            Selector::Prop52 => "prop52",
            Selector::Cantor => "cantor",
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Selector::All)
            .chain(Selector::EACH)
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownSelector(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Replaces each check's own tolerance when set.
    pub tolerance: Option<f64>,
    pub seed_k: u64,
    pub levels: u32,
    pub depth_cap: u32,
    /// Threshold for the Cantor decay check.
    pub decay_t: f64,
    /// Density of the threshold grid above the homogeneous-set regime.
    pub per_decade: usize,
    pub measure: Option<Measure>,
    pub set: Option<IntervalUnion>,
    pub grid: Option<Vec<f64>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            tolerance: None,
            seed_k: 2,
            levels: 2,
            depth_cap: DEFAULT_DEPTH_CAP,
            decay_t: 50.0,
            per_decade: 64,
            measure: None,
            set: None,
            grid: None,
        }
    }
}

/// Three decades above the regime threshold, excluding the threshold itself.
pub fn regime_grid(mu: &Measure, e: &IntervalUnion, per_decade: usize) -> Vec<f64> {
    let t = regime_threshold(mu, e);
    let n = per_decade.max(1);
    GridSpec::log(t * 10f64.powf(1.0 / n as f64), t * 1000.0, 3 * n).values().expect("valid grid")
}

fn each<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> Result<CheckReport>) -> Result<Vec<CheckReport>> {
    items.into_iter().map(f).collect()
}

/// Inputs outside a check's hypotheses become precondition reports.
fn guarded(id: &str, echo: impl FnOnce() -> Value, r: Result<CheckReport>) -> Result<CheckReport> {
    match r {
        Err(e @ (Error::NotAtomic | Error::NotInSet { .. } | Error::EmptySet | Error::NonPositiveThreshold(_))) => {
            Ok(CheckReport::precondition(id, e.to_string(), echo()))
        }
        other => other,
    }
}

fn family(sel: Selector, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    match sel {
        Selector::All => unreachable!("expanded by the caller"),
        Selector::Boole => {
            let corpus = wide_corpus();
            let runs = corpus.iter().flat_map(|m| [0.1, 1.0, 10.0].map(|s| (m, s * m.total_mass())));
            out.push(CheckReport::combine("boole", each(runs, |(m, t)| check_boole(m, t))?));
            let tail = [10.0, 30.0, 100.0];
            out.push(CheckReport::combine("limit_18", each(mixed_measures().iter().take(1), |m| check_limit_18(m, &tail))?));
        }
        Selector::Loomis => {
            let grid = GridSpec::log(0.1, 1000.0, 9).values()?;
            let wide = wide_corpus();
            let mixed = mixed_measures();
            out.push(CheckReport::combine("loomis", each(wide.iter().chain(&mixed), |m| check_loomis(m, &grid))?));
        }
        Selector::Prop32 => {
            let corpus = small_corpus();
            let runs = corpus.iter().flat_map(|m| [1.0, 10.0, 100.0].map(|t| (m, t)));
            out.push(CheckReport::combine("prop32", each(runs, |(m, t)| check_prop32(m, t))?));
        }
        Selector::Prop34 => {
            let corpus = small_corpus();
            let runs = corpus
                .iter()
                .flat_map(|m| [1.0, 10.0, 100.0].map(|t| (m, t)))
                .flat_map(|(m, t)| [0.1, 0.5, 1.0].map(|d| (m, t, d)));
            out.push(CheckReport::combine("prop34", each(runs, |(m, t, d)| check_prop34(m, t, d))?));
        }
        Selector::Key => {
            let e = two_intervals();
            let corpus = homogeneous_corpus();
            let runs = corpus.iter().flat_map(|m| regime_grid(m, &e, cfg.per_decade).into_iter().map(move |t| (m, t)));
            out.push(CheckReport::combine("key_ineq", each(runs, |(m, t)| check_key_ineq(m, &e, t))?));
        }
        Selector::Thm14 => {
            let e = two_intervals();
            let unit = IntervalUnion::single(0.0, 1.0)?;
            let mut runs: Vec<(Measure, IntervalUnion)> = homogeneous_corpus().into_iter().map(|m| (m, e.clone())).collect();
            runs.push((Measure::dirac(0.5), unit));
            out.push(CheckReport::combine(
                "thm14",
                each(&runs, |(m, s)| check_thm14(m, s, &regime_grid(m, s, cfg.per_decade)))?,
            ));
        }
        Selector::Lemma33 => {
            let corpus = small_corpus();
            let runs = corpus.iter().flat_map(|m| [1.0, 10.0].map(|t| (m, t)));
            out.push(CheckReport::combine("lemma33", each(runs, |(m, t)| check_lemma33(m, t))?));
        }
        Selector::Poltoratski => {
            let grid = [10.0, 100.0, 1000.0];
            out.push(CheckReport::combine(
                "poltoratski",
                each(poltoratski_fixtures(), |(m, g)| check_poltoratski(&m, &g, &grid))?,
            ));
        }
        Selector::Prop52 => {
            let grid = GridSpec::log(10.0, 1e4, 4).values()?;
            out.push(CheckReport::combine(
                "prop52",
                each(singular_pairs(), |(m, n, c)| check_prop52(&m, &n, c, &grid))?,
            ));
        }
        Selector::Cantor => {
            out.push(check_cantor_combinatorics(cfg.levels, cfg.seed_k, cfg.depth_cap)?);
            let far = check_lemma42(cfg.levels, cfg.seed_k, 4, cfg.depth_cap)?;
            let mut r = far.report;
            let list = |v: &[crate::cantor::CantorIndex]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
            r.notes.push(format!("feasible: {}", list(&far.feasible)));
            r.notes.push(format!("skipped: {}", list(&far.skipped)));
            out.push(r);
            out.push(check_thm16_decay(cfg.levels, cfg.seed_k, cfg.decay_t, cfg.depth_cap)?);
        }
    }
    out.extend(user_reports(sel, cfg)?);
    Ok(out)
}

fn user_reports(sel: Selector, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let Some(mu) = &cfg.measure else { return Ok(Vec::new()) };
    let grid = match &cfg.grid {
        Some(g) => g.clone(),
        None => GridSpec::log(1.0, 1000.0, 7).values()?,
    };
    let echo = || json!({ "measure": measure_echo(mu) });
    let runs: Vec<Result<CheckReport>> = match sel {
        Selector::Boole => [0.1, 1.0, 10.0].iter().map(|s| check_boole(mu, s * mu.total_mass())).collect(),
        Selector::Loomis => vec![check_loomis(mu, &grid), check_limit_18(mu, &grid)],
        Selector::Prop32 => grid.iter().map(|&t| check_prop32(mu, t)).collect(),
        Selector::Prop34 => grid
            .iter()
            .flat_map(|&t| [0.1, 0.5, 1.0].map(|d| check_prop34(mu, t, d)))
            .collect(),
        Selector::Lemma33 => grid.iter().map(|&t| check_lemma33(mu, t)).collect(),
        Selector::Poltoratski => vec![check_poltoratski(mu, &Polynomial::new(&[0.0, 0.0, 1.0]), &grid)],
        Selector::Key | Selector::Thm14 => match &cfg.set {
            None => Vec::new(),
            Some(e) if sel == Selector::Key => grid.iter().map(|&t| check_key_ineq(mu, e, t)).collect(),
            Some(e) => vec![check_thm14(mu, e, &grid)],
        },
        _ => Vec::new(),
    };
    if runs.is_empty() {
        return Ok(Vec::new());
    }
    let id = format!("{}:input", sel.name());
    let members = runs.into_iter().map(|r| guarded(&id, echo, r)).collect::<Result<Vec<_>>>()?;
    Ok(vec![CheckReport::combine(&id, members)])
}

/// Runs the selected family (every family for `All`, in parallel) and
/// returns the reports in a fixed order.
pub fn run_suite(sel: Selector, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let chosen: Vec<Selector> = if sel == Selector::All { Selector::EACH.to_vec() } else { vec![sel] };
    let results: Vec<Result<Vec<CheckReport>>> = thread::scope(|s| {
        let handles: Vec<_> = chosen.iter().map(|&k| s.spawn(move || family(k, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    if let Some(tol) = cfg.tolerance {
        out = out.into_iter().map(|r| r.with_tolerance(tol)).collect();
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    PreconditionOnly,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub outcome: Outcome,
    pub passed: usize,
    pub failed: usize,
    pub preconditions: usize,
    pub margins: Vec<(String, Option<f64>)>,
    pub reports: Vec<CheckReport>,
}

impl Summary {
    pub fn new(reports: Vec<CheckReport>) -> Self {
        let failed = reports.iter().filter(|r| !r.passed && !r.precondition_violation).count();
        let preconditions = reports.iter().filter(|r| r.precondition_violation).count();
        let outcome = if failed > 0 || reports.is_empty() {
            Outcome::Fail
        } else if preconditions > 0 {
            Outcome::PreconditionOnly
        } else {
            Outcome::Pass
        };
        Self {
            outcome,
            passed: reports.iter().filter(|r| r.passed).count(),
            failed,
            preconditions,
            margins: reports.iter().map(|r| (r.check_id.clone(), r.margin.is_finite().then_some(r.margin))).collect(),
            reports,
        }
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("summary serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}
