//! Identities and limits for the whole-line distribution of `H`.

use std::f64::consts::PI;

use serde_json::{json, Value};

use super::{CheckReport, Tally};
use crate::error::{Error, Result};
use crate::level_sets::{gamma, intersection_decay, tail_sweep, weak_limit_measure, Sign, Transform};
use crate::measure::{mutually_singular, Measure};
use crate::poly::Polynomial;

pub(crate) fn measure_echo(mu: &Measure) -> Value {
    serde_json::to_value(mu).expect("measure serializes")
}

/// Allowed relative excess when a sequence should not increase.
const MONOTONE_SLACK: f64 = 1e-12;

pub(crate) fn sci(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.3e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn nonincreasing(v: &[f64], scale: f64) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] + MONOTONE_SLACK * scale)
}

/// `πt·|{±H ≥ t}| = ‖μ‖` for atomic `μ`, each sign.
pub fn check_boole(mu: &Measure, t: f64) -> Result<CheckReport> {
    if !mu.is_atomic() {
        return Err(Error::NotAtomic);
    }
    let mass = mu.total_mass();
    let mut tally = Tally::new("boole", 0.0, json!({ "measure": measure_echo(mu), "t": t }));
    for (sign, name) in [(Sign::Pos, "H ≥ t"), (Sign::Neg, "H ≤ -t")] {
        let v = PI * t * gamma(mu, PI * t, sign)?.length();
        let dev = if mass > 0.0 { (v - mass).abs() / mass } else { v };
        tally.margin(1e-9 - dev);
        tally.note(format!("πt·|{{{name}}}| = {v:?}, relative deviation {dev:.3e}"));
    }
    Ok(tally.finish())
}

/// `t·|{|H| ≥ t}| ≤ ‖μ‖` over a grid, with equality to `2‖μ‖/π` for atomic `μ`.
pub fn check_loomis(mu: &Measure, grid: &[f64]) -> Result<CheckReport> {
    let mass = mu.total_mass();
    let mut tally = Tally::new("loomis", 1e-9, json!({ "measure": measure_echo(mu), "t_grid": grid }));
    if mass == 0.0 {
        tally.note("zero measure: every level set is empty");
    }
    let points = tail_sweep(mu, grid, None, Transform::H)?;
    for p in &points {
        tally.margin(if mass > 0.0 { (mass - p.t_lambda) / mass } else { -p.t_lambda });
        if mu.is_atomic() && mass > 0.0 {
            let exact = 2.0 * mass / PI;
            tally.require(
                ((p.t_lambda - exact) / exact).abs() <= 1e-9,
                format!("t·λ = 2‖μ‖/π at t = {}", p.t),
            );
        }
    }
    let worst = points.iter().map(|p| p.t_lambda).fold(0.0, f64::max);
    tally.note(format!("max t·λ = {worst:?}, ‖μ‖ = {mass:?}"));
    Ok(tally.finish())
}

/// `πt·|{±H ≥ t}| → ‖μ_s‖`: deviations do not grow along the grid and are
/// below 5% at its last point.
pub fn check_limit_18(mu: &Measure, grid: &[f64]) -> Result<CheckReport> {
    let (_, singular) = mu.decompose();
    let target = singular.total_mass();
    let reference = if target > 0.0 { target } else { mu.total_mass() };
    let echo = json!({ "measure": measure_echo(mu), "t_grid": grid });
    if reference == 0.0 {
        return Ok(CheckReport::precondition("limit_18", "zero measure", echo));
    }
    let mut tally = Tally::new("limit_18", 1e-9, echo);
    for (sign, name) in [(Sign::Pos, "+"), (Sign::Neg, "-")] {
        let mut devs = Vec::with_capacity(grid.len());
        for &t in grid {
            if !(t > 0.0) {
                return Err(Error::NonPositiveThreshold(t));
            }
            let v = PI * t * gamma(mu, PI * t, sign)?.length();
            devs.push((v - target).abs());
        }
        tally.require(nonincreasing(&devs, reference), format!("deviation ({name}) does not increase"));
        let last = *devs.last().ok_or_else(|| Error::InvalidGrid("empty threshold grid".into()))?;
        tally.margin(1.0 - last / (0.05 * reference));
        tally.note(format!("sign {name}: deviations {}", sci(&devs)));
    }
    tally.note(format!("singular mass {target:?}"));
    Ok(tally.finish())
}

/// `(πt/2)·1{|H| > t} dx → μ` weakly for atomic `μ`: exact mass, and
/// moment errors that shrink along the grid to below 1% at its end.
pub fn check_poltoratski(mu: &Measure, g: &Polynomial, grid: &[f64]) -> Result<CheckReport> {
    if !mu.is_atomic() {
        return Err(Error::NotAtomic);
    }
    if g.degree() > 6 {
        return Err(Error::InvalidGrid(format!("test polynomial degree {} exceeds 6", g.degree())));
    }
    if grid.is_empty() {
        return Err(Error::InvalidGrid("empty threshold grid".into()));
    }
    let mass = mu.total_mass();
    let target: f64 = mu.atoms().iter().map(|a| a.weight * g.eval(a.position)).sum();
    let gmax = mu.atoms().iter().map(|a| g.eval(a.position).abs()).fold(1.0, f64::max);
    let scale = mass * gmax;
    let echo = json!({ "measure": measure_echo(mu), "polynomial": g.0, "t_grid": grid });
    if mass == 0.0 {
        return Ok(CheckReport::precondition("poltoratski", "zero measure", echo));
    }
    let mut tally = Tally::new("poltoratski", 1e-9, echo);
    let mut errs = Vec::with_capacity(grid.len());
    for &t in grid {
        let w = weak_limit_measure(mu, t)?;
        tally.require(((w.mass() - mass) / mass).abs() <= 1e-12, format!("mass identity at t = {t}"));
        errs.push((w.integrate(g) - target).abs());
    }
    tally.require(nonincreasing(&errs, scale), "moment error does not increase");
    let last = *errs.last().expect("nonempty");
    tally.margin(1.0 - last / (0.01 * scale));
    tally.note(format!("moment errors {}", sci(&errs)));
    Ok(tally.finish())
}

/// For mutually singular `μ, ν`: `t·|{|H_μ| > t} ∩ {|H_ν| > ct}|` decays,
/// and vanishes once both level sets are confined to disjoint neighbourhoods
/// of the atoms.
pub fn check_prop52(mu: &Measure, nu: &Measure, c: f64, grid: &[f64]) -> Result<CheckReport> {
    let echo = json!({ "mu": measure_echo(mu), "nu": measure_echo(nu), "c": c, "t_grid": grid });
    if !mutually_singular(mu, nu) {
        return Ok(CheckReport::precondition("prop52", "measures share an atom", echo));
    }
    let points = intersection_decay(mu, nu, c, grid)?;
    let (mm, mn) = (mu.total_mass(), nu.total_mass());
    let min_mass = mm.min(mn);
    if min_mass == 0.0 {
        return Ok(CheckReport::precondition("prop52", "zero measure", echo));
    }
    let mut tally = Tally::new("prop52", 1e-9, echo);
    let values: Vec<f64> = points.iter().map(|p| p.t_lambda).collect();
    tally.require(nonincreasing(&values, min_mass), "t·|intersection| does not increase");
    tally.margin(1.0 - values.last().expect("nonempty") / (0.01 * min_mass));

    // |F_μ(x)| ≤ ‖μ‖/dist(x, atoms of μ), so the sets separate once the two
    // radii add up to less than the closest atom distance.
    let gap = mu
        .atoms()
        .iter()
        .flat_map(|a| nu.atoms().iter().map(move |b| (a.position - b.position).abs()))
        .fold(f64::INFINITY, f64::min);
    let threshold = (mm + mn / c) / (PI * gap);
    let mut beyond = 0;
    for p in points.iter().filter(|p| p.t > threshold) {
        beyond += 1;
        tally.require(p.lambda == 0.0, format!("empty intersection at t = {}", p.t));
    }
    tally.note(format!("intersection empty beyond t = {threshold:?} ({beyond} grid points)"));
    tally.note(format!("t·|intersection| = {}", sci(&values)));
    Ok(tally.finish())
}
