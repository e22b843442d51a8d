//! Lower bounds on level sets inside a homogeneous set for measures carried
//! by that set.

use std::f64::consts::PI;

use serde_json::json;

use super::singular::{measure_echo, sci};
use super::{CheckReport, Tally};
use crate::error::{Error, Result};
use crate::geometry::homogeneity_delta;
use crate::interval::IntervalUnion;
use crate::level_sets::{distribution, gamma, Sign, Transform};
use crate::measure::Measure;

fn atoms_inside(mu: &Measure, e: &IntervalUnion) -> Result<()> {
    if !mu.is_atomic() {
        return Err(Error::NotAtomic);
    }
    match mu.atoms().iter().find(|a| !e.contains(a.position)) {
        Some(a) => Err(Error::NotInSet { x: a.position }),
        None => Ok(()),
    }
}

/// Threshold above which `|Γ_t|` is small against `diam E`.
pub fn regime_threshold(mu: &Measure, e: &IntervalUnion) -> f64 {
    PI * mu.total_mass() / e.diam()
}

/// `|{x ∈ E : |F| > δt/(128π²)}| ≥ (δ/24)|Γ_t|`, plus the local form on
/// each component `I = [c − a, c + a]` meeting `E`:
/// `|Γ_{t0} ∩ E ∩ [c − 3a, c + 3a]| ≥ (δ/2)|I|`.
pub fn check_key_ineq(mu: &Measure, e: &IntervalUnion, t: f64) -> Result<CheckReport> {
    atoms_inside(mu, e)?;
    let big_t = regime_threshold(mu, e);
    let echo = json!({ "measure": measure_echo(mu), "set": e, "t": t });
    if !(t > big_t) {
        return Ok(CheckReport::precondition("key_ineq", format!("t = {t} is not above T = {big_t}"), echo));
    }
    let delta = homogeneity_delta(e)?.delta;
    let t0 = delta * t / (128.0 * PI * PI);
    let g = gamma(mu, t, Sign::Abs)?;
    let wide = gamma(mu, t0, Sign::Abs)?.into_union().intersection(e);
    let lhs = wide.len();
    let rhs = delta / 24.0 * g.length();
    let mut tally = Tally::new("key_ineq", 1e-9, echo);
    tally.margin(lhs / rhs - 1.0);
    tally.note(format!("δ = {delta:?}, T = {big_t:?}, |Γ_t0 ∩ E| = {lhs:?}, (δ/24)|Γ_t| = {rhs:?}"));

    let diam = e.diam();
    let mut local = f64::INFINITY;
    let mut count = 0;
    let pieces = g.components().iter().map(|c| (c.left, c.right)).chain(g.union().intervals().iter().map(|i| (i.lo, i.hi)));
    for (l, r) in pieces {
        let a = 0.5 * (r - l);
        let meets = e.intervals().iter().any(|i| i.lo <= r && i.hi >= l);
        if !meets || a > diam {
            continue;
        }
        let c = 0.5 * (l + r);
        let share = wide.measure_in(c - 3.0 * a, c + 3.0 * a) / (2.0 * a);
        count += 1;
        local = local.min(share / delta);
        tally.margin(share / (0.5 * delta) - 1.0);
    }
    tally.note(format!("local form on {count} intervals, min share/δ = {local:?}"));
    Ok(tally.finish())
}

/// `μ(E) ≤ C1·t·|{x ∈ E : |H| ≥ t}|` with `C1 = 1536π³/δ²`, minimised over
/// the grid points `t ≥ T`.
pub fn check_thm14(mu: &Measure, e: &IntervalUnion, grid: &[f64]) -> Result<CheckReport> {
    atoms_inside(mu, e)?;
    let big_t = regime_threshold(mu, e);
    let echo = json!({ "measure": measure_echo(mu), "set": e, "t_grid": grid });
    let tail: Vec<f64> = grid.iter().copied().filter(|&t| t >= big_t).collect();
    let mass = mu.total_mass();
    if tail.is_empty() || mass == 0.0 {
        return Ok(CheckReport::precondition("thm14", format!("no grid point at or above T = {big_t}"), echo));
    }
    let delta = homogeneity_delta(e)?.delta;
    let c1 = 1536.0 * PI.powi(3) / (delta * delta);
    let mut tally = Tally::new("thm14", 1e-9, echo);
    let mut values = Vec::with_capacity(tail.len());
    for &t in &tail {
        let v = c1 * t * distribution(mu, t, Some(e), Transform::H)?;
        values.push(v);
        tally.margin((v - mass) / mass);
    }
    tally.note(format!("C1 = {c1:?}, μ(E) = {mass:?}, {} grid points above T = {big_t:?}", tail.len()));
    tally.note(format!("C1·t·λ_E = {}", sci(&values)));
    Ok(tally.finish())
}
