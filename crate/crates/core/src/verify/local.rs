//! Statements about single components of `Γ_t = {|F| > t}` for atomic
//! measures: the value of `F` above a component, the share of the touching
//! intervals inside `Γ_{t0}`, and the Möbius description of `Γ_{t0}`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::singular::measure_echo;
use super::{CheckReport, Tally};
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::level_sets::{gamma, LevelSet, Sign};
use crate::measure::Measure;
use crate::roots::bisect;
use crate::transform::{mobius, mobius_real, re_offset, stieltjes};
use crate::Complex64;

/// Intervals inside `Γ_t` to test: each one-signed component, then each
/// connected piece of the closure.
fn test_intervals(g: &LevelSet) -> Vec<(f64, f64, &'static str)> {
    let mut out: Vec<(f64, f64, &'static str)> = g.components().iter().map(|c| (c.left, c.right, "component")).collect();
    out.extend(g.union().intervals().iter().map(|i| (i.lo, i.hi, "closure")));
    out
}

fn nonempty_gamma(mu: &Measure, t: f64) -> Result<LevelSet> {
    if !mu.is_atomic() {
        return Err(Error::NotAtomic);
    }
    let g = gamma(mu, t, Sign::Abs)?;
    if g.union().is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(g)
}

/// `|F(c + a + 2ia)| ≥ t/(8π²)` for `[c − a, c + a] ⊆ Γ_t`. The margin runs
/// over one-signed components; closure pieces are asserted only.
pub fn check_prop32(mu: &Measure, t: f64) -> Result<CheckReport> {
    let g = nonempty_gamma(mu, t)?;
    let mut tally = Tally::new("prop32", 1e-9, json!({ "measure": measure_echo(mu), "t": t }));
    let floor = t / (8.0 * PI * PI);
    let mut smallest = f64::INFINITY;
    for (l, r, kind) in test_intervals(&g) {
        let a = 0.5 * (r - l);
        let f = stieltjes(mu, Complex64::new(r, 2.0 * a))?.norm();
        if kind == "component" {
            smallest = smallest.min(f);
            tally.margin(f / floor - 1.0);
        } else {
            tally.require(f >= floor * (1.0 - 1e-9), format!("closure piece [{l}, {r}]"));
        }
    }
    tally.note(format!("min |F(z0)| over components = {smallest:?}, bound t/(8π²) = {floor:?}"));
    Ok(tally.finish())
}

/// `|Ĩ ∖ Γ_{t0}| ≤ (δ/2)|I|` on both touching intervals of each
/// `I ⊆ Γ_t`, with `t0 = δt/(128π²)`.
pub fn check_prop34(mu: &Measure, t: f64, delta: f64) -> Result<CheckReport> {
    let echo = json!({ "measure": measure_echo(mu), "t": t, "delta": delta });
    if !(delta > 0.0 && delta <= 1.0) {
        return Ok(CheckReport::precondition("prop34", "δ must lie in (0, 1]", echo));
    }
    let g = nonempty_gamma(mu, t)?;
    let t0 = delta * t / (128.0 * PI * PI);
    let g0 = gamma(mu, t0, Sign::Abs)?;
    let wide = g0.union();
    let mut tally = Tally::new("prop34", 1e-9, echo);
    let scale = 1.0 + g.union().intervals().iter().fold(0.0f64, |m, i| m.max(i.lo.abs()).max(i.hi.abs()));
    tally.require(g.union().is_subset_of(wide, 1e-9 * scale), "Γ_t ⊆ Γ_t0");
    let mut worst_share = 0.0f64;
    for (l, r, _) in test_intervals(&g) {
        let len = r - l;
        for (lo, hi) in [(r, r + len), (l - len, l)] {
            let miss = (len - wide.measure_in(lo, hi)).max(0.0);
            worst_share = worst_share.max(miss / len);
            tally.margin(0.5 * delta - miss / len);
        }
    }
    tally.note(format!("t0 = {t0:?}; largest uncovered share {worst_share:.3e} against δ/2 = {}", 0.5 * delta));
    Ok(tally.finish())
}

/// `{F_{t0} > t0/2}` located by bisection on the Möbius image itself, gap by
/// gap, in offsets from the neighbouring atoms.
fn mobius_level_set(mu: &Measure, t0: f64) -> Result<IntervalUnion> {
    let xs: Vec<f64> = mu.atoms().iter().map(|a| a.position).collect();
    let reach = 2.0 * mu.total_mass() / t0;
    let above = |anchor: f64, d: f64| mobius_real(re_offset(mu, anchor, d), t0).is_some_and(|v| v > 0.5 * t0);
    let rtol = 1e-15;
    let mut pieces = Vec::new();
    let first = xs[0];
    let e = bisect(0.0, reach, rtol, |e| above(first, -e)).1;
    pieces.push((first - e, first));
    for w in xs.windows(2) {
        let (a, b) = (w[0], w[1]);
        let gap = b - a;
        let zero = bisect(0.0, gap, rtol, |d| re_offset(mu, a, d) < 0.0).0;
        let d = bisect(0.0, zero, rtol, |d| above(a, d)).1;
        let e = bisect(0.0, gap - zero, rtol, |e| above(b, -e)).1;
        pieces.push((a, a + d));
        pieces.push((b - e, b));
    }
    let last = *xs.last().expect("nonempty");
    let d = bisect(0.0, reach, rtol, |d| above(last, d)).1;
    pieces.push((last, last + d));
    IntervalUnion::from_pairs(pieces)
}

/// `{|F| > t0} = {F/(1 + F/t0) > t0/2}`, and `Im F_{t0} > 0` on the upper
/// half-plane.
pub fn check_lemma33(mu: &Measure, t0: f64) -> Result<CheckReport> {
    if !mu.is_atomic() {
        return Err(Error::NotAtomic);
    }
    let echo = json!({ "measure": measure_echo(mu), "t0": t0 });
    if mu.is_zero() {
        return Ok(CheckReport::precondition("lemma33", "zero measure", echo));
    }
    let direct = gamma(mu, t0, Sign::Abs)?.into_union();
    let image = mobius_level_set(mu, t0)?;
    let mut tally = Tally::new("lemma33", 0.0, echo);
    let sym = direct.symmetric_difference(&image).len();
    tally.margin(1.0 - sym / 1e-8);
    let same_shape = direct.count() == image.count();
    tally.require(same_shape, "same number of components");
    if same_shape {
        let off = direct
            .endpoints()
            .iter()
            .zip(image.endpoints())
            .map(|(a, b)| (a - b).abs() / (1.0 + a.abs()))
            .fold(0.0, f64::max);
        tally.require(off <= 1e-9, "endpoints agree to 1e-9");
        tally.note(format!("largest endpoint offset {off:.3e}"));
    }
    tally.note(format!("symmetric difference {sym:.3e}"));

    let (lo, hi) = mu.hull().expect("nonzero measure");
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c33);
    let mut herglotz = true;
    for _ in 0..100 {
        let x = rng.gen_range(lo - 1.0..=hi + 1.0);
        let y = 10f64.powf(rng.gen_range(-3.0..=3.0));
        herglotz &= mobius(mu, t0, Complex64::new(x, y))?.im > 0.0;
    }
    tally.require(herglotz, "Im F_t0 > 0 at 100 points of the upper half-plane");
    Ok(tally.finish())
}
