//! Window densities of finite interval unions: the homogeneity constant
//! `inf |E ∩ (x-a, x+a)|/(2a)`, sampled density profiles and the subsets of
//! points whose windows keep density at least `1/n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::IntervalUnion;

/// `|E ∩ (x - a, x + a)|`.
pub fn window_measure(e: &IntervalUnion, x: f64, a: f64) -> f64 {
    e.measure_in(x - a, x + a)
}

fn ratio(e: &IntervalUnion, x: f64, a: f64) -> f64 {
    window_measure(e, x, a) / (2.0 * a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomogeneityReport {
    pub delta: f64,
    pub witness_x: f64,
    pub witness_a: f64,
    pub diam: f64,
    /// Bound on the floating-point error of `delta`.
    pub error_bound: f64,
}

struct Best {
    ratio: f64,
    x: f64,
    a: f64,
}

impl Best {
    fn offer(&mut self, e: &IntervalUnion, x: f64, a: f64) {
        if !(a > 0.0) || !e.contains(x) {
            return;
        }
        let r = ratio(e, x, a);
        let tie = (r - self.ratio).abs() <= 1e-14;
        if (!tie && r < self.ratio) || (tie && (a, x) < (self.a, self.x)) {
            *self = Best { ratio: r, x, a };
        }
    }
}

/// Infimum of the window ratio over `x ∈ E`, `0 < a < diam E`.
///
/// For fixed cells of the arrangement cut out by `x = e_k`, `x ± a = e_l` and
/// `a = diam` the ratio is a quotient of affine functions, so its infimum
/// sits at a vertex of that arrangement or at the `a → 0` edge, where every
/// endpoint has density exactly 1/2.
pub fn homogeneity_delta(e: &IntervalUnion) -> Result<HomogeneityReport> {
    if e.is_empty() {
        return Err(Error::EmptySet);
    }
    let ends = e.endpoints();
    let diam = e.diam();
    let mut best = Best {
        ratio: f64::INFINITY,
        x: f64::INFINITY,
        a: f64::INFINITY,
    };

    // Below this scale a window around an endpoint sees exactly half.
    let min_len = e.intervals().iter().map(|i| i.len()).fold(f64::INFINITY, f64::min);
    let min_gap = e.gaps().into_iter().fold(f64::INFINITY, f64::min);
    let small = 0.5 * min_len.min(min_gap);
    for &x in &ends {
        best.offer(e, x, small);
        best.offer(e, x, diam);
    }
    for (k, &x) in ends.iter().enumerate() {
        for (l, &y) in ends.iter().enumerate() {
            if k == l {
                continue;
            }
            let a = (y - x).abs();
            if a <= diam {
                best.offer(e, x, a);
            }
            if k < l {
                best.offer(e, 0.5 * (x + y), 0.5 * a);
            }
        }
        best.offer(e, x - diam, diam);
        best.offer(e, x + diam, diam);
    }

    let scale = ends.iter().fold(0.0f64, |m, v| m.max(v.abs())) + diam;
    let error_bound = 8.0 * f64::EPSILON * scale * e.count() as f64 / (2.0 * best.a.min(small));
    Ok(HomogeneityReport {
        delta: best.ratio,
        witness_x: best.x,
        witness_a: best.a,
        diam,
        error_bound,
    })
}

/// Minimum of the window ratio over a grid with spacing at most `step` in
/// both `x ∈ E` (interval endpoints included) and `a ∈ (0, diam]`.
///
/// For `a ≥ a0` the ratio moves by at most `step/a0` between grid
/// neighbours, which bounds how far this sits above the true infimum.
pub fn grid_min_ratio(e: &IntervalUnion, step: f64) -> f64 {
    let diam = e.diam();
    let mut xs = Vec::new();
    for i in e.intervals() {
        let n = (i.len() / step).ceil().max(1.0) as usize;
        xs.extend((0..=n).map(|k| i.lo + i.len() * k as f64 / n as f64));
    }
    let na = (diam / step).ceil().max(1.0) as usize;
    let mut best = f64::INFINITY;
    for k in 1..=na {
        let a = diam * k as f64 / na as f64;
        for &x in &xs {
            best = best.min(ratio(e, x, a));
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityProfile {
    pub x0: f64,
    /// `(a, ratio)` pairs in the order given.
    pub samples: Vec<(f64, f64)>,
    pub limsup_estimate: f64,
    pub liminf_estimate: f64,
}

pub fn density_profile(e: &IntervalUnion, x0: f64, radii: &[f64]) -> Result<DensityProfile> {
    if !e.contains(x0) {
        return Err(Error::NotInSet { x: x0 });
    }
    if radii.is_empty() || radii.iter().any(|&a| !(a > 0.0)) || radii.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidGrid("radii must be positive and strictly decreasing".into()));
    }
    let samples: Vec<(f64, f64)> = radii.iter().map(|&a| (a, ratio(e, x0, a))).collect();
    let limsup_estimate = samples.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    let liminf_estimate = samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    Ok(DensityProfile {
        x0,
        samples,
        limsup_estimate,
        liminf_estimate,
    })
}

/// Points of `E` whose windows of every radius `a < 1/n` carry at least
/// `2a/n` of `E`.
///
/// For fixed `x` the slack `a ↦ |E ∩ (x-a,x+a)| - 2a/n` is piecewise linear
/// with kinks at `a = |x - e_k|`, so only those radii and `a = 1/n` need
/// testing. Each such test is affine in `x` between the breakpoints
/// `e_k`, `e_k ± 1/n` and `(e_k + e_l)/2`.
pub fn en_subset(e: &IntervalUnion, n: u32) -> Result<IntervalUnion> {
    if n == 0 {
        return Err(Error::InvalidGrid("n must be positive".into()));
    }
    if e.is_empty() {
        return Ok(IntervalUnion::empty());
    }
    let r = 1.0 / n as f64;
    let c = 2.0 / n as f64;
    let ends = e.endpoints();

    let mut cuts = Vec::new();
    for (k, &x) in ends.iter().enumerate() {
        cuts.extend([x, x - r, x + r]);
        for &y in &ends[k + 1..] {
            cuts.push(0.5 * (x + y));
        }
    }
    cuts.retain(|&x| e.contains(x));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let tol = 1e-12 * (1.0 + e.diam());
    let mut keep = Vec::new();
    for w in cuts.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let mid = 0.5 * (x0 + x1);
        if !e.contains(mid) {
            continue;
        }
        // Feasible sub-interval [lo, hi] of the cell.
        let (mut lo, mut hi) = (x0, x1);
        let mut cut = |f0: f64, f1: f64| {
            if f0 >= -tol && f1 >= -tol {
                return;
            }
            if f0 < -tol && f1 < -tol {
                hi = lo - 1.0;
                return;
            }
            let z = x0 + (x1 - x0) * f0 / (f0 - f1);
            if f0 < -tol {
                lo = lo.max(z);
            } else {
                hi = hi.min(z);
            }
        };
        cut(
            window_measure(e, x0, r) - c * r,
            window_measure(e, x1, r) - c * r,
        );
        for &ek in &ends {
            if (mid - ek).abs() >= r {
                continue;
            }
            let slack = |x: f64| {
                let a = (x - ek).abs();
                window_measure(e, x, a) - c * a
            };
            cut(slack(x0), slack(x1));
        }
        if lo <= hi {
            keep.push((lo, hi));
        }
    }
    IntervalUnion::from_pairs(keep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(p: &[(f64, f64)]) -> IntervalUnion {
        IntervalUnion::from_pairs(p.iter().copied()).unwrap()
    }

    #[test]
    fn window_examples() {
        let e = u(&[(0.0, 1.0)]);
        assert_eq!(window_measure(&e, 0.0, 0.5), 0.5);
        assert_eq!(window_measure(&e, 0.5, 0.25), 0.5);
        let two = u(&[(0.0, 1.0), (2.0, 3.0)]);
        assert_eq!(window_measure(&two, 0.0, 2.0), 1.0);
    }

    #[test]
    fn homogeneity_examples() {
        let r = homogeneity_delta(&u(&[(0.0, 1.0)])).unwrap();
        assert_eq!(r.delta, 0.5);
        assert_eq!(r.witness_x, 0.0);
        let r = homogeneity_delta(&u(&[(0.0, 1.0), (2.0, 3.0)])).unwrap();
        assert_eq!(r.delta, 0.25);
        assert_eq!((r.witness_x, r.witness_a), (0.0, 2.0));
        assert!(r.error_bound < 1e-12);
        assert!(homogeneity_delta(&IntervalUnion::empty()).is_err());
    }

    #[test]
    fn homogeneity_first_cantor_stage() {
        let k1 = u(&[(0.0, 1.0 / 3.0), (2.0 / 3.0, 1.0)]);
        let r = homogeneity_delta(&k1).unwrap();
        let g = grid_min_ratio(&k1, 1.0 / 600.0);
        assert!(r.delta <= g + 1e-12);
        // Window (-2/3, 2/3) around 0 holds one third.
        assert!((r.delta - 0.25).abs() < 1e-15, "{r:?}");
    }

    #[test]
    fn profile() {
        let e = u(&[(0.0, 1.0)]);
        let p = density_profile(&e, 0.5, &[0.5, 0.25, 0.1]).unwrap();
        assert!(p.samples.iter().all(|s| (s.1 - 1.0).abs() < 1e-15));
        let p = density_profile(&e, 0.0, &[1.0, 0.5, 0.01]).unwrap();
        assert!(p.samples.iter().all(|s| s.1 == 0.5));
        assert!(density_profile(&e, 2.0, &[1.0]).is_err());
        assert!(density_profile(&e, 0.5, &[0.1, 0.2]).is_err());
    }

    #[test]
    fn en_examples() {
        let e = u(&[(0.0, 1.0)]);
        assert_eq!(en_subset(&e, 2).unwrap(), e);
        assert!(en_subset(&e, 1).unwrap().is_empty());
    }
}
