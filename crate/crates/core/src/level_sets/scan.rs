//! Level sets for measures with a density part.
//!
//! The line is cut at atoms and piece endpoints. Each cell is sampled on
//! geometric grids in the offset from its singular ends plus a uniform
//! grid, and every sign change of `F ∓ t` between samples is refined by
//! bisection. Structure below the finest offset is not resolved.

use crate::measure::Measure;
use crate::roots::bisect;
use crate::transform::re_offset;

use super::{Component, ComponentSign, LevelSetOptions};

#[derive(Debug, Clone, Copy)]
struct Pt {
    anchor: f64,
    d: f64,
}

impl Pt {
    fn x(&self) -> f64 {
        self.anchor + self.d
    }

    fn relative_to(&self, anchor: f64) -> f64 {
        if anchor == self.anchor {
            self.d
        } else {
            self.x() - anchor
        }
    }
}

fn span(a: Pt, b: Pt) -> f64 {
    if a.anchor == b.anchor {
        b.d - a.d
    } else {
        b.x() - a.x()
    }
}

/// Offsets in `(0, half]`: geometric down to `half * 10^-decades`, plus uniform.
fn offsets(half: f64, opts: &LevelSetOptions) -> Vec<f64> {
    let per_decade = 8.0;
    let steps = (opts.scan_decades as f64 * per_decade) as usize;
    let mut v: Vec<f64> = (0..=steps)
        .map(|k| half * 10f64.powf(-(k as f64) / per_decade))
        .collect();
    for k in 1..opts.scan_uniform {
        v.push(half * k as f64 / opts.scan_uniform as f64);
    }
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Samples across `[left, right]` in increasing position. Singular ends are
/// approached from inside; regular ends are sampled directly.
fn samples(left: f64, right: f64, left_sing: bool, right_sing: bool, opts: &LevelSetOptions) -> Vec<Pt> {
    let len = right - left;
    let mut pts = Vec::new();
    match (left_sing, right_sing) {
        (true, true) => {
            let half = 0.5 * len;
            let off = offsets(half, opts);
            pts.extend(off.iter().map(|&d| Pt { anchor: left, d }));
            pts.extend(off.iter().rev().skip(1).map(|&d| Pt { anchor: right, d: -d }));
        }
        (false, true) => {
            let off = offsets(len, opts);
            pts.extend(off.iter().rev().map(|&d| Pt { anchor: right, d: -d }));
        }
        (true, false) => {
            let off = offsets(len, opts);
            pts.extend(off.iter().map(|&d| Pt { anchor: left, d }));
        }
        (false, false) => unreachable!("cells always touch a singular point"),
    }
    pts
}

fn refine(mu: &Measure, p: Pt, q: Pt, theta: f64, rtol: f64) -> Pt {
    let anchor = p.anchor;
    let (lo, hi) = (p.d, q.relative_to(anchor));
    let above = re_offset(mu, anchor, lo) > theta;
    let (a, b) = bisect(lo, hi, rtol, |d| (re_offset(mu, anchor, d) > theta) == above);
    Pt {
        anchor,
        d: 0.5 * (a + b),
    }
}

/// Intervals of one cell where the predicate `side` holds, as point pairs.
fn cell_runs(
    mu: &Measure,
    pts: &[Pt],
    vals: &[f64],
    theta: f64,
    side: impl Fn(f64) -> bool,
    start: Pt,
    end: Pt,
    rtol: f64,
) -> Vec<(Pt, Pt)> {
    let mut runs = Vec::new();
    let mut open = side(vals[0]).then_some(start);
    for k in 1..pts.len() {
        let (a, b) = (side(vals[k - 1]), side(vals[k]));
        if a != b {
            let r = refine(mu, pts[k - 1], pts[k], theta, rtol);
            if b {
                open = Some(r);
            } else if let Some(s) = open.take() {
                runs.push((s, r));
            }
        }
    }
    if let Some(s) = open {
        runs.push((s, end));
    }
    runs
}

/// Components of `{F > t}` and `{F < -t}` and the finest unresolved offset.
pub(super) fn components(
    mu: &Measure,
    t: f64,
    pos: bool,
    neg: bool,
    opts: &LevelSetOptions,
) -> (Vec<Component>, f64) {
    let sing = mu.singular_points();
    let reach = 2.0 * mu.total_mass() / t;
    let first = sing[0];
    let last = *sing.last().expect("nonzero measure");

    let mut cells = vec![(first - reach, first, false, true)];
    for w in sing.windows(2) {
        cells.push((w[0], w[1], true, true));
    }
    cells.push((last, last + reach, true, false));

    let mut out = Vec::new();
    let mut resolution: f64 = 0.0;
    for (l, r, ls, rs) in cells {
        let pts = samples(l, r, ls, rs, opts);
        let vals: Vec<f64> = pts.iter().map(|p| re_offset(mu, p.anchor, p.d)).collect();
        let finest = pts.iter().map(|p| p.d.abs()).fold(f64::INFINITY, f64::min);
        resolution = resolution.max(finest);
        let start = Pt { anchor: l, d: 0.0 };
        let end = Pt { anchor: r, d: 0.0 };
        let mut push = |runs: Vec<(Pt, Pt)>, sign| {
            for (a, b) in runs {
                out.push(Component {
                    left: a.x(),
                    right: b.x(),
                    length: span(a, b),
                    sign,
                    atom: None,
                });
            }
        };
        if pos {
            push(
                cell_runs(mu, &pts, &vals, t, |v| v > t, start, end, opts.rtol),
                ComponentSign::Pos,
            );
        }
        if neg {
            push(
                cell_runs(mu, &pts, &vals, -t, |v| v < -t, start, end, opts.rtol),
                ComponentSign::Neg,
            );
        }
    }
    out.retain(|c| c.length > 0.0);
    out.sort_by(|a, b| a.left.total_cmp(&b.left));
    (out, resolution)
}
