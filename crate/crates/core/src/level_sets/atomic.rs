//! Exact level sets of atomic measures.
//!
//! Between consecutive atoms `F` increases from `-inf` to `+inf`, so each
//! atom owns exactly one component of `{F > t}` on its left and one of
//! `{F < -t}` on its right. Roots are bracketed in the offset from the atom.

use crate::measure::Measure;
use crate::roots::{bisect, polish};
use crate::transform::{deriv_offset, re_offset};

use super::{Component, ComponentSign, LevelSetOptions};

/// Offset `d > 0` with `F(x_j - d) = t`.
pub(super) fn pos_offset(mu: &Measure, j: usize, t: f64, opts: &LevelSetOptions) -> f64 {
    let atoms = mu.atoms();
    let x = atoms[j].position;
    let hi = if j == 0 {
        // F(x) <= |mu|/dist(x, atoms) on the left ray.
        2.0 * mu.total_mass() / t
    } else {
        x - atoms[j - 1].position
    };
    let (lo, hi) = bisect(0.0, hi, opts.rtol, |d| re_offset(mu, x, -d) > t);
    if opts.newton {
        polish(
            lo,
            hi,
            |d| re_offset(mu, x, -d) - t,
            |d| -deriv_offset(mu, x, -d),
        )
    } else {
        0.5 * (lo + hi)
    }
}

/// Offset `d > 0` with `F(x_j + d) = -t`.
pub(super) fn neg_offset(mu: &Measure, j: usize, t: f64, opts: &LevelSetOptions) -> f64 {
    let atoms = mu.atoms();
    let x = atoms[j].position;
    let hi = if j + 1 == atoms.len() {
        2.0 * mu.total_mass() / t
    } else {
        atoms[j + 1].position - x
    };
    let (lo, hi) = bisect(0.0, hi, opts.rtol, |d| re_offset(mu, x, d) < -t);
    if opts.newton {
        polish(
            lo,
            hi,
            |d| re_offset(mu, x, d) + t,
            |d| deriv_offset(mu, x, d),
        )
    } else {
        0.5 * (lo + hi)
    }
}

pub(super) fn components(
    mu: &Measure,
    t: f64,
    pos: bool,
    neg: bool,
    opts: &LevelSetOptions,
) -> Vec<Component> {
    let mut out = Vec::with_capacity(2 * mu.atoms().len());
    for (j, a) in mu.atoms().iter().enumerate() {
        let x = a.position;
        if pos {
            let d = pos_offset(mu, j, t, opts);
            out.push(Component {
                left: x - d,
                right: x,
                length: d,
                sign: ComponentSign::Pos,
                atom: Some(x),
            });
        }
        if neg {
            let d = neg_offset(mu, j, t, opts);
            out.push(Component {
                left: x,
                right: x + d,
                length: d,
                sign: ComponentSign::Neg,
                atom: Some(x),
            });
        }
    }
    out
}
