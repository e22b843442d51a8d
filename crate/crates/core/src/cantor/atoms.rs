//! Atomic approximations of the Cantor measure and its near/far split.

use super::CantorIndex;
use crate::error::{Error, Result};
use crate::measure::Measure;

fn level_atoms(level: u32, cap: u32) -> Result<Vec<(u64, f64)>> {
    if level > cap || level > 38 {
        return Err(Error::DepthCap { depth: level as u64, cap });
    }
    let den = 2.0 * 3f64.powi(level as i32);
    let mut out = Vec::with_capacity(1 << level);
    for a in 0..1u64 << level {
        let mut num = 0u64;
        for b in (0..level).rev() {
            num = 3 * num + 2 * ((a >> b) & 1);
        }
        out.push((a, (2 * num + 1) as f64 / den));
    }
    Ok(out)
}

/// `2^L` atoms of weight `2^{-L}` at the midpoints of the level-`L` intervals.
pub fn cantor_atoms(level: u32, cap: u32) -> Result<Measure> {
    let w = 0.5f64.powi(level as i32);
    let atoms: Vec<(f64, f64)> = level_atoms(level, cap)?.into_iter().map(|(_, x)| (x, w)).collect();
    Measure::atomic(&atoms)
}

/// Bound on `|F_approx(x) − F(x)|` for a part of mass `mass` of the Cantor
/// measure carried by level-`L` intervals at distance at least `d` from `x`.
pub fn atom_error_bound(mass: f64, level: u32, d: f64) -> f64 {
    mass * 3f64.powi(-(level as i32)) / (2.0 * d * d)
}

/// Splits the level-`L` approximation into the part on `K_i ∪ K_{pred i}`
/// and the rest.
pub fn split_at(i: CantorIndex, level: u32, cap: u32) -> Result<(Measure, Measure)> {
    if level < i.n() {
        return Err(Error::DepthCap { depth: i.n() as u64, cap: level });
    }
    let p = i.predecessor()?;
    let w = 0.5f64.powi(level as i32);
    let hit = |a: u64, c: CantorIndex| a >> (level - c.n()) == c.j() - 1;
    let (mut near, mut far) = (Vec::new(), Vec::new());
    for (a, x) in level_atoms(level, cap)? {
        if hit(a, i) || hit(a, p) {
            near.push((x, w));
        } else {
            far.push((x, w));
        }
    }
    Ok((Measure::atomic(&near)?, Measure::atomic(&far)?))
}
