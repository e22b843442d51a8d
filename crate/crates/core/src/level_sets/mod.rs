//! Level sets `{x : |F(x + i0)| > t}`, distribution functions, threshold
//! sweeps and the rescaled indicator measures `(πt/2)·1{|H| > t} dx`.

mod atomic;
mod scan;

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::measure::Measure;
use crate::poly::Polynomial;
use crate::roots::DEFAULT_RTOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Abs,
    Pos,
    Neg,
}

/// Which boundary function a threshold refers to; `H = Re F/π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Transform {
    F,
    #[default]
    H,
}

impl Transform {
    /// The equivalent threshold on `|Re F|`.
    pub fn f_threshold(self, t: f64) -> f64 {
        match self {
            Transform::F => t,
            Transform::H => PI * t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentSign {
    Pos,
    Neg,
}

/// One connected piece of `{F > t}` or `{F < -t}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Component {
    pub left: f64,
    pub right: f64,
    /// Computed from offsets, so more accurate than `right - left`.
    pub length: f64,
    pub sign: ComponentSign,
    /// The atom this component is attached to (exact path only).
    pub atom: Option<f64>,
}

/// Tuning for level-set computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelSetOptions {
    pub rtol: f64,
    pub newton: bool,
    /// Decades of geometric sampling toward each singular point.
    pub scan_decades: u32,
    /// Uniform samples per cell.
    pub scan_uniform: usize,
}

impl Default for LevelSetOptions {
    fn default() -> Self {
        Self {
            rtol: DEFAULT_RTOL,
            newton: true,
            scan_decades: 40,
            scan_uniform: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelSet {
    threshold: f64,
    components: Vec<Component>,
    union: IntervalUnion,
    resolution: Option<f64>,
}

impl LevelSet {
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Sign components in increasing position. For atomic measures these
    /// are `(r_j, x_j)` and `(x_j, s_j)`, not merged across the atom.
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn union(&self) -> &IntervalUnion {
        &self.union
    }

    pub fn into_union(self) -> IntervalUnion {
        self.union
    }

    /// Total length, summed from per-component offsets.
    pub fn length(&self) -> f64 {
        self.components.iter().map(|c| c.length).sum()
    }

    /// `|self ∩ s|`. Components lying inside one interval of `s` contribute
    /// their offset-based length.
    pub fn length_in(&self, s: &IntervalUnion) -> f64 {
        self.components
            .iter()
            .map(|c| match s.locate(c.left) {
                Some(k) if c.right <= s.intervals()[k].hi => c.length,
                _ => s.measure_in(c.left, c.right),
            })
            .sum()
    }

    pub fn is_exact(&self) -> bool {
        self.resolution.is_none()
    }

    /// For scanned level sets, the finest sampled offset from a singular
    /// point; features below it are not resolved.
    pub fn resolution(&self) -> Option<f64> {
        self.resolution
    }
}

/// `{F > t}`, `{F < -t}` or `{|F| > t}` on the real line.
pub fn gamma(mu: &Measure, t: f64, sign: Sign) -> Result<LevelSet> {
    gamma_with(mu, t, sign, &LevelSetOptions::default())
}

pub fn gamma_with(mu: &Measure, t: f64, sign: Sign, opts: &LevelSetOptions) -> Result<LevelSet> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonPositiveThreshold(t));
    }
    let pos = sign != Sign::Neg;
    let neg = sign != Sign::Pos;
    if mu.is_zero() {
        return Ok(LevelSet {
            threshold: t,
            components: Vec::new(),
            union: IntervalUnion::empty(),
            resolution: None,
        });
    }
    let (components, resolution) = if mu.is_atomic() {
        (atomic::components(mu, t, pos, neg, opts), None)
    } else {
        let (c, r) = scan::components(mu, t, pos, neg, opts);
        (c, Some(r))
    };
    let union = IntervalUnion::from_pairs(components.iter().map(|c| (c.left, c.right)))?;
    Ok(LevelSet {
        threshold: t,
        components,
        union,
        resolution,
    })
}

/// `|{|T| > t} ∩ S|` with `T` either `Re F` or `H`.
pub fn distribution(
    mu: &Measure,
    t: f64,
    set: Option<&IntervalUnion>,
    transform: Transform,
) -> Result<f64> {
    let g = gamma(mu, transform.f_threshold(t), Sign::Abs)?;
    Ok(match set {
        None => g.length(),
        Some(s) => g.length_in(s),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailPoint {
    pub t: f64,
    pub lambda: f64,
    pub t_lambda: f64,
}

impl TailPoint {
    fn new(t: f64, lambda: f64) -> Self {
        Self {
            t,
            lambda,
            t_lambda: t * lambda,
        }
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("empty threshold grid".into()));
    }
    if grid.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
        return Err(Error::InvalidGrid("thresholds must be positive and finite".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidGrid("thresholds must be strictly increasing".into()));
    }
    Ok(())
}

pub fn tail_sweep(
    mu: &Measure,
    grid: &[f64],
    set: Option<&IntervalUnion>,
    transform: Transform,
) -> Result<Vec<TailPoint>> {
    check_grid(grid)?;
    grid.iter()
        .map(|&t| Ok(TailPoint::new(t, distribution(mu, t, set, transform)?)))
        .collect()
}

/// CSV with header `t,lambda,t_lambda`, shortest round-trip decimals.
pub fn tail_csv(points: &[TailPoint]) -> String {
    let mut s = String::from("t,lambda,t_lambda\n");
    for p in points {
        writeln!(s, "{:?},{:?},{:?}", p.t, p.lambda, p.t_lambda).expect("write to string");
    }
    s
}

/// The measure `(πt/2)·1{|H| > t} dx` for an atomic `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakLimit {
    pub height: f64,
    pub support: IntervalUnion,
    /// `(atom, left offset, right offset)`: the support near each atom is
    /// `[atom - left, atom + right]`.
    pieces: Vec<(f64, f64, f64)>,
}

impl WeakLimit {
    pub fn mass(&self) -> f64 {
        self.height * self.pieces.iter().map(|&(_, l, r)| l + r).sum::<f64>()
    }

    pub fn integrate(&self, g: &Polynomial) -> f64 {
        self.height
            * self
                .pieces
                .iter()
                .map(|&(c, l, r)| g.integrate_around(c, -l, r))
                .sum::<f64>()
    }
}

pub fn weak_limit_measure(mu: &Measure, t: f64) -> Result<WeakLimit> {
    if !mu.is_atomic() {
        return Err(Error::NotAtomic);
    }
    let g = gamma(mu, PI * t, Sign::Abs)?;
    let mut pieces: Vec<(f64, f64, f64)> = mu.atoms().iter().map(|a| (a.position, 0.0, 0.0)).collect();
    let mut k = 0;
    for c in g.components() {
        while pieces[k].0 != c.atom.expect("exact components carry their atom") {
            k += 1;
        }
        match c.sign {
            ComponentSign::Pos => pieces[k].1 = c.length,
            ComponentSign::Neg => pieces[k].2 = c.length,
        }
    }
    Ok(WeakLimit {
        height: 0.5 * PI * t,
        support: g.into_union(),
        pieces,
    })
}

/// `t·|{|H_μ| > t} ∩ {|H_ν| > c·t}|` over the grid.
pub fn intersection_decay(mu: &Measure, nu: &Measure, c: f64, grid: &[f64]) -> Result<Vec<TailPoint>> {
    if !mu.is_atomic() || !nu.is_atomic() {
        return Err(Error::NotAtomic);
    }
    if !(c > 0.0) {
        return Err(Error::NonPositiveThreshold(c));
    }
    check_grid(grid)?;
    grid.iter()
        .map(|&t| {
            let a = gamma(mu, PI * t, Sign::Abs)?;
            let b = gamma(nu, c * PI * t, Sign::Abs)?;
            Ok(TailPoint::new(t, a.union().intersection(b.union()).len()))
        })
        .collect()
}
