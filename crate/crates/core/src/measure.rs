//! Finite positive measures: atoms plus a piecewise-constant density.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::IntervalUnion;

/// Atoms closer than this are merged into one.
pub const ATOM_MERGE_DISTANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    #[serde(rename = "x")]
    pub position: f64,
    #[serde(rename = "w")]
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityPiece {
    #[serde(rename = "a")]
    pub left: f64,
    #[serde(rename = "b")]
    pub right: f64,
    #[serde(rename = "h")]
    pub height: f64,
}

impl DensityPiece {
    pub fn mass(&self) -> f64 {
        self.height * (self.right - self.left)
    }
}

/// Raw measure description, as read from JSON.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct MeasureSpec {
    #[serde(default)]
    pub atoms: Vec<Atom>,
    #[serde(default)]
    pub density: Vec<DensityPiece>,
}

/// A normalized measure. Atoms are sorted with distinct positions; density
/// pieces are sorted, disjoint, have positive height, and adjacent pieces
/// carry different heights.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "MeasureSpec", into = "MeasureSpec")]
pub struct Measure {
    atoms: Vec<Atom>,
    density: Vec<DensityPiece>,
}

impl TryFrom<MeasureSpec> for Measure {
    type Error = Error;

    fn try_from(spec: MeasureSpec) -> Result<Self> {
        Measure::new(spec.atoms, spec.density)
    }
}

impl From<Measure> for MeasureSpec {
    fn from(m: Measure) -> Self {
        MeasureSpec {
            atoms: m.atoms,
            density: m.density,
        }
    }
}

impl Measure {
    pub fn new(atoms: Vec<Atom>, density: Vec<DensityPiece>) -> Result<Self> {
        for a in &atoms {
            if !a.position.is_finite() {
                return Err(Error::InvalidMeasure(format!("atom position {}", a.position)));
            }
            if !(a.weight > 0.0) || !a.weight.is_finite() {
                return Err(Error::InvalidMeasure(format!("atom weight {}", a.weight)));
            }
        }
        for p in &density {
            if !p.left.is_finite() || !p.right.is_finite() {
                return Err(Error::InvalidMeasure(format!(
                    "piece endpoints [{}, {}]",
                    p.left, p.right
                )));
            }
            if !(p.left < p.right) {
                return Err(Error::InvalidMeasure(format!(
                    "reversed piece [{}, {}]",
                    p.left, p.right
                )));
            }
            if !(p.height >= 0.0) || !p.height.is_finite() {
                return Err(Error::InvalidMeasure(format!("piece height {}", p.height)));
            }
        }
        Ok(Self {
            atoms: merge_atoms(atoms),
            density: merge_pieces(&density),
        })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn dirac(x: f64) -> Self {
        Self::atomic(&[(x, 1.0)]).expect("finite position")
    }

    /// Atomic measure from `(position, weight)` pairs.
    pub fn atomic(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(position, weight)| Atom { position, weight })
                .collect(),
            Vec::new(),
        )
    }

    /// Constant density `h` on `[a, b]`.
    pub fn uniform(a: f64, b: f64, h: f64) -> Result<Self> {
        Self::new(
            Vec::new(),
            vec![DensityPiece {
                left: a,
                right: b,
                height: h,
            }],
        )
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite values serialize")
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn density(&self) -> &[DensityPiece] {
        &self.density
    }

    pub fn is_atomic(&self) -> bool {
        self.density.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.density.is_empty()
    }

    pub fn atomic_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    pub fn density_mass(&self) -> f64 {
        self.density.iter().map(DensityPiece::mass).sum()
    }

    pub fn total_mass(&self) -> f64 {
        self.atomic_mass() + self.density_mass()
    }

    /// Keeps atoms in `s` (closed) and clips density pieces to `s`.
    pub fn restrict(&self, s: &IntervalUnion) -> Measure {
        let atoms = self
            .atoms
            .iter()
            .filter(|a| s.contains(a.position))
            .copied()
            .collect();
        let mut density = Vec::new();
        for p in &self.density {
            for i in s.intervals() {
                let lo = p.left.max(i.lo);
                let hi = p.right.min(i.hi);
                if lo < hi {
                    density.push(DensityPiece {
                        left: lo,
                        right: hi,
                        height: p.height,
                    });
                }
            }
        }
        Measure {
            atoms,
            density: merge_pieces(&density),
        }
    }

    /// Splits into the absolutely continuous part and the atomic part.
    pub fn decompose(&self) -> (Measure, Measure) {
        (
            Measure {
                atoms: Vec::new(),
                density: self.density.clone(),
            },
            Measure {
                atoms: self.atoms.clone(),
                density: Vec::new(),
            },
        )
    }

    pub fn scaled(&self, c: f64) -> Result<Measure> {
        Measure::new(
            self.atoms
                .iter()
                .map(|a| Atom {
                    position: a.position,
                    weight: c * a.weight,
                })
                .collect(),
            self.density
                .iter()
                .map(|p| DensityPiece {
                    height: c * p.height,
                    ..*p
                })
                .collect(),
        )
    }

    pub fn translated(&self, s: f64) -> Result<Measure> {
        Measure::new(
            self.atoms
                .iter()
                .map(|a| Atom {
                    position: a.position + s,
                    weight: a.weight,
                })
                .collect(),
            self.density
                .iter()
                .map(|p| DensityPiece {
                    left: p.left + s,
                    right: p.right + s,
                    height: p.height,
                })
                .collect(),
        )
    }

    pub fn sum(&self, other: &Measure) -> Measure {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        let mut density = self.density.clone();
        density.extend_from_slice(&other.density);
        Measure {
            atoms: merge_atoms(atoms),
            density: merge_pieces(&density),
        }
    }

    /// Atom positions and piece endpoints, sorted and deduplicated.
    pub fn singular_points(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.atoms.iter().map(|a| a.position).collect();
        for p in &self.density {
            v.push(p.left);
            v.push(p.right);
        }
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// Closed support as an interval union (atoms as isolated points are
    /// not representable and are omitted).
    pub fn density_support(&self) -> IntervalUnion {
        IntervalUnion::from_pairs(self.density.iter().map(|p| (p.left, p.right)))
            .expect("pieces are valid")
    }

    pub fn in_support(&self, x: f64) -> bool {
        self.atoms.iter().any(|a| a.position == x)
            || self.density.iter().any(|p| p.left <= x && x <= p.right)
    }

    /// Smallest closed interval holding the support, if nonzero.
    pub fn hull(&self) -> Option<(f64, f64)> {
        let pts = self.singular_points();
        Some((*pts.first()?, *pts.last()?))
    }
}

/// Whether the atomic parts of `mu` and `nu` sit on disjoint position sets.
pub fn mutually_singular(mu: &Measure, nu: &Measure) -> bool {
    let (a, b) = (mu.atoms(), nu.atoms());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i].position, b[j].position);
        if (x - y).abs() <= ATOM_MERGE_DISTANCE {
            return false;
        }
        if x < y {
            i += 1;
        } else {
            j += 1;
        }
    }
    true
}

fn merge_atoms(mut atoms: Vec<Atom>) -> Vec<Atom> {
    atoms.sort_by(|a, b| a.position.total_cmp(&b.position));
    let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
    let mut anchor = f64::NEG_INFINITY;
    for a in atoms {
        match out.last_mut() {
            Some(last) if a.position - anchor <= ATOM_MERGE_DISTANCE => {
                let w = last.weight + a.weight;
                last.position = (last.position * last.weight + a.position * a.weight) / w;
                last.weight = w;
            }
            _ => {
                anchor = a.position;
                out.push(a);
            }
        }
    }
    out
}

/// Sums overlapping pieces, drops zero heights and merges equal neighbours.
fn merge_pieces(pieces: &[DensityPiece]) -> Vec<DensityPiece> {
    let mut events: Vec<(f64, f64)> = Vec::with_capacity(2 * pieces.len());
    for p in pieces {
        if p.height > 0.0 {
            events.push((p.left, p.height));
            events.push((p.right, -p.height));
        }
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut out: Vec<DensityPiece> = Vec::new();
    let mut active: Vec<f64> = Vec::new();
    let mut k = 0;
    while k < events.len() {
        let x = events[k].0;
        while k < events.len() && events[k].0 == x {
            let h = events[k].1;
            if h > 0.0 {
                active.push(h);
            } else if let Some(pos) = active.iter().position(|&v| v == -h) {
                active.swap_remove(pos);
            }
            k += 1;
        }
        if k == events.len() {
            break;
        }
        let next = events[k].0;
        // Summing in sorted order makes the height independent of insertion order.
        let mut hs = active.clone();
        hs.sort_by(f64::total_cmp);
        let height: f64 = hs.iter().sum();
        if height > 0.0 {
            match out.last_mut() {
                Some(last) if last.right == x && last.height == height => last.right = next,
                _ => out.push(DensityPiece {
                    left: x,
                    right: next,
                    height,
                }),
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_duplicate_atoms() {
        let m = Measure::atomic(&[(0.0, 0.5), (0.0, 0.5)]).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert_eq!(m.atoms()[0].weight, 1.0);
        assert_eq!(m.total_mass(), 1.0);
    }

    #[test]
    fn merges_adjacent_equal_pieces() {
        let m = Measure::new(
            vec![],
            vec![
                DensityPiece { left: 0.5, right: 1.0, height: 1.0 },
                DensityPiece { left: 0.0, right: 0.5, height: 1.0 },
            ],
        )
        .unwrap();
        assert_eq!(m.density(), &[DensityPiece { left: 0.0, right: 1.0, height: 1.0 }]);
    }

    #[test]
    fn overlapping_pieces_add() {
        let m = Measure::new(
            vec![],
            vec![
                DensityPiece { left: 0.0, right: 2.0, height: 1.0 },
                DensityPiece { left: 1.0, right: 3.0, height: 2.0 },
            ],
        )
        .unwrap();
        let h: Vec<f64> = m.density().iter().map(|p| p.height).collect();
        assert_eq!(h, vec![1.0, 3.0, 2.0]);
        assert_eq!(m.total_mass(), 6.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Measure::atomic(&[(0.0, 0.0)]).is_err());
        assert!(Measure::atomic(&[(0.0, -1.0)]).is_err());
        assert!(Measure::atomic(&[(f64::NAN, 1.0)]).is_err());
        assert!(Measure::atomic(&[(f64::INFINITY, 1.0)]).is_err());
        assert!(Measure::uniform(1.0, 0.0, 1.0).is_err());
        assert!(Measure::uniform(0.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn restriction_examples() {
        let d = Measure::dirac(0.0);
        assert!(d.restrict(&IntervalUnion::single(1.0, 2.0).unwrap()).is_zero());
        let two = Measure::atomic(&[(0.0, 1.0), (1.0, 1.0)]).unwrap();
        let r = two.restrict(&IntervalUnion::single(0.5, 1.5).unwrap());
        assert_eq!(r, Measure::dirac(1.0));
        let u = Measure::uniform(0.0, 1.0, 1.0).unwrap();
        let s = IntervalUnion::from_pairs([(0.0, 0.25), (0.75, 1.0)]).unwrap();
        assert_eq!(u.restrict(&s).total_mass(), 0.5);
    }

    #[test]
    fn decomposition() {
        let m = Measure::dirac(0.0).sum(&Measure::uniform(0.0, 1.0, 1.0).unwrap());
        let (ac, s) = m.decompose();
        assert_eq!(ac, Measure::uniform(0.0, 1.0, 1.0).unwrap());
        assert_eq!(s, Measure::dirac(0.0));
        assert_eq!(ac.sum(&s), m);
    }

    #[test]
    fn singularity_relation() {
        let d0 = Measure::dirac(0.0);
        let d1 = Measure::dirac(1.0);
        let u = Measure::uniform(0.0, 1.0, 1.0).unwrap();
        assert!(mutually_singular(&d0, &d1));
        assert!(!mutually_singular(&d0, &d0.sum(&d1)));
        assert!(mutually_singular(&u, &u));
    }

    #[test]
    fn json_shape() {
        let m = Measure::from_json(r#"{"atoms":[{"x":1.5,"w":0.25}],"density":[{"a":0,"b":1,"h":2}]}"#)
            .unwrap();
        assert_eq!(m.total_mass(), 2.25);
        assert_eq!(Measure::from_json(&m.to_json()).unwrap(), m);
        assert!(Measure::from_json(r#"{"atoms":[{"x":0,"w":-1}]}"#).is_err());
        assert!(Measure::from_json("{}").unwrap().is_zero());
    }
}
