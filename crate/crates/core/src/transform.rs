//! Stieltjes transform `F(z) = ∫ dμ(y)/(y − z)`, its boundary values on the
//! real line, the Hilbert transform `H = Re F(x + i0)/π`, the derivative on
//! gaps and the Möbius family `F/(1 + F/t0)`.

use std::f64::consts::PI;

use num::complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::Measure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryKind {
    Regular,
    Pole,
    DensityEdge,
}

/// `F(x + i0)` on the real axis.
///
/// At a pole `re` is NaN (no sign); at a density edge `re` is a signed
/// infinity and `im` is the mean of the one-sided limits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryValue {
    pub re: f64,
    pub im: f64,
    pub kind: BoundaryKind,
}

/// `ln |(b − x)/(a − x)|` from `u = a − x`, `v = b − x`, `span = b − a`.
fn log_ratio(u: f64, v: f64, span: f64) -> f64 {
    let r = span / u;
    if r.abs() <= 0.5 {
        r.ln_1p()
    } else {
        v.abs().ln() - u.abs().ln()
    }
}

/// `Re F(anchor + d)` with all distances formed as `(y − anchor) − d`,
/// which keeps tiny offsets from an atom or edge exact.
pub(crate) fn re_offset(mu: &Measure, anchor: f64, d: f64) -> f64 {
    let mut s = 0.0;
    for a in mu.atoms() {
        s += a.weight / ((a.position - anchor) - d);
    }
    for p in mu.density() {
        let u = (p.left - anchor) - d;
        let v = (p.right - anchor) - d;
        if u == 0.0 {
            return f64::INFINITY;
        }
        if v == 0.0 {
            return f64::NEG_INFINITY;
        }
        s += p.height * log_ratio(u, v, p.right - p.left);
    }
    s
}

/// `F'(anchor + d)`; only meaningful off the support.
pub(crate) fn deriv_offset(mu: &Measure, anchor: f64, d: f64) -> f64 {
    let mut s = 0.0;
    for a in mu.atoms() {
        let r = (a.position - anchor) - d;
        s += a.weight / (r * r);
    }
    for p in mu.density() {
        let u = (p.left - anchor) - d;
        let v = (p.right - anchor) - d;
        s += p.height * (1.0 / u - 1.0 / v);
    }
    s
}

/// Value of `F` at `z`. On the real axis (`im == 0`) this is `F(x + i0)`.
pub fn stieltjes(mu: &Measure, z: Complex64) -> Result<Complex64> {
    if z.im < 0.0 || z.im.is_nan() || z.re.is_nan() {
        return Err(Error::InvalidGrid(format!("point {z} is not in the closed upper half-plane")));
    }
    if z.im == 0.0 {
        let b = boundary_value(mu, z.re);
        return match b.kind {
            BoundaryKind::Regular => Ok(Complex64::new(b.re, b.im)),
            BoundaryKind::Pole => Err(Error::Pole { x: z.re }),
            BoundaryKind::DensityEdge => Err(Error::DensityEdge {
                x: z.re,
                positive: b.re > 0.0,
            }),
        };
    }
    let mut s = Complex64::new(0.0, 0.0);
    for a in mu.atoms() {
        s += a.weight / (Complex64::new(a.position, 0.0) - z);
    }
    for p in mu.density() {
        // log((b − z)/(a − z)) = log(1 + w), w = (b − a)/(a − z); the ratio
        // stays in the upper half-plane so the principal branch is continuous.
        let w = (p.right - p.left) / (Complex64::new(p.left, 0.0) - z);
        let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
        let im = w.im.atan2(1.0 + w.re);
        s += p.height * Complex64::new(re, im);
    }
    Ok(s)
}

/// Boundary value `F(x + i0)` with its classification.
pub fn boundary_value(mu: &Measure, x: f64) -> BoundaryValue {
    if mu.atoms().iter().any(|a| a.position == x) {
        return BoundaryValue {
            re: f64::NAN,
            im: f64::NAN,
            kind: BoundaryKind::Pole,
        };
    }
    let mut im = 0.0;
    let mut edge_jump = 0.0;
    let mut at_edge = false;
    for p in mu.density() {
        if p.left < x && x < p.right {
            im += PI * p.height;
        } else if x == p.left {
            at_edge = true;
            edge_jump += p.height;
            im += 0.5 * PI * p.height;
        } else if x == p.right {
            at_edge = true;
            edge_jump -= p.height;
            im += 0.5 * PI * p.height;
        }
    }
    if at_edge {
        // A piece starting at x pushes Re F to +inf, one ending there to -inf.
        let re = if edge_jump > 0.0 {
            f64::INFINITY
        } else if edge_jump < 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::NAN
        };
        return BoundaryValue {
            re,
            im,
            kind: BoundaryKind::DensityEdge,
        };
    }
    BoundaryValue {
        re: re_offset(mu, x, 0.0),
        im,
        kind: BoundaryKind::Regular,
    }
}

/// `H(x) = Re F(x + i0)/π`.
pub fn hilbert(mu: &Measure, x: f64) -> Result<f64> {
    Ok(stieltjes(mu, Complex64::new(x, 0.0))?.re / PI)
}

/// `F'(x) = ∫ dμ(y)/(y − x)²` for `x` off the support.
pub fn stieltjes_deriv(mu: &Measure, x: f64) -> Result<f64> {
    if mu.in_support(x) {
        return Err(Error::InSupport { x });
    }
    Ok(deriv_offset(mu, x, 0.0))
}

/// `F_{t0}(z) = F(z)/(1 + F(z)/t0)`.
pub fn mobius(mu: &Measure, t0: f64, z: Complex64) -> Result<Complex64> {
    if !(t0 > 0.0) {
        return Err(Error::NonPositiveThreshold(t0));
    }
    let f = stieltjes(mu, z)?;
    let den = 1.0 + f / t0;
    if den.re == 0.0 && den.im == 0.0 {
        return Err(Error::FamilyPole { x: z.re });
    }
    Ok(f / den)
}

/// Real Möbius value for a real `F` value; `None` on the family pole.
pub(crate) fn mobius_real(f: f64, t0: f64) -> Option<f64> {
    if f.is_infinite() {
        return Some(t0);
    }
    let den = 1.0 + f / t0;
    (den != 0.0).then(|| f / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn point_mass_values() {
        let d = Measure::dirac(0.0);
        let f = stieltjes(&d, c(0.0, 1.0)).unwrap();
        assert!((f - c(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(stieltjes(&d, c(2.0, 0.0)).unwrap(), c(-0.5, 0.0));
        assert!(matches!(stieltjes(&d, c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!((hilbert(&d, 1.0).unwrap() + 1.0 / PI).abs() < 1e-16);
        assert!((hilbert(&d, -1.0).unwrap() - 1.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn symmetric_pair_cancels() {
        let m = Measure::atomic(&[(-1.0, 0.5), (1.0, 0.5)]).unwrap();
        assert_eq!(stieltjes(&m, c(0.0, 0.0)).unwrap().re, 0.0);
    }

    #[test]
    fn uniform_density() {
        let u = Measure::uniform(0.0, 1.0, 1.0).unwrap();
        let f = stieltjes(&u, c(2.0, 0.0)).unwrap();
        assert!((f.re + 2f64.ln()).abs() < 1e-15);
        assert_eq!(f.im, 0.0);
        let mid = stieltjes(&u, c(0.5, 0.0)).unwrap();
        assert!(mid.re.abs() < 1e-16);
        assert!((mid.im - PI).abs() < 1e-15);
        let e = boundary_value(&u, 0.0);
        assert_eq!(e.kind, BoundaryKind::DensityEdge);
        assert_eq!(e.re, f64::INFINITY);
        assert_eq!(boundary_value(&u, 1.0).re, f64::NEG_INFINITY);
    }

    #[test]
    fn edge_sign_follows_height_jump() {
        let m = Measure::new(
            vec![],
            vec![
                crate::measure::DensityPiece { left: 0.0, right: 1.0, height: 1.0 },
                crate::measure::DensityPiece { left: 1.0, right: 2.0, height: 3.0 },
            ],
        )
        .unwrap();
        let b = boundary_value(&m, 1.0);
        assert_eq!(b.kind, BoundaryKind::DensityEdge);
        assert_eq!(b.re, f64::INFINITY);
    }

    #[test]
    fn interior_real_part_matches_complex_limit() {
        let m = Measure::new(
            vec![crate::measure::Atom { position: 3.0, weight: 0.7 }],
            vec![crate::measure::DensityPiece { left: -1.0, right: 2.0, height: 0.4 }],
        )
        .unwrap();
        for &x in &[-3.0, -0.5, 0.3, 1.9, 2.5, 10.0] {
            let b = stieltjes(&m, c(x, 0.0)).unwrap();
            let z = stieltjes(&m, c(x, 1e-9)).unwrap();
            assert!((b - z).norm() < 1e-6, "x = {x}: {b} vs {z}");
        }
    }

    #[test]
    fn derivative() {
        let d = Measure::dirac(0.0);
        assert_eq!(stieltjes_deriv(&d, 1.0).unwrap(), 1.0);
        assert_eq!(stieltjes_deriv(&d, 2.0).unwrap(), 0.25);
        assert!(stieltjes_deriv(&d, 0.0).is_err());
        let u = Measure::uniform(0.0, 1.0, 1.0).unwrap();
        assert!(stieltjes_deriv(&u, 0.5).is_err());
        assert!((stieltjes_deriv(&u, 2.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mobius_examples() {
        let d = Measure::dirac(0.0);
        assert!((mobius(&d, 1.0, c(-1.0, 0.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        assert!((mobius(&d, 1.0, c(0.0, 1.0)).unwrap() - c(0.5, 0.5)).norm() < 1e-15);
        assert!(matches!(
            mobius(&d, 1.0, c(1.0, 0.0)),
            Err(Error::FamilyPole { .. })
        ));
    }
}
