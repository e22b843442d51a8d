//! Real polynomials in the monomial basis.

use serde::{Deserialize, Serialize};

/// Coefficients in increasing degree: `c[0] + c[1] x + ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial(pub Vec<f64>);

impl Polynomial {
    pub fn new(coeffs: &[f64]) -> Self {
        Self(coeffs.to_vec())
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Coefficients of `u ↦ p(c + u)`.
    pub fn shifted(&self, c: f64) -> Polynomial {
        let mut out = self.0.clone();
        let n = out.len();
        // Repeated synthetic division (Horner's shift).
        for i in 0..n {
            for k in (i..n.saturating_sub(1)).rev() {
                out[k] += c * out[k + 1];
            }
        }
        Polynomial(out)
    }

    /// `∫_{c+lo}^{c+hi} p(x) dx` evaluated in shifted coordinates so short
    /// intervals far from the origin keep their accuracy.
    pub fn integrate_around(&self, c: f64, lo: f64, hi: f64) -> f64 {
        let q = self.shifted(c);
        let mut s = 0.0;
        for (k, &a) in q.0.iter().enumerate() {
            let e = (k + 1) as i32;
            s += a * (hi.powi(e) - lo.powi(e)) / e as f64;
        }
        s
    }
}
