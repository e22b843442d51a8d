//! Bracketed root finding for monotone predicates.

/// Relative bracket width at which bisection stops.
pub const DEFAULT_RTOL: f64 = 1e-12;

/// Finds the switch point of a predicate on `(lo, hi)`.
///
/// `inside` must be true on `(lo, r)` and false on `(r, hi)`; neither end is
/// evaluated. Midpoints are geometric while the bracket spans more than a
/// factor of four, so roots near a zero lower end cost `O(log log)` steps
/// per decade. Returns the final bracket.
pub fn bisect<P>(mut lo: f64, mut hi: f64, rtol: f64, mut inside: P) -> (f64, f64)
where
    P: FnMut(f64) -> bool,
{
    debug_assert!(lo < hi);
    for _ in 0..4000 {
        let width = hi - lo;
        if width <= rtol * lo.abs().max(hi.abs()) {
            break;
        }
        let mid = if lo > 0.0 && hi > 4.0 * lo {
            (lo.sqrt() * hi.sqrt()).clamp(lo, hi)
        } else if lo == 0.0 && hi > 0.0 {
            0.125 * hi
        } else {
            lo + 0.5 * width
        };
        if mid <= lo || mid >= hi {
            break;
        }
        if inside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// One safeguarded Newton step for `g(d) = 0` from the bracket midpoint.
pub fn polish<G, D>(lo: f64, hi: f64, g: G, dg: D) -> f64
where
    G: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut d = 0.5 * (lo + hi);
    for _ in 0..2 {
        let slope = dg(d);
        if !(slope.is_finite() && slope != 0.0) {
            break;
        }
        let next = d - g(d) / slope;
        if !(next >= lo && next <= hi) {
            break;
        }
        d = next;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let (lo, hi) = bisect(1.0, 2.0, 1e-14, |x| x * x < 2.0);
        assert!(lo <= 2f64.sqrt() && 2f64.sqrt() <= hi);
        assert!(hi - lo <= 1e-13);
    }

    #[test]
    fn tiny_root_from_zero() {
        let r = 3.7e-200;
        let (lo, hi) = bisect(0.0, 1.0, 1e-12, |x| x < r);
        assert!(lo <= r && r <= hi);
        assert!((hi - lo) <= 1e-12 * hi);
    }

    #[test]
    fn newton_polish_improves() {
        let (lo, hi) = bisect(1.0, 2.0, 1e-6, |x| x * x < 2.0);
        let d = polish(lo, hi, |x| x * x - 2.0, |x| 2.0 * x);
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
    }
}
