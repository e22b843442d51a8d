//! Finite unions of closed real intervals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::InvalidSet("NaN endpoint".into()));
        }
        if !(lo < hi) {
            return Err(Error::InvalidSet(format!("reversed or empty interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Disjoint, sorted, closed intervals separated by gaps of positive length.
///
/// Endpoints may be infinite (complements of bounded sets).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "SetSpec", into = "SetSpec")]
pub struct IntervalUnion {
    intervals: Vec<Interval>,
}

#[derive(Serialize, Deserialize)]
struct SetSpec {
    intervals: Vec<[f64; 2]>,
}

impl TryFrom<SetSpec> for IntervalUnion {
    type Error = Error;

    fn try_from(spec: SetSpec) -> Result<Self> {
        IntervalUnion::from_pairs(spec.intervals.iter().map(|p| (p[0], p[1])))
    }
}

impl From<IntervalUnion> for SetSpec {
    fn from(u: IntervalUnion) -> Self {
        SetSpec {
            intervals: u.intervals.iter().map(|i| [i.lo, i.hi]).collect(),
        }
    }
}

impl IntervalUnion {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(lo: f64, hi: f64) -> Result<Self> {
        Ok(Self {
            intervals: vec![Interval::new(lo, hi)?],
        })
    }

    /// Normalizes arbitrary (possibly overlapping, unsorted) intervals.
    ///
    /// Degenerate pairs `lo == hi` are dropped; reversed pairs are rejected.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut v = Vec::new();
        for (lo, hi) in pairs {
            if lo.is_nan() || hi.is_nan() {
                return Err(Error::InvalidSet("NaN endpoint".into()));
            }
            if lo > hi {
                return Err(Error::InvalidSet(format!("reversed interval [{lo}, {hi}]")));
            }
            if lo < hi {
                v.push(Interval { lo, hi });
            }
        }
        Ok(Self::normalize(v))
    }

    fn normalize(mut v: Vec<Interval>) -> Self {
        v.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for i in v {
            match out.last_mut() {
                Some(last) if i.lo <= last.hi => last.hi = last.hi.max(i.hi),
                _ => out.push(i),
            }
        }
        Self { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn count(&self) -> usize {
        self.intervals.len()
    }

    /// Total Lebesgue length.
    pub fn len(&self) -> f64 {
        self.intervals.iter().map(Interval::len).sum()
    }

    pub fn inf(&self) -> Option<f64> {
        self.intervals.first().map(|i| i.lo)
    }

    pub fn sup(&self) -> Option<f64> {
        self.intervals.last().map(|i| i.hi)
    }

    pub fn diam(&self) -> f64 {
        match (self.inf(), self.sup()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }

    /// Index of the interval containing `x`, if any.
    pub fn locate(&self, x: f64) -> Option<usize> {
        let k = self.intervals.partition_point(|i| i.lo <= x);
        if k == 0 {
            return None;
        }
        self.intervals[k - 1].contains(x).then_some(k - 1)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.locate(x).is_some()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut v = self.intervals.clone();
        v.extend_from_slice(&other.intervals);
        Self::normalize(v)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = a[i].lo.max(b[j].lo);
            let hi = a[i].hi.min(b[j].hi);
            if lo < hi {
                out.push(Interval { lo, hi });
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::normalize(out)
    }

    /// Closure of the complement in the extended line.
    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut from = f64::NEG_INFINITY;
        for i in &self.intervals {
            if from < i.lo {
                out.push(Interval { lo: from, hi: i.lo });
            }
            from = i.hi;
        }
        if from < f64::INFINITY {
            out.push(Interval {
                lo: from,
                hi: f64::INFINITY,
            });
        }
        Self { intervals: out }
    }

    /// Closure of `self \ other`.
    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.difference(other).union(&other.difference(self))
    }

    /// Length of `self ∩ (lo, hi)`.
    pub fn measure_in(&self, lo: f64, hi: f64) -> f64 {
        if !(lo < hi) {
            return 0.0;
        }
        let start = self.intervals.partition_point(|i| i.hi <= lo);
        let mut total = 0.0;
        for i in &self.intervals[start..] {
            if i.lo >= hi {
                break;
            }
            total += i.hi.min(hi) - i.lo.max(lo);
        }
        total
    }

    /// Whether every interval of `self` lies in `other`, allowing each
    /// endpoint to stick out by at most `tol`.
    pub fn is_subset_of(&self, other: &Self, tol: f64) -> bool {
        self.intervals.iter().all(|i| {
            other
                .intervals
                .iter()
                .any(|o| o.lo <= i.lo + tol && i.hi <= o.hi + tol)
        })
    }

    /// Endpoints in increasing order.
    pub fn endpoints(&self) -> Vec<f64> {
        self.intervals.iter().flat_map(|i| [i.lo, i.hi]).collect()
    }

    /// Lengths of the bounded gaps between consecutive intervals.
    pub fn gaps(&self) -> Vec<f64> {
        self.intervals.windows(2).map(|w| w[1].lo - w[0].hi).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite endpoints serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
