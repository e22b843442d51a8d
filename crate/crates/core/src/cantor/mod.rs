//! Middle-thirds Cantor construction with exact rational endpoints.
//!
//! `K_{n,j}` is the `j`-th of the `2^n` level-`n` intervals. `E_m ⊂ [0,1]` is
//! the union of the closed middle thirds of the `2^{m-1}` gaps opened at
//! stage `m`, and a block is the image of `E_{m(n,j)}` in `K_{n,j}`. Block
//! scales follow the schedule `k(n,j) = n + m(n,j)`, tripled at every step
//! of the lexicographic index order.

mod atoms;
mod checks;
mod set;

use std::fmt;

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;

pub use atoms::{atom_error_bound, cantor_atoms, split_at};
pub use checks::{
    check_cantor_combinatorics, check_lemma42, check_thm16_decay, lemma41_ratio, IndexedReport, Lemma41,
};
pub use set::{build_set, build_set_partial, set_from_json, Block, BlockDocument, CantorSpec, OmittedBlock, SetDocument, TruncatedSet};

pub type Rational = BigRational;

/// Deepest level enumerated interval by interval unless raised.
pub const DEFAULT_DEPTH_CAP: u32 = 20;

/// Indices are evaluated numerically only while `3^k(n,j)` stays below this.
pub const FEASIBLE_SCALE: f64 = 1e12;

/// Largest level representable with `u64` positions.
const MAX_LEVEL: u32 = 62;

/// A level-`n` index `(n, j)` with `1 ≤ j ≤ 2^n`, ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CantorIndex {
    n: u32,
    j: u64,
}

impl CantorIndex {
    pub fn new(n: u32, j: u64) -> Result<Self> {
        if n == 0 || n > MAX_LEVEL || j == 0 || j > 1u64 << n {
            return Err(Error::InvalidIndex { n, j });
        }
        Ok(Self { n, j })
    }

    pub fn first() -> Self {
        Self { n: 1, j: 1 }
    }

    /// The last index of level `n`, `(n, 2^n)`.
    pub fn last_of(n: u32) -> Result<Self> {
        Self::new(n, 1u64.checked_shl(n).unwrap_or(0))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn successor(&self) -> Result<Self> {
        if self.j == 1u64 << self.n {
            Self::new(self.n + 1, 1)
        } else {
            Ok(Self { n: self.n, j: self.j + 1 })
        }
    }

    /// `(n, j-1)`, or `(n-1, 2^{n-1})` when `j = 1`.
    pub fn predecessor(&self) -> Result<Self> {
        match (self.n, self.j) {
            (1, 1) => Err(Error::NoPredecessor),
            (n, 1) => Ok(Self { n: n - 1, j: 1u64 << (n - 1) }),
            (n, j) => Ok(Self { n, j: j - 1 }),
        }
    }

    /// Zero-based position in lexicographic order.
    pub fn rank(&self) -> u64 {
        (1u64 << self.n) - 2 + (self.j - 1)
    }

    pub fn from_rank(r: u64) -> Self {
        let n = 63 - (r + 2).leading_zeros();
        Self {
            n,
            j: r + 2 - (1u64 << n) + 1,
        }
    }
}

impl fmt::Display for CantorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.j)
    }
}

/// The scales `k(n,j)` for all indices up to a last one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSchedule {
    seed: u64,
    k: Vec<u64>,
}

impl KSchedule {
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn upto(&self) -> CantorIndex {
        CantorIndex::from_rank(self.k.len() as u64 - 1)
    }

    pub fn k(&self, i: CantorIndex) -> Option<u64> {
        self.k.get(i.rank() as usize).copied()
    }

    pub fn m(&self, i: CantorIndex) -> Option<u64> {
        self.k(i).map(|k| k - i.n as u64)
    }

    /// `(index, k)` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (CantorIndex, u64)> + '_ {
        self.k
            .iter()
            .enumerate()
            .map(|(r, &k)| (CantorIndex::from_rank(r as u64), k))
    }
}

/// `k(1,1) = seed` and `k(succ i) = 3·k(i)` up to and including `upto`.
pub fn k_schedule(seed: u64, upto: CantorIndex) -> Result<KSchedule> {
    if seed < 2 {
        return Err(Error::SeedTooSmall(seed));
    }
    let count = upto.rank() + 1;
    let mut k = Vec::with_capacity(count as usize);
    let mut cur = seed;
    for r in 0..count {
        if r > 0 {
            cur = cur.checked_mul(3).ok_or(Error::ScheduleOverflow(r - 1))?;
        }
        k.push(cur);
    }
    Ok(KSchedule { seed, k })
}

/// Closed interval with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalInterval {
    pub left: Rational,
    pub right: Rational,
}

impl RationalInterval {
    pub fn len(&self) -> Rational {
        &self.right - &self.left
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.left <= x && x <= &self.right
    }

    /// Nearest-double endpoints.
    pub fn to_interval(&self) -> Interval {
        Interval {
            lo: to_f64(&self.left),
            hi: to_f64(&self.right),
        }
    }

    /// Distance between two closed intervals (zero if they meet).
    pub fn distance(&self, other: &RationalInterval) -> Rational {
        if self.right < other.left {
            &other.left - &self.right
        } else if other.right < self.left {
            &self.left - &other.right
        } else {
            Rational::zero()
        }
    }
}

pub(crate) fn to_f64(q: &Rational) -> f64 {
    q.to_f64().expect("rationals convert to f64")
}

pub(crate) fn pow3(e: u64) -> BigInt {
    BigInt::from(3u32).pow(u32::try_from(e).expect("exponent fits u32"))
}

pub(crate) fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

fn triadic(num: BigInt, e: u64) -> Rational {
    Rational::new(num, pow3(e))
}

/// Numerator of the left end of `K_{n,j}` over `3^n`.
fn k_left_num(n: u32, j_minus_one: &BigUint) -> BigInt {
    let mut num = BigInt::zero();
    for b in (0..n as u64).rev() {
        num *= 3;
        if j_minus_one.bit(b) {
            num += 2;
        }
    }
    num
}

/// `K_{n,j}`.
pub fn k_interval(i: CantorIndex) -> RationalInterval {
    let num = k_left_num(i.n, &BigUint::from(i.j - 1));
    RationalInterval {
        left: triadic(num.clone(), i.n as u64),
        right: triadic(num + 1, i.n as u64),
    }
}

/// All `2^n` intervals of `K_n` in increasing order.
pub fn k_intervals(n: u32, cap: u32) -> Result<Vec<RationalInterval>> {
    if n > cap {
        return Err(Error::DepthCap { depth: n as u64, cap });
    }
    if n == 0 {
        return Ok(vec![RationalInterval {
            left: Rational::zero(),
            right: Rational::one(),
        }]);
    }
    Ok((1..=1u64 << n)
        .map(|j| k_interval(CantorIndex { n, j }))
        .collect())
}

/// The `q`-th interval (zero-based) of the image of `E_m` in the level-`n`
/// interval with left numerator `base` over `3^n`.
fn block_interval(base: &BigInt, n: u32, m: u64, q: &BigUint) -> RationalInterval {
    let u = k_left_num((m - 1) as u32, q);
    let e = n as u64 + m + 1;
    let left = base * pow3(m + 1) + u * 9 + 4;
    let right = &left + 1;
    // Numerators are 4 and 5 mod 9, so already in lowest terms.
    let den = pow3(e);
    RationalInterval {
        left: Rational::new_raw(left, den.clone()),
        right: Rational::new_raw(right, den),
    }
}

fn block_base(i: Option<CantorIndex>) -> (BigInt, u32) {
    match i {
        Some(i) => (k_left_num(i.n, &BigUint::from(i.j - 1)), i.n),
        None => (BigInt::zero(), 0),
    }
}

fn check_m(m: u64) -> Result<()> {
    if m == 0 || m > u32::MAX as u64 {
        return Err(Error::InvalidGrid(format!("block order m = {m} out of range")));
    }
    Ok(())
}

fn enumerate_block(i: Option<CantorIndex>, m: u64, cap: u32) -> Result<Vec<RationalInterval>> {
    check_m(m)?;
    let (base, n) = block_base(i);
    if n as u64 + m > cap as u64 {
        return Err(Error::DepthCap { depth: n as u64 + m, cap });
    }
    Ok((0..1u64 << (m - 1))
        .map(|q| block_interval(&base, n, m, &BigUint::from(q)))
        .collect())
}

/// `E_m ⊂ [0,1]`: `2^{m-1}` intervals of length `3^{-(m+1)}`.
pub fn e_unit(m: u64, cap: u32) -> Result<Vec<RationalInterval>> {
    enumerate_block(None, m, cap)
}

/// The image of `E_m` in `K_{n,j}`.
pub fn e_block(i: CantorIndex, m: u64, cap: u32) -> Result<Vec<RationalInterval>> {
    enumerate_block(Some(i), m, cap)
}

/// The `q`-th interval of [`e_block`] without enumerating the others.
pub fn e_block_interval(i: CantorIndex, m: u64, q: &BigUint) -> Result<RationalInterval> {
    check_m(m)?;
    if q.bits() > m - 1 {
        return Err(Error::InvalidGrid(format!("interval number {q} exceeds 2^{}", m - 1)));
    }
    let (base, n) = block_base(Some(i));
    Ok(block_interval(&base, n, m, q))
}

/// Walks the unit construction under the image of `E_m` in `K_i`, in
/// numerators over `3^{n+m+1}`. Nodes missing `[lo, hi]` are pruned; nodes
/// inside it are handed to `full` whole, leaves meeting its boundary to
/// `leaf`.
fn walk_window<F, L>(i: CantorIndex, m: u64, lo: &Rational, hi: &Rational, mut full: F, mut leaf: L) -> Result<()>
where
    F: FnMut(u64, &BigInt, &BigUint),
    L: FnMut(&BigUint),
{
    check_m(m)?;
    let (base, n) = block_base(Some(i));
    let den = pow3(n as u64 + m + 1);
    let lo_c = ceil(&(lo * Rational::from_integer(den.clone())));
    let hi_f = floor(&(hi * Rational::from_integer(den)));
    let origin = &base * pow3(m + 1);
    // (level l, unit numerator u over 3^l, interval-number prefix q)
    let mut stack = vec![(0u64, BigInt::zero(), BigUint::zero())];
    while let Some((l, u, q)) = stack.pop() {
        let width = pow3(m + 1 - l);
        let a = &origin + &u * &width;
        let b = &a + &width;
        if b < lo_c || a > hi_f {
            continue;
        }
        if a >= lo_c && b <= hi_f {
            full(l, &a, &q);
            continue;
        }
        if l == m - 1 {
            leaf(&q);
            continue;
        }
        let u3 = &u * 3;
        stack.push((l + 1, &u3 + 2, (&q << 1usize) + 1u32));
        stack.push((l + 1, u3, &q << 1usize));
    }
    Ok(())
}

fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

/// Intervals of [`e_block`] meeting `[lo, hi]`, found by pruned descent so
/// deep blocks stay cheap when the window is small.
pub fn e_block_window(i: CantorIndex, m: u64, lo: &Rational, hi: &Rational) -> Result<Vec<RationalInterval>> {
    let (base, n) = block_base(Some(i));
    let mut whole = Vec::new();
    let mut qs = Vec::new();
    walk_window(i, m, lo, hi, |l, _, q| whole.push((l, q.clone())), |q| qs.push(q.clone()))?;
    for (l, q) in whole {
        let shift = (m - 1 - l) as usize;
        if shift > 20 {
            return Err(Error::DepthCap { depth: m, cap: 20 });
        }
        qs.extend((0..1u32 << shift).map(|r| (&q << shift) + r));
    }
    let mut out: Vec<RationalInterval> = qs
        .iter()
        .map(|q| block_interval(&base, n, m, q))
        .filter(|iv| !(&iv.right < lo || &iv.left > hi))
        .collect();
    out.sort();
    Ok(out)
}

/// `|E_{n,j,m} ∩ [lo, hi]|` exactly, at any depth.
pub fn e_block_window_measure(i: CantorIndex, m: u64, lo: &Rational, hi: &Rational) -> Result<Rational> {
    let (base, n) = block_base(Some(i));
    let e = n as u64 + m + 1;
    let mut whole = BigInt::zero();
    let mut partial = Rational::zero();
    walk_window(
        i,
        m,
        lo,
        hi,
        |l, _, _| whole += pow2(m - 1 - l),
        |q| {
            let iv = block_interval(&base, n, m, q);
            let a = if &iv.left < lo { lo.clone() } else { iv.left.clone() };
            let b = if &iv.right > hi { hi.clone() } else { iv.right.clone() };
            if a < b {
                partial += b - a;
            }
        },
    )?;
    Ok(Rational::new(whole, pow3(e)) + partial)
}

/// `|E_{n,j,m}| = 2^{m-1}/3^{n+m+1}`.
pub fn e_block_length(n: u32, m: u64) -> Rational {
    Rational::new(pow2(m - 1), pow3(n as u64 + m + 1))
}

/// First `count` ternary digits of the expansion of `x` using only 0 and 2,
/// or `None` if `x` is not in the Cantor set.
pub fn cantor_digits(x: &Rational, count: usize) -> Option<Vec<u8>> {
    if x < &Rational::zero() || x > &Rational::one() {
        return None;
    }
    if x.is_one() {
        return Some(vec![2; count]);
    }
    let den = x.denom().clone();
    let mut rem = x.numer().clone();
    let mut digits = Vec::with_capacity(count);
    if is_power_of_three(&den) {
        // Terminating expansion; a final digit 1 is rewritten as 0222...
        while !rem.is_zero() {
            let (d, r) = next_digit(&rem, &den);
            rem = r;
            if d == 1 {
                if !rem.is_zero() {
                    return None;
                }
                digits.push(0);
                digits.resize(digits.len().max(count), 2);
                break;
            }
            digits.push(d);
        }
        digits.resize(digits.len().max(count), 0);
    } else {
        // The expansion is unique and eventually periodic; run until the
        // remainder repeats.
        let mut seen = std::collections::HashSet::new();
        while seen.insert(rem.clone()) || digits.len() < count {
            let (d, r) = next_digit(&rem, &den);
            if d == 1 {
                return None;
            }
            digits.push(d);
            rem = r;
        }
    }
    digits.truncate(count);
    Some(digits)
}

fn next_digit(rem: &BigInt, den: &BigInt) -> (u8, BigInt) {
    let t = rem * 3;
    let q: BigInt = &t / den;
    let d = q.to_u8().expect("digit below 3");
    (d, t - BigInt::from(d) * den)
}

fn is_power_of_three(d: &BigInt) -> bool {
    let mut d = d.clone();
    while (&d % 3u32).is_zero() {
        d /= 3u32;
    }
    d.is_one()
}

pub fn in_cantor_set(x: &Rational) -> bool {
    cantor_digits(x, 1).is_some()
}

/// The level-`n` index `(n, j)` with `x ∈ K_{n,j}` for `x` in the Cantor set.
pub fn cantor_address(x: &Rational, n: u32) -> Option<CantorIndex> {
    let digits = cantor_digits(x, n as usize)?;
    let j = digits.iter().fold(0u64, |acc, &d| 2 * acc + (d / 2) as u64) + 1;
    CantorIndex::new(n, j).ok()
}

/// Normalized union of closed rational intervals.
pub fn rational_union(mut v: Vec<RationalInterval>) -> Vec<RationalInterval> {
    v.sort();
    let mut out: Vec<RationalInterval> = Vec::with_capacity(v.len());
    for i in v {
        match out.last_mut() {
            Some(last) if i.left <= last.right => {
                if i.right > last.right {
                    last.right = i.right;
                }
            }
            _ => out.push(i),
        }
    }
    out
}

#[cfg(test)]
mod tests;
