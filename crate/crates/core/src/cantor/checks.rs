//! Exact identities of the construction and the numerical bounds on the
//! far part of the transform and on the level-set length inside the set.

use std::collections::HashMap;

use num::bigint::{BigInt, BigUint};
use num::{One, Zero};
use serde_json::json;

use super::{
    atoms::{cantor_atoms, split_at},
    build_set_partial, cantor_address, e_block, e_block_interval, e_block_length, e_block_window_measure, e_unit,
    in_cantor_set, k_interval, k_intervals, k_schedule, pow2, pow3, to_f64, CantorIndex, CantorSpec, KSchedule,
    Rational, RationalInterval, FEASIBLE_SCALE,
};
use crate::error::{Error, Result};
use crate::level_sets::{gamma, Sign};
use crate::measure::Measure;
use crate::roots::bisect;
use crate::transform::{re_offset, stieltjes};
use crate::verify::{CheckReport, Tally};
use crate::Complex64;

/// Indices whose window scale is beyond this are left out of the density check.
const LEMMA41_MAX_K: u64 = 5000;

/// Finest atomic level used when resolving level sets inside blocks.
const LEVEL_BUDGET: u32 = 16;

/// Approximation error allowed, relative to the bound being checked.
const ERROR_BUDGET: f64 = 0.01;

/// A report together with the indices it covered and those it could not.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexedReport {
    pub report: CheckReport,
    pub feasible: Vec<CantorIndex>,
    pub skipped: Vec<CantorIndex>,
}

/// Window density at `x0 ∈ K_∞` on the scale set by the level-`n` block
/// containing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma41 {
    pub index: CantorIndex,
    pub k: u64,
    /// `(5/3)·3^{-k}`.
    pub delta: Rational,
    /// Share of the window covered by that index's own block.
    pub own_ratio: Rational,
    /// Share covered by all blocks of the schedule.
    pub set_ratio: Rational,
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn two_thirds_pow(e: u64) -> Rational {
    Rational::new(pow2(e), pow3(e))
}

fn pow3_f64(k: u64) -> f64 {
    if k > 700 {
        f64::INFINITY
    } else {
        3f64.powi(k as i32)
    }
}

pub fn lemma41_ratio(x0: &Rational, n: u32, schedule: &KSchedule) -> Result<Lemma41> {
    let index = cantor_address(x0, n).ok_or(Error::NotInSet { x: to_f64(x0) })?;
    let k = schedule.k(index).ok_or(Error::InvalidIndex { n, j: index.j() })?;
    let delta = r(5, 3) * Rational::new(BigInt::one(), pow3(k));
    let lo = x0 - &delta;
    let hi = x0 + &delta;
    let width = &delta * BigInt::from(2);
    let own = e_block_window_measure(index, k - n as u64, &lo, &hi)?;
    let mut all = Rational::zero();
    for (i, ki) in schedule.entries() {
        all += e_block_window_measure(i, ki - i.n() as u64, &lo, &hi)?;
    }
    Ok(Lemma41 {
        index,
        k,
        own_ratio: own / &width,
        set_ratio: all / &width,
        delta,
    })
}

/// Distance from `[a, b]` to a point.
fn gap_to(c: f64, a: f64, b: f64) -> f64 {
    if c < a {
        a - c
    } else if c > b {
        c - b
    } else {
        0.0
    }
}

/// Bound on `|F_approx − F|` over `[a, b]` when each atom of `g` stands for
/// mass spread over an interval of half-width `h` around it.
fn transport_error(g: &Measure, h: f64, a: f64, b: f64) -> f64 {
    let mut e = 0.0;
    for atom in g.atoms() {
        let d = gap_to(atom.position, a, b);
        if d <= h {
            return f64::INFINITY;
        }
        e += atom.weight * h / ((d - h) * d);
    }
    e * (1.0 + 1e-12)
}

fn half_width(level: u32) -> f64 {
    0.5 * 3f64.powi(-(level as i32))
}

/// Left, middle and right points of evenly spread intervals of a block.
fn block_samples(i: CantorIndex, m: u64, per_block: usize) -> Result<Vec<f64>> {
    let count = BigUint::one() << (m - 1) as usize;
    let last = &count - 1u32;
    let mut qs: Vec<BigUint> = (0..per_block)
        .map(|s| {
            if per_block == 1 {
                BigUint::zero()
            } else {
                &last * BigUint::from(s) / BigUint::from(per_block - 1)
            }
        })
        .collect();
    qs.dedup();
    let mut out = Vec::with_capacity(3 * qs.len());
    for q in &qs {
        let iv = e_block_interval(i, m, q)?.to_interval();
        out.extend([iv.lo, 0.5 * (iv.lo + iv.hi), iv.hi]);
    }
    Ok(out)
}

/// `|F̃_i| ≤ 3^{k(pred i)}` at sample points of every block up to `i`.
pub fn check_lemma42(levels: u32, seed: u64, samples_per_block: usize, cap: u32) -> Result<IndexedReport> {
    if samples_per_block == 0 {
        return Err(Error::InvalidGrid("need at least one sample per block".into()));
    }
    let schedule = k_schedule(seed, CantorIndex::last_of(levels)?)?;
    let echo = json!({ "levels": levels, "seed_k": seed, "samples_per_block": samples_per_block });
    let mut tally = Tally::new("lemma42", 1e-9, echo);
    let entries: Vec<(CantorIndex, u64)> = schedule.entries().collect();
    let (mut feasible, mut skipped) = (Vec::new(), Vec::new());
    tally.note("index (1,1) has no predecessor and is not checked");
    for (pos, &(i, _)) in entries.iter().enumerate().skip(1) {
        let p = i.predecessor()?;
        let kp = entries[pos - 1].1;
        let bound = pow3_f64(kp);
        if !(bound < FEASIBLE_SCALE) {
            skipped.push(i);
            continue;
        }
        let mut points = Vec::new();
        for &(b, kb) in &entries[..=pos] {
            points.extend(block_samples(b, kb - b.n() as u64, samples_per_block)?);
        }
        let mut chosen = None;
        for level in i.n().max(3)..=cap.min(20) {
            let (_, far) = split_at(i, level, cap)?;
            let h = half_width(level);
            let errs: Vec<f64> = points.iter().map(|&x| transport_error(&far, h, x, x)).collect();
            if errs.iter().all(|&e| e <= ERROR_BUDGET * bound) {
                chosen = Some((level, far, errs));
                break;
            }
        }
        let Some((level, far, errs)) = chosen else {
            tally.require(false, format!("{i}: no atomic level within the error budget"));
            skipped.push(i);
            continue;
        };
        let mut worst = 0.0f64;
        for (&x, e) in points.iter().zip(errs) {
            let v = stieltjes(&far, Complex64::new(x, 0.0))?.re.abs();
            worst = worst.max((v + e) / bound);
            tally.margin(1.0 - (v + e) / bound);
        }
        tally.note(format!(
            "{i}: bound 3^{kp} (predecessor {p}), level {level}, {} points, max ratio {worst:.3e}",
            points.len()
        ));
        feasible.push(i);
    }
    tally.require(!feasible.is_empty(), "at least one feasible index");
    if !skipped.is_empty() {
        let s: Vec<String> = skipped.iter().map(|i| i.to_string()).collect();
        tally.note(format!("skipped (3^k beyond 1e12): {}", s.join(" ")));
    }
    Ok(IndexedReport {
        report: tally.finish(),
        feasible,
        skipped,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Part {
    Full,
    Far,
}

struct DecayContext {
    index: CantorIndex,
    cap: u32,
    far_level_n: Vec<RationalInterval>,
    far_mass: f64,
    cache: HashMap<(Part, u32), Measure>,
}

impl DecayContext {
    fn measure(&mut self, part: Part, level: u32) -> Result<&Measure> {
        let key = (part, level);
        if !self.cache.contains_key(&key) {
            let m = match part {
                Part::Full => cantor_atoms(level, self.cap)?,
                Part::Far => split_at(self.index, level, self.cap)?.1,
            };
            self.cache.insert(key, m);
        }
        Ok(&self.cache[&key])
    }

    /// Upper bound on `|{x ∈ Ẽ_b : |F_part(x)| ≥ s}|`, with how it was found.
    fn block_length(&mut self, b: CantorIndex, k: u64, part: Part, s: f64) -> Result<(f64, &'static str)> {
        let m = k - b.n() as u64;
        let mass = match part {
            Part::Full => 1.0,
            Part::Far => self.far_mass,
        };
        if mass == 0.0 {
            return Ok((0.0, "zero"));
        }
        let mut d = 3f64.powi(-(k.min(700) as i32) - 1);
        if part == Part::Far {
            let first = e_block_interval(b, m, &BigUint::zero())?;
            let last = e_block_interval(b, m, &((BigUint::one() << (m - 1) as usize) - 1u32))?;
            let hull = RationalInterval {
                left: first.left,
                right: last.right,
            };
            let far = self
                .far_level_n
                .iter()
                .map(|iv| to_f64(&hull.distance(iv)))
                .fold(f64::INFINITY, f64::min);
            d = d.max(far);
        }
        if mass / d < s * (1.0 - 1e-12) {
            return Ok((0.0, "zero"));
        }
        let full = to_f64(&e_block_length(b.n(), m));
        let start = (k.min(u32::MAX as u64) as u32).max(self.index.n());
        let need = (start..=LEVEL_BUDGET.min(self.cap)).find(|&l| mass * half_width(l) / (d * d) <= ERROR_BUDGET * s);
        let (Some(level), true) = (need, k <= self.cap as u64) else {
            return Ok((full, "full"));
        };
        let intervals = e_block(b, m, self.cap)?;
        let g = self.measure(part, level)?;
        let h = half_width(level);
        let mut total = 0.0;
        for iv in intervals {
            let iv = iv.to_interval();
            let (a, bb) = (iv.lo, iv.hi);
            let e = transport_error(g, h, a, bb);
            if !(e <= ERROR_BUDGET * s) {
                total += bb - a;
                continue;
            }
            let s1 = s - e;
            let f = |x: f64| re_offset(g, x, 0.0);
            let (fa, fb) = (f(a), f(bb));
            let pos = if fb < s1 {
                0.0
            } else if fa >= s1 {
                bb - a
            } else {
                bb - bisect(a, bb, 1e-13, |x| f(x) < s1).0
            };
            let neg = if fa > -s1 {
                0.0
            } else if fb <= -s1 {
                bb - a
            } else {
                bisect(a, bb, 1e-13, |x| f(x) <= -s1).1 - a
            };
            total += (pos + neg).min(bb - a);
        }
        Ok((total, "resolved"))
    }
}

/// Sum of `|Ẽ_b|` over all indices after the last one of level `levels`.
fn tail_length(levels: u32, k_last: u64) -> Rational {
    Rational::new(BigInt::one(), pow2(levels as u64 + 2)) * two_thirds_pow(3 * k_last)
}

fn upper_f64(q: &Rational) -> f64 {
    let v = to_f64(q);
    if v == 0.0 && !q.is_zero() {
        f64::MIN_POSITIVE
    } else {
        v * (1.0 + 1e-15)
    }
}

/// Decay of `2t·|{x ∈ e : |F| ≥ 2t}|` for `3^{k(pred i)} < t ≤ 3^{k(i)}`:
/// the near part by Boole's equality, the far part by the block lengths
/// beyond `i`, and the total against `13·2^{-n}`.
pub fn check_thm16_decay(levels: u32, seed: u64, t: f64, cap: u32) -> Result<CheckReport> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonPositiveThreshold(t));
    }
    let schedule = k_schedule(seed, CantorIndex::last_of(levels)?)?;
    let echo = json!({ "levels": levels, "seed_k": seed, "t": t });
    let id = "thm16_decay";
    let entries: Vec<(CantorIndex, u64)> = schedule.entries().collect();
    let Some(pos) = entries.iter().position(|&(_, k)| t <= pow3_f64(k)) else {
        return Ok(CheckReport::precondition(id, "t exceeds 3^k for every built index", echo));
    };
    if pos == 0 {
        return Ok(CheckReport::precondition(id, "t ≤ 3^k(1,1): the window needs a predecessor index", echo));
    }
    let (i, k) = entries[pos];
    let p = i.predecessor()?;
    let n = i.n();
    let scale = 0.5f64.powi(n as i32);
    let mut tally = Tally::new(id, 1e-9, echo);
    tally.note(format!("window index {i}: 3^{} < t ≤ 3^{k}", entries[pos - 1].1));

    let near_mass = scale + 0.5f64.powi(p.n() as i32);
    let level_a = (n + 6).min(cap).max(n);
    let (near, _) = split_at(i, level_a, cap)?;
    let term_a = 2.0 * t * gamma(&near, t, Sign::Abs)?.length();
    let boole = 4.0 * near.total_mass();
    tally.require(((near.total_mass() - near_mass) / near_mass).abs() < 1e-12, "near mass");
    tally.require(((term_a - boole) / boole).abs() < 1e-9, "near term equals 4·mass");
    tally.margin(1.0 - term_a / (12.0 * scale));

    let far_level_n = far_intervals(i, p);
    let mut ctx = DecayContext {
        index: i,
        cap,
        far_level_n,
        far_mass: 1.0 - near_mass,
        cache: HashMap::new(),
    };

    let tail = tail_length(levels, entries.last().expect("nonempty").1);
    let tail_f = upper_f64(&tail);
    let (mut term_b, mut lhs, mut literal) = (0.0, 0.0, 0.0);
    let mut after = tail.clone();
    let mut modes: Vec<String> = Vec::new();
    for &(b, kb) in &entries {
        let (lb, mb) = ctx.block_length(b, kb, Part::Far, t)?;
        let (l2, m2) = ctx.block_length(b, kb, Part::Full, 2.0 * t)?;
        let (l1, _) = ctx.block_length(b, kb, Part::Full, t)?;
        term_b += 2.0 * t * lb;
        lhs += 2.0 * t * l2;
        literal += 2.0 * t * l1;
        if b > i {
            after += e_block_length(b.n(), kb - b.n() as u64);
        }
        modes.push(format!("{b}:{mb}/{m2}"));
    }
    term_b += 2.0 * t * tail_f;
    lhs += 2.0 * t * tail_f;
    literal += 2.0 * t * tail_f;
    tally.note(format!("blocks (far/full): {}", modes.join(" ")));

    let chain = Rational::from_integer(pow3(k) * 2) * &after;
    let chain_f = upper_f64(&chain);
    let rhs_a = Rational::new(pow3(k), pow2(n as u64)) * two_thirds_pow(3 * k);
    let unit = Rational::new(BigInt::one(), pow2(n as u64));
    tally.require(chain <= rhs_a, "far-part bound against 3^k·2^-n·(2/3)^k(succ)");
    tally.require(rhs_a <= unit, "3^k·2^-n·(2/3)^3k ≤ 2^-n");
    tally.margin(1.0 - term_b / chain_f);

    let bound = 13.0 * scale;
    tally.margin(1.0 - lhs / bound);
    tally.note(format!(
        "near {term_a:.6e} (≤ {:.3e}), far {term_b:.6e} (≤ {chain_f:.3e}), 2t·|{{|F| ≥ 2t}}| = {lhs:.6e} (≤ {bound})",
        12.0 * scale
    ));
    tally.margin(1.0 - literal / bound);
    tally.note(format!("2t·|{{|F| ≥ t}}| = {literal:.6e}"));
    Ok(tally.finish())
}

/// Level-`n` intervals outside `K_i ∪ K_p`.
fn far_intervals(i: CantorIndex, p: CantorIndex) -> Vec<RationalInterval> {
    let near = [k_interval(i), k_interval(p)];
    (1..=1u64 << i.n())
        .map(|j| k_interval(CantorIndex::new(i.n(), j).expect("valid")))
        .filter(|kc| !near.iter().any(|h| h.left <= kc.left && kc.right <= h.right))
        .collect()
}

fn check_gap_position(tally: &mut Tally, iv: &RationalInterval, k: u64, what: &str) {
    let step = Rational::new(BigInt::one(), pow3(k + 1));
    let g1 = &iv.left - &step;
    let g2 = &iv.right + &step;
    let scaled = &g1 * Rational::from_integer(pow3(k));
    let one_mod_three = scaled.is_integer() && (scaled.to_integer() % 3u32) == BigInt::one();
    tally.require(
        in_cantor_set(&g1) && in_cantor_set(&g2) && &g2 - &g1 == Rational::new(BigInt::one(), pow3(k)) && one_mod_three,
        format!("{what}: distance to K_inf is 3^-(k+1)"),
    );
}

/// Exact identities for lengths, counts, positions and the schedule up to
/// level `levels`, plus the density lower bound.
pub fn check_cantor_combinatorics(levels: u32, seed: u64, cap: u32) -> Result<CheckReport> {
    let echo = json!({ "levels": levels, "seed_k": seed });
    let mut tally = Tally::new("cantor_combinatorics", 0.0, echo);
    let depth = 12.min(cap);

    // Level intervals: count, lengths, order, nesting and measure.
    let mut previous = k_intervals(0, cap)?;
    for n in 1..=depth {
        let ks = k_intervals(n, cap)?;
        let len = Rational::new(BigInt::one(), pow3(n as u64));
        let total: Rational = ks.iter().map(|iv| iv.len()).sum();
        tally.require(ks.len() as u64 == 1 << n, format!("K_{n} count"));
        tally.require(ks.iter().all(|iv| iv.len() == len), format!("K_{n} lengths"));
        tally.require(total == two_thirds_pow(n as u64), format!("|K_{n}| = (2/3)^{n}"));
        tally.require(ks.windows(2).all(|w| w[0].right < w[1].left), format!("K_{n} order"));
        tally.require(
            ks.iter().enumerate().all(|(j, iv)| {
                let parent = &previous[j / 2];
                parent.left <= iv.left && iv.right <= parent.right
            }),
            format!("K_{n} nested"),
        );
        previous = ks;
    }
    let atom_level = 12.min(cap);
    let atoms = cantor_atoms(atom_level, cap)?;
    tally.require(atoms.total_mass() == 1.0, "atomic approximation has mass 1");
    for n in 1..=6.min(atom_level) {
        let ok = k_intervals(n, cap)?.iter().all(|iv| {
            let f = iv.to_interval();
            let count = atoms.atoms().iter().filter(|a| f.contains(a.position)).count();
            count as f64 * 0.5f64.powi(atom_level as i32) == 0.5f64.powi(n as i32)
        });
        tally.require(ok, format!("level-{n} intervals carry mass 2^-{n}"));
    }

    // Blocks for every n + m ≤ 12: lengths, counts, placement, affine image.
    for n in 1..depth {
        for m in 1..=(depth - n) as u64 {
            let unit = e_unit(m, cap)?;
            let scale = Rational::new(BigInt::one(), pow3(n as u64));
            let each = Rational::new(BigInt::one(), pow3(n as u64 + m + 1));
            let mut ok = true;
            for j in 1..=1u64 << n {
                let i = CantorIndex::new(n, j)?;
                let host = k_interval(i);
                let blk = e_block(i, m, cap)?;
                let total: Rational = blk.iter().map(|iv| iv.len()).sum();
                ok &= blk.len() as u64 == 1 << (m - 1);
                ok &= total == e_block_length(n, m);
                ok &= blk.iter().all(|iv| iv.len() == each && host.contains(&iv.left) && host.contains(&iv.right));
                ok &= blk.iter().zip(&unit).all(|(b, u)| {
                    b.left == &host.left + &u.left * &scale && b.right == &host.left + &u.right * &scale
                });
                if n + m as u32 <= 8 {
                    for iv in &blk {
                        check_gap_position(&mut tally, iv, n as u64 + m, "block interval");
                    }
                }
            }
            tally.require(ok, format!("blocks with n = {n}, m = {m}"));
        }
    }

    // Schedule.
    let upto = CantorIndex::last_of(levels)?;
    let schedule = k_schedule(seed, upto)?;
    let entries: Vec<(CantorIndex, u64)> = schedule.entries().collect();
    tally.require(entries[0].1 == seed, "k(1,1) equals the seed");
    tally.require(
        entries.windows(2).all(|w| w[1].1 == 3 * w[0].1 && w[0].0.successor().ok() == Some(w[1].0)),
        "k triples along the order",
    );
    tally.require(
        entries.iter().all(|(i, k)| *k > i.n() as u64)
            && entries.windows(2).all(|w| w[1].1 - w[1].0.n() as u64 > w[0].1 - w[0].0.n() as u64),
        "m ≥ 1 and strictly increasing",
    );

    // Block lengths along the schedule and the geometric tail.
    let built = build_set_partial(CantorSpec { levels, seed_k: seed }, cap)?;
    for &(i, k) in &entries {
        let m = k - i.n() as u64;
        let expected = Rational::new(BigInt::one(), pow2(i.n() as u64 + 1) * 3) * two_thirds_pow(k);
        tally.require(e_block_length(i.n(), m) == expected, format!("|Ẽ{i}| closed form"));
    }
    for b in built.blocks() {
        let total: Rational = b.intervals.iter().map(|iv| iv.len()).sum();
        tally.require(total == e_block_length(b.index.n(), b.m), format!("|Ẽ{}| from intervals", b.index));
        let mut ok = true;
        let mut sub = Tally::new("", 0.0, json!(null));
        for iv in &b.intervals {
            check_gap_position(&mut sub, iv, b.k, "");
        }
        ok &= sub.finish().passed;
        tally.require(ok, format!("Ẽ{} at distance 3^-(k+1) from K_inf", b.index));
    }
    for o in built.omitted() {
        let i = CantorIndex::new(o.n, o.j)?;
        let last = (BigUint::one() << (o.m - 1) as usize) - 1u32;
        for q in [BigUint::zero(), last] {
            let iv = e_block_interval(i, o.m, &q)?;
            check_gap_position(&mut tally, &iv, o.k, &format!("extreme interval of Ẽ{i}"));
        }
    }
    if !built.omitted().is_empty() {
        tally.note(format!(
            "{} blocks beyond depth {cap}: only their extreme intervals were placed",
            built.omitted().len()
        ));
    }
    for l0 in 0..=10u64 {
        for last in l0..=l0 + 20 {
            let partial: Rational = (l0..=last).map(two_thirds_pow).sum();
            let rest = two_thirds_pow(last + 1) * BigInt::from(3);
            tally.require(partial + rest == two_thirds_pow(l0) * BigInt::from(3), "geometric tail identity");
        }
    }

    // Separation of the near blocks from the rest of K_inf, and the
    // far-part chain.
    let k_last = entries.last().expect("nonempty").1;
    for (pos, &(i, k)) in entries.iter().enumerate().skip(1) {
        let p = i.predecessor()?;
        let n = i.n();
        let hull = |c: CantorIndex, kc: u64| -> Result<RationalInterval> {
            let m = kc - c.n() as u64;
            let first = e_block_interval(c, m, &BigUint::zero())?;
            let last = e_block_interval(c, m, &((BigUint::one() << (m - 1) as usize) - 1u32))?;
            Ok(RationalInterval {
                left: first.left,
                right: last.right,
            })
        };
        let hulls = [hull(i, k)?, hull(p, entries[pos - 1].1)?];
        let min_sep = Rational::new(BigInt::one(), pow3(n as u64));
        let ok = far_intervals(i, p)
            .iter()
            .all(|kc| hulls.iter().all(|h| h.distance(kc) >= min_sep));
        tally.require(ok, format!("Ẽ{i} ∪ Ẽ{p} at distance ≥ 3^-{n} from the far intervals"));

        let mut after = tail_length(levels, k_last);
        for &(b, kb) in &entries[pos + 1..] {
            after += e_block_length(b.n(), kb - b.n() as u64);
        }
        let chain = Rational::from_integer(pow3(k) * 2) * after;
        let rhs = Rational::new(pow3(k), pow2(n as u64)) * two_thirds_pow(3 * k);
        tally.require(
            chain <= rhs && rhs <= Rational::new(BigInt::one(), pow2(n as u64)),
            format!("far-part chain at {i}"),
        );
    }

    // Window density at points of K_inf.
    let tenth = r(1, 10);
    let mut density_cases = 0;
    for x0 in [r(0, 1), r(1, 4), r(3, 4), r(1, 1)] {
        for n in 1..=levels {
            let Some(i) = cantor_address(&x0, n) else {
                tally.require(false, format!("{x0} in K_inf"));
                continue;
            };
            if schedule.k(i).is_none_or(|k| k > LEMMA41_MAX_K) {
                continue;
            }
            let l = lemma41_ratio(&x0, n, &schedule)?;
            density_cases += 1;
            tally.require(l.set_ratio >= l.own_ratio, format!("set ratio at {x0}"));
            tally.margin(to_f64(&(&l.own_ratio - &tenth)));
            if x0.is_zero() {
                tally.require(l.own_ratio == tenth, format!("ratio at 0 on level {n} is exactly 1/10"));
            }
        }
    }
    tally.require(density_cases > 0, "at least one density case");
    Ok(tally.finish())
}
