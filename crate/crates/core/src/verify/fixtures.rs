//! Deterministic inputs for the bundled checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::interval::IntervalUnion;
use crate::measure::Measure;
use crate::poly::Polynomial;

fn weight(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - rng.gen::<f64>()
}

/// `count` atomic measures with `1..=max_atoms` atoms placed uniformly on
/// `[lo, hi]` with weights in `(0, 1]`.
pub fn random_atomic(seed: u64, count: usize, max_atoms: usize, lo: f64, hi: f64) -> Vec<Measure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_atoms);
            let atoms: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(lo..=hi), weight(&mut rng))).collect();
            Measure::atomic(&atoms).expect("finite atoms")
        })
        .collect()
}

/// Atomic measures whose atoms lie in `e`.
pub fn random_atomic_in(seed: u64, count: usize, max_atoms: usize, e: &IntervalUnion) -> Vec<Measure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parts = e.intervals();
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_atoms);
            let atoms: Vec<(f64, f64)> = (0..n)
                .map(|_| {
                    let i = &parts[rng.gen_range(0..parts.len())];
                    (rng.gen_range(i.lo..=i.hi), weight(&mut rng))
                })
                .collect();
            Measure::atomic(&atoms).expect("finite atoms")
        })
        .collect()
}

/// 100 measures, up to 32 atoms on `[-10, 10]`.
pub fn wide_corpus() -> Vec<Measure> {
    random_atomic(0x0b00, 100, 32, -10.0, 10.0)
}

/// 20 measures, up to 10 atoms on `[-10, 10]`.
pub fn small_corpus() -> Vec<Measure> {
    random_atomic(0x0c32, 20, 10, -10.0, 10.0)
}

/// `[0, 1] ∪ [2, 3]`.
pub fn two_intervals() -> IntervalUnion {
    IntervalUnion::from_pairs([(0.0, 1.0), (2.0, 3.0)]).expect("valid")
}

/// 10 measures with up to 6 atoms inside `[0, 1] ∪ [2, 3]`.
pub fn homogeneous_corpus() -> Vec<Measure> {
    random_atomic_in(0x0e35, 10, 6, &two_intervals())
}

pub fn mixed_measures() -> Vec<Measure> {
    let u = Measure::uniform(0.0, 1.0, 1.0).expect("valid");
    let atoms = Measure::atomic(&[(-1.0, 0.5), (2.0, 0.25)]).expect("valid");
    vec![Measure::dirac(0.0).sum(&u), u.clone(), u.sum(&atoms)]
}

pub fn poltoratski_fixtures() -> Vec<(Measure, Polynomial)> {
    let two = Measure::atomic(&[(-0.5, 0.7), (1.5, 0.3)]).expect("valid");
    let three = Measure::atomic(&[(-2.0, 0.2), (0.25, 1.0), (3.0, 0.5)]).expect("valid");
    let cubic = Polynomial::new(&[0.0, -1.0, 0.0, 1.0]);
    vec![
        (Measure::dirac(0.0), Polynomial::new(&[1.0])),
        (Measure::dirac(0.0), Polynomial::new(&[0.0, 0.0, 1.0])),
        (two.clone(), cubic.clone()),
        (two, Polynomial::new(&[0.0, 1.0])),
        (three.clone(), cubic),
        (three, Polynomial::new(&[1.0, 0.0, 2.0])),
    ]
}

/// Mutually singular pairs with their threshold ratio. The interleaved pair
/// is close enough that the level sets overlap at small thresholds.
pub fn singular_pairs() -> Vec<(Measure, Measure, f64)> {
    let ws = [0.3, 1.0, 0.6, 0.45, 0.8];
    let mu: Vec<(f64, f64)> = ws.iter().enumerate().map(|(k, &w)| (0.01 * k as f64, w)).collect();
    let nu: Vec<(f64, f64)> = ws.iter().rev().enumerate().map(|(k, &w)| (0.01 * k as f64 + 0.005, w)).collect();
    vec![
        (Measure::dirac(0.0), Measure::dirac(1.0), 1.0),
        (Measure::atomic(&mu).expect("valid"), Measure::atomic(&nu).expect("valid"), 2.0),
    ]
}
