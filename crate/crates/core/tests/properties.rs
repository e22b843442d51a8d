use std::f64::consts::PI;

use hilbert_lab::cantor::{e_block, e_block_length, k_intervals, k_schedule, CantorIndex, Rational};
use hilbert_lab::verify::{check_boole, check_prop32};
use hilbert_lab::{
    boundary_value, distribution, en_subset, gamma, hilbert, homogeneity_delta, stieltjes, stieltjes_deriv,
    window_measure, CheckReport, Complex64, DensityPiece, IntervalUnion, Measure, Sign, Transform,
};
use num::{BigInt, One, Zero};
use proptest::prelude::*;

fn atom_list(max: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-10.0..10.0f64, 0.01..1.0f64), 1..=max)
}

fn atomic(max: usize) -> impl Strategy<Value = Measure> {
    atom_list(max).prop_map(|a| Measure::atomic(&a).unwrap())
}

fn mixed() -> impl Strategy<Value = Measure> {
    (
        prop::collection::vec((-10.0..10.0f64, 0.01..1.0f64), 0..5),
        prop::collection::vec((-5.0..5.0f64, 0.1..3.0f64, 0.1..2.0f64), 1..3),
    )
        .prop_map(|(atoms, pieces)| {
            let atoms = Measure::atomic(&atoms).unwrap();
            let density = pieces
                .into_iter()
                .map(|(a, len, h)| DensityPiece { left: a, right: a + len, height: h })
                .collect();
            atoms.sum(&Measure::new(vec![], density).unwrap())
        })
}

fn union() -> impl Strategy<Value = IntervalUnion> {
    prop::collection::vec((-10.0..10.0f64, 0.05..3.0f64), 1..5)
        .prop_map(|v| IntervalUnion::from_pairs(v.into_iter().map(|(a, l)| (a, a + l))).unwrap())
}

fn dist_to_support(mu: &Measure, x: f64) -> f64 {
    let a = mu.atoms().iter().map(|a| (a.position - x).abs());
    let p = mu.density().iter().map(|p| {
        if p.left <= x && x <= p.right {
            0.0
        } else {
            (p.left - x).abs().min((p.right - x).abs())
        }
    });
    a.chain(p).fold(f64::INFINITY, f64::min)
}

fn abs_integral(mu: &Measure, x: f64) -> f64 {
    // Crude upper bound on ∫ dμ/|y − x| off the support.
    mu.total_mass() / dist_to_support(mu, x)
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn is_power_of_three(d: &BigInt) -> bool {
    let three = BigInt::from(3);
    let mut d = d.clone();
    while d > BigInt::one() {
        if !(&d % &three).is_zero() {
            return false;
        }
        d /= &three;
    }
    d.is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn restriction_is_additive(mu in mixed(), s in union()) {
        let inside = mu.restrict(&s).total_mass();
        let outside = mu.restrict(&s.complement()).total_mass();
        prop_assert!(close(inside + outside, mu.total_mass(), 1e-12), "{inside} + {outside} vs {}", mu.total_mass());
    }

    #[test]
    fn decomposition_resums(mu in mixed()) {
        let (ac, sing) = mu.decompose();
        prop_assert!(ac.atoms().is_empty());
        prop_assert!(sing.is_atomic());
        prop_assert_eq!(ac.sum(&sing), mu);
    }

    #[test]
    fn json_is_idempotent(mu in mixed()) {
        let text = mu.to_json();
        let back = Measure::from_json(&text).unwrap();
        prop_assert_eq!(&back, &mu);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn scaling_and_translation(mu in mixed(), c in 0.1..10.0f64, s in -5.0..5.0f64, x in -15.0..15.0f64, y in -6.0..2.0f64) {
        let z = Complex64::new(x, 10f64.powf(y));
        let f = stieltjes(&mu, z).unwrap();
        let g = stieltjes(&mu.scaled(c).unwrap(), z).unwrap();
        prop_assert!((g - f * c).norm() <= 1e-12 * (g.norm() + c * f.norm()));

        prop_assume!(dist_to_support(&mu, x) > 1e-3);
        let h = hilbert(&mu, x).unwrap();
        let moved = hilbert(&mu.translated(s).unwrap(), x + s).unwrap();
        // Relative to ∫ dμ/|y − x|, the size of the terms being summed.
        let scale = abs_integral(&mu, x) / PI;
        prop_assert!((moved - h).abs() <= 1e-12 * scale.max(h.abs()), "{h} vs {moved}");
    }

    #[test]
    fn boundary_limit_rate(mu in mixed(), x in -15.0..15.0f64, eps in 1e-8..1e-2f64) {
        let d = dist_to_support(&mu, x);
        prop_assume!(d > 0.05);
        let b = boundary_value(&mu, x);
        let up = stieltjes(&mu, Complex64::new(x, eps)).unwrap();
        let gap = (up - Complex64::new(b.re, b.im)).norm();
        let m = mu.total_mass();
        prop_assert!(gap <= m * eps / (d * d) + 1e-12 * m / d, "gap {gap} at eps {eps}, d {d}");
    }

    #[test]
    fn derivative_matches_differences(mu in mixed(), x in -15.0..15.0f64) {
        let d = dist_to_support(&mu, x);
        prop_assume!(d > 0.05);
        let h = 1e-6 * d.min(1.0).max(1e-3) * x.abs().max(1.0);
        let re = |x: f64| boundary_value(&mu, x).re;
        let fd = (re(x + h) - re(x - h)) / (2.0 * h);
        let exact = stieltjes_deriv(&mu, x).unwrap();
        prop_assert!(exact > 0.0);
        prop_assert!(close(fd, exact, 1e-5), "{fd} vs {exact}");
    }

    #[test]
    fn boole_equality(mu in atomic(16), t in 0.01..100.0f64) {
        let m = mu.total_mass();
        for sign in [Sign::Pos, Sign::Neg] {
            let len = gamma(&mu, t, sign).unwrap().length();
            prop_assert!(close(len, m / t, 1e-9), "{sign:?}: {len} vs {}", m / t);
        }
    }

    #[test]
    fn level_sets_nest(mu in atomic(12), s in 0.01..50.0f64, r in 1.0..20.0f64) {
        let lo = gamma(&mu, s, Sign::Abs).unwrap();
        let hi = gamma(&mu, s * r, Sign::Abs).unwrap();
        let tol = 1e-9 * (1.0 + mu.hull().map_or(0.0, |(a, b)| a.abs().max(b.abs())));
        prop_assert!(hi.union().is_subset_of(lo.union(), tol));
    }

    #[test]
    fn distribution_is_subadditive(mu in atomic(8), nu in atomic(8), t in 0.05..50.0f64, k in 1..4usize) {
        let theta = k as f64 / 4.0;
        let both = distribution(&mu.sum(&nu), t, None, Transform::F).unwrap();
        let a = distribution(&mu, theta * t, None, Transform::F).unwrap();
        let b = distribution(&nu, (1.0 - theta) * t, None, Transform::F).unwrap();
        prop_assert!(both <= (a + b) * (1.0 + 1e-9), "{both} > {a} + {b}");
    }

    #[test]
    fn loomis_bound(mu in mixed(), pure in atomic(16), t in 0.05..200.0f64) {
        let m = mu.total_mass();
        let tl = t * distribution(&mu, t, None, Transform::H).unwrap();
        prop_assert!(tl <= m * (1.0 + 1e-9), "{tl} > {m}");
        let m = pure.total_mass();
        let tl = t * distribution(&pure, t, None, Transform::H).unwrap();
        prop_assert!(close(tl, 2.0 * m / PI, 1e-9), "{tl} vs {}", 2.0 * m / PI);
    }

    #[test]
    fn level_sets_shrink_into_the_set(e in union(), n in 1..8u32) {
        let small = en_subset(&e, n).unwrap();
        let big = en_subset(&e, n + 1).unwrap();
        let tol = 1e-9 * (1.0 + e.diam());
        prop_assert!(small.is_subset_of(&big, tol), "{small:?} ⊄ {big:?}");
        prop_assert!(big.is_subset_of(&e, tol));
    }

    #[test]
    fn homogeneity_at_most_half(e in union()) {
        let r = homogeneity_delta(&e).unwrap();
        prop_assert!(r.delta > 0.0 && r.delta <= 0.5 + 1e-12, "{}", r.delta);
    }

    #[test]
    fn window_measure_is_lipschitz(e in union(), x in -12.0..14.0f64, a in 0.0..5.0f64, dx in -1.0..1.0f64, da in -1.0..1.0f64) {
        let b = (a + da).max(0.0);
        let gap = (window_measure(&e, x, a) - window_measure(&e, x + dx, b)).abs();
        prop_assert!(gap <= 2.0 * dx.abs() + 2.0 * (a - b).abs() + 1e-12);
    }

    #[test]
    fn schedule_scales_increase(seed in 2u64..1000, last in 0u64..25) {
        let s = k_schedule(seed, CantorIndex::from_rank(last)).unwrap();
        let m: Vec<u64> = s.entries().map(|(i, _)| s.m(i).unwrap()).collect();
        prop_assert!(m.windows(2).all(|w| w[0] < w[1]), "{m:?}");
    }

    #[test]
    fn report_round_trip(mu in atomic(10), t in 0.1..50.0f64) {
        let a = check_boole(&mu, t).unwrap();
        prop_assert_eq!(&a, &check_boole(&mu, t).unwrap());
        prop_assert_eq!(&CheckReport::from_json(&a.to_json()).unwrap(), &a);
        let b = check_prop32(&mu, t).unwrap();
        prop_assert_eq!(b.to_json(), check_prop32(&mu, t).unwrap().to_json());
        prop_assert_eq!(&CheckReport::from_json(&b.to_json()).unwrap(), &b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn herglotz(mu in mixed(), x in -15.0..15.0f64, y in -6.0..3.0f64) {
        let f = stieltjes(&mu, Complex64::new(x, 10f64.powf(y))).unwrap();
        prop_assert!(f.im > 0.0, "Im F = {} at {x} + i·1e{y}", f.im);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn exact_delta_below_grid_minimum(e in union()) {
        let r = homogeneity_delta(&e).unwrap();
        let diam = e.diam();
        let step = diam / 200.0;
        let mut grid = f64::INFINITY;
        for i in e.intervals() {
            let cells = ((i.hi - i.lo) / step).ceil() as usize;
            for p in 0..=cells {
                let x = (i.lo + p as f64 * step).min(i.hi);
                for q in 1..200 {
                    let a = q as f64 * step;
                    grid = grid.min(window_measure(&e, x, a) / (2.0 * a));
                }
            }
        }
        prop_assert!(r.delta <= grid + 2.0 * step, "{} vs grid {grid}", r.delta);
        let at = window_measure(&e, r.witness_x, r.witness_a) / (2.0 * r.witness_a);
        prop_assert!((at - r.delta).abs() <= 1e-9, "witness ratio {at} vs {}", r.delta);
    }

    #[test]
    fn triadic_endpoints(n in 1u32..9, m in 1u64..7, pick in any::<u64>()) {
        let ks = k_intervals(n, 20).unwrap();
        prop_assert_eq!(ks.len(), 1usize << n);
        let third = Rational::new(BigInt::one(), BigInt::from(3).pow(n));
        for k in &ks {
            prop_assert!(is_power_of_three(k.left.denom()) && is_power_of_three(k.right.denom()));
            prop_assert_eq!(k.len(), third.clone());
        }
        let i = CantorIndex::new(n, 1 + pick % (1u64 << n)).unwrap();
        let block = e_block(i, m, 20).unwrap();
        prop_assert_eq!(block.len(), 1usize << (m - 1));
        let mut total = Rational::zero();
        for b in &block {
            prop_assert!(is_power_of_three(b.left.denom()) && is_power_of_three(b.right.denom()));
            prop_assert!(k_intervals(n, 20).unwrap()[(i.j() - 1) as usize].contains(&b.left));
            total += b.len();
        }
        prop_assert_eq!(total, e_block_length(n, m));
    }

    #[test]
    fn tripled_scale_inequality(seed in 2u64..6, last in 0u64..6) {
        let s = k_schedule(seed, CantorIndex::from_rank(last + 1)).unwrap();
        for (i, k) in s.entries() {
            let Ok(next) = i.successor() else { continue };
            let Some(k_next) = s.k(next) else { continue };
            if next.n() != i.n() {
                continue;
            }
            prop_assert_eq!(k_next, 3 * k);
            let half_n = Rational::new(BigInt::one(), BigInt::from(2).pow(i.n()));
            let lhs = Rational::from_integer(BigInt::from(3).pow(k as u32))
                * &half_n
                * Rational::new(BigInt::from(2), BigInt::from(3)).pow(k_next as i32);
            prop_assert!(lhs <= half_n);
        }
    }

    #[test]
    fn sweep_over_density_points_keeps_mass(e in union(), n in 2u32..6, picks in prop::collection::vec((0.0..1.0f64, 0.01..1.0f64), 1..4)) {
        let en = en_subset(&e, n).unwrap();
        prop_assume!(!en.is_empty());
        let parts = en.intervals();
        let atoms: Vec<(f64, f64)> = picks
            .iter()
            .enumerate()
            .map(|(k, &(u, w))| {
                let i = &parts[k % parts.len()];
                (i.lo + u * (i.hi - i.lo), w)
            })
            .collect();
        let mut xs: Vec<f64> = atoms.iter().map(|a| a.0).collect();
        xs.sort_by(f64::total_cmp);
        let sep = xs.windows(2).map(|w| w[1] - w[0]).fold(1.0, f64::min);
        prop_assume!(sep > 1e-3);
        let mu = Measure::atomic(&atoms).unwrap();
        let m = mu.total_mass();
        // Each atom keeps a window of radius w/(πt) · (1 − 1%) inside E at
        // density at least 1/n, so t·λ_E(t) stays above 2‖μ‖/(πn).
        let floor = 0.98 * 2.0 * m / (PI * n as f64);
        let start = 2.0 * (n as f64 * m).max(200.0 * m / (PI * sep));
        for k in 0..7 {
            let t = start * 10f64.powf(k as f64 / 2.0);
            let tl = t * distribution(&mu, t, Some(&e), Transform::H).unwrap();
            prop_assert!(tl >= floor, "t = {t}: {tl} < {floor}");
            prop_assert!(tl <= m * (1.0 + 1e-9));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn exact_level_set_matches_scan(mu in atomic(10), s in 0.5..10.0f64) {
        let g = gamma(&mu, s, Sign::Abs).unwrap();
        let (lo, hi) = mu.hull().unwrap();
        let reach = mu.total_mass() / s + 1.0;
        let (lo, hi) = (lo - reach, hi + reach);
        let cells = 1_000_000;
        let step = (hi - lo) / cells as f64;
        let mut miss = 0usize;
        for c in 0..cells {
            let x = lo + (c as f64 + 0.5) * step;
            let v = boundary_value(&mu, x).re;
            let scan = v.is_nan() || v.abs() > s;
            if scan != g.union().contains(x) {
                miss += 1;
            }
        }
        prop_assert!((miss as f64) * step < 10.0 * step, "{miss} mismatched cells");
    }
}
