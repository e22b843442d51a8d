use super::*;
use crate::interval::IntervalUnion;
use crate::transform::stieltjes;
use crate::Complex64;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn iv(a: (i64, i64), b: (i64, i64)) -> RationalInterval {
    RationalInterval {
        left: q(a.0, a.1),
        right: q(b.0, b.1),
    }
}

fn idx(n: u32, j: u64) -> CantorIndex {
    CantorIndex::new(n, j).unwrap()
}

#[test]
fn index_order() {
    assert_eq!(idx(1, 2).successor().unwrap(), idx(2, 1));
    assert_eq!(idx(2, 1).successor().unwrap(), idx(2, 2));
    assert_eq!(idx(2, 1).predecessor().unwrap(), idx(1, 2));
    assert!(matches!(idx(1, 1).predecessor(), Err(Error::NoPredecessor)));
    assert!(CantorIndex::new(2, 5).is_err());
    assert!(CantorIndex::new(0, 1).is_err());
    assert!(idx(1, 2) < idx(2, 1));
    for r in 0..200 {
        let i = CantorIndex::from_rank(r);
        assert_eq!(i.rank(), r);
        assert_eq!(i.successor().unwrap().rank(), r + 1);
    }
}

#[test]
fn schedule_values() {
    let s = k_schedule(2, idx(2, 1)).unwrap();
    assert_eq!(s.k(idx(1, 1)), Some(2));
    assert_eq!(s.k(idx(1, 2)), Some(6));
    assert_eq!(s.k(idx(2, 1)), Some(18));
    assert_eq!(s.m(idx(2, 1)), Some(16));
    assert_eq!(s.m(idx(1, 2)), Some(5));
    assert_eq!(k_schedule(3, idx(1, 2)).unwrap().k(idx(1, 2)), Some(9));
    assert!(matches!(k_schedule(1, idx(1, 2)), Err(Error::SeedTooSmall(1))));
    assert!(matches!(k_schedule(2, idx(6, 1)), Err(Error::ScheduleOverflow(_))));
}

#[test]
fn level_intervals() {
    assert_eq!(k_intervals(1, 20).unwrap(), vec![iv((0, 1), (1, 3)), iv((2, 3), (1, 1))]);
    assert_eq!(
        k_intervals(2, 20).unwrap(),
        vec![iv((0, 1), (1, 9)), iv((2, 9), (1, 3)), iv((2, 3), (7, 9)), iv((8, 9), (1, 1))]
    );
    let total: Rational = k_intervals(4, 20).unwrap().iter().map(|i| i.len()).sum();
    assert_eq!(total, q(16, 81));
    assert!(matches!(k_intervals(21, 20), Err(Error::DepthCap { .. })));
}

#[test]
fn blocks() {
    assert_eq!(e_unit(1, 20).unwrap(), vec![iv((4, 9), (5, 9))]);
    assert_eq!(e_unit(2, 20).unwrap(), vec![iv((4, 27), (5, 27)), iv((22, 27), (23, 27))]);
    assert_eq!(e_block(idx(1, 1), 1, 20).unwrap(), vec![iv((4, 27), (5, 27))]);
    assert_eq!(e_block(idx(1, 2), 1, 20).unwrap(), vec![iv((22, 27), (23, 27))]);
    let b = e_block(idx(2, 3), 3, 20).unwrap();
    let total: Rational = b.iter().map(|i| i.len()).sum();
    assert_eq!(total, e_block_length(2, 3));
    assert_eq!(e_block_length(2, 3), q(4, 729));
    assert!(e_block(idx(2, 3), 20, 20).is_err());
}

#[test]
fn sampled_and_windowed_blocks_agree_with_enumeration() {
    let i = idx(2, 2);
    let all = e_block(i, 6, 20).unwrap();
    for (k, b) in all.iter().enumerate() {
        assert_eq!(&e_block_interval(i, 6, &BigUint::from(k)).unwrap(), b);
    }
    let (lo, hi) = (q(23, 100), q(29, 100));
    let win = e_block_window(i, 6, &lo, &hi).unwrap();
    let brute: Vec<_> = all.iter().filter(|b| !(b.right < lo || b.left > hi)).cloned().collect();
    assert_eq!(win, brute);
    let meas = e_block_window_measure(i, 6, &lo, &hi).unwrap();
    let expect: Rational = brute
        .iter()
        .map(|b| {
            let a = if b.left < lo { lo.clone() } else { b.left.clone() };
            let c = if b.right > hi { hi.clone() } else { b.right.clone() };
            c - a
        })
        .sum();
    assert_eq!(meas, expect);
    // A block far too deep to enumerate still has an exact total.
    let deep = e_block_window_measure(idx(2, 4), 484, &q(-1, 1), &q(2, 1)).unwrap();
    assert_eq!(deep, e_block_length(2, 484));
}

#[test]
fn cantor_membership() {
    assert!(in_cantor_set(&q(0, 1)));
    assert!(in_cantor_set(&q(1, 1)));
    assert!(in_cantor_set(&q(1, 3)));
    assert!(in_cantor_set(&q(1, 4)));
    assert!(in_cantor_set(&q(3, 4)));
    assert!(in_cantor_set(&q(1, 10)));
    assert!(!in_cantor_set(&q(1, 2)));
    assert!(!in_cantor_set(&q(4, 9)));
    assert!(!in_cantor_set(&q(1, 5)));
    assert!(!in_cantor_set(&q(-1, 3)));
    assert_eq!(cantor_digits(&q(1, 3), 4).unwrap(), vec![0, 2, 2, 2]);
    assert_eq!(cantor_digits(&q(1, 4), 4).unwrap(), vec![0, 2, 0, 2]);
    assert_eq!(cantor_address(&q(1, 4), 2), Some(idx(2, 2)));
    assert_eq!(cantor_address(&q(1, 1), 3), Some(idx(3, 8)));
}

#[test]
fn built_sets() {
    let s = build_set(CantorSpec { levels: 1, seed_k: 2 }, 20).unwrap();
    assert!(s.is_complete());
    assert_eq!(s.blocks().len(), 2);
    assert_eq!(s.blocks()[0].intervals, vec![iv((4, 27), (5, 27))]);
    assert_eq!(s.blocks()[1].intervals.len(), 16);
    let exact = s.rational_union();
    assert_eq!(exact[0], iv((0, 1), (1, 3)));
    let k1 = IntervalUnion::from_pairs([(0.0, 1.0 / 3.0), (2.0 / 3.0, 1.0)]).unwrap();
    assert!(k1.is_subset_of(&s.union(), 0.0));
    assert!(s.max_endpoint_error() < 1e-16);

    assert!(matches!(
        build_set(CantorSpec { levels: 2, seed_k: 2 }, 20),
        Err(Error::DepthCap { .. })
    ));
    let p = build_set_partial(CantorSpec { levels: 2, seed_k: 2 }, 20).unwrap();
    let omitted: Vec<_> = p.omitted().iter().map(|o| (o.n, o.j)).collect();
    assert_eq!(omitted, vec![(2, 2), (2, 3), (2, 4)]);
    // The first block sits in K_1 but not in K_2.
    let blocks = p.blocks_union();
    assert!(blocks.contains(&iv((4, 27), (5, 27))));

    let doc = s.document();
    assert_eq!(doc.rational[0], ["0".to_string(), "1/3".to_string()]);
    let v: serde_json::Value = serde_json::to_value(&doc).unwrap();
    assert_eq!(v["cantor"]["levels"], 1);
    let back = set_from_json(&serde_json::to_string(&doc).unwrap(), 20).unwrap();
    assert_eq!(back, s.union());
    let spec = set_from_json(r#"{"cantor": {"levels": 1, "seed_k": 2}}"#, 20).unwrap();
    assert_eq!(spec, s.union());
    assert!(set_from_json(r#"{"cantor": {"levels": 2, "seed_k": 2}}"#, 20).is_err());
    assert!(set_from_json("{}", 20).is_err());
}

#[test]
fn atoms_and_split() {
    let a = cantor_atoms(1, 20).unwrap();
    let pos: Vec<f64> = a.atoms().iter().map(|x| x.position).collect();
    assert_eq!(pos, vec![1.0 / 6.0, 5.0 / 6.0]);
    assert!(a.atoms().iter().all(|x| x.weight == 0.5));
    for l in 0..=10 {
        assert_eq!(cantor_atoms(l, 20).unwrap().total_mass(), 1.0);
    }
    let (near, far) = split_at(idx(1, 2), 3, 20).unwrap();
    assert_eq!(near.total_mass(), 1.0);
    assert!(far.is_zero());
    let (near, far) = split_at(idx(2, 2), 4, 20).unwrap();
    assert_eq!(near.total_mass(), 0.5);
    assert_eq!(near.total_mass() + far.total_mass(), 1.0);
    let (near, _) = split_at(idx(2, 1), 4, 20).unwrap();
    assert_eq!(near.total_mass(), 0.75);
    assert!(split_at(idx(2, 2), 1, 20).is_err());
    assert!(matches!(split_at(idx(1, 1), 3, 20), Err(Error::NoPredecessor)));
}

#[test]
fn atom_error_bound_holds() {
    // x = 2 is at distance 1 from K_L for every L.
    let f = |l| stieltjes(&cantor_atoms(l, 20).unwrap(), Complex64::new(2.0, 0.0)).unwrap().re;
    let diff = (f(6) - f(10)).abs();
    assert!(diff <= atom_error_bound(1.0, 6, 1.0) + atom_error_bound(1.0, 10, 1.0));
    assert!(diff <= 3f64.powi(-6));
}

#[test]
fn density_at_zero_is_one_tenth() {
    let s = k_schedule(2, idx(2, 4)).unwrap();
    for n in 1..=2 {
        let l = lemma41_ratio(&q(0, 1), n, &s).unwrap();
        assert_eq!(l.own_ratio, q(1, 10));
        assert!(l.set_ratio >= l.own_ratio);
    }
    let l = lemma41_ratio(&q(1, 4), 2, &s).unwrap();
    assert!(l.own_ratio >= q(1, 10), "{l:?}");
    assert!(lemma41_ratio(&q(1, 2), 1, &s).is_err());
}

#[test]
fn combinatorics_report() {
    let r = check_cantor_combinatorics(2, 2, 20).unwrap();
    assert!(r.passed, "{r:#?}");
    assert!(r.cases > 100);
}

#[test]
fn far_part_bound() {
    let r = check_lemma42(2, 2, 4, 20).unwrap();
    assert!(r.report.passed, "{:#?}", r.report);
    assert_eq!(r.feasible, vec![idx(1, 2), idx(2, 1), idx(2, 2)]);
    assert_eq!(r.skipped, vec![idx(2, 3), idx(2, 4)]);
}

#[test]
fn decay_report() {
    let r = check_thm16_decay(2, 2, 50.0, 20).unwrap();
    assert!(r.passed, "{r:#?}");
    let early = check_thm16_decay(2, 2, 5.0, 20).unwrap();
    assert!(early.precondition_violation);
    let late = check_thm16_decay(1, 2, 1e6, 20).unwrap();
    assert!(late.precondition_violation);
}
