use std::f64::consts::PI;

use super::*;
use crate::interval::IntervalUnion;
use crate::measure::Measure;
use crate::poly::Polynomial;

fn ok(r: &CheckReport) {
    assert!(r.passed, "{r:#?}");
}

#[test]
fn boole_and_loomis_on_a_point_mass() {
    let d = Measure::dirac(0.0);
    for t in [0.1, 1.0, 10.0] {
        ok(&check_boole(&d, t).unwrap());
    }
    let r = check_loomis(&d, &[0.5, 1.0, 2.0]).unwrap();
    ok(&r);
    assert!((r.margin - (1.0 - 2.0 / PI)).abs() < 1e-12);
    let u = Measure::uniform(0.0, 1.0, 1.0).unwrap();
    assert!(matches!(check_boole(&u, 1.0), Err(crate::Error::NotAtomic)));
    ok(&check_loomis(&u, &[1.0, 10.0, 30.0]).unwrap());
}

#[test]
fn singular_limit_and_weak_convergence() {
    let m = Measure::dirac(0.0).sum(&Measure::uniform(0.0, 1.0, 1.0).unwrap());
    ok(&check_limit_18(&m, &[10.0, 30.0, 100.0]).unwrap());
    let d = Measure::dirac(0.0);
    let r = check_poltoratski(&d, &Polynomial::new(&[0.0, 0.0, 1.0]), &[10.0, 100.0, 1000.0]).unwrap();
    ok(&r);
    // moment error 1/(3π²t²) at t = 1000 against 1% of ‖μ‖.
    let expect = 1.0 - (1.0 / (3.0 * PI * PI * 1e6)) / 0.01;
    assert!((r.margin - expect).abs() < 1e-9, "{}", r.margin);
    assert!(check_poltoratski(&d, &Polynomial::new(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]), &[1.0]).is_err());
}

#[test]
fn separated_and_shared_atoms() {
    let r = check_prop52(&Measure::dirac(0.0), &Measure::dirac(1.0), 1.0, &[0.1, 0.5, 1.0, 10.0]).unwrap();
    ok(&r);
    let same = check_prop52(&Measure::dirac(0.0), &Measure::dirac(0.0), 1.0, &[1.0]).unwrap();
    assert!(same.precondition_violation && !same.passed);
}

#[test]
fn component_value_for_a_point_mass() {
    let d = Measure::dirac(0.0);
    for t in [1.0, 10.0] {
        let r = check_prop32(&d, t).unwrap();
        ok(&r);
        assert!((r.margin + 1.0 - 8.0 * PI * PI / 2f64.sqrt()).abs() < 1e-12 * 8.0 * PI * PI);
    }
    assert!(matches!(check_prop32(&Measure::zero(), 1.0), Err(crate::Error::EmptySet)));
}

#[test]
fn touching_intervals() {
    let d = Measure::dirac(0.0);
    let r = check_prop34(&d, 100.0, 1.0).unwrap();
    ok(&r);
    assert!(check_prop34(&d, 100.0, 1.5).unwrap().precondition_violation);
    let m = Measure::atomic(&[(-3.0, 0.4), (0.0, 1.0), (0.5, 0.2), (4.0, 0.7)]).unwrap();
    for delta in [0.1, 0.5] {
        ok(&check_prop34(&m, 10.0, delta).unwrap());
    }
}

#[test]
fn mobius_image() {
    let d = Measure::dirac(0.0);
    let r = check_lemma33(&d, 1.0).unwrap();
    ok(&r);
    let m = Measure::atomic(&[(-3.0, 0.4), (0.0, 1.0), (0.5, 0.2), (4.0, 0.7), (4.1, 0.05)]).unwrap();
    for t0 in [1.0, 10.0] {
        ok(&check_lemma33(&m, t0).unwrap());
    }
}

#[test]
fn homogeneous_set_bounds() {
    let e = fixtures::two_intervals();
    let m = Measure::atomic(&[(0.5, 0.5), (2.5, 0.5)]).unwrap();
    let t = regime_threshold(&m, &e);
    ok(&check_key_ineq(&m, &e, 10.0 * t).unwrap());
    assert!(check_key_ineq(&m, &e, t).unwrap().precondition_violation);
    let unit = IntervalUnion::single(0.0, 1.0).unwrap();
    let d = Measure::dirac(0.5);
    ok(&check_key_ineq(&d, &unit, 1e4).unwrap());
    assert!(check_key_ineq(&Measure::dirac(1.5), &e, 100.0).is_err());
    ok(&check_thm14(&m, &e, &regime_grid(&m, &e, 64)).unwrap());
    let r = check_thm14(&d, &unit, &regime_grid(&d, &unit, 64)).unwrap();
    ok(&r);
    assert!(r.margin > 1000.0);
}

#[test]
fn report_round_trip_and_combination() {
    let r = check_boole(&Measure::dirac(1.0), 2.0).unwrap();
    let back = CheckReport::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);
    let pre = check_prop34(&Measure::dirac(0.0), 1.0, 2.0).unwrap();
    let back = CheckReport::from_json(&pre.to_json()).unwrap();
    assert!(back.margin.is_nan() && back.precondition_violation);
    let c = CheckReport::combine("x", vec![r.clone(), pre.clone()]);
    assert!(c.passed && !c.precondition_violation);
    assert_eq!(c.cases, r.cases);
    assert!(CheckReport::combine("x", vec![pre]).precondition_violation);
    assert!(!Tally::new("empty", 0.0, serde_json::Value::Null).finish().passed);
}

#[test]
fn bundled_families_pass() {
    let cfg = SuiteConfig::default();
    for sel in Selector::EACH {
        for r in run_suite(sel, &cfg).unwrap() {
            assert!(r.passed, "{sel}: {} margin {} notes {:#?}", r.check_id, r.margin, r.notes);
        }
    }
    assert!("nope".parse::<Selector>().is_err());
    assert_eq!("thm14".parse::<Selector>().unwrap(), Selector::Thm14);
}
