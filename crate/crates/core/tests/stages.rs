use std::collections::BTreeMap;

use kres_core::algebra::{parse_poly, parse_rational, Monomial, Poly, Rational};
use kres_core::localization::EquivClass;
use kres_core::morse::residue_criterion;
use kres_core::stages::{
    kernel_via_stages, ker_res_test, ker_res_test_with, stage_consistency_check, StageChain, StagePoint, StageSpace,
    StageVerdict,
};
use kres_core::toric::{cpn_space, ToricModel};
use proptest::prelude::*;

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn pt(label: &str, moment: &str, d: u32, c: &str, rs: &[(&str, &str)]) -> StagePoint {
    StagePoint {
        label: label.into(),
        moment: q(moment),
        euler_exponent: d,
        euler_coeff: q(c),
        restrictions: rs.iter().map(|(n, p)| (n.to_string(), parse_poly(p, 1).unwrap())).collect(),
    }
}

const NAMES: [&str; 5] = ["one", "h1", "h2", "h1h2", "kill1"];

fn row(values: [&str; 5]) -> Vec<(&'static str, &str)> {
    NAMES.iter().copied().zip(values).collect()
}

/// CP¹×CP¹ reduced in two stages along the circle (1, 2).
fn chain() -> StageChain {
    let s1 = StageSpace::new(
        1,
        vec![
            pt("p0.p0", "-3/2", 2, "2", &row(["1", "0", "0", "0", "2*X + Y1"])),
            pt("p1.p0", "-1/2", 2, "-2", &row(["1", "X", "0", "0", "2*X + Y1"])),
            pt("p0.p1", "1/2", 2, "-2", &row(["1", "0", "2*X + Y1", "0", "0"])),
            pt("p1.p1", "3/2", 2, "2", &row(["1", "X", "2*X + Y1", "2*X^2 + X*Y1", "0"])),
        ],
        BTreeMap::new(),
    )
    .unwrap();
    let transfer = NAMES.iter().map(|n| (n.to_string(), n.to_string())).collect();
    let s2 = StageSpace::new(
        2,
        vec![
            pt("L", "1/4", 1, "-1/2", &row(["1", "0", "0", "0", "0"])),
            pt("R", "-1/4", 1, "1/2", &row(["1", "-1/2*X", "0", "0", "0"])),
        ],
        transfer,
    )
    .unwrap();
    StageChain::new(vec![s1, s2]).unwrap()
}

#[test]
fn staged_verdicts() {
    let c = chain();
    assert_eq!(kernel_via_stages(&c, "kill1").unwrap().detected_at(), Some(1));
    assert_eq!(kernel_via_stages(&c, "h1").unwrap().detected_at(), Some(2));
    match kernel_via_stages(&c, "one").unwrap() {
        StageVerdict::NotDetected { witnesses } => {
            assert_eq!(witnesses.len(), 2);
            assert!(witnesses.iter().all(|w| w.coefficient != Rational::from_integer(0.into())));
        }
        v => panic!("{:?}", v),
    }
}

#[test]
fn shipped_chain_is_consistent() {
    let c = chain();
    for n in NAMES {
        assert!(stage_consistency_check(&c, n).unwrap().passed(), "{}", n);
    }
}

#[test]
fn perturbed_restriction_fails_at_its_stage() {
    let c = chain();
    let mut s2 = c.stages()[1].clone();
    let mut points = s2.points().to_vec();
    points[0].restrictions.insert("one".into(), parse_poly("2", 0).unwrap());
    s2 = StageSpace::new(2, points, s2.transfer().clone()).unwrap();
    let bad = c.with_stage(1, s2);
    let r = stage_consistency_check(&bad, "one").unwrap();
    assert!(!r.passed());
    assert!(r.issues.iter().all(|i| matches!(
        i,
        kres_core::stages::ConsistencyIssue::NotPolynomial { stage: 2, .. }
            | kres_core::stages::ConsistencyIssue::PairingMismatch { stage: 2, .. }
    )));

    let mut points = c.stages()[0].points().to_vec();
    points[3].restrictions.insert("h1".into(), parse_poly("2*X", 1).unwrap());
    let s1 = StageSpace::new(1, points, BTreeMap::new()).unwrap();
    let bad = c.with_stage(0, s1);
    let r = stage_consistency_check(&bad, "one").unwrap();
    assert!(r.issues.iter().any(|i| matches!(i, kres_core::stages::ConsistencyIssue::NotPolynomial { stage: 1, .. })));
}

#[test]
fn extra_powers_do_not_change_verdicts() {
    let c = chain();
    for s in c.stages() {
        for n in NAMES {
            let base = ker_res_test(s, n).unwrap().passed();
            for k in 1..=3 {
                assert_eq!(ker_res_test_with(s, n, k).unwrap().passed(), base);
            }
        }
    }
}

#[test]
fn single_stage_matches_residue_criterion_on_cp1() {
    let m = ToricModel::build(cpn_space(1).unwrap(), 4, None).unwrap();
    let mut classes: Vec<EquivClass> = m.basis.classes().cloned().collect();
    for k in 1..=2 {
        let xk = Poly::monomial(0, Monomial::new(vec![k]), Rational::from_integer(1.into()));
        classes.push(EquivClass::constant(&m.space, format!("X^{}", k), &xk));
    }
    let stage = StageSpace::from_space(&m.space, &classes).unwrap();
    let chain = StageChain::new(vec![stage.clone()]).unwrap();
    let d = stage.max_euler_exponent();
    let zetas: Vec<EquivClass> = classes
        .iter()
        .flat_map(|z| {
            (0..=d).map(move |t| {
                let xt = Poly::monomial(0, Monomial::new(vec![t]), Rational::from_integer(1.into()));
                z.mul_poly(&xt)
            })
        })
        .collect();
    for eta in &classes {
        let staged = ker_res_test(&stage, eta.name()).unwrap().passed();
        let direct = residue_criterion(&m.space, eta, &zetas).unwrap().passed();
        assert_eq!(staged, direct, "{}", eta.name());
        assert_eq!(kernel_via_stages(&chain, eta.name()).unwrap().detected_at().is_some(), staged);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdicts_survive_euler_rescaling(stage in 0usize..2, n in 1i64..7, d in 1i64..7, neg in any::<bool>()) {
        let c = chain();
        let s = &c.stages()[stage];
        let factor = Rational::new((if neg { -n } else { n }).into(), d.into());
        let scaled = c.with_stage(stage, s.rescaled(&factor));
        for name in NAMES {
            prop_assert_eq!(
                kernel_via_stages(&c, name).unwrap().detected_at(),
                kernel_via_stages(&scaled, name).unwrap().detected_at()
            );
        }
    }
}
