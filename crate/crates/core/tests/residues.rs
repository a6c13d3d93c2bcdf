use kres_core::algebra::{parse_factored, parse_poly, ratio, FactoredRational, LinForm, Monomial, Poly, Rational};
use kres_core::localization::{res_gk, res_plus};
use proptest::prelude::*;

fn fr(s: &str, ny: usize) -> FactoredRational {
    parse_factored(s, ny).unwrap()
}

fn poly(s: &str, ny: usize) -> FactoredRational {
    FactoredRational::from_poly(parse_poly(s, ny).unwrap())
}

// reference values computed independently by symbolic partial fractions
#[test]
fn reference_values() {
    let cases = [
        ("X^3/((X + Y1)^2*(2*X - Y2))", 2, "-Y1 + 1/4*Y2"),
        ("(X^2 + Y1*X)/((X - Y1)*(X + Y1)*(3*X + Y1))", 1, "1/3"),
        ("1/((X + Y1)^2*(X - Y1))", 1, "0"),
        ("X^4/((X + Y1)^2*(X + 2*Y2)^2)", 2, "-2*Y1 - 4*Y2"),
        ("(X*Y1 + Y2^2)/((X - Y1)^2*(2*X + Y2 + Y3))", 3, "0"),
    ];
    for (h, ny, expected) in cases {
        let h = fr(h, ny);
        let want = poly(expected, ny);
        assert!(res_plus(&h).unwrap().value_eq(&want), "res_plus {}", h.to_text());
        assert!(res_gk(&h).unwrap().value_eq(&want), "res_gk {}", h.to_text());
    }
}

#[test]
fn unit_form() {
    assert_eq!(res_plus(&fr("1/(X + 2*Y1 - 3*Y2)", 2)).unwrap(), FactoredRational::one(2));
    assert!(res_plus(&fr("1/X^2", 0)).unwrap().is_zero());
    assert!(res_gk(&fr("1/X^2", 0)).unwrap().is_zero());
}

#[test]
fn scaled_pole() {
    // 1/(m X + b) has residue 1/m
    let h = fr("1/(3*X + Y1)", 1);
    assert_eq!(res_plus(&h).unwrap(), FactoredRational::from_poly(Poly::constant(1, ratio(1, 3))));
}

#[test]
fn pole_without_x_is_rejected() {
    let h = fr("X/(Y1*(X + Y1))", 1);
    assert!(res_plus(&h).is_err());
    assert!(res_gk(&h).is_err());
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != ratio(0, 1))
}

fn linform(ny: usize) -> impl Strategy<Value = LinForm> {
    (nonzero_rational(), prop::collection::vec(small_rational(), ny))
        .prop_map(|(x, ys)| LinForm::new(x, ys).unwrap())
}

fn poly_strategy(ny: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=max_deg, ny + 1), small_rational()), 0..6).prop_map(
        move |terms| {
            Poly::from_terms(
                ny,
                terms
                    .into_iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() <= max_deg)
                    .map(|(e, c)| (Monomial::new(e), c)),
            )
        },
    )
}

fn factored(ny: usize) -> impl Strategy<Value = FactoredRational> {
    (
        poly_strategy(ny, 6),
        prop::collection::vec((linform(ny), 1u32..=2), 0..=4),
    )
        .prop_map(|(num, fs)| FactoredRational::new(num, fs).unwrap())
}

fn any_factored() -> impl Strategy<Value = FactoredRational> {
    (0usize..=3).prop_flat_map(factored)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn both_residues_agree(h in any_factored()) {
        let a = res_plus(&h).unwrap();
        let b = res_gk(&h).unwrap();
        prop_assert!(a.value_eq(&b), "{} vs {} for {}", a.to_text(), b.to_text(), h.to_text());
        prop_assert!(b.has_empty_denominator());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn unit_forms_have_residue_one(ys in prop::collection::vec(small_rational(), 0..=4)) {
        let ny = ys.len();
        let l = LinForm::new(ratio(1, 1), ys).unwrap();
        let h = FactoredRational::new(Poly::one(ny), [(l, 1)]).unwrap();
        prop_assert_eq!(res_plus(&h).unwrap(), FactoredRational::one(ny));
    }

    #[test]
    fn residue_is_linear(f in factored(1), g in factored(1), a in small_rational(), b in small_rational()) {
        let lhs = res_plus(&f.scale(&a).checked_add(&g.scale(&b)).unwrap()).unwrap();
        let rhs = res_plus(&f).unwrap().scale(&a).checked_add(&res_plus(&g).unwrap().scale(&b)).unwrap();
        prop_assert!(lhs.value_eq(&rhs));
    }

    #[test]
    fn polynomials_have_no_residue(p in poly_strategy(2, 5)) {
        prop_assert!(res_plus(&FactoredRational::from_poly(p)).unwrap().is_zero());
    }
}
