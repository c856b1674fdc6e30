use proptest::prelude::*;
use weylcluster::ground::{apply_aut, parse_coeff, AutKind, CoeffAut, CoeffFraction, Gens};

fn gens() -> Gens {
    Gens::from_names(["a", "b"])
}

/// Small rational functions built from random integer polynomials.
fn frac() -> impl Strategy<Value = CoeffFraction> {
    let poly = prop::collection::vec((-3i64..=3, 0i64..=2, -1i64..=2), 1..4).prop_map(|ts| {
        ts.iter()
            .map(|(c, i, j)| format!("({c})*a^{i}*b^{j}"))
            .collect::<Vec<_>>()
            .join(" + ")
    });
    (poly.clone(), poly).prop_filter_map("nonzero denominator", |(n, d)| {
        let g = gens();
        let d = parse_coeff(&d, &g).ok()?;
        if d.is_zero() {
            return None;
        }
        parse_coeff(&n, &g).ok()?.div(&d).ok()
    })
}

fn auts() -> Vec<CoeffAut> {
    vec![
        CoeffAut::new(AutKind::shift(0, 1)),
        CoeffAut::new(AutKind::Shift { gen: 1, offset: (-1, 2) }),
        CoeffAut::new(AutKind::Scale { targets: vec![0], unit: 1 }),
        CoeffAut::new(AutKind::Composite(vec![
            AutKind::shift(0, 2),
            AutKind::Scale { targets: vec![0], unit: 1 },
        ])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(x in frac(), y in frac(), z in frac()) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.sub(&x).is_zero());
        if !x.is_zero() {
            prop_assert!(x.mul(&x.invert().unwrap()).is_one());
        }
    }

    #[test]
    fn automorphisms_are_ring_maps(x in frac(), y in frac(), k in 0usize..4, p in -3i64..=3) {
        let th = &auts()[k];
        prop_assert_eq!(apply_aut(th, p, &x.add(&y)), apply_aut(th, p, &x).add(&apply_aut(th, p, &y)));
        prop_assert_eq!(apply_aut(th, p, &x.mul(&y)), apply_aut(th, p, &x).mul(&apply_aut(th, p, &y)));
        prop_assert_eq!(apply_aut(th, -p, &apply_aut(th, p, &x)), x.clone());
        prop_assert_eq!(apply_aut(th, 1, &apply_aut(th, p, &x)), apply_aut(th, p + 1, &x));
    }

    #[test]
    fn render_parse_round_trip(x in frac()) {
        let g = gens();
        let back = parse_coeff(&x.render(&g), &g).unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn fixed_values() {
    let g = Gens::from_names(["e"]);
    let f = |s: &str| parse_coeff(s, &g).unwrap();
    assert_eq!(f("1/e + 1/(e+1)").render(&g), "(2*e + 1)/(e^2 + e)");
    assert_eq!(f("e^-1").render(&g), "(1)/(e)");
    let th = CoeffAut::new(AutKind::shift(0, 1));
    assert_eq!(apply_aut(&th, 3, &f("e^2")), f("e^2 + 6*e + 9"));
    assert_eq!(apply_aut(&th, -1, &f("1/e")), f("1/(e - 1)"));
}
