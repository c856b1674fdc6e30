mod common;

use proptest::prelude::*;
use weylcluster::catword::*;
use weylcluster::oracle::SkewRing;
use weylcluster::preseed::{reduce_sequence, MutationSeq, Side};

fn w(s: &str) -> MorphWord {
    parse_word(s, 1, 1).unwrap()
}

fn alt() -> impl Strategy<Value = Alternation> {
    prop_oneof![
        Just(Alternation::UNIFORM),
        Just(Alternation::SPLIT),
        Just(Alternation::SPLIT.variant()),
        Just(Alternation::UNIFORM.variant()),
    ]
}

fn steps(rank: usize) -> impl Strategy<Value = MutationSeq> {
    prop::collection::vec(
        (1..=rank, any::<bool>()).prop_map(|(k, r)| (k, if r { Side::R } else { Side::L })),
        0..12,
    )
    .prop_map(MutationSeq::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inversion_is_an_involution(s in prop::array::uniform4(-5i64..=5), e in prop_oneof![Just(1i8), Just(-1i8)]) {
        let x = MorphWord::new(1, s, e, &ObjectExpr::base(1));
        prop_assert_eq!(invert_word(&invert_word(&x)), x.clone());
        prop_assert_eq!(invert_word(&x).dom, x.cod.clone());
    }

    #[test]
    fn right_and_left_undo_each_other(seq in steps(2), a in alt(), k in 1usize..=2) {
        let s = cat_mutate_seq(&SkewLaurentObject::initial(2, a), &seq).unwrap();
        let rl = cat_mutate(&cat_mutate(&s, k, Side::R).unwrap(), k, Side::L).unwrap();
        let lr = cat_mutate(&cat_mutate(&s, k, Side::L).unwrap(), k, Side::R).unwrap();
        prop_assert_eq!(&rl, &s);
        prop_assert_eq!(&lr, &s);
    }

    #[test]
    fn directions_commute(seq in steps(2), a in alt(), x in any::<bool>(), y in any::<bool>()) {
        let s = cat_mutate_seq(&SkewLaurentObject::initial(2, a), &seq).unwrap();
        let (sx, sy) = (if x { Side::R } else { Side::L }, if y { Side::R } else { Side::L });
        let one = cat_mutate(&cat_mutate(&s, 1, sx).unwrap(), 2, sy).unwrap();
        let two = cat_mutate(&cat_mutate(&s, 2, sy).unwrap(), 1, sx).unwrap();
        prop_assert_eq!(one, two);
    }

    #[test]
    fn parity_bookkeeping(seq in steps(3), a in alt()) {
        let s = cat_mutate_seq(&SkewLaurentObject::initial(3, a), &seq).unwrap();
        let counts = seq.net_counts();
        for k in 1..=3 {
            let t = *counts.get(&k).unwrap_or(&0);
            prop_assert_eq!(s.parity[k - 1], t);
            prop_assert_eq!(s.words[k - 1].e, if t.rem_euclid(2) == 0 { 1 } else { -1 });
            prop_assert_eq!(s.base.shift[k - 1], t.rem_euclid(2));
            prop_assert_eq!(s.words[k - 1].base(), &s.base);
        }
        let r = cat_mutate_seq(&SkewLaurentObject::initial(3, a), &reduce_sequence(&seq)).unwrap();
        prop_assert_eq!(r, s);
    }

    #[test]
    fn lifts_compose_to_pure_words(
        seq in steps(2),
        r in any::<bool>(),
    ) {
        let s = cat_mutate_seq(&SkewLaurentObject::initial(2, Alternation::SPLIT), &seq).unwrap();
        let h = hyperbolic_lift(&s, if r { Side::R } else { Side::L });
        prop_assert!(h.is_consistent());
        prop_assert_eq!(&h.obj, &s);
    }

    #[test]
    fn lifts_evaluate_to_coefficients(t in -8i64..=8, r in any::<bool>()) {
        let p = common::weyl1();
        let ring = SkewRing::of(&p);
        let s = cat_mutate_times(&SkewLaurentObject::initial(1, Alternation::UNIFORM), 1, t).unwrap();
        let h = hyperbolic_lift(&s, if r { Side::R } else { Side::L });
        let (g, e) = (eval_word(&h.gamma[0], &p), eval_word(&s.words[0], &p));
        prop_assert!(ring.mul(&g, &e).as_coeff().is_some());
        prop_assert!(ring.mul(&e, &g).as_coeff().is_some());
    }
}

#[test]
fn documented_words() {
    assert!(invert_word(&w("xi^-1*eta")).same_letters(&w("eta^-1*xi")));
    let s = SkewLaurentObject::initial(1, Alternation::UNIFORM);
    let two = cat_mutate_times(&s, 1, 2).unwrap();
    assert!(two.words[0].same_letters(&w("xi*eta*eps^-1")));
    let h = hyperbolic_lift(&two, Side::R);
    assert!(h.gamma[0].same_letters(&w("eps^2*eta^-1*xi^-1")));
    // γ∘η is an ε-word, η∘γ a ξ-word
    assert_eq!(h.composites(), vec![(Some((0, 1)), Some((1, 0)))]);
}

#[test]
fn lifts_with_xi_first_right_or_eps_first_left_are_not_pure() {
    let s = SkewLaurentObject::initial(1, Alternation::SPLIT.variant());
    let h = hyperbolic_lift(&s, Side::R);
    assert!(h.gamma[0].same_letters(&w("xi*eta^-1")));
    assert_eq!(h.composites(), vec![(Some((1, 0)), None)]);
    let s = SkewLaurentObject::initial(1, Alternation::UNIFORM);
    let h = hyperbolic_lift(&s, Side::L);
    assert!(h.gamma[0].same_letters(&w("eta^-1*eps")));
    assert_eq!(h.composites(), vec![(None, Some((0, 1)))]);
    assert!(hyperbolic_lift(&s, Side::R).is_consistent());
}

#[test]
fn closed_form_comparison() {
    let p = common::weyl1();
    let lit = verify_weyl_closed_form(&p, 4, Convention::Literal);
    assert_eq!(lit.status(), "discrepancy");
    let row = |r: &ClosedFormReport, t: i64| r.rows.iter().find(|x| x.parity == t).unwrap().clone();
    assert!(row(&lit, 0).agree);
    assert!(!row(&lit, 1).agree);
    assert_eq!(row(&lit, 1).word, "eps*eta^-1");
    assert_eq!(row(&lit, 1).closed_form, "xi*eta^-1");
    let ev = verify_weyl_closed_form(&p, 4, Convention::WeylEval);
    assert!(row(&ev, 0).agree);
    // ξηε^{-1} evaluates to t, not to ξ t ξ^{-1}
    assert!(!row(&ev, 2).agree);
    assert_eq!(row(&ev, 2).word, "xi*eta*eps^-1 = t");
    assert_eq!(ev.status(), "discrepancy");
}
