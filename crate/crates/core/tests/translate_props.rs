mod common;

use common::{box_free, formula, igl_proves, ipc_proves};
use proptest::prelude::*;
use provability::engine::{BaseLogic, Verdict};
use provability::formula::{is_boolean_tautology, is_nnil, is_tnnil, Formula};
use provability::translate::{box_down, box_full, box_up, dagger, neg_translate, nnil_star, tnnil_plus, NegKind};

proptest! {
    #[test]
    fn box_full_factors_through_down_then_up(a in formula(3, 7)) {
        prop_assert_eq!(box_up(&box_down(&a)), box_full(&a));
    }

    #[test]
    fn box_negation_up_is_classically_equivalent(a in formula(2, 6)) {
        let up = neg_translate(&a, NegKind::Up);
        prop_assert!(is_boolean_tautology(&Formula::iff(a, up)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn box_full_is_down_of_up_in_igl(a in formula(2, 4)) {
        prop_assert!(igl_proves(&Formula::iff(box_full(&a), box_down(&box_up(&a)))));
    }

    #[test]
    fn box_translations_are_boxdot_stable(a in formula(2, 4)) {
        let full = box_full(&a);
        prop_assert!(igl_proves(&Formula::iff(full.clone(), Formula::boxdot(full))));
        let up = box_up(&a);
        prop_assert!(igl_proves(&Formula::iff(up.clone(), Formula::boxdot(up))));
    }

    #[test]
    fn nnil_star_approximates_from_below(a in box_free(2, 5)) {
        let star = nnil_star(&a).unwrap();
        prop_assert!(is_nnil(&star), "{} gave {}", a, star);
        prop_assert!(ipc_proves(&Formula::imp(star, a)));
    }

    #[test]
    fn nnil_star_approximates_modal_formulas(a in formula(2, 4)) {
        let star = nnil_star(&a).unwrap();
        prop_assert!(is_nnil(&star), "{} gave {}", a, star);
        prop_assert!(ipc_proves(&Formula::imp(star, a)));
    }

    #[test]
    fn nnil_star_is_monotone(a in box_free(2, 4), b in box_free(2, 4)) {
        prop_assume!(ipc_proves(&Formula::imp(a.clone(), b.clone())));
        let (sa, sb) = (nnil_star(&a).unwrap(), nnil_star(&b).unwrap());
        prop_assert!(ipc_proves(&Formula::imp(sa, sb)));
    }

    #[test]
    fn tnnil_plus_respects_modus_ponens(a in formula(2, 3), b in formula(2, 3)) {
        let pa = tnnil_plus(&a).unwrap();
        let pab = tnnil_plus(&Formula::imp(a, b.clone())).unwrap();
        let pb = tnnil_plus(&b).unwrap();
        prop_assert!(is_tnnil(&pb));
        prop_assert!(ipc_proves(&Formula::imp(Formula::and(pa, pab), pb)));
    }

    #[test]
    fn dagger_is_equivalent_in_gl(a in formula(2, 4)) {
        let d = dagger(&a).unwrap();
        prop_assert_eq!(common::base_verdict(BaseLogic::ClassicalGL, &Formula::iff(a, d)), Verdict::Provable);
    }
}
