mod common;

use common::{base_verdict, formula};
use proptest::prelude::*;
use provability::engine::{decide_base, oracle_refute, BaseLogic, EngineConfig, Semantics, Verdict};
use provability::formula::Formula;
use provability::kripke::TruthRelation;

const BASES: [BaseLogic; 4] =
    [BaseLogic::ClassicalK4, BaseLogic::ClassicalGL, BaseLogic::IntuitionisticK4, BaseLogic::IntuitionisticGL];

fn base() -> impl Strategy<Value = BaseLogic> {
    proptest::sample::select(&BASES[..])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn refutations_pass_audit(b in base(), a in formula(2, 5)) {
        let result = decide_base(&EngineConfig::new(b), &a).unwrap();
        if let Some(cm) = result.countermodel() {
            prop_assert!(cm.audit().is_ok(), "{:?} on {}: {:?}", b, a, cm.audit());
        }
    }

    #[test]
    fn restricted_semantics_refutations_pass_audit(a in formula(2, 4)) {
        let semantics = [
            Semantics::CLASSICAL,
            Semantics::CLASSICAL.with_atom_complete(),
            Semantics { complete: true, ..Semantics::INTUITIONISTIC },
        ];
        for s in semantics {
            let base = if s == Semantics::CLASSICAL || s.atom_complete { BaseLogic::ClassicalGL } else { BaseLogic::IntuitionisticGL };
            let result = decide_base(&EngineConfig::new(base).with_semantics(s), &a).unwrap();
            if let Some(cm) = result.countermodel() {
                prop_assert!(cm.audit().is_ok(), "{:?} on {}: {:?}", s, a, cm.audit());
            }
        }
    }

    #[test]
    fn premises_obey_the_deduction_theorem(b in base(), gamma in formula(2, 3), extra in formula(2, 3), a in formula(2, 3)) {
        let with_extra = EngineConfig::new(b).with_premises([gamma.clone(), extra.clone()]);
        let folded = EngineConfig::new(b).with_premises([gamma]);
        let left = decide_base(&with_extra, &a).unwrap().verdict;
        let right = decide_base(&folded, &Formula::imp(extra, a)).unwrap().verdict;
        prop_assert_eq!(left, right);
    }

    #[test]
    fn gl_admits_necessitation(a in formula(2, 5)) {
        if base_verdict(BaseLogic::ClassicalGL, &a) == Verdict::Provable {
            prop_assert_eq!(base_verdict(BaseLogic::ClassicalGL, &Formula::boxed(a)), Verdict::Provable);
        }
    }

    #[test]
    fn refutation_oracle_never_contradicts_a_proof(b in base(), a in formula(1, 4)) {
        let cfg = EngineConfig::new(b);
        if decide_base(&cfg, &a).unwrap().is_provable() {
            let class = cfg.semantics.frame_class(b);
            prop_assert!(!oracle_refute(&class, &TruthRelation::Forcing, &a, 3).is_refuted());
        }
    }

    #[test]
    fn gl_contains_igl_and_igl_contains_ik4(a in formula(2, 5)) {
        let ik4 = base_verdict(BaseLogic::IntuitionisticK4, &a);
        let igl = base_verdict(BaseLogic::IntuitionisticGL, &a);
        let gl = base_verdict(BaseLogic::ClassicalGL, &a);
        if ik4 == Verdict::Provable { prop_assert_eq!(igl, Verdict::Provable); }
        if igl == Verdict::Provable { prop_assert_eq!(gl, Verdict::Provable); }
    }
}
