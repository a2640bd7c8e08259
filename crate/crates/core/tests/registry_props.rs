mod common;

use common::coherence::{Outcome, BICONDITIONALS};
use common::{formula, verdict};
use proptest::prelude::*;
use provability::engine::{decide_base, BaseLogic, EngineConfig, Verdict};
use provability::formula::{is_tnnil_box, parse, subformulas, Formula};
use provability::registry::{check_witness, LogicId, SchemaTag};
use provability::translate::{box_down, box_full, box_up, tnnil_plus};

/// Chains along which provability must be upward closed.
const CHAINS: [&[LogicId]; 5] = [
    &[LogicId::GL, LogicId::GLCa, LogicId::GLSCa],
    &[LogicId::GL, LogicId::GLS, LogicId::GLSCa],
    &[LogicId::IGL, LogicId::IGLC, LogicId::IGLCT],
    &[LogicId::IGL, LogicId::IGLPbar, LogicId::IGLPbarCa],
    &[LogicId::IGL, LogicId::IGLPbar, LogicId::GL],
];

fn pool(a: &Formula) -> Vec<Formula> {
    subformulas(a).iter().cloned().collect()
}

/// `iGL` with the given instances as boxdot-hypotheses proves `goal`.
fn igl_with(instances: Vec<Formula>, goal: &Formula) -> bool {
    let cfg = EngineConfig::new(BaseLogic::IntuitionisticGL).with_premises([Formula::boxdot(Formula::conj(instances))]);
    decide_base(&cfg, goal).unwrap().is_provable()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn provability_is_upward_closed(a in formula(2, 4)) {
        for chain in CHAINS {
            let verdicts: Vec<Verdict> = chain.iter().map(|&l| verdict(l, &a)).collect();
            for (i, v) in verdicts.iter().enumerate() {
                if *v == Verdict::Provable {
                    for (later, w) in chain[i..].iter().zip(&verdicts[i..]) {
                        prop_assert_eq!(*w, Verdict::Provable, "{} proves {} but {} does not", chain[i], &a, later);
                    }
                }
            }
        }
    }

    #[test]
    fn translation_biconditionals_hold(a in formula(2, 4)) {
        for bic in &BICONDITIONALS {
            if let Outcome::Mismatch(l, r) = bic.check(&a, &mut |_| {}) {
                prop_assert!(false, "{} fails on {}: {} vs {}", bic.name, &a, l, r);
            }
        }
    }

    #[test]
    fn completeness_makes_the_box_translation_redundant(a in formula(2, 4)) {
        let cp = SchemaTag::CP.instances(&pool(&a));
        prop_assert!(igl_with(cp, &Formula::iff(a.clone(), box_full(&a))));
    }

    #[test]
    fn boxed_completeness_makes_box_down_redundant(a in formula(2, 4)) {
        let cp = SchemaTag::CP.instances(&pool(&a));
        let cfg = EngineConfig::new(BaseLogic::IntuitionisticGL).with_premises([Formula::boxed(Formula::conj(cp))]);
        prop_assert!(decide_base(&cfg, &Formula::iff(a.clone(), box_down(&a))).unwrap().is_provable());
    }

    #[test]
    fn box_up_of_a_subformula_implies_its_boxdot(a in formula(2, 3)) {
        let full = box_full(&a);
        let cpa = SchemaTag::CPa.instances(&pool(&full));
        for e in subformulas(&full).iter() {
            prop_assert!(igl_with(cpa.clone(), &Formula::imp(box_up(e), Formula::boxdot(e.clone()))), "{}", e);
        }
    }

    #[test]
    fn leivant_and_atomic_completeness_fix_tnnil_box_formulas(b in formula(2, 3), c in formula(2, 3), op in 0..3u8) {
        let (b, c) = (Formula::boxed(tnnil_plus(&b).unwrap()), Formula::boxed(tnnil_plus(&c).unwrap()));
        let a = match op {
            0 => Formula::and(b, c),
            1 => Formula::or(b, c),
            _ => Formula::imp(b, c),
        };
        prop_assume!(is_tnnil_box(&a));
        let down = box_down(&a);
        // Le+ only acts at boxes, so instances for the boxed bodies suffice.
        let bodies: Vec<Formula> = subformulas(&a).iter().filter_map(|f| match f {
            Formula::Box(body) => Some((**body).clone()),
            _ => None,
        }).collect();
        let mut instances = SchemaTag::LePlus.instances(&bodies);
        instances.extend(SchemaTag::CPa.instances(&pool(&down)));
        prop_assert!(igl_with(instances, &Formula::iff(a, down)));
    }
}

fn corpus() -> Vec<(String, Formula, String)> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/anchored.tsv");
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0].to_string(), parse(f[1]).unwrap(), f[2].to_string())
        })
        .collect()
}

#[test]
fn witness_substitutions_refute_the_corpus_goals() {
    let mut checked = 0;
    for (_, goal, _) in corpus() {
        if let Some(report) = check_witness(&goal).unwrap() {
            assert!(report.refutes, "{goal}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}
