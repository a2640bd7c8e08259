//! The catalog of logics and the decision pipeline for each.
//!
//! Every [`LogicId`] is decided by rewriting the goal, step by step, until
//! one of the three base calculi (`iK4`, `iGL`, `GL`) can take it, possibly
//! with extra premises or a restricted model class. The steps taken are
//! recorded on the result.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::engine::{DecisionResult, EngineError, Verdict};
use crate::formula::{Formula, LiteralLimit};
use crate::translate::TranslateError;

mod diagram;
mod logic;
mod pipeline;
mod schema;
mod witness;

pub use diagram::{reduction_trace, TraceEntry, SINK};
pub use logic::{LogicId, Metatheory, ProvLogicId, SubstitutionClass, Theory};
pub use pipeline::{AppliedStep, DecideOptions, ModelRestriction, NamedMap, ReductionStep, Route, Translation};
pub use schema::{AxiomSchema, Decoration, SchemaTag};
pub use witness::{check_witness, is_boxdown_substitution, witness_substitution, WitnessReport, WitnessSubstitution};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegistryError {
    #[error("unknown logic '{0}'")]
    UnknownLogic(String),
    #[error("malformed logic triple '{0}'")]
    BadTriple(String),
    #[error("{0} is not characterized by any supported system")]
    UnsupportedTriple(ProvLogicId),
    #[error("no reduction path from {0}")]
    NoPath(ProvLogicId),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    LiteralLimit(#[from] LiteralLimit),
    #[error("witness construction failed: {0}")]
    Witness(String),
}

pub fn decide(logic: LogicId, goal: &Formula) -> Result<DecisionResult, RegistryError> {
    decide_with(logic, goal, &DecideOptions::default())
}

pub fn decide_with(logic: LogicId, goal: &Formula, options: &DecideOptions) -> Result<DecisionResult, RegistryError> {
    pipeline::run(logic, goal, options)
}

/// Looks up the system characterizing `logic` and decides the goal there.
pub fn decide_pl(logic: ProvLogicId, goal: &Formula) -> Result<DecisionResult, RegistryError> {
    let system = logic.logic()?;
    let mut result = decide(system, goal)?;
    let lookup = AppliedStep {
        step: ReductionStep {
            translation: Translation::Named(NamedMap::Substitution),
            target: system,
            anchor: "characterization of the relative provability logic",
        },
        formula: goal.clone(),
    };
    result.route.insert(0, lookup);
    Ok(result)
}

/// Verdicts across every logic in the catalog.
pub fn classify_formula(goal: &Formula) -> Result<BTreeMap<LogicId, Verdict>, RegistryError> {
    LogicId::ALL.iter().map(|&logic| Ok((logic, decide(logic, goal)?.verdict))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn verdict(logic: LogicId, src: &str) -> Verdict {
        decide(logic, &parse(src).unwrap()).unwrap().verdict
    }

    #[test]
    fn anchored_examples() {
        assert_eq!(verdict(LogicId::GL, "[]([]p -> p) -> []p"), Verdict::Provable);
        assert_eq!(verdict(LogicId::GLS, "[]p -> p"), Verdict::Provable);
        assert_eq!(verdict(LogicId::IGLCT, "p -> []p"), Verdict::Provable);
        assert_eq!(verdict(LogicId::IHsigma, "[](p \\/ q) -> [](boxdot p \\/ boxdot q)"), Verdict::Provable);
        assert_eq!(verdict(LogicId::IHsigma, "[]~~[]p -> [][]p"), Verdict::Provable);
        assert_eq!(verdict(LogicId::IHsigmaSP, "[](p \\/ q) -> ([]p \\/ []q)"), Verdict::Provable);
    }

    #[test]
    fn gl_refutes_disjunction_property_with_three_nodes() {
        let r = decide(LogicId::GL, &parse("[](p \\/ q) -> ([]p \\/ []q)").unwrap()).unwrap();
        let cm = r.countermodel().expect("refuted");
        assert!(cm.audit().is_ok());
        let smallest = crate::engine::oracle_refute(&cm.frame_class, &cm.relation, &cm.goal, 4);
        assert_eq!(smallest.countermodel().unwrap().model.len(), 3);
    }

    #[test]
    fn routes_agree_on_small_examples() {
        let premise = DecideOptions { route: Route::Premise, resource_limit: 100_000 };
        for src in ["p -> []p", "[]p -> p", "[](p \\/ ~p)", "~~[]p -> []p", "[]([]p -> p) -> []p", "p \\/ ~p"] {
            let a = parse(src).unwrap();
            for logic in LogicId::ALL {
                let semantic = decide(logic, &a).unwrap().verdict;
                // The premise routes may run out of resources; they must
                // never disagree when they finish.
                if let Ok(by_premise) = decide_with(logic, &a, &premise) {
                    assert_eq!(semantic, by_premise.verdict, "{logic} on {src}");
                }
            }
        }
    }

    #[test]
    fn pl_lookup() {
        let gl: ProvLogicId = "PL(PA,PA)".parse().unwrap();
        assert_eq!(gl.logic().unwrap(), LogicId::GL);
        let hardest: ProvLogicId = "Sigma1(HA,N)".parse().unwrap();
        assert_eq!(hardest.logic().unwrap(), LogicId::IHsigmaSP);
        let open: ProvLogicId = "PL(HA,HA)".parse().unwrap();
        assert!(matches!(decide_pl(open, &Formula::Top), Err(RegistryError::UnsupportedTriple(_))));
    }

    #[test]
    fn trace_examples() {
        let a = parse("[]p -> p").unwrap();
        let start: ProvLogicId = "Sigma1(HA,PA)".parse().unwrap();
        let trace = reduction_trace(start, &a).unwrap();
        let neg_up = crate::translate::TranslationKind::NegUp.apply(&a).unwrap();
        assert_eq!(trace.len(), 2);
        assert_eq!((trace[0].formula.clone(), trace[0].node), (neg_up.clone(), "Sigma1(HA,HA)".parse().unwrap()));
        assert_eq!((trace[1].formula.clone(), trace[1].node), (Formula::boxed(neg_up), SINK));
        assert!(reduction_trace(SINK, &a).unwrap().is_empty());
    }

    #[test]
    fn classify_examples() {
        let top = classify_formula(&Formula::Top).unwrap();
        assert!(top.values().all(|v| *v == Verdict::Provable));
        let reflection = classify_formula(&parse("[]false -> false").unwrap()).unwrap();
        assert_eq!(reflection[&LogicId::GL], Verdict::Refuted);
        assert_eq!(reflection[&LogicId::GLS], Verdict::Provable);
    }
}
