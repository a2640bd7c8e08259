use std::fmt;

use serde::Serialize;

use super::{LogicId, RegistryError};
use crate::engine::{
    decide_base, BaseLogic, DecisionResult, EngineConfig, Evidence, NodeKind, Semantics, Verdict,
    DEFAULT_RESOURCE_LIMIT,
};
use crate::formula::{impl_normal_form, subformulas, Formula};
use crate::kripke::FrameProperty;
use crate::translate::TranslationKind;

/// A model-class restriction the base engine applies in place of axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ModelRestriction {
    /// `⊏ ⊆ ≺`.
    Complete,
    /// Every `⊏`-accessible world is classical.
    SuccessorClassical,
    /// Every `⊏`-accessible world is quasi-classical.
    SuccessorQuasiClassical,
    /// Every world is quasi-classical.
    QuasiClassical,
    /// Atoms persist along `⊏`.
    AtomComplete,
    /// The root has no proper intuitionistic successor.
    ClassicalRoot,
}

/// Reduction maps that are not plain formula translations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NamedMap {
    /// `A ↦ []A`.
    BoxGoal,
    /// Adds `/\ ([]B -> B)` over the boxed subformulas as a hypothesis.
    ReflectionPremise,
    /// Adds boxed excluded-middle instances over a negation closure.
    PemPremise,
    /// Adds `boxdot (p -> []p)` for every atom.
    CaPremise,
    /// Adds `boxdot /\ (E -> []E)` over the subformulas.
    CpPremise,
    /// Splits a boolean normal form into its clauses.
    ImplConjSplit,
    /// A countermodel-dependent substitution; see `witness_substitution`.
    Substitution,
    Restrict(ModelRestriction),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Translation {
    Kind(TranslationKind),
    Named(NamedMap),
}

impl fmt::Display for Translation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Translation::Kind(k) => write!(f, "{k}"),
            Translation::Named(NamedMap::Restrict(r)) => write!(f, "restrict:{r:?}"),
            Translation::Named(m) => write!(f, "{m:?}"),
        }
    }
}

/// One arrow of a reduction: how the goal changes and where it goes next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub translation: Translation,
    pub target: LogicId,
    pub anchor: &'static str,
}

/// A reduction step together with the formula it produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppliedStep {
    pub step: ReductionStep,
    pub formula: Formula,
}

impl fmt::Display for AppliedStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {}  ({})", self.step.translation, self.step.target, self.formula, self.step.anchor)
    }
}

/// Which implementation a pipeline uses where two are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Route {
    /// Axioms realized as restrictions on the models the engine searches.
    #[default]
    Semantic,
    /// Axioms realized as finitely many injected premises.
    Premise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    pub route: Route,
    pub resource_limit: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { route: Route::Semantic, resource_limit: DEFAULT_RESOURCE_LIMIT }
    }
}

pub(super) fn run(logic: LogicId, goal: &Formula, opts: &DecideOptions) -> Result<DecisionResult, RegistryError> {
    let premise = opts.route == Route::Premise;
    match logic {
        LogicId::IK4 => engine(opts, BaseLogic::IntuitionisticK4, Semantics::INTUITIONISTIC, Vec::new(), goal),
        LogicId::IGL => engine(opts, BaseLogic::IntuitionisticGL, Semantics::INTUITIONISTIC, Vec::new(), goal),
        LogicId::GL => engine(opts, BaseLogic::ClassicalGL, Semantics::CLASSICAL, Vec::new(), goal),
        LogicId::GLCa if premise => {
            let step = named(NamedMap::CaPremise, LogicId::GL, "atomic completeness as boxed hypotheses");
            let result = engine(opts, BaseLogic::ClassicalGL, Semantics::CLASSICAL, ca_premises(goal), goal)?;
            Ok(prepend(vec![applied(step, goal.clone())], result))
        }
        LogicId::GLCa => restricted(
            opts,
            BaseLogic::ClassicalGL,
            Semantics::CLASSICAL.with_atom_complete(),
            &[ModelRestriction::AtomComplete],
            LogicId::GL,
            "atoms persist along the modal relation",
            goal,
        ),
        LogicId::GLS | LogicId::GLSCa => {
            let (semantics, premises, via) = match (logic, premise) {
                (LogicId::GLS, _) => (Semantics::CLASSICAL, Vec::new(), LogicId::GL),
                (_, true) => (Semantics::CLASSICAL, ca_premises(goal), LogicId::GL),
                _ => (Semantics::CLASSICAL.with_atom_complete(), Vec::new(), LogicId::GLCa),
            };
            let reflection = reflection_premise(goal);
            let mut steps = vec![applied(
                named(NamedMap::ReflectionPremise, via, "reflection needed only for boxed subformulas of the goal"),
                Formula::imp(reflection.clone(), goal.clone()),
            )];
            if logic == LogicId::GLSCa {
                let (map, anchor) = if premise {
                    (NamedMap::CaPremise, "atomic completeness as boxed hypotheses")
                } else {
                    (NamedMap::Restrict(ModelRestriction::AtomComplete), "atoms persist along the modal relation")
                };
                steps.push(applied(named(map, LogicId::GL, anchor), goal.clone()));
            }
            let mut all = premises;
            all.push(reflection);
            let mut result = engine(opts, BaseLogic::ClassicalGL, semantics, all, goal)?;
            if !premise {
                declare_sound_root(&mut result, goal);
            }
            Ok(prepend(steps, result))
        }
        LogicId::IGLC if premise => {
            let step = named(NamedMap::CpPremise, LogicId::IGL, "completeness principle for subformulas suffices");
            let result =
                engine(opts, BaseLogic::IntuitionisticGL, Semantics::INTUITIONISTIC, vec![cp_premise(goal)], goal)?;
            Ok(prepend(vec![applied(step, goal.clone())], result))
        }
        LogicId::IGLC => restricted(
            opts,
            BaseLogic::IntuitionisticGL,
            Semantics { complete: true, ..Semantics::INTUITIONISTIC },
            &[ModelRestriction::Complete],
            LogicId::IGL,
            "perfect models: every modal successor is an intuitionistic successor",
            goal,
        ),
        LogicId::IGLCT if premise => {
            via(opts, TranslationKind::BoxFull, LogicId::GL, "boxdot-translation into classical GL", goal)
        }
        LogicId::IGLCT => restricted(
            opts,
            BaseLogic::IntuitionisticGL,
            Semantics {
                root: NodeKind::QuasiClassical,
                successor: NodeKind::QuasiClassical,
                complete: true,
                atom_complete: false,
            },
            &[ModelRestriction::Complete, ModelRestriction::QuasiClassical],
            LogicId::IGL,
            "perfect models whose worlds are all quasi-classical",
            goal,
        ),
        LogicId::IGLPbar | LogicId::IGLPbarCa if premise => {
            let mut premises = pem_premises(goal);
            let mut steps = vec![applied(
                named(NamedMap::PemPremise, LogicId::IGL, "boxed excluded middle over the negation closure"),
                goal.clone(),
            )];
            if logic == LogicId::IGLPbarCa {
                premises.extend(ca_premises(goal));
                steps.push(applied(
                    named(NamedMap::CaPremise, LogicId::IGLPbar, "atomic completeness as boxed hypotheses"),
                    goal.clone(),
                ));
            }
            let result = engine(opts, BaseLogic::IntuitionisticGL, Semantics::INTUITIONISTIC, premises, goal)?;
            Ok(prepend(steps, result))
        }
        LogicId::IGLPbar | LogicId::IGLPbarCa => successor_restricted(opts, logic, goal),
        LogicId::IGLCbarTbar | LogicId::IGLCbarTbarCa if !premise => successor_restricted(opts, logic, goal),
        LogicId::IGLCbarTbar => via(
            opts,
            TranslationKind::BoxDown,
            LogicId::IGLPbar,
            "boxdot-down translation with boxed excluded middle",
            goal,
        ),
        LogicId::IGLCbarTbarCa => via(
            opts,
            TranslationKind::BoxDown,
            LogicId::IGLPbarCa,
            "boxdot-down translation with boxed excluded middle and atomic completeness",
            goal,
        ),
        LogicId::IGLCbarTP => via(opts, TranslationKind::BoxDown, LogicId::GL, "boxdot-down translation into GL", goal),
        LogicId::IGLCbarTPCa => {
            via(opts, TranslationKind::BoxDown, LogicId::GLCa, "boxdot-down translation into GLCa", goal)
        }
        LogicId::IGLCbarTSstarP => {
            via(opts, TranslationKind::BoxDown, LogicId::GLS, "boxdot-down translation into GLS", goal)
        }
        LogicId::IGLCbarTSstarPCa => {
            via(opts, TranslationKind::BoxDown, LogicId::GLSCa, "boxdot-down translation into GLSCa", goal)
        }
        LogicId::IGLCbarPCa if premise => split_clauses(opts, goal),
        LogicId::IGLCbarPCa => restricted(
            opts,
            BaseLogic::IntuitionisticGL,
            Semantics {
                root: NodeKind::Classical,
                successor: NodeKind::Intuitionistic,
                complete: true,
                atom_complete: true,
            },
            &[ModelRestriction::ClassicalRoot, ModelRestriction::Complete, ModelRestriction::AtomComplete],
            LogicId::IGL,
            "a classical root over a perfect model",
            goal,
        ),
        LogicId::IGLCbarSPCa => {
            let down = TranslationKind::BoxDown.apply(goal)?;
            let with_reflection = Formula::imp(reflection_premise(&down), down.clone());
            let steps = vec![
                applied(
                    ReductionStep {
                        translation: Translation::Kind(TranslationKind::BoxDown),
                        target: LogicId::IGLCbarSPCa,
                        anchor: "boxed completeness makes a goal equivalent to its boxdot-down form",
                    },
                    down.clone(),
                ),
                applied(
                    named(
                        NamedMap::ReflectionPremise,
                        LogicId::IGLCbarPCa,
                        "reflection for boxed subformulas as a hypothesis",
                    ),
                    with_reflection.clone(),
                ),
            ];
            let mut result = run(LogicId::IGLCbarPCa, &with_reflection, opts)?;
            declare_sound_root(&mut result, &down);
            Ok(prepend(steps, result))
        }
        LogicId::IHsigma => via(
            opts,
            TranslationKind::TnnilMinus,
            LogicId::IGLC,
            "Visser's schema reduces to the TNNIL approximation",
            goal,
        ),
        LogicId::IHsigmaP => via(
            opts,
            TranslationKind::TnnilMinus,
            LogicId::IGLCbarPCa,
            "TNNIL approximation, then classical root",
            goal,
        ),
        LogicId::IHsigmaSP => {
            let minus = TranslationKind::TnnilMinus.apply(goal)?;
            let first = applied(
                ReductionStep {
                    translation: Translation::Kind(TranslationKind::TnnilMinus),
                    target: LogicId::IHsigmaSP,
                    anchor: "TNNIL approximation",
                },
                minus.clone(),
            );
            let result = via(
                opts,
                TranslationKind::BoxDown,
                LogicId::IGLCbarSPCa,
                "boxdot-down translation into the sound classical-root system",
                &minus,
            )?;
            Ok(prepend(vec![first], result))
        }
        LogicId::IHsigmaStar => {
            via(opts, TranslationKind::BoxDown, LogicId::IHsigma, "starred theory: boxdot-down translation", goal)
        }
        LogicId::IHsigmaStarStar => via(
            opts,
            TranslationKind::BoxFull,
            LogicId::IHsigma,
            "starred theory on both sides: boxdot translation",
            goal,
        ),
        LogicId::IHsigmaPStar => {
            via(opts, TranslationKind::BoxDown, LogicId::IHsigmaP, "starred theory: boxdot-down translation", goal)
        }
        LogicId::IHsigmaSPStar => {
            via(opts, TranslationKind::BoxDown, LogicId::IHsigmaSP, "starred theory: boxdot-down translation", goal)
        }
    }
}

/// Semi-perfect models whose modal successors are (quasi-)classical,
/// optionally with persistent atoms.
fn successor_restricted(opts: &DecideOptions, logic: LogicId, goal: &Formula) -> Result<DecisionResult, RegistryError> {
    let (successor, restriction, anchor) = match logic {
        LogicId::IGLPbar | LogicId::IGLPbarCa => (
            NodeKind::Classical,
            ModelRestriction::SuccessorClassical,
            "semi-perfect models whose modal successors are classical",
        ),
        _ => (
            NodeKind::QuasiClassical,
            ModelRestriction::SuccessorQuasiClassical,
            "semi-perfect models whose modal successors are quasi-classical",
        ),
    };
    let ca = matches!(logic, LogicId::IGLPbarCa | LogicId::IGLCbarTbarCa);
    let mut semantics = Semantics { successor, ..Semantics::INTUITIONISTIC };
    let mut restrictions = vec![restriction];
    if ca {
        semantics = semantics.with_atom_complete();
        restrictions.push(ModelRestriction::AtomComplete);
    }
    restricted(opts, BaseLogic::IntuitionisticGL, semantics, &restrictions, LogicId::IGL, anchor, goal)
}

fn named(map: NamedMap, target: LogicId, anchor: &'static str) -> ReductionStep {
    ReductionStep { translation: Translation::Named(map), target, anchor }
}

fn applied(step: ReductionStep, formula: Formula) -> AppliedStep {
    AppliedStep { step, formula }
}

fn prepend(mut steps: Vec<AppliedStep>, mut result: DecisionResult) -> DecisionResult {
    steps.append(&mut result.route);
    result.route = steps;
    result
}

/// Translates the goal and decides it in `target`.
fn via(
    opts: &DecideOptions,
    kind: TranslationKind,
    target: LogicId,
    anchor: &'static str,
    goal: &Formula,
) -> Result<DecisionResult, RegistryError> {
    let translated = kind.apply(goal)?;
    let step = ReductionStep { translation: Translation::Kind(kind), target, anchor };
    let result = run(target, &translated, opts)?;
    Ok(prepend(vec![applied(step, translated)], result))
}

fn restricted(
    opts: &DecideOptions,
    base: BaseLogic,
    semantics: Semantics,
    restrictions: &[ModelRestriction],
    target: LogicId,
    anchor: &'static str,
    goal: &Formula,
) -> Result<DecisionResult, RegistryError> {
    let steps =
        restrictions.iter().map(|&r| applied(named(NamedMap::Restrict(r), target, anchor), goal.clone())).collect();
    Ok(prepend(steps, engine(opts, base, semantics, Vec::new(), goal)?))
}

fn engine(
    opts: &DecideOptions,
    base: BaseLogic,
    semantics: Semantics,
    premises: Vec<Formula>,
    goal: &Formula,
) -> Result<DecisionResult, RegistryError> {
    let cfg = EngineConfig::new(base)
        .with_semantics(semantics)
        .with_premises(premises)
        .with_resource_limit(opts.resource_limit);
    Ok(decide_base(&cfg, goal)?)
}

/// Each clause `E -> F` of the boolean normal form must have its boxdot
/// translation provable in `iGLC`.
fn split_clauses(opts: &DecideOptions, goal: &Formula) -> Result<DecisionResult, RegistryError> {
    let normal = impl_normal_form(goal)?;
    let mut clauses = Vec::new();
    collect_conjuncts(&normal, &mut clauses);
    let mut parts = Vec::new();
    let mut verdict = Verdict::Provable;
    for clause in clauses {
        if clause == Formula::Top {
            continue;
        }
        let part = via(
            opts,
            TranslationKind::BoxFull,
            LogicId::IGLC,
            "a clause holds at quasi-classical worlds of perfect models iff its boxdot form is valid",
            &clause,
        )?;
        let part_verdict = part.verdict;
        parts.push(part);
        match part_verdict {
            Verdict::Provable => {}
            Verdict::Refuted => {
                verdict = Verdict::Refuted;
                break;
            }
            other => verdict = other,
        }
    }
    let step = named(NamedMap::ImplConjSplit, LogicId::IGLC, "boolean normal form split into implication clauses");
    let mut result = DecisionResult::new(verdict, Evidence::Parts(parts));
    result.route = vec![applied(step, normal)];
    Ok(result)
}

fn collect_conjuncts(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::And(a, b) => {
            collect_conjuncts(a, out);
            collect_conjuncts(b, out);
        }
        _ => out.push(f.clone()),
    }
}

/// A refutation of `reflection -> goal` at a classical root is a
/// refutation of `goal` at a root sound for it.
fn declare_sound_root(result: &mut DecisionResult, goal: &Formula) {
    if let Evidence::Countermodel(cm) = &mut result.evidence {
        cm.goal = goal.clone();
        cm.frame_class.push(FrameProperty::SoundFor(goal.clone()));
    }
}

pub(crate) fn ca_premises(goal: &Formula) -> Vec<Formula> {
    goal.atoms()
        .into_iter()
        .map(|p| {
            let p = Formula::Atom(p);
            Formula::boxdot(Formula::imp(p.clone(), Formula::boxed(p)))
        })
        .collect()
}

pub(crate) fn reflection_premise(goal: &Formula) -> Formula {
    Formula::conj(subformulas(goal).boxed().map(|b| {
        let Formula::Box(body) = b else { unreachable!("boxed() yields boxes") };
        Formula::imp(b.clone(), (**body).clone())
    }))
}

pub(crate) fn cp_premise(goal: &Formula) -> Formula {
    Formula::boxdot(Formula::conj(subformulas(goal).iter().map(|e| Formula::imp(e.clone(), Formula::boxed(e.clone())))))
}

pub(crate) fn pem_premises(goal: &Formula) -> Vec<Formula> {
    let mut closure = Vec::new();
    for b in subformulas(goal).iter() {
        let neg = Formula::neg(b.clone());
        let em = Formula::or(b.clone(), neg.clone());
        for x in [b.clone(), neg, em] {
            if !closure.contains(&x) {
                closure.push(x);
            }
        }
    }
    vec![Formula::boxdot(Formula::conj(
        closure.into_iter().map(|x| Formula::boxed(Formula::or(x.clone(), Formula::neg(x)))),
    ))]
}
