use std::collections::BTreeMap;

use super::pipeline::{ca_premises, DecideOptions};
use super::{decide_with, LogicId, RegistryError};
use crate::engine::{decide_base, BaseLogic, EngineConfig, Semantics};
use crate::formula::{Atom, Formula, Substitution};
use crate::kripke::{check_frame, unravel, FrameProperty, KripkeModel, NodeId, UnravelMode};
use crate::translate::{box_down, box_full};

/// A substitution built from a countermodel, with the formulas offered as
/// witnesses that it is a boxdot-down substitution.
#[derive(Debug, Clone)]
pub struct WitnessSubstitution {
    pub substitution: Substitution,
    pub witnesses: BTreeMap<Atom, Formula>,
    /// The model the construction ran on, after any unravelling.
    pub model: KripkeModel,
    /// The fresh atom naming each node of `model`.
    pub node_atoms: Vec<Atom>,
}

/// Builds the substitution that turns a countermodel of `goal` with
/// classical modal successors into one whose atoms persist along `⊏`.
///
/// Each node `α` gets a fresh atom `p_α` and the formula
/// `A_α = p_α /\ /\_{α ⊏ γ} ([]~boxdot p_γ -> A⁺_α)` where `A⁺_α` is the
/// disjunction of `A_β` over the strict `≺`-successors `β` of `α`. An atom
/// of the goal maps to the disjunction of `A_α` over the nodes forcing it.
/// The `⊏`-successor conjunct is kept outside the antecedent: at a strict
/// successor `γ` the conjunct for `γ` itself would otherwise fail.
pub fn witness_substitution(goal: &Formula, counter: &KripkeModel) -> Result<WitnessSubstitution, RegistryError> {
    let root = counter
        .roots()
        .into_iter()
        .find(|&r| !counter.force(r, goal).unwrap_or(true))
        .ok_or_else(|| RegistryError::Witness("the model does not refute the goal at a root".into()))?;
    for prop in [FrameProperty::SemiPerfect, FrameProperty::SucClassical] {
        if !check_frame(counter, &prop, Some(root)).map_err(|e| RegistryError::Witness(e.to_string()))? {
            return Err(RegistryError::Witness(format!("the model is not {prop}")));
        }
    }
    let model = if check_frame(counter, &FrameProperty::SubBranching, None).unwrap_or(false) {
        counter.clone()
    } else {
        let unravelled =
            unravel(counter, root, UnravelMode::Branching).map_err(|e| RegistryError::Witness(e.to_string()))?;
        unravelled.model
    };

    let used = goal.atoms();
    let node_atoms: Vec<Atom> = (0..model.len())
        .scan(0usize, |next, _| {
            while used.contains(&Atom::fresh(*next)) {
                *next += 1;
            }
            *next += 1;
            Some(Atom::fresh(*next - 1))
        })
        .collect();

    let mut node_formula: Vec<Option<Formula>> = vec![None; model.len()];
    for alpha in order_by_height(&model) {
        let plus = Formula::disj(
            model
                .leq()
                .successors(alpha)
                .filter(|&beta| beta != alpha)
                .map(|beta| node_formula[beta].clone().expect("successors are built first")),
        );
        let guards = model.sub().successors(alpha).map(|gamma| {
            let guard = Formula::boxed(Formula::neg(Formula::boxdot(Formula::Atom(node_atoms[gamma].clone()))));
            Formula::imp(guard, plus.clone())
        });
        let body = std::iter::once(Formula::Atom(node_atoms[alpha].clone())).chain(guards);
        node_formula[alpha] = Some(Formula::conj(body));
    }

    let substitution: Substitution = used
        .iter()
        .map(|p| {
            let forcing = model
                .nodes()
                .filter(|&n| model.atoms_at(n).contains(p))
                .map(|n| node_formula[n.0].clone().expect("every node is built"));
            (p.clone(), Formula::disj(forcing))
        })
        .collect();
    // Under atomic completeness a node atom is its own boxdot, and the
    // boxdot form keeps disjunctions of node atoms stable under boxdot.
    let stable: Substitution =
        node_atoms.iter().map(|a| (a.clone(), Formula::boxdot(Formula::Atom(a.clone())))).collect();
    let witnesses = substitution.iter().map(|(p, image)| (p.clone(), stable.apply(image))).collect();
    Ok(WitnessSubstitution { substitution, witnesses, model, node_atoms })
}

/// Nodes ordered so that every strict `≺`-successor comes first.
fn order_by_height(model: &KripkeModel) -> Vec<usize> {
    let height = |a: usize| model.leq().successors(a).count();
    let mut nodes: Vec<usize> = (0..model.len()).collect();
    nodes.sort_by_key(|&a| height(a));
    nodes
}

/// Checks that `witnesses[p]` certifies `substitution[p]` as a boxdot-down
/// image for every atom: `iK4` with atom persistence for the atoms involved
/// proves `τ(p) <-> B^□↓`, and plain `iK4` proves `boxdot B^□↓ <-> B^□`.
pub fn is_boxdown_substitution(substitution: &Substitution, witnesses: &BTreeMap<Atom, Formula>) -> bool {
    substitution.iter().all(|(p, image)| witnesses.get(p).is_some_and(|b| certifies(image, b)))
}

fn certifies(image: &Formula, witness: &Formula) -> bool {
    let down = box_down(witness);
    let matches = Formula::iff(image.clone(), down.clone());
    let first = EngineConfig::new(BaseLogic::IntuitionisticK4)
        .with_semantics(Semantics::INTUITIONISTIC)
        .with_premises(ca_premises(&Formula::and(image.clone(), witness.clone())));
    let second = EngineConfig::new(BaseLogic::IntuitionisticK4).with_semantics(Semantics::INTUITIONISTIC);
    let stable = Formula::iff(Formula::boxdot(down), box_full(witness));
    provable(&first, &matches) && provable(&second, &stable)
}

fn provable(cfg: &EngineConfig, goal: &Formula) -> bool {
    decide_base(cfg, goal).is_ok_and(|r| r.is_provable())
}

/// Runs the whole check on one goal refuted in `iGLPbar`: the substitution
/// must refute the goal in `iGLPbarCa`, and the witnesses must certify it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessReport {
    pub refutes: bool,
    pub boxdown: bool,
}

pub fn check_witness(goal: &Formula) -> Result<Option<WitnessReport>, RegistryError> {
    let result = decide_with(LogicId::IGLPbar, goal, &DecideOptions::default())?;
    let Some(cm) = result.countermodel() else { return Ok(None) };
    let root = cm.designated;
    let model = if root == NodeId(0) && cm.model.roots() == vec![root] {
        cm.model.clone()
    } else {
        crate::kripke::generated_submodel(&cm.model, root).map_err(|e| RegistryError::Witness(e.to_string()))?.0
    };
    let built = witness_substitution(goal, &model)?;
    let image = built.substitution.apply(goal);
    let refutes = decide_with(LogicId::IGLPbarCa, &image, &DecideOptions::default())?.is_refuted();
    let boxdown = is_boxdown_substitution(&built.substitution, &built.witnesses);
    Ok(Some(WitnessReport { refutes, boxdown }))
}
