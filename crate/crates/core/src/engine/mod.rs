//! Base decision procedures for the classical and intuitionistic GL/K4
//! family, plus two independent oracles used to validate them: exhaustive
//! countermodel enumeration and a forward modus-ponens prover.
//!
//! The provers are a labelled tableau over subformula-closed sets. A node
//! carries the formulas it must force (`T`) and the formulas it must fail
//! (`F`); boolean rules branch locally and the implication and box rules
//! open new worlds. Closed tableaux are returned as sequent-style proof
//! traces, open ones as finite Kripke countermodels.

mod bits;
mod hilbert;
mod oracle;
mod tableau;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{boxed_decomposition, Formula};
use crate::kripke::{check_frame, FrameProperty, KripkeModel, NodeId, TruthRelation};
use crate::registry::AppliedStep;

pub use hilbert::{oracle_prove, HilbertDerivation, HilbertLine};
pub use oracle::{oracle_refute, RefutationOracle};

/// Default cap on tableau expansions per decision.
pub const DEFAULT_RESOURCE_LIMIT: usize = 1_000_000;

/// Cap on the size of an extracted countermodel.
pub const MAX_COUNTERMODEL_NODES: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BaseLogic {
    ClassicalK4,
    ClassicalGL,
    IntuitionisticK4,
    IntuitionisticGL,
}

impl BaseLogic {
    pub fn is_classical(self) -> bool {
        matches!(self, BaseLogic::ClassicalK4 | BaseLogic::ClassicalGL)
    }

    pub fn has_lob(self) -> bool {
        matches!(self, BaseLogic::ClassicalGL | BaseLogic::IntuitionisticGL)
    }
}

/// How a world treats implications.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NodeKind {
    /// Arbitrary `≼`-successors.
    Intuitionistic,
    /// Its strict `≼`-successors are exactly its `⊏`-successors.
    QuasiClassical,
    /// No proper `≼`-successors.
    Classical,
}

/// The class of models a search ranges over. `root` governs worlds that
/// are not `⊏`-accessible, `successor` those that are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Semantics {
    pub root: NodeKind,
    pub successor: NodeKind,
    /// Every `⊏`-step is also a `≺`-step.
    pub complete: bool,
    /// Atoms persist along `⊏`.
    pub atom_complete: bool,
}

impl Semantics {
    pub const INTUITIONISTIC: Semantics = Semantics {
        root: NodeKind::Intuitionistic,
        successor: NodeKind::Intuitionistic,
        complete: false,
        atom_complete: false,
    };

    pub const CLASSICAL: Semantics =
        Semantics { root: NodeKind::Classical, successor: NodeKind::Classical, complete: false, atom_complete: false };

    pub fn with_atom_complete(self) -> Self {
        Semantics { atom_complete: true, ..self }
    }

    /// The frame properties every countermodel found under `base` has.
    pub fn frame_class(&self, base: BaseLogic) -> Vec<FrameProperty> {
        // A classical root never sees its modal successors along `≼`, so
        // completeness can only hold above it.
        let complete_above_root = self.complete && self.root == NodeKind::Classical;
        let mut out = if complete_above_root {
            vec![FrameProperty::SemiPerfect, FrameProperty::SucComplete]
        } else if base.has_lob() {
            vec![if self.complete { FrameProperty::Perfect } else { FrameProperty::SemiPerfect }]
        } else {
            let mut v = vec![FrameProperty::Brilliant, FrameProperty::Transitive];
            if self.complete {
                v.push(FrameProperty::Complete);
            }
            v
        };
        match (self.root, self.successor) {
            (NodeKind::Classical, NodeKind::Classical) => out.push(FrameProperty::Classical),
            (NodeKind::QuasiClassical, NodeKind::QuasiClassical) => out.push(FrameProperty::QuasiClassical),
            (root, succ) => {
                match root {
                    NodeKind::QuasiClassical => out.push(FrameProperty::QuasiClassicalAt(NodeId(0))),
                    NodeKind::Classical => out.push(FrameProperty::ClassicalAt(NodeId(0))),
                    NodeKind::Intuitionistic => {}
                }
                match succ {
                    NodeKind::Classical => out.push(FrameProperty::SucClassical),
                    NodeKind::QuasiClassical => out.push(FrameProperty::SucQuasiClassical),
                    NodeKind::Intuitionistic => {}
                }
            }
        }
        if self.atom_complete {
            out.push(FrameProperty::AtomComplete);
        }
        out
    }
}

/// A base logic together with injected premises. Premises act as
/// hypotheses at the root only, so the question answered is whether
/// `base ⊢ ⋀premises -> goal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub base: BaseLogic,
    pub premises: Vec<Formula>,
    pub semantics: Semantics,
    pub resource_limit: usize,
}

impl EngineConfig {
    pub fn new(base: BaseLogic) -> Self {
        let semantics = if base.is_classical() { Semantics::CLASSICAL } else { Semantics::INTUITIONISTIC };
        EngineConfig { base, premises: Vec::new(), semantics, resource_limit: DEFAULT_RESOURCE_LIMIT }
    }

    pub fn with_premises<I: IntoIterator<Item = Formula>>(mut self, premises: I) -> Self {
        self.premises.extend(premises);
        self
    }

    /// Restricts the search to a narrower model class. Only GL bases with
    /// intuitionistic worlds accept anything but the default.
    pub fn with_semantics(mut self, semantics: Semantics) -> Self {
        self.semantics = semantics;
        self
    }

    pub fn with_resource_limit(mut self, limit: usize) -> Self {
        self.resource_limit = limit;
        self
    }

    /// The formula the search actually refutes or proves.
    pub fn effective_goal(&self, goal: &Formula) -> Formula {
        if self.premises.is_empty() {
            goal.clone()
        } else {
            Formula::imp(Formula::conj(self.premises.iter().cloned()), goal.clone())
        }
    }

    fn validate(&self) -> Result<(), EngineError> {
        let s = self.semantics;
        let all_classical = s.root == NodeKind::Classical && s.successor == NodeKind::Classical;
        if self.base.is_classical() && (!all_classical || s.complete) {
            return Err(EngineError::InvalidSemantics("classical bases only have classical worlds".into()));
        }
        if !self.base.is_classical() && all_classical {
            return Err(EngineError::InvalidSemantics("use a classical base for classical worlds".into()));
        }
        let plain = s.root == NodeKind::Intuitionistic && s.successor == NodeKind::Intuitionistic && !s.complete;
        if self.base == BaseLogic::IntuitionisticK4 && !plain {
            return Err(EngineError::InvalidSemantics("K4 bases only support the plain intuitionistic class".into()));
        }
        if s.complete && s.successor == NodeKind::Classical {
            return Err(EngineError::InvalidSemantics("complete models cannot have classical successors".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("resource limit exceeded: more than {limit} {what}")]
    Resource { limit: usize, what: &'static str },
    #[error("unsupported search semantics: {0}")]
    InvalidSemantics(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Provable,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Provable => "PROVABLE",
            Verdict::Refuted => "REFUTED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// A finite model refuting `goal` at `designated` under `relation`, and
/// the frame properties it is claimed to have.
#[derive(Debug, Clone, PartialEq)]
pub struct Countermodel {
    pub model: KripkeModel,
    pub designated: NodeId,
    pub goal: Formula,
    pub frame_class: Vec<FrameProperty>,
    pub relation: TruthRelation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditFailure {
    #[error("countermodel lacks frame property {0}")]
    FrameProperty(String),
    #[error("countermodel does not refute {0} at its designated node")]
    GoalHolds(String),
    #[error("countermodel is malformed: {0}")]
    Malformed(String),
}

impl Countermodel {
    /// Re-checks every claim the countermodel makes.
    pub fn audit(&self) -> Result<(), AuditFailure> {
        for prop in &self.frame_class {
            let ok = check_frame(&self.model, prop, Some(self.designated))
                .map_err(|e| AuditFailure::Malformed(e.to_string()))?;
            if !ok {
                return Err(AuditFailure::FrameProperty(prop.to_string()));
            }
        }
        let holds = self
            .model
            .holds(self.designated, &self.goal, &self.relation)
            .map_err(|e| AuditFailure::Malformed(e.to_string()))?;
        if holds {
            return Err(AuditFailure::GoalHolds(self.goal.to_string()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        self.model.to_json(self.designated, &self.goal, &self.frame_class)
    }

    pub fn to_dot(&self) -> String {
        self.model.to_dot(self.designated, &self.goal, &self.frame_class)
    }
}

/// One sequent of a closed tableau. Premises refer to earlier lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub rule: &'static str,
    pub premises: Vec<usize>,
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

/// A closed tableau as a list of sequents, premises before conclusions;
/// the last line is the root sequent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProofTrace {
    pub lines: Vec<ProofLine>,
}

impl fmt::Display for ProofTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Formula]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        for (i, line) in self.lines.iter().enumerate() {
            let premises = line.premises.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            writeln!(f, "{i}: {} [{premises}] {} => {}", line.rule, join(&line.antecedent), join(&line.succedent))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Evidence {
    Proof(ProofTrace),
    Derivation(HilbertDerivation),
    Countermodel(Box<Countermodel>),
    /// Results of sub-decisions that together settle the goal.
    Parts(Vec<DecisionResult>),
    /// An oracle gave up after exhausting its search bound.
    Bound(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionResult {
    pub verdict: Verdict,
    pub evidence: Evidence,
    /// The reduction steps taken before the base engine was invoked.
    pub route: Vec<AppliedStep>,
}

impl DecisionResult {
    pub fn new(verdict: Verdict, evidence: Evidence) -> Self {
        DecisionResult { verdict, evidence, route: Vec::new() }
    }

    pub fn is_provable(&self) -> bool {
        self.verdict == Verdict::Provable
    }

    pub fn is_refuted(&self) -> bool {
        self.verdict == Verdict::Refuted
    }

    /// The first countermodel in the evidence, searching sub-decisions.
    pub fn countermodel(&self) -> Option<&Countermodel> {
        match &self.evidence {
            Evidence::Countermodel(c) => Some(c),
            Evidence::Parts(parts) => parts.iter().find_map(DecisionResult::countermodel),
            _ => None,
        }
    }

    /// Every countermodel in the evidence tree.
    pub fn countermodels(&self) -> Vec<&Countermodel> {
        match &self.evidence {
            Evidence::Countermodel(c) => vec![c],
            Evidence::Parts(parts) => parts.iter().flat_map(DecisionResult::countermodels).collect(),
            _ => Vec::new(),
        }
    }
}

/// Decides `cfg.base + cfg.premises ⊢ goal`. Never inconclusive.
pub fn decide_base(cfg: &EngineConfig, goal: &Formula) -> Result<DecisionResult, EngineError> {
    cfg.validate()?;
    let effective = cfg.effective_goal(goal);
    tableau::decide(cfg, &cfg.premises, goal, effective)
}

/// Intuitionistic propositional derivability with maximal boxed
/// subformulas read as opaque atoms. Countermodels refute the box-free
/// skeleton, whose fresh atoms `$i` stand for the boxed parts.
pub fn decide_ipc(goal: &Formula) -> Result<DecisionResult, EngineError> {
    decide_ipc_with_limit(goal, DEFAULT_RESOURCE_LIMIT)
}

pub fn decide_ipc_with_limit(goal: &Formula, limit: usize) -> Result<DecisionResult, EngineError> {
    let skeleton = boxed_decomposition(goal).skeleton;
    let cfg = EngineConfig::new(BaseLogic::IntuitionisticGL).with_resource_limit(limit);
    tableau::decide(&cfg, &[], &skeleton, skeleton.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn decide(base: BaseLogic, s: &str) -> DecisionResult {
        decide_base(&EngineConfig::new(base), &f(s)).unwrap()
    }

    fn assert_refuted_with_audit(r: &DecisionResult) {
        assert!(r.is_refuted(), "{:?}", r.verdict);
        r.countermodel().unwrap().audit().unwrap();
    }

    #[test]
    fn lob_and_consistency() {
        assert!(decide(BaseLogic::ClassicalGL, "[]([]p -> p) -> []p").is_provable());
        assert!(decide(BaseLogic::IntuitionisticGL, "[]([]p -> p) -> []p").is_provable());
        assert_refuted_with_audit(&decide(BaseLogic::ClassicalGL, "~[]false"));
        assert_refuted_with_audit(&decide(BaseLogic::ClassicalK4, "[]([]p -> p) -> []p"));
        assert_refuted_with_audit(&decide(BaseLogic::IntuitionisticK4, "[]([]p -> p) -> []p"));
    }

    #[test]
    fn excluded_middle_is_intuitionistically_refuted() {
        assert!(decide(BaseLogic::ClassicalGL, "p \\/ ~p").is_provable());
        let r = decide(BaseLogic::IntuitionisticGL, "p \\/ ~p");
        assert_refuted_with_audit(&r);
        assert_eq!(r.countermodel().unwrap().model.len(), 2);
    }

    #[test]
    fn premise_containing_the_goal() {
        let cfg = EngineConfig::new(BaseLogic::IntuitionisticGL).with_premises([f("boxdot (p -> []p)")]);
        assert!(decide_base(&cfg, &f("p -> []p")).unwrap().is_provable());
        assert_refuted_with_audit(&decide(BaseLogic::IntuitionisticGL, "p -> []p"));
    }

    #[test]
    fn k4_facts() {
        for base in [BaseLogic::ClassicalK4, BaseLogic::IntuitionisticK4] {
            assert!(decide(base, "[]p -> [][]p").is_provable());
            assert!(decide(base, "[](p -> q) -> []p -> []q").is_provable());
            assert_refuted_with_audit(&decide(base, "[]p -> p"));
        }
    }

    #[test]
    fn ipc_examples() {
        assert!(decide_ipc(&f("p -> p")).unwrap().is_provable());
        assert!(decide_ipc(&f("[]p -> []p")).unwrap().is_provable());
        assert!(decide_ipc(&f("~~p -> p")).unwrap().is_refuted());
        assert!(decide_ipc(&f("[]([]p -> p) -> []p")).unwrap().is_refuted());
        assert!(decide_ipc(&f("((p -> q) -> p) -> p")).unwrap().is_refuted());
        assert!(decide_ipc(&f("~~(p \\/ ~p)")).unwrap().is_provable());
    }

    #[test]
    fn proofs_are_printed_line_by_line() {
        let r = decide(BaseLogic::ClassicalGL, "[]([]p -> p) -> []p");
        let Evidence::Proof(trace) = &r.evidence else { panic!("expected a proof") };
        let text = trace.to_string();
        assert!(text.lines().count() >= 2);
        assert!(text.lines().last().unwrap().ends_with("=> []([]p -> p) -> []p"));
        assert!(text.starts_with("0: ax []"));
    }

    #[test]
    fn semantics_must_fit_the_base() {
        let bad = EngineConfig::new(BaseLogic::IntuitionisticK4)
            .with_semantics(Semantics { complete: true, ..Semantics::INTUITIONISTIC });
        assert!(matches!(decide_base(&bad, &Formula::Top), Err(EngineError::InvalidSemantics(_))));
    }

    #[test]
    fn resource_limit_is_reported() {
        let cfg = EngineConfig::new(BaseLogic::IntuitionisticGL).with_resource_limit(1);
        let err = decide_base(&cfg, &f("(p \\/ q) -> (q \\/ p)")).unwrap_err();
        assert!(matches!(err, EngineError::Resource { .. }));
    }
}
