//! Finite intuitionistic-modal Kripke models `(K, ≼, ⊏, V)`, their truth
//! relations, frame properties and model surgeries.

mod export;
mod frame;
mod random;
mod relation;
mod surgery;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Atom, Formula};

pub use export::{CountermodelJson, JsonNode};
pub use frame::{check_frame, FrameProperty};
pub use random::{generate_random, DEFAULT_RETRIES};
pub use relation::Relation;
pub use surgery::{generated_submodel, smorynski_extend, tilde, unravel, UnravelMode, Unravelled};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("node {0} is not in the model")]
    UnknownNode(NodeId),
    #[error("property {0} needs a node argument")]
    MissingNode(String),
    #[error("the intuitionistic order is not antisymmetric (nodes {0} and {1})")]
    NotPartialOrder(NodeId, NodeId),
    #[error("node {0} is not reachable from the root")]
    Unreachable(NodeId),
    #[error("no model with at most {max_nodes} nodes satisfying {properties} found in {retries} attempts")]
    Unsatisfiable { properties: String, max_nodes: usize, retries: usize },
    #[error("malformed model: {0}")]
    Malformed(String),
}

/// A boolean interpretation of atoms: the listed atoms are true, all others
/// false.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BooleanAssignment {
    pub truth: BTreeSet<Atom>,
}

impl BooleanAssignment {
    pub fn new<I: IntoIterator<Item = Atom>>(true_atoms: I) -> Self {
        BooleanAssignment { truth: true_atoms.into_iter().collect() }
    }

    pub fn get(&self, p: &Atom) -> bool {
        self.truth.contains(p)
    }
}

/// Which of the truth relations a countermodel refutes its goal under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TruthRelation {
    /// Intuitionistic forcing `⊩`.
    Forcing,
    /// Local truth `⊨`: boolean at the node, boxes by forcing.
    Local,
    /// Local truth with atoms at the evaluation node read from `I`.
    LocalWith(BooleanAssignment),
    /// Classical truth `⊨_c`: boolean everywhere along `⊏`.
    Classical,
    ClassicalWith(BooleanAssignment),
}

impl fmt::Display for TruthRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |i: &BooleanAssignment| i.truth.iter().map(Atom::name).collect::<Vec<_>>().join(",");
        match self {
            TruthRelation::Forcing => f.write_str("forcing"),
            TruthRelation::Local => f.write_str("local"),
            TruthRelation::LocalWith(i) => write!(f, "local[I={{{}}}]", set(i)),
            TruthRelation::Classical => f.write_str("classical"),
            TruthRelation::ClassicalWith(i) => write!(f, "classical[I={{{}}}]", set(i)),
        }
    }
}

/// A finite Kripke model. The constructor repairs the required closure
/// conditions: `≼` is made reflexive and transitive, `⊏` is closed under
/// `≼;⊏`, and valuations persist upward along `≼`.
#[derive(Clone, PartialEq, Eq)]
pub struct KripkeModel {
    leq: Relation,
    sub: Relation,
    val: Vec<BTreeSet<Atom>>,
}

impl fmt::Debug for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KripkeModel")
            .field("val", &self.val)
            .field("lt", &self.strict_leq_pairs().collect::<Vec<_>>())
            .field("sub", &self.sub)
            .finish()
    }
}

impl KripkeModel {
    pub fn new<L, S>(val: Vec<BTreeSet<Atom>>, leq: L, sub: S) -> Result<Self, KripkeError>
    where
        L: IntoIterator<Item = (usize, usize)>,
        S: IntoIterator<Item = (usize, usize)>,
    {
        let n = val.len();
        let mut le = Relation::identity(n);
        let mut su = Relation::empty(n);
        for (a, b) in leq {
            check_index(n, a)?;
            check_index(n, b)?;
            le.insert(a, b);
        }
        for (a, b) in sub {
            check_index(n, a)?;
            check_index(n, b)?;
            su.insert(a, b);
        }
        Self::from_relations(val, le, su)
    }

    /// Builds from explicit relations, applying the closure repairs.
    pub fn from_relations(mut val: Vec<BTreeSet<Atom>>, mut leq: Relation, sub: Relation) -> Result<Self, KripkeError> {
        let n = val.len();
        if leq.len() != n || sub.len() != n {
            return Err(KripkeError::Malformed("relation size differs from node count".into()));
        }
        leq.reflexive_closure();
        leq.transitive_closure();
        if let Some((a, b)) = leq.pairs().find(|&(a, b)| a != b && leq.contains(b, a)) {
            return Err(KripkeError::NotPartialOrder(NodeId(a), NodeId(b)));
        }
        let sub = leq.compose(&sub);
        for (a, b) in leq.pairs().collect::<Vec<_>>() {
            if a != b {
                let up: Vec<Atom> = val[a].iter().cloned().collect();
                val[b].extend(up);
            }
        }
        Ok(KripkeModel { leq, sub, val })
    }

    /// A single node with the given atoms and no modal successors.
    pub fn singleton<I: IntoIterator<Item = Atom>>(atoms: I) -> Self {
        KripkeModel { leq: Relation::identity(1), sub: Relation::empty(1), val: vec![atoms.into_iter().collect()] }
    }

    pub fn len(&self) -> usize {
        self.val.len()
    }

    pub fn is_empty(&self) -> bool {
        self.val.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.len()).map(NodeId)
    }

    pub fn leq(&self) -> &Relation {
        &self.leq
    }

    pub fn sub(&self) -> &Relation {
        &self.sub
    }

    pub fn is_leq(&self, a: NodeId, b: NodeId) -> bool {
        self.leq.contains(a.0, b.0)
    }

    pub fn is_sub(&self, a: NodeId, b: NodeId) -> bool {
        self.sub.contains(a.0, b.0)
    }

    pub fn atoms_at(&self, a: NodeId) -> &BTreeSet<Atom> {
        &self.val[a.0]
    }

    pub fn valuation(&self) -> &[BTreeSet<Atom>] {
        &self.val
    }

    /// Pairs `a ≺ b` (strict part of `≼`).
    pub fn strict_leq_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.leq.pairs().filter(|(a, b)| a != b)
    }

    pub fn sub_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.sub.pairs()
    }

    /// Nodes that are a `⊏`-successor of some node.
    pub fn suc(&self) -> BTreeSet<usize> {
        self.sub.pairs().map(|(_, b)| b).collect()
    }

    /// Nodes with no proper `≼`-predecessor and no `⊏`-predecessor.
    pub fn roots(&self) -> Vec<NodeId> {
        (0..self.len())
            .filter(|&b| (0..self.len()).all(|a| a == b || (!self.leq.contains(a, b) && !self.sub.contains(a, b))))
            .map(NodeId)
            .collect()
    }

    pub fn check_node(&self, a: NodeId) -> Result<(), KripkeError> {
        check_index(self.len(), a.0)
    }

    /// The forcing extension of `a`: entry `i` is `K, i ⊩ a`.
    pub fn force_all(&self, a: &Formula) -> Vec<bool> {
        let mut memo = HashMap::new();
        self.force_ext(a, &mut memo)
    }

    fn force_ext(&self, a: &Formula, memo: &mut HashMap<Formula, Vec<bool>>) -> Vec<bool> {
        if let Some(v) = memo.get(a) {
            return v.clone();
        }
        let n = self.len();
        let v = match a {
            Formula::Bot => vec![false; n],
            Formula::Top => vec![true; n],
            Formula::Atom(p) => self.val.iter().map(|s| s.contains(p)).collect(),
            Formula::And(x, y) => {
                let (x, y) = (self.force_ext(x, memo), self.force_ext(y, memo));
                x.iter().zip(&y).map(|(a, b)| *a && *b).collect()
            }
            Formula::Or(x, y) => {
                let (x, y) = (self.force_ext(x, memo), self.force_ext(y, memo));
                x.iter().zip(&y).map(|(a, b)| *a || *b).collect()
            }
            Formula::Imp(x, y) => {
                let (x, y) = (self.force_ext(x, memo), self.force_ext(y, memo));
                (0..n).map(|i| self.leq.successors(i).all(|j| !x[j] || y[j])).collect()
            }
            Formula::Box(x) => {
                let x = self.force_ext(x, memo);
                (0..n).map(|i| self.sub.successors(i).all(|j| x[j])).collect()
            }
        };
        memo.insert(a.clone(), v.clone());
        v
    }

    pub fn force(&self, node: NodeId, a: &Formula) -> Result<bool, KripkeError> {
        self.check_node(node)?;
        Ok(self.force_all(a)[node.0])
    }

    /// Local truth `⊨`, optionally with atoms at `node` read from `i`.
    pub fn local_truth(&self, node: NodeId, a: &Formula, i: Option<&BooleanAssignment>) -> Result<bool, KripkeError> {
        self.check_node(node)?;
        let mut memo = HashMap::new();
        Ok(self.local(node.0, a, i, &mut memo))
    }

    fn local(
        &self,
        node: usize,
        a: &Formula,
        i: Option<&BooleanAssignment>,
        memo: &mut HashMap<Formula, Vec<bool>>,
    ) -> bool {
        match a {
            Formula::Bot => false,
            Formula::Top => true,
            Formula::Atom(p) => i.map_or_else(|| self.val[node].contains(p), |i| i.get(p)),
            Formula::And(x, y) => self.local(node, x, i, memo) && self.local(node, y, i, memo),
            Formula::Or(x, y) => self.local(node, x, i, memo) || self.local(node, y, i, memo),
            Formula::Imp(x, y) => !self.local(node, x, i, memo) || self.local(node, y, i, memo),
            Formula::Box(_) => self.force_ext(a, memo)[node],
        }
    }

    /// Classical truth `⊨_c`; with `i`, atoms at `node` (and only there) are
    /// read from `i` throughout the evaluation.
    pub fn classical_truth(
        &self,
        node: NodeId,
        a: &Formula,
        i: Option<&BooleanAssignment>,
    ) -> Result<bool, KripkeError> {
        self.check_node(node)?;
        let mut memo = HashMap::new();
        Ok(self.classical_ext(a, node.0, i, &mut memo)[node.0])
    }

    fn classical_ext(
        &self,
        a: &Formula,
        at: usize,
        i: Option<&BooleanAssignment>,
        memo: &mut HashMap<Formula, Vec<bool>>,
    ) -> Vec<bool> {
        if let Some(v) = memo.get(a) {
            return v.clone();
        }
        let n = self.len();
        let v = match a {
            Formula::Bot => vec![false; n],
            Formula::Top => vec![true; n],
            Formula::Atom(p) => (0..n)
                .map(|k| match i {
                    Some(i) if k == at => i.get(p),
                    _ => self.val[k].contains(p),
                })
                .collect(),
            Formula::And(x, y) | Formula::Or(x, y) | Formula::Imp(x, y) => {
                let (x, y) = (self.classical_ext(x, at, i, memo), self.classical_ext(y, at, i, memo));
                (0..n)
                    .map(|k| match a {
                        Formula::And(..) => x[k] && y[k],
                        Formula::Or(..) => x[k] || y[k],
                        _ => !x[k] || y[k],
                    })
                    .collect()
            }
            Formula::Box(x) => {
                let x = self.classical_ext(x, at, i, memo);
                (0..n).map(|k| self.sub.successors(k).all(|j| x[j])).collect()
            }
        };
        memo.insert(a.clone(), v.clone());
        v
    }

    pub fn holds(&self, node: NodeId, a: &Formula, relation: &TruthRelation) -> Result<bool, KripkeError> {
        match relation {
            TruthRelation::Forcing => self.force(node, a),
            TruthRelation::Local => self.local_truth(node, a, None),
            TruthRelation::LocalWith(i) => self.local_truth(node, a, Some(i)),
            TruthRelation::Classical => self.classical_truth(node, a, None),
            TruthRelation::ClassicalWith(i) => self.classical_truth(node, a, Some(i)),
        }
    }

    /// `□B -> B` is locally true at `node` for every boxed subformula `□B`
    /// of `a`.
    pub fn is_sound_for(&self, node: NodeId, a: &Formula) -> Result<bool, KripkeError> {
        self.check_node(node)?;
        let sub = crate::formula::subformulas(a);
        let mut memo = HashMap::new();
        let sound = sub.boxed().all(|b| {
            let Formula::Box(body) = b else { unreachable!() };
            !self.local(node.0, b, None, &mut memo) || self.local(node.0, body, None, &mut memo)
        });
        Ok(sound)
    }
}

fn check_index(n: usize, a: usize) -> Result<(), KripkeError> {
    if a < n {
        Ok(())
    } else {
        Err(KripkeError::UnknownNode(NodeId(a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn atoms(names: &[&str]) -> BTreeSet<Atom> {
        names.iter().map(|n| Atom::new(n)).collect()
    }

    #[test]
    fn forcing_examples() {
        let single = KripkeModel::singleton([]);
        assert!(single.force(NodeId(0), &f("[]false")).unwrap());

        let sub = KripkeModel::new(vec![atoms(&[]), atoms(&["p"])], [], [(0, 1)]).unwrap();
        assert!(sub.force(NodeId(0), &f("[]p")).unwrap());
        assert!(!sub.force(NodeId(0), &f("p")).unwrap());

        let chain = KripkeModel::new(vec![atoms(&[]), atoms(&["p"])], [(0, 1)], []).unwrap();
        assert!(chain.force(NodeId(0), &f("~~p")).unwrap());
        assert!(!chain.force(NodeId(0), &f("p \\/ ~p")).unwrap());
        assert!(chain.force(NodeId(5), &f("p")).is_err());
    }

    #[test]
    fn local_and_classical_truth() {
        let chain = KripkeModel::new(vec![atoms(&[]), atoms(&["p"])], [(0, 1)], []).unwrap();
        // Local truth reads implications truth-functionally.
        assert!(chain.local_truth(NodeId(0), &f("p \\/ ~p"), None).unwrap());
        let sub = KripkeModel::new(vec![atoms(&[]), atoms(&["p"])], [], [(0, 1)]).unwrap();
        assert!(sub.classical_truth(NodeId(0), &f("[]p"), None).unwrap());
        let i = BooleanAssignment::new([Atom::new("p")]);
        assert!(sub.local_truth(NodeId(0), &f("p"), Some(&i)).unwrap());
        assert!(!sub.local_truth(NodeId(0), &f("p"), None).unwrap());
    }

    #[test]
    fn constructor_repairs_closures() {
        let m = KripkeModel::new(vec![atoms(&["p"]), atoms(&[]), atoms(&[])], [(0, 1)], [(1, 2)]).unwrap();
        assert!(m.is_sub(NodeId(0), NodeId(2)), "(≼;⊏) ⊆ ⊏");
        assert!(m.atoms_at(NodeId(1)).contains(&Atom::new("p")), "persistence");
        assert!(KripkeModel::new(vec![atoms(&[]), atoms(&[])], [(0, 1), (1, 0)], []).is_err());
    }
}
