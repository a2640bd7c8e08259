use std::fmt;

use super::{KripkeError, KripkeModel, NodeId};
use crate::formula::Formula;

/// Decidable properties of finite models. Node properties without a node
/// argument hold of a model when they hold at every node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FrameProperty {
    /// `(⊏;≼) ⊆ ⊏`.
    Brilliant,
    /// `α⊏γ` and `α≼β≼γ` imply `α⊏β` or `β⊏γ`.
    Neat,
    /// `≺ ∪ ⊏` is a strict partial order whose down-sets are chains.
    TreeFrame,
    /// `⊏` is irreflexive.
    Irreflexive,
    /// `⊏` is transitive.
    Transitive,
    SemiPerfect,
    Perfect,
    /// `(α≺) = (α⊏)` at the given node.
    QuasiClassicalAt(NodeId),
    /// Every node is quasi-classical.
    QuasiClassical,
    /// The given node has no proper `≼`-successor.
    ClassicalAt(NodeId),
    /// No node has a proper `≼`-successor.
    Classical,
    /// Every `⊏`-accessible node is classical.
    SucClassical,
    /// Every `⊏`-accessible node is quasi-classical.
    SucQuasiClassical,
    /// Atoms forced at a node are forced at all its `⊏`-successors.
    AtomComplete,
    /// No node has exactly one immediate `⊏`-successor.
    SubBranching,
    /// `(α⊏) ⊆ (α≺)` everywhere.
    Complete,
    /// `(α⊏) ⊆ (α≺)` at every `⊏`-accessible node.
    SucComplete,
    /// `□B -> B` is locally true at the node for each boxed subformula.
    SoundFor(Formula),
}

impl fmt::Display for FrameProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameProperty::Brilliant => f.write_str("Brilliant"),
            FrameProperty::Neat => f.write_str("Neat"),
            FrameProperty::TreeFrame => f.write_str("TreeFrame"),
            FrameProperty::Irreflexive => f.write_str("Irreflexive"),
            FrameProperty::Transitive => f.write_str("Transitive"),
            FrameProperty::SemiPerfect => f.write_str("SemiPerfect"),
            FrameProperty::Perfect => f.write_str("Perfect"),
            FrameProperty::QuasiClassicalAt(n) => write!(f, "QuasiClassicalAt({n})"),
            FrameProperty::QuasiClassical => f.write_str("QuasiClassical"),
            FrameProperty::ClassicalAt(n) => write!(f, "ClassicalAt({n})"),
            FrameProperty::Classical => f.write_str("Classical"),
            FrameProperty::SucClassical => f.write_str("SucClassical"),
            FrameProperty::SucQuasiClassical => f.write_str("SucQuasiClassical"),
            FrameProperty::AtomComplete => f.write_str("AtomComplete"),
            FrameProperty::SubBranching => f.write_str("SubBranching"),
            FrameProperty::Complete => f.write_str("Complete"),
            FrameProperty::SucComplete => f.write_str("SucComplete"),
            FrameProperty::SoundFor(a) => write!(f, "SoundFor({a})"),
        }
    }
}

impl KripkeModel {
    fn strict_successors_eq_sub(&self, a: usize) -> bool {
        (0..self.len()).all(|b| (a != b && self.leq().contains(a, b)) == self.sub().contains(a, b))
    }

    fn is_classical_node(&self, a: usize) -> bool {
        self.leq().successors(a).all(|b| b == a)
    }

    fn is_tree_frame(&self) -> bool {
        let n = self.len();
        let mut r = self.sub().clone();
        for (a, b) in self.strict_leq_pairs().collect::<Vec<_>>() {
            r.insert(a, b);
        }
        if !r.is_irreflexive() || !r.is_transitive() {
            return false;
        }
        (0..n).all(|x| {
            let below: Vec<usize> = r.predecessors(x).collect();
            below.iter().enumerate().all(|(i, &y)| below[i + 1..].iter().all(|&z| r.contains(y, z) || r.contains(z, y)))
        })
    }

    fn is_neat(&self) -> bool {
        self.sub_pairs().all(|(a, c)| {
            self.leq()
                .successors(a)
                .all(|b| !self.leq().contains(b, c) || self.sub().contains(a, b) || self.sub().contains(b, c))
        })
    }

    fn immediate_sub_successors(&self, a: usize) -> usize {
        self.sub().successors(a).filter(|&b| !self.sub().successors(a).any(|c| self.sub().contains(c, b))).count()
    }
}

/// Decides `prop` on `model`. `at` is required for [`FrameProperty::SoundFor`].
pub fn check_frame(model: &KripkeModel, prop: &FrameProperty, at: Option<NodeId>) -> Result<bool, KripkeError> {
    let n = model.len();
    Ok(match prop {
        FrameProperty::Brilliant => model.sub().compose(model.leq()).is_subset(model.sub()),
        FrameProperty::Neat => model.is_neat(),
        FrameProperty::TreeFrame => model.is_tree_frame(),
        FrameProperty::Irreflexive => model.sub().is_irreflexive(),
        FrameProperty::Transitive => model.sub().is_transitive(),
        FrameProperty::SemiPerfect => [
            FrameProperty::TreeFrame,
            FrameProperty::Brilliant,
            FrameProperty::Neat,
            FrameProperty::Irreflexive,
            FrameProperty::Transitive,
        ]
        .iter()
        .all(|p| check_frame(model, p, at).unwrap_or(false)),
        FrameProperty::Perfect => {
            check_frame(model, &FrameProperty::SemiPerfect, at)? && check_frame(model, &FrameProperty::Complete, at)?
        }
        FrameProperty::QuasiClassicalAt(a) => {
            model.check_node(*a)?;
            model.strict_successors_eq_sub(a.0)
        }
        FrameProperty::QuasiClassical => (0..n).all(|a| model.strict_successors_eq_sub(a)),
        FrameProperty::ClassicalAt(a) => {
            model.check_node(*a)?;
            model.is_classical_node(a.0)
        }
        FrameProperty::Classical => (0..n).all(|a| model.is_classical_node(a)),
        FrameProperty::SucClassical => model.suc().into_iter().all(|a| model.is_classical_node(a)),
        FrameProperty::SucQuasiClassical => model.suc().into_iter().all(|a| model.strict_successors_eq_sub(a)),
        FrameProperty::AtomComplete => {
            model.sub_pairs().all(|(a, b)| model.atoms_at(NodeId(a)).is_subset(model.atoms_at(NodeId(b))))
        }
        FrameProperty::SubBranching => (0..n).all(|a| model.immediate_sub_successors(a) != 1),
        FrameProperty::Complete => {
            (0..n).all(|a| model.sub().successors(a).all(|b| a != b && model.leq().contains(a, b)))
        }
        FrameProperty::SucComplete => {
            model.suc().into_iter().all(|a| model.sub().successors(a).all(|b| a != b && model.leq().contains(a, b)))
        }
        FrameProperty::SoundFor(formula) => {
            let node = at.ok_or_else(|| KripkeError::MissingNode(prop.to_string()))?;
            model.is_sound_for(node, formula)?
        }
    })
}
