use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{FrameProperty, KripkeError, KripkeModel, NodeId};
use crate::formula::{Atom, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonNode {
    pub id: usize,
    pub atoms: Vec<String>,
}

/// The countermodel exchange format. `leq` lists all pairs of `≼`,
/// reflexive ones included; `sub` lists all pairs of `⊏`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountermodelJson {
    pub nodes: Vec<JsonNode>,
    pub leq: Vec<[usize; 2]>,
    pub sub: Vec<[usize; 2]>,
    pub designated: usize,
    pub formula: String,
    pub frame_class: Vec<String>,
}

impl KripkeModel {
    pub fn to_json_value(
        &self,
        designated: NodeId,
        formula: &Formula,
        frame_class: &[FrameProperty],
    ) -> CountermodelJson {
        CountermodelJson {
            nodes: self
                .nodes()
                .map(|a| JsonNode { id: a.0, atoms: self.atoms_at(a).iter().map(|p| p.name().to_string()).collect() })
                .collect(),
            leq: self.leq().pairs().map(|(a, b)| [a, b]).collect(),
            sub: self.sub_pairs().map(|(a, b)| [a, b]).collect(),
            designated: designated.0,
            formula: formula.to_string(),
            frame_class: frame_class.iter().map(ToString::to_string).collect(),
        }
    }

    /// Pretty-printed JSON, newline-terminated; identical inputs give
    /// identical bytes.
    pub fn to_json(&self, designated: NodeId, formula: &Formula, frame_class: &[FrameProperty]) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value(designated, formula, frame_class))
            .expect("countermodel serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<(KripkeModel, CountermodelJson), KripkeError> {
        let doc: CountermodelJson = serde_json::from_str(text).map_err(|e| KripkeError::Malformed(e.to_string()))?;
        let mut val = vec![BTreeSet::new(); doc.nodes.len()];
        for node in &doc.nodes {
            let slot = val.get_mut(node.id).ok_or(KripkeError::UnknownNode(NodeId(node.id)))?;
            *slot = node.atoms.iter().map(|a| Atom::new(a)).collect();
        }
        let model = KripkeModel::new(val, doc.leq.iter().map(|p| (p[0], p[1])), doc.sub.iter().map(|p| (p[0], p[1])))?;
        model.check_node(NodeId(doc.designated))?;
        Ok((model, doc))
    }

    /// Graphviz rendering: `≺` as solid edges, `⊏` as dashed edges, the
    /// designated node double-circled.
    pub fn to_dot(&self, designated: NodeId, formula: &Formula, frame_class: &[FrameProperty]) -> String {
        let mut out = String::from("digraph countermodel {\n");
        let classes: Vec<String> = frame_class.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  label=\"{} | {}\";", escape(&formula.to_string()), escape(&classes.join(", ")));
        for a in self.nodes() {
            let atoms: Vec<&str> = self.atoms_at(a).iter().map(Atom::name).collect();
            let shape = if a == designated { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  n{} [label=\"{}: {}\", shape={}];", a.0, a.0, escape(&atoms.join(", ")), shape);
        }
        for (a, b) in self.strict_leq_pairs() {
            let _ = writeln!(out, "  n{a} -> n{b} [style=solid];");
        }
        for (a, b) in self.sub_pairs() {
            let _ = writeln!(out, "  n{a} -> n{b} [style=dashed];");
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
