use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_frame, FrameProperty, KripkeError, KripkeModel, NodeId, Relation};
use crate::formula::Atom;

/// Attempts made by [`generate_random`] before reporting unsatisfiability.
pub const DEFAULT_RETRIES: usize = 1000;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Edge {
    Leq,
    Sub,
    Both,
}

struct Shape {
    pure_leq: bool,
    pure_sub: bool,
    both: bool,
    suc_classical: bool,
    suc_quasi_classical: bool,
    quasi_classical_below: Vec<usize>,
    atom_complete: bool,
}

impl Shape {
    fn from(props: &[FrameProperty]) -> Self {
        let has = |p: &FrameProperty| props.contains(p);
        let classical = has(&FrameProperty::Classical);
        let quasi = has(&FrameProperty::QuasiClassical);
        Shape {
            pure_leq: !classical && !quasi,
            pure_sub: !quasi && !has(&FrameProperty::Perfect) && !has(&FrameProperty::Complete),
            both: !classical,
            suc_classical: has(&FrameProperty::SucClassical),
            suc_quasi_classical: has(&FrameProperty::SucQuasiClassical),
            quasi_classical_below: props
                .iter()
                .filter_map(|p| match p {
                    FrameProperty::QuasiClassicalAt(n) => Some(n.0),
                    _ => None,
                })
                .collect(),
            atom_complete: has(&FrameProperty::AtomComplete),
        }
    }

    /// Labels permitted for an edge out of `parent`.
    fn allowed(&self, parent: usize, ancestors: &[usize], below_sub: bool) -> Vec<Edge> {
        let in_quasi = self.quasi_classical_below.iter().any(|q| *q == parent || ancestors.contains(q));
        let candidates = [(Edge::Leq, self.pure_leq), (Edge::Sub, self.pure_sub), (Edge::Both, self.both)];
        candidates
            .into_iter()
            .filter(|&(e, ok)| {
                ok && (!in_quasi || e == Edge::Both)
                    && (!below_sub || !self.suc_classical || e == Edge::Sub)
                    && (!below_sub || !self.suc_quasi_classical || e == Edge::Both)
            })
            .map(|(e, _)| e)
            .collect()
    }
}

/// A random finite tree model satisfying every property in `props`
/// (node-indexed soundness is checked at the root, node 0). Trees are grown
/// edge by edge with labels the properties permit, then closed; `≼` is the
/// closure of `≺`-edges and `⊏` relates nodes whose connecting path contains
/// a `⊏`-edge, which makes every sample semi-perfect. Deterministic in
/// `seed`.
pub fn generate_random(
    props: &[FrameProperty],
    max_nodes: usize,
    atoms: &[Atom],
    seed: u64,
) -> Result<KripkeModel, KripkeError> {
    if max_nodes == 0 {
        return Err(KripkeError::Malformed("max_nodes must be at least 1".into()));
    }
    let shape = Shape::from(props);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DEFAULT_RETRIES {
        let model = sample(&shape, max_nodes, atoms, &mut rng);
        let ok = props.iter().all(|p| check_frame(&model, p, Some(NodeId(0))).unwrap_or(false));
        if ok {
            return Ok(model);
        }
    }
    Err(KripkeError::Unsatisfiable {
        properties: props.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        max_nodes,
        retries: DEFAULT_RETRIES,
    })
}

fn sample(shape: &Shape, max_nodes: usize, atoms: &[Atom], rng: &mut ChaCha8Rng) -> KripkeModel {
    let target = rng.gen_range(1..=max_nodes);
    // parent, label of the edge from the parent, whether a ⊏-edge lies above
    let mut nodes: Vec<Option<(usize, Edge)>> = vec![None];
    let mut below_sub = vec![false];
    let mut attempts = 0;
    while nodes.len() < target && attempts < 8 * max_nodes {
        attempts += 1;
        let parent = rng.gen_range(0..nodes.len());
        let ancestors = ancestors_of(&nodes, parent);
        let allowed = shape.allowed(parent, &ancestors, below_sub[parent]);
        if allowed.is_empty() {
            continue;
        }
        let edge = allowed[rng.gen_range(0..allowed.len())];
        below_sub.push(below_sub[parent] || edge != Edge::Leq);
        nodes.push(Some((parent, edge)));
    }
    let n = nodes.len();
    let mut leq = Relation::identity(n);
    let mut sub = Relation::empty(n);
    for child in 1..n {
        // Walk up from the child, tracking the labels along the path.
        let mut all_leq = true;
        let mut any_sub = false;
        let mut cur = child;
        while let Some((parent, edge)) = nodes[cur] {
            all_leq &= edge != Edge::Sub;
            any_sub |= edge != Edge::Leq;
            if all_leq {
                leq.insert(parent, child);
            }
            if any_sub {
                sub.insert(parent, child);
            }
            cur = parent;
        }
    }
    let mut val: Vec<BTreeSet<Atom>> =
        (0..n).map(|_| atoms.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect()).collect();
    // Ancestors precede descendants, so one pass propagates persistence.
    for b in 0..n {
        for a in 0..b {
            let inherit = leq.contains(a, b) || (shape.atom_complete && sub.contains(a, b));
            if inherit {
                let up: Vec<Atom> = val[a].iter().cloned().collect();
                val[b].extend(up);
            }
        }
    }
    KripkeModel::from_relations(val, leq, sub).expect("tree closures form a partial order")
}

fn ancestors_of(nodes: &[Option<(usize, Edge)>], mut node: usize) -> Vec<usize> {
    let mut out = Vec::new();
    while let Some((parent, _)) = nodes[node] {
        out.push(parent);
        node = parent;
    }
    out
}
