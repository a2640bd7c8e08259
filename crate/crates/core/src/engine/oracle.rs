use std::collections::BTreeSet;

use super::{Countermodel, DecisionResult, Evidence, Verdict};
use crate::formula::{Atom, Formula};
use crate::kripke::{check_frame, FrameProperty, KripkeModel, NodeId, TruthRelation};

/// Exhaustive search for a small countermodel.
///
/// Candidates are rooted at node 0, every node is reachable from it, and
/// every edge of `≺` and `⊏` points from a smaller id to a larger one. Any
/// finite model where `≺ ∪ ⊏` is acyclic has such a labelling, and in the
/// irreflexive transitive classes used here it always is, so up to
/// isomorphism the search covers every rooted model of at most
/// `max_nodes` nodes. Order: node count, then `≺` bitmap, then `⊏` bitmap,
/// then valuation.
pub fn oracle_refute(
    frame_class: &[FrameProperty],
    relation: &TruthRelation,
    goal: &Formula,
    max_nodes: usize,
) -> DecisionResult {
    RefutationOracle::new(frame_class.to_vec(), relation.clone(), max_nodes).refute(goal)
}

/// [`oracle_refute`] with the admissible frames cached across goals.
pub struct RefutationOracle {
    frame_class: Vec<FrameProperty>,
    relation: TruthRelation,
    max_nodes: usize,
    frames: Option<Vec<Frame>>,
}

struct Frame {
    model: KripkeModel,
    /// Node sets (as bitmasks) allowed as the extension of an atom.
    upsets: Vec<u64>,
}

/// Search beyond this many nodes is never attempted: bitmaps are `u64`.
const NODE_CAP: usize = 8;

impl RefutationOracle {
    pub fn new(frame_class: Vec<FrameProperty>, relation: TruthRelation, max_nodes: usize) -> Self {
        RefutationOracle { frame_class, relation, max_nodes: max_nodes.min(NODE_CAP), frames: None }
    }

    pub fn refute(&mut self, goal: &Formula) -> DecisionResult {
        if self.frames.is_none() {
            self.frames = Some(self.enumerate_frames());
        }
        let atoms: Vec<Atom> = goal.atoms().into_iter().collect();
        let program = Program::compile(goal, &atoms);
        for frame in self.frames.as_ref().unwrap_or(&Vec::new()) {
            if let Some(cm) = self.search_frame(frame, goal, &atoms, &program) {
                return DecisionResult::new(Verdict::Refuted, Evidence::Countermodel(Box::new(cm)));
            }
        }
        DecisionResult::new(
            Verdict::Inconclusive,
            Evidence::Bound(format!("no countermodel with at most {} nodes", self.max_nodes)),
        )
    }

    fn valuation_dependent(prop: &FrameProperty) -> bool {
        matches!(prop, FrameProperty::AtomComplete | FrameProperty::SoundFor(_))
    }

    fn enumerate_frames(&self) -> Vec<Frame> {
        let atom_complete = self.frame_class.contains(&FrameProperty::AtomComplete);
        let mut out = Vec::new();
        for n in 1..=self.max_nodes {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let masks = 1u64 << pairs.len();
            let select = |mask: u64| pairs.iter().enumerate().filter(move |(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p);
            for lt in 0..masks {
                let Ok(base) = KripkeModel::new(vec![BTreeSet::new(); n], select(lt), []) else { continue };
                // Skip masks the closure would change, as another mask
                // already names the same frame.
                if base.strict_leq_pairs().count() != lt.count_ones() as usize {
                    continue;
                }
                for sub in 0..masks {
                    let Ok(model) = KripkeModel::new(vec![BTreeSet::new(); n], select(lt), select(sub)) else {
                        continue;
                    };
                    if model.sub_pairs().count() != sub.count_ones() as usize || !rooted(&model) {
                        continue;
                    }
                    let admissible = self
                        .frame_class
                        .iter()
                        .filter(|p| !Self::valuation_dependent(p))
                        .all(|p| check_frame(&model, p, Some(NodeId(0))).unwrap_or(false));
                    if admissible {
                        let upsets = upsets(&model, atom_complete);
                        out.push(Frame { model, upsets });
                    }
                }
            }
        }
        out
    }

    fn search_frame(&self, frame: &Frame, goal: &Formula, atoms: &[Atom], program: &Program) -> Option<Countermodel> {
        let n = frame.model.len();
        let radix = frame.upsets.len() as u128;
        let total = radix.checked_pow(atoms.len() as u32).unwrap_or(u128::MAX);
        let build = |v: u128| -> KripkeModel {
            let mut val = vec![BTreeSet::new(); n];
            let mut rest = v;
            for atom in atoms {
                let set = frame.upsets[(rest % radix) as usize];
                rest /= radix;
                for (node, atoms_here) in val.iter_mut().enumerate() {
                    if set >> node & 1 == 1 {
                        atoms_here.insert(atom.clone());
                    }
                }
            }
            let leq = frame.model.strict_leq_pairs().collect::<Vec<_>>();
            let sub = frame.model.sub_pairs().collect::<Vec<_>>();
            KripkeModel::new(val, leq, sub).expect("frame was admissible")
        };
        let mut start = 0u128;
        while start < total {
            let batch = (total - start).min(64) as u32;
            let refuting = match self.relation {
                TruthRelation::Forcing => !program.eval_root(frame, start, batch, radix),
                _ => (0..batch).fold(0u64, |acc, b| {
                    let holds = build(start + b as u128).holds(NodeId(0), goal, &self.relation).unwrap_or(true);
                    acc | u64::from(!holds) << b
                }),
            } & mask(batch);
            let mut bits = refuting;
            while bits != 0 {
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                let cm = Countermodel {
                    model: build(start + b as u128),
                    designated: NodeId(0),
                    goal: goal.clone(),
                    frame_class: self.frame_class.clone(),
                    relation: self.relation.clone(),
                };
                if cm.audit().is_ok() {
                    return Some(cm);
                }
            }
            start += batch as u128;
        }
        None
    }
}

fn mask(batch: u32) -> u64 {
    if batch >= 64 {
        u64::MAX
    } else {
        (1 << batch) - 1
    }
}

fn rooted(model: &KripkeModel) -> bool {
    let mut seen = 1u64;
    let mut stack = vec![0usize];
    while let Some(a) = stack.pop() {
        for b in model.leq().successors(a).chain(model.sub().successors(a)) {
            if seen >> b & 1 == 0 {
                seen |= 1 << b;
                stack.push(b);
            }
        }
    }
    seen.count_ones() as usize == model.len()
}

/// All node sets closed upward under `≼`, and also under `⊏` when atoms
/// must be atom-complete.
fn upsets(model: &KripkeModel, along_sub: bool) -> Vec<u64> {
    let n = model.len();
    (0..1u64 << n)
        .filter(|&set| {
            (0..n).filter(|&a| set >> a & 1 == 1).all(|a| {
                model.leq().successors(a).all(|b| set >> b & 1 == 1)
                    && (!along_sub || model.sub().successors(a).all(|b| set >> b & 1 == 1))
            })
        })
        .collect()
}

enum Op {
    Bot,
    Top,
    Atom(usize),
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
    Box(usize),
}

/// A goal flattened to a post-order list of distinct subformulas.
struct Program {
    ops: Vec<Op>,
}

impl Program {
    fn compile(goal: &Formula, atoms: &[Atom]) -> Self {
        fn go(f: &Formula, atoms: &[Atom], seen: &mut Vec<Formula>, ops: &mut Vec<Op>) -> usize {
            if let Some(i) = seen.iter().position(|g| g == f) {
                return i;
            }
            let op = match f {
                Formula::Bot => Op::Bot,
                Formula::Top => Op::Top,
                Formula::Atom(p) => Op::Atom(atoms.iter().position(|q| q == p).expect("atom listed")),
                Formula::And(a, b) => Op::And(go(a, atoms, seen, ops), go(b, atoms, seen, ops)),
                Formula::Or(a, b) => Op::Or(go(a, atoms, seen, ops), go(b, atoms, seen, ops)),
                Formula::Imp(a, b) => Op::Imp(go(a, atoms, seen, ops), go(b, atoms, seen, ops)),
                Formula::Box(a) => Op::Box(go(a, atoms, seen, ops)),
            };
            seen.push(f.clone());
            ops.push(op);
            ops.len() - 1
        }
        let mut ops = Vec::new();
        go(goal, atoms, &mut Vec::new(), &mut ops);
        Program { ops }
    }

    /// Forcing at node 0 for the valuations `start..start + batch`, one bit
    /// per valuation.
    fn eval_root(&self, frame: &Frame, start: u128, batch: u32, radix: u128) -> u64 {
        let model = &frame.model;
        let n = model.len();
        let mut ext: Vec<Vec<u64>> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let row: Vec<u64> = match *op {
                Op::Bot => vec![0; n],
                Op::Top => vec![u64::MAX; n],
                Op::Atom(k) => {
                    let mut row = vec![0u64; n];
                    for b in 0..batch {
                        let digit = (start + b as u128) / radix.pow(k as u32) % radix;
                        let set = frame.upsets[digit as usize];
                        for (node, word) in row.iter_mut().enumerate() {
                            *word |= (set >> node & 1) << b;
                        }
                    }
                    row
                }
                Op::And(a, b) => ext[a].iter().zip(&ext[b]).map(|(x, y)| x & y).collect(),
                Op::Or(a, b) => ext[a].iter().zip(&ext[b]).map(|(x, y)| x | y).collect(),
                Op::Imp(a, b) => (0..n)
                    .map(|i| model.leq().successors(i).fold(u64::MAX, |acc, j| acc & (!ext[a][j] | ext[b][j])))
                    .collect(),
                Op::Box(a) => {
                    (0..n).map(|i| model.sub().successors(i).fold(u64::MAX, |acc, j| acc & ext[a][j])).collect()
                }
            };
            ext.push(row);
        }
        ext.last().map_or(u64::MAX, |row| row[0])
    }
}
