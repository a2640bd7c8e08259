//! Model transformations: the Smoryński extension, the tilde collapse,
//! generated submodels and unravelling into sequence models.

use std::collections::BTreeSet;

use super::{KripkeError, KripkeModel, NodeId, Relation};

/// Adds a fresh node `α'` below `α` that copies `α`'s valuation, sees by `≼`
/// everything `α` sees, and sees by `⊏` exactly the nodes in `α⊑`
/// (including `α` itself). Only `α'` is `≼`-below `α'`, and nothing reaches
/// it by `⊏`.
pub fn smorynski_extend(model: &KripkeModel, alpha: NodeId) -> Result<(KripkeModel, NodeId), KripkeError> {
    model.check_node(alpha)?;
    let n = model.len();
    let fresh = n;
    let mut val = model.valuation().to_vec();
    val.push(val[alpha.0].clone());
    let mut leq = Relation::empty(n + 1);
    let mut sub = Relation::empty(n + 1);
    for (a, b) in model.leq().pairs() {
        leq.insert(a, b);
    }
    for (a, b) in model.sub_pairs() {
        sub.insert(a, b);
    }
    leq.insert(fresh, fresh);
    for b in model.leq().successors(alpha.0) {
        leq.insert(fresh, b);
    }
    sub.insert(fresh, alpha.0);
    for b in model.sub().successors(alpha.0) {
        sub.insert(fresh, b);
    }
    Ok((KripkeModel::from_relations(val, leq, sub)?, NodeId(fresh)))
}

/// Makes every `⊏`-accessible node classical by cutting its proper
/// `≼`-successors; `⊏` and the valuation are unchanged.
pub fn tilde(model: &KripkeModel) -> KripkeModel {
    let suc = model.suc();
    let mut leq = model.leq().clone();
    for (a, b) in model.leq().pairs() {
        if a != b && suc.contains(&a) {
            leq.remove(a, b);
        }
    }
    KripkeModel::from_relations(model.valuation().to_vec(), leq, model.sub().clone())
        .expect("shrinking the order keeps it a partial order")
}

/// The submodel on the nodes reachable from `root` by `≼` and `⊏`, with
/// `root` renumbered to 0 and the rest in ascending order. Also returns the
/// original id of each new node.
pub fn generated_submodel(model: &KripkeModel, root: NodeId) -> Result<(KripkeModel, Vec<NodeId>), KripkeError> {
    model.check_node(root)?;
    let mut keep: BTreeSet<usize> = model.leq().successors(root.0).collect();
    keep.extend(model.sub().successors(root.0));
    keep.remove(&root.0);
    let order: Vec<usize> = std::iter::once(root.0).chain(keep).collect();
    let index = |old: usize| order.iter().position(|&o| o == old);
    let val = order.iter().map(|&o| model.atoms_at(NodeId(o)).clone()).collect();
    let mut leq = Relation::empty(order.len());
    let mut sub = Relation::empty(order.len());
    for (i, &a) in order.iter().enumerate() {
        for b in model.leq().successors(a) {
            if let Some(j) = index(b) {
                leq.insert(i, j);
            }
        }
        for b in model.sub().successors(a) {
            if let Some(j) = index(b) {
                sub.insert(i, j);
            }
        }
    }
    let model = KripkeModel::from_relations(val, leq, sub)?;
    Ok((model, order.into_iter().map(NodeId).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnravelMode {
    /// Sequences of nodes.
    Plain,
    /// Each `⊏`-step carries a tag in `{0, 1}`, so every node with a
    /// `⊏`-successor has at least two immediate ones.
    Branching,
}

/// The result of [`unravel`]: node `i` of `model` is the sequence
/// `sequences[i]`, and it forces what `origin[i]` forces in the source.
#[derive(Debug, Clone)]
pub struct Unravelled {
    pub model: KripkeModel,
    pub origin: Vec<NodeId>,
    pub sequences: Vec<Vec<(NodeId, u8)>>,
}

const UNRAVEL_LIMIT: usize = 1 << 20;

/// Unravels the model from `root` into the model of finite step sequences:
/// each step goes along `≺` or `⊏`. A sequence is `≼`-below its extensions
/// whose last node is `≼`-above its own, and `⊏`-below the extensions that
/// take a `⊏`-step after it. The source should be brilliant with transitive
/// `⊏` for forcing to be preserved.
pub fn unravel(model: &KripkeModel, root: NodeId, mode: UnravelMode) -> Result<Unravelled, KripkeError> {
    model.check_node(root)?;
    let n = model.len();
    let step = |a: usize, b: usize| a != b && (model.leq().contains(a, b) || model.sub().contains(a, b));
    let mut reach = Relation::empty(n);
    for a in 0..n {
        for b in 0..n {
            if step(a, b) {
                reach.insert(a, b);
            }
        }
    }
    reach.transitive_closure();
    if !reach.is_irreflexive() {
        return Err(KripkeError::Malformed("the step relation has a cycle".into()));
    }
    if let Some(b) = (0..n).find(|&b| b != root.0 && !reach.contains(root.0, b)) {
        return Err(KripkeError::Unreachable(NodeId(b)));
    }

    // Tree of sequences: parent pointer, last node, whether the last step is
    // a ⊏-step.
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut last: Vec<usize> = vec![root.0];
    let mut tag: Vec<u8> = vec![0];
    let mut sub_step: Vec<bool> = vec![false];
    let mut frontier = 0;
    while frontier < last.len() {
        let a = last[frontier];
        for b in 0..n {
            if !step(a, b) {
                continue;
            }
            let is_sub = model.sub().contains(a, b);
            let tags: &[u8] = if is_sub && mode == UnravelMode::Branching { &[0, 1] } else { &[0] };
            for &t in tags {
                parent.push(Some(frontier));
                last.push(b);
                tag.push(t);
                sub_step.push(is_sub);
            }
        }
        if last.len() > UNRAVEL_LIMIT {
            return Err(KripkeError::Malformed(format!("unravelling exceeds {UNRAVEL_LIMIT} sequences")));
        }
        frontier += 1;
    }

    let total = last.len();
    let mut leq = Relation::identity(total);
    let mut sub = Relation::empty(total);
    for s in 0..total {
        let mut seen_sub = false;
        let mut cur = s;
        while let Some(r) = parent[cur] {
            seen_sub |= sub_step[cur];
            if model.leq().contains(last[r], last[s]) {
                leq.insert(r, s);
            }
            if seen_sub {
                sub.insert(r, s);
            }
            cur = r;
        }
    }
    let val = last.iter().map(|&a| model.atoms_at(NodeId(a)).clone()).collect();
    let sequences = (0..total)
        .map(|s| {
            let mut seq = Vec::new();
            let mut cur = Some(s);
            while let Some(c) = cur {
                seq.push((NodeId(last[c]), tag[c]));
                cur = parent[c];
            }
            seq.reverse();
            seq
        })
        .collect();
    Ok(Unravelled {
        model: KripkeModel::from_relations(val, leq, sub)?,
        origin: last.into_iter().map(NodeId).collect(),
        sequences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, subformulas, Atom};
    use crate::kripke::{check_frame, FrameProperty};

    fn atoms(names: &[&str]) -> BTreeSet<Atom> {
        names.iter().map(|n| Atom::new(n)).collect()
    }

    #[test]
    fn smorynski_adds_one_root_copy() {
        let m = KripkeModel::new(vec![atoms(&["p"]), atoms(&["p", "q"])], [(0, 1)], [(0, 1)]).unwrap();
        let (ext, fresh) = smorynski_extend(&m, NodeId(0)).unwrap();
        assert_eq!(ext.len(), 3);
        assert_eq!(ext.atoms_at(fresh), m.atoms_at(NodeId(0)));
        assert!(ext.is_sub(fresh, NodeId(0)));
        assert!(ext.is_leq(fresh, NodeId(0)));
        assert!(!ext.is_leq(NodeId(0), fresh));
        assert!(check_frame(&ext, &FrameProperty::QuasiClassicalAt(fresh), None).unwrap());
        assert!(check_frame(&ext, &FrameProperty::Perfect, None).unwrap());
    }

    #[test]
    fn tilde_examples() {
        let m = KripkeModel::new(vec![atoms(&[]), atoms(&[])], [(0, 1)], []).unwrap();
        assert_eq!(tilde(&m), m);
        let m = KripkeModel::new(vec![atoms(&[]), atoms(&[]), atoms(&["p"])], [(1, 2)], [(0, 1)]).unwrap();
        let t = tilde(&m);
        assert_eq!(t.leq().successors(1).collect::<Vec<_>>(), vec![1]);
        assert_eq!(t.suc(), m.suc());
    }

    #[test]
    fn unravel_of_a_diamond() {
        // 0 ≺ 1, 0 ≺ 2, 1 ≺ 3, 2 ≺ 3
        let m = KripkeModel::new(
            vec![atoms(&[]), atoms(&["p"]), atoms(&["q"]), atoms(&["p", "q"])],
            [(0, 1), (0, 2), (1, 3), (2, 3)],
            [],
        )
        .unwrap();
        let u = unravel(&m, NodeId(0), UnravelMode::Plain).unwrap();
        assert!(check_frame(&u.model, &FrameProperty::TreeFrame, None).unwrap());
        let goal = parse("(p -> q) \\/ (q -> p) \\/ ~(p /\\ q)").unwrap();
        for b in subformulas(&goal).iter() {
            let (src, dst) = (m.force_all(b), u.model.force_all(b));
            for (i, o) in u.origin.iter().enumerate() {
                assert_eq!(dst[i], src[o.0], "{b} at sequence {i}");
            }
        }
    }

    #[test]
    fn unravel_of_small_trees() {
        let single = KripkeModel::singleton([Atom::new("p")]);
        assert_eq!(unravel(&single, NodeId(0), UnravelMode::Plain).unwrap().model, single);
        let chain = KripkeModel::new(vec![atoms(&[]), atoms(&[])], [], [(0, 1)]).unwrap();
        assert_eq!(unravel(&chain, NodeId(0), UnravelMode::Plain).unwrap().model, chain);
        let branching = unravel(&chain, NodeId(0), UnravelMode::Branching).unwrap();
        assert_eq!(branching.model.len(), 3);
        assert!(check_frame(&branching.model, &FrameProperty::SubBranching, None).unwrap());
        let two_roots = KripkeModel::new(vec![atoms(&[]), atoms(&[])], [], []).unwrap();
        assert_eq!(
            unravel(&two_roots, NodeId(0), UnravelMode::Plain).unwrap_err(),
            KripkeError::Unreachable(NodeId(1))
        );
    }
}
