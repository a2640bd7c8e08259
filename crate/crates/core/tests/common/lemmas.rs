//! Kripke-model lemmas as checks returning the first violation found.

use provability::formula::{subformulas, Atom, Formula};
use provability::kripke::{
    check_frame, generated_submodel, smorynski_extend, tilde, unravel, BooleanAssignment, FrameProperty, KripkeModel,
    NodeId, UnravelMode,
};
use provability::translate::{box_down, box_full};

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn has(model: &KripkeModel, prop: FrameProperty, node: NodeId) -> bool {
    check_frame(model, &prop, Some(node)).unwrap_or(false)
}

fn quasi_classical_nodes(model: &KripkeModel) -> Vec<NodeId> {
    model.nodes().filter(|&n| has(model, FrameProperty::QuasiClassicalAt(n), n)).collect()
}

/// Every assignment to `atoms`.
pub fn assignments(atoms: &[Atom]) -> Vec<BooleanAssignment> {
    (0..1u32 << atoms.len())
        .map(|mask| {
            BooleanAssignment::new(atoms.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| a.clone()))
        })
        .collect()
}

pub fn forcing_is_monotone(model: &KripkeModel, a: &Formula) -> Check {
    let ext = model.force_all(a);
    for (x, y) in model.leq().pairs() {
        ensure(!ext[x] || ext[y], || format!("{a} forced at {x} but not at {y}"))?;
    }
    Ok(())
}

/// Forcing and local truth agree on `A^□` at quasi-classical nodes, and so
/// does classical truth when the whole model is quasi-classical.
pub fn truth_forcing_collapse(model: &KripkeModel, a: &Formula) -> Check {
    let full = box_full(a);
    let all_quasi = has(model, FrameProperty::QuasiClassical, NodeId(0));
    for node in quasi_classical_nodes(model) {
        let forced = model.force(node, &full).unwrap();
        let local = model.local_truth(node, &full, None).unwrap();
        ensure(forced == local, || format!("{full} at {node}: forcing {forced}, local {local}"))?;
        if all_quasi {
            let classical = model.classical_truth(node, &full, None).unwrap();
            ensure(forced == classical, || format!("{full} at {node}: forcing {forced}, classical {classical}"))?;
        }
    }
    Ok(())
}

const PRESERVED: [FrameProperty; 3] =
    [FrameProperty::SemiPerfect, FrameProperty::Perfect, FrameProperty::QuasiClassical];

/// The Smoryński extension below an `A^□↓`-sound quasi-classical node keeps
/// local truth of every subformula of `A^□↓`, under the model's own atoms
/// and under every boolean assignment. The extension is taken of the
/// submodel generated by the node, so that it stays a tree.
pub fn smorynski_preserves(model: &KripkeModel, a: &Formula) -> Check {
    let down = box_down(a);
    let sub = subformulas(&down);
    let atoms: Vec<Atom> = down.atoms().into_iter().collect();
    for alpha in quasi_classical_nodes(model) {
        if !model.is_sound_for(alpha, &down).unwrap() {
            continue;
        }
        let (generated, _) = generated_submodel(model, alpha).unwrap();
        let (extended, fresh) = smorynski_extend(&generated, NodeId(0)).unwrap();
        ensure(has(&extended, FrameProperty::QuasiClassicalAt(fresh), fresh), || {
            format!("copy of {alpha} is not quasi-classical")
        })?;
        ensure(extended.is_sound_for(fresh, &down).unwrap(), || format!("copy of {alpha} is not {down}-sound"))?;
        for prop in PRESERVED {
            if has(&generated, prop.clone(), NodeId(0)) {
                ensure(has(&extended, prop.clone(), fresh), || format!("extension at {alpha} loses {prop}"))?;
            }
        }
        for b in sub.iter() {
            let before = model.local_truth(alpha, b, None).unwrap();
            let after = extended.local_truth(fresh, b, None).unwrap();
            ensure(before == after, || format!("local truth of {b} changes at {alpha}"))?;
            for i in assignments(&atoms) {
                let before = model.local_truth(alpha, b, Some(&i)).unwrap();
                let after = extended.local_truth(fresh, b, Some(&i)).unwrap();
                ensure(before == after, || format!("local truth of {b} under {:?} changes at {alpha}", i.truth))?;
            }
        }
    }
    Ok(())
}

/// Collapsing the `⊏`-accessible nodes keeps forcing of `A^□↓` outside them.
pub fn tilde_preserves(model: &KripkeModel, a: &Formula) -> Check {
    let down = box_down(a);
    let collapsed = tilde(model);
    let (before, after) = (model.force_all(&down), collapsed.force_all(&down));
    let suc = model.suc();
    for node in (0..model.len()).filter(|n| !suc.contains(n)) {
        ensure(before[node] == after[node], || {
            format!("{down} at {node}: {} before tilde, {} after", before[node], after[node])
        })?;
    }
    Ok(())
}

pub fn unravel_preserves(model: &KripkeModel, a: &Formula) -> Check {
    for mode in [UnravelMode::Plain, UnravelMode::Branching] {
        let unravelled = unravel(model, NodeId(0), mode).unwrap();
        for b in subformulas(a).iter() {
            let (source, tree) = (model.force_all(b), unravelled.model.force_all(b));
            for (r, origin) in unravelled.origin.iter().enumerate() {
                ensure(tree[r] == source[origin.0], || format!("{b} differs at sequence {r} ({mode:?})"))?;
            }
        }
    }
    Ok(())
}

/// All of the above on one model and formula; models that are not
/// semi-perfect are skipped by the lemmas needing it.
pub fn all_lemmas(model: &KripkeModel, a: &Formula) -> Check {
    forcing_is_monotone(model, a)?;
    truth_forcing_collapse(model, a)?;
    smorynski_preserves(model, a)?;
    if has(model, FrameProperty::SucQuasiClassical, NodeId(0)) {
        tilde_preserves(model, a)?;
    }
    unravel_preserves(model, a)
}
