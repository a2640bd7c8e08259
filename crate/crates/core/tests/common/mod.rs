//! Shared generators and shorthands for the integration suites.
#![allow(dead_code)]

use proptest::prelude::*;
use provability::engine::{decide_base, decide_ipc, BaseLogic, EngineConfig, Verdict};
use provability::formula::Formula;
use provability::registry::{decide, LogicId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const ATOMS: [&str; 3] = ["p", "q", "r"];

pub fn leaves(atoms: usize) -> Vec<Formula> {
    ATOMS[..atoms].iter().map(|a| Formula::atom(a)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Modal formulas over the first `atoms` atoms, `⊥` and `⊤`, with at most
/// `depth` levels of connectives.
pub fn formula(atoms: usize, depth: u32) -> impl Strategy<Value = Formula> {
    let names = &ATOMS[..atoms];
    let leaf = prop_oneof![
        6 => proptest::sample::select(names).prop_map(Formula::atom),
        1 => Just(Formula::Bot),
        1 => Just(Formula::Top),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::boxed),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    })
}

pub fn box_free(atoms: usize, depth: u32) -> impl Strategy<Value = Formula> {
    let names = &ATOMS[..atoms];
    let leaf = prop_oneof![
        6 => proptest::sample::select(names).prop_map(Formula::atom),
        1 => Just(Formula::Bot),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    })
}

pub fn verdict(logic: LogicId, goal: &Formula) -> Verdict {
    decide(logic, goal).unwrap_or_else(|e| panic!("{logic} on {goal}: {e}")).verdict
}

pub fn base_verdict(base: BaseLogic, goal: &Formula) -> Verdict {
    decide_base(&EngineConfig::new(base), goal).unwrap_or_else(|e| panic!("{base:?} on {goal}: {e}")).verdict
}

pub fn igl_proves(goal: &Formula) -> bool {
    base_verdict(BaseLogic::IntuitionisticGL, goal) == Verdict::Provable
}

pub fn ipc_proves(goal: &Formula) -> bool {
    decide_ipc(goal).unwrap_or_else(|e| panic!("IPC on {goal}: {e}")).is_provable()
}

pub mod coherence;
pub mod lemmas;

/// A formula with exactly `connectives` connectives over `leaves`, uniform
/// among all of them.
pub fn uniform_formula<R: rand::Rng>(rng: &mut R, leaves: &[Formula], connectives: usize) -> Formula {
    use provability::formula::count_with_connectives;
    let count = |k: usize| count_with_connectives(leaves.len(), k);
    if connectives == 0 {
        return leaves[rng.gen_range(0..leaves.len())].clone();
    }
    let total = count(connectives);
    let mut pick = rng.gen_range(0..total);
    let unary = count(connectives - 1);
    if pick < unary {
        return Formula::boxed(uniform_formula(rng, leaves, connectives - 1));
    }
    pick -= unary;
    for left in 0..connectives {
        let right = connectives - 1 - left;
        let block = 3 * count(left) * count(right);
        if pick < block {
            let (a, b) = (uniform_formula(rng, leaves, left), uniform_formula(rng, leaves, right));
            return match pick % 3 {
                0 => Formula::and(a, b),
                1 => Formula::or(a, b),
                _ => Formula::imp(a, b),
            };
        }
        pick -= block;
    }
    unreachable!("the blocks partition the count")
}
