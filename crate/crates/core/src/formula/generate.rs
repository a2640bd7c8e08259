use rand::Rng;

use super::Formula;

/// Every formula with exactly `connectives` occurrences of `□`, `∧`, `∨`
/// and `→` over the given leaves, in a fixed order. Negation counts as the
/// implication it abbreviates.
pub fn formulas_with_connectives(leaves: &[Formula], connectives: usize) -> Vec<Formula> {
    let mut levels: Vec<Vec<Formula>> = vec![leaves.to_vec()];
    for k in 1..=connectives {
        let mut level: Vec<Formula> = levels[k - 1].iter().cloned().map(Formula::boxed).collect();
        for left in 0..k {
            let right = k - 1 - left;
            for a in &levels[left] {
                for b in &levels[right] {
                    level.push(Formula::and(a.clone(), b.clone()));
                    level.push(Formula::or(a.clone(), b.clone()));
                    level.push(Formula::imp(a.clone(), b.clone()));
                }
            }
        }
        levels.push(level);
    }
    levels.swap_remove(connectives)
}

/// How many formulas [`formulas_with_connectives`] returns, without
/// building them.
pub fn count_with_connectives(leaves: usize, connectives: usize) -> u128 {
    let mut counts = vec![leaves as u128];
    for k in 1..=connectives {
        let binary: u128 = (0..k).map(|left| counts[left] * counts[k - 1 - left]).sum();
        counts.push(counts[k - 1] + 3 * binary);
    }
    counts[connectives]
}

/// A random formula with at most `max_connectives` connectives. Leaves are
/// drawn from `leaves`, with `⊥` mixed in at a low rate when `with_bot`.
pub fn random_formula<R: Rng>(rng: &mut R, leaves: &[Formula], max_connectives: usize, with_bot: bool) -> Formula {
    let budget = rng.gen_range(0..=max_connectives);
    build(rng, leaves, budget, with_bot)
}

fn build<R: Rng>(rng: &mut R, leaves: &[Formula], budget: usize, with_bot: bool) -> Formula {
    if budget == 0 {
        if with_bot && rng.gen_ratio(1, 8) {
            return Formula::Bot;
        }
        return leaves[rng.gen_range(0..leaves.len())].clone();
    }
    match rng.gen_range(0..4) {
        0 => Formula::boxed(build(rng, leaves, budget - 1, with_bot)),
        op => {
            let left = rng.gen_range(0..budget);
            let a = build(rng, leaves, left, with_bot);
            let b = build(rng, leaves, budget - 1 - left, with_bot);
            match op {
                1 => Formula::and(a, b),
                2 => Formula::or(a, b),
                _ => Formula::imp(a, b),
            }
        }
    }
}

/// A random formula without boxes.
pub fn random_box_free<R: Rng>(rng: &mut R, leaves: &[Formula], max_connectives: usize) -> Formula {
    fn go<R: Rng>(rng: &mut R, leaves: &[Formula], budget: usize) -> Formula {
        if budget == 0 {
            return leaves[rng.gen_range(0..leaves.len())].clone();
        }
        let left = rng.gen_range(0..budget);
        let (a, b) = (go(rng, leaves, left), go(rng, leaves, budget - 1 - left));
        match rng.gen_range(0..3) {
            0 => Formula::and(a, b),
            1 => Formula::or(a, b),
            _ => Formula::imp(a, b),
        }
    }
    let budget = rng.gen_range(0..=max_connectives);
    go(rng, leaves, budget)
}
