//! The bracket operator, the best-NNIL-approximation algorithm and the
//! TNNIL approximations built on it.

use std::collections::HashMap;

use super::TranslateError;
use crate::formula::{boxed_decomposition, Formula};

/// Default step budget for one approximation call.
pub const DEFAULT_FUEL: usize = 1_000_000;

/// Replaces every occurrence of `target` in `a` that is not under a box by
/// `replacement`. Occurrences inside a replaced occurrence are not revisited.
pub fn replace_outer(a: &Formula, target: &Formula, replacement: &Formula) -> Formula {
    if a == target {
        return replacement.clone();
    }
    match a {
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Imp(x, y) => {
            a.rebuild(replace_outer(x, target, replacement), replace_outer(y, target, replacement))
        }
        _ => a.clone(),
    }
}

/// `[A]B`: identity on atomic and boxed `B`, commutes with `/\` and `\/`, and
/// for `B = B1 -> B2` yields `A' -> B` where `A'` is `A` with each outer
/// occurrence of `B` replaced by `B2`.
pub fn bracket(a: &Formula, b: &Formula) -> Formula {
    match b {
        Formula::Bot | Formula::Top | Formula::Atom(_) | Formula::Box(_) => b.clone(),
        Formula::And(x, y) | Formula::Or(x, y) => b.rebuild(bracket(a, x), bracket(a, y)),
        Formula::Imp(_, consequent) => Formula::imp(replace_outer(a, b, consequent), b.clone()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Junction {
    And,
    Or,
}

/// Finds the first (pre-order) occurrence of the given junction that is
/// neither under an implication nor under a box, and returns the formula with
/// that occurrence replaced by its left and by its right operand.
fn split_outer(c: &Formula, junction: Junction) -> Option<(Formula, Formula)> {
    match (c, junction) {
        (Formula::And(x, y), Junction::And) | (Formula::Or(x, y), Junction::Or) => Some(((**x).clone(), (**y).clone())),
        (Formula::And(x, y), _) | (Formula::Or(x, y), _) => {
            if let Some((l, r)) = split_outer(x, junction) {
                return Some((c.rebuild(l, (**y).clone()), c.rebuild(r, (**y).clone())));
            }
            split_outer(y, junction).map(|(l, r)| (c.rebuild((**x).clone(), l), c.rebuild((**x).clone(), r)))
        }
        _ => None,
    }
}

/// The conjuncts of a `/\`-tree, without repetitions, in left-to-right order.
fn conjuncts(b: &Formula) -> Vec<Formula> {
    fn go(b: &Formula, out: &mut Vec<Formula>) {
        match b {
            Formula::And(x, y) => {
                go(x, out);
                go(y, out);
            }
            _ if !out.contains(b) => out.push(b.clone()),
            _ => {}
        }
    }
    let mut out = Vec::new();
    go(b, &mut out);
    out
}

fn push_unique(v: &mut Vec<Formula>, f: Formula) {
    if !v.contains(&f) {
        v.push(f);
    }
}

pub(crate) struct Star {
    memo: HashMap<Formula, Formula>,
    fuel: usize,
    spent: usize,
}

impl Star {
    pub(crate) fn new(fuel: usize) -> Self {
        Star { memo: HashMap::new(), fuel, spent: 0 }
    }

    pub(crate) fn star(&mut self, a: &Formula) -> Result<Formula, TranslateError> {
        if let Some(done) = self.memo.get(a) {
            return Ok(done.clone());
        }
        self.spent += 1;
        if self.spent > self.fuel {
            return Err(TranslateError::OutOfFuel(self.fuel));
        }
        let result = match a {
            Formula::Bot | Formula::Top | Formula::Atom(_) | Formula::Box(_) => a.clone(),
            Formula::And(x, y) => Formula::and(self.star(x)?, self.star(y)?),
            Formula::Or(x, y) => Formula::or(self.star(x)?, self.star(y)?),
            Formula::Imp(b, c) => self.star_implication(b, c)?,
        };
        self.memo.insert(a.clone(), result.clone());
        Ok(result)
    }

    /// `(/\X -> C)*`, reading an empty or `{true}` antecedent as absent.
    fn star_guarded(&mut self, antecedent: Vec<Formula>, c: &Formula) -> Result<Formula, TranslateError> {
        if antecedent.is_empty() || antecedent == [Formula::Top] {
            return self.star(c);
        }
        self.star(&Formula::imp(Formula::conj(antecedent), c.clone()))
    }

    fn star_implication(&mut self, b: &Formula, c: &Formula) -> Result<Formula, TranslateError> {
        // Split an outer conjunction of the consequent.
        if let Some((c1, c2)) = split_outer(c, Junction::And) {
            let left = self.star(&Formula::imp(b.clone(), c1))?;
            let right = self.star(&Formula::imp(b.clone(), c2))?;
            return Ok(Formula::and(left, right));
        }
        // Split an outer disjunction of the antecedent.
        if let Some((b1, b2)) = split_outer(b, Junction::Or) {
            let left = self.star(&Formula::imp(b1, c.clone()))?;
            let right = self.star(&Formula::imp(b2, c.clone()))?;
            return Ok(Formula::and(left, right));
        }
        let xs = conjuncts(b);
        if let Some(e) = xs.iter().find(|x| matches!(x, Formula::Atom(_) | Formula::Box(_))).cloned() {
            let rest: Vec<Formula> = xs.into_iter().filter(|x| *x != e).collect();
            return Ok(Formula::imp(e, self.star_guarded(rest, c)?));
        }
        if xs.contains(&Formula::Top) {
            let rest: Vec<Formula> = xs.into_iter().filter(|x| *x != Formula::Top).collect();
            return self.star_guarded(rest, c);
        }
        if xs.contains(&Formula::Bot) {
            return Ok(Formula::Top);
        }
        // An implication consequent is curried into the antecedent. Without
        // this, the bracket of the antecedent on the consequent below gives
        // back the input itself whenever the consequent is not outer in it.
        if let Formula::Imp(c1, c2) = c {
            let mut widened = xs;
            push_unique(&mut widened, (**c1).clone());
            return self.star_guarded(widened, c2);
        }
        // Only implications remain in the antecedent.
        let mut left = Vec::with_capacity(xs.len());
        let mut premises = Vec::with_capacity(xs.len() + 1);
        for d in &xs {
            let Formula::Imp(e, f) = d else { unreachable!("antecedent conjuncts are implications here") };
            let mut lowered = Vec::with_capacity(xs.len());
            for x in &xs {
                push_unique(&mut lowered, if x == d { (**f).clone() } else { x.clone() });
            }
            left.push(self.star_guarded(lowered, c)?);
            push_unique(&mut premises, (**e).clone());
        }
        push_unique(&mut premises, c.clone());
        let mut right = Vec::with_capacity(premises.len());
        for e in &premises {
            right.push(self.star(&bracket(b, e))?);
        }
        Ok(Formula::and(Formula::conj(left), Formula::disj(right)))
    }

    /// `A+`: the star of the box-free skeleton with each boxed part
    /// recursively approximated.
    pub(crate) fn plus(&mut self, a: &Formula) -> Result<Formula, TranslateError> {
        let d = boxed_decomposition(a);
        let mut bodies = Vec::with_capacity(d.parts.len());
        for body in &d.parts {
            bodies.push(self.plus(body)?);
        }
        let skeleton = self.star(&d.skeleton)?;
        let sigma = d.atoms.iter().cloned().zip(bodies.into_iter().map(Formula::boxed)).collect();
        Ok(crate::formula::apply(&sigma, &skeleton))
    }
}

/// The best NNIL approximation from below.
pub fn nnil_star(a: &Formula) -> Result<Formula, TranslateError> {
    nnil_star_with_fuel(a, DEFAULT_FUEL)
}

pub fn nnil_star_with_fuel(a: &Formula, fuel: usize) -> Result<Formula, TranslateError> {
    Star::new(fuel).star(a)
}

/// The TNNIL approximation `A+`.
pub fn tnnil_plus(a: &Formula) -> Result<Formula, TranslateError> {
    Star::new(DEFAULT_FUEL).plus(a)
}

/// `A-`: the top-level skeleton kept as is, each boxed part replaced by its
/// TNNIL approximation.
pub fn tnnil_minus(a: &Formula) -> Result<Formula, TranslateError> {
    let mut star = Star::new(DEFAULT_FUEL);
    let d = boxed_decomposition(a);
    let mut bodies = Vec::with_capacity(d.parts.len());
    for body in &d.parts {
        bodies.push(star.plus(body)?);
    }
    Ok(d.recompose_with(|i, _| Formula::boxed(bodies[i].clone())))
}
