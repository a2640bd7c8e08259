//! Boolean structure over boxed parts: the box-free skeleton of a formula and
//! its canonical conjunction-of-implications normal form.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use super::{Atom, Formula, Substitution};

/// Default cap on the number of literals `impl_normal_form` will tabulate.
pub const DEFAULT_LITERAL_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("normal form needs {found} literals, above the limit of {limit}")]
pub struct LiteralLimit {
    pub found: usize,
    pub limit: usize,
}

/// `formula == skeleton[atoms[i] := []parts[i]]`, with `skeleton` box-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxedDecomposition {
    pub skeleton: Formula,
    /// Fresh reserved atoms, one per distinct maximal boxed subformula.
    pub atoms: Vec<Atom>,
    /// Bodies of the maximal boxed subformulas, by leftmost first occurrence.
    pub parts: Vec<Formula>,
}

impl BoxedDecomposition {
    /// Substitutes `[]parts[i]` back for `atoms[i]`.
    pub fn recompose(&self) -> Formula {
        self.recompose_with(|_, body| Formula::boxed(body.clone()))
    }

    /// Substitutes `image(i, parts[i])` for `atoms[i]`.
    pub fn recompose_with(&self, mut image: impl FnMut(usize, &Formula) -> Formula) -> Formula {
        let sigma: Substitution =
            self.atoms.iter().zip(&self.parts).enumerate().map(|(i, (a, b))| (a.clone(), image(i, b))).collect();
        sigma.apply(&self.skeleton)
    }
}

pub fn boxed_decomposition(a: &Formula) -> BoxedDecomposition {
    let first = a.next_reserved_index();
    let mut index: BTreeMap<Formula, usize> = BTreeMap::new();
    let mut parts = Vec::new();
    for b in a.maximal_boxes() {
        if !index.contains_key(&b) {
            index.insert(b.clone(), parts.len());
            let Formula::Box(body) = &b else { unreachable!() };
            parts.push((**body).clone());
        }
    }
    let atoms: Vec<Atom> = (0..parts.len()).map(|i| Atom::fresh(first + i)).collect();
    let skeleton = abstract_boxes(a, &|b| Formula::Atom(atoms[index[b]].clone()));
    BoxedDecomposition { skeleton, atoms, parts }
}

fn abstract_boxes(a: &Formula, leaf: &dyn Fn(&Formula) -> Formula) -> Formula {
    match a {
        Formula::Box(_) => leaf(a),
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Imp(x, y) => {
            a.rebuild(abstract_boxes(x, leaf), abstract_boxes(y, leaf))
        }
        _ => a.clone(),
    }
}

/// Canonical order on literals: `false < true < atoms < boxed`, atoms by
/// name and boxed formulas by printed form.
fn literal_order(x: &Formula, y: &Formula) -> Ordering {
    fn rank(f: &Formula) -> (u8, String) {
        match f {
            Formula::Bot => (0, String::new()),
            Formula::Top => (1, String::new()),
            Formula::Atom(p) => (2, p.name().to_string()),
            other => (3, other.to_string()),
        }
    }
    rank(x).cmp(&rank(y))
}

/// Atoms and maximal boxed subformulas, in canonical literal order.
fn literals(a: &Formula) -> Vec<Formula> {
    let mut out: Vec<Formula> = a.maximal_boxes();
    out.extend(collect_outer_atoms(a));
    out.sort_by(literal_order);
    out.dedup();
    out
}

fn collect_outer_atoms(a: &Formula) -> Vec<Formula> {
    match a {
        Formula::Atom(_) => vec![a.clone()],
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Imp(x, y) => {
            let mut v = collect_outer_atoms(x);
            v.extend(collect_outer_atoms(y));
            v
        }
        _ => Vec::new(),
    }
}

fn eval(a: &Formula, lits: &[Formula], row: u32) -> bool {
    match a {
        Formula::Bot => false,
        Formula::Top => true,
        Formula::Atom(_) | Formula::Box(_) => {
            let i = lits.iter().position(|l| l == a).expect("literal table covers the formula");
            row >> i & 1 == 1
        }
        Formula::And(x, y) => eval(x, lits, row) && eval(y, lits, row),
        Formula::Or(x, y) => eval(x, lits, row) || eval(y, lits, row),
        Formula::Imp(x, y) => !eval(x, lits, row) || eval(y, lits, row),
    }
}

/// A conjunction of literal assignments: `care` selects the literals that
/// occur, `value` gives their polarity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Cube {
    care: u32,
    value: u32,
}

/// Prime implicants of the set of rows, by Quine-McCluskey merging.
fn prime_implicants(rows: &[u32], width: usize) -> Vec<Cube> {
    let full = if width == 32 { u32::MAX } else { (1u32 << width) - 1 };
    let mut level: HashSet<Cube> = rows.iter().map(|&r| Cube { care: full, value: r }).collect();
    let mut primes = Vec::new();
    while !level.is_empty() {
        let mut next = HashSet::new();
        let mut merged = HashSet::new();
        for c in &level {
            for bit in 0..width {
                let m = 1u32 << bit;
                if c.care & m == 0 {
                    continue;
                }
                let partner = Cube { care: c.care, value: c.value ^ m };
                if level.contains(&partner) {
                    merged.insert(*c);
                    next.insert(Cube { care: c.care & !m, value: c.value & !m });
                }
            }
        }
        primes.extend(level.iter().filter(|c| !merged.contains(c)).copied());
        level = next;
    }
    primes
}

/// An equivalent (treating atoms and maximal boxed subformulas as opaque
/// literals) conjunction of clauses `E -> F`, where `E` is a conjunction and
/// `F` a disjunction of literals. The clauses are exactly the prime
/// implicates, so the output is canonical.
pub fn impl_normal_form(a: &Formula) -> Result<Formula, LiteralLimit> {
    impl_normal_form_with_limit(a, DEFAULT_LITERAL_LIMIT)
}

pub fn impl_normal_form_with_limit(a: &Formula, limit: usize) -> Result<Formula, LiteralLimit> {
    let lits = literals(a);
    let limit = limit.min(24);
    if lits.len() > limit {
        return Err(LiteralLimit { found: lits.len(), limit });
    }
    let width = lits.len();
    let falsifying: Vec<u32> = (0..1u32 << width).filter(|&row| !eval(a, &lits, row)).collect();
    // A prime implicant of the negation is a minimal falsifying cube; its
    // complement is a prime implicate clause: literals true in the cube go
    // to the antecedent, false ones to the consequent.
    let mut clauses: Vec<(Vec<usize>, Vec<usize>)> = prime_implicants(&falsifying, width)
        .into_iter()
        .map(|cube| {
            let bits = (0..width).filter(|i| cube.care >> i & 1 == 1);
            let (pos, neg): (Vec<usize>, Vec<usize>) = bits.partition(|i| cube.value >> i & 1 == 1);
            (pos, neg)
        })
        .collect();
    clauses.sort();
    Ok(Formula::conj(clauses.into_iter().map(|(ante, cons)| {
        Formula::imp(
            Formula::conj(ante.iter().map(|&i| lits[i].clone())),
            Formula::disj(cons.iter().map(|&i| lits[i].clone())),
        )
    })))
}

/// Truth-table equivalence with maximal boxed subformulas as opaque
/// literals. Used as an independent check of the normal forms.
pub fn boolean_equivalent(a: &Formula, b: &Formula) -> bool {
    let both = Formula::and(a.clone(), b.clone());
    let lits = literals(&both);
    assert!(lits.len() <= 24, "truth table too wide");
    (0..1u32 << lits.len()).all(|row| eval(a, &lits, row) == eval(b, &lits, row))
}

/// Truth-table validity with maximal boxed subformulas as opaque literals.
pub fn is_boolean_tautology(a: &Formula) -> bool {
    boolean_equivalent(a, &Formula::Top)
}
