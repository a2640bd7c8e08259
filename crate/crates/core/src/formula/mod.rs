//! Modal propositional formulas: the AST, structural queries, substitution,
//! syntactic classes and the boolean normal forms shared by every other
//! module.

mod classes;
mod generate;
mod normal;
mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub use classes::{classify, is_nnil, is_noi, is_tnnil, is_tnnil_box, rho, Classes, SyntacticClass};
pub use generate::{count_with_connectives, formulas_with_connectives, random_box_free, random_formula};
pub use normal::{
    boolean_equivalent, boxed_decomposition, impl_normal_form, impl_normal_form_with_limit, is_boolean_tautology,
    BoxedDecomposition, LiteralLimit, DEFAULT_LITERAL_LIMIT,
};
pub use parse::{parse, ParseError};

/// A propositional variable. Names starting with `$` are reserved for
/// internally generated atoms and are rejected by the parser.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Self {
        Atom(Arc::from(name))
    }

    /// The `index`-th reserved atom, `$index`.
    pub fn fresh(index: usize) -> Self {
        Atom(Arc::from(format!("${index}").as_str()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_reserved(&self) -> bool {
        self.0.starts_with('$')
    }

    fn reserved_index(&self) -> Option<usize> {
        self.0.strip_prefix('$').and_then(|s| s.parse().ok())
    }
}

impl serde::Serialize for Atom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> serde::Deserialize<'de> for Atom {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let name = <String as serde::Deserialize>::deserialize(d)?;
        Ok(Atom::new(&name))
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A formula of the propositional modal language with a single box.
///
/// Negation and the reflexive box are not cases of their own:
/// [`Formula::neg`] builds `A -> false` and [`Formula::boxdot`] builds
/// `A /\ []A`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bot,
    Top,
    Atom(Atom),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(Atom::new(name))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn boxed(a: Formula) -> Self {
        Formula::Box(Arc::new(a))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Self {
        Formula::imp(a, Formula::Bot)
    }

    pub fn boxdot(a: Formula) -> Self {
        Formula::and(a.clone(), Formula::boxed(a))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// Left-nested conjunction; the empty conjunction is `true`.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; the empty disjunction is `false`.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bot)
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::Bot | Formula::Top)
    }

    pub fn is_boxed(&self) -> bool {
        matches!(self, Formula::Box(_))
    }

    /// The operand of `~A`, if this formula is `A -> false`.
    pub fn as_neg(&self) -> Option<&Formula> {
        match self {
            Formula::Imp(a, b) if **b == Formula::Bot => Some(a),
            _ => None,
        }
    }

    /// Number of connectives (`/\`, `\/`, `->`, `[]`).
    pub fn size(&self) -> usize {
        match self {
            Formula::Bot | Formula::Top | Formula::Atom(_) => 0,
            Formula::Box(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Maximum nesting depth of boxes.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Bot | Formula::Top | Formula::Atom(_) => 0,
            Formula::Box(a) => 1 + a.modal_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.modal_depth().max(b.modal_depth()),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Bot | Formula::Top => {}
            Formula::Box(a) => a.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Boxed subformulas `[]B` that are not inside another box, left to right.
    pub fn maximal_boxes(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        self.collect_maximal_boxes(&mut out);
        out
    }

    fn collect_maximal_boxes(&self, out: &mut Vec<Formula>) {
        match self {
            Formula::Box(_) => out.push(self.clone()),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_maximal_boxes(out);
                b.collect_maximal_boxes(out);
            }
            _ => {}
        }
    }

    /// Rebuilds a binary node of the same kind as `self` with new children.
    pub(crate) fn rebuild(&self, a: Formula, b: Formula) -> Formula {
        match self {
            Formula::And(..) => Formula::and(a, b),
            Formula::Or(..) => Formula::or(a, b),
            Formula::Imp(..) => Formula::imp(a, b),
            _ => unreachable!("rebuild on a non-binary formula"),
        }
    }

    /// The smallest `n` such that no atom `$m` with `m >= n` occurs.
    pub(crate) fn next_reserved_index(&self) -> usize {
        self.atoms().iter().filter_map(Atom::reserved_index).map(|i| i + 1).max().unwrap_or(0)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite set of formulas closed under taking subformulas.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AdequateSet {
    members: BTreeSet<Formula>,
}

impl AdequateSet {
    /// Closes an arbitrary collection of formulas under subformulas.
    pub fn closure<'a, I: IntoIterator<Item = &'a Formula>>(formulas: I) -> Self {
        let mut members = BTreeSet::new();
        for f in formulas {
            insert_subformulas(f, &mut members);
        }
        AdequateSet { members }
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.members.contains(f)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.members.iter()
    }

    /// The boxed members `[]B`.
    pub fn boxed(&self) -> impl Iterator<Item = &Formula> {
        self.members.iter().filter(|f| f.is_boxed())
    }
}

impl<'a> IntoIterator for &'a AdequateSet {
    type Item = &'a Formula;
    type IntoIter = std::collections::btree_set::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

fn insert_subformulas(f: &Formula, out: &mut BTreeSet<Formula>) {
    if !out.insert(f.clone()) {
        return;
    }
    match f {
        Formula::Box(a) => insert_subformulas(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            insert_subformulas(a, out);
            insert_subformulas(b, out);
        }
        _ => {}
    }
}

/// The set of all subformulas of `a`, including `a` itself.
pub fn subformulas(a: &Formula) -> AdequateSet {
    AdequateSet::closure([a])
}

/// A map from atoms to formulas; atoms outside its domain are left alone.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Substitution {
    map: BTreeMap<Atom, Formula>,
}

impl Substitution {
    pub fn identity() -> Self {
        Substitution::default()
    }

    pub fn with(mut self, atom: Atom, image: Formula) -> Self {
        self.map.insert(atom, image);
        self
    }

    pub fn insert(&mut self, atom: Atom, image: Formula) {
        self.map.insert(atom, image);
    }

    pub fn get(&self, atom: &Atom) -> Option<&Formula> {
        self.map.get(atom)
    }

    pub fn domain(&self) -> impl Iterator<Item = &Atom> {
        self.map.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &Formula)> {
        self.map.iter()
    }

    pub fn apply(&self, a: &Formula) -> Formula {
        apply(self, a)
    }
}

impl FromIterator<(Atom, Formula)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Atom, Formula)>>(iter: I) -> Self {
        Substitution { map: iter.into_iter().collect() }
    }
}

/// Homomorphic replacement of atoms.
pub fn apply(sigma: &Substitution, a: &Formula) -> Formula {
    match a {
        Formula::Atom(p) => sigma.get(p).cloned().unwrap_or_else(|| a.clone()),
        Formula::Bot | Formula::Top => a.clone(),
        Formula::Box(b) => Formula::boxed(apply(sigma, b)),
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Imp(x, y) => a.rebuild(apply(sigma, x), apply(sigma, y)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn subformulas_of_boxed_implication() {
        let sub = subformulas(&p("[](p -> q)"));
        let expected: Vec<Formula> = ["[](p -> q)", "p -> q", "p", "q"].iter().map(|s| p(s)).collect();
        assert_eq!(sub.len(), 4);
        for e in &expected {
            assert!(sub.contains(e), "missing {e}");
        }
    }

    #[test]
    fn subformulas_share_repeated_parts() {
        let sub = subformulas(&p("[]p /\\ p"));
        assert_eq!(sub.len(), 3);
        assert!(sub.contains(&p("[]p")) && sub.contains(&p("p")));
    }

    #[test]
    fn substitution_examples() {
        let s = Substitution::identity().with(Atom::new("p"), p("[]q"));
        assert_eq!(apply(&s, &p("p /\\ p")), p("[]q /\\ []q"));
        assert_eq!(apply(&Substitution::identity(), &p("[](p -> q)")), p("[](p -> q)"));
        let swap = Substitution::identity().with(Atom::new("p"), p("q")).with(Atom::new("q"), p("p"));
        assert_eq!(apply(&swap, &p("p -> q")), p("q -> p"));
    }

    #[test]
    fn size_counts_connectives() {
        assert_eq!(p("p").size(), 0);
        assert_eq!(p("~p").size(), 1);
        assert_eq!(p("boxdot p").size(), 2);
        assert_eq!(p("[](p -> q) /\\ r").size(), 3);
    }
}
