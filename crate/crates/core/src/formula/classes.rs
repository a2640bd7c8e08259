use std::fmt;

use serde::{Deserialize, Serialize};

use super::Formula;

/// Implication-nesting complexity: boxes, atoms and constants count 0,
/// `/\` and `\/` take the maximum, and an implication adds one on the left.
pub fn rho(a: &Formula) -> usize {
    match a {
        Formula::Bot | Formula::Top | Formula::Atom(_) | Formula::Box(_) => 0,
        Formula::And(x, y) | Formula::Or(x, y) => rho(x).max(rho(y)),
        Formula::Imp(x, y) => (rho(x) + 1).max(rho(y)),
    }
}

/// No implication occurs outside the scope of a box.
pub fn is_noi(a: &Formula) -> bool {
    match a {
        Formula::Bot | Formula::Top | Formula::Atom(_) | Formula::Box(_) => true,
        Formula::And(x, y) | Formula::Or(x, y) => is_noi(x) && is_noi(y),
        Formula::Imp(..) => false,
    }
}

/// No nested implications to the left. Decided structurally, independently
/// of [`rho`], so the two can be cross-checked.
pub fn is_nnil(a: &Formula) -> bool {
    match a {
        Formula::Bot | Formula::Top | Formula::Atom(_) | Formula::Box(_) => true,
        Formula::And(x, y) | Formula::Or(x, y) => is_nnil(x) && is_nnil(y),
        // rho(x) = 0 exactly when x has no implication outside boxes
        Formula::Imp(x, y) => is_noi(x) && is_nnil(y),
    }
}

/// The thoroughly-NNIL class: closed under `/\`, `\/`, `[]`, and under `->`
/// when the antecedent is NOI.
pub fn is_tnnil(a: &Formula) -> bool {
    match a {
        Formula::Bot | Formula::Top | Formula::Atom(_) => true,
        Formula::Box(x) => is_tnnil(x),
        Formula::And(x, y) | Formula::Or(x, y) => is_tnnil(x) && is_tnnil(y),
        Formula::Imp(x, y) => is_noi(x) && is_tnnil(x) && is_tnnil(y),
    }
}

/// Arbitrary boolean combinations of boxed TNNIL formulas (and atoms).
pub fn is_tnnil_box(a: &Formula) -> bool {
    a.maximal_boxes().iter().all(|b| match b {
        Formula::Box(body) => is_tnnil(body),
        _ => unreachable!(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SyntacticClass {
    Noi,
    Nnil,
    Tnnil,
    TnnilBox,
}

impl SyntacticClass {
    pub const ALL: [SyntacticClass; 4] =
        [SyntacticClass::Noi, SyntacticClass::Nnil, SyntacticClass::Tnnil, SyntacticClass::TnnilBox];

    pub fn name(self) -> &'static str {
        match self {
            SyntacticClass::Noi => "NOI",
            SyntacticClass::Nnil => "NNIL",
            SyntacticClass::Tnnil => "TNNIL",
            SyntacticClass::TnnilBox => "TNNIL_BOX",
        }
    }
}

impl fmt::Display for SyntacticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Membership flags for the four syntactic classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Classes {
    pub noi: bool,
    pub nnil: bool,
    pub tnnil: bool,
    pub tnnil_box: bool,
}

impl Classes {
    pub fn contains(&self, class: SyntacticClass) -> bool {
        match class {
            SyntacticClass::Noi => self.noi,
            SyntacticClass::Nnil => self.nnil,
            SyntacticClass::Tnnil => self.tnnil,
            SyntacticClass::TnnilBox => self.tnnil_box,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = SyntacticClass> + '_ {
        SyntacticClass::ALL.into_iter().filter(|c| self.contains(*c))
    }
}

impl fmt::Display for Classes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(SyntacticClass::name).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

pub fn classify(a: &Formula) -> Classes {
    Classes { noi: is_noi(a), nnil: is_nnil(a), tnnil: is_tnnil(a), tnnil_box: is_tnnil_box(a) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&p("[]((p -> q) -> r)")), 0);
        assert_eq!(rho(&p("(p -> q) -> r")), 2);
        assert_eq!(rho(&p("p \\/ (q -> r)")), 1);
    }

    #[test]
    fn classify_examples() {
        let all = Classes { noi: true, nnil: true, tnnil: true, tnnil_box: true };
        assert_eq!(classify(&p("[](p -> q)")), all);
        assert_eq!(classify(&p("(p -> q) -> r")), Classes { tnnil_box: true, ..Classes::default() });
        assert_eq!(classify(&p("p \\/ q")), all);
        // TNNIL only admits NOI antecedents, even inside boxes.
        assert_eq!(classify(&p("[]((p -> q) -> r)")), Classes { noi: true, nnil: true, ..Classes::default() });
    }
}
