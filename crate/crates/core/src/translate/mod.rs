//! Syntactic translations between modal formulas.

mod nnil;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{boxed_decomposition, impl_normal_form, is_noi, Formula, LiteralLimit};

pub use nnil::{bracket, nnil_star, nnil_star_with_fuel, replace_outer, tnnil_minus, tnnil_plus, DEFAULT_FUEL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("approximation ran out of fuel after {0} steps")]
    OutOfFuel(usize),
    #[error(transparent)]
    LiteralLimit(#[from] LiteralLimit),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TranslationKind {
    Leivant,
    BoxFull,
    BoxUp,
    BoxDown,
    NegFull,
    NegUp,
    NegDown,
    NnilStar,
    TnnilPlus,
    TnnilMinus,
    Dagger,
    DDagger,
}

impl TranslationKind {
    pub const ALL: [TranslationKind; 12] = [
        TranslationKind::Leivant,
        TranslationKind::BoxFull,
        TranslationKind::BoxUp,
        TranslationKind::BoxDown,
        TranslationKind::NegFull,
        TranslationKind::NegUp,
        TranslationKind::NegDown,
        TranslationKind::NnilStar,
        TranslationKind::TnnilPlus,
        TranslationKind::TnnilMinus,
        TranslationKind::Dagger,
        TranslationKind::DDagger,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TranslationKind::Leivant => "leivant",
            TranslationKind::BoxFull => "box-full",
            TranslationKind::BoxUp => "box-up",
            TranslationKind::BoxDown => "box-down",
            TranslationKind::NegFull => "neg-full",
            TranslationKind::NegUp => "neg-up",
            TranslationKind::NegDown => "neg-down",
            TranslationKind::NnilStar => "nnil-star",
            TranslationKind::TnnilPlus => "tnnil-plus",
            TranslationKind::TnnilMinus => "tnnil-minus",
            TranslationKind::Dagger => "dagger",
            TranslationKind::DDagger => "ddagger",
        }
    }

    pub fn apply(self, a: &Formula) -> Result<Formula, TranslateError> {
        Ok(match self {
            TranslationKind::Leivant => leivant(a),
            TranslationKind::BoxFull => box_translate(a, BoxKind::Full),
            TranslationKind::BoxUp => box_translate(a, BoxKind::Up),
            TranslationKind::BoxDown => box_translate(a, BoxKind::Down),
            TranslationKind::NegFull => neg_translate(a, NegKind::Full),
            TranslationKind::NegUp => neg_translate(a, NegKind::Up),
            TranslationKind::NegDown => neg_translate(a, NegKind::Down),
            TranslationKind::NnilStar => nnil_star(a)?,
            TranslationKind::TnnilPlus => tnnil_plus(a)?,
            TranslationKind::TnnilMinus => tnnil_minus(a)?,
            TranslationKind::Dagger => dagger(a)?,
            TranslationKind::DDagger => ddagger(a)?,
        })
    }
}

impl fmt::Display for TranslationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown translation '{0}'")]
pub struct UnknownTranslation(pub String);

impl FromStr for TranslationKind {
    type Err = UnknownTranslation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TranslationKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| UnknownTranslation(s.to_string()))
    }
}

/// Inserts `boxdot` in front of disjuncts and descends into consequents of
/// implications whose antecedent is NOI.
pub fn leivant(a: &Formula) -> Formula {
    match a {
        Formula::Bot | Formula::Top | Formula::Atom(_) | Formula::Box(_) => a.clone(),
        Formula::And(x, y) => Formula::and(leivant(x), leivant(y)),
        Formula::Or(x, y) => Formula::or(Formula::boxdot(leivant(x)), Formula::boxdot(leivant(y))),
        Formula::Imp(x, y) if is_noi(x) => Formula::imp((**x).clone(), leivant(y)),
        Formula::Imp(..) => a.clone(),
    }
}

/// The three members of the box-translation family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoxKind {
    /// Boxdot on atoms and implications, recursing under boxes.
    Full,
    /// Like `Full`, but boxed subformulas are left alone.
    Up,
    /// Atoms and implications untouched; boxed bodies get `Full`.
    Down,
}

pub fn box_translate(a: &Formula, which: BoxKind) -> Formula {
    match a {
        Formula::Bot | Formula::Top | Formula::Atom(_) => match which {
            BoxKind::Full | BoxKind::Up => Formula::boxdot(a.clone()),
            BoxKind::Down => a.clone(),
        },
        Formula::Box(body) => match which {
            BoxKind::Up => a.clone(),
            BoxKind::Full | BoxKind::Down => Formula::boxed(box_translate(body, BoxKind::Full)),
        },
        Formula::And(x, y) | Formula::Or(x, y) => a.rebuild(box_translate(x, which), box_translate(y, which)),
        Formula::Imp(x, y) => {
            let imp = Formula::imp(box_translate(x, which), box_translate(y, which));
            match which {
                BoxKind::Full | BoxKind::Up => Formula::boxdot(imp),
                BoxKind::Down => imp,
            }
        }
    }
}

pub fn box_full(a: &Formula) -> Formula {
    box_translate(a, BoxKind::Full)
}

pub fn box_up(a: &Formula) -> Formula {
    box_translate(a, BoxKind::Up)
}

pub fn box_down(a: &Formula) -> Formula {
    box_translate(a, BoxKind::Down)
}

/// The three double-negation translations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NegKind {
    Full,
    Up,
    Down,
}

/// Double-negation insertion. A negation `A -> false` is handled by its own
/// clause before the generic implication clause; `false` and `true` are
/// treated like atoms.
pub fn neg_translate(a: &Formula, which: NegKind) -> Formula {
    let nn = |f: Formula| Formula::neg(Formula::neg(f));
    if let Some(body) = a.as_neg() {
        return Formula::neg(neg_translate(body, which));
    }
    match a {
        Formula::Bot | Formula::Top | Formula::Atom(_) => match which {
            NegKind::Full | NegKind::Up => nn(a.clone()),
            NegKind::Down => a.clone(),
        },
        Formula::Box(body) => match which {
            NegKind::Full => nn(Formula::boxed(neg_translate(body, NegKind::Full))),
            NegKind::Up => nn(a.clone()),
            NegKind::Down => Formula::boxed(neg_translate(body, NegKind::Full)),
        },
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Imp(x, y) => {
            let inner = a.rebuild(neg_translate(x, which), neg_translate(y, which));
            match which {
                NegKind::Full | NegKind::Up => nn(inner),
                NegKind::Down => inner,
            }
        }
    }
}

/// The implication normal form with every maximal boxed subformula `[]E`
/// first rewritten to `[](E‡)`.
pub fn ddagger(a: &Formula) -> Result<Formula, TranslateError> {
    let d = boxed_decomposition(a);
    let mut bodies = Vec::with_capacity(d.parts.len());
    for body in &d.parts {
        bodies.push(ddagger(body)?);
    }
    let inner = d.recompose_with(|i, _| Formula::boxed(bodies[i].clone()));
    Ok(impl_normal_form(&inner)?)
}

/// Commutes with the connectives and sends `[]E` to `[](E‡)`.
pub fn dagger(a: &Formula) -> Result<Formula, TranslateError> {
    Ok(match a {
        Formula::Bot | Formula::Top | Formula::Atom(_) => a.clone(),
        Formula::Box(body) => Formula::boxed(ddagger(body)?),
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Imp(x, y) => a.rebuild(dagger(x)?, dagger(y)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn leivant_examples() {
        assert_eq!(leivant(&p("p \\/ q")), p("boxdot p \\/ boxdot q"));
        assert_eq!(leivant(&p("[]p -> q")), p("[]p -> q"));
        assert_eq!(leivant(&p("(p -> q) -> r")), p("(p -> q) -> r"));
        assert_eq!(leivant(&p("p -> q \\/ r")), p("p -> boxdot q \\/ boxdot r"));
    }

    #[test]
    fn box_examples() {
        assert_eq!(box_full(&p("p")), p("p /\\ []p"));
        assert_eq!(box_down(&p("[]p")), p("[](p /\\ []p)"));
        assert_eq!(box_down(&p("p -> q")), p("p -> q"));
        assert_eq!(box_up(&p("[]p -> q")), p("boxdot([]p -> boxdot q)"));
        assert_eq!(box_full(&p("true")), p("boxdot true"));
    }

    #[test]
    fn neg_examples() {
        assert_eq!(neg_translate(&p("p"), NegKind::Up), p("~~p"));
        assert_eq!(neg_translate(&p("[]p"), NegKind::Down), p("[]~~p"));
        assert_eq!(neg_translate(&p("p /\\ q"), NegKind::Up), p("~~(~~p /\\ ~~q)"));
        assert_eq!(neg_translate(&p("~p"), NegKind::Full), p("~~~p"));
        assert_eq!(neg_translate(&p("[]p"), NegKind::Up), p("~~[]p"));
        assert_eq!(neg_translate(&p("false"), NegKind::Down), p("false"));
    }

    #[test]
    fn dagger_examples() {
        assert_eq!(dagger(&p("p -> q")).unwrap(), p("p -> q"));
        assert_eq!(dagger(&p("[](p \\/ q)")).unwrap(), p("[](true -> p \\/ q)"));
        assert_eq!(ddagger(&p("p")).unwrap(), p("true -> p"));
        assert_eq!(ddagger(&p("[][]p")).unwrap(), p("true -> [](true -> [](true -> p))"));
    }

    #[test]
    fn kind_names_round_trip() {
        for k in TranslationKind::ALL {
            assert_eq!(k.name().parse::<TranslationKind>().unwrap(), k);
        }
        assert!("box".parse::<TranslationKind>().is_err());
    }
}
