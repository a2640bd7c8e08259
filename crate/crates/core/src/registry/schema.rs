use std::fmt;

use serde::{Deserialize, Serialize};

use crate::formula::Formula;
use crate::translate::{box_full, leivant, tnnil_minus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SchemaTag {
    /// Theorems of intuitionistic propositional logic over the modal
    /// language, represented by a Hilbert basis.
    I,
    K,
    Four,
    Lob,
    /// Completeness principle `A -> []A`.
    CP,
    /// Completeness restricted to atoms.
    CPa,
    /// Reflection `[]A -> A`.
    S,
    /// Complete reflection `[]A -> A^box`.
    Sstar,
    Pem,
    /// Leivant's principle `[](A \/ B) -> [](boxdot A \/ boxdot B)`.
    Le,
    /// `[]A -> [](A^l)` with the Leivant translation.
    LePlus,
    /// Trace principle `[](A -> B) -> (A \/ (A -> B))`.
    TP,
    /// `A <-> A^-`.
    V,
}

/// `Under` is the plain schema, `Over` the box of every instance, `Both`
/// their union.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decoration {
    Under,
    Over,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxiomSchema {
    pub tag: SchemaTag,
    pub decoration: Decoration,
}

impl fmt::Display for AxiomSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.tag {
            SchemaTag::I => "i",
            SchemaTag::K => "K",
            SchemaTag::Four => "4",
            SchemaTag::Lob => "Lob",
            SchemaTag::CP => "CP",
            SchemaTag::CPa => "CPa",
            SchemaTag::S => "S",
            SchemaTag::Sstar => "S*",
            SchemaTag::Pem => "PEM",
            SchemaTag::Le => "Le",
            SchemaTag::LePlus => "Le+",
            SchemaTag::TP => "TP",
            SchemaTag::V => "V",
        };
        match self.decoration {
            Decoration::Under => write!(f, "{name}_"),
            Decoration::Over => write!(f, "{name}^"),
            Decoration::Both => f.write_str(name),
        }
    }
}

impl SchemaTag {
    /// Plain instances with metavariables drawn from `pool`. `CPa` only
    /// takes atoms; `V` skips members whose approximation runs out of fuel.
    pub fn instances(self, pool: &[Formula]) -> Vec<Formula> {
        let unary = |build: &dyn Fn(&Formula) -> Formula| pool.iter().map(build).collect::<Vec<_>>();
        let binary = |build: &dyn Fn(&Formula, &Formula) -> Formula| {
            pool.iter().flat_map(|a| pool.iter().map(move |b| build(a, b))).collect::<Vec<_>>()
        };
        let bx = |a: &Formula| Formula::boxed(a.clone());
        let imp = |a: &Formula, b: &Formula| Formula::imp(a.clone(), b.clone());
        match self {
            SchemaTag::I => {
                let mut out = binary(&|a, b| imp(a, &imp(b, a)));
                for a in pool {
                    for b in pool {
                        for c in pool {
                            out.push(imp(&imp(a, &imp(b, c)), &imp(&imp(a, b), &imp(a, c))));
                            out.push(imp(&imp(a, c), &imp(&imp(b, c), &imp(&Formula::or(a.clone(), b.clone()), c))));
                        }
                    }
                }
                out.extend(binary(&|a, b| imp(&Formula::and(a.clone(), b.clone()), a)));
                out.extend(binary(&|a, b| imp(&Formula::and(a.clone(), b.clone()), b)));
                out.extend(binary(&|a, b| imp(a, &imp(b, &Formula::and(a.clone(), b.clone())))));
                out.extend(binary(&|a, b| imp(a, &Formula::or(a.clone(), b.clone()))));
                out.extend(binary(&|a, b| imp(b, &Formula::or(a.clone(), b.clone()))));
                out.extend(unary(&|a| imp(&Formula::Bot, a)));
                out.push(Formula::Top);
                out
            }
            SchemaTag::K => binary(&|a, b| imp(&bx(&imp(a, b)), &imp(&bx(a), &bx(b)))),
            SchemaTag::Four => unary(&|a| imp(&bx(a), &bx(&bx(a)))),
            SchemaTag::Lob => unary(&|a| imp(&bx(&imp(&bx(a), a)), &bx(a))),
            SchemaTag::CP => unary(&|a| imp(a, &bx(a))),
            SchemaTag::CPa => pool.iter().filter(|a| matches!(a, Formula::Atom(_))).map(|a| imp(a, &bx(a))).collect(),
            SchemaTag::S => unary(&|a| imp(&bx(a), a)),
            SchemaTag::Sstar => unary(&|a| imp(&bx(a), &box_full(a))),
            SchemaTag::Pem => unary(&|a| Formula::or(a.clone(), Formula::neg(a.clone()))),
            SchemaTag::Le => binary(&|a, b| {
                imp(
                    &bx(&Formula::or(a.clone(), b.clone())),
                    &bx(&Formula::or(Formula::boxdot(a.clone()), Formula::boxdot(b.clone()))),
                )
            }),
            SchemaTag::LePlus => unary(&|a| imp(&bx(a), &bx(&leivant(a)))),
            SchemaTag::TP => binary(&|a, b| imp(&bx(&imp(a, b)), &Formula::or(a.clone(), imp(a, b)))),
            SchemaTag::V => {
                pool.iter().filter_map(|a| tnnil_minus(a).ok().map(|m| Formula::iff(a.clone(), m))).collect()
            }
        }
    }
}

impl AxiomSchema {
    /// Exactly the instances of the decorated schema over `pool`.
    pub fn instantiate(&self, pool: &[Formula]) -> Vec<Formula> {
        let plain = self.tag.instances(pool);
        match self.decoration {
            Decoration::Under => plain,
            Decoration::Over => plain.into_iter().map(Formula::boxed).collect(),
            Decoration::Both => {
                let boxed: Vec<Formula> = plain.iter().cloned().map(Formula::boxed).collect();
                plain.into_iter().chain(boxed).collect()
            }
        }
    }
}
