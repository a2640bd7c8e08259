use std::collections::HashMap;
use std::fmt;

use super::{BaseLogic, DecisionResult, EngineConfig, Evidence, Verdict};
use crate::formula::{AdequateSet, Formula};

/// One step of a Hilbert-style derivation: an axiom instance or modus
/// ponens from two earlier lines (the implication first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HilbertLine {
    Axiom { schema: &'static str, formula: Formula },
    ModusPonens { implication: usize, antecedent: usize, formula: Formula },
}

impl HilbertLine {
    pub fn formula(&self) -> &Formula {
        match self {
            HilbertLine::Axiom { formula, .. } | HilbertLine::ModusPonens { formula, .. } => formula,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HilbertDerivation {
    pub lines: Vec<HilbertLine>,
}

impl fmt::Display for HilbertDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.lines.iter().enumerate() {
            match line {
                HilbertLine::Axiom { schema, formula } => writeln!(f, "{i}: AX {schema} {formula}")?,
                HilbertLine::ModusPonens { implication, antecedent, formula } => {
                    writeln!(f, "{i}: MP [{implication},{antecedent}] {formula}")?
                }
            }
        }
        Ok(())
    }
}

impl HilbertDerivation {
    /// Checks every line: axioms are instances of their schema and
    /// modus ponens steps cite an implication and its antecedent.
    pub fn verify(&self) -> bool {
        self.lines.iter().enumerate().all(|(i, line)| match line {
            HilbertLine::Axiom { schema, formula } => is_instance(schema, formula),
            HilbertLine::ModusPonens { implication, antecedent, formula } => {
                *implication < i
                    && *antecedent < i
                    && *self.lines[*implication].formula()
                        == Formula::imp(self.lines[*antecedent].formula().clone(), formula.clone())
            }
        })
    }
}

type Meta = [Term; 3];
type Instantiate = fn(&mut Terms, Meta) -> Term;

/// Schemas with up to three metavariables, built over interned terms.
const SCHEMAS: &[(&str, usize, Instantiate)] = &[
    ("id", 1, |t, [a, ..]| t.imp(a, a)),
    ("k-comb", 2, |t, [a, b, _]| {
        let ba = t.imp(b, a);
        t.imp(a, ba)
    }),
    ("s-comb", 3, |t, [a, b, c]| {
        let (bc, ab, ac) = (t.imp(b, c), t.imp(a, b), t.imp(a, c));
        let abc = t.imp(a, bc);
        let rhs = t.imp(ab, ac);
        t.imp(abc, rhs)
    }),
    ("and-l", 2, |t, [a, b, _]| {
        let ab = t.and(a, b);
        t.imp(ab, a)
    }),
    ("and-r", 2, |t, [a, b, _]| {
        let ab = t.and(a, b);
        t.imp(ab, b)
    }),
    ("and-i", 2, |t, [a, b, _]| {
        let ab = t.and(a, b);
        let rhs = t.imp(b, ab);
        t.imp(a, rhs)
    }),
    ("or-l", 2, |t, [a, b, _]| {
        let ab = t.or(a, b);
        t.imp(a, ab)
    }),
    ("or-r", 2, |t, [a, b, _]| {
        let ab = t.or(a, b);
        t.imp(b, ab)
    }),
    ("or-e", 3, |t, [a, b, c]| {
        let (ac, bc, ab) = (t.imp(a, c), t.imp(b, c), t.or(a, b));
        let abc = t.imp(ab, c);
        let rhs = t.imp(bc, abc);
        t.imp(ac, rhs)
    }),
    ("efq", 1, |t, [a, ..]| {
        let bot = t.intern(Node::Bot);
        t.imp(bot, a)
    }),
    ("top", 0, |t, _| t.intern(Node::Top)),
    ("pem", 1, |t, [a, ..]| {
        let bot = t.intern(Node::Bot);
        let na = t.imp(a, bot);
        t.or(a, na)
    }),
    ("k", 2, |t, [a, b, _]| {
        let ab = t.imp(a, b);
        let (bab, ba, bb) = (t.boxed(ab), t.boxed(a), t.boxed(b));
        let rhs = t.imp(ba, bb);
        t.imp(bab, rhs)
    }),
    ("4", 1, |t, [a, ..]| {
        let ba = t.boxed(a);
        let bba = t.boxed(ba);
        t.imp(ba, bba)
    }),
    ("lob", 1, |t, [a, ..]| {
        let ba = t.boxed(a);
        let inner = t.imp(ba, a);
        let premise = t.boxed(inner);
        t.imp(premise, ba)
    }),
];

fn schema_applies(name: &str, base: BaseLogic) -> bool {
    match name {
        "pem" => base.is_classical(),
        "lob" => base.has_lob(),
        _ => true,
    }
}

/// Whether `formula` is an instance of the named schema, or of its boxed
/// form when the name carries a `box-` prefix.
fn is_instance(schema: &str, formula: &Formula) -> bool {
    let (name, formula) = match (schema.strip_prefix("box-"), formula) {
        (Some(name), Formula::Box(body)) => (name, &**body),
        (Some(_), _) => return false,
        (None, f) => (schema, f),
    };
    let Some(&(_, arity, build)) = SCHEMAS.iter().find(|(n, ..)| *n == name) else { return false };
    // Read the metavariables off the formula, then rebuild and compare.
    let guess: Option<[Formula; 3]> = match (name, formula) {
        (_, _) if arity == 0 => Some([Formula::Top, Formula::Top, Formula::Top]),
        ("id" | "efq" | "pem" | "4" | "lob", _) => {
            let m = match (name, formula) {
                ("id", Formula::Imp(a, _)) => (**a).clone(),
                ("efq", Formula::Imp(_, b)) => (**b).clone(),
                ("pem", Formula::Or(a, _)) => (**a).clone(),
                ("4", Formula::Imp(a, _)) | ("lob", Formula::Imp(_, a)) => match &**a {
                    Formula::Box(x) => (**x).clone(),
                    _ => return false,
                },
                _ => return false,
            };
            Some([m.clone(), m.clone(), m])
        }
        ("k-comb", Formula::Imp(a, rest)) => match &**rest {
            Formula::Imp(b, _) => Some([(**a).clone(), (**b).clone(), Formula::Top]),
            _ => None,
        },
        ("and-l" | "and-r", Formula::Imp(ab, _)) | ("or-l" | "or-r", Formula::Imp(_, ab)) => match &**ab {
            Formula::And(a, b) | Formula::Or(a, b) => Some([(**a).clone(), (**b).clone(), Formula::Top]),
            _ => None,
        },
        ("and-i", Formula::Imp(a, rest)) => match &**rest {
            Formula::Imp(b, _) => Some([(**a).clone(), (**b).clone(), Formula::Top]),
            _ => None,
        },
        ("s-comb", Formula::Imp(abc, _)) => match &**abc {
            Formula::Imp(a, bc) => match &**bc {
                Formula::Imp(b, c) => Some([(**a).clone(), (**b).clone(), (**c).clone()]),
                _ => None,
            },
            _ => None,
        },
        ("or-e", Formula::Imp(ac, rest)) => match (&**ac, &**rest) {
            (Formula::Imp(a, c), Formula::Imp(bc, _)) => match &**bc {
                Formula::Imp(b, _) => Some([(**a).clone(), (**b).clone(), (**c).clone()]),
                _ => None,
            },
            _ => None,
        },
        ("k", Formula::Imp(ab, _)) => match &**ab {
            Formula::Box(inner) => match &**inner {
                Formula::Imp(a, b) => Some([(**a).clone(), (**b).clone(), Formula::Top]),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    };
    let Some(metas) = guess else { return false };
    let mut terms = Terms::default();
    let metas = metas.map(|m| terms.intern_formula(&m));
    let built = build(&mut terms, metas);
    terms.formula(built) == *formula
}

/// Sound semi-decision by forward chaining: start from every instance of
/// the base's schemas (and their boxes) with metavariables drawn from
/// `pool`, then close under modus ponens `depth` times. Provable only with
/// an explicit derivation; otherwise inconclusive. Premises of `cfg` enter
/// as extra axioms.
pub fn oracle_prove(cfg: &EngineConfig, goal: &Formula, pool: &AdequateSet, depth: usize) -> DecisionResult {
    let mut closure = Closure::default();
    let metas: Vec<Term> = pool.iter().map(|f| closure.terms.intern_formula(f)).collect();
    let goal_id = closure.terms.intern_formula(goal);
    for &(name, arity, build) in SCHEMAS {
        if !schema_applies(name, cfg.base) {
            continue;
        }
        for m in instances(&metas, arity) {
            let instance = build(&mut closure.terms, m);
            let boxed = closure.terms.boxed(instance);
            closure.learn(instance, Origin::Axiom(name));
            closure.learn(boxed, Origin::Axiom(boxed_name(name)));
        }
    }
    for p in &cfg.premises {
        let id = closure.terms.intern_formula(p);
        closure.learn(id, Origin::Axiom("premise"));
    }
    for _ in 0..depth {
        if closure.origin.contains_key(&goal_id) || closure.pending.is_empty() {
            break;
        }
        for (b, origin) in std::mem::take(&mut closure.pending) {
            closure.learn(b, origin);
        }
    }
    if closure.origin.contains_key(&goal_id) {
        DecisionResult::new(Verdict::Provable, Evidence::Derivation(closure.derivation(goal_id)))
    } else {
        DecisionResult::new(
            Verdict::Inconclusive,
            Evidence::Bound(format!(
                "no derivation within {depth} rounds of modus ponens over a pool of {}",
                pool.len()
            )),
        )
    }
}

fn boxed_name(name: &'static str) -> &'static str {
    match name {
        "id" => "box-id",
        "k-comb" => "box-k-comb",
        "s-comb" => "box-s-comb",
        "and-l" => "box-and-l",
        "and-r" => "box-and-r",
        "and-i" => "box-and-i",
        "or-l" => "box-or-l",
        "or-r" => "box-or-r",
        "or-e" => "box-or-e",
        "efq" => "box-efq",
        "top" => "box-top",
        "pem" => "box-pem",
        "k" => "box-k",
        "4" => "box-4",
        "lob" => "box-lob",
        _ => unreachable!("unknown schema {name}"),
    }
}

fn instances(metas: &[Term], arity: usize) -> Vec<Meta> {
    let n = metas.len();
    let pad = metas.first().copied().unwrap_or(Term(0));
    let mut out = Vec::new();
    match arity {
        0 => out.push([pad; 3]),
        1 => out.extend(metas.iter().map(|&a| [a, pad, pad])),
        2 => {
            for &a in metas {
                out.extend(metas.iter().map(|&b| [a, b, pad]));
            }
        }
        _ => {
            for &a in metas {
                for &b in metas {
                    out.extend(metas.iter().map(|&c| [a, b, c]));
                }
            }
        }
    }
    debug_assert!(n > 0 || arity == 0 || out.is_empty());
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Term(u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Bot,
    Top,
    Atom(u32),
    And(Term, Term),
    Or(Term, Term),
    Imp(Term, Term),
    Box(Term),
}

/// Hash-consed formulas: equal formulas get equal ids.
#[derive(Default)]
struct Terms {
    nodes: Vec<Node>,
    ids: HashMap<Node, Term>,
    atoms: Vec<crate::formula::Atom>,
}

impl Terms {
    fn intern(&mut self, node: Node) -> Term {
        if let Some(&t) = self.ids.get(&node) {
            return t;
        }
        let t = Term(self.nodes.len() as u32);
        self.nodes.push(node);
        self.ids.insert(node, t);
        t
    }

    fn and(&mut self, a: Term, b: Term) -> Term {
        self.intern(Node::And(a, b))
    }

    fn or(&mut self, a: Term, b: Term) -> Term {
        self.intern(Node::Or(a, b))
    }

    fn imp(&mut self, a: Term, b: Term) -> Term {
        self.intern(Node::Imp(a, b))
    }

    fn boxed(&mut self, a: Term) -> Term {
        self.intern(Node::Box(a))
    }

    fn intern_formula(&mut self, f: &Formula) -> Term {
        let node = match f {
            Formula::Bot => Node::Bot,
            Formula::Top => Node::Top,
            Formula::Atom(p) => {
                let k = match self.atoms.iter().position(|q| q == p) {
                    Some(k) => k,
                    None => {
                        self.atoms.push(p.clone());
                        self.atoms.len() - 1
                    }
                };
                Node::Atom(k as u32)
            }
            Formula::And(a, b) => Node::And(self.intern_formula(a), self.intern_formula(b)),
            Formula::Or(a, b) => Node::Or(self.intern_formula(a), self.intern_formula(b)),
            Formula::Imp(a, b) => Node::Imp(self.intern_formula(a), self.intern_formula(b)),
            Formula::Box(a) => Node::Box(self.intern_formula(a)),
        };
        self.intern(node)
    }

    fn formula(&self, t: Term) -> Formula {
        match self.nodes[t.0 as usize] {
            Node::Bot => Formula::Bot,
            Node::Top => Formula::Top,
            Node::Atom(k) => Formula::Atom(self.atoms[k as usize].clone()),
            Node::And(a, b) => Formula::and(self.formula(a), self.formula(b)),
            Node::Or(a, b) => Formula::or(self.formula(a), self.formula(b)),
            Node::Imp(a, b) => Formula::imp(self.formula(a), self.formula(b)),
            Node::Box(a) => Formula::boxed(self.formula(a)),
        }
    }
}

#[derive(Clone, Copy)]
enum Origin {
    Axiom(&'static str),
    ModusPonens(Term, Term),
}

/// Known theorems plus the modus ponens conclusions due next round.
#[derive(Default)]
struct Closure {
    terms: Terms,
    origin: HashMap<Term, Origin>,
    /// Known implications indexed by antecedent, waiting for it.
    waiting: HashMap<Term, Vec<Term>>,
    pending: Vec<(Term, Origin)>,
}

impl Closure {
    fn learn(&mut self, t: Term, origin: Origin) {
        if self.origin.contains_key(&t) {
            return;
        }
        self.origin.insert(t, origin);
        if let Node::Imp(a, b) = self.terms.nodes[t.0 as usize] {
            if self.origin.contains_key(&a) {
                self.pending.push((b, Origin::ModusPonens(t, a)));
            } else {
                self.waiting.entry(a).or_default().push(t);
            }
        }
        for imp in self.waiting.remove(&t).unwrap_or_default() {
            if let Node::Imp(_, b) = self.terms.nodes[imp.0 as usize] {
                self.pending.push((b, Origin::ModusPonens(imp, t)));
            }
        }
    }

    /// The lines needed for `goal`, in dependency order.
    fn derivation(&self, goal: Term) -> HilbertDerivation {
        fn visit(c: &Closure, t: Term, map: &mut HashMap<Term, usize>, out: &mut HilbertDerivation) -> usize {
            if let Some(&k) = map.get(&t) {
                return k;
            }
            let line = match c.origin[&t] {
                Origin::Axiom(schema) => HilbertLine::Axiom { schema, formula: c.terms.formula(t) },
                Origin::ModusPonens(imp, ante) => {
                    let implication = visit(c, imp, map, out);
                    let antecedent = visit(c, ante, map, out);
                    HilbertLine::ModusPonens { implication, antecedent, formula: c.terms.formula(t) }
                }
            };
            out.lines.push(line);
            map.insert(t, out.lines.len() - 1);
            out.lines.len() - 1
        }
        let mut out = HilbertDerivation::default();
        visit(self, goal, &mut HashMap::new(), &mut out);
        out
    }
}
