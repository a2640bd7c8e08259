use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;
use std::sync::Arc;

use super::bits::Bits;
use super::{
    Countermodel, DecisionResult, EngineConfig, EngineError, Evidence, NodeKind, ProofLine, ProofTrace, Semantics,
    Verdict, MAX_COUNTERMODEL_NODES,
};
use crate::formula::{Atom, Formula};
use crate::kripke::{KripkeModel, NodeId, Relation, TruthRelation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Bot,
    Top,
    Atom(usize),
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
    Box(usize),
}

/// Hash-consed formulas, addressed by dense ids.
struct Universe {
    nodes: Vec<Node>,
    formulas: Vec<Formula>,
    index: HashMap<Node, usize>,
    atoms: Vec<Atom>,
    atom_ids: HashMap<Atom, usize>,
}

impl Universe {
    fn new() -> Self {
        Universe {
            nodes: Vec::new(),
            formulas: Vec::new(),
            index: HashMap::new(),
            atoms: Vec::new(),
            atom_ids: HashMap::new(),
        }
    }

    fn intern(&mut self, f: &Formula) -> usize {
        let node = match f {
            Formula::Bot => Node::Bot,
            Formula::Top => Node::Top,
            Formula::Atom(p) => {
                let next = self.atoms.len();
                let i = *self.atom_ids.entry(p.clone()).or_insert(next);
                if i == next {
                    self.atoms.push(p.clone());
                }
                Node::Atom(i)
            }
            Formula::And(a, b) => Node::And(self.intern(a), self.intern(b)),
            Formula::Or(a, b) => Node::Or(self.intern(a), self.intern(b)),
            Formula::Imp(a, b) => Node::Imp(self.intern(a), self.intern(b)),
            Formula::Box(a) => Node::Box(self.intern(a)),
        };
        self.add(node, || f.clone())
    }

    fn add(&mut self, node: Node, formula: impl FnOnce() -> Formula) -> usize {
        if let Some(&i) = self.index.get(&node) {
            return i;
        }
        let i = self.nodes.len();
        self.nodes.push(node);
        self.formulas.push(formula());
        self.index.insert(node, i);
        i
    }

    fn formulas_in(&self, set: &Bits) -> Vec<Formula> {
        set.iter().map(|i| self.formulas[i].clone()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Edge {
    Leq,
    Sub,
    Both,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    in_suc: bool,
    t: Bits,
    f: Bits,
}

/// A signed formula: `T` (forced) or `F` (not forced).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Lit {
    T(usize),
    F(usize),
}

/// The formulas of a sequent a closed subtree actually relies on.
#[derive(Clone)]
struct Used {
    t: Bits,
    f: Bits,
}

struct Proof {
    rule: &'static str,
    t: Bits,
    f: Bits,
    premises: Vec<Rc<Proof>>,
    used: Used,
}

struct World {
    t: Bits,
    children: Vec<(Edge, Child)>,
}

#[derive(Clone)]
enum Child {
    World(Rc<World>),
    /// A link back to the ancestor opened at this search depth.
    Back(usize),
}

#[derive(Clone)]
enum Outcome {
    Closed(Rc<Proof>),
    Open(Child),
}

struct Branch {
    rule: &'static str,
    on: Lit,
    left: (Bits, Bits),
    right: (Bits, Bits),
}

/// A world a saturated node must see, and where its formulas come from.
struct Obligation {
    rule: &'static str,
    edge: Edge,
    key: Key,
    /// The `F` formula that demands the world.
    demand: usize,
}

/// A sequent closed under the non-branching rules, remembering for every
/// derived formula the formulas it was derived from.
struct Saturated {
    t0: Bits,
    f0: Bits,
    t: Bits,
    f: Bits,
    from: HashMap<Lit, [Option<Lit>; 2]>,
}

impl Saturated {
    fn new(t0: Bits, f0: Bits) -> Self {
        Saturated { t: t0.clone(), f: f0.clone(), t0, f0, from: HashMap::new() }
    }

    fn has(&self, lit: Lit) -> bool {
        match lit {
            Lit::T(i) => self.t.contains(i),
            Lit::F(i) => self.f.contains(i),
        }
    }

    /// Adds `lit`, derived from `a` and optionally `b`.
    fn derive(&mut self, lit: Lit, a: Lit, b: Option<Lit>) -> bool {
        let fresh = match lit {
            Lit::T(i) => self.t.insert(i),
            Lit::F(i) => self.f.insert(i),
        };
        if fresh {
            self.from.insert(lit, [Some(a), b]);
        }
        fresh
    }

    /// The formulas of the original sequent that `lits` were derived from.
    fn resolve(&self, lits: impl IntoIterator<Item = Lit>) -> Used {
        let width = self.t.width();
        let mut used = Used { t: Bits::new(width), f: Bits::new(width) };
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<Lit> = lits.into_iter().collect();
        while let Some(lit) = stack.pop() {
            if !seen.insert(lit) {
                continue;
            }
            match lit {
                Lit::T(i) if self.t0.contains(i) => {
                    used.t.insert(i);
                }
                Lit::F(i) if self.f0.contains(i) => {
                    used.f.insert(i);
                }
                _ => stack.extend(self.from[&lit].iter().flatten().copied()),
            }
        }
        used
    }

    /// Splits what a branch relied on into formulas of this sequent and
    /// whether the branch's own additions were needed.
    fn lift(&self, used: &Used) -> (Vec<Lit>, bool) {
        let lits: Vec<Lit> = used.t.iter().map(Lit::T).chain(used.f.iter().map(Lit::F)).collect();
        let needs_new = lits.iter().any(|&l| !self.has(l));
        (lits.into_iter().filter(|&l| self.has(l)).collect(), needs_new)
    }
}

struct Search<'u> {
    u: &'u Universe,
    sem: Semantics,
    lob: bool,
    loop_check: bool,
    bot: usize,
    top: usize,
    /// For each implication id, the id of its box (quasi-classical worlds).
    imp_box: Vec<usize>,
    limit: usize,
    spent: usize,
    memo: HashMap<Key, Outcome>,
    history: Vec<Key>,
}

impl Search<'_> {
    fn kind(&self, in_suc: bool) -> NodeKind {
        if in_suc {
            self.sem.successor
        } else {
            self.sem.root
        }
    }

    fn sat(&mut self, key: Key, via_sub: bool) -> Result<Outcome, EngineError> {
        if let Some(o) = self.memo.get(&key) {
            return Ok(o.clone());
        }
        if self.loop_check && via_sub {
            if let Some(depth) = self.history.iter().position(|k| *k == key) {
                return Ok(Outcome::Open(Child::Back(depth)));
            }
        }
        self.history.push(key.clone());
        let out = self.expand(key.in_suc, key.t.clone(), key.f.clone());
        self.history.pop();
        let out = out?;
        // Open results may lean on ancestors through back links.
        if !self.loop_check || matches!(out, Outcome::Closed(_)) {
            self.memo.insert(key, out.clone());
        }
        Ok(out)
    }

    /// Closed subtrees report which formulas they used, so a branch whose
    /// first half closes without its new formula needs no second half.
    fn expand(&mut self, in_suc: bool, t0: Bits, f0: Bits) -> Result<Outcome, EngineError> {
        self.spent += 1;
        if self.spent > self.limit {
            return Err(EngineError::Resource { limit: self.limit, what: "tableau expansions" });
        }
        let kind = self.kind(in_suc);
        let mut s = Saturated::new(t0.clone(), f0.clone());
        self.propagate(kind, &mut s);
        let closed = |rule, premises, used| {
            Outcome::Closed(Rc::new(Proof { rule, t: t0.clone(), f: f0.clone(), premises, used }))
        };
        if let Some(culprits) = self.clash(&s) {
            return Ok(closed("ax", Vec::new(), s.resolve(culprits)));
        }
        if let Some(branch) = self.find_branch(kind, &s.t, &s.f) {
            let left = match self.expand(in_suc, branch.left.0, branch.left.1)? {
                Outcome::Closed(p) => p,
                open => return Ok(open),
            };
            let (left_lits, left_new) = s.lift(&left.used);
            if !left_new {
                return Ok(closed("weaken", vec![left], s.resolve(left_lits)));
            }
            let right = match self.expand(in_suc, branch.right.0, branch.right.1)? {
                Outcome::Closed(p) => p,
                open => return Ok(open),
            };
            let (right_lits, right_new) = s.lift(&right.used);
            if !right_new {
                return Ok(closed("weaken", vec![right], s.resolve(right_lits)));
            }
            let used = s.resolve(left_lits.into_iter().chain(right_lits).chain([branch.on]));
            return Ok(closed(branch.rule, vec![left, right], used));
        }
        let mut children = Vec::new();
        for ob in self.obligations(kind, in_suc, &s.t, &s.f) {
            match self.sat(ob.key.clone(), ob.edge == Edge::Sub)? {
                Outcome::Closed(p) => {
                    let sources = self.sources(&s, &ob, &p.used);
                    return Ok(closed(ob.rule, vec![p.clone()], s.resolve(sources)));
                }
                Outcome::Open(child) => children.push((ob.edge, child)),
            }
        }
        Ok(Outcome::Open(Child::World(Rc::new(World { t: s.t, children }))))
    }

    /// The formulas responsible for an immediate contradiction.
    fn clash(&self, s: &Saturated) -> Option<Vec<Lit>> {
        if s.t.contains(self.bot) {
            return Some(vec![Lit::T(self.bot)]);
        }
        if s.f.contains(self.top) {
            return Some(vec![Lit::F(self.top)]);
        }
        s.t.first_common(&s.f).map(|i| vec![Lit::T(i), Lit::F(i)])
    }

    /// Non-branching rules, to a fixpoint.
    fn propagate(&self, kind: NodeKind, s: &mut Saturated) {
        loop {
            let mut changed = false;
            for i in s.t.iter().collect::<Vec<_>>() {
                let me = Lit::T(i);
                match self.u.nodes[i] {
                    Node::And(a, b) => {
                        changed |= s.derive(Lit::T(a), me, None);
                        changed |= s.derive(Lit::T(b), me, None);
                    }
                    Node::Or(a, b) => {
                        if s.f.contains(a) {
                            changed |= s.derive(Lit::T(b), me, Some(Lit::F(a)));
                        }
                        if s.f.contains(b) {
                            changed |= s.derive(Lit::T(a), me, Some(Lit::F(b)));
                        }
                    }
                    Node::Imp(a, b) => {
                        if s.t.contains(a) {
                            changed |= s.derive(Lit::T(b), me, Some(Lit::T(a)));
                        }
                        if s.f.contains(b) {
                            changed |= s.derive(Lit::F(a), me, Some(Lit::F(b)));
                        }
                    }
                    _ => {}
                }
            }
            for i in s.f.iter().collect::<Vec<_>>() {
                let me = Lit::F(i);
                match self.u.nodes[i] {
                    Node::Or(a, b) => {
                        changed |= s.derive(Lit::F(a), me, None);
                        changed |= s.derive(Lit::F(b), me, None);
                    }
                    Node::And(a, b) => {
                        if s.t.contains(a) {
                            changed |= s.derive(Lit::F(b), me, Some(Lit::T(a)));
                        }
                        if s.t.contains(b) {
                            changed |= s.derive(Lit::F(a), me, Some(Lit::T(b)));
                        }
                    }
                    Node::Imp(a, b) => {
                        let reason = match kind {
                            NodeKind::Classical => Some(None),
                            NodeKind::Intuitionistic => s.t.contains(a).then_some(Some(Lit::T(a))),
                            NodeKind::QuasiClassical if s.t.contains(a) => Some(Some(Lit::T(a))),
                            NodeKind::QuasiClassical => {
                                let boxed = self.imp_box[i];
                                s.t.contains(boxed).then_some(Some(Lit::T(boxed)))
                            }
                        };
                        if let Some(extra) = reason {
                            changed |= s.derive(Lit::T(a), me, extra);
                            changed |= s.derive(Lit::F(b), me, extra);
                        }
                    }
                    _ => {}
                }
            }
            if !changed || self.clash(s).is_some() {
                return;
            }
        }
    }

    /// The first unresolved branching formula, split semantically so the
    /// two branches are exclusive.
    fn find_branch(&self, kind: NodeKind, t: &Bits, f: &Bits) -> Option<Branch> {
        for i in t.iter() {
            match self.u.nodes[i] {
                Node::Or(a, b) if !t.contains(a) && !t.contains(b) => {
                    return Some(Branch {
                        rule: "L-or",
                        on: Lit::T(i),
                        left: (t.with(a), f.clone()),
                        right: (t.with(b), f.with(a)),
                    });
                }
                Node::Imp(a, b) if !f.contains(a) && !t.contains(b) => {
                    let mut both = t.with(a);
                    both.insert(b);
                    return Some(Branch {
                        rule: "L-imp",
                        on: Lit::T(i),
                        left: (t.clone(), f.with(a)),
                        right: (both, f.clone()),
                    });
                }
                _ => {}
            }
        }
        for i in f.iter() {
            match self.u.nodes[i] {
                Node::And(a, b) if !f.contains(a) && !f.contains(b) => {
                    return Some(Branch {
                        rule: "R-and",
                        on: Lit::F(i),
                        left: (t.clone(), f.with(a)),
                        right: (t.with(a), f.with(b)),
                    });
                }
                Node::Imp(a, b) if kind == NodeKind::QuasiClassical => {
                    let boxed = self.imp_box[i];
                    let resolved = (t.contains(a) && f.contains(b)) || f.contains(boxed);
                    // Refuted here, or at some strict successor, which is
                    // then a `⊏`-successor refuting the boxed form.
                    if !resolved {
                        return Some(Branch {
                            rule: "R-imp-qc",
                            on: Lit::F(i),
                            left: (t.with(a), f.with(b)),
                            right: (t.clone(), f.with(boxed)),
                        });
                    }
                }
                _ => {}
            }
        }
        None
    }

    /// Worlds a saturated node must see, in id order.
    fn obligations(&self, kind: NodeKind, in_suc: bool, t: &Bits, f: &Bits) -> Vec<Obligation> {
        let width = self.u.nodes.len();
        let mut out = Vec::new();
        let mut carry: Option<Bits> = None;
        for i in f.iter() {
            match self.u.nodes[i] {
                Node::Imp(a, b) if kind == NodeKind::Intuitionistic && !t.contains(a) => {
                    let key = Key { in_suc, t: t.with(a), f: Bits::new(width).with(b) };
                    out.push(Obligation { rule: "R-imp", edge: Edge::Leq, key, demand: i });
                }
                Node::Box(a) => {
                    let both = kind == NodeKind::QuasiClassical || (self.sem.complete && kind != NodeKind::Classical);
                    let base = carry.get_or_insert_with(|| self.carry(t, both)).clone();
                    let mut child = base;
                    if self.lob {
                        child.insert(i);
                    }
                    let key = Key { in_suc: true, t: child, f: Bits::new(width).with(a) };
                    let edge = if both { Edge::Both } else { Edge::Sub };
                    out.push(Obligation { rule: if self.lob { "R-box-lob" } else { "R-box" }, edge, key, demand: i });
                }
                _ => {}
            }
        }
        out
    }

    /// What a `⊏`-successor inherits: every boxed formula and its body,
    /// the atoms when atoms persist along `⊏`, everything along `≼`.
    fn carry(&self, t: &Bits, along_leq: bool) -> Bits {
        let mut out = if along_leq { t.clone() } else { Bits::new(self.u.nodes.len()) };
        for i in t.iter() {
            match self.u.nodes[i] {
                Node::Box(a) => {
                    out.insert(i);
                    out.insert(a);
                }
                Node::Atom(_) if self.sem.atom_complete => {
                    out.insert(i);
                }
                _ => {}
            }
        }
        out
    }

    /// The formulas of `s` that put each used formula into the successor
    /// demanded by `ob`.
    fn sources(&self, s: &Saturated, ob: &Obligation, used: &Used) -> Vec<Lit> {
        // The successor refutes only the body of the demanding formula.
        let mut out = vec![Lit::F(ob.demand)];
        for x in used.t.iter() {
            let carried_as_is = match self.u.nodes[x] {
                _ if ob.edge != Edge::Sub => true,
                Node::Box(_) => true,
                Node::Atom(_) => self.sem.atom_complete,
                _ => false,
            };
            let source = if carried_as_is && s.t.contains(x) {
                Lit::T(x)
            } else if x == ob.demand || matches!(self.u.nodes[ob.demand], Node::Imp(a, _) if a == x) {
                // The Löb hypothesis, or the antecedent of a refuted implication.
                Lit::F(ob.demand)
            } else {
                let boxed = s.t.iter().find(|&j| self.u.nodes[j] == Node::Box(x));
                Lit::T(boxed.expect("a carried body comes from a box"))
            };
            out.push(source);
        }
        out
    }
}

pub(super) fn decide(
    cfg: &EngineConfig,
    premises: &[Formula],
    goal: &Formula,
    effective: Formula,
) -> Result<DecisionResult, EngineError> {
    let mut u = Universe::new();
    let bot = u.intern(&Formula::Bot);
    let top = u.intern(&Formula::Top);
    let premise_ids: Vec<usize> = premises.iter().map(|p| u.intern(p)).collect();
    let goal_id = u.intern(goal);
    let sem = cfg.semantics;
    let mut imp_box = vec![usize::MAX; u.nodes.len()];
    if sem.root == NodeKind::QuasiClassical || sem.successor == NodeKind::QuasiClassical {
        let imps: Vec<usize> = (0..imp_box.len()).filter(|&i| matches!(u.nodes[i], Node::Imp(..))).collect();
        for i in imps {
            let body = Arc::new(u.formulas[i].clone());
            imp_box[i] = u.add(Node::Box(i), || Formula::Box(body));
        }
    }
    let width = u.nodes.len();
    let mut t = Bits::new(width);
    for p in premise_ids {
        t.insert(p);
    }
    let f = Bits::new(width).with(goal_id);
    let mut search = Search {
        u: &u,
        sem,
        lob: cfg.base.has_lob(),
        loop_check: !cfg.base.has_lob(),
        bot,
        top,
        imp_box,
        limit: cfg.resource_limit,
        spent: 0,
        memo: HashMap::new(),
        history: Vec::new(),
    };
    match search.sat(Key { in_suc: false, t, f }, false)? {
        Outcome::Closed(proof) => Ok(DecisionResult::new(Verdict::Provable, Evidence::Proof(trace(&u, &proof)))),
        Outcome::Open(Child::World(root)) => {
            let model = extract(&u, &root)?;
            let countermodel = Countermodel {
                model,
                designated: NodeId(0),
                goal: effective,
                frame_class: sem.frame_class(cfg.base),
                relation: TruthRelation::Forcing,
            };
            Ok(DecisionResult::new(Verdict::Refuted, Evidence::Countermodel(Box::new(countermodel))))
        }
        Outcome::Open(Child::Back(_)) => unreachable!("the root has no ancestor to link to"),
    }
}

fn trace(u: &Universe, root: &Rc<Proof>) -> ProofTrace {
    fn visit(u: &Universe, p: &Rc<Proof>, seen: &mut HashMap<*const Proof, usize>, out: &mut ProofTrace) -> usize {
        if let Some(&i) = seen.get(&Rc::as_ptr(p)) {
            return i;
        }
        let premises = p.premises.iter().map(|q| visit(u, q, seen, out)).collect();
        out.lines.push(ProofLine {
            rule: p.rule,
            premises,
            antecedent: u.formulas_in(&p.t),
            succedent: u.formulas_in(&p.f),
        });
        let i = out.lines.len() - 1;
        seen.insert(Rc::as_ptr(p), i);
        i
    }
    let mut out = ProofTrace::default();
    visit(u, root, &mut HashMap::new(), &mut out);
    out
}

/// Unfolds the open tableau into a tree model rooted at node 0; back
/// links become `⊏`-edges to the ancestor.
fn extract(u: &Universe, root: &Rc<World>) -> Result<KripkeModel, EngineError> {
    struct Acc {
        worlds: Vec<Bits>,
        edges: Vec<(usize, usize, Edge)>,
    }
    fn visit(w: &Rc<World>, path: &mut Vec<usize>, acc: &mut Acc) -> Result<usize, EngineError> {
        if acc.worlds.len() >= MAX_COUNTERMODEL_NODES {
            return Err(EngineError::Resource { limit: MAX_COUNTERMODEL_NODES, what: "countermodel nodes" });
        }
        let id = acc.worlds.len();
        acc.worlds.push(w.t.clone());
        path.push(id);
        for (edge, child) in &w.children {
            let target = match child {
                Child::World(c) => visit(c, path, acc)?,
                Child::Back(depth) => path[*depth],
            };
            acc.edges.push((id, target, *edge));
        }
        path.pop();
        Ok(id)
    }
    let mut acc = Acc { worlds: Vec::new(), edges: Vec::new() };
    visit(root, &mut Vec::new(), &mut acc)?;

    let n = acc.worlds.len();
    let mut leq = Relation::identity(n);
    let mut reach = Relation::identity(n);
    let mut sub_steps = Relation::empty(n);
    for &(a, b, edge) in &acc.edges {
        reach.insert(a, b);
        if edge != Edge::Sub {
            leq.insert(a, b);
        }
        if edge != Edge::Leq {
            sub_steps.insert(a, b);
        }
    }
    leq.transitive_closure();
    reach.transitive_closure();
    let sub = leq.compose(&sub_steps).compose(&reach);
    let val = acc
        .worlds
        .iter()
        .map(|t| {
            t.iter()
                .filter_map(|i| match u.nodes[i] {
                    Node::Atom(a) => Some(u.atoms[a].clone()),
                    _ => None,
                })
                .collect::<BTreeSet<_>>()
        })
        .collect();
    Ok(KripkeModel::from_relations(val, leq, sub).expect("tableau worlds form a partial order"))
}
