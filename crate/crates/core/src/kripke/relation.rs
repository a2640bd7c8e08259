/// A binary relation on `0..n`, stored as one bitset row per node.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Relation { n, words, bits: vec![0; n * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        let w = &mut self.bits[a * self.words + b / 64];
        let had = *w >> (b % 64) & 1 == 1;
        *w |= 1 << (b % 64);
        !had
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.bits[a * self.words + b / 64] &= !(1 << (b % 64));
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.words..(a + 1) * self.words]
    }

    /// Successors of `a`, ascending.
    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&b| self.contains(a, b))
    }

    pub fn predecessors(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&a| self.contains(a, b))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.successors(a).map(move |b| (a, b)))
    }

    /// `row(a) |= row(b)`.
    fn absorb(&mut self, a: usize, b: usize) -> bool {
        let mut changed = false;
        for k in 0..self.words {
            let extra = self.bits[b * self.words + k];
            let w = &mut self.bits[a * self.words + k];
            if extra & !*w != 0 {
                *w |= extra;
                changed = true;
            }
        }
        changed
    }

    pub fn transitive_closure(&mut self) {
        // Warshall on bitset rows.
        for k in 0..self.n {
            for i in 0..self.n {
                if self.contains(i, k) {
                    self.absorb(i, k);
                }
            }
        }
    }

    pub fn reflexive_closure(&mut self) {
        for i in 0..self.n {
            self.insert(i, i);
        }
    }

    /// `{(a, c) : a self b, b other c}`.
    pub fn compose(&self, other: &Relation) -> Relation {
        let mut out = Relation::empty(self.n);
        for a in 0..self.n {
            for b in self.successors(a).collect::<Vec<_>>() {
                for k in 0..self.words {
                    out.bits[a * self.words + k] |= other.bits[b * self.words + k];
                }
            }
        }
        out
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.bits.iter().zip(&other.bits).all(|(x, y)| x & !y == 0)
    }

    pub fn union_with(&mut self, other: &Relation) {
        for (x, y) in self.bits.iter_mut().zip(&other.bits) {
            *x |= y;
        }
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.contains(i, i))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.n).all(|i| !self.contains(i, i))
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(self).is_subset(self)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().all(|(a, b)| a == b || !self.contains(b, a))
    }

    pub fn row_is_subset(&self, a: usize, other: &Relation, b: usize) -> bool {
        self.row(a).iter().zip(other.row(b)).all(|(x, y)| x & !y == 0)
    }
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
