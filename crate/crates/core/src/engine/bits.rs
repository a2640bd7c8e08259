/// A fixed-width set of formula ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bits(Box<[u64]>);

impl Bits {
    pub(crate) fn new(width: usize) -> Self {
        Bits(vec![0; width.div_ceil(64).max(1)].into_boxed_slice())
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns whether `i` was newly added.
    pub(crate) fn insert(&mut self, i: usize) -> bool {
        let word = &mut self.0[i / 64];
        let mask = 1 << (i % 64);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    pub(crate) fn with(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.insert(i);
        out
    }

    pub(crate) fn width(&self) -> usize {
        self.0.len() * 64
    }

    /// The smallest element of both sets.
    pub(crate) fn first_common(&self, other: &Bits) -> Option<usize> {
        self.0.iter().zip(other.0.iter()).enumerate().find_map(|(k, (a, b))| {
            let w = a & b;
            (w != 0).then(|| k * 64 + w.trailing_zeros() as usize)
        })
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + bit)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_operations() {
        let mut a = Bits::new(130);
        assert!(a.insert(3));
        assert!(!a.insert(3));
        a.insert(129);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![3, 129]);
        let b = Bits::new(130).with(129);
        assert_eq!(a.first_common(&b), Some(129));
    }
}
