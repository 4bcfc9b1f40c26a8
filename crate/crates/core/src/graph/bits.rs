/// Dense row-major adjacency bit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            words,
            data: vec![0; words * n],
        }
    }

    #[inline]
    pub(crate) fn set(&mut self, u: usize, v: usize) {
        self.data[u * self.words + v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub(crate) fn get(&self, u: usize, v: usize) -> bool {
        self.data[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }
}

/// Iterates the set bits of a single word, lowest first.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}
