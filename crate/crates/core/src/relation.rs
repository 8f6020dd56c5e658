//! Dense square bit matrix used as the backing store for relations on grid
//! vertices. Row `a`, bit `b` is set when `a -> b`.

use std::cmp::Ordering;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::new(n);
        for a in 0..n {
            m.set(a, a);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / WORD] >> (b % WORD) & 1 == 1
    }

    /// Sets `a -> b`; returns true if the bit was previously clear.
    #[inline]
    pub fn set(&mut self, a: usize, b: usize) -> bool {
        let w = &mut self.bits[a * self.words + b / WORD];
        let mask = 1u64 << (b % WORD);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    #[inline]
    pub fn clear(&mut self, a: usize, b: usize) {
        self.bits[a * self.words + b / WORD] &= !(1u64 << (b % WORD));
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.words..(a + 1) * self.words]
    }

    /// Targets of row `a`, ascending.
    pub fn row_iter(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(a).iter().enumerate().flat_map(|(k, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + t)
            })
        })
    }

    /// `row(dst) |= row(src)`; returns true if anything changed.
    fn or_row_into(&mut self, src: usize, dst: usize) -> bool {
        let mut changed = false;
        for k in 0..self.words {
            let s = self.bits[src * self.words + k];
            let d = &mut self.bits[dst * self.words + k];
            if s & !*d != 0 {
                *d |= s;
                changed = true;
            }
        }
        changed
    }

    /// Warshall's algorithm in place; returns true if any bit was added.
    pub fn transitive_close(&mut self) -> bool {
        let mut changed = false;
        for k in 0..self.n {
            for a in 0..self.n {
                if a != k && self.get(a, k) {
                    changed |= self.or_row_into(k, a);
                }
            }
        }
        changed
    }

    pub fn is_subset(&self, other: &BitMatrix) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect_with(&mut self, other: &BitMatrix) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersects(&self, other: &BitMatrix) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    /// Row-major lexicographic comparison of the bit sequences, with a clear
    /// bit before a set bit.
    pub fn lex_cmp(&self, other: &BitMatrix) -> Ordering {
        for (a, b) in self.bits.iter().zip(&other.bits) {
            let diff = a ^ b;
            if diff != 0 {
                let low = diff & diff.wrapping_neg();
                return if a & low == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.n.cmp(&other.n)
    }
}
