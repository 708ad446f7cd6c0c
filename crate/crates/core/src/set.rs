//! Subsets of a finite universe, stored as bitmasks.

use std::fmt;

/// Largest universe an [`ElementSet`] can index.
pub const MAX_UNIVERSE: usize = 64;

/// A subset of `{0, …, n−1}` for a fixed universe size `n`.
///
/// Element ids are dense integers, so membership, union, intersection,
/// complement-in-universe and equality are single word operations. Sets
/// order by their bit pattern, which gives every scan in the crate a
/// deterministic traversal order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    bits: u64,
    len: u32,
}

impl ElementSet {
    fn mask(n: usize) -> u64 {
        assert!(n <= MAX_UNIVERSE, "universe too large for bitmask sets");
        if n == MAX_UNIVERSE {
            !0
        } else {
            (1u64 << n) - 1
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::mask(n);
        ElementSet {
            bits: 0,
            len: n as u32,
        }
    }

    pub fn universe(n: usize) -> Self {
        ElementSet {
            bits: Self::mask(n),
            len: n as u32,
        }
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        Self::empty(n).with(x)
    }

    pub fn of(n: usize, xs: &[usize]) -> Self {
        let mut s = Self::empty(n);
        for &x in xs {
            s.insert(x);
        }
        s
    }

    /// Builds a set from a raw bit pattern, masking off bits outside the universe.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        ElementSet {
            bits: bits & Self::mask(n),
            len: n as u32,
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn universe_size(&self) -> usize {
        self.len as usize
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.len as usize && self.bits >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        assert!(
            x < self.len as usize,
            "element {} outside universe of {}",
            x,
            self.len
        );
        self.bits |= 1 << x;
    }

    pub fn with(mut self, x: usize) -> Self {
        self.insert(x);
        self
    }

    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        ElementSet {
            bits: self.bits | other.bits,
            len: self.len,
        }
    }

    pub fn intersection(self, other: Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        ElementSet {
            bits: self.bits & other.bits,
            len: self.len,
        }
    }

    pub fn difference(self, other: Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        ElementSet {
            bits: self.bits & !other.bits,
            len: self.len,
        }
    }

    /// Complement within the universe (not the image under any unary operation).
    pub fn complement(self) -> Self {
        ElementSet {
            bits: !self.bits & Self::mask(self.len as usize),
            len: self.len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.bits & !other.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.len as usize).filter(move |&i| bits >> i & 1 == 1)
    }

    /// Smallest member id, if any.
    pub fn first(&self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, "}}")
    }
}
