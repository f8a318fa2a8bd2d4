//! Subsets of the ground set `[m] = {1, ..., m}` as bit patterns.
//!
//! Element `i` (1-based) is stored in bit `i - 1`. Every algorithm in the
//! crate enumerates `2^m` or `3^m` states, so `m` is capped at
//! [`MAX_GROUND`].

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the ground-set size.
pub const MAX_GROUND: usize = 30;

/// Default cap for operations that materialize a `2^m` table.
pub const DEFAULT_MAX_DENSE: usize = 24;

pub fn check_ground(m: usize) -> Result<()> {
    if m == 0 || m > MAX_GROUND {
        return Err(Error::GroundSetTooLarge {
            m,
            limit: MAX_GROUND,
        });
    }
    Ok(())
}

pub fn check_dense(m: usize, limit: usize) -> Result<()> {
    check_ground(m)?;
    if m > limit.min(MAX_GROUND) {
        return Err(Error::GroundSetTooLarge { m, limit });
    }
    Ok(())
}

#[inline]
pub(crate) fn full_bits(m: usize) -> u32 {
    if m >= 32 {
        u32::MAX
    } else {
        ((1u64 << m) - 1) as u32
    }
}

/// A subset `S ⊆ [m]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u32,
    m: u8,
}

impl SubsetMask {
    pub fn new(bits: u64, m: usize) -> Result<Self> {
        check_ground(m)?;
        if bits >> m != 0 {
            return Err(Error::InvalidMask { bits, m });
        }
        Ok(Self {
            bits: bits as u32,
            m: m as u8,
        })
    }

    /// Construction for callers that already hold a valid pattern.
    #[inline]
    pub(crate) fn from_raw(bits: u32, m: usize) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&m) && (bits as u64) >> m == 0);
        Self { bits, m: m as u8 }
    }

    pub fn empty(m: usize) -> Result<Self> {
        Self::new(0, m)
    }

    pub fn full(m: usize) -> Result<Self> {
        check_ground(m)?;
        Ok(Self::from_raw(full_bits(m), m))
    }

    /// Builds a mask from 1-based element indices; order and repeats are ignored.
    pub fn from_elements(elements: &[usize], m: usize) -> Result<Self> {
        check_ground(m)?;
        let mut bits = 0u32;
        for &e in elements {
            if e == 0 || e > m {
                return Err(Error::InvalidElement { element: e, m });
            }
            bits |= 1 << (e - 1);
        }
        Ok(Self::from_raw(bits, m))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn index(self) -> usize {
        self.bits as usize
    }

    #[inline]
    pub fn m(self) -> usize {
        self.m as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// Whether 1-based element `i` belongs to the set.
    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= self.m() && self.bits & (1 << (i - 1)) != 0
    }

    #[inline]
    pub fn complement(self) -> Self {
        Self::from_raw(!self.bits & full_bits(self.m()), self.m())
    }

    pub fn union(self, other: Self) -> Result<Self> {
        self.same_ground(other)?;
        Ok(Self::from_raw(self.bits | other.bits, self.m()))
    }

    pub fn intersection(self, other: Self) -> Result<Self> {
        self.same_ground(other)?;
        Ok(Self::from_raw(self.bits & other.bits, self.m()))
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn intersects(self, other: Self) -> bool {
        self.bits & other.bits != 0
    }

    /// 1-based elements in increasing order.
    pub fn elements(self) -> Vec<usize> {
        (0..self.m())
            .filter(|&b| self.bits & (1 << b) != 0)
            .map(|b| b + 1)
            .collect()
    }

    /// All subsets of `self`, in ascending bit-pattern order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            of: self.bits,
            next: Some(0),
            m: self.m,
        }
    }

    pub fn same_ground(self, other: Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                found: other.m(),
            });
        }
        Ok(())
    }

    pub(crate) fn expect_ground(self, m: usize) -> Result<()> {
        if self.m() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: self.m(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, e) in self.elements().into_iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.m)
    }
}

/// Iterator over the subsets of a fixed set, ascending by bit pattern.
#[derive(Clone, Debug)]
pub struct Subsets {
    of: u32,
    next: Option<u32>,
    m: u8,
}

impl Iterator for Subsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        // (x - S) & S steps to the next subset of S in increasing order.
        self.next = if cur == self.of {
            None
        } else {
            Some(cur.wrapping_sub(self.of) & self.of)
        };
        Some(SubsetMask {
            bits: cur,
            m: self.m,
        })
    }
}

pub fn enumerate_subsets(s: SubsetMask) -> Vec<SubsetMask> {
    s.subsets().collect()
}

/// Raw-pattern variant of [`SubsetMask::subsets`] for inner loops.
pub(crate) fn raw_subsets(of: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == of {
            None
        } else {
            Some(cur.wrapping_sub(of) & of)
        };
        Some(cur)
    })
}
