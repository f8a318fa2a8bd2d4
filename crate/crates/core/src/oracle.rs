//! Value oracles with exact query accounting.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::function::SetFunction;
use crate::subset::{check_ground, SubsetMask};

/// Wraps a set function and counts every evaluation.
///
/// The counter is the unit of query complexity. For reference: any procedure
/// that reconstructs an `m`-element coverage function with support size `n`
/// must spend `Ω(mn / log n)` queries in the worst case, since there are at
/// least `(2^m / n)^(n-1)` such functions and each answer carries
/// `O(log n)` bits when weights are unit. [`crate::reconstruct::recover`]
/// uses at most `2mn + 1`.
///
/// The counter is atomic, so a shared oracle may be queried from several
/// threads.
pub struct CountingOracle {
    backend: Box<dyn SetFunction + Send + Sync>,
    queries: AtomicU64,
}

impl CountingOracle {
    pub fn new(backend: impl SetFunction + Send + Sync + 'static) -> Self {
        Self {
            backend: Box::new(backend),
            queries: AtomicU64::new(0),
        }
    }

    pub fn m(&self) -> usize {
        self.backend.ground_size()
    }

    /// Returns `f(T)` and counts one query.
    pub fn eval(&self, t: SubsetMask) -> Result<BigRational> {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.backend.value(t)
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.queries.store(0, Ordering::Relaxed);
    }

    pub fn backend(&self) -> &(dyn SetFunction + Send + Sync) {
        self.backend.as_ref()
    }
}

pub fn oracle_eval(o: &CountingOracle, t: SubsetMask) -> Result<BigRational> {
    o.eval(t)
}

impl std::fmt::Debug for CountingOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CountingOracle")
            .field("m", &self.m())
            .field("queries", &self.queries())
            .finish()
    }
}

/// A user-supplied table that may be missing entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialTable {
    m: usize,
    entries: BTreeMap<SubsetMask, BigRational>,
}

impl PartialTable {
    pub fn new(m: usize, entries: impl IntoIterator<Item = (SubsetMask, BigRational)>) -> Result<Self> {
        check_ground(m)?;
        let mut map = BTreeMap::new();
        for (t, v) in entries {
            t.expect_ground(m)?;
            if map.insert(t, v).is_some() {
                return Err(Error::DuplicateEntry(t));
            }
        }
        Ok(Self { m, entries: map })
    }

    pub fn entries(&self) -> &BTreeMap<SubsetMask, BigRational> {
        &self.entries
    }
}

impl SetFunction for PartialTable {
    fn ground_size(&self) -> usize {
        self.m
    }

    fn value(&self, t: SubsetMask) -> Result<BigRational> {
        t.expect_ground(self.m)?;
        self.entries.get(&t).cloned().ok_or(Error::MissingEntry(t))
    }
}
