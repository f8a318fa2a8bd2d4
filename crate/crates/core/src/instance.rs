//! Weighted set systems `(U; A_1, ..., A_m)`.
//!
//! Each universe element is described by its membership pattern
//! `{i : u ∈ A_i}` and a positive weight. Elements with the same pattern are
//! interchangeable, so the instance keeps one element per pattern; this is
//! exactly the support `{S : w(S) > 0}` of the induced coverage function.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::function::SetFunction;
use crate::subset::{check_ground, SubsetMask};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub membership: SubsetMask,
    pub weight: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageInstance {
    m: usize,
    elements: Vec<Element>,
}

impl CoverageInstance {
    pub fn empty(m: usize) -> Result<Self> {
        check_ground(m)?;
        Ok(Self {
            m,
            elements: Vec::new(),
        })
    }

    /// Validates and normalizes: duplicate patterns are merged by adding
    /// weights, and elements are sorted by bit pattern.
    pub fn new(m: usize, elements: impl IntoIterator<Item = (SubsetMask, BigRational)>) -> Result<Self> {
        check_ground(m)?;
        let mut merged: BTreeMap<SubsetMask, BigRational> = BTreeMap::new();
        for (membership, weight) in elements {
            membership.expect_ground(m)?;
            if membership.is_empty() {
                return Err(Error::EmptyMembership);
            }
            if !weight.is_positive() {
                return Err(Error::NonPositiveWeight { membership, weight });
            }
            *merged.entry(membership).or_insert_with(BigRational::zero) += weight;
        }
        Ok(Self {
            m,
            elements: merged
                .into_iter()
                .map(|(membership, weight)| Element { membership, weight })
                .collect(),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Elements sorted by membership bit pattern.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn weight_of(&self, membership: SubsetMask) -> Option<&BigRational> {
        self.elements
            .binary_search_by(|e| e.membership.cmp(&membership))
            .ok()
            .map(|i| &self.elements[i].weight)
    }

    pub fn total_weight(&self) -> BigRational {
        self.elements.iter().map(|e| &e.weight).sum()
    }
}

/// `f(T) = Σ_{S ∩ T ≠ ∅} w(S)`: the weight of `⋃_{i∈T} A_i`.
pub fn eval_instance(inst: &CoverageInstance, t: SubsetMask) -> Result<BigRational> {
    t.expect_ground(inst.m)?;
    Ok(inst
        .elements
        .iter()
        .filter(|e| e.membership.intersects(t))
        .map(|e| &e.weight)
        .sum())
}

impl SetFunction for CoverageInstance {
    fn ground_size(&self) -> usize {
        self.m
    }

    fn value(&self, t: SubsetMask) -> Result<BigRational> {
        eval_instance(self, t)
    }
}
