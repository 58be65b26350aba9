//! The monoid generated by the column maps, and exact counts of
//! non-constant arithmetic progressions.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::columns::ColumnMap;
use crate::error::{bail, Result};
use crate::structure;
use crate::substitution::Substitution;

/// Largest `m` accepted by [`nonconstant_ap_counts`].
pub const MAX_AP_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidElement {
    pub map: ColumnMap,
    /// A shortest column-index word producing `map`: for `[r_1, …, r_m]` the
    /// map is `φ_{r_m} ∘ … ∘ φ_{r_1}`, i.e. the column `r_1 k^{m-1} + … + r_m`
    /// of `φ^m`.
    pub word: Vec<usize>,
}

impl MonoidElement {
    pub fn is_constant(&self) -> bool {
        self.map.is_constant()
    }
}

/// Column maps of all powers of a substitution, closed under composition.
///
/// Element 0 is the identity. `step[e][r]` is the index of `φ_r ∘ e`.
#[derive(Debug, Clone)]
pub struct KernelDescriptor {
    elements: Vec<MonoidElement>,
    step: Vec<Vec<usize>>,
}

impl KernelDescriptor {
    pub fn new(subst: &Substitution) -> Self {
        let generators = subst.column_maps();
        let identity = ColumnMap::identity(subst.size());
        let mut index = HashMap::from([(identity.clone(), 0usize)]);
        let mut elements = vec![MonoidElement {
            map: identity,
            word: Vec::new(),
        }];
        let mut step: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            let mut row = Vec::with_capacity(generators.len());
            for (r, g) in generators.iter().enumerate() {
                let map = g.after(&elements[e].map);
                let target = *index.entry(map.clone()).or_insert_with(|| {
                    let mut word = elements[e].word.clone();
                    word.push(r);
                    elements.push(MonoidElement { map, word });
                    queue.push_back(elements.len() - 1);
                    elements.len() - 1
                });
                row.push(target);
            }
            if step.len() <= e {
                step.resize(e + 1, Vec::new());
            }
            step[e] = row;
        }
        Self { elements, step }
    }

    pub fn elements(&self) -> &[MonoidElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn step(&self, element: usize, column: usize) -> usize {
        self.step[element][column]
    }

    pub fn constant_elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&e| self.elements[e].is_constant())
    }

    /// How many columns of `φ^m` equal each element, for `m = 0..=m_max`.
    pub fn column_multiplicities(&self, m_max: usize) -> Vec<Vec<BigUint>> {
        let mut counts = vec![BigUint::zero(); self.len()];
        counts[0] = BigUint::from(1u8);
        let mut out = Vec::with_capacity(m_max + 1);
        for m in 0..=m_max {
            if m > 0 {
                let mut next = vec![BigUint::zero(); self.len()];
                for (e, c) in counts.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for &t in &self.step[e] {
                        next[t] += c;
                    }
                }
                counts = next;
            }
            out.push(counts.clone());
        }
        out
    }

    /// `d_m` for `m = 0..=m_max`: the number of non-constant columns of `φ^m`.
    pub fn nonconstant_counts(&self, m_max: usize) -> Vec<BigUint> {
        self.column_multiplicities(m_max)
            .into_iter()
            .map(|counts| {
                counts
                    .into_iter()
                    .enumerate()
                    .filter(|&(e, _)| !self.elements[e].is_constant())
                    .map(|(_, c)| c)
                    .sum()
            })
            .collect()
    }

    /// Elements occurring as columns of `φ^m`.
    pub fn columns_at_depth(&self, m: usize) -> Vec<usize> {
        let mut current = vec![false; self.len()];
        current[0] = true;
        for _ in 0..m {
            let mut next = vec![false; self.len()];
            for e in (0..self.len()).filter(|&e| current[e]) {
                for &t in &self.step[e] {
                    next[t] = true;
                }
            }
            current = next;
        }
        (0..self.len()).filter(|&e| current[e]).collect()
    }
}

fn require_height_one(subst: &Substitution) -> Result<()> {
    let h = structure::height(subst)?;
    if h != 1 {
        bail!(Precondition, "height is {h}; purify before computing the kernel");
    }
    Ok(())
}

pub fn kernel_monoid(subst: &Substitution) -> Result<KernelDescriptor> {
    require_height_one(subst)?;
    Ok(KernelDescriptor::new(subst))
}

pub fn nonconstant_ap_counts(subst: &Substitution, m_max: usize) -> Result<Vec<BigUint>> {
    if m_max > MAX_AP_DEPTH {
        bail!(Resource, "m_max {m_max} exceeds {MAX_AP_DEPTH}");
    }
    Ok(kernel_monoid(subst)?.nonconstant_counts(m_max))
}
