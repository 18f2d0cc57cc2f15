//! Cohomology of irreducible homogeneous bundles by the Bott–Borel–Weil theorem.
//!
//! `E_λ` on `G/P` is acyclic when `λ + ρ` is singular. Otherwise some `w` of length
//! `ℓ` brings `λ + ρ` to a strictly dominant `μ`, and the only nonzero group is
//! `H^ℓ(E_λ) = V^∨_{μ−ρ}`. The results below record `μ − ρ` itself; nothing here
//! dualizes it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parabolic::ParabolicData;
use crate::rep_theory::Decomposition;
use crate::root_system::{ChamberResult, Walk};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CohomologyResult {
    Acyclic,
    /// `H^degree = V^∨_weight`, of dimension `dim`; every other group vanishes.
    NonZero { degree: usize, weight: Weight, dim: BigInt },
}

impl CohomologyResult {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, CohomologyResult::Acyclic)
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            CohomologyResult::Acyclic => None,
            CohomologyResult::NonZero { degree, .. } => Some(*degree),
        }
    }
}

pub fn cohomology(p: &ParabolicData, lambda: &Weight) -> Result<CohomologyResult> {
    Ok(cohomology_traced(p, lambda)?.0)
}

/// As [`cohomology`], also returning the reflection walk from `λ + ρ`.
pub fn cohomology_traced(p: &ParabolicData, lambda: &Weight) -> Result<(CohomologyResult, Walk)> {
    p.check_levi_dominant(lambda)?;
    let r = p.root_system();
    let walk = r.to_dominant_traced(&(lambda + r.rho()))?;
    let result = match &walk.result {
        ChamberResult::Singular => CohomologyResult::Acyclic,
        ChamberResult::Regular { length, dominant } => {
            let weight = dominant - r.rho();
            let dim = r.weyl_dimension(&weight)?;
            CohomologyResult::NonZero { degree: *length, weight, dim }
        }
    };
    Ok((result, walk))
}

/// One nonzero group coming from one summand of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedEntry {
    /// The bundle summand `E_summand` producing this group.
    pub summand: Weight,
    /// Dominant weight `μ` with the group equal to `(V^∨_μ)^{⊕ multiplicity}`.
    pub weight: Weight,
    pub multiplicity: BigInt,
    /// Dimension of a single copy.
    pub dim: BigInt,
}

impl GradedEntry {
    pub fn total_dim(&self) -> BigInt {
        &self.multiplicity * &self.dim
    }
}

/// Cohomology of a direct sum, degree by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradedCohomology {
    degrees: BTreeMap<usize, Vec<GradedEntry>>,
}

impl GradedCohomology {
    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = (usize, &[GradedEntry])> {
        self.degrees.iter().map(|(q, e)| (*q, e.as_slice()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &GradedEntry)> {
        self.degrees.iter().flat_map(|(q, es)| es.iter().map(move |e| (*q, e)))
    }

    pub fn dim(&self, degree: usize) -> BigInt {
        self.degrees
            .get(&degree)
            .map(|es| es.iter().map(GradedEntry::total_dim).sum())
            .unwrap_or_default()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.degrees.keys().next_back().copied()
    }

    /// True when the only nonzero group is `H^0 = C`.
    pub fn is_trivial_in_degree_zero(&self) -> bool {
        self.degrees.len() == 1 && self.dim(0).is_one()
    }

    fn push(&mut self, degree: usize, entry: GradedEntry) {
        let list = self.degrees.entry(degree).or_default();
        list.push(entry);
        list.sort_by(|a, b| a.summand.cmp(&b.summand).then_with(|| a.weight.cmp(&b.weight)));
    }
}

pub fn cohomology_of_decomposition(p: &ParabolicData, dec: &Decomposition) -> Result<GradedCohomology> {
    let mut out = GradedCohomology::default();
    for (summand, mult) in dec.iter() {
        if let CohomologyResult::NonZero { degree, weight, dim } = cohomology(p, summand)? {
            out.push(
                degree,
                GradedEntry { summand: summand.clone(), weight, multiplicity: mult.clone(), dim },
            );
        }
    }
    Ok(out)
}

/// Twists `t ∈ [t_min, t_max]` for which `E_λ(t)` is not acyclic, with their groups.
pub fn acyclic_twist_range(
    p: &ParabolicData,
    lambda: &Weight,
    t_min: i64,
    t_max: i64,
) -> Result<Vec<(i64, CohomologyResult)>> {
    p.crossed_node()?;
    p.check_levi_dominant(lambda)?;
    let results: Result<Vec<_>> = (t_min..=t_max)
        .into_par_iter()
        .map(|t| Ok((t, cohomology(p, &p.twist(lambda, t)?)?)))
        .collect();
    Ok(results?.into_iter().filter(|(_, c)| !c.is_acyclic()).collect())
}

/// The same scan for a direct sum: twists where some summand has cohomology.
pub fn decomposition_twist_range(
    p: &ParabolicData,
    dec: &Decomposition,
    t_min: i64,
    t_max: i64,
) -> Result<Vec<(i64, GradedCohomology)>> {
    let c = p.crossed_node()?;
    let results: Result<Vec<_>> = (t_min..=t_max)
        .into_par_iter()
        .map(|t| {
            let shift = t * &p.root_system().fundamental(c);
            Ok((t, cohomology_of_decomposition(p, &dec.shifted(&shift))?))
        })
        .collect();
    Ok(results?.into_iter().filter(|(_, g)| !g.is_zero()).collect())
}

/// Weight of `E_λ^∨ ⊗ K`, whose cohomology is Serre dual to that of `E_λ`.
pub fn serre_partner(p: &ParabolicData, lambda: &Weight) -> Result<Weight> {
    Ok(&p.dual_weight(lambda)? + &p.canonical_weight())
}

/// Cross-checks `H^q(E_λ)^∨ = H^{n−q}(E_λ^∨ ⊗ K)` through two independent Bott walks.
pub fn serre_check(p: &ParabolicData, lambda: &Weight) -> Result<bool> {
    p.crossed_node()?;
    let n = p.dimension();
    let here = cohomology(p, lambda)?;
    let there = cohomology(p, &serre_partner(p, lambda)?)?;
    let r = p.root_system();
    Ok(match (&here, &there) {
        (CohomologyResult::Acyclic, CohomologyResult::Acyclic) => true,
        (
            CohomologyResult::NonZero { degree: d1, weight: w1, dim: n1 },
            CohomologyResult::NonZero { degree: d2, weight: w2, dim: n2 },
        ) => d1 + d2 == n && n1 == n2 && r.dual_dominant(w2)? == *w1 && r.dual_dominant(w1)? == *w2,
        _ => false,
    })
}

/// Checks the result against the invariants a nonzero group must satisfy.
pub fn validate(p: &ParabolicData, result: &CohomologyResult) -> Result<()> {
    if let CohomologyResult::NonZero { degree, weight, dim } = result {
        let r = p.root_system();
        if !weight.is_dominant() || *degree > r.positive_roots().len() || dim.is_zero() {
            return Err(Error::Internal(format!("inconsistent cohomology {result:?}")));
        }
        if r.weyl_dimension(weight)? != *dim {
            return Err(Error::Internal(format!("dimension mismatch in {result:?}")));
        }
    }
    Ok(())
}
