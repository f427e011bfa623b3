//! Level sets of exponent vectors and the fixed-point criterion.
//!
//! For `φ = φ_1^{m_1} ··· φ_{n+1}^{m_{n+1}}` the level set `L_l` collects the
//! indices with `m_j = l`. The fixed locus of φ in P^n is the disjoint union
//! of the coordinate subspaces spanned by each level set; such a subspace
//! meets `X` iff `|L_l| >= n + 1 - d`, and then in a generalized Fermat
//! variety of dimension `|L_l| + d - n - 1`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupElement, Subgroup};

/// Default cap on |K| for exhaustive freeness checks.
pub const DEFAULT_ELEMENT_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSets {
    /// residue -> 1-based indices, computed on the normal form
    pub by_value: BTreeMap<u32, Vec<usize>>,
    /// sorted sizes of the nonempty level sets
    pub size_multiset: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedStratum {
    pub label: u32,
    pub indices: Vec<usize>,
    pub dim: usize,
    /// (dimension; p, |L_l| - 1)
    #[serde(rename = "type")]
    pub induced_type: (usize, u32, usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct StrataReport {
    pub element: GroupElement,
    pub strata: Vec<FixedStratum>,
}

pub fn level_sets(x: &GroupElement) -> LevelSets {
    let mut by_value: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (j, &m) in x.exponents().iter().enumerate() {
        by_value.entry(m).or_default().push(j + 1);
    }
    let mut size_multiset: Vec<usize> = by_value.values().map(Vec::len).collect();
    size_multiset.sort_unstable();
    LevelSets { by_value, size_multiset }
}

/// Size of the largest level set of a raw residue vector.
pub(crate) fn max_level_size(v: &[u32], p: u32) -> usize {
    let mut counts = vec![0usize; p as usize];
    for &m in v {
        counts[m as usize] += 1;
    }
    counts.into_iter().max().unwrap_or(0)
}

fn check_nontrivial(x: &GroupElement, d: usize) -> Result<()> {
    x.params().check_dim(d)?;
    if x.is_identity() {
        return Err(Error::Domain("fixed-point predicate is defined for nontrivial elements".into()));
    }
    Ok(())
}

/// Whether a nontrivial element has fixed points on a d-dimensional `X_n^p(Λ)`.
pub fn has_fixed_points(x: &GroupElement, d: usize) -> Result<bool> {
    check_nontrivial(x, d)?;
    let n = x.params().n;
    Ok(max_level_size(x.exponents(), x.params().p) + d > n)
}

/// One stratum per level set of size at least n + 1 - d.
pub fn fixed_locus_strata(x: &GroupElement, d: usize) -> Result<Vec<FixedStratum>> {
    check_nontrivial(x, d)?;
    let gp = x.params();
    let threshold = gp.n + 1 - d;
    Ok(level_sets(x)
        .by_value
        .into_iter()
        .filter(|(_, idx)| idx.len() >= threshold)
        .map(|(label, indices)| {
            let dim = indices.len() - threshold;
            let s = indices.len();
            FixedStratum { label, indices, dim, induced_type: (dim, gp.p, s - 1) }
        })
        .collect())
}

pub fn strata_report(x: &GroupElement, d: usize) -> Result<StrataReport> {
    Ok(StrataReport { element: x.clone(), strata: fixed_locus_strata(x, d)? })
}

/// Whether every nontrivial element of K acts without fixed points.
///
/// Enumerates all of K; fails with a resource error when |K| exceeds `cap`.
pub fn acts_freely_subgroup(k: &Subgroup, d: usize, cap: u64) -> Result<bool> {
    let gp = k.params();
    gp.check_dim(d)?;
    let size = (gp.p as u64).checked_pow(k.dim() as u32);
    match size {
        Some(s) if s <= cap => {}
        _ => return Err(Error::resource("subgroup enumeration", k.order(), cap)),
    }
    let threshold = gp.n + 1 - d;
    Ok(k
        .elements()
        .filter(|x| !x.is_identity())
        .all(|x| max_level_size(x.exponents(), gp.p) < threshold))
}

/// Necessary condition `n + 1 <= (p^m - 1)/(p - 1)` for a freely acting K
/// with H/K ≅ Z_p^m.
pub fn free_rank_bound(p: u32, m: usize, n: usize) -> bool {
    // (p^m - 1)/(p - 1) = 1 + p + ... + p^{m-1}, saturating
    let mut sum: u128 = 0;
    let mut term: u128 = 1;
    for _ in 0..m {
        sum = sum.saturating_add(term);
        term = term.saturating_mul(p as u128);
    }
    (n as u128) < sum
}
