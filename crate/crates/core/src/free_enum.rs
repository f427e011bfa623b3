//! Freely acting subgroups K ≤ H with H/K ≅ Z_p^m, their normalized
//! exponent-matrix description for surfaces, classification up to generator
//! permutations, and explicit kernel constructions for p = 2.
//!
//! A subgroup K acts freely on a d-dimensional `X_n^p(Λ)` iff no nontrivial
//! element has a representative with at most d nonzero exponents. Writing
//! `θ : F_p^{n+1} -> F_p^m` for a surjection with kernel the preimage of K,
//! that is the same as asking every d of the columns `θ(e_j)` to be linearly
//! independent. The exhaustive enumerator uses that dual test as its filter.

use std::collections::{BTreeSet, HashMap, VecDeque};

use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixed_points::{free_rank_bound, DEFAULT_ELEMENT_CAP};
use crate::group::{GeneratorPermutation, GroupElement, GroupParams, Subgroup};
use crate::linalg;

pub const DEFAULT_SUBSPACE_CAP: u64 = 1 << 24;
pub const DEFAULT_ORBIT_CAP: usize = 1 << 20;
/// Largest number of generators for which the full permutation canonicalizer runs.
pub const FULL_CANONICALIZER_LETTERS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Normalized,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerationTask {
    pub d: usize,
    pub p: u32,
    pub n: usize,
    pub m: usize,
    pub mode: Mode,
    pub subspace_cap: u64,
    pub element_cap: u64,
    pub orbit_cap: usize,
}

impl EnumerationTask {
    pub fn new(d: usize, p: u32, n: usize, m: usize) -> Self {
        EnumerationTask {
            d,
            p,
            n,
            m,
            mode: Mode::Exhaustive,
            subspace_cap: DEFAULT_SUBSPACE_CAP,
            element_cap: DEFAULT_ELEMENT_CAP,
            orbit_cap: DEFAULT_ORBIT_CAP,
        }
    }

    fn params(&self) -> Result<GroupParams> {
        let gp = GroupParams::new(self.p, self.n)?;
        gp.require_prime("subgroup enumeration")?;
        gp.check_dim(self.d)?;
        Ok(gp)
    }

    /// Number of candidate subspaces the exhaustive mode visits.
    pub fn candidate_count(&self) -> BigUint {
        if self.m > self.n {
            return BigUint::default();
        }
        linalg::gaussian_binomial(self.n, self.n - self.m, self.p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason")]
pub enum BoundVerdict {
    PossiblyNonempty,
    Empty(String),
}

impl BoundVerdict {
    pub fn is_empty(&self) -> bool {
        matches!(self, BoundVerdict::Empty(_))
    }
}

/// Cheap necessary conditions for 𝓕(d; p, n, m) to be nonempty.
pub fn necessary_bounds(d: usize, p: u32, n: usize, m: usize) -> Result<BoundVerdict> {
    if !linalg::is_prime(p) {
        return Err(Error::Unsupported(format!("bounds assume prime p, got {p}")));
    }
    if m > n {
        return Ok(BoundVerdict::Empty(format!("quotient rank m = {m} exceeds n = {n}")));
    }
    if m < d {
        return Ok(BoundVerdict::Empty(format!("m = {m} < d = {d}")));
    }
    if m == 2 && d == 2 && p < 4 {
        return Ok(BoundVerdict::Empty(format!("m = d = 2 needs p >= 4, got p = {p}")));
    }
    if !free_rank_bound(p, m, n) {
        return Ok(BoundVerdict::Empty(format!("n + 1 = {} exceeds (p^m - 1)/(p - 1)", n + 1)));
    }
    Ok(BoundVerdict::PossiblyNonempty)
}

/// Whether every `d` of the given columns (vectors in F_p^m) are linearly
/// independent.
fn columns_independent(cols: &[Vec<u32>], d: usize, p: u32, subsets: &[Vec<usize>]) -> bool {
    let m = cols.first().map_or(0, Vec::len);
    if d > m {
        return false;
    }
    if d == 1 || d == 2 {
        // nonzero and, for d = 2, pairwise non-proportional: compare projective normal forms
        let mut seen = BTreeSet::new();
        for c in cols {
            let Some(&lead) = c.iter().find(|&&x| x != 0) else {
                return false;
            };
            if d == 2 {
                let inv = linalg::inv_mod(lead, p);
                let norm: Vec<u32> = c.iter().map(|&x| linalg::mul_mod(x, inv, p)).collect();
                if !seen.insert(norm) {
                    return false;
                }
            }
        }
        return true;
    }
    subsets.iter().all(|s| {
        let rows: Vec<Vec<u32>> = s.iter().map(|&j| cols[j].clone()).collect();
        linalg::rank(&rows, p) == d
    })
}

/// Columns θ(e_1), ..., θ(e_{n+1}) for the preimage spanned by `rows` (length
/// n, last coordinate implicitly 0) together with the all-ones vector.
fn dual_columns(rows: &[Vec<u32>], pivots: &[usize], n: usize, p: u32) -> Vec<Vec<u32>> {
    let ns = linalg::nullspace(rows, pivots, n, p);
    let m = ns.len();
    let mut cols = vec![vec![0u32; m]; n + 1];
    for (i, v) in ns.iter().enumerate() {
        let mut sum = 0;
        for j in 0..n {
            cols[j][i] = v[j];
            sum = linalg::add_mod(sum, v[j], p);
        }
        cols[n][i] = linalg::neg_mod(sum, p);
    }
    cols
}

/// All K in 𝓕(d; p, n, m), sorted by canonical key.
///
/// Visits every (n-m)-dimensional subspace of H ≅ F_p^n through its reduced
/// echelon basis; pivot patterns are processed in parallel.
pub fn enumerate_all(task: &EnumerationTask) -> Result<Vec<Subgroup>> {
    let gp = task.params()?;
    if task.m > task.n {
        return Ok(Vec::new());
    }
    let count = task.candidate_count();
    if count > BigUint::from(task.subspace_cap) {
        return Err(Error::resource("subspace enumeration", count, task.subspace_cap));
    }
    let (n, p, d) = (task.n, task.p, task.d);
    let k = n - task.m;
    let subsets: Vec<Vec<usize>> = if d > 2 { (0..=n).combinations(d).collect() } else { Vec::new() };
    let patterns: Vec<Vec<usize>> = (0..n).combinations(k).collect();

    let mut found: Vec<Subgroup> = patterns
        .par_iter()
        .map(|pattern| {
            let mut local = Vec::new();
            linalg::for_each_rref(pattern, n, p, |rows| {
                let cols = dual_columns(rows, pattern, n, p);
                if columns_independent(&cols, d, p, &subsets) {
                    let lifted: Vec<Vec<u32>> = rows
                        .iter()
                        .map(|r| r.iter().copied().chain(std::iter::once(0)).collect())
                        .collect();
                    local.push(Subgroup::from_lift_rows(&lifted, gp).expect("prime p checked"));
                }
                true
            });
            local
        })
        .flatten()
        .collect();
    found.sort_by_cached_key(Subgroup::canonical_key);
    Ok(found)
}

/// Exponent data `r_{i,·}` for i = m+1, ..., n+1 of a normalized surjection
/// `θ(φ_j) = e_j (j ≤ m)`, `θ(φ_i) = Σ_c r_{i,c} e_c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExponentMatrix {
    pub p: u32,
    pub m: usize,
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

/// Which of the four normalized-form conditions a matrix breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// column sums `1 + Σ_i r_{i,c}` not zero mod p
    ColumnSum(usize),
    /// a zero row
    ZeroRow(usize),
    /// a row with exactly m-1 zero coordinates
    NearUnitRow(usize),
    /// rows i, j with `r_i + l r_j ≡ 0`
    Proportional(usize, usize),
}

fn row_ok(row: &[u32]) -> Option<fn(usize) -> Violation> {
    let zeros = row.iter().filter(|&&x| x == 0).count();
    if zeros == row.len() {
        Some(Violation::ZeroRow)
    } else if zeros + 1 == row.len() {
        Some(Violation::NearUnitRow)
    } else {
        None
    }
}

fn pair_ok(a: &[u32], b: &[u32], p: u32) -> bool {
    (1..p).all(|l| a.iter().zip(b).any(|(&x, &y)| linalg::add_mod(x, linalg::mul_mod(l, y, p), p) != 0))
}

impl ExponentMatrix {
    /// Every broken condition (column sums, nonzero rows, no near-unit rows,
    /// no proportional pairs); row indices are 0-based into `rows`.
    pub fn violations(&self) -> Vec<Violation> {
        let p = self.p;
        let mut out = Vec::new();
        for c in 0..self.m {
            let s = self.rows.iter().fold(1, |acc, r| linalg::add_mod(acc, r[c], p));
            if s != 0 {
                out.push(Violation::ColumnSum(c));
            }
        }
        for (i, r) in self.rows.iter().enumerate() {
            if let Some(v) = row_ok(r) {
                out.push(v(i));
            }
        }
        for (i, j) in (0..self.rows.len()).tuple_combinations() {
            if !pair_ok(&self.rows[i], &self.rows[j], p) {
                out.push(Violation::Proportional(i, j));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// K = <φ_1^{r_{i,1}} ··· φ_m^{r_{i,m}} φ_i^{-1} : i = m+1, ..., n>.
    pub fn to_subgroup(&self) -> Result<Subgroup> {
        let gp = GroupParams::new(self.p, self.n)?;
        let gens: Result<Vec<GroupElement>> = self
            .rows
            .iter()
            .take(self.n - self.m)
            .enumerate()
            .map(|(t, r)| {
                let mut raw = vec![0i64; self.n + 1];
                for (c, &x) in r.iter().enumerate() {
                    raw[c] = x as i64;
                }
                raw[self.m + t] = -1;
                GroupElement::normalize(&raw, gp)
            })
            .collect();
        Subgroup::from_generators(&gens?, gp)
    }
}

/// All normalized exponent matrices for surfaces (d = 2).
///
/// Rows are chosen by backtracking with the row and pair conditions checked
/// incrementally; the last row is forced by the column-sum condition.
pub fn enumerate_normalized(task: &EnumerationTask) -> Result<Vec<ExponentMatrix>> {
    if task.d != 2 {
        return Err(Error::Unsupported(format!(
            "normalized form is only available for d = 2 (got d = {}); use exhaustive mode",
            task.d
        )));
    }
    task.params()?;
    let (p, m, n) = (task.p, task.m, task.n);
    if m == 0 || m > n {
        return Ok(Vec::new());
    }
    let nrows = n + 1 - m;
    let candidates: Vec<Vec<u32>> = (0..m)
        .map(|_| 0..p)
        .multi_cartesian_product()
        .filter(|r| row_ok(r).is_none())
        .collect();

    struct Search<'a> {
        candidates: &'a [Vec<u32>],
        nrows: usize,
        p: u32,
        m: usize,
        n: usize,
        visited: u64,
        cap: u64,
        out: Vec<ExponentMatrix>,
    }

    // each visited partial matrix counts against the cap
    fn recurse(s: &mut Search, stack: &mut Vec<Vec<u32>>) -> Result<()> {
        s.visited += 1;
        if s.visited > s.cap {
            return Err(Error::resource("normalized search", format!("more than {}", s.cap), s.cap));
        }
        let p = s.p;
        if stack.len() + 1 == s.nrows {
            let last: Vec<u32> = (0..s.m)
                .map(|c| {
                    let sum = stack.iter().fold(1, |acc, r| linalg::add_mod(acc, r[c], p));
                    linalg::neg_mod(sum, p)
                })
                .collect();
            if row_ok(&last).is_none() && stack.iter().all(|r| pair_ok(r, &last, p)) {
                let mut rows = stack.clone();
                rows.push(last);
                s.out.push(ExponentMatrix { p, m: s.m, n: s.n, rows });
            }
            return Ok(());
        }
        for c in s.candidates {
            if stack.iter().all(|r| pair_ok(r, c, p)) {
                stack.push(c.clone());
                recurse(s, stack)?;
                stack.pop();
            }
        }
        Ok(())
    }

    let mut search =
        Search { candidates: &candidates, nrows, p, m, n, visited: 0, cap: task.subspace_cap, out: Vec::new() };
    recurse(&mut search, &mut Vec::with_capacity(nrows))?;
    Ok(search.out)
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitClass {
    pub representative: Subgroup,
    #[serde(rename = "orbitSize")]
    pub orbit_size: usize,
    #[serde(skip)]
    pub members: Vec<Vec<u8>>,
}

/// Partitions `subgroups` into orbits of the generator permutation group.
///
/// Orbits are closed by breadth-first search under the transposition Ψ₁ and
/// the cycle Ψ₂. An image outside the input is an inconsistency: the input
/// was not a union of orbits. Output is sorted by representative key.
pub fn classify_orbits(subgroups: &[Subgroup]) -> Result<Vec<OrbitClass>> {
    classify_orbits_capped(subgroups, DEFAULT_ORBIT_CAP)
}

pub fn classify_orbits_capped(subgroups: &[Subgroup], cap: usize) -> Result<Vec<OrbitClass>> {
    if subgroups.len() > cap {
        return Err(Error::resource("orbit classification", subgroups.len(), cap));
    }
    let mut sorted: Vec<(Vec<u8>, &Subgroup)> = subgroups.iter().map(|k| (k.canonical_key(), k)).collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    sorted.dedup_by(|a, b| a.0 == b.0);
    let index: HashMap<&[u8], usize> = sorted.iter().enumerate().map(|(i, (key, _))| (key.as_slice(), i)).collect();

    let mut visited = vec![false; sorted.len()];
    let mut out = Vec::new();
    for start in 0..sorted.len() {
        if visited[start] {
            continue;
        }
        let size = sorted[start].1.params().len();
        let gens = [GeneratorPermutation::psi1(size), GeneratorPermutation::psi2(size)];
        visited[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut members = Vec::new();
        while let Some(i) = queue.pop_front() {
            members.push(sorted[i].0.clone());
            for g in &gens {
                let img = sorted[i].1.permuted(g)?;
                let key = img.canonical_key();
                let Some(&j) = index.get(key.as_slice()) else {
                    return Err(Error::Inconsistency(format!(
                        "image {img} of {} leaves the input set",
                        sorted[i].1
                    )));
                };
                if !visited[j] {
                    visited[j] = true;
                    queue.push_back(j);
                }
            }
        }
        members.sort();
        out.push(OrbitClass { representative: sorted[start].1.clone(), orbit_size: members.len(), members });
    }
    Ok(out)
}

/// Closure of `subgroups` under Ψ₁ and Ψ₂, sorted by canonical key.
pub fn close_under_autg(subgroups: &[Subgroup], cap: usize) -> Result<Vec<Subgroup>> {
    if subgroups.len() > cap {
        return Err(Error::resource("orbit closure", subgroups.len(), cap));
    }
    let mut seen: HashMap<Vec<u8>, Subgroup> = HashMap::new();
    let mut queue: VecDeque<Subgroup> = VecDeque::new();
    for k in subgroups {
        if seen.insert(k.canonical_key(), k.clone()).is_none() {
            queue.push_back(k.clone());
        }
    }
    while let Some(k) = queue.pop_front() {
        let size = k.params().len();
        for g in [GeneratorPermutation::psi1(size), GeneratorPermutation::psi2(size)] {
            let img = k.permuted(&g)?;
            let key = img.canonical_key();
            if !seen.contains_key(&key) {
                if seen.len() >= cap {
                    return Err(Error::resource("orbit closure", format!("more than {cap}"), cap));
                }
                seen.insert(key, img.clone());
                queue.push_back(img);
            }
        }
    }
    let mut out: Vec<(Vec<u8>, Subgroup)> = seen.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, k)| k).collect())
}

/// Lexicographically smallest image of K over all (n+1)! generator permutations.
pub fn full_canonical_form(k: &Subgroup) -> Result<Subgroup> {
    let size = k.params().len();
    if size > FULL_CANONICALIZER_LETTERS {
        return Err(Error::Unsupported(format!(
            "full canonicalizer runs for at most {FULL_CANONICALIZER_LETTERS} generators, got {size}"
        )));
    }
    let mut best = k.clone();
    let mut best_key = k.canonical_key();
    for perm in (0..size).permutations(size) {
        let img = k.permuted(&GeneratorPermutation::new(perm)?)?;
        let key = img.canonical_key();
        if key < best_key {
            best_key = key;
            best = img;
        }
    }
    Ok(best)
}

/// Kernel of `θ : H -> F_p^m` given the images of all n+1 canonical generators.
///
/// The images must sum to zero (θ kills φ_1···φ_{n+1}) and span F_p^m.
pub fn kernel_of_images(images: &[Vec<u32>], p: u32) -> Result<Subgroup> {
    let gp = GroupParams::new(p, images.len().saturating_sub(1))?;
    gp.require_prime("kernel construction")?;
    let m = images.first().map_or(0, Vec::len);
    if images.iter().any(|v| v.len() != m) {
        return Err(Error::Dimension("images of different lengths".into()));
    }
    let mut sum = vec![0u32; m];
    for v in images {
        linalg::axpy(&mut sum, 1, v, p);
    }
    if sum.iter().any(|&x| x != 0) {
        return Err(Error::Domain("images do not multiply to the identity".into()));
    }
    if linalg::rank(images, p) != m {
        return Err(Error::Domain("images do not span the target".into()));
    }
    // θ as an m × (n+1) matrix; its null space is the preimage of K
    let mut theta: Vec<Vec<u32>> = (0..m).map(|c| images.iter().map(|v| v[c]).collect()).collect();
    let pivots = linalg::rref(&mut theta, p);
    let ker = linalg::nullspace(&theta, &pivots, gp.len(), p);
    Subgroup::from_lift_rows(&ker, gp)
}

/// The explicit p = 2 constructions of freely acting subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    /// quotient rank n-1; `blocks` partition {1, ..., n-1}, each of size ≥ 2
    NMinus1 { n: usize, blocks: [Vec<usize>; 2] },
    /// quotient rank n-2; `blocks` are distinct subsets of {1, ..., n-2} of
    /// size ≥ 2 whose symmetric difference is the whole set
    NMinus2 { n: usize, blocks: [Vec<usize>; 3] },
    /// m ≥ 4 even, n = (m-1)(m+2)/2
    EvenM { m: usize },
    /// m ≥ 3 odd, n = m(m+1)/2
    OddM { m: usize },
}

impl FamilyKind {
    /// Rank n-1 family with blocks {1, ..., ⌊(n-1)/2⌋} and the rest.
    pub fn n_minus_1(n: usize) -> Self {
        let cut = (n.saturating_sub(1)) / 2;
        FamilyKind::NMinus1 { n, blocks: [(1..=cut).collect(), (cut + 1..n).collect()] }
    }

    /// Rank n-2 family: three nearly equal consecutive blocks when n ≥ 8,
    /// otherwise {1,2}, {1,3}, {1,4,...,n-2}, since a partition into blocks of
    /// size ≥ 2 needs n - 2 ≥ 6.
    pub fn n_minus_2(n: usize) -> Self {
        let total = n.saturating_sub(2);
        let blocks = if total >= 6 {
            let a = total / 3;
            let b = (total - a) / 2;
            [(1..=a).collect(), (a + 1..=a + b).collect(), (a + b + 1..=total).collect()]
        } else {
            [vec![1, 2], vec![1, 3], std::iter::once(1).chain(4..=total).collect()]
        };
        FamilyKind::NMinus2 { n, blocks }
    }

    pub fn n(&self) -> usize {
        match self {
            FamilyKind::NMinus1 { n, .. } | FamilyKind::NMinus2 { n, .. } => *n,
            FamilyKind::EvenM { m } => (m - 1) * (m + 2) / 2,
            FamilyKind::OddM { m } => m * (m + 1) / 2,
        }
    }

    pub fn quotient_rank(&self) -> usize {
        match self {
            FamilyKind::NMinus1 { n, .. } => n - 1,
            FamilyKind::NMinus2 { n, .. } => n - 2,
            FamilyKind::EvenM { m } | FamilyKind::OddM { m } => *m,
        }
    }
}

fn check_partition(blocks: &[Vec<usize>], total: usize) -> Result<()> {
    let mut seen = vec![false; total + 1];
    for b in blocks {
        if b.len() < 2 {
            return Err(Error::Domain(format!("block {b:?} has fewer than 2 elements")));
        }
        for &i in b {
            if i == 0 || i > total || seen[i] {
                return Err(Error::Domain(format!("blocks do not partition 1..={total}")));
            }
            seen[i] = true;
        }
    }
    if seen[1..].iter().any(|s| !s) {
        return Err(Error::Domain(format!("blocks do not cover 1..={total}")));
    }
    Ok(())
}

/// Blocks of size ≥ 2, pairwise distinct, symmetric difference = {1..=total}.
fn check_cover(blocks: &[Vec<usize>], total: usize) -> Result<()> {
    let mut parity = vec![false; total + 1];
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for b in blocks {
        let mut set = b.clone();
        set.sort_unstable();
        set.dedup();
        if set.len() < 2 || set.len() != b.len() {
            return Err(Error::Domain(format!("block {b:?} needs at least 2 distinct elements")));
        }
        if sets.contains(&set) {
            return Err(Error::Domain(format!("block {b:?} is repeated")));
        }
        for &i in &set {
            if i == 0 || i > total {
                return Err(Error::Domain(format!("block {b:?} leaves 1..={total}")));
            }
            parity[i] ^= true;
        }
        sets.push(set);
    }
    if !parity[1..].iter().all(|&x| x) {
        return Err(Error::Domain(format!("blocks do not sum to 1..={total} mod 2")));
    }
    Ok(())
}

fn unit(m: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; m];
    v[i] = 1;
    v
}

fn indicator(m: usize, block: &[usize]) -> Vec<u32> {
    let mut v = vec![0; m];
    for &i in block {
        v[i - 1] = 1;
    }
    v
}

/// Builds ker θ for the chosen construction.
pub fn construct_family(kind: &FamilyKind) -> Result<Subgroup> {
    let images: Vec<Vec<u32>> = match kind {
        FamilyKind::NMinus1 { n, blocks } => {
            if *n < 5 {
                return Err(Error::Domain(format!("rank n-1 family needs n >= 5, got {n}")));
            }
            let m = n - 1;
            check_partition(blocks, m)?;
            let mut v: Vec<_> = (0..m).map(|i| unit(m, i)).collect();
            v.push(indicator(m, &blocks[0]));
            v.push(indicator(m, &blocks[1]));
            v
        }
        FamilyKind::NMinus2 { n, blocks } => {
            if *n < 6 {
                return Err(Error::Domain(format!("rank n-2 family needs n >= 6, got {n}")));
            }
            let m = n - 2;
            check_cover(blocks, m)?;
            let mut v: Vec<_> = (0..m).map(|i| unit(m, i)).collect();
            v.extend(blocks.iter().map(|b| indicator(m, b)));
            v
        }
        FamilyKind::EvenM { m } => {
            if *m < 4 || m % 2 != 0 {
                return Err(Error::Domain(format!("even family needs even m >= 4, got {m}")));
            }
            let mut v: Vec<_> = (0..*m).map(|i| unit(*m, i)).collect();
            v.extend((1..=*m).tuple_combinations().map(|(i, j)| indicator(*m, &[i, j])));
            v
        }
        FamilyKind::OddM { m } => {
            if *m < 3 || m % 2 != 1 {
                return Err(Error::Domain(format!("odd family needs odd m >= 3, got {m}")));
            }
            let mut v: Vec<_> = (0..*m).map(|i| unit(*m, i)).collect();
            v.extend((1..=*m).tuple_combinations().map(|(i, j)| indicator(*m, &[i, j])));
            v.push(vec![1; *m]);
            v
        }
    };
    debug_assert_eq!(images.len(), kind.n() + 1);
    kernel_of_images(&images, 2)
}
