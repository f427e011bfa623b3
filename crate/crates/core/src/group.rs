//! The group H = Z_p^{n+1} / <(1,...,1)> generated by the canonical
//! diagonal generators, its subgroups, and the permutation action of the
//! generator symmetric group.
//!
//! An element is stored by its exponent vector `(m_1, ..., m_{n+1})` in the
//! normal form `m_{n+1} = 0`. A subgroup K is stored through its preimage in
//! F_p^{n+1}, which always contains the all-ones vector, as a reduced row
//! echelon basis. That basis is unique, so equality of subgroups is equality
//! of bases.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;

/// Parameters of H: exponent `p` and rank `n` (H has n+1 canonical generators).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    pub p: u32,
    pub n: usize,
}

impl GroupParams {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::Domain(format!("p must be at least 2, got {p}")));
        }
        if n < 1 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        Ok(GroupParams { p, n })
    }

    /// Number of canonical generators, n+1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_prime(&self) -> bool {
        linalg::is_prime(self.p)
    }

    pub(crate) fn require_prime(&self, what: &str) -> Result<()> {
        if self.is_prime() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{what} requires prime p, got p = {}", self.p)))
        }
    }

    pub(crate) fn check_dim(&self, d: usize) -> Result<()> {
        if d < 1 || d > self.n {
            return Err(Error::Domain(format!("dimension d = {d} outside 1..={}", self.n)));
        }
        Ok(())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { p: self.p, exps: vec![0; self.len()] }
    }

    /// The canonical generator phi_j, 1-based.
    pub fn generator(&self, j: usize) -> Result<GroupElement> {
        if j < 1 || j > self.len() {
            return Err(Error::Domain(format!("generator index {j} outside 1..={}", self.len())));
        }
        let mut raw = vec![0i64; self.len()];
        raw[j - 1] = 1;
        GroupElement::normalize(&raw, *self)
    }

    /// All p^n elements, in lexicographic order of their normal forms.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let p = self.p;
        let n = self.n;
        let total = (p as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut idx| {
            let mut exps = vec![0u32; n + 1];
            for slot in (0..n).rev() {
                exps[slot] = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            GroupElement { p, exps }
        })
    }
}

/// An element of H in normal form (last exponent zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    p: u32,
    exps: Vec<u32>,
}

impl GroupElement {
    /// Normal form of a raw exponent vector of length n+1.
    pub fn normalize(raw: &[i64], params: GroupParams) -> Result<Self> {
        if raw.len() != params.len() {
            return Err(Error::Dimension(format!(
                "exponent vector has length {}, expected {}",
                raw.len(),
                params.len()
            )));
        }
        let p = params.p as i64;
        let last = raw[raw.len() - 1];
        let exps = raw.iter().map(|&m| (m - last).rem_euclid(p) as u32).collect();
        Ok(GroupElement { p: params.p, exps })
    }

    pub(crate) fn from_residues(v: &[u32], p: u32) -> Self {
        let last = v[v.len() - 1];
        let exps = v.iter().map(|&m| linalg::add_mod(m, p - last % p, p)).collect();
        GroupElement { p, exps }
    }

    pub fn params(&self) -> GroupParams {
        GroupParams { p: self.p, n: self.exps.len() - 1 }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&m| m == 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.exps.len() != other.exps.len() {
            return Err(Error::Dimension(format!(
                "elements of different groups: (p={}, n={}) vs (p={}, n={})",
                self.p,
                self.exps.len() - 1,
                other.p,
                other.exps.len() - 1
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let exps = self.exps.iter().zip(&other.exps).map(|(&a, &b)| linalg::add_mod(a, b, self.p)).collect();
        Ok(GroupElement { p: self.p, exps })
    }

    pub fn inv(&self) -> Self {
        let exps = self.exps.iter().map(|&a| linalg::neg_mod(a, self.p)).collect();
        GroupElement { p: self.p, exps }
    }

    pub fn pow(&self, k: u64) -> Self {
        let k = (k % self.p as u64) as u32;
        let exps = self.exps.iter().map(|&a| linalg::mul_mod(a, k, self.p)).collect();
        GroupElement { p: self.p, exps }
    }

    /// Order of the element; always divides p.
    pub fn order(&self) -> u32 {
        let g = self.exps.iter().fold(self.p, |g, &m| num_integer::gcd(g, m));
        self.p / g
    }

    /// The representative obtained by subtracting `c` from every exponent.
    pub fn shifted(&self, c: u32) -> Vec<u32> {
        self.exps.iter().map(|&m| linalg::add_mod(m, self.p - c % self.p, self.p)).collect()
    }

    /// Applies a generator permutation: phi_j is sent to phi_{sigma(j)}.
    pub fn permuted(&self, sigma: &GeneratorPermutation) -> Result<Self> {
        let moved = sigma.apply_to_vector(&self.exps)?;
        Ok(GroupElement::from_residues(&moved, self.p))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &m) in self.exps.iter().enumerate() {
            if m == 0 {
                continue;
            }
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if m == 1 {
                write!(f, "φ{}", j + 1)?;
            } else {
                write!(f, "φ{}^{}", j + 1, m)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exps.serialize(s)
    }
}

/// A permutation of the canonical generators, stored 0-based: `images[j]` is
/// the index that generator `j` is sent to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorPermutation {
    images: Vec<usize>,
}

impl GeneratorPermutation {
    pub fn identity(size: usize) -> Self {
        GeneratorPermutation { images: (0..size).collect() }
    }

    /// From 0-based images; rejects non-bijections.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::Domain(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(GeneratorPermutation { images })
    }

    /// From 1-based images, as generators are numbered.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Domain("1-based permutation contains 0".into()));
        }
        Self::new(images.iter().map(|&i| i - 1).collect())
    }

    /// Swap of the first two generators.
    pub fn psi1(size: usize) -> Self {
        let mut images: Vec<usize> = (0..size).collect();
        if size >= 2 {
            images.swap(0, 1);
        }
        GeneratorPermutation { images }
    }

    /// The cycle phi_1 -> phi_{n+1}, phi_j -> phi_{j-1}.
    pub fn psi2(size: usize) -> Self {
        let images = (0..size).map(|j| if j == 0 { size - 1 } else { j - 1 }).collect();
        GeneratorPermutation { images }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::Dimension("permutations of different sizes".into()));
        }
        Ok(GeneratorPermutation { images: other.images.iter().map(|&j| self.images[j]).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.size()];
        for (j, &i) in self.images.iter().enumerate() {
            images[i] = j;
        }
        GeneratorPermutation { images }
    }

    pub(crate) fn apply_to_vector(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.size() {
            return Err(Error::Dimension(format!(
                "permutation of {} letters applied to vector of length {}",
                self.size(),
                v.len()
            )));
        }
        let mut out = vec![0; v.len()];
        for (j, &x) in v.iter().enumerate() {
            out[self.images[j]] = x;
        }
        Ok(out)
    }
}

/// A subgroup K of H, represented by the canonical basis of its preimage in
/// F_p^{n+1}. Requires p prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    params: GroupParams,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subgroup {
    /// Builds the subgroup whose preimage is spanned by `rows` and the all-ones vector.
    pub fn from_lift_rows(rows: &[Vec<u32>], params: GroupParams) -> Result<Self> {
        params.require_prime("subgroup arithmetic")?;
        let mut m = Vec::with_capacity(rows.len() + 1);
        m.push(vec![1u32; params.len()]);
        for r in rows {
            if r.len() != params.len() {
                return Err(Error::Dimension(format!(
                    "row has length {}, expected {}",
                    r.len(),
                    params.len()
                )));
            }
            m.push(r.iter().map(|&x| x % params.p).collect());
        }
        let pivots = linalg::rref(&mut m, params.p);
        Ok(Subgroup { params, basis: m, pivots })
    }

    pub fn from_generators(gens: &[GroupElement], params: GroupParams) -> Result<Self> {
        for g in gens {
            if g.params() != params {
                return Err(Error::Dimension(format!(
                    "generator {g} lives in (p={}, n={}), expected (p={}, n={})",
                    g.p,
                    g.exps.len() - 1,
                    params.p,
                    params.n
                )));
            }
        }
        let rows: Vec<Vec<u32>> = gens.iter().map(|g| g.exps.clone()).collect();
        Self::from_lift_rows(&rows, params)
    }

    pub fn trivial(params: GroupParams) -> Result<Self> {
        Self::from_lift_rows(&[], params)
    }

    pub fn whole(params: GroupParams) -> Result<Self> {
        let gens: Result<Vec<_>> = (1..=params.n).map(|j| params.generator(j)).collect();
        Self::from_generators(&gens?, params)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    /// Canonical reduced echelon basis of the preimage in F_p^{n+1}.
    pub fn basis_lift(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Rank of the preimage; equals dim(K) + 1.
    pub fn lift_rank(&self) -> usize {
        self.basis.len()
    }

    /// dim K over F_p.
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.params.p).pow(self.dim() as u32)
    }

    /// m with H/K ≅ Z_p^m.
    pub fn quotient_rank(&self) -> usize {
        self.params.n - self.dim()
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        linalg::reduce(&self.basis, &self.pivots, v, self.params.p).iter().all(|&x| x == 0)
    }

    pub fn contains(&self, x: &GroupElement) -> Result<bool> {
        if x.params() != self.params {
            return Err(Error::Dimension("element and subgroup live in different groups".into()));
        }
        Ok(self.contains_vector(&x.exps))
    }

    /// A basis of K itself (as group elements), obtained by dropping one
    /// lift row that the all-ones vector depends on.
    pub fn generators(&self) -> Vec<GroupElement> {
        // In RREF the coefficient of row i in all-ones is its entry at
        // pivot i, which is 1; so row 0 can be dropped.
        let drop = 0;
        self.basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, r)| GroupElement::from_residues(r, self.params.p))
            .collect()
    }

    /// Every element of K exactly once, as normal forms.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let gens = self.generators();
        let p = self.params.p;
        let len = self.params.len();
        let k = gens.len();
        let total = (p as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut idx| {
            let mut acc = vec![0u32; len];
            for g in &gens {
                let c = (idx % p as u64) as u32;
                idx /= p as u64;
                linalg::axpy(&mut acc, c, &g.exps, p);
            }
            GroupElement { p, exps: acc }
        })
    }

    /// Image under a generator permutation.
    pub fn permuted(&self, sigma: &GeneratorPermutation) -> Result<Self> {
        let rows: Result<Vec<Vec<u32>>> = self.basis.iter().map(|r| sigma.apply_to_vector(r)).collect();
        Self::from_lift_rows(&rows?, self.params)
    }

    /// Deterministic serialization of the canonical basis; equal keys iff
    /// equal subgroups. Bytewise order is lexicographic in (p, n, rank, entries).
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(12 + 4 * self.basis.len() * self.params.len());
        out.extend_from_slice(&self.params.p.to_be_bytes());
        out.extend_from_slice(&(self.params.n as u32).to_be_bytes());
        out.extend_from_slice(&(self.basis.len() as u32).to_be_bytes());
        for row in &self.basis {
            for &x in row {
                out.extend_from_slice(&x.to_be_bytes());
            }
        }
        out
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

#[derive(Serialize, Deserialize)]
struct SubgroupRepr {
    p: u32,
    n: usize,
    basis: Vec<Vec<u32>>,
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubgroupRepr { p: self.params.p, n: self.params.n, basis: self.basis.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subgroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SubgroupRepr::deserialize(d)?;
        let params = GroupParams::new(repr.p, repr.n).map_err(serde::de::Error::custom)?;
        if repr.basis.iter().flatten().any(|&x| x >= repr.p) {
            return Err(serde::de::Error::custom("basis entry not reduced mod p"));
        }
        Subgroup::from_lift_rows(&repr.basis, params).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(raw: &[i64], p: u32) -> GroupElement {
        GroupElement::normalize(raw, GroupParams::new(p, raw.len() - 1).unwrap()).unwrap()
    }

    fn six_point_rep() -> Subgroup {
        let gp = GroupParams::new(2, 6).unwrap();
        let gens = [
            el(&[1, 1, 0, 1, 0, 0, 0], 2),
            el(&[1, 0, 1, 0, 1, 0, 0], 2),
            el(&[0, 1, 1, 0, 0, 1, 0], 2),
        ];
        Subgroup::from_generators(&gens, gp).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert!(el(&[1, 1, 1, 1], 3).is_identity());
        assert_eq!(el(&[1, 1, 2, 0], 3).exponents(), &[1, 1, 2, 0]);
        assert_eq!(el(&[0, 0, 1, 1, 0, 1, 1], 2).exponents(), &[1, 1, 0, 0, 1, 0, 0]);
        let gp = GroupParams::new(3, 3).unwrap();
        assert!(matches!(GroupElement::normalize(&[1, 2], gp), Err(Error::Dimension(_))));
    }

    #[test]
    fn arithmetic_examples() {
        let a = el(&[1, 1, 0, 1, 0, 0, 0], 2);
        let b = el(&[1, 0, 1, 0, 1, 0, 0], 2);
        assert_eq!(a.mul(&b).unwrap().exponents(), &[0, 1, 1, 1, 1, 0, 0]);
        assert!(a.mul(&a.inv()).unwrap().is_identity());
        let x = el(&[1, 1, 2, 0], 3);
        // repeated multiplication until identity
        let mut acc = x.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.mul(&x).unwrap();
            k += 1;
        }
        assert_eq!(k, 3);
        assert_eq!(x.order(), 3);
        assert_eq!(el(&[0, 0, 0, 0], 4).order(), 1);
        assert_eq!(el(&[2, 0, 2, 0], 4).order(), 2);
        assert!(matches!(a.mul(&x), Err(Error::Dimension(_))));
    }

    #[test]
    fn subgroup_examples() {
        let k = six_point_rep();
        assert_eq!(k.lift_rank(), 4);
        assert_eq!(k.order(), BigUint::from(8u32));
        assert_eq!(k.elements().count(), 8);
        assert_eq!(k.quotient_rank(), 3);
        assert!(k.contains(&el(&[1, 1, 0, 1, 0, 0, 0], 2)).unwrap());
        assert!(!k.contains(&el(&[1, 0, 0, 0, 0, 0, 0], 2)).unwrap());

        let gp = GroupParams::new(2, 6).unwrap();
        let t = Subgroup::from_generators(&[], gp).unwrap();
        assert_eq!(t.lift_rank(), 1);
        assert_eq!(t.quotient_rank(), 6);
        let h = Subgroup::whole(gp).unwrap();
        assert_eq!(h.lift_rank(), 7);
        assert_eq!(h.quotient_rank(), 0);
    }

    #[test]
    fn composite_p_rejected_for_subgroups() {
        let gp = GroupParams::new(4, 3).unwrap();
        assert!(matches!(Subgroup::trivial(gp), Err(Error::Unsupported(_))));
        // element arithmetic still works
        let g = gp.generator(1).unwrap();
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn elements_enumerated_once() {
        let k = six_point_rep();
        let mut all: Vec<_> = k.elements().collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| k.contains(x).unwrap()));
    }

    #[test]
    fn psi_generators() {
        let gp = GroupParams::new(2, 6).unwrap();
        let psi1 = GeneratorPermutation::psi1(7);
        assert_eq!(gp.generator(1).unwrap().permuted(&psi1).unwrap(), gp.generator(2).unwrap());
        let psi2 = GeneratorPermutation::psi2(7);
        assert_eq!(gp.generator(1).unwrap().permuted(&psi2).unwrap(), gp.generator(7).unwrap());
        assert_eq!(gp.generator(3).unwrap().permuted(&psi2).unwrap(), gp.generator(2).unwrap());
        let id = GeneratorPermutation::identity(7);
        let x = el(&[1, 0, 1, 1, 0, 0, 0], 2);
        assert_eq!(x.permuted(&id).unwrap(), x);
    }

    #[test]
    fn permuted_subgroup_keeps_order() {
        let k = six_point_rep();
        let sigma = GeneratorPermutation::from_one_based(&[3, 1, 7, 2, 5, 4, 6]).unwrap();
        let img = k.permuted(&sigma).unwrap();
        assert_eq!(img.order(), k.order());
        assert_eq!(img.quotient_rank(), k.quotient_rank());
    }

    #[test]
    fn canonical_keys() {
        let k = six_point_rep();
        let gp = k.params();
        let gens = [
            el(&[0, 1, 1, 0, 0, 1, 0], 2),
            el(&[1, 1, 0, 1, 0, 0, 0], 2),
            el(&[1, 0, 1, 0, 1, 0, 0], 2),
        ];
        let k2 = Subgroup::from_generators(&gens, gp).unwrap();
        assert_eq!(k.canonical_key(), k2.canonical_key());
        let a = Subgroup::from_generators(&[gp.generator(1).unwrap()], gp).unwrap();
        let b = Subgroup::from_generators(&[gp.generator(2).unwrap()], gp).unwrap();
        assert_ne!(a.canonical_key(), b.canonical_key());
    }

    #[test]
    fn json_roundtrip() {
        let k = six_point_rep();
        let s = serde_json::to_string(&k).unwrap();
        let back: Subgroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back, k);
        let x = el(&[1, 1, 2, 0], 3);
        assert_eq!(serde_json::to_string(&x).unwrap(), "[1,1,2,0]");
        assert!(serde_json::from_str::<Subgroup>(r#"{"p":4,"n":3,"basis":[]}"#).is_err());
    }

    #[test]
    fn display() {
        let x = el(&[1, 1, 2, 0], 3);
        assert_eq!(x.to_string(), "φ1·φ2·φ3^2");
    }
}
