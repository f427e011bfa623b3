//! Dimensions of `H^i(X, O_X(r))` for `X = X_n^p(Λ)`, plurigenera and the
//! surface classification, and the hyperbolicity case split with its
//! Riemann–Hurwitz witnesses.
//!
//! X is a complete intersection of n - d hypersurfaces that are linear in the
//! p-th powers, so `H^0(O_X(r))` has a monomial basis: degree-r monomials in
//! `x_1, ..., x_{n+1}` whose last n - d exponents are below p.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json::serialize_biguint;

pub const DEFAULT_ORACLE_CAP: i64 = 60;

/// `r_1 = (n - d)p - n - 1`, the twist with `ω_X ≅ O_X(r_1)`.
pub fn r1(d: usize, p: u32, n: usize) -> i64 {
    (n as i64 - d as i64) * p as i64 - n as i64 - 1
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of tuples in `{0, ..., p-1}^len` with each coordinate sum s, for s ≤ max_sum.
fn bounded_tuple_counts(len: usize, p: u32, max_sum: usize) -> Vec<BigUint> {
    let mut counts = vec![BigUint::zero(); max_sum + 1];
    counts[0] = BigUint::one();
    for _ in 0..len {
        let mut next = vec![BigUint::zero(); max_sum + 1];
        for (s, c) in counts.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for j in 0..p as usize {
                if s + j > max_sum {
                    break;
                }
                next[s + j] += c;
            }
        }
        counts = next;
    }
    counts
}

/// `dim H^0(X, O_X(r))` by the piecewise closed form: zero for r < 0,
/// `C(r+n, n)` for r < p, otherwise `Σ_{j ∈ Δ_r} C(r - |j| + d, d)`.
pub fn h0_twist(d: usize, p: u32, n: usize, r: i64) -> BigUint {
    if r < 0 {
        return BigUint::zero();
    }
    let r = r as u64;
    if r < p as u64 {
        return binomial(r + n as u64, n as u64);
    }
    let reach = ((n - d) * (p as usize - 1)).min(r as usize);
    bounded_tuple_counts(n - d, p, reach)
        .iter()
        .enumerate()
        .map(|(s, c)| c * binomial(r - s as u64 + d as u64, d as u64))
        .sum()
}

/// Independent count of the monomial basis of `H^0(O_X(r))`, adding one
/// variable at a time with the exponent bound on the last n - d variables.
pub fn h0_oracle(d: usize, p: u32, n: usize, r: i64) -> Result<BigUint> {
    h0_oracle_capped(d, p, n, r, DEFAULT_ORACLE_CAP)
}

pub fn h0_oracle_capped(d: usize, p: u32, n: usize, r: i64, cap: i64) -> Result<BigUint> {
    if r > cap {
        return Err(Error::resource("monomial count", r, cap));
    }
    if r < 0 {
        return Ok(BigUint::zero());
    }
    let r = r as usize;
    // ways[s] = monomials of degree s in the variables seen so far
    let mut ways = vec![0u128; r + 1];
    ways[0] = 1;
    for var in 0..=n {
        let bound = if var > d { (p as usize - 1).min(r) } else { r };
        let mut next = vec![0u128; r + 1];
        for (s, &w) in ways.iter().enumerate().filter(|(_, &w)| w != 0) {
            for e in 0..=bound.min(r - s) {
                next[s + e] += w;
            }
        }
        ways = next;
    }
    Ok(BigUint::from(ways[r]))
}

/// `dim H^i(X, O_X(r))`.
pub fn h_i(d: usize, p: u32, n: usize, i: usize, r: i64) -> BigUint {
    match i {
        0 => h0_twist(d, p, n, r),
        i if i < d => BigUint::zero(),
        i if i == d => h0_twist(d, p, n, r1(d, p, n) - r),
        _ => BigUint::zero(),
    }
}

/// `P_m(X) = dim H^0(O_X(m r_1))`; m = 0 gives 1.
pub fn plurigenus(d: usize, p: u32, n: usize, m: u64) -> BigUint {
    h0_twist(d, p, n, m as i64 * r1(d, p, n))
}

/// Leading coefficient `p^{n-d} r_1^d / d!` of `P_m` as a function of m.
pub fn plurigenus_leading_coefficient(d: usize, p: u32, n: usize) -> f64 {
    let fact: f64 = (1..=d).map(|k| k as f64).product();
    (p as f64).powi((n - d) as i32) * (r1(d, p, n) as f64).powi(d as i32) / fact
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kodaira {
    MinusInfinity,
    Zero,
    /// κ = d
    Full(usize),
}

impl Serialize for Kodaira {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Kodaira::MinusInfinity => s.serialize_str("-infinity"),
            Kodaira::Zero => s.serialize_u64(0),
            Kodaira::Full(d) => s.serialize_u64(*d as u64),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SurfaceClass {
    Rational,
    K3,
    GeneralType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CohomologyProfile {
    pub d: usize,
    pub p: u32,
    pub n: usize,
    pub r1: i64,
    pub kodaira: Kodaira,
    /// `p_g = p_a = h^0(O_X(r_1))`
    #[serde(serialize_with = "serialize_biguint")]
    pub pg: BigUint,
    pub is_calabi_yau: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surface_class: Option<SurfaceClass>,
}

fn check_variety_params(d: usize, p: u32, n: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Domain(format!("d must be at least 2, got {d}")));
    }
    if n < d + 1 {
        return Err(Error::Domain(format!("n must be at least d + 1, got n = {n}, d = {d}")));
    }
    if p < 2 {
        return Err(Error::Domain(format!("p must be at least 2, got {p}")));
    }
    Ok(())
}

pub fn genus_profile(d: usize, p: u32, n: usize) -> Result<CohomologyProfile> {
    check_variety_params(d, p, n)?;
    let r = r1(d, p, n);
    let kodaira = match r {
        r if r < 0 => Kodaira::MinusInfinity,
        0 => Kodaira::Zero,
        _ => Kodaira::Full(d),
    };
    let surface_class = (d == 2).then_some(match r {
        r if r < 0 => SurfaceClass::Rational,
        0 => SurfaceClass::K3,
        _ => SurfaceClass::GeneralType,
    });
    Ok(CohomologyProfile {
        d,
        p,
        n,
        r1: r,
        kodaira,
        pg: h0_twist(d, p, n, r),
        is_calabi_yau: r == 0,
        surface_class,
    })
}

/// Genus of a connected degree-D abelian cover of P^1 branched over k
/// points, where every point over the i-th branch value has local order e_i.
pub fn rh_genus(degree: u64, orders: &[u64]) -> Result<u64> {
    if degree == 0 {
        return Err(Error::Inconsistency("cover degree must be positive".into()));
    }
    let mut twice_g_minus_2 = -2 * degree as i128;
    for &e in orders {
        if e == 0 || !degree.is_multiple_of(e) {
            return Err(Error::Inconsistency(format!("branch order {e} does not divide degree {degree}")));
        }
        twice_g_minus_2 += (degree / e) as i128 * (e as i128 - 1);
    }
    let twice_g = twice_g_minus_2 + 2;
    if twice_g < 0 || twice_g % 2 != 0 {
        return Err(Error::Inconsistency(format!("branching data gives 2g = {twice_g}")));
    }
    Ok((twice_g / 2) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HyperbolicityCase {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    K3Exception,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "case")]
pub enum HyperbolicityStatus {
    NotAlgebraicallyHyperbolic(HyperbolicityCase),
    Unknown,
}

/// A low-genus curve on the quotient surface: a line through chosen points
/// of the branch arrangement, covered by a curve W of the given genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CurveWitness {
    pub construction: String,
    pub cover_degree: u64,
    pub branch_orders: Vec<u64>,
    pub genus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperbolicityVerdict {
    #[serde(flatten)]
    pub status: HyperbolicityStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CurveWitness>,
}

fn witness(construction: &str, degree: u64, orders: Vec<u64>) -> Result<CurveWitness> {
    let genus = rh_genus(degree, &orders)?;
    Ok(CurveWitness { construction: construction.into(), cover_degree: degree, branch_orders: orders, genus })
}

/// Non-hyperbolicity verdict for the quotients of `X_n^p(Λ)` by freely
/// acting subgroups.
pub fn hyperbolicity_verdict(d: usize, p: u32, n: usize) -> Result<HyperbolicityVerdict> {
    check_variety_params(d, p, n)?;
    use HyperbolicityCase::*;
    use HyperbolicityStatus::*;
    if (d, p, n) == (2, 4, 3) || (d, p, n) == (2, 2, 5) {
        return Ok(HyperbolicityVerdict { status: NotAlgebraicallyHyperbolic(K3Exception), witness: None });
    }
    let pp = p as u64;
    let (status, witness) = if n < 2 * d {
        let w = witness("line from Σ1∩…∩Σd to a point of Σd+1∩…∩Σn+1, two branch points", pp, vec![pp, pp])?;
        (NotAlgebraicallyHyperbolic(One), Some(w))
    } else if n == 2 * d && (p == 2 || p == 3) {
        let w = witness("line from Σ1∩…∩Σd to Σd+1∩…∩Σ2d, three branch points", pp * pp, vec![pp, pp, pp])?;
        (NotAlgebraicallyHyperbolic(Two), Some(w))
    } else if n == 2 * d + 1 && p == 2 {
        let w = witness("line from Σ1∩…∩Σd to Σd+1∩…∩Σ2d, four branch points", 4, vec![2, 2, 2, 2])?;
        (NotAlgebraicallyHyperbolic(Three), Some(w))
    } else {
        (Unknown, None)
    };
    Ok(HyperbolicityVerdict { status, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    /// Brute-force monomial count for small parameters.
    fn h0_brute(d: usize, p: u32, n: usize, r: usize) -> u64 {
        (0..=n)
            .map(|v| if v > d { 0..p as usize } else { 0..r + 1 })
            .multi_cartesian_product()
            .filter(|a| a.iter().sum::<usize>() == r)
            .count() as u64
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0_twist(2, 2, 5, -1), BigUint::zero());
        assert_eq!(h0_twist(2, 2, 5, 2), BigUint::from(18u32));
        assert_eq!(h0_twist(2, 3, 4, 1), BigUint::from(5u32));
        assert_eq!(h0_oracle(2, 2, 5, 2).unwrap(), BigUint::from(18u32));
        assert_eq!(h0_oracle(3, 5, 7, 0).unwrap(), BigUint::one());
        assert!(matches!(h0_oracle(2, 2, 5, 61), Err(Error::Resource { .. })));
    }

    #[test]
    fn oracle_matches_brute_force() {
        for (d, p, n) in [(2, 2, 4), (2, 3, 5), (3, 2, 5), (1, 3, 3)] {
            for r in 0..8 {
                assert_eq!(h0_oracle(d, p, n, r as i64).unwrap(), BigUint::from(h0_brute(d, p, n, r)));
            }
        }
    }

    #[test]
    fn h_i_examples() {
        assert_eq!(h_i(2, 2, 5, 2, 0), BigUint::one());
        for d in 3..6 {
            assert!(h_i(d, 3, d + 2, 1, 4).is_zero());
        }
        assert!(h_i(2, 3, 5, 3, 0).is_zero());
    }

    #[test]
    fn plurigenus_examples() {
        for m in 1..10 {
            assert!(plurigenus(2, 2, 3, m).is_zero());
            assert_eq!(plurigenus(2, 4, 3, m), BigUint::one());
        }
        assert_eq!(plurigenus(2, 3, 5, 0), BigUint::one());
        assert_eq!(plurigenus(2, 3, 5, 200), BigUint::from(4_835_754u32));
        assert_eq!(plurigenus_leading_coefficient(2, 3, 5), 121.5);
    }

    #[test]
    fn profile_examples() {
        let k3 = genus_profile(2, 4, 3).unwrap();
        assert_eq!((k3.r1, k3.pg.clone(), k3.surface_class), (0, BigUint::one(), Some(SurfaceClass::K3)));
        assert!(k3.is_calabi_yau);
        assert_eq!(genus_profile(2, 2, 5).unwrap().surface_class, Some(SurfaceClass::K3));
        let rational = genus_profile(2, 3, 3).unwrap();
        assert_eq!((rational.r1, rational.pg.clone()), (-1, BigUint::zero()));
        assert_eq!(rational.kodaira, Kodaira::MinusInfinity);
        assert!(matches!(genus_profile(1, 3, 3), Err(Error::Domain(_))));
        let json = serde_json::to_value(&k3).unwrap();
        assert_eq!(json["surfaceClass"], "K3");
        assert_eq!(json["pg"], 1);
        assert_eq!(json["kodaira"], 0);
    }

    #[test]
    fn rh_examples() {
        assert_eq!(rh_genus(4, &[2, 2, 2]).unwrap(), 0);
        assert_eq!(rh_genus(9, &[3, 3, 3]).unwrap(), 1);
        assert_eq!(rh_genus(4, &[2, 2, 2, 2]).unwrap(), 1);
        assert!(matches!(rh_genus(4, &[3]), Err(Error::Inconsistency(_))));
        assert!(matches!(rh_genus(4, &[2]), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn verdict_examples() {
        let v = hyperbolicity_verdict(3, 5, 5).unwrap();
        assert_eq!(v.status, HyperbolicityStatus::NotAlgebraicallyHyperbolic(HyperbolicityCase::One));
        assert_eq!(v.witness.unwrap().genus, 0);
        let v = hyperbolicity_verdict(2, 3, 4).unwrap();
        assert_eq!(v.status, HyperbolicityStatus::NotAlgebraicallyHyperbolic(HyperbolicityCase::Two));
        assert_eq!(v.witness.unwrap().genus, 1);
        assert_eq!(hyperbolicity_verdict(2, 5, 5).unwrap().status, HyperbolicityStatus::Unknown);
        let v = hyperbolicity_verdict(2, 7, 6).unwrap();
        assert_eq!(serde_json::to_value(&v).unwrap(), serde_json::json!({"status": "Unknown"}));
        let k3 = serde_json::to_value(hyperbolicity_verdict(2, 2, 5).unwrap()).unwrap();
        assert_eq!(k3, serde_json::json!({"status": "NotAlgebraicallyHyperbolic", "case": "K3Exception"}));
        assert!(matches!(hyperbolicity_verdict(2, 3, 2), Err(Error::Domain(_))));
    }
}
