//! Hyperplane arrangements, the complete-intersection model of `X_n^p(Λ)`,
//! and numeric fibers of the branched cover `π : X -> P^d`.
//!
//! General position is decided in exact rational arithmetic. Everything that
//! needs p-th roots runs in `f64` complex arithmetic with the tolerances below.

use std::f64::consts::PI;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixed_points::fixed_locus_strata;
use crate::group::GroupElement;

/// Residual tolerance for points on the variety.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Tolerance for equality of projective points.
pub const POINT_TOL: f64 = 1e-8;
/// Relative distance below which a base point counts as lying on a branch hyperplane.
pub const BRANCH_PROXIMITY: f64 = 1e-6;
pub const DEFAULT_FIBER_CAP: u64 = 1 << 20;

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Rank of a rational matrix by fraction-exact Gaussian elimination.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    rational_rref(rows.to_vec()).1.len()
}

fn rational_rref(mut m: Vec<Vec<BigRational>>) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(found) = (top..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(top, found);
        let inv = m[top][col].recip();
        for x in m[top].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[top].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != top && !row[col].is_zero() {
                let c = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &c * y;
                }
            }
        }
        pivots.push(col);
        top += 1;
        if top == m.len() {
            break;
        }
    }
    m.truncate(top);
    (m, pivots)
}

/// The matrix Λ together with the n+1 hyperplanes it determines in P^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    n: usize,
    d: usize,
    lambda: Vec<Vec<BigRational>>,
    hyperplanes: Vec<Vec<BigRational>>,
}

impl Arrangement {
    /// `lambda` must be (n - d - 1) × d. n = d + 1 (empty Λ) gives the
    /// Fermat configuration of d + 2 hyperplanes.
    pub fn new(n: usize, d: usize, lambda: Vec<Vec<BigRational>>) -> Result<Self> {
        if d < 1 || n < d + 1 {
            return Err(Error::Domain(format!("arrangement needs d >= 1 and n >= d + 1, got n = {n}, d = {d}")));
        }
        if lambda.len() != n - d - 1 || lambda.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension(format!("lambda must be {} x {d}", n - d - 1)));
        }
        let one = BigRational::one();
        let zero = BigRational::zero();
        let mut hyperplanes = Vec::with_capacity(n + 1);
        for j in 0..=d {
            let mut v = vec![zero.clone(); d + 1];
            v[j] = one.clone();
            hyperplanes.push(v);
        }
        hyperplanes.push(vec![one.clone(); d + 1]);
        for row in &lambda {
            let mut v = row.clone();
            v.push(one.clone());
            hyperplanes.push(v);
        }
        Ok(Arrangement { n, d, lambda, hyperplanes })
    }

    pub fn fermat(d: usize) -> Result<Self> {
        Self::new(d + 1, d, Vec::new())
    }

    pub fn from_strings(n: usize, d: usize, lambda: &[Vec<String>]) -> Result<Self> {
        let parsed: Result<Vec<Vec<BigRational>>> =
            lambda.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect()).collect();
        Self::new(n, d, parsed?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: ArrangementRepr = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_strings(repr.n, repr.d, &repr.lambda)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ArrangementRepr {
            n: self.n,
            d: self.d,
            lambda: self.lambda.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        })
        .expect("plain struct serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn lambda(&self) -> &[Vec<BigRational>] {
        &self.lambda
    }

    /// Coefficient vectors of Σ_1, ..., Σ_{n+1}.
    pub fn hyperplanes(&self) -> &[Vec<BigRational>] {
        &self.hyperplanes
    }
}

#[derive(Serialize, Deserialize)]
struct ArrangementRepr {
    n: usize,
    d: usize,
    lambda: Vec<Vec<String>>,
}

/// Every d + 1 of the hyperplanes are independent, which makes every
/// k ≤ d + 1 of them independent.
pub fn in_general_position(arr: &Arrangement) -> bool {
    let k = arr.d + 1;
    arr.hyperplanes.iter().combinations(k).all(|sub| {
        let rows: Vec<Vec<BigRational>> = sub.into_iter().cloned().collect();
        rational_rank(&rows) == k
    })
}

/// Rejection-samples Λ with small random rational entries until the
/// arrangement is in general position.
pub fn random_omega_sample(seed: u64, n: usize, d: usize, trials: usize) -> Result<Arrangement> {
    if d < 1 || n < d + 2 {
        return Err(Error::Domain(format!("sampling needs n >= d + 2, got n = {n}, d = {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let lambda: Vec<Vec<BigRational>> = (0..n - d - 1)
            .map(|_| {
                (0..d)
                    .map(|_| {
                        let num: i64 = rng.gen_range(-20..=20);
                        let den: i64 = rng.gen_range(1..=9);
                        BigRational::new(BigInt::from(num), BigInt::from(den))
                    })
                    .collect()
            })
            .collect();
        let arr = Arrangement::new(n, d, lambda)?;
        if in_general_position(&arr) {
            return Ok(arr);
        }
    }
    Err(Error::resource("general-position sampling", format!("more than {trials} trials"), trials))
}

/// The n - d equations of `X_n^p(Λ)`, linear in the p-th powers of the coordinates.
#[derive(Debug, Clone)]
pub struct VarietyModel {
    p: u32,
    arrangement: Arrangement,
    equations: Vec<Vec<BigRational>>,
    equations_f64: Vec<Vec<f64>>,
}

impl VarietyModel {
    pub fn new(p: u32, arrangement: Arrangement) -> Result<Self> {
        if p < 2 {
            return Err(Error::Domain(format!("p must be at least 2, got {p}")));
        }
        let (n, d) = (arrangement.n, arrangement.d);
        let zero = BigRational::zero();
        let one = BigRational::one();
        let mut equations = Vec::with_capacity(n - d);
        let mut first = vec![zero.clone(); n + 1];
        for x in first.iter_mut().take(d + 2) {
            *x = one.clone();
        }
        equations.push(first);
        for (j, row) in arrangement.lambda.iter().enumerate() {
            let mut eq = vec![zero.clone(); n + 1];
            eq[..d].clone_from_slice(row);
            eq[d] = one.clone();
            eq[d + 2 + j] = one.clone();
            equations.push(eq);
        }
        let equations_f64 = equations.iter().map(|r| r.iter().map(to_f64).collect()).collect();
        Ok(VarietyModel { p, arrangement, equations, equations_f64 })
    }

    pub fn fermat(p: u32, d: usize) -> Result<Self> {
        Self::new(p, Arrangement::fermat(d)?)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.arrangement.n
    }

    pub fn d(&self) -> usize {
        self.arrangement.d
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    /// Row k holds the coefficients of x_1^p, ..., x_{n+1}^p.
    pub fn equations(&self) -> &[Vec<BigRational>] {
        &self.equations
    }
}

/// A point of projective space with complex coordinates, normalized so that
/// its first coordinate of largest modulus equals 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint {
    coords: Vec<Complex64>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        let max = coords.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if coords.is_empty() || max == 0.0 || !max.is_finite() {
            return Err(Error::Domain("projective point needs a finite nonzero coordinate".into()));
        }
        let lead = coords.iter().position(|z| z.norm() >= max * (1.0 - 1e-12)).expect("max exists");
        let scale = coords[lead];
        Ok(ProjectivePoint { coords: coords.iter().map(|z| z / scale).collect() })
    }

    pub fn from_real(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Same projective point up to `tol`: all 2×2 minors of the pair vanish.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let (a, b) = (&self.coords, &other.coords);
        (0..a.len()).tuple_combinations().all(|(i, j)| (a[i] * b[j] - a[j] * b[i]).norm() <= tol)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!(self.coords.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
    }
}

/// Largest absolute value of the defining equations at `x`.
pub fn residual(model: &VarietyModel, x: &ProjectivePoint) -> Result<f64> {
    if x.len() != model.n() + 1 {
        return Err(Error::Dimension(format!("point has {} coordinates, expected {}", x.len(), model.n() + 1)));
    }
    let powers: Vec<Complex64> = x.coords.iter().map(|z| z.powu(model.p)).collect();
    Ok(model
        .equations_f64
        .iter()
        .map(|row| row.iter().zip(&powers).map(|(&c, z)| z * c).sum::<Complex64>().norm())
        .fold(0.0, f64::max))
}

pub fn is_on_variety(model: &VarietyModel, x: &ProjectivePoint, tol: f64) -> Result<bool> {
    Ok(residual(model, x)? <= tol)
}

/// `[x_1 : ... : x_{n+1}] -> [x_1^p : ... : x_{d+1}^p]`.
pub fn pi_project(x: &ProjectivePoint, d: usize, p: u32) -> Result<ProjectivePoint> {
    if x.len() < d + 1 {
        return Err(Error::Dimension(format!("point has {} coordinates, need at least {}", x.len(), d + 1)));
    }
    let max = x.coords.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let head = &x.coords[..=d];
    if head.iter().all(|z| z.norm() <= 1e-12 * max) {
        return Err(Error::Domain("first d + 1 coordinates vanish".into()));
    }
    ProjectivePoint::new(head.iter().map(|z| z.powu(p)).collect())
}

fn root_of_unity(p: u32, k: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (k % p) as f64 / p as f64)
}

/// Multiplies coordinate j (1-based) by ω_p.
pub fn apply_canonical_generator(j: usize, x: &ProjectivePoint, p: u32) -> Result<ProjectivePoint> {
    if j < 1 || j > x.len() {
        return Err(Error::Domain(format!("generator index {j} outside 1..={}", x.len())));
    }
    let mut coords = x.coords.clone();
    coords[j - 1] *= root_of_unity(p, 1);
    ProjectivePoint::new(coords)
}

/// Action of `φ_1^{m_1} ··· φ_{n+1}^{m_{n+1}}` on a point of P^n.
pub fn apply_element(g: &GroupElement, x: &ProjectivePoint) -> Result<ProjectivePoint> {
    if g.exponents().len() != x.len() {
        return Err(Error::Dimension("element and point have different lengths".into()));
    }
    let p = g.params().p;
    let coords = x.coords.iter().zip(g.exponents()).map(|(z, &m)| z * root_of_unity(p, m)).collect();
    ProjectivePoint::new(coords)
}

fn check_off_branch(y: &ProjectivePoint, arr: &Arrangement) -> Result<()> {
    let ynorm = y.coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for (j, h) in arr.hyperplanes.iter().enumerate() {
        let hf: Vec<f64> = h.iter().map(to_f64).collect();
        let hnorm = hf.iter().map(|c| c * c).sum::<f64>().sqrt();
        let value: Complex64 = hf.iter().zip(&y.coords).map(|(&c, z)| z * c).sum();
        if value.norm() < BRANCH_PROXIMITY * ynorm * hnorm {
            return Err(Error::Domain(format!("base point lies on branch hyperplane Σ{}", j + 1)));
        }
    }
    Ok(())
}

/// The p^n points of X over a base point y ∈ P^d off the branch locus.
///
/// The equations are triangular in the p-th powers: `x_1^p, ..., x_{d+1}^p`
/// are the coordinates of y and each further equation determines one more
/// power. All root choices are expanded with the last coordinate's root
/// fixed; output is ordered lexicographically by root exponents.
pub fn fiber_over(y: &ProjectivePoint, model: &VarietyModel, cap: u64) -> Result<Vec<ProjectivePoint>> {
    let (n, d, p) = (model.n(), model.d(), model.p);
    if y.len() != d + 1 {
        return Err(Error::Dimension(format!("base point has {} coordinates, expected {}", y.len(), d + 1)));
    }
    check_off_branch(y, &model.arrangement)?;
    let count = (p as u64).checked_pow(n as u32).filter(|&c| c <= cap);
    let Some(count) = count else {
        return Err(Error::resource("fiber expansion", format!("{p}^{n}"), cap));
    };

    let mut powers: Vec<Complex64> = y.coords.clone();
    for (j, row) in model.equations_f64.iter().enumerate() {
        let target = d + 1 + j;
        debug_assert_eq!(row[target], 1.0);
        let s: Complex64 = row[..=d].iter().zip(&powers).map(|(&c, z)| z * c).sum();
        powers.push(-s);
    }
    let inv_p = 1.0 / p as f64;
    let roots: Vec<Complex64> = powers.iter().map(|z| z.powf(inv_p)).collect();
    let omegas: Vec<Complex64> = (0..p).map(|k| root_of_unity(p, k)).collect();

    let mut out = Vec::with_capacity(count as usize);
    for mut idx in 0..count {
        let mut coords = roots.clone();
        for k in (0..n).rev() {
            coords[k] *= omegas[(idx % p as u64) as usize];
            idx /= p as u64;
        }
        out.push(ProjectivePoint::new(coords)?);
    }
    Ok(out)
}

/// Random base point in P^d with coordinates uniform in the unit square,
/// resampled until it is off the branch locus.
pub fn random_base_point(rng: &mut impl Rng, arr: &Arrangement) -> ProjectivePoint {
    loop {
        let coords = (0..=arr.d).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        if let Ok(y) = ProjectivePoint::new(coords) {
            if check_off_branch(&y, arr).is_ok() {
                return y;
            }
        }
    }
}

/// Isolated fixed points of a nontrivial element on X: the points of its
/// zero-dimensional fixed strata.
///
/// On a stratum with index set L (|L| = n - d + 1) the equations restricted
/// to the coordinates in L have a one-dimensional solution space in the
/// p-th powers, found exactly; the points are its p-th roots with the first
/// root fixed.
pub fn isolated_fixed_points(model: &VarietyModel, g: &GroupElement) -> Result<Vec<ProjectivePoint>> {
    if g.params().n != model.n() || g.params().p != model.p {
        return Err(Error::Dimension("element does not act on this model".into()));
    }
    let (n, p) = (model.n(), model.p);
    let mut out = Vec::new();
    for stratum in fixed_locus_strata(g, model.d())?.into_iter().filter(|s| s.dim == 0) {
        let cols: Vec<usize> = stratum.indices.iter().map(|&i| i - 1).collect();
        let restricted: Vec<Vec<BigRational>> =
            model.equations.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        let (rref, pivots) = rational_rref(restricted);
        let free: Vec<usize> = (0..cols.len()).filter(|c| !pivots.contains(c)).collect();
        if free.len() != 1 {
            return Err(Error::Inconsistency(format!(
                "stratum {:?} has a {}-dimensional solution space",
                stratum.indices,
                free.len()
            )));
        }
        let mut w = vec![BigRational::zero(); cols.len()];
        w[free[0]] = BigRational::one();
        for (row, &pc) in rref.iter().zip(&pivots) {
            w[pc] = -row[free[0]].clone();
        }
        if w.iter().any(|x| x.is_zero()) {
            return Err(Error::Inconsistency("fixed point with extra vanishing coordinates".into()));
        }
        let inv_p = 1.0 / p as f64;
        let roots: Vec<Complex64> = w
            .iter()
            .map(|q| {
                let v = to_f64(q);
                if v.is_negative() {
                    Complex64::new(v, 0.0).powf(inv_p)
                } else {
                    Complex64::new(v.powf(inv_p), 0.0)
                }
            })
            .collect();
        let choices = (p as u64).pow(cols.len() as u32 - 1);
        for mut idx in 0..choices {
            let mut coords = vec![Complex64::zero(); n + 1];
            for (t, &c) in cols.iter().enumerate().rev() {
                let k = if t == 0 { 0 } else { (idx % p as u64) as u32 };
                if t > 0 {
                    idx /= p as u64;
                }
                coords[c] = roots[t] * root_of_unity(p, k);
            }
            out.push(ProjectivePoint::new(coords)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupParams;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    /// Naive oracle: determinant by cofactor expansion.
    fn det(m: &[Vec<BigRational>]) -> BigRational {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = BigRational::zero();
        for c in 0..m.len() {
            let minor: Vec<Vec<BigRational>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][c] * det(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    /// Every k ≤ d+1 hyperplanes have some nonzero k×k minor.
    fn general_position_by_minors(arr: &Arrangement) -> bool {
        let d1 = arr.d + 1;
        (1..=d1).all(|k| {
            arr.hyperplanes.iter().combinations(k).all(|sub| {
                (0..d1).combinations(k).any(|cols| {
                    let m: Vec<Vec<BigRational>> =
                        sub.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
                    !det(&m).is_zero()
                })
            })
        })
    }

    #[test]
    fn general_position_examples() {
        let good = Arrangement::new(4, 2, vec![vec![q("2"), q("3")]]).unwrap();
        assert!(in_general_position(&good));
        assert!(general_position_by_minors(&good));
        let repeated = Arrangement::new(4, 2, vec![vec![q("1"), q("1")]]).unwrap();
        assert!(!in_general_position(&repeated));
        let degenerate = Arrangement::new(4, 2, vec![vec![q("1"), q("2")]]).unwrap();
        assert!(!in_general_position(&degenerate));
        assert!(!general_position_by_minors(&degenerate));
        assert!(in_general_position(&Arrangement::fermat(3).unwrap()));
    }

    #[test]
    fn general_position_agrees_with_minors() {
        for seed in 0..30u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (n, d) = [(4, 2), (5, 2), (5, 3), (6, 3), (7, 3)][seed as usize % 5];
            // small entries so degenerate cases actually occur
            let lambda = (0..n - d - 1)
                .map(|_| (0..d).map(|_| BigRational::from_integer(rng.gen_range(-2i64..=2).into())).collect())
                .collect();
            let arr = Arrangement::new(n, d, lambda).unwrap();
            assert_eq!(in_general_position(&arr), general_position_by_minors(&arr), "seed {seed}");
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = random_omega_sample(1, 6, 2, 100).unwrap();
        let b = random_omega_sample(1, 6, 2, 100).unwrap();
        assert_eq!(a, b);
        assert!(in_general_position(&a));
        assert!(matches!(random_omega_sample(1, 3, 2, 10), Err(Error::Domain(_))));
    }

    #[test]
    fn json_roundtrip() {
        let a = Arrangement::from_json(r#"{"n":5,"d":2,"lambda":[["1/2","-3"],["2","7/3"]]}"#).unwrap();
        assert_eq!(a.lambda()[0][0], q("1/2"));
        let back = Arrangement::from_json(&a.to_json_value().to_string()).unwrap();
        assert_eq!(a, back);
        assert!(matches!(Arrangement::from_json(r#"{"n":5,"d":2,"lambda":[["x"]]}"#), Err(Error::Parse(_))));
        assert!(matches!(Arrangement::from_json(r#"{"n":5,"d":2,"lambda":[["1"]]}"#), Err(Error::Dimension(_))));
    }

    #[test]
    fn model_rows() {
        let a = Arrangement::new(5, 2, vec![vec![q("2"), q("3")], vec![q("5"), q("7")]]).unwrap();
        let m = VarietyModel::new(2, a).unwrap();
        let e = m.equations();
        assert_eq!(e.len(), 3);
        let ints = |r: &Vec<BigRational>| r.iter().map(|x| x.to_integer().to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(ints(&e[0]), "1,1,1,1,0,0");
        assert_eq!(ints(&e[1]), "2,3,1,0,1,0");
        assert_eq!(ints(&e[2]), "5,7,1,0,0,1");
    }

    #[test]
    fn residual_examples() {
        let m = VarietyModel::fermat(3, 2).unwrap();
        let zeta = Complex64::new(-1.0, 0.0);
        let x = ProjectivePoint::new(vec![Complex64::one(), zeta, Complex64::zero(), Complex64::zero()]).unwrap();
        assert!(residual(&m, &x).unwrap() <= RESIDUAL_TOL);
        let r = ProjectivePoint::from_real(&[0.3, 0.9, -0.2, 0.5]).unwrap();
        assert!(residual(&m, &r).unwrap() > 1e-3);
    }

    #[test]
    fn projection_examples() {
        let i = Complex64::i();
        let x = ProjectivePoint::new(vec![Complex64::one(), i, Complex64::zero(), Complex64::zero()]).unwrap();
        let y = pi_project(&x, 2, 2).unwrap();
        assert!(y.approx_eq(&ProjectivePoint::from_real(&[1.0, -1.0, 0.0]).unwrap(), POINT_TOL));
        let bad = ProjectivePoint::from_real(&[0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(pi_project(&bad, 2, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn generator_action() {
        let x = ProjectivePoint::from_real(&[0.3, 0.9, -0.2, 0.5]).unwrap();
        let mut y = x.clone();
        for _ in 0..5 {
            y = apply_canonical_generator(2, &y, 5).unwrap();
        }
        assert!(y.approx_eq(&x, POINT_TOL));
        let mut z = x.clone();
        for j in 1..=4 {
            z = apply_canonical_generator(j, &z, 5).unwrap();
        }
        assert!(z.approx_eq(&x, POINT_TOL));
        assert!(!apply_canonical_generator(1, &x, 5).unwrap().approx_eq(&x, POINT_TOL));
    }

    #[test]
    fn fiber_examples() {
        let arr = random_omega_sample(7, 4, 2, 100).unwrap();
        let model = VarietyModel::new(2, arr.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let y = random_base_point(&mut rng, &arr);
        let fiber = fiber_over(&y, &model, DEFAULT_FIBER_CAP).unwrap();
        assert_eq!(fiber.len(), 16);
        for x in &fiber {
            assert!(residual(&model, x).unwrap() <= RESIDUAL_TOL);
            assert!(pi_project(x, 2, 2).unwrap().approx_eq(&y, POINT_TOL));
        }
        let moved = apply_canonical_generator(1, &fiber[5], 2).unwrap();
        assert!(fiber.iter().any(|x| x.approx_eq(&moved, POINT_TOL)));

        let on_sigma1 = ProjectivePoint::from_real(&[0.0, 1.0, 2.0]).unwrap();
        assert!(matches!(fiber_over(&on_sigma1, &model, DEFAULT_FIBER_CAP), Err(Error::Domain(_))));
        assert!(matches!(fiber_over(&y, &model, 8), Err(Error::Resource { .. })));
    }

    #[test]
    fn cubic_surface_fixed_points() {
        let model = VarietyModel::fermat(3, 2).unwrap();
        let g = GroupElement::normalize(&[1, 1, 2, 0], GroupParams::new(3, 3).unwrap()).unwrap();
        let pts = isolated_fixed_points(&model, &g).unwrap();
        assert_eq!(pts.len(), 3);
        for x in &pts {
            assert!(residual(&model, x).unwrap() <= RESIDUAL_TOL);
            assert!(apply_element(&g, x).unwrap().approx_eq(x, POINT_TOL));
        }
    }
}
