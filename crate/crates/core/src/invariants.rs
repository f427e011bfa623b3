//! Invariant monomials of diagonal p-torsion actions and the affine model
//! of a quotient `X / K` they give.
//!
//! K acts on the chart `x_{n+1} = 1` by `x_k -> ω_p^{m_k} x_k` with the
//! normalized exponents m of its elements. A monomial `x^a` is invariant iff
//! `Σ m_k a_k ≡ 0 (mod p)` for every generator of K, so invariant monomials
//! form an affine monoid and its indecomposable elements generate the ring.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::VarietyModel;
use crate::group::{GroupElement, Subgroup};
use crate::linalg;

pub const DEFAULT_MONOMIAL_CAP: u64 = 1 << 22;
pub const DEFAULT_GROUP_CAP: u64 = 1 << 20;
/// Largest multiset size on either side of a searched binomial relation.
pub const DEFAULT_RELATION_SIDE: usize = 4;

/// Generator g scales variable i by `ω_p^{rows[g][i]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalAction {
    p: u32,
    num_vars: usize,
    rows: Vec<Vec<u32>>,
}

impl DiagonalAction {
    pub fn new(p: u32, num_vars: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        if p < 2 {
            return Err(Error::Domain(format!("p must be at least 2, got {p}")));
        }
        if rows.iter().any(|r| r.len() != num_vars) {
            return Err(Error::Dimension(format!("character rows must have length {num_vars}")));
        }
        let rows = rows.into_iter().map(|r| r.into_iter().map(|c| c % p).collect()).collect();
        Ok(DiagonalAction { p, num_vars, rows })
    }

    /// Action of K on the affine chart `x_{n+1} = 1`.
    pub fn from_subgroup(k: &Subgroup) -> Self {
        let gp = k.params();
        let rows = k.generators().iter().map(|g| g.exponents()[..gp.n].to_vec()).collect();
        DiagonalAction { p: gp.p, num_vars: gp.n, rows }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Order of the generated group, by closure of the generator set.
    pub fn group_order(&self, cap: u64) -> Result<u64> {
        let mut seen: HashSet<Vec<u32>> = HashSet::from([vec![0; self.num_vars]]);
        let mut frontier = vec![vec![0; self.num_vars]];
        while let Some(v) = frontier.pop() {
            for r in &self.rows {
                let w: Vec<u32> = v.iter().zip(r).map(|(&a, &b)| linalg::add_mod(a, b, self.p)).collect();
                if seen.insert(w.clone()) {
                    if seen.len() as u64 > cap {
                        return Err(Error::resource("group closure", format!("more than {cap} elements"), cap));
                    }
                    frontier.push(w);
                }
            }
        }
        Ok(seen.len() as u64)
    }

    /// Character of `x^a` under each generator.
    pub fn characters(&self, a: &Monomial) -> Vec<u32> {
        self.rows.iter().map(|r| character(r, &a.exponents, self.p)).collect()
    }
}

fn character(row: &[u32], exps: &[u32], p: u32) -> u32 {
    row.iter().zip(exps).fold(0u64, |acc, (&c, &a)| (acc + c as u64 * a as u64) % p as u64) as u32
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    pub fn product(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{a}", i + 1) })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

pub fn is_invariant(a: &Monomial, act: &DiagonalAction) -> bool {
    act.characters(a).iter().all(|&c| c == 0)
}

/// Calls `f` on every exponent vector of the given length and degree, in
/// descending lexicographic order.
fn for_each_of_degree(len: usize, degree: u32, f: &mut impl FnMut(&[u32])) {
    fn rec(buf: &mut Vec<u32>, len: usize, left: u32, f: &mut impl FnMut(&[u32])) {
        if buf.len() + 1 == len {
            buf.push(left);
            f(buf);
            buf.pop();
            return;
        }
        for a in (0..=left).rev() {
            buf.push(a);
            rec(buf, len, left - a, f);
            buf.pop();
        }
    }
    if len == 0 {
        if degree == 0 {
            f(&[]);
        }
        return;
    }
    rec(&mut Vec::with_capacity(len), len, degree, f);
}

fn monomial_count(num_vars: usize, bound: u32) -> BigUint {
    // monomials of degree ≤ bound in N variables: C(bound + N, N)
    let (top, k) = (bound as u64 + num_vars as u64, num_vars as u64);
    (0..k).fold(BigUint::one(), |acc, i| acc * (top - i) / (i + 1))
}

/// Indecomposable invariant monomials of degree ≤ `bound`, ordered by
/// degree and then by descending exponent vectors.
///
/// An invariant monomial is decomposable iff it is a proper multiple of a
/// smaller generator, because the quotient is then again invariant.
pub fn hilbert_basis(act: &DiagonalAction, bound: u32, cap: u64) -> Result<Vec<Monomial>> {
    if bound < 1 {
        return Err(Error::Domain("degree bound must be at least 1".into()));
    }
    let count = monomial_count(act.num_vars, bound);
    if count > BigUint::from(cap) {
        return Err(Error::resource("monomial enumeration", count, cap));
    }
    let mut out: Vec<Monomial> = Vec::new();
    for deg in 1..=bound {
        let mut level = Vec::new();
        for_each_of_degree(act.num_vars, deg, &mut |e| {
            let m = Monomial::new(e.to_vec());
            if is_invariant(&m, act) && !out.iter().any(|g| g.divides(&m)) {
                level.push(m);
            }
        });
        out.extend(level);
    }
    Ok(out)
}

/// Hilbert basis with the default bound |K|.
pub fn hilbert_basis_default(act: &DiagonalAction) -> Result<Vec<Monomial>> {
    let order = act.group_order(DEFAULT_GROUP_CAP)?;
    let bound = u32::try_from(order).map_err(|_| Error::resource("degree bound", order, u32::MAX))?;
    hilbert_basis(act, bound, DEFAULT_MONOMIAL_CAP)
}

/// `Π_{i ∈ lhs} u_i = Π_{i ∈ rhs} u_i` over 0-based generator indices,
/// each side a sorted multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinomialRelation {
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

impl BinomialRelation {
    pub fn new(mut lhs: Vec<usize>, mut rhs: Vec<usize>) -> Self {
        lhs.sort_unstable();
        rhs.sort_unstable();
        BinomialRelation { lhs, rhs }
    }

    /// Same relation with sides in a fixed order, for comparisons.
    pub fn oriented(&self) -> Self {
        if self.lhs <= self.rhs {
            self.clone()
        } else {
            BinomialRelation { lhs: self.rhs.clone(), rhs: self.lhs.clone() }
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        let side = |s: &[usize]| s.iter().map(|&i| names[i].clone()).collect::<Vec<_>>().join("·");
        format!("{} = {}", side(&self.lhs), side(&self.rhs))
    }
}

fn side_sum(gens: &[Monomial], side: &[usize]) -> Vec<u32> {
    let mut acc = vec![0u32; gens.first().map_or(0, |g| g.exponents.len())];
    for &i in side {
        for (a, e) in acc.iter_mut().zip(&gens[i].exponents) {
            *a += e;
        }
    }
    acc
}

/// Pairs of generator multisets with equal products, sides of size at most
/// `max_side`, total degree ≤ `bound` and no common generator.
///
/// Relations sharing a factor follow from one without it and are skipped.
pub fn find_binomial_relations(gens: &[Monomial], bound: u32, max_side: usize) -> Vec<BinomialRelation> {
    let mut by_product: BTreeMap<Vec<u32>, Vec<Vec<usize>>> = BTreeMap::new();
    let degrees: Vec<u32> = gens.iter().map(Monomial::degree).collect();
    let mut stack: Vec<(Vec<usize>, u32)> = vec![(Vec::new(), 0)];
    while let Some((ms, deg)) = stack.pop() {
        if !ms.is_empty() {
            by_product.entry(side_sum(gens, &ms)).or_default().push(ms.clone());
        }
        if ms.len() == max_side {
            continue;
        }
        let start = ms.last().copied().unwrap_or(0);
        for (i, &gd) in degrees.iter().enumerate().skip(start) {
            if deg + gd <= bound {
                let mut next = ms.clone();
                next.push(i);
                stack.push((next, deg + gd));
            }
        }
    }
    let mut out = Vec::new();
    for sides in by_product.values() {
        for (i, a) in sides.iter().enumerate() {
            for b in &sides[i + 1..] {
                if a.iter().all(|x| !b.contains(x)) {
                    out.push(BinomialRelation::new(a.clone(), b.clone()).oriented());
                }
            }
        }
    }
    out.sort_by_key(|r| (side_sum(gens, &r.lhs).iter().sum::<u32>(), r.clone()));
    out
}

pub fn verify_relations(gens: &[Monomial], relations: &[BinomialRelation]) -> Result<Vec<bool>> {
    relations
        .iter()
        .map(|r| {
            if let Some(&bad) = r.lhs.iter().chain(&r.rhs).find(|&&i| i >= gens.len()) {
                return Err(Error::Domain(format!("relation refers to generator {} of {}", bad + 1, gens.len())));
            }
            Ok(side_sum(gens, &r.lhs) == side_sum(gens, &r.rhs))
        })
        .collect()
}

/// Coefficient of a linear relation; `symbol` names the Λ entry it comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearTerm {
    pub generator: usize,
    pub value: BigRational,
    pub symbol: Option<String>,
}

/// `u_target = Σ terms + constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRelation {
    pub target: usize,
    pub terms: Vec<LinearTerm>,
    pub constant: BigRational,
}

impl LinearRelation {
    pub fn display(&self, names: &[String]) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for t in &self.terms {
            let name = &names[t.generator];
            parts.push(match &t.symbol {
                Some(sym) => (sym.starts_with('-'), format!("{}·{name}", sym.trim_start_matches('-'))),
                None if t.value.abs().is_one() => (t.value.is_negative(), name.clone()),
                None => (t.value.is_negative(), format!("{}·{name}", t.value.abs())),
            });
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push((self.constant.is_negative(), self.constant.abs().to_string()));
        }
        let mut s = format!("{} =", names[self.target]);
        for (i, (neg, body)) in parts.iter().enumerate() {
            let sign = match (i, neg) {
                (0, true) => " -",
                (0, false) => " ",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            s.push_str(sign);
            s.push_str(body);
        }
        s
    }
}

/// Each defining equation on the chart `x_{n+1} = 1`, solved for one
/// pure-power generator.
///
/// Row 0 is solved for `x_{d+2}^p` and row j for `x_{d+2+j}^p`; the row
/// containing `x_{n+1}^p = 1` is solved for `x_{d+1}^p` instead.
pub fn linear_relations(model: &VarietyModel, act: &DiagonalAction, gens: &[Monomial]) -> Result<Vec<LinearRelation>> {
    let (n, d, p) = (model.n(), model.d(), model.p());
    if act.num_vars != n || act.p != p {
        return Err(Error::Dimension("action and model disagree on (p, n)".into()));
    }
    let mut pure = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![0u32; n];
        e[k] = p;
        let idx = gens
            .iter()
            .position(|g| g.exponents == e)
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "x{}^{p} is not a minimal generator; linear relations need every x_i^p among the generators",
                    k + 1
                ))
            })?;
        pure.push(idx);
    }
    let mut out = Vec::new();
    for (j, row) in model.equations().iter().enumerate() {
        let target = if d + 1 + j == n { d } else { d + 1 + j };
        let mut terms = Vec::new();
        let mut constant = BigRational::zero();
        for (k, c) in row.iter().enumerate() {
            if k == target || c.is_zero() && !(j > 0 && k < d) {
                continue;
            }
            let value = -c.clone();
            if k == n {
                constant = value;
                continue;
            }
            let symbol = (j > 0 && k < d).then(|| format!("-λ{},{}", j, k + 1));
            terms.push(LinearTerm { generator: pure[k], value, symbol });
        }
        out.push(LinearRelation { target: pure[target], terms, constant });
    }
    Ok(out)
}

/// Characters of coset representatives of H/K on the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTable {
    pub p: u32,
    /// 1-based indices j of the canonical generators φ_j used as representatives
    pub representatives: Vec<usize>,
    /// characters[r][i]: φ_{representatives[r]} maps u_i to ω_p^c u_i
    pub characters: Vec<Vec<u32>>,
}

impl ActionTable {
    /// Generators moved by the r-th representative.
    pub fn moved(&self, r: usize) -> Vec<usize> {
        self.characters[r].iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i).collect()
    }
}

/// Character of an element of H on each monomial of the chart.
pub fn element_characters(g: &GroupElement, gens: &[Monomial]) -> Vec<u32> {
    let n = g.params().n;
    gens.iter().map(|u| character(&g.exponents()[..n], &u.exponents, g.params().p)).collect()
}

/// Induced action of N = H/K, with coset representatives chosen greedily
/// among φ_1, ..., φ_n so that their images form a basis of H/K.
pub fn induced_action(k: &Subgroup, gens: &[Monomial]) -> Result<ActionTable> {
    let gp = k.params();
    gp.require_prime("induced action")?;
    if gens.iter().any(|u| u.exponents.len() != gp.n) {
        return Err(Error::Dimension(format!("generators must have {} exponents", gp.n)));
    }
    let mut span = k.basis_lift().to_vec();
    let mut rank = span.len();
    let mut representatives = Vec::new();
    let mut characters = Vec::new();
    for j in 1..=gp.n {
        let g = gp.generator(j)?;
        let mut trial = span.clone();
        trial.push(g.exponents().to_vec());
        let r = linalg::rank(&trial, gp.p);
        if r > rank {
            span = trial;
            rank = r;
            representatives.push(j);
            characters.push(element_characters(&g, gens));
        }
    }
    Ok(ActionTable { p: gp.p, representatives, characters })
}

pub fn generator_names(count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("u{i}")).collect()
}

/// Affine model of `X / K`: invariant generators, their binomial and linear
/// relations, and the action of H/K on them.
#[derive(Debug, Clone)]
pub struct QuotientModel {
    pub generators: Vec<Monomial>,
    pub binomial_relations: Vec<BinomialRelation>,
    pub linear_relations: Vec<LinearRelation>,
    pub action: ActionTable,
}

#[derive(Debug, Clone, Copy)]
pub struct QuotientOptions {
    /// defaults to |K|
    pub degree_bound: Option<u32>,
    pub relation_side: usize,
    pub monomial_cap: u64,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions { degree_bound: None, relation_side: DEFAULT_RELATION_SIDE, monomial_cap: DEFAULT_MONOMIAL_CAP }
    }
}

impl QuotientModel {
    pub fn build(k: &Subgroup, model: &VarietyModel, opts: QuotientOptions) -> Result<Self> {
        let gp = k.params();
        if gp.n != model.n() || gp.p != model.p() {
            return Err(Error::Dimension("subgroup and model disagree on (p, n)".into()));
        }
        let act = DiagonalAction::from_subgroup(k);
        let bound = match opts.degree_bound {
            Some(b) => b,
            None => {
                let order = act.group_order(DEFAULT_GROUP_CAP)?;
                u32::try_from(order).map_err(|_| Error::resource("degree bound", order, u32::MAX))?
            }
        };
        let generators = hilbert_basis(&act, bound, opts.monomial_cap)?;
        let binomial_relations = find_binomial_relations(&generators, bound, opts.relation_side);
        let linear_relations = linear_relations(model, &act, &generators)?;
        let action = induced_action(k, &generators)?;
        Ok(QuotientModel { generators, binomial_relations, linear_relations, action })
    }

    pub fn names(&self) -> Vec<String> {
        generator_names(self.generators.len())
    }

    pub fn to_json_value(&self) -> Value {
        let names = self.names();
        let generators: Vec<Value> = self
            .generators
            .iter()
            .zip(&names)
            .map(|(g, name)| json!({"name": name, "exponents": g.exponents}))
            .collect();
        let side = |s: &[usize]| s.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();
        let binomials: Vec<Value> =
            self.binomial_relations.iter().map(|r| json!([side(&r.lhs), side(&r.rhs)])).collect();
        let linear: Vec<Value> = self
            .linear_relations
            .iter()
            .map(|r| {
                let terms: Vec<Value> = r
                    .terms
                    .iter()
                    .map(|t| {
                        let mut v = json!({"generator": names[t.generator], "value": t.value.to_string()});
                        if let Some(sym) = &t.symbol {
                            v["symbol"] = json!(sym);
                        }
                        v
                    })
                    .collect();
                json!({
                    "target": names[r.target],
                    "terms": terms,
                    "constant": r.constant.to_string(),
                    "text": r.display(&names),
                })
            })
            .collect();
        let mut action = serde_json::Map::new();
        let mut characters = serde_json::Map::new();
        for (r, &j) in self.action.representatives.iter().enumerate() {
            action.insert(format!("phi{j}"), json!(side(&self.action.moved(r))));
            characters.insert(format!("phi{j}"), json!(self.action.characters[r]));
        }
        json!({
            "generators": generators,
            "binomial_relations": binomials,
            "linear_relations": linear,
            "action": action,
            "characters": characters,
        })
    }
}
