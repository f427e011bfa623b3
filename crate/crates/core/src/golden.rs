//! Frozen reference values and the checker that recomputes them.
//!
//! The reference file is a list of checks. Each names a computation
//! (`kind`), its `input` and the `expected` JSON value; a check passes iff the
//! recomputed value is equal as JSON.

use std::time::Instant;

use itertools::Itertools;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cohomology::{self, SurfaceClass};
use crate::error::{Error, Result};
use crate::fixed_points::{acts_freely_subgroup, fixed_locus_strata, free_rank_bound, has_fixed_points, level_sets, DEFAULT_ELEMENT_CAP};
use crate::free_enum::{self, EnumerationTask, FamilyKind};
use crate::geometry::{self, ProjectivePoint, VarietyModel, POINT_TOL, RESIDUAL_TOL};
use crate::group::{GroupElement, GroupParams, Subgroup};
use crate::invariants::{self, BinomialRelation, DiagonalAction};

/// The reference file shipped with the library.
pub const REFERENCE: &str = include_str!("../golden/reference.json");

/// Enumeration tasks above this many candidate subspaces are skipped in sweeps.
const SWEEP_SUBSPACE_LIMIT: u64 = 1 << 21;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GoldenFile {
    pub schema_version: u32,
    pub checks: Vec<GoldenCheck>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldenCheck {
    pub group: String,
    pub id: String,
    pub kind: String,
    #[serde(default)]
    pub input: Value,
    pub expected: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub group: String,
    pub id: String,
    pub passed: bool,
    pub expected: Value,
    pub actual: Value,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct GoldenReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl GoldenReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    /// One line per failed check.
    pub fn diff(&self) -> Vec<String> {
        self.outcomes
            .iter()
            .filter(|o| !o.passed)
            .map(|o| format!("{}/{}: expected {} got {}", o.group, o.id, o.expected, o.actual))
            .collect()
    }
}

pub fn load(text: &str) -> Result<GoldenFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("reference file: {e}")))
}

pub fn groups(file: &GoldenFile) -> Vec<String> {
    file.checks.iter().map(|c| c.group.clone()).unique().collect()
}

/// Runs every check whose group equals `filter` (all checks if `None`).
pub fn run(file: &GoldenFile, filter: Option<&str>) -> Result<GoldenReport> {
    let selected: Vec<&GoldenCheck> = file.checks.iter().filter(|c| filter.is_none_or(|f| c.group == f)).collect();
    if selected.is_empty() {
        return Err(Error::Domain(format!("no checks match filter {:?}", filter.unwrap_or(""))));
    }
    let outcomes = selected
        .into_iter()
        .map(|c| {
            let start = Instant::now();
            let actual = evaluate(&c.kind, &c.input).unwrap_or_else(|e| json!({"error": e.to_string()}));
            CheckOutcome {
                group: c.group.clone(),
                id: c.id.clone(),
                passed: actual == c.expected,
                expected: c.expected.clone(),
                actual,
                elapsed_ms: start.elapsed().as_millis(),
            }
        })
        .collect();
    Ok(GoldenReport { outcomes })
}

fn field<T: serde::de::DeserializeOwned>(input: &Value, key: &str) -> Result<T> {
    let v = input.get(key).ok_or_else(|| Error::Parse(format!("input lacks {key:?}")))?;
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("input {key:?}: {e}")))
}

fn element(exps: &[i64], p: u32) -> Result<GroupElement> {
    GroupElement::normalize(exps, GroupParams::new(p, exps.len().saturating_sub(1))?)
}

fn subgroup_from(input: &Value) -> Result<Subgroup> {
    let p: u32 = field(input, "p")?;
    let n: usize = field(input, "n")?;
    let gens: Vec<Vec<i64>> = field(input, "generators")?;
    let gp = GroupParams::new(p, n)?;
    let elems: Result<Vec<GroupElement>> = gens.iter().map(|g| GroupElement::normalize(g, gp)).collect();
    Subgroup::from_generators(&elems?, gp)
}

fn task_from(input: &Value) -> Result<EnumerationTask> {
    Ok(EnumerationTask::new(field(input, "d")?, field(input, "p")?, field(input, "n")?, field(input, "m")?))
}

/// Recomputes the value of one check.
pub fn evaluate(kind: &str, input: &Value) -> Result<Value> {
    match kind {
        "enumerate_count" => Ok(json!(free_enum::enumerate_all(&task_from(input)?)?.len())),
        "classify" => {
            let found = free_enum::enumerate_all(&task_from(input)?)?;
            let classes = free_enum::classify_orbits(&found)?;
            Ok(json!({
                "count": found.len(),
                "orbits": classes.len(),
                "orbitSizes": classes.iter().map(|c| c.orbit_size).collect::<Vec<_>>(),
            }))
        }
        "representative" => {
            let found = free_enum::enumerate_all(&task_from(input)?)?;
            let classes = free_enum::classify_orbits(&found)?;
            let target = free_enum::full_canonical_form(&subgroup_from(input)?)?;
            Ok(json!(classes.len() == 1 && classes[0].representative == target))
        }
        "family" => {
            let kind = match field::<String>(input, "kind")?.as_str() {
                "n-1" => FamilyKind::n_minus_1(field(input, "n")?),
                "n-2" => FamilyKind::n_minus_2(field(input, "n")?),
                "even-m" => FamilyKind::EvenM { m: field(input, "m")? },
                "odd-m" => FamilyKind::OddM { m: field(input, "m")? },
                other => return Err(Error::Parse(format!("unknown family {other:?}"))),
            };
            let k = free_enum::construct_family(&kind)?;
            Ok(json!({
                "n": k.params().n,
                "free": acts_freely_subgroup(&k, 2, DEFAULT_ELEMENT_CAP)?,
                "quotientRank": k.quotient_rank(),
            }))
        }
        "enumerate_sweep_total" => {
            let d: usize = field(input, "d")?;
            let m: usize = field(input, "m")?;
            let ps: Vec<u32> = field(input, "p")?;
            let n_max: usize = field(input, "nMax")?;
            let mut total = 0usize;
            for &p in &ps {
                for n in m.max(d + 1)..=n_max {
                    total += free_enum::enumerate_all(&EnumerationTask::new(d, p, n, m))?.len();
                }
            }
            Ok(json!(total))
        }
        "m_at_least_d_sweep" => {
            let ds: Vec<usize> = field(input, "d")?;
            let ps: Vec<u32> = field(input, "p")?;
            let n_max: usize = field(input, "nMax")?;
            let mut violations = Vec::new();
            for (&d, &p) in ds.iter().cartesian_product(&ps) {
                for n in d + 1..=n_max {
                    for m in 1..=n {
                        let task = EnumerationTask::new(d, p, n, m);
                        if task.candidate_count() > BigUint::from(SWEEP_SUBSPACE_LIMIT) {
                            continue;
                        }
                        let found = free_enum::enumerate_all(&task)?;
                        let bounds = free_enum::necessary_bounds(d, p, n, m)?;
                        if !found.is_empty() && (m < d || bounds.is_empty()) {
                            violations.push(json!([d, p, n, m]));
                        }
                    }
                }
            }
            Ok(json!(violations))
        }
        "free_elements_count" => {
            let p: u32 = field(input, "p")?;
            let ds: Vec<usize> = field(input, "d")?;
            let mut total = 0usize;
            for d in ds {
                for n in d..=2 * d {
                    let gp = GroupParams::new(p, n)?;
                    for x in gp.elements().filter(|x| !x.is_identity()) {
                        if !has_fixed_points(&x, d)? {
                            total += 1;
                        }
                    }
                }
            }
            Ok(json!(total))
        }
        "fermat_free_table" => {
            let ds: Vec<usize> = field(input, "d")?;
            let p_max: u32 = field(input, "pMax")?;
            let mut rows = Vec::new();
            for d in ds {
                for p in 2..=p_max {
                    let gp = GroupParams::new(p, d + 1)?;
                    let mut exists = false;
                    for x in gp.elements().filter(|x| !x.is_identity()) {
                        if !has_fixed_points(&x, d)? {
                            exists = true;
                            break;
                        }
                    }
                    rows.push(json!([d, p, exists]));
                }
            }
            Ok(json!(rows))
        }
        "rank_bound_table" => {
            let p: u32 = field(input, "p")?;
            let ms: Vec<usize> = field(input, "m")?;
            let n_max: usize = field(input, "nMax")?;
            let n_min: usize = field(input, "nMin")?;
            let ok: Vec<Value> = ms
                .iter()
                .cartesian_product(n_min..=n_max)
                .filter(|&(&m, n)| free_rank_bound(p, m, n))
                .map(|(&m, n)| json!([m, n]))
                .collect();
            Ok(json!(ok))
        }
        "level_sets" => {
            let x = element(&field::<Vec<i64>>(input, "element")?, field(input, "p")?)?;
            let ls = level_sets(&x);
            Ok(json!(ls.by_value.iter().map(|(l, idx)| (l.to_string(), json!(idx))).collect::<serde_json::Map<_, _>>()))
        }
        "has_fixed_points" => {
            let x = element(&field::<Vec<i64>>(input, "element")?, field(input, "p")?)?;
            Ok(json!(has_fixed_points(&x, field(input, "d")?)?))
        }
        "strata" => {
            let x = element(&field::<Vec<i64>>(input, "element")?, field(input, "p")?)?;
            Ok(serde_json::to_value(fixed_locus_strata(&x, field(input, "d")?)?).expect("plain data"))
        }
        "fermat_fixed_points" => {
            let p: u32 = field(input, "p")?;
            let d: usize = field(input, "d")?;
            let x = element(&field::<Vec<i64>>(input, "element")?, p)?;
            let model = VarietyModel::fermat(p, d)?;
            let points = geometry::isolated_fixed_points(&model, &x)?;
            // expected points [1 : ζ : 0 : ... : 0] with ζ^p = -1
            let expected: Vec<ProjectivePoint> = (0..p)
                .map(|k| {
                    let zeta = Complex64::from_polar(1.0, std::f64::consts::PI * (2 * k + 1) as f64 / p as f64);
                    let mut c = vec![Complex64::zero(); d + 2];
                    c[0] = Complex64::new(1.0, 0.0);
                    c[1] = zeta;
                    ProjectivePoint::new(c)
                })
                .collect::<Result<_>>()?;
            let mut on_variety = true;
            let mut fixed = true;
            for pt in &points {
                on_variety &= geometry::residual(&model, pt)? <= RESIDUAL_TOL;
                fixed &= geometry::apply_element(&x, pt)?.approx_eq(pt, POINT_TOL);
            }
            let matched = points.len() == expected.len()
                && expected.iter().all(|e| points.iter().any(|pt| pt.approx_eq(e, POINT_TOL)));
            let base = geometry::pi_project(&points[0], d, p)?;
            let projected: Vec<i64> = base.coords().iter().map(|z| z.re.round() as i64).collect();
            Ok(json!({
                "count": points.len(),
                "onVariety": on_variety,
                "fixed": fixed,
                "matchesExpected": matched,
                "projection": projected,
            }))
        }
        "surface_table" => {
            let p_max: u32 = field(input, "pMax")?;
            let n_max: usize = field(input, "nMax")?;
            let mut rational = Vec::new();
            let mut k3 = Vec::new();
            for (p, n) in (2..=p_max).cartesian_product(3..=n_max) {
                let profile = cohomology::genus_profile(2, p, n)?;
                match profile.surface_class {
                    Some(SurfaceClass::Rational) => rational.push(json!([p, n])),
                    Some(SurfaceClass::K3) => k3.push(json!([p, n])),
                    _ => {}
                }
            }
            Ok(json!({"rational": rational, "k3": k3}))
        }
        "profile" => {
            let profile = cohomology::genus_profile(field(input, "d")?, field(input, "p")?, field(input, "n")?)?;
            Ok(serde_json::to_value(profile).expect("plain data"))
        }
        "h0" => Ok(crate::json::biguint_value(&cohomology::h0_twist(
            field(input, "d")?,
            field(input, "p")?,
            field(input, "n")?,
            field(input, "r")?,
        ))),
        "plurigenus_asymptotics" => {
            let (d, p, n): (usize, u32, usize) = (field(input, "d")?, field(input, "p")?, field(input, "n")?);
            let m: u64 = field(input, "m")?;
            let tol: f64 = field(input, "tolerance")?;
            let pm = cohomology::plurigenus(d, p, n, m);
            let lead = cohomology::plurigenus_leading_coefficient(d, p, n) * (m as f64).powi(d as i32);
            let ratio = pm.to_string().parse::<f64>().unwrap_or(f64::NAN) / lead;
            Ok(json!({"value": crate::json::biguint_value(&pm), "withinTolerance": (ratio - 1.0).abs() <= tol}))
        }
        "rh_genus" => Ok(json!(cohomology::rh_genus(field(input, "degree")?, &field::<Vec<u64>>(input, "orders")?)?)),
        "hyperbolicity" => {
            let v = cohomology::hyperbolicity_verdict(field(input, "d")?, field(input, "p")?, field(input, "n")?)?;
            Ok(serde_json::to_value(v).expect("plain data"))
        }
        "hilbert_basis" => {
            let act = action_from(input)?;
            let hb = invariants::hilbert_basis_default(&act)?;
            Ok(json!(hb.iter().map(|m| m.exponents.clone()).collect::<Vec<_>>()))
        }
        "listed_relations" => {
            let act = action_from(input)?;
            let hb = invariants::hilbert_basis_default(&act)?;
            let listed = relations_from(input, hb.len())?;
            let verified = invariants::verify_relations(&hb, &listed)?;
            let bound = act.group_order(invariants::DEFAULT_GROUP_CAP)? as u32;
            let found = invariants::find_binomial_relations(&hb, bound, invariants::DEFAULT_RELATION_SIDE);
            let listed_set: Vec<BinomialRelation> = listed.iter().map(BinomialRelation::oriented).collect();
            let missing = listed_set.iter().filter(|r| !found.contains(r)).count();
            let extras = found.iter().filter(|r| !listed_set.contains(r)).count();
            Ok(json!({
                "verified": verified.iter().filter(|&&b| b).count(),
                "failed": verified.iter().positions(|&b| !b).map(|i| i + 1).collect::<Vec<_>>(),
                "notFoundBySearch": missing,
                "additionalFound": extras,
            }))
        }
        "induced_action" => {
            let k = subgroup_from(input)?;
            let hb = invariants::hilbert_basis_default(&DiagonalAction::from_subgroup(&k))?;
            let table = invariants::induced_action(&k, &hb)?;
            let mut out = serde_json::Map::new();
            for (r, &j) in table.representatives.iter().enumerate() {
                out.insert(format!("phi{j}"), json!(table.moved(r).iter().map(|i| i + 1).collect::<Vec<_>>()));
            }
            Ok(Value::Object(out))
        }
        "linear_relations" => {
            let k = subgroup_from(input)?;
            let gp = k.params();
            let d: usize = field(input, "d")?;
            let arr = geometry::random_omega_sample(field(input, "seed")?, gp.n, d, 1000)?;
            let model = VarietyModel::new(gp.p, arr)?;
            let act = DiagonalAction::from_subgroup(&k);
            let hb = invariants::hilbert_basis_default(&act)?;
            let rels = invariants::linear_relations(&model, &act, &hb)?;
            let names = invariants::generator_names(hb.len());
            Ok(json!(rels.iter().map(|r| r.display(&names)).collect::<Vec<_>>()))
        }
        other => Err(Error::Parse(format!("unknown check kind {other:?}"))),
    }
}

fn action_from(input: &Value) -> Result<DiagonalAction> {
    let rows: Vec<Vec<u32>> = field(input, "rows")?;
    let num_vars = rows.first().map_or(0, Vec::len);
    DiagonalAction::new(field(input, "p")?, num_vars, rows)
}

/// Relations given with 1-based generator indices.
fn relations_from(input: &Value, count: usize) -> Result<Vec<BinomialRelation>> {
    let raw: Vec<[Vec<usize>; 2]> = field(input, "relations")?;
    raw.into_iter()
        .map(|[a, b]| {
            if a.iter().chain(&b).any(|&i| i == 0 || i > count) {
                return Err(Error::Domain(format!("relation index outside 1..={count}")));
            }
            Ok(BinomialRelation::new(a.iter().map(|i| i - 1).collect(), b.iter().map(|i| i - 1).collect()))
        })
        .collect()
}
