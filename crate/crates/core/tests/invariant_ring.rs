use std::collections::HashMap;

use fermat_core::invariants::{
    element_characters, find_binomial_relations, hilbert_basis, hilbert_basis_default, induced_action, is_invariant,
    verify_relations, DiagonalAction, Monomial, DEFAULT_MONOMIAL_CAP, DEFAULT_RELATION_SIDE,
};
use fermat_core::{GroupElement, GroupParams, Subgroup};
use proptest::prelude::*;

fn example_subgroup() -> Subgroup {
    let gp = GroupParams::new(2, 6).unwrap();
    let g = |raw: &[i64]| GroupElement::normalize(raw, gp).unwrap();
    Subgroup::from_generators(&[g(&[1, 1, 0, 1, 0, 0, 0]), g(&[1, 0, 1, 0, 1, 0, 0]), g(&[0, 1, 1, 0, 0, 1, 0])], gp)
        .unwrap()
}

fn all_monomials(num_vars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::new(vec![0; num_vars])];
    for i in 0..num_vars {
        let mut next = Vec::new();
        for m in &out {
            let used: u32 = m.exponents.iter().sum();
            for a in 0..=max_degree - used {
                let mut e = m.exponents.clone();
                e[i] = a;
                next.push(Monomial::new(e));
            }
        }
        out = next;
    }
    out
}

/// Whether `m` is a product of generators, by memoized search.
fn factors(m: &Monomial, gens: &[Monomial], memo: &mut HashMap<Monomial, bool>) -> bool {
    if m.degree() == 0 {
        return true;
    }
    if let Some(&v) = memo.get(m) {
        return v;
    }
    let result = gens.iter().any(|g| {
        g.divides(m) && {
            let rest = Monomial::new(m.exponents.iter().zip(&g.exponents).map(|(a, b)| a - b).collect());
            factors(&rest, gens, memo)
        }
    });
    memo.insert(m.clone(), result);
    result
}

fn proper_divisors(m: &Monomial) -> Vec<Monomial> {
    all_monomials(m.exponents.len(), m.degree())
        .into_iter()
        .filter(|a| a.divides(m) && a.degree() > 0 && a.degree() < m.degree())
        .collect()
}

#[test]
fn example_basis_is_complete_through_degree_eight() {
    let act = DiagonalAction::from_subgroup(&example_subgroup());
    let gens = hilbert_basis_default(&act).unwrap();
    assert_eq!(gens.len(), 13);
    let mut memo = HashMap::new();
    let mut checked = 0;
    for m in all_monomials(6, 8) {
        if is_invariant(&m, &act) {
            assert!(factors(&m, &gens, &mut memo), "{m} does not factor");
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn example_basis_is_minimal() {
    let act = DiagonalAction::from_subgroup(&example_subgroup());
    for u in hilbert_basis_default(&act).unwrap() {
        assert!(is_invariant(&u, &act));
        for a in proper_divisors(&u) {
            assert!(!is_invariant(&a, &act), "{u} has invariant factor {a}");
        }
    }
}

#[test]
fn found_relations_hold() {
    let act = DiagonalAction::from_subgroup(&example_subgroup());
    let gens = hilbert_basis_default(&act).unwrap();
    let rels = find_binomial_relations(&gens, 8, DEFAULT_RELATION_SIDE);
    assert!(!rels.is_empty());
    assert!(verify_relations(&gens, &rels).unwrap().into_iter().all(|ok| ok));
}

#[test]
fn induced_action_does_not_depend_on_coset_representative() {
    let k = example_subgroup();
    let gens = hilbert_basis_default(&DiagonalAction::from_subgroup(&k)).unwrap();
    let table = induced_action(&k, &gens).unwrap();
    let gp = k.params();
    for (r, &j) in table.representatives.iter().enumerate() {
        let phi = gp.generator(j).unwrap();
        for kk in k.elements() {
            let other = phi.mul(&kk).unwrap();
            assert_eq!(element_characters(&other, &gens), table.characters[r]);
        }
    }
    for kk in k.elements() {
        assert!(element_characters(&kk, &gens).iter().all(|&c| c == 0));
    }
}

fn action_case() -> impl Strategy<Value = (DiagonalAction, Vec<u32>, Vec<u32>)> {
    // (p, number of generators) keeps |G| ≤ 9
    let shapes = vec![(2u32, 1usize), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)];
    (prop::sample::select(shapes), 1usize..=5).prop_flat_map(|((p, ngens), vars)| {
        (
            prop::collection::vec(prop::collection::vec(0..p, vars), ngens)
                .prop_map(move |rows| DiagonalAction::new(p, vars, rows).unwrap()),
            prop::collection::vec(0u32..6, vars),
            prop::collection::vec(0u32..6, vars),
        )
    })
}

proptest! {
    #[test]
    fn characters_are_linear((act, a, b) in action_case()) {
        let (a, b) = (Monomial::new(a), Monomial::new(b));
        let ab = a.product(&b);
        let p = act.p();
        let sum: Vec<u32> = act.characters(&a).iter().zip(act.characters(&b)).map(|(x, y)| (x + y) % p).collect();
        prop_assert_eq!(act.characters(&ab), sum);
        if is_invariant(&a, &act) && is_invariant(&b, &act) {
            prop_assert!(is_invariant(&ab, &act));
        }
    }

    #[test]
    fn random_actions_give_minimal_complete_bases((act, _, _) in action_case()) {
        let order = act.group_order(1 << 12).unwrap() as u32;
        let gens = hilbert_basis(&act, order, DEFAULT_MONOMIAL_CAP).unwrap();
        for i in 0..act.num_vars() {
            let mut e = vec![0; act.num_vars()];
            e[i] = act.p();
            prop_assert!(gens.iter().any(|g| g.divides(&Monomial::new(e.clone()))));
        }
        let mut memo = HashMap::new();
        for m in all_monomials(act.num_vars(), order.min(6)) {
            if is_invariant(&m, &act) {
                prop_assert!(factors(&m, &gens, &mut memo));
            }
        }
        for u in &gens {
            for a in proper_divisors(u) {
                prop_assert!(!is_invariant(&a, &act));
            }
        }
    }
}
