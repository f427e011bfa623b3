use fermat_core::fixed_points::{acts_freely_subgroup, DEFAULT_ELEMENT_CAP};
use fermat_core::free_enum::{
    classify_orbits, close_under_autg, enumerate_all, enumerate_normalized, necessary_bounds, EnumerationTask, Mode,
};
use fermat_core::{Error, GeneratorPermutation, Subgroup};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exhaustive tasks above this many candidate subspaces are left to release runs.
const SWEEP_CANDIDATES: u64 = 1 << 18;
const NORMALIZED_NODES: u64 = 1 << 21;

fn sweep() -> Vec<EnumerationTask> {
    let mut tasks = Vec::new();
    for p in [2u32, 3, 5] {
        for n in 3..=7 {
            for m in 1..n {
                let task = EnumerationTask::new(2, p, n, m);
                if task.candidate_count() <= BigUint::from(SWEEP_CANDIDATES) {
                    tasks.push(task);
                }
            }
        }
    }
    tasks
}

#[test]
fn normalized_forms_generate_the_exhaustive_set() {
    let mut compared = 0;
    for task in sweep() {
        let all = enumerate_all(&task).unwrap();
        let normalized_task = EnumerationTask { mode: Mode::Normalized, subspace_cap: NORMALIZED_NODES, ..task.clone() };
        let mats = match enumerate_normalized(&normalized_task) {
            Ok(mats) => mats,
            Err(Error::Resource { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        let ks: Vec<Subgroup> = mats.iter().map(|m| m.to_subgroup().unwrap()).collect();
        let closed = close_under_autg(&ks, 1 << 20).unwrap();
        assert_eq!(closed, all, "(p, n, m) = ({}, {}, {})", task.p, task.n, task.m);
        compared += 1;
    }
    assert!(compared >= 30, "only {compared} tasks compared");
}

#[test]
fn enumerated_subgroups_are_free_with_the_right_rank() {
    for task in sweep() {
        for k in enumerate_all(&task).unwrap() {
            assert_eq!(k.quotient_rank(), task.m);
            assert!(acts_freely_subgroup(&k, task.d, DEFAULT_ELEMENT_CAP).unwrap(), "{k}");
        }
    }
}

#[test]
fn necessary_bounds_are_sound() {
    for task in sweep() {
        let found = enumerate_all(&task).unwrap();
        if !found.is_empty() {
            let verdict = necessary_bounds(task.d, task.p, task.n, task.m).unwrap();
            assert!(!verdict.is_empty(), "(p, n, m) = ({}, {}, {}) pruned but nonempty", task.p, task.n, task.m);
        }
    }
}

#[test]
fn free_family_is_invariant_under_generator_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for task in sweep() {
        let all = enumerate_all(&task).unwrap();
        let size = task.n + 1;
        let mut images: Vec<usize> = (0..size).collect();
        for k in all.iter().take(50) {
            images.shuffle(&mut rng);
            let sigma = GeneratorPermutation::new(images.clone()).unwrap();
            let moved = k.permuted(&sigma).unwrap();
            assert!(all.binary_search_by(|x| x.canonical_key().cmp(&moved.canonical_key())).is_ok());
        }
    }
}

#[test]
fn orbit_partition_is_schedule_independent() {
    let task = EnumerationTask::new(2, 2, 6, 3);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let all = enumerate_all(&task).unwrap();
            let classes = classify_orbits(&all).unwrap();
            serde_json::to_string(&classes).unwrap()
        })
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(1));
}

#[test]
fn candidate_cap_is_enforced() {
    let mut task = EnumerationTask::new(2, 3, 8, 4);
    task.subspace_cap = 1000;
    assert!(matches!(enumerate_all(&task), Err(Error::Resource { .. })));
    let normalized = EnumerationTask { mode: Mode::Normalized, subspace_cap: 10, ..EnumerationTask::new(2, 5, 7, 3) };
    assert!(matches!(enumerate_normalized(&normalized), Err(Error::Resource { .. })));
}
