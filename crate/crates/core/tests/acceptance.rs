//! Acceptance suite: every exact claim the library is built around,
//! checked exhaustively at desk scale. Each test prints one pass line;
//! run with `cargo test --test acceptance -- --nocapture` to see them.
//!
//! Solvers run with the leaf-count lower bound disabled, so the bounds
//! being swept are never assumed by the search that checks them.

use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tfs_core::canon::canonical_code;
use tfs_core::enumerate::{free_tree_count, free_trees, labeled_trees_prufer};
use tfs_core::families::{
    gap_tree, generate_all_t_delta, prescribed_min_tf_set, recognize_f, recognize_h,
    recognize_t_delta,
};
use tfs_core::forcing::{closure, is_total_forcing_set, validate_certificate};
use tfs_core::graph::Graph;
use tfs_core::set::VertexSet;
use tfs_core::solve::{
    all_minimum_tf_sets, forcing_number_with, total_forcing_number_with, SolverConfig,
};

fn sweep_config() -> SolverConfig {
    SolverConfig::unassuming()
}

fn ft(t: &Graph) -> usize {
    total_forcing_number_with(t, &sweep_config()).unwrap().value
}

fn f(t: &Graph) -> usize {
    forcing_number_with(t, &sweep_config()).unwrap().value
}

fn pass(criterion: &str, detail: String) {
    println!("acceptance {criterion}: PASS ({detail})");
}

#[test]
fn criterion_01_point_values() {
    let started = Instant::now();
    for n in 2..=10 {
        let p = Graph::path(n);
        assert_eq!(ft(&p), 2, "total forcing number of P_{n}");
        assert_eq!(f(&p), 1, "forcing number of P_{n}");
    }
    for delta in 2..=7 {
        let s = Graph::star(delta);
        assert_eq!(ft(&s), delta, "total forcing number of K_1_{delta}");
        assert_eq!(f(&s), delta - 1, "forcing number of K_1_{delta}");
    }
    assert_eq!(ft(&Graph::double_star(2, 2)), 4);
    for n in 3..=8 {
        assert_eq!(ft(&Graph::complete(n)), n - 1, "total forcing number of K_{n}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 1, "point values must finish within 1s");
    pass("1 point-values", format!("{} ms", elapsed.as_millis()));
}

#[test]
fn criterion_02_upper_bound_with_star_partition_equality() {
    let started = Instant::now();
    let mut checked = 0usize;
    let mut equality = 0usize;
    for n in 3..=12 {
        let mut per_order = 0usize;
        for t in free_trees(n).unwrap() {
            per_order += 1;
            let delta = t.stats().max_degree;
            let value = ft(&t);
            assert!(
                delta * value <= (delta - 1) * n + 1,
                "bound violated at order {n}: ft={value}, delta={delta}"
            );
            let attained = delta * value == (delta - 1) * n + 1;
            let member = recognize_t_delta(&t).unwrap().is_some();
            assert_eq!(
                attained, member,
                "equality characterization failed at order {n} (ft={value}, delta={delta})"
            );
            if attained {
                equality += 1;
            }
        }
        assert_eq!(per_order as u64, free_tree_count(n), "enumeration count at order {n}");
        checked += per_order;
    }
    pass(
        "2 ft-upper-bound",
        format!(
            "{checked} trees, {equality} equality cases, {} s",
            started.elapsed().as_secs_f32()
        ),
    );
}

#[test]
fn criterion_03_coarse_upper_bound_with_star_equality() {
    let mut checked = 0usize;
    let mut equality = 0usize;
    for n in 3..=12 {
        for t in free_trees(n).unwrap() {
            checked += 1;
            let delta = t.stats().max_degree;
            let value = ft(&t);
            assert!((delta + 1) * value <= delta * n, "coarse bound violated at order {n}");
            // The finer bound implies the coarse one, with the two equal
            // exactly when n = delta + 1.
            assert!((delta + 1) * ((delta - 1) * n + 1) <= delta * delta * n);
            assert_eq!(
                (delta + 1) * ((delta - 1) * n + 1) == delta * delta * n,
                n == delta + 1
            );
            let attained = (delta + 1) * value == delta * n;
            assert_eq!(attained, t.is_star(), "equality must single out stars (order {n})");
            if attained {
                equality += 1;
            }
        }
    }
    pass(
        "3 coarse-upper-bound",
        format!("{checked} trees, {equality} equality cases"),
    );
}

#[test]
fn criterion_04_leaf_lower_bound_with_operation_family_equality() {
    let started = Instant::now();
    let mut checked = 0usize;
    let mut equality = 0usize;
    for n in 2..=12 {
        for t in free_trees(n).unwrap() {
            checked += 1;
            let leaves = t.stats().leaf_count;
            let value = ft(&t);
            assert!(leaves <= value, "leaf bound violated at order {n}");
            let attained = leaves == value;
            let member = recognize_f(&t).unwrap().is_some();
            assert_eq!(
                attained, member,
                "operation-family characterization failed at order {n}"
            );
            if attained {
                equality += 1;
            }
        }
    }
    pass(
        "4 leaf-lower-bound",
        format!(
            "{checked} trees, {equality} equality cases, {} s",
            started.elapsed().as_secs_f32()
        ),
    );
}

#[test]
fn criterion_05_gap_one_characterization_and_forcing_leaf_bound() {
    let mut checked = 0usize;
    let mut equality = 0usize;
    for n in 2..=12 {
        for t in free_trees(n).unwrap() {
            checked += 1;
            let total = ft(&t);
            let plain = f(&t);
            let leaves = t.stats().leaf_count;
            assert!(plain < total, "strict gap violated at order {n}");
            assert!(plain < leaves, "forcing leaf bound violated at order {n}");
            let attained = plain + 1 == total;
            let member = recognize_h(&t).unwrap().is_some();
            assert_eq!(attained, member, "path/spider characterization failed at order {n}");
            if attained {
                equality += 1;
            }
        }
    }
    pass(
        "5 gap-one-characterization",
        format!("{checked} trees, {equality} equality cases"),
    );
}

fn seed_from_code(t: &Graph) -> [u8; 32] {
    let mut seed = [0u8; 32];
    for (i, &b) in canonical_code(t).unwrap().as_bytes().iter().enumerate() {
        seed[i % 32] = seed[i % 32].wrapping_mul(31).wrapping_add(b).wrapping_add(i as u8);
    }
    seed
}

#[test]
fn criterion_06_subdivision_and_trim_invariance() {
    let started = Instant::now();
    let mut pairs = 0usize;
    for n in 2..=10 {
        for t in free_trees(n).unwrap() {
            let total = ft(&t);
            let plain = f(&t);
            let leaves = t.stats().leaf_count;

            let trimmed = t.trim().unwrap();
            assert_eq!(ft(&trimmed), total, "trim changed the total forcing number");
            assert_eq!(f(&trimmed), plain, "trim changed the forcing number");
            assert_eq!(trimmed.stats().leaf_count, leaves, "trim changed the leaf count");

            let mut rng = ChaCha8Rng::from_seed(seed_from_code(&t));
            for _ in 0..3 {
                let eligible: Vec<(usize, usize)> = t
                    .edges()
                    .filter(|&(u, v)| t.degree(u).min(t.degree(v)) <= 2)
                    .collect();
                let e = eligible[rng.gen_range(0..eligible.len())];
                let times = rng.gen_range(1..=3);
                let s = t.subdivide_edge(e, times).unwrap();
                assert_eq!(ft(&s), total, "subdivision changed the total forcing number");
                assert_eq!(f(&s), plain, "subdivision changed the forcing number");
                pairs += 1;
            }
        }
    }
    pass(
        "6 subdivision-trim-invariance",
        format!("{pairs} subdivision pairs, {} s", started.elapsed().as_secs_f32()),
    );
}

#[test]
fn criterion_07_minimum_tf_sets_contain_strong_support_structure() {
    let mut sets_checked = 0usize;
    for n in 2..=9 {
        for t in free_trees(n).unwrap() {
            let stats = t.stats();
            for s in all_minimum_tf_sets(&t).unwrap() {
                sets_checked += 1;
                for v in stats.strong_supports.iter() {
                    assert!(s.contains(v), "minimum TF-set misses strong support {v}");
                    let leaf_nbrs: Vec<usize> = t
                        .neighbors(v)
                        .iter()
                        .copied()
                        .filter(|&u| stats.leaves.contains(u))
                        .collect();
                    let present = leaf_nbrs.iter().filter(|&&u| s.contains(u)).count();
                    assert!(
                        present + 1 >= leaf_nbrs.len(),
                        "minimum TF-set misses two leaves of one strong support"
                    );
                }
            }
        }
    }
    pass(
        "7 strong-support-structure",
        format!("{sets_checked} minimum TF-sets"),
    );
}

#[test]
fn criterion_08_star_partition_family_values_and_prescribed_sets() {
    let mut members = 0usize;
    for delta in [3usize, 4] {
        for k in 1..=4 {
            let mut seen = HashSet::new();
            for (t, partition) in generate_all_t_delta(delta, k).unwrap() {
                if !seen.insert(canonical_code(&t).unwrap()) {
                    continue;
                }
                members += 1;
                assert_eq!(t.order(), k * delta + 1);
                let expected = k * (delta - 1) + 1;
                assert_eq!(ft(&t), expected, "family value (delta={delta}, k={k})");
                let s = prescribed_min_tf_set(&t, &partition).unwrap();
                assert_eq!(s.len(), expected);
                assert!(is_total_forcing_set(&t, &s), "prescribed set must be a TF-set");
            }
        }
    }
    pass(
        "8 star-partition-values",
        format!("{members} distinct family members"),
    );
}

#[test]
fn criterion_09_gap_construction() {
    let started = Instant::now();
    for k in 1..=5 {
        let t = gap_tree(k).unwrap();
        assert_eq!(t.order(), 3 * k);
        assert_eq!(ft(&t), 2 * k, "gap tree total forcing number at k={k}");
        assert_eq!(f(&t), k, "gap tree forcing number at k={k}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 30, "gap solves must finish within 30 s");
    pass("9 gap-construction", format!("{} ms", elapsed.as_millis()));
}

/// Forcing closure with a randomly chosen eligible forcer at every step:
/// an independent oracle for order insensitivity of the final colored set.
fn randomized_closure(g: &Graph, s: &VertexSet, rng: &mut ChaCha8Rng) -> VertexSet {
    let n = g.order();
    let mut colored = vec![false; n];
    for v in s.iter() {
        colored[v] = true;
    }
    loop {
        let moves: Vec<(usize, usize)> = (0..n)
            .filter(|&v| colored[v])
            .filter_map(|v| {
                let uncolored: Vec<usize> = g
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&u| !colored[u])
                    .collect();
                if uncolored.len() == 1 {
                    Some((v, uncolored[0]))
                } else {
                    None
                }
            })
            .collect();
        if moves.is_empty() {
            break;
        }
        let (_, u) = moves[rng.gen_range(0..moves.len())];
        colored[u] = true;
    }
    VertexSet::from_indices(n, (0..n).filter(|&v| colored[v]))
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let edges: Vec<(usize, usize)> = (1..n)
        .map(|i| (perm[i], perm[rng.gen_range(0..i)]))
        .collect();
    Graph::new(n, &edges).unwrap()
}

#[test]
fn criterion_10_engine_and_enumerator_properties() {
    // Monotonicity and order independence on 1000 random (tree, subset) pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(20170529);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=12);
        let t = random_tree(&mut rng, n);
        let s = VertexSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        let mut bigger = s.clone();
        for v in 0..n {
            if rng.gen_bool(0.3) {
                bigger.insert(v);
            }
        }
        let base = closure(&t, &s);
        if base.complete {
            assert!(closure(&t, &bigger).complete, "closure must be monotone");
        }
        let randomized = randomized_closure(&t, &s, &mut rng);
        assert_eq!(
            base.final_colored, randomized,
            "final colored set must not depend on forcer order"
        );
        if base.complete {
            assert!(validate_certificate(&t, &s, &base.sequence));
        }
    }

    // Free-tree counts against the labeled-tree oracle.
    for n in 2..=9 {
        let mut classes = HashSet::new();
        for t in labeled_trees_prufer(n).unwrap() {
            classes.insert(canonical_code(&t).unwrap());
        }
        assert_eq!(classes.len(), free_trees(n).unwrap().count());
    }

    // Canonical codes against brute-force isomorphism on all pairs, order <= 7.
    for n in 1..=7 {
        let trees: Vec<Graph> = free_trees(n).unwrap().collect();
        for (i, a) in trees.iter().enumerate() {
            for b in &trees[i..] {
                let same_code = canonical_code(a).unwrap() == canonical_code(b).unwrap();
                assert_eq!(same_code, brute_force_isomorphic(a, b));
            }
        }
    }

    // Solver witnesses replay.
    let cfg = sweep_config();
    let mut witnesses = 0usize;
    for n in 2..=9 {
        for t in free_trees(n).unwrap() {
            let rf = forcing_number_with(&t, &cfg).unwrap();
            assert!(validate_certificate(&t, &rf.witness, &rf.certificate.sequence));
            let rt = total_forcing_number_with(&t, &cfg).unwrap();
            assert!(validate_certificate(&t, &rt.witness, &rt.certificate.sequence));
            witnesses += 2;
        }
    }
    pass(
        "10 engine-enumerator-properties",
        format!("1000 random pairs, {witnesses} witnesses"),
    );
}

fn brute_force_isomorphic(a: &Graph, b: &Graph) -> bool {
    use itertools::Itertools;
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    let n = a.order();
    (0..n).permutations(n).any(|perm| {
        a.edges()
            .all(|(u, v)| b.has_edge(perm[u], perm[v]))
    })
}
