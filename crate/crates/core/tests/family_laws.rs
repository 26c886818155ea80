//! Cross-module laws tying the families to the solvers and the
//! path-cover oracle to the exhaustive forcing solver.

use tfs_core::canon::canonical_code;
use tfs_core::enumerate::free_trees;
use tfs_core::families::{apply_operation, recognize_f, recognize_h};
use tfs_core::graph::Graph;
use tfs_core::solve::{forcing_number, tree_forcing_oracle};

/// Paths and subdivided stars are all generated by the five operations.
#[test]
fn h_members_are_f_members() {
    for n in 2..=10 {
        for t in free_trees(n).unwrap() {
            if recognize_h(&t).unwrap().is_some() {
                assert!(
                    recognize_f(&t).unwrap().is_some(),
                    "order-{n} tree certified by the path/spider recognizer \
                     must also have an operation derivation"
                );
            }
        }
    }
}

/// The greedy path-cover count agrees with the exhaustive forcing solver
/// on every tree up to order 12; only past that is the oracle trusted.
#[test]
fn path_cover_oracle_matches_forcing_number() {
    for n in 2..=12 {
        for t in free_trees(n).unwrap() {
            let exact = forcing_number(&t).unwrap().value;
            let oracle = tree_forcing_oracle(&t).unwrap();
            assert_eq!(exact, oracle, "disagreement on an order-{n} tree");
        }
    }
}

/// Every derivation certificate replays to a tree isomorphic to its input.
#[test]
fn derivation_certificates_replay() {
    for n in 2..=9 {
        for t in free_trees(n).unwrap() {
            if let Some(steps) = recognize_f(&t).unwrap() {
                let mut g = Graph::path(2);
                for step in &steps {
                    g = apply_operation(&g, step).unwrap();
                }
                assert_eq!(
                    canonical_code(&g).unwrap(),
                    canonical_code(&t).unwrap()
                );
            }
        }
    }
}
