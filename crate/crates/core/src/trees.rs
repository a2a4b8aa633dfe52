//! Free-tree generation.
//!
//! Rooted trees on `t` vertices are generated by the classic level-sequence
//! successor: canonical sequences are visited in decreasing lexicographic
//! order starting from the path `(1,2,...,t)` and ending at the star
//! `(1,2,2,...,2)`. Free trees are obtained by deduplicating the rooted
//! output on canonical forms. That is linear in the number of rooted trees,
//! which stays tiny (719 at order 10) compared to blind labeled-tree
//! enumeration.

use std::collections::BTreeMap;

use crate::graph::{CanonicalForm, Graph};

/// All canonical rooted-tree level sequences on `t` vertices.
/// The root has level 1 and each vertex's parent is the nearest earlier
/// vertex one level up.
pub fn rooted_level_sequences(t: usize) -> Vec<Vec<usize>> {
    assert!(t >= 1, "trees need at least one vertex");
    if t == 1 {
        return vec![vec![1]];
    }
    let mut seq: Vec<usize> = (1..=t).collect();
    let mut out = Vec::new();
    loop {
        out.push(seq.clone());
        // Successor: find the last entry above 2, drop it by repeating the
        // segment that starts at its parent.
        let Some(p) = seq.iter().rposition(|&l| l > 2) else {
            break;
        };
        let q = seq[..p]
            .iter()
            .rposition(|&l| l == seq[p] - 1)
            .expect("every level above 2 has a parent");
        for i in p..t {
            seq[i] = seq[i - (p - q)];
        }
    }
    out
}

/// Builds the tree graph encoded by a level sequence.
pub fn tree_from_level_sequence(seq: &[usize]) -> Graph {
    let t = seq.len();
    let mut edges = Vec::with_capacity(t.saturating_sub(1));
    for i in 1..t {
        let parent = seq[..i]
            .iter()
            .rposition(|&l| l == seq[i] - 1)
            .expect("level sequence is well-formed");
        edges.push((parent, i));
    }
    Graph::from_edges(t, &edges).expect("level sequence yields a valid tree")
}

/// One representative per isomorphism class of free trees on `t` vertices,
/// in canonical-form order. Supports `t` up to the canonical-labeling limit.
pub fn free_trees(t: usize) -> Vec<Graph> {
    let mut classes: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    for seq in rooted_level_sequences(t) {
        let tree = tree_from_level_sequence(&seq);
        let form = tree
            .canonical_form()
            .expect("tree order within canonical limit");
        classes.entry(form).or_insert(tree);
    }
    classes.into_values().collect()
}
