//! Immutable simple undirected graphs on up to 64 vertices.
//!
//! Each vertex stores its neighborhood as one `u64` bitset, so adjacency
//! queries, degree counts, and set operations over neighborhoods are single
//! machine-word operations. A `Graph` is a value: once built it never
//! changes, and every "mutation" (vertex deletion, extension) returns a new
//! graph. This makes graphs freely shareable across threads.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph6;

/// Hard cap: one adjacency row per machine word.
pub const MAX_ORDER: usize = 64;

/// Exact canonical labeling searches over vertex orderings; above this order
/// the search is refused rather than silently degraded.
pub const CANONICAL_MAX_ORDER: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order must be between 1 and {MAX_ORDER}, got {0}")]
    OrderOutOfRange(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("clique size must satisfy 1 <= k < n, got n={n}, k={k}")]
    InvalidCliqueSize { n: usize, k: usize },
    #[error("one-edge variant needs an independent set of size >= 2, got n-k={0}")]
    IndependentSetTooSmall(usize),
    #[error("friendship graph needs at least one triangle")]
    ZeroTriangles,
    #[error("both bipartition classes must be nonempty")]
    EmptyPart,
    #[error("bipartition classes {a}+{b} exceed the {MAX_ORDER}-vertex limit")]
    PartsTooLarge { a: usize, b: usize },
    #[error("cannot delete the only vertex of an order-1 graph")]
    DeleteFromSingleton,
    #[error("canonical labeling supports order <= {CANONICAL_MAX_ORDER}, got {0}")]
    CanonicalUnsupported(usize),
}

/// Simple undirected graph, adjacency stored as one bitset row per vertex.
///
/// Invariants (enforced by every constructor):
/// - symmetry: `j in adj[i]` iff `i in adj[j]`;
/// - no loops: `i not in adj[i]`;
/// - no bits at or above `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(n));
        }
        Ok(Graph {
            n,
            adj: vec![0u64; n],
        })
    }

    /// Graph with the given edge list. Duplicate edges are collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::edgeless(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, order: n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Builds a graph directly from adjacency rows. Internal: callers must
    /// guarantee symmetry and loop-freeness; checked in debug builds.
    pub(crate) fn from_adj_unchecked(adj: Vec<u64>) -> Self {
        let g = Graph { n: adj.len(), adj };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::edgeless(n)?;
        let mask = vertex_mask(n);
        for i in 0..n {
            g.adj[i] = mask & !(1 << i);
        }
        Ok(g)
    }

    /// Path on `n` vertices: 0-1-2-...-(n-1).
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle on `n >= 3` vertices: 0-1-...-(n-1)-0.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::OrderOutOfRange(n));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    #[inline(always)]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    /// Neighborhood of `u` as a bitset.
    #[inline(always)]
    pub fn neighbors(&self, u: usize) -> u64 {
        self.adj[u]
    }

    #[inline(always)]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        let total: u32 = self.adj.iter().map(|r| r.count_ones()).sum();
        (total / 2) as usize
    }

    /// All vertices as a bitset.
    #[inline(always)]
    pub fn vertex_mask(&self) -> u64 {
        vertex_mask(self.n)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut higher = self.adj[u] & mask_above(u);
            while higher != 0 {
                let v = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                out.push((u, v));
            }
        }
        out
    }

    pub fn adjacency_rows(&self) -> &[u64] {
        &self.adj
    }

    /// Number of edges with both endpoints inside `set`.
    pub fn edges_within(&self, set: u64) -> usize {
        let mut twice = 0u32;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice += (self.adj[v] & set).count_ones();
        }
        (twice / 2) as usize
    }

    /// Number of edges joining `a` to `b`; the sets must be disjoint.
    pub fn edges_between(&self, a: u64, b: u64) -> usize {
        debug_assert_eq!(a & b, 0);
        let mut count = 0u32;
        let mut rest = a;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            count += (self.adj[v] & b).count_ones();
        }
        count as usize
    }

    #[inline(always)]
    pub fn common_neighbors(&self, u: usize, v: usize) -> u64 {
        self.adj[u] & self.adj[v]
    }

    /// Deletes vertex `u`; surviving vertices above `u` shift down by one.
    pub fn delete_vertex(&self, u: usize) -> Result<Graph, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u, order: self.n });
        }
        if self.n == 1 {
            return Err(GraphError::DeleteFromSingleton);
        }
        let low_mask = (1u64 << u) - 1;
        let mut adj = Vec::with_capacity(self.n - 1);
        for i in 0..self.n {
            if i == u {
                continue;
            }
            let row = self.adj[i];
            adj.push((row & low_mask) | ((row & mask_above(u)) >> 1));
        }
        Ok(Graph::from_adj_unchecked(adj))
    }

    /// New graph with one extra vertex (index `n`) whose neighborhood is
    /// `neighborhood` over the existing vertices.
    pub fn extend_with(&self, neighborhood: u64) -> Result<Graph, GraphError> {
        if self.n + 1 > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(self.n + 1));
        }
        if neighborhood & !self.vertex_mask() != 0 {
            return Err(GraphError::VertexOutOfRange {
                vertex: 63 - neighborhood.leading_zeros() as usize,
                order: self.n,
            });
        }
        let mut adj = self.adj.clone();
        for (i, row) in adj.iter_mut().enumerate() {
            if (neighborhood >> i) & 1 == 1 {
                *row |= 1 << self.n;
            }
        }
        adj.push(neighborhood);
        Ok(Graph::from_adj_unchecked(adj))
    }

    /// Relabels vertices: old vertex `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            let mut row = self.adj[u];
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                adj[perm[u]] |= 1 << perm[v];
            }
        }
        Graph::from_adj_unchecked(adj)
    }

    /// Vertices reachable from `start` (as a bitset), including `start`.
    pub fn component_of(&self, start: usize) -> u64 {
        let mut reach = 1u64 << start;
        loop {
            let mut grow = reach;
            let mut rest = reach;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                grow |= self.adj[v];
            }
            if grow == reach {
                return reach;
            }
            reach = grow;
        }
    }

    /// Connected-component masks, ordered by their lowest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.n {
            if (seen >> v) & 1 == 0 {
                let comp = self.component_of(v);
                seen |= comp;
                out.push(comp);
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0) == self.vertex_mask()
    }

    /// Checks the representation invariants; used by tests and debug builds.
    pub fn check_invariants(&self) -> Result<(), GraphError> {
        if self.n == 0 || self.n > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(self.n));
        }
        for i in 0..self.n {
            if self.adj[i] & !self.vertex_mask() != 0 {
                return Err(GraphError::VertexOutOfRange { vertex: i, order: self.n });
            }
            if (self.adj[i] >> i) & 1 == 1 {
                return Err(GraphError::SelfLoop(i));
            }
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) != self.has_edge(j, i) {
                    return Err(GraphError::VertexOutOfRange { vertex: j, order: self.n });
                }
            }
        }
        Ok(())
    }

    /// Canonical form of this graph's isomorphism class.
    pub fn canonical_form(&self) -> Result<CanonicalForm, GraphError> {
        if self.n > CANONICAL_MAX_ORDER {
            return Err(GraphError::CanonicalUnsupported(self.n));
        }
        let assignment = minimum_code_assignment(self);
        let mut adj = vec![0u64; self.n];
        for j in 0..self.n {
            for i in 0..j {
                if self.has_edge(assignment[i], assignment[j]) {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        let relabeled = Graph::from_adj_unchecked(adj);
        Ok(CanonicalForm(graph6::encode(&relabeled)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[inline(always)]
pub(crate) fn vertex_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Bits strictly above `v`; safe at `v = 63` where a plain shift would
/// overflow.
#[inline(always)]
pub(crate) fn mask_above(v: usize) -> u64 {
    u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0)
}

/// Isomorphism-invariant identifier of a graph: the graph6 string of a
/// canonically relabeled copy. Equal forms iff isomorphic graphs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Decodes the canonical representative back into a graph.
    pub fn to_graph(&self) -> Graph {
        graph6::decode(&self.0).expect("canonical form stores valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        graph6::decode(&s).map_err(D::Error::custom)?;
        Ok(CanonicalForm(s))
    }
}

/// True iff the two graphs are isomorphic. Requires canonical-form support
/// for both orders.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, GraphError> {
    if a.order() != b.order() {
        return Ok(false);
    }
    Ok(a.canonical_form()? == b.canonical_form()?)
}

/// Partition of vertices into twin classes, written into `out` as the class
/// representative of each vertex: `u` and `v` are twins when the
/// transposition swapping them is an automorphism, i.e. their adjacency
/// rows agree outside `{u, v}`.
///
/// Twin classes let labeling searches try only one candidate per class at
/// each position: the subtrees for class-mates are images of each other
/// under an automorphism fixing everything already placed.
pub(crate) fn twin_classes_into(adj: &[u64], out: &mut [u8]) {
    let n = adj.len();
    for (v, slot) in out.iter_mut().enumerate().take(n) {
        *slot = v as u8;
    }
    fn find(parent: &mut [u8], v: u8) -> u8 {
        let mut v = v;
        while parent[v as usize] != v {
            parent[v as usize] = parent[parent[v as usize] as usize];
            v = parent[v as usize];
        }
        v
    }
    for u in 0..n {
        for v in (u + 1)..n {
            let off = !(1u64 << u) & !(1u64 << v);
            if adj[u] & off == adj[v] & off {
                let (ru, rv) = (find(out, u as u8), find(out, v as u8));
                if ru != rv {
                    out[rv as usize] = ru;
                }
            }
        }
    }
    for v in 0..n {
        out[v] = find(out, v as u8);
    }
}

/// Finds the vertex assignment (position -> original vertex) minimizing the
/// labeling code: degree sequence first (forcing degree-ascending positions),
/// then the upper-triangle adjacency bits read column by column.
///
/// Any isomorphism preserves degrees, so restricting each position to
/// vertices of the forced degree prunes without losing exactness. Within
/// that restriction a branch-and-bound search compares partial bit codes
/// against the best complete code found so far, and twin classes collapse
/// interchangeable candidates.
fn minimum_code_assignment(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut target: Vec<usize> = degrees.clone();
    target.sort_unstable();
    let mut twins = [0u8; CANONICAL_MAX_ORDER];
    twin_classes_into(&g.adj, &mut twins);

    let total_bits = n * (n - 1) / 2;
    let mut best_code = u128::MAX;
    let mut best_assignment = vec![0usize; n];
    let mut assignment = vec![0usize; n];
    let mut used = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn descend(
        g: &Graph,
        target: &[usize],
        degrees: &[usize],
        twins: &[u8],
        total_bits: usize,
        bits_done: usize,
        pos: usize,
        code: u128,
        assignment: &mut Vec<usize>,
        used: &mut u64,
        best_code: &mut u128,
        best_assignment: &mut Vec<usize>,
    ) {
        let n = g.order();
        if pos == n {
            if code < *best_code {
                *best_code = code;
                best_assignment.copy_from_slice(assignment);
            }
            return;
        }
        let mut tried_classes = 0u64;
        for v in 0..n {
            if (*used >> v) & 1 == 1 || degrees[v] != target[pos] {
                continue;
            }
            if (tried_classes >> twins[v]) & 1 == 1 {
                continue;
            }
            tried_classes |= 1 << twins[v];
            let mut chunk: u128 = 0;
            for (i, &a) in assignment.iter().take(pos).enumerate() {
                chunk |= u128::from((g.neighbors(v) >> a) & 1) << (pos - 1 - i);
            }
            let ncode = (code << pos) | chunk;
            let nbits = bits_done + pos;
            // Compare against the prefix of the best complete code.
            if *best_code != u128::MAX && ncode > (*best_code >> (total_bits - nbits)) {
                continue;
            }
            assignment[pos] = v;
            *used |= 1 << v;
            descend(
                g,
                target,
                degrees,
                twins,
                total_bits,
                nbits,
                pos + 1,
                ncode,
                assignment,
                used,
                best_code,
                best_assignment,
            );
            *used &= !(1 << v);
        }
    }

    descend(
        g,
        &target,
        &degrees,
        &twins,
        total_bits,
        0,
        0,
        0,
        &mut assignment,
        &mut used,
        &mut best_code,
        &mut best_assignment,
    );
    best_assignment
}

/// Join of a `k`-clique with an independent set of `n-k` vertices; with
/// `plus`, one extra edge inside the independent set.
///
/// Layout is deterministic: clique vertices occupy indices `0..k`, and the
/// extra edge joins indices `k` and `k+1`.
pub fn complete_split(n: usize, k: usize, plus: bool) -> Result<Graph, GraphError> {
    if n == 0 || n > MAX_ORDER {
        return Err(GraphError::OrderOutOfRange(n));
    }
    if k == 0 || k >= n {
        return Err(GraphError::InvalidCliqueSize { n, k });
    }
    if plus && n - k < 2 {
        return Err(GraphError::IndependentSetTooSmall(n - k));
    }
    let mut g = Graph::edgeless(n)?;
    let full = vertex_mask(n);
    for i in 0..k {
        g.adj[i] = full & !(1 << i);
    }
    let clique_mask = vertex_mask(k);
    for i in k..n {
        g.adj[i] = clique_mask;
    }
    if plus {
        g.adj[k] |= 1 << (k + 1);
        g.adj[k + 1] |= 1 << k;
    }
    debug_assert!(g.check_invariants().is_ok());
    Ok(g)
}

/// `t` triangles sharing one hub vertex (index 0); every pair of vertices
/// has exactly one common neighbor.
pub fn friendship(t: usize) -> Result<Graph, GraphError> {
    if t == 0 {
        return Err(GraphError::ZeroTriangles);
    }
    let n = 2 * t + 1;
    if n > MAX_ORDER {
        return Err(GraphError::OrderOutOfRange(n));
    }
    let mut edges = Vec::with_capacity(3 * t);
    for i in 0..t {
        let a = 2 * i + 1;
        let b = 2 * i + 2;
        edges.push((0, a));
        edges.push((0, b));
        edges.push((a, b));
    }
    Graph::from_edges(n, &edges)
}

/// Structural recognizer: is `g` exactly the complete split graph on its
/// order with clique size `k` (plus one independent-set edge when `plus`)?
///
/// Works at any order, unlike canonical-form comparison: the degree
/// multiset plus independence of the non-clique part pins the graph down.
pub fn is_complete_split_graph(g: &Graph, k: usize, plus: bool) -> bool {
    let n = g.order();
    if k == 0 || k >= n || (plus && n - k < 2) {
        return false;
    }
    // Degenerate shapes that collapse to complete graphs.
    if (!plus && n - k == 1) || (plus && n - k == 2) {
        return g == &Graph::complete(n).expect("order already validated");
    }
    let mut full = 0u64;
    for v in 0..n {
        if g.degree(v) == n - 1 {
            full |= 1 << v;
        }
    }
    if full.count_ones() as usize != k {
        return false;
    }
    let rest = g.vertex_mask() & !full;
    let internal = g.edges_within(rest);
    if !plus {
        if internal != 0 {
            return false;
        }
        bits_of(rest).all(|v| g.degree(v) == k)
    } else {
        if internal != 1 {
            return false;
        }
        bits_of(rest).all(|v| {
            let d = g.degree(v);
            let touches_extra = g.neighbors(v) & rest != 0;
            if touches_extra {
                d == k + 1
            } else {
                d == k
            }
        })
    }
}

pub(crate) fn bits_of(mask: u64) -> impl Iterator<Item = usize> {
    std::iter::successors(
        if mask == 0 { None } else { Some((mask.trailing_zeros() as usize, mask)) },
        |&(_, m)| {
            let m = m & (m - 1);
            if m == 0 {
                None
            } else {
                Some((m.trailing_zeros() as usize, m))
            }
        },
    )
    .map(|(v, _)| v)
}

/// Complete bipartite graph with classes `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    if a == 0 || b == 0 {
        return Err(GraphError::EmptyPart);
    }
    if a + b > MAX_ORDER {
        return Err(GraphError::PartsTooLarge { a, b });
    }
    let n = a + b;
    let mut g = Graph::edgeless(n)?;
    let left = vertex_mask(a);
    let right = vertex_mask(n) & !left;
    for i in 0..a {
        g.adj[i] = right;
    }
    for i in a..n {
        g.adj[i] = left;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgeless_and_complete() {
        let e = Graph::edgeless(5).unwrap();
        assert_eq!(e.edge_count(), 0);
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.edge_count(), 10);
        assert_eq!(k5.min_degree(), 4);
        k5.check_invariants().unwrap();
    }

    #[test]
    fn order_limits() {
        assert!(Graph::edgeless(0).is_err());
        assert!(Graph::edgeless(65).is_err());
        assert!(Graph::edgeless(64).is_ok());
        let g = Graph::complete(64).unwrap();
        assert_eq!(g.edge_count(), 64 * 63 / 2);
        g.check_invariants().unwrap();
    }

    #[test]
    fn top_vertex_operations_at_order_64() {
        // Bit index 63 is where unchecked shifts would overflow.
        let g = Graph::from_edges(64, &[(62, 63), (0, 63), (0, 62)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 62), (0, 63), (62, 63)]);
        let d = g.delete_vertex(63).unwrap();
        assert_eq!(d.order(), 63);
        assert_eq!(d.edges(), vec![(0, 62)]);
        let d = g.delete_vertex(0).unwrap();
        assert!(d.has_edge(61, 62));
        assert_eq!(d.edge_count(), 1);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, order: 3 })
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        ));
    }

    #[test]
    fn complete_split_edge_counts() {
        // e = kn - (k^2+k)/2, one more for the plus variant.
        for n in 2..=20usize {
            for k in 1..n {
                let g = complete_split(n, k, false).unwrap();
                g.check_invariants().unwrap();
                assert_eq!(g.edge_count(), k * n - (k * k + k) / 2);
                if n - k >= 2 {
                    let gp = complete_split(n, k, true).unwrap();
                    gp.check_invariants().unwrap();
                    assert_eq!(gp.edge_count(), k * n - (k * k + k) / 2 + 1);
                }
            }
        }
    }

    #[test]
    fn complete_split_examples() {
        assert_eq!(complete_split(6, 2, false).unwrap().edge_count(), 9);
        // k = 1 is the star.
        let star = complete_split(6, 1, false).unwrap();
        assert_eq!(star.edge_count(), 5);
        assert_eq!(star.degree(0), 5);
        // Star plus one edge among the leaves.
        let star_plus = complete_split(6, 1, true).unwrap();
        assert_eq!(star_plus.edge_count(), 6);
        assert!(star_plus.has_edge(1, 2));
    }

    #[test]
    fn complete_split_rejects_bad_parameters() {
        assert!(complete_split(5, 5, false).is_err());
        assert!(complete_split(5, 0, false).is_err());
        assert!(complete_split(5, 4, true).is_err());
        assert!(complete_split(5, 3, true).is_ok());
    }

    #[test]
    fn friendship_small_cases() {
        let k3 = friendship(1).unwrap();
        assert_eq!(k3.order(), 3);
        assert_eq!(k3.edge_count(), 3);
        assert!(is_isomorphic(&k3, &Graph::complete(3).unwrap()).unwrap());

        let bowtie = friendship(2).unwrap();
        assert_eq!(bowtie.order(), 5);
        assert_eq!(bowtie.edge_count(), 6);
        assert_eq!(bowtie.degree(0), 4);

        assert!(friendship(0).is_err());
    }

    #[test]
    fn friendship_common_neighbor_property() {
        // Brute-force: every pair of vertices has exactly one common neighbor.
        let g = friendship(3).unwrap();
        assert_eq!(g.order(), 7);
        assert_eq!(g.edge_count(), 9);
        for u in 0..g.order() {
            for v in (u + 1)..g.order() {
                assert_eq!(g.common_neighbors(u, v).count_ones(), 1, "pair ({u},{v})");
            }
        }
    }

    #[test]
    fn complete_bipartite_basics() {
        let c4 = complete_bipartite(2, 2).unwrap();
        assert!(is_isomorphic(&c4, &Graph::cycle(4).unwrap()).unwrap());
        assert_eq!(complete_bipartite(5, 5).unwrap().edge_count(), 25);
        assert_eq!(complete_bipartite(3, 4).unwrap().edge_count(), 12);
        assert!(complete_bipartite(0, 3).is_err());
        assert!(complete_bipartite(40, 30).is_err());
    }

    #[test]
    fn delete_vertex_star_cases() {
        let star = complete_split(5, 1, false).unwrap(); // K_{1,4}, hub 0
        let no_hub = star.delete_vertex(0).unwrap();
        assert_eq!(no_hub.order(), 4);
        assert_eq!(no_hub.edge_count(), 0);

        let no_leaf = star.delete_vertex(4).unwrap();
        assert!(is_isomorphic(&no_leaf, &complete_split(4, 1, false).unwrap()).unwrap());
    }

    #[test]
    fn delete_vertex_shifts_indices() {
        let g = Graph::from_edges(4, &[(0, 2), (2, 3), (1, 3)]).unwrap();
        let d = g.delete_vertex(1).unwrap();
        // Survivors 0,2,3 become 0,1,2; edges (0,2),(2,3) become (0,1),(1,2).
        assert_eq!(d.edges(), vec![(0, 1), (1, 2)]);
        assert!(g.delete_vertex(4).is_err());
        assert!(Graph::edgeless(1).unwrap().delete_vertex(0).is_err());
    }

    #[test]
    fn delete_vertex_from_complete_split() {
        let g = complete_split(6, 2, false).unwrap();
        // Deleting a clique vertex leaves the star S_{5,1}.
        let no_clique = g.delete_vertex(0).unwrap();
        assert!(is_isomorphic(&no_clique, &complete_split(5, 1, false).unwrap()).unwrap());
        // Deleting an independent vertex leaves S_{5,2}.
        let no_indep = g.delete_vertex(5).unwrap();
        assert!(is_isomorphic(&no_indep, &complete_split(5, 2, false).unwrap()).unwrap());
    }

    #[test]
    fn components_and_connectivity() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let comps = g.components();
        assert_eq!(comps, vec![0b000111, 0b011000, 0b100000]);
        assert!(!g.is_connected());
        assert!(Graph::cycle(5).unwrap().is_connected());
        assert!(Graph::edgeless(1).unwrap().is_connected());
    }

    #[test]
    fn edge_set_counters() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.edges_within(0b00111), 3);
        assert_eq!(g.edges_within(0b11000), 1);
        assert_eq!(g.edges_between(0b00111, 0b11000), 1);
    }

    #[test]
    fn canonical_form_relabeling_invariance() {
        // C_4 labeled 0-1-2-3 and 0-2-1-3 yield the same form.
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let b = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(a.canonical_form().unwrap(), b.canonical_form().unwrap());
    }

    #[test]
    fn canonical_form_distinguishes_path_and_star() {
        let p4 = Graph::path(4).unwrap();
        let star = complete_split(4, 1, false).unwrap();
        assert_ne!(p4.canonical_form().unwrap(), star.canonical_form().unwrap());
    }

    #[test]
    fn canonical_form_counts_all_order_4_classes() {
        // All 2^6 labeled graphs on 4 vertices fall into 11 classes.
        let mut forms = std::collections::HashSet::new();
        for mask in 0u64..64 {
            let mut edges = Vec::new();
            let pairs = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)];
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if (mask >> b) & 1 == 1 {
                    edges.push((u, v));
                }
            }
            let g = Graph::from_edges(4, &edges).unwrap();
            forms.insert(g.canonical_form().unwrap());
        }
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn canonical_form_round_trips_to_graph() {
        let g = friendship(3).unwrap();
        let form = g.canonical_form().unwrap();
        let back = form.to_graph();
        assert!(is_isomorphic(&g, &back).unwrap());
        assert_eq!(back.canonical_form().unwrap(), form);
    }

    #[test]
    fn canonical_form_order_limit() {
        let g = Graph::edgeless(13).unwrap();
        assert!(matches!(
            g.canonical_form(),
            Err(GraphError::CanonicalUnsupported(13))
        ));
    }

    #[test]
    fn extend_with_adds_last_vertex() {
        let p2 = Graph::path(2).unwrap();
        let g = p2.extend_with(0b11).unwrap();
        assert!(is_isomorphic(&g, &Graph::complete(3).unwrap()).unwrap());
        assert!(p2.extend_with(0b100).is_err());
    }

    #[test]
    fn permuted_preserves_structure() {
        let g = Graph::path(4).unwrap();
        let h = g.permuted(&[3, 1, 0, 2]);
        assert_eq!(h.edge_count(), g.edge_count());
        assert!(is_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn split_graph_recognizer() {
        for n in 3..=12usize {
            for k in 1..n {
                let g = complete_split(n, k, false).unwrap();
                assert!(is_complete_split_graph(&g, k, false), "n={n}, k={k}");
                assert!(!is_complete_split_graph(&g, k, true));
                // Recognizer agrees with canonical comparison.
                for k2 in 1..n {
                    let expected = is_isomorphic(&g, &complete_split(n, k2, false).unwrap()).unwrap();
                    assert_eq!(is_complete_split_graph(&g, k2, false), expected);
                }
                if n - k >= 2 {
                    let gp = complete_split(n, k, true).unwrap();
                    assert!(is_complete_split_graph(&gp, k, true), "n={n}, k={k}, plus");
                    assert!(!is_complete_split_graph(&gp, k, false));
                }
            }
        }
        // A relabeled copy is still recognized.
        let g = complete_split(7, 2, true).unwrap().permuted(&[6, 4, 2, 0, 1, 3, 5]);
        assert!(is_complete_split_graph(&g, 2, true));
        assert!(!is_complete_split_graph(&Graph::cycle(6).unwrap(), 2, false));
    }
}
