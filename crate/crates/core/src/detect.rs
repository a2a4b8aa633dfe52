//! Exact detection of fixed-order paths and cycles, forbidden-pattern
//! specifications, edge-count facts, and tree containment.
//!
//! Containment is always subgraph containment, never induced: `K_4`
//! contains `C_4`. Two engines back the path and cycle detectors — a
//! subset dynamic program over (vertex set, endpoint) states for orders up
//! to 20, and a pruned depth-first search above that — and they are
//! cross-validated against each other exhaustively in tests.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::trees;

/// Above this order the subset DP tables get too large; fall back to DFS.
pub const SUBSET_DP_MAX_ORDER: usize = 20;

/// Largest supported order for exhaustive tree containment.
pub const MAX_TREE_ORDER: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetectError {
    #[error("tree order must be between 1 and {MAX_TREE_ORDER}, got {0}")]
    UnsupportedTreeOrder(usize),
    #[error("fact requires l >= 2, got {0}")]
    LTooSmall(usize),
    #[error("fact requires k >= 1, got {0}")]
    KTooSmall(usize),
    #[error("fact requires a connected graph")]
    Disconnected,
    #[error("fact requires n > 3k, got n={n}, k={k}")]
    OrderNotAboveThreeK { n: usize, k: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

// ---------------------------------------------------------------------------
// Forbidden-pattern specifications
// ---------------------------------------------------------------------------

/// A single forbidden pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// Simple path on exactly `l` vertices.
    PathOrder(usize),
    /// Simple cycle on exactly `l` vertices.
    CycleOrder(usize),
    /// Some simple cycle on at least `l` vertices.
    CycleAtLeast(usize),
}

impl Pattern {
    fn validate(self) -> Result<Self, PatternParseError> {
        match self {
            Pattern::PathOrder(l) if l < 2 => Err(PatternParseError::PathOrderTooSmall(l)),
            Pattern::CycleOrder(l) | Pattern::CycleAtLeast(l) if l < 3 => {
                Err(PatternParseError::CycleOrderTooSmall(l))
            }
            p => Ok(p),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::PathOrder(l) => write!(f, "P{l}"),
            Pattern::CycleOrder(l) => write!(f, "C{l}"),
            Pattern::CycleAtLeast(l) => write!(f, "C>={l}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternParseError {
    #[error("empty pattern token")]
    EmptyToken,
    #[error("pattern token {0:?} must start with P or C")]
    BadPrefix(String),
    #[error("pattern token {0:?} has an invalid order")]
    BadNumber(String),
    #[error("path pattern order must be >= 2, got {0}")]
    PathOrderTooSmall(usize),
    #[error("cycle pattern order must be >= 3, got {0}")]
    CycleOrderTooSmall(usize),
}

impl FromStr for Pattern {
    type Err = PatternParseError;

    fn from_str(token: &str) -> Result<Self, Self::Err> {
        let t = token.trim().to_ascii_uppercase();
        if t.is_empty() {
            return Err(PatternParseError::EmptyToken);
        }
        let (pattern, digits) = if let Some(rest) = t.strip_prefix("C>=") {
            (Pattern::CycleAtLeast as fn(usize) -> Pattern, rest)
        } else if let Some(rest) = t.strip_prefix('C') {
            (Pattern::CycleOrder as fn(usize) -> Pattern, rest)
        } else if let Some(rest) = t.strip_prefix('P') {
            (Pattern::PathOrder as fn(usize) -> Pattern, rest)
        } else {
            return Err(PatternParseError::BadPrefix(token.trim().to_string()));
        };
        let l: usize = digits
            .parse()
            .map_err(|_| PatternParseError::BadNumber(token.trim().to_string()))?;
        pattern(l).validate()
    }
}

/// A set of forbidden patterns; a graph is admissible when it contains none
/// of them.
///
/// Text form: comma-separated tokens like `"P5,C6,C>=6"`, case-insensitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForbiddenSpec {
    patterns: Vec<Pattern>,
}

impl ForbiddenSpec {
    pub fn new(patterns: Vec<Pattern>) -> Result<Self, PatternParseError> {
        for p in &patterns {
            p.validate()?;
        }
        Ok(ForbiddenSpec { patterns })
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// True when `g` contains none of the forbidden patterns.
    pub fn admits(&self, g: &Graph) -> bool {
        self.patterns.iter().all(|p| !pattern_present(g, *p))
    }
}

impl fmt::Display for ForbiddenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for ForbiddenSpec {
    type Err = PatternParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let patterns = s
            .split(',')
            .map(Pattern::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ForbiddenSpec { patterns })
    }
}

impl Serialize for ForbiddenSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ForbiddenSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(D::Error::custom)
    }
}

/// Whether `g` contains the pattern as a subgraph.
pub fn pattern_present(g: &Graph, pattern: Pattern) -> bool {
    match pattern {
        Pattern::PathOrder(l) => has_path(g, l),
        Pattern::CycleOrder(l) => has_cycle(g, l),
        Pattern::CycleAtLeast(l) => (l.max(3)..=g.order()).any(|p| has_cycle(g, p)),
    }
}

// ---------------------------------------------------------------------------
// Path detection
// ---------------------------------------------------------------------------

/// True iff `g` contains a simple path on exactly `l` vertices.
/// `l > n` yields `false`, not an error.
pub fn has_path(g: &Graph, l: usize) -> bool {
    if g.order() <= SUBSET_DP_MAX_ORDER {
        has_path_subset_dp(g, l)
    } else {
        has_path_backtracking(g, l)
    }
}

/// Subset-DP path detector: states are (visited set, endpoint). The DP
/// table is exponential in the order, hence the hard cap.
pub fn has_path_subset_dp(g: &Graph, l: usize) -> bool {
    let n = g.order();
    assert!(n <= SUBSET_DP_MAX_ORDER, "subset DP supports order <= {SUBSET_DP_MAX_ORDER}");
    if l == 0 || l > n {
        return false;
    }
    if l == 1 {
        return true;
    }
    dp_path_exists(g, g.vertex_mask(), g.vertex_mask(), l)
}

/// DFS path detector with component-size and reachability pruning.
pub fn has_path_backtracking(g: &Graph, l: usize) -> bool {
    let n = g.order();
    if l == 0 || l > n {
        return false;
    }
    if l == 1 {
        return true;
    }
    for start in 0..n {
        if (g.component_of(start).count_ones() as usize) < l {
            continue;
        }
        if dfs_path(g, start, 1 << start, 1, l) {
            return true;
        }
    }
    false
}

fn dfs_path(g: &Graph, v: usize, visited: u64, depth: usize, target: usize) -> bool {
    if depth == target {
        return true;
    }
    let remaining = target - depth;
    if remaining > 2 {
        // Everything still reachable from v must cover the remaining length.
        let mut reach = 1u64 << v;
        loop {
            let mut grow = reach;
            let mut rest = reach;
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                grow |= g.neighbors(w) & !visited;
                grow |= 1 << w;
            }
            if grow == reach {
                break;
            }
            reach = grow;
        }
        if (reach.count_ones() as usize) < remaining + 1 {
            return false;
        }
    }
    let mut cands = g.neighbors(v) & !visited;
    while cands != 0 {
        let w = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        if dfs_path(g, w, visited | (1 << w), depth + 1, target) {
            return true;
        }
    }
    false
}

/// Largest `l` with `has_path(g, l)`; 1 for edgeless graphs. Located by
/// binary search over `has_path`, which is monotone in `l`.
pub fn longest_path_order(g: &Graph) -> usize {
    let (mut lo, mut hi) = (1usize, g.order());
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if has_path(g, mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// True iff `g` contains a simple path on exactly `l` vertices with both
/// endpoints inside the vertex set `ends`. Needs `l >= 2`; a single vertex
/// cannot serve as both ends. Subset-DP backed, so order <= 20 only.
pub fn has_path_with_ends_in(g: &Graph, ends: u64, l: usize) -> bool {
    let ends = ends & g.vertex_mask();
    assert!(
        g.order() <= SUBSET_DP_MAX_ORDER,
        "anchored path queries support order <= {SUBSET_DP_MAX_ORDER}"
    );
    if l < 2 || l > g.order() || ends == 0 {
        return false;
    }
    dp_path_exists(g, ends, ends, l)
}

/// Bitmask of all orders `l >= 2` for which a simple path of order exactly
/// `l` with both endpoints in `ends` exists (bit `l` set). Order <= 20.
pub fn path_orders_with_ends_in(g: &Graph, ends: u64) -> u64 {
    let n = g.order();
    assert!(
        n <= SUBSET_DP_MAX_ORDER,
        "anchored path queries support order <= {SUBSET_DP_MAX_ORDER}"
    );
    let ends = ends & g.vertex_mask();
    if ends == 0 {
        return 0;
    }
    let mut dp = vec![0u64; 1usize << n];
    let mut rest = ends;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        dp[1usize << v] = 1 << v;
    }
    let mut orders = 0u64;
    for mask in 1u64..(1u64 << n) {
        let endpoints = dp[mask as usize];
        if endpoints == 0 {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size >= 2 && endpoints & ends != 0 {
            orders |= 1 << size;
        }
        let mut from = endpoints;
        while from != 0 {
            let v = from.trailing_zeros() as usize;
            from &= from - 1;
            let mut next = g.neighbors(v) & !mask;
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                dp[(mask | (1 << w)) as usize] |= 1 << w;
            }
        }
    }
    orders
}

/// Core DP: is there a simple path of order exactly `l` starting in
/// `seeds` and ending in `ends`?
fn dp_path_exists(g: &Graph, seeds: u64, ends: u64, l: usize) -> bool {
    let n = g.order();
    let mut dp = vec![0u64; 1usize << n];
    let mut rest = seeds;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        dp[1usize << v] = 1 << v;
    }
    for mask in 1u64..(1u64 << n) {
        let endpoints = dp[mask as usize];
        if endpoints == 0 {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size == l {
            if endpoints & ends != 0 {
                return true;
            }
            continue;
        }
        if size > l {
            continue;
        }
        let mut from = endpoints;
        while from != 0 {
            let v = from.trailing_zeros() as usize;
            from &= from - 1;
            let mut next = g.neighbors(v) & !mask;
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                dp[(mask | (1 << w)) as usize] |= 1 << w;
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Cycle detection
// ---------------------------------------------------------------------------

/// True iff `g` contains a simple cycle on exactly `l` vertices.
/// `l > n` or `l < 3` yields `false`.
pub fn has_cycle(g: &Graph, l: usize) -> bool {
    let n = g.order();
    if l < 3 || l > n {
        return false;
    }
    match l {
        3 => has_triangle(g),
        4 => has_four_cycle(g),
        _ if n <= SUBSET_DP_MAX_ORDER => has_cycle_subset_dp(g, l),
        _ => has_cycle_backtracking(g, l),
    }
}

pub(crate) fn has_triangle(g: &Graph) -> bool {
    for u in 0..g.order() {
        let mut higher = g.neighbors(u) & crate::graph::mask_above(u);
        while higher != 0 {
            let v = higher.trailing_zeros() as usize;
            higher &= higher - 1;
            if g.common_neighbors(u, v) != 0 {
                return true;
            }
        }
    }
    false
}

pub(crate) fn has_four_cycle(g: &Graph) -> bool {
    // A C_4 exists iff some vertex pair has two common neighbors.
    let n = g.order();
    for u in 0..n {
        for v in (u + 1)..n {
            if g.common_neighbors(u, v).count_ones() >= 2 {
                return true;
            }
        }
    }
    false
}

/// Subset-DP cycle detector. For each anchor vertex `a` (lowest index on
/// its cycle) paths over vertices `>= a` are grown from `a` and closed on
/// an edge back to `a`. Order <= 20.
pub fn has_cycle_subset_dp(g: &Graph, l: usize) -> bool {
    let n = g.order();
    assert!(n <= SUBSET_DP_MAX_ORDER, "subset DP supports order <= {SUBSET_DP_MAX_ORDER}");
    if l < 3 || l > n {
        return false;
    }
    for anchor in 0..n {
        if n - anchor < l {
            break;
        }
        let allowed = g.vertex_mask() & !((1u64 << anchor) - 1);
        let mut dp = vec![0u64; 1usize << n];
        dp[1usize << anchor] = 1 << anchor;
        let close = g.neighbors(anchor);
        for mask in 1u64..(1u64 << n) {
            let endpoints = dp[mask as usize];
            if endpoints == 0 {
                continue;
            }
            let size = mask.count_ones() as usize;
            if size == l {
                if endpoints & close != 0 {
                    return true;
                }
                continue;
            }
            let mut from = endpoints;
            while from != 0 {
                let v = from.trailing_zeros() as usize;
                from &= from - 1;
                let mut next = g.neighbors(v) & allowed & !mask;
                while next != 0 {
                    let w = next.trailing_zeros() as usize;
                    next &= next - 1;
                    dp[(mask | (1 << w)) as usize] |= 1 << w;
                }
            }
        }
    }
    false
}

/// DFS cycle detector anchored at the lowest-index cycle vertex.
pub fn has_cycle_backtracking(g: &Graph, l: usize) -> bool {
    let n = g.order();
    if l < 3 || l > n {
        return false;
    }
    for anchor in 0..n {
        if n - anchor < l {
            break;
        }
        let allowed = g.vertex_mask() & !((1u64 << anchor) - 1);
        if dfs_cycle(g, anchor, anchor, allowed, 1 << anchor, 1, l) {
            return true;
        }
    }
    false
}

fn dfs_cycle(
    g: &Graph,
    anchor: usize,
    v: usize,
    allowed: u64,
    visited: u64,
    depth: usize,
    target: usize,
) -> bool {
    if depth == target {
        return g.has_edge(v, anchor);
    }
    let mut cands = g.neighbors(v) & allowed & !visited;
    while cands != 0 {
        let w = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        if dfs_cycle(g, anchor, w, allowed, visited | (1 << w), depth + 1, target) {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Edge-count facts
// ---------------------------------------------------------------------------

/// A premise-implies-conclusion check. `holds` is the implication: true
/// when the premise fails (vacuous) or the conclusion was confirmed.
/// `conclusion_met` is `None` when the premise failed and the conclusion
/// was never evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct FactReport {
    pub name: &'static str,
    pub premise_lhs: f64,
    pub premise_rhs: f64,
    pub premise_met: bool,
    pub conclusion_met: Option<bool>,
    pub holds: bool,
}

impl FactReport {
    fn evaluate(
        name: &'static str,
        premise_lhs: f64,
        premise_rhs: f64,
        premise_met: bool,
        conclusion: impl FnOnce() -> bool,
    ) -> Self {
        let conclusion_met = premise_met.then(conclusion);
        FactReport {
            name,
            premise_lhs,
            premise_rhs,
            premise_met,
            conclusion_met,
            holds: !premise_met || conclusion_met == Some(true),
        }
    }
}

/// If `e(G) > (l/2)·n` then `G` contains a path on `l+2` vertices.
pub fn check_fact_erdos_gallai(g: &Graph, l: usize) -> Result<FactReport, DetectError> {
    if l < 2 {
        return Err(DetectError::LTooSmall(l));
    }
    let lhs = g.edge_count() as f64;
    let rhs = l as f64 / 2.0 * g.order() as f64;
    Ok(FactReport::evaluate("erdos-gallai", lhs, rhs, lhs > rhs, || {
        has_path(g, l + 2)
    }))
}

/// For connected `G` with `n > 3k`: reaching the split graph's edge count
/// forces a path on `2k+2` vertices (unless the graph is the split graph
/// itself at exact equality), and one more edge forces a path on `2k+3`
/// vertices (unless it is the one-extra-edge variant). Returns the two
/// reports in that order.
pub fn check_fact_split_edge_bounds(
    g: &Graph,
    k: usize,
) -> Result<[FactReport; 2], DetectError> {
    if k == 0 {
        return Err(DetectError::KTooSmall(k));
    }
    let n = g.order();
    if n <= 3 * k {
        return Err(DetectError::OrderNotAboveThreeK { n, k });
    }
    if !g.is_connected() {
        return Err(DetectError::Disconnected);
    }
    let m = g.edge_count();
    let threshold = k * n - (k * k + k) / 2;

    let base = FactReport::evaluate(
        "split-edge-bound",
        m as f64,
        threshold as f64,
        m >= threshold,
        || has_path(g, 2 * k + 2) || (m == threshold && crate::graph::is_complete_split_graph(g, k, false)),
    );
    let plus = FactReport::evaluate(
        "split-edge-bound-plus",
        m as f64,
        (threshold + 1) as f64,
        m > threshold,
        || {
            has_path(g, 2 * k + 3)
                || (m == threshold + 1 && crate::graph::is_complete_split_graph(g, k, true))
        },
    );
    Ok([base, plus])
}

// ---------------------------------------------------------------------------
// Tree containment
// ---------------------------------------------------------------------------

/// Result of checking all free trees of a given order against a graph.
#[derive(Debug, Clone)]
pub struct TreeContainment {
    /// True when every free tree of the requested order embeds.
    pub all: bool,
    /// First missing tree, as a certificate.
    pub missing: Option<Graph>,
    /// Number of isomorphism classes checked.
    pub checked: usize,
}

/// Free trees of each supported order, generated once per process; the
/// conjecture sweeps query containment millions of times.
fn cached_free_trees(t: usize) -> &'static [Graph] {
    use std::sync::OnceLock;
    static CACHE: OnceLock<Vec<Vec<Graph>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (0..=MAX_TREE_ORDER)
            .map(|t| if t == 0 { Vec::new() } else { trees::free_trees(t) })
            .collect()
    });
    &all[t]
}

/// Checks whether `g` contains every free tree of order `t` as a subgraph,
/// returning the first missing tree as a certificate otherwise.
pub fn contains_all_trees(g: &Graph, t: usize) -> Result<TreeContainment, DetectError> {
    if t == 0 || t > MAX_TREE_ORDER {
        return Err(DetectError::UnsupportedTreeOrder(t));
    }
    let mut checked = 0;
    for tree in cached_free_trees(t) {
        checked += 1;
        if !contains_tree(g, tree) {
            return Ok(TreeContainment {
                all: false,
                missing: Some(tree.clone()),
                checked,
            });
        }
    }
    Ok(TreeContainment { all: true, missing: None, checked })
}

/// Backtracking subgraph embedding of a tree into `g`.
pub fn contains_tree(g: &Graph, tree: &Graph) -> bool {
    let t = tree.order();
    if t > g.order() {
        return false;
    }
    if t == 1 {
        return true;
    }
    // Embed vertices in BFS order so every new vertex attaches to an
    // already-embedded neighbor.
    let mut order = Vec::with_capacity(t);
    let mut attach = vec![usize::MAX; t]; // index into `order` of the BFS parent
    let mut seen = 1u64;
    order.push(0usize);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        let mut nb = tree.neighbors(v) & !seen;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            seen |= 1 << w;
            attach[order.len()] = head;
            order.push(w);
        }
        head += 1;
    }
    debug_assert_eq!(order.len(), t);

    let tree_deg: Vec<usize> = order.iter().map(|&v| tree.degree(v)).collect();
    let mut image = vec![0usize; t];
    embed_tree(g, &order, &attach, &tree_deg, &mut image, 0, 0)
}

#[allow(clippy::too_many_arguments)]
fn embed_tree(
    g: &Graph,
    order: &[usize],
    attach: &[usize],
    tree_deg: &[usize],
    image: &mut [usize],
    used: u64,
    pos: usize,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let candidates = if pos == 0 {
        g.vertex_mask()
    } else {
        g.neighbors(image[attach[pos]])
    };
    let mut cands = candidates & !used;
    while cands != 0 {
        let c = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        if g.degree(c) < tree_deg[pos] {
            continue;
        }
        image[pos] = c;
        if embed_tree(g, order, attach, tree_deg, image, used | (1 << c), pos + 1) {
            return true;
        }
    }
    false
}
