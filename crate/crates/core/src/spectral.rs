//! Dominant adjacency eigenvalue machinery and spectral inequality checks.
//!
//! The eigensolver is shifted power iteration: iterating `A + I` keeps the
//! dominant eigenvalue simple on every connected component (the shift kills
//! the period-2 oscillation of bipartite graphs), the Rayleigh quotient
//! estimates the eigenvalue, and convergence is declared on the infinity
//! norm of the residual `A·x - mu·x`. Disconnected graphs are solved per
//! component and the maximum taken.

use thiserror::Error;

use crate::detect;
use crate::graph::{Graph, GraphError};

/// Default residual tolerance for the eigensolver.
pub const DEFAULT_MU_TOL: f64 = 1e-10;

/// Slack allowed when deciding whether a non-strict inequality holds.
pub const BOUND_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("power iteration did not converge after {iterations} iterations (best residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("graph must have at least {needed} vertices, got {got}")]
    OrderTooSmall { needed: usize, got: usize },
    #[error("vertex {vertex} does not attain the minimum eigenvector entry")]
    NotMinimumEntry { vertex: usize },
    #[error("parameters must satisfy 1 <= k < n, got n={n}, k={k}")]
    SplitParams { n: usize, k: usize },
    #[error("one-edge variant needs k < n-1, got n={n}, k={k}")]
    SplitPlusParams { n: usize, k: usize },
    #[error("cubic bracket [{lo}, {hi}] shows no sign change: p(lo)={p_lo:e}, p(hi)={p_hi:e}")]
    BracketFailure { lo: f64, hi: f64, p_lo: f64, p_hi: f64 },
    #[error("graph contains a 4-cycle; the C4-free bound does not apply")]
    ContainsC4,
    #[error("procedure requires k >= 2, got {0}")]
    InvalidK(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Result of a dominant-eigenvalue computation.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    /// Largest adjacency eigenvalue.
    pub mu: f64,
    /// Unit eigenvector, entrywise nonnegative, supported on an extremal
    /// component when the graph is disconnected.
    pub vector: Vec<f64>,
    /// Infinity norm of `A·vector - mu·vector`.
    pub residual: f64,
    /// Matrix-vector iterations spent (summed over components).
    pub iterations: usize,
}

impl SpectralResult {
    /// Index of the minimum eigenvector entry, lowest index on ties.
    pub fn min_entry_vertex(&self) -> usize {
        let mut best = 0;
        for (i, &x) in self.vector.iter().enumerate() {
            if x < self.vector[best] {
                best = i;
            }
        }
        best
    }

    pub fn min_entry(&self) -> f64 {
        self.vector.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Spectral radius of the adjacency matrix, to residual tolerance `tol`.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult, SpectralError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(SpectralError::InvalidTolerance(tol));
    }
    let n = g.order();
    let mut best: Option<SpectralResult> = None;
    let mut total_iterations = 0usize;
    for comp in g.components() {
        let mut r = component_power(g, comp, tol)?;
        total_iterations += r.iterations;
        match &best {
            Some(b) if b.mu >= r.mu => {}
            _ => {
                r.vector.resize(n, 0.0);
                best = Some(r);
            }
        }
    }
    let mut result = best.expect("graph has at least one component");
    result.iterations = total_iterations;
    Ok(result)
}

/// `spectral_radius` at the default tolerance.
pub fn spectral_radius_default(g: &Graph) -> Result<SpectralResult, SpectralError> {
    spectral_radius(g, DEFAULT_MU_TOL)
}

/// Convenience: just the eigenvalue.
pub fn mu(g: &Graph) -> Result<f64, SpectralError> {
    Ok(spectral_radius_default(g)?.mu)
}

fn component_power(g: &Graph, comp: u64, tol: f64) -> Result<SpectralResult, SpectralError> {
    let n = g.order();
    let p = comp.count_ones() as usize;
    if p == 1 {
        let v = comp.trailing_zeros() as usize;
        let mut vector = vec![0.0; n];
        vector[v] = 1.0;
        return Ok(SpectralResult { mu: 0.0, vector, residual: 0.0, iterations: 0 });
    }

    let cap = (100.0 * p as f64 * ((p + 1) as f64).ln()).ceil() as usize;
    let mut x = vec![0.0f64; n];
    let init = 1.0 / (p as f64).sqrt();
    let mut verts = Vec::with_capacity(p);
    {
        let mut rest = comp;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            x[v] = init;
            verts.push(v);
        }
    }
    let mut y = vec![0.0f64; n];
    let mut best_residual = f64::INFINITY;

    for iteration in 1..=cap {
        // y = (A + I) x, restricted to the component.
        for &v in &verts {
            let mut acc = x[v];
            let mut nb = g.neighbors(v);
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                acc += x[w];
            }
            y[v] = acc;
        }
        // Rayleigh quotient of the shifted matrix; x is a unit vector.
        let lambda: f64 = verts.iter().map(|&v| x[v] * y[v]).sum();
        let mu_est = lambda - 1.0;
        let mut residual = 0.0f64;
        for &v in &verts {
            residual = residual.max(((y[v] - x[v]) - mu_est * x[v]).abs());
        }
        if residual <= tol {
            return Ok(SpectralResult { mu: mu_est, vector: x, residual, iterations: iteration });
        }
        best_residual = best_residual.min(residual);
        let norm: f64 = verts.iter().map(|&v| y[v] * y[v]).sum::<f64>().sqrt();
        for &v in &verts {
            x[v] = y[v] / norm;
        }
    }
    Err(SpectralError::NotConverged { iterations: cap, residual: best_residual })
}

/// Closed-form spectral radius of the complete split graph: the positive
/// root of `x^2 - (k-1)x - k(n-k) = 0`.
pub fn complete_split_mu(n: usize, k: usize) -> Result<f64, SpectralError> {
    if k == 0 || k >= n {
        return Err(SpectralError::SplitParams { n, k });
    }
    let (nf, kf) = (n as f64, k as f64);
    Ok((kf - 1.0) / 2.0 + (kf * nf - (3.0 * kf * kf + 2.0 * kf - 1.0) / 4.0).sqrt())
}

fn split_plus_cubic(n: usize, k: usize, x: f64) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    x * x * x - kf * x * x - (kf * nf - kf * kf - kf + 1.0) * x + kf * (nf - kf - 2.0)
}

/// Spectral radius of the one-extra-edge split graph: the largest root of
/// `x^3 - kx^2 - (kn - k^2 - k + 1)x + k(n - k - 2) = 0`, isolated by
/// bisection on `[complete_split_mu(n,k), complete_split_mu(n,k) + 1]`.
/// A missing sign change on that bracket is a hard error.
pub fn complete_split_plus_mu(n: usize, k: usize) -> Result<f64, SpectralError> {
    if k == 0 || k + 1 >= n {
        return Err(SpectralError::SplitPlusParams { n, k });
    }
    let lo0 = complete_split_mu(n, k)?;
    let hi0 = lo0 + 1.0;
    let (p_lo, p_hi) = (split_plus_cubic(n, k, lo0), split_plus_cubic(n, k, hi0));
    if !(p_lo < 0.0 && p_hi > 0.0) {
        return Err(SpectralError::BracketFailure { lo: lo0, hi: hi0, p_lo, p_hi });
    }
    let (mut lo, mut hi) = (lo0, hi0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if split_plus_cubic(n, k, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Named inequality check: `holds` iff `lhs <= rhs + BOUND_TOL`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub slack: f64,
    /// Set when the check carries no information for this input (currently
    /// only the minimum-entry bound on disconnected graphs).
    pub vacuous: bool,
}

impl BoundReport {
    fn checked(name: &'static str, lhs: f64, rhs: f64) -> Self {
        BoundReport { name, lhs, rhs, holds: lhs <= rhs + BOUND_TOL, slack: rhs - lhs, vacuous: false }
    }

    fn vacuous(name: &'static str, lhs: f64, rhs: f64) -> Self {
        BoundReport { vacuous: true, ..Self::checked(name, lhs, rhs) }
    }
}

/// `mu <= (d-1)/2 + sqrt(2m - d·n + (d+1)^2/4)` where `d` is the minimum
/// degree. Holds for every graph.
pub fn bound_min_degree_edges(g: &Graph) -> Result<BoundReport, SpectralError> {
    let r = spectral_radius_default(g)?;
    let n = g.order() as f64;
    let m = g.edge_count() as f64;
    let d = g.min_degree() as f64;
    let rhs = (d - 1.0) / 2.0 + (2.0 * m - d * n + (d + 1.0) * (d + 1.0) / 4.0).sqrt();
    Ok(BoundReport::checked("min-degree-edges", r.mu, rhs))
}

/// `mu <= -1/2 + sqrt(2m + 1/4)`; a fortiori `mu <= sqrt(2m)`.
pub fn bound_edge_count(g: &Graph) -> Result<BoundReport, SpectralError> {
    let r = spectral_radius_default(g)?;
    let m = g.edge_count() as f64;
    let rhs = -0.5 + (2.0 * m + 0.25).sqrt();
    Ok(BoundReport::checked("edge-count", r.mu, rhs))
}

/// For graphs with no 4-cycle: `mu^2 - mu <= n - 1`, with equality exactly
/// on the friendship graphs. Refuses graphs containing a `C_4`.
pub fn bound_c4_free(g: &Graph) -> Result<BoundReport, SpectralError> {
    if detect::has_cycle(g, 4) {
        return Err(SpectralError::ContainsC4);
    }
    let r = spectral_radius_default(g)?;
    let rhs = g.order() as f64 - 1.0;
    Ok(BoundReport::checked("c4-free", r.mu * r.mu - r.mu, rhs))
}

/// Minimum entry of the unit principal eigenvector is at most
/// `sqrt(d / (mu^2 + d·n - d^2))` with `d` the minimum degree. On
/// disconnected graphs the minimum entry is 0 and the report is vacuous.
pub fn min_entry_bound(g: &Graph) -> Result<BoundReport, SpectralError> {
    if g.order() < 2 {
        return Err(SpectralError::OrderTooSmall { needed: 2, got: g.order() });
    }
    let r = spectral_radius_default(g)?;
    let n = g.order() as f64;
    let d = g.min_degree() as f64;
    let rhs = if d == 0.0 {
        0.0
    } else {
        (d / (r.mu * r.mu + d * n - d * d)).sqrt()
    };
    let lhs = r.min_entry();
    if g.is_connected() {
        Ok(BoundReport::checked("min-entry", lhs, rhs))
    } else {
        Ok(BoundReport::vacuous("min-entry", lhs, rhs))
    }
}

/// For a vertex `u` attaining the minimum eigenvector entry:
/// `mu(G-u) >= mu · (1 - 2x_u^2) / (1 - x_u^2)`. The report's `lhs` is the
/// claimed lower bound and `rhs` is the actual `mu(G-u)`.
pub fn deletion_bound_entry(g: &Graph, u: usize) -> Result<BoundReport, SpectralError> {
    let (r, rhs) = deletion_setup(g, u)?;
    let xu2 = r.vector[u] * r.vector[u];
    let lhs = r.mu * (1.0 - 2.0 * xu2) / (1.0 - xu2);
    Ok(BoundReport::checked("deletion-entry", lhs, rhs))
}

/// Degree-only variant of the deletion bound:
/// `mu(G-u) >= mu · (1 - 1/(mu^2/d + n - d - 1))` with `d` the minimum
/// degree, again for a minimum-entry vertex `u`.
pub fn deletion_bound_degree(g: &Graph, u: usize) -> Result<BoundReport, SpectralError> {
    let (r, rhs) = deletion_setup(g, u)?;
    let n = g.order() as f64;
    let d = g.min_degree() as f64;
    let lhs = if d == 0.0 {
        // Limit of the bound as d -> 0: deleting an isolated vertex keeps mu.
        r.mu
    } else {
        r.mu * (1.0 - 1.0 / (r.mu * r.mu / d + n - d - 1.0))
    };
    Ok(BoundReport::checked("deletion-degree", lhs, rhs))
}

fn deletion_setup(g: &Graph, u: usize) -> Result<(SpectralResult, f64), SpectralError> {
    if g.order() < 2 {
        return Err(SpectralError::OrderTooSmall { needed: 2, got: g.order() });
    }
    let r = spectral_radius_default(g)?;
    if r.vector[u] > r.min_entry() + BOUND_TOL {
        return Err(SpectralError::NotMinimumEntry { vertex: u });
    }
    let deleted = g.delete_vertex(u)?;
    let rhs = spectral_radius_default(&deleted)?.mu;
    Ok((r, rhs))
}

/// One deletion of the minimum-entry vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct DeletionStep {
    pub order: usize,
    pub mu: f64,
    pub min_entry: f64,
    pub deleted_vertex: usize,
}

/// Why the deletion loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// `mu` exceeded `sqrt((2k+1) * order)`.
    MuGuard,
    /// Minimum degree reached `k`.
    MinDegreeGuard,
    /// Order shrank to `floor(sqrt(n0))`.
    OrderFloor,
}

#[derive(Debug, Clone)]
pub struct DeletionTrace {
    pub steps: Vec<DeletionStep>,
    pub stop: StopReason,
    pub terminal: Graph,
    pub terminal_mu: f64,
    pub terminal_min_degree: usize,
}

/// Repeatedly deletes a minimum-eigenvector-entry vertex (lowest index on
/// ties) while `mu <= sqrt((2k+1)·order)` and the minimum degree is at most
/// `k-1`, stopping in any case once the order reaches `floor(sqrt(n0))`.
pub fn deletion_procedure(g: &Graph, k: usize, tol: f64) -> Result<DeletionTrace, SpectralError> {
    if k < 2 {
        return Err(SpectralError::InvalidK(k));
    }
    if g.order() < 2 {
        return Err(SpectralError::OrderTooSmall { needed: 2, got: g.order() });
    }
    let floor = (g.order() as f64).sqrt().floor() as usize;
    let mut current = g.clone();
    let mut steps = Vec::new();
    loop {
        let r = spectral_radius(&current, tol)?;
        let order = current.order();
        let guard = ((2 * k + 1) as f64 * order as f64).sqrt();
        let stop = if r.mu > guard {
            Some(StopReason::MuGuard)
        } else if current.min_degree() > k - 1 {
            Some(StopReason::MinDegreeGuard)
        } else if order <= floor {
            Some(StopReason::OrderFloor)
        } else {
            None
        };
        if let Some(stop) = stop {
            return Ok(DeletionTrace {
                steps,
                stop,
                terminal_mu: r.mu,
                terminal_min_degree: current.min_degree(),
                terminal: current,
            });
        }
        let u = r.min_entry_vertex();
        steps.push(DeletionStep {
            order,
            mu: r.mu,
            min_entry: r.vector[u],
            deleted_vertex: u,
        });
        current = current.delete_vertex(u)?;
    }
}

/// One failed precondition of the sequence lower-bound check.
#[derive(Debug, Clone, PartialEq)]
pub enum SequencePrecondition {
    KTooSmall { k: usize },
    STooSmall { s: usize },
    GapTooSmall { required: f64, got: f64 },
    LengthMismatch { expected: usize, got: usize },
}

/// Outcome of the sequence lower-bound check: either the preconditions
/// failed (no verdict) or a verdict on the conclusion.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceCheck {
    PreconditionViolated(Vec<SequencePrecondition>),
    Verdict { holds: bool, first_violation: Option<usize> },
}

/// Checks that `xs[i] >= (k-1)/2 + sqrt(k(n-i) - a + 1/2)` for `i = 1..=s`,
/// under the preconditions `k >= 2`, `s >= 1`, and
/// `n - s >= 4k^3 + 4|a|(k-1)`. Precondition failures are reported without
/// a verdict.
pub fn sequence_bound_check(a: f64, k: usize, n: usize, s: usize, xs: &[f64]) -> SequenceCheck {
    let mut violations = Vec::new();
    if k < 2 {
        violations.push(SequencePrecondition::KTooSmall { k });
    }
    if s < 1 {
        violations.push(SequencePrecondition::STooSmall { s });
    }
    let kf = k as f64;
    let required = 4.0 * kf * kf * kf + 4.0 * a.abs() * (kf - 1.0);
    let got = n as f64 - s as f64;
    if got < required {
        violations.push(SequencePrecondition::GapTooSmall { required, got });
    }
    if xs.len() != s + 1 {
        violations.push(SequencePrecondition::LengthMismatch { expected: s + 1, got: xs.len() });
    }
    if !violations.is_empty() {
        return SequenceCheck::PreconditionViolated(violations);
    }
    for (i, &x) in xs.iter().enumerate().take(s + 1).skip(1) {
        let target = (kf - 1.0) / 2.0 + (kf * (n - i) as f64 - a + 0.5).sqrt();
        if x < target {
            return SequenceCheck::Verdict { holds: false, first_violation: Some(i) };
        }
    }
    SequenceCheck::Verdict { holds: true, first_violation: None }
}

/// Sequence generated by the decay recurrence with equality:
/// `x_{i+1} = x_i (1 - 1/(x_i^2/(k-1) + n - i - k))`, starting at `x0`.
pub fn sequence_bound_recurrence(
    x0: f64,
    k: usize,
    n: usize,
    s: usize,
) -> Result<Vec<f64>, SpectralError> {
    if k < 2 {
        return Err(SpectralError::InvalidK(k));
    }
    let kf = k as f64;
    let mut xs = Vec::with_capacity(s + 1);
    xs.push(x0);
    for i in 0..s {
        let x = xs[i];
        let denom = x * x / (kf - 1.0) + (n - i - k) as f64;
        xs.push(x * (1.0 - 1.0 / denom));
    }
    Ok(xs)
}
