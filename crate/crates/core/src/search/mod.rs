//! Exhaustive extremal search at small order: maximum spectral radius
//! subject to forbidden patterns, machine verification of bound claims,
//! and exploratory scans for the open ones.

mod claims;
mod enumerate;
mod store;

pub use claims::{
    scan_conjecture1, scan_conjecture2, verify_theorem1, verify_theorem2, verify_theorem3,
    ClaimId, ClaimVerdict, Outcome, TheoremPart, WitnessInfo,
};
pub use enumerate::{
    enumerate_graphs, graph_stream, is_canonical_labeling, parallel_scan, GraphStream,
    MAX_ENUM_ORDER,
};
pub use store::{CellStatus, ResultStore, RunManifest, StoreError};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::detect::ForbiddenSpec;
use crate::graph::{CanonicalForm, Graph, GraphError};
use crate::spectral::{self, SpectralError};

/// Graphs within this distance of the maximum are all recorded as
/// witnesses, so eigensolver tolerance cannot hide co-extremal graphs.
pub const WITNESS_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("exhaustive enumeration supports order 1..={MAX_ENUM_ORDER}, got {0}")]
    OrderTooLarge(usize),
    #[error("claim requires k >= {needed}, got {got}")]
    KTooSmall { needed: usize, got: usize },
    #[error("empty order range {from}..={to}")]
    EmptyRange { from: usize, to: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Detect(#[from] crate::detect::DetectError),
}

/// How many graphs a sweep saw and how many passed the pattern filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Census {
    pub enumerated: u64,
    pub admissible: u64,
}

/// Outcome of one extremal cell: the maximum spectral radius over all
/// graphs of order `n` avoiding `spec`, with every maximizing witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub n: usize,
    pub forbid: ForbiddenSpec,
    pub connected_only: bool,
    pub max_mu: f64,
    pub witnesses: Vec<CanonicalForm>,
    pub census: Census,
}

struct ExtremalAcc {
    census: Census,
    max_mu: f64,
    candidates: Vec<(f64, Graph)>,
    error: Option<SearchError>,
}

impl ExtremalAcc {
    fn new() -> Self {
        ExtremalAcc {
            census: Census::default(),
            max_mu: f64::NEG_INFINITY,
            candidates: Vec::new(),
            error: None,
        }
    }

    fn prune(&mut self) {
        let cutoff = self.max_mu - WITNESS_TIE_TOL;
        self.candidates.retain(|(mu, _)| *mu >= cutoff);
    }
}

/// Maximum spectral radius over graphs of order `n` avoiding every pattern
/// in `spec`, with all witnesses within `WITNESS_TIE_TOL` of the maximum.
pub fn extremal_mu(
    n: usize,
    spec: &ForbiddenSpec,
    connected_only: bool,
) -> Result<ExtremalRecord, SearchError> {
    let acc = parallel_scan(
        n,
        connected_only,
        ExtremalAcc::new,
        |acc, g| {
            acc.census.enumerated += 1;
            if acc.error.is_some() || !spec.admits(g) {
                return;
            }
            acc.census.admissible += 1;
            match spectral::spectral_radius_default(g) {
                Ok(r) => {
                    if r.mu > acc.max_mu {
                        acc.max_mu = r.mu;
                    }
                    if r.mu >= acc.max_mu - WITNESS_TIE_TOL {
                        acc.candidates.push((r.mu, g.clone()));
                        if acc.candidates.len() > 64 {
                            acc.prune();
                        }
                    }
                }
                Err(e) => acc.error = Some(e.into()),
            }
        },
        |mut a, mut b| {
            a.census.enumerated += b.census.enumerated;
            a.census.admissible += b.census.admissible;
            a.max_mu = a.max_mu.max(b.max_mu);
            a.candidates.append(&mut b.candidates);
            if a.error.is_none() {
                a.error = b.error.take();
            }
            a.prune();
            a
        },
    )?;
    if let Some(e) = acc.error {
        return Err(e);
    }
    let cutoff = acc.max_mu - WITNESS_TIE_TOL;
    let mut witnesses = Vec::new();
    for (mu, g) in &acc.candidates {
        if *mu >= cutoff {
            witnesses.push(g.canonical_form()?);
        }
    }
    witnesses.sort();
    witnesses.dedup();
    Ok(ExtremalRecord {
        n,
        forbid: spec.clone(),
        connected_only,
        max_mu: acc.max_mu,
        witnesses,
        census: acc.census,
    })
}

/// Renders a real with 12 significant digits, fixed-point.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Reference value(s) a record can be compared against: the closed forms
/// for forbidden paths, the square-root sandwiches for forbidden cycles.
fn reference_column(record: &ExtremalRecord) -> String {
    use crate::detect::Pattern;
    let n = record.n;
    let nf = n as f64;
    match record.forbid.patterns() {
        [Pattern::PathOrder(l)] if l % 2 == 0 && *l >= 4 => {
            let k = (l - 2) / 2;
            match spectral::complete_split_mu(n, k) {
                Ok(mu) => format!("split[k={k}]={}", format_real(mu)),
                Err(_) => "-".to_string(),
            }
        }
        [Pattern::PathOrder(l)] if l % 2 == 1 && *l >= 5 => {
            let k = (l - 3) / 2;
            match spectral::complete_split_plus_mu(n, k) {
                Ok(mu) => format!("split+[k={k}]={}", format_real(mu)),
                Err(_) => "-".to_string(),
            }
        }
        [Pattern::CycleOrder(l)] if l % 2 == 0 && *l >= 4 => {
            let k = ((l - 2) / 2) as f64;
            let base = (k * nf).sqrt();
            format!(
                "sandwich[{}, {}]",
                format_real((k - 1.0) / 2.0 + base),
                format_real(k / 2.0 + base)
            )
        }
        [Pattern::CycleOrder(3), Pattern::CycleOrder(4)] => {
            format!("sqrt(n-1)={}", format_real((nf - 1.0).sqrt()))
        }
        [Pattern::CycleOrder(a), Pattern::CycleOrder(b)] if *b == a + 1 && a % 2 == 0 => {
            let k = (a / 2) as f64;
            format!("base={}", format_real((k - 1.0) / 2.0 + (k * nf).sqrt()))
        }
        _ => "-".to_string(),
    }
}

/// Plain-text table over extremal records, with reference comparisons.
pub fn render_extremal_table(records: &[ExtremalRecord]) -> String {
    let mut rows = vec![vec![
        "n".to_string(),
        "forbid".to_string(),
        "connected".to_string(),
        "enumerated".to_string(),
        "admissible".to_string(),
        "max_mu".to_string(),
        "witnesses".to_string(),
        "reference".to_string(),
    ]];
    for r in records {
        let witnesses = r
            .witnesses
            .iter()
            .map(|w| w.as_str())
            .collect::<Vec<_>>()
            .join(" ");
        rows.push(vec![
            r.n.to_string(),
            r.forbid.to_string(),
            r.connected_only.to_string(),
            r.census.enumerated.to_string(),
            r.census.admissible.to_string(),
            format_real(r.max_mu),
            witnesses,
            reference_column(r),
        ]);
    }
    render_columns(&rows)
}

/// Plain-text table over claim verdicts.
pub fn render_verdict_table(verdicts: &[ClaimVerdict]) -> String {
    let mut rows = vec![vec![
        "claim".to_string(),
        "k".to_string(),
        "n".to_string(),
        "outcome".to_string(),
        "notes".to_string(),
    ]];
    for v in verdicts {
        rows.push(vec![
            v.claim.to_string(),
            v.k.to_string(),
            v.n.to_string(),
            v.outcome.summary(),
            v.notes.join("; "),
        ]);
    }
    render_columns(&rows)
}

fn render_columns(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                for _ in cell.len()..widths[i] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_split, friendship, is_isomorphic};

    #[test]
    fn extremal_no_p4_order_6_is_the_star() {
        let spec: ForbiddenSpec = "P4".parse().unwrap();
        let record = extremal_mu(6, &spec, false).unwrap();
        assert!((record.max_mu - 5.0f64.sqrt()).abs() <= 1e-9);
        assert_eq!(record.census.enumerated, 156);
        assert_eq!(record.witnesses.len(), 1);
        let witness = record.witnesses[0].to_graph();
        assert!(is_isomorphic(&witness, &complete_split(6, 1, false).unwrap()).unwrap());
    }

    #[test]
    fn extremal_no_c3_c4_order_7_is_the_star() {
        let spec: ForbiddenSpec = "C3,C4".parse().unwrap();
        let record = extremal_mu(7, &spec, false).unwrap();
        assert!((record.max_mu - 6.0f64.sqrt()).abs() <= 1e-9);
        assert_eq!(record.witnesses.len(), 1);
        let witness = record.witnesses[0].to_graph();
        assert!(is_isomorphic(&witness, &complete_split(7, 1, false).unwrap()).unwrap());
    }

    #[test]
    fn extremal_no_c4_order_5_is_the_bowtie() {
        let spec: ForbiddenSpec = "C4".parse().unwrap();
        let record = extremal_mu(5, &spec, false).unwrap();
        let expected = (1.0 + 17.0f64.sqrt()) / 2.0;
        assert!((record.max_mu - expected).abs() <= 1e-9);
        let witness = record.witnesses[0].to_graph();
        assert!(is_isomorphic(&witness, &friendship(2).unwrap()).unwrap());
        // mu^2 - mu = n - 1 at the extremal graph.
        let mu = record.max_mu;
        assert!((mu * mu - mu - 4.0).abs() <= 1e-8);
    }

    #[test]
    fn edgeless_is_always_admissible() {
        let spec: ForbiddenSpec = "P2".parse().unwrap();
        let record = extremal_mu(4, &spec, false).unwrap();
        assert_eq!(record.max_mu, 0.0);
        assert_eq!(record.census.admissible, 1);
    }

    #[test]
    fn witnesses_reproduce_the_record() {
        let spec: ForbiddenSpec = "P5".parse().unwrap();
        let record = extremal_mu(7, &spec, false).unwrap();
        for w in &record.witnesses {
            let g = w.to_graph();
            assert_eq!(g.order(), record.n);
            assert!(spec.admits(&g));
            let mu = spectral::mu(&g).unwrap();
            assert!((mu - record.max_mu).abs() <= 1e-9);
        }
    }

    #[test]
    fn extremal_monotone_in_order_and_spec() {
        let spec: ForbiddenSpec = "P5".parse().unwrap();
        let mut last = 0.0;
        for n in 3..=7 {
            let record = extremal_mu(n, &spec, false).unwrap();
            assert!(record.max_mu >= last - 1e-12, "n={n}");
            last = record.max_mu;
        }
        // Growing the forbidden set can only lower the maximum.
        let larger: ForbiddenSpec = "P5,C4".parse().unwrap();
        let a = extremal_mu(7, &spec, false).unwrap();
        let b = extremal_mu(7, &larger, false).unwrap();
        assert!(b.max_mu <= a.max_mu + 1e-12);
    }

    #[test]
    fn records_are_deterministic() {
        let spec: ForbiddenSpec = "C4".parse().unwrap();
        let a = extremal_mu(6, &spec, true).unwrap();
        let b = extremal_mu(6, &spec, true).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn record_serde_round_trip() {
        let spec: ForbiddenSpec = "P4,C>=5".parse().unwrap();
        let record = extremal_mu(5, &spec, false).unwrap();
        let json = serde_json::to_string(&record).unwrap();
        let back: ExtremalRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn format_real_is_stable_through_parse() {
        for &x in &[
            0.0,
            1.0,
            -2.5,
            5.0f64.sqrt(),
            1234.56789,
            1e-7,
            (1.0 + 17.0f64.sqrt()) / 2.0,
        ] {
            let s = format_real(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(format_real(back), s, "x={x}");
        }
        assert_eq!(format_real(2.0), "2.00000000000");
        assert_eq!(format_real(0.0), "0");
    }

    #[test]
    fn extremal_table_golden() {
        let spec: ForbiddenSpec = "P4".parse().unwrap();
        let record = extremal_mu(6, &spec, false).unwrap();
        let table = render_extremal_table(&[record]);
        // 15 admissible classes: the multisets of stars and triangles on 6
        // vertices (the components a path-on-4-free graph can have).
        let expected = "\
n  forbid  connected  enumerated  admissible  max_mu         witnesses  reference
6  P4      false      156         15          2.23606797750  E?Bw       split[k=1]=2.23606797750\n";
        assert_eq!(table, expected);
    }

    #[test]
    fn extremal_table_golden_cycle_specs() {
        let g: ForbiddenSpec = "C3,C4".parse().unwrap();
        let f: ForbiddenSpec = "C4".parse().unwrap();
        let records = vec![
            extremal_mu(7, &g, false).unwrap(),
            extremal_mu(5, &f, false).unwrap(),
        ];
        let table = render_extremal_table(&records);
        let expected = "\
n  forbid  connected  enumerated  admissible  max_mu         witnesses  reference
7  C3,C4   false      1044        48          2.44948974278  F??Fw      sqrt(n-1)=2.44948974278
5  C4      false      34          18          2.56155281281  DK{        sandwich[2.23606797750, 2.73606797750]\n";
        assert_eq!(table, expected);
    }

    #[test]
    fn verdict_table_golden() {
        let verdicts = crate::search::verify_theorem2(1, 4, 6).unwrap();
        let table = render_verdict_table(&verdicts);
        let expected = "\
claim  k  n  outcome            notes
th2    1  4  verified-on-range  enumerated 11 graphs
th2    1  5  verified-on-range  enumerated 34 graphs
th2    1  6  verified-on-range  enumerated 156 graphs\n";
        assert_eq!(table, expected);
    }
}
