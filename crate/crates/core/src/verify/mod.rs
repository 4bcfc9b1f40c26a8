//! Exhaustive checks of the three lemmas: every connected partition of a
//! small graph is enumerated, its quotient classified, and the lemma's
//! disjunction evaluated.
//!
//! Work is split by restricted-growth-string prefix; each worker enumerates
//! a disjoint subspace and results are merged in prefix order, so a report
//! does not depend on scheduling.

mod catalog;
mod kernel;
mod search;

use std::collections::HashMap;
use std::io::Write;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{contains_induced, Graph, VertexSet};
use crate::io::{parse_json, to_graph6};
use crate::limits::{check_cap, Limits};
use crate::partition::{
    is_connected_partition, outcome_clique_spread, outcome_part_clique, quotient, quotient_masks,
    rgs_prefixes, MaskEnumerator, Partition, MASK_VERTICES_MAX,
};
use crate::recognition::{is_chordal, is_perfect_rows, is_perfect_small};

pub use catalog::graphs_of_order;
pub use search::{search_partition, PartPredicate, QuotientClass, SearchOutcome};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    /// Partitions with a chordal quotient.
    Chordal,
    /// Partitions with a perfect quotient.
    Perfect,
    /// All connected partitions; quotients must contain every `t`-vertex graph.
    General,
}

impl Lemma {
    pub fn name(self) -> &'static str {
        match self {
            Lemma::Chordal => "chordal",
            Lemma::Perfect => "perfect",
            Lemma::General => "general",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaParams {
    pub lemma: Lemma,
    pub k: usize,
    pub r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
}

impl LemmaParams {
    pub fn chordal(k: usize, r: usize) -> Self {
        LemmaParams {
            lemma: Lemma::Chordal,
            k,
            r,
            t: None,
        }
    }

    pub fn perfect(k: usize, r: usize) -> Self {
        LemmaParams {
            lemma: Lemma::Perfect,
            k,
            r,
            t: None,
        }
    }

    pub fn general(k: usize, t: usize, r: usize) -> Self {
        LemmaParams {
            lemma: Lemma::General,
            k,
            r,
            t: Some(t),
        }
    }

    fn check(&self) -> Result<()> {
        let t_ok = match self.lemma {
            Lemma::General => self.t.is_some_and(|t| t >= 1),
            _ => self.t.is_none(),
        };
        if self.k == 0 || self.r == 0 || !t_ok {
            return Err(Error::InvalidParameters(format!("{self:?}")));
        }
        Ok(())
    }
}

/// Shared destination for failures as they are found, one JSON object per
/// line.
pub type FailureSink = Arc<Mutex<dyn Write + Send>>;

#[derive(Clone)]
pub struct VerifyOptions {
    pub limits: Limits,
    pub workers: usize,
    /// Failures kept in the report; the count is always exact.
    pub max_recorded_failures: usize,
    pub failure_sink: Option<FailureSink>,
    /// Free-form identifier copied into the report.
    pub graph_id: Option<String>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            limits: Limits::default(),
            workers: 1,
            max_recorded_failures: 100,
            failure_sink: None,
            graph_id: None,
        }
    }
}

/// A connected partition violating the lemma.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    /// Block index of each vertex, in enumeration order.
    pub rgs: Vec<usize>,
    pub parts: Vec<VertexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part_labels: Option<Vec<Vec<String>>>,
    pub quotient_graph6: String,
    /// General lemma: a `t`-vertex graph missing from the quotient.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub missing_pattern: Option<String>,
}

/// How often each outcome held among the filtered partitions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeTallies {
    pub clique_spread: u64,
    pub part_clique: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contains_all_patterns: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub graph6: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub graph_id: String,
    pub graph: GraphSummary,
    pub params: LemmaParams,
    /// Connected partitions enumerated.
    pub partition_count: u64,
    /// Those whose quotient is in the lemma's class (all, for the general lemma).
    pub filtered_count: u64,
    pub tallies: OutcomeTallies,
    pub failure_count: u64,
    pub failures: Vec<FailureRecord>,
    pub verdict: Verdict,
    pub workers: usize,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: VerificationReport = parse_json(text, "report json")?;
        if report.schema_version != REPORT_SCHEMA_VERSION {
            return Err(Error::Parse {
                format: "report json",
                offset: 0,
                message: format!("unsupported schema version {}", report.schema_version),
            });
        }
        Ok(report)
    }
}

#[derive(Default)]
struct Tally {
    total: u64,
    filtered: u64,
    outcomes: OutcomeTallies,
    failure_count: u64,
    failures: Vec<FailureRecord>,
}

struct Run<'a> {
    g: &'a Graph,
    rows: Vec<u64>,
    params: LemmaParams,
    catalog: Vec<Graph>,
    opts: &'a VerifyOptions,
}

impl Run<'_> {
    /// Index of the first catalog graph not induced in the quotient.
    fn missing_pattern(&self, q: &[u64]) -> Result<Option<usize>> {
        let qg = Graph::from_mask_rows(q);
        for (i, h) in self.catalog.iter().enumerate() {
            if contains_induced(&qg, h, self.opts.limits.containment)?.is_none() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    fn subspace(&self, prefix: &[usize]) -> Result<Tally> {
        let LemmaParams { lemma, k, r, .. } = self.params;
        let mut e = MaskEnumerator::with_prefix(&self.rows, prefix);
        let mut in_class: HashMap<Vec<u64>, bool> = HashMap::new();
        let mut missing: HashMap<Vec<u64>, Option<usize>> = HashMap::new();
        let mut tally = Tally::default();
        if lemma == Lemma::General {
            tally.outcomes.contains_all_patterns = Some(0);
        }
        while let Some(masks) = e.next_masks().map(<[u64]>::to_vec) {
            let masks = &masks[..];
            tally.total += 1;
            let q = quotient_masks(&self.rows, masks);
            let mut gap = None;
            match lemma {
                Lemma::Chordal | Lemma::Perfect => {
                    let keep = match in_class.get(&q) {
                        Some(&b) => b,
                        None => {
                            let b = if lemma == Lemma::Chordal {
                                kernel::is_chordal_rows(&q)
                            } else {
                                is_perfect_rows(&q)
                            };
                            in_class.insert(q.clone(), b);
                            b
                        }
                    };
                    if !keep {
                        continue;
                    }
                }
                Lemma::General => {
                    gap = match missing.get(&q) {
                        Some(&m) => m,
                        None => {
                            let m = self.missing_pattern(&q)?;
                            missing.insert(q.clone(), m);
                            m
                        }
                    };
                    if gap.is_none() {
                        *tally
                            .outcomes
                            .contains_all_patterns
                            .as_mut()
                            .expect("general") += 1;
                    }
                }
            }
            tally.filtered += 1;
            let spread = kernel::clique_spread(&self.rows, masks, k, r);
            let part = kernel::part_clique(&self.rows, masks, k);
            tally.outcomes.clique_spread += u64::from(spread);
            tally.outcomes.part_clique += u64::from(part);
            let holds = spread || part || (lemma == Lemma::General && gap.is_none());
            if !holds {
                tally.failure_count += 1;
                let record = self.record(e.rgs(), masks, &q, gap);
                self.stream(&record)?;
                if tally.failures.len() < self.opts.max_recorded_failures {
                    tally.failures.push(record);
                }
            }
        }
        Ok(tally)
    }

    fn record(&self, rgs: &[usize], masks: &[u64], q: &[u64], gap: Option<usize>) -> FailureRecord {
        let mut parts: Vec<VertexSet> = masks.iter().map(|&m| VertexSet::from_mask(m)).collect();
        parts.sort_unstable_by_key(|p| p.min());
        let part_labels = self.g.labels().map(|labels| {
            parts
                .iter()
                .map(|p| p.iter().map(|v| labels[v].clone()).collect())
                .collect()
        });
        FailureRecord {
            rgs: rgs.to_vec(),
            parts,
            part_labels,
            quotient_graph6: to_graph6(&Graph::from_mask_rows(q)),
            missing_pattern: gap.map(|i| to_graph6(&self.catalog[i])),
        }
    }

    fn stream(&self, record: &FailureRecord) -> Result<()> {
        let Some(sink) = &self.opts.failure_sink else {
            return Ok(());
        };
        let line = serde_json::to_string(record).expect("record serializes");
        let mut w = sink
            .lock()
            .map_err(|_| Error::Io("failure sink poisoned".into()))?;
        writeln!(w, "{line}")
            .and_then(|()| w.flush())
            .map_err(|e| Error::Io(e.to_string()))
    }
}

/// Prefixes for `workers` threads: the shortest depth giving at least eight
/// subspaces per worker, or none at all when running alone.
fn work_split(rows: &[u64], workers: usize) -> Vec<Vec<usize>> {
    if workers <= 1 {
        return vec![Vec::new()];
    }
    let mut depth = 0;
    loop {
        let prefixes = rgs_prefixes(rows, depth);
        if prefixes.len() >= 8 * workers || depth >= rows.len() {
            return prefixes;
        }
        depth += 1;
    }
}

/// Checks the lemma selected by `params` on every connected partition of `g`.
pub fn verify_lemma(
    g: &Graph,
    params: LemmaParams,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    params.check()?;
    let limits = &opts.limits;
    check_cap(
        "connected-partition enumeration",
        g.n(),
        limits.enumeration.min(MASK_VERTICES_MAX),
    )?;
    if params.lemma == Lemma::Perfect {
        check_cap("perfect graph test", g.n(), limits.perfect)?;
    }
    let catalog = match params.t {
        Some(t) if params.lemma == Lemma::General => graphs_of_order(t, limits.catalog_order)?,
        _ => Vec::new(),
    };
    let start = Instant::now();
    let run = Run {
        g,
        rows: g.mask_rows().expect("checked against the mask ceiling"),
        params,
        catalog,
        opts,
    };
    let workers = opts.workers.max(1);
    let prefixes = work_split(&run.rows, workers);
    let tallies: Vec<Result<Tally>> = if workers == 1 {
        prefixes.iter().map(|p| run.subspace(p)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?;
        pool.install(|| prefixes.par_iter().map(|p| run.subspace(p)).collect())
    };

    let mut total = Tally::default();
    if params.lemma == Lemma::General {
        total.outcomes.contains_all_patterns = Some(0);
    }
    for t in tallies {
        let t = t?;
        total.total += t.total;
        total.filtered += t.filtered;
        total.outcomes.clique_spread += t.outcomes.clique_spread;
        total.outcomes.part_clique += t.outcomes.part_clique;
        if let (Some(a), Some(b)) = (
            total.outcomes.contains_all_patterns.as_mut(),
            t.outcomes.contains_all_patterns,
        ) {
            *a += b;
        }
        total.failure_count += t.failure_count;
        let room = opts.max_recorded_failures - total.failures.len();
        total.failures.extend(t.failures.into_iter().take(room));
    }
    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        graph_id: opts.graph_id.clone().unwrap_or_else(|| to_graph6(g)),
        graph: GraphSummary {
            n: g.n(),
            m: g.edge_count(),
            graph6: to_graph6(g),
        },
        params,
        partition_count: total.total,
        filtered_count: total.filtered,
        tallies: total.outcomes,
        failure_count: total.failure_count,
        failures: total.failures,
        verdict: if total.failure_count == 0 {
            Verdict::Certified
        } else {
            Verdict::Failed
        },
        workers,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// Every chordal partition of `g` has a `K_{kr}` meeting `r` parts in `k`
/// vertices each, or a part containing `K_{k+1}`.
pub fn verify_chordal_lemma(g: &Graph, k: usize, r: usize) -> Result<VerificationReport> {
    verify_lemma(g, LemmaParams::chordal(k, r), &VerifyOptions::default())
}

/// As [`verify_chordal_lemma`], over perfect partitions.
pub fn verify_perfect_lemma(g: &Graph, k: usize, r: usize) -> Result<VerificationReport> {
    verify_lemma(g, LemmaParams::perfect(k, r), &VerifyOptions::default())
}

/// Every connected partition of `g` has the clique outcome, a quotient
/// containing every `t`-vertex graph, or a part containing `K_{k+1}`.
pub fn verify_general_lemma(g: &Graph, k: usize, t: usize, r: usize) -> Result<VerificationReport> {
    verify_lemma(g, LemmaParams::general(k, t, r), &VerifyOptions::default())
}

/// Re-checks a failure record from scratch with the graph-level routines
/// (not the enumeration kernel). True iff the failure reproduces.
pub fn replay_failure(
    g: &Graph,
    params: LemmaParams,
    record: &FailureRecord,
    limits: &Limits,
) -> Result<bool> {
    params.check()?;
    let p = Partition::new(g.n(), record.parts.clone())?;
    if !is_connected_partition(g, &p)? {
        return Ok(false);
    }
    let q = quotient(g, &p)?.graph;
    if to_graph6(&q) != record.quotient_graph6 {
        return Ok(false);
    }
    let in_scope = match params.lemma {
        Lemma::Chordal => is_chordal(&q)?.is_chordal(),
        Lemma::Perfect => is_perfect_small(&q, limits.perfect)?.is_perfect(),
        Lemma::General => {
            let t = params.t.expect("checked");
            let mut missing = false;
            for h in graphs_of_order(t, limits.catalog_order)? {
                if contains_induced(&q, &h, limits.containment)?.is_none() {
                    missing = true;
                    break;
                }
            }
            missing
        }
    };
    Ok(in_scope
        && outcome_clique_spread(g, &p, params.k, params.r).is_none()
        && outcome_part_clique(g, &p, params.k).is_none())
}
