//! Instance-level verification of the structure theorems: each check takes
//! concrete graphs, evaluates both sides of the claimed identity or bound
//! with the exact solver, and emits a structured report with witnesses for
//! anything that fails. Corpus scans aggregate reports deterministically.
//!
//! Checks are falsifiable, not assumed: every theorem's hypotheses are
//! explicit predicates, and instances failing them get a
//! `hypothesis_not_met` verdict rather than a vacuous `confirmed`.

pub mod checks;
pub mod corpus;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::fixing::DEFAULT_SOLVE_CAP;
use crate::graph::Graph;
use crate::io::emit_graph6_string;

pub use checks::{
    verify_composition_bounds, verify_composition_distance, verify_composition_slices,
    verify_corona, verify_corona_iter, verify_disconnected_formula, verify_join_lemmas,
    verify_lifted_automorphisms,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    CompositionDistance,
    LiftedAutomorphisms,
    CompositionSlices,
    CompositionBounds,
    DisconnectedFormula,
    Corona,
    CoronaIter,
    JoinLemmas,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::CompositionDistance,
        TheoremId::LiftedAutomorphisms,
        TheoremId::CompositionSlices,
        TheoremId::CompositionBounds,
        TheoremId::DisconnectedFormula,
        TheoremId::Corona,
        TheoremId::CoronaIter,
        TheoremId::JoinLemmas,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::CompositionDistance => "composition_distance",
            TheoremId::LiftedAutomorphisms => "lifted_automorphisms",
            TheoremId::CompositionSlices => "composition_slices",
            TheoremId::CompositionBounds => "composition_bounds",
            TheoremId::DisconnectedFormula => "disconnected_formula",
            TheoremId::Corona => "corona",
            TheoremId::CoronaIter => "corona_iter",
            TheoremId::JoinLemmas => "join_lemmas",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown theorem id '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Violated,
    HypothesisNotMet,
    SkippedCap,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Confirmed => "confirmed",
            Verdict::Violated => "violated",
            Verdict::HypothesisNotMet => "hypothesis_not_met",
            Verdict::SkippedCap => "skipped_cap",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Description of the inputs a report refers to: graph6 strings plus the
/// iteration level where applicable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct InstanceDesc {
    pub g1: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

fn describe(g: &Graph) -> String {
    emit_graph6_string(g).unwrap_or_else(|_| format!("(order {}, {} edges)", g.order(), g.size()))
}

impl InstanceDesc {
    pub fn single(g: &Graph) -> Self {
        InstanceDesc {
            g1: describe(g),
            g2: None,
            k: None,
        }
    }

    pub fn pair(g1: &Graph, g2: &Graph) -> Self {
        InstanceDesc {
            g1: describe(g1),
            g2: Some(describe(g2)),
            k: None,
        }
    }

    pub fn pair_at_level(g1: &Graph, g2: &Graph, k: usize) -> Self {
        InstanceDesc {
            g1: describe(g1),
            g2: Some(describe(g2)),
            k: Some(k),
        }
    }
}

/// Structured evidence attached to a violated report; each variant is
/// independently re-checkable against the instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    /// An automorphism of the instance graph, as an image array.
    Automorphism { images: Vec<usize> },
    /// A vertex set (a fixing set, a slice intersection, ...).
    VertexSet { vertices: Vec<usize> },
    /// Named quantities that reproduce under recomputation.
    Values { entries: BTreeMap<String, i64> },
}

/// Pass/fail record of one theorem checked on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub instance: InstanceDesc,
    pub verdict: Verdict,
    pub numbers: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl VerificationReport {
    pub(crate) fn new(theorem_id: TheoremId, instance: InstanceDesc) -> Self {
        VerificationReport {
            theorem_id,
            instance,
            verdict: Verdict::Confirmed,
            numbers: BTreeMap::new(),
            witness: None,
        }
    }

    pub(crate) fn number(&mut self, key: &str, value: i64) -> &mut Self {
        self.numbers.insert(key.to_string(), value);
        self
    }

    /// Marks the report violated (sticky) and records the first witness.
    pub(crate) fn violation(&mut self, witness: Witness) -> &mut Self {
        self.verdict = Verdict::Violated;
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
        self
    }

    /// Open-question and discrepancy markers live in `numbers` under keys
    /// beginning with `flag_`, so the JSONL schema stays flat.
    pub fn is_flagged(&self) -> bool {
        self.numbers
            .iter()
            .any(|(k, &v)| k.starts_with("flag_") && v != 0)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    fn sort_key(&self) -> (&'static str, &InstanceDesc) {
        (self.theorem_id.as_str(), &self.instance)
    }
}

/// Caps under which a verification is attempted; instances above them are
/// reported as `skipped_cap`, never silently dropped.
#[derive(Clone, Copy, Debug)]
pub struct VerifyLimits {
    /// Largest product order the exact solver will be asked to handle.
    pub solve_cap: usize,
}

impl Default for VerifyLimits {
    fn default() -> Self {
        VerifyLimits {
            solve_cap: DEFAULT_SOLVE_CAP,
        }
    }
}

/// One unit of scan work.
#[derive(Clone, Debug)]
pub enum ScanItem {
    Single(Graph),
    Pair(Graph, Graph),
    PairAtLevel(Graph, Graph, usize),
}

/// Aggregated verdict counts for one scan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub total: usize,
    pub confirmed: usize,
    pub violated: usize,
    pub hypothesis_not_met: usize,
    pub skipped_cap: usize,
    pub flagged: usize,
}

impl ScanSummary {
    fn absorb(&mut self, report: &VerificationReport) {
        self.total += 1;
        match report.verdict {
            Verdict::Confirmed => self.confirmed += 1,
            Verdict::Violated => self.violated += 1,
            Verdict::HypothesisNotMet => self.hypothesis_not_met += 1,
            Verdict::SkippedCap => self.skipped_cap += 1,
        }
        if report.is_flagged() {
            self.flagged += 1;
        }
    }
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "total={} confirmed={} violated={} hypothesis_not_met={} skipped_cap={} flagged={}",
            self.total,
            self.confirmed,
            self.violated,
            self.hypothesis_not_met,
            self.skipped_cap,
            self.flagged
        )
    }
}

/// Evaluates one theorem on one item.
pub fn evaluate(id: TheoremId, item: &ScanItem, limits: VerifyLimits) -> VerificationReport {
    match (id, item) {
        (TheoremId::CompositionDistance, ScanItem::Pair(a, b)) => {
            verify_composition_distance(a, b, limits)
        }
        (TheoremId::LiftedAutomorphisms, ScanItem::Pair(a, b)) => {
            verify_lifted_automorphisms(a, b, limits)
        }
        (TheoremId::CompositionSlices, ScanItem::Pair(a, b)) => {
            verify_composition_slices(a, b, limits)
        }
        (TheoremId::CompositionBounds, ScanItem::Pair(a, b)) => {
            verify_composition_bounds(a, b, limits)
        }
        (TheoremId::Corona, ScanItem::Pair(a, b)) => verify_corona(a, b, limits),
        (TheoremId::CoronaIter, ScanItem::PairAtLevel(a, b, k)) => {
            verify_corona_iter(a, b, *k, limits)
        }
        (TheoremId::DisconnectedFormula, ScanItem::Single(g)) => {
            verify_disconnected_formula(g, limits)
        }
        (TheoremId::JoinLemmas, ScanItem::Single(g)) => verify_join_lemmas(g, limits),
        (id, item) => panic!("scan item {item:?} does not fit theorem {id}"),
    }
}

/// The default corpus for a theorem: exhaustive small-graph pairs (connected
/// left factors where the theorem assumes connectivity), disjoint unions for
/// the disconnected formula, plain graphs for the join lemmas.
pub fn scan_items(id: TheoremId, g1_max: usize, g2_max: usize, k: usize) -> Vec<ScanItem> {
    match id {
        TheoremId::CompositionDistance
        | TheoremId::LiftedAutomorphisms
        | TheoremId::CompositionSlices
        | TheoremId::CompositionBounds
        | TheoremId::Corona => {
            let left = corpus::connected_graphs_up_to_order(g1_max);
            let right = corpus::graphs_up_to_order(g2_max);
            left.iter()
                .flat_map(|a| {
                    right
                        .iter()
                        .map(move |b| ScanItem::Pair(a.clone(), b.clone()))
                })
                .collect()
        }
        TheoremId::CoronaIter => {
            let left = corpus::connected_graphs_up_to_order(g1_max);
            let right = corpus::graphs_up_to_order(g2_max);
            left.iter()
                .flat_map(|a| {
                    right
                        .iter()
                        .map(move |b| ScanItem::PairAtLevel(a.clone(), b.clone(), k))
                })
                .collect()
        }
        TheoremId::DisconnectedFormula => {
            let parts: Vec<Graph> = corpus::connected_graphs_up_to_order(g1_max)
                .into_iter()
                .filter(|g| g.order() >= 2)
                .collect();
            let mut out = Vec::new();
            for (i, a) in parts.iter().enumerate() {
                for b in &parts[i..] {
                    let (g, _) =
                        crate::graph::disjoint_union(&[a.clone(), b.clone()]).expect("two parts");
                    out.push(ScanItem::Single(g));
                }
            }
            out
        }
        TheoremId::JoinLemmas => corpus::graphs_up_to_order(g1_max)
            .into_iter()
            .map(ScanItem::Single)
            .collect(),
    }
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub theorem: TheoremId,
    pub g1_max: usize,
    pub g2_max: usize,
    pub k: usize,
    pub limits: VerifyLimits,
    pub jobs: usize,
    /// Deterministic subsample size; `None` scans the whole corpus.
    pub sample: Option<usize>,
    pub seed: u64,
}

impl ScanConfig {
    /// Per-theorem default corpus sizes. The iterated corona grows as
    /// m(n+1)^k, so its default corpus stays smaller: already at m = n = 3,
    /// k = 2 the exact solve means proving a 48-vertex graph has no
    /// 23-element fixing set.
    pub fn new(theorem: TheoremId) -> Self {
        let (g1_max, g2_max) = match theorem {
            TheoremId::CoronaIter => (2, 2),
            _ => (3, 3),
        };
        ScanConfig {
            theorem,
            g1_max,
            g2_max,
            k: 2,
            limits: VerifyLimits::default(),
            jobs: 1,
            sample: None,
            seed: 0,
        }
    }
}

/// Runs one theorem over its corpus. Reports come back sorted by instance
/// key, so output is deterministic regardless of `jobs`; a violated instance
/// never aborts the scan.
pub fn scan(config: &ScanConfig) -> (Vec<VerificationReport>, ScanSummary) {
    let mut items = scan_items(config.theorem, config.g1_max, config.g2_max, config.k);
    if let Some(limit) = config.sample {
        items = subsample(items, limit, config.seed);
    }
    scan_over(config.theorem, &items, config.limits, config.jobs)
}

/// Runs one theorem over explicit items (e.g. a corpus loaded from a file).
pub fn scan_over(
    id: TheoremId,
    items: &[ScanItem],
    limits: VerifyLimits,
    jobs: usize,
) -> (Vec<VerificationReport>, ScanSummary) {
    let mut reports: Vec<VerificationReport> = if jobs <= 1 || items.len() < 2 {
        items
            .iter()
            .map(|item| evaluate(id, item, limits))
            .collect()
    } else {
        let jobs = jobs.min(items.len());
        let chunk = items.len().div_ceil(jobs);
        let mut indexed: Vec<(usize, VerificationReport)> = std::thread::scope(|scope| {
            let handles: Vec<_> = items
                .chunks(chunk)
                .enumerate()
                .map(|(ci, slab)| {
                    scope.spawn(move || {
                        slab.iter()
                            .enumerate()
                            .map(|(i, item)| (ci * chunk + i, evaluate(id, item, limits)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("scan worker panicked"))
                .collect()
        });
        indexed.sort_by_key(|(i, _)| *i);
        indexed.into_iter().map(|(_, r)| r).collect()
    };
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    let mut summary = ScanSummary::default();
    for r in &reports {
        summary.absorb(r);
    }
    (reports, summary)
}

fn subsample(items: Vec<ScanItem>, limit: usize, seed: u64) -> Vec<ScanItem> {
    if items.len() <= limit {
        return items;
    }
    let mut rng = corpus::SplitMix64::new(seed);
    let mut indices: Vec<usize> = (0..items.len()).collect();
    for i in (1..indices.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        indices.swap(i, j);
    }
    let mut keep: Vec<usize> = indices.into_iter().take(limit).collect();
    keep.sort_unstable();
    let mut items: Vec<Option<ScanItem>> = items.into_iter().map(Some).collect();
    keep.into_iter()
        .map(|i| items[i].take().expect("indices unique"))
        .collect()
}

/// Serializes reports as JSON Lines, one report per line.
pub fn reports_to_jsonl(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.to_json_line());
        out.push('\n');
    }
    out
}
