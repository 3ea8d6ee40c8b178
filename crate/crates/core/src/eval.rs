//! Candidate sets, AUC, precision@L and parameter sweeps.

use std::cmp::Ordering;
use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decay::{Decay, DecayParams};
use crate::graph::{
    canonical, split_by_time, GraphError, NodeId, NodePair, SnapshotConfig, TemporalEdgeList,
    TrainTestSplit,
};
use crate::matrices::{Aggregation, DegreeVector, LatentWeights, MatrixError, WeightedAdjacency};
use crate::predictors::{CclpMode, MethodId, ScoreError, ScoreTable, Scorer};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no new links in the test period; nothing to predict")]
    NoPositives,
    #[error("every candidate pair is already linked; no negatives to compare against")]
    NoNegatives,
    #[error("AUC needs at least one positive and one negative score")]
    EmptyScores,
    #[error("precision@{need} needs at least {need} candidates, have {have}")]
    TooFewCandidates { have: usize, need: usize },
    #[error("top-L must be at least 1")]
    InvalidTopL,
    #[error("cannot sweep {param}: {reason}")]
    InvalidSweep { param: String, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Score(#[from] ScoreError),
}

/// Positives plus an explicit (seeded) sample of never-linked pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub positives: Vec<NodePair>,
    /// Size of the universe of pairs unlinked in train and test.
    pub negative_universe: u64,
    pub negatives: Vec<NodePair>,
    pub seed: u64,
    /// True when `negatives` is the whole universe.
    pub exhaustive: bool,
}

impl CandidateSet {
    /// Positives followed by negatives.
    pub fn all_pairs(&self) -> Vec<NodePair> {
        self.positives
            .iter()
            .chain(&self.negatives)
            .copied()
            .collect()
    }
}

/// `min(universe, 10 · positives, 10^6)`
pub fn default_max_negatives(positives: usize, universe: u64) -> usize {
    (universe.min(1_000_000) as usize).min(positives.saturating_mul(10))
}

fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Samples negatives uniformly without replacement from the pairs that are
/// unlinked in both train and test. `max_negatives = None` applies
/// [`default_max_negatives`].
pub fn build_candidates(
    split: &TrainTestSplit,
    node_count: usize,
    seed: u64,
    max_negatives: Option<usize>,
) -> Result<CandidateSet, EvalError> {
    if split.positives.is_empty() {
        return Err(EvalError::NoPositives);
    }
    let mut linked = split.train.linked_pairs();
    linked.extend(split.test.linked_pairs());
    linked.retain(|p| p.0 != p.1);
    let universe = pair_count(node_count) - linked.len() as u64;
    if universe == 0 {
        return Err(EvalError::NoNegatives);
    }
    let target = max_negatives
        .unwrap_or_else(|| default_max_negatives(split.positives.len(), universe))
        .max(1);

    let enumerate = || {
        let mut all = Vec::with_capacity(universe as usize);
        for u in 0..node_count as NodeId {
            for v in (u + 1)..node_count as NodeId {
                if !linked.contains(&(u, v)) {
                    all.push((u, v));
                }
            }
        }
        all
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut negatives, exhaustive) = if universe <= target as u64 {
        (enumerate(), true)
    } else if (target as u64).saturating_mul(2) > universe {
        let all = enumerate();
        let picked = index::sample(&mut rng, all.len(), target);
        (picked.into_iter().map(|i| all[i]).collect(), false)
    } else {
        let n = node_count as NodeId;
        let mut chosen = HashSet::with_capacity(target);
        let mut out = Vec::with_capacity(target);
        while out.len() < target {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u == v {
                continue;
            }
            let p = canonical(u, v);
            if !linked.contains(&p) && chosen.insert(p) {
                out.push(p);
            }
        }
        (out, false)
    };
    negatives.sort_unstable();

    Ok(CandidateSet {
        positives: split.positives.clone(),
        negative_universe: universe,
        negatives,
        seed,
        exhaustive,
    })
}

/// Exact AUC over every positive/negative comparison, computed from the
/// merged sort order: `(concordant + ½ ties) / (|pos| · |neg|)`.
pub fn auc_exhaustive(pos: &[f64], neg: &[f64]) -> Result<f64, EvalError> {
    if pos.is_empty() || neg.is_empty() {
        return Err(EvalError::EmptyScores);
    }
    let mut merged: Vec<(f64, bool)> = pos
        .iter()
        .map(|&s| (s, true))
        .chain(neg.iter().map(|&s| (s, false)))
        .collect();
    merged.sort_by(|a, b| a.0.total_cmp(&b.0));

    // doubled counts keep the tie half exact in integers
    let mut twice_wins: u128 = 0;
    let mut neg_below: u128 = 0;
    let mut i = 0;
    while i < merged.len() {
        let mut j = i;
        let (mut p, mut n) = (0u128, 0u128);
        while j < merged.len() && merged[j].0.total_cmp(&merged[i].0) == Ordering::Equal {
            if merged[j].1 {
                p += 1;
            } else {
                n += 1;
            }
            j += 1;
        }
        twice_wins += 2 * p * neg_below + p * n;
        neg_below += n;
        i = j;
    }
    let total = 2 * pos.len() as u128 * neg.len() as u128;
    Ok(twice_wins as f64 / total as f64)
}

/// AUC from `comparisons` random positive/negative draws (with replacement).
pub fn auc_sampled(
    pos: &[f64],
    neg: &[f64],
    comparisons: u64,
    seed: u64,
) -> Result<f64, EvalError> {
    if pos.is_empty() || neg.is_empty() || comparisons == 0 {
        return Err(EvalError::EmptyScores);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut twice = 0u64;
    for _ in 0..comparisons {
        let a = pos[rng.random_range(0..pos.len())];
        let b = neg[rng.random_range(0..neg.len())];
        twice += match a.total_cmp(&b) {
            Ordering::Greater => 2,
            Ordering::Equal => 1,
            Ordering::Less => 0,
        };
    }
    Ok(twice as f64 / (2 * comparisons) as f64)
}

/// How many comparisons AUC uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AucPolicy {
    /// Exhaustive whenever `|pos| · |neg|` is at most this.
    pub exhaustive_limit: u64,
    /// Sampled comparisons otherwise.
    pub samples: u64,
}

impl Default for AucPolicy {
    fn default() -> Self {
        Self {
            exhaustive_limit: 10_000_000,
            samples: 672_400,
        }
    }
}

impl AucPolicy {
    /// Always sample exactly `n` comparisons.
    pub fn sampled(n: u64) -> Self {
        Self {
            exhaustive_limit: 0,
            samples: n,
        }
    }

    /// `None` means exhaustive.
    pub fn comparisons_for(&self, n_pos: usize, n_neg: usize) -> Option<u64> {
        let full = n_pos as u64 * n_neg as u64;
        (full > self.exhaustive_limit).then_some(self.samples)
    }
}

/// AUC with `comparisons = None` meaning exhaustive.
pub fn auc(
    pos: &[f64],
    neg: &[f64],
    comparisons: Option<u64>,
    seed: u64,
) -> Result<f64, EvalError> {
    match comparisons {
        None => auc_exhaustive(pos, neg),
        Some(n) => auc_sampled(pos, neg, n, seed),
    }
}

/// Share of positives among the `l` best-scored rows. Equal scores are
/// ordered by ascending pair.
pub fn precision_at_l(
    table: &ScoreTable,
    positives: &HashSet<NodePair>,
    l: usize,
) -> Result<f64, EvalError> {
    if l == 0 {
        return Err(EvalError::InvalidTopL);
    }
    if table.len() < l {
        return Err(EvalError::TooFewCandidates {
            have: table.len(),
            need: l,
        });
    }
    let mut rows: Vec<&(NodePair, f64)> = table.rows.iter().collect();
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let hits = rows[..l]
        .iter()
        .filter(|r| positives.contains(&r.0))
        .count();
    Ok(hits as f64 / l as f64)
}

/// Everything that stays fixed across methods and parameter values.
#[derive(Debug, Clone)]
pub struct PreparedEvaluation {
    pub split: TrainTestSplit,
    pub candidates: CandidateSet,
    pub node_count: usize,
}

impl PreparedEvaluation {
    pub fn new(
        list: &TemporalEdgeList,
        ratio: f64,
        seed: u64,
        max_negatives: Option<usize>,
    ) -> Result<Self, EvalError> {
        let split = split_by_time(list, ratio)?;
        let candidates = build_candidates(&split, list.node_count(), seed, max_negatives)?;
        Ok(Self {
            split,
            candidates,
            node_count: list.node_count(),
        })
    }

    pub fn stats(&self, snapshots: &SnapshotConfig) -> Result<SplitStats, EvalError> {
        Ok(SplitStats {
            train_edges: self.split.train.len(),
            test_edges: self.split.test.len(),
            train_fraction: self.split.train_fraction(),
            t_split: self.split.t_split,
            reference_snapshot: snapshots.snapshot_index(self.split.t_split)?,
            positives: self.candidates.positives.len(),
            negatives: self.candidates.negatives.len(),
            negative_universe: self.candidates.negative_universe,
            exhaustive_negatives: self.candidates.exhaustive,
        })
    }
}

/// Knobs of a single evaluation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    pub decay: Decay,
    pub snapshots: SnapshotConfig,
    pub aggregation: Aggregation,
    pub cclp_mode: CclpMode,
    pub top_l: usize,
    pub auc: AucPolicy,
    pub seed: u64,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            decay: Decay::Asf(DecayParams::default()),
            snapshots: SnapshotConfig::default(),
            aggregation: Aggregation::Sum,
            cclp_mode: CclpMode::PerNode,
            top_l: 100,
            auc: AucPolicy::default(),
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitStats {
    pub train_edges: usize,
    pub test_edges: usize,
    pub train_fraction: f64,
    pub t_split: i64,
    pub reference_snapshot: f64,
    pub positives: usize,
    pub negatives: usize,
    pub negative_universe: u64,
    pub exhaustive_negatives: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub method: MethodId,
    pub decay: Decay,
    pub snapshots: SnapshotConfig,
    pub aggregation: Aggregation,
    pub split: SplitStats,
    pub auc: f64,
    /// Comparisons behind `auc`; equals `positives · negatives` when exhaustive.
    pub comparisons: u64,
    pub auc_exhaustive: bool,
    /// `None` when there are fewer candidates than `top_l`.
    pub precision: Option<f64>,
    pub top_l: usize,
    pub seed: u64,
}

impl EvalReport {
    pub const CSV_HEADER: &'static str = "method,decay,p,q,a,theta,period,aggregation,train_edges,test_edges,positives,negatives,auc,comparisons,precision,top_l,seed";

    pub fn csv_row(&self) -> String {
        let (mode, p, q, a, theta) = match self.decay {
            Decay::Asf(d) => (
                "asf",
                d.p.to_string(),
                d.q.to_string(),
                d.a.to_string(),
                String::new(),
            ),
            Decay::Exp(e) => (
                "exp",
                String::new(),
                String::new(),
                String::new(),
                e.theta.to_string(),
            ),
        };
        let agg = match self.aggregation {
            Aggregation::Sum => "sum",
            Aggregation::Latest => "latest",
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.method,
            mode,
            p,
            q,
            a,
            theta,
            self.snapshots.period,
            agg,
            self.split.train_edges,
            self.split.test_edges,
            self.split.positives,
            self.split.negatives,
            self.auc,
            self.comparisons,
            self.precision.map(|v| v.to_string()).unwrap_or_default(),
            self.top_l,
            self.seed
        )
    }
}

/// Builds the decayed snapshot once and evaluates each method on it.
pub fn evaluate_methods(
    prepared: &PreparedEvaluation,
    methods: &[MethodId],
    settings: &RunSettings,
) -> Result<Vec<EvalReport>, EvalError> {
    let stats = prepared.stats(&settings.snapshots)?;
    let adj = WeightedAdjacency::build(
        &prepared.split.train,
        stats.reference_snapshot,
        &settings.decay,
        &settings.snapshots,
        settings.aggregation,
    )?;
    let deg = DegreeVector::from_adjacency(&adj);
    let latent = methods
        .iter()
        .any(|m| m.needs_latent())
        .then(|| LatentWeights::new(&adj, settings.decay.floor()));
    let scorer = Scorer::new(&adj, &deg, latent.as_ref()).with_cclp_mode(settings.cclp_mode);

    let cands = &prepared.candidates;
    let pairs = cands.all_pairs();
    let n_pos = cands.positives.len();
    let positive_set: HashSet<NodePair> = cands.positives.iter().copied().collect();
    let comparisons = settings.auc.comparisons_for(n_pos, cands.negatives.len());

    let mut reports = Vec::with_capacity(methods.len());
    for &method in methods {
        let table = scorer.score_all(&pairs, method)?;
        let scores: Vec<f64> = table.scores().collect();
        let (pos, neg) = scores.split_at(n_pos);
        let auc_value = auc(pos, neg, comparisons, settings.seed)?;
        let precision = match precision_at_l(&table, &positive_set, settings.top_l) {
            Ok(v) => Some(v),
            Err(EvalError::TooFewCandidates { .. }) => None,
            Err(e) => return Err(e),
        };
        reports.push(EvalReport {
            method,
            decay: settings.decay,
            snapshots: settings.snapshots,
            aggregation: settings.aggregation,
            split: stats.clone(),
            auc: auc_value,
            comparisons: comparisons.unwrap_or(n_pos as u64 * neg.len() as u64),
            auc_exhaustive: comparisons.is_none(),
            precision,
            top_l: settings.top_l,
            seed: settings.seed,
        });
    }
    Ok(reports)
}

pub fn evaluate(
    prepared: &PreparedEvaluation,
    method: MethodId,
    settings: &RunSettings,
) -> Result<EvalReport, EvalError> {
    Ok(evaluate_methods(prepared, &[method], settings)?.remove(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    P,
    Q,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::P => "p",
            SweepParam::Q => "q",
        }
    }
}

/// Evaluates every method at every value of `param`, reusing one split and
/// one candidate set. Reports come out grouped by value, then method.
pub fn sweep(
    prepared: &PreparedEvaluation,
    param: SweepParam,
    values: &[f64],
    base: &RunSettings,
    methods: &[MethodId],
) -> Result<Vec<EvalReport>, EvalError> {
    let Decay::Asf(params) = base.decay else {
        return Err(EvalError::InvalidSweep {
            param: param.name().into(),
            reason: "sweeps apply to the adjusted sigmoid decay only".into(),
        });
    };
    let mut out = Vec::with_capacity(values.len() * methods.len());
    for &value in values {
        let (p, q) = match param {
            SweepParam::P => (value, params.q),
            SweepParam::Q => (params.p, value),
        };
        let decay = DecayParams::new(p, q, params.a).map_err(|e| EvalError::InvalidSweep {
            param: param.name().into(),
            reason: e.to_string(),
        })?;
        let settings = RunSettings {
            decay: Decay::Asf(decay),
            ..*base
        };
        out.extend(evaluate_methods(prepared, methods, &settings)?);
    }
    Ok(out)
}

pub const SWEEP_CSV_HEADER: &str = "method,param,value,auc,precision";

/// Tidy `method,param,value,auc,precision` row.
pub fn sweep_csv_row(report: &EvalReport, param: SweepParam) -> String {
    let value = match (report.decay, param) {
        (Decay::Asf(d), SweepParam::P) => d.p,
        (Decay::Asf(d), SweepParam::Q) => d.q,
        (Decay::Exp(_), _) => f64::NAN,
    };
    format!(
        "{},{},{},{},{}",
        report.method,
        param.name(),
        value,
        report.auc,
        report.precision.map(|v| v.to_string()).unwrap_or_default()
    )
}
