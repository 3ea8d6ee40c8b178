//! Timestamped edge lists: parsing, normalization, snapshots and
//! time-ordered train/test splits.
//!
//! Input follows the KONECT text layout: whitespace separated columns
//! `src dst [weight] timestamp`, with `%` starting a comment line. The weight
//! column is read past and discarded, edge weights come from time decay only.

use std::collections::{HashMap, HashSet, VecDeque};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense node identifier, `0..node_count`.
pub type NodeId = u32;

/// Unordered node pair stored as `(min, max)`.
pub type NodePair = (NodeId, NodeId);

/// Canonical `(min, max)` orientation of an undirected pair.
#[inline]
pub fn canonical(u: NodeId, v: NodeId) -> NodePair {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("dataset contains no usable edges")]
    EmptyDataset,
    #[error("node id {id} is out of range for {node_count} nodes")]
    NodeOutOfRange { id: NodeId, node_count: usize },
    #[error("timestamp {ts} precedes the snapshot origin {origin}")]
    BeforeOrigin { ts: i64, origin: i64 },
    #[error("snapshot period must be positive and finite, got {0}")]
    InvalidPeriod(f64),
    #[error("split ratio must lie strictly between 0 and 1, got {0}")]
    InvalidRatio(f64),
    #[error("cannot split edge list in time: {0}")]
    SplitImpossible(&'static str),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemporalEdge {
    pub u: NodeId,
    pub v: NodeId,
    pub ts: i64,
}

impl TemporalEdge {
    pub fn new(u: NodeId, v: NodeId, ts: i64) -> Self {
        Self { u, v, ts }
    }

    #[inline]
    pub fn pair(&self) -> NodePair {
        canonical(self.u, self.v)
    }
}

/// Timestamped multi-edge history over a fixed node set.
///
/// Edges are kept sorted by timestamp; ties keep their insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalEdgeList {
    edges: Vec<TemporalEdge>,
    node_count: usize,
}

impl TemporalEdgeList {
    pub fn new(mut edges: Vec<TemporalEdge>, node_count: usize) -> Result<Self, GraphError> {
        for e in &edges {
            for id in [e.u, e.v] {
                if id as usize >= node_count {
                    return Err(GraphError::NodeOutOfRange { id, node_count });
                }
            }
        }
        edges.sort_by_key(|e| e.ts);
        Ok(Self { edges, node_count })
    }

    /// Builds a list whose node count is one past the largest id present.
    pub fn from_edges(edges: Vec<TemporalEdge>) -> Self {
        let node_count = edges
            .iter()
            .map(|e| e.u.max(e.v) as usize + 1)
            .max()
            .unwrap_or(0);
        Self::new(edges, node_count).expect("node count covers every id")
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn t_min(&self) -> Option<i64> {
        self.edges.first().map(|e| e.ts)
    }

    pub fn t_max(&self) -> Option<i64> {
        self.edges.last().map(|e| e.ts)
    }

    pub fn self_loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.u == e.v).count()
    }

    /// Drops self-loops, orients every edge as `u < v` and shifts time so the
    /// earliest remaining edge sits at timestamp 1.
    pub fn normalize(&self) -> TemporalEdgeList {
        let mut edges: Vec<TemporalEdge> = self
            .edges
            .iter()
            .filter(|e| e.u != e.v)
            .map(|e| {
                let (u, v) = e.pair();
                TemporalEdge::new(u, v, e.ts)
            })
            .collect();
        if let Some(t0) = edges.iter().map(|e| e.ts).min() {
            let shift = 1 - t0;
            for e in &mut edges {
                e.ts += shift;
            }
        }
        edges.sort_by_key(|e| e.ts);
        TemporalEdgeList {
            edges,
            node_count: self.node_count,
        }
    }

    /// Number of edges between `i` and `j` in this list, in either orientation.
    pub fn multiplicity(&self, i: NodeId, j: NodeId) -> usize {
        let key = canonical(i, j);
        self.edges.iter().filter(|e| e.pair() == key).count()
    }

    pub fn pair_counts(&self) -> HashMap<NodePair, u32> {
        let mut counts = HashMap::new();
        for e in &self.edges {
            *counts.entry(e.pair()).or_insert(0) += 1;
        }
        counts
    }

    pub fn linked_pairs(&self) -> HashSet<NodePair> {
        self.edges.iter().map(TemporalEdge::pair).collect()
    }

    /// Keeps edges whose endpoints both lie within `hops` of a seed node.
    pub fn khop_filter(&self, seeds: &[NodeId], hops: usize) -> TemporalEdgeList {
        let mut adj: Vec<Vec<NodeId>> = vec![Vec::new(); self.node_count];
        for (u, v) in self.linked_pairs() {
            if u != v {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        let mut dist = vec![usize::MAX; self.node_count];
        let mut queue = VecDeque::new();
        for &s in seeds {
            if (s as usize) < self.node_count && dist[s as usize] == usize::MAX {
                dist[s as usize] = 0;
                queue.push_back(s);
            }
        }
        while let Some(n) = queue.pop_front() {
            let d = dist[n as usize];
            if d == hops {
                continue;
            }
            for &m in &adj[n as usize] {
                if dist[m as usize] == usize::MAX {
                    dist[m as usize] = d + 1;
                    queue.push_back(m);
                }
            }
        }
        let keep = |id: NodeId| dist[id as usize] != usize::MAX;
        TemporalEdgeList {
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| keep(e.u) && keep(e.v))
                .collect(),
            node_count: self.node_count,
        }
    }

    /// Writes `u v ts` lines preceded by a node-count header, which
    /// [`parse_edge_list`] reads back with an identity id mapping.
    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "% tlpss normalized edge list")?;
        writeln!(out, "% nodes {}", self.node_count)?;
        for e in &self.edges {
            writeln!(out, "{} {} {}", e.u, e.v, e.ts)?;
        }
        out.flush()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropReport {
    pub lines_read: usize,
    pub edges_kept: usize,
    pub missing_ts_dropped: usize,
    pub self_loops_dropped: usize,
}

/// Result of reading an edge list file.
#[derive(Debug, Clone)]
pub struct ParsedEdgeList {
    pub edges: TemporalEdgeList,
    /// Original label of every dense id.
    pub labels: Vec<String>,
    pub report: DropReport,
}

impl ParsedEdgeList {
    /// Normalizes the edges and records the dropped self-loops.
    pub fn normalized(mut self) -> Self {
        self.report.self_loops_dropped = self.edges.self_loop_count();
        self.edges = self.edges.normalize();
        self.report.edges_kept = self.edges.len();
        self
    }
}

fn parse_timestamp(tok: &str) -> Option<i64> {
    if let Ok(t) = tok.parse::<i64>() {
        return Some(t);
    }
    let f: f64 = tok.parse().ok()?;
    if f.is_finite() && f.fract() == 0.0 && f.abs() < 9.0e15 {
        Some(f as i64)
    } else {
        None
    }
}

fn parse_node_header(comment: &str) -> Option<usize> {
    let rest = comment.trim_start_matches('%').trim();
    let mut it = rest.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some("nodes"), Some(n), None) => n.parse().ok(),
        _ => None,
    }
}

/// Reads a KONECT-style edge list.
///
/// Node labels are remapped to dense ids in ascending label order (numeric
/// when every label is an integer). Files written by
/// [`TemporalEdgeList::write_to`] keep their ids unchanged.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<ParsedEdgeList, GraphError> {
    let mut report = DropReport::default();
    let mut raw: Vec<(String, String, i64)> = Vec::new();
    let mut declared_nodes = None;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        report.lines_read += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('%') {
            if let Some(n) = parse_node_header(trimmed) {
                declared_nodes = Some(n);
            }
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        let ts_tok = match toks.len() {
            1 => {
                return Err(GraphError::Parse {
                    line: lineno,
                    reason: format!("expected at least two columns, found `{trimmed}`"),
                })
            }
            2 => {
                report.missing_ts_dropped += 1;
                continue;
            }
            3 => toks[2],
            _ => toks[3],
        };
        let ts = parse_timestamp(ts_tok).ok_or_else(|| GraphError::Parse {
            line: lineno,
            reason: format!("unparseable timestamp `{ts_tok}`"),
        })?;
        raw.push((toks[0].to_string(), toks[1].to_string(), ts));
    }

    if raw.is_empty() {
        return Err(GraphError::EmptyDataset);
    }

    let mut distinct: Vec<&str> = raw
        .iter()
        .flat_map(|(a, b, _)| [a.as_str(), b.as_str()])
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    let numeric: Option<Vec<i64>> = distinct.iter().map(|s| s.parse::<i64>().ok()).collect();

    let labels: Vec<String> = match (declared_nodes, &numeric) {
        (Some(n), Some(nums)) if nums.iter().all(|&x| x >= 0 && (x as usize) < n) => {
            (0..n).map(|i| i.to_string()).collect()
        }
        (_, Some(_)) => {
            distinct.sort_by_key(|s| s.parse::<i64>().unwrap());
            distinct.iter().map(|s| s.to_string()).collect()
        }
        (_, None) => {
            distinct.sort_unstable();
            distinct.iter().map(|s| s.to_string()).collect()
        }
    };
    let index: HashMap<&str, NodeId> = labels
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i as NodeId))
        .collect();

    let edges: Vec<TemporalEdge> = raw
        .iter()
        .map(|(a, b, ts)| TemporalEdge::new(index[a.as_str()], index[b.as_str()], *ts))
        .collect();
    report.edges_kept = edges.len();
    let node_count = labels.len();
    Ok(ParsedEdgeList {
        edges: TemporalEdgeList::new(edges, node_count)?,
        labels,
        report,
    })
}

/// Maps raw timestamps onto (real-valued) snapshot indices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnapshotConfig {
    pub period: f64,
    pub origin: i64,
}

impl SnapshotConfig {
    pub fn new(period: f64, origin: i64) -> Result<Self, GraphError> {
        if !(period.is_finite() && period > 0.0) {
            return Err(GraphError::InvalidPeriod(period));
        }
        Ok(Self { period, origin })
    }

    pub fn snapshot_index(&self, ts: i64) -> Result<f64, GraphError> {
        if ts < self.origin {
            return Err(GraphError::BeforeOrigin {
                ts,
                origin: self.origin,
            });
        }
        Ok((ts - self.origin) as f64 / self.period)
    }
}

impl Default for SnapshotConfig {
    fn default() -> Self {
        Self {
            period: 1.0,
            origin: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrainTestSplit {
    pub train: TemporalEdgeList,
    pub test: TemporalEdgeList,
    /// Last timestamp that belongs to the training history.
    pub t_split: i64,
    /// Pairs linked in test but never in train, sorted.
    pub positives: Vec<NodePair>,
}

impl TrainTestSplit {
    pub fn train_fraction(&self) -> f64 {
        self.train.len() as f64 / (self.train.len() + self.test.len()) as f64
    }
}

/// Splits in time so that roughly `ratio` of the edges form the training
/// history. Every edge sharing the cut timestamp stays in train.
pub fn split_by_time(list: &TemporalEdgeList, ratio: f64) -> Result<TrainTestSplit, GraphError> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(GraphError::InvalidRatio(ratio));
    }
    if list.is_empty() {
        return Err(GraphError::EmptyDataset);
    }
    let n = list.len();
    let want = ((ratio * n as f64) - 1e-9).ceil().max(1.0) as usize;
    let t_split = list.edges[want.min(n) - 1].ts;
    let cut = list.edges.partition_point(|e| e.ts <= t_split);
    if cut == n {
        return Err(GraphError::SplitImpossible(
            "no edge is later than the cut timestamp",
        ));
    }
    let train = TemporalEdgeList {
        edges: list.edges[..cut].to_vec(),
        node_count: list.node_count,
    };
    let test = TemporalEdgeList {
        edges: list.edges[cut..].to_vec(),
        node_count: list.node_count,
    };
    let linked = train.linked_pairs();
    let mut positives: Vec<NodePair> = test
        .linked_pairs()
        .into_iter()
        .filter(|p| p.0 != p.1 && !linked.contains(p))
        .collect();
    positives.sort_unstable();
    Ok(TrainTestSplit {
        train,
        test,
        t_split,
        positives,
    })
}
