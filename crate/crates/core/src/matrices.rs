//! Decayed adjacency, weighted degrees, hidden nodes and latent edges.
//!
//! The adjacency is stored CSR style with per-node neighbor lists sorted by
//! id, so neighborhood intersections are linear merges.

use std::collections::BTreeMap;
use std::io::Write;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decay::{Decay, DecayError};
use crate::graph::{canonical, GraphError, NodeId, NodePair, SnapshotConfig, TemporalEdgeList};

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("edge at timestamp {ts} lies after the reference snapshot {reference}")]
    EdgeAfterReference { ts: i64, reference: f64 },
    #[error("pair ({0}, {1}) is adjacent; latent weights exist only for unlinked pairs")]
    AdjacentPair(NodeId, NodeId),
    #[error("pair endpoints must differ, got ({0}, {0})")]
    SelfPair(NodeId),
    #[error(transparent)]
    Decay(#[from] DecayError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// How multi-edges on one pair combine into a single weight.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    /// Sum of the decayed weight of every multi-edge.
    #[default]
    Sum,
    /// Decayed weight of the most recent multi-edge only.
    Latest,
}

/// Sparse symmetric adjacency `A^T` with decayed weights.
#[derive(Debug, Clone)]
pub struct WeightedAdjacency {
    reference_time: f64,
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    weights: Vec<f64>,
    multiplicity: Vec<u32>,
}

impl WeightedAdjacency {
    /// Builds `A^T` from the training history at reference snapshot `reference`.
    pub fn build(
        train: &TemporalEdgeList,
        reference: f64,
        decay: &Decay,
        snapshots: &SnapshotConfig,
        aggregation: Aggregation,
    ) -> Result<Self, MatrixError> {
        let mut per_pair: Vec<(NodePair, i64)> = train
            .edges()
            .iter()
            .filter(|e| e.u != e.v)
            .map(|e| (e.pair(), e.ts))
            .collect();
        // stable: ties keep time order within each pair
        per_pair.sort_by_key(|(p, _)| *p);

        let mut cells: Vec<(NodePair, f64, u32)> = Vec::new();
        for (pair, ts) in per_pair {
            let elapsed = reference - snapshots.snapshot_index(ts)?;
            if elapsed < 0.0 {
                return Err(MatrixError::EdgeAfterReference { ts, reference });
            }
            let w = decay.weight(elapsed)?;
            match cells.last_mut() {
                Some((p, acc, m)) if *p == pair => {
                    *m += 1;
                    match aggregation {
                        Aggregation::Sum => *acc += w,
                        Aggregation::Latest => *acc = w,
                    }
                }
                _ => cells.push((pair, w, 1)),
            }
        }
        cells.retain(|(_, w, _)| *w > 0.0);

        let n = train.node_count();
        let mut deg = vec![0usize; n];
        for ((u, v), _, _) in &cells {
            deg[*u as usize] += 1;
            deg[*v as usize] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + deg[i];
        }
        let total = offsets[n];
        let mut targets = vec![0; total];
        let mut weights = vec![0.0; total];
        let mut multiplicity = vec![0; total];
        let mut cursor = offsets[..n].to_vec();
        // cells are sorted by (u, v): filling each row with its smaller
        // neighbors first and then its larger ones keeps
        // every row sorted
        for &((u, v), w, m) in &cells {
            let c = &mut cursor[v as usize];
            targets[*c] = u;
            weights[*c] = w;
            multiplicity[*c] = m;
            *c += 1;
        }
        for &((u, v), w, m) in &cells {
            let c = &mut cursor[u as usize];
            targets[*c] = v;
            weights[*c] = w;
            multiplicity[*c] = m;
            *c += 1;
        }
        debug_assert!((0..n).all(|i| targets[offsets[i]..offsets[i + 1]]
            .windows(2)
            .all(|w| w[0] < w[1])));
        Ok(Self {
            reference_time: reference,
            offsets,
            targets,
            weights,
            multiplicity,
        })
    }

    pub fn reference_time(&self) -> f64 {
        self.reference_time
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Sorted distinct neighbors of `v`.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Weights aligned with [`Self::neighbors`].
    #[inline]
    pub fn neighbor_weights(&self, v: NodeId) -> &[f64] {
        let v = v as usize;
        &self.weights[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    fn slot(&self, i: NodeId, j: NodeId) -> Option<usize> {
        if i as usize >= self.node_count() {
            return None;
        }
        self.neighbors(i)
            .binary_search(&j)
            .ok()
            .map(|k| self.offsets[i as usize] + k)
    }

    /// `A^T(i, j)`, zero when unlinked.
    #[inline]
    pub fn weight(&self, i: NodeId, j: NodeId) -> f64 {
        self.slot(i, j).map_or(0.0, |k| self.weights[k])
    }

    /// Number of training edges on the pair.
    #[inline]
    pub fn multiplicity(&self, i: NodeId, j: NodeId) -> u32 {
        self.slot(i, j).map_or(0, |k| self.multiplicity[k])
    }

    #[inline]
    pub fn is_adjacent(&self, i: NodeId, j: NodeId) -> bool {
        self.slot(i, j).is_some()
    }

    /// Unweighted degree (distinct neighbors).
    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.neighbors(v).len()
    }

    /// Every stored cell once, as `(i, j, weight)` with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        (0..self.node_count() as NodeId).flat_map(move |i| {
            self.neighbors(i)
                .iter()
                .zip(self.neighbor_weights(i))
                .filter(move |(&j, _)| i < j)
                .map(move |(&j, &w)| (i, j, w))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Debug dump of `A^T` as `i\tj\tweight` lines.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (i, j, w) in self.entries() {
            writeln!(out, "{i}\t{j}\t{w:.17e}")?;
        }
        out.flush()
    }
}

/// Weighted degree `w^T(v)` and distinct-neighbor degree `d(v)` per node.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeVector {
    pub weighted: Vec<f64>,
    pub distinct: Vec<usize>,
}

impl DegreeVector {
    pub fn from_adjacency(adj: &WeightedAdjacency) -> Self {
        let n = adj.node_count() as NodeId;
        Self {
            weighted: (0..n)
                .map(|v| adj.neighbor_weights(v).iter().fold(0.0, |acc, w| acc + w))
                .collect(),
            distinct: (0..n).map(|v| adj.degree(v)).collect(),
        }
    }

    #[inline]
    pub fn w(&self, v: NodeId) -> f64 {
        self.weighted[v as usize]
    }

    #[inline]
    pub fn d(&self, v: NodeId) -> usize {
        self.distinct[v as usize]
    }
}

/// Merge-walks two sorted lists and calls `f` on every shared element with
/// its index in each list.
#[inline]
pub(crate) fn for_each_shared(a: &[NodeId], b: &[NodeId], mut f: impl FnMut(NodeId, usize, usize)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(a[i], i, j);
                i += 1;
                j += 1;
            }
        }
    }
}

#[inline]
fn shares_any(a: &[NodeId], b: &[NodeId]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// `Γ(x) ∩ Γ(y)` without the endpoints, ascending.
pub fn common_neighbors(adj: &WeightedAdjacency, x: NodeId, y: NodeId) -> Vec<NodeId> {
    let mut out = Vec::new();
    for_each_shared(adj.neighbors(x), adj.neighbors(y), |z, _, _| {
        if z != x && z != y {
            out.push(z);
        }
    });
    out
}

/// Hidden nodes of one endpoint relative to a target pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HiddenNodeSet {
    pub endpoint: NodeId,
    pub nodes: Vec<NodeId>,
}

/// `H_x`: neighbors of `y` that are not neighbors of `x` but share at least
/// one neighbor with `x`.
pub fn hidden_nodes(adj: &WeightedAdjacency, x: NodeId, y: NodeId) -> HiddenNodeSet {
    let gx = adj.neighbors(x);
    let nodes = adj
        .neighbors(y)
        .iter()
        .copied()
        .filter(|&h| h != x && h != y)
        .filter(|h| gx.binary_search(h).is_err())
        .filter(|&h| shares_any(gx, adj.neighbors(h)))
        .collect();
    HiddenNodeSet { endpoint: x, nodes }
}

/// Scale factor of a latent edge:
/// `1/min(d(i), d(j)) · Σ_{z ∈ CN(i,j)} (A(i,z) + A(z,j)) / (m(i,z) + m(z,j))`.
pub fn scale_factor(adj: &WeightedAdjacency, i: NodeId, j: NodeId) -> f64 {
    let min_deg = adj.degree(i).min(adj.degree(j));
    if min_deg == 0 {
        return 0.0;
    }
    let (gi, gj) = (adj.neighbors(i), adj.neighbors(j));
    let base_i = adj.offsets[i as usize];
    let base_j = adj.offsets[j as usize];
    let mut sum = 0.0;
    for_each_shared(gi, gj, |z, ki, kj| {
        if z == i || z == j {
            return;
        }
        let (ki, kj) = (base_i + ki, base_j + kj);
        let num = adj.weights[ki] + adj.weights[kj];
        let den = (adj.multiplicity[ki] + adj.multiplicity[kj]) as f64;
        sum += num / den;
    });
    sum / min_deg as f64
}

/// `B^T(i, j) = floor · scale_factor(i, j)` for an unlinked pair.
pub fn latent_weight(
    adj: &WeightedAdjacency,
    i: NodeId,
    j: NodeId,
    floor: f64,
) -> Result<f64, MatrixError> {
    if i == j {
        return Err(MatrixError::SelfPair(i));
    }
    if adj.is_adjacent(i, j) {
        return Err(MatrixError::AdjacentPair(i, j));
    }
    if floor == 0.0 {
        return Ok(0.0);
    }
    Ok(floor * scale_factor(adj, i, j))
}

/// Lazily evaluated, memoized latent matrix `B^T`.
///
/// Safe to query from many threads; two threads may compute the same cell,
/// which is harmless since the value is deterministic.
#[derive(Debug)]
pub struct LatentWeights<'a> {
    adj: &'a WeightedAdjacency,
    floor: f64,
    memo: DashMap<NodePair, f64>,
}

impl<'a> LatentWeights<'a> {
    pub fn new(adj: &'a WeightedAdjacency, floor: f64) -> Self {
        Self {
            adj,
            floor,
            memo: DashMap::new(),
        }
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn adjacency(&self) -> &'a WeightedAdjacency {
        self.adj
    }

    pub fn get(&self, i: NodeId, j: NodeId) -> Result<f64, MatrixError> {
        let key = canonical(i, j);
        if let Some(v) = self.memo.get(&key) {
            return Ok(*v);
        }
        // scale factor is symmetric, so computing on the canonical pair is exact
        let v = latent_weight(self.adj, key.0, key.1, self.floor)?;
        self.memo.insert(key, v);
        Ok(v)
    }

    /// Computes every cell of `B^T` for unlinked pairs. Intended for small
    /// graphs only.
    pub fn materialize_all(&self) -> BTreeMap<NodePair, f64> {
        let n = self.adj.node_count() as NodeId;
        let mut all = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if let Ok(v) = self.get(i, j) {
                    all.insert((i, j), v);
                }
            }
        }
        all
    }

    /// Cells computed so far, sorted by pair.
    pub fn queried_cells(&self) -> Vec<(NodePair, f64)> {
        let mut cells: Vec<_> = self.memo.iter().map(|r| (*r.key(), *r.value())).collect();
        cells.sort_by_key(|c| c.0);
        cells
    }

    /// Debug dump of the queried cells as `i\tj\tweight` lines.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for ((i, j), w) in self.queried_cells() {
            writeln!(out, "{i}\t{j}\t{w:.17e}")?;
        }
        out.flush()
    }
}
