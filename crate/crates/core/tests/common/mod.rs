//! Brute-force reference implementations for tests.
//!
//! Everything here is re-derived from the definitions on dense matrices with
//! fresh neighbor scans per query. Nothing is shared with the library's
//! neighbor index, intersection or scoring code.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tlpss::prelude::*;

/// Small timestamped multigraph.
#[derive(Debug, Clone)]
pub struct ToyGraph {
    pub n: usize,
    pub edges: Vec<(u32, u32, i64)>,
}

impl ToyGraph {
    /// Random multigraph: `4..=max_nodes` nodes, repeated pairs and shared
    /// timestamps are common.
    pub fn random(seed: u64, max_nodes: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(4..=max_nodes);
        let m = rng.random_range(n..=3 * n);
        let t_hi = rng.random_range(2..=30i64);
        let mut edges = Vec::with_capacity(m);
        while edges.len() < m {
            let u = rng.random_range(0..n as u32);
            let v = rng.random_range(0..n as u32);
            if u == v {
                continue;
            }
            let ts = rng.random_range(1..=t_hi);
            edges.push((u, v, ts));
            // duplicate pair with a fresh or identical timestamp
            if rng.random_bool(0.2) {
                let ts2 = if rng.random_bool(0.5) {
                    ts
                } else {
                    rng.random_range(1..=t_hi)
                };
                edges.push((v, u, ts2));
            }
        }
        Self { n, edges }
    }

    pub fn edge_list(&self) -> TemporalEdgeList {
        TemporalEdgeList::new(
            self.edges
                .iter()
                .map(|&(u, v, t)| TemporalEdge::new(u, v, t))
                .collect(),
            self.n,
        )
        .unwrap()
    }

    pub fn t_min(&self) -> i64 {
        self.edges.iter().map(|e| e.2).min().unwrap()
    }

    pub fn t_max(&self) -> i64 {
        self.edges.iter().map(|e| e.2).max().unwrap()
    }
}

/// Decay parameters plus the time frame, as plain numbers.
#[derive(Debug, Clone, Copy)]
pub struct OracleParams {
    pub p: f64,
    pub q: f64,
    pub a: f64,
    pub period: f64,
    pub origin: i64,
    pub reference: f64,
}

impl OracleParams {
    pub fn random(rng: &mut impl Rng, toy: &ToyGraph) -> Self {
        let period = [1.0, 2.0, 3.5, 7.0][rng.random_range(0..4)];
        let origin = toy.t_min();
        Self {
            p: rng.random_range(0.3..8.0),
            q: rng.random_range(0.05..5.0),
            a: rng.random_range(1.0..8.0),
            period,
            origin,
            reference: (toy.t_max() - origin) as f64 / period,
        }
    }

    pub fn with_q(self, q: f64) -> Self {
        Self { q, ..self }
    }

    pub fn decay(&self) -> Decay {
        Decay::Asf(DecayParams::new(self.p, self.q, self.a).unwrap())
    }

    pub fn snapshots(&self) -> SnapshotConfig {
        SnapshotConfig::new(self.period, self.origin).unwrap()
    }
}

fn oracle_asf(x: f64, p: f64, q: f64, a: f64) -> f64 {
    let sigmoid = 1.0 / (1.0 + (x / p - a).exp());
    (sigmoid + q) / (q + 1.0)
}

/// Dense `A` and multiplicity matrices built straight from the edge list.
pub struct NaiveModel {
    pub n: usize,
    pub a: Vec<Vec<f64>>,
    pub m: Vec<Vec<u32>>,
    pub floor: f64,
}

impl NaiveModel {
    pub fn new(toy: &ToyGraph, prm: &OracleParams) -> Self {
        let n = toy.n;
        let mut a = vec![vec![0.0; n]; n];
        let mut m = vec![vec![0u32; n]; n];
        for &(u, v, ts) in &toy.edges {
            if u == v {
                continue;
            }
            let elapsed = prm.reference - (ts - prm.origin) as f64 / prm.period;
            let w = oracle_asf(elapsed, prm.p, prm.q, prm.a);
            let (u, v) = (u as usize, v as usize);
            a[u][v] += w;
            a[v][u] += w;
            m[u][v] += 1;
            m[v][u] += 1;
        }
        Self {
            n,
            a,
            m,
            floor: prm.q / (prm.q + 1.0),
        }
    }

    pub fn linked(&self, i: usize, j: usize) -> bool {
        self.a[i][j] > 0.0
    }

    pub fn gamma(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&z| self.a[v][z] > 0.0).collect()
    }

    pub fn w(&self, v: usize) -> f64 {
        (0..self.n).map(|z| self.a[v][z]).sum()
    }

    pub fn d(&self, v: usize) -> usize {
        self.gamma(v).len()
    }

    pub fn cn(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| z != x && z != y && self.linked(x, z) && self.linked(y, z))
            .collect()
    }

    pub fn hidden(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&h| {
                h != x
                    && h != y
                    && self.linked(y, h)
                    && !self.linked(x, h)
                    && (0..self.n).any(|k| self.linked(x, k) && self.linked(h, k))
            })
            .collect()
    }

    pub fn scale_factor(&self, i: usize, j: usize) -> f64 {
        let cn = self.cn(i, j);
        if cn.is_empty() {
            return 0.0;
        }
        let s: f64 = cn
            .iter()
            .map(|&z| (self.a[i][z] + self.a[z][j]) / (self.m[i][z] + self.m[z][j]) as f64)
            .sum();
        s / self.d(i).min(self.d(j)) as f64
    }

    pub fn latent(&self, i: usize, j: usize) -> f64 {
        assert!(!self.linked(i, j));
        self.floor * self.scale_factor(i, j)
    }

    fn links_among(&self, set: &[usize]) -> f64 {
        let mut total = 0.0;
        for (k, &u) in set.iter().enumerate() {
            for &v in &set[k + 1..] {
                total += self.a[u][v];
            }
        }
        total
    }

    fn triangle_weight(&self, z: usize) -> f64 {
        self.links_among(&self.gamma(z))
    }

    pub fn score(&self, method: MethodId, x: usize, y: usize) -> f64 {
        let cn = self.cn(x, y);
        let cn_asf = 0.5 * cn.iter().map(|&z| self.a[x][z] + self.a[y][z]).sum::<f64>();
        match method {
            MethodId::Cn => cn_asf,
            MethodId::Ja => {
                let den = self.w(x) + self.w(y);
                if den > 0.0 {
                    cn_asf / den
                } else {
                    0.0
                }
            }
            MethodId::Pa => self.w(x) * self.w(y),
            MethodId::Ra => cn.iter().map(|&z| 1.0 / self.w(z)).sum(),
            MethodId::Car => cn_asf * self.links_among(&cn),
            MethodId::Cclp => cn
                .iter()
                .map(|&z| {
                    let d = self.d(z) as f64;
                    let pairs = d * (d - 1.0) / 2.0;
                    if pairs > 0.0 {
                        self.triangle_weight(z) / pairs
                    } else {
                        0.0
                    }
                })
                .sum(),
            MethodId::Tlpss => 0.5 * (self.directed(x, y) + self.directed(y, x)),
        }
    }

    fn directed(&self, x: usize, y: usize) -> f64 {
        let common: f64 = self
            .cn(x, y)
            .iter()
            .map(|&z| self.a[x][z] / self.w(z))
            .sum();
        let hidden: f64 = self
            .hidden(x, y)
            .iter()
            .map(|&h| self.latent(x, h) / self.w(h))
            .sum();
        common + hidden
    }

    /// All unordered pairs that are unlinked.
    pub fn unlinked_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if !self.linked(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// AUC by enumerating every positive/negative comparison.
pub fn exhaustive_auc(pos: &[f64], neg: &[f64]) -> f64 {
    let mut wins = 0.0;
    for &p in pos {
        for &n in neg {
            if p > n {
                wins += 1.0;
            } else if p == n {
                wins += 0.5;
            }
        }
    }
    wins / (pos.len() * neg.len()) as f64
}

/// Production pipeline for a toy graph: adjacency, degrees, latent provider.
pub struct Built {
    pub adj: WeightedAdjacency,
    pub deg: DegreeVector,
    pub floor: f64,
}

impl Built {
    pub fn new(toy: &ToyGraph, prm: &OracleParams) -> Self {
        let decay = prm.decay();
        let adj = WeightedAdjacency::build(
            &toy.edge_list(),
            prm.reference,
            &decay,
            &prm.snapshots(),
            Aggregation::Sum,
        )
        .unwrap();
        let deg = DegreeVector::from_adjacency(&adj);
        Self {
            adj,
            deg,
            floor: decay.floor(),
        }
    }
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    let scale = a.abs().max(b.abs());
    (a - b).abs() <= tol * scale.max(f64::MIN_POSITIVE) || a == b
}
