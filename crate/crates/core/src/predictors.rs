//! TLPSS and the ASF-weighted baseline similarity indices.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decay::Decay;
use crate::graph::{canonical, NodeId, NodePair};
use crate::matrices::{
    common_neighbors, for_each_shared, hidden_nodes, DegreeVector, LatentWeights, MatrixError,
    WeightedAdjacency,
};

#[derive(Debug, Error)]
pub enum ScoreError {
    #[error("pair endpoints must differ, got ({0}, {0})")]
    SelfPair(NodeId),
    #[error("unknown method `{0}`")]
    UnknownMethod(String),
    #[error("TLPSS scoring needs a latent weight provider")]
    MissingLatent,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MethodId {
    #[serde(rename = "TLPSS")]
    Tlpss,
    #[serde(rename = "CN_ASF")]
    Cn,
    #[serde(rename = "JA_ASF")]
    Ja,
    #[serde(rename = "PA_ASF")]
    Pa,
    #[serde(rename = "RA_ASF")]
    Ra,
    #[serde(rename = "CAR_ASF")]
    Car,
    #[serde(rename = "CCLP_ASF")]
    Cclp,
}

impl MethodId {
    pub const ALL: [MethodId; 7] = [
        MethodId::Cn,
        MethodId::Ja,
        MethodId::Pa,
        MethodId::Ra,
        MethodId::Car,
        MethodId::Cclp,
        MethodId::Tlpss,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodId::Tlpss => "TLPSS",
            MethodId::Cn => "CN_ASF",
            MethodId::Ja => "JA_ASF",
            MethodId::Pa => "PA_ASF",
            MethodId::Ra => "RA_ASF",
            MethodId::Car => "CAR_ASF",
            MethodId::Cclp => "CCLP_ASF",
        }
    }

    pub fn needs_latent(self) -> bool {
        self == MethodId::Tlpss
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodId {
    type Err = ScoreError;

    /// Accepts `CN_ASF`, `cn`, `cn-asf` and so on.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        let key = key.strip_suffix("_ASF").unwrap_or(&key);
        match key {
            "TLPSS" => Ok(MethodId::Tlpss),
            "CN" => Ok(MethodId::Cn),
            "JA" | "JACCARD" => Ok(MethodId::Ja),
            "PA" => Ok(MethodId::Pa),
            "RA" => Ok(MethodId::Ra),
            "CAR" => Ok(MethodId::Car),
            "CCLP" => Ok(MethodId::Cclp),
            _ => Err(ScoreError::UnknownMethod(s.to_string())),
        }
    }
}

/// Reading of the triangle weight `Δ'` in CCLP.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CclpMode {
    /// `Δ'(z)`: weight of links among the neighbors of each common neighbor `z`.
    #[default]
    PerNode,
    /// One `Δ'` for the pair: the sum of `Δ'(z)` over all common neighbors,
    /// shared by every term.
    Global,
}

/// Scores node pairs against one decayed snapshot.
pub struct Scorer<'a> {
    adj: &'a WeightedAdjacency,
    deg: &'a DegreeVector,
    latent: Option<&'a LatentWeights<'a>>,
    cclp_mode: CclpMode,
    triangle_weight: OnceLock<Vec<f64>>,
}

struct Shared {
    z: NodeId,
    w_xz: f64,
    w_yz: f64,
}

#[inline]
fn sum(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, |acc, v| acc + v)
}

impl<'a> Scorer<'a> {
    pub fn new(
        adj: &'a WeightedAdjacency,
        deg: &'a DegreeVector,
        latent: Option<&'a LatentWeights<'a>>,
    ) -> Self {
        Self {
            adj,
            deg,
            latent,
            cclp_mode: CclpMode::default(),
            triangle_weight: OnceLock::new(),
        }
    }

    pub fn with_cclp_mode(mut self, mode: CclpMode) -> Self {
        self.cclp_mode = mode;
        self
    }

    pub fn adjacency(&self) -> &'a WeightedAdjacency {
        self.adj
    }

    pub fn degrees(&self) -> &'a DegreeVector {
        self.deg
    }

    fn shared(&self, x: NodeId, y: NodeId) -> Vec<Shared> {
        let (wx, wy) = (self.adj.neighbor_weights(x), self.adj.neighbor_weights(y));
        let mut out = Vec::new();
        for_each_shared(self.adj.neighbors(x), self.adj.neighbors(y), |z, i, j| {
            if z != x && z != y {
                out.push(Shared {
                    z,
                    w_xz: wx[i],
                    w_yz: wy[j],
                });
            }
        });
        out
    }

    pub fn score(&self, method: MethodId, x: NodeId, y: NodeId) -> Result<f64, ScoreError> {
        if x == y {
            return Err(ScoreError::SelfPair(x));
        }
        Ok(match method {
            MethodId::Tlpss => return self.tlpss(x, y),
            MethodId::Cn => self.cn(x, y),
            MethodId::Ja => self.ja(x, y),
            MethodId::Pa => self.pa(x, y),
            MethodId::Ra => self.ra(x, y),
            MethodId::Car => self.car(x, y),
            MethodId::Cclp => self.cclp(x, y),
        })
    }

    /// One-sided score: CN terms from `A^T(x, ·)` plus latent-edge terms
    /// from `B^T(x, h)` over the hidden nodes of `x`.
    pub fn tlpss_directed(&self, x: NodeId, y: NodeId) -> Result<f64, ScoreError> {
        if x == y {
            return Err(ScoreError::SelfPair(x));
        }
        let latent = self.latent.ok_or(ScoreError::MissingLatent)?;
        let cn_part = sum(self.shared(x, y).iter().map(|s| s.w_xz / self.deg.w(s.z)));
        let mut latent_part = 0.0;
        if latent.floor() > 0.0 {
            for h in hidden_nodes(self.adj, x, y).nodes {
                latent_part += latent.get(x, h)? / self.deg.w(h);
            }
        }
        Ok(cn_part + latent_part)
    }

    /// `½ (score(x→y) + score(y→x))`.
    pub fn tlpss(&self, x: NodeId, y: NodeId) -> Result<f64, ScoreError> {
        let xy = self.tlpss_directed(x, y)?;
        let yx = self.tlpss_directed(y, x)?;
        Ok(0.5 * (xy + yx))
    }

    /// `½ Σ_{z ∈ CN} (A(x,z) + A(y,z))`
    pub fn cn(&self, x: NodeId, y: NodeId) -> f64 {
        0.5 * sum(self.shared(x, y).iter().map(|s| s.w_xz + s.w_yz))
    }

    /// `CN_ASF / (w(x) + w(y))`, zero when both endpoints carry no weight.
    pub fn ja(&self, x: NodeId, y: NodeId) -> f64 {
        let den = self.deg.w(x) + self.deg.w(y);
        if den > 0.0 {
            self.cn(x, y) / den
        } else {
            0.0
        }
    }

    pub fn pa(&self, x: NodeId, y: NodeId) -> f64 {
        self.deg.w(x) * self.deg.w(y)
    }

    pub fn ra(&self, x: NodeId, y: NodeId) -> f64 {
        sum(self.shared(x, y).iter().map(|s| 1.0 / self.deg.w(s.z)))
    }

    /// Weight of links among common neighbors, each link counted once.
    fn links_among(&self, cn: &[NodeId]) -> f64 {
        let mut total = 0.0;
        for &z1 in cn {
            let w1 = self.adj.neighbor_weights(z1);
            for_each_shared(self.adj.neighbors(z1), cn, |z2, i, _| {
                if z2 > z1 {
                    total += w1[i];
                }
            });
        }
        total
    }

    /// `CN_ASF(x,y) · LCL'(x,y)`
    pub fn car(&self, x: NodeId, y: NodeId) -> f64 {
        let cn = common_neighbors(self.adj, x, y);
        if cn.len() < 2 {
            return 0.0;
        }
        self.cn(x, y) * self.links_among(&cn)
    }

    fn triangle_weights(&self) -> &[f64] {
        self.triangle_weight.get_or_init(|| {
            let mut tri = vec![0.0; self.adj.node_count()];
            for (u, v, w) in self.adj.entries() {
                for_each_shared(self.adj.neighbors(u), self.adj.neighbors(v), |z, _, _| {
                    tri[z as usize] += w;
                });
            }
            tri
        })
    }

    /// `Σ_{z ∈ CN} Δ' / (d(z)(d(z)−1)/2)`
    pub fn cclp(&self, x: NodeId, y: NodeId) -> f64 {
        let cn = common_neighbors(self.adj, x, y);
        if cn.is_empty() {
            return 0.0;
        }
        let tri = self.triangle_weights();
        let pairs = |z: NodeId| {
            let d = self.deg.d(z) as f64;
            d * (d - 1.0) / 2.0
        };
        match self.cclp_mode {
            CclpMode::PerNode => sum(cn.iter().map(|&z| {
                let p = pairs(z);
                if p > 0.0 {
                    tri[z as usize] / p
                } else {
                    0.0
                }
            })),
            CclpMode::Global => {
                let delta = sum(cn.iter().map(|&z| tri[z as usize]));
                sum(cn.iter().map(|&z| {
                    let p = pairs(z);
                    if p > 0.0 {
                        delta / p
                    } else {
                        0.0
                    }
                }))
            }
        }
    }

    /// Scores every pair with one method. The output order follows the
    /// (canonicalized) input order no matter how work is scheduled.
    pub fn score_all(
        &self,
        pairs: &[NodePair],
        method: MethodId,
    ) -> Result<ScoreTable, ScoreError> {
        if method.needs_latent() && self.latent.is_none() {
            return Err(ScoreError::MissingLatent);
        }
        let one = |&(x, y): &NodePair| self.score(method, x, y).map(|s| (canonical(x, y), s));
        #[cfg(feature = "parallel")]
        let rows: Result<Vec<_>, _> = {
            use rayon::prelude::*;
            pairs.par_iter().map(one).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let rows: Result<Vec<_>, _> = pairs.iter().map(one).collect();
        Ok(ScoreTable {
            method,
            decay: None,
            rows: rows?,
        })
    }
}

/// Scores of one method over a list of pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreTable {
    pub method: MethodId,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decay: Option<Decay>,
    pub rows: Vec<(NodePair, f64)>,
}

impl ScoreTable {
    pub fn with_decay(mut self, decay: Decay) -> Self {
        self.decay = Some(decay);
        self
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, x: NodeId, y: NodeId) -> Option<f64> {
        let key = canonical(x, y);
        self.rows.iter().find(|(p, _)| *p == key).map(|r| r.1)
    }

    pub fn scores(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(|r| r.1)
    }

    pub fn write_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for ((u, v), s) in &self.rows {
            writeln!(out, "{u}\t{v}\t{s:.17e}")?;
        }
        out.flush()
    }
}
