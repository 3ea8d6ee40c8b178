//! Temporal link prediction on timestamped edge lists.
//!
//! Edges are weighted by an adjusted sigmoid time decay, pairs are scored by
//! TLPSS (common-neighbor terms plus latent edges to hidden nodes) or by one
//! of six decayed baseline indices, and predictions are evaluated on a
//! time-ordered split with AUC and precision@L.
//!
//! ```
//! use tlpss::prelude::*;
//!
//! let text = "0 2 1 1\n1 2 1 2\n2 3 1 3\n0 3 1 4\n1 3 1 9\n";
//! let list = parse_edge_list(text.as_bytes()).unwrap().normalized().edges;
//! let split = split_by_time(&list, 0.8).unwrap();
//! let decay = Decay::Asf(DecayParams::with_default_a(1.0, 1.0).unwrap());
//! let snaps = SnapshotConfig::default();
//! let t = snaps.snapshot_index(split.t_split).unwrap();
//! let adj = WeightedAdjacency::build(&split.train, t, &decay, &snaps, Aggregation::Sum).unwrap();
//! let deg = DegreeVector::from_adjacency(&adj);
//! let latent = LatentWeights::new(&adj, decay.floor());
//! let scorer = Scorer::new(&adj, &deg, Some(&latent));
//! assert!(scorer.score(MethodId::Tlpss, 0, 1).unwrap() > 0.0);
//! ```

#[cfg(feature = "cli")]
pub mod cli;
pub mod decay;
pub mod eval;
pub mod graph;
pub mod matrices;
pub mod predictors;

pub mod prelude {
    pub use crate::decay::{asf, asf_floor, exp_decay, Decay, DecayParams, ExpDecayParams};
    pub use crate::eval::{
        auc, auc_exhaustive, auc_sampled, build_candidates, evaluate, evaluate_methods,
        precision_at_l, sweep, AucPolicy, CandidateSet, EvalReport, PreparedEvaluation,
        RunSettings, SweepParam,
    };
    pub use crate::graph::{
        canonical, parse_edge_list, split_by_time, NodeId, NodePair, SnapshotConfig, TemporalEdge,
        TemporalEdgeList, TrainTestSplit,
    };
    pub use crate::matrices::{
        common_neighbors, hidden_nodes, latent_weight, scale_factor, Aggregation, DegreeVector,
        LatentWeights, WeightedAdjacency,
    };
    pub use crate::predictors::{CclpMode, MethodId, ScoreTable, Scorer};
}
