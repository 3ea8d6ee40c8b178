//! Browser bindings for the TLPSS toolkit.
//!
//! The plain functions return serde structs and are tested natively; the
//! `#[wasm_bindgen]` wrappers hand JSON strings to the page.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use tlpss::decay::asf_log_excess;
use tlpss::prelude::*;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub floor: f64,
    pub ceiling: f64,
}

fn grid(x_max: f64, samples: usize) -> Result<Vec<f64>, String> {
    if !(x_max > 0.0 && x_max.is_finite()) || samples < 2 {
        return Err("need x_max > 0 and at least two samples".into());
    }
    Ok((0..samples)
        .map(|i| x_max * i as f64 / (samples - 1) as f64)
        .collect())
}

pub fn asf_curve(p: f64, q: f64, a: f64, x_max: f64, samples: usize) -> Result<Curve, String> {
    let prm = DecayParams::new(p, q, a).map_err(|e| e.to_string())?;
    let x = grid(x_max, samples)?;
    let y = x.iter().map(|&v| asf(v, &prm).unwrap()).collect();
    Ok(Curve {
        x,
        y,
        floor: asf_floor(&prm),
        ceiling: prm.ceiling(),
    })
}

/// `ln(ASF - floor)` over the same grid, for plotting the tail.
pub fn asf_log_excess_curve(
    p: f64,
    q: f64,
    a: f64,
    x_max: f64,
    samples: usize,
) -> Result<Vec<f64>, String> {
    let prm = DecayParams::new(p, q, a).map_err(|e| e.to_string())?;
    Ok(grid(x_max, samples)?
        .into_iter()
        .map(|v| asf_log_excess(v, &prm).unwrap())
        .collect())
}

pub fn exp_curve(theta: f64, x_max: f64, samples: usize) -> Result<Curve, String> {
    let prm = ExpDecayParams::new(theta).map_err(|e| e.to_string())?;
    let x = grid(x_max, samples)?;
    let y = x
        .iter()
        .map(|&v| exp_decay(0.0, v, &prm).unwrap())
        .collect();
    Ok(Curve {
        x,
        y,
        floor: 0.0,
        ceiling: 1.0,
    })
}

/// KONECT-style text for a small network grown by triadic closure, one
/// timestamp per `edges / 20` insertions.
pub fn synthetic_network(
    nodes: u32,
    edges: usize,
    closure: f64,
    seed: u64,
) -> Result<String, String> {
    use rand::{Rng, SeedableRng};
    if nodes < 3 || edges == 0 || !(0.0..=1.0).contains(&closure) {
        return Err("need at least 3 nodes, 1 edge and closure in [0, 1]".into());
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nodes as usize];
    let mut out = String::from("% sym unweighted\n");
    let step = (edges / 20).max(1);
    let mut written = 0;
    while written < edges {
        let u = rng.random_range(0..nodes);
        let nu = &adj[u as usize];
        let v = if !nu.is_empty() && rng.random_bool(closure) {
            let z = nu[rng.random_range(0..nu.len())] as usize;
            adj[z][rng.random_range(0..adj[z].len())]
        } else {
            rng.random_range(0..nodes)
        };
        if u == v {
            continue;
        }
        adj[u as usize].push(v);
        adj[v as usize].push(u);
        out.push_str(&format!("{} {} 1 {}\n", u + 1, v + 1, 1 + written / step));
        written += 1;
    }
    Ok(out)
}

struct Loaded {
    list: TemporalEdgeList,
    labels: Vec<String>,
}

fn load(text: &str) -> Result<Loaded, String> {
    let parsed = parse_edge_list(text.as_bytes())
        .map_err(|e| e.to_string())?
        .normalized();
    if parsed.edges.is_empty() {
        return Err("no edges".into());
    }
    Ok(Loaded {
        list: parsed.edges,
        labels: parsed.labels,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatentEdge {
    pub from: String,
    pub to: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodScore {
    pub method: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairExplanation {
    pub x: String,
    pub y: String,
    pub reference_snapshot: f64,
    pub linked: bool,
    pub common_neighbors: Vec<String>,
    /// `H_x`: reached from `x` through a latent edge.
    pub hidden_x: Vec<String>,
    pub hidden_y: Vec<String>,
    pub latent_edges: Vec<LatentEdge>,
    pub scores: Vec<MethodScore>,
}

/// Structure behind the score of one pair, seen from the last snapshot of
/// the whole history. `x` and `y` are labels as written in the input.
pub fn explain_pair(
    text: &str,
    x: &str,
    y: &str,
    p: f64,
    q: f64,
    a: f64,
    period: f64,
) -> Result<PairExplanation, String> {
    let decay = Decay::Asf(DecayParams::new(p, q, a).map_err(|e| e.to_string())?);
    let data = load(text)?;
    let id = |label: &str| {
        data.labels
            .iter()
            .position(|l| l == label.trim())
            .map(|i| i as NodeId)
            .ok_or_else(|| format!("unknown node `{label}`"))
    };
    let (xi, yi) = (id(x)?, id(y)?);
    if xi == yi {
        return Err("pick two different nodes".into());
    }
    // normalized histories start at timestamp 1
    let snaps = SnapshotConfig::new(period, 1).map_err(|e| e.to_string())?;
    let reference = snaps
        .snapshot_index(data.list.t_max().unwrap_or(1))
        .map_err(|e| e.to_string())?;
    let adj = WeightedAdjacency::build(&data.list, reference, &decay, &snaps, Aggregation::Sum)
        .map_err(|e| e.to_string())?;
    let deg = DegreeVector::from_adjacency(&adj);
    let latent = LatentWeights::new(&adj, decay.floor());
    let scorer = Scorer::new(&adj, &deg, Some(&latent));

    let name = |v: NodeId| data.labels[v as usize].clone();
    let hx = hidden_nodes(&adj, xi, yi).nodes;
    let hy = hidden_nodes(&adj, yi, xi).nodes;
    let mut latent_edges = Vec::new();
    for (from, hs) in [(xi, &hx), (yi, &hy)] {
        for &h in hs {
            latent_edges.push(LatentEdge {
                from: name(from),
                to: name(h),
                weight: latent.get(from, h).map_err(|e| e.to_string())?,
            });
        }
    }
    let scores = MethodId::ALL
        .iter()
        .map(|&m| {
            scorer.score(m, xi, yi).map(|score| MethodScore {
                method: m.name().into(),
                score,
            })
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    Ok(PairExplanation {
        x: name(xi),
        y: name(yi),
        reference_snapshot: reference,
        linked: adj.is_adjacent(xi, yi),
        common_neighbors: common_neighbors(&adj, xi, yi)
            .into_iter()
            .map(name)
            .collect(),
        hidden_x: hx.into_iter().map(name).collect(),
        hidden_y: hy.into_iter().map(name).collect(),
        latent_edges,
        scores,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodResult {
    pub method: String,
    pub auc: f64,
    pub precision: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationSummary {
    pub nodes: usize,
    pub train_edges: usize,
    pub test_edges: usize,
    pub positives: usize,
    pub negatives: usize,
    pub top_l: usize,
    pub results: Vec<MethodResult>,
}

/// Time-ordered split, candidate sampling and all seven methods.
#[allow(clippy::too_many_arguments)]
pub fn evaluate_text(
    text: &str,
    ratio: f64,
    p: f64,
    q: f64,
    a: f64,
    period: f64,
    top_l: usize,
    seed: u64,
) -> Result<EvaluationSummary, String> {
    let decay = Decay::Asf(DecayParams::new(p, q, a).map_err(|e| e.to_string())?);
    let data = load(text)?;
    let snapshots = SnapshotConfig::new(period, 1).map_err(|e| e.to_string())?;
    let prepared =
        PreparedEvaluation::new(&data.list, ratio, seed, None).map_err(|e| e.to_string())?;
    let cands = &prepared.candidates;
    let top_l = top_l.clamp(1, cands.positives.len() + cands.negatives.len());
    let settings = RunSettings {
        decay,
        snapshots,
        top_l,
        seed,
        ..RunSettings::default()
    };
    let reports =
        evaluate_methods(&prepared, &MethodId::ALL, &settings).map_err(|e| e.to_string())?;
    Ok(EvaluationSummary {
        nodes: prepared.node_count,
        train_edges: prepared.split.train.len(),
        test_edges: prepared.split.test.len(),
        positives: cands.positives.len(),
        negatives: cands.negatives.len(),
        top_l,
        results: reports
            .into_iter()
            .map(|r| MethodResult {
                method: r.method.name().into(),
                auc: r.auc,
                precision: r.precision,
            })
            .collect(),
    })
}

// seeds cross the boundary as u32 so the page can pass plain numbers

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.map(|v| serde_json::to_string(&v).expect("serializable"))
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = asfCurve)]
pub fn asf_curve_js(p: f64, q: f64, a: f64, x_max: f64, samples: usize) -> Result<String, JsValue> {
    to_js(asf_curve(p, q, a, x_max, samples))
}

#[wasm_bindgen(js_name = asfLogExcessCurve)]
pub fn asf_log_excess_curve_js(
    p: f64,
    q: f64,
    a: f64,
    x_max: f64,
    samples: usize,
) -> Result<String, JsValue> {
    to_js(asf_log_excess_curve(p, q, a, x_max, samples))
}

#[wasm_bindgen(js_name = expCurve)]
pub fn exp_curve_js(theta: f64, x_max: f64, samples: usize) -> Result<String, JsValue> {
    to_js(exp_curve(theta, x_max, samples))
}

#[wasm_bindgen(js_name = syntheticNetwork)]
pub fn synthetic_network_js(
    nodes: u32,
    edges: usize,
    closure: f64,
    seed: u32,
) -> Result<String, JsValue> {
    synthetic_network(nodes, edges, closure, seed.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = explainPair)]
#[allow(clippy::too_many_arguments)]
pub fn explain_pair_js(
    text: &str,
    x: &str,
    y: &str,
    p: f64,
    q: f64,
    a: f64,
    period: f64,
) -> Result<String, JsValue> {
    to_js(explain_pair(text, x, y, p, q, a, period))
}

#[wasm_bindgen(js_name = evaluateText)]
#[allow(clippy::too_many_arguments)]
pub fn evaluate_text_js(
    text: &str,
    ratio: f64,
    p: f64,
    q: f64,
    a: f64,
    period: f64,
    top_l: usize,
    seed: u32,
) -> Result<String, JsValue> {
    to_js(evaluate_text(
        text,
        ratio,
        p,
        q,
        a,
        period,
        top_l,
        seed.into(),
    ))
}
