//! Command-line front end: ingestion, evaluation runs, sweeps and score dumps.
//!
//! Exit codes: 0 success, 2 configuration error, 3 data error,
//! 4 evaluation impossible (nothing to predict or compare).

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::decay::{Decay, DecayError, DecayParams, ExpDecayParams, DEFAULT_A};
use crate::eval::{
    self, sweep_csv_row, AucPolicy, EvalError, EvalReport, PreparedEvaluation, RunSettings,
    SweepParam, SWEEP_CSV_HEADER,
};
use crate::graph::{parse_edge_list, GraphError, NodeId, SnapshotConfig, TemporalEdgeList};
use crate::matrices::{Aggregation, DegreeVector, LatentWeights, MatrixError, WeightedAdjacency};
use crate::predictors::{CclpMode, MethodId, ScoreError, Scorer};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("evaluation impossible: {0}")]
    EvaluationImpossible(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
            CliError::EvaluationImpossible(_) => 4,
        }
    }
}

impl From<DecayError> for CliError {
    fn from(e: DecayError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::InvalidPeriod(_) | GraphError::InvalidRatio(_) => {
                CliError::Config(e.to_string())
            }
            GraphError::SplitImpossible(_) => CliError::EvaluationImpossible(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::Graph(g) => g.into(),
            MatrixError::Decay(d) => d.into(),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<ScoreError> for CliError {
    fn from(e: ScoreError) -> Self {
        match e {
            ScoreError::Matrix(m) => m.into(),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Graph(g) => g.into(),
            EvalError::Matrix(m) => m.into(),
            EvalError::Score(s) => s.into(),
            EvalError::InvalidSweep { .. } | EvalError::InvalidTopL => {
                CliError::Config(e.to_string())
            }
            other => CliError::EvaluationImpossible(other.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}

/// Per-dataset defaults: snapshot period (seconds), best-known `p`, and top-L.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DatasetPreset {
    pub name: &'static str,
    pub period: f64,
    pub p: f64,
    pub top_l: usize,
}

const HOUR: f64 = 3600.0;
const DAY: f64 = 24.0 * HOUR;

pub const PRESETS: [DatasetPreset; 6] = [
    DatasetPreset {
        name: "contact",
        period: HOUR,
        p: 3.0,
        top_l: 100,
    },
    DatasetPreset {
        name: "dblp",
        period: 365.25 * DAY,
        p: 1.0,
        top_l: 100,
    },
    DatasetPreset {
        name: "digg",
        period: HOUR,
        p: 10.0,
        top_l: 1000,
    },
    DatasetPreset {
        name: "enron",
        period: 7.0 * DAY,
        p: 2.5,
        top_l: 100,
    },
    DatasetPreset {
        name: "facebook",
        period: DAY,
        p: 5.0,
        top_l: 1000,
    },
    DatasetPreset {
        name: "prosper",
        period: DAY,
        p: 7.0,
        top_l: 2500,
    },
];

/// Finds the preset whose name occurs in the dataset file name.
pub fn preset_for(path: &Path) -> Option<DatasetPreset> {
    let name = path.to_string_lossy().to_ascii_lowercase();
    let file = name.rsplit(['/', '\\']).next().unwrap_or(&name).to_string();
    PRESETS
        .iter()
        .find(|p| file.contains(p.name))
        .or_else(|| PRESETS.iter().find(|p| name.contains(p.name)))
        .copied()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DecayMode {
    #[default]
    Asf,
    Exp,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphConfig {
    /// Number of seed nodes drawn with the experiment seed.
    pub seeds: usize,
    pub hops: usize,
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dataset: PathBuf,
    /// Snapshot length in raw timestamp units.
    pub period: Option<f64>,
    pub decay: DecayMode,
    pub p: Option<f64>,
    pub q: f64,
    pub a: f64,
    pub theta: f64,
    pub ratio: f64,
    pub methods: Vec<MethodId>,
    pub top_l: Option<usize>,
    /// Forces sampled AUC with this many comparisons.
    pub auc_samples: Option<u64>,
    pub auc_exhaustive_limit: u64,
    pub max_negatives: Option<usize>,
    pub seed: u64,
    pub aggregation: Aggregation,
    pub cclp_mode: CclpMode,
    pub subgraph: Option<SubgraphConfig>,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            dataset: PathBuf::new(),
            period: None,
            decay: DecayMode::Asf,
            p: None,
            q: 1.0,
            a: DEFAULT_A,
            theta: 0.1,
            ratio: 0.9,
            methods: MethodId::ALL.to_vec(),
            top_l: None,
            auc_samples: None,
            auc_exhaustive_limit: AucPolicy::default().exhaustive_limit,
            max_negatives: None,
            seed: 42,
            aggregation: Aggregation::Sum,
            cclp_mode: CclpMode::PerNode,
            subgraph: None,
            out_dir: PathBuf::from("results"),
            format: OutputFormat::Json,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if is_json {
            serde_json::from_str(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
        } else {
            toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
        }
    }

    /// Fills period, `p` and top-L from the dataset preset (or plain
    /// fallbacks) and validates every field.
    pub fn resolve(mut self) -> Result<Self, CliError> {
        if self.dataset.as_os_str().is_empty() {
            return Err(CliError::Config("no dataset given (--dataset)".into()));
        }
        let preset = preset_for(&self.dataset);
        self.period = Some(self.period.or(preset.map(|p| p.period)).unwrap_or(1.0));
        self.p = Some(self.p.or(preset.map(|p| p.p)).unwrap_or(1.0));
        self.top_l = Some(self.top_l.or(preset.map(|p| p.top_l)).unwrap_or(100));
        if self.methods.is_empty() {
            return Err(CliError::Config("at least one method is required".into()));
        }
        self.methods.sort();
        self.methods.dedup();
        self.settings()?;
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(GraphError::InvalidRatio(self.ratio).into());
        }
        if self.top_l == Some(0) {
            return Err(CliError::Config("top-l must be at least 1".into()));
        }
        if self.auc_samples == Some(0) {
            return Err(CliError::Config("auc-samples must be positive".into()));
        }
        if !self.dataset.is_file() {
            return Err(CliError::Data(format!(
                "dataset {} not found",
                self.dataset.display()
            )));
        }
        Ok(self)
    }

    pub fn decay(&self) -> Result<Decay, CliError> {
        Ok(match self.decay {
            DecayMode::Asf => Decay::Asf(DecayParams::new(self.p.unwrap_or(1.0), self.q, self.a)?),
            DecayMode::Exp => Decay::Exp(ExpDecayParams::new(self.theta)?),
        })
    }

    pub fn settings(&self) -> Result<RunSettings, CliError> {
        let auc = match self.auc_samples {
            Some(n) => AucPolicy::sampled(n),
            None => AucPolicy {
                exhaustive_limit: self.auc_exhaustive_limit,
                ..AucPolicy::default()
            },
        };
        Ok(RunSettings {
            decay: self.decay()?,
            snapshots: SnapshotConfig::new(self.period.unwrap_or(1.0), 1)?,
            aggregation: self.aggregation,
            cclp_mode: self.cclp_mode,
            top_l: self.top_l.unwrap_or(100),
            auc,
            seed: self.seed,
        })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tlpss",
    version,
    about = "Temporal link prediction with decayed 2-simplex structure"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalize a KONECT edge list and report dropped records.
    Ingest {
        input: PathBuf,
        output: PathBuf,
        /// Drop report path (default: <output>.report.json).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Evaluate methods on a time-ordered split.
    Evaluate(ExperimentArgs),
    /// Evaluate over a range of p or q values.
    Sweep {
        #[command(flatten)]
        exp: ExperimentArgs,
        #[arg(long, value_enum)]
        param: SweepArg,
        /// `start:end:step` (inclusive) or a comma separated list.
        #[arg(long)]
        values: String,
    },
    /// Write per-pair scores for the candidate set.
    Score {
        #[command(flatten)]
        exp: ExperimentArgs,
        /// Also dump A^T and the queried latent cells as TSV.
        #[arg(long)]
        dump_matrices: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SweepArg {
    P,
    Q,
}

impl From<SweepArg> for SweepParam {
    fn from(a: SweepArg) -> Self {
        match a {
            SweepArg::P => SweepParam::P,
            SweepArg::Q => SweepParam::Q,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AggArg {
    Sum,
    Latest,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CclpArg {
    PerNode,
    Global,
}

/// Flags shared by experiment commands; each overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct ExperimentArgs {
    /// TOML or JSON experiment config.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Snapshot period in raw timestamp units.
    #[arg(long)]
    pub period: Option<f64>,
    #[arg(long, value_enum)]
    pub decay: Option<DecayMode>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub ratio: Option<f64>,
    /// Repeatable; e.g. `--method TLPSS --method ra`.
    #[arg(long = "method")]
    pub methods: Vec<String>,
    #[arg(long)]
    pub top_l: Option<usize>,
    #[arg(long)]
    pub auc_samples: Option<u64>,
    #[arg(long)]
    pub max_negatives: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub agg: Option<AggArg>,
    #[arg(long, value_enum)]
    pub cclp_mode: Option<CclpArg>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

impl ExperimentArgs {
    pub fn into_config(self) -> Result<ExperimentConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(v) = self.dataset {
            cfg.dataset = v;
        }
        if self.period.is_some() {
            cfg.period = self.period;
        }
        if let Some(v) = self.decay {
            cfg.decay = v;
        }
        if self.p.is_some() {
            cfg.p = self.p;
        }
        if let Some(v) = self.q {
            cfg.q = v;
        }
        if let Some(v) = self.a {
            cfg.a = v;
        }
        if let Some(v) = self.theta {
            cfg.theta = v;
        }
        if let Some(v) = self.ratio {
            cfg.ratio = v;
        }
        if !self.methods.is_empty() {
            cfg.methods = self
                .methods
                .iter()
                .map(|m| m.parse::<MethodId>())
                .collect::<Result<_, _>>()?;
        }
        if self.top_l.is_some() {
            cfg.top_l = self.top_l;
        }
        if self.auc_samples.is_some() {
            cfg.auc_samples = self.auc_samples;
        }
        if self.max_negatives.is_some() {
            cfg.max_negatives = self.max_negatives;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.agg {
            cfg.aggregation = match v {
                AggArg::Sum => Aggregation::Sum,
                AggArg::Latest => Aggregation::Latest,
            };
        }
        if let Some(v) = self.cclp_mode {
            cfg.cclp_mode = match v {
                CclpArg::PerNode => CclpMode::PerNode,
                CclpArg::Global => CclpMode::Global,
            };
        }
        if let Some(v) = self.out_dir {
            cfg.out_dir = v;
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        cfg.resolve()
    }
}

/// `start:end:step` (inclusive end) or `v1,v2,...`.
pub fn parse_values(range: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Config(format!("invalid value range `{range}`"));
    let range = range.trim();
    if range.contains(':') {
        let parts: Vec<f64> = range
            .split(':')
            .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let [start, end, step] = parts[..] else {
            return Err(bad());
        };
        if !start.is_finite() || !end.is_finite() || !step.is_finite() || step <= 0.0 || end < start
        {
            return Err(bad());
        }
        let n = ((end - start) / step + 1e-9).floor() as usize;
        // index-based so that 0:10:1 yields exact integers
        Ok((0..=n).map(|i| start + i as f64 * step).collect())
    } else {
        range
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
            .collect()
    }
}

/// Parses and normalizes a dataset file.
pub fn load_dataset(path: &Path) -> Result<TemporalEdgeList, CliError> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    let parsed = parse_edge_list(BufReader::new(file))
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    Ok(parsed.normalized().edges)
}

/// SHA-256 of the normalized serialization.
pub fn content_hash(list: &TemporalEdgeList) -> String {
    let mut buf = Vec::new();
    list.write_to(&mut buf).expect("writing to memory");
    hex::encode(Sha256::digest(&buf))
}

/// JSON document written for every evaluation or sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunArtifact {
    pub config: ExperimentConfig,
    pub input_sha256: String,
    pub reports: Vec<EvalReport>,
}

struct Session {
    config: ExperimentConfig,
    hash: String,
    prepared: PreparedEvaluation,
}

fn open_session(config: ExperimentConfig) -> Result<Session, CliError> {
    let mut list = load_dataset(&config.dataset)?;
    if let Some(sub) = config.subgraph {
        use rand::seq::index;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
        let n = list.node_count();
        let seeds: Vec<NodeId> = index::sample(&mut rng, n, sub.seeds.min(n))
            .into_iter()
            .map(|i| i as NodeId)
            .collect();
        list = list.khop_filter(&seeds, sub.hops).normalize();
    }
    let hash = content_hash(&list);
    let prepared = PreparedEvaluation::new(&list, config.ratio, config.seed, config.max_negatives)?;
    Ok(Session {
        config,
        hash,
        prepared,
    })
}

fn create_out_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    fs::write(path, body).map_err(|e| io_err(path, e))
}

fn csv_preamble(artifact: &RunArtifact) -> String {
    format!(
        "# config: {}\n# input_sha256: {}\n",
        serde_json::to_string(&artifact.config).expect("config serializes"),
        artifact.input_sha256
    )
}

fn results_csv(artifact: &RunArtifact) -> String {
    let mut out = csv_preamble(artifact);
    out.push_str(EvalReport::CSV_HEADER);
    out.push('\n');
    for r in &artifact.reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

fn emit(artifact: &RunArtifact, stdout_csv: String) -> Result<String, CliError> {
    let dir = &artifact.config.out_dir;
    create_out_dir(dir)?;
    let json = serde_json::to_string_pretty(artifact).expect("report serializes");
    write_file(&dir.join("report.json"), &json)?;
    write_file(&dir.join("results.csv"), &results_csv(artifact))?;
    Ok(match artifact.config.format {
        OutputFormat::Json => json,
        OutputFormat::Csv => stdout_csv,
    })
}

pub fn cmd_ingest(input: &Path, output: &Path, report: Option<&Path>) -> Result<String, CliError> {
    let file = File::open(input).map_err(|e| io_err(input, e))?;
    let parsed = parse_edge_list(BufReader::new(file))
        .map_err(|e| CliError::Data(format!("{}: {e}", input.display())))?
        .normalized();
    if parsed.edges.is_empty() {
        return Err(CliError::Data(format!(
            "{}: no edges left after normalization",
            input.display()
        )));
    }
    let out = File::create(output).map_err(|e| io_err(output, e))?;
    parsed
        .edges
        .write_to(BufWriter::new(out))
        .map_err(|e| io_err(output, e))?;

    let ids_path = output.with_extension("ids.tsv");
    let mut ids = String::with_capacity(parsed.labels.len() * 8);
    for (i, label) in parsed.labels.iter().enumerate() {
        ids.push_str(&format!("{i}\t{label}\n"));
    }
    write_file(&ids_path, &ids)?;

    let report_path = report
        .map(Path::to_path_buf)
        .unwrap_or_else(|| output.with_extension("report.json"));
    let json = serde_json::to_string_pretty(&parsed.report).expect("report serializes");
    write_file(&report_path, &json)?;
    Ok(json)
}

pub fn cmd_evaluate(config: ExperimentConfig) -> Result<String, CliError> {
    let session = open_session(config)?;
    let settings = session.config.settings()?;
    let reports = eval::evaluate_methods(&session.prepared, &session.config.methods, &settings)?;
    let artifact = RunArtifact {
        config: session.config,
        input_sha256: session.hash,
        reports,
    };
    let csv = results_csv(&artifact);
    emit(&artifact, csv)
}

pub fn cmd_sweep(
    config: ExperimentConfig,
    param: SweepParam,
    values: &[f64],
) -> Result<String, CliError> {
    if values.is_empty() {
        return Err(CliError::Config("empty sweep range".into()));
    }
    if config.decay != DecayMode::Asf {
        return Err(CliError::Config("sweeps require --decay asf".into()));
    }
    let session = open_session(config)?;
    let settings = session.config.settings()?;
    let reports = eval::sweep(
        &session.prepared,
        param,
        values,
        &settings,
        &session.config.methods,
    )?;
    let artifact = RunArtifact {
        config: session.config,
        input_sha256: session.hash,
        reports,
    };
    let mut tidy = csv_preamble(&artifact);
    tidy.push_str(SWEEP_CSV_HEADER);
    tidy.push('\n');
    for r in &artifact.reports {
        tidy.push_str(&sweep_csv_row(r, param));
        tidy.push('\n');
    }
    create_out_dir(&artifact.config.out_dir)?;
    write_file(
        &artifact
            .config
            .out_dir
            .join(format!("sweep_{}.csv", param.name())),
        &tidy,
    )?;
    emit(&artifact, tidy)
}

pub fn cmd_score(config: ExperimentConfig, dump_matrices: bool) -> Result<String, CliError> {
    let session = open_session(config)?;
    let cfg = &session.config;
    let settings = cfg.settings()?;
    let reference = settings
        .snapshots
        .snapshot_index(session.prepared.split.t_split)?;
    let adj = WeightedAdjacency::build(
        &session.prepared.split.train,
        reference,
        &settings.decay,
        &settings.snapshots,
        settings.aggregation,
    )?;
    let deg = DegreeVector::from_adjacency(&adj);
    let latent = LatentWeights::new(&adj, settings.decay.floor());
    let scorer = Scorer::new(&adj, &deg, Some(&latent)).with_cclp_mode(settings.cclp_mode);
    let pairs = session.prepared.candidates.all_pairs();
    create_out_dir(&cfg.out_dir)?;

    let mut written = Vec::new();
    for &method in &cfg.methods {
        let table = scorer.score_all(&pairs, method)?.with_decay(settings.decay);
        let stem = cfg.out_dir.join(format!("scores_{}", method.name()));
        let tsv = stem.with_extension("tsv");
        let mut buf = Vec::new();
        table.write_tsv(&mut buf).expect("writing to memory");
        fs::write(&tsv, buf).map_err(|e| io_err(&tsv, e))?;
        let json = stem.with_extension("json");
        write_file(
            &json,
            &serde_json::to_string(&table).expect("table serializes"),
        )?;
        written.push(tsv.display().to_string());
        written.push(json.display().to_string());
    }
    if dump_matrices {
        for (name, body) in [
            ("adjacency.tsv", dump(|w| adj.write_tsv(w))),
            ("latent.tsv", dump(|w| latent.write_tsv(w))),
        ] {
            let path = cfg.out_dir.join(name);
            fs::write(&path, body).map_err(|e| io_err(&path, e))?;
            written.push(path.display().to_string());
        }
    }
    Ok(serde_json::to_string_pretty(&serde_json::json!({
        "config": cfg,
        "input_sha256": session.hash,
        "pairs": pairs.len(),
        "files": written,
    }))
    .expect("summary serializes"))
}

fn dump(f: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Vec<u8> {
    let mut buf = Vec::new();
    f(&mut buf).expect("writing to memory");
    buf
}

pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Ingest {
            input,
            output,
            report,
        } => cmd_ingest(&input, &output, report.as_deref()),
        Command::Evaluate(args) => cmd_evaluate(args.into_config()?),
        Command::Sweep { exp, param, values } => {
            let values = parse_values(&values)?;
            cmd_sweep(exp.into_config()?, param.into(), &values)
        }
        Command::Score { exp, dump_matrices } => cmd_score(exp.into_config()?, dump_matrices),
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let _ = writeln!(lock, "{out}");
            0
        }
        Err(e) => {
            eprintln!("tlpss: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_ranges() {
        let v = parse_values("0:10:1").unwrap();
        assert_eq!(v.len(), 11);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[10], 10.0);
        assert_eq!(parse_values("0.5:1.5:0.5").unwrap(), vec![0.5, 1.0, 1.5]);
        assert_eq!(parse_values("1, 2.5,3").unwrap(), vec![1.0, 2.5, 3.0]);
        assert_eq!(parse_values("4").unwrap(), vec![4.0]);
        assert!(parse_values("1:0:1").is_err());
        assert!(parse_values("0:1:0").is_err());
        assert!(parse_values("a,b").is_err());
        assert!(parse_values("1:2").is_err());
    }

    #[test]
    fn presets_match_file_names() {
        assert_eq!(
            preset_for(Path::new("data/out.contact")).unwrap().period,
            3600.0
        );
        assert_eq!(preset_for(Path::new("/x/enron.tsv")).unwrap().p, 2.5);
        assert_eq!(
            preset_for(Path::new("facebook-wosn/out.x")).unwrap().top_l,
            1000
        );
        assert!(preset_for(Path::new("foo.tsv")).is_none());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(GraphError::EmptyDataset).exit_code(), 3);
        assert_eq!(CliError::from(GraphError::InvalidRatio(2.0)).exit_code(), 2);
        assert_eq!(CliError::from(EvalError::NoPositives).exit_code(), 4);
        assert_eq!(CliError::from(DecayError::InvalidP(0.0)).exit_code(), 2);
        assert_eq!(
            CliError::from(ScoreError::UnknownMethod("x".into())).exit_code(),
            2
        );
    }

    #[test]
    fn config_round_trips_through_toml_and_json() {
        let cfg = ExperimentConfig {
            dataset: "d.tsv".into(),
            p: Some(3.0),
            methods: vec![MethodId::Tlpss, MethodId::Ra],
            subgraph: Some(SubgraphConfig { seeds: 10, hops: 2 }),
            ..ExperimentConfig::default()
        };
        let t = toml::to_string(&cfg).unwrap();
        assert_eq!(toml::from_str::<ExperimentConfig>(&t).unwrap(), cfg);
        let j = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&j).unwrap(), cfg);
    }
}
