//! End-to-end pipeline: ingest, window, complex, interleave, barcode.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::complex::{associated_asc, ComplexError, SimplicialComplex, SizeCap};
use crate::homology::{betti, BettiVector, HomologyError};
use crate::hypergraph::{EventMode, EventRow, HypergraphError, RawEdge, TemporalHypergraph};
use crate::report::{betti_csv, stats_csv, BarcodeDocument};
use crate::svg::{render_svg, snapshot_ticks};
use crate::windows::{make_windows, snapshot_sequence, summary_stats, SnapshotSequence, SnapshotStats, WindowError};
use crate::zigzag::{interleave, to_time_axis, zigzag_barcode, Axis, Barcode, InterleaveMode, ZigzagError};

/// Largest homology dimension the pipeline accepts.
pub const MAX_DIMENSION: usize = 3;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(transparent)]
    Window(#[from] WindowError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Zigzag(#[from] ZigzagError),
}

impl PipelineError {
    /// 1 for configuration problems, 2 for I/O and parse failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Io { .. } | PipelineError::Parse { .. } => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    #[default]
    ThgJson,
    EventCsv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub input: PathBuf,
    pub format: InputFormat,
    pub event_mode: EventMode,
    pub merge_gap: f64,
    pub window_size: f64,
    pub shift: f64,
    pub t0: Option<f64>,
    pub tf: Option<f64>,
    pub p_max: usize,
    pub mode: InterleaveMode,
    pub axis: Axis,
    pub out: Option<PathBuf>,
    pub stats_out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl PipelineConfig {
    pub fn new(input: impl Into<PathBuf>, window_size: f64, shift: f64) -> Self {
        PipelineConfig {
            input: input.into(),
            format: InputFormat::ThgJson,
            event_mode: EventMode::Span,
            merge_gap: 0.0,
            window_size,
            shift,
            t0: None,
            tf: None,
            p_max: 1,
            mode: InterleaveMode::Union,
            axis: Axis::Index,
            out: None,
            stats_out: None,
            svg: None,
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let bad = |msg: String| Err(PipelineError::Config(msg));
        if !(self.window_size.is_finite() && self.window_size > 0.0) {
            return bad(format!("window size must be positive, got {}", self.window_size));
        }
        if !(self.shift.is_finite() && self.shift > 0.0) {
            return bad(format!("shift must be positive, got {}", self.shift));
        }
        if self.shift > self.window_size {
            return bad(format!("shift {} exceeds window size {}", self.shift, self.window_size));
        }
        if self.p_max > MAX_DIMENSION {
            return bad(format!("dimension must be at most {MAX_DIMENSION}, got {}", self.p_max));
        }
        if !(self.merge_gap.is_finite() && self.merge_gap >= 0.0) {
            return bad(format!("merge gap must be non-negative, got {}", self.merge_gap));
        }
        for t in [self.t0, self.tf].into_iter().flatten() {
            if !t.is_finite() {
                return bad(format!("time bound {t} is not finite"));
            }
        }
        if let (Some(t0), Some(tf)) = (self.t0, self.tf) {
            if t0 > tf {
                return bad(format!("t0 {t0} is after tf {tf}"));
            }
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct ThgDocument {
    edges: Vec<ThgEdge>,
}

#[derive(Deserialize)]
struct ThgEdge {
    id: String,
    nodes: Vec<String>,
    intervals: Vec<(f64, f64)>,
}

#[derive(Deserialize)]
struct EventRecord {
    edge_id: String,
    node_id: String,
    timestamp: f64,
}

pub fn parse_thg_json(text: &str) -> Result<Vec<RawEdge>, String> {
    let doc: ThgDocument = serde_json::from_str(text).map_err(|e| e.to_string())?;
    Ok(doc
        .edges
        .into_iter()
        .map(|e| RawEdge { id: e.id, vertices: e.nodes, intervals: e.intervals })
        .collect())
}

pub fn parse_event_csv<R: Read>(reader: R) -> Result<Vec<EventRow>, String> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| e.to_string())?.clone();
    for want in ["edge_id", "node_id", "timestamp"] {
        if !headers.iter().any(|h| h == want) {
            return Err(format!("missing column {want}"));
        }
    }
    rdr.deserialize::<EventRecord>()
        .map(|rec| {
            let rec = rec.map_err(|e| e.to_string())?;
            Ok(EventRow { edge_id: rec.edge_id, vertex_id: rec.node_id, timestamp: rec.timestamp })
        })
        .collect()
}

fn read_input(path: &Path) -> Result<String, PipelineError> {
    fs::read_to_string(path).map_err(|source| PipelineError::Io { path: path.to_path_buf(), source })
}

pub fn load_hypergraph(cfg: &PipelineConfig) -> Result<TemporalHypergraph, PipelineError> {
    let text = read_input(&cfg.input)?;
    let parse_err = |message: String| PipelineError::Parse { path: cfg.input.clone(), message };
    let hyper_err = |e: HypergraphError| parse_err(e.to_string());
    match cfg.format {
        InputFormat::ThgJson => {
            let raw = parse_thg_json(&text).map_err(parse_err)?;
            TemporalHypergraph::build(&raw).map_err(hyper_err)
        }
        InputFormat::EventCsv => {
            let rows = parse_event_csv(text.as_bytes()).map_err(parse_err)?;
            TemporalHypergraph::from_event_log(&rows, cfg.event_mode, cfg.merge_gap).map_err(hyper_err)
        }
    }
}

/// Windows, snapshots and snapshot complexes for a configuration.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub hypergraph: TemporalHypergraph,
    pub sequence: SnapshotSequence,
    pub complexes: Vec<SimplicialComplex>,
}

pub fn prepare(cfg: &PipelineConfig) -> Result<Prepared, PipelineError> {
    cfg.validate()?;
    let hypergraph = load_hypergraph(cfg)?;
    let domain = hypergraph.time_domain();
    let t0 = cfg.t0.unwrap_or(domain.start);
    let tf = cfg.tf.unwrap_or(domain.end);
    if t0 > tf {
        return Err(PipelineError::Config(format!("time domain [{t0}, {tf}] is empty")));
    }
    let windows = make_windows(t0, tf, cfg.window_size, cfg.shift)?;
    let sequence = snapshot_sequence(&hypergraph, &windows);
    let cap = SizeCap::for_homology(cfg.p_max);
    let complexes = sequence
        .snapshots
        .par_iter()
        .map(|h| associated_asc(h, cap))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Prepared { hypergraph, sequence, complexes })
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub barcode: Barcode,
    pub stats: Vec<SnapshotStats>,
    pub barcode_json: String,
    pub stats_csv: String,
    pub svg: Option<String>,
}

fn write_file(path: &Path, contents: &str) -> Result<(), PipelineError> {
    fs::write(path, contents).map_err(|source| PipelineError::Io { path: path.to_path_buf(), source })
}

/// Runs the full pipeline and writes whichever outputs have paths configured.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<PipelineOutput, PipelineError> {
    let prepared = prepare(cfg)?;
    let filtration = interleave(&prepared.complexes, &prepared.sequence.mids(), cfg.mode)?;
    let mut barcode = zigzag_barcode(&filtration, cfg.p_max)?;
    if cfg.axis == Axis::Time {
        barcode = to_time_axis(&barcode, &filtration)?;
    }
    let stats = summary_stats(&prepared.sequence);
    let doc = BarcodeDocument::from_barcode(&barcode);
    let barcode_json = doc.to_json();
    let stats_csv = stats_csv(&stats);
    let svg = cfg.svg.as_ref().map(|_| render_svg(&doc, &snapshot_ticks(&barcode)));

    if let Some(path) = &cfg.out {
        write_file(path, &barcode_json)?;
    }
    if let Some(path) = &cfg.stats_out {
        write_file(path, &stats_csv)?;
    }
    if let (Some(path), Some(svg)) = (&cfg.svg, &svg) {
        write_file(path, svg)?;
    }
    Ok(PipelineOutput { barcode, stats, barcode_json, stats_csv, svg })
}

/// Betti numbers of every snapshot complex.
pub fn betti_rows(cfg: &PipelineConfig) -> Result<(Vec<SnapshotStats>, Vec<BettiVector>), PipelineError> {
    let prepared = prepare(cfg)?;
    let bettis = prepared
        .complexes
        .par_iter()
        .map(|k| betti(k, cfg.p_max))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((summary_stats(&prepared.sequence), bettis))
}

/// Betti table as CSV; written to `cfg.out` when set.
pub fn betti_command(cfg: &PipelineConfig) -> Result<String, PipelineError> {
    let (stats, bettis) = betti_rows(cfg)?;
    let csv = betti_csv(&stats, &bettis, cfg.p_max);
    if let Some(path) = &cfg.out {
        write_file(path, &csv)?;
    }
    Ok(csv)
}

/// Snapshot size table as CSV; written to `cfg.out` when set.
pub fn stats_command(cfg: &PipelineConfig) -> Result<String, PipelineError> {
    let prepared = prepare(cfg)?;
    let csv = stats_csv(&summary_stats(&prepared.sequence));
    if let Some(path) = &cfg.out {
        write_file(path, &csv)?;
    }
    Ok(csv)
}

/// Reads a barcode JSON document.
pub fn load_barcode_document(path: &Path) -> Result<BarcodeDocument, PipelineError> {
    let text = read_input(path)?;
    BarcodeDocument::from_json(&text)
        .map_err(|e| PipelineError::Parse { path: path.to_path_buf(), message: e.to_string() })
}
