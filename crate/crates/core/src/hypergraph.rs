//! Temporal hypergraph model.
//!
//! A temporal hypergraph is a static hypergraph whose edges carry a list of
//! closed activity intervals. Vertices and edges are identified by opaque
//! string labels; their lexicographic order is used for every deterministic
//! tie-break further down the pipeline.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HypergraphError {
    #[error("no edges given")]
    NoEdges,
    #[error("no event rows given")]
    NoEvents,
    #[error("malformed interval [{start}, {end}] on edge {edge}")]
    MalformedInterval { edge: String, start: f64, end: f64 },
    #[error("non-finite timestamp on edge {0}")]
    NonFiniteTime(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(String),
    #[error("edge {0} has no vertices")]
    EmptyEdge(String),
    #[error("edge {0} has no activity intervals")]
    NoIntervals(String),
    #[error("empty identifier")]
    EmptyId,
    #[error("merge gap must be a finite non-negative number, got {0}")]
    BadMergeGap(f64),
}

/// Vertex label. Cheap to clone; ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(Arc<str>);

impl VertexId {
    pub fn new(name: &str) -> Result<Self, HypergraphError> {
        if name.is_empty() {
            return Err(HypergraphError::EmptyId);
        }
        Ok(VertexId(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Closed time interval `[start, end]`. Point intervals are allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub start: f64,
    pub end: f64,
}

impl Interval {
    /// Returns `None` unless both ends are finite and `start <= end`.
    pub fn new(start: f64, end: f64) -> Option<Self> {
        (start.is_finite() && end.is_finite() && start <= end).then_some(Interval { start, end })
    }

    pub fn point(t: f64) -> Option<Self> {
        Self::new(t, t)
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.start <= other.end && other.start <= self.end
    }

    pub fn contains(&self, t: f64) -> bool {
        self.start <= t && t <= self.end
    }
}

/// Sort by start and fuse intervals that overlap or abut.
pub fn merge_intervals(mut intervals: Vec<Interval>) -> Vec<Interval> {
    intervals.sort_by(|a, b| a.start.total_cmp(&b.start).then(a.end.total_cmp(&b.end)));
    let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
    for iv in intervals {
        match merged.last_mut() {
            Some(last) if iv.start <= last.end => last.end = last.end.max(iv.end),
            _ => merged.push(iv),
        }
    }
    merged
}

/// True iff some interval of the (sorted, merged) list meets `window`.
pub fn intersects(intervals: &[Interval], window: &Interval) -> bool {
    // First interval whose end reaches the window start.
    let first = intervals.partition_point(|iv| iv.end < window.start);
    intervals.get(first).is_some_and(|iv| iv.start <= window.end)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperEdge {
    pub id: String,
    pub vertices: BTreeSet<VertexId>,
}

impl HyperEdge {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// A static hypergraph: vertices plus a family of hyperedges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Hypergraph {
    pub vertices: BTreeSet<VertexId>,
    pub edges: Vec<HyperEdge>,
}

impl Hypergraph {
    pub fn from_edges(edges: Vec<HyperEdge>) -> Self {
        let vertices = edges.iter().flat_map(|e| e.vertices.iter().cloned()).collect();
        Hypergraph { vertices, edges }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemporalHypergraph {
    vertices: BTreeSet<VertexId>,
    edges: Vec<HyperEdge>,
    intervals: BTreeMap<String, Vec<Interval>>,
    time_domain: Interval,
}

/// One raw edge record: id, member vertices, activity intervals as `(start, end)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RawEdge {
    pub id: String,
    pub vertices: Vec<String>,
    pub intervals: Vec<(f64, f64)>,
}

impl RawEdge {
    pub fn new(id: &str, vertices: &[&str], intervals: &[(f64, f64)]) -> Self {
        RawEdge {
            id: id.to_string(),
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            intervals: intervals.to_vec(),
        }
    }
}

/// Edge vertex set and intervals shared by `build` and `from_event_log`.
fn checked_edge(raw: &RawEdge) -> Result<(HyperEdge, Vec<Interval>), HypergraphError> {
    if raw.id.is_empty() {
        return Err(HypergraphError::EmptyId);
    }
    if raw.vertices.is_empty() {
        return Err(HypergraphError::EmptyEdge(raw.id.clone()));
    }
    if raw.intervals.is_empty() {
        return Err(HypergraphError::NoIntervals(raw.id.clone()));
    }
    let vertices = raw
        .vertices
        .iter()
        .map(|v| VertexId::new(v))
        .collect::<Result<BTreeSet<_>, _>>()?;
    let intervals = raw
        .intervals
        .iter()
        .map(|&(start, end)| {
            if !start.is_finite() || !end.is_finite() {
                return Err(HypergraphError::NonFiniteTime(raw.id.clone()));
            }
            Interval::new(start, end).ok_or_else(|| HypergraphError::MalformedInterval {
                edge: raw.id.clone(),
                start,
                end,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((HyperEdge { id: raw.id.clone(), vertices }, merge_intervals(intervals)))
}

/// How event rows of one edge turn into activity intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EventMode {
    /// One interval from the first to the last event of the edge.
    #[default]
    Span,
    /// One point interval per distinct timestamp.
    Points,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EventRow {
    pub edge_id: String,
    pub vertex_id: String,
    pub timestamp: f64,
}

impl EventRow {
    pub fn new(edge_id: &str, vertex_id: &str, timestamp: f64) -> Self {
        EventRow { edge_id: edge_id.to_string(), vertex_id: vertex_id.to_string(), timestamp }
    }
}

impl TemporalHypergraph {
    /// Builds a temporal hypergraph from raw edge records.
    ///
    /// Edge order follows the input. Per-edge intervals are sorted and
    /// overlapping or touching intervals are merged.
    pub fn build(raw_edges: &[RawEdge]) -> Result<Self, HypergraphError> {
        if raw_edges.is_empty() {
            return Err(HypergraphError::NoEdges);
        }
        let mut edges = Vec::with_capacity(raw_edges.len());
        let mut intervals = BTreeMap::new();
        for raw in raw_edges {
            let (edge, ivs) = checked_edge(raw)?;
            if intervals.insert(edge.id.clone(), ivs).is_some() {
                return Err(HypergraphError::DuplicateEdge(edge.id));
            }
            edges.push(edge);
        }
        let vertices = edges.iter().flat_map(|e| e.vertices.iter().cloned()).collect();
        let all = intervals.values().flatten();
        let start = all.clone().map(|iv| iv.start).fold(f64::INFINITY, f64::min);
        let end = all.map(|iv| iv.end).fold(f64::NEG_INFINITY, f64::max);
        Ok(TemporalHypergraph {
            vertices,
            edges,
            intervals,
            time_domain: Interval { start, end },
        })
    }

    /// Groups event rows by edge id. Edges come out sorted by id.
    ///
    /// `merge_gap` fuses consecutive point events of one edge whose distance
    /// is at most the gap; zero keeps distinct timestamps apart.
    pub fn from_event_log(
        rows: &[EventRow],
        mode: EventMode,
        merge_gap: f64,
    ) -> Result<Self, HypergraphError> {
        if rows.is_empty() {
            return Err(HypergraphError::NoEvents);
        }
        if !merge_gap.is_finite() || merge_gap < 0.0 {
            return Err(HypergraphError::BadMergeGap(merge_gap));
        }
        let mut grouped: BTreeMap<&str, (BTreeSet<&str>, Vec<f64>)> = BTreeMap::new();
        for row in rows {
            if !row.timestamp.is_finite() {
                return Err(HypergraphError::NonFiniteTime(row.edge_id.clone()));
            }
            let entry = grouped.entry(row.edge_id.as_str()).or_default();
            entry.0.insert(row.vertex_id.as_str());
            entry.1.push(row.timestamp);
        }
        let raw: Vec<RawEdge> = grouped
            .into_iter()
            .map(|(id, (vertices, mut times))| {
                times.sort_by(f64::total_cmp);
                let intervals = match mode {
                    EventMode::Span => vec![(times[0], times[times.len() - 1])],
                    EventMode::Points => fuse_points(&times, merge_gap),
                };
                RawEdge {
                    id: id.to_string(),
                    vertices: vertices.into_iter().map(str::to_string).collect(),
                    intervals,
                }
            })
            .collect();
        Self::build(&raw)
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &[HyperEdge] {
        &self.edges
    }

    pub fn intervals(&self, edge_id: &str) -> Option<&[Interval]> {
        self.intervals.get(edge_id).map(Vec::as_slice)
    }

    pub fn interval_map(&self) -> &BTreeMap<String, Vec<Interval>> {
        &self.intervals
    }

    pub fn time_domain(&self) -> Interval {
        self.time_domain
    }

    /// Drops temporal information.
    pub fn static_hypergraph(&self) -> Hypergraph {
        Hypergraph { vertices: self.vertices.clone(), edges: self.edges.clone() }
    }
}

fn fuse_points(sorted: &[f64], gap: f64) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for &t in sorted {
        match out.last_mut() {
            Some(last) if t - last.1 <= gap => last.1 = t,
            _ => out.push((t, t)),
        }
    }
    out
}
