//! Sliding windows over the time domain and the per-window snapshots.

use rayon::prelude::*;
use thiserror::Error;

use crate::hypergraph::{intersects, HyperEdge, Hypergraph, Interval, TemporalHypergraph};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WindowError {
    #[error("window size must be positive and finite, got {0}")]
    BadWidth(f64),
    #[error("shift must be positive and finite, got {0}")]
    BadShift(f64),
    #[error("shift {shift} exceeds window size {width}")]
    ShiftExceedsWidth { width: f64, shift: f64 },
    #[error("time domain [{t0}, {tf}] is empty or not finite")]
    BadDomain { t0: f64, tf: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub index: usize,
    pub start: f64,
    pub end: f64,
    pub mid: f64,
}

impl Window {
    pub fn interval(&self) -> Interval {
        Interval { start: self.start, end: self.end }
    }
}

/// Windows `[t0 + i*s, t0 + i*s + w]` for `i = 0..=l`, with `l` the smallest
/// index whose window reaches `tf`. The last window may overhang `tf`.
pub fn make_windows(t0: f64, tf: f64, w: f64, s: f64) -> Result<Vec<Window>, WindowError> {
    if !(w.is_finite() && w > 0.0) {
        return Err(WindowError::BadWidth(w));
    }
    if !(s.is_finite() && s > 0.0) {
        return Err(WindowError::BadShift(s));
    }
    if s > w {
        return Err(WindowError::ShiftExceedsWidth { width: w, shift: s });
    }
    if !(t0.is_finite() && tf.is_finite() && t0 <= tf) {
        return Err(WindowError::BadDomain { t0, tf });
    }
    let end_of = |i: usize| t0 + i as f64 * s + w;
    let mut last = ((tf - t0 - w) / s).ceil().max(0.0) as usize;
    // The closed-form guess can be off by one under rounding.
    while end_of(last) < tf {
        last += 1;
    }
    while last > 0 && end_of(last - 1) >= tf {
        last -= 1;
    }
    Ok((0..=last)
        .map(|index| {
            let start = t0 + index as f64 * s;
            let end = start + w;
            Window { index, start, end, mid: (start + end) / 2.0 }
        })
        .collect())
}

/// Sub-hypergraph of the edges whose activity meets the window.
pub fn snapshot(thg: &TemporalHypergraph, window: &Window) -> Hypergraph {
    let iv = window.interval();
    let edges: Vec<HyperEdge> = thg
        .edges()
        .iter()
        .filter(|e| thg.intervals(&e.id).is_some_and(|ivs| intersects(ivs, &iv)))
        .cloned()
        .collect();
    Hypergraph::from_edges(edges)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotSequence {
    pub windows: Vec<Window>,
    pub snapshots: Vec<Hypergraph>,
}

impl SnapshotSequence {
    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    pub fn mids(&self) -> Vec<f64> {
        self.windows.iter().map(|w| w.mid).collect()
    }
}

pub fn snapshot_sequence(thg: &TemporalHypergraph, windows: &[Window]) -> SnapshotSequence {
    let snapshots = windows.par_iter().map(|w| snapshot(thg, w)).collect();
    SnapshotSequence { windows: windows.to_vec(), snapshots }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnapshotStats {
    pub window_index: usize,
    pub mid: f64,
    pub n_edges: usize,
    pub n_vertices: usize,
}

pub fn summary_stats(seq: &SnapshotSequence) -> Vec<SnapshotStats> {
    seq.windows
        .iter()
        .zip(&seq.snapshots)
        .map(|(w, h)| SnapshotStats {
            window_index: w.index,
            mid: w.mid,
            n_edges: h.edges.len(),
            n_vertices: h.vertices.len(),
        })
        .collect()
}
