//! Serialized forms of pipeline results: barcode JSON and CSV tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::homology::BettiVector;
use crate::windows::SnapshotStats;
use crate::zigzag::{Axis, Barcode, InterleaveMode, PersistencePair};

/// A barcode endpoint: integers for snapshot indices, floats otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coordinate {
    Index(u64),
    Value(f64),
}

impl Coordinate {
    pub fn value(&self) -> f64 {
        match *self {
            Coordinate::Index(i) => i as f64,
            Coordinate::Value(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub birth: Coordinate,
    pub death: Coordinate,
    pub birth_half: bool,
    pub death_half: bool,
    pub open_end: bool,
}

/// JSON document for a barcode. Dimension keys are decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarcodeDocument {
    pub axis: Axis,
    pub mode: InterleaveMode,
    pub dims: BTreeMap<String, Vec<PairRecord>>,
}

impl BarcodeDocument {
    pub fn from_barcode(b: &Barcode) -> Self {
        let endpoint = |q: crate::zigzag::Position| match b.axis() {
            Axis::Index if !q.is_half() => Coordinate::Index((q.doubled() / 2) as u64),
            _ => Coordinate::Value(b.coordinate(q)),
        };
        let record = |p: &PersistencePair| PairRecord {
            birth: endpoint(p.birth),
            death: endpoint(p.death),
            birth_half: p.birth.is_half(),
            death_half: p.death.is_half(),
            open_end: p.open_end,
        };
        let dims = b
            .dimensions()
            .map(|(p, pairs)| (p.to_string(), pairs.iter().map(record).collect()))
            .collect();
        BarcodeDocument { axis: b.axis(), mode: b.mode(), dims }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("barcode serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Dimensions in numeric order.
    pub fn dimensions(&self) -> Vec<(usize, &[PairRecord])> {
        let mut out: Vec<(usize, &[PairRecord])> = self
            .dims
            .iter()
            .filter_map(|(k, v)| k.parse().ok().map(|p| (p, v.as_slice())))
            .collect();
        out.sort_by_key(|(p, _)| *p);
        out
    }
}

fn csv_string(header: Vec<String>, rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

/// `window_index,mid_time,n_edges,n_vertices`
pub fn stats_csv(stats: &[SnapshotStats]) -> String {
    let header = ["window_index", "mid_time", "n_edges", "n_vertices"].map(String::from).to_vec();
    let rows = stats
        .iter()
        .map(|s| vec![s.window_index.to_string(), s.mid.to_string(), s.n_edges.to_string(), s.n_vertices.to_string()])
        .collect();
    csv_string(header, rows)
}

/// `window_index,mid_time,b0..b{p_max},n_edges,n_vertices`
pub fn betti_csv(stats: &[SnapshotStats], bettis: &[BettiVector], p_max: usize) -> String {
    let mut header = vec!["window_index".to_string(), "mid_time".to_string()];
    header.extend((0..=p_max).map(|p| format!("b{p}")));
    header.extend(["n_edges".to_string(), "n_vertices".to_string()]);
    let rows = stats
        .iter()
        .zip(bettis)
        .map(|(s, b)| {
            let mut row = vec![s.window_index.to_string(), s.mid.to_string()];
            row.extend((0..=p_max).map(|p| b.get(p).to_string()));
            row.extend([s.n_edges.to_string(), s.n_vertices.to_string()]);
            row
        })
        .collect();
    csv_string(header, rows)
}
