//! Zigzag filtrations of snapshot complexes and their persistence barcodes.
//!
//! Snapshot complexes `K_0, ..., K_l` are interleaved with the union (or
//! intersection) of each adjacent pair. Positions in the resulting sequence
//! are stored doubled: `2i` is `K_i` and `2i + 1` is the complex between
//! `K_i` and `K_{i+1}`. A class still alive in the last complex is closed at
//! `2l + 1`, half a step past the end.

mod engine;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, Simplex, SimplicialComplex, SizeCap};

use engine::{Engine, Key};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZigzagError {
    #[error("no snapshot complexes given")]
    NoSnapshots,
    #[error("{complexes} complexes but {times} times")]
    LengthMismatch { complexes: usize, times: usize },
    #[error("snapshot times must be finite and strictly increasing (position {0})")]
    TimesNotIncreasing(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("arrow {from} -> {to} is not an inclusion")]
    InclusionViolated { from: usize, to: usize },
    #[error("size cap {cap} too small for homology up to dimension {p_max}")]
    CapTooSmall { cap: SizeCap, p_max: usize },
    #[error("barcode is already on the time axis")]
    AlreadyTimeAxis,
    #[error("barcode does not belong to this filtration")]
    ForeignBarcode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InterleaveMode {
    #[default]
    Union,
    Intersection,
}

impl fmt::Display for InterleaveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InterleaveMode::Union => "union",
            InterleaveMode::Intersection => "intersection",
        })
    }
}

/// Orientation of the inclusion between positions `q` and `q + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `K_q ⊆ K_{q+1}`
    Forward,
    /// `K_q ⊇ K_{q+1}`
    Backward,
}

/// Doubled index into a zigzag filtration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(pub usize);

impl Position {
    pub fn snapshot(i: usize) -> Self {
        Position(2 * i)
    }

    /// The interleaved complex between snapshots `i` and `i + 1`.
    pub fn between(i: usize) -> Self {
        Position(2 * i + 1)
    }

    pub fn doubled(&self) -> usize {
        self.0
    }

    pub fn is_half(&self) -> bool {
        self.0 % 2 == 1
    }

    /// `i` for snapshot positions, `i + 0.5` for interleaved ones.
    pub fn index_value(&self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Snapshot index pair: `(i, None)` or `(i, Some(i + 1))`.
    pub fn pair(&self) -> (usize, Option<usize>) {
        let i = self.0 / 2;
        (i, self.is_half().then_some(i + 1))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZigzagFiltration {
    complexes: Vec<SimplicialComplex>,
    directions: Vec<Direction>,
    times: Vec<f64>,
    mode: InterleaveMode,
}

impl ZigzagFiltration {
    pub fn complexes(&self) -> &[SimplicialComplex] {
        &self.complexes
    }

    pub fn complex(&self, q: Position) -> &SimplicialComplex {
        &self.complexes[q.0]
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn mode(&self) -> InterleaveMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.complexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complexes.is_empty()
    }

    pub fn snapshot_count(&self) -> usize {
        self.complexes.len().div_ceil(2)
    }

    /// Position where open intervals end: one half-step past the last snapshot.
    pub fn end(&self) -> Position {
        Position(self.complexes.len())
    }

    pub fn positions(&self) -> impl Iterator<Item = Position> {
        (0..self.complexes.len()).map(Position)
    }
}

/// Interleaves snapshot complexes with the union or intersection of each
/// adjacent pair.
///
/// Union mode yields `K_0 ↪ K_0∪K_1 ↩ K_1 ↪ ...`; intersection mode yields
/// `K_0 ↩ K_0∩K_1 ↪ K_1 ↩ ...`. The time of an interleaved complex is the
/// mean of its neighbours' times.
pub fn interleave(
    snapshots: &[SimplicialComplex],
    mids: &[f64],
    mode: InterleaveMode,
) -> Result<ZigzagFiltration, ZigzagError> {
    if snapshots.is_empty() {
        return Err(ZigzagError::NoSnapshots);
    }
    if snapshots.len() != mids.len() {
        return Err(ZigzagError::LengthMismatch { complexes: snapshots.len(), times: mids.len() });
    }
    if let Some(i) = mids.iter().position(|t| !t.is_finite()) {
        return Err(ZigzagError::TimesNotIncreasing(2 * i));
    }
    if let Some(i) = mids.windows(2).position(|w| w[0] >= w[1]) {
        return Err(ZigzagError::TimesNotIncreasing(2 * i + 2));
    }
    let n = snapshots.len();
    let mut complexes = Vec::with_capacity(2 * n - 1);
    let mut times = Vec::with_capacity(2 * n - 1);
    let mut directions = Vec::with_capacity(2 * n - 2);
    for i in 0..n {
        complexes.push(snapshots[i].clone());
        times.push(mids[i]);
        if i + 1 < n {
            let (between, into, out_of) = match mode {
                InterleaveMode::Union => {
                    (snapshots[i].union(&snapshots[i + 1])?, Direction::Forward, Direction::Backward)
                }
                InterleaveMode::Intersection => (
                    snapshots[i].intersection(&snapshots[i + 1])?,
                    Direction::Backward,
                    Direction::Forward,
                ),
            };
            complexes.push(between);
            times.push((mids[i] + mids[i + 1]) / 2.0);
            directions.push(into);
            directions.push(out_of);
        }
    }
    Ok(ZigzagFiltration { complexes, directions, times, mode })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Insert,
    Delete,
}

/// One simplex entering or leaving; `position` is the complex reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryStep {
    pub kind: StepKind,
    pub simplex: Simplex,
    pub position: Position,
}

/// Refines every arrow into single-simplex insertions (faces first) and
/// deletions (cofaces first), starting from the empty complex.
pub fn schedule(f: &ZigzagFiltration) -> Result<Vec<ElementaryStep>, ZigzagError> {
    let mut steps: Vec<ElementaryStep> = f.complexes[0]
        .iter()
        .map(|s| ElementaryStep { kind: StepKind::Insert, simplex: s.clone(), position: Position(0) })
        .collect();
    for (q, dir) in f.directions.iter().enumerate() {
        let (from, to) = (&f.complexes[q], &f.complexes[q + 1]);
        let position = Position(q + 1);
        match dir {
            Direction::Forward => {
                if !from.is_subcomplex_of(to) {
                    return Err(ZigzagError::InclusionViolated { from: q, to: q + 1 });
                }
                steps.extend(to.difference(from).map(|s| ElementaryStep {
                    kind: StepKind::Insert,
                    simplex: s.clone(),
                    position,
                }));
            }
            Direction::Backward => {
                if !to.is_subcomplex_of(from) {
                    return Err(ZigzagError::InclusionViolated { from: q + 1, to: q });
                }
                let mut gone: Vec<&Simplex> = from.difference(to).collect();
                gone.sort_by(|a, b| b.dimension().cmp(&a.dimension()).then_with(|| a.vertices().cmp(b.vertices())));
                steps.extend(gone.into_iter().map(|s| ElementaryStep {
                    kind: StepKind::Delete,
                    simplex: s.clone(),
                    position,
                }));
            }
        }
    }
    Ok(steps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Index,
    Time,
}

/// Interval `[birth, death)` of one homology class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PersistencePair {
    pub dimension: usize,
    pub birth: Position,
    pub death: Position,
    pub open_end: bool,
}

impl PersistencePair {
    pub fn is_alive_at(&self, q: Position) -> bool {
        self.birth <= q && q < self.death
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Barcode {
    mode: InterleaveMode,
    axis: Axis,
    pairs: BTreeMap<usize, Vec<PersistencePair>>,
    /// Where open intervals end; one past the last filtration position.
    end: Position,
    /// Time per position, including the open-end position. Set on the time axis.
    times: Option<Vec<f64>>,
}

impl Barcode {
    pub fn mode(&self) -> InterleaveMode {
        self.mode
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn max_dimension(&self) -> usize {
        self.pairs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn dimensions(&self) -> impl Iterator<Item = (usize, &[PersistencePair])> {
        self.pairs.iter().map(|(&p, v)| (p, v.as_slice()))
    }

    pub fn pairs(&self, p: usize) -> &[PersistencePair] {
        self.pairs.get(&p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.pairs.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn alive_count(&self, p: usize, q: Position) -> usize {
        self.pairs(p).iter().filter(|pair| pair.is_alive_at(q)).count()
    }

    /// Coordinate of a position on this barcode's axis.
    pub fn coordinate(&self, q: Position) -> f64 {
        match &self.times {
            Some(times) => times[q.0],
            None => q.index_value(),
        }
    }

    pub fn end(&self) -> Position {
        self.end
    }

    /// Number of snapshots of the filtration this barcode came from.
    pub fn snapshot_count(&self) -> usize {
        self.end.0.div_ceil(2)
    }

    /// Per-position times (time axis only).
    pub fn times(&self) -> Option<&[f64]> {
        self.times.as_deref()
    }
}

/// Assigns every simplex of dimension at most `top` a key ordered by
/// (dimension, lexicographic).
fn key_table(f: &ZigzagFiltration, top: usize) -> HashMap<&Simplex, Key> {
    let all: BTreeSet<&Simplex> = f
        .complexes
        .iter()
        .flat_map(|k| k.iter())
        .filter(|s| s.dimension() <= top)
        .collect();
    all.into_iter().enumerate().map(|(i, s)| (s, i as Key)).collect()
}

/// Zigzag persistence barcode of `f` in dimensions `0..=p_max`, on the index axis.
pub fn zigzag_barcode(f: &ZigzagFiltration, p_max: usize) -> Result<Barcode, ZigzagError> {
    if let Some(k) = f.complexes.iter().find(|k| !k.size_cap().admits(p_max + 2)) {
        return Err(ZigzagError::CapTooSmall { cap: k.size_cap(), p_max });
    }
    let steps = schedule(f)?;
    let top = p_max + 1;
    let keys = key_table(f, top);
    let mut engine = Engine::new(top);
    for step in steps.iter().filter(|s| s.simplex.dimension() <= top) {
        let key = keys[&step.simplex];
        let p = step.simplex.dimension();
        match step.kind {
            StepKind::Insert => {
                let mut boundary: Vec<Key> = step.simplex.facets().map(|s| keys[&s]).collect();
                boundary.sort_unstable();
                engine.insert(key, p, &boundary, step.position);
            }
            StepKind::Delete => engine.delete(key, p, step.position),
        }
    }
    let mut pairs: BTreeMap<usize, Vec<PersistencePair>> = (0..=p_max).map(|p| (p, Vec::new())).collect();
    for (raw, open_end) in engine.finish(p_max, f.end()) {
        pairs.entry(raw.dimension).or_default().push(PersistencePair {
            dimension: raw.dimension,
            birth: raw.birth,
            death: raw.death,
            open_end,
        });
    }
    for v in pairs.values_mut() {
        v.sort_by_key(|p| (p.birth, p.death, p.open_end));
    }
    Ok(Barcode { mode: f.mode, axis: Axis::Index, pairs, end: f.end(), times: None })
}

/// Moves a barcode onto the time axis of its filtration.
///
/// Open ends are placed half a mean snapshot spacing past the last snapshot
/// time; with a single snapshot they sit at that snapshot's time.
pub fn to_time_axis(b: &Barcode, f: &ZigzagFiltration) -> Result<Barcode, ZigzagError> {
    if b.axis == Axis::Time {
        return Err(ZigzagError::AlreadyTimeAxis);
    }
    let end = f.end().0;
    if b.end != f.end() {
        return Err(ZigzagError::ForeignBarcode);
    }
    let last = f.times[end - 1];
    let spacing = match f.snapshot_count() {
        1 => 0.0,
        n => (last - f.times[0]) / (n - 1) as f64,
    };
    let mut times = f.times.clone();
    times.push(last + spacing / 2.0);
    Ok(Barcode { mode: b.mode, axis: Axis::Time, pairs: b.pairs.clone(), end: b.end, times: Some(times) })
}
