//! Zigzag persistent homology of temporal hypergraphs.
//!
//! The pipeline slices an interval-attributed hypergraph into sliding-window
//! snapshots, turns each snapshot into a dimension-capped simplicial complex,
//! interleaves adjacent complexes with their unions (or intersections) and
//! computes persistence barcodes over the resulting zigzag.
//!
//! ```
//! use temporal_zigzag::prelude::*;
//!
//! let thg = TemporalHypergraph::build(&[
//!     RawEdge::new("e1", &["a", "b"], &[(0.0, 1.0)]),
//!     RawEdge::new("e2", &["b", "c"], &[(1.5, 3.0)]),
//! ])
//! .unwrap();
//! let windows = make_windows(0.0, 3.0, 1.0, 1.0).unwrap();
//! let seq = snapshot_sequence(&thg, &windows);
//! let complexes: Vec<_> = seq
//!     .snapshots
//!     .iter()
//!     .map(|h| associated_asc(h, SizeCap::for_homology(1)).unwrap())
//!     .collect();
//! let filtration = interleave(&complexes, &seq.mids(), InterleaveMode::Union).unwrap();
//! let barcode = zigzag_barcode(&filtration, 1).unwrap();
//! assert_eq!(barcode.pairs(0).len(), 1);
//! ```

pub mod complex;
pub mod homology;
pub mod hypergraph;
pub mod pipeline;
pub mod report;
pub mod svg;
pub mod windows;
pub mod zigzag;

pub mod prelude {
    pub use crate::complex::{associated_asc, subsimplex_count, Simplex, SimplicialComplex, SizeCap};
    pub use crate::homology::{betti, induced_rank, BettiVector};
    pub use crate::hypergraph::{EventMode, EventRow, Hypergraph, RawEdge, TemporalHypergraph};
    pub use crate::pipeline::{run_pipeline, PipelineConfig, PipelineError};
    pub use crate::report::BarcodeDocument;
    pub use crate::windows::{make_windows, snapshot, snapshot_sequence, summary_stats, Window};
    pub use crate::zigzag::{interleave, to_time_axis, zigzag_barcode, Axis, Barcode, InterleaveMode, Position};
}
