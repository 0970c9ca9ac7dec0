//! Abstract simplicial complexes built from hypergraphs.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("size caps differ: {0} vs {1}")]
    CapMismatch(SizeCap, SizeCap),
    #[error("size cap must be at least 1")]
    ZeroCap,
}

/// Maximum number of vertices a simplex may have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SizeCap {
    Bounded(usize),
    Unbounded,
}

impl SizeCap {
    /// Cap needed to compute homology up to dimension `p_max`: a `p`-dimensional
    /// Betti number needs `(p+1)`-simplices, which have `p + 2` vertices.
    pub fn for_homology(p_max: usize) -> Self {
        SizeCap::Bounded(p_max + 2)
    }

    pub fn admits(&self, n_vertices: usize) -> bool {
        match self {
            SizeCap::Bounded(c) => n_vertices <= *c,
            SizeCap::Unbounded => true,
        }
    }
}

impl fmt::Display for SizeCap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeCap::Bounded(c) => write!(f, "{c}"),
            SizeCap::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// A simplex in canonical form (strictly ascending vertices).
///
/// Simplices order by dimension first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Simplex {
    vertices: Vec<VertexId>,
}

impl Simplex {
    /// Sorts and deduplicates; returns `None` for an empty vertex list.
    pub fn new(mut vertices: Vec<VertexId>) -> Option<Self> {
        vertices.sort();
        vertices.dedup();
        (!vertices.is_empty()).then_some(Simplex { vertices })
    }

    /// Convenience constructor from string labels.
    pub fn from_names(names: &[&str]) -> Option<Self> {
        let vs = names.iter().map(|n| VertexId::new(n)).collect::<Result<Vec<_>, _>>().ok()?;
        Self::new(vs)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Codimension-one faces, in the order obtained by dropping vertex 0, 1, ...
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.vertices.len() > 1 { self.vertices.len() } else { 0 };
        (0..n).map(move |skip| Simplex {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, v)| v.clone())
                .collect(),
        })
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.vertices.iter().all(|v| other.vertices.binary_search(v).is_ok())
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices
            .len()
            .cmp(&other.vertices.len())
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.vertices.iter().join(","))
    }
}

/// Face-closed set of simplices, none larger than `size_cap` vertices.
///
/// Iteration is in (dimension, lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
    size_cap: SizeCap,
}

impl SimplicialComplex {
    pub fn empty(size_cap: SizeCap) -> Self {
        SimplicialComplex { simplices: BTreeSet::new(), size_cap }
    }

    /// Closure of the given generators under taking faces, truncated at the cap.
    pub fn from_generators<I>(generators: I, size_cap: SizeCap) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Simplex>,
    {
        if size_cap == SizeCap::Bounded(0) {
            return Err(ComplexError::ZeroCap);
        }
        let mut simplices = BTreeSet::new();
        for g in generators {
            insert_subsets(&mut simplices, g.vertices(), size_cap);
        }
        Ok(SimplicialComplex { simplices, size_cap })
    }

    pub fn size_cap(&self) -> SizeCap {
        self.size_cap
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Simplex> + '_ {
        self.simplices.iter()
    }

    pub fn simplices(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    pub fn of_dimension(&self, p: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter().filter(move |s| s.dimension() == p)
    }

    pub fn count_of_dimension(&self, p: usize) -> usize {
        self.of_dimension(p).count()
    }

    /// Dimension of the largest simplex; `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().next_back().map(Simplex::dimension)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    /// Every facet of every simplex is present.
    pub fn is_face_closed(&self) -> bool {
        self.simplices.iter().all(|s| s.facets().all(|f| self.simplices.contains(&f)))
    }

    fn check_caps(&self, other: &SimplicialComplex) -> Result<(), ComplexError> {
        if self.size_cap != other.size_cap {
            return Err(ComplexError::CapMismatch(self.size_cap, other.size_cap));
        }
        Ok(())
    }

    pub fn union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        self.check_caps(other)?;
        Ok(SimplicialComplex {
            simplices: self.simplices.union(&other.simplices).cloned().collect(),
            size_cap: self.size_cap,
        })
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        self.check_caps(other)?;
        Ok(SimplicialComplex {
            simplices: self.simplices.intersection(&other.simplices).cloned().collect(),
            size_cap: self.size_cap,
        })
    }

    /// Simplices in `self` but not in `other`.
    pub fn difference<'a>(&'a self, other: &'a SimplicialComplex) -> impl Iterator<Item = &'a Simplex> + 'a {
        self.simplices.difference(&other.simplices)
    }
}

fn insert_subsets(out: &mut BTreeSet<Simplex>, vertices: &[VertexId], cap: SizeCap) {
    let top = match cap {
        SizeCap::Bounded(c) => c.min(vertices.len()),
        SizeCap::Unbounded => vertices.len(),
    };
    for k in 1..=top {
        for combo in vertices.iter().combinations(k) {
            out.insert(Simplex { vertices: combo.into_iter().cloned().collect() });
        }
    }
}

/// Associated complex of a hypergraph: all non-empty subsets of each hyperedge
/// with at most `size_cap` vertices.
pub fn associated_asc(h: &Hypergraph, size_cap: SizeCap) -> Result<SimplicialComplex, ComplexError> {
    if size_cap == SizeCap::Bounded(0) {
        return Err(ComplexError::ZeroCap);
    }
    let mut simplices = BTreeSet::new();
    for edge in &h.edges {
        let vs: Vec<VertexId> = edge.vertices.iter().cloned().collect();
        insert_subsets(&mut simplices, &vs, size_cap);
    }
    Ok(SimplicialComplex { simplices, size_cap })
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of simplices in the associated complex of a single `m`-vertex edge.
///
/// Saturates at `u128::MAX` for very large `m`.
pub fn subsimplex_count(m: usize, size_cap: SizeCap) -> u128 {
    match size_cap {
        SizeCap::Unbounded if m < 128 => (1u128 << m) - 1,
        SizeCap::Unbounded => u128::MAX,
        SizeCap::Bounded(c) => (1..=c.min(m))
            .map(|j| binomial(m as u128, j as u128))
            .fold(0u128, u128::saturating_add),
    }
}
