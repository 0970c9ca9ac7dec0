//! Simplicial homology over GF(2).
//!
//! Everything here runs on sparse column matrices and the standard
//! left-to-right column reduction with low-row pivots.

use std::collections::HashMap;

use thiserror::Error;

use crate::complex::{SimplicialComplex, SizeCap, Simplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("size cap {cap} too small for homology up to dimension {p_max} (need {need} vertices)")]
    CapTooSmall { cap: SizeCap, p_max: usize, need: usize },
    #[error("complex is not a subcomplex of the target")]
    NotSubcomplex,
    #[error("row index {row} out of bounds for a matrix with {rows} rows")]
    RowOutOfBounds { row: usize, rows: usize },
    #[error("dimension mismatch: {0} columns times {1} rows")]
    ShapeMismatch(usize, usize),
}

/// Adds `other` into `acc` over GF(2). Both must be sorted ascending.
pub fn xor_into<T: Ord + Copy>(acc: &mut Vec<T>, other: &[T]) {
    if other.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(acc.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() && j < other.len() {
        match acc[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                out.push(acc[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&acc[i..]);
    out.extend_from_slice(&other[j..]);
    *acc = out;
}

/// Sparse matrix over GF(2), stored column-wise as sorted row-index lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    columns: Vec<Vec<usize>>,
}

impl Gf2Matrix {
    /// Sorts each column and cancels repeated entries in pairs.
    pub fn new(rows: usize, columns: Vec<Vec<usize>>) -> Result<Self, HomologyError> {
        let mut cleaned = Vec::with_capacity(columns.len());
        for mut col in columns {
            col.sort_unstable();
            let mut out: Vec<usize> = Vec::with_capacity(col.len());
            for r in col {
                if r >= rows {
                    return Err(HomologyError::RowOutOfBounds { row: r, rows });
                }
                if out.last() == Some(&r) {
                    out.pop();
                } else {
                    out.push(r);
                }
            }
            cleaned.push(out);
        }
        Ok(Gf2Matrix { rows, columns: cleaned })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix { rows: n, columns: (0..n).map(|i| vec![i]).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col].binary_search(&row).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix, HomologyError> {
        if self.cols() != rhs.rows {
            return Err(HomologyError::ShapeMismatch(self.cols(), rhs.rows));
        }
        let columns = rhs
            .columns
            .iter()
            .map(|rc| {
                let mut acc = Vec::new();
                for &k in rc {
                    xor_into(&mut acc, &self.columns[k]);
                }
                acc
            })
            .collect();
        Ok(Gf2Matrix { rows: self.rows, columns })
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, HomologyError> {
        if self.rows != other.rows {
            return Err(HomologyError::ShapeMismatch(self.rows, other.rows));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(Gf2Matrix { rows: self.rows, columns })
    }
}

/// Result of reducing a matrix `D` to `R = D V`.
#[derive(Debug, Clone)]
pub struct Reduction {
    /// Reduced columns of `R`.
    pub reduced: Vec<Vec<usize>>,
    /// Columns of `V`, present only when requested.
    pub transform: Option<Vec<Vec<usize>>>,
}

impl Reduction {
    /// Lowest non-zero row of reduced column `j`.
    pub fn low(&self, j: usize) -> Option<usize> {
        self.reduced[j].last().copied()
    }

    pub fn rank(&self) -> usize {
        self.reduced.iter().filter(|c| !c.is_empty()).count()
    }

    /// Columns of `V` whose reduced column vanished: a basis of the kernel.
    pub fn kernel(&self) -> Vec<Vec<usize>> {
        match &self.transform {
            Some(v) => self
                .reduced
                .iter()
                .zip(v)
                .filter(|(r, _)| r.is_empty())
                .map(|(_, vc)| vc.clone())
                .collect(),
            None => Vec::new(),
        }
    }
}

/// Left-to-right column reduction: every non-zero column ends up with a
/// distinct lowest row.
pub fn reduce(m: &Gf2Matrix, track_transform: bool) -> Reduction {
    let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(m.cols());
    let mut transform: Option<Vec<Vec<usize>>> = track_transform.then(|| Vec::with_capacity(m.cols()));
    let mut pivot_of_low: HashMap<usize, usize> = HashMap::new();
    for (j, col) in m.columns.iter().enumerate() {
        let mut r = col.clone();
        let mut v = vec![j];
        while let Some(&low) = r.last() {
            match pivot_of_low.get(&low) {
                Some(&k) => {
                    xor_into(&mut r, &reduced[k]);
                    if let Some(t) = &transform {
                        xor_into(&mut v, &t[k]);
                    }
                }
                None => {
                    pivot_of_low.insert(low, j);
                    break;
                }
            }
        }
        reduced.push(r);
        if let Some(t) = &mut transform {
            t.push(v);
        }
    }
    Reduction { reduced, transform }
}

pub fn rank(m: &Gf2Matrix) -> usize {
    reduce(m, false).rank()
}

/// Index of each `p`-simplex of `k` in canonical order.
pub fn simplex_index(k: &SimplicialComplex, p: usize) -> HashMap<&Simplex, usize> {
    k.of_dimension(p).enumerate().map(|(i, s)| (s, i)).collect()
}

/// Boundary map from `p`-chains to `(p-1)`-chains; zero rows when `p == 0`.
pub fn boundary_matrix(k: &SimplicialComplex, p: usize) -> Gf2Matrix {
    if p == 0 {
        return Gf2Matrix::zeros(0, k.count_of_dimension(0));
    }
    let rows = simplex_index(k, p - 1);
    let columns = k
        .of_dimension(p)
        .map(|s| {
            let mut col: Vec<usize> = s.facets().map(|f| rows[&f]).collect();
            col.sort_unstable();
            col
        })
        .collect();
    Gf2Matrix { rows: rows.len(), columns }
}

/// Betti numbers `b_0, ..., b_{p_max}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, p: usize) -> usize {
        self.0.get(p).copied().unwrap_or(0)
    }
}

fn check_cap(k: &SimplicialComplex, p_max: usize) -> Result<(), HomologyError> {
    let need = p_max + 2;
    if !k.size_cap().admits(need) {
        return Err(HomologyError::CapTooSmall { cap: k.size_cap(), p_max, need });
    }
    Ok(())
}

pub fn betti(k: &SimplicialComplex, p_max: usize) -> Result<BettiVector, HomologyError> {
    check_cap(k, p_max)?;
    let top = k.dimension();
    let ranks: Vec<usize> = (0..=p_max + 1)
        .map(|p| match top {
            Some(t) if p <= t && p > 0 => rank(&boundary_matrix(k, p)),
            _ => 0,
        })
        .collect();
    Ok(BettiVector(
        (0..=p_max)
            .map(|p| k.count_of_dimension(p) - ranks[p] - ranks[p + 1])
            .collect(),
    ))
}

/// Basis of the `p`-cycles of `k`, as index lists into `k`'s `p`-simplices.
pub fn cycle_basis(k: &SimplicialComplex, p: usize) -> Vec<Vec<usize>> {
    reduce(&boundary_matrix(k, p), true).kernel()
}

/// Rank of the map `H_p(sub) -> H_p(sup)` induced by inclusion.
///
/// Computed as `dim (Z_p(sub) + B_p(sup)) - dim B_p(sup)`.
pub fn induced_rank(sub: &SimplicialComplex, sup: &SimplicialComplex, p: usize) -> Result<usize, HomologyError> {
    if !sub.is_subcomplex_of(sup) {
        return Err(HomologyError::NotSubcomplex);
    }
    let sup_index = simplex_index(sup, p);
    let sub_simplices: Vec<&Simplex> = sub.of_dimension(p).collect();
    let cycles: Vec<Vec<usize>> = cycle_basis(sub, p)
        .into_iter()
        .map(|z| {
            let mut col: Vec<usize> = z.into_iter().map(|i| sup_index[sub_simplices[i]]).collect();
            col.sort_unstable();
            col
        })
        .collect();
    let boundaries = boundary_matrix(sup, p + 1);
    let cycles = Gf2Matrix { rows: sup_index.len(), columns: cycles };
    let joint = boundaries.hstack(&cycles)?;
    Ok(rank(&joint) - rank(&boundaries))
}
