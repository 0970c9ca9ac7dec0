//! Simplex-wise zigzag persistence.
//!
//! For every dimension `p` the engine keeps a basis of the cycle space
//! `Z_p` of the current complex. Each basis cycle is either
//!
//! * alive: it represents a homology class and carries the step at which
//!   that class was born, or
//! * bounded: it is the boundary of a stored `(p+1)`-chain.
//!
//! The bounded cycles span `B_p`, and the bounding chains together with
//! `Z_{p+1}` span `C_{p+1}`. Insertions and deletions update this basis
//! with elementary column operations that never change the interval an
//! alive cycle stands for. Which class dies when several are candidates is
//! decided by [`Birth::rank`]: a class born by an insertion is younger the
//! later it was born, a class born by a deletion is younger the earlier it
//! was born, and every insertion-born class is younger than every
//! deletion-born one.
//!
//! Solving "which basis cycles sum to this boundary" uses a separate
//! echelon form of the same space: rows with distinct lowest keys, each
//! tagged with the set of basis ids it is the sum of.

use std::collections::HashMap;

use crate::homology::xor_into;

use super::Position;

pub(crate) type Key = u32;
type Chain = Vec<Key>;
type BasisId = u32;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Birth {
    step: u32,
    by_insertion: bool,
    pub position: Position,
}

impl Birth {
    /// Larger is younger.
    fn rank(&self) -> (bool, i64) {
        if self.by_insertion {
            (true, i64::from(self.step))
        } else {
            (false, -i64::from(self.step))
        }
    }
}

#[derive(Debug, Clone)]
enum Role {
    Alive(Birth),
    /// The cycle is the boundary of this chain.
    Bounded(Chain),
}

#[derive(Debug, Clone)]
struct BasisCycle {
    cycle: Chain,
    role: Role,
}

#[derive(Debug, Clone)]
struct Row {
    vector: Chain,
    combo: Vec<BasisId>,
}

#[derive(Debug, Default)]
struct CycleSpace {
    basis: Vec<Option<BasisCycle>>,
    free: Vec<BasisId>,
    rows: HashMap<Key, Row>,
}

impl CycleSpace {
    fn get(&self, id: BasisId) -> &BasisCycle {
        self.basis[id as usize].as_ref().expect("live basis id")
    }

    fn get_mut(&mut self, id: BasisId) -> &mut BasisCycle {
        self.basis[id as usize].as_mut().expect("live basis id")
    }

    fn ids(&self) -> impl Iterator<Item = BasisId> + '_ {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_some())
            .map(|(i, _)| i as BasisId)
    }

    fn add(&mut self, cycle: BasisCycle) -> BasisId {
        let mut vector = cycle.cycle.clone();
        let id = match self.free.pop() {
            Some(id) => {
                self.basis[id as usize] = Some(cycle);
                id
            }
            None => {
                self.basis.push(Some(cycle));
                (self.basis.len() - 1) as BasisId
            }
        };
        let mut combo = vec![id];
        while let Some(&low) = vector.last() {
            match self.rows.get(&low) {
                Some(row) => {
                    xor_into(&mut vector, &row.vector);
                    xor_into(&mut combo, &row.combo);
                }
                None => break,
            }
        }
        let low = *vector.last().expect("new cycle is independent of the basis");
        combo.sort_unstable();
        self.rows.insert(low, Row { vector, combo });
        id
    }

    /// Basis ids summing to `x`, or `None` if `x` is not in the span.
    fn express(&self, x: &[Key]) -> Option<Vec<BasisId>> {
        let mut vector = x.to_vec();
        let mut combo = Vec::new();
        while let Some(&low) = vector.last() {
            let row = self.rows.get(&low)?;
            xor_into(&mut vector, &row.vector);
            xor_into(&mut combo, &row.combo);
        }
        Some(combo)
    }

    /// Basis vector `k` has been replaced by `k + sum(toggle)`; rewrite the
    /// row tags so each row still denotes the same vector.
    fn substitute(&mut self, k: BasisId, toggle: &[BasisId]) {
        for row in self.rows.values_mut() {
            if row.combo.binary_search(&k).is_ok() {
                xor_into(&mut row.combo, toggle);
            }
        }
    }

    /// Drops basis vector `j` and shrinks the echelon form to match.
    fn remove(&mut self, j: BasisId) {
        let mut holders: Vec<Key> = self
            .rows
            .iter()
            .filter(|(_, r)| r.combo.binary_search(&j).is_ok())
            .map(|(&low, _)| low)
            .collect();
        holders.sort_unstable();
        let pivot = self.rows.remove(&holders[0]).expect("row holding removed id");
        for low in &holders[1..] {
            let row = self.rows.get_mut(low).expect("holder row");
            xor_into(&mut row.vector, &pivot.vector);
            xor_into(&mut row.combo, &pivot.combo);
        }
        self.basis[j as usize] = None;
        self.free.push(j);
    }
}

/// A finished interval in fine positions snapped to the coarse grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct RawPair {
    pub dimension: usize,
    pub birth: Position,
    pub death: Position,
}

#[derive(Debug, Default)]
pub(crate) struct Engine {
    spaces: Vec<CycleSpace>,
    step: u32,
    pairs: Vec<RawPair>,
}

impl Engine {
    pub fn new(top_dimension: usize) -> Self {
        Engine {
            spaces: (0..=top_dimension).map(|_| CycleSpace::default()).collect(),
            ..Default::default()
        }
    }

    fn record(&mut self, dimension: usize, birth: Birth, death: Position) {
        if birth.position != death {
            self.pairs.push(RawPair { dimension, birth: birth.position, death });
        }
    }

    /// Adds simplex `key` of dimension `p` with the given (sorted) facet keys.
    pub fn insert(&mut self, key: Key, p: usize, boundary: &[Key], position: Position) {
        self.step += 1;
        let birth = Birth { step: self.step, by_insertion: true, position };
        if p == 0 {
            self.spaces[0].add(BasisCycle { cycle: vec![key], role: Role::Alive(birth) });
            return;
        }
        let lower = &self.spaces[p - 1];
        let combo = lower.express(boundary).expect("boundary of an inserted simplex is a cycle");
        let youngest = combo
            .iter()
            .filter_map(|&id| match lower.get(id).role {
                Role::Alive(b) => Some((id, b)),
                Role::Bounded(_) => None,
            })
            .max_by_key(|(_, b)| b.rank());
        match youngest {
            None => {
                // The boundary already bounds: a new p-cycle appears.
                let mut cycle = vec![key];
                for &id in &combo {
                    if let Role::Bounded(chain) = &lower.get(id).role {
                        xor_into(&mut cycle, chain);
                    }
                }
                self.spaces[p].add(BasisCycle { cycle, role: Role::Alive(birth) });
            }
            Some((j, dying)) => {
                let others: Vec<BasisId> = combo.iter().copied().filter(|&id| id != j).collect();
                let lower = &mut self.spaces[p - 1];
                lower.substitute(j, &others);
                *lower.get_mut(j) = BasisCycle { cycle: boundary.to_vec(), role: Role::Bounded(vec![key]) };
                self.record(p - 1, dying, position);
            }
        }
    }

    /// Removes simplex `key` of dimension `p`; all its cofaces must already be gone.
    pub fn delete(&mut self, key: Key, p: usize, position: Position) {
        self.step += 1;
        let space = &self.spaces[p];
        let carriers: Vec<(BasisId, Birth)> = space
            .ids()
            .filter_map(|id| {
                let b = space.get(id);
                match b.role {
                    Role::Alive(birth) if b.cycle.binary_search(&key).is_ok() => Some((id, birth)),
                    _ => None,
                }
            })
            .collect();

        if let Some(&(j, dying)) = carriers.iter().min_by_key(|(_, b)| b.rank()) {
            // The simplex sits on a live cycle: the oldest such class dies.
            let zj = self.spaces[p].get(j).cycle.clone();
            for &(k, _) in &carriers {
                if k != j {
                    let space = &mut self.spaces[p];
                    xor_into(&mut space.get_mut(k).cycle, &zj);
                    space.substitute(k, &[j]);
                }
            }
            if p > 0 {
                let lower = &mut self.spaces[p - 1];
                for slot in lower.basis.iter_mut().flatten() {
                    if let Role::Bounded(chain) = &mut slot.role {
                        if chain.binary_search(&key).is_ok() {
                            xor_into(chain, &zj);
                        }
                    }
                }
            }
            self.spaces[p].remove(j);
            self.record(p, dying, position);
            return;
        }

        // Otherwise the simplex lies on a bounding chain: a (p-1)-class is born.
        assert!(p > 0, "a vertex always lies on a live 0-cycle");
        let lower = &self.spaces[p - 1];
        let mut holders: Vec<(usize, BasisId)> = lower
            .ids()
            .filter_map(|id| match &lower.get(id).role {
                Role::Bounded(chain) if chain.binary_search(&key).is_ok() => Some((chain.len(), id)),
                _ => None,
            })
            .collect();
        holders.sort_unstable();
        let &(_, j) = holders.first().expect("deleted simplex lies on a bounding chain");
        let lower = &mut self.spaces[p - 1];
        let zj = lower.get(j).cycle.clone();
        let cj = match &lower.get(j).role {
            Role::Bounded(chain) => chain.clone(),
            Role::Alive(_) => unreachable!(),
        };
        for &(_, k) in &holders[1..] {
            let b = lower.get_mut(k);
            xor_into(&mut b.cycle, &zj);
            if let Role::Bounded(chain) = &mut b.role {
                xor_into(chain, &cj);
            }
            lower.substitute(k, &[j]);
        }
        lower.get_mut(j).role = Role::Alive(Birth { step: self.step, by_insertion: false, position });
    }

    /// Closes every live class at `end` and returns all intervals.
    pub fn finish(mut self, max_dimension: usize, end: Position) -> Vec<(RawPair, bool)> {
        let mut out: Vec<(RawPair, bool)> = std::mem::take(&mut self.pairs)
            .into_iter()
            .filter(|p| p.dimension <= max_dimension)
            .map(|p| (p, false))
            .collect();
        for (dimension, space) in self.spaces.iter().enumerate().take(max_dimension + 1) {
            for id in space.ids() {
                if let Role::Alive(b) = space.get(id).role {
                    out.push((RawPair { dimension, birth: b.position, death: end }, true));
                }
            }
        }
        out
    }
}
