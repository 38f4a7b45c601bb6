//! Reordering of iso-simplices (simplices sharing one filtration value).
//!
//! Within a slab the insertion order is free up to inclusion. For each slab
//! simplex in turn, an upward depth-first walk of the slab's Hasse diagram
//! collects the inclusion-maximal cofaces, then a downward depth-first walk
//! from each maximal coface emits its faces before itself. Holes are thus
//! filled right after they appear and adjacent maximal simplices are emitted
//! next to each other.

use std::collections::HashMap;

use thiserror::Error;

use crate::complex::{FilteredComplex, Simplex, SimplexId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReorderError {
    #[error("SlabNotRelativelyClosed: face {face} of {simplex} is neither earlier nor in the slab")]
    SlabNotRelativelyClosed { simplex: Simplex, face: Simplex },
    #[error("SlabValueMismatch: {simplex} has value {found}, slab value is {expected}")]
    SlabValueMismatch { simplex: Simplex, expected: f64, found: f64 },
    #[error("DuplicateSimplex: {0} appears twice in the slab")]
    DuplicateSimplex(Simplex),
}

/// Simplices sharing one filtration value, given in an inclusion-respecting order.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoSlab {
    pub value: f64,
    pub simplices: Vec<SimplexId>,
}

/// Number of Hasse-diagram edges walked in each direction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TraversalCounters {
    pub up_edges: usize,
    pub down_edges: usize,
}

const F_UP: u8 = 1;
const F_DOWN: u8 = 2;

/// Consecutive equal-value runs of the filtration order, produced lazily.
pub fn slabs(c: &FilteredComplex) -> impl Iterator<Item = IsoSlab> + '_ {
    let order = c.filtration_order();
    let mut start = 0;
    std::iter::from_fn(move || {
        if start >= order.len() {
            return None;
        }
        let value = c.value(order[start]);
        let len = order[start..].iter().take_while(|&&s| c.value(s) == value).count();
        let slab = IsoSlab { value, simplices: order[start..start + len].to_vec() };
        start += len;
        Some(slab)
    })
}

pub fn slab_partition(c: &FilteredComplex) -> Vec<IsoSlab> {
    slabs(c).collect()
}

pub fn reorder_slab(c: &FilteredComplex, slab: &IsoSlab) -> Result<Vec<SimplexId>, ReorderError> {
    reorder_slab_counted(c, slab, &mut TraversalCounters::default())
}

struct Walk<'a> {
    c: &'a FilteredComplex,
    value: f64,
    local: HashMap<SimplexId, usize>,
    flags: Vec<u8>,
    counters: &'a mut TraversalCounters,
    out: Vec<SimplexId>,
}

impl Walk<'_> {
    fn up(&mut self, s: SimplexId, maximal: &mut Vec<SimplexId>) {
        self.flags[self.local[&s]] |= F_UP;
        let cofaces: Vec<SimplexId> = self
            .c
            .codim1_cofaces(s, self.value..=self.value)
            .into_iter()
            .filter(|t| self.local.contains_key(t))
            .collect();
        self.counters.up_edges += cofaces.len();
        if cofaces.is_empty() {
            maximal.push(s);
            return;
        }
        for t in cofaces {
            if self.flags[self.local[&t]] & F_UP == 0 {
                self.up(t, maximal);
            }
        }
    }

    fn down(&mut self, s: SimplexId) {
        self.flags[self.local[&s]] |= F_DOWN;
        for f in self.c.boundary(s) {
            if let Some(&i) = self.local.get(&f.face) {
                self.counters.down_edges += 1;
                if self.flags[i] & F_DOWN == 0 {
                    self.down(f.face);
                }
            }
        }
        self.out.push(s);
    }
}

/// Like [`reorder_slab`], also accumulating traversal counts.
pub fn reorder_slab_counted(
    c: &FilteredComplex,
    slab: &IsoSlab,
    counters: &mut TraversalCounters,
) -> Result<Vec<SimplexId>, ReorderError> {
    if slab.simplices.len() <= 1 {
        return Ok(slab.simplices.clone());
    }
    let mut local = HashMap::with_capacity(slab.simplices.len());
    for (i, &s) in slab.simplices.iter().enumerate() {
        if c.value(s) != slab.value {
            return Err(ReorderError::SlabValueMismatch {
                simplex: c.labeled_simplex(s),
                expected: slab.value,
                found: c.value(s),
            });
        }
        if local.insert(s, i).is_some() {
            return Err(ReorderError::DuplicateSimplex(c.labeled_simplex(s)));
        }
    }
    for &s in &slab.simplices {
        for f in c.boundary(s) {
            if !(c.value(f.face) < slab.value || local.contains_key(&f.face)) {
                return Err(ReorderError::SlabNotRelativelyClosed {
                    simplex: c.labeled_simplex(s),
                    face: c.labeled_simplex(f.face),
                });
            }
        }
    }

    let mut walk = Walk {
        c,
        value: slab.value,
        flags: vec![0; slab.simplices.len()],
        local,
        counters,
        out: Vec::with_capacity(slab.simplices.len()),
    };
    let mut maximal = Vec::new();
    for &s in &slab.simplices {
        if walk.flags[walk.local[&s]] & F_UP != 0 {
            continue;
        }
        maximal.clear();
        walk.up(s, &mut maximal);
        for &m in &maximal {
            if walk.flags[walk.local[&m]] & F_DOWN == 0 {
                walk.down(m);
            }
        }
    }
    debug_assert_eq!(walk.out.len(), slab.simplices.len());
    Ok(walk.out)
}
