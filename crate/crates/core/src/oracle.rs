//! Reference persistence by left-to-right reduction of the boundary matrix.
//!
//! Shares nothing with the annotation engine beyond field arithmetic and the
//! complex itself, so the two can check each other.

use std::collections::HashMap;

use crate::complex::FilteredComplex;
use crate::diagram::{PersistenceDiagram, PersistencePair};
use crate::field::{FieldElement, FieldSpec};

type Column = Vec<(usize, FieldElement)>;

/// Boundary matrix in filtration order: column `j` lists `(row position, coefficient)`.
pub fn boundary_matrix(c: &FilteredComplex, field: &FieldSpec, len: usize) -> Vec<Column> {
    let order = &c.filtration_order()[..len];
    order
        .iter()
        .map(|&s| {
            let mut col: Column = c
                .boundary(s)
                .iter()
                .map(|f| (c.position(f.face), field.element(f.sign as i64)))
                .collect();
            col.sort_by_key(|&(r, _)| r);
            col
        })
        .collect()
}

/// `a += k * b` over sorted sparse columns.
fn add_multiple(field: &FieldSpec, a: &Column, k: FieldElement, b: &Column) -> Column {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(k, b[j].1)));
            j += 1;
        } else {
            let v = field.add(a[i].1, field.mul(k, b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Pivot (lowest row) of every reduced column, `None` for zero columns.
fn reduce_lows(c: &FilteredComplex, field: &FieldSpec, len: usize) -> Vec<Option<usize>> {
    let mut cols = boundary_matrix(c, field, len);
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut lows = vec![None; len];
    for j in 0..len {
        while let Some(&(low, coeff)) = cols[j].last() {
            match owner.get(&low) {
                Some(&k) => {
                    let pivot = cols[k].last().expect("reduced column is nonzero").1;
                    let factor = field.neg(field.div(coeff, pivot).expect("nonzero pivot"));
                    cols[j] = add_multiple(field, &cols[j], factor, &cols[k]);
                }
                None => {
                    owner.insert(low, j);
                    lows[j] = Some(low);
                    break;
                }
            }
        }
    }
    lows
}

/// Persistence diagram of the whole filtration, zero-length pairs removed.
pub fn reduce(c: &FilteredComplex, field: &FieldSpec) -> PersistenceDiagram {
    reduce_with(c, field, false)
}

pub fn reduce_with(c: &FilteredComplex, field: &FieldSpec, emit_zero_length: bool) -> PersistenceDiagram {
    let n = c.len();
    let order = c.filtration_order();
    let lows = reduce_lows(c, field, n);
    let mut killed = vec![false; n];
    let mut pairs = Vec::new();
    for (j, low) in lows.iter().enumerate() {
        if let Some(i) = *low {
            killed[i] = true;
            let (born, dies) = (order[i], order[j]);
            pairs.push(PersistencePair {
                dim: c.dim(born),
                birth: c.value(born),
                death: c.value(dies),
                creator: c.labeled_simplex(born),
                killer: Some(c.labeled_simplex(dies)),
            });
        }
    }
    for j in 0..n {
        if lows[j].is_none() && !killed[j] {
            let s = order[j];
            pairs.push(PersistencePair {
                dim: c.dim(s),
                birth: c.value(s),
                death: f64::INFINITY,
                creator: c.labeled_simplex(s),
                killer: None,
            });
        }
    }
    let d = PersistenceDiagram::new(pairs);
    if emit_zero_length {
        d
    } else {
        d.without_zero_length()
    }
}

/// Betti numbers of the subcomplex formed by the first `prefix_len`
/// simplices of the filtration, indexed by dimension up to the prefix's
/// dimension.
pub fn betti_numbers(c: &FilteredComplex, field: &FieldSpec, prefix_len: usize) -> Vec<usize> {
    let order = c.filtration_order();
    let prefix_len = prefix_len.min(c.len());
    let lows = reduce_lows(c, field, prefix_len);
    let top = order[..prefix_len].iter().map(|&s| c.dim(s)).max();
    let Some(top) = top else { return Vec::new() };
    let mut betti = vec![0isize; top + 1];
    for (j, low) in lows.iter().enumerate() {
        match low {
            None => betti[c.dim(order[j])] += 1,
            Some(i) => betti[c.dim(order[*i])] -= 1,
        }
    }
    betti.into_iter().map(|b| b as usize).collect()
}
