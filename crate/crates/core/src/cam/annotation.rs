use std::fmt;

use crate::field::{FieldElement, FieldSpec};

/// Index of a cocycle row inside one dimension's annotation matrix.
/// Indices are handed out in increasing order and never recycled, so a larger
/// index always means a younger cocycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowIndex(pub u32);

impl fmt::Display for RowIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sparse annotation vector: `(row, coefficient)` pairs with strictly
/// increasing rows and nonzero coefficients. Empty means zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AnnotationVector {
    entries: Vec<(RowIndex, FieldElement)>,
}

impl AnnotationVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a canonical vector from raw pairs: coefficients are reduced
    /// into the field, duplicate rows are summed, zeros dropped.
    pub fn from_pairs(field: &FieldSpec, pairs: &[(u32, i64)]) -> Self {
        let mut v: Vec<(u32, FieldElement)> =
            pairs.iter().map(|&(r, c)| (r, field.element(c))).collect();
        v.sort_by_key(|&(r, _)| r);
        let mut entries: Vec<(RowIndex, FieldElement)> = Vec::with_capacity(v.len());
        for (r, c) in v {
            match entries.last_mut() {
                Some((lr, lc)) if lr.0 == r => *lc = field.add(*lc, c),
                _ => entries.push((RowIndex(r), c)),
            }
        }
        entries.retain(|&(_, c)| !c.is_zero());
        AnnotationVector { entries }
    }

    /// Wraps entries that are already canonical.
    pub(crate) fn from_canonical(entries: Vec<(RowIndex, FieldElement)>) -> Self {
        debug_assert!(is_canonical(&entries));
        AnnotationVector { entries }
    }

    pub fn entries(&self) -> &[(RowIndex, FieldElement)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The nonzero entry with the largest row index.
    pub fn max_entry(&self) -> Option<(RowIndex, FieldElement)> {
        self.entries.last().copied()
    }

    pub fn coeff(&self, row: RowIndex) -> FieldElement {
        self.entries
            .binary_search_by_key(&row, |&(r, _)| r)
            .map(|i| self.entries[i].1)
            .unwrap_or(FieldElement::ZERO)
    }

    /// `self += scale * other`, returning the number of field operations spent.
    pub(crate) fn add_scaled(
        &mut self,
        field: &FieldSpec,
        scale: FieldElement,
        other: impl IntoIterator<Item = (RowIndex, FieldElement)>,
        scratch: &mut Vec<(RowIndex, FieldElement)>,
    ) -> u64 {
        scratch.clear();
        let ops = merge_scaled(field, &self.entries, scale, other, scratch);
        std::mem::swap(&mut self.entries, scratch);
        ops
    }
}

pub(crate) fn is_canonical(entries: &[(RowIndex, FieldElement)]) -> bool {
    entries.iter().all(|&(_, c)| !c.is_zero()) && entries.windows(2).all(|w| w[0].0 < w[1].0)
}

/// Writes `a + scale * b` into `out`. Returns the field-operation count.
pub(crate) fn merge_scaled(
    field: &FieldSpec,
    a: &[(RowIndex, FieldElement)],
    scale: FieldElement,
    b: impl IntoIterator<Item = (RowIndex, FieldElement)>,
    out: &mut Vec<(RowIndex, FieldElement)>,
) -> u64 {
    let mut ops = 0u64;
    if scale.is_zero() {
        out.extend_from_slice(a);
        return 0;
    }
    let scaled = |c: FieldElement, ops: &mut u64| {
        if scale == FieldElement::ONE {
            c
        } else {
            *ops += 1;
            field.mul(scale, c)
        }
    };
    let mut ai = a.iter().copied().peekable();
    for (rb, cb) in b {
        while let Some(&(ra, ca)) = ai.peek() {
            if ra < rb {
                out.push((ra, ca));
                ai.next();
            } else {
                break;
            }
        }
        let term = scaled(cb, &mut ops);
        match ai.peek() {
            Some(&(ra, ca)) if ra == rb => {
                ai.next();
                ops += 1;
                let s = field.add(ca, term);
                if !s.is_zero() {
                    out.push((ra, s));
                }
            }
            _ => out.push((rb, term)),
        }
    }
    out.extend(ai);
    ops
}

/// Sum of two annotation vectors, together with the nonzero entry of largest
/// row index in the result (if any).
pub fn sum_ann(
    a1: &AnnotationVector,
    a2: &AnnotationVector,
    field: &FieldSpec,
) -> (AnnotationVector, Option<(RowIndex, FieldElement)>) {
    let mut out = Vec::with_capacity(a1.len() + a2.len());
    merge_scaled(field, &a1.entries, FieldElement::ONE, a2.entries.iter().copied(), &mut out);
    let sum = AnnotationVector::from_canonical(out);
    let top = sum.max_entry();
    (sum, top)
}

/// Multiplies every coefficient by `scale`.
pub fn scale_ann(a: &AnnotationVector, scale: FieldElement, field: &FieldSpec) -> AnnotationVector {
    if scale.is_zero() {
        return AnnotationVector::zero();
    }
    AnnotationVector::from_canonical(
        a.entries.iter().map(|&(r, c)| (r, field.mul(scale, c))).collect(),
    )
}
