//! Persistence pairs and diagrams.

use std::cmp::Ordering;

use crate::complex::Simplex;

/// One point of a persistence diagram together with the simplices that
/// produced it. `death` is `f64::INFINITY` for essential classes.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistencePair {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
    pub creator: Simplex,
    pub killer: Option<Simplex>,
}

impl PersistencePair {
    pub fn point(&self) -> DiagramPoint {
        DiagramPoint { dim: self.dim, birth: self.birth, death: self.death }
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramPoint {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl DiagramPoint {
    pub fn new(dim: usize, birth: f64, death: f64) -> Self {
        DiagramPoint { dim, birth, death }
    }

    /// Total order by (dim, birth, death).
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.birth.total_cmp(&other.birth))
            .then_with(|| self.death.total_cmp(&other.death))
    }
}

/// Multiset of persistence pairs.
#[derive(Debug, Clone, Default)]
pub struct PersistenceDiagram {
    pairs: Vec<PersistencePair>,
}

impl PersistenceDiagram {
    pub fn new(pairs: Vec<PersistencePair>) -> Self {
        PersistenceDiagram { pairs }
    }

    pub fn pairs(&self) -> &[PersistencePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Points sorted by (dim, birth, death).
    pub fn points(&self) -> Vec<DiagramPoint> {
        let mut pts: Vec<DiagramPoint> = self.pairs.iter().map(PersistencePair::point).collect();
        pts.sort_by(DiagramPoint::cmp_canonical);
        pts
    }

    /// Number of essential classes per dimension, i.e. the Betti numbers of
    /// the whole complex. Trailing dimensions without classes are omitted.
    pub fn essential_counts(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for p in self.pairs.iter().filter(|p| p.is_essential()) {
            if out.len() <= p.dim {
                out.resize(p.dim + 1, 0);
            }
            out[p.dim] += 1;
        }
        out
    }

    pub fn without_zero_length(mut self) -> Self {
        self.pairs.retain(|p| p.birth != p.death);
        self
    }
}

/// Multiset equality of the (dim, birth, death) triples; creator and killer
/// simplices are ignored.
pub fn diagram_equal(a: &PersistenceDiagram, b: &PersistenceDiagram) -> bool {
    let (pa, pb) = (a.points(), b.points());
    pa.len() == pb.len() && pa.iter().zip(&pb).all(|(x, y)| x == y)
}

/// Human-readable symmetric difference of two diagrams.
pub fn diagram_diff(a: &PersistenceDiagram, b: &PersistenceDiagram) -> String {
    let (pa, pb) = (a.points(), b.points());
    let (mut i, mut j) = (0, 0);
    let mut out = String::new();
    while i < pa.len() || j < pb.len() {
        let ord = match (pa.get(i), pb.get(j)) {
            (Some(x), Some(y)) => x.cmp_canonical(y),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
            Ordering::Less => {
                let x = pa[i];
                out.push_str(&format!("- {} {} {}\n", x.dim, x.birth, x.death));
                i += 1;
            }
            Ordering::Greater => {
                let y = pb[j];
                out.push_str(&format!("+ {} {} {}\n", y.dim, y.birth, y.death));
                j += 1;
            }
        }
    }
    out
}
