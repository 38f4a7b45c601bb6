//! Filtered simplicial complexes stored in a simplex tree.
//!
//! A [`ComplexBuilder`] collects simplices with filtration values in any order.
//! [`ComplexBuilder::finalize`] validates closure under faces and monotonicity
//! of the filtration, relabels the vertices densely and freezes everything into
//! a [`FilteredComplex`]. The frozen complex never materializes the Hasse
//! diagram; its edges are walked through [`FilteredComplex::boundary`]
//! (downward) and [`FilteredComplex::codim1_cofaces`] (upward).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::RangeBounds;

use thiserror::Error;

pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComplexError {
    #[error("InvalidSimplex: {0}")]
    InvalidSimplex(String),
    #[error("InvalidValue: simplex {0} has a NaN filtration value")]
    InvalidValue(Simplex),
    #[error("ClosureViolation: face {face} of simplex {simplex} is missing")]
    ClosureViolation { simplex: Simplex, face: Simplex },
    #[error(
        "MonotonicityViolation: face {face} has value {face_value} greater than \
         {simplex_value} of its coface {simplex}"
    )]
    MonotonicityViolation {
        simplex: Simplex,
        simplex_value: f64,
        face: Simplex,
        face_value: f64,
    },
    #[error("UnknownSimplex: {0}")]
    UnknownSimplex(Simplex),
}

/// A simplex as a strictly ascending, non-empty list of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Sorts the vertices. Fails on an empty list or a repeated vertex.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self, ComplexError> {
        let mut v: Vec<VertexId> = vertices.into_iter().collect();
        if v.is_empty() {
            return Err(ComplexError::InvalidSimplex("empty vertex list".into()));
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::InvalidSimplex(format!("repeated vertex in {v:?}")));
        }
        Ok(Simplex(v))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-1 faces; the j-th one omits the j-th vertex.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |j| {
            let mut f = self.0.clone();
            f.remove(j);
            Simplex(f)
        })
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Handle to a simplex of a [`FilteredComplex`] (its simplex-tree node).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexId(u32);

impl SimplexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A codimension-1 face with its incidence sign `(-1)^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedFace {
    pub face: SimplexId,
    pub sign: i8,
}

/// Mutable collection of simplices prior to validation.
#[derive(Debug, Clone, Default)]
pub struct ComplexBuilder {
    simplices: HashMap<Vec<VertexId>, f64>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Inserts a simplex. Re-inserting keeps the smaller of the two values.
    /// Faces are not created.
    pub fn insert_simplex(&mut self, vertices: &[VertexId], value: f64) -> Result<(), ComplexError> {
        let s = Simplex::new(vertices.iter().copied())?;
        if value.is_nan() {
            return Err(ComplexError::InvalidValue(s));
        }
        self.simplices
            .entry(s.0)
            .and_modify(|v| *v = v.min(value))
            .or_insert(value);
        Ok(())
    }

    pub fn value(&self, vertices: &[VertexId]) -> Option<f64> {
        self.simplices.get(vertices).copied()
    }

    /// Simplices sorted by dimension, then lexicographically.
    pub fn sorted_simplices(&self) -> Vec<(Simplex, f64)> {
        let mut all: Vec<(Simplex, f64)> = self
            .simplices
            .iter()
            .map(|(k, &v)| (Simplex(k.clone()), v))
            .collect();
        all.sort_by(|a, b| a.0 .0.len().cmp(&b.0 .0.len()).then_with(|| a.0.cmp(&b.0)));
        all
    }

    /// Adds every missing face, valued at the minimum over the simplices containing it.
    /// Values of simplices already present are left untouched.
    pub fn close(mut self) -> Self {
        let max_len = self.simplices.keys().map(Vec::len).max().unwrap_or(0);
        let mut added: HashMap<Vec<VertexId>, f64> = HashMap::new();
        for len in (2..=max_len).rev() {
            let layer: Vec<(Vec<VertexId>, f64)> = self
                .simplices
                .iter()
                .filter(|(k, _)| k.len() == len)
                .map(|(k, &v)| (k.clone(), v))
                .collect();
            for (s, v) in layer {
                for j in 0..len {
                    let mut face = s.clone();
                    face.remove(j);
                    if let Some(&prev) = added.get(&face) {
                        let m = prev.min(v);
                        added.insert(face.clone(), m);
                        self.simplices.insert(face, m);
                    } else if let std::collections::hash_map::Entry::Vacant(e) =
                        self.simplices.entry(face)
                    {
                        added.insert(e.key().clone(), v);
                        e.insert(v);
                    }
                }
            }
        }
        self
    }

    /// Validates closure and monotonicity, then builds the simplex tree.
    pub fn finalize(self) -> Result<FilteredComplex, ComplexError> {
        let sorted = self.sorted_simplices();
        for (s, v) in &sorted {
            for face in s.facets() {
                match self.simplices.get(&face.0) {
                    None => {
                        return Err(ComplexError::ClosureViolation {
                            simplex: s.clone(),
                            face,
                        })
                    }
                    Some(&fv) if fv > *v => {
                        return Err(ComplexError::MonotonicityViolation {
                            simplex: s.clone(),
                            simplex_value: *v,
                            face,
                            face_value: fv,
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(FilteredComplex::build(sorted))
    }
}

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Node {
    vertex: VertexId,
    parent: u32,
    dim: u32,
    // sorted by vertex
    children: Vec<(VertexId, u32)>,
}

/// A validated, immutable filtered simplicial complex.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    nodes: Vec<Node>,
    values: Vec<f64>,
    labels: Vec<VertexId>,
    neighbors: Vec<Vec<VertexId>>,
    order: Vec<SimplexId>,
    position: Vec<u32>,
    dim_index: Vec<u32>,
    dim_counts: Vec<usize>,
}

impl FilteredComplex {
    /// `sorted` must be closed, monotone, and sorted by (dimension, lexicographic).
    fn build(sorted: Vec<(Simplex, f64)>) -> Self {
        let labels: Vec<VertexId> = sorted
            .iter()
            .take_while(|(s, _)| s.dim() == 0)
            .map(|(s, _)| s.0[0])
            .collect();
        let dense: HashMap<VertexId, VertexId> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as VertexId))
            .collect();

        let mut c = FilteredComplex {
            nodes: Vec::with_capacity(sorted.len()),
            values: Vec::with_capacity(sorted.len()),
            neighbors: vec![Vec::new(); labels.len()],
            labels,
            order: Vec::new(),
            position: Vec::new(),
            dim_index: Vec::with_capacity(sorted.len()),
            dim_counts: Vec::new(),
        };

        for (s, value) in sorted {
            let verts: Vec<VertexId> = s.0.iter().map(|v| dense[v]).collect();
            let dim = verts.len() - 1;
            let parent = if dim == 0 {
                NONE
            } else {
                c.find(&verts[..dim]).expect("closure validated").0
            };
            let id = c.nodes.len() as u32;
            if parent != NONE {
                c.nodes[parent as usize].children.push((verts[dim], id));
            }
            if dim == 1 {
                c.neighbors[verts[0] as usize].push(verts[1]);
                c.neighbors[verts[1] as usize].push(verts[0]);
            }
            if c.dim_counts.len() <= dim {
                c.dim_counts.resize(dim + 1, 0);
            }
            c.dim_index.push(c.dim_counts[dim] as u32);
            c.dim_counts[dim] += 1;
            c.nodes.push(Node {
                vertex: verts[dim],
                parent,
                dim: dim as u32,
                children: Vec::new(),
            });
            c.values.push(value);
        }
        for n in &mut c.neighbors {
            n.sort_unstable();
        }

        // preorder of the tree enumerates simplices lexicographically
        let n_vertices = c.labels.len();
        let mut lex_rank = vec![0u32; c.nodes.len()];
        let mut stack: Vec<u32> = (0..n_vertices as u32).rev().collect();
        let mut next = 0u32;
        while let Some(id) = stack.pop() {
            lex_rank[id as usize] = next;
            next += 1;
            stack.extend(c.nodes[id as usize].children.iter().rev().map(|&(_, ch)| ch));
        }

        let mut order: Vec<SimplexId> = (0..c.nodes.len() as u32).map(SimplexId).collect();
        order.sort_by(|&a, &b| {
            c.values[a.index()]
                .total_cmp(&c.values[b.index()])
                .then_with(|| c.nodes[a.index()].dim.cmp(&c.nodes[b.index()].dim))
                .then_with(|| lex_rank[a.index()].cmp(&lex_rank[b.index()]))
        });
        let mut position = vec![0u32; c.nodes.len()];
        for (i, s) in order.iter().enumerate() {
            position[s.index()] = i as u32;
        }
        c.order = order;
        c.position = position;
        c
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Dimension of the complex, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.dim_counts.len().checked_sub(1)
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    /// Number of simplices of dimension `p`.
    pub fn count_of_dim(&self, p: usize) -> usize {
        self.dim_counts.get(p).copied().unwrap_or(0)
    }

    /// Original label of dense vertex `v`.
    pub fn vertex_label(&self, v: VertexId) -> VertexId {
        self.labels[v as usize]
    }

    #[inline]
    pub fn value(&self, id: SimplexId) -> f64 {
        self.values[id.index()]
    }

    #[inline]
    pub fn dim(&self, id: SimplexId) -> usize {
        self.nodes[id.index()].dim as usize
    }

    /// Position of `id` within [`filtration_order`](Self::filtration_order).
    #[inline]
    pub fn position(&self, id: SimplexId) -> usize {
        self.position[id.index()] as usize
    }

    /// Index of `id` among the simplices of the same dimension, in `0..count_of_dim(dim)`.
    #[inline]
    pub fn dim_index(&self, id: SimplexId) -> usize {
        self.dim_index[id.index()] as usize
    }

    /// Dense vertex ids of `id`, ascending.
    pub fn vertices(&self, id: SimplexId) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.dim(id) + 1);
        let mut cur = id.0;
        while cur != NONE {
            let n = &self.nodes[cur as usize];
            out.push(n.vertex);
            cur = n.parent;
        }
        out.reverse();
        out
    }

    pub fn simplex(&self, id: SimplexId) -> Simplex {
        Simplex(self.vertices(id))
    }

    /// The simplex with its vertices mapped back to the labels given at construction.
    pub fn labeled_simplex(&self, id: SimplexId) -> Simplex {
        Simplex(self.vertices(id).into_iter().map(|v| self.vertex_label(v)).collect())
    }

    /// Looks up a simplex by ascending dense vertex list.
    pub fn find(&self, vertices: &[VertexId]) -> Option<SimplexId> {
        let (&first, rest) = vertices.split_first()?;
        if first as usize >= self.labels.len() {
            return None;
        }
        let mut cur = first;
        for v in rest {
            let ch = &self.nodes[cur as usize].children;
            cur = ch[ch.binary_search_by_key(v, |&(x, _)| x).ok()?].1;
        }
        Some(SimplexId(cur))
    }

    pub fn find_simplex(&self, s: &Simplex) -> Result<SimplexId, ComplexError> {
        self.find(&s.0).ok_or_else(|| ComplexError::UnknownSimplex(s.clone()))
    }

    /// Signed codimension-1 faces; the j-th omits the j-th vertex and has sign `(-1)^j`.
    pub fn boundary(&self, id: SimplexId) -> Vec<SignedFace> {
        let verts = self.vertices(id);
        if verts.len() < 2 {
            return Vec::new();
        }
        let mut scratch = Vec::with_capacity(verts.len() - 1);
        (0..verts.len())
            .map(|j| {
                scratch.clear();
                scratch.extend(verts.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v));
                SignedFace {
                    face: self.find(&scratch).expect("complex is closed"),
                    sign: if j % 2 == 0 { 1 } else { -1 },
                }
            })
            .collect()
    }

    pub fn compute_boundary(&self, s: &Simplex) -> Result<Vec<SignedFace>, ComplexError> {
        Ok(self.boundary(self.find_simplex(s)?))
    }

    /// Cofaces of dimension `dim + 1` whose value lies in `range`, in lexicographic order.
    pub fn codim1_cofaces(&self, id: SimplexId, range: impl RangeBounds<f64>) -> Vec<SimplexId> {
        let verts = self.vertices(id);
        let pivot = *verts
            .iter()
            .min_by_key(|&&v| self.neighbors[v as usize].len())
            .expect("non-empty simplex");
        let mut out = Vec::new();
        let mut scratch = Vec::with_capacity(verts.len() + 1);
        for &w in &self.neighbors[pivot as usize] {
            if verts.binary_search(&w).is_ok() {
                continue;
            }
            scratch.clear();
            scratch.extend_from_slice(&verts);
            let at = scratch.partition_point(|&x| x < w);
            scratch.insert(at, w);
            if let Some(t) = self.find(&scratch) {
                if range.contains(&self.value(t)) {
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn compute_cofaces(
        &self,
        s: &Simplex,
        range: impl RangeBounds<f64>,
    ) -> Result<Vec<SimplexId>, ComplexError> {
        Ok(self.codim1_cofaces(self.find_simplex(s)?, range))
    }

    /// Simplices sorted by (value, dimension, lexicographic vertex list).
    pub fn filtration_order(&self) -> &[SimplexId] {
        &self.order
    }

    /// Lexicographic comparison of two simplices' vertex lists.
    pub fn lex_cmp(&self, a: SimplexId, b: SimplexId) -> Ordering {
        self.vertices(a).cmp(&self.vertices(b))
    }

    /// Rebuilds a builder holding the same simplices under their original labels.
    pub fn to_builder(&self) -> ComplexBuilder {
        let mut b = ComplexBuilder::new();
        for &id in &self.order {
            b.simplices.insert(self.labeled_simplex(id).0, self.value(id));
        }
        b
    }
}
