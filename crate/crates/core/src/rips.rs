//! Vietoris–Rips filtrations of point clouds.
//!
//! A simplex enters at its diameter (largest pairwise Euclidean distance);
//! vertices enter at 0. Simplices with diameter above `rho_max` or dimension
//! above `max_dim` are left out.

use crate::complex::{ComplexBuilder, FilteredComplex, VertexId};
use crate::io::BuildError;

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
    dim: usize,
}

impl PointCloud {
    /// All points must share one ambient dimension `D >= 1`.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self, BuildError> {
        let dim = points.first().map_or(0, Vec::len);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim || p.is_empty() {
                return Err(BuildError::DimensionMismatch { point: i, expected: dim.max(1), found: p.len() });
            }
        }
        Ok(PointCloud { points, dim })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.points[i]
            .iter()
            .zip(&self.points[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

struct Expansion<'a> {
    dist: &'a [Vec<f64>],
    upper: &'a [Vec<VertexId>],
    max_dim: usize,
    builder: ComplexBuilder,
}

impl Expansion<'_> {
    fn expand(&mut self, simplex: &mut Vec<VertexId>, value: f64, candidates: &[VertexId]) {
        self.builder
            .insert_simplex(simplex, value)
            .expect("distinct vertices");
        if simplex.len() > self.max_dim {
            return;
        }
        for (k, &v) in candidates.iter().enumerate() {
            let next: Vec<VertexId> = candidates[k + 1..]
                .iter()
                .copied()
                .filter(|w| self.upper[v as usize].binary_search(w).is_ok())
                .collect();
            let reach = simplex
                .iter()
                .map(|&w| self.dist[w as usize][v as usize])
                .fold(value, f64::max);
            simplex.push(v);
            self.expand(simplex, reach, &next);
            simplex.pop();
        }
    }
}

/// Rips complex of `pc` up to diameter `rho_max` and dimension `max_dim`.
pub fn build_rips(pc: &PointCloud, rho_max: f64, max_dim: usize) -> Result<FilteredComplex, BuildError> {
    if rho_max.is_nan() || rho_max < 0.0 {
        return Err(BuildError::InvalidParameter(format!("rho_max must be >= 0, got {rho_max}")));
    }
    let n = pc.len();
    let dist: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| pc.distance(i, j)).collect()).collect();
    let upper: Vec<Vec<VertexId>> = (0..n)
        .map(|i| {
            ((i + 1)..n)
                .filter(|&j| dist[i][j] <= rho_max)
                .map(|j| j as VertexId)
                .collect()
        })
        .collect();
    let mut ex = Expansion { dist: &dist, upper: &upper, max_dim, builder: ComplexBuilder::new() };
    let mut simplex = Vec::with_capacity(max_dim + 1);
    for (u, up) in upper.iter().enumerate() {
        simplex.push(u as VertexId);
        ex.expand(&mut simplex, 0.0, up);
        simplex.pop();
    }
    Ok(ex.builder.finalize()?)
}
