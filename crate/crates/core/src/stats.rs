//! Run statistics: field operations, matrix size, and the peak dimensions of
//! the cohomology groups and the number of distinct annotation vectors.

use std::fmt::Write as _;

use crate::cam::AnnotationMatrix;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DimPeaks {
    /// Peak number of live cocycles.
    pub g_m: usize,
    /// Peak number of distinct nonzero annotation vectors.
    pub s_m: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    pub field_ops: u64,
    pub matrix_nonzeros_peak: usize,
    /// Peak over time of the summed cohomology dimensions.
    pub g_max_total: usize,
    /// Peak over time of the summed distinct-column counts.
    pub s_max_total: usize,
    pub per_dim_peaks: Vec<DimPeaks>,
}

impl RunStats {
    /// Samples the current matrices and folds them into the peaks.
    pub(crate) fn sample(&mut self, matrices: &[AnnotationMatrix]) {
        if self.per_dim_peaks.len() < matrices.len() {
            self.per_dim_peaks.resize(matrices.len(), DimPeaks::default());
        }
        let (mut g, mut s, mut nz) = (0, 0, 0);
        for (m, peaks) in matrices.iter().zip(&mut self.per_dim_peaks) {
            g += m.live_rows();
            s += m.distinct_columns();
            nz += m.nonzeros();
            peaks.g_m = peaks.g_m.max(m.live_rows());
            peaks.s_m = peaks.s_m.max(m.distinct_columns());
        }
        self.g_max_total = self.g_max_total.max(g);
        self.s_max_total = self.s_max_total.max(s);
        self.matrix_nonzeros_peak = self.matrix_nonzeros_peak.max(nz);
    }

    /// `key=value` lines.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "field_ops={}", self.field_ops);
        let _ = writeln!(out, "matrix_nonzeros_peak={}", self.matrix_nonzeros_peak);
        let _ = writeln!(out, "G_m={}", self.g_max_total);
        let _ = writeln!(out, "S_m={}", self.s_max_total);
        for (p, d) in self.per_dim_peaks.iter().enumerate() {
            let _ = writeln!(out, "g_m[{p}]={}", d.g_m);
            let _ = writeln!(out, "s_m[{p}]={}", d.s_m);
        }
        out
    }
}
