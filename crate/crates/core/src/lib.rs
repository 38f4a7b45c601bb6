//! # camcoh
//!
//! Persistent cohomology of filtered simplicial complexes over any prime
//! field, computed by maintaining annotation vectors in a compressed
//! annotation matrix.
//!
//! * [`complex`] stores the filtered complex as a simplex tree.
//! * [`cam`] holds the per-dimension compressed annotation matrix.
//! * [`engine`] runs the insertion loop, optionally with lazy creator
//!   insertion and with [`reorder`]ing of equal-valued simplices.
//! * [`oracle`] is an independent boundary-matrix reduction used for
//!   cross-checking.
//! * [`rips`] and [`io`] build complexes from point clouds and text files.
//!
//! ```
//! use camcoh::complex::ComplexBuilder;
//! use camcoh::engine::{compute_persistence, EngineOptions};
//! use camcoh::field::FieldSpec;
//!
//! let mut b = ComplexBuilder::new();
//! b.insert_simplex(&[0, 1, 2], 1.0).unwrap();
//! let complex = b.close().finalize().unwrap();
//! let (diagram, _) =
//!     compute_persistence(&complex, FieldSpec::new(2).unwrap(), EngineOptions::default()).unwrap();
//! assert_eq!(diagram.essential_counts(), vec![1]);
//! ```

pub mod cam;
pub mod cli;
pub mod complex;
pub mod diagram;
pub mod engine;
pub mod field;
pub mod io;
pub mod oracle;
pub mod reorder;
pub mod rips;
pub mod stats;

pub use complex::{ComplexBuilder, FilteredComplex, Simplex, SimplexId};
pub use diagram::{diagram_equal, DiagramPoint, PersistenceDiagram, PersistencePair};
pub use engine::{compute_persistence, EngineOptions};
pub use field::{FieldElement, FieldSpec};
pub use stats::RunStats;
