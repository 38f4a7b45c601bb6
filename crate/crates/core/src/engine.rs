//! Persistent cohomology by maintaining a valid annotation under simplex
//! insertions.
//!
//! Inserting a `p`-simplex σ computes the annotation of its boundary
//! `Σ_j (-1)^j a(s_j)`. A zero boundary annotation means σ creates a new
//! cocycle in dimension `p`; otherwise σ kills the youngest cocycle (largest
//! row) of that annotation in dimension `p - 1` and the corresponding pair is
//! emitted. The engine can also run lazily, deferring every creator until one
//! of its cofaces needs it, and can reorder blocks of equal-valued simplices
//! before insertion; neither changes the resulting diagram.

use thiserror::Error;

use crate::cam::{AnnotationMatrix, AnnotationVector, CamError, RowIndex, Slot};
use crate::complex::{FilteredComplex, SignedFace, Simplex, SimplexId};
use crate::diagram::{PersistenceDiagram, PersistencePair};
use crate::field::{FieldElement, FieldSpec};
use crate::reorder::{self, ReorderError};
use crate::stats::RunStats;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("MissingFace: face {face} of {simplex} has not been inserted")]
    MissingFace { simplex: Simplex, face: Simplex },
    #[error("AlreadyInserted: {0}")]
    AlreadyInserted(Simplex),
    #[error(transparent)]
    Cam(#[from] CamError),
    #[error(transparent)]
    Reorder(#[from] ReorderError),
    #[error("InvariantViolation: {0}")]
    InvariantViolation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    pub lazy: bool,
    pub reorder: bool,
    pub record_stats: bool,
    pub emit_zero_length: bool,
    /// Run the exhaustive matrix consistency checks after every operation.
    pub check_invariants: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            lazy: true,
            reorder: true,
            record_stats: false,
            emit_zero_length: false,
            check_invariants: false,
        }
    }
}

impl EngineOptions {
    /// Plain insertion in filtration order, no lazy evaluation, no reordering.
    pub fn standard() -> Self {
        EngineOptions { lazy: false, reorder: false, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InsertionOutcome {
    Created { dim: usize, row: RowIndex },
    Killed { dim: usize, row: RowIndex, pair: PersistencePair },
    /// Lazy mode only: a creator whose insertion is postponed.
    Deferred,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Pending,
    Marked,
    Inserted,
}

#[derive(Debug, Clone, Copy)]
struct Creator {
    simplex: SimplexId,
    birth: f64,
}

/// One run of the algorithm over a finalized complex.
pub struct Engine<'a> {
    complex: &'a FilteredComplex,
    field: FieldSpec,
    opts: EngineOptions,
    matrices: Vec<AnnotationMatrix>,
    state: Vec<State>,
    creators: Vec<Vec<Option<Creator>>>,
    // per dimension: next cocycle row to hand out
    next_row: Vec<u32>,
    // row reserved for a deferred creator
    reserved: Vec<Option<RowIndex>>,
    pairs: Vec<PersistencePair>,
    stats: RunStats,
    scratch: Vec<(RowIndex, FieldElement)>,
}

impl<'a> Engine<'a> {
    pub fn new(complex: &'a FilteredComplex, field: FieldSpec, opts: EngineOptions) -> Self {
        let dims = complex.dimension().map_or(0, |k| k + 1);
        Engine {
            complex,
            field,
            opts,
            matrices: (0..dims).map(|_| AnnotationMatrix::new(field)).collect(),
            state: vec![State::Pending; complex.len()],
            creators: vec![Vec::new(); dims],
            next_row: vec![0; dims],
            reserved: vec![None; complex.len()],
            pairs: Vec::new(),
            stats: RunStats::default(),
            scratch: Vec::new(),
        }
    }

    pub fn complex(&self) -> &FilteredComplex {
        self.complex
    }

    /// Live cocycles in dimension `p`.
    pub fn live_rows(&self, p: usize) -> usize {
        self.matrices.get(p).map_or(0, AnnotationMatrix::live_rows)
    }

    pub fn distinct_columns(&self, p: usize) -> usize {
        self.matrices.get(p).map_or(0, AnnotationMatrix::distinct_columns)
    }

    pub fn matrix(&self, p: usize) -> Option<&AnnotationMatrix> {
        self.matrices.get(p)
    }

    pub fn is_inserted(&self, id: SimplexId) -> bool {
        self.state[id.index()] == State::Inserted
    }

    pub fn is_marked(&self, id: SimplexId) -> bool {
        self.state[id.index()] == State::Marked
    }

    /// Annotation of the boundary of `id` in the current state. All faces must
    /// already be inserted.
    pub fn boundary_annotation(&mut self, id: SimplexId) -> Result<AnnotationVector, EngineError> {
        let faces = self.complex.boundary(id);
        self.annotate_faces(id, &faces)
    }

    fn annotate_faces(
        &mut self,
        id: SimplexId,
        faces: &[SignedFace],
    ) -> Result<AnnotationVector, EngineError> {
        let mut acc = AnnotationVector::zero();
        if faces.is_empty() {
            return Ok(acc);
        }
        for f in faces {
            if self.state[f.face.index()] != State::Inserted {
                return Err(EngineError::MissingFace {
                    simplex: self.complex.labeled_simplex(id),
                    face: self.complex.labeled_simplex(f.face),
                });
            }
        }
        let p = self.complex.dim(id);
        let terms: Vec<(Slot, FieldElement)> = faces
            .iter()
            .map(|f| (self.slot(f.face), self.field.sign(f.sign > 0)))
            .collect();
        self.matrices[p - 1].accumulate(terms, &mut acc, &mut self.scratch)?;
        Ok(acc)
    }

    #[inline]
    fn slot(&self, id: SimplexId) -> Slot {
        Slot(self.complex.dim_index(id) as u32)
    }

    fn ensure_fresh(&self, id: SimplexId) -> Result<(), EngineError> {
        if self.state[id.index()] == State::Inserted {
            return Err(EngineError::AlreadyInserted(self.complex.labeled_simplex(id)));
        }
        Ok(())
    }

    fn create(&mut self, id: SimplexId) -> Result<InsertionOutcome, EngineError> {
        let p = self.complex.dim(id);
        let slot = self.slot(id);
        let row = match self.reserved[id.index()].take() {
            Some(r) => r,
            None => self.allocate_row(p),
        };
        let row = self.matrices[p].create_cocycle_at(slot, row)?;
        let table = &mut self.creators[p];
        if table.len() <= row.0 as usize {
            table.resize(row.0 as usize + 1, None);
        }
        table[row.0 as usize] = Some(Creator {
            simplex: id,
            birth: self.complex.value(id),
        });
        self.state[id.index()] = State::Inserted;
        self.after_operation(p)?;
        Ok(InsertionOutcome::Created { dim: p, row })
    }

    fn allocate_row(&mut self, p: usize) -> RowIndex {
        let r = self.next_row[p];
        self.next_row[p] += 1;
        RowIndex(r)
    }

    fn kill(&mut self, id: SimplexId, boundary: &AnnotationVector) -> Result<InsertionOutcome, EngineError> {
        let p = self.complex.dim(id);
        let row = self.matrices[p - 1].kill_cocycle(boundary)?;
        if self.opts.check_invariants && Some(row) != boundary.max_entry().map(|e| e.0) {
            return Err(EngineError::InvariantViolation(format!(
                "killed row {row} is not the largest row of the boundary annotation"
            )));
        }
        let slot = self.slot(id);
        self.matrices[p].assign_zero(slot)?;
        self.state[id.index()] = State::Inserted;
        let creator = self.creators[p - 1][row.0 as usize]
            .take()
            .ok_or_else(|| EngineError::InvariantViolation(format!("row {row} has no creator")))?;
        let pair = PersistencePair {
            dim: p - 1,
            birth: creator.birth,
            death: self.complex.value(id),
            creator: self.complex.labeled_simplex(creator.simplex),
            killer: Some(self.complex.labeled_simplex(id)),
        };
        self.pairs.push(pair.clone());
        self.after_operation(p - 1)?;
        if self.opts.check_invariants {
            self.matrices[p].check_invariants().map_err(EngineError::InvariantViolation)?;
        }
        Ok(InsertionOutcome::Killed { dim: p - 1, row, pair })
    }

    fn after_operation(&mut self, p: usize) -> Result<(), EngineError> {
        if self.opts.record_stats {
            self.stats.sample(&self.matrices);
        }
        if self.opts.check_invariants {
            self.matrices[p].check_invariants().map_err(EngineError::InvariantViolation)?;
            let live = self.creators[p].iter().filter(|c| c.is_some()).count();
            if live != self.matrices[p].live_rows() {
                return Err(EngineError::InvariantViolation(format!(
                    "dimension {p}: {live} creators for {} live rows",
                    self.matrices[p].live_rows()
                )));
            }
        }
        Ok(())
    }

    /// Standard insertion: every face of `id` must be inserted already.
    pub fn insert(&mut self, id: SimplexId) -> Result<InsertionOutcome, EngineError> {
        self.ensure_fresh(id)?;
        let boundary = self.boundary_annotation(id)?;
        if boundary.is_zero() {
            self.create(id)
        } else {
            self.kill(id, &boundary)
        }
    }

    /// Lazy insertion. A marked simplex is inserted directly as a creator.
    /// Otherwise its marked faces are inserted first, and the simplex either
    /// kills a cocycle or is marked and deferred.
    pub fn lazy_evaluate(&mut self, id: SimplexId) -> Result<InsertionOutcome, EngineError> {
        self.ensure_fresh(id)?;
        if self.state[id.index()] == State::Marked {
            return self.create(id);
        }
        let faces = self.complex.boundary(id);
        let mut marked: Vec<SimplexId> = faces
            .iter()
            .map(|f| f.face)
            .filter(|&f| self.state[f.index()] == State::Marked)
            .collect();
        marked.sort_by_key(|&f| self.complex.position(f));
        for f in marked {
            self.create(f)?;
        }
        let boundary = self.annotate_faces(id, &faces)?;
        if boundary.is_zero() {
            // The row is fixed now so that the cocycle keeps its age.
            let row = self.allocate_row(self.complex.dim(id));
            self.reserved[id.index()] = Some(row);
            self.state[id.index()] = State::Marked;
            Ok(InsertionOutcome::Deferred)
        } else {
            self.kill(id, &boundary)
        }
    }

    /// Inserts `id` following the configured strategy.
    pub fn process(&mut self, id: SimplexId) -> Result<InsertionOutcome, EngineError> {
        if self.opts.lazy {
            self.lazy_evaluate(id)
        } else {
            self.insert(id)
        }
    }

    /// Inserts every still-deferred creator, in filtration order.
    pub fn flush(&mut self) -> Result<(), EngineError> {
        let mut marked: Vec<SimplexId> = self
            .complex
            .filtration_order()
            .iter()
            .copied()
            .filter(|&s| self.state[s.index()] == State::Marked)
            .collect();
        marked.sort_by_key(|&s| self.complex.position(s));
        for s in marked {
            self.create(s)?;
        }
        Ok(())
    }

    /// Flushes deferred creators and assembles the diagram: one pair per
    /// killed cocycle plus one essential pair per cocycle still alive.
    pub fn finish(mut self) -> Result<(PersistenceDiagram, RunStats), EngineError> {
        self.flush()?;
        if self.opts.record_stats {
            self.stats.sample(&self.matrices);
            self.stats.field_ops = self.matrices.iter().map(AnnotationMatrix::field_ops).sum();
        }
        let mut pairs = std::mem::take(&mut self.pairs);
        for (p, table) in self.creators.iter().enumerate() {
            for c in table.iter().flatten() {
                pairs.push(PersistencePair {
                    dim: p,
                    birth: c.birth,
                    death: f64::INFINITY,
                    creator: self.complex.labeled_simplex(c.simplex),
                    killer: None,
                });
            }
        }
        let mut diagram = PersistenceDiagram::new(pairs);
        if !self.opts.emit_zero_length {
            diagram = diagram.without_zero_length();
        }
        Ok((diagram, self.stats))
    }
}

/// Computes the persistence diagram of a finalized complex over `field`.
pub fn compute_persistence(
    complex: &FilteredComplex,
    field: FieldSpec,
    opts: EngineOptions,
) -> Result<(PersistenceDiagram, RunStats), EngineError> {
    let mut engine = Engine::new(complex, field, opts);
    if opts.reorder {
        for slab in reorder::slabs(complex) {
            for id in reorder::reorder_slab(complex, &slab)? {
                engine.process(id)?;
            }
        }
    } else {
        for &id in complex.filtration_order() {
            engine.process(id)?;
        }
    }
    engine.finish()
}
