//! The compressed annotation matrix.

mod annotation;
mod matrix;
mod union_find;

use thiserror::Error;

pub use annotation::{scale_ann, sum_ann, AnnotationVector, RowIndex};
pub use matrix::{AnnotationMatrix, Slot};
pub use union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CamError {
    #[error("SlotAlreadyAssigned: slot {0}")]
    SlotAlreadyAssigned(u32),
    #[error("UnassignedSlot: slot {0}")]
    UnassignedSlot(u32),
    #[error("ZeroAnnotation: cannot kill with a zero boundary annotation")]
    ZeroAnnotation,
    #[error("DeadRow: row {0} is not a live cocycle")]
    DeadRow(u32),
    #[error("RowInUse: row {0} was already handed out")]
    RowInUse(u32),
}
