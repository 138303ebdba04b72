//! Z/2 persistent homology by column reduction.

mod boundary;
mod diagram;
mod reduce;

pub use boundary::{boundary_matrix, BoundaryMatrix};
pub use diagram::{diagrams, diagrams_from_pairing, PersistenceDiagram};
pub(crate) use reduce::{add_column, split_pair, UNPAIRED};
pub use reduce::{reduce, reduce_full, Pairing, Reduction};
