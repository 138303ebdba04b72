use crate::complex::FilteredComplex;
use crate::scalar::Scalar;

/// Z/2 boundary matrix of a filtered complex in its canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMatrix<T> {
    /// Sorted positions of the codimension-one faces of each simplex.
    pub columns: Vec<Vec<usize>>,
    pub dims: Vec<usize>,
    pub values: Vec<T>,
}

impl<T: Scalar> BoundaryMatrix<T> {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

pub fn boundary_matrix<T: Scalar>(k: &FilteredComplex<T>) -> BoundaryMatrix<T> {
    BoundaryMatrix {
        columns: (0..k.len()).map(|i| k.facet_indices(i)).collect(),
        dims: k.simplices().iter().map(|s| s.dim()).collect(),
        values: k.values().to_vec(),
    }
}
