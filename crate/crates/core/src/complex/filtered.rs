use std::cmp::Ordering;
use std::collections::HashMap;

use super::Simplex;
use crate::error::{Error, Result};
use crate::scalar::{total_cmp, Scalar};

/// A simplicial complex with a monotone filtration, stored in the
/// deterministic total order `(value, dimension, lexicographic vertices)`.
///
/// Faces always precede their cofaces in this order.
#[derive(Debug, Clone)]
pub struct FilteredComplex<T> {
    simplices: Vec<Simplex>,
    values: Vec<T>,
    vertex_labels: Vec<usize>,
    species_count: usize,
    index: HashMap<Simplex, usize>,
    truncated_at: Option<usize>,
}

pub(crate) fn order_key<T: Scalar>(a: &(Simplex, T), b: &(Simplex, T)) -> Ordering {
    total_cmp(a.1, b.1)
        .then(a.0.len().cmp(&b.0.len()))
        .then_with(|| a.0.cmp(&b.0))
}

impl<T: Scalar> FilteredComplex<T> {
    /// Sorts `entries` into the canonical order and checks every invariant.
    ///
    /// `vertex_labels[v]` is the species of vertex `v`; all labels must be
    /// below `species_count`.
    pub fn new(entries: Vec<(Simplex, T)>, vertex_labels: Vec<usize>, species_count: usize) -> Result<Self> {
        let complex = Self::from_entries(entries, vertex_labels, species_count);
        complex.validate()?;
        Ok(complex)
    }

    /// Sorts and indexes without validation. Constructions inside the crate
    /// that produce valid complexes by construction use this.
    pub(crate) fn from_entries(mut entries: Vec<(Simplex, T)>, vertex_labels: Vec<usize>, species_count: usize) -> Self {
        entries.sort_by(order_key);
        Self::from_sorted_entries(entries, vertex_labels, species_count)
    }

    pub(crate) fn from_sorted_entries(entries: Vec<(Simplex, T)>, vertex_labels: Vec<usize>, species_count: usize) -> Self {
        let mut simplices = Vec::with_capacity(entries.len());
        let mut values = Vec::with_capacity(entries.len());
        let mut index = HashMap::with_capacity(entries.len());
        for (i, (s, v)) in entries.into_iter().enumerate() {
            index.insert(s.clone(), i);
            simplices.push(s);
            values.push(v);
        }
        FilteredComplex {
            simplices,
            values,
            vertex_labels,
            species_count,
            index,
            truncated_at: None,
        }
    }

    pub(crate) fn with_truncation(mut self, max_dim: Option<usize>) -> Self {
        self.truncated_at = max_dim;
        self
    }

    /// The empty complex on no vertices.
    pub fn empty(species_count: usize) -> Self {
        Self::from_sorted_entries(Vec::new(), Vec::new(), species_count)
    }

    /// Checks face closure, monotonicity, ordering, labels and uniqueness.
    pub fn validate(&self) -> Result<()> {
        if self.index.len() != self.simplices.len() {
            return Err(Error::Invariant("duplicate simplex".into()));
        }
        for (i, s) in self.simplices.iter().enumerate() {
            if s.is_empty() || !s.vertices().windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Invariant(format!("simplex {s:?} is not strictly increasing")));
            }
            let v = self.values[i];
            if !v.is_finite() || v < T::zero() {
                return Err(Error::Invariant(format!("simplex {s:?} has invalid value {v}")));
            }
            if let Some(&last) = s.vertices().last() {
                if last >= self.vertex_labels.len() {
                    return Err(Error::Invariant(format!("simplex {s:?} uses an unlabelled vertex")));
                }
            }
            for facet in s.facets() {
                match self.index.get(&facet) {
                    None => return Err(Error::Invariant(format!("facet {facet:?} of {s:?} missing"))),
                    Some(&j) => {
                        if self.values[j] > v {
                            return Err(Error::Invariant(format!(
                                "facet {facet:?} enters after {s:?} ({} > {v})",
                                self.values[j]
                            )));
                        }
                    }
                }
            }
            if i > 0 {
                let prev = (self.simplices[i - 1].clone(), self.values[i - 1]);
                if order_key(&prev, &(s.clone(), v)) != Ordering::Less {
                    return Err(Error::Invariant("simplices are not in canonical order".into()));
                }
            }
        }
        if let Some(&l) = self.vertex_labels.iter().find(|&&l| l >= self.species_count) {
            return Err(Error::Invariant(format!("label {l} exceeds species count {}", self.species_count)));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, i: usize) -> T {
        self.values[i]
    }

    pub fn simplex_dim(&self, i: usize) -> usize {
        self.simplices[i].dim()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn vertex_labels(&self) -> &[usize] {
        &self.vertex_labels
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn species_count(&self) -> usize {
        self.species_count
    }

    /// Dimension above which the construction dropped simplices, if it did.
    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    /// Largest simplex dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    pub fn max_value(&self) -> Option<T> {
        self.values.iter().copied().fold(None, |acc, v| match acc {
            None => Some(v),
            Some(a) => Some(if v > a { v } else { a }),
        })
    }

    /// Bitmask of the species on the vertices of simplex `i`.
    pub fn color_mask(&self, i: usize) -> u64 {
        self.simplices[i]
            .vertices()
            .iter()
            .fold(0u64, |m, &v| m | (1u64 << self.vertex_labels[v]))
    }

    /// Number of simplices with value `<= t`; these form a prefix of the order.
    pub fn sublevel_len(&self, t: T) -> usize {
        self.values.partition_point(|&v| v <= t)
    }

    /// Indices of the codimension-one faces of simplex `i`, ascending.
    pub fn facet_indices(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.simplices[i]
            .facets()
            .map(|f| self.index[&f])
            .collect();
        out.sort_unstable();
        out
    }

    /// `(simplex, value)` pairs in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&Simplex, T)> + '_ {
        self.simplices.iter().zip(self.values.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> FilteredComplex<f64> {
        let entries = vec![
            (Simplex::from([0, 1, 2]), 2.0),
            (Simplex::from([1, 2]), 1.0),
            (Simplex::from([0, 2]), 1.0),
            (Simplex::from([0, 1]), 0.5),
            (Simplex::from([2]), 0.0),
            (Simplex::from([1]), 0.0),
            (Simplex::from([0]), 0.0),
        ];
        FilteredComplex::new(entries, vec![0, 0, 1], 2).unwrap()
    }

    #[test]
    fn canonical_order() {
        let k = triangle();
        let order: Vec<Vec<usize>> = k.simplices().iter().map(|s| s.vertices().to_vec()).collect();
        assert_eq!(
            order,
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]
        );
        assert_eq!(k.facet_indices(6), vec![3, 4, 5]);
        assert_eq!(k.sublevel_len(1.0), 6);
        assert_eq!(k.color_mask(6), 0b11);
    }

    #[test]
    fn missing_face_is_rejected() {
        let entries = vec![(Simplex::from([0, 1]), 1.0), (Simplex::from([0]), 0.0)];
        assert!(matches!(
            FilteredComplex::new(entries, vec![0, 0], 1),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn non_monotone_is_rejected() {
        let entries = vec![
            (Simplex::from([0, 1]), 1.0),
            (Simplex::from([0]), 2.0),
            (Simplex::from([1]), 0.0),
        ];
        assert!(FilteredComplex::new(entries, vec![0, 0], 1).is_err());
    }

    #[test]
    fn duplicate_is_rejected() {
        let entries = vec![(Simplex::from([0]), 0.0), (Simplex::from([0]), 0.0)];
        assert!(FilteredComplex::new(entries, vec![0], 1).is_err());
    }
}
