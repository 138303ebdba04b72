use super::{boundary_matrix, reduce, Pairing};
use crate::complex::FilteredComplex;
use crate::scalar::{total_cmp, Scalar};

/// Multiset of `(birth, death)` points in one homology degree; essential
/// classes have `death = +inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram<T> {
    pub degree: usize,
    /// Sorted by birth, then death.
    pub points: Vec<(T, T)>,
    /// Pairs with equal birth and death, left out of `points`.
    pub zero_persistence: usize,
    /// False when the complex was truncated below `degree + 1`, so deaths in
    /// this degree may be missing.
    pub complete: bool,
}

impl<T: Scalar> PersistenceDiagram<T> {
    pub fn new(degree: usize, points: Vec<(T, T)>) -> Self {
        let mut d = PersistenceDiagram {
            degree,
            points: Vec::new(),
            zero_persistence: 0,
            complete: true,
        };
        for (b, e) in points {
            d.push(b, e);
        }
        d.sort();
        d
    }

    pub fn empty(degree: usize) -> Self {
        Self::new(degree, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Records a point, diverting zero-length ones to the audit count.
    pub(crate) fn push(&mut self, birth: T, death: T) {
        debug_assert!(birth <= death, "birth after death");
        if birth < death {
            self.points.push((birth, death));
        } else {
            self.zero_persistence += 1;
        }
    }

    pub(crate) fn sort(&mut self) {
        self.points
            .sort_by(|a, b| total_cmp(a.0, b.0).then_with(|| total_cmp(a.1, b.1)));
    }

    /// Number of points with `birth <= t < death`.
    pub fn alive_at(&self, t: T) -> usize {
        self.points.iter().filter(|(b, d)| *b <= t && t < *d).count()
    }

    /// Number of points with `birth <= s` and `death > t`.
    pub fn persisting(&self, s: T, t: T) -> usize {
        self.points.iter().filter(|(b, d)| *b <= s && *d > t).count()
    }

    pub fn essential_count(&self) -> usize {
        self.points.iter().filter(|(_, d)| d.is_infinite()).count()
    }

    /// Points whose lifetime exceeds `threshold`.
    pub fn count_longer_than(&self, threshold: T) -> usize {
        self.points.iter().filter(|(b, d)| *d - *b > threshold).count()
    }

    /// True when both diagrams have the same points up to `tol` per
    /// coordinate, after sorting.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.degree == other.degree
            && self.points.len() == other.points.len()
            && self.points.iter().zip(&other.points).all(|(a, b)| close(a.0, b.0, tol) && close(a.1, b.1, tol))
    }
}

fn close<T: Scalar>(a: T, b: T, tol: T) -> bool {
    if a.is_infinite() || b.is_infinite() {
        a == b
    } else {
        (a - b).abs() <= tol
    }
}

/// Builds diagrams in degrees `0..=max_degree` from a pairing.
pub fn diagrams_from_pairing<T: Scalar>(values: &[T], pairing: &Pairing, max_degree: usize) -> Vec<PersistenceDiagram<T>> {
    let mut out: Vec<PersistenceDiagram<T>> = (0..=max_degree).map(PersistenceDiagram::empty).collect();
    for (i, j) in pairing.pairs() {
        if let Some(d) = out.get_mut(pairing.dim(i)) {
            d.push(values[i], values[j]);
        }
    }
    for i in pairing.essentials() {
        if let Some(d) = out.get_mut(pairing.dim(i)) {
            d.push(values[i], T::infinity());
        }
    }
    for d in &mut out {
        d.sort();
    }
    out
}

/// Persistence diagrams of `k` in degrees `0..=max_degree`.
pub fn diagrams<T: Scalar>(k: &FilteredComplex<T>, max_degree: usize) -> Vec<PersistenceDiagram<T>> {
    let pairing = reduce(&boundary_matrix(k), true);
    let mut out = diagrams_from_pairing(k.values(), &pairing, max_degree);
    if let Some(t) = k.truncated_at() {
        for d in out.iter_mut().filter(|d| d.degree >= t) {
            d.complete = false;
        }
    }
    out
}
