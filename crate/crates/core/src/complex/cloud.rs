use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A finite point set in R^d where every point carries a species label.
///
/// Labels are contiguous `0..species_count()`; the original label values (or
/// names) are kept in [`species_names`](Self::species_names).
#[derive(Debug, Clone, PartialEq)]
pub struct LabelledPointCloud<T> {
    dim: usize,
    coords: Vec<T>,
    labels: Vec<usize>,
    species_names: Vec<String>,
    dropped_duplicates: usize,
}

impl<T: Scalar> LabelledPointCloud<T> {
    /// Builds a cloud from `(coordinates, label)` pairs.
    ///
    /// Labels are remapped to `0..s` by ascending original value. Points that
    /// repeat an earlier point bit-for-bit with the same label are dropped.
    pub fn new<I, C>(dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = (C, usize)>,
        C: AsRef<[T]>,
    {
        let points: Vec<(Vec<T>, usize)> = points
            .into_iter()
            .map(|(c, l)| (c.as_ref().to_vec(), l))
            .collect();
        let distinct: BTreeSet<usize> = points.iter().map(|(_, l)| *l).collect();
        let names: Vec<String> = distinct.iter().map(|l| l.to_string()).collect();
        let points = points.into_iter().map(|(c, l)| {
            let idx = distinct.range(..l).count();
            (c, idx)
        });
        Self::with_species_names(dim, points, names)
    }

    /// Builds a cloud whose labels are already indices into `species_names`.
    pub fn with_species_names<I, C>(dim: usize, points: I, species_names: Vec<String>) -> Result<Self>
    where
        I: IntoIterator<Item = (C, usize)>,
        C: AsRef<[T]>,
    {
        if !(2..=3).contains(&dim) {
            return Err(Error::Input(format!("point dimension must be 2 or 3, got {dim}")));
        }
        let mut coords = Vec::new();
        let mut labels = Vec::new();
        let mut seen: HashSet<(Vec<u64>, usize)> = HashSet::new();
        let mut dropped = 0;
        for (row, (c, label)) in points.into_iter().enumerate() {
            let c = c.as_ref();
            if c.len() != dim {
                return Err(Error::Input(format!(
                    "point {row} has {} coordinates, expected {dim}",
                    c.len()
                )));
            }
            if c.iter().any(|x| !x.is_finite()) {
                return Err(Error::Input(format!("point {row} has a non-finite coordinate")));
            }
            if label >= species_names.len() {
                return Err(Error::Input(format!(
                    "point {row} has label {label} but only {} species are named",
                    species_names.len()
                )));
            }
            // -0.0 and 0.0 are the same location
            let key: Vec<u64> = c.iter().map(|x| (x.as_f64() + 0.0).to_bits()).collect();
            if !seen.insert((key, label)) {
                dropped += 1;
                continue;
            }
            coords.extend_from_slice(c);
            labels.push(label);
        }
        if dropped > 0 {
            log::warn!("dropped {dropped} duplicate point(s) with identical coordinates and label");
        }
        Ok(Self {
            dim,
            coords,
            labels,
            species_names,
            dropped_duplicates: dropped,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of species, `s + 1`. Species may have zero points.
    pub fn species_count(&self) -> usize {
        self.species_names.len()
    }

    pub fn species_names(&self) -> &[String] {
        &self.species_names
    }

    pub fn species_index(&self, name: &str) -> Option<usize> {
        self.species_names.iter().position(|n| n == name)
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dropped_duplicates(&self) -> usize {
        self.dropped_duplicates
    }

    pub fn species_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.species_count()];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    /// Keeps the points whose label is in `species`, relabelled by position in
    /// `species`. Point order is preserved. Returns the cloud and the original
    /// index of every retained point.
    pub fn restrict(&self, species: &[usize]) -> Result<(Self, Vec<usize>)> {
        let mut new_label = vec![None; self.species_count()];
        for (pos, &s) in species.iter().enumerate() {
            if s >= self.species_count() {
                return Err(Error::UnknownLabel {
                    label: s,
                    species: self.species_count(),
                });
            }
            new_label[s] = Some(pos);
        }
        let mut coords = Vec::new();
        let mut labels = Vec::new();
        let mut origin = Vec::new();
        for i in 0..self.len() {
            if let Some(l) = new_label[self.labels[i]] {
                coords.extend_from_slice(self.point(i));
                labels.push(l);
                origin.push(i);
            }
        }
        let names = species.iter().map(|&s| self.species_names[s].clone()).collect();
        Ok((
            Self {
                dim: self.dim,
                coords,
                labels,
                species_names: names,
                dropped_duplicates: 0,
            },
            origin,
        ))
    }

    /// Drops every species with fewer than `min_size` points, relabelling the rest.
    pub fn without_small_species(&self, min_size: usize) -> Self {
        let sizes = self.species_sizes();
        let keep: Vec<usize> = (0..self.species_count())
            .filter(|&s| sizes[s] >= min_size)
            .collect();
        self.restrict(&keep).expect("labels are in range").0
    }

    /// Largest side of the axis-aligned bounding box.
    pub fn extent(&self) -> T {
        let mut best = T::zero();
        for axis in 0..self.dim {
            let mut lo = T::infinity();
            let mut hi = T::neg_infinity();
            for i in 0..self.len() {
                let x = self.point(i)[axis];
                lo = lo.min(x);
                hi = hi.max(x);
            }
            if hi > lo {
                best = best.max(hi - lo);
            }
        }
        best
    }
}
