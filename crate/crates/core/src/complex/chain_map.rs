use std::sync::Arc;

use super::{FilteredComplex, Simplex};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A simplicial map between filtered complexes that respects the filtration.
///
/// The map is determined by where it sends vertices; `assignment[i]` is the
/// codomain index of the image of domain simplex `i`.
#[derive(Debug, Clone)]
pub struct FilteredChainMap<T> {
    domain: Arc<FilteredComplex<T>>,
    codomain: Arc<FilteredComplex<T>>,
    vertex_map: Vec<usize>,
    assignment: Vec<usize>,
}

impl<T: Scalar> FilteredChainMap<T> {
    /// Builds the map induced by `vertex_map` and checks that it is
    /// dimension-preserving and filtration-compatible.
    pub fn from_vertex_map(
        domain: Arc<FilteredComplex<T>>,
        codomain: Arc<FilteredComplex<T>>,
        vertex_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != domain.vertex_count() {
            return Err(Error::Input(format!(
                "vertex map has {} entries for {} domain vertices",
                vertex_map.len(),
                domain.vertex_count()
            )));
        }
        if let Some(&w) = vertex_map.iter().find(|&&w| w >= codomain.vertex_count()) {
            return Err(Error::Input(format!("vertex map targets missing vertex {w}")));
        }
        let mut assignment = Vec::with_capacity(domain.len());
        for (i, s) in domain.simplices().iter().enumerate() {
            let image = s
                .map_vertices(|v| vertex_map[v])
                .ok_or_else(|| Error::Input(format!("map collapses simplex {s:?}")))?;
            let j = codomain
                .index_of(&image)
                .ok_or_else(|| Error::Input(format!("image {image:?} of {s:?} is not in the codomain")))?;
            if codomain.value(j) > domain.value(i) {
                return Err(Error::Input(format!(
                    "image of {s:?} enters at {} after the simplex itself ({})",
                    codomain.value(j),
                    domain.value(i)
                )));
            }
            assignment.push(j);
        }
        Ok(Self {
            domain,
            codomain,
            vertex_map,
            assignment,
        })
    }

    /// Builds a map from an explicit simplex assignment and validates it.
    pub fn new(
        domain: Arc<FilteredComplex<T>>,
        codomain: Arc<FilteredComplex<T>>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if assignment.len() != domain.len() {
            return Err(Error::Input(format!(
                "assignment has {} entries for {} domain simplices",
                assignment.len(),
                domain.len()
            )));
        }
        let mut vertex_map = vec![usize::MAX; domain.vertex_count()];
        for (i, s) in domain.simplices().iter().enumerate() {
            if s.len() == 1 {
                let j = assignment[i];
                let image = codomain
                    .simplices()
                    .get(j)
                    .ok_or_else(|| Error::Input(format!("assignment targets missing simplex {j}")))?;
                if image.len() != 1 {
                    return Err(Error::Input(format!("vertex {s:?} is sent to {image:?}")));
                }
                vertex_map[s.vertices()[0]] = image.vertices()[0];
            }
        }
        if vertex_map.contains(&usize::MAX) {
            return Err(Error::Input("a domain vertex has no image".into()));
        }
        let map = Self::from_vertex_map(domain, codomain, vertex_map)?;
        if map.assignment != assignment {
            return Err(Error::Input("assignment does not commute with faces".into()));
        }
        Ok(map)
    }

    /// Assembles a map whose validity the caller guarantees by construction.
    pub(crate) fn from_parts(
        domain: Arc<FilteredComplex<T>>,
        codomain: Arc<FilteredComplex<T>>,
        vertex_map: Vec<usize>,
        assignment: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(assignment.len(), domain.len());
        Self {
            domain,
            codomain,
            vertex_map,
            assignment,
        }
    }

    pub fn domain(&self) -> &Arc<FilteredComplex<T>> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FilteredComplex<T>> {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image(&self, domain_index: usize) -> &Simplex {
        self.codomain.simplex(self.assignment[domain_index])
    }

    /// True when distinct domain simplices have distinct images.
    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        self.assignment.iter().all(|&j| !std::mem::replace(&mut hit[j], true))
    }

    /// True when the map is injective and every simplex keeps its value, so
    /// the domain is a subfiltration of the codomain.
    pub fn is_inclusion(&self) -> bool {
        self.is_injective()
            && self
                .assignment
                .iter()
                .enumerate()
                .all(|(i, &j)| self.domain.value(i) == self.codomain.value(j))
    }
}
