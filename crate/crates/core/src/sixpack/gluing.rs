use std::sync::Arc;

use crate::complex::{disjoint_union, subcomplex_by_colors, FilteredChainMap, FilteredComplex, LabelledPointCloud, Simplex};
use crate::error::{Error, Result};
use crate::geom::{chromatic_delcech_with, DelcechOptions};
use crate::scalar::Scalar;

/// Which chromatic map a [`ChromaticMap`] is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Gluing,
    Inclusion,
}

/// `k` and the species subsets a chromatic map is built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDescriptor {
    pub kind: MapKind,
    pub k: usize,
    /// For gluing maps, the color subset behind each summand of the domain.
    pub color_subsets: Vec<Vec<usize>>,
}

/// A chain map into a chromatic complex, with its descriptor.
#[derive(Debug, Clone)]
pub struct ChromaticMap<T> {
    pub map: FilteredChainMap<T>,
    pub descriptor: MapDescriptor,
}

/// All `k`-element subsets of `0..n`, in lexicographic order.
pub fn color_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut buf = Vec::new();
    fn rec(start: usize, n: usize, k: usize, buf: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if buf.len() == k {
            out.push(buf.clone());
            return;
        }
        for i in start..n {
            buf.push(i);
            rec(i + 1, n, k, buf, out);
            buf.pop();
        }
    }
    rec(0, n, k, &mut buf, &mut out);
    out
}

fn check_k(k: usize, species: usize) -> Result<()> {
    if k == 0 || k > species {
        return Err(Error::Input(format!("k must be in 1..={species}, got {k}")));
    }
    Ok(())
}

/// The `k`-chromatic gluing map into `codomain`: the disjoint union of the
/// subcomplexes spanned by each `k`-subset of species, sent identically onto
/// the simplices they came from.
pub fn gluing_map_from_complex<T: Scalar>(codomain: Arc<FilteredComplex<T>>, k: usize) -> Result<ChromaticMap<T>> {
    check_k(k, codomain.species_count())?;
    let subsets = color_subsets(codomain.species_count(), k);
    let restrictions = subsets
        .iter()
        .map(|s| subcomplex_by_colors(&codomain, s))
        .collect::<Result<Vec<_>>>()?;
    let parts: Vec<_> = restrictions.iter().map(|r| r.complex.clone()).collect();
    let (union, embeddings) = disjoint_union(&parts)?;
    let mut vertex_map = vec![0; union.vertex_count()];
    let mut assignment = vec![0; union.len()];
    for (r, e) in restrictions.iter().zip(&embeddings) {
        for (v, &u) in e.vertex_map().iter().enumerate() {
            vertex_map[u] = r.vertex_map[v];
        }
        for (i, &u) in e.assignment().iter().enumerate() {
            assignment[u] = r.simplex_map[i];
        }
    }
    Ok(ChromaticMap {
        map: FilteredChainMap::from_parts(union, codomain, vertex_map, assignment),
        descriptor: MapDescriptor {
            kind: MapKind::Gluing,
            k,
            color_subsets: subsets,
        },
    })
}

/// The inclusion into `codomain` of its simplices with at most `k` colors.
pub fn inclusion_map_from_complex<T: Scalar>(codomain: Arc<FilteredComplex<T>>, k: usize) -> Result<ChromaticMap<T>> {
    check_k(k, codomain.species_count())?;
    let mut entries: Vec<(Simplex, T)> = Vec::new();
    let mut assignment = Vec::new();
    for (i, (s, v)) in codomain.entries().enumerate() {
        if codomain.color_mask(i).count_ones() as usize <= k {
            entries.push((s.clone(), v));
            assignment.push(i);
        }
    }
    let domain = FilteredComplex::from_sorted_entries(entries, codomain.vertex_labels().to_vec(), codomain.species_count())
        .with_truncation(codomain.truncated_at());
    let vertex_map = (0..codomain.vertex_count()).collect();
    Ok(ChromaticMap {
        map: FilteredChainMap::from_parts(Arc::new(domain), codomain, vertex_map, assignment),
        descriptor: MapDescriptor {
            kind: MapKind::Inclusion,
            k,
            color_subsets: Vec::new(),
        },
    })
}

/// [`gluing_map_from_complex`] on the chromatic Delaunay–Čech complex of
/// `cloud` with default options.
pub fn k_chromatic_gluing_map<T: Scalar>(cloud: &LabelledPointCloud<T>, k: usize, max_dim: usize) -> Result<ChromaticMap<T>> {
    k_chromatic_gluing_map_with(cloud, k, max_dim, &DelcechOptions::default())
}

pub fn k_chromatic_gluing_map_with<T: Scalar>(
    cloud: &LabelledPointCloud<T>,
    k: usize,
    max_dim: usize,
    options: &DelcechOptions,
) -> Result<ChromaticMap<T>> {
    check_k(k, cloud.species_count())?;
    gluing_map_from_complex(Arc::new(chromatic_delcech_with(cloud, max_dim, options)?), k)
}

/// [`inclusion_map_from_complex`] on the chromatic Delaunay–Čech complex
/// of `cloud` with default options.
pub fn k_chromatic_inclusion_map<T: Scalar>(cloud: &LabelledPointCloud<T>, k: usize, max_dim: usize) -> Result<ChromaticMap<T>> {
    k_chromatic_inclusion_map_with(cloud, k, max_dim, &DelcechOptions::default())
}

pub fn k_chromatic_inclusion_map_with<T: Scalar>(
    cloud: &LabelledPointCloud<T>,
    k: usize,
    max_dim: usize,
    options: &DelcechOptions,
) -> Result<ChromaticMap<T>> {
    check_k(k, cloud.species_count())?;
    inclusion_map_from_complex(Arc::new(chromatic_delcech_with(cloud, max_dim, options)?), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud() -> LabelledPointCloud<f64> {
        let pts = [
            ([0.0, 0.0], 0),
            ([1.0, 0.1], 1),
            ([0.2, 1.0], 2),
            ([1.1, 1.2], 0),
            ([2.0, 0.3], 1),
            ([1.9, 1.5], 2),
        ];
        LabelledPointCloud::new(2, pts.iter().map(|(c, l)| (c.to_vec(), *l))).unwrap()
    }

    #[test]
    fn subsets_in_order() {
        assert_eq!(color_subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(color_subsets(4, 1).len(), 4);
    }

    #[test]
    fn gluing_summands() {
        let g = k_chromatic_gluing_map(&cloud(), 2, 2).unwrap();
        assert_eq!(g.descriptor.color_subsets.len(), 3);
        // each vertex appears in two of the three pair complexes
        assert_eq!(g.map.domain().vertex_count(), 12);
        g.map.domain().validate().unwrap();
        let check = FilteredChainMap::from_vertex_map(
            g.map.domain().clone(),
            g.map.codomain().clone(),
            g.map.vertex_map().to_vec(),
        )
        .unwrap();
        assert_eq!(check.assignment(), g.map.assignment());
        assert!(!g.map.is_injective());
    }

    #[test]
    fn k_one_is_an_inclusion() {
        let g = k_chromatic_gluing_map(&cloud(), 1, 2).unwrap();
        assert!(g.map.is_inclusion());
        let i = k_chromatic_inclusion_map(&cloud(), 1, 2).unwrap();
        assert_eq!(i.map.domain().len(), g.map.domain().len());
        let full = k_chromatic_inclusion_map(&cloud(), 3, 2).unwrap();
        assert_eq!(full.map.domain().len(), full.map.codomain().len());
        assert!(k_chromatic_gluing_map(&cloud(), 4, 2).is_err());
        assert!(k_chromatic_gluing_map(&cloud(), 0, 2).is_err());
    }
}
