use std::collections::HashSet;
use std::sync::Arc;

use super::filtered::order_key;
use super::{FilteredChainMap, FilteredComplex, Simplex};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An induced subcomplex together with its embedding into the parent.
#[derive(Debug, Clone)]
pub struct Restriction<T> {
    pub complex: Arc<FilteredComplex<T>>,
    /// Parent vertex of each vertex of `complex`.
    pub vertex_map: Vec<usize>,
    /// Parent simplex index of each simplex of `complex`.
    pub simplex_map: Vec<usize>,
}

impl<T: Scalar> Restriction<T> {
    /// The inclusion of the restriction into `parent`, which must be the
    /// complex it was taken from.
    pub fn inclusion(&self, parent: Arc<FilteredComplex<T>>) -> FilteredChainMap<T> {
        FilteredChainMap::from_parts(
            self.complex.clone(),
            parent,
            self.vertex_map.clone(),
            self.simplex_map.clone(),
        )
    }
}

/// The subcomplex induced on the vertices whose label is in `colors`.
///
/// Vertices are renumbered in increasing order and keep their labels, so the
/// restriction inherits the parent's order and values unchanged.
pub fn subcomplex_by_colors<T: Scalar>(k: &FilteredComplex<T>, colors: &[usize]) -> Result<Restriction<T>> {
    if colors.is_empty() {
        return Err(Error::Input("color set is empty".into()));
    }
    let mut mask = 0u64;
    for &c in colors {
        if c >= k.species_count() {
            return Err(Error::UnknownLabel {
                label: c,
                species: k.species_count(),
            });
        }
        mask |= 1 << c;
    }
    let mut new_index = vec![usize::MAX; k.vertex_count()];
    let mut vertex_map = Vec::new();
    let mut labels = Vec::new();
    for (v, &l) in k.vertex_labels().iter().enumerate() {
        if mask >> l & 1 == 1 {
            new_index[v] = vertex_map.len();
            vertex_map.push(v);
            labels.push(l);
        }
    }
    let mut entries = Vec::new();
    let mut simplex_map = Vec::new();
    for (i, (s, v)) in k.entries().enumerate() {
        if s.vertices().iter().all(|&x| new_index[x] != usize::MAX) {
            let vs = s.vertices().iter().map(|&x| new_index[x]).collect();
            entries.push((Simplex::from_sorted(vs), v));
            simplex_map.push(i);
        }
    }
    let complex = FilteredComplex::from_sorted_entries(entries, labels, k.species_count())
        .with_truncation(k.truncated_at());
    Ok(Restriction {
        complex: Arc::new(complex),
        vertex_map,
        simplex_map,
    })
}

/// Places the parts side by side on disjoint vertex ranges, in part order.
///
/// Returns the union and the embedding of each part into it.
pub fn disjoint_union<T: Scalar>(
    parts: &[Arc<FilteredComplex<T>>],
) -> Result<(Arc<FilteredComplex<T>>, Vec<FilteredChainMap<T>>)> {
    if parts.is_empty() {
        return Err(Error::Input("disjoint union of no parts".into()));
    }
    let species = parts.iter().map(|p| p.species_count()).max().unwrap_or(0);
    let mut labels = Vec::new();
    let mut offsets = Vec::with_capacity(parts.len());
    let mut tagged = Vec::new();
    for (pi, part) in parts.iter().enumerate() {
        let offset = labels.len();
        offsets.push(offset);
        labels.extend_from_slice(part.vertex_labels());
        for (si, (s, v)) in part.entries().enumerate() {
            let shifted = Simplex::from_sorted(s.vertices().iter().map(|&x| x + offset).collect());
            tagged.push(((shifted, v), (pi, si)));
        }
    }
    tagged.sort_by(|a, b| order_key(&a.0, &b.0));
    let mut assignments: Vec<Vec<usize>> = parts.iter().map(|p| vec![0; p.len()]).collect();
    let mut entries = Vec::with_capacity(tagged.len());
    for (pos, (entry, (pi, si))) in tagged.into_iter().enumerate() {
        assignments[pi][si] = pos;
        entries.push(entry);
    }
    let truncated = parts.iter().filter_map(|p| p.truncated_at()).min();
    let union = Arc::new(FilteredComplex::from_sorted_entries(entries, labels, species).with_truncation(truncated));
    let maps = parts
        .iter()
        .zip(assignments)
        .zip(offsets)
        .map(|((part, assignment), offset)| {
            let vertex_map = (0..part.vertex_count()).map(|v| v + offset).collect();
            FilteredChainMap::from_parts(part.clone(), union.clone(), vertex_map, assignment)
        })
        .collect();
    Ok((union, maps))
}

/// Mapping cylinder of a filtered chain map, with the domain included in it.
#[derive(Debug, Clone)]
pub struct MappingCylinder<T> {
    pub complex: Arc<FilteredComplex<T>>,
    /// Inclusion of the map's domain; domain vertex `v` is cylinder vertex `v`.
    pub inclusion: FilteredChainMap<T>,
    /// Cylinder index of each codomain simplex; codomain vertex `w` is
    /// cylinder vertex `domain.vertex_count() + w`.
    pub codomain_index: Vec<usize>,
}

/// Builds the mapping cylinder of `f`.
///
/// Every domain simplex `[v0..vp]` contributes the staircase simplices
/// `{v0..vi} ∪ f{vi..vp}` and `{v0..vi} ∪ f{vi+1..vp}`, valued at the domain
/// simplex. The map must be injective on the star of every vertex; otherwise
/// two staircase simplices coincide and an error is returned.
pub fn mapping_cylinder<T: Scalar>(f: &FilteredChainMap<T>) -> Result<MappingCylinder<T>> {
    let max_dim = f
        .domain()
        .dimension()
        .map(|d| d + 1)
        .max(f.codomain().dimension())
        .unwrap_or(0);
    mapping_cylinder_truncated(f, max_dim)
}

/// [`mapping_cylinder`] restricted to simplices of dimension `<= max_dim`.
///
/// Both ends of the map must already lie within that dimension.
pub fn mapping_cylinder_truncated<T: Scalar>(f: &FilteredChainMap<T>, max_dim: usize) -> Result<MappingCylinder<T>> {
    let dom = f.domain();
    let cod = f.codomain();
    for (what, k) in [("domain", dom), ("codomain", cod)] {
        if k.dimension().is_some_and(|d| d > max_dim) {
            return Err(Error::Input(format!("{what} exceeds cylinder dimension {max_dim}")));
        }
    }
    let n_dom = dom.vertex_count();
    let g = f.vertex_map();
    // 0 = codomain, 1 = domain, 2 = staircase
    let mut tagged: Vec<((Simplex, T), (u8, usize))> = Vec::new();
    for (j, (s, v)) in cod.entries().enumerate() {
        let shifted = Simplex::from_sorted(s.vertices().iter().map(|&w| w + n_dom).collect());
        tagged.push(((shifted, v), (0, j)));
    }
    let mut seen: HashSet<Simplex> = HashSet::new();
    for (i, (s, v)) in dom.entries().enumerate() {
        let vs = s.vertices();
        let p = vs.len() - 1;
        for split in 0..=p {
            let mut cells = vec![(split, split + 1)];
            if p < max_dim {
                cells.push((split, split));
            }
            for (a_end, b_start) in cells {
                let mut verts: Vec<usize> = vs[..=a_end].to_vec();
                let mut tail: Vec<usize> = vs[b_start..].iter().map(|&x| g[x] + n_dom).collect();
                tail.sort_unstable();
                verts.extend(tail);
                let simplex = Simplex::from_sorted(verts);
                if !seen.insert(simplex.clone()) {
                    return Err(Error::Input(format!(
                        "map is not injective near {s:?}; its mapping cylinder is not simplicial"
                    )));
                }
                let tag = if b_start > p { (1, i) } else { (2, 0) };
                tagged.push(((simplex, v), tag));
            }
        }
    }
    tagged.sort_by(|a, b| order_key(&a.0, &b.0));
    let mut codomain_index = vec![0; cod.len()];
    let mut assignment = vec![0; dom.len()];
    let mut entries = Vec::with_capacity(tagged.len());
    for (pos, (entry, (kind, idx))) in tagged.into_iter().enumerate() {
        match kind {
            0 => codomain_index[idx] = pos,
            1 => assignment[idx] = pos,
            _ => {}
        }
        entries.push(entry);
    }
    let mut labels = dom.vertex_labels().to_vec();
    labels.extend_from_slice(cod.vertex_labels());
    let species = dom.species_count().max(cod.species_count());
    let complex = Arc::new(FilteredComplex::from_sorted_entries(entries, labels, species).with_truncation(Some(max_dim)));
    let inclusion = FilteredChainMap::from_parts(dom.clone(), complex.clone(), (0..n_dom).collect(), assignment);
    Ok(MappingCylinder {
        complex,
        inclusion,
        codomain_index,
    })
}
