use std::collections::HashMap;

use super::ball::{combinations, meb_radius};
use super::delaunay::delaunay;
use crate::complex::{FilteredComplex, LabelledPointCloud, Simplex};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Point count up to which [`cech_filtration`] is accepted.
pub const CECH_LIMIT: usize = 16;

/// Knobs of the chromatic Delaunay–Čech construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DelcechOptions {
    /// Lift height, in units of the cloud's bounding-box extent.
    pub lift_scale: f64,
    /// Largest number of species accepted.
    pub max_species: usize,
}

impl Default for DelcechOptions {
    fn default() -> Self {
        DelcechOptions {
            lift_scale: 1.0,
            max_species: 4,
        }
    }
}

/// The Čech filtration on every subset of at most `max_dim + 1` points.
///
/// Exponential in the number of points, so refused above [`CECH_LIMIT`].
pub fn cech_filtration<T: Scalar>(cloud: &LabelledPointCloud<T>, max_dim: usize) -> Result<FilteredComplex<T>> {
    let n = cloud.len();
    if n > CECH_LIMIT {
        return Err(Error::TooLarge {
            what: "Čech filtration input",
            size: n,
            limit: CECH_LIMIT,
        });
    }
    let mut simplices = Vec::new();
    let mut buf = Vec::new();
    for size in 1..=(max_dim + 1).min(n) {
        combinations(n, size, &mut buf, &mut |idx| simplices.push(Simplex::from_sorted(idx.to_vec())));
    }
    with_meb_values(cloud, simplices, None)
}

/// Appends one-hot species coordinates: species `i > 0` gains `scale` on
/// extra axis `i - 1`, species 0 stays at the origin of the extra axes.
pub fn lift<T: Scalar>(cloud: &LabelledPointCloud<T>, scale: T) -> Vec<Vec<T>> {
    let extra = cloud.species_count().saturating_sub(1);
    (0..cloud.len())
        .map(|i| {
            let mut p = cloud.point(i).to_vec();
            p.resize(cloud.dim() + extra, T::zero());
            let l = cloud.label(i);
            if l > 0 {
                p[cloud.dim() + l - 1] = scale;
            }
            p
        })
        .collect()
}

/// [`chromatic_delcech_with`] under default options.
pub fn chromatic_delcech<T: Scalar>(cloud: &LabelledPointCloud<T>, max_dim: usize) -> Result<FilteredComplex<T>> {
    chromatic_delcech_with(cloud, max_dim, &DelcechOptions::default())
}

/// Delaunay complex of the species-lifted cloud, truncated to `max_dim`,
/// with every simplex valued at the enclosing radius of its original points.
pub fn chromatic_delcech_with<T: Scalar>(
    cloud: &LabelledPointCloud<T>,
    max_dim: usize,
    options: &DelcechOptions,
) -> Result<FilteredComplex<T>> {
    let s = cloud.species_count();
    if s > options.max_species {
        return Err(Error::TooLarge {
            what: "species count",
            size: s,
            limit: options.max_species,
        });
    }
    if !(options.lift_scale > 0.0 && options.lift_scale.is_finite()) {
        return Err(Error::Input(format!("lift scale must be positive, got {}", options.lift_scale)));
    }
    let extent = cloud.extent().as_f64();
    let scale = options.lift_scale * if extent > 0.0 { extent } else { 1.0 };
    let k = cloud.dim() + s.saturating_sub(1);
    let mut lifted = Vec::with_capacity(cloud.len() * k);
    for i in 0..cloud.len() {
        let start = lifted.len();
        lifted.extend(cloud.point(i).iter().map(|x| x.as_f64()));
        lifted.resize(start + k, 0.0);
        let l = cloud.label(i);
        if l > 0 {
            lifted[start + cloud.dim() + l - 1] = scale;
        }
    }
    let del = delaunay(k, &lifted)?;
    let mut simplices = del.faces(max_dim);
    // every point is a vertex even if the triangulation is trivial
    let mut has_vertex = vec![false; cloud.len()];
    for s in simplices.iter().filter(|s| s.len() == 1) {
        has_vertex[s.vertices()[0]] = true;
    }
    for (v, present) in has_vertex.iter().enumerate() {
        if !present {
            simplices.push(Simplex::vertex(v));
        }
    }
    let truncated = (del.dim() > max_dim).then_some(max_dim);
    with_meb_values(cloud, simplices, truncated)
}

const SNAP: f64 = 1e-12;

/// Values each simplex at its enclosing radius, raised to the largest facet
/// value so rounding can never break monotonicity. Radii within a relative
/// `1e-12` above the largest facet value are snapped down to it.
fn with_meb_values<T: Scalar>(
    cloud: &LabelledPointCloud<T>,
    mut simplices: Vec<Simplex>,
    truncated: Option<usize>,
) -> Result<FilteredComplex<T>> {
    simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let d = cloud.dim();
    let mut value: HashMap<Simplex, f64> = HashMap::with_capacity(simplices.len());
    let mut flat = Vec::with_capacity(4 * d);
    let mut entries = Vec::with_capacity(simplices.len());
    for s in simplices {
        flat.clear();
        for &v in s.vertices() {
            flat.extend(cloud.point(v).iter().map(|x| x.as_f64()));
        }
        let r = meb_radius(&flat, d);
        let face_max = s.facets().map(|f| value[&f]).fold(0.0, f64::max);
        // a ball re-solved from a different support may differ from its
        // face's ball in the last bits
        let r = if r <= face_max * (1.0 + SNAP) { face_max } else { r };
        value.insert(s.clone(), r);
        entries.push((s, T::from_f64_lossy(r)));
    }
    let complex = FilteredComplex::from_entries(entries, cloud.labels().to_vec(), cloud.species_count()).with_truncation(truncated);
    complex.validate()?;
    Ok(complex)
}
