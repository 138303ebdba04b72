//! Persistent-statistics vectorization of diagrams and assembly of the
//! per-combination feature vector.

mod stats;

pub use stats::{diagram_statistics, persistent_entropy, DiagramStatistics, Layout, QUANTITIES, STATISTICS};

use std::ops::Range;
use std::sync::Arc;

use crate::complex::LabelledPointCloud;
use crate::error::{Error, Result};
use crate::geom::{chromatic_delcech_with, DelcechOptions};
use crate::reduction::{diagrams, PersistenceDiagram};
use crate::scalar::Scalar;
use crate::sixpack::{gluing_map_from_complex, color_subsets};

/// Settings shared by every combination of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureConfig {
    /// Top simplex dimension of the filtrations.
    pub max_dim: usize,
    /// Highest homology degree computed. Signatures only read degrees 0
    /// and 1; higher degrees need `max_dim > max_degree`.
    pub max_degree: usize,
    /// Infinite deaths are capped at this multiple of the largest finite
    /// filtration value of the combination's complex.
    pub cap_factor: f64,
    /// Species with fewer points make their combinations absent.
    pub min_species_size: usize,
    pub delcech: DelcechOptions,
}

impl Default for SignatureConfig {
    fn default() -> Self {
        SignatureConfig {
            max_dim: 2,
            max_degree: 1,
            cap_factor: 1.25,
            min_species_size: 3,
            delcech: DelcechOptions::default(),
        }
    }
}

/// Diagram name and layout of each block, in vector order.
pub fn blocks(combo_size: usize) -> &'static [(&'static str, Layout)] {
    const SINGLE: [(&str, Layout); 2] = [("domain_deg0", Layout::Reduced), ("domain_deg1", Layout::Full)];
    const MULTI: [(&str, Layout); 5] = [
        ("kernel_deg0", Layout::Full),
        ("kernel_deg1", Layout::Full),
        ("image_deg0", Layout::Reduced),
        ("image_deg1", Layout::Full),
        ("cokernel_deg1", Layout::Full),
    ];
    if combo_size <= 1 {
        &SINGLE
    } else {
        &MULTI
    }
}

/// 44 for singles, 146 otherwise.
pub fn signature_length(combo_size: usize) -> usize {
    blocks(combo_size).iter().map(|(_, l)| l.len()).sum()
}

/// Every combination of `1..=max_combo` species out of `universe_size`:
/// singles, then pairs, then triples, each in lexicographic order.
pub fn combinations(universe_size: usize, max_combo: usize) -> Vec<Vec<usize>> {
    (1..=max_combo).flat_map(|k| color_subsets(universe_size, k)).collect()
}

/// Length of the assembled vector.
pub fn feature_length(universe_size: usize, max_combo: usize) -> usize {
    combinations(universe_size, max_combo).iter().map(|c| signature_length(c.len())).sum()
}

/// The diagrams of one species combination, keyed by block name.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinationDiagrams<T> {
    /// Species indices into the cloud, in increasing order.
    pub combination: Vec<usize>,
    /// Chromatic `k` of the gluing map; 1 for singles.
    pub k: usize,
    /// Every diagram up to `max_degree`, named `<kind>_deg<d>`.
    pub diagrams: Vec<(String, PersistenceDiagram<T>)>,
    /// Value substituted for infinite deaths.
    pub cap: T,
}

impl<T: Scalar> CombinationDiagrams<T> {
    pub fn get(&self, name: &str) -> Option<&PersistenceDiagram<T>> {
        self.diagrams.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }
}

/// Statistics vector of one combination with named slices.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureVector<T> {
    pub combination: Vec<usize>,
    pub values: Vec<T>,
    pub blocks: Vec<(String, Range<usize>)>,
}

fn cap_for<T: Scalar>(max_value: Option<T>, factor: f64) -> T {
    match max_value.map(|v| v.as_f64()) {
        Some(v) if v > 0.0 && v.is_finite() => T::from_f64_lossy(v * factor),
        _ => T::one(),
    }
}

/// Computes the diagrams behind the signature of `combo` (species indices of
/// `cloud`, at most three).
///
/// Singles use the filtration of that species alone. Pairs and triples use
/// the `|combo| - 1`-chromatic gluing map on the points of those species.
/// Fails with [`Error::AbsentCombination`] when a species is missing or has
/// fewer than `min_species_size` points.
pub fn combination_diagrams<T: Scalar>(
    cloud: &LabelledPointCloud<T>,
    combo: &[usize],
    config: &SignatureConfig,
) -> Result<CombinationDiagrams<T>> {
    if combo.is_empty() || combo.len() > 3 || combo.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Input(format!("combination must be 1 to 3 increasing species, got {combo:?}")));
    }
    let sizes = cloud.species_sizes();
    if combo.iter().any(|&s| sizes.get(s).is_none_or(|&n| n < config.min_species_size.max(1))) {
        let names = combo
            .iter()
            .map(|&s| cloud.species_names().get(s).cloned().unwrap_or_else(|| s.to_string()))
            .collect();
        return Err(Error::AbsentCombination(names));
    }
    let (sub, _) = cloud.restrict(combo)?;
    let complex = Arc::new(chromatic_delcech_with(&sub, config.max_dim, &config.delcech)?);
    let cap = cap_for(complex.max_value(), config.cap_factor);
    if combo.len() == 1 {
        let ds = diagrams(&complex, config.max_degree);
        return Ok(CombinationDiagrams {
            combination: combo.to_vec(),
            k: 1,
            diagrams: ds.into_iter().map(|d| (format!("domain_deg{}", d.degree), d)).collect(),
            cap,
        });
    }
    let k = combo.len() - 1;
    let pack = gluing_map_from_complex(complex, k)?.six_pack(config.max_degree)?;
    let mut named = Vec::new();
    for (kind, ds) in [
        ("kernel", pack.kernel),
        ("image", pack.image),
        ("cokernel", pack.cokernel),
        ("domain", pack.domain),
        ("codomain", pack.codomain),
    ] {
        for d in ds {
            named.push((format!("{kind}_deg{}", d.degree), d));
        }
    }
    Ok(CombinationDiagrams {
        combination: combo.to_vec(),
        k,
        diagrams: named,
        cap,
    })
}

impl<T: Scalar> CombinationDiagrams<T> {
    /// Statistics of the selected blocks.
    pub fn signature(&self) -> SignatureVector<T> {
        let mut values = Vec::with_capacity(signature_length(self.combination.len()));
        let mut spans = Vec::new();
        for &(name, layout) in blocks(self.combination.len()) {
            let start = values.len();
            match self.get(name) {
                Some(d) => values.extend(diagram_statistics(d, layout, self.cap).values),
                None => values.extend(std::iter::repeat_n(T::zero(), layout.len())),
            }
            spans.push((name.to_string(), start..values.len()));
        }
        SignatureVector {
            combination: self.combination.clone(),
            values,
            blocks: spans,
        }
    }
}

/// [`combination_diagrams`] followed by vectorization.
pub fn signature_for_combination<T: Scalar>(
    cloud: &LabelledPointCloud<T>,
    combo: &[usize],
    config: &SignatureConfig,
) -> Result<SignatureVector<T>> {
    Ok(combination_diagrams(cloud, combo, config)?.signature())
}

/// One named column of an assembled feature vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub column_index: usize,
    /// Species names joined by `+`.
    pub combo: String,
    pub diagram: String,
    pub statistic: String,
}

/// Names every column of the vector assembled over `universe`.
pub fn feature_manifest(universe: &[String], max_combo: usize) -> Vec<ManifestEntry> {
    let mut out = Vec::with_capacity(feature_length(universe.len(), max_combo));
    for combo in combinations(universe.len(), max_combo) {
        let label = combo.iter().map(|&i| universe[i].as_str()).collect::<Vec<_>>().join("+");
        for &(name, layout) in blocks(combo.len()) {
            for stat in layout.names() {
                out.push(ManifestEntry {
                    column_index: out.len(),
                    combo: label.clone(),
                    diagram: name.to_string(),
                    statistic: stat,
                });
            }
        }
    }
    out
}

/// Species indices of `cloud` for a combination over `universe`, or `None`
/// when some species of the combination does not occur in the cloud.
pub fn resolve_combination<T: Scalar>(cloud: &LabelledPointCloud<T>, universe: &[String], combo: &[usize]) -> Option<Vec<usize>> {
    let mut idx: Vec<usize> = combo
        .iter()
        .map(|&u| cloud.species_index(&universe[u]))
        .collect::<Option<_>>()?;
    idx.sort_unstable();
    Some(idx)
}

/// Concatenates the signatures of every combination over `universe` in the
/// order of [`combinations`]. `parts` holds one entry per combination;
/// `None` and absent combinations become zero blocks.
pub fn assemble<T: Scalar>(universe_size: usize, max_combo: usize, parts: &[Option<SignatureVector<T>>]) -> Vec<T> {
    let combos = combinations(universe_size, max_combo);
    assert_eq!(combos.len(), parts.len(), "one part per combination");
    let mut out = Vec::with_capacity(feature_length(universe_size, max_combo));
    for (combo, part) in combos.iter().zip(parts) {
        match part {
            Some(s) => out.extend_from_slice(&s.values),
            None => out.extend(std::iter::repeat_n(T::zero(), signature_length(combo.len()))),
        }
    }
    out
}

/// The feature vector of `cloud` over a fixed species universe, with its
/// manifest. Combinations whose species are missing or undersized are
/// zero-filled; other failures are returned.
pub fn assemble_feature_vector<T: Scalar>(
    cloud: &LabelledPointCloud<T>,
    universe: &[String],
    max_combo: usize,
    config: &SignatureConfig,
) -> Result<(Vec<T>, Vec<ManifestEntry>)> {
    if !(1..=3).contains(&max_combo) {
        return Err(Error::Input(format!("max_combo must be 1..=3, got {max_combo}")));
    }
    let mut parts = Vec::new();
    for combo in combinations(universe.len(), max_combo) {
        let part = match resolve_combination(cloud, universe, &combo) {
            None => None,
            Some(idx) => match signature_for_combination(cloud, &idx, config) {
                Ok(s) => Some(s),
                Err(Error::AbsentCombination(_)) => None,
                Err(e) => return Err(e),
            },
        };
        parts.push(part);
    }
    Ok((assemble(universe.len(), max_combo, &parts), feature_manifest(universe, max_combo)))
}
