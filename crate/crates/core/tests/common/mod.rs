#![allow(dead_code)]

use m2s2::{FilteredComplex, LabelledPointCloud, Simplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform cloud in the unit square with every species present.
pub fn random_cloud(seed: u64, max_points: usize, species: usize) -> LabelledPointCloud<f64> {
    let n = rng(seed ^ 0x5eed).gen_range(species.max(4)..=max_points);
    random_cloud_of_size(seed, n, species)
}

pub fn random_cloud_of_size(seed: u64, n: usize, species: usize) -> LabelledPointCloud<f64> {
    let mut r = rng(seed);
    let pts: Vec<(Vec<f64>, usize)> = (0..n)
        .map(|i| {
            let label = if i < species { i } else { r.gen_range(0..species) };
            (vec![r.gen::<f64>(), r.gen::<f64>()], label)
        })
        .collect();
    LabelledPointCloud::new(2, pts).unwrap()
}

/// Random closed complex on a handful of vertices with monotone values,
/// ties included.
pub fn random_complex(seed: u64, max_simplices: usize) -> FilteredComplex<f64> {
    let mut r = rng(seed);
    let n = r.gen_range(3..=9usize);
    let mut set = std::collections::BTreeSet::new();
    for _ in 0..r.gen_range(1..=12) {
        let size = r.gen_range(1..=4usize.min(n));
        let mut vs: Vec<usize> = (0..n).collect();
        for i in 0..size {
            let j = r.gen_range(i..n);
            vs.swap(i, j);
        }
        let top = Simplex::new(vs[..size].to_vec());
        let faces = top.faces_up_to(3);
        if set.len() + faces.len() > max_simplices {
            break;
        }
        set.extend(faces);
    }
    for v in 0..n {
        set.insert(Simplex::vertex(v));
    }
    let mut simplices: Vec<Simplex> = set.into_iter().collect();
    simplices.sort_by_key(|s| s.len());
    let mut value = std::collections::HashMap::new();
    let mut entries = Vec::new();
    for s in simplices {
        let base = s.facets().map(|f| value[&f]).fold(0.0f64, f64::max);
        let bump = if r.gen_bool(0.3) { 0.0 } else { r.gen_range(0..4) as f64 * 0.25 };
        value.insert(s.clone(), base + bump);
        entries.push((s, base + bump));
    }
    FilteredComplex::new(entries, vec![0; n], 1).unwrap()
}

/// Critical values of the given complexes plus midpoints between them and
/// a point past the last one.
pub fn sample_scales(values: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.into_iter().filter(|x| x.is_finite()).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    let mut out = v.clone();
    out.extend(v.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    if let Some(last) = v.last() {
        out.push(last + 1.0);
    }
    out.sort_by(f64::total_cmp);
    out
}
