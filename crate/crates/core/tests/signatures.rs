mod common;

use common::{random_cloud_of_size, rng};
use m2s2::signatures::{
    assemble_feature_vector, combination_diagrams, combinations, diagram_statistics, feature_length, feature_manifest, persistent_entropy,
    signature_for_combination, Layout, SignatureConfig,
};
use m2s2::{LabelledPointCloud, PersistenceDiagram};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Percentile by the "h = (n - 1) p + 1" rule, written against one-based
/// order statistics.
fn oracle_percentile(xs: &[f64], p: f64) -> f64 {
    let mut s = xs.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let h = (s.len() as f64 - 1.0) * p + 1.0;
    let fl = h.floor();
    let lower = s[fl as usize - 1];
    let upper = if (fl as usize) < s.len() { s[fl as usize] } else { lower };
    lower + (h - fl) * (upper - lower)
}

fn oracle_stats(xs: &[f64]) -> Vec<f64> {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let sq = xs.iter().map(|x| x * x).sum::<f64>() / n;
    let max = xs.iter().cloned().fold(f64::MIN, f64::max);
    let min = xs.iter().cloned().fold(f64::MAX, f64::min);
    let mut out = vec![mean, (sq - mean * mean).max(0.0).sqrt(), oracle_percentile(xs, 0.5), max - min];
    out.extend([0.1, 0.25, 0.75, 0.9].map(|p| oracle_percentile(xs, p)));
    out
}

#[test]
fn two_point_reduced_example() {
    let d = PersistenceDiagram::new(0, vec![(0.0, 1.0), (0.0, 3.0)]);
    let s = diagram_statistics(&d, Layout::Reduced, 10.0).values;
    // lifetimes 1 and 3 weigh 1/4 and 3/4
    let h = -(0.25f64 * 0.25f64.ln() + 0.75 * 0.75f64.ln());
    let want = [2.0, 1.0, 2.0, 2.0, 1.2, 1.5, 2.5, 2.8, 2.0, h];
    for (g, w) in s.iter().zip(want) {
        assert!((g - w).abs() < 1e-12, "{s:?}");
    }
    for (g, w) in s.iter().zip(oracle_stats(&[1.0, 3.0])) {
        assert!((g - w).abs() < 1e-12);
    }
}

#[test]
fn entropy_examples() {
    assert_eq!(persistent_entropy(&PersistenceDiagram::new(1, vec![(0.3, 7.0)]), 1.0), 0.0);
    let two = PersistenceDiagram::new(1, vec![(0.0, 0.5), (1.0, 1.5)]);
    assert!((persistent_entropy(&two, 1.0) - std::f64::consts::LN_2).abs() < 1e-15);
}

fn diagram_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.0f64..5.0, 0.01f64..5.0, any::<bool>()), 0..25).prop_map(|v| {
        v.into_iter()
            .map(|(b, l, ess)| (b, if ess && l > 4.5 { f64::INFINITY } else { b + l }))
            .collect()
    })
}

proptest! {
    #[test]
    fn statistics_match_oracle(points in diagram_strategy()) {
        let cap = 12.0;
        let d = PersistenceDiagram::new(1, points.clone());
        let got = diagram_statistics(&d, Layout::Full, cap).values;
        prop_assert_eq!(got.len(), 34);
        prop_assert!(got.iter().all(|x| x.is_finite()));
        prop_assert_eq!(got[32], points.len() as f64);
        if points.is_empty() {
            prop_assert!(got.iter().all(|&x| x == 0.0));
            return Ok(());
        }
        let capped: Vec<(f64, f64)> = points.iter().map(|&(b, e)| (b, e.min(cap))).collect();
        let quantities: [Vec<f64>; 4] = [
            capped.iter().map(|p| p.0).collect(),
            capped.iter().map(|p| p.1).collect(),
            capped.iter().map(|p| p.1 - p.0).collect(),
            capped.iter().map(|p| (p.0 + p.1) / 2.0).collect(),
        ];
        for (q, xs) in quantities.iter().enumerate() {
            for (i, w) in oracle_stats(xs).into_iter().enumerate() {
                let g = got[q * 8 + i];
                prop_assert!((g - w).abs() <= 1e-9 * (1.0 + w.abs()), "quantity {} stat {}: {} vs {}", q, i, g, w);
            }
        }
        let total: f64 = quantities[2].iter().sum();
        let h: f64 = quantities[2].iter().map(|l| l / total).map(|p| -p * p.ln()).sum();
        prop_assert!((got[33] - h).abs() < 1e-9);
    }

    #[test]
    fn statistics_ignore_point_order(points in diagram_strategy(), seed in any::<u64>()) {
        let mut shuffled = points.clone();
        shuffled.shuffle(&mut rng(seed));
        let a = diagram_statistics(&PersistenceDiagram::new(0, points), Layout::Full, 9.0);
        let b = diagram_statistics(&PersistenceDiagram::new(0, shuffled), Layout::Full, 9.0);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn entropy_is_scale_invariant(points in diagram_strategy(), c in 0.1f64..10.0) {
        let finite: Vec<(f64, f64)> = points.into_iter().filter(|p| p.1.is_finite()).collect();
        let scaled: Vec<(f64, f64)> = finite.iter().map(|&(b, d)| (b * c, d * c)).collect();
        let a = persistent_entropy(&PersistenceDiagram::new(1, finite), 1.0);
        let b = persistent_entropy(&PersistenceDiagram::new(1, scaled), 1.0);
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn lengths_follow_closed_form(universe in 1usize..=11, max_combo in 1usize..=3) {
        let choose = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
        let want: usize = (1..=max_combo.min(universe)).map(|j| choose(universe, j) * if j == 1 { 44 } else { 146 }).sum();
        prop_assert_eq!(feature_length(universe, max_combo), want);
        let names: Vec<String> = (0..universe).map(|i| format!("s{i}")).collect();
        prop_assert_eq!(feature_manifest(&names, max_combo).len(), want);
    }
}

#[test]
fn published_lengths() {
    assert_eq!(feature_length(5, 3), 3140);
    assert_eq!(feature_length(10, 3), 24530);
    assert_eq!(feature_length(10, 2), 7010);
}

fn circle(n: usize, label: usize, seed: u64) -> Vec<(Vec<f64>, usize)> {
    let mut r = rng(seed);
    (0..n)
        .map(|i| {
            let a = i as f64 * std::f64::consts::TAU / n as f64;
            (vec![a.cos() + r.gen_range(-0.02..0.02), a.sin() + r.gen_range(-0.02..0.02)], label)
        })
        .collect()
}

#[test]
fn circle_loop_spans_its_radius() {
    let cloud = LabelledPointCloud::new(2, circle(40, 0, 1)).unwrap();
    let config = SignatureConfig::default();
    let s = signature_for_combination(&cloud, &[0], &config).unwrap();
    assert_eq!(s.values.len(), 44);
    let (_, span) = s.blocks.iter().find(|(n, _)| n == "domain_deg1").unwrap().clone();
    assert!(s.values[span][32] >= 1.0);
    let ds = combination_diagrams(&cloud, &[0], &config).unwrap();
    let longest = ds.get("domain_deg1").unwrap().points.iter().map(|(b, d)| d - b).fold(0.0, f64::max);
    assert!((longest - 1.0).abs() < 0.15, "{longest}");
}

#[test]
fn blocks_of_untouched_combinations_are_unchanged() {
    for seed in 0..5 {
        let cloud = random_cloud_of_size(seed, 60, 4);
        let universe: Vec<String> = (0..4).map(|i| i.to_string()).collect();
        let config = SignatureConfig::default();
        let (full, manifest) = assemble_feature_vector(&cloud, &universe, 3, &config).unwrap();
        let removed = rng(seed).gen_range(0..4usize);
        let kept = LabelledPointCloud::with_species_names(
            2,
            (0..cloud.len())
                .filter(|&i| cloud.label(i) != removed)
                .map(|i| (cloud.point(i).to_vec(), cloud.label(i))),
            universe.clone(),
        )
        .unwrap();
        let (partial, _) = assemble_feature_vector(&kept, &universe, 3, &config).unwrap();
        let name = removed.to_string();
        for (i, e) in manifest.iter().enumerate() {
            if e.combo.split('+').any(|s| s == name) {
                assert_eq!(partial[i], 0.0);
            } else {
                assert_eq!(partial[i].to_bits(), full[i].to_bits(), "{e:?}");
            }
        }
        assert_eq!(combinations(4, 3).len(), 14);
    }
}
