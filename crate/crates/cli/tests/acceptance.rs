//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use m2s2::geom::{cech_filtration, chromatic_delcech};
use m2s2::reduction::{boundary_matrix, diagrams, reduce};
use m2s2::signatures::{self, combination_diagrams, SignatureConfig};
use m2s2::sixpack::{k_chromatic_gluing_map, k_chromatic_inclusion_map, rank_oracle, ChromaticMap, SixPack};
use m2s2::{Complex, Diagram, PointCloud, Simplex};
use m2s2_cli::config::RunConfig;
use m2s2_cli::fixtures::{generate, write_csv, Fixture, FixtureParams};
use m2s2_cli::ingest::parse_csv;
use m2s2_cli::output::write_signature_csv;
use m2s2_cli::run::{diagrams_batch, signature_batch};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FILTRATION_TOL: f64 = 1e-9;
const ISOMETRY_TOL: f64 = 1e-6;
const TOY_THRESHOLD: f64 = 0.3;
const TOY_SEEDS: u64 = 20;
const SINGLE_BUDGET: Duration = Duration::from_secs(10);
const BATCH_BUDGET: Duration = Duration::from_secs(300);

type Outcome = Result<String, String>;

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("filtration oracle equivalence", criterion_1),
        ("six-pack rank oracle", criterion_2),
        ("pointwise additivity", criterion_3),
        ("degree-0 cokernel and degree-2 emptiness", criterion_4),
        ("toy configuration counts", criterion_5),
        ("signature dimensions", criterion_6),
        ("reduction correctness", criterion_7),
        ("robustness and determinism", criterion_8),
        ("desk-scale performance", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {secs:.1} s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({detail}; {secs:.1} s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform cloud in the unit square, 2 or 3 species, every species present.
fn random_cloud(seed: u64, max_points: usize) -> PointCloud {
    let mut r = rng(0xacce_0000 + seed);
    let species = r.gen_range(2..=3usize);
    let n = r.gen_range(5..=max_points);
    let pts: Vec<(Vec<f64>, usize)> = (0..n)
        .map(|i| {
            let label = if i < species { i } else { r.gen_range(0..species) };
            (vec![r.gen::<f64>(), r.gen::<f64>()], label)
        })
        .collect();
    PointCloud::new(2, pts).unwrap()
}

/// Critical values, midpoints between consecutive ones, and one past the end.
fn sample_scales(values: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = values.iter().copied().filter(|x| x.is_finite()).collect();
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

/// Multiset equality up to `tol` per coordinate, by greedy matching.
fn same_points(a: &Diagram, b: &Diagram, tol: f64) -> bool {
    if a.points.len() != b.points.len() {
        return false;
    }
    let close = |x: f64, y: f64| (x.is_infinite() && x == y) || (x - y).abs() <= tol;
    let mut used = vec![false; b.points.len()];
    a.points.iter().all(|&(pb, pd)| {
        let hit = b.points
            .iter()
            .enumerate()
            .find(|(j, &(qb, qd))| !used[*j] && close(pb, qb) && close(pd, qd));
        match hit {
            Some((j, _)) => {
                used[j] = true;
                true
            }
            None => false,
        }
    })
}

fn cloud_from_rows(rows: &[(Vec<f64>, String)]) -> PointCloud {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).unwrap();
    parse_csv(&buf, "fixture").unwrap().cloud
}

fn fixture_rows(f: Fixture, seed: u64, edit: impl FnOnce(&mut FixtureParams)) -> Vec<(Vec<f64>, String)> {
    let mut p = FixtureParams {
        radius: 1.0,
        points: 40,
        fill_points: 60,
        noise: 0.02,
        ..FixtureParams::default()
    };
    edit(&mut p);
    generate(f, &p, seed).unwrap()
}

/// A filled loop at the origin, an open loop of the filled loop's species
/// and an open loop of the filling species, side by side.
fn three_loop_scene(seed: u64) -> PointCloud {
    let mut rows = fixture_rows(Fixture::FilledCircle, seed, |_| {});
    rows.extend(fixture_rows(Fixture::Circle, seed + 1000, |p| p.center = [4.0, 0.0]));
    let mut b = fixture_rows(Fixture::Circle, seed + 2000, |p| p.center = [8.0, 0.0]);
    for r in &mut b {
        r.1 = "B".into();
    }
    rows.extend(b);
    cloud_from_rows(&rows)
}

fn random_maps(seed: u64, max_dim: usize) -> Vec<ChromaticMap<f64>> {
    let cloud = random_cloud(seed, 10);
    let mut out = Vec::new();
    for k in 1..=2 {
        out.push(k_chromatic_gluing_map(&cloud, k, max_dim).unwrap());
        out.push(k_chromatic_inclusion_map(&cloud, k, max_dim).unwrap());
    }
    out
}

fn toy_maps(seed: u64, max_dim: usize) -> Vec<ChromaticMap<f64>> {
    let scene = three_loop_scene(seed);
    let arcs2 = cloud_from_rows(&fixture_rows(Fixture::DichromaticArcs, seed, |_| {}));
    let arcs3 = cloud_from_rows(&fixture_rows(Fixture::TrichromaticArcs, seed, |_| {}));
    let coloc = cloud_from_rows(&fixture_rows(Fixture::ColocatedCircles, seed, |p| p.species = 3));
    vec![
        k_chromatic_gluing_map(&scene, 1, max_dim).unwrap(),
        k_chromatic_gluing_map(&arcs2, 1, max_dim).unwrap(),
        k_chromatic_gluing_map(&arcs3, 2, max_dim).unwrap(),
        k_chromatic_gluing_map(&coloc, 2, max_dim).unwrap(),
    ]
}

fn criterion_1() -> Outcome {
    let mut points = 0;
    for seed in 0..50 {
        let cloud = random_cloud(seed, 12);
        let cech = diagrams(&cech_filtration(&cloud, 2).map_err(|e| e.to_string())?, 1);
        let del = diagrams(&chromatic_delcech(&cloud, 2).map_err(|e| e.to_string())?, 1);
        for d in 0..=1 {
            ensure(same_points(&cech[d], &del[d], FILTRATION_TOL), || {
                format!("seed {seed} degree {d}: {:?} vs {:?}", cech[d].points, del[d].points)
            })?;
            points += cech[d].len();
        }
    }
    Ok(format!("50 clouds, {points} points matched within {FILTRATION_TOL:e}"))
}

fn criterion_2() -> Outcome {
    let mut checks = 0;
    for seed in 0..30 {
        let cloud = random_cloud(seed, 10);
        let mut r = rng(seed);
        for k in 1..=2 {
            let g = k_chromatic_gluing_map(&cloud, k, 2).map_err(|e| e.to_string())?;
            let p = g.six_pack(1).map_err(|e| e.to_string())?;
            let scales = sample_scales(g.map.codomain().values());
            for (i, &s) in scales.iter().enumerate() {
                let mut ts = vec![s];
                if i + 1 < scales.len() {
                    ts.push(scales[i + 1]);
                    ts.push(scales[r.gen_range(i + 1..scales.len())]);
                }
                for t in ts {
                    for d in 0..=1 {
                        let want = rank_oracle(&g.map, s, t, d).map_err(|e| e.to_string())?;
                        let got = (p.kernel[d].persisting(s, t), p.image[d].persisting(s, t), p.cokernel[d].persisting(s, t));
                        ensure(got == (want.kernel, want.image, want.cokernel), || {
                            format!("seed {seed} k {k} degree {d} at ({s}, {t}): {got:?} vs {want:?}")
                        })?;
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checks} rank comparisons"))
}

fn additivity(p: &SixPack<f64>, scales: &[f64]) -> Result<usize, String> {
    let mut n = 0;
    for d in 0..=p.max_degree() {
        for &t in scales {
            let (dom, ker, im) = (p.domain[d].alive_at(t), p.kernel[d].alive_at(t), p.image[d].alive_at(t));
            let (cod, cok) = (p.codomain[d].alive_at(t), p.cokernel[d].alive_at(t));
            ensure(dom == ker + im && cod == im + cok, || {
                format!("degree {d} at {t}: {dom} != {ker} + {im} or {cod} != {im} + {cok}")
            })?;
            n += 1;
        }
    }
    Ok(n)
}

fn criterion_3() -> Outcome {
    let mut n = 0;
    let mut maps = 0;
    for seed in 0..30 {
        for m in random_maps(seed, 3) {
            let p = m.six_pack(2).map_err(|e| e.to_string())?;
            n += additivity(&p, &sample_scales(m.map.codomain().values())).map_err(|e| format!("seed {seed}: {e}"))?;
            maps += 1;
        }
    }
    for seed in 0..TOY_SEEDS {
        for m in toy_maps(seed, 2) {
            let p = m.six_pack(1).map_err(|e| e.to_string())?;
            n += additivity(&p, &sample_scales(m.map.codomain().values())).map_err(|e| format!("toy seed {seed}: {e}"))?;
            maps += 1;
        }
    }
    Ok(format!("{maps} maps, {n} scale checks"))
}

fn criterion_4() -> Outcome {
    let mut maps = 0;
    let mut check = |p: &SixPack<f64>, what: String| -> Result<(), String> {
        ensure(p.cokernel[0].is_empty(), || format!("{what}: cokernel_deg0 {:?}", p.cokernel[0].points))?;
        if p.max_degree() >= 2 {
            for (name, ds) in [("kernel", &p.kernel), ("image", &p.image), ("cokernel", &p.cokernel), ("domain", &p.domain), ("codomain", &p.codomain)] {
                ensure(ds[2].is_empty(), || format!("{what}: {name}_deg2 {:?}", ds[2].points))?;
            }
        }
        maps += 1;
        Ok(())
    };
    for seed in 0..30 {
        let cloud = random_cloud(seed, 14);
        for k in 1..=2 {
            let g = k_chromatic_gluing_map(&cloud, k, 3).map_err(|e| e.to_string())?;
            check(&g.six_pack(2).map_err(|e| e.to_string())?, format!("seed {seed} k {k}"))?;
        }
    }
    for seed in 0..5 {
        for (i, m) in toy_maps(seed, 3).into_iter().enumerate() {
            check(&m.six_pack(2).map_err(|e| e.to_string())?, format!("toy {i} seed {seed}"))?;
        }
    }
    Ok(format!("{maps} gluing maps"))
}

fn count(p: &SixPack<f64>, kind: &str) -> usize {
    let ds = match kind {
        "kernel" => &p.kernel,
        "image" => &p.image,
        "cokernel" => &p.cokernel,
        _ => &p.domain,
    };
    ds[1].count_longer_than(TOY_THRESHOLD)
}

fn criterion_5() -> Outcome {
    let expect: [(&str, &[(&str, usize)]); 4] = [
        ("three loops, k = 1", &[("kernel", 1), ("image", 2), ("domain", 3), ("cokernel", 0)]),
        ("dichromatic loop, k = 1", &[("cokernel", 1)]),
        ("trichromatic loop, k = 2", &[("cokernel", 1), ("image", 0)]),
        ("co-located loops, k = 2", &[("kernel", 2), ("image", 1)]),
    ];
    let mut misses = Vec::new();
    for seed in 0..TOY_SEEDS {
        for (m, (name, want)) in toy_maps(seed, 2).iter().zip(expect) {
            let p = m.six_pack(1).map_err(|e| e.to_string())?;
            for &(kind, n) in want {
                let got = count(&p, kind);
                if got != n {
                    misses.push(format!("seed {seed} {name}: {kind}_deg1 {got} != {n}"));
                }
            }
        }
    }
    if misses.is_empty() {
        Ok(format!("4 configurations x {TOY_SEEDS} seeds, threshold {TOY_THRESHOLD}"))
    } else {
        Err(misses.join("; "))
    }
}

fn criterion_6() -> Outcome {
    let got = [
        signatures::signature_length(1),
        signatures::signature_length(2),
        signatures::signature_length(3),
        signatures::feature_length(5, 3),
        signatures::feature_length(10, 3),
    ];
    ensure(got == [44, 146, 146, 3140, 24530], || format!("{got:?}"))?;
    let universe: Vec<String> = ["A", "B", "C", "D", "E"].map(String::from).to_vec();
    let cloud = cloud_from_rows(&fixture_rows(Fixture::TrichromaticArcs, 0, |_| {}));
    let (v, manifest) = signatures::assemble_feature_vector(&cloud, &universe, 3, &SignatureConfig::default()).map_err(|e| e.to_string())?;
    ensure(v.len() == 3140 && manifest.len() == 3140, || format!("assembled {} / manifest {}", v.len(), manifest.len()))?;
    Ok(format!("{got:?}"))
}

fn random_complex(seed: u64, max_simplices: usize) -> Complex {
    let mut r = rng(0x7ed0 + seed);
    let n = r.gen_range(3..=9usize);
    let mut set = BTreeSet::new();
    for _ in 0..r.gen_range(1..=12) {
        let size = r.gen_range(1..=4usize.min(n));
        let mut vs: Vec<usize> = (0..n).collect();
        for i in 0..size {
            let j = r.gen_range(i..n);
            vs.swap(i, j);
        }
        let faces = Simplex::new(vs[..size].to_vec()).faces_up_to(3);
        if set.len() + faces.len() > max_simplices {
            break;
        }
        set.extend(faces);
    }
    set.extend((0..n).map(Simplex::vertex));
    let mut simplices: Vec<Simplex> = set.into_iter().collect();
    simplices.sort_by_key(|s| s.len());
    let mut value = HashMap::new();
    let mut entries = Vec::new();
    for s in simplices {
        let base = s.facets().map(|f| value[&f]).fold(0.0f64, f64::max);
        let v = base + r.gen_range(0..3) as f64 * 0.5;
        value.insert(s.clone(), v);
        entries.push((s, v));
    }
    Complex::new(entries, vec![0; n], 1).unwrap()
}

/// Z/2 rank by dense elimination.
fn dense_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c]) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c] {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    rank
}

fn dense_betti(k: &Complex, m: usize, t: f64) -> usize {
    let cells = |dim: usize| -> Vec<usize> { (0..k.len()).filter(|&j| k.simplex_dim(j) == dim && k.value(j) <= t).collect() };
    let boundary_rank = |dim: usize| -> usize {
        if dim == 0 {
            return 0;
        }
        let faces = cells(dim - 1);
        let rows = cells(dim)
            .into_iter()
            .map(|j| {
                let fs = k.facet_indices(j);
                faces.iter().map(|f| fs.contains(f)).collect()
            })
            .collect();
        dense_rank(rows)
    };
    cells(m).len() - boundary_rank(m) - boundary_rank(m + 1)
}

fn criterion_7() -> Outcome {
    let mut scales = 0;
    for seed in 0..100 {
        let k = random_complex(seed, 150);
        let m = boundary_matrix(&k);
        let (a, b) = (reduce(&m, true), reduce(&m, false));
        ensure(a.pairs().eq(b.pairs()) && a.essentials().eq(b.essentials()), || format!("seed {seed}: pairings differ"))?;
        let ds = diagrams(&k, 3);
        for t in sample_scales(k.values()) {
            for d in 0..=3 {
                let (got, want) = (ds[d].alive_at(t), dense_betti(&k, d, t));
                ensure(got == want, || format!("seed {seed} degree {d} at {t}: {got} vs {want}"))?;
            }
            scales += 1;
        }
    }
    Ok(format!("100 complexes, {scales} scales"))
}

fn isometry(cloud: &PointCloud, seed: u64) -> PointCloud {
    let mut r = rng(0x150 + seed);
    let a = r.gen_range(0.0..std::f64::consts::TAU);
    let flip = if r.gen_bool(0.5) { -1.0 } else { 1.0 };
    let (tx, ty) = (r.gen_range(-50.0..50.0), r.gen_range(-50.0..50.0));
    let pts: Vec<(Vec<f64>, usize)> = (0..cloud.len())
        .map(|i| {
            let p = cloud.point(i);
            let (x, y) = (p[0], flip * p[1]);
            (vec![a.cos() * x - a.sin() * y + tx, a.sin() * x + a.cos() * y + ty], cloud.label(i))
        })
        .collect();
    PointCloud::with_species_names(2, pts, cloud.species_names().to_vec()).unwrap()
}

fn criterion_8() -> Outcome {
    // random clouds have species of one or two points
    let config = SignatureConfig {
        min_species_size: 1,
        ..SignatureConfig::default()
    };
    let mut compared = 0;
    for seed in 0..20 {
        let cloud = if seed < 10 {
            random_cloud(seed, 30)
        } else {
            cloud_from_rows(&fixture_rows(Fixture::UniformNoise, seed, |p| {
                p.points = 60;
                p.species = 3;
            }))
        };
        let moved = isometry(&cloud, seed);
        for combo in signatures::combinations(cloud.species_count(), 3) {
            let a = combination_diagrams(&cloud, &combo, &config).map_err(|e| e.to_string())?;
            let b = combination_diagrams(&moved, &combo, &config).map_err(|e| e.to_string())?;
            for ((name, da), (_, db)) in a.diagrams.iter().zip(&b.diagrams) {
                ensure(same_points(da, db, ISOMETRY_TOL), || format!("seed {seed} {combo:?} {name}"))?;
                compared += 1;
            }
        }
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut paths = Vec::new();
    for (i, f) in [Fixture::TrichromaticArcs, Fixture::FilledCircle, Fixture::UniformNoise, Fixture::ColocatedCircles]
        .into_iter()
        .enumerate()
    {
        for seed in 0..3 {
            let rows = fixture_rows(f, seed, |p| p.species = 3);
            let path = dir.path().join(format!("{i}_{seed}.csv"));
            write_csv(&rows, std::fs::File::create(&path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            paths.push(path);
        }
    }
    let outputs = |workers: usize| -> Result<Vec<u8>, String> {
        let config = RunConfig {
            worker_count: Some(workers),
            ..RunConfig::default()
        };
        let mut bytes = Vec::new();
        for r in diagrams_batch(&paths, &config).map_err(|e| e.to_string())? {
            bytes.extend(r.result.map_err(|e| e.to_string())?.to_json().into_bytes());
        }
        let batch = signature_batch(&paths, &config).map_err(|e| e.to_string())?;
        let rows: Vec<(String, Vec<f64>)> = batch
            .rows
            .into_iter()
            .map(|r| Ok((r.path.display().to_string(), r.result.map_err(|e| e.to_string())?)))
            .collect::<Result<_, String>>()?;
        write_signature_csv(&mut bytes, &batch.manifest, &rows).map_err(|e| e.to_string())?;
        Ok(bytes)
    };
    let reference = outputs(1)?;
    for w in [4, 8] {
        ensure(outputs(w)? == reference, || format!("outputs at {w} workers differ from 1 worker"))?;
    }
    Ok(format!(
        "{compared} diagrams within {ISOMETRY_TOL:e}; {} input files, {} output bytes identical at 1/4/8 workers",
        paths.len(),
        reference.len()
    ))
}

fn perf_rows(seed: u64) -> Vec<(Vec<f64>, String)> {
    fixture_rows(Fixture::UniformNoise, seed, |p| {
        p.points = 500;
        p.species = 3;
        p.radius = 1.0;
    })
}

fn criterion_9() -> Outcome {
    let universe: Vec<String> = ["A", "B", "C"].map(String::from).to_vec();
    let cloud = cloud_from_rows(&perf_rows(0));
    let start = Instant::now();
    let (v, _) = signatures::assemble_feature_vector(&cloud, &universe, 3, &SignatureConfig::default()).map_err(|e| e.to_string())?;
    let single = start.elapsed();
    ensure(v.len() == signatures::feature_length(3, 3), || format!("length {}", v.len()))?;
    ensure(single < SINGLE_BUDGET, || format!("single cloud took {single:?}"))?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let paths: Vec<PathBuf> = (0..100)
        .map(|seed| {
            let path = dir.path().join(format!("cloud_{seed:03}.csv"));
            write_csv(&perf_rows(seed), std::fs::File::create(&path).unwrap()).unwrap();
            path
        })
        .collect();
    let config = RunConfig {
        worker_count: Some(8),
        ..RunConfig::default()
    };
    let start = Instant::now();
    let batch = signature_batch(&paths, &config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(batch.rows.iter().all(|r| r.result.is_ok()), || "a batch input failed".into())?;
    ensure(elapsed < BATCH_BUDGET, || format!("batch took {elapsed:?}"))?;
    let cpus = std::thread::available_parallelism().map_or(1, |n| n.get());
    Ok(format!(
        "single 500-point cloud {:.2} s (< {} s); 100 clouds at 8 workers on {cpus} CPU(s) {:.1} s (< {} s)",
        single.as_secs_f64(),
        SINGLE_BUDGET.as_secs(),
        elapsed.as_secs_f64(),
        BATCH_BUDGET.as_secs()
    ))
}
