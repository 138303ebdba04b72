//! Batch execution over many inputs on a fixed-size worker pool.

use std::path::{Path, PathBuf};

use m2s2::signatures::{self, combination_diagrams, feature_manifest, ManifestEntry, SignatureVector};
use m2s2::Error;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::ingest::{ingest_csv, Ingested};
use crate::output::{CombinationRecord, DiagramsDocument};
use crate::{CliError, Result};

/// Outcome of one input file.
#[derive(Debug)]
pub struct FileResult<R> {
    pub path: PathBuf,
    pub result: Result<R>,
}

fn pool(config: &RunConfig) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers())
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", config.workers())))
}

fn load_all(paths: &[PathBuf], pool: &rayon::ThreadPool) -> Vec<Result<Ingested>> {
    pool.install(|| paths.par_iter().map(|p| ingest_csv(p)).collect())
}

/// The species defining the feature columns: the configured list, or the
/// sorted union of the names found in the inputs that loaded.
pub fn universe(config: &RunConfig, loaded: &[Result<Ingested>]) -> Vec<String> {
    if let Some(u) = &config.species_universe {
        return u.clone();
    }
    let mut names: Vec<String> = loaded
        .iter()
        .flatten()
        .flat_map(|i| i.cloud.species_names().iter().cloned())
        .collect();
    names.sort();
    names.dedup();
    names
}

/// Label used for an input in outputs.
pub fn input_name(path: &Path) -> String {
    path.display().to_string()
}

/// Computes the diagram document of every input. Combinations with an
/// undersized species are left out.
pub fn diagrams_batch(paths: &[PathBuf], config: &RunConfig) -> Result<Vec<FileResult<DiagramsDocument>>> {
    config.validate()?;
    let pool = pool(config)?;
    let loaded = load_all(paths, &pool);
    let sig = config.signature_config();
    let universe = config.species_universe.clone();

    // one unit per (file, combination) so a large file does not serialize the run
    let mut units = Vec::new();
    for (f, l) in loaded.iter().enumerate() {
        if let Ok(input) = l {
            let names = input.cloud.species_names();
            let present: Vec<usize> = (0..names.len())
                .filter(|&s| universe.as_ref().is_none_or(|u| u.contains(&names[s])))
                .collect();
            for combo in signatures::combinations(present.len(), config.max_combo) {
                units.push((f, combo.iter().map(|&i| present[i]).collect::<Vec<_>>()));
            }
        }
    }
    let computed: Vec<Result<Option<CombinationRecord>>> = pool.install(|| {
        units
            .par_iter()
            .map(|(f, combo)| {
                let input = loaded[*f].as_ref().expect("only loaded inputs have units");
                let cloud = &input.cloud;
                match combination_diagrams(cloud, combo, &sig) {
                    Ok(c) => Ok(Some(CombinationRecord::new(&c, cloud.species_names(), &cloud.species_sizes()))),
                    Err(Error::AbsentCombination(names)) => {
                        log::info!("{}: skipping {} (too few points)", input_name(&paths[*f]), names.join("+"));
                        Ok(None)
                    }
                    Err(e) => Err(CliError::Parse {
                        path: input_name(&paths[*f]),
                        message: e.to_string(),
                    }),
                }
            })
            .collect()
    });

    // entries of inputs that failed to load are never read
    let mut records: Vec<Result<Vec<CombinationRecord>>> = paths.iter().map(|_| Ok(Vec::new())).collect();
    for ((f, _), r) in units.iter().zip(computed) {
        if let Ok(list) = &mut records[*f] {
            match r {
                Ok(Some(rec)) => list.push(rec),
                Ok(None) => {}
                Err(e) => records[*f] = Err(e),
            }
        }
    }
    let config_hash = config.hash();
    Ok(paths
        .iter()
        .zip(loaded.into_iter().zip(records))
        .map(|(p, (l, r))| FileResult {
            path: p.clone(),
            result: match (l, r) {
                (Err(e), _) => Err(e),
                (Ok(_), Err(e)) => Err(e),
                (Ok(input), Ok(combinations)) => Ok(DiagramsDocument {
                    input: input_name(p),
                    input_hash: input.hash,
                    config_hash: config_hash.clone(),
                    species: input.cloud.species_names().to_vec(),
                    combinations,
                }),
            },
        })
        .collect())
}

/// Signature matrix of a batch.
#[derive(Debug)]
pub struct SignatureBatch {
    pub universe: Vec<String>,
    pub manifest: Vec<ManifestEntry>,
    /// One entry per input, in input order.
    pub rows: Vec<FileResult<Vec<f64>>>,
}

pub fn signature_batch(paths: &[PathBuf], config: &RunConfig) -> Result<SignatureBatch> {
    config.validate()?;
    let pool = pool(config)?;
    let loaded = load_all(paths, &pool);
    let universe = universe(config, &loaded);
    if universe.is_empty() {
        return Err(CliError::Usage("no species found in any input".into()));
    }
    let sig = config.signature_config();
    let combos = signatures::combinations(universe.len(), config.max_combo);
    let units: Vec<(usize, usize)> = loaded
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_ok())
        .flat_map(|(f, _)| (0..combos.len()).map(move |c| (f, c)))
        .collect();
    let parts: Vec<Result<Option<SignatureVector<f64>>>> = pool.install(|| {
        units
            .par_iter()
            .map(|&(f, c)| {
                let cloud = &loaded[f].as_ref().expect("only loaded inputs have units").cloud;
                let Some(idx) = signatures::resolve_combination(cloud, &universe, &combos[c]) else {
                    return Ok(None);
                };
                match signatures::signature_for_combination(cloud, &idx, &sig) {
                    Ok(s) => Ok(Some(s)),
                    Err(Error::AbsentCombination(_)) => Ok(None),
                    Err(e) => Err(CliError::Parse {
                        path: input_name(&paths[f]),
                        message: e.to_string(),
                    }),
                }
            })
            .collect()
    });

    let mut per_file: Vec<Vec<Result<Option<SignatureVector<f64>>>>> = (0..paths.len()).map(|_| Vec::new()).collect();
    for ((f, _), p) in units.iter().zip(parts) {
        per_file[*f].push(p);
    }
    let rows = paths
        .iter()
        .zip(loaded.into_iter().zip(per_file))
        .map(|(p, (l, parts))| {
            let result = l.and_then(|_| {
                let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
                Ok(signatures::assemble(universe.len(), config.max_combo, &parts))
            });
            FileResult { path: p.clone(), result }
        })
        .collect();
    Ok(SignatureBatch {
        manifest: feature_manifest(&universe, config.max_combo),
        universe,
        rows,
    })
}
