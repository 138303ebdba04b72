use clap::Args;
use m2s2::geom::DelcechOptions;
use m2s2::SignatureConfig;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{CliError, Result};

/// Run settings shared by every subcommand that computes diagrams.
#[derive(Debug, Clone, PartialEq, Args, Serialize)]
pub struct RunConfig {
    /// Largest species combination (1 to 3).
    #[arg(long, default_value_t = 3)]
    pub max_combo: usize,

    /// Highest homology degree reported in diagram files (at most 2).
    #[arg(long, default_value_t = 1)]
    pub max_degree: usize,

    /// Species with fewer points are treated as absent.
    #[arg(long, default_value_t = 3)]
    pub min_species_size: usize,

    /// Infinite deaths are capped at this multiple of the largest finite
    /// filtration value.
    #[arg(long, default_value_t = 1.25)]
    pub cap_factor: f64,

    /// Plots omit points with smaller persistence.
    #[arg(long, default_value_t = 0.05)]
    pub plot_threshold: f64,

    /// Species lift height relative to the cloud's extent.
    #[arg(long, default_value_t = 1.0)]
    pub lift_scale: f64,

    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    #[serde(skip)]
    pub worker_count: Option<usize>,

    /// Comma-separated species names fixing the feature columns; defaults to
    /// the sorted union of labels over all inputs.
    #[arg(long, value_delimiter = ',')]
    pub species_universe: Option<Vec<String>>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_combo: 3,
            max_degree: 1,
            min_species_size: 3,
            cap_factor: 1.25,
            plot_threshold: 0.05,
            lift_scale: 1.0,
            worker_count: None,
            species_universe: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(CliError::Usage(m));
        if !(1..=3).contains(&self.max_combo) {
            return bad(format!("--max-combo must be 1, 2 or 3, got {}", self.max_combo));
        }
        if self.max_degree > 2 {
            return bad(format!("--max-degree must be at most 2, got {}", self.max_degree));
        }
        if self.min_species_size == 0 {
            return bad("--min-species-size must be positive".into());
        }
        for (name, v) in [
            ("--cap-factor", self.cap_factor),
            ("--plot-threshold", self.plot_threshold),
            ("--lift-scale", self.lift_scale),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if self.worker_count == Some(0) {
            return bad("--worker-count must be positive".into());
        }
        if let Some(u) = &self.species_universe {
            let mut sorted = u.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != u.len() || u.is_empty() {
                return bad("--species-universe must list distinct names".into());
            }
        }
        Ok(())
    }

    pub fn workers(&self) -> usize {
        self.worker_count
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn signature_config(&self) -> SignatureConfig {
        SignatureConfig {
            max_dim: (self.max_degree + 1).max(2),
            max_degree: self.max_degree.max(1),
            cap_factor: self.cap_factor,
            min_species_size: self.min_species_size,
            delcech: DelcechOptions {
                lift_scale: self.lift_scale,
                ..DelcechOptions::default()
            },
        }
    }

    /// SHA-256 of the settings that influence results (the worker count
    /// does not).
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        format!("{:x}", Sha256::digest(json.as_bytes()))
    }
}
