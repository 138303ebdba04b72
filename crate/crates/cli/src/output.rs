//! On-disk formats: per-input diagram documents, the signature matrix and
//! its column manifest.

use std::io::Write;

use m2s2::signatures::{CombinationDiagrams, ManifestEntry};
use m2s2::Diagram;
use serde::{Deserialize, Serialize};
use serde_json::Map;

use crate::{CliError, Result};

/// A death value; essential classes are written as the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Death {
    Finite(f64),
    Infinite(Inf),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Inf {
    #[serde(rename = "inf")]
    Inf,
}

impl Death {
    pub fn from_f64(d: f64) -> Self {
        if d.is_finite() {
            Death::Finite(d)
        } else {
            Death::Infinite(Inf::Inf)
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Death::Finite(d) => Some(d),
            Death::Infinite(_) => None,
        }
    }
}

pub type Points = Vec<(f64, Death)>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinationRecord {
    /// Species names of the combination.
    pub labels: Vec<String>,
    /// Point count per species, in `labels` order.
    pub species: Vec<usize>,
    pub k: usize,
    /// `gluing` for pairs and triples, `filtration` for singles.
    pub map: String,
    /// Value substituted for `inf` when computing statistics.
    pub cap: f64,
    /// Keyed `<kind>_deg<d>`.
    pub diagrams: Map<String, serde_json::Value>,
}

impl CombinationRecord {
    pub fn new(c: &CombinationDiagrams<f64>, names: &[String], sizes: &[usize]) -> Self {
        let mut diagrams = Map::new();
        for (name, d) in &c.diagrams {
            diagrams.insert(name.clone(), serde_json::to_value(points_of(d)).expect("points serialize"));
        }
        CombinationRecord {
            labels: c.combination.iter().map(|&s| names[s].clone()).collect(),
            species: c.combination.iter().map(|&s| sizes[s]).collect(),
            k: c.k,
            map: if c.combination.len() == 1 { "filtration" } else { "gluing" }.into(),
            cap: c.cap,
            diagrams,
        }
    }

    /// Diagrams in stored order.
    pub fn diagram_points(&self) -> Result<Vec<(String, Points)>> {
        self.diagrams
            .iter()
            .map(|(k, v)| {
                let pts: Points = serde_json::from_value(v.clone())
                    .map_err(|e| CliError::Parse { path: k.clone(), message: e.to_string() })?;
                Ok((k.clone(), pts))
            })
            .collect()
    }
}

pub fn points_of(d: &Diagram) -> Points {
    d.points.iter().map(|&(b, e)| (b, Death::from_f64(e))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramsDocument {
    pub input: String,
    /// SHA-256 of the input bytes.
    pub input_hash: String,
    /// SHA-256 of the run settings.
    pub config_hash: String,
    /// Species names of the input, sorted.
    pub species: Vec<String>,
    pub combinations: Vec<CombinationRecord>,
}

impl DiagramsDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str, path: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: path.into(),
            message: e.to_string(),
        })
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.into())
}

/// One row per input: its name, then the feature vector.
pub fn write_signature_csv<W: Write>(w: W, manifest: &[ManifestEntry], rows: &[(String, Vec<f64>)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    let mut header = vec!["input".to_string()];
    header.extend(manifest.iter().map(|m| format!("{}:{}:{}", m.combo, m.diagram, m.statistic)));
    w.write_record(&header).map_err(csv_err)?;
    for (name, values) in rows {
        let mut rec = Vec::with_capacity(values.len() + 1);
        rec.push(name.clone());
        rec.extend(values.iter().map(|v| v.to_string()));
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_manifest_csv<W: Write>(w: W, manifest: &[ManifestEntry]) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record(["column_index", "combo", "diagram", "statistic"]).map_err(csv_err)?;
    for m in manifest {
        w.write_record([m.column_index.to_string(), m.combo.clone(), m.diagram.clone(), m.statistic.clone()])
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
