//! Seeded synthetic clouds reproducing the toy configurations.

use std::f64::consts::TAU;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    /// One loop of species `A`.
    Circle,
    /// A loop of `A` filled with a sunflower disk of `B`.
    FilledCircle,
    /// One loop per species on the same circle, interleaved.
    ColocatedCircles,
    /// A loop split into an `A` half and a `B` half.
    DichromaticArcs,
    /// A loop split into thirds of `A`, `B` and `C`.
    TrichromaticArcs,
    /// Uniform points in a square, labels drawn uniformly.
    UniformNoise,
}

impl Fixture {
    pub const ALL: [Fixture; 6] = [
        Fixture::Circle,
        Fixture::FilledCircle,
        Fixture::ColocatedCircles,
        Fixture::DichromaticArcs,
        Fixture::TrichromaticArcs,
        Fixture::UniformNoise,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Circle => "circle",
            Fixture::FilledCircle => "filled_circle",
            Fixture::ColocatedCircles => "colocated_circles",
            Fixture::DichromaticArcs => "dichromatic_arcs",
            Fixture::TrichromaticArcs => "trichromatic_arcs",
            Fixture::UniformNoise => "uniform_noise",
        }
    }
}

impl FromStr for Fixture {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Fixture::ALL.iter().map(|f| f.name()).collect();
                CliError::Usage(format!("unknown fixture `{s}`; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixtureParams {
    pub radius: f64,
    /// Points per loop (or in total for `uniform_noise`).
    pub points: usize,
    /// Points of the filling disk.
    pub fill_points: usize,
    /// Standard deviation of the Gaussian jitter on each coordinate.
    pub noise: f64,
    /// Species count for `colocated_circles` and `uniform_noise`.
    pub species: usize,
    pub center: [f64; 2],
}

impl Default for FixtureParams {
    fn default() -> Self {
        FixtureParams {
            radius: 1.0,
            points: 40,
            fill_points: 60,
            noise: 0.02,
            species: 2,
            center: [0.0, 0.0],
        }
    }
}

/// Species name of index `i`: `A`, `B`, ...
pub fn species_name(i: usize) -> String {
    char::from(b'A' + (i % 26) as u8).to_string()
}

/// Generates `(coordinates, species name)` rows.
pub fn generate(fixture: Fixture, params: &FixtureParams, seed: u64) -> Result<Vec<(Vec<f64>, String)>> {
    if !(params.radius > 0.0) || params.points == 0 || !(params.noise >= 0.0) || params.species == 0 {
        return Err(CliError::Usage("fixture needs positive radius, points and species".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jitter = Normal::new(0.0, params.noise).expect("noise is finite and non-negative");
    let [cx, cy] = params.center;
    let r = params.radius;
    let n = params.points;
    let mut out = Vec::new();
    let ring = |rng: &mut ChaCha8Rng, count: usize, phase: f64, label: &dyn Fn(usize) -> usize, out: &mut Vec<_>| {
        for i in 0..count {
            let a = phase + TAU * i as f64 / count as f64;
            let p = vec![
                cx + r * a.cos() + jitter.sample(rng),
                cy + r * a.sin() + jitter.sample(rng),
            ];
            out.push((p, species_name(label(i))));
        }
    };
    let phase = rng.gen_range(0.0..TAU);
    match fixture {
        Fixture::Circle => ring(&mut rng, n, phase, &|_| 0, &mut out),
        Fixture::FilledCircle => {
            ring(&mut rng, n, phase, &|_| 0, &mut out);
            // sunflower disk slightly inside the loop
            let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            let m = params.fill_points;
            for i in 0..m {
                let rho = 0.95 * r * ((i as f64 + 0.5) / m as f64).sqrt();
                let a = phase + golden * i as f64;
                let p = vec![cx + rho * a.cos() + jitter.sample(&mut rng), cy + rho * a.sin() + jitter.sample(&mut rng)];
                out.push((p, species_name(1)));
            }
        }
        Fixture::ColocatedCircles => {
            let s = params.species;
            for j in 0..s {
                let offset = TAU * j as f64 / (n * s) as f64;
                ring(&mut rng, n, phase + offset, &|_| j, &mut out);
            }
        }
        Fixture::DichromaticArcs => ring(&mut rng, n, phase, &|i| 2 * i / n, &mut out),
        Fixture::TrichromaticArcs => ring(&mut rng, n, phase, &|i| 3 * i / n, &mut out),
        Fixture::UniformNoise => {
            for _ in 0..n {
                let p = vec![cx + rng.gen_range(-r..r), cy + rng.gen_range(-r..r)];
                out.push((p, species_name(rng.gen_range(0..params.species))));
            }
        }
    }
    Ok(out)
}

/// Writes rows in the input CSV format.
pub fn write_csv<W: std::io::Write>(rows: &[(Vec<f64>, String)], w: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    let dim = rows.first().map_or(2, |r| r.0.len());
    let mut header: Vec<&str> = ["x", "y", "z"][..dim].to_vec();
    header.push("label");
    let io = |e: csv::Error| CliError::Io(e.into());
    w.write_record(&header).map_err(io)?;
    for (p, l) in rows {
        let mut rec: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        rec.push(l.clone());
        w.write_record(&rec).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in Fixture::ALL {
            assert_eq!(f.name().parse::<Fixture>().unwrap(), f);
        }
        assert!("square".parse::<Fixture>().is_err());
    }

    #[test]
    fn seeded_and_sized() {
        let p = FixtureParams::default();
        let a = generate(Fixture::TrichromaticArcs, &p, 4).unwrap();
        assert_eq!(a, generate(Fixture::TrichromaticArcs, &p, 4).unwrap());
        assert_ne!(a, generate(Fixture::TrichromaticArcs, &p, 5).unwrap());
        assert_eq!(a.len(), 40);
        let per: Vec<usize> = ["A", "B", "C"].iter().map(|s| a.iter().filter(|r| r.1 == *s).count()).collect();
        assert_eq!(per.iter().sum::<usize>(), 40);
        assert!(per.iter().all(|&c| c >= 13));
        assert_eq!(generate(Fixture::FilledCircle, &p, 0).unwrap().len(), 100);
        let three = FixtureParams { species: 3, ..p };
        assert_eq!(generate(Fixture::ColocatedCircles, &three, 0).unwrap().len(), 120);
    }
}
