use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use m2s2_cli::config::RunConfig;
use m2s2_cli::fixtures::{self, Fixture, FixtureParams};
use m2s2_cli::output::{write_manifest_csv, write_signature_csv, DiagramsDocument};
use m2s2_cli::plot::{record_stem, render_svg};
use m2s2_cli::run::{diagrams_batch, input_name, signature_batch};
use m2s2_cli::CliError;

/// Multi-species persistence diagrams and signatures of labelled point clouds.
#[derive(Debug, Parser)]
#[command(name = "m2s2", version)]
struct Cli {
    /// More log output (repeat for debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write one JSON file of diagrams per input.
    Diagrams {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out_dir: PathBuf,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Write the signature matrix of all inputs as CSV.
    Signature {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Also write the column manifest here.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Render diagram JSON files as SVG, one file per combination.
    Plot {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out_dir: PathBuf,
        /// Omit points with smaller persistence.
        #[arg(long, default_value_t = 0.05)]
        threshold: f64,
    },
    /// Write a seeded synthetic cloud as input CSV.
    Synth {
        /// One of circle, filled_circle, colocated_circles, dichromatic_arcs,
        /// trichromatic_arcs, uniform_noise.
        fixture: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 40)]
        points: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.02)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        species: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<CliError>().is_some_and(|c| matches!(c, CliError::Usage(_)));
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

/// Returns whether every input succeeded.
fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Diagrams { inputs, out_dir, config } => {
            let stems = unique_stems(&inputs)?;
            let results = diagrams_batch(&inputs, &config)?;
            create_dir(&out_dir)?;
            let mut ok = true;
            for (r, stem) in results.into_iter().zip(stems) {
                match r.result {
                    Ok(doc) => {
                        let path = out_dir.join(format!("{stem}.json"));
                        std::fs::write(&path, doc.to_json()).with_context(|| format!("writing {}", path.display()))?;
                        log::info!("wrote {}", path.display());
                    }
                    Err(e) => {
                        ok = false;
                        eprintln!("error: {}: {e}", input_name(&r.path));
                    }
                }
            }
            Ok(ok)
        }
        Command::Signature { inputs, out, manifest, config } => {
            let batch = signature_batch(&inputs, &config)?;
            let mut ok = true;
            let mut rows = Vec::new();
            for r in batch.rows {
                match r.result {
                    Ok(v) => rows.push((input_name(&r.path), v)),
                    Err(e) => {
                        ok = false;
                        eprintln!("error: {}: {e}", input_name(&r.path));
                    }
                }
            }
            let file = std::fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            write_signature_csv(std::io::BufWriter::new(file), &batch.manifest, &rows)?;
            if let Some(m) = manifest {
                let file = std::fs::File::create(&m).with_context(|| format!("creating {}", m.display()))?;
                write_manifest_csv(std::io::BufWriter::new(file), &batch.manifest)?;
            }
            log::info!("{} rows x {} columns over species {:?}", rows.len(), batch.manifest.len(), batch.universe);
            Ok(ok)
        }
        Command::Plot { inputs, out_dir, threshold } => {
            if !(threshold >= 0.0 && threshold.is_finite()) {
                return Err(CliError::Usage(format!("--threshold must be non-negative, got {threshold}")).into());
            }
            create_dir(&out_dir)?;
            let stems = unique_stems(&inputs)?;
            let mut ok = true;
            for (input, stem) in inputs.iter().zip(stems) {
                if let Err(e) = plot_one(input, &stem, &out_dir, threshold) {
                    ok = false;
                    eprintln!("error: {}: {e:#}", input.display());
                }
            }
            Ok(ok)
        }
        Command::Synth { fixture, out, points, radius, noise, seed, species } => {
            let fixture: Fixture = fixture.parse()?;
            let params = FixtureParams {
                radius,
                points,
                noise,
                species,
                ..FixtureParams::default()
            };
            let rows = fixtures::generate(fixture, &params, seed)?;
            let file = std::fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            fixtures::write_csv(&rows, std::io::BufWriter::new(file))?;
            Ok(true)
        }
    }
}

fn plot_one(input: &Path, stem: &str, out_dir: &Path, threshold: f64) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(input)?;
    let doc = DiagramsDocument::from_json(&text, &input.display().to_string())?;
    for record in &doc.combinations {
        let (svg, summary) = render_svg(record, threshold)?;
        let path = out_dir.join(format!("{stem}_{}.svg", record_stem(record)));
        std::fs::write(&path, svg).with_context(|| format!("writing {}", path.display()))?;
        log::info!("wrote {} ({summary:?})", path.display());
    }
    Ok(())
}

fn create_dir(dir: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

/// Output file stems, refusing inputs that would overwrite each other.
fn unique_stems(inputs: &[PathBuf]) -> anyhow::Result<Vec<String>> {
    let stems: Vec<String> = inputs
        .iter()
        .map(|p| p.file_stem().map_or_else(|| "input".into(), |s| s.to_string_lossy().into_owned()))
        .collect();
    let mut sorted = stems.clone();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(CliError::Usage(format!("two inputs share the file name `{}`", w[0])).into());
    }
    Ok(stems)
}
