//! `macx`: doubling, Betti numbers and toral-rank verification for
//! moment-angle complexes, over a JSON complex format.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use macx_core::cubical;
use macx_core::doubling;
use macx_core::hochster;
use macx_core::io::ComplexDoc;
use macx_core::verify::{self, CorpusParams, RandomBatch, TrcReport};
use macx_core::{BettiTable, SimplicialComplex};

#[derive(Parser)]
#[command(name = "macx", version, about = "Moment-angle complex toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the doubling operation to a complex.
    Double {
        /// Input complex (JSON).
        #[arg(long = "in")]
        input: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Betti numbers of the (real) moment-angle complex of a complex.
    Betti {
        /// rzk: cubical model of RZ_K; zk: Hochster decomposition of Z_K.
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long = "in")]
        input: PathBuf,
        /// With --model zk, include the per-subset decomposition.
        #[arg(long)]
        full_table: bool,
        /// Cell budget for the cubical model.
        #[arg(long, default_value_t = cubical::DEFAULT_CELL_BUDGET)]
        cell_budget: u64,
    },
    /// Run every toral-rank check on one complex; exit 0 iff all pass.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the reports as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Verify a corpus: exhaustive up to --max-m, plus an optional random
    /// batch; exit 0 iff every check on every complex passes.
    Corpus {
        /// Exhaustive enumeration of all complexes on 1..=max-m vertices.
        #[arg(long)]
        max_m: u32,
        /// Number of random complexes to add.
        #[arg(long, requires = "m")]
        random: Option<u32>,
        /// Vertex count of the random complexes.
        #[arg(long, requires = "random")]
        m: Option<u32>,
        /// Probability for each candidate maximal face.
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        /// Base seed; complex i uses seed + i.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the full report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Rzk,
    Zk,
}

#[derive(Serialize)]
struct BettiOut<'a> {
    model: &'a str,
    betti: &'a BettiTable,
    hrk: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Vec<TableEntry>>,
}

#[derive(Serialize)]
struct TableEntry {
    omega: Vec<u32>,
    p: i32,
    rank: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Double { input, out } => {
            let k = read_complex(&input)?;
            let doubled = doubling::double(&k)?;
            let json = serde_json::to_string(&ComplexDoc::from_complex(&doubled))?;
            match out {
                Some(path) => fs::write(&path, json + "\n")
                    .with_context(|| format!("writing {}", path.display()))?,
                None => println!("{json}"),
            }
            Ok(true)
        }
        Command::Betti {
            model,
            input,
            full_table,
            cell_budget,
        } => {
            let k = read_complex(&input)?;
            if full_table && matches!(model, Model::Rzk) {
                bail!("--full-table applies to --model zk only");
            }
            let out = match model {
                Model::Rzk => {
                    let betti = cubical::betti_rzk_with_budget(&k, cell_budget)?;
                    serde_json::to_string(&BettiOut {
                        model: "rzk",
                        hrk: betti.hrk(),
                        betti: &betti,
                        table: None,
                    })?
                }
                Model::Zk => {
                    let table = hochster::hochster_table(&k)?;
                    let entries = full_table.then(|| {
                        table
                            .entries()
                            .map(|(omega, p, rank)| TableEntry {
                                omega: omega.vertices(),
                                p,
                                rank,
                            })
                            .collect()
                    });
                    serde_json::to_string(&BettiOut {
                        model: "zk",
                        hrk: table.hrk(),
                        betti: table.graded(),
                        table: entries,
                    })?
                }
            };
            println!("{out}");
            Ok(true)
        }
        Command::Verify { input, report } => {
            let k = read_complex(&input)?;
            let id = input
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "complex".to_string());
            let r = verify::check_trc(&k, &id)?;
            print_report(&r);
            if let Some(path) = report {
                write_json(&path, &vec![&r])?;
            }
            Ok(r.flags.all_ok())
        }
        Command::Corpus {
            max_m,
            random,
            m,
            density,
            seed,
            report,
        } => {
            let params = CorpusParams {
                max_m,
                random: match (random, m) {
                    (Some(count), Some(m)) => vec![RandomBatch {
                        count,
                        m,
                        density,
                        seed,
                    }],
                    _ => Vec::new(),
                },
            };
            let corpus = verify::run_corpus(&params)?;
            for r in corpus.reports.iter().filter(|r| !r.flags.all_ok()) {
                println!("FAIL {}:", r.id);
                print_report(r);
            }
            println!(
                "corpus: {} complexes, {}",
                corpus.reports.len(),
                if corpus.all_ok {
                    "all checks passed"
                } else {
                    "CHECKS FAILED"
                }
            );
            if let Some(path) = report {
                write_json(&path, &corpus)?;
            }
            Ok(corpus.all_ok)
        }
    }
}

fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: ComplexDoc =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(doc.into_complex()?)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let json = serde_json::to_string(value)?;
    fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn print_report(r: &TrcReport) {
    println!("{}: m={} dim={} mdim={}", r.id, r.m, r.dim, r.mdim);
    println!(
        "  hrk_zk={} (hochster)  hrk_rzk={} (cubical)",
        r.hrk_zk, r.hrk_rzk
    );
    println!(
        "  theorem: {} >= {} -> {}{}",
        r.hrk_rzk,
        r.theorem_bound,
        verdict(r.flags.theorem_ok),
        if r.theorem_tight { " (tight)" } else { "" }
    );
    println!(
        "  trc:     {} >= 2^{} = {} -> {}",
        r.hrk_zk,
        r.trk_bound,
        r.trc_bound,
        verdict(r.flags.trc_ok)
    );
    println!(
        "  cross-check (hochster vs cubical double): {}",
        verdict(r.flags.cross_check_ok)
    );
    println!("  slices: {}", verdict(r.flags.slice_ok));
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}
