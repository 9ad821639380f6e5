//! `transducer`: command-line front end for fotrans.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 when a search
//! exceeds its budget, 64 on usage errors (bad arguments or input files).

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fotrans::encodings::{
    compress_caterpillar, encode_bounded_components, encode_caterpillar_in_path, encode_cubic, encode_grid, encode_interval,
    encode_pathwidth_planar, path_selfcopy, HostArtifact, IntervalModel,
};
use fotrans::games::{distinguishing_rank, duplicator_wins_with_budget, DEFAULT_GAME_BUDGET};
use fotrans::graph::colored_isomorphism;
use fotrans::graph::io::{to_dot, GraphJson};
use fotrans::params;
use fotrans::perturbation::{apply_partition_flip, apply_sequence, sets_to_partition, FlipPartition, Perturbation};
use fotrans::transduction::{
    apply_pipeline_colored, enumerate_images, member_check, witnesses_from_json, witnesses_to_json, Pipeline, DEFAULT_BUDGET,
};
use fotrans::{ColoredGraph, Error, Graph};

const EXIT_VERIFICATION: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 64;
const BUDGET_ENV: &str = "TRANSDUCER_BUDGET";

#[derive(Parser)]
#[command(name = "transducer", version, about = "Run first-order transductions, encodings, games and graph parameters")]
struct Cli {
    /// Output format. Graph outputs default to JSON; verdicts default to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a pipeline to a graph.
    Apply {
        graph: PathBuf,
        pipeline: PathBuf,
        /// Witness list, one coloring per `colorsearch` stage.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Fail with exit code 1 unless the image is isomorphic to this graph
        /// (colors included).
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// List the images of a graph, one per isomorphism class.
    Enumerate {
        graph: PathBuf,
        pipeline: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Search for witnesses mapping HOST to a graph isomorphic to TARGET.
    Member {
        target: PathBuf,
        pipeline: PathBuf,
        host: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Build and verify an encoding; prints the bundle.
    Encode {
        #[command(subcommand)]
        which: Encoding,
    },
    /// Play the Ehrenfeucht–Fraïssé game on two graphs.
    Ef {
        g: PathBuf,
        h: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Compute a graph parameter.
    Param {
        graph: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
        /// Largest radius for `dilation`.
        #[arg(long, default_value_t = 3)]
        rmax: usize,
    },
    /// Apply subset complementations, as a sequence or as a partition flip.
    Perturb {
        graph: PathBuf,
        #[arg(long, conflicts_with = "partition", required_unless_present = "partition")]
        sets: Option<PathBuf>,
        #[arg(long)]
        partition: Option<PathBuf>,
    },
    /// Check that a sequence of complementations equals its partition flip
    /// and that applying it twice is the identity.
    VerifyLemmaPerturb { graph: PathBuf, sets: PathBuf },
}

#[derive(Subcommand)]
enum Encoding {
    /// Interval host for any graph.
    Interval { graph: PathBuf },
    /// Unit interval host for the n x m grid.
    Grid { n: usize, m: usize },
    /// Planar host for a graph of small pathwidth.
    PlanarPw {
        graph: PathBuf,
        /// Interval model `[[lo, hi], ...]` with endpoints 1..2n all distinct.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Edgeless host for a graph with small components.
    Components {
        graph: PathBuf,
        /// Component size bound; defaults to the largest component.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Cubic host whose odd power contains the graph.
    Cubic {
        graph: PathBuf,
        /// Degree bound; defaults to the maximum degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Colored path host for a caterpillar.
    Caterpillar {
        graph: PathBuf,
        /// Degree bound; defaults to the maximum degree.
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Path host for k copies of a path on n vertices.
    SelfcopyPath { n: usize, k: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Pw,
    Tw,
    Td,
    Bw,
    Starchrom,
    Basic,
    Dilation,
}

/// A failed command with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Verification(_) => EXIT_VERIFICATION,
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

type Outcome = std::result::Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> std::result::Result<ColoredGraph, Failure> {
    fotrans::graph::io::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_pipeline(path: &Path) -> std::result::Result<Pipeline, Failure> {
    Pipeline::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_sets(path: &Path) -> std::result::Result<Perturbation, Failure> {
    let text = read(path)?;
    // Either `{"sets": [[...], ...]}` or a bare array of sets.
    serde_json::from_str::<Perturbation>(&text)
        .or_else(|_| serde_json::from_str::<Vec<BTreeSet<usize>>>(&text).map(|sets| Perturbation { sets }))
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Budget from the flag, else from the environment, else `default`.
fn budget(flag: Option<u64>, default: u64) -> std::result::Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{BUDGET_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

fn graph_output(g: &ColoredGraph, format: Option<Format>) -> String {
    match format {
        Some(Format::Dot) => to_dot(g),
        _ => format!("{}\n", serde_json::to_string(&GraphJson::from(g)).expect("graph json")),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("json"))
}

/// Commands whose output is a verdict or a table accept text or JSON only.
fn no_dot(format: Option<Format>) -> std::result::Result<bool, Failure> {
    match format {
        Some(Format::Dot) => Err(usage("--format dot is only available for graph outputs")),
        f => Ok(f == Some(Format::Json)),
    }
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Apply { graph, pipeline, witness, expect } => {
            let g = load_graph(&graph)?;
            let p = load_pipeline(&pipeline)?;
            let ws = match witness {
                Some(path) => witnesses_from_json(&read(&path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?,
                None => Vec::new(),
            };
            let image = apply_pipeline_colored(&g, &p, &ws)?;
            if let Some(path) = expect {
                let want = load_graph(&path)?;
                let got = image.restrict_colors(want.colors().keys().map(String::as_str));
                if colored_isomorphism(&got, &want).is_none() {
                    return Err(Failure {
                        code: EXIT_VERIFICATION,
                        message: format!("NOT VERIFIED: the image is not isomorphic to {}", path.display()),
                    });
                }
                eprintln!("VERIFIED: image ≅ {}", path.display());
            }
            Ok(graph_output(&image, format))
        }
        Command::Enumerate { graph, pipeline, budget: b } => {
            let g = load_graph(&graph)?;
            let p = load_pipeline(&pipeline)?;
            let images = enumerate_images(&g, &p, budget(b, DEFAULT_BUDGET)?)?;
            match format {
                Some(Format::Dot) => Ok(images.iter().map(|h| to_dot(&h.clone().into())).collect()),
                _ => {
                    let list: Vec<GraphJson> = images.iter().map(GraphJson::from).collect();
                    Ok(pretty(&json!({ "count": list.len(), "images": list })))
                }
            }
        }
        Command::Member { target, pipeline, host, budget: b } => {
            let h = load_graph(&target)?;
            let p = load_pipeline(&pipeline)?;
            let g = load_graph(&host)?;
            let found = member_check(h.graph(), &p, &g, budget(b, DEFAULT_BUDGET)?)?;
            let json = no_dot(format)?;
            Ok(match (found, json) {
                (Some(ws), true) => pretty(&json!({ "member": true, "witnesses": witnesses_to_json(&ws) })),
                (None, true) => pretty(&json!({ "member": false })),
                (Some(ws), false) => pretty(&witnesses_to_json(&ws)),
                (None, false) => "no\n".into(),
            })
        }
        Command::Encode { which } => encode(which, format),
        Command::Ef { g, h, q, budget: b } => {
            let (g, h) = (load_graph(&g)?, load_graph(&h)?);
            let b = budget(b, DEFAULT_GAME_BUDGET)?;
            let wins = duplicator_wins_with_budget(&g, &h, q, b)?;
            let rank = distinguishing_rank(&g, &h, q)?;
            let winner = if wins { "Duplicator" } else { "Spoiler" };
            if no_dot(format)? {
                Ok(pretty(&json!({ "q": q, "winner": winner, "distinguishing_rank": rank })))
            } else {
                let rank = rank.map_or(format!("none up to {q}"), |r| r.to_string());
                Ok(format!("{winner} wins at q={q}\ndistinguishing rank: {rank}\n"))
            }
        }
        Command::Param { graph, which, rmax } => param(&load_graph(&graph)?.into_graph(), which, rmax, no_dot(format)?),
        Command::Perturb { graph, sets, partition } => {
            let g = load_graph(&graph)?;
            let image = match (sets, partition) {
                (Some(path), _) => apply_sequence(g.graph(), &load_sets(&path)?)?,
                (None, Some(path)) => {
                    let q = FlipPartition::from_json(&read(&path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    apply_partition_flip(g.graph(), &q)?
                }
                (None, None) => return Err(usage("one of --sets and --partition is required")),
            };
            Ok(graph_output(&g.with_graph(image), format))
        }
        Command::VerifyLemmaPerturb { graph, sets } => {
            let g = load_graph(&graph)?.into_graph();
            let p = load_sets(&sets)?;
            let sequence = apply_sequence(&g, &p)?;
            let q = sets_to_partition(&p, g.n())?;
            let flipped = apply_partition_flip(&g, &q)?;
            let involution = apply_sequence(&sequence, &p)? == g;
            let json = no_dot(format)?;
            if sequence != flipped || !involution {
                return Err(Failure {
                    code: EXIT_VERIFICATION,
                    message: format!("NOT VERIFIED: flip equals sequence: {}, involution: {involution}", sequence == flipped),
                });
            }
            Ok(if json {
                pretty(&json!({ "verified": true, "partition": q.to_json(), "image": GraphJson::from(&sequence) }))
            } else {
                format!("VERIFIED: partition flip equals the sequence of {} complementations, and applying it twice is the identity\n", p.len())
            })
        }
    }
}

fn encode(which: Encoding, format: Option<Format>) -> Outcome {
    let artifact: HostArtifact = match which {
        Encoding::Interval { graph } => encode_interval(&load_graph(&graph)?.into_graph())?,
        Encoding::Grid { n, m } => encode_grid(n, m)?,
        Encoding::PlanarPw { graph, model } => {
            let model: Option<IntervalModel> = match model {
                Some(path) => Some(serde_json::from_str(&read(&path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?),
                None => None,
            };
            encode_pathwidth_planar(&load_graph(&graph)?.into_graph(), model)?.artifact
        }
        Encoding::Components { graph, n } => encode_bounded_components(&load_graph(&graph)?.into_graph(), n)?,
        Encoding::Cubic { graph, degree } => {
            let g = load_graph(&graph)?.into_graph();
            let d = degree.unwrap_or(g.max_degree());
            encode_cubic(&g, d)?.artifact
        }
        Encoding::Caterpillar { graph, delta } => {
            let c = load_graph(&graph)?;
            let delta = delta.unwrap_or(c.graph().max_degree());
            encode_caterpillar_in_path(&compress_caterpillar(&c)?, delta)?
        }
        Encoding::SelfcopyPath { n, k } => path_selfcopy(n, k)?,
    };
    // Artifacts are verified on construction; check again before reporting.
    artifact.verify()?;
    eprintln!("VERIFIED: image ≅ {}", artifact.label);
    Ok(match format {
        Some(Format::Dot) => to_dot(&artifact.host),
        _ => pretty(&artifact.to_bundle_json()),
    })
}

fn param(g: &Graph, which: Which, rmax: usize, json: bool) -> Outcome {
    let (name, value): (&str, serde_json::Value) = match which {
        Which::Pw => ("pw", json!(params::pathwidth(g)?)),
        Which::Tw => ("tw", json!(params::treewidth(g)?)),
        Which::Td => ("td", json!(params::treedepth(g)?)),
        Which::Bw => ("bw", json!(params::bandwidth(g)?)),
        Which::Starchrom => {
            let (k, coloring) = params::star_chromatic_number(g)?;
            if json {
                return Ok(pretty(&json!({ "starchrom": k, "coloring": coloring })));
            }
            return Ok(format!("starchrom = {k}\ncoloring = {coloring:?}\n"));
        }
        Which::Basic => {
            let b = params::basic_params(g);
            let v = json!({
                "omega": b.omega,
                "max_degree": b.max_degree,
                "girth": b.girth.finite(),
                "degeneracy": b.degeneracy,
                "component_sizes": b.component_sizes,
            });
            if json {
                return Ok(pretty(&v));
            }
            let mut out = String::new();
            let _ = writeln!(out, "omega = {}", b.omega);
            let _ = writeln!(out, "max_degree = {}", b.max_degree);
            let _ = writeln!(out, "girth = {}", b.girth);
            let _ = writeln!(out, "degeneracy = {}", b.degeneracy);
            let _ = writeln!(out, "component_sizes = {:?}", b.component_sizes);
            return Ok(out);
        }
        Which::Dilation => {
            let profile = params::dilation_profile(std::slice::from_ref(g), rmax);
            if json {
                let map: serde_json::Map<String, serde_json::Value> = profile.iter().map(|(r, s)| (r.to_string(), json!(s))).collect();
                return Ok(pretty(&json!({ "dilation": map })));
            }
            return Ok(profile.iter().map(|(r, s)| format!("dilation({r}) = {s}\n")).collect());
        }
    };
    Ok(if json { pretty(&json!({ name: value })) } else { format!("{value}\n") })
}
