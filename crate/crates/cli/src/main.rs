#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use graphapx::gh::{default_mesh, delta_n_bounds_with, dgh_bounds, hyp_graph};
use graphapx::gromov_tree::build_merge_tree;
use graphapx::harness::{load_graph, verify, EnsembleSpec, VerifyOptions};
use graphapx::metric_graph::{epsilon_net, finite_metric};
use graphapx::persistence::{persistence_sequence, vr_h1_barcode};
use graphapx::reeb::epsilon_smoothing;
use graphapx::{GraphPoint, MetricGraph, VertexId};
use serde_json::json;

#[derive(Parser)]
#[command(name = "graphapx", version, about = "Metric graph approximation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex and edge counts, first Betti number, length and diameter.
    Info(GraphArgs),
    /// Geodesic distance between two points.
    Distance {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        base: BaseArgs,
        /// Target point as JSON.
        #[arg(long)]
        target: String,
    },
    /// Points of a mesh net.
    Net {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        mesh: MeshArgs,
    },
    /// First Vietoris-Rips barcode of a mesh net.
    Barcode {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        mesh: MeshArgs,
    },
    /// Persistence sequence from the minimal cycle basis.
    Seq(GraphArgs),
    /// Reeb ε-smoothing at a basepoint.
    Smooth {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        epsilon: f64,
    },
    /// Merge tree of the distance to the basepoint, as JSON and a dendrogram.
    Tree {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        base: BaseArgs,
    },
    /// Hyperbolicity of a mesh net with its error bound.
    Hyp {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        mesh: MeshArgs,
    },
    /// Gromov-Hausdorff bounds between two graphs.
    Gh {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        other: PathBuf,
        #[command(flatten)]
        mesh: MeshArgs,
    },
    /// Bounds on the distance to graphs with at most n cycles.
    Delta {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        mesh: MeshArgs,
    },
    /// Runs the check suite on a seeded random ensemble.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Graph JSON file.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BaseArgs {
    /// Basepoint as JSON, e.g. '{"vertex":"a"}' or '{"edge":"e1","offset":0.5}'.
    /// Defaults to the first vertex.
    #[arg(long)]
    basepoint: Option<String>,
}

#[derive(Args)]
struct MeshArgs {
    /// Net spacing; defaults to 0.05 times the diameter.
    #[arg(long)]
    mesh: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Net spacing as a fraction of each graph's diameter.
    #[arg(long, default_value_t = 0.05)]
    mesh: f64,
    #[arg(long, default_value_t = 8)]
    max_vertices: usize,
    #[arg(long, default_value_t = 4)]
    max_betti: usize,
    /// Uses a wrong smoothing constant; the run must fail.
    #[arg(long, hide = true)]
    corrupt: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value")
}

impl GraphArgs {
    fn load(&self) -> Result<MetricGraph> {
        load_graph(&self.graph).with_context(|| format!("loading {}", self.graph.display()))
    }
}

impl BaseArgs {
    fn resolve(&self, g: &MetricGraph) -> Result<GraphPoint> {
        match &self.basepoint {
            Some(text) => g.parse_point(text).context("parsing --basepoint"),
            None => Ok(GraphPoint::Vertex(VertexId(0))),
        }
    }
}

impl MeshArgs {
    fn resolve(&self, g: &MetricGraph) -> Result<f64> {
        match self.mesh {
            Some(m) if !(m > 0.0) => bail!("--mesh must be > 0"),
            Some(m) => Ok(m),
            None => Ok(default_mesh(g)),
        }
    }
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Info(a) => {
            let g = a.load()?;
            let v = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "betti1": g.betti1(),
                "total_length": g.total_length(),
                "diameter": g.diameter(),
            });
            emit(&a.out, &pretty(&v))?;
        }
        Command::Distance { graph, base, target } => {
            let g = graph.load()?;
            let p = base.resolve(&g)?;
            let q = g.parse_point(&target).context("parsing --target")?;
            emit(&graph.out, &pretty(&json!({ "distance": g.distance(p, q)? })))?;
        }
        Command::Net { graph, mesh } => {
            let g = graph.load()?;
            let m = mesh.resolve(&g)?;
            let pts: Vec<_> = epsilon_net(&g, m)?.into_iter().map(|p| g.point_record(p)).collect();
            emit(&graph.out, &pretty(&json!({ "mesh": m, "points": pts })))?;
        }
        Command::Barcode { graph, mesh } => {
            let g = graph.load()?;
            let m = mesh.resolve(&g)?;
            let d = finite_metric(&g, &epsilon_net(&g, m)?)?;
            emit(&graph.out, &vr_h1_barcode(&d)?.to_json())?;
        }
        Command::Seq(a) => {
            let g = a.load()?;
            emit(&a.out, &persistence_sequence(&g).to_json())?;
        }
        Command::Smooth { graph, base, epsilon } => {
            let g = graph.load()?;
            let p = base.resolve(&g)?;
            emit(&graph.out, &epsilon_smoothing(&g, p, epsilon)?.to_json())?;
        }
        Command::Tree { graph, base } => {
            let g = graph.load()?;
            let p = base.resolve(&g)?;
            let t = build_merge_tree(&g, p)?;
            emit(&graph.out, &format!("{}\n{}", t.to_json(), t.dendrogram()))?;
        }
        Command::Hyp { graph, mesh } => {
            let g = graph.load()?;
            let m = mesh.resolve(&g)?;
            let (hyp, error) = hyp_graph(&g, m)?;
            emit(&graph.out, &pretty(&json!({ "hyp": hyp, "error": error, "mesh": m })))?;
        }
        Command::Gh { graph, other, mesh } => {
            let g = graph.load()?;
            let h = load_graph(&other).with_context(|| format!("loading {}", other.display()))?;
            let m = match mesh.mesh {
                Some(_) => mesh.resolve(&g)?,
                None => default_mesh(&g).max(default_mesh(&h)),
            };
            let r = dgh_bounds(&g, &h, m)?;
            emit(&graph.out, &r.to_json())?;
            return Ok(r.is_consistent());
        }
        Command::Delta { graph, base, n, mesh } => {
            let g = graph.load()?;
            let p = base.resolve(&g)?;
            let r = delta_n_bounds_with(&g, n, p, mesh.resolve(&g)?)?;
            emit(&graph.out, &r.to_json())?;
            return Ok(r.is_consistent());
        }
        Command::Verify(a) => {
            let spec = EnsembleSpec {
                seed: a.seed,
                count: a.count,
                vertices: (2, a.max_vertices),
                betti: (0, a.max_betti),
                ..Default::default()
            };
            let opts = VerifyOptions { mesh_factor: a.mesh, corrupt: a.corrupt, ..Default::default() };
            let report = verify(&spec, &opts)?;
            let text = match a.format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            emit(&a.out, &text)?;
            let s = &report.summary;
            eprintln!("{} rows: {} passed, {} failed, {} skipped", s.rows, s.passed, s.failed, s.skipped);
            return Ok(report.passed());
        }
    }
    Ok(true)
}
