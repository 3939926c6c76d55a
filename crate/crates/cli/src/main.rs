use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use systolic::builder::{self, BuildError};
use systolic::geodesics::{FlatSurface, GeodesicError};
use systolic::graph::{self, GraphError};
use systolic::hyperelliptic::{self, HyperError, InvolutionSpec, PipelineOptions};
use systolic::scalar::Scalar;
use systolic::surface::{parse_surface, write_surface};
use systolic::surface::{SurfaceComplex, SurfaceError};
use systolic_cli::emit::{render, Format, Table};
use systolic_cli::{lemma, ratio};

/// Exact systoles and short homology bases of square-tiled translation surfaces.
#[derive(Parser)]
#[command(name = "systolic", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "csv", global = true)]
    emit: Format,
    /// Starting precision of certified interval comparisons.
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    /// Cap on search steps.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a surface in the text format.
    #[command(subcommand)]
    Build(Build),
    /// Regular graphs of prescribed girth.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Genus, area and cone points.
    Topology { surface: PathBuf },
    /// Certified systole below a search bound.
    Systole(Search),
    /// Certified homological systole below a search bound.
    SysH(Search),
    /// Saddle connections below a search bound.
    Saddles(Search),
    /// Systolic ratios of the reference surfaces or of assembled graphs.
    RatioTable {
        /// Graph files, each assembled with `--l`.
        #[arg(long)]
        graph: Vec<PathBuf>,
        #[arg(long, default_value_t = 2)]
        l: i64,
    },
    /// Certified sweep of the log-ratio inequality used to pick the girth.
    Lemma27 {
        #[arg(long, default_value = "6")]
        x_min: Scalar,
        #[arg(long, default_value = "60")]
        x_max: Scalar,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Short homology basis of a hyperelliptic surface.
    #[command(subcommand)]
    Hyper(HyperCmd),
}

#[derive(Args)]
struct Search {
    surface: PathBuf,
    /// Squared length below which the search is exhaustive.
    #[arg(long)]
    bound_sq: Scalar,
}

#[derive(Args)]
struct Out {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Build {
    /// The slit rectangle with its outer sides left open.
    Rect {
        #[arg(long)]
        l: i64,
        #[command(flatten)]
        out: Out,
    },
    /// A flat torus from one rectangle.
    FlatTorus {
        #[arg(long)]
        width: Scalar,
        #[arg(long)]
        height: Scalar,
        #[command(flatten)]
        out: Out,
    },
    /// Two slit tori glued crosswise along one slit.
    ExampleX {
        #[arg(long)]
        l: i64,
        #[command(flatten)]
        out: Out,
    },
    /// The torus with `2L^2` open slits.
    Torus {
        #[arg(long)]
        l: i64,
        /// Close the slits again.
        #[arg(long)]
        closed: bool,
        #[command(flatten)]
        out: Out,
    },
    /// One slit torus per vertex, slits glued along the edges.
    Assemble {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        l: i64,
        /// Where to write the assembly manifest.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// A genus `m + 1` surface with its hyperelliptic involution.
    Hyperelliptic {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        l: i64,
        /// Where to write the involution.
        #[arg(long)]
        involution: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Generate a connected k-regular graph of girth at least `girth`.
    Gen {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        girth: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Degree, size and girth of a graph file.
    Girth { graph: PathBuf },
}

#[derive(Subcommand)]
enum HyperCmd {
    Run {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        involution: PathBuf,
        /// Random graphs per run in the separation cross-check.
        #[arg(long, default_value_t = 40)]
        iff_trials: usize,
        #[arg(long)]
        skip_sys_h: bool,
    },
}

/// Exit codes: 2 for a failed bound or invariant, 3 for bad input, 1 when a
/// search runs out of budget.
enum Failure {
    Compute(String),
    Violation(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Compute(_) => 1,
            Failure::Violation(_) => 2,
            Failure::Input(_) => 3,
        }
    }
}

impl From<SurfaceError> for Failure {
    fn from(e: SurfaceError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::BudgetExhausted(_) => Failure::Compute(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<GeodesicError> for Failure {
    fn from(e: GeodesicError) -> Self {
        match e {
            GeodesicError::Surface(s) => s.into(),
            GeodesicError::BudgetExhausted(_) | GeodesicError::NoGeodesicFound => Failure::Compute(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<HyperError> for Failure {
    fn from(e: HyperError) -> Self {
        match e {
            HyperError::Geodesic(g) => g.into(),
            HyperError::NotInvolution(_) | HyperError::NotIsometry(_) | HyperError::WrongFixedPointCount { .. } => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Violation(e.to_string()),
        }
    }
}

impl From<ratio::RatioError> for Failure {
    fn from(e: ratio::RatioError) -> Self {
        match e {
            ratio::RatioError::Build(b) => b.into(),
            ratio::RatioError::Graph(g) => g.into(),
            ratio::RatioError::Surface(s) => s.into(),
            ratio::RatioError::Geodesic(g) => g.into(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(out: &Out, text: &str) -> Result<(), Failure> {
    match &out.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_surface(path: &Path) -> Result<SurfaceComplex, Failure> {
    parse_surface(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<graph::RegularGraph, Failure> {
    Ok(graph::load_graph(&read(path)?)?)
}

fn flat(cli: &Cli, path: &Path) -> Result<FlatSurface, Failure> {
    let mut f = FlatSurface::new(&load_surface(path)?)?;
    if let Some(b) = cli.budget {
        f.budget = b;
    }
    Ok(f)
}

fn emit(cli: &Cli, tables: &[Table]) {
    print!("{}", render(tables, cli.emit));
}

fn build(b: &Build) -> Result<(), Failure> {
    match b {
        Build::Rect { l, out } => write(out, &write_surface(&builder::slit_rectangle(*l)?.surface)),
        Build::FlatTorus { width, height, out } => {
            let mut s = SurfaceComplex::new();
            let r = s.add_rect(width.clone(), height.clone());
            s.glue_sides(r, systolic::surface::Side::Right, r);
            s.glue_sides(r, systolic::surface::Side::Top, r);
            s.ensure_valid()?;
            write(out, &write_surface(&s))
        }
        Build::ExampleX { l, out } => write(out, &write_surface(&builder::example_x(*l)?)),
        Build::Torus { l, closed, out } => {
            let p = builder::slit_torus(*l)?;
            let s = if *closed { p.closed() } else { p.surface };
            write(out, &write_surface(&s))
        }
        Build::Assemble { graph, l, manifest, out } => {
            let (s, m) = builder::assemble(&load_graph(graph)?, *l)?;
            if let Some(p) = manifest {
                std::fs::write(p, m.to_text()).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            }
            write(out, &write_surface(&s))
        }
        Build::Hyperelliptic { m, l, involution, out } => {
            let h = builder::hyperelliptic_family(*m, *l)?;
            if let Some(p) = involution {
                std::fs::write(p, h.involution.to_text()).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            }
            write(out, &write_surface(&h.surface))
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.cmd {
        Cmd::Build(b) => build(b),
        Cmd::Graph(GraphCmd::Gen { k, girth, out }) => {
            let g = graph::generate_regular_girth(*k, *girth, cli.seed, cli.budget.unwrap_or(1_000_000))?;
            write(out, &graph::store_graph(&g))
        }
        Cmd::Graph(GraphCmd::Girth { graph }) => {
            let g = load_graph(graph)?;
            let mut t = Table::new("graph", &["k", "vertices", "edges", "girth", "connected"]);
            t.push(vec![json!(g.k), json!(g.vertex_count), json!(g.edges.len()), json!(g.girth()?), json!(g.is_connected())]);
            emit(cli, &[t]);
            Ok(())
        }
        Cmd::Topology { surface } => {
            let top = load_surface(surface)?.topology()?;
            let mut t = Table::new("topology", &["genus", "area", "euler_characteristic", "cone_points"]);
            t.push(vec![json!(top.genus), json!(top.area.to_string()), json!(top.euler_characteristic), json!(top.cone_points.len())]);
            let mut c = Table::new("cone_points", &["rect", "x", "y", "angle_over_2pi"]);
            for p in &top.cone_points {
                c.push(vec![json!(p.rect), json!(p.x.to_string()), json!(p.y.to_string()), json!(p.angle_multiple())]);
            }
            emit(cli, &[t, c]);
            Ok(())
        }
        Cmd::Systole(s) | Cmd::SysH(s) => {
            let f = flat(cli, &s.surface)?;
            let cert = match cli.cmd {
                Cmd::SysH(_) => f.homological_systole(&s.bound_sq)?,
                _ => f.systole(&s.bound_sq)?,
            };
            let w = &cert.witness;
            let mut t = Table::new("systole", &["length", "length_sq", "decimal", "kind", "simple", "homology_class", "exhaustive"]);
            t.push(vec![
                json!(cert.value().to_string()),
                json!(cert.value_sq.to_string()),
                json!(format!("{:.12}", cert.value().to_f64())),
                json!(format!("{:?}", w.kind)),
                json!(w.simple),
                json!(w.homology_class.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")),
                json!(cert.exhaustive),
            ]);
            emit(cli, &[t]);
            Ok(())
        }
        Cmd::Saddles(s) => {
            let f = flat(cli, &s.surface)?;
            // Parallel connections leaving a cone point in different sheets share a row except for `id`.
            let mut t = Table::new("saddles", &["id", "start", "end", "dx", "dy", "length_sq"]);
            for (i, c) in f.saddle_connections(&s.bound_sq)?.into_iter().enumerate() {
                t.push(vec![
                    json!(i),
                    json!(c.start),
                    json!(c.end),
                    json!(c.holonomy.0.to_string()),
                    json!(c.holonomy.1.to_string()),
                    json!(c.length_sq.to_string()),
                ]);
            }
            emit(cli, &[t]);
            Ok(())
        }
        Cmd::RatioTable { graph, l } => {
            let rows = if graph.is_empty() {
                ratio::default_rows(cli.budget)?
            } else {
                graph
                    .iter()
                    .map(|p| ratio::graph_row(&p.display().to_string(), &load_graph(p)?, *l, cli.budget).map_err(Failure::from))
                    .collect::<Result<Vec<_>, _>>()?
            };
            emit(cli, &[ratio::table(&rows)]);
            Ok(())
        }
        Cmd::Lemma27 { x_min, x_max, samples } => {
            let r = lemma::sweep(x_min, x_max, *samples, cli.precision_bits).map_err(|e| Failure::Input(e.to_string()))?;
            let mut t = Table::new("lemma27", &["x", "log_y_lo", "log_y_hi", "ratio_below_x", "x_below_log_y", "smaller_y", "auxiliary"]);
            for row in &r.rows {
                t.push(vec![
                    json!(row.x.to_string()),
                    json!(format!("{:.15}", Scalar(row.log_y.lo.clone()).to_f64())),
                    json!(format!("{:.15}", Scalar(row.log_y.hi.clone()).to_f64())),
                    json!(row.ratio_below_x),
                    json!(row.x_below_log_y),
                    json!(row.smaller_y),
                    row.auxiliary.map(|a| json!(a)).unwrap_or(serde_json::Value::Null),
                ]);
            }
            emit(cli, &[t]);
            if r.violations.is_empty() {
                Ok(())
            } else {
                Err(Failure::Violation(format!("sweep violations at {}", r.violations.join(", "))))
            }
        }
        Cmd::Hyper(HyperCmd::Run { surface, involution, iff_trials, skip_sys_h }) => {
            let s = load_surface(surface)?;
            let spec = InvolutionSpec::parse(&read(involution)?).map_err(|e| Failure::Input(format!("{}: {e}", involution.display())))?;
            let opts = PipelineOptions { iff_trials: Some(*iff_trials), seed: cli.seed, homological_systole: !skip_sys_h, budget: cli.budget };
            let r = hyperelliptic::run(&s, &spec, &opts)?;
            let mut ev = Table::new("events", &["m", "case", "radius", "radius_decimal", "j_before", "j_after", "from", "to"]);
            for e in &r.events {
                ev.push(vec![
                    json!(e.step),
                    json!(e.case.to_string()),
                    json!(e.radius.to_string()),
                    json!(format!("{:.12}", e.radius.to_f64())),
                    json!(e.frozen_before),
                    json!(e.frozen_after),
                    json!(e.ends.0),
                    json!(e.ends.1),
                ]);
            }
            let mut basis = Table::new("basis", &["event", "from", "to", "arc_length", "curve_length", "ratio", "ratio_decimal", "homology_class"]);
            for b in &r.basis {
                basis.push(vec![
                    json!(b.event + 1),
                    json!(b.ends.0),
                    json!(b.ends.1),
                    json!(b.arc_length.to_string()),
                    json!(b.curve_length.to_string()),
                    json!(b.ratio.to_string()),
                    json!(format!("{:.12}", b.ratio.to_f64())),
                    json!(b.homology_class.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")),
                ]);
            }
            let mut checks = Table::new("checks", &["name", "pass", "detail"]);
            for c in &r.checks {
                checks.push(vec![json!(c.name), json!(c.pass), json!(c.detail)]);
            }
            emit(cli, &[ev, basis, checks]);
            if r.all_pass() {
                Ok(())
            } else {
                Err(Failure::Violation("bound check failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let msg = match &f {
                Failure::Compute(m) | Failure::Violation(m) | Failure::Input(m) => m,
            };
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
