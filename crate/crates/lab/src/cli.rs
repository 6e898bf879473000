//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use bottleneck_core::bottleneck::{find_theta_subdivision, normalize_four_ladder, Search};
use bottleneck_core::classify::{classify_graph, cycle_intersection_oracle, DEFAULT_CYCLE_CAP};
use bottleneck_core::coarse::{
    assemble_sweep, cmt_construct_ladder, decide_fat_bottleneck, find_fat_ladder, sweep_cell, sweep_instances,
};
use bottleneck_core::flow::connectivity_profile;
use bottleneck_core::oracle::{edge_bottleneck_brute, min_edge_cut_brute, point_bottleneck_brute};
use bottleneck_core::small::MAX_SMALL_VERTICES;
use bottleneck_core::{
    edge_bottleneck_exact, find_dipole_ladder, generate, point_bottleneck_exact, Budget, Error, Family, FamilySpec,
    Multigraph, VertexSet,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::dot;
use crate::format::{canonical, parse_graph, serialize_graph, GraphFormat};
use crate::report::{Bounds, Outcome, Report, Status};
use crate::verify::verify_report;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "BOTTLENECK_LAB_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ANALYSIS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bottleneck-lab", version, about = "Bottleneck numbers, ladders and fat bottlenecking of finite graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Graph file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Format of the graph file.
    #[arg(long, value_enum, default_value_t = GraphFormat::EdgeList)]
    pub format: GraphFormat,
    /// Generate the graph from a family instead of reading a file.
    #[arg(long)]
    pub family: Option<Family>,
    /// Family parameter, repeatable.
    #[arg(long = "param", value_name = "K=V", value_parser = parse_param)]
    pub params: Vec<(String, i64)>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct Limits {
    /// Pole pairs an exhaustive scan may examine.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_pairs: Option<u64>,
    /// Largest graph the exhaustive pair scans accept.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=64))]
    pub max_vertices: Option<u64>,
}

impl Limits {
    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(p) = self.budget_pairs {
            b.max_pairs = p;
        }
        if let Some(v) = self.max_vertices {
            b.max_vertices = v as usize;
        }
        b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Out {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[command(flatten)]
    pub input: Input,
    #[command(flatten)]
    pub limits: Limits,
    #[arg(long, value_enum, default_value_t = Out::Json)]
    pub out: Out,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classification, bottleneck numbers and connectivity in one report.
    Analyze(Common),
    /// Edge and point bottleneck numbers with ladder and cut witnesses.
    Bottleneck(Common),
    /// Tree, cactus, cut-cactus or general.
    Classify(Common),
    /// Search for a ladder of a given width.
    Ladder {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        width: u64,
        /// Rewrite a found 4-ladder so both poles are paths.
        #[arg(long)]
        normalize: bool,
        /// Also look for a theta subdivision.
        #[arg(long)]
        theta: bool,
    },
    /// Fat bottlenecking decision and fat ladder search.
    Fat {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'M', long = "fat-M")]
        fat_m: usize,
        /// Number of centers.
        #[arg(short = 'n', long, default_value_t = 1)]
        centers: usize,
    },
    /// Build a fat ladder from a separating set of centers.
    Cmt {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<usize>,
        #[arg(long = "centers", value_delimiter = ',', required = true)]
        centers: Vec<usize>,
        /// Radius of the separating balls.
        #[arg(long)]
        m_small: usize,
        #[arg(short = 'M', long = "fat-M")]
        fat_m: usize,
        /// The bound B from the hypothesis.
        #[arg(long)]
        bound: usize,
        #[arg(long, default_value_t = 10_000)]
        spot_checks: usize,
    },
    /// Fat ladder widths and decisions over a family, sizes and radii.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Family parameter that varies.
        #[arg(long)]
        size_param: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<i64>,
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<usize>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        width: u64,
    },
    /// Emit a family instance (text is the edge-list format).
    Generate(Common),
    /// Brute-force values, or re-validation of a report's witnesses.
    Oracle {
        #[command(flatten)]
        common: Common,
        /// Report to re-validate.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
}

fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("`{s}` is not of the form k=v"))?;
    let v = v.trim().parse().map_err(|_| format!("`{v}` is not an integer"))?;
    Ok((k.trim().to_string(), v))
}

/// Failure of a command, mapped onto an exit code.
enum Failure {
    Usage(String),
    Analysis(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => Failure::Usage(m),
            e => Failure::Analysis(e.to_string()),
        }
    }
}

fn family_spec(input: &Input) -> Result<FamilySpec, Failure> {
    let family = input.family.ok_or_else(|| Failure::Usage("--family is required".into()))?;
    let mut spec = FamilySpec::new(family).seed(input.seed);
    for (k, v) in &input.params {
        spec = spec.param(k, *v);
    }
    Ok(spec)
}

fn load(input: &Input) -> Result<Multigraph, Failure> {
    match (&input.input, input.family) {
        (Some(_), Some(_)) => Err(Failure::Usage("give either --input or --family, not both".into())),
        (None, None) => Err(Failure::Usage("one of --input or --family is required".into())),
        (Some(path), None) => {
            if !input.params.is_empty() {
                return Err(Failure::Usage("--param needs --family".into()));
            }
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Analysis(format!("{}: {e}", path.display())))?;
            parse_graph(&text, input.format).map_err(|e| Failure::Analysis(format!("{}: {e}", path.display())))
        }
        (None, Some(_)) => Ok(canonical(&generate(&family_spec(input)?)?)),
    }
}

fn search_name<T>(s: &Search<T>) -> &'static str {
    match s {
        Search::Found(_) => "found",
        Search::None => "none",
        Search::Unknown { .. } => "unknown",
    }
}

/// A report plus the graph it was computed on.
struct Done {
    report: Report,
    graph: Option<Multigraph>,
}

fn done(command: &str, seed: u64, g: Multigraph, status: Status, result: Outcome) -> Done {
    Done {
        report: Report::new(command, seed, Some(&g), status, result),
        graph: Some(g),
    }
}

fn bounds_from(g: &Multigraph, e: Error, budget: &Budget) -> Result<Bounds, Failure> {
    match e {
        Error::BudgetExceeded {
            lower,
            upper,
            pairs_examined,
        } => {
            let ladder = if lower >= 1 {
                find_dipole_ladder(g, lower, budget)?.found()
            } else {
                None
            };
            Ok(Bounds {
                lower,
                upper,
                pairs_examined,
                ladder,
            })
        }
        e => Err(e.into()),
    }
}

fn analyze(c: &Common) -> Result<Done, Failure> {
    let g = load(&c.input)?;
    let budget = c.limits.budget();
    let classification = classify_graph(&g, &budget)?;
    let connectivity = connectivity_profile(&g, false)?;
    let (bottleneck, bounds) = match edge_bottleneck_exact(&g, &budget) {
        Ok((_, _, r)) => (Some(r), None),
        Err(e) => (None, Some(bounds_from(&g, e, &budget)?)),
    };
    let edge_bottleneck = bottleneck
        .as_ref()
        .and_then(|r| r.edge_bottleneck)
        .or(classification.edge_bottleneck);
    let point_bottleneck = match point_bottleneck_exact(&g, &budget) {
        Ok((p, _)) => Some(p),
        Err(Error::BudgetExceeded { .. }) | Err(Error::TooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let status = if edge_bottleneck.is_some() {
        Status::Ok
    } else {
        Status::BudgetExceeded
    };
    let result = Outcome::Analyze {
        label: classification.label.as_str().into(),
        edge_bottleneck,
        point_bottleneck,
        classification,
        bottleneck,
        bounds,
        connectivity,
    };
    Ok(done("analyze", c.input.seed, g, status, result))
}

fn bottleneck(c: &Common) -> Result<Done, Failure> {
    let g = load(&c.input)?;
    let budget = c.limits.budget();
    let (edge, bounds) = match edge_bottleneck_exact(&g, &budget) {
        Ok((_, _, r)) => (Some(r), None),
        Err(e) => (None, Some(bounds_from(&g, e, &budget)?)),
    };
    let point = match point_bottleneck_exact(&g, &budget) {
        Ok((_, r)) => Some(r),
        Err(Error::BudgetExceeded { .. }) | Err(Error::TooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let status = if edge.is_some() && point.is_some() {
        Status::Ok
    } else {
        Status::BudgetExceeded
    };
    let result = Outcome::Bottleneck {
        edge_bottleneck: edge.as_ref().and_then(|r| r.edge_bottleneck),
        point_bottleneck: point.as_ref().and_then(|r| r.point_bottleneck),
        edge,
        point,
        bounds,
    };
    Ok(done("bottleneck", c.input.seed, g, status, result))
}

fn classify(c: &Common) -> Result<Done, Failure> {
    let g = load(&c.input)?;
    let r = classify_graph(&g, &c.limits.budget())?;
    Ok(done("classify", c.input.seed, g, Status::Ok, Outcome::Classify(r)))
}

fn ladder(c: &Common, width: usize, normalize: bool, theta: bool) -> Result<Done, Failure> {
    let g = load(&c.input)?;
    let found = find_dipole_ladder(&g, width, &c.limits.budget())?;
    let search = search_name(&found).to_string();
    let status = if found.is_unknown() {
        Status::BudgetExceeded
    } else {
        Status::Ok
    };
    let ladder = found.found();
    let normalized = match (&ladder, normalize) {
        (Some(l), true) if width == 4 => Some(normalize_four_ladder(&g, l)?),
        (_, true) if width != 4 => return Err(Failure::Usage("--normalize needs --width 4".into())),
        _ => None,
    };
    let theta = if theta { find_theta_subdivision(&g)? } else { None };
    let result = Outcome::Ladder {
        width,
        search,
        ladder,
        normalized,
        theta,
    };
    Ok(done("ladder", c.input.seed, g, status, result))
}

fn fat(c: &Common, m: usize, n: usize) -> Result<Done, Failure> {
    let g = load(&c.input)?;
    let budget = c.limits.budget();
    let decision = decide_fat_bottleneck(&g, m, n, &budget)?;
    let found = find_fat_ladder(&g, n + 1, m, &budget)?;
    let ladder_search = search_name(&found).to_string();
    let unknown = found.is_unknown() || decision.decision == bottleneck_core::coarse::FatDecision::Unknown;
    let status = if unknown { Status::BudgetExceeded } else { Status::Ok };
    let result = Outcome::Fat {
        radius: m,
        centers: n,
        decision,
        ladder_search,
        ladder: found.found(),
    };
    Ok(done("fat", c.input.seed, g, status, result))
}

#[allow(clippy::too_many_arguments)]
fn cmt(
    c: &Common,
    x: &[usize],
    y: &[usize],
    centers: &[usize],
    m_small: usize,
    m_fat: usize,
    bound: usize,
    spot_checks: usize,
) -> Result<Done, Failure> {
    let g = load(&c.input)?;
    let (x, y, r) = (
        VertexSet::new(x.iter().copied()),
        VertexSet::new(y.iter().copied()),
        VertexSet::new(centers.iter().copied()),
    );
    let outcome = cmt_construct_ladder(&g, &x, &y, &r, m_small, m_fat, bound, spot_checks)?;
    let result = Outcome::Cmt {
        x,
        y,
        centers: r,
        m_small,
        m_fat,
        bound,
        outcome,
    };
    Ok(done("cmt", c.input.seed, g, Status::Ok, result))
}

fn sweep(c: &Common, size_param: &str, sizes: &[i64], radii: &[usize], width: usize) -> Result<Done, Failure> {
    if c.input.input.is_some() {
        return Err(Failure::Usage("sweep takes --family, not --input".into()));
    }
    let spec = family_spec(&c.input)?;
    let budget = c.limits.budget();
    let instances = sweep_instances(&spec, size_param, sizes)?;
    let cells: Vec<(usize, usize)> = (0..instances.len())
        .flat_map(|i| radii.iter().map(move |&m| (i, m)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(i, m)| {
            let (size, g) = &instances[i];
            sweep_cell(&canonical(g), *size, m, width, &budget)
        })
        .collect();
    let report = assemble_sweep(&spec, size_param, width, rows);
    let unknown = report.rows.iter().any(|r| r.ladder == "unknown");
    let status = if unknown { Status::BudgetExceeded } else { Status::Ok };
    Ok(Done {
        report: Report::new("sweep", c.input.seed, None, status, Outcome::Sweep(report)),
        graph: None,
    })
}

fn generate_cmd(c: &Common) -> Result<Done, Failure> {
    if c.input.input.is_some() {
        return Err(Failure::Usage("generate takes --family, not --input".into()));
    }
    let spec = family_spec(&c.input)?;
    let g = load(&c.input)?;
    let result = Outcome::Generate {
        family: spec,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
    };
    Ok(done("generate", c.input.seed, g, Status::Ok, result))
}

fn oracle(c: &Common, verify: Option<&PathBuf>) -> Result<Done, Failure> {
    if let Some(path) = verify {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Analysis(format!("{}: {e}", path.display())))?;
        let report: Report =
            serde_json::from_str(&text).map_err(|e| Failure::Analysis(format!("{}: {e}", path.display())))?;
        let result = verify_report(&report).map_err(Failure::Analysis)?;
        let failed = matches!(&result, crate::report::Outcome::Verify { failures, .. } if !failures.is_empty());
        let g = report.graph.as_ref().and_then(|d| d.to_graph().ok());
        let out = Done {
            report: Report::new("oracle", report.seed, g.as_ref(), Status::Ok, result),
            graph: g,
        };
        return if failed {
            Err(Failure::Analysis(out.report.result.text().trim_end().to_string()))
        } else {
            Ok(out)
        };
    }
    let g = load(&c.input)?;
    if g.vertex_count() > MAX_SMALL_VERTICES {
        return Err(Error::TooLarge {
            vertices: g.vertex_count(),
            cap: MAX_SMALL_VERTICES,
        }
        .into());
    }
    let edge_bottleneck = edge_bottleneck_brute(&g)?;
    let point_bottleneck = point_bottleneck_brute(&g)?;
    let n = g.vertex_count();
    let mut lambda_max = 0;
    for u in 0..n {
        for v in u + 1..n {
            lambda_max = lambda_max.max(min_edge_cut_brute(&g, &VertexSet::singleton(u), &VertexSet::singleton(v))?);
        }
    }
    let cycles = match cycle_intersection_oracle(&g, DEFAULT_CYCLE_CAP) {
        Ok(r) => Some(r),
        Err(Error::OracleUnavailable { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let result = Outcome::Oracle {
        edge_bottleneck,
        point_bottleneck,
        lambda_max,
        cycles,
    };
    Ok(done("oracle", c.input.seed, g, Status::Ok, result))
}

fn dispatch(cmd: &Command) -> Result<(Done, Out), Failure> {
    Ok(match cmd {
        Command::Analyze(c) => (analyze(c)?, c.out),
        Command::Bottleneck(c) => (bottleneck(c)?, c.out),
        Command::Classify(c) => (classify(c)?, c.out),
        Command::Ladder {
            common,
            width,
            normalize,
            theta,
        } => (ladder(common, *width as usize, *normalize, *theta)?, common.out),
        Command::Fat { common, fat_m, centers } => (fat(common, *fat_m, *centers)?, common.out),
        Command::Cmt {
            common,
            x,
            y,
            centers,
            m_small,
            fat_m,
            bound,
            spot_checks,
        } => (
            cmt(common, x, y, centers, *m_small, *fat_m, *bound, *spot_checks)?,
            common.out,
        ),
        Command::Sweep {
            common,
            size_param,
            sizes,
            radii,
            width,
        } => (sweep(common, size_param, sizes, radii, *width as usize)?, common.out),
        Command::Generate(c) => (generate_cmd(c)?, c.out),
        Command::Oracle { common, verify } => (oracle(common, verify.as_ref())?, common.out),
    })
}

fn render(d: &Done, out: Out) -> String {
    match (out, &d.report.result) {
        (Out::Json, _) => d.report.to_json(),
        (Out::Text, Outcome::Generate { .. }) => serialize_graph(d.graph.as_ref().expect("generate keeps its graph"), GraphFormat::EdgeList),
        (Out::Text, r) => r.text(),
        (Out::Dot, r) => match &d.graph {
            Some(g) => dot::render(g, &r.highlight()),
            None => r.text(),
        },
    }
}

fn thread_count() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(format!("{THREADS_ENV} must be a positive integer, got `{v}`")),
        },
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let threads = match thread_count() {
        Ok(t) => t,
        Err(m) => {
            let _ = writeln!(stderr, "error: {m}");
            return EXIT_USAGE;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_ANALYSIS;
        }
    };
    match pool.install(|| dispatch(&cli.command)) {
        Ok((d, out)) => {
            let _ = stdout.write_all(render(&d, out).as_bytes());
            match d.report.status {
                Status::Ok => EXIT_OK,
                Status::BudgetExceeded => {
                    let _ = writeln!(stderr, "budget exceeded; the report is partial");
                    EXIT_BUDGET
                }
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Analysis(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_ANALYSIS
        }
    }
}
