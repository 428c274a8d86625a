//! Front-end for `ucc-core`. [`run`] parses arguments, executes one
//! subcommand and writes its report; `main` only wires it to the process.
//!
//! Exit codes: 0 verified positive, 1 verified negative, 2 usage or input
//! error, 3 resource limit.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ucc_core::io::{
    family_text, parse_family, parse_graph, BijectionFile, FamilyFile, GraphFile, Labels,
    SuitableIndexFile,
};
use ucc_core::limits::Limits;
use ucc_core::stable::{
    check_prop1_all_with, graph_satisfies_ucc_with, maximal_stable_sets_with, rare_vertices_with,
};
use ucc_core::sweep::{self, ShiftGrid, SweepReport};
use ucc_core::symmetry::{find_swap_automorphism_with, rare_pair_via_swap_with};
use ucc_core::translates::{verify_shifted, verify_translates};
use ucc_core::{
    apply_shift, canonical_swap_map, cyclic_translates, generate, incidence_graph,
    is_swap_automorphism, standard_shift_index, validate_suitable, BipartiteGraph, Error, GridSpec,
    SetFamily, SwapSearch, VertexBijection,
};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "ucc-lab",
    version,
    about = "Exact checks for union-closed families and their graph formulation"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format; defaults to json when --out ends in .json, else text
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Read and print elements as 1..n, with n standing for 0
    #[arg(long, global = true)]
    one_based: bool,

    /// Maximum size of a union closure
    #[arg(long, global = true, env = "UCC_LAB_CLOSURE_CAP", value_parser = clap::value_parser!(u64).range(1..))]
    closure_cap: Option<u64>,

    /// Maximum vertex count for maximal stable set enumeration
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=128))]
    vertex_cap: Option<u64>,

    /// Node budget for the swap-automorphism search
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,

    /// Run sweeps on a single thread
    #[arg(long, global = true)]
    deterministic: bool,

    /// Seed for sampled sweeps
    #[arg(long, global = true, value_parser = parse_seed)]
    seed: Option<u64>,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Set families: translates, shifts, closures
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Bipartite graphs: generation, stable sets, swap maps
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Single-instance checks
    #[command(subcommand)]
    Check(CheckCmd),
    /// Parameter sweeps
    #[command(subcommand)]
    Sweep(SweepCmd),
}

#[derive(Subcommand, Debug)]
enum FamilyCmd {
    /// The distinct cyclic translates of a set
    Translates {
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        #[arg(long)]
        n: usize,
        /// Element placed first in the base tuple; defaults to the least label
        #[arg(long)]
        anchor: Option<usize>,
    },
    /// Shift a translate family read from --in or stdin
    Shift {
        #[command(flatten)]
        input: FamilyInput,
        #[arg(long)]
        anchor: Option<usize>,
        /// Standard index size
        #[arg(long, conflicts_with_all = ["indices", "index"])]
        l: Option<usize>,
        /// Standard index rotation
        #[arg(long, requires = "l")]
        m: Option<usize>,
        /// Explicit index set (0-based group indices)
        #[arg(long = "I", value_delimiter = ',', requires_all = ["q", "r"], conflicts_with = "index")]
        indices: Option<Vec<usize>>,
        /// Images of the index set under q, in the order of --I
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<usize>>,
        #[arg(long)]
        r: Option<usize>,
        /// Suitable-index JSON file
        #[arg(long)]
        index: Option<PathBuf>,
    },
    /// The union closure of a family
    Closure {
        #[command(flatten)]
        input: FamilyInput,
    },
    /// Check the conjecture on the closure of a family
    Verify {
        #[command(flatten)]
        input: FamilyInput,
        /// Also check the explicit automorphism and the graph formulation
        #[arg(long)]
        full: bool,
    },
}

#[derive(Args, Debug)]
struct FamilyInput {
    /// Family file (JSON or text); stdin when absent or `-`
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Universe size for text input
    #[arg(long)]
    universe: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Grid,
    Cylinder,
    Torus,
    Hypercube,
    Crown,
    Moebius,
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph file (JSON or edge list); stdin when neither this nor --kind is given
    #[arg(long = "in", conflicts_with = "kind")]
    input: Option<PathBuf>,
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Generate a grid-like bipartite graph
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// All maximal stable sets
    Mis {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Rare vertices of each class
    Rare {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// The explicit class-swapping map of a cylinder, torus or even grid
    Swapmap {
        #[command(flatten)]
        spec: SpecArgs,
        /// Also report the rare pair it yields
        #[arg(long)]
        rare_pair: bool,
    },
    /// Search for a class-swapping automorphism
    Autosearch {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Check that both classes contain a rare vertex
    CheckUcc {
        #[command(flatten)]
        graph: GraphInput,
        /// A swap map to check and derive a rare pair from
        #[arg(long)]
        map: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// Rare in the graph ⟺ abundant in the closure of the incidence family
    Prop1 {
        #[command(flatten)]
        graph: GraphInput,
        /// Only this X vertex
        #[arg(long)]
        vertex: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum SweepCmd {
    /// The rare/abundant correspondence on every small pattern
    Prop1 {
        #[arg(long, default_value_t = 3)]
        max_x: usize,
        #[arg(long, default_value_t = 3)]
        max_y: usize,
    },
    /// Every edge has a rare endpoint
    EdgeRarity {
        #[arg(long, default_value_t = 3)]
        max_exhaustive: usize,
        #[arg(long, default_value_t = 500)]
        random: usize,
        #[arg(long, default_value_t = 7)]
        max_random: usize,
    },
    /// Translate families of every nonempty subset of Z_n
    Translates {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Standard shifts of full-orbit translate families
    Shift {
        #[arg(long)]
        n: usize,
        /// Base set; defaults to a seeded sample of all full-orbit sets
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
        #[arg(long, conflicts_with = "all_l")]
        l: Option<usize>,
        #[arg(long, conflicts_with = "all_m")]
        m: Option<usize>,
        /// Every l in 1..=n (the default)
        #[arg(long)]
        all_l: bool,
        /// Every m in 0..l (the default)
        #[arg(long)]
        all_m: bool,
        #[arg(long, default_value_t = sweep::DEFAULT_SAMPLE)]
        sample: usize,
    },
    /// Canonical swap maps on cylinders and tori
    SwapMaps {
        /// Specs such as cylinder:4x3 or torus:4x4; defaults to the standard set
        #[arg(long = "spec", value_parser = parse_spec)]
        specs: Vec<GridSpec>,
    },
    /// Enumerated suitable indices against the validator
    Suitable {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_l: usize,
    },
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub format: Format,
    pub one_based: bool,
    pub limits: Limits,
    pub deterministic: bool,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Self {
        let defaults = Limits::default();
        let json_out = cli
            .out
            .as_deref()
            .and_then(Path::extension)
            .is_some_and(|e| e == "json");
        RunConfig {
            format: cli
                .format
                .unwrap_or(if json_out { Format::Json } else { Format::Text }),
            one_based: cli.one_based,
            limits: Limits {
                closure_cap: cli.closure_cap.map_or(defaults.closure_cap, |c| c as usize),
                vertex_cap: cli.vertex_cap.map_or(defaults.vertex_cap, |c| c as usize),
                set_count_cap: defaults.set_count_cap,
                search_budget: cli.budget.unwrap_or(defaults.search_budget),
            },
            deterministic: cli.deterministic,
            seed: cli.seed.unwrap_or(sweep::DEFAULT_SEED),
            out: cli.out.clone(),
        }
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    match s.strip_prefix("0x") {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    }
    .map_err(|e| e.to_string())
}

/// `kind:MxN` for two-parameter kinds, `kind:N` otherwise.
fn parse_spec(s: &str) -> Result<GridSpec, String> {
    let (kind, dims) = s.split_once(':').ok_or("expected kind:dims")?;
    let nums: Vec<usize> = dims
        .split('x')
        .map(|d| d.parse().map_err(|_| format!("bad dimension {d:?}")))
        .collect::<Result<_, _>>()?;
    let spec = match (kind, nums.as_slice()) {
        ("grid", [m, n]) => GridSpec::Grid { m: *m, n: *n },
        ("cylinder", [m, n]) => GridSpec::Cylinder { m: *m, n: *n },
        ("torus", [m, n]) => GridSpec::Torus { m: *m, n: *n },
        ("hypercube", [d]) => GridSpec::Hypercube { d: *d },
        ("crown", [n]) => GridSpec::Crown { n: *n },
        ("moebius", [n]) => GridSpec::Moebius { n: *n },
        _ => return Err(format!("unknown spec {s:?}")),
    };
    Ok(spec)
}

enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_resource_limit() => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Input(m) => m.clone(),
        }
    }
}

type CmdResult = Result<Report, Failure>;

/// A finished command: its exit code and both renderings.
struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn new(positive: bool, text: String, json: Value) -> Self {
        let code = if positive {
            EXIT_POSITIVE
        } else {
            EXIT_NEGATIVE
        };
        Report { code, text, json }
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// the report. Returns the process exit code.
pub fn run<I, T>(
    argv: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_POSITIVE
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let cfg = RunConfig::from_cli(&cli);
    let result = dispatch(&cli.command, &cfg, stdin);
    match result {
        Ok(report) => {
            let body = match cfg.format {
                Format::Text => report.text,
                Format::Json => {
                    let mut s =
                        serde_json::to_string_pretty(&report.json).expect("reports serialize");
                    s.push('\n');
                    s
                }
            };
            let written = match &cfg.out {
                Some(path) => fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(body.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "ucc-lab: {e}");
                return EXIT_USAGE;
            }
            report.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "ucc-lab: {}", f.message());
            f.exit_code()
        }
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig, stdin: &mut dyn Read) -> CmdResult {
    match cmd {
        Command::Family(c) => family_cmd(c, cfg, stdin),
        Command::Graph(c) => graph_cmd(c, cfg, stdin),
        Command::Check(CheckCmd::Prop1 { graph, vertex }) => {
            check_prop1(&load_graph(graph, stdin)?, vertex.as_deref(), cfg)
        }
        Command::Sweep(c) => sweep::with_threads(cfg.deterministic, || sweep_cmd(c, cfg)),
    }
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn load_family(
    input: &FamilyInput,
    cfg: &RunConfig,
    stdin: &mut dyn Read,
) -> Result<FamilyFile, Failure> {
    let text = read_input(input.input.as_deref(), stdin)?;
    let mut file = parse_family(&text, input.universe, cfg.one_based)?;
    file.one_based |= cfg.one_based;
    Ok(file)
}

fn family_json(file: &FamilyFile) -> Value {
    serde_json::to_value(file).expect("family files serialize")
}

fn family_cmd(cmd: &FamilyCmd, cfg: &RunConfig, stdin: &mut dyn Read) -> CmdResult {
    match cmd {
        FamilyCmd::Translates { set, n, anchor } => {
            let labels = Labels::new(*n, cfg.one_based);
            let elems = set
                .iter()
                .map(|&l| labels.parse(l))
                .collect::<Result<Vec<_>, _>>()?;
            let least = elems
                .iter()
                .copied()
                .min_by_key(|&e| labels.display(e))
                .ok_or_else(|| Failure::Input("empty --set".into()))?;
            let anchor = anchor
                .map(|a| labels.parse(a))
                .transpose()?
                .unwrap_or(least);
            let t = cyclic_translates(&elems, *n, anchor)?;
            let tuples: Vec<Vec<usize>> = (0..t.k()).map(|i| t.member_tuple(i)).collect();
            Ok(Report::new(
                true,
                family_text(&labels, &tuples),
                family_json(&FamilyFile::from_translates(&t, cfg.one_based)),
            ))
        }
        FamilyCmd::Shift {
            input,
            anchor,
            l,
            m,
            indices,
            q,
            r,
            index,
        } => {
            let file = load_family(input, cfg, stdin)?;
            let t = file.to_translates(*anchor)?;
            let n = t.modulus();
            let idx = match (l, indices, index) {
                (Some(l), _, _) => standard_shift_index(n, *l, m.unwrap_or(0))?,
                (None, Some(is), _) => {
                    let qs = q.as_ref().expect("clap requires --q");
                    if qs.len() != is.len() {
                        return Err(Failure::Input(
                            "--q must list one image per element of --I".into(),
                        ));
                    }
                    let qmap: BTreeMap<usize, usize> =
                        is.iter().copied().zip(qs.iter().copied()).collect();
                    validate_suitable(n, is, &qmap, r.expect("clap requires --r"))?
                }
                (None, None, Some(path)) => {
                    let text = read_input(Some(path), stdin)?;
                    let f: SuitableIndexFile = serde_json::from_str(&text)
                        .map_err(|e| Failure::Input(format!("suitable index JSON: {e}")))?;
                    if f.n != n {
                        return Err(Failure::Input(format!(
                            "index is over Z_{} but the family over Z_{n}",
                            f.n
                        )));
                    }
                    f.to_index()?
                }
                (None, None, None) => {
                    return Err(Failure::Input(
                        "give --l [--m], --I/--q/--r, or --index".into(),
                    ))
                }
            };
            let shifted = apply_shift(&t, &idx)?;
            let labels = file.labels();
            let mut text = family_text(&labels, shifted.tuples());
            for (a, b) in shifted.collisions() {
                text.push_str(&format!("# members {a} and {b} coincide as sets\n"));
            }
            Ok(Report::new(
                true,
                text,
                family_json(&FamilyFile::from_shifted(&shifted, labels.one_based)),
            ))
        }
        FamilyCmd::Closure { input } => {
            let file = load_family(input, cfg, stdin)?;
            let family = file.to_family()?;
            let closure =
                ucc_core::family::union_closure_with_cap(&family, cfg.limits.closure_cap)?;
            let labels = file.labels();
            let out = FamilyFile::from_family(&closure, labels.one_based);
            let mut text = family_text(&labels, &out_sets_internal(&closure, &labels));
            text.push_str(&format!(
                "# {} generators, {} members\n",
                family.len(),
                closure.len()
            ));
            Ok(Report::new(true, text, family_json(&out)))
        }
        FamilyCmd::Verify { input, full } => {
            let file = load_family(input, cfg, stdin)?;
            verify_family(&file, *full, cfg)
        }
    }
}

/// Closure members in canonical display order, as stored elements.
fn out_sets_internal(closure: &SetFamily, labels: &Labels) -> Vec<Vec<usize>> {
    let mut sets: Vec<(Vec<usize>, Vec<usize>)> = closure
        .members()
        .iter()
        .map(|m| {
            let mut internal = m.to_vec();
            internal.sort_by_key(|&e| labels.display(e));
            (labels.display_set(m.iter()), internal)
        })
        .collect();
    sets.sort();
    sets.into_iter().map(|(_, i)| i).collect()
}

fn verify_family(file: &FamilyFile, full: bool, cfg: &RunConfig) -> CmdResult {
    let labels = file.labels();
    let family = file.to_family()?;
    let report = ucc_core::family::verify_ucc_with_cap(&family, cfg.limits.closure_cap)?;
    let order: Vec<usize> = {
        let mut v: Vec<usize> = (0..labels.universe).collect();
        v.sort_by_key(|&e| labels.display(e));
        v
    };
    let mut text = String::new();
    text.push_str(&format!("closure size: {}\n", report.closure_size));
    let freqs: Vec<String> = order
        .iter()
        .map(|&e| format!("{}:{}", labels.display(e), report.frequencies[e]))
        .collect();
    text.push_str(&format!("frequencies: {}\n", freqs.join(" ")));
    text.push_str(&format!(
        "abundant: {}\n",
        labels.brace(&sorted_display(&report.abundant, &labels))
    ));
    text.push_str(&format!("family check: {}\n", verdict(report.holds)));
    let mut json = json!({
        "one_based": labels.one_based,
        "labels": (0..labels.universe).map(|e| labels.display(e)).collect::<Vec<_>>(),
        "family": report,
    });
    let mut positive = report.holds;
    if full {
        let section = match &file.construction {
            Some(ucc_core::io::Construction::Shifted { .. }) => {
                Some(verify_shifted(&file.to_shifted()?, &cfg.limits)?)
            }
            Some(ucc_core::io::Construction::Translates { .. }) => {
                Some(verify_translates(&file.to_translates(None)?, &cfg.limits)?)
            }
            None => None,
        };
        match section {
            Some(s) => {
                text.push_str(&format!(
                    "explicit swap automorphism: {}\n",
                    verdict(s.automorphism_ok)
                ));
                text.push_str(&format!(
                    "graph formulation: {} ({} maximal stable sets)\n",
                    verdict(s.graph.holds),
                    s.graph.total_sets
                ));
                if !s.collisions.is_empty() {
                    text.push_str(&format!("coinciding members: {:?}\n", s.collisions));
                }
                let agree = s.all_pass && report.holds;
                text.push_str(&format!("all checks agree: {}\n", verdict(agree)));
                positive = agree;
                json["full"] = serde_json::to_value(&s).expect("reports serialize");
            }
            None => {
                let g = incidence_graph(&family.deduplicated());
                let graph = graph_satisfies_ucc_with(&g, &cfg.limits)?;
                text.push_str(
                    "explicit swap automorphism: not applicable (no construction recorded)\n",
                );
                text.push_str(&format!(
                    "graph formulation: {} ({} maximal stable sets)\n",
                    verdict(graph.holds),
                    graph.total_sets
                ));
                positive = report.holds && graph.holds;
                text.push_str(&format!("all checks agree: {}\n", verdict(positive)));
                json["full"] =
                    json!({ "automorphism_ok": Value::Null, "graph": graph, "all_pass": positive });
            }
        }
    }
    Ok(Report::new(positive, text, json))
}

fn sorted_display(set: &[usize], labels: &Labels) -> Vec<usize> {
    let mut v = set.to_vec();
    v.sort_by_key(|&e| labels.display(e));
    v
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "FAILS"
    }
}

fn spec_from(args: &SpecArgs) -> Result<Option<GridSpec>, Failure> {
    let Some(kind) = args.kind else {
        return Ok(None);
    };
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Failure::Input(format!("--kind {kind:?} needs --{flag}").to_lowercase()))
    };
    let spec = match kind {
        Kind::Grid => GridSpec::Grid {
            m: need(args.m, "m")?,
            n: need(args.n, "n")?,
        },
        Kind::Cylinder => GridSpec::Cylinder {
            m: need(args.m, "m")?,
            n: need(args.n, "n")?,
        },
        Kind::Torus => GridSpec::Torus {
            m: need(args.m, "m")?,
            n: need(args.n, "n")?,
        },
        Kind::Hypercube => GridSpec::Hypercube {
            d: need(args.d, "d")?,
        },
        Kind::Crown => GridSpec::Crown {
            n: need(args.n, "n")?,
        },
        Kind::Moebius => GridSpec::Moebius {
            n: need(args.n, "n")?,
        },
    };
    Ok(Some(spec))
}

fn require_spec(args: &SpecArgs) -> Result<GridSpec, Failure> {
    spec_from(args)?.ok_or_else(|| Failure::Input("--kind is required".into()))
}

fn load_graph(input: &GraphInput, stdin: &mut dyn Read) -> Result<BipartiteGraph, Failure> {
    if let Some(spec) = spec_from(&input.spec)? {
        return Ok(generate(&spec)?);
    }
    let text = read_input(input.input.as_deref(), stdin)?;
    Ok(parse_graph(&text)?)
}

fn graph_text(g: &BipartiteGraph) -> String {
    let mut s = format!("bipartite {} {}\n", g.nx(), g.ny());
    for (i, j) in g.edges() {
        s.push_str(&format!("{} {}\n", g.x_labels()[i], g.y_labels()[j]));
    }
    s
}

fn vertex_set(g: &BipartiteGraph, vs: impl IntoIterator<Item = usize>) -> String {
    let labels: Vec<&str> = vs.into_iter().map(|v| g.label(v)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn map_text(g: &BipartiteGraph, f: &VertexBijection) -> String {
    (0..f.len())
        .map(|v| format!("{} -> {}\n", g.label(v), g.label(f.apply(v))))
        .collect()
}

fn map_json(g: &BipartiteGraph, f: &VertexBijection) -> Value {
    serde_json::to_value(BijectionFile::from_bijection(g, f)).expect("maps serialize")
}

fn rare_pair_json(g: &BipartiteGraph, p: &ucc_core::symmetry::RarePair) -> Value {
    json!({
        "x": g.label(p.x),
        "y": g.label(p.y),
        "count_x": p.count_x,
        "count_y": p.count_y,
        "total_sets": p.total_sets,
    })
}

fn graph_cmd(cmd: &GraphCmd, cfg: &RunConfig, stdin: &mut dyn Read) -> CmdResult {
    let limits = &cfg.limits;
    match cmd {
        GraphCmd::Gen { spec } => {
            let g = generate(&require_spec(spec)?)?;
            let json = serde_json::to_value(GraphFile::from_graph(&g)).expect("graphs serialize");
            Ok(Report::new(true, graph_text(&g), json))
        }
        GraphCmd::Mis { graph } => {
            let g = load_graph(graph, stdin)?;
            let mis = maximal_stable_sets_with(&g, limits)?;
            let sets: Vec<Vec<&str>> = mis
                .sets()
                .iter()
                .map(|s| s.iter().map(|v| g.label(v)).collect())
                .collect();
            let mut text = format!("{} maximal stable sets\n", mis.len());
            for s in mis.sets() {
                text.push_str(&vertex_set(&g, s.iter()));
                text.push('\n');
            }
            Ok(Report::new(
                true,
                text,
                json!({ "count": mis.len(), "sets": sets }),
            ))
        }
        GraphCmd::Rare { graph } => {
            let g = load_graph(graph, stdin)?;
            let rare = rare_vertices_with(&g, limits)?;
            let mut text = format!("maximal stable sets: {}\n", rare.total_sets);
            text.push_str(&format!(
                "rare in X: {}\n",
                vertex_set(&g, rare.x.iter().copied())
            ));
            text.push_str(&format!(
                "rare in Y: {}\n",
                vertex_set(&g, rare.y.iter().copied())
            ));
            for v in 0..g.vertex_count() {
                text.push_str(&format!("  {} in {}\n", g.label(v), rare.counts[v]));
            }
            let counts: BTreeMap<&str, usize> = (0..g.vertex_count())
                .map(|v| (g.label(v), rare.counts[v]))
                .collect();
            let json = json!({
                "total_sets": rare.total_sets,
                "rare_x": rare.x.iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
                "rare_y": rare.y.iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
                "counts": counts,
            });
            Ok(Report::new(true, text, json))
        }
        GraphCmd::Swapmap { spec, rare_pair } => {
            let spec = require_spec(spec)?;
            let g = generate(&spec)?;
            let f = canonical_swap_map(&spec)?;
            let ok = is_swap_automorphism(&g, &f)?;
            let mut text = map_text(&g, &f);
            text.push_str(&format!("swap automorphism: {}\n", verdict(ok)));
            let mut json = map_json(&g, &f);
            json["is_swap_automorphism"] = json!(ok);
            if *rare_pair && ok {
                let p = rare_pair_via_swap_with(&g, &f, limits)?;
                text.push_str(&format!(
                    "rare pair: {} ({}/{}) and {} ({}/{})\n",
                    g.label(p.x),
                    p.count_x,
                    p.total_sets,
                    g.label(p.y),
                    p.count_y,
                    p.total_sets
                ));
                json["rare_pair"] = rare_pair_json(&g, &p);
            }
            Ok(Report::new(ok, text, json))
        }
        GraphCmd::Autosearch { graph } => {
            let g = load_graph(graph, stdin)?;
            let outcome = find_swap_automorphism_with(&g, limits)?;
            let (text, json) = match &outcome {
                SwapSearch::Found(f) => {
                    let mut j = map_json(&g, f);
                    j["outcome"] = json!("found");
                    (format!("{}found a swap automorphism\n", map_text(&g, f)), j)
                }
                SwapSearch::ClassSizesDiffer { nx, ny } => (
                    format!("no swap automorphism: class sizes {nx} and {ny} differ\n"),
                    json!({ "outcome": "class-sizes-differ", "nx": nx, "ny": ny }),
                ),
                SwapSearch::DegreesDiffer => (
                    "no swap automorphism: degree multisets differ\n".to_string(),
                    json!({ "outcome": "degrees-differ" }),
                ),
                SwapSearch::Exhausted { nodes } => (
                    format!("no swap automorphism: search exhausted after {nodes} nodes\n"),
                    json!({ "outcome": "exhausted", "nodes": nodes }),
                ),
            };
            Ok(Report::new(outcome.witness().is_some(), text, json))
        }
        GraphCmd::CheckUcc { graph, map } => {
            let g = load_graph(graph, stdin)?;
            let report = graph_satisfies_ucc_with(&g, limits)?;
            let witness =
                |v: Option<usize>| v.map_or("none".to_string(), |v| g.label(v).to_string());
            let mut text = format!(
                "maximal stable sets: {}\nrare in X: {}\nrare in Y: {}\ngraph formulation: {}\n",
                report.total_sets,
                witness(report.witness_x),
                witness(report.witness_y),
                verdict(report.holds)
            );
            let mut json = json!({
                "holds": report.holds,
                "witness_x": report.witness_x.map(|v| g.label(v)),
                "witness_y": report.witness_y.map(|v| g.label(v)),
                "total_sets": report.total_sets,
            });
            let mut positive = report.holds;
            if let Some(path) = map {
                let text_map = read_input(Some(path), stdin)?;
                let file: BijectionFile = serde_json::from_str(&text_map)
                    .map_err(|e| Failure::Input(format!("vertex map JSON: {e}")))?;
                let f = file.to_bijection(&g)?;
                let ok = is_swap_automorphism(&g, &f)?;
                text.push_str(&format!("swap automorphism: {}\n", verdict(ok)));
                json["is_swap_automorphism"] = json!(ok);
                if ok {
                    let p = rare_pair_via_swap_with(&g, &f, limits)?;
                    text.push_str(&format!(
                        "rare pair: {} and {}\n",
                        g.label(p.x),
                        g.label(p.y)
                    ));
                    json["rare_pair"] = rare_pair_json(&g, &p);
                }
                positive &= ok;
            }
            Ok(Report::new(positive, text, json))
        }
    }
}

fn check_prop1(g: &BipartiteGraph, vertex: Option<&str>, cfg: &RunConfig) -> CmdResult {
    let mut reports = check_prop1_all_with(g, &cfg.limits)?;
    if let Some(label) = vertex {
        let v = g
            .vertex_by_label(label)
            .filter(|&v| v < g.nx())
            .ok_or_else(|| Failure::Input(format!("{label:?} is not an X vertex")))?;
        reports.retain(|r| r.vertex == v);
    }
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!(
            "{}: rare={} abundant={} {}\n",
            g.label(r.vertex),
            r.rare,
            r.abundant_in_closure,
            if r.agrees { "agree" } else { "DISAGREE" }
        ));
    }
    let all = reports.iter().all(|r| r.agrees);
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("reports serialize");
            v["label"] = json!(g.label(r.vertex));
            v
        })
        .collect();
    Ok(Report::new(
        all,
        text,
        json!({ "agrees": all, "vertices": rows }),
    ))
}

fn sweep_report(report: SweepReport) -> CmdResult {
    let mut text = format!(
        "{}: {} instances, {} passed, {} failed\n",
        report.sweep, report.instances, report.passed, report.failed
    );
    if let Some(c) = &report.first_counterexample {
        text.push_str(&format!("first counterexample: {c}\n"));
    }
    let json = serde_json::to_value(&report).expect("reports serialize");
    Ok(Report::new(report.ok(), text, json))
}

pub fn default_swap_specs() -> Vec<GridSpec> {
    let mut specs: Vec<GridSpec> = [4, 6]
        .iter()
        .flat_map(|&m| [2, 3].map(|n| GridSpec::Cylinder { m, n }))
        .collect();
    specs.push(GridSpec::Torus { m: 4, n: 4 });
    specs
}

fn sweep_cmd(cmd: &SweepCmd, cfg: &RunConfig) -> CmdResult {
    let limits = &cfg.limits;
    let report = match cmd {
        SweepCmd::Prop1 { max_x, max_y } => sweep::sweep_prop1(*max_x, *max_y, limits)?,
        SweepCmd::EdgeRarity {
            max_exhaustive,
            random,
            max_random,
        } => sweep::sweep_edge_rarity(*max_exhaustive, *random, *max_random, cfg.seed, limits)?,
        SweepCmd::Translates { max_n } => sweep::sweep_translates(*max_n, limits)?,
        SweepCmd::Shift {
            n,
            set,
            l,
            m,
            sample,
            ..
        } => {
            let labels = Labels::new(*n, cfg.one_based);
            let mut grid = match set {
                None => ShiftGrid::sampled(*n, *sample, cfg.seed)?,
                Some(set) => {
                    let elems = set
                        .iter()
                        .map(|&l| labels.parse(l))
                        .collect::<Result<Vec<_>, _>>()?;
                    ShiftGrid {
                        n: *n,
                        sets: vec![elems.into_iter().collect()],
                        l: None,
                        m: None,
                    }
                }
            };
            grid.l = *l;
            grid.m = *m;
            sweep::sweep_shift(&grid, limits)?
        }
        SweepCmd::SwapMaps { specs } => {
            let specs = if specs.is_empty() {
                default_swap_specs()
            } else {
                specs.clone()
            };
            sweep::sweep_swap_specs(&specs, limits)?
        }
        SweepCmd::Suitable { max_n, max_l } => sweep::sweep_suitable(*max_n, *max_l)?,
    };
    sweep_report(report)
}
