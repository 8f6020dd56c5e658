use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tsys::classify::{fuss_catalan_a, is_lsp_oracle};
use tsys::compatibility::min_compatible_extension_fixpoint;
use tsys::enumerate::Enumerator;
use tsys::saturation::saturation_witness;
use tsys::{
    core_chain, export_dot, hull, hull_fixpoint, is_compatible, is_lsp_fast, is_saturated,
    min_compatible_extension, shape_of, validate, DotOptions, Edge, Error, Filter, Grid,
    TransferSystem, TsysDocument, Vertex, VerifyConfig,
};

/// Transfer systems on the subgroup grid of C_{p^r q^s}.
#[derive(Parser)]
#[command(name = "tsys", version, about)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 1 when a check comes out false.
    #[arg(long, global = true)]
    strict: bool,
    /// Swap the roles of p and q in every input before running.
    #[arg(long = "swap-pq", global = true)]
    swap_pq: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the transfer-system axioms for an edge list.
    Validate { file: PathBuf },
    /// Print the least transfer system containing the edges.
    Close { file: PathBuf },
    /// Print the saturated hull.
    Hull {
        file: PathBuf,
        /// Use the saturation fixpoint instead of the component construction.
        #[arg(long)]
        fixpoint: bool,
    },
    /// List connected components with their shapes.
    Components { file: PathBuf },
    /// Decide whether (T, T') is a compatible pair.
    Compat { t: PathBuf, tp: PathBuf },
    /// Least transfer system containing T and the given edges that is
    /// compatible with T.
    Extend {
        file: PathBuf,
        /// Extra edge as "i1 j1 -> i2 j2"; repeatable.
        #[arg(long = "edge", value_name = "EDGE")]
        edges: Vec<String>,
        /// Always run the general fixpoint.
        #[arg(long)]
        fixpoint: bool,
    },
    /// Decide whether T is lesser simply paired.
    Lsp {
        file: PathBuf,
        /// Also run the exhaustive search and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Chain core: closure of the unit edges.
    Core { file: PathBuf },
    /// Enumerate every transfer system on a grid.
    Enumerate {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        count_only: bool,
        /// Keep only saturated, connected or lsp systems.
        #[arg(long)]
        filter: Option<Filter>,
        #[command(flatten)]
        guard: GuardArgs,
    },
    /// Count compatible pairs T ⊆ T' on a grid.
    CountPairs {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        guard: GuardArgs,
    },
    /// Graphviz rendering with grid positions.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        color_components: bool,
    },
    /// Exhaustively check the structural results on small grids.
    Verify {
        #[arg(long, default_value_t = 9)]
        max_vertices: usize,
    },
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
}

#[derive(Args)]
struct GuardArgs {
    /// Refuse grids with more vertices than this.
    #[arg(long, default_value_t = tsys::DEFAULT_VERTEX_LIMIT)]
    max_vertices: usize,
}

enum Failure {
    /// A self-check found a problem.
    Check(String),
    Input(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CmdResult = std::result::Result<bool, Failure>;

struct Ctx {
    json: bool,
    swap: bool,
}

impl Ctx {
    fn load(&self, path: &Path) -> std::result::Result<TsysDocument, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))?;
        let doc = TsysDocument::parse_any(&text)
            .map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))?;
        for w in &doc.warnings {
            eprintln!("warning: {}: {}", path.display(), w);
        }
        Ok(if self.swap { doc.transpose() } else { doc })
    }

    fn load_system(&self, path: &Path) -> std::result::Result<TransferSystem, Failure> {
        let doc = self.load(path)?;
        doc.to_system()
            .map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))
    }

    fn grid(&self, g: &GridArgs) -> Grid {
        let grid = Grid::new(g.r, g.s);
        if self.swap {
            grid.transpose()
        } else {
            grid
        }
    }

    fn emit(&self, text: impl AsRef<str>, value: Value) {
        if self.json {
            println!("{}", value);
        } else {
            let text = text.as_ref();
            if text.ends_with('\n') {
                print!("{}", text);
            } else {
                println!("{}", text);
            }
        }
    }
}

fn system_json(t: &TransferSystem) -> Value {
    serde_json::to_value(TsysDocument::from_system(t)).expect("document serializes")
}

fn parse_edge(s: &str) -> std::result::Result<Edge, Failure> {
    let bad = || Failure::Input(format!("bad edge '{}', expected 'i1 j1 -> i2 j2'", s));
    let (a, b) = s.split_once("->").ok_or_else(bad)?;
    let vertex = |part: &str| -> std::result::Result<Vertex, Failure> {
        let nums: Vec<usize> = part
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<std::result::Result<_, _>>()?;
        match nums.as_slice() {
            [i, j] => Ok(Vertex::new(*i, *j)),
            _ => Err(bad()),
        }
    };
    Ok(Edge::new(vertex(a)?, vertex(b)?))
}

fn run(cli: Cli) -> CmdResult {
    let ctx = Ctx {
        json: cli.json,
        swap: cli.swap_pq,
    };
    match cli.command {
        Command::Validate { file } => {
            let doc = ctx.load(&file)?;
            let violations = validate(doc.grid(), &doc.edges)?;
            let mut text = if violations.is_empty() {
                "valid transfer system\n".to_string()
            } else {
                format!("not a transfer system ({} violations)\n", violations.len())
            };
            for v in &violations {
                text.push_str(&format!("  {}\n", v));
            }
            let list: Vec<Value> = violations
                .iter()
                .map(|v| json!({"axiom": format!("{:?}", v.axiom()).to_lowercase(), "detail": v.to_string()}))
                .collect();
            ctx.emit(text, json!({"valid": violations.is_empty(), "violations": list}));
            Ok(violations.is_empty())
        }
        Command::Close { file } => {
            let t = ctx.load(&file)?.close()?;
            ctx.emit(TsysDocument::from_system(&t).render(), system_json(&t));
            Ok(true)
        }
        Command::Hull { file, fixpoint } => {
            let t = ctx.load_system(&file)?;
            let h = if fixpoint { hull_fixpoint(&t) } else { hull(&t) };
            let sat = is_saturated(&t);
            let mut text = TsysDocument::from_system(&h).render();
            match saturation_witness(&t) {
                None => text.push_str("# input is saturated\n"),
                Some(w) => text.push_str(&format!(
                    "# input is not saturated: {} -> {} present, {} -> {} missing\n",
                    w.lower, w.upper, w.middle, w.upper
                )),
            }
            ctx.emit(text, json!({"saturated": sat, "hull": system_json(&h)}));
            Ok(true)
        }
        Command::Components { file } => {
            let t = ctx.load_system(&file)?;
            let parts = t.components();
            let mut text = format!("{} components\n", parts.count());
            let mut list = Vec::new();
            for id in 0..parts.count() {
                let shape = shape_of(&t, id)?;
                let members: Vec<String> = parts.members(id).iter().map(|v| v.to_string()).collect();
                text.push_str(&format!(
                    "  {}: smallest {}, shape {}, members {}\n",
                    id,
                    parts.smallest(id),
                    shape,
                    members.join(" ")
                ));
                list.push(json!({
                    "id": id,
                    "smallest": parts.smallest(id),
                    "shape": shape,
                    "members": parts.members(id),
                }));
            }
            ctx.emit(text, json!({"count": parts.count(), "components": list}));
            Ok(true)
        }
        Command::Compat { t, tp } => {
            let a = ctx.load_system(&t)?;
            let b = ctx.load_system(&tp)?;
            let rep = is_compatible(&a, &b)?;
            let ok = rep.is_compatible();
            let mut text = if ok { "compatible\n" } else { "not compatible\n" }.to_string();
            for e in &rep.missing {
                text.push_str(&format!("  T' is missing {}\n", e));
            }
            for v in &rep.violations {
                text.push_str(&format!(
                    "  A={} B={} C={}: {} -> {} in T, {} -> {} in T', {} -> {} missing\n",
                    v.a, v.b, v.c, v.b, v.a, v.b_meet_c, v.b, v.c, v.a
                ));
            }
            ctx.emit(text, json!({"compatible": ok, "report": rep}));
            Ok(ok)
        }
        Command::Extend {
            file,
            edges,
            fixpoint,
        } => {
            let t = ctx.load_system(&file)?;
            let mut extra = edges.iter().map(|s| parse_edge(s)).collect::<Result<Vec<_>, _>>()?;
            if ctx.swap {
                extra = extra.into_iter().map(Edge::transpose).collect();
            }
            let tp = if fixpoint {
                min_compatible_extension_fixpoint(&t, &extra)?
            } else {
                min_compatible_extension(&t, &extra)?
            };
            let mut text = TsysDocument::from_system(&tp).render();
            if tp.is_complete() {
                text.push_str("# result is complete\n");
            }
            ctx.emit(
                text,
                json!({"extension": system_json(&tp), "complete": tp.is_complete()}),
            );
            Ok(true)
        }
        Command::Lsp { file, oracle } => {
            let t = ctx.load_system(&file)?;
            let fast = is_lsp_fast(&t);
            let mut text = fast.to_string();
            let mut agrees = true;
            let mut oracle_json = Value::Null;
            if oracle {
                let o = is_lsp_oracle(&t)?;
                agrees = o.is_lsp == fast.is_lsp;
                text.push_str(if agrees { "; oracle agrees" } else { "; oracle DISAGREES" });
                oracle_json = json!({
                    "is_lsp": o.is_lsp,
                    "witness": o.witness.as_ref().map(system_json),
                });
            }
            text.push('\n');
            if let Some(w) = &fast.witness {
                if let Some(e) = fast.witness_edge {
                    text.push_str(&format!("# witness: least compatible extension by {}\n", e));
                }
                text.push_str(&TsysDocument::from_system(w).render());
            }
            ctx.emit(
                text,
                json!({
                    "is_lsp": fast.is_lsp,
                    "reason": fast.reason.name(),
                    "components": fast.components,
                    "origin_shape": fast.origin_shape,
                    "witness_edge": fast.witness_edge,
                    "witness": fast.witness.as_ref().map(system_json),
                    "oracle": oracle_json,
                }),
            );
            if !agrees {
                return Err(Failure::Check("fast classification and oracle disagree".into()));
            }
            Ok(fast.is_lsp)
        }
        Command::Core { file } => {
            let t = ctx.load_system(&file)?;
            let c = core_chain(&t)?;
            ctx.emit(TsysDocument::from_system(&c).render(), system_json(&c));
            Ok(true)
        }
        Command::Enumerate {
            grid,
            count_only,
            filter,
            guard,
        } => {
            let g = ctx.grid(&grid);
            let all = Enumerator::new(g).vertex_limit(guard.max_vertices).all()?;
            let kept: Vec<&TransferSystem> = all
                .iter()
                .filter(|t| filter.is_none_or(|f| f.accepts(t)))
                .collect();
            if count_only {
                ctx.emit(kept.len().to_string(), json!({"count": kept.len()}));
            } else {
                let mut text = String::new();
                for (k, t) in kept.iter().enumerate() {
                    text.push_str(&format!("# system {}\n", k));
                    text.push_str(&TsysDocument::from_system(t).render());
                }
                text.push_str(&format!("# {} systems\n", kept.len()));
                let list: Vec<Value> = kept.iter().map(|t| system_json(t)).collect();
                ctx.emit(text, json!({"count": kept.len(), "systems": list}));
            }
            Ok(true)
        }
        Command::CountPairs { grid, guard } => {
            let g = ctx.grid(&grid);
            let all = Enumerator::new(g).vertex_limit(guard.max_vertices).all()?;
            let mut pairs = 0u64;
            for t in &all {
                pairs += tsys::compatibility::compatible_supersets_with_limit(t, guard.max_vertices)?
                    .len() as u64;
            }
            let mut text = format!("{}\n", pairs);
            let mut value = json!({"pairs": pairs});
            if g.is_chain() {
                let n = (g.r + g.s) as u64;
                let shifted = fuss_catalan_a(n + 1);
                // the expression C(3n+1, n)/(3n+1) is A_n(3,1), one index lower
                let literal = fuss_catalan_a(n);
                text.push_str(&format!(
                    "# A_(n+1)(3,1) at n = {}: {}\n# C(3n+1, n)/(3n+1) at n = {}: {}{}\n",
                    n,
                    shifted,
                    n,
                    literal,
                    if literal != shifted {
                        " (index mismatch: the count matches m = n + 1)"
                    } else {
                        ""
                    }
                ));
                value["fuss_catalan_n_plus_1"] = json!(shifted.to_string());
                value["literal_expression_at_n"] = json!(literal.to_string());
            }
            ctx.emit(text, value);
            Ok(true)
        }
        Command::ExportDot {
            file,
            color_components,
        } => {
            let t = ctx.load_system(&file)?;
            let name = file.file_stem().map(|s| s.to_string_lossy().into_owned());
            let dot = export_dot(
                &t,
                &DotOptions {
                    color_components,
                    name,
                },
            );
            ctx.emit(&dot, json!({"dot": dot}));
            Ok(true)
        }
        Command::Verify { max_vertices } => {
            let report = tsys::verify(&VerifyConfig { max_vertices })?;
            let mut text = String::new();
            for g in &report.grids {
                text.push_str(&format!(
                    "{:<10} {:>6} systems {:>10} checks {:>4} failed  {:.2}s\n",
                    g.grid.to_string(),
                    g.systems,
                    g.run(),
                    g.failed(),
                    g.seconds
                ));
                for f in &g.failures {
                    text.push_str(&format!("    {}\n", f));
                }
            }
            text.push_str(&format!(
                "{}: {} checks, {} failed\n",
                if report.passed() { "PASS" } else { "FAIL" },
                report.total_run(),
                report.total_failed()
            ));
            let value = serde_json::to_value(&report).expect("report serializes");
            ctx.emit(text, value);
            if !report.passed() {
                return Err(Failure::Check("verification failed".into()));
            }
            Ok(true)
        }
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var("TSYS_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("warning: ignoring TSYS_THREADS={}", v),
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let strict = cli.strict;
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) if strict => ExitCode::from(1),
        Ok(false) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(3)
        }
    }
}
