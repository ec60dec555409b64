use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ribbon_core::canon::{canonical_form, is_equivalent};
use ribbon_core::decomposition::{
    classify_biseparation, enumerate_biseparations, prime_factorization, ClassFilter, JoinNode,
};
use ribbon_core::duality::{geometric_dual, partial_dual, spectrum, SpectrumOptions};
use ribbon_core::io::{from_json, parse, serialize, to_json, GraphDocument};
use ribbon_core::moves::{move_related, MoveKind, MovePolicy, MoveSearch, DEFAULT_MAX_DEPTH};
use ribbon_core::topology::{euler_genus, is_connected, surface_stats};
use ribbon_core::verify::{check_suite, Check, SuiteOptions};
use ribbon_core::{EdgeSubset, Error, RibbonGraph};

#[derive(Parser)]
#[command(name = "ribbon", version, about = "Partial duals, genus and join structure of ribbon graphs")]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex, edge and face counts, Euler genus and surface.
    Info { file: PathBuf },
    /// Partial dual by the listed edges; the geometric dual without them.
    Dual {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        edges: Option<Vec<String>>,
    },
    /// Euler genus of every partial dual.
    Spectrum {
        file: PathBuf,
        /// Only list partial duals of this Euler genus.
        #[arg(long)]
        genus: Option<usize>,
        /// Enumerate beyond the default edge bound.
        #[arg(long)]
        force: bool,
    },
    /// Edge sets defining biseparations.
    Biseparations {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ClassArg::All)]
        class: ClassArg,
    },
    /// Prime factorization into join-summands.
    Factor { file: PathBuf },
    /// Equivalence, partial-dual subsets and a move sequence between two graphs.
    Relate {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// Canonical code and canonical representative.
    Canon { file: PathBuf },
    /// Run the property checks over the exhaustive corpus.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated check names; all checks by default.
        #[arg(long, value_delimiter = ',')]
        suite: Option<Vec<Check>>,
        /// Omit timings so repeated runs print identical output.
        #[arg(long)]
        stable: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Plane,
    Rp2,
    All,
}

/// Bad input or arguments, reported with exit code 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialize"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<(GraphDocument, RibbonGraph), Failure> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let located = |e: Error| Failure(format!("{}: {e}", path.display()));
    let doc = if text.trim_start().starts_with('{') {
        from_json(&text).map_err(located)?
    } else {
        parse(&text).map_err(located)?
    };
    let g = doc.to_graph().map_err(located)?;
    Ok((doc, g))
}

fn labels(g: &RibbonGraph, a: &EdgeSubset) -> Value {
    json!(g.subset_labels(a))
}

fn run(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Info { file } => {
            let (doc, g) = load(file)?;
            let s = surface_stats(&g);
            let mut text = String::new();
            if let Some(name) = &doc.name {
                writeln!(text, "{name}").unwrap();
            }
            let kind = if s.orientable { "orientable" } else { "non-orientable" };
            writeln!(text, "γ={} {kind} {}", s.euler_genus, s.surface_label()).unwrap();
            writeln!(text, "v={} e={} f={} c={} χ={}", s.v, s.e, s.f, s.c, s.euler_characteristic).unwrap();
            Ok(Output {
                text,
                json: json!({ "command": "info", "name": doc.name, "stats": s, "surface": s.surface_label() }),
                ok: true,
            })
        }
        Command::Dual { file, edges } => {
            let (doc, g) = load(file)?;
            let h = match edges {
                None => geometric_dual(&g),
                Some(ls) => partial_dual(&g, &g.subset(ls)?),
            };
            let out = GraphDocument::from_graph(&h, doc.name.as_deref());
            Ok(Output {
                text: serialize(&out),
                json: json!({ "command": "dual", "graph": to_json(&out) }),
                ok: true,
            })
        }
        Command::Spectrum { file, genus, force } => {
            let (_, g) = load(file)?;
            let opts = SpectrumOptions {
                genus: *genus,
                force: *force,
                ..Default::default()
            };
            let rows = spectrum(&g, &opts)?;
            let mut text = String::new();
            for r in &rows {
                writeln!(text, "{}\t{}", g.format_subset(&r.subset), r.euler_genus).unwrap();
            }
            let rows_json: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "subset": labels(&g, &r.subset), "euler_genus": r.euler_genus }))
                .collect();
            Ok(Output {
                text,
                json: json!({ "command": "spectrum", "orientable": ribbon_core::is_orientable(&g), "rows": rows_json }),
                ok: true,
            })
        }
        Command::Biseparations { file, class } => {
            let (_, g) = load(file)?;
            let filter = match class {
                ClassArg::Plane => ClassFilter::Plane,
                ClassArg::Rp2 => ClassFilter::ProjectivePlane,
                ClassArg::All => ClassFilter::All,
            };
            let found = enumerate_biseparations(&g, filter)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for a in &found {
                let c = classify_biseparation(&g, a);
                writeln!(text, "{}\t{c}", g.format_subset(a)).unwrap();
                rows.push(json!({ "subset": labels(&g, a), "class": c.to_string() }));
            }
            Ok(Output {
                text,
                json: json!({ "command": "biseparations", "biseparations": rows }),
                ok: true,
            })
        }
        Command::Factor { file } => {
            let (_, g) = load(file)?;
            let tree = prime_factorization(&g)?;
            let mut text = String::new();
            let mut factors = Vec::new();
            for f in &tree.factors {
                let h = g.induced_subgraph(f);
                let s = surface_stats(&h);
                writeln!(text, "{}\tγ={} {}", g.format_subset(f), s.euler_genus, s.surface_label()).unwrap();
                factors.push(json!({ "edges": labels(&g, f), "euler_genus": s.euler_genus, "orientable": s.orientable }));
            }
            let shape = tree.root.as_ref().map(|r| render_tree(&g, &tree.factors, r));
            if let Some(shape) = &shape {
                writeln!(text, "tree: {shape}").unwrap();
            }
            Ok(Output {
                text,
                json: json!({ "command": "factor", "factors": factors, "tree": shape }),
                ok: true,
            })
        }
        Command::Relate { first, second, max_depth } => relate(first, second, *max_depth),
        Command::Canon { file } => {
            let (_, g) = load(file)?;
            let code = canonical_form(&g);
            let doc = GraphDocument::from_graph(&code.to_graph(), None);
            Ok(Output {
                text: format!("code {code}\n{}", serialize(&doc)),
                json: json!({ "command": "canon", "code": code, "graph": to_json(&doc) }),
                ok: true,
            })
        }
        Command::Verify {
            max_edges,
            seed,
            suite,
            stable,
        } => {
            let opts = SuiteOptions {
                max_edges: *max_edges,
                pair_edges: (*max_edges).min(4),
                summand_edges: (*max_edges).min(3),
                seed: *seed,
                checks: suite.clone().unwrap_or_else(|| Check::ALL.to_vec()),
                timing: !stable,
                ..Default::default()
            };
            let report = check_suite(&opts)?;
            let mut text = String::new();
            writeln!(text, "corpus {:?}", report.corpus_sizes).unwrap();
            for c in &report.checks {
                let verdict = if c.passed() { "PASS" } else { "FAIL" };
                write!(text, "{verdict} {:<24} {} instances, {} failed", c.check.name(), c.instances, c.failed).unwrap();
                if let Some(ms) = c.elapsed_ms {
                    write!(text, ", {ms} ms").unwrap();
                }
                writeln!(text).unwrap();
                for x in &c.counterexamples {
                    writeln!(text, "  {}", x.detail).unwrap();
                    if let Some(s) = &x.subset {
                        writeln!(text, "  A = {{{}}}", s.join(",")).unwrap();
                    }
                    for line in x.graph.lines() {
                        writeln!(text, "    {line}").unwrap();
                    }
                }
            }
            Ok(Output {
                text,
                ok: report.passed(),
                json: json!({ "command": "verify", "report": report }),
            })
        }
    }
}

fn render_tree(g: &RibbonGraph, factors: &[EdgeSubset], node: &JoinNode) -> String {
    match node {
        JoinNode::Factor(i) => g.format_subset(&factors[*i]),
        JoinNode::Join { vertex, left, right, .. } => format!(
            "({} ∨{} {})",
            render_tree(g, factors, left),
            g.vertices()[*vertex].name,
            render_tree(g, factors, right)
        ),
    }
}

fn relate(first: &Path, second: &Path, max_depth: usize) -> Result<Output, Failure> {
    let (_, g) = load(first)?;
    let (_, h) = load(second)?;
    let equivalent = is_equivalent(&g, &h);
    let mut subsets = Vec::new();
    if g.num_edges() == h.num_edges() {
        let target = canonical_form(&h);
        for row in spectrum(&g, &SpectrumOptions { genus: Some(euler_genus(&h)), ..Default::default() })? {
            if canonical_form(&partial_dual(&g, &row.subset)) == target {
                subsets.push(row.subset);
            }
        }
    }
    let mut text = String::new();
    writeln!(text, "equivalent: {}", if equivalent { "yes" } else { "no" }).unwrap();
    if subsets.is_empty() {
        writeln!(text, "partial duals: none").unwrap();
    } else {
        let shown: Vec<String> = subsets.iter().map(|a| g.format_subset(a)).collect();
        writeln!(text, "partial duals: {}", shown.join(" ")).unwrap();
    }
    let search = if !subsets.is_empty() && is_connected(&g) {
        Some(move_related(&g, &h, max_depth, MovePolicy::AnySummand)?)
    } else {
        None
    };
    match &search {
        Some(MoveSearch::Found(trace)) => {
            writeln!(text, "moves: {}", trace.len()).unwrap();
            for s in &trace.steps {
                match s.kind {
                    MoveKind::GeometricDual => writeln!(text, "  dual").unwrap(),
                    MoveKind::DualJoinSummand => writeln!(text, "  dual summand {}", g.format_subset(&s.summand)).unwrap(),
                }
            }
        }
        Some(MoveSearch::Exhausted { visited }) => {
            writeln!(text, "moves: none ({visited} graphs reachable)").unwrap();
        }
        Some(MoveSearch::DepthLimit { visited }) => {
            writeln!(text, "moves: none within depth {max_depth} ({visited} graphs visited)").unwrap();
        }
        None => {}
    }
    let rows: Vec<Value> = subsets.iter().map(|a| labels(&g, a)).collect();
    Ok(Output {
        text,
        ok: equivalent || !subsets.is_empty(),
        json: json!({ "command": "relate", "equivalent": equivalent, "partial_duals": rows, "moves": search }),
    })
}
