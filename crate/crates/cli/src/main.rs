//! Command-line front end: enumeration, graph export and verification suites.
//!
//! Exit status is 0 on success, 1 when a verification fails (a JSON report is
//! printed on standard output) and 2 on usage errors. `SILS_THREADS` caps the
//! number of worker threads.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sils::cartan::{AffineType, NodeSet};
use sils::components::{component_orbit_probe, special_elements_in_box, Bookkeeping};
use sils::json::{
    element_json, ls_json, parse_element, parse_sils, qbg_dot, qls_json, root_json, sib_dot, sils_json,
    translation_path_json, weight_json,
};
use sils::paths::{Op, SilsPath};
use sils::qbg::{enumerate_qls, qls_denominator, Qbg};
use sils::sibg::SiBruhatGraph;
use sils::verify::{self, Bounds};
use sils::weyl::{AffineSystem, Parabolic};
use sils::Error;

#[derive(Parser)]
#[command(name = "sils", version, about = "Semi-infinite LS paths for twisted affine root systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct TypeArgs {
    /// Family name: A2l2, A2lm12, Dlp12, E62, D43, or an untwisted name such as B3.
    #[arg(long = "type")]
    ty: String,
    /// Rank ℓ; optional for E62, D43 and untwisted names that carry it.
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Root datum: Cartan matrices, labels and positive roots.
    Roots {
        #[command(flatten)]
        t: TypeArgs,
    },
    /// Decomposition and lengths of an affine Weyl group element.
    Weyl {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_enum)]
        op: WeylOp,
        /// Element as JSON {"w": [word over 0..=ℓ], "xi": [...]}.
        #[arg(long)]
        element: String,
        /// Parabolic subset as comma-separated nodes 1..=ℓ.
        #[arg(long = "J", value_delimiter = ',')]
        j: Vec<usize>,
    },
    /// Semi-infinite Bruhat graph on Peterson members in a box.
    Sibg {
        #[command(flatten)]
        t: TypeArgs,
        /// Coefficients m_i of λ; J is the set of i with m_i = 0.
        #[arg(long, value_delimiter = ',', conflicts_with = "j")]
        lambda: Option<Vec<i64>>,
        #[arg(long = "J", value_delimiter = ',')]
        j: Option<Vec<usize>>,
        #[arg(long = "box", default_value_t = 1)]
        boxr: i64,
        #[arg(long)]
        dot: bool,
    },
    /// LS and semi-infinite LS paths.
    Paths {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<i64>,
        #[arg(long, value_enum)]
        op: PathOp,
        /// Path as JSON {"xs": [...], "cuts": [...]}; defaults to the straight path (e; 0, 1).
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Parabolic quantum Bruhat graph.
    Qbg {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long = "J", value_delimiter = ',')]
        j: Vec<usize>,
        #[arg(long)]
        dot: bool,
    },
    /// Quantum LS paths of shape λ.
    Qls {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<i64>,
        #[arg(long)]
        enumerate: bool,
        /// Cut denominator; defaults to 2·max⟨γ^∨, λ⟩.
        #[arg(long)]
        den: Option<i64>,
    },
    /// Special elements and root-operator probes of their components.
    Components {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<i64>,
        #[arg(long = "box", default_value_t = 1)]
        boxr: i64,
        #[arg(long)]
        probe_depth: Option<usize>,
    },
    /// Exhaustive verification suites.
    Verify {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "box", default_value_t = 2)]
        boxr: i64,
        #[arg(long, default_value_t = 3)]
        max_delta: i64,
        #[arg(long, default_value_t = 3)]
        lambda_total: i64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        special_box: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WeylOp {
    Decompose,
    Length,
    Silength,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathOp {
    Validate,
    Project,
    CrystalOrbit,
}

enum Failure {
    Usage(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Verification(json!({"passed": false, "error": e.to_string()})),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Out = Result<String, Failure>;

fn system(t: &TypeArgs) -> Result<Arc<AffineSystem>, Failure> {
    Ok(AffineSystem::new(AffineType::parse(&t.ty, t.rank)?)?)
}

fn node_set(sys: &AffineSystem, nodes: &[usize]) -> Result<NodeSet, Failure> {
    let mut j = 0;
    for &i in nodes {
        if i == 0 || i > sys.rank() {
            return Err(Failure::Usage(format!("node {i} is outside 1..={}", sys.rank())));
        }
        j |= 1 << (i - 1);
    }
    Ok(j)
}

fn parse_json(s: &str) -> Result<Value, Failure> {
    let text = match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?,
        None => s.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid JSON: {e}")))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn roots(t: &TypeArgs) -> Out {
    let sys = system(t)?;
    let s = sys.datum().summary();
    let mut v = serde_json::to_value(&s).expect("serializable");
    v["n_positive_roots"] = json!(s.positive_roots.len());
    Ok(pretty(&v))
}

fn weyl(t: &TypeArgs, op: WeylOp, element: &str, j: &[usize]) -> Out {
    let sys = system(t)?;
    let x = parse_element(&sys, &parse_json(element)?)?;
    let v = match op {
        WeylOp::Length => json!({"length": sys.weyl().length(x.w)}),
        WeylOp::Silength => json!({"si_length": sys.si_length(&x)}),
        WeylOp::Decompose => {
            let ctx = Parabolic::new(sys.clone(), node_set(&sys, j)?)?;
            let mut v = element_json(&sys, &x);
            v["length"] = json!(sys.weyl().length(x.w));
            v["si_length"] = json!(sys.si_length(&x));
            v["peterson"] = json!(ctx.is_peterson(&x));
            if let Some((w, xi)) = ctx.decompose(&x) {
                v["w_min"] = json!(sys.finite_word(w));
                v["z"] = json!(sys.finite_word(ctx.z_xi(&xi)?));
                v["adjusted_xi"] = json!(&xi[..sys.rank()]);
            }
            let p = ctx.pi_j(&x)?;
            v["projection"] = element_json(&sys, &p);
            v
        }
    };
    Ok(pretty(&v))
}

fn sibg(t: &TypeArgs, lambda: Option<&[i64]>, j: Option<&[usize]>, boxr: i64, dot: bool) -> Out {
    let sys = system(t)?;
    let j = match (lambda, j) {
        (Some(m), _) => Bookkeeping::new(sys.datum(), m)?.j_lambda(),
        (None, Some(j)) => node_set(&sys, j)?,
        (None, None) => 0,
    };
    let g = SiBruhatGraph::new(Arc::new(Parabolic::new(sys.clone(), j)?));
    let (verts, mut edges) = g.box_subgraph(boxr)?;
    edges.sort_by_key(|e| (e.source, e.target, e.label));
    if dot {
        return Ok(sib_dot(&sys, &verts, &edges));
    }
    let d = sys.datum();
    Ok(pretty(&json!({
        "vertices": verts.iter().map(|x| {
            let mut v = element_json(&sys, x);
            v["si_length"] = json!(sys.si_length(x));
            v
        }).collect::<Vec<_>>(),
        "edges": edges.iter().map(|e| json!({
            "source": element_json(&sys, &e.source),
            "label": root_json(d, &e.label),
            "target": element_json(&sys, &e.target),
        })).collect::<Vec<_>>(),
    })))
}

fn paths(t: &TypeArgs, m: &[i64], op: PathOp, seed: Option<&str>, depth: usize) -> Out {
    let sys = system(t)?;
    let d = sys.datum();
    let book = Bookkeeping::new(d, m)?;
    let lambda = d.level_zero_weight(m)?;
    let g = SiBruhatGraph::new(Arc::new(Parabolic::new(sys.clone(), book.j_lambda())?));
    let eta = match seed {
        Some(s) => parse_sils(&sys, &parse_json(s)?)?,
        None => SilsPath::straight(sys.identity()),
    };
    match op {
        PathOp::Validate => {
            let r = eta.validate(&g, &lambda);
            let v = json!({"valid": r.is_ok(), "reason": r.err().map(|e| e.to_string())});
            Ok(pretty(&v))
        }
        PathOp::Project => {
            eta.validate(&g, &lambda)?;
            Ok(pretty(&ls_json(d, &eta.project(&sys, &lambda))))
        }
        PathOp::CrystalOrbit => {
            eta.validate(&g, &lambda)?;
            let mut seen = std::collections::BTreeSet::from([eta.clone()]);
            let mut layer = vec![eta];
            for _ in 0..depth {
                let mut next = Vec::new();
                for p in &layer {
                    for i in 0..=d.rank() {
                        for op in [Op::E, Op::F] {
                            if let Some(r) = p.apply(&g, &lambda, op, i)? {
                                if seen.insert(r.clone()) {
                                    next.push(r);
                                }
                            }
                        }
                    }
                }
                layer = next;
            }
            let mut out = String::new();
            for p in &seen {
                let mut v = sils_json(&sys, p);
                let wt = p.wt(&sys, &lambda);
                v["wt"] = json!({
                    "dynkin": wt.dynkin[..d.rank()].iter().map(sils::json::q_string).collect::<Vec<_>>(),
                    "delta": sils::json::q_string(&wt.delta),
                });
                out.push_str(&serde_json::to_string(&v).expect("serializable"));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

fn qbg(t: &TypeArgs, j: &[usize], dot: bool) -> Out {
    let sys = system(t)?;
    let ctx = Arc::new(Parabolic::new(sys.clone(), node_set(&sys, j)?)?);
    let q = Qbg::new(ctx.clone());
    let mut edges = q.edges().to_vec();
    edges.sort();
    if dot {
        return Ok(qbg_dot(&ctx, &edges));
    }
    let d = sys.datum();
    Ok(pretty(&json!({
        "vertices": ctx.min_reps().iter().map(|&w| sys.finite_word(w)).collect::<Vec<_>>(),
        "edges": edges.iter().map(|e| json!({
            "source": sys.finite_word(e.source),
            "target": sys.finite_word(e.target),
            "label": &d.root(e.label)[..d.rank()],
            "kind": e.kind,
        })).collect::<Vec<_>>(),
    })))
}

fn qls(t: &TypeArgs, m: &[i64], den: Option<i64>) -> Out {
    let sys = system(t)?;
    let book = Bookkeeping::new(sys.datum(), m)?;
    let lambda = sys.datum().level_zero_weight(m)?;
    let ctx = Arc::new(Parabolic::new(sys.clone(), book.j_lambda())?);
    let den = den.unwrap_or_else(|| qls_denominator(&ctx, &lambda.dynkin));
    if den <= 0 {
        return Err(Failure::Usage("--den must be positive".into()));
    }
    let q = Qbg::new(ctx);
    let mut all = enumerate_qls(&q, &lambda.dynkin, den);
    all.sort();
    Ok(pretty(&json!({
        "denominator": den,
        "count": all.len(),
        "paths": all.iter().map(|p| qls_json(&sys, p)).collect::<Vec<_>>(),
    })))
}

fn components(t: &TypeArgs, m: &[i64], boxr: i64, probe: Option<usize>) -> Out {
    let sys = system(t)?;
    let d = sys.datum();
    let book = Bookkeeping::new(d, m)?;
    let lambda = d.level_zero_weight(m)?;
    let ctx = Arc::new(Parabolic::new(sys.clone(), book.j_lambda())?);
    let g = SiBruhatGraph::new(ctx.clone());
    let mut out = Vec::new();
    for sp in special_elements_in_box(&ctx, &book, boxr) {
        let mut v = translation_path_json(&ctx, &sp)?;
        if let Some(depth) = probe {
            v["probe"] = serde_json::to_value(component_orbit_probe(&g, &lambda, &sp, depth)?).expect("serializable");
        }
        out.push(v);
    }
    Ok(pretty(&json!({
        "lambda": weight_json(d, &lambda),
        "cut_denominator": book.cut_denominator(),
        "special_elements": out,
    })))
}

fn run_verify(t: &TypeArgs, suite: &str, b: Bounds) -> Out {
    let ty = AffineType::parse(&t.ty, t.rank)?;
    let reports = verify::run(suite, ty, &b)?;
    let passed = reports.iter().all(|r| r.passed());
    let v = json!({
        "type": ty.name(),
        "rank": ty.rank,
        "bounds": b,
        "passed": passed,
        "suites": reports,
    });
    if passed {
        Ok(pretty(&v))
    } else {
        Err(Failure::Verification(v))
    }
}

fn dispatch(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Roots { t } => roots(&t),
        Cmd::Weyl { t, op, element, j } => weyl(&t, op, &element, &j),
        Cmd::Sibg { t, lambda, j, boxr, dot } => sibg(&t, lambda.as_deref(), j.as_deref(), boxr, dot),
        Cmd::Paths { t, lambda, op, seed, depth } => paths(&t, &lambda, op, seed.as_deref(), depth),
        Cmd::Qbg { t, j, dot } => qbg(&t, &j, dot),
        Cmd::Qls { t, lambda, enumerate, den } => {
            if !enumerate {
                return Err(Failure::Usage("qls needs --enumerate".into()));
            }
            qls(&t, &lambda, den)
        }
        Cmd::Components { t, lambda, boxr, probe_depth } => components(&t, &lambda, boxr, probe_depth),
        Cmd::Verify { t, suite, boxr, max_delta, lambda_total, depth, special_box } => {
            let b = Bounds { boxr, max_delta, lambda_total, depth, special_box };
            if [boxr, max_delta, lambda_total, special_box].iter().any(|&x| x < 0) {
                return Err(Failure::Usage("bounds must be nonnegative".into()));
            }
            run_verify(&t, &suite, b)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("SILS_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match dispatch(cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(v)) => {
            print!("{}", pretty(&v));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
