mod algebra_file;
mod report;

use algebra_file::{AlgebraFile, FileError};
use clap::{Parser, Subcommand, ValueEnum};
use nilext::classify::{self, ClassificationTree, IsoResult, NodeStatus};
use nilext::cohomology::{self, cohomology as h_p, homogeneous_cohomology};
use nilext::extension::{self, verify_extension_theorem};
use nilext::lie::CarnotCheck;
use nilext::orbits::{self, Field, OrbitResult, RigidityOutcome, SearchOptions};
use nilext::{catalog, scalar, Exec, ExteriorForm, LieAlgebra, Matrix, Scalar, Subspace};
use report::Provenance;
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nilext", version, about = "Central extensions and classification of nilpotent Lie algebras")]
struct Cli {
    /// Seed for randomized witness searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Candidate budget for witness searches.
    #[arg(long, global = true, default_value_t = 20_000)]
    budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Real)]
    field: FieldArg,
    /// Worker threads (1 runs sequentially). Not part of the report.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    M25,
    L23,
    Ltilde24,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobi identity, nilpotency and layout checks.
    Check { algebra: Option<String> },
    /// Lower central series.
    Lcs { algebra: Option<String> },
    /// Cohomology with trivial coefficients.
    Cohomology {
        algebra: Option<String>,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        weight: Option<usize>,
    },
    /// Filtration of forms and the filtration-s test for the set.
    Filtration {
        algebra: Option<String>,
        #[arg(long = "form", required = true)]
        forms: Vec<String>,
    },
    /// The dual chain L_0 < L_1 < ... of subspaces of the dual.
    DualChain { algebra: Option<String> },
    /// Central extension by closed 2-forms.
    Extend {
        algebra: Option<String>,
        #[arg(long = "cocycle", required = true)]
        cocycles: Vec<String>,
    },
    /// Split off the last lower-central-series ideal.
    Roundtrip { algebra: Option<String> },
    /// Orbit label of a point in one of the worked models.
    OrbitLabel {
        #[arg(long, value_enum)]
        model: Model,
        /// Comma-separated coordinates, e.g. `1,2,5`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Are two cocycle spans in one automorphism orbit?
    OrbitEquiv {
        algebra: Option<String>,
        #[arg(long = "span1", required = true)]
        span1: Vec<String>,
        #[arg(long = "span2", required = true)]
        span2: Vec<String>,
        /// Graded automorphisms only.
        #[arg(long)]
        graded: bool,
    },
    /// Infinitesimal rigidity of a cocycle span.
    Rigidity {
        algebra: Option<String>,
        #[arg(long = "class", required = true)]
        classes: Vec<String>,
        /// Use degree-0 derivations on H^2 of this weight.
        #[arg(long)]
        weight: Option<usize>,
    },
    /// Type of the quadric t(z-y)^2 + y^2 + yz - x = 0.
    QuadricType {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Naturally graded filiform algebras up to a dimension.
    ClassifyFiliform {
        #[arg(long)]
        max_dim: usize,
    },
    /// Nilpotent algebras of small dimension.
    Classify {
        #[arg(long)]
        max_dim: usize,
    },
    /// Isomorphism test with witness.
    Isomorphic { a: String, b: String },
    /// Print a catalog algebra as an algebra file, or list the names.
    Catalog { name: Option<String> },
}

enum Failure {
    Domain(nilext::Error),
    File { source: String, err: FileError },
    Input(String),
    /// Command-specific failure with details.
    Reported { kind: &'static str, message: String, details: Value },
}

impl From<nilext::Error> for Failure {
    fn from(e: nilext::Error) -> Self {
        Failure::Domain(e)
    }
}

type Out<T> = std::result::Result<T, Failure>;

struct Ctx {
    opts: SearchOptions,
    inputs: Vec<String>,
    summary: String,
}

fn fmt_q(x: &Scalar) -> String {
    scalar::format(x)
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.row_vectors().iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn vectors_json(s: &Subspace) -> Value {
    json!(s.basis_vectors().iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn forms_json(ws: &[ExteriorForm], names: &[String]) -> Value {
    json!(ws.iter().map(|w| w.display(names)).collect::<Vec<_>>())
}

fn algebra_json(g: &LieAlgebra) -> Value {
    serde_json::to_value(AlgebraFile::from_algebra(g)).expect("serializable")
}

fn load(ctx: &mut Ctx, arg: Option<&str>) -> Out<LieAlgebra> {
    let (source, text) = match arg {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            ("<stdin>".to_string(), Some(s))
        }
        Some(p) if std::path::Path::new(p).is_file() => {
            (p.to_string(), Some(std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{p}: {e}")))?))
        }
        Some(name) => (name.to_string(), None),
    };
    let g = match text {
        Some(t) => AlgebraFile::parse(&t).map_err(|err| Failure::File { source, err })?,
        None => catalog::by_name(&source)?,
    };
    ctx.inputs.push(serde_json::to_string(&AlgebraFile::from_algebra(&g)).expect("serializable"));
    Ok(g)
}

fn parse_forms(g: &LieAlgebra, texts: &[String], degree: usize) -> Out<Vec<ExteriorForm>> {
    texts.iter().map(|t| ExteriorForm::parse(t, g.names(), degree).map_err(Failure::Domain)).collect()
}

fn parse_point(text: &str) -> Out<Vec<Scalar>> {
    text.split(',')
        .map(|s| scalar::parse(s.trim()).ok_or_else(|| Failure::Input(format!("bad coordinate `{s}`"))))
        .collect()
}

fn status_json(s: &NodeStatus) -> Value {
    match s {
        NodeStatus::Canonical => json!("canonical"),
        NodeStatus::DeadEnd => json!("dead-end"),
        NodeStatus::DuplicateOf { id, witness } => json!({"duplicate_of": id, "witness": matrix_json(witness)}),
        NodeStatus::Unresolved { against } => json!({"unresolved_against": against}),
    }
}

fn tree_json(t: &ClassificationTree) -> Value {
    let dims: std::collections::BTreeSet<usize> = t.nodes.iter().map(|n| n.algebra.dim()).collect();
    let counts: serde_json::Map<String, Value> =
        dims.iter().map(|&d| (d.to_string(), json!(t.canonical_at(d).len()))).collect();
    let nodes: Vec<Value> = t
        .nodes
        .iter()
        .map(|n| {
            let span = n.parent.map(|p| forms_json(&n.cocycle_span, t.nodes[p].algebra.names()));
            json!({
                "id": n.id,
                "dim": n.algebra.dim(),
                "parent": n.parent,
                "cocycle_span": span,
                "status": status_json(&n.status),
                "nil_index": n.algebra.nil_index(),
                "algebra": algebra_json(&n.algebra),
            })
        })
        .collect();
    json!({"canonical_counts": counts, "nodes": nodes, "sampling": "Grassmannian chart grid; counts are exact only if every duplicate is resolved"})
}

fn iso_json(r: &IsoResult) -> Value {
    match r {
        IsoResult::Yes(w) => json!({"outcome": "yes", "witness": matrix_json(w)}),
        IsoResult::No { invariant, left, right } => {
            json!({"outcome": "no", "invariant": invariant, "left": left, "right": right})
        }
        IsoResult::Undecided => json!({"outcome": "undecided"}),
    }
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Out<Value> {
    let field = ctx.opts.field;
    Ok(match &cli.command {
        Command::Check { algebra } => {
            let g = load(ctx, algebra.as_deref())?;
            let bad = g.check_jacobi();
            if !bad.is_empty() {
                let triples: Vec<[usize; 3]> = bad.iter().map(|&(i, j, k)| [i + 1, j + 1, k + 1]).collect();
                return Err(Failure::Reported {
                    kind: "jacobi",
                    message: format!("Jacobi identity fails on {} triple(s)", triples.len()),
                    details: json!({ "violations": triples }),
                });
            }
            let carnot = match g.is_carnot_layout() {
                Ok(CarnotCheck::Yes) => json!("yes"),
                Ok(CarnotCheck::No(i)) => json!({"no": {"first_missing_weight": i}}),
                Err(e) => json!({"unavailable": e.to_string()}),
            };
            ctx.summary = format!("jacobi ok, nil-index {:?}", g.nil_index());
            json!({
                "jacobi": "ok",
                "nilpotent": g.is_nilpotent(),
                "nil_index": g.nil_index(),
                "filiform": g.is_filiform(),
                "layout_is_grading": g.weights().map(|_| g.layout_is_grading()),
                "carnot": carnot,
            })
        }
        Command::Lcs { algebra } => {
            let g = load(ctx, algebra.as_deref())?;
            let s = g.lower_central_series();
            ctx.summary = format!("LCS dims {:?}", s.iter().map(|x| x.dim()).collect::<Vec<_>>());
            json!({
                "dims": s.iter().map(|x| x.dim()).collect::<Vec<_>>(),
                "terms": s.iter().map(vectors_json).collect::<Vec<_>>(),
                "nil_index": g.nil_index(),
            })
        }
        Command::Cohomology { algebra, degree, weight } => {
            let g = load(ctx, algebra.as_deref())?;
            let h = match weight {
                Some(l) => homogeneous_cohomology(&g, *degree, *l)?,
                None => h_p(&g, *degree)?,
            };
            ctx.summary = format!("dim H^{degree} = {}", h.dim());
            json!({
                "degree": degree,
                "weight": weight,
                "dim": h.dim(),
                "representatives": forms_json(&h.representatives, g.names()),
            })
        }
        Command::Filtration { algebra, forms } => {
            let g = load(ctx, algebra.as_deref())?;
            let ws = parse_forms(&g, forms, 2)?;
            let s = g.nil_index().ok_or(nilext::Error::NotNilpotent)? + 1;
            let each = ws
                .iter()
                .map(|w| Ok(json!({"form": w.display(g.names()), "filtration": cohomology::form_filtration(&g, w)?})))
                .collect::<Out<Vec<_>>>()?;
            let has = cohomology::set_has_filtration_s(&g, &ws, s)?;
            ctx.summary = format!("filtration-{s} set: {has}");
            json!({"forms": each, "s": s, "has_filtration_s": has})
        }
        Command::DualChain { algebra } => {
            let g = load(ctx, algebra.as_deref())?;
            let chain = cohomology::dual_chain_l(&g)?;
            let forms: Vec<Value> = chain
                .iter()
                .map(|l| {
                    let ws: Vec<ExteriorForm> = l.basis_vectors().iter().map(|v| ExteriorForm::from_1form(v)).collect();
                    forms_json(&ws, g.names())
                })
                .collect();
            ctx.summary = format!("dual chain dims {:?}", chain.iter().map(|l| l.dim()).collect::<Vec<_>>());
            json!({"dims": chain.iter().map(|l| l.dim()).collect::<Vec<_>>(), "chain": forms})
        }
        Command::Extend { algebra, cocycles } => {
            let g = load(ctx, algebra.as_deref())?;
            let cs = parse_forms(&g, cocycles, 2)?;
            let ext = extension::central_extension(&extension::ExtensionSpec::new(g.clone(), cs.clone()))?;
            let th = verify_extension_theorem(&g, &cs)?;
            ctx.summary = format!("extension of dim {}, nil-index {:?}", ext.algebra.dim(), ext.algebra.nil_index());
            json!({
                "algebra": algebra_json(&ext.algebra),
                "nil_index": ext.algebra.nil_index(),
                "theorem_check": {
                    "s": th.s,
                    "has_filtration_s": th.has_filtration_s,
                    "nil_index_is_s": th.nil_index_ok,
                    "last_ideal_dim": th.ideal_dim,
                    "consistent": th.consistent,
                },
            })
        }
        Command::Roundtrip { algebra } => {
            let g = load(ctx, algebra.as_deref())?;
            let rt = extension::roundtrip(&g)?;
            ctx.summary = format!("base of dim {} with {} cocycle(s)", rt.base.dim(), rt.cocycles.len());
            json!({
                "base": algebra_json(&rt.base),
                "cocycles": forms_json(&rt.cocycles, rt.base.names()),
                "basis": matrix_json(&rt.basis),
            })
        }
        Command::OrbitLabel { model, point } => {
            let x = parse_point(point)?;
            ctx.inputs.push(point.clone());
            let want = match model {
                Model::M25 | Model::L23 => 3,
                Model::Ltilde24 => 4,
            };
            if x.len() != want {
                return Err(nilext::Error::DimensionMismatch { expected: want, got: x.len() }.into());
            }
            let v = match model {
                Model::M25 => {
                    let l = orbits::m25_normal_form(&[x[0].clone(), x[1].clone(), x[2].clone()], field)?;
                    json!({"label": l.name(), "representative": l.representative().iter().map(fmt_q).collect::<Vec<_>>()})
                }
                Model::L23 => {
                    json!({"label": orbits::l23_orbit_label(&[x[0].clone(), x[1].clone(), x[2].clone()], field).name()})
                }
                Model::Ltilde24 => {
                    let l = orbits::ltilde24_invariant(&[x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()], field)?;
                    let t = match &l {
                        orbits::LTilde24Label::T(t) => Some(fmt_q(t)),
                        _ => None,
                    };
                    json!({"label": l.name(), "t": t})
                }
            };
            ctx.summary = format!("label {}", v["label"]);
            v
        }
        Command::OrbitEquiv { algebra, span1, span2, graded } => {
            let g = load(ctx, algebra.as_deref())?;
            let (s1, s2) = (parse_forms(&g, span1, 2)?, parse_forms(&g, span2, 2)?);
            let r = if *graded {
                orbits::orbit_equivalent_graded(&g, &s1, &s2, &ctx.opts)?
            } else {
                orbits::orbit_equivalent(&g, &s1, &s2, &ctx.opts)?
            };
            let v = match r {
                OrbitResult::Yes(w) => {
                    let lift = orbits::lift_witness(&g, &s1, &s2, &w)?;
                    json!({"outcome": "yes", "phi": matrix_json(&w.phi), "a_psi": matrix_json(&w.a_psi), "extension_isomorphism": matrix_json(&lift)})
                }
                OrbitResult::No { invariant, left, right } => {
                    json!({"outcome": "no", "invariant": invariant, "left": left, "right": right})
                }
                OrbitResult::Undecided { tried } => json!({"outcome": "undecided", "candidates_tried": tried}),
            };
            ctx.summary = format!("orbit test: {}", v["outcome"]);
            json!({"group": if *graded { "graded" } else { "full" }, "result": v})
        }
        Command::Rigidity { algebra, classes, weight } => {
            let g = load(ctx, algebra.as_deref())?;
            let cs = parse_forms(&g, classes, 2)?;
            let r = match weight {
                Some(l) => orbits::orbit_tangent_dimension_graded(&g, &cs, *l)?,
                None => orbits::orbit_tangent_dimension(&g, &cs)?,
            };
            let outcome = match r.outcome {
                RigidityOutcome::OpenOrbitCertified => "open-orbit-certified",
                RigidityOutcome::ModuliDirection => "moduli-direction",
                RigidityOutcome::Inconclusive => "inconclusive",
            };
            ctx.summary = format!("tangent rank {} of {}: {outcome}", r.rank, r.grassmannian_dim);
            json!({"tangent_rank": r.rank, "grassmannian_dim": r.grassmannian_dim, "outcome": outcome})
        }
        Command::QuadricType { t } => {
            let t = scalar::parse(t).ok_or_else(|| Failure::Input(format!("bad rational `{t}`")))?;
            ctx.inputs.push(fmt_q(&t));
            let q = orbits::quadric_type(&t);
            ctx.summary = q.name().to_string();
            json!({"t": fmt_q(&t), "type": q.name()})
        }
        Command::ClassifyFiliform { max_dim } => {
            let t = classify::enumerate_graded_filiform(*max_dim, &ctx.opts)?;
            ctx.summary = format!("{} nodes", t.nodes.len());
            tree_json(&t)
        }
        Command::Classify { max_dim } => {
            let t = classify::classify_nilpotent_small(*max_dim, &ctx.opts)?;
            ctx.summary = format!("{} nodes", t.nodes.len());
            tree_json(&t)
        }
        Command::Isomorphic { a, b } => {
            let g = load(ctx, Some(a))?;
            let h = load(ctx, Some(b))?;
            let r = classify::isomorphic(&g, &h, &ctx.opts)?;
            let v = iso_json(&r);
            ctx.summary = format!("isomorphic: {}", v["outcome"]);
            v
        }
        Command::Catalog { name } => match name {
            Some(n) => {
                let g = catalog::by_name(n)?;
                return Ok(json!({"__raw": algebra_json(&g)}));
            }
            None => json!({"names": catalog::CATALOG_NAMES}),
        },
    })
}

fn command_echo() -> Vec<String> {
    let mut out = Vec::new();
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        if a == "--jobs" {
            args.next();
        } else if !a.starts_with("--jobs=") {
            out.push(a);
        }
    }
    out
}

fn emit_error(v: Value, summary: &str) -> ExitCode {
    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    eprintln!("error: {summary}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = match cli.jobs {
        Some(1) => Exec::Sequential,
        Some(n) => {
            rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().ok();
            Exec::Parallel
        }
        None => Exec::default(),
    };
    let field = match cli.field {
        FieldArg::Real => Field::Real,
        FieldArg::Complex => Field::Complex,
    };
    let opts = SearchOptions { budget: cli.budget, seed: cli.seed, field, exec, ..SearchOptions::default() };
    let mut ctx = Ctx { opts, inputs: Vec::new(), summary: String::new() };
    let prov = Provenance {
        seed: cli.seed,
        budget: cli.budget,
        field: match field {
            Field::Real => "real",
            Field::Complex => "complex",
        },
    };
    match run(&cli, &mut ctx) {
        Ok(v) => {
            if let Some(raw) = v.get("__raw") {
                println!("{}", serde_json::to_string_pretty(raw).expect("json"));
                return ExitCode::SUCCESS;
            }
            let echo = command_echo();
            let mut inputs = echo.clone();
            inputs.extend(ctx.inputs.iter().cloned());
            let rep = report::report(&echo, &inputs, v, &prov);
            println!("{}", serde_json::to_string_pretty(&rep).expect("json"));
            if !ctx.summary.is_empty() {
                eprintln!("{}", ctx.summary);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => emit_error(report::error("domain", &e.to_string(), json!(format!("{e:?}"))), &e.to_string()),
        Err(Failure::File { source, err }) => {
            let details = match &err {
                FileError::Syntax { line, column, .. } => json!({"source": source, "line": line, "column": column}),
                FileError::Field { path, .. } => json!({"source": source, "path": path}),
            };
            emit_error(report::error("malformed-file", &err.to_string(), details), &format!("{source}: {err}"))
        }
        Err(Failure::Input(m)) => emit_error(report::error("input", &m, Value::Null), &m),
        Err(Failure::Reported { kind, message, details }) => emit_error(report::error(kind, &message, details), &message),
    }
}
