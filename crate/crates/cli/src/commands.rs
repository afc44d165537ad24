use std::fmt::Write as _;
use std::io::Read;

use projcert::cartan::{self, attracting_point, repelling_hyperplane};
use projcert::contraction::{
    certify_by_ratio, epsilon_star, oracle_check, verify_proof_chain, ChainStatus,
    ContractionCertificate, ContractionQuery, ProofChainReport, Verdict, WitnessPair,
};
use projcert::io::{parse_matrix, parse_vector};
use projcert::liealg::{
    abelianization_obstruction, generated_subalgebra, min_generators_bound, AlgebraElement,
    LieAlgebra,
};
use projcert::padic::DEFAULT_PRECISION;
use projcert::torus::{
    closure, generator_bound, numeric_density_probe, reduce_generators, Basis, ClosureData,
    GeneratorSet, NON_ABELIAN_EXAMPLES,
};
use projcert::{Error, FieldDescriptor, FieldKind, Matrix, ProjHyperplane, ProjPoint, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{Outcome, Table};
use crate::{
    AlgebraArgs, BoundArgs, Command, ContractArgs, ContractCommand, GeneratesArgs, LieCommand,
    MatrixArgs, MingenArgs, ProbeArgs, TorusArgs, TorusCommand,
};

pub const PRECISION_ENV: &str = "PROJCERT_PADIC_PRECISION";

pub fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Cartan(args) => cartan_cmd(&args),
        Command::Contract(ContractCommand::Certify(args)) => contract(&args, Mode::Certify),
        Command::Contract(ContractCommand::Oracle(args)) => contract(&args, Mode::Oracle),
        Command::Contract(ContractCommand::Proofchain(args)) => contract(&args, Mode::ProofChain),
        Command::Contract(ContractCommand::EpsilonStar(args)) => {
            let g = load_matrix(&args.matrix)?;
            let star = epsilon_star(&g, args.samples, args.seed)?;
            let text = format!(
                "closed form sqrt(r/(1+r)): {}\nbisection over oracle:     {}\nagree within 1e-4: {}\nepsilon*: {}\n",
                star.closed_form, star.bisection, star.agrees, star.value
            );
            Ok(Outcome {
                exit: 0,
                json: to_json(&star),
                text,
                table: None,
            })
        }
        Command::Torus(cmd) => torus(cmd),
        Command::Liealg(LieCommand::Generates(args)) => generates_cmd(&args),
        Command::Liealg(LieCommand::Mingen(args)) => mingen_cmd(&args),
        Command::Bound(args) => bound_cmd(&args),
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// The serde name of a unit enum variant.
fn tag<T: Serialize>(x: &T) -> String {
    to_json(x).as_str().unwrap_or_default().to_string()
}

pub fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn default_precision() -> Result<u32> {
    match std::env::var(PRECISION_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{PRECISION_ENV}={s:?} is not a digit count"))),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

/// Flag, then the document's `field` key, then ℝ. A p-adic precision comes
/// from `--precision`, an explicit `padic:p:N`, the environment, then 16.
fn resolve_field(args: &MatrixArgs, text: &str) -> Result<FieldDescriptor> {
    let declared = serde_json::from_str::<Value>(text)
        .ok()
        .and_then(|v| v.get("field").and_then(Value::as_str).map(str::to_string));
    let spec = args.field.clone().or(declared).unwrap_or_else(|| "real".into());
    let field: FieldDescriptor = spec.parse()?;
    if field.kind() != FieldKind::Padic {
        return Ok(field);
    }
    let explicit = spec.split(':').nth(2).is_some();
    let n = match args.precision {
        Some(n) => n,
        None if explicit => field.precision(),
        None => default_precision()?,
    };
    FieldDescriptor::padic(field.prime().expect("p-adic field has a prime"), n)
}

fn load_matrix(args: &MatrixArgs) -> Result<Matrix> {
    let text = read_input(&args.input)?;
    let field = resolve_field(args, &text)?;
    parse_matrix(&text, Some(field))
}

fn load_pair(path: &str, field: FieldDescriptor) -> Result<WitnessPair> {
    let doc: Value = serde_json::from_str(&read_input(path)?)?;
    let part = |key: &str| -> Result<_> {
        let v = doc
            .get(key)
            .ok_or_else(|| Error::InvalidArgument(format!("pair file lacks \"{key}\"")))?;
        parse_vector(&v.to_string(), Some(field))
    };
    Ok(WitnessPair {
        hyperplane: ProjHyperplane::new(part("hyperplane")?)?,
        point: ProjPoint::new(part("point")?)?,
    })
}

fn cartan_cmd(args: &MatrixArgs) -> Result<Outcome> {
    let g = load_matrix(args)?;
    let d = cartan::decompose(&g)?;
    let ratio = if g.n() >= 2 { Some(d.ratio()?.value()) } else { None };
    let mut json = to_json(&d);
    json["ratio"] = json!(ratio);
    json["attracting_point"] = to_json(&attracting_point(&d));
    json["repelling_hyperplane"] = to_json(&repelling_hyperplane(&d));
    let mut text = format!("field: {}\nprofile:", d.field);
    for a in &d.profile {
        write!(text, " {a}").unwrap();
    }
    text.push('\n');
    if let Some(v) = &d.valuations {
        writeln!(text, "valuations: {v:?}").unwrap();
    }
    if let Some(r) = ratio {
        writeln!(text, "ratio |a2/a1|: {r}").unwrap();
    }
    Ok(Outcome {
        exit: 0,
        json,
        text,
        table: None,
    })
}

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Certify,
    Oracle,
    ProofChain,
}

fn verdict_exit(v: Verdict) -> u8 {
    match v {
        Verdict::CertifiedContracting | Verdict::OracleVerified => 0,
        Verdict::CertifiedNotContracting | Verdict::OracleRefuted => 1,
        Verdict::Inconclusive => 2,
    }
}

fn chain_exit(s: ChainStatus) -> u8 {
    match s {
        ChainStatus::Verified => 0,
        ChainStatus::ChainBroken | ChainStatus::HypothesesNotSatisfied => 1,
        ChainStatus::ReduceViaCartanFirst => 2,
    }
}

/// Across a sweep: any negative verdict wins, then any inconclusive one.
fn combine_exits(codes: &[u8]) -> u8 {
    if codes.contains(&1) {
        1
    } else if codes.contains(&2) {
        2
    } else {
        0
    }
}

fn opt(x: Option<impl ToString>) -> String {
    x.map(|x| x.to_string()).unwrap_or_default()
}

fn certificate_text(c: &ContractionCertificate) -> String {
    let mut t = format!(
        "verdict: {}\nfield: {}\nepsilon: {}\nratio |a2/a1|: {}\nforward threshold: {}\nconverse threshold: {}\nbound used: {}\n",
        tag(&c.verdict),
        c.field,
        c.epsilon,
        c.ratio,
        c.thresholds.forward,
        c.thresholds.converse,
        tag(&c.bound_used)
    );
    if let Some(w) = c.worst_image_distance {
        writeln!(t, "worst image distance: {w}").unwrap();
    }
    if let Some(n) = c.samples_checked {
        writeln!(t, "samples checked: {n}").unwrap();
    }
    t
}

fn chain_text(r: &ProofChainReport) -> String {
    let mut t = format!("status: {}\nepsilon: {}\n", tag(&r.status), r.epsilon);
    if let Some(ratio) = r.ratio {
        writeln!(t, "ratio |a2/a1|: {ratio}").unwrap();
    }
    for c in r.checks.iter().chain(r.conclusion.as_ref()) {
        writeln!(
            t,
            "{} {:<42} margin {:+.6e}",
            if c.holds { "ok  " } else { "FAIL" },
            c.name,
            c.margin
        )
        .unwrap();
    }
    if let Some(m) = &r.message {
        writeln!(t, "{m}").unwrap();
    }
    t
}

fn contract(args: &ContractArgs, mode: Mode) -> Result<Outcome> {
    let g = load_matrix(&args.matrix)?;
    let pair = args
        .pair
        .as_deref()
        .map(|p| load_pair(p, g.field()))
        .transpose()?;
    if mode == Mode::Certify && pair.is_some() {
        return Err(Error::InvalidArgument(
            "certify always uses the canonical pair; use oracle or proofchain with --pair".into(),
        ));
    }
    let mut codes = Vec::new();
    let mut jsons = Vec::new();
    let mut texts = Vec::new();
    let mut rows = Vec::new();
    for &eps in &args.epsilon {
        match mode {
            Mode::Certify | Mode::Oracle => {
                let mut q = ContractionQuery::new(g.clone(), eps)?;
                if let Some(p) = &pair {
                    q = q.with_pair(p.clone())?;
                }
                let c = if mode == Mode::Certify {
                    certify_by_ratio(&q)?
                } else {
                    oracle_check(&q, args.samples, args.seed)?
                };
                codes.push(verdict_exit(c.verdict));
                rows.push(vec![
                    eps.to_string(),
                    tag(&c.verdict),
                    c.ratio.to_string(),
                    c.thresholds.forward.to_string(),
                    c.thresholds.converse.to_string(),
                    tag(&c.bound_used),
                    opt(c.worst_image_distance),
                    opt(c.samples_checked),
                ]);
                texts.push(certificate_text(&c));
                jsons.push(to_json(&c));
            }
            Mode::ProofChain => {
                let r = verify_proof_chain(&g, eps, pair.clone(), args.samples, args.seed)?;
                codes.push(chain_exit(r.status));
                let margin = r.min_margin();
                rows.push(vec![
                    eps.to_string(),
                    tag(&r.status),
                    opt(r.ratio),
                    if margin.is_finite() { margin.to_string() } else { String::new() },
                    opt(r.conclusion.as_ref().map(|c| c.holds)),
                ]);
                texts.push(chain_text(&r));
                jsons.push(to_json(&r));
            }
        }
    }
    let headers = match mode {
        Mode::ProofChain => vec!["epsilon", "status", "ratio", "min_margin", "conclusion_holds"],
        _ => vec![
            "epsilon",
            "verdict",
            "ratio",
            "forward_threshold",
            "converse_threshold",
            "bound_used",
            "worst_image_distance",
            "samples_checked",
        ],
    };
    let json = if jsons.len() == 1 {
        jsons.pop().expect("one report")
    } else {
        Value::Array(jsons)
    };
    Ok(Outcome {
        exit: combine_exits(&codes),
        json,
        text: texts.join("\n"),
        table: Some(Table { headers, rows }),
    })
}

fn load_generators(args: &TorusArgs) -> Result<GeneratorSet> {
    let text = read_input(&args.input)?;
    let basis = args.basis.as_deref().map(Basis::parse).transpose()?;
    GeneratorSet::from_json(&text, basis)
}

fn closure_text(c: &ClosureData) -> String {
    let mut t = format!(
        "closure dimension: {}\ncomponents: {}\nconnected: {}\ndense: {}\ncharacter lattice rank: {}\n",
        c.dimension, c.component_count, c.connected, c.dense, c.kernel_rank
    );
    for row in &c.kernel_lattice {
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(t, "  ({})", row.join(", ")).unwrap();
    }
    t
}

fn torus(cmd: TorusCommand) -> Result<Outcome> {
    match cmd {
        TorusCommand::Closure(args) => {
            let c = closure(&load_generators(&args)?);
            Ok(Outcome {
                exit: 0,
                text: closure_text(&c),
                json: to_json(&c),
                table: None,
            })
        }
        TorusCommand::Dense(args) => {
            let c = closure(&load_generators(&args)?);
            Ok(Outcome {
                exit: if c.dense { 0 } else { 1 },
                text: closure_text(&c),
                json: json!({ "dense": c.dense, "closure": to_json(&c) }),
                table: None,
            })
        }
        TorusCommand::Reduce(args) => {
            let set = load_generators(&args)?;
            let c = closure(&set);
            if !c.dense {
                return Ok(Outcome {
                    exit: 1,
                    text: format!("not dense; nothing to reduce\n{}", closure_text(&c)),
                    json: json!({ "dense": false, "closure": to_json(&c) }),
                    table: None,
                });
            }
            let r = reduce_generators(&set)?;
            let mut text = format!(
                "{} generators reduced to {} in dimension {}\n",
                set.generators().len(),
                r.generators.len(),
                r.dimension
            );
            for (g, w) in r.generators.iter().zip(&r.words) {
                let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                writeln!(text, "  {}  = word ({})", g.display(&r.basis), w.join(", ")).unwrap();
            }
            writeln!(text, "dense (re-verified): {}", r.dense).unwrap();
            Ok(Outcome {
                exit: if r.dense { 0 } else { 1 },
                text,
                json: to_json(&r),
                table: None,
            })
        }
        TorusCommand::Probe(ProbeArgs {
            torus,
            word_length,
            mesh,
        }) => {
            let r = numeric_density_probe(&load_generators(&torus)?, word_length, mesh)?;
            let mut json = to_json(&r);
            json["word_length"] = json!(word_length);
            json["mesh"] = json!(mesh);
            Ok(Outcome {
                exit: if r.cells_hit == r.cells_total { 0 } else { 1 },
                text: format!(
                    "coverage: {} ({} of {} cells, {} words)\n",
                    r.coverage, r.cells_hit, r.cells_total, r.words
                ),
                json,
                table: None,
            })
        }
    }
}

fn load_algebra(args: &AlgebraArgs) -> Result<LieAlgebra> {
    let spec = args.algebra.trim();
    if spec.ends_with(".json") || std::path::Path::new(spec).is_file() {
        LieAlgebra::from_json(&read_input(spec)?)
    } else {
        LieAlgebra::parse(spec)
    }
}

fn generates_cmd(args: &GeneratesArgs) -> Result<Outcome> {
    let l = load_algebra(&args.algebra)?;
    let mut elements: Vec<AlgebraElement> = Vec::new();
    if let Some(path) = &args.elements {
        let doc: Value = serde_json::from_str(&read_input(path)?)?;
        let items = match &doc {
            Value::Array(items) => items,
            Value::Object(map) => map
                .get("elements")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidArgument("expected {\"elements\": [...]}".into()))?,
            _ => return Err(Error::InvalidArgument("expected an array of elements".into())),
        };
        for (i, v) in items.iter().enumerate() {
            elements.push(l.parse_element(v).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse {
                    message,
                    location: projcert::error::Location {
                        field: Some(format!("elements[{i}]")),
                        ..Default::default()
                    },
                },
                e => e,
            })?);
        }
    }
    for s in &args.element {
        elements.push(l.parse_expression(s)?);
    }
    let sub = generated_subalgebra(&l, &elements)?;
    let generates = sub.len() == l.dim();
    let ob = abelianization_obstruction(&l, &elements)?;
    let shown: Vec<String> = elements.iter().map(|x| l.display(x).to_string()).collect();
    let mut text = format!(
        "algebra: {} (dimension {}, basis {})\nelements: {}\ngenerated subalgebra dimension: {}\ngenerates: {}\n",
        l.name(),
        l.dim(),
        l.names().join(","),
        shown.join("; "),
        sub.len(),
        generates
    );
    writeln!(
        text,
        "abelianization: dimension {}, image rank {}{}",
        ob.abelianization_dim,
        ob.image_rank,
        if ob.obstructs_all_sets_of_this_size {
            format!("; no {} elements can generate", ob.size)
        } else if ob.obstructs {
            "; these elements cannot generate".to_string()
        } else {
            String::new()
        }
    )
    .unwrap();
    Ok(Outcome {
        exit: if generates { 0 } else { 1 },
        json: json!({
            "algebra": l.name(),
            "dimension": l.dim(),
            "basis": l.names(),
            "elements": elements,
            "elements_display": shown,
            "generates": generates,
            "generated_dimension": sub.len(),
            "generated_basis": sub,
            "abelianization_obstruction": ob,
        }),
        text,
        table: None,
    })
}

fn mingen_cmd(args: &MingenArgs) -> Result<Outcome> {
    let l = load_algebra(&args.algebra)?;
    let m = min_generators_bound(&l, args.trials, args.seed)?;
    let text = format!(
        "algebra: {} (dimension {})\nminimal generators: {}\nlower bound {}: {}\nupper bound {}: {}\n",
        m.algebra,
        m.dim,
        if m.exact { m.lower.to_string() } else { format!("between {} and {}", m.lower, m.upper) },
        m.lower,
        m.lower_reason,
        m.upper,
        m.witness_display.join("; ")
    );
    Ok(Outcome {
        exit: if m.exact { 0 } else { 2 },
        json: to_json(&m),
        text,
        table: None,
    })
}

fn bound_cmd(args: &BoundArgs) -> Result<Outcome> {
    if args.examples {
        let mut rows = Vec::new();
        let mut list = Vec::new();
        let mut text = String::new();
        for ex in NON_ABELIAN_EXAMPLES {
            let b = ex.bound()?;
            rows.push(vec![
                ex.name.to_string(),
                ex.dim.to_string(),
                ex.d1.to_string(),
                ex.metabelian_quotient_dim.to_string(),
                ex.t.to_string(),
                b.refined.to_string(),
                b.headline.to_string(),
                b.twice_dim.to_string(),
            ]);
            writeln!(
                text,
                "{:<28} dim {} d1 {} meta {} t {}: refined {} headline {} 2dim {}",
                ex.name, ex.dim, ex.d1, ex.metabelian_quotient_dim, ex.t, b.refined, b.headline, b.twice_dim
            )
            .unwrap();
            let mut j = to_json(ex);
            j["bound"] = to_json(&b);
            list.push(j);
        }
        return Ok(Outcome {
            exit: 0,
            json: Value::Array(list),
            text,
            table: Some(Table {
                headers: vec!["name", "dim", "d1", "meta", "t", "refined", "headline", "twice_dim"],
                rows,
            }),
        });
    }
    let (dim, d1, meta) = match (args.dim, args.d1, args.meta) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return Err(Error::InvalidArgument("--dim, --d1 and --meta are required".into())),
    };
    let b = generator_bound(dim, d1, meta, args.t)?;
    let mut json = to_json(&b);
    for (k, v) in [("dim", dim), ("d1", d1), ("meta", meta), ("t", args.t)] {
        json[k] = json!(v);
    }
    Ok(Outcome {
        exit: 0,
        json,
        text: format!(
            "{}\nrefined dim(G/G2)+d1+t = {}, headline dim G+d1 = {}, 2 dim G = {}\n",
            b.refined, b.refined, b.headline, b.twice_dim
        ),
        table: None,
    })
}
