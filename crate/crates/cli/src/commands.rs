use std::fs;
use std::path::Path;

use rrg_core::construct::{psi, theta_inverse};
use rrg_core::enumerate::{count_partition_family, count_path_family, count_refined, RefinedKind};
use rrg_core::error::Error;
use rrg_core::family::{Family, FamilySpec};
use rrg_core::identities::{eval_master, eval_series, SeriesId};
use rrg_core::marking::{cluster_decompose, cluster_parity, gordon_mark, Parity};
use rrg_core::moves::phi;
use rrg_core::partition::Partition;
use rrg_core::path::{LatticePath, PathFamily, PathFamilySpec, Step};
use rrg_core::render::{peak_table, render_ascii, render_svg};
use rrg_core::verify::{cmd_verify, IdentityId, VerificationReport};
use serde_json::{json, Value};

use crate::config::{Config, Sweep};
use crate::{BijectArgs, Common, CountArgs, Format, RenderArgs, SeriesArgs, VerifyArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

/// Parameter problems are usage errors; everything else is a bad input.
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameters(_) | Error::ParityPrerequisite(_) | Error::Unknown(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

type Outcome = Result<u8, CliError>;

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values always serialize")
}

fn need_k(common: &Common, cfg: &Config) -> Result<u32, CliError> {
    common.k.or(cfg.k).ok_or_else(|| CliError::Usage("--k is required".into()))
}

fn need_a(common: &Common, cfg: &Config) -> Result<u32, CliError> {
    common.a.or(cfg.a).ok_or_else(|| CliError::Usage("--a is required".into()))
}

pub fn verify(args: VerifyArgs, cfg: &Config) -> Outcome {
    let c = &args.common;
    let flag_bound = args.max_n.or(args.order);
    let sweeps: Vec<Sweep> = match &args.identity {
        Some(id) => vec![Sweep { identity: id.clone(), k: None, a: None, bound: None }],
        None if !cfg.sweep.is_empty() => cfg.sweep.clone(),
        None => return Err(CliError::Usage("--identity is required without config sweeps".into())),
    };
    let mut reports = Vec::new();
    for s in sweeps {
        let id: IdentityId = s.identity.parse()?;
        let k = c.k.or(s.k).or(cfg.k).ok_or_else(|| CliError::Usage("--k is required".into()))?;
        let a = match c.a.or(s.a).or(cfg.a) {
            Some(a) => a,
            None if matches!(id, IdentityId::Thm9 | IdentityId::Thm13) => k,
            None => return Err(CliError::Usage("--a is required".into())),
        };
        let bound = flag_bound.or(s.bound).or(cfg.max_n).or(cfg.order).unwrap_or(20);
        reports.push(cmd_verify(id, k, a, bound)?);
    }
    let text = match c.format.or(cfg.format).unwrap_or(Format::Text) {
        Format::Text => reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"),
        Format::Csv => reports.iter().map(VerificationReport::to_csv).collect::<Vec<_>>().join("\n"),
        Format::Json => {
            let docs: Vec<Value> = reports.iter().map(VerificationReport::to_json).collect();
            pretty(&if docs.len() == 1 { docs[0].clone() } else { Value::Array(docs) })
        }
    };
    emit(&text, c.out.as_deref())?;
    Ok(if reports.iter().all(VerificationReport::passed) { 0 } else { 1 })
}

pub fn count(args: CountArgs, cfg: &Config) -> Outcome {
    let c = &args.common;
    let k = need_k(c, cfg)?;
    let format = c.format.or(cfg.format).unwrap_or(Format::Csv);
    let render = |csv: String, json: Value| match format {
        Format::Json => pretty(&json),
        Format::Csv | Format::Text => csv,
    };
    let text = if let Ok(kind) = args.family.parse::<RefinedKind>() {
        let max_n = args.max_n.or(cfg.max_n).unwrap_or(14);
        let t = count_refined(kind, k, max_n)?;
        render(t.to_csv(), t.to_json())
    } else {
        let a = need_a(c, cfg)?;
        let max_n = args.max_n.or(cfg.max_n).unwrap_or(25);
        let t = if let Ok(f) = args.family.parse::<Family>() {
            count_partition_family(FamilySpec::new(f, k, a)?, max_n)
        } else if let Ok(f) = args.family.parse::<PathFamily>() {
            count_path_family(PathFamilySpec::new(f, k, a)?, max_n)
        } else {
            return Err(CliError::Usage(format!("unknown family {:?}", args.family)));
        };
        let mut json = t.to_json();
        json["version"] = VERSION.into();
        render(t.to_csv(), json)
    };
    emit(&text, c.out.as_deref())?;
    Ok(0)
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

/// Everything the bijection knows about one partition.
fn biject_document(p: &Partition, k: u32, a: u32) -> Result<Value, CliError> {
    let ledger = phi(p, k, a)?;
    let path = psi(&ledger.pis, k, a)?;
    assert_eq!(path.major_index(), p.weight(), "the bijection preserves weight");
    let marking = gordon_mark(p);
    let rows: serde_json::Map<String, Value> =
        marking.rows().into_iter().map(|(r, parts)| (r.to_string(), json!(parts))).collect();
    let clusters: Vec<Value> = cluster_decompose(&marking)?
        .iter()
        .map(|c| json!({ "order": c.order(), "parts": c.values(), "parity": parity_name(cluster_parity(c)) }))
        .collect();
    Ok(json!({
        "version": VERSION,
        "k": k,
        "a": a,
        "partition": p.parts(),
        "weight": p.weight(),
        "marking": rows,
        "clusters": clusters,
        "ledger": {
            "mu": ledger.mu.partition().parts(),
            "mu_weight": ledger.mu.weight(),
            "pis": ledger.pis,
        },
        "path": path,
        "ascii": path.to_ascii(),
        "peaks": path.peaks(),
        "major_index": path.major_index(),
    }))
}

/// A path from a JSON file: either a bare path or a document with a `path`.
fn read_path(file: &Path) -> Result<(LatticePath, Value), CliError> {
    let text = fs::read_to_string(file)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", file.display())))?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let raw = doc.get("path").cloned().unwrap_or_else(|| doc.clone());
    let path: LatticePath =
        serde_json::from_value(raw).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    path.validate()?;
    Ok((path, doc))
}

pub fn biject(args: BijectArgs, cfg: &Config) -> Outcome {
    let c = &args.common;
    let doc = if args.inverse {
        let file = args.path.as_deref().ok_or_else(|| CliError::Usage("--inverse needs --path".into()))?;
        let (path, input) = read_path(file)?;
        let from_doc = |key: &str| input.get(key).and_then(Value::as_u64).map(|v| v as u32);
        let k = c.k.or(from_doc("k")).or(cfg.k).ok_or_else(|| CliError::Usage("--k is required".into()))?;
        let a = c.a.or(from_doc("a")).or(cfg.a).ok_or_else(|| CliError::Usage("--a is required".into()))?;
        if !path.satisfies_conditions(k, a) {
            return Err(CliError::Input(format!("path {path} violates the ({k},{a})-conditions")));
        }
        let p = theta_inverse(&path, k, a)?;
        let doc = biject_document(&p, k, a)?;
        assert_eq!(doc["path"], json!(path), "the inverse image maps back to the input path");
        doc
    } else {
        let text = args
            .partition
            .as_deref()
            .ok_or_else(|| CliError::Usage("give --partition, or --path with --inverse".into()))?;
        let p: Partition = text.parse()?;
        biject_document(&p, need_k(c, cfg)?, need_a(c, cfg)?)?
    };
    emit(&pretty(&doc), c.out.as_deref())?;
    Ok(0)
}

pub fn series(args: SeriesArgs, cfg: &Config) -> Outcome {
    let c = &args.common;
    let id: SeriesId = args.expr.parse()?;
    let k = need_k(c, cfg)?;
    let order = args.order.or(cfg.order).unwrap_or(20);
    let format = c.format.or(cfg.format).unwrap_or(Format::Json);
    let text = if id == SeriesId::Master {
        let s = eval_master(k, order)?;
        match format {
            Format::Csv => {
                let mut w = String::from("l,m,n,coeff\n");
                for ((l, m, n), v) in s.entries() {
                    w.push_str(&format!("{l},{m},{n},{v}\n"));
                }
                w
            }
            _ => serde_json::to_string(&s).expect("series serialize"),
        }
    } else {
        let s = eval_series(id, k, need_a(c, cfg)?, order)?;
        match format {
            Format::Text => s.to_string(),
            Format::Csv => {
                let mut w = String::from("n,coeff\n");
                for (n, v) in s.coeffs().iter().enumerate() {
                    w.push_str(&format!("{n},{v}\n"));
                }
                w
            }
            Format::Json => serde_json::to_string(&s).expect("series serialize"),
        }
    };
    emit(&text, c.out.as_deref())?;
    Ok(0)
}

/// Steps written as comma-separated names (`NE,SE,E`) or as symbols (`/\_`).
fn parse_steps(text: &str) -> Result<Vec<Step>, CliError> {
    let t = text.trim();
    let tokens: Vec<String> = if t.contains(',') || t.chars().any(char::is_alphabetic) {
        t.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
    } else {
        t.chars().filter(|c| !c.is_whitespace()).map(String::from).collect()
    };
    tokens.iter().map(|s| s.parse::<Step>().map_err(|_| CliError::Input(format!("bad step {s:?}")))).collect()
}

pub fn render(args: RenderArgs, _cfg: &Config) -> Outcome {
    let path = match (&args.steps, &args.path) {
        (Some(s), _) => LatticePath::new(args.start, parse_steps(s)?)?,
        (None, Some(file)) => read_path(file)?.0,
        (None, None) => return Err(CliError::Usage("give --steps or --path".into())),
    };
    let text = match args.style.to_ascii_lowercase().as_str() {
        "ascii" if args.annotate => format!("{}\n{}", render_ascii(&path), peak_table(&path)),
        "ascii" => render_ascii(&path),
        "svg" => render_svg(&path),
        other => return Err(CliError::Usage(format!("unknown style {other:?}; use ascii or svg"))),
    };
    emit(&text, args.common.out.as_deref())?;
    Ok(0)
}
