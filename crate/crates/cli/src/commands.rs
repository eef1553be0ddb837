//! Subcommand implementations. Each returns the text to print.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use opgb_core::buchberger::{buchberger, normal_form, GroebnerResult, Limits, Presentation};
use opgb_core::division::all_embeddings;
use opgb_core::scm::small_common_multiples;
use opgb_core::symmetrize::orbit_closure;
use opgb_core::{OperadError, OrderingSpec, Signature};
use serde::Serialize;

use crate::format::{format_element, format_presentation, format_result};
use crate::syntax::{parse_element, parse_monomial, parse_presentation, ParseError, PresentationFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Expression(ParseError),
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Options shared by the commands that run the completion.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub ordering: Option<OrderingSpec>,
    pub max_arity: Option<usize>,
    pub max_rounds: Option<usize>,
    pub json: bool,
}

/// Arities reported when no bound is given.
pub const DEFAULT_ARITY: usize = 5;

pub fn load(path: &Path) -> CliResult<PresentationFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_presentation(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn order_for(file: &PresentationFile, opts: &RunOptions) -> OrderingSpec {
    opts.ordering.unwrap_or(file.order())
}

/// The relations handed to the completion: with generator actions present,
/// the symmetric-group orbit of every relation.
pub fn prepare(file: &PresentationFile, order: OrderingSpec) -> CliResult<Presentation> {
    let relations = if file.actions.is_empty() {
        file.relations.clone()
    } else {
        orbit_closure(&file.relations, &file.actions, &file.signature)?
    };
    Ok(Presentation {
        signature: file.signature.clone(),
        relations: relations.iter().map(|r| r.with_order(order)).collect(),
        order,
    })
}

pub fn complete(file: &PresentationFile, opts: &RunOptions) -> CliResult<GroebnerResult> {
    let p = prepare(file, order_for(file, opts))?;
    Ok(buchberger(
        &p,
        Limits {
            max_arity: opts.max_arity,
            max_rounds: opts.max_rounds,
        },
    ))
}

fn dimensions(r: &GroebnerResult, sig: &Signature, up_to: usize) -> Vec<(usize, usize)> {
    if r.exhausted || sig.has_unary() {
        return Vec::new();
    }
    (1..=up_to)
        .map_while(|n| r.dimension(sig.generators(), n).ok().map(|d| (n, d)))
        .collect()
}

#[derive(Serialize)]
struct StatsJson {
    s_polynomials: usize,
    reduced_to_zero: usize,
    skipped: usize,
    rounds: usize,
    exhausted: bool,
}

#[derive(Serialize)]
struct ResultJson {
    ordering: String,
    basis: Vec<String>,
    complete: bool,
    quadratic: bool,
    truncation: Option<usize>,
    dims: BTreeMap<usize, usize>,
    stats: StatsJson,
}

fn result_json(r: &GroebnerResult, sig: &Signature, order: OrderingSpec, dims: &[(usize, usize)]) -> ResultJson {
    ResultJson {
        ordering: order.to_string(),
        basis: r.basis.iter().map(|g| format_element(g, sig)).collect(),
        complete: r.complete,
        quadratic: r.quadratic,
        truncation: r.truncation_arity,
        dims: dims.iter().copied().collect(),
        stats: StatsJson {
            s_polynomials: r.stats.s_polynomials,
            reduced_to_zero: r.stats.reduced_to_zero,
            skipped: r.stats.skipped,
            rounds: r.rounds,
            exhausted: r.exhausted,
        },
    }
}

fn to_json(value: &impl Serialize) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn groebner(file: &PresentationFile, opts: &RunOptions) -> CliResult<String> {
    let order = order_for(file, opts);
    let r = complete(file, opts)?;
    let dims = dimensions(&r, &file.signature, opts.max_arity.unwrap_or(DEFAULT_ARITY));
    if opts.json {
        to_json(&result_json(&r, &file.signature, order, &dims))
    } else {
        Ok(format_result(&r, &file.signature, &file.actions, order, &dims))
    }
}

pub fn dims(file: &PresentationFile, opts: &RunOptions) -> CliResult<String> {
    let n = opts.max_arity.unwrap_or(DEFAULT_ARITY);
    let opts = RunOptions {
        max_arity: Some(n),
        ..*opts
    };
    let r = complete(file, &opts)?;
    let dims: Vec<(usize, usize)> = (1..=n)
        .map(|k| Ok((k, r.dimension(file.signature.generators(), k)?)))
        .collect::<CliResult<_>>()?;
    if opts.json {
        to_json(&result_json(&r, &file.signature, order_for(file, &opts), &dims))
    } else {
        let d: Vec<String> = dims.iter().map(|(_, d)| d.to_string()).collect();
        Ok(d.join(" ") + "\n")
    }
}

pub fn basis(file: &PresentationFile, arity: usize, opts: &RunOptions) -> CliResult<String> {
    let opts = RunOptions {
        max_arity: Some(opts.max_arity.unwrap_or(arity)),
        ..*opts
    };
    let r = complete(file, &opts)?;
    let monomials = r.normal_monomials(file.signature.generators(), arity)?;
    let lines: Vec<String> = monomials.iter().map(|t| t.display(&file.signature).to_string()).collect();
    if opts.json {
        to_json(&lines)
    } else {
        Ok(lines.iter().map(|l| format!("{l}\n")).collect())
    }
}

pub fn reduce(file: &PresentationFile, expr: &str, opts: &RunOptions) -> CliResult<String> {
    let order = order_for(file, opts);
    let f = parse_element(expr, file, order).map_err(CliError::Expression)?;
    let n = f.arity().unwrap_or(1);
    let opts = RunOptions {
        max_arity: Some(opts.max_arity.unwrap_or(n)),
        ..*opts
    };
    let r = complete(file, &opts)?;
    if let Some(t) = r.truncation_arity.filter(|&t| t < n) {
        return Err(OperadError::AboveTruncation {
            requested: n,
            truncation: t,
        }
        .into());
    }
    let nf = format_element(&normal_form(&f, &r.basis), &file.signature);
    if opts.json {
        to_json(&nf)
    } else {
        Ok(nf + "\n")
    }
}

fn signature_of(file: Option<&PresentationFile>) -> Signature {
    file.map(|f| f.signature.clone()).unwrap_or_default()
}

#[derive(Serialize)]
struct ScmJson {
    multiple: String,
    position_a: usize,
    position_b: usize,
}

pub fn scm(a: &str, b: &str, file: Option<&PresentationFile>, json: bool) -> CliResult<String> {
    let mut sig = signature_of(file);
    let alpha = parse_monomial(a, &mut sig).map_err(CliError::Expression)?;
    let beta = parse_monomial(b, &mut sig).map_err(CliError::Expression)?;
    let found = small_common_multiples(&alpha, &beta);
    let rows: Vec<ScmJson> = found
        .iter()
        .map(|s| ScmJson {
            multiple: s.multiple.display(&sig).to_string(),
            position_a: s.emb_a.position(),
            position_b: s.emb_b.position(),
        })
        .collect();
    if json {
        return to_json(&rows);
    }
    let mut out = format!("# {} small common multiples\n", rows.len());
    for r in rows {
        out.push_str(&format!("{}  a@{} b@{}\n", r.multiple, r.position_a, r.position_b));
    }
    Ok(out)
}

#[derive(Serialize)]
struct DivideJson {
    divides: bool,
    positions: Vec<usize>,
}

/// Whether `b` divides `a`, with the vertex positions of every occurrence.
pub fn divide(a: &str, b: &str, file: Option<&PresentationFile>, json: bool) -> CliResult<String> {
    let mut sig = signature_of(file);
    let alpha = parse_monomial(a, &mut sig).map_err(CliError::Expression)?;
    let beta = parse_monomial(b, &mut sig).map_err(CliError::Expression)?;
    let positions: Vec<usize> = all_embeddings(&alpha, &beta).iter().map(|e| e.position()).collect();
    let answer = DivideJson {
        divides: !positions.is_empty(),
        positions,
    };
    if json {
        return to_json(&answer);
    }
    let mut out = format!("{}\n", if answer.divides { "yes" } else { "no" });
    for p in answer.positions {
        out.push_str(&format!("occurrence at vertex {p}\n"));
    }
    Ok(out)
}

/// The presentation with every relation's orbit written out.
pub fn symmetrize(file: &PresentationFile, json: bool) -> CliResult<String> {
    let closed = PresentationFile {
        relations: orbit_closure(&file.relations, &file.actions, &file.signature)?,
        ..file.clone()
    };
    if json {
        let rels: Vec<String> = closed
            .relations
            .iter()
            .map(|r| format_element(r, &closed.signature))
            .collect();
        return to_json(&rels);
    }
    Ok(format_presentation(&closed))
}

pub fn orderings(json: bool) -> CliResult<String> {
    let names: Vec<&str> = OrderingSpec::all().iter().map(|o| o.name()).collect();
    if json {
        return to_json(&names);
    }
    Ok(names.iter().map(|n| format!("{n}\n")).collect())
}
