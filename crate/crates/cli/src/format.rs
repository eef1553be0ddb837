//! Text output in the presentation-file syntax.

use std::fmt::Write;

use num_traits::{One, Signed};
use opgb_core::buchberger::GroebnerResult;
use opgb_core::symmetrize::GeneratorAction;
use opgb_core::{Coeff, OperadPolynomial, OrderingSpec, Signature};

use crate::syntax::PresentationFile;

pub fn format_element(f: &OperadPolynomial, sig: &Signature) -> String {
    f.display(sig).to_string()
}

fn format_expansion(terms: &[(Coeff, u32)], sig: &Signature) -> String {
    let mut out = String::new();
    for (i, (c, h)) in terms.iter().enumerate() {
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if !a.is_one() {
            write!(out, "{a}*").unwrap();
        }
        out.push_str(&sig.get(*h).name);
    }
    out
}

fn format_header(sig: &Signature, actions: &GeneratorAction, out: &mut String) {
    for g in sig.generators() {
        writeln!(out, "generator {} {}", g.name, g.arity).unwrap();
    }
    for (g, i, expansion) in actions.entries() {
        writeln!(out, "action {} s{} = {}", sig.get(g).name, i, format_expansion(expansion, sig)).unwrap();
    }
}

pub fn format_presentation(p: &PresentationFile) -> String {
    let mut out = String::new();
    format_header(&p.signature, &p.actions, &mut out);
    for r in &p.relations {
        writeln!(out, "relation {}", format_element(r, &p.signature)).unwrap();
    }
    if let Some(o) = p.ordering {
        writeln!(out, "ordering {o}").unwrap();
    }
    out
}

/// A completed basis as a presentation file, preceded by comment lines with
/// the run's flags, statistics and dimensions.
pub fn format_result(
    r: &GroebnerResult,
    sig: &Signature,
    actions: &GeneratorAction,
    order: OrderingSpec,
    dims: &[(usize, usize)],
) -> String {
    let mut out = String::new();
    writeln!(out, "# complete {}", r.complete).unwrap();
    let pbw = if r.quadratic && r.complete { " (PBW basis; Koszul)" } else { "" };
    writeln!(out, "# quadratic {}{pbw}", r.quadratic).unwrap();
    match r.truncation_arity {
        Some(n) => writeln!(out, "# truncation {n}").unwrap(),
        None => writeln!(out, "# truncation none").unwrap(),
    }
    if r.exhausted {
        writeln!(out, "# round budget exhausted after {} rounds", r.rounds).unwrap();
    } else {
        writeln!(out, "# rounds {}", r.rounds).unwrap();
    }
    writeln!(
        out,
        "# s-polynomials {} (reduced to zero {}, skipped {})",
        r.stats.s_polynomials, r.stats.reduced_to_zero, r.stats.skipped
    )
    .unwrap();
    if !dims.is_empty() {
        let d: Vec<String> = dims.iter().map(|(n, d)| format!("{n}:{d}")).collect();
        writeln!(out, "# dims {}", d.join(" ")).unwrap();
    }
    format_header(sig, actions, &mut out);
    for g in &r.basis {
        writeln!(out, "relation {}", format_element(g, sig)).unwrap();
    }
    writeln!(out, "ordering {order}").unwrap();
    out
}
