//! Deterministic rendering of skein elements: a plain-text form that parses
//! back through the expression grammar, a LaTeX form following the display
//! conventions of the source calculations, and the JSON data schema.
//!
//! Ordering is fixed: eta degree ascending, unit key before threaded keys,
//! threaded keys by primitive then thread degree, coefficients with
//! exponents descending.

use std::cmp::Reverse;

use num_bigint::BigInt;
use num_traits::Signed;
use ptskein_core::{BasisKey, CurveVector, LaurentPoly, SkeinElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// Display convention for the unit: `T0` folds unit-keyed terms into bare
/// scalars (the zero thread has trace 2 and the delta convention already
/// absorbed it); `Tprime` spells them as multiples of `T'(0,0)`, whose
/// zeroth thread is normalized to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Normalization {
    #[value(name = "T0", alias = "t0")]
    T0,
    #[value(name = "Tprime", alias = "tprime")]
    Tprime,
}

pub fn render(e: &SkeinElement, format: Format, norm: Normalization) -> String {
    match format {
        Format::Text => text(e, norm),
        Format::Latex => latex(e, norm),
        Format::Json => serde_json::to_string(e).expect("elements always serialize"),
    }
}

/// Display rank within one eta degree: the unit leads, then threaded keys
/// by primitive descending (the sum curve of a product-to-sum pair prints
/// first) and thread degree ascending.
fn key_rank(k: &BasisKey) -> (u8, Reverse<CurveVector>, u32) {
    match k {
        BasisKey::Unit => (0, Reverse(CurveVector::new(0, 0)), 0),
        BasisKey::Threaded { mu, k } => (1, Reverse(*mu), *k),
    }
}

fn display_order(e: &SkeinElement) -> Vec<(u32, &BasisKey, &LaurentPoly)> {
    let mut terms: Vec<_> = e.terms().collect();
    terms.sort_by(|(d1, k1, _), (d2, k2, _)| d1.cmp(d2).then_with(|| key_rank(k1).cmp(&key_rank(k2))));
    terms
}

/// One monomial c*t^e as display pieces: returns (is_negative, magnitude
/// text factors). A unit magnitude yields no factor of its own; callers
/// fall back to "1" when the whole factor list ends up empty.
fn monomial_pieces(c: &BigInt, e: i64, latex_mode: bool) -> (bool, Vec<String>) {
    let neg = c.is_negative();
    let mag = c.abs();
    let mut parts = Vec::new();
    if mag != BigInt::from(1) {
        parts.push(mag.to_string());
    }
    if e != 0 {
        parts.push(match (e, latex_mode) {
            (1, _) => "t".to_string(),
            (_, false) => format!("t^{e}"),
            (_, true) => format!("t^{{{e}}}"),
        });
    }
    (neg, parts)
}

/// A full Laurent polynomial as an inline sum, exponents descending.
fn laurent_sum(c: &LaurentPoly, latex_mode: bool) -> String {
    let mut out = String::new();
    for (e, coeff) in c.terms().rev() {
        let (neg, parts) = monomial_pieces(coeff, e, latex_mode);
        let glued = if parts.is_empty() {
            "1".to_string()
        } else if latex_mode {
            parts.concat()
        } else {
            parts.join("*")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else if latex_mode {
            out.push(if neg { '-' } else { '+' });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&glued);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn key_text(key: &BasisKey, norm: Normalization, latex_mode: bool) -> Option<String> {
    match key {
        BasisKey::Unit => match norm {
            Normalization::T0 => None,
            Normalization::Tprime => Some("T'(0,0)".to_string()),
        },
        BasisKey::Threaded { .. } => {
            let (p, q) = key.full_vector();
            Some(if latex_mode {
                format!("({p},{q})_T")
            } else {
                format!("({p},{q})")
            })
        }
    }
}

fn text(e: &SkeinElement, norm: Normalization) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (d, key, coeff) in display_order(e) {
        let mut neg = false;
        let mut parts: Vec<String> = Vec::new();
        let terms: Vec<_> = coeff.terms().collect();
        if terms.len() == 1 {
            let (exp, c) = terms[0];
            let (n, ps) = monomial_pieces(c, exp, false);
            neg = n;
            parts.extend(ps);
        } else {
            parts.push(format!("({})", laurent_sum(coeff, false)));
        }
        if let Some(k) = key_text(key, norm, false) {
            parts.push(k);
        }
        match d {
            0 => {}
            1 => parts.push("eta".to_string()),
            _ => parts.push(format!("eta^{d}")),
        }
        if parts.is_empty() {
            parts.push("1".to_string());
        }
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&parts.join("*"));
    }
    out
}

fn latex(e: &SkeinElement, norm: Normalization) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    // Degree-0 terms render individually; each eta degree >= 1 renders as a
    // single bracketed sum times the eta power.
    let ordered = display_order(e);
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let top = e.max_eta_degree().unwrap_or(0);
    for (d, key, coeff) in &ordered {
        if *d > 0 {
            continue;
        }
        chunks.push(latex_term(key, coeff, norm));
    }
    for d in 1..=top {
        let group: Vec<_> = ordered.iter().filter(|(dd, _, _)| *dd == d).collect();
        if group.is_empty() {
            continue;
        }
        let mut inner = String::new();
        for (_, key, coeff) in group {
            let (neg, body) = latex_term(key, coeff, norm);
            if inner.is_empty() {
                if neg {
                    inner.push('-');
                }
            } else {
                inner.push(if neg { '-' } else { '+' });
            }
            inner.push_str(&body);
        }
        let eta = if d == 1 {
            "\\eta".to_string()
        } else {
            format!("\\eta^{{{d}}}")
        };
        let body = if inner == "1" {
            eta
        } else {
            format!("({inner}){eta}")
        };
        chunks.push((false, body));
    }
    let mut out = String::new();
    for (neg, body) in chunks {
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// One key with its coefficient: (leading sign, body without that sign).
fn latex_term(key: &BasisKey, coeff: &LaurentPoly, norm: Normalization) -> (bool, String) {
    let key_part = key_text(key, norm, true);
    let terms: Vec<_> = coeff.terms().collect();
    let (neg, coeff_part) = if terms.len() == 1 {
        let (exp, c) = terms[0];
        let (n, ps) = monomial_pieces(c, exp, true);
        (n, ps.concat())
    } else {
        (false, format!("({})", laurent_sum(coeff, true)))
    };
    match key_part {
        // A bare unit term shows its coefficient alone; multi-term sums stay
        // unbracketed (they only ever stand on their own or inside a group).
        None if terms.len() > 1 => (false, laurent_sum(coeff, true)),
        None => (neg, if coeff_part.is_empty() { "1".into() } else { coeff_part }),
        Some(k) => (neg, format!("{coeff_part}{k}")),
    }
}
