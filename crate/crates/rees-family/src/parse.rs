//! Text-format parsers for the CLI and test tooling: semigroups, relative
//! ideals, series literals, ring scalars, family elements, and key=value
//! config text.
//!
//! All parsers are total: they never panic on any byte sequence, cap input
//! sizes, and produce errors naming what went wrong. Display output of
//! every parsed value re-parses to an equal value.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::base::{BaseRing, FamilyError, Scalar};
use crate::family::{FamilyContext, FamilyElement};
use crate::semigroup::{NumericalSemigroup, RelativeIdeal, SemigroupError};
use crate::series::{FieldKind, SeriesError, TruncatedSeries};

/// Longest accepted input text, in bytes.
pub const MAX_INPUT_LEN: usize = 1 << 16;
/// Most list entries (generators, terms) accepted from one literal.
pub const MAX_LIST_LEN: usize = 1 << 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("value error: {0}")]
    Value(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Strips whitespace and enforces the length cap.
fn clean(text: &str) -> Result<String, ParseError> {
    if text.len() > MAX_INPUT_LEN {
        return Err(ParseError::Syntax(format!(
            "input longer than {MAX_INPUT_LEN} bytes"
        )));
    }
    Ok(text.chars().filter(|c| !c.is_whitespace()).collect())
}

fn parse_u64(text: &str) -> Result<u64, ParseError> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::Syntax(format!(
            "expected an unsigned integer, got {text:?}"
        )));
    }
    text.parse::<u64>()
        .map_err(|_| ParseError::Value(format!("integer {text} out of range")))
}

fn parse_i64(text: &str) -> Result<i64, ParseError> {
    let body = text.strip_prefix('-').unwrap_or(text);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::Syntax(format!(
            "expected an integer, got {text:?}"
        )));
    }
    text.parse::<i64>()
        .map_err(|_| ParseError::Value(format!("integer {text} out of range")))
}

fn split_list(text: &str) -> Result<Vec<&str>, ParseError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() > MAX_LIST_LEN {
        return Err(ParseError::Syntax(format!(
            "more than {MAX_LIST_LEN} list entries"
        )));
    }
    Ok(parts)
}

/// Semigroup literal `<4,6,11>`.
pub fn parse_semigroup(text: &str) -> Result<NumericalSemigroup, ParseError> {
    let text = clean(text)?;
    let inner = text
        .strip_prefix('<')
        .and_then(|t| t.strip_suffix('>'))
        .ok_or_else(|| {
            ParseError::Syntax("semigroup literal must look like <4,6,11>".into())
        })?;
    let gens = split_list(inner)?
        .into_iter()
        .map(parse_u64)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NumericalSemigroup::from_generators(&gens)?)
}

/// Ideal literal `ideal(3;2,3)`: generators 3 over the ambient ⟨2,3⟩.
pub fn parse_ideal(text: &str) -> Result<RelativeIdeal, ParseError> {
    let text = clean(text)?;
    let inner = text
        .strip_prefix("ideal(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| {
            ParseError::Syntax("ideal literal must look like ideal(3;2,3)".into())
        })?;
    let (gen_part, ambient_part) = inner.split_once(';').ok_or_else(|| {
        ParseError::Syntax("ideal literal needs a ';' between generators and ambient".into())
    })?;
    let ambient_gens = split_list(ambient_part)?
        .into_iter()
        .map(parse_u64)
        .collect::<Result<Vec<_>, _>>()?;
    let ambient = NumericalSemigroup::from_generators(&ambient_gens)?;
    let gens = split_list(gen_part)?
        .into_iter()
        .map(parse_i64)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RelativeIdeal::from_generators(&ambient, &gens)?)
}

/// One coefficient: `3`, `-3`, or `3/2` (rationals only for the slash form
/// over prime fields the slash means field division).
fn parse_coeff(field: FieldKind, text: &str) -> Result<crate::series::Coeff, ParseError> {
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num = parse_i64(num_text)?;
    match den_text {
        None => Ok(field.from_i64(num)),
        Some(d) => {
            let den = parse_i64(d)?;
            Ok(field.ratio(num, den)?)
        }
    }
}

/// Series literal `X^2+3*X^5`, also accepting `-X`, `1/2*X^3`, constants.
pub fn parse_series(
    field: FieldKind,
    precision: u64,
    text: &str,
) -> Result<TruncatedSeries, ParseError> {
    let text = clean(text)?;
    if text.is_empty() {
        return Err(ParseError::Syntax("empty series literal".into()));
    }
    // split into signed terms; '+'/'-' inside a term never occurs
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (k, c) in text.chars().enumerate() {
        if (c == '+' || c == '-') && k > 0 {
            if current.is_empty() {
                return Err(ParseError::Syntax("empty term in series literal".into()));
            }
            terms.push((negative, std::mem::take(&mut current)));
            negative = c == '-';
        } else if c == '-' {
            negative = true;
        } else {
            current.push(c);
        }
    }
    if current.is_empty() {
        return Err(ParseError::Syntax("series literal ends mid-term".into()));
    }
    terms.push((negative, current));
    if terms.len() > MAX_LIST_LEN {
        return Err(ParseError::Syntax(format!(
            "more than {MAX_LIST_LEN} series terms"
        )));
    }

    let mut parsed: Vec<(u64, crate::series::Coeff)> = Vec::new();
    for (neg, term) in terms {
        let (coeff_text, exp) = match term.find('X') {
            None => (term.as_str(), None),
            Some(0) => ("", Some(parse_exponent(&term)?)),
            Some(k) => {
                let (c, mono) = term.split_at(k);
                let c = c.strip_suffix('*').ok_or_else(|| {
                    ParseError::Syntax(format!(
                        "coefficient and monomial must be joined by '*', got {term:?}"
                    ))
                })?;
                (c, Some(parse_exponent(mono)?))
            }
        };
        let coeff = if coeff_text.is_empty() {
            field.one()
        } else {
            parse_coeff(field, coeff_text)?
        };
        let coeff = if neg { field.neg(&coeff) } else { coeff };
        parsed.push((exp.unwrap_or(0), coeff));
    }
    Ok(TruncatedSeries::from_terms(field, parsed, precision))
}

/// `X` or `X^n`.
fn parse_exponent(mono: &str) -> Result<u64, ParseError> {
    let rest = mono.strip_prefix('X').ok_or_else(|| {
        ParseError::Syntax(format!("expected a monomial in X, got {mono:?}"))
    })?;
    if rest.is_empty() {
        return Ok(1);
    }
    let digits = rest.strip_prefix('^').ok_or_else(|| {
        ParseError::Syntax(format!("expected X^n, got {mono:?}"))
    })?;
    parse_u64(digits)
}

/// A scalar literal in the given base ring.
pub fn parse_scalar(base: &BaseRing, text: &str) -> Result<Scalar, ParseError> {
    let text = clean(text)?;
    match base {
        BaseRing::Integers => {
            let body = text.strip_prefix('-').unwrap_or(&text);
            if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseError::Syntax(format!(
                    "expected an integer, got {text:?}"
                )));
            }
            let v = BigInt::parse_bytes(text.as_bytes(), 10)
                .ok_or_else(|| ParseError::Value(format!("bad integer {text:?}")))?;
            Ok(Scalar::Int(v))
        }
        BaseRing::Modular { .. } => Ok(base.from_i64(parse_i64(&text)?)),
        BaseRing::Series(ring) => Ok(Scalar::Series(parse_series(
            ring.field,
            ring.precision,
            &text,
        )?)),
    }
}

/// Splits off a surrounding balanced `( ... )` if present.
fn strip_parens(text: &str) -> Option<&str> {
    let inner = text.strip_prefix('(')?.strip_suffix(')')?;
    // the trailing ')' must close the leading '(' and not an inner one
    let mut depth = 0i32;
    for c in inner.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    (depth == 0).then_some(inner)
}

/// Family element literal: `3+2t`, `3-2t`, `2t`, `7`, `(X^2+X^3)+(X^5)t`,
/// `X^2+X^3+X^5t`. The t-coefficient is everything after the last top-level
/// sign; parenthesize it when it has several terms.
pub fn parse_element(
    ctx: &Arc<FamilyContext>,
    text: &str,
) -> Result<FamilyElement, ParseError> {
    let text = clean(text)?;
    if text.is_empty() {
        return Err(ParseError::Syntax("empty element literal".into()));
    }
    let base = ctx.base();
    let Some(body) = text.strip_suffix('t') else {
        if text.contains('t') {
            return Err(ParseError::Syntax(
                "the t-part must come last, as in r+it".into(),
            ));
        }
        return Ok(ctx.element(parse_scalar(base, &text)?, base.zero())?);
    };
    if body.contains('t') {
        return Err(ParseError::Syntax(
            "only one t-part is allowed, as in r+it".into(),
        ));
    }
    // find the last top-level sign; everything after it is the t-coefficient
    let mut depth = 0i32;
    let mut split_at: Option<usize> = None;
    for (k, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(ParseError::Syntax("unbalanced parentheses".into()));
                }
            }
            '+' | '-' if depth == 0 && k > 0 => split_at = Some(k),
            _ => {}
        }
    }
    if depth != 0 {
        return Err(ParseError::Syntax("unbalanced parentheses".into()));
    }
    let (r_text, i_text) = match split_at {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let r = if r_text.is_empty() {
        base.zero()
    } else {
        let inner = strip_parens(r_text).unwrap_or(r_text);
        parse_scalar(base, inner)?
    };
    let (neg, atom) = match i_text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, i_text.strip_prefix('+').unwrap_or(i_text)),
    };
    let i = if atom.is_empty() {
        base.one()
    } else {
        let inner = strip_parens(atom).unwrap_or(atom);
        parse_scalar(base, inner)?
    };
    let i = if neg { base.neg(&i) } else { i };
    Ok(ctx.element(r, i)?)
}

/// key=value configuration text: one pair per line, `#` comments, blank
/// lines ignored. Later keys override earlier ones.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, ParseError> {
    if text.len() > MAX_INPUT_LEN {
        return Err(ParseError::Syntax(format!(
            "config longer than {MAX_INPUT_LEN} bytes"
        )));
    }
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ParseError::Syntax(format!("line {}: expected key=value", lineno + 1))
        })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(ParseError::Syntax(format!(
                "line {}: empty key",
                lineno + 1
            )));
        }
        out.insert(key.to_string(), value.trim().to_string());
    }
    Ok(out)
}
