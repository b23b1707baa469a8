//! Word grammar `word := term*`, `term := "Z*(" num ")" | "Z(" num ")"`,
//! terms separated by optional whitespace, and the canonical printer.

use super::{Atom, Expression, Generator, Kind, Rapidity, Term, Word};
use crate::error::{Error, Result};

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        column,
        message: message.into(),
    }
}

/// Parse a numeric word such as `"Z(2.0) Z*(1.0)"`. Columns in errors are
/// 1-based character positions.
pub fn parse_word(text: &str) -> Result<Vec<Generator>> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let mut out = Vec::new();
    loop {
        while pos < chars.len() && chars[pos].is_whitespace() {
            pos += 1;
        }
        if pos == chars.len() {
            return Ok(out);
        }
        if chars[pos] != 'Z' {
            return Err(syntax(pos + 1, format!("expected 'Z', found '{}'", chars[pos])));
        }
        pos += 1;
        let kind = if chars.get(pos) == Some(&'*') {
            pos += 1;
            Kind::Creator
        } else {
            Kind::Annihilator
        };
        if chars.get(pos) != Some(&'(') {
            return Err(syntax(pos + 1, "expected '('"));
        }
        pos += 1;
        let start = pos;
        while pos < chars.len() && is_number_char(chars[pos]) {
            pos += 1;
        }
        let literal: String = chars[start..pos].iter().collect();
        let value = literal
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite() && !literal.is_empty());
        let Some(value) = value else {
            return Err(syntax(start + 1, "expected a finite number"));
        };
        if chars.get(pos) != Some(&')') {
            return Err(syntax(pos + 1, "expected ')'"));
        }
        pos += 1;
        out.push(Generator {
            kind,
            rapidity: Rapidity::Numeric(value),
        });
    }
}

fn is_number_char(c: char) -> bool {
    c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-')
}

fn rapidity_text(word: &Word, site: usize) -> String {
    match &word.generators[site].rapidity {
        Rapidity::Numeric(x) if *x < 0.0 => format!("({x})"),
        Rapidity::Numeric(x) => format!("{x}"),
        Rapidity::Symbol(k) => word.alphabet[*k].clone(),
    }
}

pub(crate) fn print_generator(word: &Word, site: usize) -> String {
    let star = match word.generators[site].kind {
        Kind::Creator => "*",
        Kind::Annihilator => "",
    };
    let r = match &word.generators[site].rapidity {
        Rapidity::Numeric(x) => format!("{x}"),
        Rapidity::Symbol(k) => word.alphabet[*k].clone(),
    };
    format!("Z{star}({r})")
}

/// Canonical text of a generator list, inverse of [`parse_word`].
pub fn print_word(word: &Word) -> String {
    (0..word.len())
        .map(|s| print_generator(word, s))
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_term(word: &Word, term: &Term) -> String {
    let mut parts = Vec::new();
    let c = term.coefficient.scalar;
    let unit = c == num_complex::Complex64::new(1.0, 0.0);
    if !unit {
        parts.push(if c.im == 0.0 {
            format!("{}", c.re)
        } else {
            format!("({}{:+}i)", c.re, c.im)
        });
    }
    for atom in &term.coefficient.atoms {
        parts.push(match *atom {
            Atom::S {
                left,
                right,
                crossed,
            } => format!(
                "S[{} - {}{}]",
                rapidity_text(word, left),
                rapidity_text(word, right),
                if crossed { " + i*pi" } else { "" }
            ),
            Atom::Delta {
                annihilator,
                creator,
            } => format!(
                "delta[{} - {}]",
                rapidity_text(word, annihilator),
                rapidity_text(word, creator)
            ),
        });
    }
    if !term.word.is_empty() {
        parts.push(
            term.word
                .iter()
                .map(|&s| print_generator(word, s))
                .collect::<Vec<_>>()
                .join(" "),
        );
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

/// Terms sorted by their text and joined with `" + "`; the zero expression
/// prints as `0`.
pub(crate) fn print_expression(e: &Expression) -> String {
    let mut terms: Vec<String> = e.terms.iter().map(|t| print_term(&e.sites, t)).collect();
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort();
    terms.join(" + ")
}
