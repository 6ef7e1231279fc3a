//! The ideal file format.
//!
//! ```text
//! # the quadric
//! ring x y z
//! ideal J
//!   @label quadric
//!   x^2, x*y
//!   y^2
//! end
//! ```
//!
//! Generators are separated by commas or newlines, `@key value` lines carry
//! metadata, and `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;

use monoideal_core::{Monomial, MonomialIdeal, Ring};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedIdeal {
    pub name: String,
    pub ideal: MonomialIdeal,
    pub meta: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDocument {
    pub ring: Ring,
    pub ideals: Vec<NamedIdeal>,
}

impl IdealDocument {
    pub fn get(&self, name: &str) -> Option<&NamedIdeal> {
        self.ideals.iter().find(|i| i.name == name)
    }

    /// The ideal called `name`, or the first one when no name is given.
    pub fn select(&self, name: Option<&str>) -> Result<&NamedIdeal> {
        match name {
            Some(n) => self.get(n).ok_or_else(|| CliError::Usage(format!("no ideal named `{n}`"))),
            None => self.ideals.first().ok_or_else(|| CliError::Usage("the file defines no ideals".into())),
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

/// Line-oriented scanning shared by the ideal and lattice formats.
pub(crate) struct Lines<'a> {
    origin: &'a str,
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    pub last_line: usize,
}

/// A comment-stripped line with its 1-based number and the column of its
/// first non-blank character.
pub(crate) struct Line<'a> {
    pub number: usize,
    pub text: &'a str,
    pub column: usize,
}

impl<'a> Lines<'a> {
    pub fn new(origin: &'a str, text: &'a str) -> Self {
        Lines { origin, inner: text.lines().enumerate(), last_line: 0 }
    }

    pub fn error(&self, line: usize, column: usize, message: impl Into<String>) -> CliError {
        CliError::Parse { origin: self.origin.to_string(), line, column, message: message.into() }
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = Line<'a>;

    fn next(&mut self) -> Option<Line<'a>> {
        for (i, raw) in self.inner.by_ref() {
            self.last_line = i + 1;
            let code = raw.split_once('#').map_or(raw, |(c, _)| c);
            let trimmed = code.trim_start();
            let column = code[..code.len() - trimmed.len()].chars().count() + 1;
            let text = trimmed.trim_end();
            if !text.is_empty() {
                return Some(Line { number: i + 1, text, column });
            }
        }
        None
    }
}

/// Whitespace-separated words with their columns.
pub(crate) fn words<'a>(line: &Line<'a>) -> Vec<(usize, &'a str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, (i, c)) in line.text.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((k, i)),
            (true, Some((sk, si))) => {
                out.push((line.column + sk, &line.text[si..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((sk, si)) = start {
        out.push((line.column + sk, &line.text[si..]));
    }
    out
}

pub fn parse_ideal_file(origin: &str, text: &str) -> Result<IdealDocument> {
    let mut lines = Lines::new(origin, text);
    let mut ring: Option<Ring> = None;
    let mut ideals: Vec<NamedIdeal> = Vec::new();
    while let Some(line) = lines.next() {
        let w = words(&line);
        match w[0].1 {
            "ring" => {
                if ring.is_some() {
                    return Err(lines.error(line.number, line.column, "the ring is declared twice"));
                }
                if w.len() < 2 {
                    return Err(lines.error(line.number, line.column + 4, "expected at least one variable"));
                }
                for (k, &(col, name)) in w.iter().enumerate().skip(1) {
                    if !is_identifier(name) {
                        return Err(lines.error(line.number, col, format!("invalid variable name `{name}`")));
                    }
                    if w[1..k].iter().any(|(_, other)| *other == name) {
                        return Err(lines.error(line.number, col, format!("duplicate variable `{name}`")));
                    }
                }
                ring = Some(Ring::new(w[1..].iter().map(|(_, n)| *n))?);
            }
            "ideal" => {
                let Some(r) = &ring else {
                    return Err(lines.error(line.number, line.column, "`ideal` before the `ring` declaration"));
                };
                let (col, name) = match w.as_slice() {
                    [_, (col, name)] => (*col, *name),
                    _ => return Err(lines.error(line.number, line.column, "expected `ideal <name>`")),
                };
                if !is_identifier(name) {
                    return Err(lines.error(line.number, col, format!("invalid ideal name `{name}`")));
                }
                if ideals.iter().any(|i| i.name == name) {
                    return Err(lines.error(line.number, col, format!("duplicate ideal name `{name}`")));
                }
                let start = line.number;
                let (gens, meta) = parse_block(&mut lines, r, name, start)?;
                ideals.push(NamedIdeal { name: name.to_string(), ideal: MonomialIdeal::new(r, gens)?, meta });
            }
            other => {
                return Err(lines.error(
                    line.number,
                    line.column,
                    format!("expected `ring` or `ideal`, found `{other}`"),
                ));
            }
        }
    }
    let ring = ring.ok_or_else(|| lines.error(lines.last_line.max(1), 1, "missing `ring` declaration"))?;
    Ok(IdealDocument { ring, ideals })
}

fn parse_block(
    lines: &mut Lines<'_>,
    ring: &Ring,
    name: &str,
    start: usize,
) -> Result<(Vec<Monomial>, BTreeMap<String, String>)> {
    let mut gens = Vec::new();
    let mut meta = BTreeMap::new();
    while let Some(line) = lines.next() {
        if line.text == "end" {
            return Ok((gens, meta));
        }
        if let Some(rest) = line.text.strip_prefix('@') {
            let (key, value) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            if !is_identifier(key) {
                return Err(lines.error(line.number, line.column + 1, format!("invalid metadata key `{key}`")));
            }
            if meta.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(lines.error(line.number, line.column + 1, format!("duplicate metadata key `{key}`")));
            }
            continue;
        }
        let pieces: Vec<&str> = line.text.split(',').collect();
        let mut offset = 0;
        for (k, piece) in pieces.iter().enumerate() {
            let column = line.column + line.text[..offset].chars().count();
            offset += piece.len() + 1;
            if piece.trim().is_empty() {
                if k + 1 == pieces.len() && k > 0 {
                    continue;
                }
                return Err(lines.error(line.number, column, "empty generator"));
            }
            gens.push(parse_monomial(piece, ring).map_err(|(c, m)| lines.error(line.number, column + c, m))?);
        }
    }
    Err(lines.error(lines.last_line, 1, format!("ideal `{name}` opened on line {start} has no `end`")))
}

/// Parses `x^2*y` or `1`. Errors carry a 0-based char offset into `text`.
pub fn parse_monomial(text: &str, ring: &Ring) -> std::result::Result<Monomial, (usize, String)> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let skip = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let number = |pos: &mut usize| -> Option<String> {
        let begin = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > begin).then(|| chars[begin..*pos].iter().collect())
    };
    let mut exps = vec![0u32; ring.num_variables()];
    loop {
        skip(&mut pos);
        let begin = pos;
        if let Some(digits) = number(&mut pos) {
            if digits != "1" {
                return Err((begin, format!("unexpected coefficient `{digits}`")));
            }
        } else {
            while pos < chars.len() && (chars[pos].is_ascii_alphanumeric() || chars[pos] == '_' || chars[pos] == '.') {
                pos += 1;
            }
            if pos == begin {
                return Err((begin, "expected a variable".into()));
            }
            let name: String = chars[begin..pos].iter().collect();
            let j = ring.index_of(&name).ok_or_else(|| (begin, format!("unknown variable `{name}`")))?;
            skip(&mut pos);
            let mut e = 1u32;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                skip(&mut pos);
                let at = pos;
                let digits = number(&mut pos).ok_or((at, "expected an exponent after `^`".into()))?;
                e = digits.parse().map_err(|_| (at, format!("exponent `{digits}` is too large")))?;
            }
            exps[j] = exps[j].checked_add(e).ok_or((begin, "exponent overflow".into()))?;
        }
        skip(&mut pos);
        if pos == chars.len() {
            return Ok(Monomial::from_exponents(exps));
        }
        if chars[pos] != '*' {
            return Err((pos, format!("unexpected `{}`", chars[pos])));
        }
        pos += 1;
    }
}

impl fmt::Display for IdealDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {}", self.ring.variable_names().join(" "))?;
        for named in &self.ideals {
            writeln!(f, "ideal {}", named.name)?;
            for (k, v) in &named.meta {
                if v.is_empty() {
                    writeln!(f, "  @{k}")?;
                } else {
                    writeln!(f, "  @{k} {v}")?;
                }
            }
            let gens: Vec<String> = named.ideal.generators().iter().map(|g| self.ring.display(g).to_string()).collect();
            if !gens.is_empty() {
                writeln!(f, "  {}", gens.join(", "))?;
            }
            writeln!(f, "end")?;
        }
        Ok(())
    }
}
