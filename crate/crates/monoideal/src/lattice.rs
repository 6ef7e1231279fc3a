//! The lattice file format.
//!
//! ```text
//! rank 3
//! gram
//!   0 1 1
//!   1 0 1
//!   1 1 0
//! end
//! ample 1 1 0
//! class H 1 2 0
//! class C 1 1 1/2
//! ```

use std::collections::BTreeMap;

use monoideal_core::surface::{DivisorClass, NSLattice};

use crate::document::{is_identifier, words, Lines};
use crate::error::{CliError, Result};
use crate::exact::parse_rational;

#[derive(Clone, Debug)]
pub struct LatticeDocument {
    pub lattice: NSLattice,
    pub classes: BTreeMap<String, DivisorClass>,
}

impl LatticeDocument {
    pub fn class(&self, name: &str) -> Result<&DivisorClass> {
        self.classes.get(name).ok_or_else(|| CliError::Usage(format!("no class named `{name}`")))
    }
}

pub fn parse_lattice_file(origin: &str, text: &str) -> Result<LatticeDocument> {
    let mut lines = Lines::new(origin, text);
    let mut rank: Option<usize> = None;
    let mut gram: Option<Vec<Vec<i64>>> = None;
    let mut ample: Option<Vec<i64>> = None;
    let mut classes: BTreeMap<String, Vec<(usize, String)>> = BTreeMap::new();
    let mut class_lines = BTreeMap::new();
    while let Some(line) = lines.next() {
        let w = words(&line);
        let expect_rank =
            |lines: &Lines<'_>| rank.ok_or_else(|| lines.error(line.number, line.column, "`rank` must come first"));
        let integers = |lines: &Lines<'_>, items: &[(usize, &str)], r: usize| -> Result<Vec<i64>> {
            if items.len() != r {
                return Err(lines.error(
                    line.number,
                    line.column,
                    format!("expected {r} entries, found {}", items.len()),
                ));
            }
            items
                .iter()
                .map(|(col, s)| {
                    s.parse().map_err(|_| lines.error(line.number, *col, format!("expected an integer, found `{s}`")))
                })
                .collect()
        };
        match w[0].1 {
            "rank" => {
                if rank.is_some() {
                    return Err(lines.error(line.number, line.column, "`rank` is declared twice"));
                }
                let r = match w.as_slice() {
                    [_, (col, s)] => s.parse::<usize>().ok().filter(|r| *r > 0).ok_or_else(|| {
                        lines.error(line.number, *col, format!("expected a positive rank, found `{s}`"))
                    })?,
                    _ => return Err(lines.error(line.number, line.column, "expected `rank <n>`")),
                };
                rank = Some(r);
            }
            "gram" => {
                let r = expect_rank(&lines)?;
                if gram.is_some() {
                    return Err(lines.error(line.number, line.column, "`gram` is declared twice"));
                }
                let start = line.number;
                let mut rows = Vec::new();
                loop {
                    let Some(row) = lines.next() else {
                        return Err(lines.error(
                            lines.last_line,
                            1,
                            format!("`gram` opened on line {start} has no `end`"),
                        ));
                    };
                    if row.text == "end" {
                        break;
                    }
                    let rw = words(&row);
                    if rw.len() != r {
                        return Err(lines.error(
                            row.number,
                            row.column,
                            format!("expected {r} entries, found {}", rw.len()),
                        ));
                    }
                    rows.push(
                        rw.iter()
                            .map(|(col, s)| {
                                s.parse().map_err(|_| {
                                    lines.error(row.number, *col, format!("expected an integer, found `{s}`"))
                                })
                            })
                            .collect::<Result<Vec<i64>>>()?,
                    );
                }
                if rows.len() != r {
                    return Err(lines.error(start, 1, format!("expected {r} Gram rows, found {}", rows.len())));
                }
                gram = Some(rows);
            }
            "ample" => {
                let r = expect_rank(&lines)?;
                if ample.is_some() {
                    return Err(lines.error(line.number, line.column, "`ample` is declared twice"));
                }
                ample = Some(integers(&lines, &w[1..], r)?);
            }
            "class" => {
                let r = expect_rank(&lines)?;
                let Some(&(col, name)) = w.get(1) else {
                    return Err(lines.error(line.number, line.column, "expected `class <name> <coordinates>`"));
                };
                if !is_identifier(name) {
                    return Err(lines.error(line.number, col, format!("invalid class name `{name}`")));
                }
                if classes.contains_key(name) {
                    return Err(lines.error(line.number, col, format!("duplicate class name `{name}`")));
                }
                if w.len() - 2 != r {
                    return Err(lines.error(
                        line.number,
                        line.column,
                        format!("expected {r} coordinates, found {}", w.len() - 2),
                    ));
                }
                classes.insert(name.to_string(), w[2..].iter().map(|(c, s)| (*c, s.to_string())).collect());
                class_lines.insert(name.to_string(), line.number);
            }
            other => {
                return Err(lines.error(
                    line.number,
                    line.column,
                    format!("expected `rank`, `gram`, `ample` or `class`, found `{other}`"),
                ));
            }
        }
    }
    let end = lines.last_line.max(1);
    let gram = gram.ok_or_else(|| lines.error(end, 1, "missing `gram` block"))?;
    let ample = ample.ok_or_else(|| lines.error(end, 1, "missing `ample` line"))?;
    let lattice = NSLattice::new(gram, ample)?;
    let mut parsed = BTreeMap::new();
    for (name, coords) in classes {
        let line = class_lines[&name];
        let values = coords
            .iter()
            .map(|(col, s)| {
                parse_rational(s).ok_or_else(|| lines.error(line, *col, format!("expected a rational, found `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        parsed.insert(name, DivisorClass::new(values));
    }
    Ok(LatticeDocument { lattice, classes: parsed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use monoideal_core::Rational;

    const PRODUCT_OF_CURVES: &str =
        "rank 3\ngram\n 0 1 1\n 1 0 1\n 1 1 0\nend\nample 1 1 0\nclass H 1 2 0\nclass C 1 1 1\n";

    #[test]
    fn parses_the_product_lattice() {
        let doc = parse_lattice_file("t", PRODUCT_OF_CURVES).unwrap();
        let h = doc.class("H").unwrap();
        assert_eq!(doc.lattice.intersect(h, h).unwrap(), Rational::from_integer(4));
        assert_eq!(doc.classes.len(), 2);
    }

    #[test]
    fn reports_positions() {
        let bad = PRODUCT_OF_CURVES.replace(" 1 0 1", " 1 zero 1");
        match parse_lattice_file("t", &bad).unwrap_err() {
            CliError::Parse { line, column, .. } => assert_eq!((line, column), (4, 4)),
            other => panic!("{other}"),
        }
        assert!(matches!(parse_lattice_file("t", "gram\nend").unwrap_err(), CliError::Parse { line: 1, .. }));
        let dup = format!("{PRODUCT_OF_CURVES}class H 0 0 1\n");
        assert!(matches!(parse_lattice_file("t", &dup).unwrap_err(), CliError::Parse { line: 10, column: 7, .. }));
    }

    #[test]
    fn wrong_signature_is_a_domain_error() {
        let text = "rank 2\ngram\n1 0\n0 1\nend\nample 1 0\n";
        let err = parse_lattice_file("t", text).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
