//! Text formats.
//!
//! Flag documents:
//!
//! ```text
//! field gf 2
//! ambient 2
//! level 1
//! 1 0
//! level 1/2
//! 0 1
//! ```
//!
//! Each `level` block lists generators that are added to the span of all
//! earlier blocks. Matrix files start with a `rows cols` line followed by the
//! row-major entries; column `j` is the image of the `j`-th standard basis
//! vector. Pointwise tables start with a `field gf p` line followed by one
//! `v1 … vn grade` line per vector. Blank lines and `#` comments are ignored
//! everywhere.

use std::fmt::Write as _;

use crate::arith::{FieldSpec, Rational};
use crate::error::{Error, Result};
use crate::fuzzy::{vector_to_index, FuzzyFlag, PointwiseTable};
use crate::linalg::{extend_basis, Matrix, Subspace, Vector};
use crate::morphism::LinearMap;

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Syntax { message, .. } => Error::Syntax { line, message },
        e @ Error::AtLine { .. } => e,
        e => Error::AtLine {
            line,
            source: Box::new(e),
        },
    }
}

fn parse_vector(field: FieldSpec, n: usize, line: usize, text: &str) -> Result<Vector> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != n {
        return Err(Error::syntax(
            line,
            format!("expected {n} entries, found {}", tokens.len()),
        ));
    }
    let entries = tokens
        .iter()
        .map(|t| field.parse_scalar(t).map_err(|e| at_line(line, e)))
        .collect::<Result<Vec<_>>>()?;
    Vector::new(field, entries)
}

fn keyword<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str> {
    text.strip_prefix(key)
        .filter(|rest| rest.starts_with(char::is_whitespace))
        .map(str::trim)
        .ok_or_else(|| Error::syntax(line, format!("expected `{key} …`, found `{text}`")))
}

pub fn parse_flag(text: &str) -> Result<FuzzyFlag> {
    let mut lines = content_lines(text);
    let eof = text.lines().count().max(1);

    let (l, t) = lines.next().ok_or_else(|| Error::syntax(eof, "missing `field` header"))?;
    let field: FieldSpec = keyword(l, t, "field")?.parse().map_err(|e| at_line(l, e))?;
    let (l, t) = lines.next().ok_or_else(|| Error::syntax(eof, "missing `ambient` header"))?;
    let n: usize = keyword(l, t, "ambient")?
        .parse()
        .map_err(|_| Error::syntax(l, "ambient dimension must be a non-negative integer"))?;

    // (line of the `level` keyword, level, cumulative generators)
    let mut blocks: Vec<(usize, Rational, Vec<Vector>)> = Vec::new();
    for (l, t) in lines {
        if t.starts_with("level") {
            let level: Rational = keyword(l, t, "level")?.parse().map_err(|e| at_line(l, e))?;
            if !level.in_unit_interval() {
                return Err(at_line(l, Error::LevelOutOfRange { level: level.to_string() }));
            }
            let gens = blocks.last().map(|b| b.2.clone()).unwrap_or_default();
            blocks.push((l, level, gens));
        } else {
            let v = parse_vector(field, n, l, t)?;
            match blocks.last_mut() {
                Some(b) => b.2.push(v),
                None => return Err(Error::syntax(l, "vector before the first `level`")),
            }
        }
    }

    let entries = blocks
        .iter()
        .map(|(l, level, gens)| {
            Ok((level.clone(), Subspace::span(field, n, gens).map_err(|e| at_line(*l, e))?))
        })
        .collect::<Result<Vec<_>>>()?;
    FuzzyFlag::new(field, n, entries).map_err(|e| {
        let line = match &e {
            Error::LevelsNotDecreasing { index } | Error::ChainNotStrict { index } => blocks[*index].0,
            _ => blocks.last().map_or(eof, |b| b.0),
        };
        at_line(line, e)
    })
}

/// Canonical document: each block holds the echelon rows completing the
/// previous level subspace, levels in lowest terms.
pub fn serialize_flag(mu: &FuzzyFlag) -> String {
    let mut out = String::new();
    writeln!(out, "field {}", mu.field()).unwrap();
    writeln!(out, "ambient {}", mu.ambient()).unwrap();
    let mut prev = Subspace::zero(mu.field(), mu.ambient());
    for e in mu.entries() {
        writeln!(out, "level {}", e.level).unwrap();
        for v in extend_basis(&prev, &e.space).expect("flag chain is nested") {
            writeln!(out, "{v}").unwrap();
        }
        prev = e.space.clone();
    }
    out
}

pub fn parse_matrix(text: &str, field: FieldSpec) -> Result<LinearMap> {
    let mut lines = content_lines(text);
    let (l, header) = lines
        .next()
        .ok_or_else(|| Error::syntax(1, "missing `rows cols` header"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::syntax(l, format!("invalid dimension `{t}`"))))
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(Error::syntax(l, "header must be `rows cols`"));
    };
    let mut data = Vec::with_capacity(rows * cols);
    let mut last = l;
    for (l, t) in lines {
        for tok in t.split_whitespace() {
            data.push(field.parse_scalar(tok).map_err(|e| at_line(l, e))?);
        }
        last = l;
    }
    if data.len() != rows * cols {
        return Err(Error::syntax(
            last,
            format!("expected {} entries, found {}", rows * cols, data.len()),
        ));
    }
    Ok(LinearMap::new(Matrix::new(field, rows, cols, data)?))
}

/// Matrix file with its `rows cols` header.
pub fn serialize_matrix(f: &LinearMap) -> String {
    format!("{} {}\n{}", f.codomain_dim(), f.domain_dim(), f.matrix())
}

pub fn parse_table(text: &str) -> Result<PointwiseTable> {
    let mut lines = content_lines(text);
    let (l, t) = lines.next().ok_or_else(|| Error::syntax(1, "missing `field` header"))?;
    let field: FieldSpec = keyword(l, t, "field")?.parse().map_err(|e| at_line(l, e))?;
    if !field.is_prime_field() {
        return Err(at_line(l, Error::RequiresPrimeField));
    }
    let mut rows: Vec<(usize, Vector, Rational)> = Vec::new();
    let mut n = None;
    for (l, t) in lines {
        let tokens: Vec<&str> = t.split_whitespace().collect();
        let (grade, coords) = tokens.split_last().expect("content lines are non-empty");
        let dim = *n.get_or_insert(coords.len());
        let v = parse_vector(field, dim, l, &coords.join(" "))?;
        let g: Rational = grade.parse().map_err(|e| at_line(l, e))?;
        rows.push((l, v, g));
    }
    let n = n.ok_or_else(|| Error::syntax(l, "table has no rows"))?;
    let size = field
        .prime()
        .and_then(|p| p.checked_pow(n as u32))
        .filter(|&s| s <= crate::fuzzy::MAX_TABLE_SIZE)
        .ok_or_else(|| Error::BudgetExceeded {
            what: "vectors",
            needed: format!("{field}^{n}"),
            limit: crate::fuzzy::MAX_TABLE_SIZE,
        })?;
    let mut grades: Vec<Option<Rational>> = vec![None; size as usize];
    for (l, v, g) in rows {
        let slot = &mut grades[vector_to_index(&v) as usize];
        if slot.is_some() {
            return Err(Error::syntax(l, format!("duplicate vector ({v})")));
        }
        *slot = Some(g);
    }
    let grades = grades
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            g.ok_or_else(|| {
                let v = crate::fuzzy::index_to_vector(field, n, i as u64);
                Error::syntax(0, format!("missing grade for vector ({v})"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PointwiseTable::new(field, n, grades)
}

pub fn serialize_table(tbl: &PointwiseTable) -> String {
    let mut out = format!("field {}\n", tbl.field());
    for (i, g) in tbl.grades().iter().enumerate() {
        writeln!(out, "{} {g}", tbl.vector(i)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MU: &str = "field gf 2\nambient 2\nlevel 1\n1 0\nlevel 1/2\n0 1\n";

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn parse_running_example() {
        let f = FieldSpec::gf(2).unwrap();
        let mu = parse_flag(MU).unwrap();
        let line = Subspace::span(f, 2, &[Vector::from_i64(f, &[1, 0])]).unwrap();
        assert_eq!(
            mu,
            FuzzyFlag::new(f, 2, vec![(q(1, 1), line), (q(1, 2), Subspace::full(f, 2))]).unwrap()
        );
        assert_eq!(serialize_flag(&mu), MU);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_flag("field gf 2\nambient 2\nlevel 1/2\n1 0\nlevel 1\n0 1\n").unwrap_err();
        assert_eq!(e.root(), &Error::LevelsNotDecreasing { index: 1 });
        assert!(matches!(e, Error::AtLine { line: 5, .. }));

        let e = parse_flag("field gf 2\nambient 2\nlevel 1\n1 0\n").unwrap_err();
        assert_eq!(e.root(), &Error::TopNotAmbient);

        let e = parse_flag("field gf 2\nambient 2\nlevel 1\n1 0 1\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 4, .. }));

        let e = parse_flag("field gf 4\nambient 1\nlevel 1\n1\n").unwrap_err();
        assert_eq!(e.root(), &Error::NotPrime(4));

        let e = parse_flag("ambient 2\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, .. }));

        let e = parse_flag("field gf 2\nambient 1\n1\nlevel 1\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 3, .. }));

        let e = parse_flag("field gf 2\nambient 1\nlevel 3/2\n1\n").unwrap_err();
        assert!(matches!(e.root(), Error::LevelOutOfRange { .. }));

        let e = parse_flag("field gf 2\nambient 2\nlevel 1\n1 0\nlevel 1/2\n1 0\nlevel 0\n0 1\n").unwrap_err();
        assert_eq!(e.root(), &Error::ChainNotStrict { index: 1 });
        assert!(matches!(e, Error::AtLine { line: 5, .. }));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# running example\nfield gf 2\n\nambient 2\nlevel 1 # top\n1 0\nlevel 1/2\n1 1\n";
        let mu = parse_flag(text).unwrap();
        assert_eq!(serialize_flag(&mu), MU);
    }

    #[test]
    fn constant_flag_document() {
        let f = FieldSpec::gf(2).unwrap();
        let c = FuzzyFlag::constant(f, 1, q(1, 1)).unwrap();
        assert_eq!(serialize_flag(&c), "field gf 2\nambient 1\nlevel 1\n1\n");
    }

    #[test]
    fn zero_bottom_block_is_empty() {
        let f = FieldSpec::gf(3).unwrap();
        let mu = FuzzyFlag::new(f, 1, vec![(q(1, 1), Subspace::zero(f, 1)), (q(0, 1), Subspace::full(f, 1))])
            .unwrap();
        let doc = serialize_flag(&mu);
        assert_eq!(doc, "field gf 3\nambient 1\nlevel 1\nlevel 0\n1\n");
        assert_eq!(parse_flag(&doc).unwrap(), mu);
    }

    #[test]
    fn rational_documents() {
        let text = "field rationals\nambient 2\nlevel 2/3\n2 1/2\nlevel 1/5\n0 3\n";
        let mu = parse_flag(text).unwrap();
        let doc = serialize_flag(&mu);
        assert_eq!(doc, "field rationals\nambient 2\nlevel 2/3\n1 1/4\nlevel 1/5\n1 0\n");
        assert_eq!(parse_flag(&doc).unwrap(), mu);
    }

    #[test]
    fn gf_entries_are_reduced() {
        let mu = parse_flag("field gf 3\nambient 1\nlevel 1\n-1\n").unwrap();
        assert_eq!(serialize_flag(&mu), "field gf 3\nambient 1\nlevel 1\n1\n");
    }

    #[test]
    fn matrices() {
        let f = FieldSpec::gf(2).unwrap();
        let m = parse_matrix("2 2\n1 0\n1 1\n", f).unwrap();
        assert_eq!(m.matrix(), &Matrix::from_i64(f, &[&[1, 0], &[1, 1]]).unwrap());
        assert_eq!(serialize_matrix(&m), "2 2\n1 0\n1 1\n");
        assert_eq!(parse_matrix("1 2\n1\n0", f).unwrap().codomain_dim(), 1);
        assert!(matches!(parse_matrix("2 2\n1 0\n1\n", f), Err(Error::Syntax { .. })));
        assert!(matches!(parse_matrix("2\n1 0\n", f), Err(Error::Syntax { line: 1, .. })));
    }

    #[test]
    fn tables() {
        let text = "field gf 2\n0 0 1\n1 0 1\n0 1 1/2\n1 1 1/2\n";
        let t = parse_table(text).unwrap();
        assert_eq!(t.grades(), &[q(1, 1), q(1, 2), q(1, 1), q(1, 2)]);
        assert_eq!(parse_table(&serialize_table(&t)).unwrap(), t);
        assert!(matches!(
            parse_table("field gf 2\n0 0 1\n0 0 1\n1 0 1\n1 1 1\n"),
            Err(Error::Syntax { line: 3, .. })
        ));
        assert!(parse_table("field gf 2\n0 0 1\n").is_err());
        assert!(parse_table("field rationals\n0 1\n").is_err());
    }
}
