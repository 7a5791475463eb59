//! Text formats for tables and fusions. The grammar is documented in
//! `docs/table-format.md`; [`write_table`] and [`write_fusion`] emit the
//! canonical form, which reparses to an equal object.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{CharacterTable, ClassInfo, FusionKind, FusionMap};
use crate::cyclotomic::Cyclotomic;

pub const TABLE_HEADER: &str = "brauer-table 1";
pub const FUSION_HEADER: &str = "brauer-fusion 1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    /// 1-based.
    pub column: usize,
    pub message: String,
}

struct Line<'a> {
    number: usize,
    /// Content with the indentation removed.
    text: &'a str,
    /// Byte offset of `text` in the raw line.
    indent: usize,
}

impl Line<'_> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.number,
            column: self.indent + offset + 1,
            message: message.into(),
        })
    }

    /// Whitespace-separated tokens with their offsets inside `text`.
    fn tokens(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in self.text.char_indices() {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out
    }
}

/// Non-blank, non-comment lines.
fn content_lines(src: &str) -> Vec<Line<'_>> {
    src.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let trimmed = raw.trim_start();
            let text = trimmed.trim_end();
            if text.is_empty() || text.starts_with('#') {
                None
            } else {
                Some(Line {
                    number: i + 1,
                    text,
                    indent: raw.len() - trimmed.len(),
                })
            }
        })
        .collect()
}

fn eof_error<T>(src: &str, message: &str) -> Result<T, ParseError> {
    Err(ParseError {
        line: src.lines().count().max(1),
        column: 1,
        message: message.into(),
    })
}

fn parse_uint<T: std::str::FromStr>(
    line: &Line<'_>,
    offset: usize,
    tok: &str,
    what: &str,
) -> Result<T, ParseError> {
    if !tok.bytes().all(|b| b.is_ascii_digit()) {
        return line.err(offset, format!("expected {what}, found `{tok}`"));
    }
    tok.parse()
        .or_else(|_| line.err(offset, format!("{what} `{tok}` out of range")))
}

const SECTIONS: [&str; 4] = ["classes", "powermaps", "irreducibles", "end"];

pub fn parse_table(src: &str) -> Result<CharacterTable, ParseError> {
    let lines = content_lines(src);
    let mut it = lines.iter().peekable();
    let Some(first) = it.next() else {
        return eof_error(src, "empty table file");
    };
    if first.text != TABLE_HEADER {
        return first.err(0, format!("expected header `{TABLE_HEADER}`"));
    }

    let mut name: Option<String> = None;
    let mut order: Option<u128> = None;
    let mut classes = Vec::new();
    let mut power_maps = BTreeMap::new();
    let mut irreducibles: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut seen_classes = false;
    let mut ended = false;
    let mut section: Option<&str> = None;
    let mut last_line = first;

    for line in it {
        last_line = line;
        if ended {
            return line.err(0, "content after `end`");
        }
        let toks = line.tokens();
        let head = toks[0].1;
        if toks.len() == 1 && SECTIONS.contains(&head) {
            if head == "end" {
                ended = true;
                continue;
            }
            if head == "classes" {
                if seen_classes {
                    return line.err(0, "duplicate `classes` section");
                }
                seen_classes = true;
            } else if !seen_classes {
                return line.err(0, format!("`{head}` section before `classes`"));
            }
            section = Some(head);
            continue;
        }
        match section {
            None => match head {
                "name" => {
                    let rest = line.text[head.len()..].trim();
                    if rest.is_empty() {
                        return line.err(0, "missing table name");
                    }
                    name = Some(rest.to_string());
                }
                "order" => {
                    if toks.len() != 2 {
                        return line.err(0, "expected `order <positive integer>`");
                    }
                    let v: u128 = parse_uint(line, toks[1].0, toks[1].1, "group order")?;
                    if v == 0 {
                        return line.err(toks[1].0, "group order must be positive");
                    }
                    order = Some(v);
                }
                _ => return line.err(0, format!("unknown field `{head}`")),
            },
            Some("classes") => {
                if toks.len() != 3 {
                    return line.err(0, "expected `<name> <element order> <centralizer order>`");
                }
                let element_order: u64 = parse_uint(line, toks[1].0, toks[1].1, "element order")?;
                let centralizer_order: u128 =
                    parse_uint(line, toks[2].0, toks[2].1, "centralizer order")?;
                if element_order == 0 {
                    return line.err(toks[1].0, "element order must be positive");
                }
                if centralizer_order == 0 {
                    return line.err(toks[2].0, "centralizer order must be positive");
                }
                classes.push(ClassInfo {
                    name: head.to_string(),
                    element_order,
                    centralizer_order,
                });
            }
            Some("powermaps") => {
                let Some(p) = head.strip_suffix(':') else {
                    return line.err(0, "expected `<prime>: <class indices>`");
                };
                let p: u64 = parse_uint(line, 0, p, "prime")?;
                if !crate::arith::is_prime(p) {
                    return line.err(0, format!("{p} is not a prime"));
                }
                if power_maps.contains_key(&p) {
                    return line.err(0, format!("duplicate {p}-power map"));
                }
                let mut map = Vec::with_capacity(toks.len() - 1);
                for &(off, tok) in &toks[1..] {
                    let idx: usize = parse_uint(line, off, tok, "class index")?;
                    if idx == 0 || idx > classes.len() {
                        return line.err(
                            off,
                            format!("class index {idx} out of range 1..{}", classes.len()),
                        );
                    }
                    map.push(idx - 1);
                }
                if map.len() != classes.len() {
                    return line.err(
                        0,
                        format!(
                            "{p}-power map has {} entries for {} classes",
                            map.len(),
                            classes.len()
                        ),
                    );
                }
                power_maps.insert(p, map);
            }
            Some("irreducibles") => {
                let mut row = Vec::with_capacity(classes.len());
                let mut offset = 0usize;
                for field in line.text.split(',') {
                    let lead = field.len() - field.trim_start().len();
                    match field.trim().parse::<Cyclotomic>() {
                        Ok(v) => row.push(v),
                        Err(e) => {
                            let column = if field.trim().is_empty() {
                                lead
                            } else {
                                lead + e.column - 1
                            };
                            return line.err(offset + column, format!("bad value: {}", e.message));
                        }
                    }
                    offset += field.len() + 1;
                }
                if row.len() != classes.len() {
                    return line.err(
                        0,
                        format!("row has {} values for {} classes", row.len(), classes.len()),
                    );
                }
                irreducibles.push(row);
            }
            Some(_) => unreachable!(),
        }
    }
    if !ended {
        return eof_error(src, "missing `end`");
    }
    let name = match name {
        Some(n) => n,
        None => return last_line.err(0, "table has no `name`"),
    };
    let Some(order) = order else {
        return last_line.err(0, "table has no `order`");
    };
    if classes.is_empty() {
        return last_line.err(0, "table has no classes");
    }
    CharacterTable::new(name, order, classes, power_maps, irreducibles)
        .or_else(|e| last_line.err(0, e.to_string()))
}

pub fn write_table(t: &CharacterTable) -> String {
    let mut s = String::new();
    writeln!(s, "{TABLE_HEADER}").unwrap();
    writeln!(s, "name {}", t.name()).unwrap();
    writeln!(s, "order {}", t.order()).unwrap();
    writeln!(s, "classes").unwrap();
    for c in t.classes() {
        writeln!(
            s,
            "  {} {} {}",
            c.name, c.element_order, c.centralizer_order
        )
        .unwrap();
    }
    writeln!(s, "powermaps").unwrap();
    for (p, map) in t.power_maps() {
        let idx: Vec<String> = map.iter().map(|c| (c + 1).to_string()).collect();
        writeln!(s, "  {p}: {}", idx.join(" ")).unwrap();
    }
    writeln!(s, "irreducibles").unwrap();
    for row in t.irreducible_rows() {
        let vals: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(s, "  {}", vals.join(", ")).unwrap();
    }
    writeln!(s, "end").unwrap();
    s
}

pub fn parse_fusion(src: &str) -> Result<FusionMap, ParseError> {
    let lines = content_lines(src);
    let Some(first) = lines.first() else {
        return eof_error(src, "empty fusion file");
    };
    if first.text != FUSION_HEADER {
        return first.err(0, format!("expected header `{FUSION_HEADER}`"));
    }
    let Some(header) = lines.get(1) else {
        return eof_error(src, "missing `<source> <target> <kind>` line");
    };
    let toks = header.tokens();
    if toks.len() != 3 {
        return header.err(0, "expected `<source> <target> <kind>`");
    }
    let kind = match toks[2].1 {
        "subgroup" => FusionKind::Subgroup,
        "quotient" => FusionKind::Quotient,
        other => return header.err(toks[2].0, format!("unknown fusion kind `{other}`")),
    };
    let mut map = Vec::new();
    for line in &lines[2..] {
        for (off, tok) in line.tokens() {
            let idx: usize = parse_uint(line, off, tok, "class index")?;
            if idx == 0 {
                return line.err(off, "class indices are 1-based");
            }
            map.push(idx - 1);
        }
    }
    if map.is_empty() {
        return eof_error(src, "fusion has no class indices");
    }
    Ok(FusionMap::new(toks[0].1, toks[1].1, map, kind))
}

pub fn write_fusion(f: &FusionMap) -> String {
    let idx: Vec<String> = f.map().iter().map(|c| (c + 1).to_string()).collect();
    format!(
        "{FUSION_HEADER}\n{} {} {}\n{}\n",
        f.source(),
        f.target(),
        f.kind(),
        idx.join(" ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# C2
brauer-table 1
name C2
order 2
classes
  1a 1 2
  2a 2 2
powermaps
  2: 1 1
irreducibles
  1, 1
  1, -1
end
";

    #[test]
    fn parses_and_round_trips() {
        let t = parse_table(SMALL).unwrap();
        assert_eq!(t.name(), "C2");
        assert_eq!(t.num_classes(), 2);
        let again = parse_table(&write_table(&t)).unwrap();
        assert_eq!(t, again);
        assert!(t.validate().is_empty());
    }

    #[test]
    fn errors_carry_positions() {
        let bad = SMALL.replace("  1, -1", "  1, -1+E(");
        let e = parse_table(&bad).unwrap_err();
        assert_eq!((e.line, e.column), (12, 11));

        let bad = SMALL.replace("  2a 2 2", "  2a x 2");
        let e = parse_table(&bad).unwrap_err();
        assert_eq!((e.line, e.column), (7, 6));

        let bad = SMALL.replace("2: 1 1", "2: 1 3");
        let e = parse_table(&bad).unwrap_err();
        assert_eq!((e.line, e.column), (9, 8));

        let e = parse_table("brauer-table 2\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_table(&SMALL.replace("end\n", "")).is_err());
        assert!(parse_table(&SMALL.replace("  1, -1\n", "  1\n")).is_err());
    }

    #[test]
    fn fusion_round_trip() {
        let src = "brauer-fusion 1\nC5 A5 subgroup\n1 4\n5 5 4\n";
        let f = parse_fusion(src).unwrap();
        assert_eq!(f.map(), &[0, 3, 4, 4, 3]);
        assert_eq!(parse_fusion(&write_fusion(&f)).unwrap(), f);
        let e = parse_fusion("brauer-fusion 1\nC5 A5 sideways\n1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
    }
}
