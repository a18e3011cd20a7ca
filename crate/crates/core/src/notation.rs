//! Text syntax for segments and multisegments.
//!
//! ```text
//! Mult := "0" | Seg ("+" Seg)*
//! Seg  := "[" Int ("," Int)? "]" ("_" Ident)?
//! ```
//!
//! `[a]` abbreviates `[a,a]` and an omitted line means the default line.
//! Whitespace between tokens is ignored. A document may start with line
//! declarations, one per line:
//!
//! ```text
//! @line rho dim=2 dual=rhov
//! @line rhov dim=2 dual=rho
//! [0,1]_rho+[3]_rhov
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::multiseg::Multisegment;
use crate::segment::{is_ident, LineDecl, LineId, LineTable, Segment};

/// Parse failure. `pos` is a 0-based character offset into the parsed text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty segments are not writable: [{a},{b}] at position {pos}")]
    EmptySegment { pos: usize, a: i64, b: i64 },
    #[error("unknown line `{name}` at position {pos}")]
    UnknownLine { pos: usize, name: String },
    #[error("bad line declaration on line {line}: {msg}")]
    Declaration { line: usize, msg: String },
}

impl NotationError {
    pub fn position(&self) -> Option<usize> {
        match self {
            NotationError::Syntax { pos, .. }
            | NotationError::EmptySegment { pos, .. }
            | NotationError::UnknownLine { pos, .. } => Some(*pos),
            NotationError::Declaration { .. } => None,
        }
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    table: &'a LineTable,
}

impl<'a> Cursor<'a> {
    fn new(text: &str, table: &'a LineTable) -> Self {
        Cursor { chars: text.chars().collect(), pos: 0, table }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, NotationError> {
        Err(NotationError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), NotationError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected `{c}`, found `{x}`")),
            None => self.err(format!("expected `{c}`, found end of input")),
        }
    }

    fn int(&mut self) -> Result<i64, NotationError> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return self.err("expected an integer");
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| NotationError::Syntax { pos: start, msg: format!("integer `{text}` out of range") })
    }

    fn ident(&mut self) -> Result<String, NotationError> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a line name after `_`");
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn segment(&mut self) -> Result<Segment, NotationError> {
        self.skip_ws();
        let start = self.pos;
        self.expect('[')?;
        let a = self.int()?;
        let b = if self.peek() == Some(',') {
            self.pos += 1;
            self.int()?
        } else {
            a
        };
        self.expect(']')?;
        // the line suffix is glued to the closing bracket
        let line = if self.chars.get(self.pos) == Some(&'_') {
            self.pos += 1;
            let name_pos = self.pos;
            let name = self.ident()?;
            self.table.lookup(&name).ok_or(NotationError::UnknownLine { pos: name_pos, name })?
        } else {
            LineId::DEFAULT
        };
        Segment::new(line, a, b).map_err(|_| NotationError::EmptySegment { pos: start, a, b })
    }

    fn multisegment(&mut self) -> Result<Multisegment, NotationError> {
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                self.end()?;
                return Ok(Multisegment::new());
            }
            None => return self.err("empty input; write `0` for the empty multisegment"),
            _ => {}
        }
        let mut segs = vec![self.segment()?];
        while self.peek() == Some('+') {
            self.pos += 1;
            segs.push(self.segment()?);
        }
        self.end()?;
        Ok(segs.into_iter().collect())
    }

    fn end(&mut self) -> Result<(), NotationError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }
}

/// Parses a multisegment expression against `table`.
pub fn parse_multisegment(text: &str, table: &LineTable) -> Result<Multisegment, NotationError> {
    Cursor::new(text, table).multisegment()
}

/// Parses a single segment, e.g. `[1,5]` or `[3]_rho`.
pub fn parse_segment(text: &str, table: &LineTable) -> Result<Segment, NotationError> {
    let mut c = Cursor::new(text, table);
    let s = c.segment()?;
    c.end()?;
    Ok(s)
}

/// Parses `@line NAME [dim=K] [dual=NAME2]`. Line numbers in errors are
/// 1-based.
pub fn parse_line_decl(text: &str, line: usize) -> Result<LineDecl, NotationError> {
    let bad = |msg: String| NotationError::Declaration { line, msg };
    let mut words = text.split_whitespace();
    if words.next() != Some("@line") {
        return Err(bad("expected `@line`".into()));
    }
    let name = words.next().ok_or_else(|| bad("missing line name".into()))?;
    if !is_ident(name) {
        return Err(bad(format!("`{name}` is not a valid line name")));
    }
    let mut decl = LineDecl { name: name.to_string(), dim: 1, dual: None };
    for w in words {
        match w.split_once('=') {
            Some(("dim", v)) => {
                decl.dim = v
                    .parse()
                    .ok()
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| bad(format!("dimension `{v}` is not a positive integer")))?;
            }
            Some(("dual", v)) if is_ident(v) => decl.dual = Some(v.to_string()),
            _ => return Err(bad(format!("unrecognized attribute `{w}`"))),
        }
    }
    Ok(decl)
}

/// Builds a line table from declaration lines.
pub fn parse_line_table<'s>(lines: impl IntoIterator<Item = &'s str>) -> Result<LineTable, NotationError> {
    let decls = lines.into_iter().enumerate().map(|(i, l)| parse_line_decl(l, i + 1)).collect::<Result<Vec<_>, _>>()?;
    LineTable::from_decls(&decls).map_err(|e| NotationError::Declaration { line: 0, msg: e.to_string() })
}

/// Parses a document: optional `@line` preamble, then one expression.
/// Positions in expression errors are relative to the expression text.
pub fn parse_document(text: &str) -> Result<(LineTable, Multisegment), NotationError> {
    let mut decls = Vec::new();
    let mut body = String::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.starts_with('@') {
            if !body.trim().is_empty() {
                return Err(NotationError::Declaration {
                    line: i + 1,
                    msg: "declarations must precede the expression".into(),
                });
            }
            decls.push(parse_line_decl(trimmed, i + 1)?);
        } else {
            body.push_str(line);
            body.push(' ');
        }
    }
    let table =
        LineTable::from_decls(&decls).map_err(|e| NotationError::Declaration { line: 0, msg: e.to_string() })?;
    let m = parse_multisegment(body.trim_end(), &table)?;
    Ok((table, m))
}

pub fn print_segment(s: &Segment, table: &LineTable) -> String {
    let mut out = String::new();
    write_segment(&mut out, s, table);
    out
}

fn write_segment(out: &mut String, s: &Segment, table: &LineTable) {
    if s.a() == s.b() {
        let _ = write!(out, "[{}]", s.a());
    } else {
        let _ = write!(out, "[{},{}]", s.a(), s.b());
    }
    if s.line() != LineId::DEFAULT {
        let _ = write!(out, "_{}", table.line(s.line()).name);
    }
}

/// Canonical text: segments in canonical order joined by `+`, `0` when empty.
pub fn print_multisegment(m: &Multisegment, table: &LineTable) -> String {
    if m.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, s) in m.iter().enumerate() {
        if i > 0 {
            out.push('+');
        }
        write_segment(&mut out, s, table);
    }
    out
}

/// Preamble for every non-default line of `table`, then the expression.
pub fn print_document(m: &Multisegment, table: &LineTable) -> String {
    let mut out = String::new();
    for d in table.decls() {
        let _ = write!(out, "@line {} dim={}", d.name, d.dim);
        if let Some(dual) = d.dual {
            let _ = write!(out, " dual={dual}");
        }
        out.push('\n');
    }
    out.push_str(&print_multisegment(m, table));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, b: i64) -> Segment {
        Segment::on_default(a, b)
    }

    #[test]
    fn parses_remark_fixture() {
        let t = LineTable::default();
        let m = parse_multisegment("[0]+[1,5]", &t).unwrap();
        assert_eq!(m.segments(), &[s(0, 0), s(1, 5)]);
        assert_eq!(parse_multisegment("0", &t).unwrap(), Multisegment::new());
        assert_eq!(parse_multisegment(" [1,5] + [0] ", &t).unwrap(), m);
    }

    #[test]
    fn rejects_reversed_endpoints() {
        let t = LineTable::default();
        assert_eq!(parse_multisegment("[2,0]", &t), Err(NotationError::EmptySegment { pos: 0, a: 2, b: 0 }));
        let err = parse_multisegment("[0]+[3,1]", &t).unwrap_err();
        assert_eq!(err.position(), Some(4));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let t = LineTable::default();
        assert_eq!(parse_multisegment("[0]+", &t).unwrap_err().position(), Some(4));
        assert_eq!(parse_multisegment("[0,]", &t).unwrap_err().position(), Some(3));
        assert_eq!(parse_multisegment("[0] [1]", &t).unwrap_err().position(), Some(4));
        assert!(parse_multisegment("", &t).is_err());
        assert!(parse_multisegment("0+[1]", &t).is_err());
        assert_eq!(parse_multisegment("[0]_rho", &t), Err(NotationError::UnknownLine { pos: 4, name: "rho".into() }));
    }

    #[test]
    fn duplicates_accumulate() {
        let t = LineTable::default();
        let m = parse_multisegment("[0,1]+[0,1]+[0,1]", &t).unwrap();
        assert_eq!(m.multiplicity(&s(0, 1)), 3);
    }

    #[test]
    fn prints_canonically() {
        let t = LineTable::default();
        let m: Multisegment = [s(1, 5), s(0, 0)].into_iter().collect();
        assert_eq!(print_multisegment(&m, &t), "[0]+[1,5]");
        assert_eq!(print_multisegment(&Multisegment::new(), &t), "0");
    }

    #[test]
    fn document_with_lines() {
        let text = "@line rho dim=2 dual=rhov\n@line rhov dim=2 dual=rho\n[3,4]_rho";
        let (table, m) = parse_document(text).unwrap();
        assert_eq!(print_multisegment(&m, &table), "[3,4]_rho");
        assert_eq!(m.absolute_len(&table), 4);
        let again = print_document(&m, &table);
        assert_eq!(parse_document(&again).unwrap(), (table.clone(), m.clone()));
        assert_eq!(print_multisegment(&m.dual(&table), &table), "[-4,-3]_rhov");
    }

    #[test]
    fn explicit_default_line_suffix() {
        let t = LineTable::default();
        assert_eq!(parse_segment("[2,3]_1", &t).unwrap(), s(2, 3));
    }

    #[test]
    fn bad_declarations() {
        assert!(matches!(parse_document("@line rho dim=0\n0"), Err(NotationError::Declaration { .. })));
        assert!(matches!(parse_document("@line rho color=red\n0"), Err(NotationError::Declaration { .. })));
        assert!(matches!(parse_document("[0]\n@line rho\n"), Err(NotationError::Declaration { .. })));
    }
}
