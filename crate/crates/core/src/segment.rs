//! Cuspidal lines, cuspidal points and segments.
//!
//! A cuspidal line is the family `{ν^a ρ : a ∈ ℤ}` of twists of one
//! cuspidal representation `ρ`. Everything here works with exponents on a
//! line; points on different lines are never comparable.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a line inside a [`LineTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LineId(pub u32);

impl LineId {
    /// The line every table starts with: dimension 1, self-dual.
    pub const DEFAULT: LineId = LineId(0);
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspidalLine {
    pub name: String,
    /// `n(ρ)`; only enters absolute lengths.
    pub dim: u32,
    pub dual: LineId,
}

impl CuspidalLine {
    pub fn is_self_dual(&self, id: LineId) -> bool {
        self.dual == id
    }
}

/// The set of cuspidal lines in use. Index 0 is always the default line,
/// named [`LineTable::DEFAULT_NAME`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineTable {
    lines: Vec<CuspidalLine>,
}

impl Default for LineTable {
    fn default() -> Self {
        LineTable { lines: vec![CuspidalLine { name: Self::DEFAULT_NAME.to_string(), dim: 1, dual: LineId::DEFAULT }] }
    }
}

/// A line declaration before dual names are resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineDecl {
    pub name: String,
    pub dim: u32,
    /// `None` means self-dual.
    pub dual: Option<String>,
}

impl LineTable {
    pub const DEFAULT_NAME: &'static str = "1";

    /// Builds a table from declarations on top of the default line.
    ///
    /// Duals may be declared in any order; the dual map must be an
    /// involution and dual lines must share a dimension.
    pub fn from_decls(decls: &[LineDecl]) -> Result<Self> {
        let mut table = LineTable::default();
        for d in decls {
            if d.dim == 0 {
                return Err(Error::LineTable(format!("line `{}` has dimension 0", d.name)));
            }
            if !is_ident(&d.name) {
                return Err(Error::LineTable(format!("`{}` is not a valid line name", d.name)));
            }
            if table.lookup(&d.name).is_some() {
                return Err(Error::LineTable(format!("line `{}` declared twice", d.name)));
            }
            let id = LineId(table.lines.len() as u32);
            table.lines.push(CuspidalLine { name: d.name.clone(), dim: d.dim, dual: id });
        }
        for d in decls {
            let id = table.lookup(&d.name).expect("declared above");
            if let Some(dual) = &d.dual {
                let dual_id = table.lookup(dual).ok_or_else(|| Error::UnknownLine(dual.clone()))?;
                table.lines[id.0 as usize].dual = dual_id;
            }
        }
        for (i, line) in table.lines.iter().enumerate() {
            let back = table.line(line.dual).dual;
            if back.0 as usize != i {
                return Err(Error::LineTable(format!(
                    "dual of `{}` is `{}`, whose dual is `{}`",
                    line.name,
                    table.line(line.dual).name,
                    table.line(back).name
                )));
            }
            if table.line(line.dual).dim != line.dim {
                return Err(Error::LineTable(format!(
                    "`{}` and its dual `{}` have different dimensions",
                    line.name,
                    table.line(line.dual).name
                )));
            }
        }
        Ok(table)
    }

    /// A table with `count` self-dual dimension-1 lines: the default line
    /// followed by `rho1`, `rho2`, ...
    pub fn with_self_dual_lines(count: usize) -> Self {
        let decls: Vec<LineDecl> =
            (1..count.max(1)).map(|i| LineDecl { name: format!("rho{i}"), dim: 1, dual: None }).collect();
        Self::from_decls(&decls).expect("generated names are valid")
    }

    pub fn lookup(&self, name: &str) -> Option<LineId> {
        self.lines.iter().position(|l| l.name == name).map(|i| LineId(i as u32))
    }

    pub fn line(&self, id: LineId) -> &CuspidalLine {
        &self.lines[id.0 as usize]
    }

    pub fn dim(&self, id: LineId) -> u32 {
        self.line(id).dim
    }

    pub fn dual(&self, id: LineId) -> LineId {
        self.line(id).dual
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = LineId> + '_ {
        (0..self.lines.len()).map(|i| LineId(i as u32))
    }

    /// Declarations reproducing this table (the default line excluded).
    pub fn decls(&self) -> Vec<LineDecl> {
        self.ids()
            .skip(1)
            .map(|id| {
                let l = self.line(id);
                LineDecl {
                    name: l.name.clone(),
                    dim: l.dim,
                    dual: (l.dual != id).then(|| self.line(l.dual).name.clone()),
                }
            })
            .collect()
    }
}

pub(crate) fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `ν^exp ρ` for the line's `ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspidalPoint {
    pub line: LineId,
    pub exp: i64,
}

impl CuspidalPoint {
    pub fn new(line: LineId, exp: i64) -> Self {
        CuspidalPoint { line, exp }
    }

    /// `self < other`: same line and `other = ν^c self` with `c > 0`.
    pub fn precedes(self, other: CuspidalPoint) -> bool {
        self.line == other.line && self.exp < other.exp
    }

    /// `self ≤ other` in the cuspidal order.
    pub fn precedes_or_eq(self, other: CuspidalPoint) -> bool {
        self.line == other.line && self.exp <= other.exp
    }

    /// `ν·self`.
    pub fn twist(self) -> CuspidalPoint {
        CuspidalPoint { line: self.line, exp: self.exp + 1 }
    }
}

/// A nonempty segment `[a,b]_ρ` with `a ≤ b`.
///
/// The empty segment is never a `Segment`; operations that may produce it
/// return `Option<Segment>`. The derived ordering is the canonical one:
/// line, then `a`, then `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    line: LineId,
    a: i64,
    b: i64,
}

/// How two segments sit relative to each other. Exactly one variant holds
/// for any ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegmentRelation {
    Equal,
    /// The first strictly contains the second.
    Contains,
    /// The first is strictly contained in the second.
    ContainedIn,
    /// Same line, union not a segment.
    UnlinkedDisjoint,
    /// Linked with `a(Δ₁) < a(Δ₂)`, i.e. `Δ₁ < Δ₂`.
    LinkedBefore,
    /// Linked with `a(Δ₂) < a(Δ₁)`, i.e. `Δ₂ < Δ₁`.
    LinkedAfter,
    DifferentLine,
}

impl SegmentRelation {
    pub fn is_linked(self) -> bool {
        matches!(self, SegmentRelation::LinkedBefore | SegmentRelation::LinkedAfter)
    }
}

impl Segment {
    /// `[a,b]_line`; rejects `b < a`.
    pub fn new(line: LineId, a: i64, b: i64) -> Result<Segment> {
        if b < a {
            return Err(Error::EmptySegment { a, b });
        }
        Ok(Segment { line, a, b })
    }

    /// `[a,b]` on the default line. Panics when `b < a`; meant for literals.
    pub fn on_default(a: i64, b: i64) -> Segment {
        Segment::new(LineId::DEFAULT, a, b).expect("nonempty segment literal")
    }

    /// `[a,b]` or `None` for the empty segment `[a,a−1]` and below.
    pub fn new_or_empty(line: LineId, a: i64, b: i64) -> Option<Segment> {
        (a <= b).then_some(Segment { line, a, b })
    }

    pub fn line(&self) -> LineId {
        self.line
    }

    /// Exponent of the beginning `a(Δ)`.
    pub fn a(&self) -> i64 {
        self.a
    }

    /// Exponent of the end `b(Δ)`.
    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn begin(&self) -> CuspidalPoint {
        CuspidalPoint::new(self.line, self.a)
    }

    pub fn end(&self) -> CuspidalPoint {
        CuspidalPoint::new(self.line, self.b)
    }

    pub fn points(&self) -> impl Iterator<Item = CuspidalPoint> + '_ {
        (self.a..=self.b).map(move |e| CuspidalPoint::new(self.line, e))
    }

    pub fn relative_len(&self) -> i64 {
        self.b - self.a + 1
    }

    pub fn absolute_len(&self, table: &LineTable) -> i64 {
        self.relative_len() * i64::from(table.dim(self.line))
    }

    /// `(relative, absolute)` lengths.
    pub fn lengths(&self, table: &LineTable) -> (i64, i64) {
        (self.relative_len(), self.absolute_len(table))
    }

    pub fn contains(&self, other: &Segment) -> bool {
        self.line == other.line && self.a <= other.a && other.b <= self.b
    }

    pub fn relation(&self, other: &Segment) -> SegmentRelation {
        use SegmentRelation::*;
        if self.line != other.line {
            return DifferentLine;
        }
        if self == other {
            return Equal;
        }
        if self.contains(other) {
            return Contains;
        }
        if other.contains(self) {
            return ContainedIn;
        }
        // no containment either way: a and b are ordered the same way
        if self.a.max(other.a) <= self.b.min(other.b) + 1 {
            if self.a < other.a {
                LinkedBefore
            } else {
                LinkedAfter
            }
        } else {
            UnlinkedDisjoint
        }
    }

    /// `self < other`: linked with `a(self) < a(other)`.
    pub fn precedes(&self, other: &Segment) -> bool {
        self.line == other.line && self.a < other.a && self.b < other.b && other.a <= self.b + 1
    }

    pub fn is_linked(&self, other: &Segment) -> bool {
        self.precedes(other) || other.precedes(self)
    }

    /// `(Δ₁ ∪ Δ₂, Δ₁ ∩ Δ₂)` for a linked pair; the intersection may be empty.
    pub fn union_intersection(&self, other: &Segment) -> Result<(Segment, Option<Segment>)> {
        if !self.is_linked(other) {
            return Err(Error::NotLinked(*self, *other));
        }
        let union = Segment { line: self.line, a: self.a.min(other.a), b: self.b.max(other.b) };
        let inter = Segment::new_or_empty(self.line, self.a.max(other.a), self.b.min(other.b));
        Ok((union, inter))
    }

    /// `←Δ = [a−1, b−1]`.
    pub fn shift_left(&self) -> Segment {
        Segment { line: self.line, a: self.a - 1, b: self.b - 1 }
    }

    /// `→Δ = [a+1, b+1]`.
    pub fn shift_right(&self) -> Segment {
        Segment { line: self.line, a: self.a + 1, b: self.b + 1 }
    }

    /// `Δ∨ = [−b, −a]` on the dual line.
    pub fn dual(&self, table: &LineTable) -> Segment {
        Segment { line: table.dual(self.line), a: -self.b, b: -self.a }
    }

    /// `ν·b(Δ) ≅ a(Δ′)` or `ν·b(Δ′) ≅ a(Δ)`.
    pub fn is_juxtaposed(&self, other: &Segment) -> bool {
        self.line == other.line && (self.b + 1 == other.a || other.b + 1 == self.a)
    }

    /// Whether `self` is `base`-saturated: same end and `a(base) ≤ a(self)`.
    pub fn is_saturated_by(&self, base: &Segment) -> bool {
        self.line == base.line && self.b == base.b && base.a <= self.a
    }

    /// `self ≤_b other`: `b(self) < b(other)`, or equal ends and
    /// `a(self) ≤ a(other)`.
    pub fn leq_b(&self, other: &Segment) -> bool {
        self.line == other.line && (self.b < other.b || (self.b == other.b && self.a <= other.a))
    }

    /// `self ≤_a other`: `a(self) < a(other)`, or equal beginnings and
    /// `b(self) ≤ b(other)`.
    pub fn leq_a(&self, other: &Segment) -> bool {
        self.line == other.line && (self.a < other.a || (self.a == other.a && self.b <= other.b))
    }
}

/// Raw rendering without line names; see [`crate::notation`] for the
/// interchange syntax.
impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == self.b {
            write!(f, "[{}]", self.a)?;
        } else {
            write!(f, "[{},{}]", self.a, self.b)?;
        }
        if self.line != LineId::DEFAULT {
            write!(f, "_#{}", self.line.0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SegmentRelation::*;

    fn s(a: i64, b: i64) -> Segment {
        Segment::on_default(a, b)
    }

    #[test]
    fn relation_examples() {
        assert_eq!(s(0, 1).relation(&s(1, 2)), LinkedBefore);
        assert_eq!(s(1, 1).relation(&s(1, 5)), ContainedIn);
        assert_eq!(s(0, 0).relation(&s(2, 3)), UnlinkedDisjoint);
        assert_eq!(s(1, 2).relation(&s(0, 1)), LinkedAfter);
        assert_eq!(s(0, 3).relation(&s(1, 2)), Contains);
        assert_eq!(s(0, 3).relation(&s(0, 3)), Equal);
        let other = Segment::new(LineId(1), 0, 1).unwrap();
        assert_eq!(s(0, 1).relation(&other), DifferentLine);
    }

    #[test]
    fn juxtaposed_pair_is_linked() {
        assert!(s(0, 0).precedes(&s(1, 5)));
        assert!(s(0, 1).is_juxtaposed(&s(2, 3)));
        assert!(!s(0, 1).is_juxtaposed(&s(1, 2)));
        let other = Segment::new(LineId(1), 2, 3).unwrap();
        assert!(!s(0, 1).is_juxtaposed(&other));
    }

    #[test]
    fn union_intersection_examples() {
        assert_eq!(s(0, 1).union_intersection(&s(1, 2)).unwrap(), (s(0, 2), Some(s(1, 1))));
        assert_eq!(s(0, 1).union_intersection(&s(2, 3)).unwrap(), (s(0, 3), None));
        assert_eq!(s(0, 0).union_intersection(&s(0, 1)), Err(Error::NotLinked(s(0, 0), s(0, 1))));
    }

    #[test]
    fn shifts_and_duals() {
        assert_eq!(s(1, 5).shift_left(), s(0, 4));
        assert_eq!(s(0, 0).shift_left(), s(-1, -1));
        let table = LineTable::from_decls(&[
            LineDecl { name: "rho".into(), dim: 2, dual: Some("rhov".into()) },
            LineDecl { name: "rhov".into(), dim: 2, dual: Some("rho".into()) },
        ])
        .unwrap();
        let rho = table.lookup("rho").unwrap();
        let rhov = table.lookup("rhov").unwrap();
        let d = Segment::new(rho, 3, 4).unwrap();
        assert_eq!(d.shift_left(), Segment::new(rho, 2, 3).unwrap());
        assert_eq!(Segment::new(rho, 0, 2).unwrap().dual(&table), Segment::new(rhov, -2, 0).unwrap());
        assert_eq!(Segment::new(rho, 0, 2).unwrap().lengths(&table), (3, 6));
    }

    #[test]
    fn saturation_and_orders() {
        assert!(s(2, 4).is_saturated_by(&s(1, 4)));
        assert!(!s(1, 3).is_saturated_by(&s(1, 4)));
        assert!(!s(0, 4).is_saturated_by(&s(1, 4)));
        assert!(s(0, 2).leq_b(&s(1, 2)));
        assert!(!s(0, 2).leq_b(&s(0, 1)));
        assert!(s(1, 3).leq_a(&s(1, 5)));
    }

    #[test]
    fn empty_segments_are_rejected() {
        assert_eq!(Segment::new(LineId::DEFAULT, 2, 0), Err(Error::EmptySegment { a: 2, b: 0 }));
        assert_eq!(Segment::new_or_empty(LineId::DEFAULT, 3, 2), None);
    }

    #[test]
    fn line_table_rejects_broken_duals() {
        let bad = LineTable::from_decls(&[
            LineDecl { name: "x".into(), dim: 1, dual: Some("y".into()) },
            LineDecl { name: "y".into(), dim: 1, dual: None },
        ]);
        assert!(matches!(bad, Err(Error::LineTable(_))));
        let unknown = LineTable::from_decls(&[LineDecl { name: "x".into(), dim: 1, dual: Some("z".into()) }]);
        assert_eq!(unknown, Err(Error::UnknownLine("z".into())));
        let zero = LineTable::from_decls(&[LineDecl { name: "x".into(), dim: 0, dual: None }]);
        assert!(zero.is_err());
    }

    #[test]
    fn exhaustive_relation_laws() {
        let segs: Vec<Segment> = (-3..=3).flat_map(|a| (a..=3).map(move |b| s(a, b))).collect();
        let table = LineTable::default();
        for x in &segs {
            assert!(!x.is_linked(x));
            assert_eq!(x.shift_left().dual(&table), x.dual(&table).shift_right());
            for y in &segs {
                let r = x.relation(y);
                let flipped = y.relation(x);
                assert_eq!(r == LinkedBefore, flipped == LinkedAfter);
                assert_eq!(r == LinkedBefore, x.precedes(y));
                if x.precedes(y) {
                    assert!(x.a() < y.a() && x.b() < y.b());
                    let (u, i) = x.union_intersection(y).unwrap();
                    let li = i.map_or(0, |i| i.relative_len());
                    assert_eq!(x.relative_len() + y.relative_len(), u.relative_len() + li);
                }
                assert_eq!(x.precedes(y), y.dual(&table).precedes(&x.dual(&table)));
            }
        }
    }
}
