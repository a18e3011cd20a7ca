//! Multisegments: finite multisets of nonempty segments.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::segment::{CuspidalPoint, LineTable, Segment};

/// A multiset of nonempty segments, stored sorted in canonical order with
/// repetitions. Two multisegments are equal iff they are equal as multisets.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multisegment {
    entries: Vec<Segment>,
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<I: IntoIterator<Item = Segment>>(iter: I) -> Self {
        let mut entries: Vec<Segment> = iter.into_iter().collect();
        entries.sort_unstable();
        Multisegment { entries }
    }
}

impl From<Segment> for Multisegment {
    fn from(s: Segment) -> Self {
        Multisegment { entries: vec![s] }
    }
}

impl Multisegment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Segments in canonical order, repeated according to multiplicity.
    pub fn segments(&self) -> &[Segment] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Segment> {
        self.entries.iter()
    }

    /// Number of segments counted with multiplicity.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, s: &Segment) -> usize {
        self.entries.iter().filter(|x| *x == s).count()
    }

    pub fn contains(&self, s: &Segment) -> bool {
        self.entries.binary_search(s).is_ok()
    }

    /// Distinct segments with their multiplicities, in canonical order.
    pub fn distinct(&self) -> Vec<(Segment, usize)> {
        self.entries.iter().dedup_with_count().map(|(n, s)| (*s, n)).collect()
    }

    pub fn insert(&mut self, s: Segment) {
        let pos = self.entries.partition_point(|x| *x <= s);
        self.entries.insert(pos, s);
    }

    /// `self + other`.
    pub fn sum(&self, other: &Multisegment) -> Multisegment {
        self.entries.iter().chain(other.entries.iter()).copied().collect()
    }

    /// `self − Δ`.
    pub fn remove(&self, s: &Segment) -> Result<Multisegment> {
        let pos = self.entries.binary_search(s).map_err(|_| Error::SubtractUnderflow(*s))?;
        let mut entries = self.entries.clone();
        entries.remove(pos);
        Ok(Multisegment { entries })
    }

    /// `self − other`; `other` must be a sub-multiset.
    pub fn subtract(&self, other: &Multisegment) -> Result<Multisegment> {
        let mut out = self.clone();
        for s in other.iter() {
            out = out.remove(s)?;
        }
        Ok(out)
    }

    pub fn is_submultiset_of(&self, other: &Multisegment) -> bool {
        other.subtract(self).is_ok()
    }

    /// `𝔪_{b=ρ}`: the segments ending at `end`.
    pub fn slice_b(&self, end: CuspidalPoint) -> Multisegment {
        self.entries.iter().filter(|s| s.end() == end).copied().collect()
    }

    /// The cuspidal support as a multiset of points.
    pub fn support(&self) -> BTreeMap<CuspidalPoint, usize> {
        let mut out = BTreeMap::new();
        for p in self.entries.iter().flat_map(|s| s.points()) {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    /// No two segments are linked.
    pub fn is_generic(&self) -> bool {
        self.entries.iter().tuple_combinations().all(|(x, y)| !x.is_linked(y))
    }

    /// Every segment is `base`-saturated.
    pub fn is_saturated_by(&self, base: &Segment) -> bool {
        self.entries.iter().all(|s| s.is_saturated_by(base))
    }

    pub fn relative_len(&self) -> i64 {
        self.entries.iter().map(Segment::relative_len).sum()
    }

    pub fn absolute_len(&self, table: &LineTable) -> i64 {
        self.entries.iter().map(|s| s.absolute_len(table)).sum()
    }

    /// `(relative, absolute)` lengths; both 0 for the empty multisegment.
    pub fn lengths(&self, table: &LineTable) -> (i64, i64) {
        (self.relative_len(), self.absolute_len(table))
    }

    /// `𝔪∨`, entrywise.
    pub fn dual(&self, table: &LineTable) -> Multisegment {
        self.entries.iter().map(|s| s.dual(table)).collect()
    }

    /// Relative lengths sorted in decreasing order.
    pub fn length_profile(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.entries.iter().map(Segment::relative_len).collect();
        v.sort_unstable_by_key(|&l| Reverse(l));
        v
    }

    /// A labeling `Δ₁, …, Δ_r` with `b(Δ_i) ≮ b(Δ_{i+1})` for every
    /// consecutive pair. Within a line segments are listed by decreasing end,
    /// ties broken by canonical order.
    pub fn canonical_labeling(&self) -> Vec<Segment> {
        let mut v = self.entries.clone();
        v.sort_by_key(|s| (s.line(), Reverse(s.b()), s.a()));
        v
    }
}

impl<'a> IntoIterator for &'a Multisegment {
    type Item = &'a Segment;
    type IntoIter = std::slice::Iter<'a, Segment>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

/// Checks the labeling condition directly: no consecutive pair has
/// `b(Δ_i) < b(Δ_{i+1})`.
pub fn is_valid_labeling(labels: &[Segment]) -> bool {
    labels.windows(2).all(|w| !w[0].end().precedes(w[1].end()))
}
