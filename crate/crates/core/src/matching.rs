//! Matching criteria LC/RC for products of a multisegment with a segment.
//!
//! Fix the labeling `Δ₁, …, Δ_r` of `𝔪` given by
//! [`Multisegment::canonical_labeling`]. For a segment `Δ`:
//!
//! * `X = {i : Δ_i < Δ}`, `X̃ = {i : ←Δ_i < Δ}`;
//! * `Y = {i : Δ < Δ_i}`, `Ỹ = {i : ←Δ < Δ_i}`.
//!
//! `LC(𝔪, Δ)` asks for an injection `f : X → X̃` with `Δ_i < Δ_{f(i)}`,
//! `RC(𝔪, Δ)` for an injection `f : Y → Ỹ` with `Δ_{f(i)} < Δ_i`.
//! `⟨𝔪⟩ × ⟨Δ⟩` is irreducible iff both hold. Indices in witnesses always
//! refer to positions in the canonical labeling.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiseg::Multisegment;
use crate::segment::Segment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "LC")]
    Lc,
    #[serde(rename = "RC")]
    Rc,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Lc => "LC",
            Side::Rc => "RC",
        })
    }
}

/// `(X, X̃)` over the labeling `labels`.
pub fn lc_sets_labeled(labels: &[Segment], target: &Segment) -> (Vec<usize>, Vec<usize>) {
    let x = indices(labels, |s| s.precedes(target));
    let x_tilde = indices(labels, |s| s.shift_left().precedes(target));
    debug_assert_eq!(x_tilde, indices(labels, |s| s.precedes(&target.shift_right())));
    (x, x_tilde)
}

/// `(Y, Ỹ)` over the labeling `labels`.
pub fn rc_sets_labeled(labels: &[Segment], target: &Segment) -> (Vec<usize>, Vec<usize>) {
    let y = indices(labels, |s| target.precedes(s));
    let shifted = target.shift_left();
    let y_tilde = indices(labels, |s| shifted.precedes(s));
    (y, y_tilde)
}

fn indices(labels: &[Segment], pred: impl Fn(&Segment) -> bool) -> Vec<usize> {
    labels.iter().enumerate().filter(|(_, s)| pred(s)).map(|(i, _)| i).collect()
}

/// `(X, X̃)` for `m` in its canonical labeling.
pub fn lc_sets(m: &Multisegment, target: &Segment) -> (Vec<usize>, Vec<usize>) {
    lc_sets_labeled(&m.canonical_labeling(), target)
}

/// `(Y, Ỹ)` for `m` in its canonical labeling.
pub fn rc_sets(m: &Multisegment, target: &Segment) -> (Vec<usize>, Vec<usize>) {
    rc_sets_labeled(&m.canonical_labeling(), target)
}

/// An injective assignment `left → right`, stored as pairs sorted by the
/// left index. Serializes as `[[left, right], ...]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatchingWitness {
    pairs: Vec<(usize, usize)>,
}

impl MatchingWitness {
    pub fn from_pairs(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        MatchingWitness { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn get(&self, left: usize) -> Option<usize> {
        self.pairs.binary_search_by_key(&left, |p| p.0).ok().map(|k| self.pairs[k].1)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// One LC or RC question: the labeled multisegment, the target segment and
/// the two index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingInstance {
    pub side: Side,
    pub target: Segment,
    pub labels: Vec<Segment>,
    /// `X` or `Y`.
    pub left: Vec<usize>,
    /// `X̃` or `Ỹ`.
    pub right: Vec<usize>,
}

impl MatchingInstance {
    pub fn new(side: Side, m: &Multisegment, target: Segment) -> Self {
        let labels = m.canonical_labeling();
        let (left, right) = match side {
            Side::Lc => lc_sets_labeled(&labels, &target),
            Side::Rc => rc_sets_labeled(&labels, &target),
        };
        MatchingInstance { side, target, labels, left, right }
    }

    /// `Δ_i < Δ_j` for LC, `Δ_j < Δ_i` for RC.
    pub fn admissible(&self, i: usize, j: usize) -> bool {
        match self.side {
            Side::Lc => self.labels[i].precedes(&self.labels[j]),
            Side::Rc => self.labels[j].precedes(&self.labels[i]),
        }
    }

    /// Checks that `w` is defined exactly on the left set, lands in the
    /// right set, is injective, and respects admissibility.
    pub fn verify(&self, w: &MatchingWitness) -> Result<()> {
        let domain: Vec<usize> = w.pairs.iter().map(|p| p.0).collect();
        if domain != self.left {
            return Err(Error::InvalidWitness(format!(
                "{} witness for {} is defined on {:?}, expected {:?}",
                self.side, self.target, domain, self.left
            )));
        }
        let mut seen = Vec::with_capacity(w.len());
        for &(i, j) in &w.pairs {
            if !self.right.contains(&j) {
                return Err(Error::InvalidWitness(format!(
                    "{} witness for {} sends {i} to {j}, outside {:?}",
                    self.side, self.target, self.right
                )));
            }
            if seen.contains(&j) {
                return Err(Error::InvalidWitness(format!(
                    "{} witness for {} is not injective at {j}",
                    self.side, self.target
                )));
            }
            seen.push(j);
            if !self.admissible(i, j) {
                return Err(Error::InvalidWitness(format!(
                    "{} witness for {} pairs {} with {}, which is not admissible",
                    self.side, self.target, self.labels[i], self.labels[j]
                )));
            }
        }
        Ok(())
    }
}

/// Which relation the matcher uses on index pairs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Admissibility {
    #[default]
    Strict,
    /// Test hook: accepts every pair, so LC/RC degrade to `|X| ≤ |X̃|`.
    /// Used to show that the verification suites can fail.
    CorruptAcceptAll,
}

/// Decides LC/RC by maximum bipartite matching.
#[derive(Debug, Clone, Copy, Default)]
pub struct Matcher {
    pub admissibility: Admissibility,
}

impl Matcher {
    pub fn corrupted() -> Self {
        Matcher { admissibility: Admissibility::CorruptAcceptAll }
    }

    fn admissible(&self, inst: &MatchingInstance, i: usize, j: usize) -> bool {
        match self.admissibility {
            Admissibility::Strict => inst.admissible(i, j),
            Admissibility::CorruptAcceptAll => true,
        }
    }

    /// Full injective admissible assignment, or `None`.
    ///
    /// Among all witnesses the lexicographically smallest one (by left index,
    /// then smallest right index) is returned.
    pub fn solve(&self, inst: &MatchingInstance) -> Option<MatchingWitness> {
        let adj: Vec<Vec<usize>> = inst
            .left
            .iter()
            .map(|&i| (0..inst.right.len()).filter(|&r| self.admissible(inst, i, inst.right[r])).collect())
            .collect();
        let mut bip = Bipartite::new(&adj, inst.right.len());
        if bip.max_matching(0) < adj.len() {
            return None;
        }
        // lexicographic pass: fix left vertices one by one, keeping the
        // smallest right vertex that leaves a perfect matching of the rest
        let mut pairs = Vec::with_capacity(adj.len());
        for k in 0..adj.len() {
            let choice = adj[k]
                .iter()
                .copied()
                .find(|&r| {
                    if bip.fixed_used[r] {
                        return false;
                    }
                    bip.fixed_used[r] = true;
                    let ok = bip.max_matching(k + 1) == adj.len() - k - 1;
                    bip.fixed_used[r] = false;
                    ok
                })
                .expect("a perfect matching exists, so some choice extends it");
            bip.fixed_used[choice] = true;
            pairs.push((inst.left[k], inst.right[choice]));
        }
        Some(MatchingWitness::from_pairs(pairs))
    }

    pub fn decide(&self, side: Side, m: &Multisegment, target: &Segment) -> Option<MatchingWitness> {
        self.solve(&MatchingInstance::new(side, m, *target))
    }

    pub fn holds(&self, side: Side, m: &Multisegment, target: &Segment) -> bool {
        self.decide(side, m, target).is_some()
    }

    /// `LC(m, Δ) ∧ RC(m, Δ)`.
    pub fn is_irreducible_product(&self, m: &Multisegment, target: &Segment) -> bool {
        self.holds(Side::Lc, m, target) && self.holds(Side::Rc, m, target)
    }
}

/// Augmenting-path matching on a small bipartite graph given as adjacency
/// lists from left vertices to right vertex positions.
struct Bipartite<'a> {
    adj: &'a [Vec<usize>],
    /// Right vertices consumed by already fixed left vertices.
    fixed_used: Vec<bool>,
    owner: Vec<Option<usize>>,
    visited: Vec<bool>,
}

impl<'a> Bipartite<'a> {
    fn new(adj: &'a [Vec<usize>], right: usize) -> Self {
        Bipartite { adj, fixed_used: vec![false; right], owner: vec![None; right], visited: vec![false; right] }
    }

    /// Size of a maximum matching of left vertices `from..` into the right
    /// vertices not in `fixed_used`.
    fn max_matching(&mut self, from: usize) -> usize {
        self.owner.iter_mut().for_each(|o| *o = None);
        let mut size = 0;
        for u in from..self.adj.len() {
            self.visited.iter_mut().for_each(|v| *v = false);
            if self.augment(u) {
                size += 1;
            }
        }
        size
    }

    fn augment(&mut self, u: usize) -> bool {
        for k in 0..self.adj[u].len() {
            let r = self.adj[u][k];
            if self.fixed_used[r] || self.visited[r] {
                continue;
            }
            self.visited[r] = true;
            let free = match self.owner[r] {
                None => true,
                Some(w) => self.augment(w),
            };
            if free {
                self.owner[r] = Some(u);
                return true;
            }
        }
        false
    }
}

/// `LC`/`RC` with the default (strict) matcher.
pub fn decide(side: Side, m: &Multisegment, target: &Segment) -> Option<MatchingWitness> {
    Matcher::default().decide(side, m, target)
}

/// Whether `⟨m⟩ × ⟨Δ⟩` is irreducible.
pub fn is_irreducible_product(m: &Multisegment, target: &Segment) -> bool {
    Matcher::default().is_irreducible_product(m, target)
}

/// Default bound on `|left|` for the brute-force oracle.
pub const BRUTE_BOUND: usize = 6;

/// Independent oracle: the index sets are recomputed from the definitions
/// and all injections `left → right` are enumerated in lexicographic order.
/// Returns the first admissible one, which is the lexicographically smallest.
pub fn brute_decide(side: Side, m: &Multisegment, target: &Segment, bound: usize) -> Result<Option<MatchingWitness>> {
    let mut found = None;
    brute_enumerate(side, m, target, bound, |w| {
        found = Some(w.clone());
        false
    })?;
    Ok(found)
}

/// Every valid witness, in lexicographic order.
pub fn all_witnesses(side: Side, m: &Multisegment, target: &Segment, bound: usize) -> Result<Vec<MatchingWitness>> {
    let mut out = Vec::new();
    brute_enumerate(side, m, target, bound, |w| {
        out.push(w.clone());
        true
    })?;
    Ok(out)
}

/// `(left, right)` recomputed from endpoint inequalities, without going
/// through [`Segment::shift_left`] or the set functions above.
fn oracle_sets(side: Side, labels: &[Segment], target: &Segment) -> (Vec<usize>, Vec<usize>) {
    let n = labels.len();
    match side {
        Side::Lc => (
            (0..n).filter(|&i| labels[i].precedes(target)).collect(),
            (0..n)
                .filter(|&i| {
                    let s = &labels[i];
                    // ←Δ_i < Δ written out on endpoints
                    s.line() == target.line() && s.a() - 1 < target.a() && s.b() - 1 < target.b() && target.a() <= s.b()
                })
                .collect(),
        ),
        Side::Rc => (
            (0..n).filter(|&i| target.precedes(&labels[i])).collect(),
            (0..n)
                .filter(|&i| {
                    let s = &labels[i];
                    // ←Δ < Δ_i written out on endpoints
                    s.line() == target.line() && target.a() - 1 < s.a() && target.b() - 1 < s.b() && s.a() <= target.b()
                })
                .collect(),
        ),
    }
}

fn oracle_admissible(side: Side, labels: &[Segment], i: usize, j: usize) -> bool {
    match side {
        Side::Lc => labels[i].precedes(&labels[j]),
        Side::Rc => labels[j].precedes(&labels[i]),
    }
}

/// Checks `w` against the oracle's own reading of the definitions: its
/// domain is exactly the left set, it is injective into the right set, and
/// every pair is admissible.
pub fn oracle_verify(side: Side, m: &Multisegment, target: &Segment, w: &MatchingWitness) -> bool {
    let labels = m.canonical_labeling();
    let (left, right) = oracle_sets(side, &labels, target);
    let domain: Vec<usize> = w.pairs().iter().map(|p| p.0).collect();
    let images: Vec<usize> = w.pairs().iter().map(|p| p.1).collect();
    domain == left
        && images.iter().all_unique()
        && images.iter().all(|j| right.contains(j))
        && w.pairs().iter().all(|&(i, j)| oracle_admissible(side, &labels, i, j))
}

/// Calls `visit` on every valid witness until it returns `false`.
fn brute_enumerate(
    side: Side,
    m: &Multisegment,
    target: &Segment,
    bound: usize,
    mut visit: impl FnMut(&MatchingWitness) -> bool,
) -> Result<()> {
    let labels = m.canonical_labeling();
    let (left, right) = oracle_sets(side, &labels, target);
    if left.len() > bound {
        return Err(Error::BruteBound { size: left.len(), bound });
    }
    let ok = |i: usize, j: usize| oracle_admissible(side, &labels, i, j);
    let mut chosen: Vec<usize> = Vec::with_capacity(left.len());
    let mut go_on = true;
    fn rec(
        k: usize,
        left: &[usize],
        right: &[usize],
        chosen: &mut Vec<usize>,
        ok: &dyn Fn(usize, usize) -> bool,
        visit: &mut dyn FnMut(&MatchingWitness) -> bool,
        go_on: &mut bool,
    ) {
        if !*go_on {
            return;
        }
        if k == left.len() {
            let w = MatchingWitness::from_pairs(left.iter().copied().zip(chosen.iter().copied()).collect());
            *go_on = visit(&w);
            return;
        }
        for &j in right {
            if chosen.contains(&j) || !ok(left[k], j) {
                continue;
            }
            chosen.push(j);
            rec(k + 1, left, right, chosen, ok, visit, go_on);
            chosen.pop();
            if !*go_on {
                return;
            }
        }
    }
    rec(0, &left, &right, &mut chosen, &ok, &mut visit, &mut go_on);
    Ok(())
}

fn require_linked_before(dx: &Segment, dy: &Segment) -> Result<()> {
    if dx.precedes(dy) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{dx} is not linked before {dy}")))
    }
}

/// Validates the three witnesses the closure construction starts from.
fn check_inputs(
    m: &Multisegment,
    dx: &Segment,
    dy: &Segment,
    fx: &MatchingWitness,
    fy: &MatchingWitness,
    fr: &MatchingWitness,
) -> Result<()> {
    require_linked_before(dx, dy)?;
    MatchingInstance::new(Side::Lc, m, *dx).verify(fx)?;
    MatchingInstance::new(Side::Lc, m, *dy).verify(fy)?;
    MatchingInstance::new(Side::Rc, m, *dx).verify(fr)?;
    Ok(())
}

fn lookup(w: &MatchingWitness, i: usize, name: &str) -> Result<usize> {
    w.get(i).ok_or_else(|| Error::InvalidWitness(format!("{name} is undefined at {i}")))
}

/// Builds the map `F : X^{Δx∪Δy} → X̃^{Δx∪Δy}` from LC witnesses `fx`, `fy`
/// of `Δx`, `Δy`: indices in `X^{Δx}` use `fx`, the others use `fy`.
///
/// `fr` is an RC witness for `Δx`; it is only checked, as its existence is
/// what makes the result well defined. The output is not verified here.
pub fn combine_union_witness(
    m: &Multisegment,
    dx: &Segment,
    dy: &Segment,
    fx: &MatchingWitness,
    fy: &MatchingWitness,
    fr: &MatchingWitness,
) -> Result<MatchingWitness> {
    check_inputs(m, dx, dy, fx, fy, fr)?;
    let labels = m.canonical_labeling();
    let (union, _) = dx.union_intersection(dy)?;
    let (x_union, _) = lc_sets_labeled(&labels, &union);
    let (x_x, _) = lc_sets_labeled(&labels, dx);
    let (x_y, _) = lc_sets_labeled(&labels, dy);
    let mut pairs = Vec::with_capacity(x_union.len());
    for i in x_union {
        let image = match (x_x.contains(&i), x_y.contains(&i)) {
            (true, _) => lookup(fx, i, "f_x")?,
            (false, true) => lookup(fy, i, "f_y")?,
            (false, false) => {
                return Err(Error::Precondition(format!(
                    "index {i} lies in X for the union but in neither X^x nor X^y"
                )))
            }
        };
        pairs.push((i, image));
    }
    Ok(MatchingWitness::from_pairs(pairs))
}

/// Builds `F′ : X^{Δx∩Δy} → X̃^{Δx∩Δy}`: indices in `X^{Δx}` use `fx`, the
/// others use `fy`. Requires a nonempty intersection.
pub fn combine_intersection_witness(
    m: &Multisegment,
    dx: &Segment,
    dy: &Segment,
    fx: &MatchingWitness,
    fy: &MatchingWitness,
    fr: &MatchingWitness,
) -> Result<MatchingWitness> {
    check_inputs(m, dx, dy, fx, fy, fr)?;
    let (_, inter) = dx.union_intersection(dy)?;
    let inter = inter.ok_or_else(|| Error::Precondition(format!("{dx} and {dy} have empty intersection")))?;
    let labels = m.canonical_labeling();
    let (x_inter, _) = lc_sets_labeled(&labels, &inter);
    let (x_x, _) = lc_sets_labeled(&labels, dx);
    let mut pairs = Vec::with_capacity(x_inter.len());
    for i in x_inter {
        let image = if x_x.contains(&i) { lookup(fx, i, "f_x")? } else { lookup(fy, i, "f_y")? };
        pairs.push((i, image));
    }
    Ok(MatchingWitness::from_pairs(pairs))
}

/// The two index sets that must be empty for the closure construction to be
/// well defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Obstruction {
    /// `{i ∈ X^{Δy} : a(Δx) < a(f_y(i)), Δx ⊂ Δ_i, a(Δx) ≠ a(Δ_i)}`.
    N,
    /// `{i ∈ X^{Δy} : a(Δx) ≤ a(Δ_i) ≤ b(Δ_i) < b(Δx), b(Δx) < b(f_y(i))}`.
    O,
}

/// The literal obstruction set for LC witness `fy` of `Δy`.
pub fn obstruction_sets(
    kind: Obstruction,
    m: &Multisegment,
    dx: &Segment,
    dy: &Segment,
    fy: &MatchingWitness,
) -> Result<Vec<usize>> {
    require_linked_before(dx, dy)?;
    let inst = MatchingInstance::new(Side::Lc, m, *dy);
    inst.verify(fy)?;
    let labels = &inst.labels;
    let mut out = Vec::new();
    for &i in &inst.left {
        let image = &labels[lookup(fy, i, "f_y")?];
        let seg = &labels[i];
        let hit = match kind {
            Obstruction::N => dx.a() < image.a() && seg.contains(dx) && dx.a() != seg.a(),
            Obstruction::O => dx.a() <= seg.a() && seg.b() < dx.b() && dx.b() < image.b(),
        };
        if hit {
            out.push(i);
        }
    }
    Ok(out)
}

/// `Y^{Δx} ∩ X̃^{Δy}`: the indices on which an RC witness for `Δx` is
/// expected to land inside `X^{Δy}`.
pub fn right_matching_domain(m: &Multisegment, dx: &Segment, dy: &Segment) -> Result<Vec<usize>> {
    require_linked_before(dx, dy)?;
    let labels = m.canonical_labeling();
    let (y_x, _) = rc_sets_labeled(&labels, dx);
    let (_, xt_y) = lc_sets_labeled(&labels, dy);
    Ok(y_x.into_iter().filter(|i| xt_y.contains(i)).collect())
}

/// Indices `i′` of [`right_matching_domain`] with `f_r(i′) ∉ X^{Δy}`;
/// expected to be empty for every valid RC witness `fr` of `Δx`.
pub fn right_matching_failures(
    m: &Multisegment,
    dx: &Segment,
    dy: &Segment,
    fr: &MatchingWitness,
) -> Result<Vec<usize>> {
    MatchingInstance::new(Side::Rc, m, *dx).verify(fr)?;
    let labels = m.canonical_labeling();
    let (x_y, _) = lc_sets_labeled(&labels, dy);
    let domain = right_matching_domain(m, dx, dy)?;
    let mut bad = Vec::new();
    for i in domain {
        if !x_y.contains(&lookup(fr, i, "f_r")?) {
            bad.push(i);
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, b: i64) -> Segment {
        Segment::on_default(a, b)
    }

    fn m(v: &[(i64, i64)]) -> Multisegment {
        v.iter().map(|&(a, b)| s(a, b)).collect()
    }

    /// Resolves indices back to segments for readable assertions.
    fn segs(mm: &Multisegment, idx: &[usize]) -> Vec<Segment> {
        let labels = mm.canonical_labeling();
        idx.iter().map(|&i| labels[i]).collect()
    }

    #[test]
    fn lc_sets_on_remark_fixture() {
        let fx = m(&[(0, 0), (1, 5)]);
        let (x, xt) = lc_sets(&fx, &s(1, 1));
        assert_eq!(segs(&fx, &x), vec![s(0, 0)]);
        assert!(xt.is_empty());
        let (x, xt) = lc_sets(&fx, &s(1, 5));
        assert_eq!(segs(&fx, &x), vec![s(0, 0)]);
        assert_eq!(segs(&fx, &xt), vec![s(1, 5)]);
        assert_eq!(lc_sets(&Multisegment::new(), &s(0, 3)), (vec![], vec![]));
    }

    #[test]
    fn rc_sets_examples() {
        let fx = m(&[(0, 0), (1, 5)]);
        let (y, yt) = rc_sets(&fx, &s(0, 1));
        assert_eq!(segs(&fx, &y), vec![s(1, 5)]);
        assert_eq!(segs(&fx, &yt), vec![s(1, 5)]);
        let single = m(&[(0, 1)]);
        let (y, yt) = rc_sets(&single, &s(0, 1));
        assert!(y.is_empty());
        // ←[0,1] = [-1,0] precedes [0,1]
        assert_eq!(segs(&single, &yt), vec![s(0, 1)]);
        assert_eq!(rc_sets(&Multisegment::new(), &s(0, 1)), (vec![], vec![]));
    }

    #[test]
    fn decide_on_remark_fixture() {
        let fx = m(&[(0, 0), (1, 5)]);
        assert_eq!(decide(Side::Lc, &fx, &s(1, 1)), None);
        assert_eq!(decide(Side::Lc, &fx, &s(0, 1)), Some(MatchingWitness::default()));
        let w = decide(Side::Lc, &fx, &s(1, 5)).unwrap();
        let labels = fx.canonical_labeling();
        assert_eq!(w.len(), 1);
        let (i, j) = w.pairs()[0];
        assert_eq!((labels[i], labels[j]), (s(0, 0), s(1, 5)));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(!is_irreducible_product(&m(&[(0, 0)]), &s(1, 1)));
        assert!(is_irreducible_product(&m(&[(0, 3)]), &s(0, 3)));
        assert!(is_irreducible_product(&m(&[(0, 0)]), &s(2, 3)));
    }

    #[test]
    fn brute_agrees_on_fixture() {
        let fx = m(&[(0, 0), (1, 5)]);
        assert_eq!(brute_decide(Side::Lc, &fx, &s(1, 1), BRUTE_BOUND).unwrap(), None);
        assert_eq!(
            brute_decide(Side::Rc, &Multisegment::new(), &s(1, 1), BRUTE_BOUND).unwrap(),
            Some(MatchingWitness::default())
        );
        let many: Multisegment = std::iter::repeat_n(s(0, 0), 7).collect();
        assert_eq!(brute_decide(Side::Lc, &many, &s(1, 2), BRUTE_BOUND), Err(Error::BruteBound { size: 7, bound: 6 }));
    }

    #[test]
    fn lexicographic_tie_break() {
        // X = {[0],[0]} (two copies), X̃ holds both [1,3] copies
        let mm = m(&[(0, 0), (0, 0), (1, 3), (1, 3)]);
        let w = decide(Side::Lc, &mm, &s(1, 4)).unwrap();
        assert_eq!(Some(w.clone()), brute_decide(Side::Lc, &mm, &s(1, 4), BRUTE_BOUND).unwrap());
        let firsts: Vec<usize> = w.pairs().iter().map(|p| p.1).collect();
        assert!(firsts.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn verify_rejects_bad_witnesses() {
        let fx = m(&[(0, 0), (1, 5)]);
        let inst = MatchingInstance::new(Side::Lc, &fx, s(1, 5));
        assert!(inst.verify(&MatchingWitness::default()).is_err());
        let labels = &inst.labels;
        let zero = labels.iter().position(|x| *x == s(0, 0)).unwrap();
        assert!(inst.verify(&MatchingWitness::from_pairs(vec![(zero, zero)])).is_err());
    }

    #[test]
    fn combine_on_spec_fixture() {
        let mm = m(&[(0, 1)]);
        let (dx, dy) = (s(-1, 1), s(0, 2));
        let fx = decide(Side::Lc, &mm, &dx).unwrap();
        let fy = decide(Side::Lc, &mm, &dy).unwrap();
        let fr = decide(Side::Rc, &mm, &dx).unwrap();
        let u = combine_union_witness(&mm, &dx, &dy, &fx, &fy, &fr).unwrap();
        assert!(u.is_empty());
        MatchingInstance::new(Side::Lc, &mm, s(-1, 2)).verify(&u).unwrap();
        let i = combine_intersection_witness(&mm, &dx, &dy, &fx, &fy, &fr).unwrap();
        assert!(i.is_empty());
        MatchingInstance::new(Side::Lc, &mm, s(0, 1)).verify(&i).unwrap();
    }

    #[test]
    fn combine_rejects_bad_inputs() {
        let mm = m(&[(0, 1)]);
        let e = MatchingWitness::default();
        assert!(matches!(combine_union_witness(&mm, &s(0, 2), &s(-1, 1), &e, &e, &e), Err(Error::Precondition(_))));
        assert!(matches!(
            combine_intersection_witness(&mm, &s(0, 0), &s(2, 3), &e, &e, &e),
            Err(Error::Precondition(_))
        ));
        // LC([1,5]) needs a nonempty witness on {[0],[1,5]}
        let fx = m(&[(0, 0), (1, 5)]);
        assert!(matches!(combine_union_witness(&fx, &s(0, 1), &s(1, 5), &e, &e, &e), Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn obstruction_sets_empty_for_empty_multisegment() {
        let e = MatchingWitness::default();
        let empty = Multisegment::new();
        for kind in [Obstruction::N, Obstruction::O] {
            assert!(obstruction_sets(kind, &empty, &s(0, 1), &s(1, 2), &e).unwrap().is_empty());
        }
    }

    #[test]
    fn witness_json_shape() {
        let w = MatchingWitness::from_pairs(vec![(2, 0), (0, 1)]);
        assert_eq!(serde_json::to_string(&w).unwrap(), "[[0,1],[2,0]]");
    }
}
