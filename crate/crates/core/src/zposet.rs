//! Intersection-union moves and the Zelevinsky order `≤_Z`.
//!
//! A move replaces a linked pair `{Δ₁, Δ₂}` by `{Δ₁ ∪ Δ₂, Δ₁ ∩ Δ₂}`,
//! dropping an empty intersection. `𝔪 ≤_Z 𝔫` iff `𝔪` is reached from `𝔫`
//! by finitely many moves. Every move strictly increases the decreasingly
//! sorted length profile in lexicographic order, so lower sets are finite
//! and the move graph is acyclic.

use std::collections::{HashMap, VecDeque};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::multiseg::Multisegment;
use crate::segment::Segment;

pub const DEFAULT_NODE_BUDGET: usize = 100_000;

/// One intersection-union move. `pair.0` precedes `pair.1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IuMove {
    pub pair: (Segment, Segment),
    pub result: Multisegment,
}

/// All moves out of `m`, one per distinct result, sorted by the consumed pair.
pub fn iu_moves(m: &Multisegment) -> Vec<IuMove> {
    let distinct = m.distinct();
    let mut out: Vec<IuMove> = Vec::new();
    for ((x, _), (y, _)) in distinct.iter().tuple_combinations() {
        let (first, second) = if x.precedes(y) {
            (x, y)
        } else if y.precedes(x) {
            (y, x)
        } else {
            continue;
        };
        let (union, inter) = first.union_intersection(second).expect("pair is linked");
        let mut result = m.remove(first).and_then(|r| r.remove(second)).expect("both segments occur in m");
        result.insert(union);
        if let Some(i) = inter {
            result.insert(i);
        }
        if out.iter().all(|mv| mv.result != result) {
            out.push(IuMove { pair: (*first, *second), result });
        }
    }
    out.sort_by_key(|mv| mv.pair);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetEdge {
    pub from: usize,
    pub to: usize,
    pub pair: (Segment, Segment),
}

/// The lower set of a multisegment under `≤_Z`, with one edge per
/// (parent, child) pair. Node 0 is the root.
#[derive(Debug, Clone, Default)]
pub struct PosetGraph {
    nodes: Vec<Multisegment>,
    index: HashMap<Multisegment, usize>,
    edges: Vec<PosetEdge>,
}

impl PosetGraph {
    pub fn nodes(&self) -> &[Multisegment] {
        &self.nodes
    }

    pub fn edges(&self) -> &[PosetEdge] {
        &self.edges
    }

    pub fn root(&self) -> &Multisegment {
        &self.nodes[0]
    }

    pub fn contains(&self, m: &Multisegment) -> bool {
        self.index.contains_key(m)
    }

    pub fn node_index(&self, m: &Multisegment) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn children(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |e| e.from == node).map(|e| e.to)
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.children(node).count()
    }

    fn add_node(&mut self, m: Multisegment) -> (usize, bool) {
        if let Some(&i) = self.index.get(&m) {
            return (i, false);
        }
        let i = self.nodes.len();
        self.index.insert(m.clone(), i);
        self.nodes.push(m);
        (i, true)
    }
}

/// Breadth-first closure of [`iu_moves`] from `m`.
pub fn lower_set(m: &Multisegment) -> Result<PosetGraph> {
    lower_set_with_budget(m, DEFAULT_NODE_BUDGET)
}

pub fn lower_set_with_budget(m: &Multisegment, budget: usize) -> Result<PosetGraph> {
    let mut g = PosetGraph::default();
    g.add_node(m.clone());
    let mut queue = VecDeque::from([0usize]);
    while let Some(cur) = queue.pop_front() {
        for mv in iu_moves(&g.nodes[cur]) {
            let (child, fresh) = g.add_node(mv.result);
            if fresh {
                if g.nodes.len() > budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                queue.push_back(child);
            }
            g.edges.push(PosetEdge { from: cur, to: child, pair: mv.pair });
        }
    }
    Ok(g)
}

/// `lower ≤_Z upper`.
pub fn leq_z(lower: &Multisegment, upper: &Multisegment) -> Result<bool> {
    leq_z_with_budget(lower, upper, DEFAULT_NODE_BUDGET)
}

pub fn leq_z_with_budget(lower: &Multisegment, upper: &Multisegment, budget: usize) -> Result<bool> {
    if lower == upper {
        return Ok(true);
    }
    // moves preserve the support and strictly raise the length profile
    if lower.support() != upper.support() || lower.length_profile() <= upper.length_profile() {
        return Ok(false);
    }
    Ok(lower_set_with_budget(upper, budget)?.contains(lower))
}

/// Lexicographic comparison of length profiles, padding with zeros.
pub fn profile_increases(before: &Multisegment, after: &Multisegment) -> bool {
    let (p, q) = (before.length_profile(), after.length_profile());
    let n = p.len().max(q.len());
    let pad = |v: &[i64], i: usize| v.get(i).copied().unwrap_or(0);
    (0..n).map(|i| (pad(&p, i), pad(&q, i))).find(|(x, y)| x != y).is_some_and(|(x, y)| x < y)
}
