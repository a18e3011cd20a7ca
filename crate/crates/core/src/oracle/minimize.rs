//! Greedy shrinking of failing instances: drop segments first, then pull
//! endpoints inwards, repeating until nothing changes.

use crate::multiseg::Multisegment;
use crate::notation::print_multisegment;
use crate::segment::{LineTable, Segment};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub name: &'static str,
    pub value: Multisegment,
    /// A single segment: may shrink but never loses its only entry.
    pub single: bool,
}

impl Component {
    pub fn multi(name: &'static str, value: &Multisegment) -> Self {
        Component { name, value: value.clone(), single: false }
    }

    pub fn segment(name: &'static str, value: &Segment) -> Self {
        Component { name, value: Multisegment::from(*value), single: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance(pub Vec<Component>);

impl Instance {
    pub fn multi(&self, k: usize) -> &Multisegment {
        &self.0[k].value
    }

    pub fn seg(&self, k: usize) -> Segment {
        self.0[k].value.segments()[0]
    }

    pub fn render(&self, table: &LineTable) -> String {
        self.0
            .iter()
            .map(|c| format!("{}={}", c.name, print_multisegment(&c.value, table)))
            .collect::<Vec<_>>()
            .join("; ")
    }

    fn candidates(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        for (k, c) in self.0.iter().enumerate() {
            let segs = c.value.segments();
            if !c.single {
                for s in segs {
                    let mut next = self.clone();
                    next.0[k].value = c.value.remove(s).expect("segment occurs");
                    out.push(next);
                }
            }
        }
        for (k, c) in self.0.iter().enumerate() {
            for s in c.value.segments() {
                let shrunk = [
                    Segment::new_or_empty(s.line(), s.a() + 1, s.b()),
                    Segment::new_or_empty(s.line(), s.a(), s.b() - 1),
                ];
                for t in shrunk.into_iter().flatten() {
                    let mut value = c.value.remove(s).expect("segment occurs");
                    value.insert(t);
                    let mut next = self.clone();
                    next.0[k].value = value;
                    out.push(next);
                }
            }
        }
        out
    }
}

/// Smallest instance reachable from `start` by single shrinking steps that
/// keep `fails` true. `start` itself must fail.
pub fn minimize(start: Instance, fails: impl Fn(&Instance) -> bool) -> Instance {
    let mut cur = start;
    'outer: loop {
        for next in cur.candidates() {
            if fails(&next) {
                cur = next;
                continue 'outer;
            }
        }
        return cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, b: i64) -> Segment {
        Segment::on_default(a, b)
    }

    #[test]
    fn shrinks_to_a_core() {
        let m: Multisegment = [s(0, 3), s(2, 5), s(7, 9)].into_iter().collect();
        let start = Instance(vec![Component::multi("m", &m), Component::segment("D", &s(1, 4))]);
        // fails whenever m still holds a segment containing 3
        let fails = |i: &Instance| i.multi(0).iter().any(|x| x.a() <= 3 && 3 <= x.b());
        let out = minimize(start, fails);
        assert_eq!(out.multi(0).segments(), &[s(3, 3)]);
        assert_eq!(out.seg(1).relative_len(), 1);
        assert_eq!(out.render(&LineTable::default()).matches(';').count(), 1);
    }
}
