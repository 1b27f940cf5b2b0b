//! Asynchronous two-track transducers and the rational operations on them.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde_json::{json, Value};

use super::fsa::{Fsa, Label};
use crate::error::{Error, Result};
use crate::words::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    LeftToRight,
    /// Paths read both tracks from right to left: the recognized relation is
    /// the reversal of the path relation.
    RightToLeft,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge<I, O> {
    pub input: Option<I>,
    pub output: Option<O>,
    pub to: usize,
}

#[derive(Debug, Clone)]
pub struct Transducer<I, O> {
    direction: Direction,
    initial: Vec<usize>,
    accepting: Vec<bool>,
    trans: Vec<Vec<Edge<I, O>>>,
}

impl<I: Label, O: Label> Transducer<I, O> {
    pub fn new(direction: Direction) -> Self {
        Transducer {
            direction,
            initial: Vec::new(),
            accepting: Vec::new(),
            trans: Vec::new(),
        }
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.accepting.push(accepting);
        self.trans.push(Vec::new());
        self.accepting.len() - 1
    }

    pub fn add_initial(&mut self, q: usize) {
        assert!(q < self.num_states());
        if !self.initial.contains(&q) {
            self.initial.push(q);
            self.initial.sort_unstable();
        }
    }

    pub fn set_accepting(&mut self, q: usize, yes: bool) {
        self.accepting[q] = yes;
    }

    pub fn add_edge(&mut self, p: usize, input: Option<I>, output: Option<O>, to: usize) {
        assert!(p < self.num_states() && to < self.num_states());
        let e = Edge { input, output, to };
        if !self.trans[p].contains(&e) {
            self.trans[p].push(e);
        }
    }

    /// Emits `outputs` while reading `input`, through fresh intermediate states.
    pub fn add_path(&mut self, p: usize, input: Option<I>, outputs: &[O], to: usize) {
        if outputs.len() <= 1 {
            self.add_edge(p, input, outputs.first().cloned(), to);
            return;
        }
        let mut cur = p;
        let mut input = input;
        for (i, o) in outputs.iter().enumerate() {
            let next = if i + 1 == outputs.len() {
                to
            } else {
                self.add_state(false)
            };
            self.add_edge(cur, input.take(), Some(o.clone()), next);
            cur = next;
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(Vec::len).sum()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn edges(&self, q: usize) -> &[Edge<I, O>] {
        &self.trans[q]
    }

    /// The identity relation on the free monoid over `alphabet`.
    pub fn identity(alphabet: impl IntoIterator<Item = I>) -> Transducer<I, I> {
        let mut t = Transducer::new(Direction::LeftToRight);
        let q = t.add_state(true);
        t.add_initial(q);
        for a in alphabet {
            t.add_edge(q, Some(a.clone()), Some(a), q);
        }
        t
    }

    /// Reverses the path graph; the recognized relation becomes its mirror image.
    pub fn reverse(&self) -> Transducer<I, O> {
        let mut out = Transducer::new(self.direction);
        for q in 0..self.num_states() {
            out.add_state(self.initial.contains(&q));
        }
        for p in 0..self.num_states() {
            for e in &self.trans[p] {
                out.trans[e.to].push(Edge {
                    input: e.input.clone(),
                    output: e.output.clone(),
                    to: p,
                });
            }
        }
        for q in 0..self.num_states() {
            if self.accepting[q] {
                out.add_initial(q);
            }
        }
        out
    }

    /// Same relation, recognized left to right.
    pub fn normalized(&self) -> Transducer<I, O> {
        match self.direction {
            Direction::LeftToRight => self.clone(),
            Direction::RightToLeft => {
                let mut t = self.reverse();
                t.direction = Direction::LeftToRight;
                t
            }
        }
    }

    /// Reinterprets the path graph as reading in the other direction.
    pub fn with_direction(mut self, direction: Direction) -> Self {
        self.direction = direction;
        self
    }

    /// The inverse relation.
    pub fn inverse(&self) -> Transducer<O, I> {
        Transducer {
            direction: self.direction,
            initial: self.initial.clone(),
            accepting: self.accepting.clone(),
            trans: self
                .trans
                .iter()
                .map(|es| {
                    es.iter()
                        .map(|e| Edge {
                            input: e.output.clone(),
                            output: e.input.clone(),
                            to: e.to,
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn map_labels<I2: Label, O2: Label>(
        &self,
        fi: impl Fn(&I) -> I2,
        fo: impl Fn(&O) -> O2,
    ) -> Transducer<I2, O2> {
        Transducer {
            direction: self.direction,
            initial: self.initial.clone(),
            accepting: self.accepting.clone(),
            trans: self
                .trans
                .iter()
                .map(|es| {
                    es.iter()
                        .map(|e| Edge {
                            input: e.input.as_ref().map(&fi),
                            output: e.output.as_ref().map(&fo),
                            to: e.to,
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Relational composition: `(x, z)` whenever `(x, y) ∈ self` and `(y, z) ∈ other`.
    pub fn compose<P: Label>(&self, other: &Transducer<O, P>, cap: usize) -> Result<Transducer<I, P>> {
        let a = self.normalized();
        let b = other.normalized();
        let mut out = Transducer::new(Direction::LeftToRight);
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut get = |out: &mut Transducer<I, P>, queue: &mut VecDeque<(usize, usize)>, p: usize, q: usize| {
            if let Some(&s) = index.get(&(p, q)) {
                return Ok(s);
            }
            if out.num_states() >= cap {
                return Err(Error::StateCap {
                    what: "transducer composition".into(),
                    cap,
                });
            }
            let s = out.add_state(a.accepting[p] && b.accepting[q]);
            index.insert((p, q), s);
            queue.push_back((p, q));
            Ok(s)
        };
        for &p in &a.initial {
            for &q in &b.initial {
                let s = get(&mut out, &mut queue, p, q)?;
                out.add_initial(s);
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let s = get(&mut out, &mut queue, p, q)?;
            for e in &a.trans[p] {
                match &e.output {
                    None => {
                        let t = get(&mut out, &mut queue, e.to, q)?;
                        out.trans[s].push(Edge {
                            input: e.input.clone(),
                            output: None,
                            to: t,
                        });
                    }
                    Some(m) => {
                        for f in &b.trans[q] {
                            if f.input.as_ref() == Some(m) {
                                let t = get(&mut out, &mut queue, e.to, f.to)?;
                                out.trans[s].push(Edge {
                                    input: e.input.clone(),
                                    output: f.output.clone(),
                                    to: t,
                                });
                            }
                        }
                    }
                }
            }
            for f in &b.trans[q] {
                if f.input.is_none() {
                    let t = get(&mut out, &mut queue, p, f.to)?;
                    out.trans[s].push(Edge {
                        input: None,
                        output: f.output.clone(),
                        to: t,
                    });
                }
            }
        }
        Ok(out.trim())
    }

    /// Union of the two relations.
    pub fn union(&self, other: &Transducer<I, O>) -> Transducer<I, O> {
        let mut out = Transducer::new(Direction::LeftToRight);
        for part in [self.normalized(), other.normalized()] {
            let base = out.num_states();
            for q in 0..part.num_states() {
                out.add_state(part.accepting[q]);
            }
            for p in 0..part.num_states() {
                for e in &part.trans[p] {
                    out.trans[base + p].push(Edge {
                        input: e.input.clone(),
                        output: e.output.clone(),
                        to: base + e.to,
                    });
                }
            }
            for &q in &part.initial {
                out.add_initial(base + q);
            }
        }
        out
    }

    fn restrict_track(&self, fsa: &Fsa<I>, cap: usize) -> Result<Transducer<I, O>> {
        let t = self.normalized();
        let f = fsa.remove_epsilon();
        let mut out = Transducer::new(Direction::LeftToRight);
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut get = |out: &mut Transducer<I, O>, queue: &mut VecDeque<(usize, usize)>, p: usize, q: usize| {
            if let Some(&s) = index.get(&(p, q)) {
                return Ok(s);
            }
            if out.num_states() >= cap {
                return Err(Error::StateCap {
                    what: "transducer restriction".into(),
                    cap,
                });
            }
            let s = out.add_state(t.accepting[p] && f.is_accepting(q));
            index.insert((p, q), s);
            queue.push_back((p, q));
            Ok(s)
        };
        for &p in &t.initial {
            for &q in f.initial() {
                let s = get(&mut out, &mut queue, p, q)?;
                out.add_initial(s);
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let s = get(&mut out, &mut queue, p, q)?;
            for e in &t.trans[p] {
                match &e.input {
                    None => {
                        let r = get(&mut out, &mut queue, e.to, q)?;
                        out.trans[s].push(Edge { to: r, ..e.clone() });
                    }
                    Some(a) => {
                        for (b, q2) in f.transitions(q) {
                            if b.as_ref() == Some(a) {
                                let r = get(&mut out, &mut queue, e.to, *q2)?;
                                out.trans[s].push(Edge { to: r, ..e.clone() });
                            }
                        }
                    }
                }
            }
        }
        Ok(out.trim())
    }

    /// Keeps the pairs whose first component is accepted by `fsa`.
    pub fn restrict_input(&self, fsa: &Fsa<I>, cap: usize) -> Result<Transducer<I, O>> {
        self.restrict_track(fsa, cap)
    }

    /// Keeps the pairs whose second component is accepted by `fsa`.
    pub fn restrict_output(&self, fsa: &Fsa<O>, cap: usize) -> Result<Transducer<I, O>> {
        Ok(self.inverse().restrict_track(fsa, cap)?.inverse())
    }

    /// Appends `o` to every output.
    pub fn append_output(&self, o: O) -> Transducer<I, O> {
        let mut t = self.normalized();
        let f = t.add_state(true);
        for q in 0..f {
            if t.accepting[q] {
                t.accepting[q] = false;
                t.trans[q].push(Edge {
                    input: None,
                    output: Some(o.clone()),
                    to: f,
                });
            }
        }
        t
    }

    /// `{(w, x) : (a w, x) ∈ self}`.
    pub fn left_quotient_input(&self, a: I, alphabet: &[I], cap: usize) -> Result<Transducer<I, O>> {
        let mut p = Transducer::<I, I>::new(Direction::LeftToRight);
        let s = p.add_state(false);
        let f = p.add_state(true);
        p.add_initial(s);
        p.add_edge(s, None, Some(a), f);
        for x in alphabet {
            p.add_edge(f, Some(x.clone()), Some(x.clone()), f);
        }
        p.compose(self, cap)
    }

    /// Keeps useful states only.
    pub fn trim(&self) -> Transducer<I, O> {
        let n = self.num_states();
        let mut fwd = vec![false; n];
        let mut stack = self.initial.clone();
        for &q in &stack {
            fwd[q] = true;
        }
        while let Some(p) = stack.pop() {
            for e in &self.trans[p] {
                if !fwd[e.to] {
                    fwd[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        let mut back = vec![Vec::new(); n];
        for p in 0..n {
            for e in &self.trans[p] {
                back[e.to].push(p);
            }
        }
        let mut bwd = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| bwd[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &back[q] {
                if !bwd[p] {
                    bwd[p] = true;
                    stack.push(p);
                }
            }
        }
        let mut map = vec![usize::MAX; n];
        let mut out = Transducer::new(self.direction);
        for q in 0..n {
            if fwd[q] && bwd[q] {
                map[q] = out.add_state(self.accepting[q]);
            }
        }
        for p in 0..n {
            if map[p] == usize::MAX {
                continue;
            }
            for e in &self.trans[p] {
                if map[e.to] != usize::MAX {
                    out.add_edge(map[p], e.input.clone(), e.output.clone(), map[e.to]);
                }
            }
        }
        for &q in &self.initial {
            if map[q] != usize::MAX {
                out.add_initial(map[q]);
            }
        }
        out
    }

    /// Minimizes the automaton of label sequences. The relation is unchanged.
    pub fn compact(&self, cap: usize) -> Result<Transducer<I, O>> {
        let t = self.normalized();
        let labels: BTreeSet<(Option<I>, Option<O>)> = t
            .trans
            .iter()
            .flatten()
            .map(|e| (e.input.clone(), e.output.clone()))
            .collect();
        let mut f = Fsa::new(labels);
        for q in 0..t.num_states() {
            f.add_state(t.accepting[q]);
        }
        for &q in &t.initial {
            f.add_initial(q);
        }
        for p in 0..t.num_states() {
            for e in &t.trans[p] {
                f.add_transition(p, Some((e.input.clone(), e.output.clone())), e.to);
            }
        }
        let m = f.minimize(cap)?;
        let mut out = Transducer::new(Direction::LeftToRight);
        for q in 0..m.num_states() {
            out.add_state(m.is_accepting(q));
        }
        for &q in m.initial() {
            out.add_initial(q);
        }
        for p in 0..m.num_states() {
            for (l, q) in m.transitions(p) {
                let (i, o) = l.clone().expect("minimized automaton has no ε-moves");
                out.add_edge(p, i, o, *q);
            }
        }
        Ok(out)
    }

    /// First components of the relation.
    pub fn domain(&self) -> Fsa<I>
    where
        I: Label,
    {
        self.project(|e| e.input.clone())
    }

    /// Second components of the relation.
    pub fn range(&self) -> Fsa<O> {
        self.project(|e| e.output.clone())
    }

    fn project<S: Label>(&self, f: impl Fn(&Edge<I, O>) -> Option<S>) -> Fsa<S> {
        let t = self.normalized();
        let alphabet: BTreeSet<S> = t.trans.iter().flatten().filter_map(&f).collect();
        let mut out = Fsa::new(alphabet);
        for q in 0..t.num_states() {
            out.add_state(t.accepting[q]);
        }
        for &q in &t.initial {
            out.add_initial(q);
        }
        for p in 0..t.num_states() {
            for e in &t.trans[p] {
                out.add_transition(p, f(e), e.to);
            }
        }
        out
    }

    /// Image of a regular set under the relation.
    pub fn image(&self, fsa: &Fsa<I>, cap: usize) -> Result<Fsa<O>> {
        Ok(self.restrict_input(fsa, cap)?.range())
    }

    /// All pairs with `|u| ≤ max_in` and `|v| ≤ max_out`.
    pub fn relation_up_to(&self, max_in: usize, max_out: usize) -> BTreeSet<(Vec<I>, Vec<O>)> {
        let t = self.normalized().trim();
        let mut out = BTreeSet::new();
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<(usize, Vec<I>, Vec<O>)> =
            t.initial.iter().map(|&q| (q, Vec::new(), Vec::new())).collect();
        while let Some((q, u, v)) = stack.pop() {
            if !seen.insert((q, u.clone(), v.clone())) {
                continue;
            }
            if t.accepting[q] {
                out.insert((u.clone(), v.clone()));
            }
            for e in &t.trans[q] {
                let mut u2 = u.clone();
                let mut v2 = v.clone();
                u2.extend(e.input.clone());
                v2.extend(e.output.clone());
                if u2.len() <= max_in && v2.len() <= max_out {
                    stack.push((e.to, u2, v2));
                }
            }
        }
        out
    }

    /// Outputs paired with `u`, bounded in length.
    pub fn outputs_for(&self, u: &[I], max_out: usize) -> BTreeSet<Vec<O>> {
        let t = self.normalized().trim();
        let mut out = BTreeSet::new();
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<(usize, usize, Vec<O>)> =
            t.initial.iter().map(|&q| (q, 0, Vec::new())).collect();
        while let Some((q, i, v)) = stack.pop() {
            if !seen.insert((q, i, v.clone())) {
                continue;
            }
            if i == u.len() && t.accepting[q] {
                out.insert(v.clone());
            }
            for e in &t.trans[q] {
                let i2 = match &e.input {
                    None => i,
                    Some(a) if i < u.len() && *a == u[i] => i + 1,
                    Some(_) => continue,
                };
                let mut v2 = v.clone();
                v2.extend(e.output.clone());
                if v2.len() <= max_out {
                    stack.push((e.to, i2, v2));
                }
            }
        }
        out
    }

    /// Largest `| |input read| − |output written| |` at any point of an
    /// accepting path, or `None` if it exceeds `limit`.
    pub fn max_delay(&self, limit: usize) -> Option<usize> {
        let t = self.normalized().trim();
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<(usize, i64)> = t.initial.iter().map(|&q| (q, 0)).collect();
        let mut best = 0usize;
        while let Some((q, lag)) = stack.pop() {
            if !seen.insert((q, lag)) {
                continue;
            }
            let a = lag.unsigned_abs() as usize;
            if a > limit {
                return None;
            }
            best = best.max(a);
            for e in &t.trans[q] {
                let d = e.input.is_some() as i64 - e.output.is_some() as i64;
                stack.push((e.to, lag + d));
            }
        }
        Some(best)
    }
}

impl<I: Label + Symbol, O: Label + Symbol> Transducer<I, O> {
    pub fn to_json(&self, rank: u8) -> Value {
        let render = |x: &Option<String>| x.clone().map_or(Value::Null, Value::String);
        let mut transitions = Vec::new();
        for p in 0..self.num_states() {
            for e in &self.trans[p] {
                transitions.push(json!([
                    p,
                    render(&e.input.as_ref().map(|a| a.render(rank))),
                    render(&e.output.as_ref().map(|a| a.render(rank))),
                    e.to
                ]));
            }
        }
        json!({
            "states": self.num_states(),
            "initial": self.initial,
            "accepting": (0..self.num_states()).filter(|&q| self.accepting[q]).collect::<Vec<_>>(),
            "direction": match self.direction {
                Direction::LeftToRight => "left-to-right",
                Direction::RightToLeft => "right-to-left",
            },
            "transitions": transitions,
        })
    }

    pub fn to_dot(&self, rank: u8) -> String {
        let mut s = String::from("digraph transducer {\n  rankdir=LR;\n  node [shape=circle];\n");
        for q in 0..self.num_states() {
            if self.accepting[q] {
                s += &format!("  q{q} [shape=doublecircle];\n");
            }
        }
        for (i, &q) in self.initial.iter().enumerate() {
            s += &format!("  start{i} [shape=point];\n  start{i} -> q{q};\n");
        }
        let show = |x: Option<String>| x.unwrap_or_else(|| "ε".into());
        for p in 0..self.num_states() {
            for e in &self.trans[p] {
                s += &format!(
                    "  q{p} -> q{} [label=\"{}/{}\"];\n",
                    e.to,
                    show(e.input.as_ref().map(|a| a.render(rank))),
                    show(e.output.as_ref().map(|a| a.render(rank)))
                );
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Letter;

    fn l(v: u32) -> Letter {
        Letter::of(v)
    }

    fn ab() -> Vec<Letter> {
        vec![l(1), l(2)]
    }

    /// Replaces every 1 by 22.
    fn doubler() -> Transducer<Letter, Letter> {
        let mut t = Transducer::new(Direction::LeftToRight);
        let q = t.add_state(true);
        t.add_initial(q);
        t.add_path(q, Some(l(1)), &[l(2), l(2)], q);
        t.add_edge(q, Some(l(2)), Some(l(1)), q);
        t
    }

    #[test]
    fn identity_composition() {
        let t = doubler();
        let id = Transducer::<Letter, Letter>::identity(ab());
        let c = id.compose(&t, 1000).unwrap();
        assert_eq!(c.relation_up_to(5, 10), t.relation_up_to(5, 10));
        let c = t.compose(&id, 1000).unwrap();
        assert_eq!(c.relation_up_to(5, 10), t.relation_up_to(5, 10));
    }

    #[test]
    fn reverse_twice() {
        let t = doubler();
        let r = t.reverse();
        assert!(r.relation_up_to(3, 6).contains(&(vec![l(2), l(1)], vec![l(1), l(2), l(2)])));
        assert_eq!(r.reverse().relation_up_to(5, 10), t.relation_up_to(5, 10));
        let rl = t.reverse().with_direction(Direction::RightToLeft);
        assert_eq!(rl.normalized().relation_up_to(5, 10), t.relation_up_to(5, 10));
    }

    #[test]
    fn compose_and_image() {
        let t = doubler();
        let tt = t.compose(&t, 1000).unwrap();
        assert_eq!(tt.outputs_for(&[l(1)], 10), BTreeSet::from([vec![l(1), l(1)]]));
        let img = t.image(&Fsa::from_words(ab(), [&[l(1), l(2)][..]]), 100).unwrap();
        assert_eq!(img.enumerate(5), BTreeSet::from([vec![l(2), l(2), l(1)]]));
        let c = tt.compact(1000).unwrap();
        assert_eq!(c.relation_up_to(4, 8), tt.relation_up_to(4, 8));
        assert_eq!(t.max_delay(10), None);
        let id = Transducer::<Letter, Letter>::identity(ab());
        assert_eq!(id.append_output(l(1)).max_delay(10), Some(1));
    }

    #[test]
    fn quotient_and_append() {
        let t = doubler().append_output(l(1));
        assert_eq!(t.outputs_for(&[l(2)], 5), BTreeSet::from([vec![l(1), l(1)]]));
        let q = doubler().left_quotient_input(l(1), &ab(), 1000).unwrap();
        assert_eq!(q.outputs_for(&[l(2)], 5), BTreeSet::from([vec![l(2), l(2), l(1)]]));
        let r = doubler()
            .restrict_output(&Fsa::from_words(ab(), [&[l(1)][..]]), 100)
            .unwrap();
        assert_eq!(r.relation_up_to(4, 4), BTreeSet::from([(vec![l(2)], vec![l(1)])]));
    }
}
