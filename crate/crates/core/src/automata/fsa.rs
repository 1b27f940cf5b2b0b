//! Nondeterministic finite automata with ε-moves over an arbitrary symbol type.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::words::Symbol;

/// Anything usable as a transition label.
pub trait Label: Clone + Ord + Hash + Debug {}
impl<T: Clone + Ord + Hash + Debug> Label for T {}

#[derive(Debug, Clone)]
pub struct Fsa<S> {
    alphabet: Vec<S>,
    initial: Vec<usize>,
    accepting: Vec<bool>,
    trans: Vec<Vec<(Option<S>, usize)>>,
}

impl<S: Label> Fsa<S> {
    pub fn new(alphabet: impl IntoIterator<Item = S>) -> Self {
        let mut alphabet: Vec<S> = alphabet.into_iter().collect();
        alphabet.sort();
        alphabet.dedup();
        Fsa {
            alphabet,
            initial: Vec::new(),
            accepting: Vec::new(),
            trans: Vec::new(),
        }
    }

    /// Accepts every word over `alphabet`.
    pub fn universal(alphabet: impl IntoIterator<Item = S>) -> Self {
        let mut f = Fsa::new(alphabet);
        let q = f.add_state(true);
        f.add_initial(q);
        for a in f.alphabet.clone() {
            f.add_transition(q, Some(a), q);
        }
        f
    }

    /// Accepts exactly the words in `words`.
    pub fn from_words<'a>(alphabet: impl IntoIterator<Item = S>, words: impl IntoIterator<Item = &'a [S]>) -> Self
    where
        S: 'a,
    {
        let mut f = Fsa::new(alphabet);
        let root = f.add_state(false);
        f.add_initial(root);
        for w in words {
            let mut q = root;
            for a in w {
                let r = f.add_state(false);
                f.add_transition(q, Some(a.clone()), r);
                q = r;
            }
            f.set_accepting(q, true);
        }
        f
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

    pub fn add_transition(&mut self, p: usize, a: Option<S>, q: usize) {
        assert!(p < self.num_states() && q < self.num_states());
        if let Some(a) = &a {
            assert!(
                self.alphabet.binary_search(a).is_ok(),
                "symbol {a:?} outside the alphabet"
            );
        }
        if !self.trans[p].contains(&(a.clone(), q)) {
            self.trans[p].push((a, q));
        }
    }

    pub fn alphabet(&self) -> &[S] {
        &self.alphabet
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

    pub fn transitions(&self, q: usize) -> &[(Option<S>, usize)] {
        &self.trans[q]
    }

    pub fn has_epsilon(&self) -> bool {
        self.trans.iter().flatten().any(|(a, _)| a.is_none())
    }

    pub fn is_deterministic(&self) -> bool {
        if self.initial.len() > 1 || self.has_epsilon() {
            return false;
        }
        self.trans.iter().all(|ts| {
            let mut seen = BTreeSet::new();
            ts.iter().all(|(a, _)| seen.insert(a.clone()))
        })
    }

    fn close(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for (a, q) in &self.trans[p] {
                if a.is_none() && set.insert(*q) {
                    stack.push(*q);
                }
            }
        }
    }

    fn start_set(&self) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = self.initial.iter().copied().collect();
        self.close(&mut s);
        s
    }

    fn step(&self, set: &BTreeSet<usize>, a: &S) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &p in set {
            for (b, q) in &self.trans[p] {
                if b.as_ref() == Some(a) {
                    out.insert(*q);
                }
            }
        }
        self.close(&mut out);
        out
    }

    pub fn accepts(&self, w: &[S]) -> bool {
        let mut cur = self.start_set();
        for a in w {
            if cur.is_empty() {
                return false;
            }
            cur = self.step(&cur, a);
        }
        cur.iter().any(|&q| self.accepting[q])
    }

    /// Equivalent automaton without ε-transitions.
    pub fn remove_epsilon(&self) -> Fsa<S> {
        if !self.has_epsilon() {
            return self.clone();
        }
        let mut out = Fsa::new(self.alphabet.clone());
        for _ in 0..self.num_states() {
            out.add_state(false);
        }
        for &q in &self.initial {
            out.add_initial(q);
        }
        for p in 0..self.num_states() {
            let mut c = BTreeSet::from([p]);
            self.close(&mut c);
            if c.iter().any(|&q| self.accepting[q]) {
                out.set_accepting(p, true);
            }
            for &q in &c {
                for (a, r) in &self.trans[q] {
                    if a.is_some() {
                        out.add_transition(p, a.clone(), *r);
                    }
                }
            }
        }
        out.trim()
    }

    /// Subset construction; the result is deterministic and may be partial.
    pub fn determinize(&self, cap: usize) -> Result<Fsa<S>> {
        let mut out = Fsa::new(self.alphabet.clone());
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = self.start_set();
        let s0 = out.add_state(start.iter().any(|&q| self.accepting[q]));
        out.add_initial(s0);
        index.insert(start.clone(), s0);
        queue.push_back(start);
        while let Some(set) = queue.pop_front() {
            let p = index[&set];
            for a in &self.alphabet {
                let next = self.step(&set, a);
                if next.is_empty() {
                    continue;
                }
                let q = match index.get(&next) {
                    Some(&q) => q,
                    None => {
                        if out.num_states() >= cap {
                            return Err(Error::StateCap {
                                what: "determinization".into(),
                                cap,
                            });
                        }
                        let q = out.add_state(next.iter().any(|&r| self.accepting[r]));
                        index.insert(next.clone(), q);
                        queue.push_back(next);
                        q
                    }
                };
                out.trans[p].push((Some(a.clone()), q));
            }
        }
        Ok(out)
    }

    /// Adds a sink so that every state has a move on every symbol. Expects a DFA.
    fn completed(mut self) -> Fsa<S> {
        let sink = self.add_state(false);
        for p in 0..self.num_states() {
            for a in self.alphabet.clone() {
                if !self.trans[p].iter().any(|(b, _)| b.as_ref() == Some(&a)) {
                    self.trans[p].push((Some(a), sink));
                }
            }
        }
        if self.initial.is_empty() {
            self.initial.push(sink);
        }
        self
    }

    /// Complement relative to the full free monoid over the alphabet.
    pub fn complement(&self, cap: usize) -> Result<Fsa<S>> {
        let mut d = self.determinize(cap)?.completed();
        for acc in &mut d.accepting {
            *acc = !*acc;
        }
        Ok(d)
    }

    /// Minimal deterministic automaton (trimmed, so possibly partial).
    pub fn minimize(&self, cap: usize) -> Result<Fsa<S>> {
        let d = self.determinize(cap)?.completed();
        let n = d.num_states();
        let k = d.alphabet.len();
        let mut table = vec![0usize; n * k];
        for p in 0..n {
            for (a, q) in &d.trans[p] {
                let i = d.alphabet.binary_search(a.as_ref().unwrap()).unwrap();
                table[p * k + i] = *q;
            }
        }
        let mut class: Vec<usize> = d.accepting.iter().map(|&b| b as usize).collect();
        let mut count = class.iter().copied().collect::<BTreeSet<_>>().len();
        loop {
            let mut sigs: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0; n];
            for p in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[p]);
                sig.extend((0..k).map(|i| class[table[p * k + i]]));
                let len = sigs.len();
                next[p] = *sigs.entry(sig).or_insert(len);
            }
            let new_count = sigs.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut out = Fsa::new(d.alphabet.clone());
        for _ in 0..count {
            out.add_state(false);
        }
        for (&acc, &c) in d.accepting.iter().zip(&class) {
            if acc {
                out.accepting[c] = true;
            }
        }
        let mut done = vec![false; count];
        for p in 0..n {
            let c = class[p];
            if std::mem::replace(&mut done[c], true) {
                continue;
            }
            for i in 0..k {
                out.trans[c].push((Some(d.alphabet[i].clone()), class[table[p * k + i]]));
            }
        }
        out.add_initial(class[d.initial[0]]);
        Ok(out.trim())
    }

    /// Keeps only states that are reachable and co-reachable.
    pub fn trim(&self) -> Fsa<S> {
        let n = self.num_states();
        let mut fwd = vec![false; n];
        let mut stack: Vec<usize> = self.initial.clone();
        for &q in &stack {
            fwd[q] = true;
        }
        while let Some(p) = stack.pop() {
            for (_, q) in &self.trans[p] {
                if !fwd[*q] {
                    fwd[*q] = true;
                    stack.push(*q);
                }
            }
        }
        let mut back_adj = vec![Vec::new(); n];
        for p in 0..n {
            for (_, q) in &self.trans[p] {
                back_adj[*q].push(p);
            }
        }
        let mut bwd = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| bwd[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &back_adj[q] {
                if !bwd[p] {
                    bwd[p] = true;
                    stack.push(p);
                }
            }
        }
        let mut map = vec![usize::MAX; n];
        let mut out = Fsa::new(self.alphabet.clone());
        for q in 0..n {
            if fwd[q] && bwd[q] {
                map[q] = out.add_state(self.accepting[q]);
            }
        }
        for p in 0..n {
            if map[p] == usize::MAX {
                continue;
            }
            for (a, q) in &self.trans[p] {
                if map[*q] != usize::MAX {
                    out.trans[map[p]].push((a.clone(), map[*q]));
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

    /// Intersection of the two languages.
    pub fn product(&self, other: &Fsa<S>, cap: usize) -> Result<Fsa<S>> {
        let a = self.remove_epsilon();
        let b = other.remove_epsilon();
        let alphabet: Vec<S> = a
            .alphabet
            .iter()
            .filter(|s| b.alphabet.binary_search(s).is_ok())
            .cloned()
            .collect();
        let mut out = Fsa::new(alphabet);
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for &p in &a.initial {
            for &q in &b.initial {
                let s = out.add_state(a.accepting[p] && b.accepting[q]);
                out.add_initial(s);
                index.insert((p, q), s);
                queue.push_back((p, q));
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let s = index[&(p, q)];
            for (x, p2) in &a.trans[p] {
                for (y, q2) in &b.trans[q] {
                    if x != y {
                        continue;
                    }
                    let t = match index.get(&(*p2, *q2)) {
                        Some(&t) => t,
                        None => {
                            if out.num_states() >= cap {
                                return Err(Error::StateCap {
                                    what: "product".into(),
                                    cap,
                                });
                            }
                            let t = out.add_state(a.accepting[*p2] && b.accepting[*q2]);
                            index.insert((*p2, *q2), t);
                            queue.push_back((*p2, *q2));
                            t
                        }
                    };
                    out.trans[s].push((x.clone(), t));
                }
            }
        }
        Ok(out.trim())
    }

    /// Union of the two languages (disjoint union of the machines).
    pub fn union(&self, other: &Fsa<S>) -> Fsa<S> {
        let mut out = Fsa::new(self.alphabet.iter().chain(&other.alphabet).cloned());
        for part in [self, other] {
            let base = out.num_states();
            for q in 0..part.num_states() {
                out.add_state(part.accepting[q]);
            }
            for p in 0..part.num_states() {
                for (a, q) in &part.trans[p] {
                    out.trans[base + p].push((a.clone(), base + q));
                }
            }
            for &q in &part.initial {
                out.add_initial(base + q);
            }
        }
        out
    }

    /// Accepts the mirror images of accepted words.
    pub fn reverse(&self) -> Fsa<S> {
        let mut out = Fsa::new(self.alphabet.clone());
        for q in 0..self.num_states() {
            out.add_state(self.initial.contains(&q));
        }
        for p in 0..self.num_states() {
            for (a, q) in &self.trans[p] {
                out.trans[*q].push((a.clone(), p));
            }
        }
        for q in 0..self.num_states() {
            if self.accepting[q] {
                out.add_initial(q);
            }
        }
        out
    }

    /// `{a w : w accepted}`.
    pub fn prefixed(&self, a: S) -> Fsa<S> {
        let mut out = self.clone();
        let s = out.add_state(false);
        for q in std::mem::take(&mut out.initial) {
            out.trans[s].push((Some(a.clone()), q));
        }
        out.initial = vec![s];
        out
    }

    /// Right quotient `{w : w a accepted}`.
    pub fn right_quotient(&self, a: &S) -> Fsa<S> {
        let mut out = self.remove_epsilon();
        let acc: Vec<bool> = (0..out.num_states())
            .map(|p| {
                out.trans[p]
                    .iter()
                    .any(|(b, q)| b.as_ref() == Some(a) && out.accepting[*q])
            })
            .collect();
        out.accepting = acc;
        out.trim()
    }

    /// Relabels every symbol.
    pub fn map_symbols<T: Label>(&self, f: impl Fn(&S) -> T) -> Fsa<T> {
        Fsa {
            alphabet: {
                let mut a: Vec<T> = self.alphabet.iter().map(&f).collect();
                a.sort();
                a.dedup();
                a
            },
            initial: self.initial.clone(),
            accepting: self.accepting.clone(),
            trans: self
                .trans
                .iter()
                .map(|ts| ts.iter().map(|(a, q)| (a.as_ref().map(&f), *q)).collect())
                .collect(),
        }
    }

    /// All accepted words of length at most `max_len`.
    pub fn enumerate(&self, max_len: usize) -> BTreeSet<Vec<S>> {
        let f = self.remove_epsilon().trim();
        let mut out = BTreeSet::new();
        let start: BTreeSet<usize> = f.initial.iter().copied().collect();
        if start.is_empty() {
            return out;
        }
        let mut stack = vec![(start, Vec::new())];
        while let Some((set, word)) = stack.pop() {
            if set.iter().any(|&q| f.accepting[q]) {
                out.insert(word.clone());
            }
            if word.len() == max_len {
                continue;
            }
            let mut moves: std::collections::BTreeMap<&S, BTreeSet<usize>> = Default::default();
            for &p in &set {
                for (a, q) in &f.trans[p] {
                    moves.entry(a.as_ref().unwrap()).or_default().insert(*q);
                }
            }
            for (a, next) in moves {
                let mut w = word.clone();
                w.push(a.clone());
                stack.push((next, w));
            }
        }
        out
    }

    /// Same accepted words up to length `max_len`.
    pub fn equivalent_up_to(&self, other: &Fsa<S>, max_len: usize) -> bool {
        self.enumerate(max_len) == other.enumerate(max_len)
    }
}

impl<S: Label + Symbol> Fsa<S> {
    pub fn to_json(&self, rank: u8) -> Value {
        let mut transitions = Vec::new();
        for p in 0..self.num_states() {
            for (a, q) in &self.trans[p] {
                let mut t = vec![json!(p)];
                match a {
                    Some(a) => t.extend(a.json_fields(rank).into_iter().map(Value::String)),
                    None => t.push(Value::Null),
                }
                t.push(json!(q));
                transitions.push(Value::Array(t));
            }
        }
        json!({
            "states": self.num_states(),
            "initial": self.initial,
            "accepting": (0..self.num_states()).filter(|&q| self.accepting[q]).collect::<Vec<_>>(),
            "alphabet": self.alphabet.iter().map(|a| a.render(rank)).collect::<Vec<_>>(),
            "transitions": transitions,
        })
    }

    pub fn from_json(v: &Value, rank: u8) -> Result<Fsa<S>> {
        let bad = |reason: &str| Error::Parse {
            what: "automaton JSON",
            input: v.to_string().chars().take(80).collect(),
            reason: reason.into(),
        };
        let states = v["states"].as_u64().ok_or_else(|| bad("missing states"))? as usize;
        let alphabet = v["alphabet"]
            .as_array()
            .ok_or_else(|| bad("missing alphabet"))?
            .iter()
            .map(|t| S::parse_token(t.as_str().unwrap_or_default(), rank))
            .collect::<Result<Vec<S>>>()?;
        let mut f = Fsa::new(alphabet);
        for _ in 0..states {
            f.add_state(false);
        }
        let ids = |key: &str| -> Result<Vec<usize>> {
            v[key]
                .as_array()
                .ok_or_else(|| bad("missing state list"))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|x| x as usize)
                        .filter(|&x| x < states)
                        .ok_or_else(|| bad("bad state id"))
                })
                .collect()
        };
        for q in ids("initial")? {
            f.add_initial(q);
        }
        for q in ids("accepting")? {
            f.set_accepting(q, true);
        }
        for t in v["transitions"].as_array().ok_or_else(|| bad("missing transitions"))? {
            let t = t.as_array().ok_or_else(|| bad("transition is not an array"))?;
            if t.len() < 3 {
                return Err(bad("short transition"));
            }
            let state = |x: &Value| {
                x.as_u64()
                    .map(|x| x as usize)
                    .filter(|&x| x < states)
                    .ok_or_else(|| bad("bad state id"))
            };
            let p = state(&t[0])?;
            let q = state(&t[t.len() - 1])?;
            let fields = &t[1..t.len() - 1];
            let a = if fields.len() == 1 && fields[0].is_null() {
                None
            } else {
                let strs: Vec<&str> = fields
                    .iter()
                    .map(|x| x.as_str().ok_or_else(|| bad("label is not a string")))
                    .collect::<Result<_>>()?;
                let a = S::from_json_fields(&strs, rank)?;
                if f.alphabet.binary_search(&a).is_err() {
                    return Err(bad("label outside the alphabet"));
                }
                Some(a)
            };
            f.add_transition(p, a, q);
        }
        Ok(f)
    }

    pub fn to_dot(&self, rank: u8) -> String {
        let mut s = String::from("digraph fsa {\n  rankdir=LR;\n  node [shape=circle];\n");
        for q in 0..self.num_states() {
            if self.accepting[q] {
                s += &format!("  q{q} [shape=doublecircle];\n");
            }
        }
        for (i, &q) in self.initial.iter().enumerate() {
            s += &format!("  start{i} [shape=point];\n  start{i} -> q{q};\n");
        }
        for p in 0..self.num_states() {
            for (a, q) in &self.trans[p] {
                let label = a.as_ref().map_or("ε".to_string(), |a| a.render(rank));
                s += &format!("  q{p} -> q{q} [label=\"{}\"];\n", label.replace('"', "\\\""));
            }
        }
        s.push_str("}\n");
        s
    }
}
