//! String rewriting over an arbitrary ordered alphabet.
//!
//! Two kinds of rules are supported: literal rules `ℓ → r` and gap rules
//! `cavb → acvb` for fixed letters `a ≤ b < c` and any gap word `v`.
//! The text format is one rule per line, `lhs -> rhs` for literal rules
//! and `pattern c a b` for gap rules; blank lines and `#` comments are
//! ignored.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{lex_compare, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Rule<S> {
    Literal { lhs: Vec<S>, rhs: Vec<S> },
    /// `cavb → acvb` for every gap word `v`; requires `a ≤ b < c`.
    Gap { c: S, a: S, b: S },
}

impl<S: Symbol> Rule<S> {
    pub fn literal(lhs: Vec<S>, rhs: Vec<S>) -> Result<Self> {
        if lhs == rhs {
            return Err(Error::UnsupportedRule(
                "literal rule with identical sides".into(),
            ));
        }
        Ok(Rule::Literal { lhs, rhs })
    }

    pub fn gap(c: S, a: S, b: S) -> Result<Self> {
        if !(a <= b && b < c) {
            return Err(Error::UnsupportedRule(format!(
                "gap rule needs a <= b < c, got c={c:?} a={a:?} b={b:?}"
            )));
        }
        Ok(Rule::Gap { c, a, b })
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Rule::Literal { .. })
    }
}

/// One way of applying one rule once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Redex<S> {
    pub position: usize,
    pub rule: usize,
    /// `|v|` for gap rules, zero for literal rules.
    pub gap_len: usize,
    pub result: Vec<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Leftmost position, lowest rule index, shortest gap.
    #[default]
    Leftmost,
    /// Rightmost position, then lowest rule index, shortest gap.
    Rightmost,
    /// Uniformly random redex from a seeded generator.
    Random(u64),
}

/// A reduction step as recorded by [`RewritingSystem::reduce_traced`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step<S> {
    pub before: Vec<S>,
    pub redex: Redex<S>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalPair<S> {
    pub peak: Vec<S>,
    pub left: Vec<S>,
    pub right: Vec<S>,
    pub rules: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfluenceViolation<S> {
    pub peak: Vec<S>,
    pub left: Vec<S>,
    pub right: Vec<S>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfluenceReport<S> {
    pub critical_pairs: usize,
    pub words_checked: usize,
    pub violations: Vec<ConfluenceViolation<S>>,
}

impl<S> ConfluenceReport<S> {
    pub fn is_confluent(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct RewritingSystem<S> {
    rank: u8,
    alphabet: Vec<S>,
    rules: Vec<Rule<S>>,
    literal_index: HashMap<Vec<S>, Vec<usize>>,
    lhs_lengths: Vec<usize>,
    gap_rules: Vec<usize>,
}

impl<S: Symbol> RewritingSystem<S> {
    /// `alphabet` is the full symbol set, used for exhaustive checks.
    pub fn new(rank: u8, alphabet: Vec<S>, rules: Vec<Rule<S>>) -> Self {
        let mut literal_index: HashMap<Vec<S>, Vec<usize>> = HashMap::new();
        let mut lengths = BTreeSet::new();
        let mut gap_rules = Vec::new();
        for (i, r) in rules.iter().enumerate() {
            match r {
                Rule::Literal { lhs, .. } => {
                    literal_index.entry(lhs.clone()).or_default().push(i);
                    lengths.insert(lhs.len());
                }
                Rule::Gap { .. } => gap_rules.push(i),
            }
        }
        RewritingSystem {
            rank,
            alphabet,
            rules,
            literal_index,
            lhs_lengths: lengths.into_iter().collect(),
            gap_rules,
        }
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn alphabet(&self) -> &[S] {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule<S>] {
        &self.rules
    }

    pub fn is_literal(&self) -> bool {
        self.gap_rules.is_empty()
    }

    /// Default step budget `|w|² · n`.
    pub fn default_fuel(&self, w: &[S]) -> usize {
        (w.len() * w.len() * self.rank as usize).max(1)
    }

    fn redexes_at(&self, w: &[S], i: usize, out: &mut Vec<Redex<S>>) {
        let start = out.len();
        for &len in &self.lhs_lengths {
            if len == 0 || i + len > w.len() {
                continue;
            }
            if let Some(ids) = self.literal_index.get(&w[i..i + len]) {
                for &r in ids {
                    let Rule::Literal { rhs, .. } = &self.rules[r] else {
                        unreachable!()
                    };
                    let mut res = Vec::with_capacity(w.len() - len + rhs.len());
                    res.extend_from_slice(&w[..i]);
                    res.extend_from_slice(rhs);
                    res.extend_from_slice(&w[i + len..]);
                    out.push(Redex {
                        position: i,
                        rule: r,
                        gap_len: 0,
                        result: res,
                    });
                }
            }
        }
        if i + 2 < w.len() + 1 {
            for &r in &self.gap_rules {
                let Rule::Gap { c, a, b } = &self.rules[r] else {
                    unreachable!()
                };
                if i + 1 >= w.len() || &w[i] != c || &w[i + 1] != a {
                    continue;
                }
                for j in i + 2..w.len() {
                    if &w[j] == b {
                        let mut res = w.to_vec();
                        res.swap(i, i + 1);
                        out.push(Redex {
                            position: i,
                            rule: r,
                            gap_len: j - i - 2,
                            result: res,
                        });
                    }
                }
            }
        }
        out[start..].sort_by_key(|r| (r.rule, r.gap_len));
    }

    /// Every single-step reduction of `w`, ordered by (position, rule, gap length).
    pub fn redexes(&self, w: &[S]) -> Vec<Redex<S>> {
        let mut out = Vec::new();
        for i in 0..w.len() {
            self.redexes_at(w, i, &mut out);
        }
        out
    }

    pub fn is_irreducible(&self, w: &[S]) -> bool {
        let mut buf = Vec::new();
        (0..w.len()).all(|i| {
            self.redexes_at(w, i, &mut buf);
            buf.is_empty()
        })
    }

    fn pick(&self, w: &[S], strategy: Strategy, rng: &mut Option<StdRng>) -> Option<Redex<S>> {
        let mut buf = Vec::new();
        match strategy {
            Strategy::Leftmost => {
                for i in 0..w.len() {
                    self.redexes_at(w, i, &mut buf);
                    if !buf.is_empty() {
                        return Some(buf.swap_remove(0));
                    }
                }
                None
            }
            Strategy::Rightmost => {
                for i in (0..w.len()).rev() {
                    self.redexes_at(w, i, &mut buf);
                    if !buf.is_empty() {
                        return Some(buf.swap_remove(0));
                    }
                }
                None
            }
            Strategy::Random(_) => {
                let mut all = self.redexes(w);
                if all.is_empty() {
                    return None;
                }
                let rng = rng.as_mut().expect("random strategy has a generator");
                let k = rng.gen_range(0..all.len());
                Some(all.swap_remove(k))
            }
        }
    }

    /// Reduces `w` to an irreducible word, recording every step.
    pub fn reduce_traced(
        &self,
        w: &[S],
        strategy: Strategy,
        fuel: Option<usize>,
    ) -> Result<(Vec<S>, Vec<Step<S>>)> {
        let fuel = fuel.unwrap_or_else(|| self.default_fuel(w));
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(StdRng::seed_from_u64(seed)),
            _ => None,
        };
        let mut cur = w.to_vec();
        let mut steps = Vec::new();
        while let Some(redex) = self.pick(&cur, strategy, &mut rng) {
            if steps.len() == fuel {
                return Err(Error::FuelExhausted {
                    word: S::render_word(w, self.rank),
                    fuel,
                });
            }
            let next = redex.result.clone();
            steps.push(Step {
                before: std::mem::replace(&mut cur, next),
                redex,
            });
        }
        Ok((cur, steps))
    }

    pub fn normal_form(&self, w: &[S], strategy: Strategy, fuel: Option<usize>) -> Result<Vec<S>> {
        self.reduce_traced(w, strategy, fuel).map(|(nf, _)| nf)
    }

    /// All words reachable from `w` in zero or more steps.
    pub fn descendants(&self, w: &[S], cap: usize) -> Result<HashSet<Vec<S>>> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(x) = queue.pop_front() {
            for r in self.redexes(&x) {
                if seen.insert(r.result.clone()) {
                    if seen.len() > cap {
                        return Err(Error::StateCap {
                            what: "descendant set".into(),
                            cap,
                        });
                    }
                    queue.push_back(r.result);
                }
            }
        }
        Ok(seen)
    }

    fn joinable(&self, x: &[S], y: &[S]) -> Result<bool> {
        let nx = self.normal_form(x, Strategy::Leftmost, Some(usize::MAX))?;
        let ny = self.normal_form(y, Strategy::Leftmost, Some(usize::MAX))?;
        if nx == ny {
            return Ok(true);
        }
        let dx = self.descendants(x, 1_000_000)?;
        let dy = self.descendants(y, 1_000_000)?;
        Ok(dx.iter().any(|d| dy.contains(d)))
    }

    /// Overlap and containment ambiguities between left-hand sides.
    pub fn critical_pairs(&self) -> Result<Vec<CriticalPair<S>>> {
        if !self.is_literal() {
            return Err(Error::UnsupportedRule(
                "critical pairs need literal rules; instantiate gap rules first".into(),
            ));
        }
        let lit: Vec<(&Vec<S>, &Vec<S>)> = self
            .rules
            .iter()
            .map(|r| match r {
                Rule::Literal { lhs, rhs } => (lhs, rhs),
                Rule::Gap { .. } => unreachable!(),
            })
            .collect();
        let mut out = Vec::new();
        for (i, (l1, r1)) in lit.iter().enumerate() {
            for (j, (l2, r2)) in lit.iter().enumerate() {
                // Proper overlaps: a suffix of l1 equals a prefix of l2.
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let mut peak = (*l1).clone();
                        peak.extend_from_slice(&l2[k..]);
                        let mut left = (*r1).clone();
                        left.extend_from_slice(&l2[k..]);
                        let mut right = l1[..l1.len() - k].to_vec();
                        right.extend_from_slice(r2);
                        out.push(CriticalPair {
                            peak,
                            left,
                            right,
                            rules: (i, j),
                        });
                    }
                }
                // Containment: l2 is a factor of l1.
                if l2.len() <= l1.len() && !l2.is_empty() {
                    for p in 0..=l1.len() - l2.len() {
                        if i == j && p == 0 {
                            continue;
                        }
                        if l1[p..p + l2.len()] == l2[..] {
                            let mut right = l1[..p].to_vec();
                            right.extend_from_slice(r2);
                            right.extend_from_slice(&l1[p + l2.len()..]);
                            out.push(CriticalPair {
                                peak: (*l1).clone(),
                                left: (*r1).clone(),
                                right,
                                rules: (i, j),
                            });
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Literal systems: every critical pair must be joinable. Systems with
    /// gap rules: for every word of length at most `length_bound`, every two
    /// one-step successors must have a common descendant.
    pub fn check_local_confluence(&self, length_bound: usize) -> Result<ConfluenceReport<S>> {
        let mut violations = Vec::new();
        if self.is_literal() {
            let pairs = self.critical_pairs()?;
            for cp in &pairs {
                if !self.joinable(&cp.left, &cp.right)? {
                    violations.push(ConfluenceViolation {
                        peak: cp.peak.clone(),
                        left: cp.left.clone(),
                        right: cp.right.clone(),
                    });
                }
            }
            return Ok(ConfluenceReport {
                critical_pairs: pairs.len(),
                words_checked: 0,
                violations,
            });
        }
        self.check_peaks(length_bound)
    }

    /// For every word of length at most `length_bound`, every two one-step
    /// successors have a common descendant.
    pub fn check_peaks(&self, length_bound: usize) -> Result<ConfluenceReport<S>> {
        let mut violations = Vec::new();
        let mut words_checked = 0;
        let mut frontier: Vec<Vec<S>> = vec![Vec::new()];
        for _ in 0..=length_bound {
            let mut next = Vec::new();
            for w in frontier {
                words_checked += 1;
                let succ: BTreeSet<Vec<S>> = self.redexes(&w).into_iter().map(|r| r.result).collect();
                let succ: Vec<_> = succ.into_iter().collect();
                if succ.len() > 1 {
                    for y in &succ[1..] {
                        if !self.joinable(&succ[0], y)? {
                            violations.push(ConfluenceViolation {
                                peak: w.clone(),
                                left: succ[0].clone(),
                                right: y.clone(),
                            });
                        }
                    }
                }
                for s in &self.alphabet {
                    let mut x = w.clone();
                    x.push(s.clone());
                    next.push(x);
                }
            }
            frontier = next;
        }
        Ok(ConfluenceReport {
            critical_pairs: 0,
            words_checked,
            violations,
        })
    }

    /// Whether every literal rule has `lhs >lex rhs` (gap rules always do).
    pub fn rules_decrease_lex(&self) -> bool {
        self.rules.iter().all(|r| match r {
            Rule::Literal { lhs, rhs } => lex_compare(lhs, rhs) == Ordering::Greater,
            Rule::Gap { .. } => true,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rules {
            match r {
                Rule::Literal { lhs, rhs } => {
                    let _ = writeln!(
                        s,
                        "{} -> {}",
                        S::render_word(lhs, self.rank),
                        S::render_word(rhs, self.rank)
                    );
                }
                Rule::Gap { c, a, b } => {
                    let _ = writeln!(
                        s,
                        "pattern {} {} {}",
                        c.render(self.rank),
                        a.render(self.rank),
                        b.render(self.rank)
                    );
                }
            }
        }
        s
    }

    pub fn from_text(text: &str, rank: u8, alphabet: Vec<S>) -> Result<Self> {
        let mut rules = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: &str| Error::Parse {
                what: "rule",
                input: line.to_string(),
                reason: reason.to_string(),
            };
            if let Some(rest) = line.strip_prefix("pattern") {
                let toks: Vec<_> = rest.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(bad("expected `pattern c a b`"));
                }
                let c = S::parse_token(toks[0], rank)?;
                let a = S::parse_token(toks[1], rank)?;
                let b = S::parse_token(toks[2], rank)?;
                rules.push(Rule::gap(c, a, b)?);
            } else {
                let (l, r) = line.split_once("->").ok_or_else(|| bad("expected `lhs -> rhs`"))?;
                let lhs = S::parse_word(l.trim(), rank)?;
                let rhs = S::parse_word(r.trim(), rank)?;
                rules.push(Rule::literal(lhs, rhs)?);
            }
        }
        Ok(RewritingSystem::new(rank, alphabet, rules))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{alphabet, Letter, Word};

    fn w(s: &str) -> Vec<Letter> {
        s.parse::<Word>().unwrap().0
    }

    fn ab_system(rules: &[(&str, &str)]) -> RewritingSystem<Letter> {
        let rules = rules
            .iter()
            .map(|(l, r)| Rule::literal(w(l), w(r)).unwrap())
            .collect();
        RewritingSystem::new(2, alphabet(2).collect(), rules)
    }

    #[test]
    fn critical_pair_examples() {
        // a = 1, b = 2.
        let commute = ab_system(&[("21", "12")]);
        assert!(commute.critical_pairs().unwrap().is_empty());
        let idem = ab_system(&[("11", "1")]);
        let cps = idem.critical_pairs().unwrap();
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].peak, w("111"));
        assert_eq!(cps[0].left, w("11"));
        assert_eq!(cps[0].right, w("11"));
    }

    #[test]
    fn containment_pairs_are_found() {
        let sys = ab_system(&[("121", "2"), ("2", "1")]);
        let cps = sys.critical_pairs().unwrap();
        assert!(cps
            .iter()
            .any(|cp| cp.peak == w("121") && cp.left == w("2") && cp.right == w("111")));
    }

    #[test]
    fn empty_word_has_no_redex() {
        let sys = ab_system(&[("21", "12")]);
        assert!(sys.redexes(&[]).is_empty());
        assert!(sys.is_irreducible(&[]));
        assert_eq!(sys.normal_form(&[], Strategy::Leftmost, None).unwrap(), vec![]);
    }

    #[test]
    fn fuel_exhaustion() {
        let sys = ab_system(&[("21", "12")]);
        let err = sys.normal_form(&w("2221"), Strategy::Leftmost, Some(1)).unwrap_err();
        assert!(matches!(err, Error::FuelExhausted { fuel: 1, .. }));
    }

    #[test]
    fn gap_rules_enumerate_each_gap() {
        let sys = RewritingSystem::new(
            2,
            alphabet(2).collect(),
            vec![Rule::gap(Letter::of(2), Letter::of(1), Letter::of(1)).unwrap()],
        );
        let r = sys.redexes(&w("2111"));
        assert_eq!(r.len(), 2);
        assert_eq!((r[0].gap_len, r[1].gap_len), (0, 1));
        assert!(r.iter().all(|x| x.result == w("1211")));
    }

    #[test]
    fn invalid_rules_rejected() {
        assert!(Rule::literal(w("12"), w("12")).is_err());
        assert!(Rule::gap(Letter::of(1), Letter::of(2), Letter::of(2)).is_err());
    }

    #[test]
    fn text_round_trip() {
        let sys = RewritingSystem::new(
            3,
            alphabet(3).collect(),
            vec![
                Rule::literal(w("21"), w("12")).unwrap(),
                Rule::gap(Letter::of(3), Letter::of(1), Letter::of(2)).unwrap(),
            ],
        );
        let text = sys.to_text();
        assert_eq!(text, "21 -> 12\npattern 3 1 2\n");
        let back = RewritingSystem::<Letter>::from_text(&text, 3, alphabet(3).collect()).unwrap();
        assert_eq!(back.rules(), sys.rules());
        assert!(RewritingSystem::<Letter>::from_text("12 => 21", 3, vec![]).is_err());
    }
}
