//! The sylvester monoid: right-strict binary search trees, postfix
//! reading, and the structured multiplication procedures.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hypoplactic::{column_decompose, Column};
use crate::presentation::gap_triples;
use crate::rewriting::{Rule, RewritingSystem};
use crate::words::{alphabet, Letter, Word};

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub label: Letter,
    pub left: Bst,
    pub right: Bst,
}

/// A right-strict binary search tree: left labels `≤`, right labels `>`.
/// Subtrees are shared between versions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Bst(Option<Arc<Node>>);

impl Bst {
    pub fn empty() -> Self {
        Bst(None)
    }

    pub fn node(label: Letter, left: Bst, right: Bst) -> Self {
        Bst(Some(Arc::new(Node { label, left, right })))
    }

    pub fn leaf(label: Letter) -> Self {
        Bst::node(label, Bst::empty(), Bst::empty())
    }

    pub fn root(&self) -> Option<&Node> {
        self.0.as_deref()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn size(&self) -> usize {
        self.root()
            .map_or(0, |n| 1 + n.left.size() + n.right.size())
    }

    pub fn insert(&self, a: Letter) -> Bst {
        match self.root() {
            None => Bst::leaf(a),
            Some(n) if a <= n.label => Bst::node(n.label, n.left.insert(a), n.right.clone()),
            Some(n) => Bst::node(n.label, n.left.clone(), n.right.insert(a)),
        }
    }

    /// Inserts the letters of `w` from right to left.
    pub fn from_word(w: &[Letter]) -> Bst {
        w.iter().rev().fold(Bst::empty(), |t, &a| t.insert(a))
    }

    /// Left subtree, then right subtree, then root.
    pub fn lrp(&self) -> Word {
        let mut out = Vec::with_capacity(self.size());
        self.lrp_into(&mut out);
        Word(out)
    }

    fn lrp_into(&self, out: &mut Vec<Letter>) {
        if let Some(n) = self.root() {
            n.left.lrp_into(out);
            n.right.lrp_into(out);
            out.push(n.label);
        }
    }

    fn labels_within(&self, lo: Option<Letter>, hi: Option<Letter>) -> bool {
        match self.root() {
            None => true,
            Some(n) => {
                lo.is_none_or(|l| n.label > l)
                    && hi.is_none_or(|h| n.label <= h)
                    && n.left.labels_within(lo, Some(n.label))
                    && n.right.labels_within(Some(n.label), hi)
            }
        }
    }

    /// Checks the search-tree invariant.
    pub fn is_valid(&self) -> bool {
        self.labels_within(None, None)
    }

    /// `{"label": k, "left": …, "right": …}`, `null` when empty.
    pub fn to_json(&self) -> Value {
        match self.root() {
            None => Value::Null,
            Some(n) => json!({
                "label": n.label.value(),
                "left": n.left.to_json(),
                "right": n.right.to_json(),
            }),
        }
    }

    pub fn from_json(v: &Value, rank: u8) -> Result<Bst> {
        let bad = || Error::Parse {
            what: "tree",
            input: v.to_string(),
            reason: "expected null or {label, left, right}".into(),
        };
        match v {
            Value::Null => Ok(Bst::empty()),
            Value::Object(m) => {
                let label = m.get("label").and_then(Value::as_u64).ok_or_else(bad)?;
                let label = Letter::new(u32::try_from(label).map_err(|_| bad())?, rank)?;
                let left = Bst::from_json(m.get("left").ok_or_else(bad)?, rank)?;
                let right = Bst::from_json(m.get("right").ok_or_else(bad)?, rank)?;
                Ok(Bst::node(label, left, right))
            }
            _ => Err(bad()),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bst {\n  node [shape=circle];\n");
        let mut next = 0usize;
        self.dot_into(&mut out, &mut next);
        out.push_str("}\n");
        out
    }

    fn dot_into(&self, out: &mut String, next: &mut usize) -> Option<usize> {
        let n = self.root()?;
        let id = *next;
        *next += 1;
        let _ = writeln!(out, "  n{id} [label=\"{}\"];", n.label);
        for (child, side) in [(&n.left, "L"), (&n.right, "R")] {
            if let Some(c) = child.dot_into(out, next) {
                let _ = writeln!(out, "  n{id} -> n{c} [label=\"{side}\"];");
            }
        }
        Some(id)
    }
}

/// LRP reading of the tree of `w`.
pub fn sylvester_normal_form(w: &Word, rank: u8) -> Result<Word> {
    w.check_rank(rank)?;
    Ok(Bst::from_word(w).lrp())
}

/// The pattern system `cavb → acvb`, `a ≤ b < c`.
pub fn sylvester_system(rank: u8) -> RewritingSystem<Letter> {
    let rules = gap_triples(rank)
        .map(|(c, a, b)| Rule::gap(c, a, b).expect("a <= b < c"))
        .collect();
    RewritingSystem::new(rank, alphabet(rank).collect(), rules)
}

/// No factor `cavb` with `a ≤ b < c`.
pub fn is_irreducible(w: &[Letter]) -> bool {
    // `later` holds the letters strictly after the pair at i, i + 1.
    let mut later: Vec<Letter> = Vec::new();
    for i in (0..w.len().saturating_sub(1)).rev() {
        if i + 2 < w.len() {
            later.push(w[i + 2]);
        }
        let (c, a) = (w[i], w[i + 1]);
        if c > a && later.iter().any(|&b| a <= b && b < c) {
            return false;
        }
    }
    true
}

fn require_irreducible(w: &Word) -> Result<()> {
    if is_irreducible(w) {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "sylvester normal form",
            detail: w.to_string(),
        })
    }
}

/// Whether `(u, v)` factors as `(pcqrbs, pqcrbs)` with `c > b` and `q ∈ {≤ b}⁺`.
pub fn h_step_member(u: &[Letter], v: &[Letter], b: Letter) -> bool {
    if u.len() != v.len() {
        return false;
    }
    for i in 0..u.len() {
        let c = u[i];
        if c <= b || u[..i] != v[..i] {
            continue;
        }
        let mut m = 0;
        while i + 1 + m < u.len() && u[i + 1 + m] <= b {
            m += 1;
            let rest = i + 1 + m;
            if u[rest..].contains(&b)
                && v[i..i + m] == u[i + 1..rest]
                && v[i + m] == c
                && v[rest..] == u[rest..]
            {
                return true;
            }
        }
    }
    false
}

/// Outcome of [`left_multiply_nf`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeftMultiplication {
    pub result: Word,
    /// The increasing chain `β₁ < … < β_ℓ` of symbols playing the role of `b`.
    pub chain: Vec<Letter>,
    /// Every intermediate word, starting from `γw`.
    pub steps: Vec<Word>,
}

/// Normal form of `γw` by moving `γ` rightwards in stages.
pub fn left_multiply_nf(gamma: Letter, w: &Word) -> Result<LeftMultiplication> {
    require_irreducible(w)?;
    let mut cur = Vec::with_capacity(w.len() + 1);
    cur.push(gamma);
    cur.extend_from_slice(w);
    let mut steps = vec![Word(cur.clone())];
    let mut chain: Vec<Letter> = Vec::new();
    let mut pos = 0;
    while pos + 1 < cur.len() {
        let alpha = cur[pos + 1];
        let later = &cur[pos + 2..];
        let fits = |b: Letter| alpha <= b && b < gamma;
        let b = match chain.last() {
            Some(&beta) if fits(beta) && later.contains(&beta) => beta,
            _ => match later.iter().copied().filter(|&b| fits(b)).min() {
                None => break,
                Some(b) => {
                    if let Some(&beta) = chain.last() {
                        if b <= beta {
                            return Err(Error::Precondition(format!(
                                "chain not increasing at {b} after {beta}"
                            )));
                        }
                    }
                    chain.push(b);
                    b
                }
            },
        };
        debug_assert!(fits(b));
        cur.swap(pos, pos + 1);
        pos += 1;
        // The prefix left of γ is a prefix of w and lies below γ.
        if cur[..pos] != w[..pos] || cur[..pos].iter().any(|&x| x >= gamma) {
            return Err(Error::Precondition(format!(
                "staged reduction left its invariant at {}",
                Word(cur.clone())
            )));
        }
        steps.push(Word(cur.clone()));
    }
    Ok(LeftMultiplication {
        result: Word(cur),
        chain,
        steps,
    })
}

/// Outcome of [`right_multiply_nf`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RightMultiplication {
    pub result: Word,
    /// Letters `> γ` that end up to the right of some letter `≤ γ` they preceded.
    pub migrated_right: usize,
    /// Letters `≤ γ` preceded in `w` by some letter `> γ`.
    pub migrated_left: usize,
}

/// Normal form of `wγ`: the letters `≤ γ`, then the letters `> γ`, each in
/// their original order, then `γ`.
pub fn right_multiply_nf(w: &Word, gamma: Letter) -> Result<RightMultiplication> {
    require_irreducible(w)?;
    let (low, high): (Vec<Letter>, Vec<Letter>) = w.iter().partition(|&&a| a <= gamma);
    let last_low = w.iter().rposition(|&a| a <= gamma);
    let first_high = w.iter().position(|&a| a > gamma);
    let migrated_right = match last_low {
        Some(p) => w[..p].iter().filter(|&&a| a > gamma).count(),
        None => 0,
    };
    let migrated_left = match first_high {
        Some(p) => w[p..].iter().filter(|&&a| a <= gamma).count(),
        None => 0,
    };
    let mut result = low;
    result.extend(high);
    result.push(gamma);
    Ok(RightMultiplication {
        result: Word(result),
        migrated_right,
        migrated_left,
    })
}

/// `Σ_{k ≥ 2} k·C(n, k)`: the total length of all columns of length at least 2.
pub fn m_bound(rank: u8) -> usize {
    let n = rank as usize;
    let mut binom = 1usize;
    let mut total = 0;
    for k in 1..=n {
        binom = binom * (n + 1 - k) / k;
        if k >= 2 {
            total += k * binom;
        }
    }
    total
}

/// No maximal column of length at least 2 occurs twice.
pub fn no_repeated_long_columns_check(w: &Word) -> Result<bool> {
    require_irreducible(w)?;
    let mut seen: HashMap<Column, usize> = HashMap::new();
    for c in column_decompose(w) {
        if c.len() >= 2 {
            *seen.entry(c).or_default() += 1;
        }
    }
    Ok(seen.values().all(|&k| k == 1))
}
