//! Padded convolution of word pairs and synchronization of bounded-delay transducers.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::fsa::{Fsa, Label};
use super::transducer::Transducer;
use crate::error::{Error, Result};
use crate::words::Symbol;

pub const PAD: &str = "$";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pad<S> {
    Sym(S),
    Dollar,
}

impl<S: Symbol> Pad<S> {
    fn render(&self, rank: u8) -> String {
        match self {
            Pad::Sym(s) => s.render(rank),
            Pad::Dollar => PAD.into(),
        }
    }

    fn parse(t: &str, rank: u8) -> Result<Self> {
        if t == PAD {
            Ok(Pad::Dollar)
        } else {
            S::parse_token(t, rank).map(Pad::Sym)
        }
    }
}

/// One letter of a padded pair word: top track, bottom track.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairSym<I, O>(pub Pad<I>, pub Pad<O>);

impl<I: Symbol, O: Symbol> fmt::Display for PairSym<I, O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(u8::MAX))
    }
}

impl<I: Symbol, O: Symbol> Symbol for PairSym<I, O> {
    fn render(&self, rank: u8) -> String {
        format!("({},{})", self.0.render(rank), self.1.render(rank))
    }

    fn parse_token(token: &str, rank: u8) -> Result<Self> {
        let inner = token
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                what: "padded pair",
                input: token.into(),
                reason: "expected (x,y)".into(),
            })?;
        // Tokens themselves may contain commas, so try every split.
        for (i, _) in inner.match_indices(',') {
            if let (Ok(a), Ok(b)) = (Pad::parse(&inner[..i], rank), Pad::parse(&inner[i + 1..], rank)) {
                return Ok(PairSym(a, b));
            }
        }
        Err(Error::Parse {
            what: "padded pair",
            input: token.into(),
            reason: "no valid split".into(),
        })
    }

    fn json_fields(&self, rank: u8) -> Vec<String> {
        vec![self.0.render(rank), self.1.render(rank)]
    }

    fn from_json_fields(fields: &[&str], rank: u8) -> Result<Self> {
        match fields {
            [a, b] => Ok(PairSym(Pad::parse(a, rank)?, Pad::parse(b, rank)?)),
            _ => Err(Error::Parse {
                what: "padded pair",
                input: fields.join(","),
                reason: "expected two fields".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Pad the shorter word at its right end.
    R,
    /// Pad the shorter word at its left end.
    L,
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" => Ok(Side::R),
            "L" | "l" => Ok(Side::L),
            _ => Err(Error::Parse {
                what: "side",
                input: s.into(),
                reason: "expected R or L".into(),
            }),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::R => "R",
            Side::L => "L",
        })
    }
}

pub fn delta<I: Clone, O: Clone>(u: &[I], v: &[O], side: Side) -> Vec<PairSym<I, O>> {
    let len = u.len().max(v.len());
    let (su, sv) = match side {
        Side::R => (0, 0),
        Side::L => (len - u.len(), len - v.len()),
    };
    (0..len)
        .map(|i| {
            let top = i
                .checked_sub(su)
                .and_then(|j| u.get(j))
                .map_or(Pad::Dollar, |a| Pad::Sym(a.clone()));
            let bottom = i
                .checked_sub(sv)
                .and_then(|j| v.get(j))
                .map_or(Pad::Dollar, |a| Pad::Sym(a.clone()));
            PairSym(top, bottom)
        })
        .collect()
}

/// Inverse of [`delta`] on well-formed pair words.
pub fn undelta<I: Clone, O: Clone>(w: &[PairSym<I, O>]) -> (Vec<I>, Vec<O>) {
    let mut u = Vec::new();
    let mut v = Vec::new();
    for PairSym(a, b) in w {
        if let Pad::Sym(a) = a {
            u.push(a.clone());
        }
        if let Pad::Sym(b) = b {
            v.push(b.clone());
        }
    }
    (u, v)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Phase {
    Both,
    OutputDone,
    InputDone,
}

/// Predecessor state and the label that reached it.
type Parent<I, O> = Option<(usize, Option<PairSym<I, O>>)>;
type Move<I, O> = (Option<PairSym<I, O>>, Config<I, O>);

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Config<I, O> {
    q: usize,
    ahead_in: Vec<I>,
    ahead_out: Vec<O>,
    phase: Phase,
}

/// Automaton accepting `delta(u, v, side)` for every `(u, v)` in the relation of `t`.
///
/// Along every accepting path of the trimmed transducer, the number of symbols
/// read on one track but not yet matched on the other must stay within `k`;
/// otherwise the construction fails and reports the offending prefix.
pub fn synchronize<I, O>(t: &Transducer<I, O>, k: usize, side: Side, cap: usize) -> Result<Fsa<PairSym<I, O>>>
where
    I: Label + Symbol,
    O: Label + Symbol,
{
    match side {
        Side::R => synchronize_right(&t.normalized().trim(), k, cap),
        Side::L => Ok(synchronize_right(&t.normalized().reverse().trim(), k, cap)?.reverse()),
    }
}

fn synchronize_right<I, O>(t: &Transducer<I, O>, k: usize, cap: usize) -> Result<Fsa<PairSym<I, O>>>
where
    I: Label + Symbol,
    O: Label + Symbol,
{
    let mut ins = std::collections::BTreeSet::new();
    let mut outs = std::collections::BTreeSet::new();
    for q in 0..t.num_states() {
        for e in t.edges(q) {
            ins.extend(e.input.clone());
            outs.extend(e.output.clone());
        }
    }
    let mut alphabet = Vec::new();
    for a in ins.iter().map(|a| Pad::Sym(a.clone())).chain([Pad::Dollar]) {
        for b in outs.iter().map(|b| Pad::Sym(b.clone())).chain([Pad::Dollar]) {
            if a != Pad::Dollar || b != Pad::Dollar {
                alphabet.push(PairSym(a.clone(), b));
            }
        }
    }
    let mut f = Fsa::new(alphabet);
    let mut index: HashMap<Config<I, O>, usize> = HashMap::new();
    let mut parent: Vec<Parent<I, O>> = Vec::new();
    let mut configs: Vec<Config<I, O>> = Vec::new();
    let mut queue = VecDeque::new();

    let accepting = |c: &Config<I, O>| t.is_accepting(c.q) && c.ahead_in.is_empty() && c.ahead_out.is_empty();

    for &q in t.initial() {
        let c = Config {
            q,
            ahead_in: Vec::new(),
            ahead_out: Vec::new(),
            phase: Phase::Both,
        };
        let s = f.add_state(accepting(&c));
        f.add_initial(s);
        index.insert(c.clone(), s);
        configs.push(c);
        parent.push(None);
        queue.push_back(s);
    }

    while let Some(s) = queue.pop_front() {
        let c = configs[s].clone();
        let mut moves: Vec<Move<I, O>> = Vec::new();
        match c.phase {
            Phase::Both => {
                for e in t.edges(c.q) {
                    let mut ai = c.ahead_in.clone();
                    let mut ao = c.ahead_out.clone();
                    ai.extend(e.input.clone());
                    ao.extend(e.output.clone());
                    let label = if !ai.is_empty() && !ao.is_empty() {
                        Some(PairSym(Pad::Sym(ai.remove(0)), Pad::Sym(ao.remove(0))))
                    } else {
                        None
                    };
                    let next = Config {
                        q: e.to,
                        ahead_in: ai,
                        ahead_out: ao,
                        phase: Phase::Both,
                    };
                    if next.ahead_in.len() > k || next.ahead_out.len() > k {
                        return Err(delay_error(k, &parent, s, &next, label));
                    }
                    moves.push((label, next));
                }
                if c.ahead_out.is_empty() {
                    moves.push((None, Config { phase: Phase::OutputDone, ..c.clone() }));
                }
                if c.ahead_in.is_empty() {
                    moves.push((None, Config { phase: Phase::InputDone, ..c.clone() }));
                }
            }
            Phase::OutputDone => {
                if let Some((a, rest)) = c.ahead_in.split_first() {
                    moves.push((
                        Some(PairSym(Pad::Sym(a.clone()), Pad::Dollar)),
                        Config { ahead_in: rest.to_vec(), ..c.clone() },
                    ));
                } else {
                    for e in t.edges(c.q) {
                        if e.output.is_none() {
                            moves.push((
                                e.input.clone().map(|a| PairSym(Pad::Sym(a), Pad::Dollar)),
                                Config { q: e.to, ..c.clone() },
                            ));
                        }
                    }
                }
            }
            Phase::InputDone => {
                if let Some((b, rest)) = c.ahead_out.split_first() {
                    moves.push((
                        Some(PairSym(Pad::Dollar, Pad::Sym(b.clone()))),
                        Config { ahead_out: rest.to_vec(), ..c.clone() },
                    ));
                } else {
                    for e in t.edges(c.q) {
                        if e.input.is_none() {
                            moves.push((
                                e.output.clone().map(|b| PairSym(Pad::Dollar, Pad::Sym(b))),
                                Config { q: e.to, ..c.clone() },
                            ));
                        }
                    }
                }
            }
        }
        for (label, next) in moves {
            let r = match index.get(&next) {
                Some(&r) => r,
                None => {
                    if f.num_states() >= cap {
                        return Err(Error::StateCap {
                            what: "synchronization".into(),
                            cap,
                        });
                    }
                    let r = f.add_state(accepting(&next));
                    index.insert(next.clone(), r);
                    configs.push(next);
                    parent.push(Some((s, label.clone())));
                    queue.push_back(r);
                    r
                }
            };
            f.add_transition(s, label, r);
        }
    }
    Ok(f.trim())
}

fn delay_error<I, O>(
    k: usize,
    parent: &[Parent<I, O>],
    mut s: usize,
    next: &Config<I, O>,
    last: Option<PairSym<I, O>>,
) -> Error
where
    I: Label + Symbol,
    O: Label + Symbol,
{
    let mut labels: Vec<String> = last.iter().map(|l| l.render(u8::MAX)).collect();
    while let Some((p, l)) = &parent[s] {
        if let Some(l) = l {
            labels.push(l.render(u8::MAX));
        }
        s = *p;
    }
    labels.reverse();
    let pending_in: Vec<String> = next.ahead_in.iter().map(|a| a.render(u8::MAX)).collect();
    let pending_out: Vec<String> = next.ahead_out.iter().map(|a| a.render(u8::MAX)).collect();
    let path = format!(
        "{} then pending input [{}] / output [{}]",
        if labels.is_empty() { "ε".into() } else { labels.join("") },
        pending_in.join(" "),
        pending_out.join(" ")
    );
    Error::DelayExceeded { bound: k, path }
}

/// Synchronizes with the smallest sufficient buffer, up to `limit`.
pub fn synchronize_auto<I, O>(t: &Transducer<I, O>, side: Side, limit: usize, cap: usize) -> Result<(Fsa<PairSym<I, O>>, usize)>
where
    I: Label + Symbol,
    O: Label + Symbol,
{
    let oriented = match side {
        Side::R => t.normalized(),
        Side::L => t.normalized().reverse(),
    };
    let k = oriented.max_delay(limit).ok_or_else(|| Error::DelayExceeded {
        bound: limit,
        path: "unbounded length difference along some accepting path".into(),
    })?;
    Ok((synchronize(t, k, side, cap)?, k))
}
