//! Quasi-ribbon words over the column alphabet `C` and the insertion transducers.

use super::chinese::explore;
use super::fsa::Fsa;
use super::transducer::{Direction, Transducer};
use crate::error::{Error, Result};
use crate::hypoplactic::{column_alphabet, Column};
use crate::words::Letter;

/// `C` is exponential in the rank.
pub const COLUMN_ALPHABET_RANK_CAP: u8 = 6;

fn columns(rank: u8) -> Result<Vec<Column>> {
    if rank > COLUMN_ALPHABET_RANK_CAP {
        return Err(Error::RankCap {
            what: "column alphabet",
            rank,
            cap: COLUMN_ALPHABET_RANK_CAP,
        });
    }
    Ok(column_alphabet(rank))
}

fn column(letters: impl IntoIterator<Item = Letter>) -> Column {
    Column::new(letters.into_iter().collect()).expect("strictly decreasing by construction")
}

/// Column words `c_{α⁽¹⁾} ⋯ c_{α⁽ᵏ⁾}` with `first(α⁽ʲ⁾) ≤ last(α⁽ʲ⁺¹⁾)`.
pub fn hypoplactic_k(rank: u8) -> Result<Fsa<Column>> {
    let cols = columns(rank)?;
    let mut f = Fsa::new(cols.clone());
    let start = f.add_state(true);
    f.add_initial(start);
    let states: Vec<usize> = cols.iter().map(|_| f.add_state(true)).collect();
    for (j, c) in cols.iter().enumerate() {
        f.add_transition(start, Some(c.clone()), states[j]);
        for (i, p) in cols.iter().enumerate() {
            if p.first() <= c.last() {
                f.add_transition(states[i], Some(c.clone()), states[j]);
            }
        }
    }
    Ok(f)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Right {
    Start,
    /// The column read next must exist and start above `γ`.
    Above,
    /// `γ` was inserted; the column read next, if any, starts at or below `γ`.
    Below,
    Copy,
    Done,
}

/// Right insertion as a transducer reading both tracks from right to left.
pub fn hypoplactic_right_transducer_reversed(rank: u8, gamma: Letter) -> Result<Transducer<Column, Column>> {
    let cols = columns(rank)?;
    Ok(explore(
        Direction::RightToLeft,
        Right::Start,
        |s| matches!(s, Right::Below | Right::Copy | Right::Done),
        |s| {
            let mut out = Vec::new();
            match s {
                Right::Start | Right::Above => {
                    if *s == Right::Start {
                        out.push((None, vec![column([gamma])], Right::Done));
                    }
                    for x in &cols {
                        if *s == Right::Above && x.first() <= gamma {
                            continue;
                        }
                        if x.last() <= gamma {
                            let high: Vec<Letter> = x.letters().iter().copied().filter(|&a| a > gamma).collect();
                            let low: Vec<Letter> = x.letters().iter().copied().filter(|&a| a <= gamma).collect();
                            let joined = column(high.into_iter().chain([gamma]));
                            out.push((Some(x.clone()), vec![joined, column(low)], Right::Copy));
                        } else {
                            let joined = column(x.letters().iter().copied().chain([gamma]));
                            out.push((Some(x.clone()), vec![joined], Right::Below));
                            out.push((Some(x.clone()), vec![x.clone()], Right::Above));
                        }
                    }
                }
                Right::Below => {
                    for y in cols.iter().filter(|y| y.first() <= gamma) {
                        out.push((Some(y.clone()), vec![y.clone()], Right::Copy));
                    }
                }
                Right::Copy => {
                    for y in &cols {
                        out.push((Some(y.clone()), vec![y.clone()], Right::Copy));
                    }
                }
                Right::Done => {}
            }
            out
        },
    ))
}

/// Reversal composed with complementation `a ↦ n + 1 − a`, on one column.
fn mirror(c: &Column, rank: u8) -> Column {
    column(c.letters().iter().rev().map(|a| a.complement(rank)))
}

/// Left insertion as a transducer reading left to right: the mirror image of the
/// right transducer for `n + 1 − γ`.
pub fn hypoplactic_left_transducer_raw(rank: u8, gamma: Letter) -> Result<Transducer<Column, Column>> {
    let t = hypoplactic_right_transducer_reversed(rank, gamma.complement(rank))?;
    Ok(t
        .map_labels(|c| mirror(c, rank), |c| mirror(c, rank))
        .with_direction(Direction::LeftToRight))
}

/// `{(u, v) ∈ K × K : u c_γ = v}`.
pub fn hypoplactic_right_transducer(rank: u8, gamma: Letter, cap: usize) -> Result<Transducer<Column, Column>> {
    let k = hypoplactic_k(rank)?;
    hypoplactic_right_transducer_reversed(rank, gamma)?
        .normalized()
        .restrict_input(&k, cap)?
        .restrict_output(&k, cap)
}

/// `{(u, v) ∈ K × K : c_γ u = v}`.
pub fn hypoplactic_left_transducer(rank: u8, gamma: Letter, cap: usize) -> Result<Transducer<Column, Column>> {
    let k = hypoplactic_k(rank)?;
    hypoplactic_left_transducer_raw(rank, gamma)?
        .restrict_input(&k, cap)?
        .restrict_output(&k, cap)
}

/// `c_α ↦ α`.
pub fn hypoplactic_q(rank: u8) -> Result<Transducer<Column, Letter>> {
    let mut t = Transducer::new(Direction::LeftToRight);
    let q = t.add_state(true);
    t.add_initial(q);
    for c in columns(rank)? {
        t.add_path(q, Some(c.clone()), c.letters(), q);
    }
    Ok(t)
}

pub fn hypoplactic_language(rank: u8, cap: usize) -> Result<Fsa<Letter>> {
    hypoplactic_q(rank)?.image(&hypoplactic_k(rank)?, cap)?.minimize(cap)
}

pub fn hypoplactic_right_multiplier(rank: u8, gamma: Letter, cap: usize) -> Result<Transducer<Letter, Letter>> {
    lift(&hypoplactic_right_transducer(rank, gamma, cap)?, rank, cap)
}

pub fn hypoplactic_left_multiplier(rank: u8, gamma: Letter, cap: usize) -> Result<Transducer<Letter, Letter>> {
    lift(&hypoplactic_left_transducer(rank, gamma, cap)?, rank, cap)
}

fn lift(t: &Transducer<Column, Column>, rank: u8, cap: usize) -> Result<Transducer<Letter, Letter>> {
    let q = hypoplactic_q(rank)?;
    q.inverse().compose(t, cap)?.compact(cap)?.compose(&q, cap)?.compact(cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::DEFAULT_STATE_CAP as CAP;
    use crate::hypoplactic::{column_decompose, is_quasi_ribbon, left_insert_qr, right_insert_qr};
    use crate::words::{words_up_to, Word};
    use std::collections::BTreeSet;

    fn l(v: u32) -> Letter {
        Letter::of(v)
    }

    fn cw(s: &str) -> Vec<Column> {
        column_decompose(&Word::parse(s, 9).unwrap())
    }

    #[test]
    fn examples() {
        let r1 = hypoplactic_right_transducer(2, l(1), CAP).unwrap();
        assert_eq!(r1.outputs_for(&cw("22"), 4), BTreeSet::from([cw("212")]));
        let r2 = hypoplactic_right_transducer(2, l(2), CAP).unwrap();
        assert_eq!(r2.outputs_for(&cw("1"), 4), BTreeSet::from([cw("12")]));
        for g in 1..=3 {
            for t in [
                hypoplactic_right_transducer(3, l(g), CAP).unwrap(),
                hypoplactic_left_transducer(3, l(g), CAP).unwrap(),
            ] {
                assert_eq!(t.outputs_for(&[], 3), BTreeSet::from([vec![column([l(g)])]]));
            }
        }
        assert!(matches!(hypoplactic_k(7), Err(Error::RankCap { .. })));
    }

    #[test]
    fn language_is_quasi_ribbon() {
        for n in 1..=3u8 {
            let lang = hypoplactic_language(n, CAP).unwrap();
            for w in words_up_to(n, 6) {
                assert_eq!(lang.accepts(&w), is_quasi_ribbon(&w), "{w}");
            }
        }
    }

    #[test]
    fn transducers_match_insertion() {
        for n in 1..=3u8 {
            for g in 1..=n {
                let gamma = l(g as u32);
                let r = hypoplactic_right_transducer(n, gamma, CAP).unwrap();
                let lt = hypoplactic_left_transducer(n, gamma, CAP).unwrap();
                for w in words_up_to(n, 6).filter(|w| is_quasi_ribbon(w)) {
                    let u = column_decompose(&w);
                    let right = column_decompose(&right_insert_qr(&w, gamma).unwrap());
                    let left = column_decompose(&left_insert_qr(gamma, &w).unwrap());
                    assert_eq!(r.outputs_for(&u, u.len() + 2), BTreeSet::from([right]), "{w}·{g}");
                    assert_eq!(lt.outputs_for(&u, u.len() + 2), BTreeSet::from([left]), "{g}·{w}");
                }
            }
        }
    }
}
