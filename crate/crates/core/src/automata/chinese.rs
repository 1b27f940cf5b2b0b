//! Chinese staircase words over `D` and the insertion transducers.

use std::collections::HashMap;
use std::hash::Hash;

use super::fsa::Fsa;
use super::transducer::{Direction, Transducer};
use crate::chinese::{d_alphabet, DLetter};
use crate::error::Result;
use crate::words::Letter;

fn d(k: u8, j: u8) -> DLetter {
    if j == k {
        DLetter::Single(Letter::of(k as u32))
    } else {
        DLetter::Pair(Letter::of(k as u32), Letter::of(j as u32))
    }
}

fn row(x: DLetter) -> u8 {
    x.row().value()
}

fn col(x: DLetter) -> u8 {
    x.column().value()
}

/// Builds a transducer by exploring a successor function from `start`.
pub(crate) fn explore<St, I, O>(
    direction: Direction,
    start: St,
    accepting: impl Fn(&St) -> bool,
    mut edges: impl FnMut(&St) -> Vec<(Option<I>, Vec<O>, St)>,
) -> Transducer<I, O>
where
    St: Clone + Eq + Hash,
    I: super::fsa::Label,
    O: super::fsa::Label,
{
    let mut t = Transducer::new(direction);
    let mut index: HashMap<St, usize> = HashMap::new();
    let mut todo = vec![start.clone()];
    let s0 = t.add_state(accepting(&start));
    t.add_initial(s0);
    index.insert(start, s0);
    while let Some(st) = todo.pop() {
        let p = index[&st];
        for (input, outputs, next) in edges(&st) {
            let q = *index.entry(next.clone()).or_insert_with(|| {
                todo.push(next.clone());
                t.add_state(accepting(&next))
            });
            t.add_path(p, input, &outputs, q);
        }
    }
    t
}

/// `K = K⁽¹⁾ ⋯ K⁽ⁿ⁾`: words over `D` that are non-decreasing in `⪯`.
pub fn chinese_k(rank: u8) -> Fsa<DLetter> {
    let letters = d_alphabet(rank);
    let mut f = Fsa::new(letters.clone());
    let start = f.add_state(true);
    f.add_initial(start);
    let states: Vec<usize> = letters.iter().map(|_| f.add_state(true)).collect();
    for (j, &x) in letters.iter().enumerate() {
        f.add_transition(start, Some(x), states[j]);
        for i in 0..=j {
            f.add_transition(states[i], Some(x), states[j]);
        }
    }
    f
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Right {
    /// Rows `< below` remain; the stored symbol is `alpha`.
    Scan { alpha: u8, below: u8 },
    /// Copying the rest of row `k`.
    Row { alpha: u8, k: u8 },
    /// Row `k` lost its rightmost symbol; `d_{k alpha}` is still owed.
    Owe { alpha: u8, next: Option<u8>, k: u8 },
    Copy,
}

/// Right insertion as a transducer reading both tracks from right to left.
pub fn chinese_right_transducer_reversed(rank: u8, gamma: Letter) -> Transducer<DLetter, DLetter> {
    let letters = d_alphabet(rank);
    explore(
        Direction::RightToLeft,
        Right::Scan {
            alpha: gamma.value(),
            below: rank + 1,
        },
        |s| *s == Right::Copy,
        |s| {
            let mut out = Vec::new();
            match *s {
                Right::Scan { alpha, below } => {
                    if alpha < below {
                        out.push((None, vec![d(alpha, alpha)], Right::Copy));
                    }
                    for &x in &letters {
                        let (k, beta) = (row(x), col(x));
                        if k >= below || k <= alpha {
                            continue;
                        }
                        if beta <= alpha {
                            out.push((Some(x), vec![x], Right::Row { alpha, k }));
                        } else {
                            let next = (beta < k).then_some(beta);
                            out.push((Some(x), vec![], Right::Owe { alpha, next, k }));
                        }
                    }
                }
                Right::Row { alpha, k } => {
                    for &x in letters.iter().filter(|x| row(**x) == k) {
                        out.push((Some(x), vec![x], s.clone()));
                    }
                    out.push((None, vec![], Right::Scan { alpha, below: k }));
                }
                Right::Owe { alpha, next, k } => {
                    for &x in letters.iter().filter(|x| row(**x) == k && col(**x) > alpha) {
                        out.push((Some(x), vec![x], s.clone()));
                    }
                    let after = match next {
                        Some(beta) => Right::Row { alpha: beta, k },
                        None => Right::Copy,
                    };
                    out.push((None, vec![d(k, alpha)], after));
                }
                Right::Copy => {
                    for &x in &letters {
                        out.push((Some(x), vec![x], Right::Copy));
                    }
                }
            }
            out
        },
    )
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Left {
    /// Rows `≥ from` and `< γ` remain.
    Scan { beta: Option<u8>, from: u8 },
    Row { beta: u8, rho: u8 },
    /// `emit` is owed at the end of its block in row `rho`.
    Owe { rho: u8, emit: DLetter, beta: u8 },
    /// Row `γ`: `emit` is owed at the end of its block.
    Last { emit: DLetter },
    Copy,
}

/// Left insertion as a transducer reading left to right.
pub fn chinese_left_transducer_raw(rank: u8, gamma: Letter) -> Transducer<DLetter, DLetter> {
    let letters = d_alphabet(rank);
    let g = gamma.value();
    explore(
        Direction::LeftToRight,
        Left::Scan { beta: None, from: 1 },
        |s| *s == Left::Copy,
        |s| {
            let mut out = Vec::new();
            match *s {
                Left::Scan { beta, from } => {
                    for &x in &letters {
                        let (rho, eta) = (row(x), col(x));
                        if rho < from || rho >= g {
                            continue;
                        }
                        match beta {
                            None if eta < rho => out.push((
                                Some(x),
                                vec![],
                                Left::Owe {
                                    rho,
                                    emit: d(rho, rho),
                                    beta: eta,
                                },
                            )),
                            None => out.push((Some(x), vec![], Left::Row { beta: rho, rho })),
                            Some(b) if eta < b => out.push((
                                Some(x),
                                vec![],
                                Left::Owe {
                                    rho,
                                    emit: d(rho, b),
                                    beta: eta,
                                },
                            )),
                            Some(b) => out.push((Some(x), vec![x], Left::Row { beta: b, rho })),
                        }
                    }
                    let emit = d(g, beta.unwrap_or(g));
                    out.push((None, vec![], Left::Last { emit }));
                }
                Left::Row { beta, rho } => {
                    for &x in letters.iter().filter(|x| row(**x) == rho) {
                        out.push((Some(x), vec![x], s.clone()));
                    }
                    out.push((
                        None,
                        vec![],
                        Left::Scan {
                            beta: Some(beta),
                            from: rho + 1,
                        },
                    ));
                }
                Left::Owe { rho, emit, beta } => {
                    for &x in letters.iter().filter(|x| row(**x) == rho && col(**x) <= col(emit)) {
                        out.push((Some(x), vec![x], s.clone()));
                    }
                    out.push((None, vec![emit], Left::Row { beta, rho }));
                }
                Left::Last { emit } => {
                    for &x in letters.iter().filter(|x| row(**x) == g && col(**x) <= col(emit)) {
                        out.push((Some(x), vec![x], s.clone()));
                    }
                    out.push((None, vec![emit], Left::Copy));
                }
                Left::Copy => {
                    for &x in &letters {
                        out.push((Some(x), vec![x], Left::Copy));
                    }
                }
            }
            out
        },
    )
}

/// `{(u, v) ∈ K × K : u d_γ = v}`.
pub fn chinese_right_transducer(rank: u8, gamma: Letter, cap: usize) -> Result<Transducer<DLetter, DLetter>> {
    let k = chinese_k(rank);
    chinese_right_transducer_reversed(rank, gamma)
        .normalized()
        .restrict_input(&k, cap)?
        .restrict_output(&k, cap)
}

/// `{(u, v) ∈ K × K : d_γ u = v}`.
pub fn chinese_left_transducer(rank: u8, gamma: Letter, cap: usize) -> Result<Transducer<DLetter, DLetter>> {
    let k = chinese_k(rank);
    chinese_left_transducer_raw(rank, gamma)
        .restrict_input(&k, cap)?
        .restrict_output(&k, cap)
}

/// `{(d_{αβ}, αβ), (d_α, α)}*`.
pub fn chinese_q(rank: u8) -> Transducer<DLetter, Letter> {
    let mut t = Transducer::new(Direction::LeftToRight);
    let q = t.add_state(true);
    t.add_initial(q);
    for x in d_alphabet(rank) {
        t.add_path(q, Some(x), &x.project(), q);
    }
    t
}

/// Normal forms over `A`: the image of `K` under the projection.
pub fn chinese_language(rank: u8, cap: usize) -> Result<Fsa<Letter>> {
    chinese_q(rank).image(&chinese_k(rank), cap)?.minimize(cap)
}

/// Right multiplication by `γ` over `A`.
pub fn chinese_right_multiplier(rank: u8, gamma: Letter, cap: usize) -> Result<Transducer<Letter, Letter>> {
    lift(&chinese_right_transducer(rank, gamma, cap)?, rank, cap)
}

/// Left multiplication by `γ` over `A`.
pub fn chinese_left_multiplier(rank: u8, gamma: Letter, cap: usize) -> Result<Transducer<Letter, Letter>> {
    lift(&chinese_left_transducer(rank, gamma, cap)?, rank, cap)
}

fn lift(t: &Transducer<DLetter, DLetter>, rank: u8, cap: usize) -> Result<Transducer<Letter, Letter>> {
    let q = chinese_q(rank);
    q.inverse().compose(t, cap)?.compact(cap)?.compose(&q, cap)?.compact(cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chinese::{d_lift, is_staircase_word, ChineseStaircase};
    use crate::words::{words_up_to, Word};
    use crate::automata::DEFAULT_STATE_CAP as CAP;
    use std::collections::BTreeSet;

    fn l(v: u32) -> Letter {
        Letter::of(v)
    }

    fn dw(s: &str, n: u8) -> Vec<DLetter> {
        d_lift(&Word::parse(s, n).unwrap(), n).unwrap()
    }

    #[test]
    fn k_accepts_staircase_words() {
        let k = chinese_k(2);
        assert!(k.accepts(&[d(2, 1), d(2, 2)]));
        assert!(!k.accepts(&[d(2, 2), d(2, 1)]));
        for n in 1..=3u8 {
            let k = chinese_k(n);
            let lang = chinese_language(n, CAP).unwrap();
            for w in words_up_to(n, 6) {
                assert_eq!(lang.accepts(&w), is_staircase_word(&w, n), "{w}");
                if is_staircase_word(&w, n) {
                    assert!(k.accepts(&d_lift(&w, n).unwrap()));
                }
            }
        }
    }

    #[test]
    fn examples() {
        let r = chinese_right_transducer(2, l(1), CAP).unwrap();
        assert!(r.outputs_for(&[d(2, 2)], 4).contains(&vec![d(2, 1)]));
        let lt = chinese_left_transducer(3, l(3), CAP).unwrap();
        assert_eq!(lt.outputs_for(&dw("12", 3), 4), BTreeSet::from([dw("231", 3)]));
        for n in 1..=3u8 {
            for g in 1..=n {
                let r = chinese_right_transducer(n, l(g as u32), CAP).unwrap();
                let lt = chinese_left_transducer(n, l(g as u32), CAP).unwrap();
                assert_eq!(r.outputs_for(&[], 3), BTreeSet::from([vec![d(g, g)]]));
                assert_eq!(lt.outputs_for(&[], 3), BTreeSet::from([vec![d(g, g)]]));
            }
        }
        let img = chinese_q(3).image(&Fsa::from_words(d_alphabet(3), [&[d(2, 2), d(3, 1)][..]]), CAP);
        let expected: Vec<Letter> = Word::parse("231", 3).unwrap().0;
        assert_eq!(img.unwrap().enumerate(4), BTreeSet::from([expected]));
    }

    #[test]
    fn transducers_match_insertion() {
        for n in 1..=3u8 {
            for g in 1..=n {
                let gamma = l(g as u32);
                let r = chinese_right_transducer(n, gamma, CAP).unwrap();
                let lt = chinese_left_transducer(n, gamma, CAP).unwrap();
                for w in words_up_to(n, 6).filter(|w| is_staircase_word(w, n)) {
                    let s = ChineseStaircase::from_staircase_word(&w, n).unwrap();
                    let u = s.to_d_word();
                    let right = s.right_insert(gamma).to_d_word();
                    let left = s.left_insert(gamma).to_d_word();
                    assert_eq!(r.outputs_for(&u, u.len() + 2), BTreeSet::from([right]), "{w}·{g}");
                    assert_eq!(lt.outputs_for(&u, u.len() + 2), BTreeSet::from([left]), "{g}·{w}");
                }
            }
        }
    }
}
