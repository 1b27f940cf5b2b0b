//! Irreducible words of the sylvester system and the multiplier transducers.

use super::chinese::explore;
use super::fsa::Fsa;
use super::transducer::{Direction, Transducer};
use crate::error::{Error, Result};
use crate::words::{alphabet, Letter};

/// Bitmask state limits the rank.
pub const SYLVESTER_AUTOMATA_RANK_CAP: u8 = 16;

fn letters(rank: u8) -> Result<Vec<Letter>> {
    if rank > SYLVESTER_AUTOMATA_RANK_CAP {
        return Err(Error::RankCap {
            what: "sylvester automata",
            rank,
            cap: SYLVESTER_AUTOMATA_RANK_CAP,
        });
    }
    Ok(alphabet(rank).collect())
}

/// Words avoiding every factor `c a v b` with `a ≤ b < c`.
///
/// A state is the set of forbidden letters (the union of the intervals
/// `[a, c)` opened by earlier descents `c a`) and the previous letter.
pub fn sylvester_l(rank: u8) -> Result<Fsa<Letter>> {
    let a = letters(rank)?;
    let mut f = Fsa::new(a.clone());
    let mut index = std::collections::HashMap::new();
    let start = f.add_state(true);
    f.add_initial(start);
    index.insert((0u32, 0u8), start);
    let mut todo = vec![(0u32, 0u8)];
    while let Some((forbidden, prev)) = todo.pop() {
        let p = index[&(forbidden, prev)];
        for &x in &a {
            let v = x.value();
            if forbidden & (1 << v) != 0 {
                continue;
            }
            let mut next = forbidden;
            if prev > v {
                for b in v..prev {
                    next |= 1 << b;
                }
            }
            let key = (next, v);
            let q = *index.entry(key).or_insert_with(|| {
                todo.push(key);
                f.add_state(true)
            });
            f.add_transition(p, Some(x), q);
        }
    }
    Ok(f)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum H {
    Prefix,
    /// `c` was taken; at least one letter `≤ b` must follow.
    Lift(Letter),
    Run(Letter),
    Middle,
    Suffix,
}

/// `H_b = {(p c q r b s, p q c r b s) : c > b, q ∈ {≤ b}⁺}`.
pub fn h_transducer(rank: u8, b: Letter) -> Result<Transducer<Letter, Letter>> {
    let a = letters(rank)?;
    Ok(explore(
        Direction::LeftToRight,
        H::Prefix,
        |s| *s == H::Suffix,
        |s| {
            let mut out = Vec::new();
            match s {
                H::Prefix => {
                    for &x in &a {
                        out.push((Some(x), vec![x], H::Prefix));
                        if x > b {
                            out.push((Some(x), vec![], H::Lift(x)));
                        }
                    }
                }
                H::Lift(c) | H::Run(c) => {
                    for &x in a.iter().filter(|&&x| x <= b) {
                        out.push((Some(x), vec![x], H::Run(*c)));
                    }
                    if let H::Run(c) = s {
                        out.push((None, vec![*c], H::Middle));
                    }
                }
                H::Middle => {
                    for &x in &a {
                        out.push((Some(x), vec![x], H::Middle));
                    }
                    out.push((Some(b), vec![b], H::Suffix));
                }
                H::Suffix => {
                    for &x in &a {
                        out.push((Some(x), vec![x], H::Suffix));
                    }
                }
            }
            out
        },
    ))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum J {
    Prefix,
    Lift(Letter),
    Run(Letter),
    Tail,
}

/// `J_γ = {(p c q r, p q c r) : c > γ, q ∈ {≤ γ}⁺, r ∈ {> γ}*}`.
pub fn j_transducer(rank: u8, gamma: Letter) -> Result<Transducer<Letter, Letter>> {
    let a = letters(rank)?;
    Ok(explore(
        Direction::LeftToRight,
        J::Prefix,
        |s| *s == J::Tail,
        |s| {
            let mut out = Vec::new();
            match s {
                J::Prefix => {
                    for &x in &a {
                        out.push((Some(x), vec![x], J::Prefix));
                        if x > gamma {
                            out.push((Some(x), vec![], J::Lift(x)));
                        }
                    }
                }
                J::Lift(c) | J::Run(c) => {
                    for &x in a.iter().filter(|&&x| x <= gamma) {
                        out.push((Some(x), vec![x], J::Run(*c)));
                    }
                    if let J::Run(c) = s {
                        out.push((None, vec![*c], J::Tail));
                    }
                }
                J::Tail => {
                    for &x in a.iter().filter(|&&x| x > gamma) {
                        out.push((Some(x), vec![x], J::Tail));
                    }
                }
            }
            out
        },
    ))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Jm {
    Low,
    /// `a` was written early; a nonempty run above `γ` must precede it.
    Owe(Letter),
    Run(Letter),
    Rest,
}

/// `{(p r a s, p a r s) : p ∈ {≤ γ}*, r ∈ {> γ}⁺, a ≤ γ}`: one letter at or
/// below `γ` jumps left over the run above `γ` that precedes it.
pub fn j_left_transducer(rank: u8, gamma: Letter) -> Result<Transducer<Letter, Letter>> {
    let a = letters(rank)?;
    Ok(explore(
        Direction::LeftToRight,
        Jm::Low,
        |s| *s == Jm::Rest,
        |s| {
            let mut out = Vec::new();
            match s {
                Jm::Low => {
                    for &x in a.iter().filter(|&&x| x <= gamma) {
                        out.push((Some(x), vec![x], Jm::Low));
                        out.push((None, vec![x], Jm::Owe(x)));
                    }
                }
                Jm::Owe(y) | Jm::Run(y) => {
                    for &x in a.iter().filter(|&&x| x > gamma) {
                        out.push((Some(x), vec![x], Jm::Run(*y)));
                    }
                    if let Jm::Run(y) = s {
                        out.push((Some(*y), vec![], Jm::Rest));
                    }
                }
                Jm::Rest => {
                    for &x in &a {
                        out.push((Some(x), vec![x], Jm::Rest));
                    }
                }
            }
            out
        },
    ))
}

/// `∪_{ℓ ≤ count} T^ℓ`, identity included.
fn powers_union(t: &Transducer<Letter, Letter>, rank: u8, count: usize, cap: usize) -> Result<Transducer<Letter, Letter>> {
    let id = Transducer::<Letter, Letter>::identity(alphabet(rank));
    let mut acc = id.clone();
    let mut power = id;
    for _ in 0..count {
        power = power.compose(t, cap)?.compact(cap)?;
        acc = acc.union(&power).compact(cap)?;
    }
    Ok(acc)
}

/// `_γL`: pairs `(w, x)` with `w, x` irreducible and `γw = x`, obtained from
/// the union over chains `β₁ < ⋯ < β_ℓ` of `H_{β₁} ∘ ⋯ ∘ H_{β_ℓ}`.
pub fn sylvester_left_multiplier(rank: u8, gamma: Letter, cap: usize) -> Result<Transducer<Letter, Letter>> {
    let a = letters(rank)?;
    let l = sylvester_l(rank)?;
    let hs: Vec<_> = a.iter().map(|&b| h_transducer(rank, b)).collect::<Result<_>>()?;
    let mut union = Transducer::<Letter, Letter>::identity(a.clone());
    for mask in 1u32..(1 << rank) {
        let mut chain: Option<Transducer<Letter, Letter>> = None;
        for (i, h) in hs.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            chain = Some(match chain {
                None => h.clone(),
                Some(c) => c.compose(h, cap)?.compact(cap)?,
            });
        }
        union = union.union(&chain.expect("nonempty chain")).compact(cap)?;
    }
    union
        .restrict_input(&l.prefixed(gamma), cap)?
        .restrict_output(&l, cap)?
        .left_quotient_input(gamma, &a, cap)?
        .compact(cap)
}

/// `L_γ = L′_γ (ε, γ)` with `L′_γ = (L × L/γ) ∩ ∪_{ℓ ≤ γ} J′^ℓ`, where `J′` is
/// [`j_left_transducer`]. At most `γ` letters `≤ γ` follow a letter `> γ` in an
/// irreducible word, so `γ` iterations suffice.
pub fn sylvester_right_multiplier(rank: u8, gamma: Letter, cap: usize) -> Result<Transducer<Letter, Letter>> {
    let j = j_left_transducer(rank, gamma)?;
    right_from_steps(&j, rank, gamma, gamma.value() as usize, cap)
}

/// The same construction from iterates of [`j_transducer`], `1 ≤ ℓ ≤ bound`.
pub fn sylvester_right_multiplier_bounded(
    rank: u8,
    gamma: Letter,
    bound: usize,
    cap: usize,
) -> Result<Transducer<Letter, Letter>> {
    let j = j_transducer(rank, gamma)?;
    right_from_steps(&j, rank, gamma, bound, cap)
}

fn right_from_steps(
    step: &Transducer<Letter, Letter>,
    rank: u8,
    gamma: Letter,
    count: usize,
    cap: usize,
) -> Result<Transducer<Letter, Letter>> {
    let l = sylvester_l(rank)?;
    powers_union(step, rank, count, cap)?
        .restrict_input(&l, cap)?
        .restrict_output(&l.right_quotient(&gamma), cap)?
        .append_output(gamma)
        .compact(cap)
}
