//! Exhaustive comparison of the synchronized multiplier automata with normal forms.

use std::collections::BTreeSet;

use serde::Serialize;

use super::fsa::Fsa;
use super::sync::{delta, synchronize_auto, undelta, PairSym, Side};
use super::transducer::Transducer;
use super::{chinese, hypoplactic, sylvester};
use crate::error::Result;
use crate::monoid;
use crate::words::{alphabet, words_up_to, Letter, MonoidId, MonoidKind, Symbol, Word};

/// Largest buffer tried when synchronizing.
pub const DELAY_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Multiplication {
    Right,
    Left,
}

/// Normal-form language over the generators.
pub fn language(m: MonoidId, cap: usize) -> Result<Fsa<Letter>> {
    match m.kind {
        MonoidKind::Chinese => chinese::chinese_language(m.rank, cap),
        MonoidKind::Hypoplactic => hypoplactic::hypoplactic_language(m.rank, cap),
        MonoidKind::Sylvester => sylvester::sylvester_l(m.rank),
    }
}

/// Transducer for `{(u, v) : u, v normal forms, uγ = v}` (or `γu = v`).
pub fn multiplier(m: MonoidId, gamma: Letter, mult: Multiplication, cap: usize) -> Result<Transducer<Letter, Letter>> {
    Word::from_letters([gamma]).check_rank(m.rank)?;
    let n = m.rank;
    match (m.kind, mult) {
        (MonoidKind::Chinese, Multiplication::Right) => chinese::chinese_right_multiplier(n, gamma, cap),
        (MonoidKind::Chinese, Multiplication::Left) => chinese::chinese_left_multiplier(n, gamma, cap),
        (MonoidKind::Hypoplactic, Multiplication::Right) => hypoplactic::hypoplactic_right_multiplier(n, gamma, cap),
        (MonoidKind::Hypoplactic, Multiplication::Left) => hypoplactic::hypoplactic_left_multiplier(n, gamma, cap),
        (MonoidKind::Sylvester, Multiplication::Right) => sylvester::sylvester_right_multiplier(n, gamma, cap),
        (MonoidKind::Sylvester, Multiplication::Left) => sylvester::sylvester_left_multiplier(n, gamma, cap),
    }
}

/// Synchronized automaton for one of the four families, with the buffer used.
pub fn synchronized_multiplier(
    m: MonoidId,
    gamma: Letter,
    mult: Multiplication,
    side: Side,
    cap: usize,
) -> Result<(Fsa<PairSym<Letter, Letter>>, usize)> {
    let t = multiplier(m, gamma, mult, cap)?;
    let (f, k) = synchronize_auto(&t, side, DELAY_LIMIT, cap)?;
    Ok((f.minimize(cap)?, k))
}

pub fn family_name(gamma: Letter, mult: Multiplication, side: Side) -> String {
    match mult {
        Multiplication::Right => format!("L_{gamma} δ_{side}"),
        Multiplication::Left => format!("_{gamma}L δ_{side}"),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub u: String,
    pub v: String,
    /// `missing` (expected, rejected) or `unexpected` (accepted, wrong).
    pub kind: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct LanguageCheck {
    pub states: usize,
    pub expected: usize,
    pub accepted: usize,
    pub counterexample: Option<Counterexample>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyCheck {
    pub family: String,
    pub gamma: u8,
    pub multiplication: Multiplication,
    pub side: String,
    pub delay: usize,
    pub transducer_states: usize,
    pub states: usize,
    pub expected: usize,
    pub accepted: usize,
    pub counterexample: Option<Counterexample>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BiautomaticReport {
    pub monoid: String,
    pub rank: u8,
    pub max_len: usize,
    pub language: LanguageCheck,
    pub families: Vec<FamilyCheck>,
    pub pass: bool,
}

impl BiautomaticReport {
    pub fn first_counterexample(&self) -> Option<(String, &Counterexample)> {
        self.language
            .counterexample
            .as_ref()
            .map(|c| ("L".to_string(), c))
            .or_else(|| {
                self.families
                    .iter()
                    .find_map(|f| f.counterexample.as_ref().map(|c| (f.family.clone(), c)))
            })
    }
}

fn compare<T: Ord + Clone>(
    expected: &BTreeSet<T>,
    accepted: &BTreeSet<T>,
    show: impl Fn(&T) -> (String, String),
) -> Option<Counterexample> {
    let pick = |x: &T, kind| {
        let (u, v) = show(x);
        Counterexample { u, v, kind }
    };
    expected
        .difference(accepted)
        .next()
        .map(|x| pick(x, "missing"))
        .or_else(|| accepted.difference(expected).next().map(|x| pick(x, "unexpected")))
}

/// Checks the normal-form language and all four families for every generator.
pub fn verify_biautomatic(m: MonoidId, max_len: usize, cap: usize) -> Result<BiautomaticReport> {
    let n = m.rank;
    let normal: Vec<Word> = words_up_to(n, max_len)
        .filter(|w| monoid::is_normal_form(m, w))
        .collect();
    let lang = language(m, cap)?;
    let expected: BTreeSet<Vec<Letter>> = normal.iter().map(|w| w.0.clone()).collect();
    let accepted = lang.enumerate(max_len);
    let counterexample = compare(&expected, &accepted, |w| (Letter::render_word(w, n), String::new()));
    let language = LanguageCheck {
        states: lang.num_states(),
        expected: expected.len(),
        accepted: accepted.len(),
        pass: counterexample.is_none(),
        counterexample,
    };

    let mut jobs = Vec::new();
    for gamma in alphabet(n) {
        for mult in [Multiplication::Right, Multiplication::Left] {
            for side in [Side::R, Side::L] {
                jobs.push((gamma, mult, side));
            }
        }
    }
    let results: Vec<Result<FamilyCheck>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(gamma, mult, side)| {
                let normal = &normal;
                scope.spawn(move || check_family(m, gamma, mult, side, normal, max_len, cap))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let families = results.into_iter().collect::<Result<Vec<_>>>()?;
    let pass = language.pass && families.iter().all(|f| f.pass);
    Ok(BiautomaticReport {
        monoid: m.kind.name().to_string(),
        rank: n,
        max_len,
        language,
        families,
        pass,
    })
}

fn check_family(
    m: MonoidId,
    gamma: Letter,
    mult: Multiplication,
    side: Side,
    normal: &[Word],
    max_len: usize,
    cap: usize,
) -> Result<FamilyCheck> {
    let n = m.rank;
    let t = multiplier(m, gamma, mult, cap)?;
    let (f, delay) = synchronize_auto(&t, side, DELAY_LIMIT, cap)?;
    let f = f.minimize(cap)?;
    let mut expected = BTreeSet::new();
    for u in normal {
        let product = match mult {
            Multiplication::Right => u.append(gamma),
            Multiplication::Left => u.prepend(gamma),
        };
        let v = monoid::normal_form(m, &product)?;
        expected.insert(delta(&u.0, &v.0, side));
    }
    // Every expected pair word has length |u| + 1 ≤ max_len + 1, and any
    // accepted pair of that length has |u| ≤ max_len when the lengths differ by one.
    let accepted = f.enumerate(max_len + 1);
    let counterexample = compare(&expected, &accepted, |x| {
        let (u, v) = undelta(x);
        (Letter::render_word(&u, n), Letter::render_word(&v, n))
    });
    Ok(FamilyCheck {
        family: family_name(gamma, mult, side),
        gamma: gamma.value(),
        multiplication: mult,
        side: side.to_string(),
        delay,
        transducer_states: t.num_states(),
        states: f.num_states(),
        expected: expected.len(),
        accepted: accepted.len(),
        pass: counterexample.is_none(),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::DEFAULT_STATE_CAP as CAP;

    #[test]
    fn rank_two_structures_verify() {
        for kind in MonoidKind::ALL {
            let m = MonoidId::new(kind, 2).unwrap();
            let report = verify_biautomatic(m, 4, CAP).unwrap();
            assert!(report.pass, "{}", serde_json::to_string_pretty(&report).unwrap());
            assert_eq!(report.families.len(), 8);
        }
    }
}
