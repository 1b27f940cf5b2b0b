//! Uniform access to the three families by [`MonoidId`].

use crate::chinese::{self, ChineseStaircase};
use crate::error::Result;
use crate::hypoplactic;
use crate::presentation::Presentation;
use crate::rewriting::Strategy;
use crate::sylvester;
use crate::words::{Letter, MonoidId, MonoidKind, Symbol, Word};

/// Normal form computed by insertion.
pub fn normal_form(m: MonoidId, w: &Word) -> Result<Word> {
    match m.kind {
        MonoidKind::Chinese => chinese::chinese_normal_form(w, m.rank),
        MonoidKind::Hypoplactic => hypoplactic::q_normal_form(w, m.rank),
        MonoidKind::Sylvester => sylvester::sylvester_normal_form(w, m.rank),
    }
}

/// Normal form computed by the monoid's complete rewriting system.
///
/// Chinese words are rewritten over `D` starting from `d_a` per letter.
pub fn rewriting_normal_form(m: MonoidId, w: &Word, strategy: Strategy) -> Result<Word> {
    w.check_rank(m.rank)?;
    match m.kind {
        MonoidKind::Chinese => {
            let sys = chinese::chinese_t(m.rank);
            let nf = sys.normal_form(&chinese::d_encode(w), strategy, None)?;
            Ok(chinese::d_project(&nf))
        }
        MonoidKind::Hypoplactic => {
            let sys = hypoplactic::hypoplactic_t(m.rank)?;
            Ok(Word(sys.normal_form(w, strategy, None)?))
        }
        MonoidKind::Sylvester => {
            let sys = sylvester::sylvester_system(m.rank);
            Ok(Word(sys.normal_form(w, strategy, None)?))
        }
    }
}

/// Rewriting trace rendered one word per line, starting with the input.
pub fn rewriting_trace(m: MonoidId, w: &Word, strategy: Strategy) -> Result<Vec<String>> {
    w.check_rank(m.rank)?;
    let n = m.rank;
    match m.kind {
        MonoidKind::Chinese => {
            let sys = chinese::chinese_t(n);
            let (nf, steps) = sys.reduce_traced(&chinese::d_encode(w), strategy, None)?;
            let mut out: Vec<_> = steps
                .iter()
                .map(|s| chinese::DLetter::render_word(&s.before, n))
                .collect();
            out.push(chinese::DLetter::render_word(&nf, n));
            Ok(out)
        }
        MonoidKind::Hypoplactic | MonoidKind::Sylvester => {
            let sys = if m.kind == MonoidKind::Hypoplactic {
                hypoplactic::hypoplactic_t(n)?
            } else {
                sylvester::sylvester_system(n)
            };
            let (nf, steps) = sys.reduce_traced(w, strategy, None)?;
            let mut out: Vec<_> = steps.iter().map(|s| Letter::render_word(&s.before, n)).collect();
            out.push(Letter::render_word(&nf, n));
            Ok(out)
        }
    }
}

pub fn is_normal_form(m: MonoidId, w: &Word) -> bool {
    if w.check_rank(m.rank).is_err() {
        return false;
    }
    match m.kind {
        MonoidKind::Chinese => chinese::is_staircase_word(w, m.rank),
        MonoidKind::Hypoplactic => hypoplactic::is_quasi_ribbon(w),
        MonoidKind::Sylvester => sylvester::is_irreducible(w),
    }
}

/// Normal form of `wγ` for a normal-form `w`, by the family's right algorithm.
pub fn right_multiply(m: MonoidId, w: &Word, gamma: Letter) -> Result<Word> {
    w.check_rank(m.rank)?;
    Word::from_letters([gamma]).check_rank(m.rank)?;
    match m.kind {
        MonoidKind::Chinese => Ok(ChineseStaircase::from_staircase_word(w, m.rank)?
            .right_insert(gamma)
            .to_word()),
        MonoidKind::Hypoplactic => hypoplactic::right_insert_qr(w, gamma),
        MonoidKind::Sylvester => Ok(sylvester::right_multiply_nf(w, gamma)?.result),
    }
}

/// Normal form of `γw` for a normal-form `w`, by the family's left algorithm.
pub fn left_multiply(m: MonoidId, gamma: Letter, w: &Word) -> Result<Word> {
    w.check_rank(m.rank)?;
    Word::from_letters([gamma]).check_rank(m.rank)?;
    match m.kind {
        MonoidKind::Chinese => Ok(ChineseStaircase::from_staircase_word(w, m.rank)?
            .left_insert(gamma)
            .to_word()),
        MonoidKind::Hypoplactic => hypoplactic::left_insert_qr(gamma, w),
        MonoidKind::Sylvester => Ok(sylvester::left_multiply_nf(gamma, w)?.result),
    }
}

pub fn presentation(m: MonoidId) -> Presentation {
    Presentation::for_monoid(m.kind, m.rank)
}

pub fn equal(m: MonoidId, u: &Word, v: &Word) -> Result<bool> {
    Ok(normal_form(m, u)? == normal_form(m, v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn id(kind: MonoidKind, n: u32) -> MonoidId {
        MonoidId::new(kind, n).unwrap()
    }

    #[test]
    fn equality_examples() {
        let s9 = id(MonoidKind::Sylvester, 9);
        assert!(equal(s9, &w("265415314"), &w("124315654")).unwrap());
        assert!(equal(id(MonoidKind::Chinese, 3), &w("312"), &w("321")).unwrap());
        assert!(!equal(id(MonoidKind::Hypoplactic, 2), &w("12"), &w("21")).unwrap());
    }

    #[test]
    fn dispatch_agrees() {
        for kind in MonoidKind::ALL {
            let m = id(kind, 3);
            for x in crate::words::words_up_to(3, 4) {
                let nf = normal_form(m, &x).unwrap();
                assert!(is_normal_form(m, &nf));
                for s in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(7)] {
                    assert_eq!(rewriting_normal_form(m, &x, s).unwrap(), nf);
                }
                let trace = rewriting_trace(m, &x, Strategy::Leftmost).unwrap();
                assert!(!trace.is_empty());
            }
        }
    }
}
