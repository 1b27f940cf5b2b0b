//! The Chinese monoid: staircases, the `D` alphabet with its finite
//! complete rewriting system, and insertion from either side.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewriting::{Rule, RewritingSystem};
use crate::words::{alphabet, Letter, Symbol, Word};

/// A symbol of `D`: `d_{αβ}` (α > β) stands for `αβ`, `d_α` for `α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DLetter {
    Pair(Letter, Letter),
    Single(Letter),
}

impl DLetter {
    pub fn pair(alpha: Letter, beta: Letter) -> Result<Self> {
        if alpha <= beta {
            return Err(Error::Domain {
                what: "D letter",
                detail: format!("d_{{{alpha}{beta}}} needs {alpha} > {beta}"),
            });
        }
        Ok(DLetter::Pair(alpha, beta))
    }

    /// Row of the staircase the symbol belongs to.
    pub fn row(self) -> Letter {
        match self {
            DLetter::Pair(a, _) | DLetter::Single(a) => a,
        }
    }

    /// Column within its row, counted from the right; `d_k` sits in column `k`.
    pub fn column(self) -> Letter {
        match self {
            DLetter::Pair(_, b) | DLetter::Single(b) => b,
        }
    }

    /// Position in the total order `⪯`.
    pub fn ord_index(self) -> u32 {
        let k = self.row().value() as u32;
        k * (k - 1) / 2 + self.column().value() as u32 - 1
    }

    /// The subscript word.
    pub fn project(self) -> Vec<Letter> {
        match self {
            DLetter::Pair(a, b) => vec![a, b],
            DLetter::Single(a) => vec![a],
        }
    }
}

impl Ord for DLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ord_index().cmp(&other.ord_index())
    }
}

impl PartialOrd for DLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(255))
    }
}

impl Symbol for DLetter {
    fn render(&self, rank: u8) -> String {
        match self {
            DLetter::Single(a) => format!("d{a}"),
            DLetter::Pair(a, b) if rank <= 9 => format!("d{a}{b}"),
            DLetter::Pair(a, b) => format!("d{a},{b}"),
        }
    }

    fn parse_token(token: &str, rank: u8) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            what: "D letter",
            input: token.to_string(),
            reason: reason.to_string(),
        };
        let body = token.trim().strip_prefix('d').ok_or_else(|| bad("missing `d`"))?;
        let nums: Vec<u32> = if body.contains(',') {
            body.split(',')
                .map(|t| t.parse().map_err(|_| bad("not an integer")))
                .collect::<Result<_>>()?
        } else if rank <= 9 {
            body.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| bad("not a digit")))
                .collect::<Result<_>>()?
        } else {
            vec![body.parse().map_err(|_| bad("not an integer"))?]
        };
        match nums[..] {
            [a] => Ok(DLetter::Single(Letter::new(a, rank)?)),
            [a, b] => DLetter::pair(Letter::new(a, rank)?, Letter::new(b, rank)?),
            _ => Err(bad("expected one or two subscripts")),
        }
    }
}

/// All of `D` for rank `n`, in increasing `⪯` order.
pub fn d_alphabet(rank: u8) -> Vec<DLetter> {
    let mut out = Vec::new();
    for k in alphabet(rank) {
        for j in alphabet(rank).filter(|&j| j < k) {
            out.push(DLetter::Pair(k, j));
        }
        out.push(DLetter::Single(k));
    }
    out
}

/// `d ≻ d'`.
pub fn d_succ(d: DLetter, e: DLetter) -> bool {
    use DLetter::*;
    match (d, e) {
        (Single(a), Single(b)) => a > b,
        (Pair(a, _), Single(g)) => a > g,
        (Single(a), Pair(b, _)) => a >= b,
        (Pair(a, b), Pair(g, d)) => a > g || (a == g && b > d),
    }
}

/// The `D`-staircase word equal to `de` when `d ≻ e`.
pub fn csw_d(d: DLetter, e: DLetter) -> Result<Vec<DLetter>> {
    use DLetter::*;
    if !d_succ(d, e) {
        return Err(Error::Precondition(format!(
            "{d} {e} is already a staircase word"
        )));
    }
    Ok(match (d, e) {
        (Single(a), Single(b)) => vec![Pair(a, b)],
        (Pair(a, b), Single(g)) => {
            if b >= g {
                vec![Single(b), Pair(a, g)]
            } else {
                vec![Single(g), Pair(a, b)]
            }
        }
        (Single(a), Pair(b, g)) => {
            if a == b {
                vec![Pair(a, g), Single(b)]
            } else {
                vec![Single(b), Pair(a, g)]
            }
        }
        (Pair(a, b), Pair(g, dl)) => {
            if a == g {
                vec![Pair(g, dl), Pair(a, b)]
            } else if b == g {
                vec![Single(b), Single(b), Pair(a, dl)]
            } else if b > g {
                vec![Pair(b, g), Pair(a, dl)]
            } else if b >= dl {
                vec![Pair(g, b), Pair(a, dl)]
            } else {
                vec![Pair(g, dl), Pair(a, b)]
            }
        }
    })
}

/// The finite complete system `{dd' → csw(dd') : d ≻ d'}` over `D`.
pub fn chinese_t(rank: u8) -> RewritingSystem<DLetter> {
    let d = d_alphabet(rank);
    let mut rules = Vec::new();
    for &x in &d {
        for &y in &d {
            if d_succ(x, y) {
                let rhs = csw_d(x, y).expect("x ≻ y");
                rules.push(Rule::literal(vec![x, y], rhs).expect("distinct sides"));
            }
        }
    }
    RewritingSystem::new(rank, d, rules)
}

/// Concatenated subscripts.
pub fn d_project(w: &[DLetter]) -> Word {
    Word(w.iter().flat_map(|d| d.project()).collect())
}

/// Inverse of [`d_project`] on Chinese staircase words.
pub fn d_lift(w: &Word, rank: u8) -> Result<Vec<DLetter>> {
    w.check_rank(rank)?;
    let mut out: Vec<DLetter> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let x = w[i];
        let d = match w.get(i + 1) {
            Some(&y) if y < x => {
                i += 2;
                DLetter::Pair(x, y)
            }
            _ => {
                i += 1;
                DLetter::Single(x)
            }
        };
        if let Some(&prev) = out.last() {
            if d_succ(prev, d) {
                return Err(Error::Domain {
                    what: "Chinese staircase word",
                    detail: w.render(rank),
                });
            }
        }
        out.push(d);
    }
    Ok(out)
}

pub fn is_staircase_word(w: &Word, rank: u8) -> bool {
    d_lift(w, rank).is_ok()
}

/// Exponents of a Chinese staircase word.
///
/// `rows[k-1]` is row `k` stored as `[σ_k1, …, σ_k(k-1), σ_k]`, so the
/// entry in column `j` of row `k` is `rows[k-1][j-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChineseStaircase {
    pub n: u8,
    pub rows: Vec<Vec<u32>>,
}

impl ChineseStaircase {
    pub fn empty(n: u8) -> Self {
        ChineseStaircase {
            n,
            rows: (1..=n as usize).map(|k| vec![0; k]).collect(),
        }
    }

    /// Entry in row `k`, column `j` (`j = k` is `σ_k`).
    pub fn get(&self, k: u8, j: u8) -> u32 {
        self.rows[k as usize - 1][j as usize - 1]
    }

    fn at(&mut self, k: u8, j: u8) -> &mut u32 {
        &mut self.rows[k as usize - 1][j as usize - 1]
    }

    /// Checks the triangular shape.
    pub fn validate(&self) -> Result<()> {
        let ok = self.rows.len() == self.n as usize
            && self.rows.iter().enumerate().all(|(i, r)| r.len() == i + 1);
        if ok {
            Ok(())
        } else {
            Err(Error::Domain {
                what: "staircase",
                detail: format!("row k must have k entries for rank {}", self.n),
            })
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    pub fn to_d_word(&self) -> Vec<DLetter> {
        let mut out = Vec::new();
        for k in alphabet(self.n) {
            for j in alphabet(self.n).take_while(|&j| j <= k) {
                let d = if j == k {
                    DLetter::Single(k)
                } else {
                    DLetter::Pair(k, j)
                };
                for _ in 0..self.get(k.value(), j.value()) {
                    out.push(d);
                }
            }
        }
        out
    }

    pub fn to_word(&self) -> Word {
        d_project(&self.to_d_word())
    }

    /// Staircase of a Chinese staircase word.
    pub fn from_staircase_word(w: &Word, rank: u8) -> Result<Self> {
        let mut s = ChineseStaircase::empty(rank);
        for d in d_lift(w, rank)? {
            *s.at(d.row().value(), d.column().value()) += 1;
        }
        Ok(s)
    }

    /// Staircase of the normal form of an arbitrary word.
    pub fn from_word(w: &Word, rank: u8) -> Result<Self> {
        w.check_rank(rank)?;
        let mut s = ChineseStaircase::empty(rank);
        for &a in w.iter() {
            s = s.right_insert(a);
        }
        Ok(s)
    }

    /// Staircase of `w·γ`.
    pub fn right_insert(&self, gamma: Letter) -> Self {
        assert!(gamma.value() <= self.n, "letter above rank");
        let mut s = self.clone();
        let mut g = gamma.value();
        let mut k = self.n;
        loop {
            if g == k {
                *s.at(k, k) += 1;
                return s;
            }
            let beta = (1..=k).rev().find(|&j| s.get(k, j) > 0).unwrap_or(g);
            if g >= beta {
                k -= 1;
            } else if beta < k {
                *s.at(k, beta) -= 1;
                *s.at(k, g) += 1;
                g = beta;
                k -= 1;
            } else {
                *s.at(k, k) -= 1;
                *s.at(k, g) += 1;
                return s;
            }
        }
    }

    /// Staircase of `γ·w`.
    pub fn left_insert(&self, gamma: Letter) -> Self {
        assert!(gamma.value() <= self.n, "letter above rank");
        let mut s = self.clone();
        let g = gamma.value();
        let mut beta: Option<u8> = None;
        for rho in 1..g {
            let Some(eta) = (1..=rho).find(|&j| s.get(rho, j) > 0) else {
                continue;
            };
            match beta {
                None => {
                    if eta < rho {
                        *s.at(rho, eta) -= 1;
                        *s.at(rho, rho) += 1;
                    } else {
                        *s.at(rho, rho) -= 1;
                    }
                    beta = Some(eta);
                }
                Some(b) if eta < b => {
                    *s.at(rho, eta) -= 1;
                    *s.at(rho, b) += 1;
                    beta = Some(eta);
                }
                Some(_) => {}
            }
        }
        match beta {
            None => *s.at(g, g) += 1,
            Some(b) => *s.at(g, b) += 1,
        }
        s
    }

    /// Triangular diagram: row `k` shows `σ_k, σ_k(k-1), …, σ_k1`, right aligned.
    pub fn diagram(&self) -> String {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        let n = self.n as usize;
        let mut out = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            let pad = (n - i - 1) * (width + 3);
            out.push_str(&" ".repeat(pad));
            for x in row.iter().rev() {
                out.push_str(&format!("[{x:>width$}]", width = width + 1));
            }
            out.push_str(&format!("  {}\n", i + 1));
        }
        out
    }
}

/// The Chinese staircase word equal to `w`.
pub fn chinese_normal_form(w: &Word, rank: u8) -> Result<Word> {
    Ok(ChineseStaircase::from_word(w, rank)?.to_word())
}

/// `w` encoded letter by letter as `d_a` symbols.
pub fn d_encode(w: &Word) -> Vec<DLetter> {
    w.iter().map(|&a| DLetter::Single(a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation;
    use crate::rewriting::Strategy;
    use crate::words::{lex_compare, words_up_to};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn l(v: u32) -> Letter {
        Letter::of(v)
    }

    fn d(s: &str) -> DLetter {
        DLetter::parse_token(s, 9).unwrap()
    }

    fn dw(s: &str) -> Vec<DLetter> {
        DLetter::parse_word(s, 9).unwrap()
    }

    #[test]
    fn staircase_expansion() {
        let mut s = ChineseStaircase::empty(2);
        s.rows[1][0] = 1;
        assert_eq!(s.to_word(), w("21"));
        let mut s = ChineseStaircase::empty(3);
        s.rows[1][1] = 1;
        s.rows[2][0] = 1;
        assert_eq!(s.to_word(), w("231"));
        assert_eq!(ChineseStaircase::empty(4).to_word(), w(""));
    }

    #[test]
    fn order_examples() {
        assert!(d_succ(d("d3"), d("d31")));
        assert!(!d_succ(d("d21"), d("d21")));
        assert!(d_succ(d("d32"), d("d31")));
    }

    #[test]
    fn succ_agrees_with_total_order() {
        let all = d_alphabet(5);
        for &x in &all {
            for &y in &all {
                assert_eq!(d_succ(x, y), x > y, "{x} {y}");
            }
        }
        assert!(all.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn csw_examples() {
        assert_eq!(csw_d(d("d2"), d("d1")).unwrap(), dw("d21"));
        assert_eq!(csw_d(d("d32"), d("d1")).unwrap(), dw("d2 d31"));
        assert_eq!(csw_d(d("d3"), d("d21")).unwrap(), dw("d2 d31"));
        assert!(matches!(
            csw_d(d("d1"), d("d2")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn csw_results_are_staircase_and_equal() {
        let p = presentation::chinese(4);
        for &x in &d_alphabet(4) {
            for &y in &d_alphabet(4) {
                let Ok(r) = csw_d(x, y) else { continue };
                assert!(r.len() <= 3);
                assert!(r.windows(2).all(|p| p[0] <= p[1]), "{x} {y}");
                let lhs = d_project(&[x, y]);
                let rhs = d_project(&r);
                let class = p.congruence_class(&lhs, 100_000).unwrap();
                assert!(class.contains(&rhs), "{x} {y}");
            }
        }
    }

    #[test]
    fn rule_counts() {
        assert!(chinese_t(1).rules().is_empty());
        // D has 3 letters for n = 2 and ≻ is a strict total order.
        assert_eq!(chinese_t(2).rules().len(), 3);
        assert_eq!(chinese_t(3).rules().len(), 15);
    }

    #[test]
    fn redex_example() {
        let sys = chinese_t(2);
        let r = sys.redexes(&dw("d2 d1"));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].result, dw("d21"));
    }

    #[test]
    fn right_insert_examples() {
        let s = ChineseStaircase::empty(2).right_insert(l(2));
        assert_eq!(s.rows, vec![vec![0], vec![0, 1]]);
        let s = s.right_insert(l(1));
        assert_eq!(s.rows, vec![vec![0], vec![1, 0]]);
        assert_eq!(chinese_normal_form(&w("312"), 3).unwrap(), w("231"));
        assert_eq!(chinese_normal_form(&w("321"), 3).unwrap(), w("231"));
        assert_eq!(chinese_normal_form(&w(""), 3).unwrap(), w(""));
    }

    #[test]
    fn left_insert_examples() {
        let s2 = ChineseStaircase::from_staircase_word(&w("2"), 2).unwrap();
        assert_eq!(s2.left_insert(l(1)).to_word(), w("12"));
        let s12 = ChineseStaircase::from_staircase_word(&w("12"), 3).unwrap();
        assert_eq!(s12.left_insert(l(3)).to_word(), w("231"));
        for g in 1..=4 {
            let s = ChineseStaircase::empty(4).left_insert(l(g));
            assert_eq!(s.get(g as u8, g as u8), 1);
            assert_eq!(s.to_word(), Word(vec![l(g)]));
        }
    }

    #[test]
    fn lift_and_project() {
        assert_eq!(d_project(&dw("d2 d31")), w("231"));
        assert_eq!(d_lift(&w("231"), 3).unwrap(), dw("d2 d31"));
        assert_eq!(d_project(&[]), w(""));
        assert!(matches!(
            d_lift(&w("312"), 3),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn token_format() {
        assert_eq!(d("d31").render(3), "d31");
        assert_eq!(DLetter::Pair(l(12), l(3)).render(12), "d12,3");
        assert_eq!(DLetter::parse_token("d12,3", 12).unwrap(), DLetter::Pair(l(12), l(3)));
        assert!(DLetter::parse_token("d13", 3).is_err());
    }

    #[test]
    fn insertion_matches_rewriting_and_oracle() {
        for n in 1..=3u8 {
            let sys = chinese_t(n);
            let p = presentation::chinese(n);
            for x in words_up_to(n, 6) {
                let nf = chinese_normal_form(&x, n).unwrap();
                let by_rules = sys.normal_form(&d_encode(&x), Strategy::Leftmost, None).unwrap();
                assert_eq!(d_project(&by_rules), nf, "{x}");
                assert!(is_staircase_word(&nf, n));
                assert_eq!(nf.content(n), x.content(n));
                let class = p.congruence_class(&x, 100_000).unwrap();
                assert!(class.contains(&nf));
                let stairs: Vec<_> = class.iter().filter(|y| is_staircase_word(y, n)).collect();
                assert_eq!(stairs, vec![&nf], "{x}");
            }
        }
    }

    #[test]
    fn rewriting_steps_decrease() {
        let sys = chinese_t(3);
        assert!(sys.rules_decrease_lex());
        for x in words_up_to(3, 5) {
            let (_, steps) = sys
                .reduce_traced(&d_encode(&x), Strategy::Rightmost, None)
                .unwrap();
            for s in steps {
                assert_eq!(lex_compare(&s.before, &s.redex.result), Ordering::Greater);
            }
        }
    }

    #[test]
    fn diagram_shape() {
        let s = ChineseStaircase::from_word(&w("312"), 3).unwrap();
        let text = s.diagram();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().nth(2).unwrap().ends_with("  3"));
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"n":3,"rows":[[0],[0,1],[1,0,0]]}"#
        );
    }
}
