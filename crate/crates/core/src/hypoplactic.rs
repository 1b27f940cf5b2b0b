//! The hypoplactic monoid: columns, quasi-ribbon words and insertion.
//!
//! A quasi-ribbon tableau is handled as its ribbon path: the cells read
//! top-left to bottom-right form a weakly increasing sequence, and each
//! step is either down (inside a column, strictly increasing) or right
//! (to the next column, weakly increasing). Algorithms here compare
//! against the inserted letter `a`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewriting::{Rule, RewritingSystem};
use crate::words::{alphabet, words_up_to, Letter, Symbol, Word};

/// Largest rank for which the rewriting system is generated.
pub const HYPOPLACTIC_T_RANK_CAP: u8 = 4;

/// A nonempty strictly decreasing word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Column(Vec<Letter>);

impl Column {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() || letters.windows(2).any(|p| p[0] <= p[1]) {
            return Err(Error::Domain {
                what: "column",
                detail: format!("{:?} is not a nonempty strictly decreasing word", Word(letters)),
            });
        }
        Ok(Column(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Greatest letter.
    pub fn first(&self) -> Letter {
        self.0[0]
    }

    /// Smallest letter.
    pub fn last(&self) -> Letter {
        *self.0.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(255))
    }
}

impl Symbol for Column {
    fn render(&self, rank: u8) -> String {
        format!("c{}", Letter::render_word(&self.0, rank))
    }

    fn parse_token(token: &str, rank: u8) -> Result<Self> {
        let body = token.trim().strip_prefix('c').ok_or_else(|| Error::Parse {
            what: "column letter",
            input: token.to_string(),
            reason: "missing `c`".into(),
        })?;
        Column::new(Word::parse(body, rank)?.0)
    }
}

/// Every column over the alphabet of rank `n` (`2ⁿ − 1` of them), sorted.
pub fn column_alphabet(rank: u8) -> Vec<Column> {
    let mut out: Vec<Column> = (1u32..(1u32 << rank))
        .map(|mask| {
            Column(
                alphabet(rank)
                    .rev()
                    .filter(|a| mask & (1 << (a.value() - 1)) != 0)
                    .collect(),
            )
        })
        .collect();
    out.sort();
    out
}

/// Factorization into columns of maximal length.
pub fn column_decompose(w: &[Letter]) -> Vec<Column> {
    let mut out: Vec<Column> = Vec::new();
    let mut cur: Vec<Letter> = Vec::new();
    for &a in w {
        if cur.last().is_some_and(|&b| b <= a) {
            out.push(Column(std::mem::take(&mut cur)));
        }
        cur.push(a);
    }
    if !cur.is_empty() {
        out.push(Column(cur));
    }
    out
}

/// Whether consecutive maximal columns satisfy `last(α⁽ⁱ⁺¹⁾) ≥ first(α⁽ⁱ⁾)`.
pub fn is_quasi_ribbon(w: &[Letter]) -> bool {
    column_decompose(w)
        .windows(2)
        .all(|p| p[1].last() >= p[0].first())
}

/// Whether a sequence of columns is a maximal decomposition of a quasi-ribbon word.
pub fn columns_quasi_ribbon(cols: &[Column]) -> bool {
    cols.windows(2).all(|p| p[1].last() >= p[0].first())
}

/// Ribbon path of a quasi-ribbon tableau.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Ribbon {
    cells: Vec<Letter>,
    /// `down[i]` is the step from `cells[i]` to `cells[i + 1]`.
    down: Vec<bool>,
}

impl Ribbon {
    fn from_word(w: &[Letter]) -> Self {
        let mut cells = Vec::with_capacity(w.len());
        let mut down = Vec::with_capacity(w.len());
        for (i, c) in column_decompose(w).into_iter().enumerate() {
            if i > 0 {
                down.push(false);
            }
            for (j, &a) in c.0.iter().rev().enumerate() {
                if j > 0 {
                    down.push(true);
                }
                cells.push(a);
            }
        }
        Ribbon { cells, down }
    }

    fn to_word(&self) -> Word {
        let mut out = Vec::with_capacity(self.cells.len());
        if self.cells.is_empty() {
            return Word(out);
        }
        let mut start = 0;
        for i in 0..=self.down.len() {
            if i == self.down.len() || !self.down[i] {
                out.extend(self.cells[start..=i].iter().rev());
                start = i + 1;
            }
        }
        Word(out)
    }

    fn right_insert(&self, a: Letter) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        let mut down = Vec::with_capacity(self.cells.len());
        match self.cells.iter().rposition(|&x| x <= a) {
            None => {
                cells.push(a);
                if !self.cells.is_empty() {
                    down.push(true);
                }
                cells.extend_from_slice(&self.cells);
                down.extend_from_slice(&self.down);
            }
            Some(p) => {
                cells.extend_from_slice(&self.cells[..=p]);
                down.extend_from_slice(&self.down[..p]);
                down.push(false);
                cells.push(a);
                if p + 1 < self.cells.len() {
                    down.push(true);
                    cells.extend_from_slice(&self.cells[p + 1..]);
                    down.extend_from_slice(&self.down[p + 1..]);
                }
            }
        }
        Ribbon { cells, down }
    }

    fn left_insert(&self, a: Letter) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        let mut down = Vec::with_capacity(self.cells.len());
        match self.cells.iter().position(|&x| x >= a) {
            None => {
                cells.extend_from_slice(&self.cells);
                down.extend_from_slice(&self.down);
                if !self.cells.is_empty() {
                    down.push(true);
                }
                cells.push(a);
            }
            Some(p) => {
                cells.extend_from_slice(&self.cells[..p]);
                if p > 0 {
                    down.extend_from_slice(&self.down[..p - 1]);
                    down.push(true);
                }
                cells.push(a);
                down.push(false);
                cells.extend_from_slice(&self.cells[p..]);
                down.extend_from_slice(&self.down[p..]);
            }
        }
        Ribbon { cells, down }
    }
}

fn require_quasi_ribbon(w: &Word) -> Result<()> {
    if is_quasi_ribbon(w) {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "quasi-ribbon word",
            detail: w.to_string(),
        })
    }
}

/// `Q(wa)` for a quasi-ribbon word `w`.
pub fn right_insert_qr(w: &Word, a: Letter) -> Result<Word> {
    require_quasi_ribbon(w)?;
    Ok(Ribbon::from_word(w).right_insert(a).to_word())
}

/// `Q(aw)` for a quasi-ribbon word `w`.
pub fn left_insert_qr(a: Letter, w: &Word) -> Result<Word> {
    require_quasi_ribbon(w)?;
    Ok(Ribbon::from_word(w).left_insert(a).to_word())
}

/// `Q(w)`, by repeated right insertion.
pub fn q_normal_form(w: &Word, rank: u8) -> Result<Word> {
    w.check_rank(rank)?;
    let mut r = Ribbon {
        cells: Vec::new(),
        down: Vec::new(),
    };
    for &a in w.iter() {
        r = r.right_insert(a);
    }
    Ok(r.to_word())
}

/// `{w → Q(w) : w ≠ Q(w), |w| ≤ max{2n, 4}}`.
pub fn hypoplactic_t(rank: u8) -> Result<RewritingSystem<Letter>> {
    if rank > HYPOPLACTIC_T_RANK_CAP {
        return Err(Error::RankCap {
            what: "hypoplactic rewriting system",
            rank,
            cap: HYPOPLACTIC_T_RANK_CAP,
        });
    }
    let bound = (2 * rank as usize).max(4);
    let mut rules = Vec::new();
    for w in words_up_to(rank, bound) {
        let q = q_normal_form(&w, rank)?;
        if q != w {
            rules.push(Rule::literal(w.0, q.0)?);
        }
    }
    Ok(RewritingSystem::new(rank, alphabet(rank).collect(), rules))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiRibbonJson {
    pub columns: Vec<String>,
}

pub fn decomposition_json(w: &Word, rank: u8) -> QuasiRibbonJson {
    QuasiRibbonJson {
        columns: column_decompose(w)
            .iter()
            .map(|c| Letter::render_word(c.letters(), rank))
            .collect(),
    }
}

/// Planar tableau of a quasi-ribbon word, one text line per row.
pub fn tableau_diagram(w: &Word) -> Result<String> {
    require_quasi_ribbon(w)?;
    let r = Ribbon::from_word(w);
    let mut pos = Vec::with_capacity(r.cells.len());
    let (mut row, mut col) = (0usize, 0usize);
    for i in 0..r.cells.len() {
        if i > 0 {
            if r.down[i - 1] {
                row += 1;
            } else {
                col += 1;
            }
        }
        pos.push((row, col));
    }
    let width = r.cells.iter().map(|a| a.to_string().len()).max().unwrap_or(1);
    let mut grid = vec![vec![String::new(); col + 1]; row + 1];
    for (&(i, j), a) in pos.iter().zip(&r.cells) {
        grid[i][j] = a.to_string();
    }
    let mut out = String::new();
    for line in grid {
        let text: Vec<String> = line
            .iter()
            .map(|c| {
                if c.is_empty() {
                    " ".repeat(width + 2)
                } else {
                    format!("[{c:>width$}]")
                }
            })
            .collect();
        out.push_str(text.concat().trim_end());
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation;
    use crate::rewriting::Strategy;
    use crate::words::lex_compare;
    use std::cmp::Ordering;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn l(v: u32) -> Letter {
        Letter::of(v)
    }

    fn cols(s: &str) -> Vec<String> {
        column_decompose(&w(s)).iter().map(|c| Word(c.letters().to_vec()).to_string()).collect()
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(
            cols("111212543656787"),
            ["1", "1", "1", "21", "2", "543", "65", "6", "7", "87"]
        );
        assert_eq!(cols("211"), ["21", "1"]);
        assert!(cols("").is_empty());
    }

    #[test]
    fn quasi_ribbon_examples() {
        assert!(is_quasi_ribbon(&w("111212543656787")));
        assert!(!is_quasi_ribbon(&w("221")));
        assert!(is_quasi_ribbon(&w("212")));
    }

    #[test]
    fn insertion_examples() {
        assert_eq!(right_insert_qr(&w("22"), l(1)).unwrap(), w("212"));
        assert_eq!(right_insert_qr(&w(""), l(3)).unwrap(), w("3"));
        assert_eq!(right_insert_qr(&w("1"), l(2)).unwrap(), w("12"));
        assert_eq!(left_insert_qr(l(2), &w("1")).unwrap(), w("21"));
        assert_eq!(left_insert_qr(l(1), &w("")).unwrap(), w("1"));
        assert_eq!(left_insert_qr(l(1), &w("2")).unwrap(), w("12"));
        assert!(matches!(
            right_insert_qr(&w("221"), l(1)),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(q_normal_form(&w("221"), 2).unwrap(), w("212"));
        assert_eq!(q_normal_form(&w(""), 2).unwrap(), w(""));
        let qr = w("111212543656787");
        assert_eq!(q_normal_form(&qr, 8).unwrap(), qr);
    }

    #[test]
    fn ribbon_round_trip() {
        for x in words_up_to(3, 6).filter(|x| is_quasi_ribbon(x)) {
            let r = Ribbon::from_word(&x);
            assert!(r.cells.windows(2).zip(&r.down).all(|(p, &d)| if d {
                p[0] < p[1]
            } else {
                p[0] <= p[1]
            }));
            assert_eq!(r.to_word(), x);
        }
    }

    #[test]
    fn rules() {
        assert!(hypoplactic_t(1).unwrap().rules().is_empty());
        let t2 = hypoplactic_t(2).unwrap();
        assert!(t2
            .rules()
            .contains(&Rule::Literal { lhs: w("221").0, rhs: w("212").0 }));
        assert!(t2.rules().iter().all(|r| match r {
            Rule::Literal { lhs, .. } => lhs.len() <= 4,
            Rule::Gap { .. } => false,
        }));
        assert!(t2.rules_decrease_lex());
        assert!(matches!(hypoplactic_t(5), Err(Error::RankCap { .. })));
    }

    #[test]
    fn cross_section_and_minimality() {
        let sys = hypoplactic_t(3).unwrap();
        let p = presentation::hypoplactic(3);
        for x in words_up_to(3, 6) {
            let q = q_normal_form(&x, 3).unwrap();
            assert_eq!(sys.normal_form(&x, Strategy::Leftmost, None).unwrap(), q.0);
            let class = p.congruence_class(&x, 100_000).unwrap();
            let qrs: Vec<_> = class.iter().filter(|y| is_quasi_ribbon(y)).collect();
            assert_eq!(qrs, vec![&q], "{x}");
            assert!(class.iter().all(|y| lex_compare(&q, y) != Ordering::Greater));
        }
    }

    #[test]
    fn column_alphabet_size() {
        for n in 1..=5 {
            assert_eq!(column_alphabet(n).len(), (1 << n) - 1);
        }
        let c = Column::parse_token("c21", 2).unwrap();
        assert_eq!(c.render(2), "c21");
        assert!(Column::parse_token("c12", 2).is_err());
    }

    #[test]
    fn tableau_rows_nondecreasing() {
        let t = tableau_diagram(&w("111212543656787")).unwrap();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "[1][1][1][1]");
        for line in lines {
            let vals: Vec<u32> = line
                .split(|c: char| !c.is_ascii_digit())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().unwrap())
                .collect();
            assert!(vals.windows(2).all(|p| p[0] <= p[1]));
        }
        assert_eq!(
            serde_json::to_string(&decomposition_json(&w("21543"), 5)).unwrap(),
            r#"{"columns":["21","543"]}"#
        );
    }
}
