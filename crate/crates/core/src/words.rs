//! Ranked alphabets, words and the lexicographic order.
//!
//! Letters are the integers `1..=n` of an ordered alphabet of rank `n`.
//! Words render as digit strings when the rank is at most 9 and as
//! comma-separated integers otherwise; the empty word renders as `""`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter of the ordered alphabet `{1 < 2 < ... < n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(u8);

impl Letter {
    /// Builds a letter, checking it lies in `1..=rank`.
    pub fn new(value: u32, rank: u8) -> Result<Self> {
        if value == 0 || value > rank as u32 {
            return Err(Error::LetterOutOfRank {
                letter: value,
                rank,
            });
        }
        Ok(Letter(value as u8))
    }

    /// Builds a letter without a rank check. Panics on zero or values above 255.
    pub fn of(value: u32) -> Self {
        assert!(
            (1..=255).contains(&value),
            "letter value {value} outside 1..=255"
        );
        Letter(value as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// The letter `n + 1 - a`, which reverses the alphabet order.
    pub fn complement(self, rank: u8) -> Self {
        Letter(rank + 1 - self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Checks a rank value and converts it.
pub fn check_rank(n: u32) -> Result<u8> {
    if n == 0 || n > 255 {
        return Err(Error::InvalidRank(n));
    }
    Ok(n as u8)
}

/// All letters of the alphabet of rank `n`, in increasing order.
pub fn alphabet(rank: u8) -> impl DoubleEndedIterator<Item = Letter> + Clone {
    (1..=rank).map(Letter)
}

/// Alphabet symbols that automata and rewriting systems can work over.
///
/// Rendering is rank aware so that tokens stay unambiguous for ranks
/// above 9.
pub trait Symbol: Clone + Ord + Hash + fmt::Debug + Send + Sync + 'static {
    fn render(&self, rank: u8) -> String;

    fn parse_token(token: &str, rank: u8) -> Result<Self>;

    fn render_word(word: &[Self], rank: u8) -> String {
        word.iter()
            .map(|s| s.render(rank))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn parse_word(text: &str, rank: u8) -> Result<Vec<Self>> {
        text.split_whitespace()
            .map(|t| Self::parse_token(t, rank))
            .collect()
    }

    /// Fields of a serialized transition label; pairs use two.
    fn json_fields(&self, rank: u8) -> Vec<String> {
        vec![self.render(rank)]
    }

    fn from_json_fields(fields: &[&str], rank: u8) -> Result<Self> {
        match fields {
            [t] => Self::parse_token(t, rank),
            _ => Err(Error::Parse {
                what: "transition label",
                input: fields.join(","),
                reason: "expected a single field".into(),
            }),
        }
    }
}

impl Symbol for Letter {
    fn render(&self, _rank: u8) -> String {
        self.0.to_string()
    }

    fn parse_token(token: &str, rank: u8) -> Result<Self> {
        let value: u32 = token.trim().parse().map_err(|_| Error::Parse {
            what: "letter",
            input: token.to_string(),
            reason: "not a positive integer".into(),
        })?;
        Letter::new(value, rank)
    }

    fn render_word(word: &[Self], rank: u8) -> String {
        if rank <= 9 {
            word.iter().map(|a| a.0.to_string()).collect()
        } else {
            word.iter()
                .map(|a| a.0.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    fn parse_word(text: &str, rank: u8) -> Result<Vec<Self>> {
        Ok(Word::parse(text, rank)?.0)
    }
}

/// A finite word over a ranked alphabet. The empty word is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(letters.into_iter().collect())
    }

    /// Parses the text format: digits for rank ≤ 9, comma-separated integers above.
    pub fn parse(text: &str, rank: u8) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let parse_err = |reason: &str| Error::Parse {
            what: "word",
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let values: Vec<u32> = if rank <= 9 && !text.contains(',') {
            text.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| parse_err("expected digits")))
                .collect::<Result<_>>()?
        } else {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| parse_err("expected comma-separated integers"))
                })
                .collect::<Result<_>>()?
        };
        values
            .into_iter()
            .map(|v| Letter::new(v, rank))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render(&self, rank: u8) -> String {
        Letter::render_word(&self.0, rank)
    }

    /// Fails if a letter is outside `1..=rank`.
    pub fn check_rank(&self, rank: u8) -> Result<()> {
        match self.0.iter().find(|a| a.0 == 0 || a.0 > rank) {
            Some(a) => Err(Error::LetterOutOfRank {
                letter: a.0 as u32,
                rank,
            }),
            None => Ok(()),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a);
    }

    /// `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `a · self`.
    pub fn prepend(&self, a: Letter) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// `self · a`.
    pub fn append(&self, a: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(a);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Number of occurrences of `a`, written `|w|_a`.
    pub fn count(&self, a: Letter) -> usize {
        self.0.iter().filter(|&&b| b == a).count()
    }

    /// Letter multiplicities indexed by letter value (index 0 unused).
    pub fn content(&self, rank: u8) -> Vec<usize> {
        let mut c = vec![0; rank as usize + 1];
        for a in &self.0 {
            c[a.0 as usize] += 1;
        }
        c
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Rank-free parse: comma-separated if a comma is present, digits otherwise.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rank = if s.contains(',') { 255 } else { 9 };
        Word::parse(s, rank)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rank = if self.0.iter().all(|a| a.0 <= 9) { 9 } else { 255 };
        f.write_str(&self.render(rank))
    }
}

/// Lexicographic order induced by the alphabet order: a proper prefix is
/// smaller, otherwise the first differing letter decides.
pub fn lex_compare<S: Ord>(u: &[S], v: &[S]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        match a.cmp(b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    u.len().cmp(&v.len())
}

/// All words of length exactly `len` over the alphabet of rank `n`, in
/// lexicographic order.
pub fn words_of_length(rank: u8, len: usize) -> impl Iterator<Item = Word> {
    let total = (rank as u64).checked_pow(len as u32).unwrap_or(u64::MAX);
    (0..total).map(move |mut idx| {
        let mut v = vec![Letter(1); len];
        for slot in v.iter_mut().rev() {
            *slot = Letter((idx % rank as u64) as u8 + 1);
            idx /= rank as u64;
        }
        Word(v)
    })
}

/// All words of length at most `max_len`, shortest first.
pub fn words_up_to(rank: u8, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| words_of_length(rank, len))
}

/// Which of the three monoid families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonoidKind {
    Chinese,
    Hypoplactic,
    Sylvester,
}

impl MonoidKind {
    pub const ALL: [MonoidKind; 3] = [
        MonoidKind::Chinese,
        MonoidKind::Hypoplactic,
        MonoidKind::Sylvester,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MonoidKind::Chinese => "chinese",
            MonoidKind::Hypoplactic => "hypoplactic",
            MonoidKind::Sylvester => "sylvester",
        }
    }
}

impl fmt::Display for MonoidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonoidKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "chinese" | "c" => Ok(MonoidKind::Chinese),
            "hypoplactic" | "h" => Ok(MonoidKind::Hypoplactic),
            "sylvester" | "s" => Ok(MonoidKind::Sylvester),
            _ => Err(Error::Parse {
                what: "monoid",
                input: s.to_string(),
                reason: "expected chinese, hypoplactic or sylvester".into(),
            }),
        }
    }
}

/// A monoid family together with its rank, e.g. the sylvester monoid of rank 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonoidId {
    pub kind: MonoidKind,
    pub rank: u8,
}

impl MonoidId {
    pub fn new(kind: MonoidKind, rank: u32) -> Result<Self> {
        Ok(MonoidId {
            kind,
            rank: check_rank(rank)?,
        })
    }
}

impl fmt::Display for MonoidId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_compare(&w("12"), &w("121")), Ordering::Less);
        assert_eq!(lex_compare(&w("13"), &w("121")), Ordering::Greater);
        assert_eq!(lex_compare(&w(""), &w("")), Ordering::Equal);
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(Word::parse("312", 3).unwrap().render(3), "312");
        assert_eq!(Word::parse("", 3).unwrap(), Word::empty());
        let big = Word::parse("10,3,12", 12).unwrap();
        assert_eq!(big.len(), 3);
        assert_eq!(big.render(12), "10,3,12");
        assert!(matches!(
            Word::parse("14", 3),
            Err(Error::LetterOutOfRank { letter: 4, rank: 3 })
        ));
        assert!(Word::parse("1a", 3).is_err());
        assert!(Word::parse("0", 3).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(words_of_length(3, 4).count(), 81);
        assert_eq!(words_up_to(2, 3).count(), 1 + 2 + 4 + 8);
        let v: Vec<_> = words_of_length(2, 2).map(|w| w.to_string()).collect();
        assert_eq!(v, ["11", "12", "21", "22"]);
    }

    fn small_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(1u32..=4, 0..6)
            .prop_map(|v| v.into_iter().map(Letter::of).collect())
    }

    proptest! {
        #[test]
        fn lex_is_total_and_antisymmetric(u in small_word(), v in small_word()) {
            let uv = lex_compare(&u, &v);
            prop_assert_eq!(uv, lex_compare(&v, &u).reverse());
            prop_assert_eq!(uv == Ordering::Equal, u == v);
        }

        #[test]
        fn lex_is_transitive(u in small_word(), v in small_word(), x in small_word()) {
            if lex_compare(&u, &v) != Ordering::Greater && lex_compare(&v, &x) != Ordering::Greater {
                prop_assert_ne!(lex_compare(&u, &x), Ordering::Greater);
            }
        }

        #[test]
        fn lex_left_compatible(u in small_word(), v in small_word(), x in small_word()) {
            if lex_compare(&u, &v) == Ordering::Less {
                prop_assert_eq!(lex_compare(&x.concat(&u), &x.concat(&v)), Ordering::Less);
            }
        }
    }
}
