//! Monoid presentations and the brute-force congruence-class oracle.
//!
//! The oracle closes a word under the defining relations applied in both
//! directions at every position. All presentations here are homogeneous,
//! so the class of a word is a finite set of words of the same length.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{alphabet, words_up_to, Letter, MonoidKind, Word};

/// Default number of class members expanded before giving up.
pub const DEFAULT_CLASS_FUEL: usize = 1_000_000;

/// A presentation `⟨A | R⟩` over the alphabet of rank `rank`.
///
/// `relations` holds literal pairs. When `gap_family` is set the
/// presentation additionally contains the infinite family
/// `cavb = acvb` for `a ≤ b < c` and every word `v`, which is matched
/// directly against words instead of being listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub rank: u8,
    pub relations: Vec<(Word, Word)>,
    pub gap_family: bool,
}

impl Presentation {
    pub fn new(rank: u8, relations: Vec<(Word, Word)>) -> Self {
        Presentation {
            rank,
            relations,
            gap_family: false,
        }
    }

    /// The presentation for the given family and rank.
    pub fn for_monoid(kind: MonoidKind, rank: u8) -> Self {
        match kind {
            MonoidKind::Chinese => chinese(rank),
            MonoidKind::Hypoplactic => hypoplactic(rank),
            MonoidKind::Sylvester => sylvester(rank),
        }
    }

    pub fn check_rank(&self) -> Result<()> {
        for (u, v) in &self.relations {
            u.check_rank(self.rank)?;
            v.check_rank(self.rank)?;
        }
        Ok(())
    }

    /// Every relation preserves length. The gap family always does.
    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|(u, v)| u.len() == v.len())
    }

    /// Every relation preserves the number of each letter.
    pub fn is_multihomogeneous(&self) -> bool {
        self.relations
            .iter()
            .all(|(u, v)| u.content(self.rank) == v.content(self.rank))
    }

    /// Literal relations plus the gap-family instances with `|v| ≤ max_gap`.
    pub fn instantiate(&self, max_gap: usize) -> Presentation {
        let mut relations = self.relations.clone();
        if self.gap_family {
            for (c, a, b) in gap_triples(self.rank) {
                for v in words_up_to(self.rank, max_gap) {
                    let mut lhs = vec![c, a];
                    lhs.extend_from_slice(&v);
                    lhs.push(b);
                    let mut rhs = vec![a, c];
                    rhs.extend_from_slice(&v);
                    rhs.push(b);
                    relations.push((Word(lhs), Word(rhs)));
                }
            }
        }
        Presentation::new(self.rank, relations)
    }

    /// All words obtained by one relation application, in either direction.
    pub fn neighbours(&self, w: &Word) -> Vec<Word> {
        let mut out = Vec::new();
        for (u, v) in &self.relations {
            for (from, to) in [(u, v), (v, u)] {
                if from.is_empty() || from.len() > w.len() {
                    continue;
                }
                for i in 0..=w.len() - from.len() {
                    if w[i..i + from.len()] == from[..] {
                        let mut x = w.0.clone();
                        x[i..i + from.len()].copy_from_slice(to);
                        out.push(Word(x));
                    }
                }
            }
        }
        if self.gap_family {
            // cavb <-> acvb: swap an adjacent pair when a later b fits.
            for i in 0..w.len().saturating_sub(2) {
                let (x, y) = (w[i], w[i + 1]);
                let (c, a) = if x > y { (x, y) } else { (y, x) };
                if c == a {
                    continue;
                }
                if w[i + 2..].iter().any(|&b| a <= b && b < c) {
                    let mut s = w.0.clone();
                    s.swap(i, i + 1);
                    out.push(Word(s));
                }
            }
        }
        out
    }

    /// Breadth-first closure of `w` under the relations.
    ///
    /// Fails with [`Error::IncompleteClass`] if more than `fuel` members
    /// would need expanding, never returning a truncated set.
    pub fn congruence_class(&self, w: &Word, fuel: usize) -> Result<BTreeSet<Word>> {
        if let Some((u, v)) = self.relations.iter().find(|(u, v)| u.len() != v.len()) {
            return Err(Error::NotHomogeneous {
                lhs: u.to_string(),
                rhs: v.to_string(),
            });
        }
        w.check_rank(self.rank)?;
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        let mut expanded = 0usize;
        while let Some(x) = queue.pop_front() {
            if expanded == fuel {
                return Err(Error::IncompleteClass {
                    word: w.to_string(),
                    fuel,
                    found: seen.len(),
                });
            }
            expanded += 1;
            for y in self.neighbours(&x) {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

/// Triples `(c, a, b)` with `a ≤ b < c`.
pub fn gap_triples(rank: u8) -> impl Iterator<Item = (Letter, Letter, Letter)> {
    alphabet(rank).flat_map(move |c| {
        alphabet(rank).filter(move |&a| a < c).flat_map(move |a| {
            alphabet(rank)
                .filter(move |&b| a <= b && b < c)
                .map(move |b| (c, a, b))
        })
    })
}

/// `zyx = zxy` and `zxy = yzx` for `x ≤ y ≤ z`.
pub fn chinese(rank: u8) -> Presentation {
    let mut rel = Vec::new();
    for x in alphabet(rank) {
        for y in alphabet(rank).filter(|&y| y >= x) {
            for z in alphabet(rank).filter(|&z| z >= y) {
                let pairs = [
                    (Word(vec![z, y, x]), Word(vec![z, x, y])),
                    (Word(vec![z, x, y]), Word(vec![y, z, x])),
                ];
                rel.extend(pairs.into_iter().filter(|(u, v)| u != v));
            }
        }
    }
    Presentation::new(rank, rel)
}

/// Plactic relations `R` together with the quartic relations
/// `cadb = acbd` (`a ≤ b < c ≤ d`) and `bdac = dbca` (`a < b ≤ c < d`).
pub fn hypoplactic(rank: u8) -> Presentation {
    let mut rel = Vec::new();
    for a in alphabet(rank) {
        for b in alphabet(rank) {
            for c in alphabet(rank) {
                if a <= b && b < c {
                    rel.push((Word(vec![a, c, b]), Word(vec![c, a, b])));
                }
                if a < b && b <= c {
                    rel.push((Word(vec![b, a, c]), Word(vec![b, c, a])));
                }
                for d in alphabet(rank) {
                    if a <= b && b < c && c <= d {
                        rel.push((Word(vec![c, a, d, b]), Word(vec![a, c, b, d])));
                    }
                    // Mirror image of the first quartic relation, so the
                    // weak and strict inequalities trade places.
                    if a < b && b <= c && c < d {
                        rel.push((Word(vec![b, d, a, c]), Word(vec![d, b, c, a])));
                    }
                }
            }
        }
    }
    Presentation::new(rank, rel)
}

/// The (infinite) sylvester presentation `cavb = acvb`, `a ≤ b < c`.
pub fn sylvester(rank: u8) -> Presentation {
    Presentation {
        rank,
        relations: Vec::new(),
        gap_family: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn set(words: &[&str]) -> BTreeSet<Word> {
        words.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn chinese_class_of_312() {
        let class = chinese(3).congruence_class(&w("312"), 100).unwrap();
        assert_eq!(class, set(&["312", "321", "231"]));
    }

    #[test]
    fn hypoplactic_class_of_221() {
        let class = hypoplactic(2).congruence_class(&w("221"), 100).unwrap();
        assert_eq!(class, set(&["221", "212"]));
    }

    #[test]
    fn weak_second_quartic_merges_distinct_tableaux() {
        // With a ≤ b < c ≤ d on bdac = dbca, 1312 = 3121 and the
        // quasi-ribbon words 1132 and 1321 fall into one class.
        let mut p = hypoplactic(3);
        p.relations.push((w("1312"), w("3121")));
        let class = p.congruence_class(&w("1132"), 1000).unwrap();
        assert!(class.contains(&w("1321")));
        let class = hypoplactic(3).congruence_class(&w("1132"), 1000).unwrap();
        assert!(!class.contains(&w("1321")));
    }

    #[test]
    fn sylvester_class_of_211() {
        let class = sylvester(2).congruence_class(&w("211"), 100).unwrap();
        assert_eq!(class, set(&["211", "121"]));
    }

    #[test]
    fn empty_word_class() {
        for kind in MonoidKind::ALL {
            let p = Presentation::for_monoid(kind, 3);
            assert_eq!(p.congruence_class(&Word::empty(), 10).unwrap(), set(&[""]));
        }
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        let err = chinese(3).congruence_class(&w("312"), 1).unwrap_err();
        assert!(matches!(err, Error::IncompleteClass { fuel: 1, .. }));
    }

    #[test]
    fn homogeneity() {
        assert!(chinese(4).is_multihomogeneous());
        assert!(hypoplactic(3).is_multihomogeneous());
        let bad = Presentation::new(2, vec![(w("12"), w("1"))]);
        assert!(!bad.is_homogeneous());
        assert!(matches!(
            bad.congruence_class(&w("12"), 10),
            Err(Error::NotHomogeneous { .. })
        ));
        let inst = sylvester(3).instantiate(3);
        assert!(!inst.relations.is_empty());
        assert!(inst.is_multihomogeneous());
    }

    #[test]
    fn gap_family_matches_instantiation() {
        let lazy = sylvester(3);
        let eager = lazy.instantiate(4);
        for x in words_up_to(3, 6) {
            assert_eq!(
                lazy.congruence_class(&x, 10_000).unwrap(),
                eager.congruence_class(&x, 10_000).unwrap(),
                "{x}"
            );
        }
    }

    #[test]
    fn classes_are_closed_and_content_preserving() {
        for kind in MonoidKind::ALL {
            let p = Presentation::for_monoid(kind, 3);
            for x in words_up_to(3, 5) {
                let class = p.congruence_class(&x, 10_000).unwrap();
                for y in &class {
                    assert_eq!(y.content(3), x.content(3));
                }
                let other = class.iter().next_back().unwrap();
                assert_eq!(p.congruence_class(other, 10_000).unwrap(), class);
            }
        }
    }
}
