use std::fmt;

use super::{MoebiusMap, SchottkyRank2};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const ALL: [Letter; 4] = [
        Letter { generator: 0, inverse: false },
        Letter { generator: 0, inverse: true },
        Letter { generator: 1, inverse: false },
        Letter { generator: 1, inverse: true },
    ];

    pub fn inverse(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn map(self, s: &SchottkyRank2) -> MoebiusMap {
        let g = &s.gens[self.generator];
        if self.inverse {
            g.inverse()
        } else {
            g.clone()
        }
    }
}

/// Reduced word `w[0] w[1] ... w[n-1]`; as a map, `w[n-1]` acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Exact matrix product of the letters.
    pub fn map(&self, s: &SchottkyRank2) -> MoebiusMap {
        self.0
            .iter()
            .fold(MoebiusMap::identity(), |acc, l| acc.compose(&l.map(s)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "g{}", l.generator + 1)?;
            if l.inverse {
                f.write_str("'")?;
            }
        }
        Ok(())
    }
}

/// All reduced words of length at most `max_len`, shortest first, in a fixed
/// order. There are `1 + sum_{m=1}^{L} 4 * 3^(m-1)` of them.
pub fn reduced_words(max_len: usize) -> impl Iterator<Item = Word> {
    let mut layers: Vec<Vec<Word>> = vec![vec![Word::default()]];
    for _ in 0..max_len {
        let prev = layers.last().expect("nonempty");
        let next: Vec<Word> = prev
            .iter()
            .flat_map(|w| {
                let last = w.0.last().copied();
                Letter::ALL
                    .into_iter()
                    .filter(move |l| Some(l.inverse()) != last)
                    .map(move |l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        Word(v)
                    })
            })
            .collect();
        layers.push(next);
    }
    layers.into_iter().flatten()
}

pub fn reduced_word_count(max_len: usize) -> usize {
    1 + (1..=max_len).map(|m| 4 * 3usize.pow(m as u32 - 1)).sum::<usize>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius_schottky::reference;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        assert_eq!(reduced_words(0).count(), 1);
        assert_eq!(reduced_words(1).count(), 5);
        assert_eq!(reduced_words(3).count(), 53);
        for l in 0..6 {
            assert_eq!(reduced_words(l).count(), reduced_word_count(l));
        }
    }

    #[test]
    fn words_are_reduced_and_distinct() {
        let words: Vec<_> = reduced_words(4).collect();
        let set: HashSet<_> = words.iter().cloned().collect();
        assert_eq!(set.len(), words.len());
        for w in &words {
            for pair in w.0.windows(2) {
                assert_ne!(pair[0], pair[1].inverse());
            }
        }
    }

    #[test]
    fn word_map_of_inverse_pair_is_identity() {
        let s = reference::se1();
        let w = Word(vec![Letter::ALL[0], Letter::ALL[1]]);
        assert!(w.map(&s).projectively_eq(&MoebiusMap::identity()));
    }
}
