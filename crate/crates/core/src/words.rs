//! Words over the alphabet `1..=N` (the free semigroup on `N` generators).
//!
//! Words are ordered by length first and lexicographically within a length.
//! This graded order has order type omega, so every word has a successor and
//! every nonempty word has a predecessor.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// An element of the free semigroup on `alphabet` generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: usize,
    letters: Vec<usize>,
}

impl Word {
    /// The empty word over `alphabet` letters.
    pub fn empty(alphabet: usize) -> Self {
        Word {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn new(alphabet: usize, letters: Vec<usize>) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l > alphabet) {
            return Err(Error::LetterOutOfRange {
                letter: bad,
                alphabet,
            });
        }
        Ok(Word { alphabet, letters })
    }

    /// Single-letter word.
    pub fn letter(alphabet: usize, k: usize) -> Result<Self> {
        Word::new(alphabet, alloc::vec![k])
    }

    #[inline]
    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    #[inline]
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Juxtaposition `self · other`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.same_alphabet(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            alphabet: self.alphabet,
            letters,
        })
    }

    /// `k · self`.
    pub fn prepend(&self, k: usize) -> Result<Word> {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(k);
        letters.extend_from_slice(&self.letters);
        Word::new(self.alphabet, letters)
    }

    /// Letter reversal `i_1...i_k -> i_k...i_1`.
    pub fn involution(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            alphabet: self.alphabet,
            letters,
        }
    }

    /// Letters `from..to` (0-based, half open) as a word.
    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word {
            alphabet: self.alphabet,
            letters: self.letters[from..to].to_vec(),
        }
    }

    /// `Some(rest)` when `self = prefix · rest`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        if prefix.alphabet != self.alphabet || !self.letters.starts_with(&prefix.letters) {
            return None;
        }
        Some(self.slice(prefix.len(), self.len()))
    }

    /// True when one word extends the other.
    pub fn comparable(&self, other: &Word) -> bool {
        self.letters.starts_with(&other.letters) || other.letters.starts_with(&self.letters)
    }

    /// Graded lexicographic comparison.
    pub fn compare(&self, other: &Word) -> Result<Ordering> {
        self.same_alphabet(other)?;
        Ok(self.graded_cmp(other))
    }

    fn graded_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }

    /// Next word in graded order; `N...N` rolls over to `1...1` one letter longer.
    pub fn successor(&self) -> Word {
        let n = self.alphabet;
        let mut letters = self.letters.clone();
        for i in (0..letters.len()).rev() {
            if letters[i] < n {
                letters[i] += 1;
                return Word {
                    alphabet: n,
                    letters,
                };
            }
            letters[i] = 1;
        }
        letters.push(1);
        Word {
            alphabet: n,
            letters,
        }
    }

    /// Previous word in graded order.
    pub fn predecessor(&self) -> Result<Word> {
        if self.is_empty() {
            return Err(Error::NoPredecessor);
        }
        let n = self.alphabet;
        let mut letters = self.letters.clone();
        for i in (0..letters.len()).rev() {
            if letters[i] > 1 {
                letters[i] -= 1;
                return Ok(Word {
                    alphabet: n,
                    letters,
                });
            }
            letters[i] = n;
        }
        letters.pop();
        Ok(Word {
            alphabet: n,
            letters,
        })
    }

    /// Position in the graded enumeration (`∅ -> 0`, `1 -> 1`, ...).
    pub fn position(&self) -> usize {
        let n = self.alphabet;
        let shorter = count_up_to(n, self.len()) - level_size(n, self.len());
        let rank = self
            .letters
            .iter()
            .fold(0usize, |acc, &l| acc * n + (l - 1));
        shorter + rank
    }

    /// Inverse of [`Word::position`].
    pub fn at_position(alphabet: usize, mut pos: usize) -> Result<Word> {
        if alphabet == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let mut len = 0;
        loop {
            let size = level_size(alphabet, len);
            if pos < size {
                break;
            }
            pos -= size;
            len += 1;
        }
        let mut letters = alloc::vec![0; len];
        for slot in letters.iter_mut().rev() {
            *slot = pos % alphabet + 1;
            pos /= alphabet;
        }
        Ok(Word { alphabet, letters })
    }

    /// Parses the text form: `e` for the empty word, digit strings for
    /// `N <= 9`, comma-separated integers otherwise.
    pub fn parse(s: &str, alphabet: usize) -> Result<Word> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Word::new(alphabet, Vec::new());
        }
        let letters: Option<Vec<usize>> = if alphabet <= 9 && !s.contains(',') {
            s.chars().map(|ch| ch.to_digit(10).map(|d| d as usize)).collect()
        } else {
            s.split(',').map(|t| t.trim().parse().ok()).collect()
        };
        match letters {
            Some(l) => Word::new(alphabet, l),
            None => Err(Error::Domain("malformed word")),
        }
    }

    fn same_alphabet(&self, other: &Word) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            })
        }
    }
}

impl Ord for Word {
    /// Graded order; alphabet size only breaks ties between alphabets.
    fn cmp(&self, other: &Self) -> Ordering {
        self.alphabet
            .cmp(&other.alphabet)
            .then_with(|| self.graded_cmp(other))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        if self.alphabet <= 9 {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
        } else {
            for (i, l) in self.letters.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Word {
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

/// `N^len`, the number of words of a given length.
pub fn level_size(alphabet: usize, len: usize) -> usize {
    alphabet.pow(len as u32)
}

/// Number of words of length at most `max_len`.
pub fn count_up_to(alphabet: usize, max_len: usize) -> usize {
    (0..=max_len).map(|l| level_size(alphabet, l)).sum()
}

/// All words of length `<= max_len`, in increasing graded order.
pub fn enumerate(alphabet: usize, max_len: usize) -> Result<Vec<Word>> {
    if alphabet == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let total = count_up_to(alphabet, max_len);
    let mut out = Vec::with_capacity(total);
    let mut w = Word::empty(alphabet);
    for _ in 0..total {
        let next = w.successor();
        out.push(w);
        w = next;
    }
    Ok(out)
}

/// Words of exactly length `len`, in increasing order.
pub fn level(alphabet: usize, len: usize) -> Result<Vec<Word>> {
    let start = count_up_to(alphabet, len) - level_size(alphabet, len);
    (start..start + level_size(alphabet, len))
        .map(|p| Word::at_position(alphabet, p))
        .collect()
}

/// Index set for commuting relations: nondecreasing letters, length `<= max_len`.
pub fn index_set_commuting(alphabet: usize, max_len: usize) -> Result<Vec<Word>> {
    Ok(enumerate(alphabet, max_len)?
        .into_iter()
        .filter(|w| w.letters.windows(2).all(|p| p[0] <= p[1]))
        .collect())
}

/// Index set for anticommuting relations: strictly increasing letters.
pub fn index_set_anticommuting(alphabet: usize) -> Result<Vec<Word>> {
    Ok(enumerate(alphabet, alphabet)?
        .into_iter()
        .filter(|w| w.letters.windows(2).all(|p| p[0] < p[1]))
        .collect())
}
