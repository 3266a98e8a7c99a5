//! Reduced words in the free group `F_k`.
//!
//! A letter is a nonzero `i8`: `+i` is generator `i`, `-i` its inverse.
//! Words are kept freely reduced at all times, so word length is the word
//! metric distance to the identity and doubles as the vertex depth in the
//! Cayley tree rooted at the identity.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

pub type Letter = i8;

pub const MAX_RANK: usize = 26;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    rank: u8,
    letters: Vec<Letter>,
}

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::InvalidRank(rank));
    }
    Ok(())
}

/// Pushes `letter` onto an already reduced word, cancelling if needed.
fn push_reduced(letters: &mut Vec<Letter>, letter: Letter) {
    if letters.last() == Some(&-letter) {
        letters.pop();
    } else {
        letters.push(letter);
    }
}

fn letter_char(letter: Letter) -> char {
    let idx = letter.unsigned_abs() - 1;
    if letter > 0 {
        (b'a' + idx) as char
    } else {
        (b'A' + idx) as char
    }
}

/// Enumeration order of letters: `a, A, b, B, ...`.
pub fn letters_of_rank(rank: usize) -> Vec<Letter> {
    (1..=rank as i8).flat_map(|i| [i, -i]).collect()
}

impl GroupWord {
    pub fn identity(rank: usize) -> Result<Self> {
        check_rank(rank)?;
        Ok(Self {
            rank: rank as u8,
            letters: Vec::new(),
        })
    }

    /// Builds a word from raw letters, reducing as it goes.
    pub fn from_letters(rank: usize, letters: &[Letter]) -> Result<Self> {
        check_rank(rank)?;
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            let idx = l.unsigned_abs() as usize;
            if idx == 0 {
                return Err(Error::UnknownLetter('0'));
            }
            if idx > rank {
                return Err(Error::LetterBeyondRank { index: idx, rank });
            }
            push_reduced(&mut out, l);
        }
        Ok(Self {
            rank: rank as u8,
            letters: out,
        })
    }

    /// The single-letter word for a generator or its inverse.
    pub fn generator(rank: usize, letter: Letter) -> Result<Self> {
        Self::from_letters(rank, &[letter])
    }

    /// Parses `abAB`-style text (lowercase generators, uppercase inverses) or
    /// the explicit form `a1 a2^-1 ...`. Exponents apply to the preceding
    /// atom. Whitespace is ignored; empty text or `1` is the identity.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        check_rank(rank)?;
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars == ['1'] {
            return Self::identity(rank);
        }
        let mut atoms: Vec<Letter> = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            i += 1;
            let letter = if c == '^' {
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                let digits = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let token: String = chars[start..i].iter().collect();
                let malformed = || Error::MalformedExponent(format!("^{token}"));
                if digits == i {
                    return Err(malformed());
                }
                let base = atoms.pop().ok_or_else(malformed)?;
                let exp: i64 = token.parse().map_err(|_| malformed())?;
                if exp.unsigned_abs() > 1 << 20 {
                    return Err(malformed());
                }
                let l = if exp < 0 { -base } else { base };
                atoms.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
                continue;
            } else if c == 'a' && i < chars.len() && chars[i].is_ascii_digit() {
                // explicit form `a<index>`
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let token: String = chars[start..i].iter().collect();
                let idx: usize = token.parse().map_err(|_| Error::UnknownLetter(c))?;
                if idx == 0 {
                    return Err(Error::UnknownLetter('0'));
                }
                if idx > rank {
                    return Err(Error::LetterBeyondRank { index: idx, rank });
                }
                idx as Letter
            } else if c.is_ascii_lowercase() {
                (c as u8 - b'a' + 1) as Letter
            } else if c.is_ascii_uppercase() {
                -((c as u8 - b'A' + 1) as Letter)
            } else {
                return Err(Error::UnknownLetter(c));
            };
            atoms.push(letter);
        }
        Self::from_letters(rank, &atoms)
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn prefix(&self, len: usize) -> GroupWord {
        GroupWord {
            rank: self.rank,
            letters: self.letters[..len].to_vec(),
        }
    }

    fn same_rank(&self, other: &GroupWord) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &GroupWord) -> Result<GroupWord> {
        self.same_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &GroupWord) -> GroupWord {
        let cancel = self
            .letters
            .iter()
            .rev()
            .zip(&other.letters)
            .take_while(|(a, b)| **a == -**b)
            .count();
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * cancel);
        letters.extend_from_slice(&self.letters[..self.len() - cancel]);
        letters.extend_from_slice(&other.letters[cancel..]);
        GroupWord {
            rank: self.rank,
            letters,
        }
    }

    /// Right multiplication by a single letter.
    pub fn times_letter(&self, letter: Letter) -> GroupWord {
        let mut letters = self.letters.clone();
        push_reduced(&mut letters, letter);
        GroupWord {
            rank: self.rank,
            letters,
        }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Length of the longest common prefix; this is the depth of the branch
    /// point of the two rays from the root.
    pub fn common_prefix_len(&self, other: &GroupWord) -> usize {
        self.letters
            .iter()
            .zip(&other.letters)
            .take_while(|(a, b)| a == b)
            .count()
    }

    /// Word metric `|x⁻¹ y|`.
    pub fn distance(&self, other: &GroupWord) -> Result<usize> {
        self.same_rank(other)?;
        let common = self.common_prefix_len(other);
        Ok(self.len() + other.len() - 2 * common)
    }

    /// Uniformly random word among the reduced words of length `len`.
    pub fn random<R: Rng + ?Sized>(rank: usize, len: usize, rng: &mut R) -> Result<GroupWord> {
        check_rank(rank)?;
        let gens = letters_of_rank(rank);
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        for _ in 0..len {
            let choice = match letters.last() {
                None => gens[rng.random_range(0..gens.len())],
                Some(&prev) => {
                    // skip the cancelling letter
                    let allowed: Vec<Letter> =
                        gens.iter().copied().filter(|&l| l != -prev).collect();
                    allowed[rng.random_range(0..allowed.len())]
                }
            };
            letters.push(choice);
        }
        Ok(GroupWord {
            rank: rank as u8,
            letters,
        })
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for &l in &self.letters {
            write!(f, "{}", letter_char(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}

/// Number of reduced words of length exactly `len`.
pub fn shell_size(rank: usize, len: usize) -> u128 {
    if len == 0 {
        1
    } else {
        2 * rank as u128 * (2 * rank as u128 - 1).pow(len as u32 - 1)
    }
}

/// All reduced words of length exactly `len`, in the deterministic order
/// induced by [`letters_of_rank`].
pub fn shell(rank: usize, len: usize) -> Result<Vec<GroupWord>> {
    check_rank(rank)?;
    let gens = letters_of_rank(rank);
    let mut current = vec![GroupWord::identity(rank)?];
    for _ in 0..len {
        let mut next = Vec::with_capacity(current.len() * (2 * rank));
        for w in &current {
            for &l in &gens {
                if w.last() != Some(-l) {
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push(GroupWord {
                        rank: rank as u8,
                        letters,
                    });
                }
            }
        }
        current = next;
    }
    Ok(current)
}

/// All reduced words of length at most `radius`, ordered by length and then
/// by the shell order.
pub fn ball(radius: usize, rank: usize) -> Result<Vec<GroupWord>> {
    let mut out = Vec::new();
    for len in 0..=radius {
        out.extend(shell(rank, len)?);
    }
    Ok(out)
}

/// Exhaustive shell when it has at most `cap` words, otherwise `cap`
/// distinct uniformly sampled words (seeded, sorted by shell order).
pub fn shell_sample<R: Rng + ?Sized>(
    rank: usize,
    len: usize,
    cap: usize,
    rng: &mut R,
) -> Result<Vec<GroupWord>> {
    if shell_size(rank, len) <= cap as u128 {
        return shell(rank, len);
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut attempts = 0usize;
    while seen.len() < cap && attempts < cap * 64 {
        seen.insert(ShellKey(GroupWord::random(rank, len, rng)?));
        attempts += 1;
    }
    Ok(seen.into_iter().map(|k| k.0).collect())
}

// Orders words like the shell enumeration: a < A < b < B ...
#[derive(PartialEq, Eq)]
struct ShellKey(GroupWord);

fn letter_key(l: Letter) -> (u8, bool) {
    (l.unsigned_abs(), l < 0)
}

impl Ord for ShellKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            self.0
                .letters
                .iter()
                .map(|&l| letter_key(l))
                .cmp(other.0.letters.iter().map(|&l| letter_key(l)))
        })
    }
}

impl PartialOrd for ShellKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
