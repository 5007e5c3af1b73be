//! Exact word algebra in a free group of finite rank.
//!
//! Letters are signed generator indices starting at 1. The text syntax uses
//! `a`..`z` for the first 26 generators and upper case for their inverses;
//! `g27` / `G27` tokens address any generator by index.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Errors raised while building or combining words.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("invalid token {0:?} in word")]
    InvalidToken(String),
    #[error("identity has no primitive root")]
    IdentityRoot,
    #[error("abstract word uses variable x{needed} but only {given} values were supplied")]
    ArityMismatch { needed: usize, given: usize },
}

/// A signed generator: `Letter(3)` is the third generator, `Letter(-3)` its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter(i32);

impl Letter {
    pub fn new(signed_index: i32) -> Self {
        assert!(signed_index != 0, "letter index must be nonzero");
        Letter(signed_index)
    }

    pub fn generator(index: usize) -> Self {
        Letter(index as i32)
    }

    /// Build a letter from its position in the total order `a < A < b < B < ...`.
    pub fn from_key(key: u32) -> Self {
        let index = (key / 2 + 1) as i32;
        if key % 2 == 0 {
            Letter(index)
        } else {
            Letter(-index)
        }
    }

    /// Generator index, starting at 1.
    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Position in the total order `a < A < b < B < ...`.
    pub fn key(self) -> u32 {
        2 * (self.index() as u32 - 1) + u32::from(self.is_inverse())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let index = self.index();
        if index <= 26 {
            let base = if self.is_inverse() { b'A' } else { b'a' };
            write!(f, "{}", (base + (index as u8 - 1)) as char)
        } else if self.is_inverse() {
            write!(f, "G{index}")
        } else {
            write!(f, "g{index}")
        }
    }
}

/// A freely reduced word. Words compare in shortlex order (length first,
/// then lexicographically by letter order).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Freely reduce any sequence of letters.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![Letter::generator(index)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, 0 for the identity.
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn check_rank(&self, rank: usize) -> Result<(), WordError> {
        match self.0.iter().find(|l| l.index() > rank) {
            Some(l) => Err(WordError::GeneratorOutOfRange {
                index: l.index(),
                rank,
            }),
            None => Ok(()),
        }
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        // Cancellation only happens at the seam.
        let mut k = 0;
        while k < self.len()
            && k < other.len()
            && self.0[self.len() - 1 - k] == other.0[k].inverse()
        {
            k += 1;
        }
        let mut out = Vec::with_capacity(self.len() + other.len() - 2 * k);
        out.extend_from_slice(&self.0[..self.len() - k]);
        out.extend_from_slice(&other.0[k..]);
        Word(out)
    }

    /// Product of a sequence of words.
    pub fn product<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Word {
        words
            .into_iter()
            .fold(Word::identity(), |acc, w| acc.mul(w))
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let n = exponent.unsigned_abs();
        if n == 0 || base.is_identity() {
            return Word::identity();
        }
        // w = u c u^-1 with c cyclically reduced, so w^n = u c^n u^-1 literally.
        let cw = base.cyclic_reduce_raw();
        let mut letters = Vec::with_capacity(2 * cw.1 + n as usize * cw.0.len());
        letters.extend_from_slice(&base.0[..cw.1]);
        for _ in 0..n {
            letters.extend_from_slice(&cw.0);
        }
        letters.extend_from_slice(&base.0[base.len() - cw.1..]);
        Word(letters)
    }

    /// `z^-1 * self * z`.
    pub fn conjugate_by(&self, z: &Word) -> Word {
        z.inverse().mul(self).mul(z)
    }

    /// Cancellation length in the product `self * other`.
    pub fn cancellation_with(&self, other: &Word) -> usize {
        let mut k = 0;
        while k < self.len()
            && k < other.len()
            && self.0[self.len() - 1 - k] == other.0[k].inverse()
        {
            k += 1;
        }
        k
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(f), Some(l)) => self.len() == 1 || *f != l.inverse(),
            _ => true,
        }
    }

    /// Core letters and the number of stripped letters on each end.
    fn cyclic_reduce_raw(&self) -> (Vec<Letter>, usize) {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k] == self.0[n - 1 - k].inverse() {
            k += 1;
        }
        (self.0[k..n - k].to_vec(), k)
    }

    /// Conjugacy-class canonical form.
    pub fn cyclic_reduce(&self) -> CyclicWord {
        let (core, k) = self.cyclic_reduce_raw();
        let shift = least_rotation(&core);
        let mut rotated = Vec::with_capacity(core.len());
        rotated.extend_from_slice(&core[shift..]);
        rotated.extend_from_slice(&core[..shift]);
        // core = p q, rotated = q p = p^-1 (p q) p, so the witness is u p.
        let mut witness = self.0[..k].to_vec();
        witness.extend_from_slice(&core[..shift]);
        CyclicWord {
            core: Word(rotated),
            witness: Word(witness),
        }
    }

    /// Cyclic length, i.e. the length of the shortest conjugate.
    pub fn cyclic_length(&self) -> usize {
        self.cyclic_reduce_raw().0.len()
    }

    /// Parse the text syntax, checking generator indices against `rank`.
    pub fn parse(text: &str, rank: usize) -> Result<Word, WordError> {
        let w = Self::parse_unchecked(text)?;
        w.check_rank(rank)?;
        Ok(w)
    }

    /// Parse without a rank check.
    pub fn parse_unchecked(text: &str) -> Result<Word, WordError> {
        let trimmed = text.trim();
        if trimmed == "1" || trimmed.is_empty() {
            return Ok(Word::identity());
        }
        let chars: Vec<char> = trimmed.chars().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == '.' || c == '*' {
                i += 1;
                continue;
            }
            if !c.is_ascii_alphabetic() {
                return Err(WordError::InvalidToken(c.to_string()));
            }
            if (c == 'g' || c == 'G') && i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let digits: String = chars[i + 1..j].iter().collect();
                let index: i32 = digits
                    .parse()
                    .ok()
                    .filter(|&v: &i32| v > 0)
                    .ok_or_else(|| WordError::InvalidToken(chars[i..j].iter().collect()))?;
                letters.push(Letter(if c == 'G' { -index } else { index }));
                i = j;
                continue;
            }
            let index = (c.to_ascii_lowercase() as u8 - b'a' + 1) as i32;
            letters.push(Letter(if c.is_ascii_uppercase() {
                -index
            } else {
                index
            }));
            i += 1;
        }
        Ok(Word::from_letters(letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Word::parse_unchecked(&text).map_err(serde::de::Error::custom)
    }
}

/// Start index of the lexicographically least rotation (Booth's algorithm).
fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| s[i % n];
    let mut fail = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = fail[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

/// Canonical conjugacy-class representative: `witness * core * witness^-1`
/// equals the originating word and `core` is its least cyclic rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    pub core: Word,
    pub witness: Word,
}

impl CyclicWord {
    pub fn reconstruct(&self) -> Word {
        Word::product([&self.witness, &self.core, &self.witness.inverse()])
    }
}

/// Freely reduce a raw letter sequence given as signed indices.
pub fn reduce(raw: &[i32], rank: usize) -> Result<Word, WordError> {
    let mut letters = Vec::with_capacity(raw.len());
    for &s in raw {
        if s == 0 {
            return Err(WordError::InvalidToken("0".into()));
        }
        let index = s.unsigned_abs() as usize;
        if index > rank {
            return Err(WordError::GeneratorOutOfRange { index, rank });
        }
        letters.push(Letter(s));
    }
    Ok(Word::from_letters(letters))
}

pub fn multiply(u: &Word, v: &Word) -> Word {
    u.mul(v)
}

pub fn cyclic_reduce(w: &Word) -> CyclicWord {
    w.cyclic_reduce()
}

/// Shortest element of the coset `<root> * base`, ties broken by shortlex order.
pub fn shortest_in_coset(root: &Word, base: &Word) -> Word {
    if root.is_identity() {
        return base.clone();
    }
    // |root^j base| >= |j| - |base|, so |j| > 2|base| never beats j = 0.
    let bound = 2 * base.len() as i64 + 1;
    (-bound..=bound)
        .map(|j| root.pow(j).mul(base))
        .min()
        .expect("nonempty range")
}

/// A shortest `z` with `z^-1 u z = v`, or `None` when `u` and `v` are not conjugate.
pub fn is_conjugate(u: &Word, v: &Word) -> Option<Word> {
    let cu = u.cyclic_reduce();
    let cv = v.cyclic_reduce();
    if cu.core != cv.core {
        return None;
    }
    if u.is_identity() {
        return Some(Word::identity());
    }
    let base = cu.witness.mul(&cv.witness.inverse());
    let (root, _) = primitive_root(u).expect("nontrivial");
    Some(shortest_in_coset(&root, &base))
}

/// The unique non-power root of `w` and the exponent with `root^exponent = w`.
pub fn primitive_root(w: &Word) -> Result<(Word, u32), WordError> {
    if w.is_identity() {
        return Err(WordError::IdentityRoot);
    }
    let (core, k) = w.cyclic_reduce_raw();
    let n = core.len();
    let period = (1..=n)
        .filter(|d| n % d == 0)
        .find(|&d| (d..n).all(|i| core[i] == core[i - d]))
        .expect("n is always a period");
    let mut letters = w.0[..k].to_vec();
    letters.extend_from_slice(&core[..period]);
    letters.extend_from_slice(&w.0[w.len() - k..]);
    Ok((Word(letters), (n / period) as u32))
}

/// Do `u` and `v` commute? In a free group this means equal primitive roots up to inversion.
pub fn commute(u: &Word, v: &Word) -> bool {
    u.mul(v) == v.mul(u)
}

/// A word in formal variables `x1..xn`, stored as a reduced word whose
/// generator `i` stands for variable `xi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbstractWord(pub Word);

impl AbstractWord {
    pub fn arity(&self) -> usize {
        self.0.max_generator()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn variable(i: usize) -> Self {
        AbstractWord(Word::generator(i))
    }

    /// Substitute `xi -> values[i-1]` and reduce.
    pub fn evaluate(&self, values: &[Word]) -> Result<Word, WordError> {
        let needed = self.arity();
        if needed > values.len() {
            return Err(WordError::ArityMismatch {
                needed,
                given: values.len(),
            });
        }
        Ok(self.evaluate_unchecked(values))
    }

    pub(crate) fn evaluate_unchecked(&self, values: &[Word]) -> Word {
        let mut acc = Word::identity();
        for l in self.0.letters() {
            let v = &values[l.index() - 1];
            acc = if l.is_inverse() {
                acc.mul(&v.inverse())
            } else {
                acc.mul(v)
            };
        }
        acc
    }
}

impl fmt::Display for AbstractWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_identity() {
            return write!(f, "1");
        }
        for (i, l) in self.0.letters().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.is_inverse() {
                write!(f, "x{}^-1", l.index())?;
            } else {
                write!(f, "x{}", l.index())?;
            }
        }
        Ok(())
    }
}

pub fn evaluate(w: &AbstractWord, values: &[Word]) -> Result<Word, WordError> {
    w.evaluate(values)
}

/// Streams every reduced word over `rank` generators with length in
/// `min_len..=max_len`, in shortlex order.
#[derive(Debug, Clone)]
pub struct ReducedWords {
    alphabet: u32,
    max_len: usize,
    current: Option<Vec<u32>>,
}

impl ReducedWords {
    pub fn new(rank: usize, min_len: usize, max_len: usize) -> Self {
        let alphabet = 2 * rank as u32;
        let current = if min_len > max_len || (alphabet == 0 && min_len > 0) {
            None
        } else {
            Some(first_reduced(min_len))
        };
        ReducedWords {
            alphabet,
            max_len,
            current,
        }
    }

    fn advance(&mut self) {
        let Some(cur) = self.current.as_mut() else {
            return;
        };
        let n = cur.len();
        for i in (0..n).rev() {
            let prev = if i == 0 { None } else { Some(cur[i - 1]) };
            let mut next = cur[i] + 1;
            if prev.map(|p| p ^ 1) == Some(next) {
                next += 1;
            }
            if next < self.alphabet {
                cur[i] = next;
                for j in i + 1..n {
                    cur[j] = if cur[j - 1] == 1 { 1 } else { 0 };
                }
                return;
            }
        }
        let len = n + 1;
        self.current = if len > self.max_len || self.alphabet == 0 {
            None
        } else {
            Some(first_reduced(len))
        };
    }
}

fn first_reduced(len: usize) -> Vec<u32> {
    // "x1 x1 ... x1" is the least reduced word of each length.
    vec![0; len]
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.as_ref()?;
        let w = Word(cur.iter().map(|&k| Letter::from_key(k)).collect());
        self.advance();
        Some(w)
    }
}

/// All reduced abstract words in `arity` variables of length `1..=max_len`,
/// in length-then-lex order.
pub fn enumerate_abstract_words(
    arity: usize,
    max_len: usize,
) -> impl Iterator<Item = AbstractWord> {
    ReducedWords::new(arity, 1, max_len).map(AbstractWord)
}

/// Number of reduced words of length exactly `len` over `rank` generators.
pub fn reduced_word_count(rank: usize, len: usize) -> u128 {
    if len == 0 {
        return 1;
    }
    let r = rank as u128;
    2 * r * (2 * r - 1).pow(len as u32 - 1)
}

/// Parse a comma separated list of words.
pub fn parse_tuple(text: &str, rank: usize) -> Result<Vec<Word>, WordError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| Word::parse(t, rank)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_unchecked(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&[1, -1, 2], 2).unwrap(), w("b"));
        assert_eq!(reduce(&[1, 2, -2, -1], 2).unwrap(), Word::identity());
        assert_eq!(reduce(&[1, 2, 1, 2], 2).unwrap(), w("abab"));
        assert_eq!(
            reduce(&[3], 2),
            Err(WordError::GeneratorOutOfRange { index: 3, rank: 2 })
        );
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(multiply(&w("ab"), &w("ba")), w("abba"));
        assert_eq!(multiply(&w("ab"), &w("BA")), Word::identity());
        assert_eq!(multiply(&w("ab"), &w("Ba")), w("aa"));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let c = cyclic_reduce(&w("abA"));
        assert_eq!((c.core.clone(), c.witness.clone()), (w("b"), w("a")));
        let c = cyclic_reduce(&w("ab"));
        assert_eq!(
            (c.core.clone(), c.witness.clone()),
            (w("ab"), Word::identity())
        );
        let c = cyclic_reduce(&w("Babb"));
        assert_eq!((c.core.clone(), c.witness.clone()), (w("ab"), w("B")));
        assert_eq!(c.reconstruct(), w("Babb"));
    }

    #[test]
    fn least_rotation_uses_letter_order() {
        // a < A < b < B
        assert_eq!(cyclic_reduce(&w("ba")).core, w("ab"));
        assert_eq!(cyclic_reduce(&w("Aab")).core, w("b"));
        assert_eq!(cyclic_reduce(&w("bAb")).core, w("Abb"));
        assert_eq!(cyclic_reduce(&w("BaBA")).core, w("aBAB"));
    }

    #[test]
    fn conjugacy_examples() {
        assert_eq!(is_conjugate(&w("ab"), &w("ba")), Some(w("a")));
        assert_eq!(is_conjugate(&w("ab"), &w("ab")), Some(Word::identity()));
        assert_eq!(is_conjugate(&w("a"), &w("b")), None);
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(&w("abab")).unwrap(), (w("ab"), 2));
        assert_eq!(primitive_root(&w("a")).unwrap(), (w("a"), 1));
        assert_eq!(primitive_root(&w("abA")).unwrap(), (w("abA"), 1));
        assert_eq!(primitive_root(&w("abbA")).unwrap(), (w("abA"), 2));
        assert_eq!(
            primitive_root(&Word::identity()),
            Err(WordError::IdentityRoot)
        );
    }

    #[test]
    fn evaluate_examples() {
        let t = vec![w("ab"), w("b")];
        let x1x2inv = AbstractWord(w("aB"));
        assert_eq!(evaluate(&x1x2inv, &t).unwrap(), w("a"));
        assert_eq!(evaluate(&AbstractWord::variable(1), &t).unwrap(), w("ab"));
        let comm = AbstractWord(w("abAB"));
        assert_eq!(evaluate(&comm, &[w("a"), w("b")]).unwrap(), w("abAB"));
        assert_eq!(
            evaluate(&AbstractWord::variable(3), &t),
            Err(WordError::ArityMismatch {
                needed: 3,
                given: 2
            })
        );
    }

    #[test]
    fn enumeration_counts_and_order() {
        let one: Vec<_> = enumerate_abstract_words(1, 1)
            .map(|w| w.to_string())
            .collect();
        assert_eq!(one, ["x1", "x1^-1"]);
        assert_eq!(enumerate_abstract_words(2, 1).count(), 4);
        assert_eq!(enumerate_abstract_words(2, 2).count(), 16);
        for n in 1..=3 {
            for len in 0..=5 {
                let expected: u128 = (1..=len).map(|k| reduced_word_count(n, k)).sum();
                assert_eq!(enumerate_abstract_words(n, len).count() as u128, expected);
            }
        }
        let all: Vec<Word> = ReducedWords::new(2, 0, 4).collect();
        assert!(all.windows(2).all(|p| p[0] < p[1]));
        assert!(all
            .iter()
            .all(|x| Word::from_letters(x.letters().to_vec()) == *x));
    }

    #[test]
    fn text_round_trip_and_tokens() {
        assert_eq!(w("g1G2"), w("aB"));
        assert_eq!(Word::generator(27).to_string(), "g27");
        assert_eq!(
            w("gg27").letters(),
            &[Letter::generator(7), Letter::generator(27)]
        );
        assert_eq!(w("1"), Word::identity());
        assert!(Word::parse("c", 2).is_err());
        assert!(Word::parse_unchecked("a-b").is_err());
    }

    #[test]
    fn power_matches_repeated_product() {
        for s in ["abA", "ab", "aabAA", "Babb"] {
            let g = w(s);
            let mut acc = Word::identity();
            for k in 0..6 {
                assert_eq!(g.pow(k), acc);
                assert_eq!(g.pow(-k), acc.inverse());
                acc = acc.mul(&g);
            }
        }
    }
}
