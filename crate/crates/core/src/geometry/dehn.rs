//! Finite presentations and Dehn's algorithm.

use std::fmt;

use num_rational::Rational64;

use crate::word::{Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PresentationError {
    #[error("presentation text is empty")]
    Empty,
    #[error("invalid rank line {0:?}")]
    BadRank(String),
    #[error("relator {0} is trivial")]
    TrivialRelator(usize),
    #[error("piece ratio {ratio} is not below 1/6")]
    NotSmallCancellation { ratio: Rational64 },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A finite presentation with cyclically reduced relators.
#[derive(Debug, Clone)]
pub struct Presentation {
    rank: usize,
    relators: Vec<Word>,
    symmetrized: Vec<Word>,
    piece_ratio: Rational64,
}

impl Presentation {
    pub fn new(rank: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut cores = Vec::with_capacity(relators.len());
        for (i, r) in relators.into_iter().enumerate() {
            r.check_rank(rank)?;
            let core = r.cyclic_reduce().core;
            if core.is_identity() {
                return Err(PresentationError::TrivialRelator(i));
            }
            cores.push(core);
        }
        let mut sym = Vec::new();
        for r in &cores {
            for base in [r.clone(), r.inverse()] {
                let l = base.letters();
                for s in 0..l.len() {
                    sym.push(Word::from_letters(l[s..].iter().chain(&l[..s]).copied()));
                }
            }
        }
        sym.sort();
        sym.dedup();
        let piece = max_piece(&sym);
        let shortest = cores.iter().map(Word::len).min().unwrap_or(1).max(1);
        Ok(Presentation {
            rank,
            relators: cores,
            symmetrized: sym,
            piece_ratio: Rational64::new(piece as i64, shortest as i64),
        })
    }

    /// The free group of rank `rank`.
    pub fn free(rank: usize) -> Self {
        Presentation::new(rank, Vec::new()).expect("no relators")
    }

    /// Closed orientable surface of genus `genus`: `[a1,b1]...[ag,bg]`.
    pub fn surface(genus: usize) -> Self {
        let mut raw = Vec::new();
        for i in 0..genus as i32 {
            let (a, b) = (2 * i + 1, 2 * i + 2);
            raw.extend([a, b, -a, -b]);
        }
        let r = crate::word::reduce(&raw, 2 * genus).expect("valid");
        Presentation::new(2 * genus, vec![r]).expect("nontrivial relator")
    }

    /// First line: rank. Each further nonblank line: one relator.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let first = lines.next().ok_or(PresentationError::Empty)?;
        let rank: usize = first
            .parse()
            .map_err(|_| PresentationError::BadRank(first.to_string()))?;
        let relators = lines
            .map(|l| Word::parse(l, rank))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(rank, relators)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// Longest piece over shortest relator length.
    pub fn piece_ratio(&self) -> Rational64 {
        self.piece_ratio
    }

    pub fn is_small_cancellation(&self) -> bool {
        self.piece_ratio < Rational64::new(1, 6)
    }

    pub fn require_small_cancellation(&self) -> Result<(), PresentationError> {
        if self.is_small_cancellation() {
            Ok(())
        } else {
            Err(PresentationError::NotSmallCancellation {
                ratio: self.piece_ratio,
            })
        }
    }

    /// Dehn reduction to a fixed point. The result is empty iff `w = 1`.
    pub fn dehn_normal_form(&self, w: &Word) -> Result<Word, PresentationError> {
        self.require_small_cancellation()?;
        Ok(self.dehn_unchecked(w))
    }

    pub(crate) fn dehn_unchecked(&self, w: &Word) -> Word {
        let mut cur = w.clone();
        while let Some(next) = self.dehn_step(&cur) {
            cur = next;
        }
        cur
    }

    /// Replace the leftmost (then longest) subword that is more than half of a
    /// relator by the inverse of its complement.
    fn dehn_step(&self, w: &Word) -> Option<Word> {
        let l = w.letters();
        for i in 0..l.len() {
            let mut best: Option<(usize, &Word)> = None;
            for r in &self.symmetrized {
                let rl = r.letters();
                let m = rl.iter().zip(&l[i..]).take_while(|(a, b)| a == b).count();
                if 2 * m > rl.len() && best.map_or(true, |(bm, _)| m > bm) {
                    best = Some((m, r));
                }
            }
            if let Some((m, r)) = best {
                let complement: Vec<Letter> =
                    r.letters()[m..].iter().rev().map(|x| x.inverse()).collect();
                let letters = l[..i].iter().chain(&complement).chain(&l[i + m..]).copied();
                return Some(Word::from_letters(letters));
            }
        }
        None
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.dehn_unchecked(w).is_identity()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<rank {} |", self.rank)?;
        for (i, r) in self.relators.iter().enumerate() {
            write!(f, "{}{r}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, ">")
    }
}

fn max_piece(sym: &[Word]) -> usize {
    let mut best = 0;
    for (i, a) in sym.iter().enumerate() {
        for b in &sym[i + 1..] {
            let m = a
                .letters()
                .iter()
                .zip(b.letters())
                .take_while(|(x, y)| x == y)
                .count();
            best = best.max(m);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two() {
        let p = Presentation::surface(2);
        assert_eq!(p.relators()[0].to_string(), "abABcdCD");
        assert_eq!(p.piece_ratio(), Rational64::new(1, 8));
        let r = Word::parse("abABcdCD", 4).unwrap();
        assert!(p.dehn_normal_form(&r).unwrap().is_identity());
        assert_eq!(
            p.dehn_normal_form(&Word::parse("a", 4).unwrap())
                .unwrap()
                .to_string(),
            "a"
        );
        assert!(p.is_trivial(&Word::parse("dcDCbaBA", 4).unwrap()));
        assert!(p.is_trivial(&Word::parse("cDCbaBAd", 4).unwrap()));
        // more than half replaced by the shorter complement
        let w = Word::parse("abABc", 4).unwrap();
        assert_eq!(p.dehn_normal_form(&w).unwrap().to_string(), "dcD");
    }

    #[test]
    fn parse_and_reject() {
        let p = Presentation::parse("4\nabABcdCD\n").unwrap();
        assert_eq!(p.rank(), 4);
        let bad = Presentation::parse("2\naab\n").unwrap();
        assert!(!bad.is_small_cancellation());
        assert!(bad.dehn_normal_form(&Word::parse("a", 2).unwrap()).is_err());
        assert!(matches!(
            Presentation::parse(""),
            Err(PresentationError::Empty)
        ));
        assert!(matches!(
            Presentation::parse("x\n"),
            Err(PresentationError::BadRank(_))
        ));
        assert!(matches!(
            Presentation::parse("2\naA\n"),
            Err(PresentationError::TrivialRelator(0))
        ));
    }
}
