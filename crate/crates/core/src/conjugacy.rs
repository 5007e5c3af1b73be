//! Uniform conjugacy of tuples in free groups.
//!
//! Two independent deciders: an exact coset-intersection solver
//! ([`uniform_conjugator`]) and the word criterion ([`word_criterion`]),
//! which checks that `W(left)` and `W(right)` are conjugate for every
//! reduced abstract word `W` up to a given length.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::word::{
    commute, is_conjugate, primitive_root, shortest_in_coset, AbstractWord, ReducedWords, Word,
    WordError,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConjugacyError {
    #[error("tuples have different lengths ({left} and {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("criterion length must be at least 1")]
    InvalidLength,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Two tuples of elements of the free group of rank `rank`.
#[derive(Debug, Clone)]
pub struct TuplePair {
    rank: usize,
    left: Vec<Word>,
    right: Vec<Word>,
    componentwise: OnceLock<bool>,
}

impl TuplePair {
    pub fn new(rank: usize, left: Vec<Word>, right: Vec<Word>) -> Result<Self, ConjugacyError> {
        if left.len() != right.len() {
            return Err(ConjugacyError::LengthMismatch {
                left: left.len(),
                right: right.len(),
            });
        }
        for w in left.iter().chain(&right) {
            w.check_rank(rank)?;
        }
        Ok(TuplePair {
            rank,
            left,
            right,
            componentwise: OnceLock::new(),
        })
    }

    /// Parse comma-separated tuples such as `"a,b"` and `"Bab,b"`.
    pub fn parse(rank: usize, left: &str, right: &str) -> Result<Self, ConjugacyError> {
        Self::new(
            rank,
            crate::word::parse_tuple(left, rank)?,
            crate::word::parse_tuple(right, rank)?,
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn left(&self) -> &[Word] {
        &self.left
    }

    pub fn right(&self) -> &[Word] {
        &self.right
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn is_componentwise_conjugate(&self) -> bool {
        *self.componentwise.get_or_init(|| {
            self.left
                .iter()
                .zip(&self.right)
                .all(|(a, b)| a.cyclic_reduce().core == b.cyclic_reduce().core)
        })
    }

    /// Does `g^-1 a_i g = a*_i` hold for every component?
    pub fn verifies(&self, g: &Word) -> bool {
        self.left
            .iter()
            .zip(&self.right)
            .all(|(a, b)| a.conjugate_by(g) == *b)
    }
}

/// Exponents `k` for which `rho^-k a rho^k = t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Solutions {
    None,
    One(i64),
    All,
}

/// Largest `|k|` worth trying in `rho^-k a rho^k = t` when `a` and `rho` do not commute.
///
/// With `rho = u c u^-1`, `c` cyclically reduced and primitive, put
/// `a' = u^-1 a u`. Cancellation of `c^-k a' c^k` against either power is
/// at most `|a'| + |c|` letters, so `|c^-k a' c^k| >= 2|k||c| - 2|a'| - 2|c|`,
/// while `|u^-1 t u| <= |t| + 2|u|`.
pub fn exponent_search_bound(a: &Word, t: &Word, rho: &Word) -> i64 {
    let c = rho.cyclic_length() as i64;
    let u = (rho.len() as i64 - c) / 2;
    let (a, t) = (a.len() as i64, t.len() as i64);
    (t + 2 * a + 4 * u + 2 * c) / (2 * c) + 3
}

fn solve_component(a: &Word, t: &Word, rho: &Word) -> Solutions {
    if commute(a, rho) {
        return if a == t {
            Solutions::All
        } else {
            Solutions::None
        };
    }
    let bound = exponent_search_bound(a, t, rho);
    (0..=bound)
        .flat_map(|k| [k, -k])
        .find(|&k| a.conjugate_by(&rho.pow(k)) == *t)
        .map_or(Solutions::None, Solutions::One)
}

/// A `g` with `g^-1 a_i g = a*_i` for all `i`, or `None` when no such element exists.
///
/// The answer is re-verified by multiplication. When the solution set is a
/// whole coset of a cyclic group the shortest element is returned.
pub fn uniform_conjugator(tp: &TuplePair) -> Option<Word> {
    let mut active = Vec::new();
    for (a, b) in tp.left.iter().zip(&tp.right) {
        match (a.is_identity(), b.is_identity()) {
            (true, true) => {}
            (true, false) | (false, true) => return None,
            (false, false) => active.push((a, b)),
        }
    }
    let Some(&(a1, b1)) = active.first() else {
        return Some(Word::identity());
    };
    let z1 = is_conjugate(a1, b1)?;
    let (rho, _) = primitive_root(a1).expect("nontrivial");
    let z1_inv = z1.inverse();
    let mut fixed: Option<i64> = None;
    for &(a, b) in &active[1..] {
        is_conjugate(a, b)?;
        let t = Word::product([&z1, b, &z1_inv]);
        match solve_component(a, &t, &rho) {
            Solutions::None => return None,
            Solutions::All => {}
            Solutions::One(k) => match fixed {
                Some(prev) if prev != k => return None,
                _ => fixed = Some(k),
            },
        }
    }
    let g = match fixed {
        Some(k) => rho.pow(k).mul(&z1),
        None => shortest_in_coset(&rho, &z1),
    };
    tp.verifies(&g).then_some(g)
}

/// Outcome of the word criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Criterion {
    Pass {
        words_checked: u64,
    },
    Fail {
        witness: String,
        length: usize,
        left_value: Word,
        right_value: Word,
    },
}

impl Criterion {
    pub fn passed(&self) -> bool {
        matches!(self, Criterion::Pass { .. })
    }
}

/// Check `W(right)` conjugate to `W(left)` for every reduced `W` of length at most `max_len`.
///
/// Words are processed one length at a time in shortlex order; the reported
/// witness is the least failing word regardless of thread scheduling.
pub fn word_criterion(tp: &TuplePair, max_len: usize) -> Result<Criterion, ConjugacyError> {
    if max_len == 0 {
        return Err(ConjugacyError::InvalidLength);
    }
    let n = tp.len();
    if n == 0 {
        return Ok(Criterion::Pass { words_checked: 0 });
    }
    let mut checked = 0u64;
    for len in 1..=max_len {
        let words: Vec<AbstractWord> = ReducedWords::new(n, len, len).map(AbstractWord).collect();
        let hit = words.par_iter().find_first(|w| {
            let l = w.evaluate_unchecked(&tp.left);
            let r = w.evaluate_unchecked(&tp.right);
            l.cyclic_reduce().core != r.cyclic_reduce().core
        });
        if let Some(w) = hit {
            return Ok(Criterion::Fail {
                witness: w.to_string(),
                length: len,
                left_value: w.evaluate_unchecked(&tp.left),
                right_value: w.evaluate_unchecked(&tp.right),
            });
        }
        checked += words.len() as u64;
    }
    Ok(Criterion::Pass {
        words_checked: checked,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ProbeStatus {
    /// The oracle finds a uniform conjugator and the criterion passes.
    ConsistentPass,
    /// The oracle finds none and the criterion fails first at `least_l`.
    FailsAt { least_l: usize },
    /// The oracle finds none but no failure occurs up to `l_max`.
    BelowThreshold,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub conjugator: Option<Word>,
    pub l_max: usize,
    #[serde(flatten)]
    pub status: ProbeStatus,
}

/// Compare the criterion against the exact solver for all lengths up to `l_max`.
pub fn equivalence_probe(tp: &TuplePair, l_max: usize) -> Result<ProbeReport, ConjugacyError> {
    if !tp.is_componentwise_conjugate() {
        return Err(ConjugacyError::Precondition(
            "tuples are not componentwise conjugate".into(),
        ));
    }
    let conjugator = uniform_conjugator(tp);
    let verdict = word_criterion(tp, l_max)?;
    let status = match (&conjugator, verdict) {
        (Some(_), Criterion::Pass { .. }) => ProbeStatus::ConsistentPass,
        (Some(g), Criterion::Fail { witness, .. }) => {
            // a uniform conjugator conjugates every W simultaneously
            unreachable!("conjugator {g} exists but {witness} separates the tuples")
        }
        (None, Criterion::Fail { length, .. }) => ProbeStatus::FailsAt { least_l: length },
        (None, Criterion::Pass { .. }) => ProbeStatus::BelowThreshold,
    };
    Ok(ProbeReport {
        conjugator,
        l_max,
        status,
    })
}

/// `x = b^n1 v_x b^n2`, `y = b^n3 v_y b^n4` with short `v_x`, `v_y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjugatorForm {
    pub n: [i64; 4],
    pub v_x: Word,
    pub v_y: Word,
}

/// Decompose a solution of `(x b^s x^-1)(y b^t y^-1) = b^(s+t)` with middle parts of length at most `hbar`.
pub fn verify_conjugator_form(
    b: &Word,
    x: &Word,
    y: &Word,
    s: u64,
    t: u64,
    hbar: u64,
) -> Result<Option<ConjugatorForm>, ConjugacyError> {
    if b.is_identity() || s == 0 || t == 0 {
        return Err(ConjugacyError::Precondition(
            "need b != 1 and s, t > 0".into(),
        ));
    }
    let lhs = b
        .pow(s as i64)
        .conjugate_by(&x.inverse())
        .mul(&b.pow(t as i64).conjugate_by(&y.inverse()));
    if lhs != b.pow((s + t) as i64) {
        return Err(ConjugacyError::Precondition(
            "(x b^s x^-1)(y b^t y^-1) != b^(s+t)".into(),
        ));
    }
    let nb = b.cyclic_length() as i64;
    let split = |z: &Word| -> Option<(i64, i64, Word)> {
        let range = (z.len() as i64 + hbar as i64) / nb + 1;
        let mut best: Option<(i64, i64, Word)> = None;
        for n1 in -range..=range {
            let left = b.pow(-n1).mul(z);
            for n2 in -range..=range {
                let v = left.mul(&b.pow(-n2));
                if v.len() as u64 <= hbar
                    && best.as_ref().map_or(true, |(_, _, bv)| v.len() < bv.len())
                {
                    best = Some((n1, n2, v));
                }
            }
        }
        best
    };
    let (Some((n1, n2, v_x)), Some((n3, n4, v_y))) = (split(x), split(y)) else {
        return Ok(None);
    };
    let form = ConjugatorForm {
        n: [n1, n2, n3, n4],
        v_x,
        v_y,
    };
    let rebuild = |p: i64, v: &Word, q: i64| Word::product([&b.pow(p), v, &b.pow(q)]);
    debug_assert!(rebuild(n1, &form.v_x, n2) == *x && rebuild(n3, &form.v_y, n4) == *y);
    Ok(Some(form))
}

/// A solution of the two simultaneous equations for `(b, w, h)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoEqWitness {
    pub d: Word,
    pub m: i64,
    pub s: i64,
    pub t: i64,
    /// For `st = 0`, exponents `(i, j)` with `h = root(b)^i root(w)^j`.
    pub zero_branch: Option<(i64, i64)>,
}

/// Do `(d b^s d^-1)(d w b^t w^-1 d^-1) = b^(s+t)` and
/// `(d^-1 h w h^-1 d)(d^-1 b^m d) = w b^m` hold?
pub fn twoeq_holds(b: &Word, w: &Word, h: &Word, d: &Word, m: i64, s: i64, t: i64) -> bool {
    let di = d.inverse();
    let first =
        Word::product([d, &b.pow(s), &di, d, w, &b.pow(t), &w.inverse(), &di]) == b.pow(s + t);
    let second = Word::product([&di, h, w, &h.inverse(), d, &di, &b.pow(m), d]) == w.mul(&b.pow(m));
    first && second
}

/// Find `(i, j)` with `h = root(b)^i root(w)^j`.
pub fn cyclic_product_membership(h: &Word, b: &Word, w: &Word) -> Option<(i64, i64)> {
    let rb = primitive_root(b).ok()?.0;
    let rw = if w.is_identity() {
        Word::identity()
    } else {
        primitive_root(w).ok()?.0
    };
    let bound = (h.len() + 2 * (rb.len() + rw.len())) as i64 + 2;
    for i in (0..=bound).flat_map(|i| [i, -i]) {
        let rest = rb.pow(-i).mul(h);
        if rest.is_identity() {
            return Some((i, 0));
        }
        if rw.is_identity() {
            continue;
        }
        let Ok((rr, e)) = primitive_root(&rest) else {
            continue;
        };
        if rr == rw {
            return Some((i, e as i64));
        }
        if rr == rw.inverse() {
            return Some((i, -(e as i64)));
        }
    }
    None
}

/// Produce `(d, m, s, t)` for the two equations when `w b*^k ~ w b^k` for `k = 1..=max_k`.
///
/// First follows the pigeonhole construction (shortest shift decompositions
/// `e_k` with a repeat `e_k1 = e_k2`), then falls back to a bounded search.
pub fn verify_twoeq(
    b: &Word,
    w: &Word,
    h: &Word,
    max_k: u64,
) -> Result<Option<TwoEqWitness>, ConjugacyError> {
    if b.is_identity() {
        return Err(ConjugacyError::Precondition("b must be nontrivial".into()));
    }
    let b_star = b.conjugate_by(h);
    for k in 1..=max_k as i64 {
        if is_conjugate(&w.mul(&b.pow(k)), &w.mul(&b_star.pow(k))).is_none() {
            return Err(ConjugacyError::Precondition(format!(
                "w b*^{k} is not conjugate to w b^{k}"
            )));
        }
    }
    let finish = |d: Word, m: i64, s: i64, t: i64| {
        let zero_branch = if s * t == 0 {
            cyclic_product_membership(h, b, w)
        } else {
            None
        };
        TwoEqWitness {
            d,
            m,
            s,
            t,
            zero_branch,
        }
    };

    // construction: w b*^k = e_k^-1 (b^(k-l_k) w b^l_k) e_k
    let mut seen: Vec<(i64, Word, i64)> = Vec::new();
    for k in 1..=max_k as i64 {
        let target = w.mul(&b_star.pow(k));
        let z = is_conjugate(&w.mul(&b.pow(k)), &target).expect("checked above");
        let (e, l) =
            crate::geometry::conjugate_shift_decompose(&z, w, b, k as u64).expect("b != 1");
        let l = l as i64;
        if let Some((k1, _, l1)) = seen.iter().find(|(_, e1, _)| *e1 == e).cloned() {
            let (s, t) = (k - k1 + l1 - l, l - l1);
            let d = Word::product([h, &e.inverse(), &b.pow(-l1), &w.inverse()]);
            if s + t > 0 && twoeq_holds(b, w, h, &d, k1, s, t) {
                return Ok(Some(finish(d, k1, s, t)));
            }
        }
        seen.push((k, e, l));
    }

    // bounded search over exponents and the coset C(b) e0 of solutions to the first equation
    let m_range = max_k as i64;
    let limit = h.len() + w.len() + max_k as usize * b.len();
    let rb = primitive_root(b).expect("nontrivial").0;
    for s in -m_range..=m_range {
        for t in -m_range..=m_range {
            if s + t <= 0 {
                continue;
            }
            let x = Word::product([&b.pow(s), w, &b.pow(t), &w.inverse()]);
            let Some(e0) = is_conjugate(&b.pow(s + t), &x) else {
                continue;
            };
            let span = limit as i64 + e0.len() as i64 + 1;
            for j in (0..=span).flat_map(|j| [j, -j]) {
                let d = rb.pow(j).mul(&e0);
                if d.len() > limit {
                    continue;
                }
                for m in (1..=m_range).flat_map(|m| [m, -m]) {
                    if twoeq_holds(b, w, h, &d, m, s, t) {
                        return Ok(Some(finish(d, m, s, t)));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(l: &str, r: &str) -> TuplePair {
        TuplePair::parse(2, l, r).unwrap()
    }

    #[test]
    fn decides_examples() {
        assert_eq!(
            uniform_conjugator(&tp("a,b", "Bab,b")).unwrap().to_string(),
            "b"
        );
        assert_eq!(uniform_conjugator(&tp("a,b", "a,BAbab")), None);
        assert!(uniform_conjugator(&tp("ab,a", "ab,a"))
            .unwrap()
            .is_identity());
        assert_eq!(
            uniform_conjugator(&tp("ab", "ba")).unwrap().to_string(),
            "a"
        );
        assert_eq!(uniform_conjugator(&tp("1,a", "b,a")), None);
        assert!(uniform_conjugator(&tp("1,1", "1,1")).unwrap().is_identity());
    }

    #[test]
    fn criterion_examples() {
        match word_criterion(&tp("a,b", "a,BAbab"), 2).unwrap() {
            Criterion::Fail {
                witness,
                length,
                left_value,
                right_value,
            } => {
                assert_eq!((witness.as_str(), length), ("x1 x2", 2));
                assert_eq!(left_value.to_string(), "ab");
                assert_eq!(right_value.cyclic_length(), 6);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(word_criterion(&tp("a,b", "a,BAbab"), 1).unwrap().passed());
        assert!(word_criterion(&tp("ab", "ba"), 1).unwrap().passed());
        assert!(word_criterion(&tp("a,b", "Bab,b"), 4).unwrap().passed());
        assert_eq!(
            word_criterion(&tp("a", "a"), 0),
            Err(ConjugacyError::InvalidLength)
        );
    }

    #[test]
    fn probe_examples() {
        let r = equivalence_probe(&tp("a,b", "a,BAbab"), 4).unwrap();
        assert_eq!(r.status, ProbeStatus::FailsAt { least_l: 2 });
        let r = equivalence_probe(&tp("a,b", "Bab,b"), 4).unwrap();
        assert_eq!(r.status, ProbeStatus::ConsistentPass);
    }

    #[test]
    fn conjugator_form_powers() {
        let b = Word::parse("ab", 2).unwrap();
        let x = b.pow(2);
        let y = b.pow(-1);
        let form = verify_conjugator_form(&b, &x, &y, 1, 2, 1)
            .unwrap()
            .unwrap();
        assert!(form.v_x.is_identity() && form.v_y.is_identity());
        assert!(verify_conjugator_form(&b, &Word::parse("a", 2).unwrap(), &y, 1, 1, 1).is_err());
    }

    #[test]
    fn twoeq_commuting_instance() {
        let b = Word::parse("ab", 2).unwrap();
        let w = b.pow(2);
        let h = b.pow(-1);
        let wit = verify_twoeq(&b, &w, &h, 3).unwrap().unwrap();
        assert!(twoeq_holds(&b, &w, &h, &wit.d, wit.m, wit.s, wit.t));
    }

    #[test]
    fn membership() {
        let b = Word::parse("a", 2).unwrap();
        let w = Word::parse("b", 2).unwrap();
        assert_eq!(
            cyclic_product_membership(&Word::parse("aabbb", 2).unwrap(), &b, &w),
            Some((2, 3))
        );
        assert_eq!(
            cyclic_product_membership(&Word::parse("ba", 2).unwrap(), &b, &w),
            None
        );
    }
}
