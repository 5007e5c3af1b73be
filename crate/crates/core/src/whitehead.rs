//! Whitehead automorphisms and orbit problems in free groups.
//!
//! Type II convention: for the pair `(a, A)` with `a` in `A` and `a^-1` not
//! in `A`, a letter `y != a^±1` maps to
//! `[y^-1 in A ? a] y [y in A ? a^-1]` and `a` is fixed. On a generator `x`
//! this gives `a x a^-1`, `a x`, `x a^-1` or `x`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::conjugacy::{uniform_conjugator, TuplePair};
use crate::word::{AbstractWord, Letter, ReducedWords, Word, WordError};

pub const RANK_GUARD: usize = 6;
pub const NODE_CAP: usize = 1_000_000;
/// Enlargement refuses above this many words per block.
pub const ENLARGE_WORD_LIMIT: u128 = 200_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WhiteheadError {
    #[error("rank {0} is outside 1..={RANK_GUARD}")]
    RankGuard(usize),
    #[error("automorphism or endomorphism of rank {aut} applied to a word over rank {word}")]
    RankMismatch { aut: usize, word: usize },
    #[error("tuples have different lengths ({0} and {1})")]
    ShapeMismatch(usize, usize),
    #[error("block systems have different shapes")]
    BlockShapeMismatch,
    #[error("blocks must be nonempty")]
    EmptyBlock,
    #[error("search visited more than {0} tuples")]
    NodeCap(usize),
    #[error("enlargement with C = {c} needs {words} words per block, above the limit")]
    Infeasible { c: String, words: String },
    #[error(transparent)]
    Bounds(#[from] crate::bounds::BoundsError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// An endomorphism of the free group given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Endomorphism {
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn new(images: Vec<Word>) -> Result<Self, WhiteheadError> {
        let rank = images.len();
        if rank == 0 {
            return Err(WhiteheadError::RankGuard(0));
        }
        for w in &images {
            w.check_rank(rank)?;
        }
        Ok(Endomorphism { images })
    }

    pub fn identity(rank: usize) -> Self {
        Endomorphism {
            images: (1..=rank).map(Word::generator).collect(),
        }
    }

    /// Conjugation `g -> z^-1 g z`.
    pub fn inner(rank: usize, z: &Word) -> Self {
        Endomorphism {
            images: (1..=rank)
                .map(|i| Word::generator(i).conjugate_by(z))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WhiteheadError> {
        if w.max_generator() > self.rank() {
            return Err(WhiteheadError::RankMismatch {
                aut: self.rank(),
                word: w.max_generator(),
            });
        }
        Ok(self.apply_unchecked(w))
    }

    fn apply_unchecked(&self, w: &Word) -> Word {
        let mut acc = Word::identity();
        for l in w.letters() {
            let img = &self.images[l.index() - 1];
            acc = if l.is_inverse() {
                acc.mul(&img.inverse())
            } else {
                acc.mul(img)
            };
        }
        acc
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Endomorphism) -> Endomorphism {
        Endomorphism {
            images: self
                .images
                .iter()
                .map(|w| next.apply_unchecked(w))
                .collect(),
        }
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> {}", Letter::generator(i + 1), w)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WhiteheadAut {
    /// `x_i -> x_perm[i]^(±1)`, inverted when `invert[i]`.
    TypeI { perm: Vec<usize>, invert: Vec<bool> },
    /// Multiplier `a` and set `A` of letters (sorted by key).
    TypeII {
        multiplier: Letter,
        set: Vec<Letter>,
    },
}

impl WhiteheadAut {
    pub fn rank(&self) -> usize {
        match self {
            WhiteheadAut::TypeI { perm, .. } => perm.len(),
            WhiteheadAut::TypeII { set, .. } => set.iter().map(|l| l.index()).max().unwrap_or(0),
        }
    }

    fn letter_image(&self, y: Letter) -> Word {
        match self {
            WhiteheadAut::TypeI { perm, invert } => {
                let i = y.index() - 1;
                let img = Word::generator(perm[i] + 1);
                if invert[i] != y.is_inverse() {
                    img.inverse()
                } else {
                    img
                }
            }
            WhiteheadAut::TypeII { multiplier: a, set } => {
                if y.index() == a.index() {
                    return Word::from_letters([y]);
                }
                let mut out = Vec::with_capacity(3);
                if set.contains(&y.inverse()) {
                    out.push(*a);
                }
                out.push(y);
                if set.contains(&y) {
                    out.push(a.inverse());
                }
                Word::from_letters(out)
            }
        }
    }

    pub fn to_endomorphism(&self, rank: usize) -> Endomorphism {
        Endomorphism {
            images: (1..=rank)
                .map(|i| self.letter_image(Letter::generator(i)))
                .collect(),
        }
    }

    pub fn apply(&self, w: &Word, rank: usize) -> Result<Word, WhiteheadError> {
        if w.max_generator() > rank || self.rank() > rank {
            return Err(WhiteheadError::RankMismatch {
                aut: rank,
                word: w.max_generator(),
            });
        }
        Ok(self.apply_unchecked(w))
    }

    fn apply_unchecked(&self, w: &Word) -> Word {
        Word::from_letters(
            w.letters()
                .iter()
                .flat_map(|&l| self.letter_image(l).letters().to_vec()),
        )
    }

    pub fn inverse(&self) -> WhiteheadAut {
        match self {
            WhiteheadAut::TypeI { perm, invert } => {
                let mut p = vec![0; perm.len()];
                let mut inv = vec![false; perm.len()];
                for (i, &j) in perm.iter().enumerate() {
                    p[j] = i;
                    inv[j] = invert[i];
                }
                WhiteheadAut::TypeI {
                    perm: p,
                    invert: inv,
                }
            }
            WhiteheadAut::TypeII { multiplier: a, set } => {
                let mut s: Vec<Letter> = set.iter().copied().filter(|l| l != a).collect();
                s.push(a.inverse());
                s.sort();
                WhiteheadAut::TypeII {
                    multiplier: a.inverse(),
                    set: s,
                }
            }
        }
    }
}

impl fmt::Display for WhiteheadAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhiteheadAut::TypeI { perm, invert } => {
                write!(f, "I[")?;
                for (i, (&p, &inv)) in perm.iter().zip(invert).enumerate() {
                    let img = Letter::generator(p + 1);
                    let img = if inv { img.inverse() } else { img };
                    write!(
                        f,
                        "{}{}>{}",
                        if i > 0 { " " } else { "" },
                        Letter::generator(i + 1),
                        img
                    )?;
                }
                write!(f, "]")
            }
            WhiteheadAut::TypeII { multiplier, set } => {
                write!(f, "II({multiplier};")?;
                for l in set {
                    write!(f, "{l}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for WhiteheadAut {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Every Whitehead automorphism of the free group of rank `rank`: type I first, then type II.
pub fn all_whitehead_auts(rank: usize) -> Result<Vec<WhiteheadAut>, WhiteheadError> {
    if rank == 0 || rank > RANK_GUARD {
        return Err(WhiteheadError::RankGuard(rank));
    }
    let mut out = Vec::new();
    for perm in permutations(rank) {
        for mask in 0..(1u32 << rank) {
            let invert = (0..rank).map(|i| mask >> i & 1 == 1).collect();
            out.push(WhiteheadAut::TypeI {
                perm: perm.clone(),
                invert,
            });
        }
    }
    for key in 0..2 * rank as u32 {
        let a = Letter::from_key(key);
        let others: Vec<Letter> = (0..2 * rank as u32)
            .map(Letter::from_key)
            .filter(|l| l.index() != a.index())
            .collect();
        for mask in 1..(1u64 << others.len()) {
            let mut set: Vec<Letter> = others
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, l)| *l)
                .collect();
            set.push(a);
            set.sort();
            out.push(WhiteheadAut::TypeII { multiplier: a, set });
        }
    }
    Ok(out)
}

/// `2^r r!` type I and `2r (2^(2r-2) - 1)` type II automorphisms.
pub fn whitehead_count(rank: usize) -> (u64, u64) {
    let r = rank as u64;
    let fact: u64 = (1..=r).product();
    (fact << r, 2 * r * ((1u64 << (2 * r - 2)) - 1))
}

/// Apply a sequence of automorphisms in order.
pub fn compose(seq: &[WhiteheadAut], rank: usize) -> Endomorphism {
    seq.iter().fold(Endomorphism::identity(rank), |acc, a| {
        acc.then(&a.to_endomorphism(rank))
    })
}

fn inverse_sequence(seq: &[WhiteheadAut]) -> Vec<WhiteheadAut> {
    seq.iter().rev().map(WhiteheadAut::inverse).collect()
}

type Key = Vec<Word>;

fn canonical(tuple: &[Word]) -> Key {
    tuple.iter().map(|w| w.cyclic_reduce().core).collect()
}

fn total(tuple: &[Word]) -> usize {
    tuple.iter().map(Word::len).sum()
}

fn check_rank(tuple: &[Word], rank: usize) -> Result<(), WhiteheadError> {
    if rank == 0 || rank > RANK_GUARD {
        return Err(WhiteheadError::RankGuard(rank));
    }
    for w in tuple {
        w.check_rank(rank)?;
    }
    Ok(())
}

/// Greedy Whitehead minimization of a tuple of cyclic words.
///
/// Returns the minimal tuple of canonical cores and the automorphisms applied.
pub fn minimize(
    tuple: &[Word],
    rank: usize,
) -> Result<(Vec<Word>, Vec<WhiteheadAut>), WhiteheadError> {
    check_rank(tuple, rank)?;
    let auts = all_whitehead_auts(rank)?;
    let mut cur = canonical(tuple);
    let mut seq = Vec::new();
    loop {
        let len = total(&cur);
        let mut best: Option<(usize, Key, &WhiteheadAut)> = None;
        for a in auts
            .iter()
            .filter(|a| matches!(a, WhiteheadAut::TypeII { .. }))
        {
            let img = canonical(&cur.iter().map(|w| a.apply_unchecked(w)).collect::<Vec<_>>());
            let l = total(&img);
            if l < len && best.as_ref().map_or(true, |(bl, _, _)| l < *bl) {
                best = Some((l, img, a));
            }
        }
        match best {
            Some((_, img, a)) => {
                cur = img;
                seq.push(a.clone());
            }
            None => return Ok((cur, seq)),
        }
    }
}

/// Is `phi(s_i)` conjugate to `t_i` for every `i`?
pub fn maps_up_to_conjugacy(phi: &Endomorphism, s: &[Word], t: &[Word]) -> bool {
    s.len() == t.len()
        && s.iter()
            .zip(t)
            .all(|(a, b)| phi.apply_unchecked(a).cyclic_reduce().core == b.cyclic_reduce().core)
}

/// An automorphism sequence sending each `s_i` to a conjugate of `t_i`, or `None`.
pub fn orbit_decide_classical(
    s: &[Word],
    t: &[Word],
    rank: usize,
) -> Result<Option<Vec<WhiteheadAut>>, WhiteheadError> {
    if s.len() != t.len() {
        return Err(WhiteheadError::ShapeMismatch(s.len(), t.len()));
    }
    check_rank(t, rank)?;
    if canonical(s) == canonical(t) {
        return Ok(Some(Vec::new()));
    }
    let (ms, seq_s) = minimize(s, rank)?;
    let (mt, seq_t) = minimize(t, rank)?;
    if total(&ms) != total(&mt) {
        return Ok(None);
    }
    let Some(path) = level_path(&ms, &mt, rank)? else {
        return Ok(None);
    };
    let mut seq = seq_s;
    seq.extend(path);
    seq.extend(inverse_sequence(&seq_t));
    debug_assert!(maps_up_to_conjugacy(&compose(&seq, rank), s, t));
    Ok(Some(seq))
}

/// Breadth-first search among minimal tuples through length-preserving moves.
fn level_path(
    from: &Key,
    to: &Key,
    rank: usize,
) -> Result<Option<Vec<WhiteheadAut>>, WhiteheadError> {
    if from == to {
        return Ok(Some(Vec::new()));
    }
    let auts = all_whitehead_auts(rank)?;
    let len = total(from);
    let mut parent: HashMap<Key, Option<(Key, usize)>> = HashMap::new();
    parent.insert(from.clone(), None);
    let mut queue = VecDeque::from([from.clone()]);
    while let Some(cur) = queue.pop_front() {
        for (ai, a) in auts.iter().enumerate() {
            let img = canonical(&cur.iter().map(|w| a.apply_unchecked(w)).collect::<Vec<_>>());
            if total(&img) != len || parent.contains_key(&img) {
                continue;
            }
            parent.insert(img.clone(), Some((cur.clone(), ai)));
            if img == *to {
                let mut path = Vec::new();
                let mut node = img;
                while let Some(Some((prev, ai))) = parent.get(&node) {
                    path.push(auts[*ai].clone());
                    node = prev.clone();
                }
                path.reverse();
                return Ok(Some(path));
            }
            if parent.len() > NODE_CAP {
                return Err(WhiteheadError::NodeCap(NODE_CAP));
            }
            queue.push_back(img);
        }
    }
    Ok(None)
}

/// Blocks of elements of the free group of rank `rank`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    pub rank: usize,
    pub blocks: Vec<Vec<Word>>,
}

impl BlockSystem {
    pub fn new(rank: usize, blocks: Vec<Vec<Word>>) -> Result<Self, WhiteheadError> {
        if blocks.iter().any(Vec::is_empty) || blocks.is_empty() {
            return Err(WhiteheadError::EmptyBlock);
        }
        check_rank(&blocks.concat(), rank)?;
        Ok(BlockSystem { rank, blocks })
    }

    pub fn shape(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn total_length(&self) -> usize {
        self.blocks.iter().flatten().map(Word::len).sum()
    }

    pub fn image(&self, phi: &Endomorphism) -> BlockSystem {
        BlockSystem {
            rank: self.rank,
            blocks: self
                .blocks
                .iter()
                .map(|b| b.iter().map(|w| phi.apply_unchecked(w)).collect())
                .collect(),
        }
    }
}

/// How the per-block criterion length is chosen.
#[derive(Debug, Clone)]
pub enum MixedMode {
    /// A uniform user-supplied length.
    Empirical(usize),
    /// Lengths from the constants engine for `delta = 0`.
    Paper,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "answer", rename_all = "kebab-case")]
pub enum MixedOutcome {
    /// `g_i^-1 phi(u_ij) g_i = v_ij` for all `i, j`.
    Yes {
        automorphisms: Vec<WhiteheadAut>,
        images: Vec<Word>,
        conjugators: Vec<Word>,
        c: Vec<usize>,
    },
    /// Even the enlarged tuples are not in one orbit up to conjugacy.
    No { c: Vec<usize> },
    /// The enlarged tuples match but the found automorphism has no uniform conjugators.
    Inconclusive {
        automorphisms: Vec<WhiteheadAut>,
        block: usize,
        c: Vec<usize>,
    },
}

fn enlarge(block: &[Word], c: usize) -> Vec<Word> {
    let mut out = block.to_vec();
    out.extend(
        ReducedWords::new(block.len(), 1, c).map(|w| AbstractWord(w).evaluate_unchecked(block)),
    );
    out
}

/// Criterion lengths per block.
pub fn block_lengths(u: &BlockSystem, mode: &MixedMode) -> Result<Vec<usize>, WhiteheadError> {
    let ctx = crate::bounds::BoundContext::free(u.rank as u64);
    u.blocks
        .iter()
        .map(|b| match mode {
            MixedMode::Empirical(c) => Ok(*c),
            MixedMode::Paper => {
                let sum: usize = b.iter().map(Word::len).sum();
                let c = ctx.c_main(&crate::bounds::Magnitude::int(sum as u64), b.len() as u64)?;
                let words = c.value.to_u64().map(|c| {
                    (1..=c as usize)
                        .map(|l| crate::word::reduced_word_count(b.len(), l))
                        .sum::<u128>()
                });
                match (c.value.to_u64(), words) {
                    (Some(cv), Some(n)) if n <= ENLARGE_WORD_LIMIT => Ok(cv as usize),
                    _ => Err(WhiteheadError::Infeasible {
                        c: c.value.to_string(),
                        words: words.map_or("astronomically many".into(), |n| n.to_string()),
                    }),
                }
            }
        })
        .collect()
}

/// Decide whether some automorphism maps each block of `u` to the matching
/// block of `v` up to one conjugator per block.
pub fn mixed_decide(
    u: &BlockSystem,
    v: &BlockSystem,
    mode: &MixedMode,
) -> Result<MixedOutcome, WhiteheadError> {
    if u.rank != v.rank || u.shape() != v.shape() {
        return Err(WhiteheadError::BlockShapeMismatch);
    }
    let c = block_lengths(u, mode)?;
    let big_u: Vec<Word> = u
        .blocks
        .iter()
        .zip(&c)
        .flat_map(|(b, &ci)| enlarge(b, ci))
        .collect();
    let big_v: Vec<Word> = v
        .blocks
        .iter()
        .zip(&c)
        .flat_map(|(b, &ci)| enlarge(b, ci))
        .collect();
    let Some(seq) = orbit_decide_classical(&big_u, &big_v, u.rank)? else {
        return Ok(MixedOutcome::No { c });
    };
    let phi = compose(&seq, u.rank);
    let image = u.image(&phi);
    let mut conjugators = Vec::new();
    for (i, (ib, vb)) in image.blocks.iter().zip(&v.blocks).enumerate() {
        let tp = TuplePair::new(u.rank, ib.clone(), vb.clone()).expect("same shape");
        match uniform_conjugator(&tp) {
            Some(g) => conjugators.push(g),
            None => {
                return Ok(MixedOutcome::Inconclusive {
                    automorphisms: seq,
                    block: i,
                    c,
                })
            }
        }
    }
    let ok = image
        .blocks
        .iter()
        .zip(&v.blocks)
        .zip(&conjugators)
        .all(|((ib, vb), g)| ib.iter().zip(vb).all(|(x, y)| x.conjugate_by(g) == *y));
    assert!(ok, "mixed certificate failed to verify");
    Ok(MixedOutcome::Yes {
        automorphisms: seq,
        images: phi.images,
        conjugators,
        c,
    })
}

/// Uniform conjugacy class of each block, for duplicate detection.
fn blocks_equivalent(a: &BlockSystem, b: &BlockSystem) -> bool {
    a.blocks.iter().zip(&b.blocks).all(|(x, y)| {
        TuplePair::new(a.rank, x.clone(), y.clone())
            .ok()
            .and_then(|tp| uniform_conjugator(&tp))
            .is_some()
    })
}

/// Bounded oracle: is some product of at most `depth` Whitehead automorphisms
/// a solution of the mixed problem? Images longer than `length_cap` are pruned.
pub fn mixed_bfs_oracle(
    u: &BlockSystem,
    v: &BlockSystem,
    depth: usize,
    length_cap: usize,
) -> Result<Option<Endomorphism>, WhiteheadError> {
    if u.rank != v.rank || u.shape() != v.shape() {
        return Err(WhiteheadError::BlockShapeMismatch);
    }
    let auts: Vec<Endomorphism> = all_whitehead_auts(u.rank)?
        .iter()
        .map(|a| a.to_endomorphism(u.rank))
        .collect();
    let bucket = |s: &BlockSystem| -> Key { s.blocks.iter().flat_map(|b| canonical(b)).collect() };
    let mut seen: HashMap<Key, Vec<BlockSystem>> = HashMap::new();
    let mut frontier = vec![(u.clone(), Endomorphism::identity(u.rank))];
    seen.entry(bucket(u)).or_default().push(u.clone());
    let target_key = bucket(v);
    for level in 0..=depth {
        let mut next = Vec::new();
        for (state, phi) in &frontier {
            if bucket(state) == target_key && blocks_equivalent(state, v) {
                return Ok(Some(phi.clone()));
            }
            if level == depth {
                continue;
            }
            for a in &auts {
                let img = state.image(a);
                if img.total_length() > length_cap {
                    continue;
                }
                let k = bucket(&img);
                let entry = seen.entry(k).or_default();
                if entry.iter().any(|e| blocks_equivalent(e, &img)) {
                    continue;
                }
                entry.push(img.clone());
                next.push((img, phi.then(a)));
            }
        }
        if seen.values().map(Vec::len).sum::<usize>() > NODE_CAP {
            return Err(WhiteheadError::NodeCap(NODE_CAP));
        }
        frontier = next;
    }
    Ok(None)
}

/// A `z` with `phi(x_i) = z^-1 x_i z` for every generator, if `phi` is inner.
pub fn inner_check(phi: &Endomorphism) -> Option<Word> {
    let rank = phi.rank();
    let gens: Vec<Word> = (1..=rank).map(Word::generator).collect();
    let tp = TuplePair::new(rank, gens, phi.images.clone()).ok()?;
    let z = uniform_conjugator(&tp)?;
    (Endomorphism::inner(rank, &z) == *phi).then_some(z)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PointwiseVerdict {
    AllConjugate { checked: u64 },
    Witness { h: Word, image: Word },
}

/// Is `phi(h)` conjugate to `h` for every `h` of length at most `radius`?
pub fn pointwise_inner_on_ball(
    phi: &Endomorphism,
    radius: usize,
) -> Result<PointwiseVerdict, WhiteheadError> {
    let rank = phi.rank();
    let size = crate::bounds::free_ball_size(radius as u32, rank as u32);
    if size > num_bigint::BigUint::from(10_000_000u32) {
        return Err(WhiteheadError::Infeasible {
            c: radius.to_string(),
            words: size.to_string(),
        });
    }
    let mut checked = 0;
    for h in ReducedWords::new(rank, 1, radius) {
        let image = phi.apply_unchecked(&h);
        if image.cyclic_reduce().core != h.cyclic_reduce().core {
            return Ok(PointwiseVerdict::Witness { h, image });
        }
        checked += 1;
    }
    Ok(PointwiseVerdict::AllConjugate { checked })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn counts() {
        for r in 1..=3 {
            let all = all_whitehead_auts(r).unwrap();
            let (i, ii) = whitehead_count(r);
            assert_eq!(all.len() as u64, i + ii);
            let maps: std::collections::HashSet<Endomorphism> =
                all.iter().map(|a| a.to_endomorphism(r)).collect();
            assert_eq!(maps.len(), all.len(), "rank {r}");
        }
        assert_eq!(whitehead_count(2), (8, 12));
        assert_eq!(whitehead_count(1), (2, 0));
        assert!(all_whitehead_auts(7).is_err());
    }

    #[test]
    fn application_and_inverses() {
        let swap = WhiteheadAut::TypeI {
            perm: vec![1, 0],
            invert: vec![false, false],
        };
        assert_eq!(swap.apply(&w("ab"), 2).unwrap(), w("ba"));
        let inv_a = WhiteheadAut::TypeI {
            perm: vec![0, 1],
            invert: vec![true, false],
        };
        assert_eq!(inv_a.apply(&w("a"), 2).unwrap(), w("A"));
        let t2 = WhiteheadAut::TypeII {
            multiplier: Letter::generator(1),
            set: vec![Letter::generator(1), Letter::generator(2)],
        };
        assert_eq!(t2.apply(&w("b"), 2).unwrap(), w("bA"));
        for a in all_whitehead_auts(2).unwrap() {
            for x in ReducedWords::new(2, 0, 4) {
                assert_eq!(a.inverse().apply(&a.apply(&x, 2).unwrap(), 2).unwrap(), x);
            }
        }
    }

    #[test]
    fn minimization() {
        let (m, seq) = minimize(&[w("aab")], 2).unwrap();
        assert_eq!(total(&m), 1);
        assert_eq!(canonical(&[compose(&seq, 2).apply(&w("aab")).unwrap()]), m);
        assert_eq!(total(&minimize(&[w("abAB")], 2).unwrap().0), 4);
        let (m, seq) = minimize(&[w("a")], 2).unwrap();
        assert_eq!((m, seq.len()), (vec![w("a")], 0));
    }

    #[test]
    fn classical_examples() {
        assert!(orbit_decide_classical(&[w("a")], &[w("b")], 2)
            .unwrap()
            .is_some());
        assert!(orbit_decide_classical(&[w("abAB")], &[w("aabb")], 2)
            .unwrap()
            .is_none());
        assert_eq!(
            orbit_decide_classical(&[w("ab")], &[w("ba")], 2).unwrap(),
            Some(Vec::new())
        );
    }

    #[test]
    fn mixed_examples() {
        let sys = |b: &[&[&str]]| {
            BlockSystem::new(
                2,
                b.iter().map(|x| x.iter().map(|s| w(s)).collect()).collect(),
            )
            .unwrap()
        };
        let mode = MixedMode::Empirical(3);
        match mixed_decide(&sys(&[&["a"], &["b"]]), &sys(&[&["b"], &["a"]]), &mode).unwrap() {
            MixedOutcome::Yes { conjugators, .. } => {
                assert!(conjugators.iter().all(Word::is_identity))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            mixed_decide(&sys(&[&["a", "a"]]), &sys(&[&["a", "A"]]), &mode).unwrap(),
            MixedOutcome::No { .. }
        ));
        match mixed_decide(&sys(&[&["ab", "ba"]]), &sys(&[&["ab", "ba"]]), &mode).unwrap() {
            MixedOutcome::Yes { automorphisms, .. } => assert!(automorphisms.is_empty()),
            other => panic!("{other:?}"),
        }
        assert!(mixed_decide(&sys(&[&["a"]]), &sys(&[&["a", "b"]]), &mode).is_err());
    }

    #[test]
    fn inner_endomorphisms() {
        let phi = Endomorphism::new(vec![w("Bab"), w("BAbab")]).unwrap();
        assert_eq!(inner_check(&phi).unwrap(), w("ab"));
        assert!(inner_check(&Endomorphism::identity(2))
            .unwrap()
            .is_identity());
        let square = Endomorphism::new(vec![w("a"), w("bb")]).unwrap();
        assert_eq!(inner_check(&square), None);
        let v = pointwise_inner_on_ball(&square, 1).unwrap();
        assert_eq!(
            v,
            PointwiseVerdict::Witness {
                h: w("b"),
                image: w("bb")
            }
        );
        let transvection = Endomorphism::new(vec![w("a"), w("ba")]).unwrap();
        assert!(matches!(
            pointwise_inner_on_ball(&transvection, 1).unwrap(),
            PointwiseVerdict::Witness { .. }
        ));
        assert!(matches!(
            pointwise_inner_on_ball(&phi, 3).unwrap(),
            PointwiseVerdict::AllConjugate { .. }
        ));
    }
}
