//! Seeded random generators and self-check suites behind `fgroup verify`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{BoundContext, CancellationMode, Magnitude};
use crate::conjugacy::{uniform_conjugator, word_criterion, TuplePair};
use crate::geometry;
use crate::whitehead::{all_whitehead_auts, minimize};
use crate::word::{Letter, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random reduced word with length in `min..=max`.
pub fn random_word<R: Rng>(rng: &mut R, rank: usize, min: usize, max: usize) -> Word {
    let n = rng.gen_range(min..=max);
    let mut letters: Vec<Letter> = Vec::with_capacity(n);
    while letters.len() < n {
        let l = Letter::from_key(rng.gen_range(0..2 * rank as u32));
        if letters.last().map_or(true, |p| *p != l.inverse()) {
            letters.push(l);
        }
    }
    Word::from_letters(letters)
}

/// Random reduced word whose first letter is not `after^-1` and last letter is not `before^-1`.
pub fn random_word_between<R: Rng>(
    rng: &mut R,
    rank: usize,
    len: usize,
    after: Option<Letter>,
    before: Option<Letter>,
) -> Word {
    loop {
        let w = random_word(rng, rank, len, len);
        let l = w.letters();
        let head_ok = match (after, l.first()) {
            (Some(a), Some(f)) => *f != a.inverse(),
            _ => true,
        };
        let tail_ok = match (before, l.last()) {
            (Some(b), Some(t)) => *t != b.inverse(),
            _ => true,
        };
        if head_ok && tail_ok {
            return w;
        }
    }
}

/// Random pair with a uniform conjugator `z`: `right_i = z^-1 left_i z`.
pub fn random_uniform_pair<R: Rng>(
    rng: &mut R,
    rank: usize,
    n: usize,
    max_len: usize,
    max_z: usize,
) -> (TuplePair, Word) {
    let left: Vec<Word> = (0..n).map(|_| random_word(rng, rank, 1, max_len)).collect();
    let z = random_word(rng, rank, 0, max_z);
    let right = left.iter().map(|a| a.conjugate_by(&z)).collect();
    (TuplePair::new(rank, left, right).expect("valid"), z)
}

/// Random componentwise-conjugate pair with independent conjugators.
pub fn random_componentwise_pair<R: Rng>(
    rng: &mut R,
    rank: usize,
    n: usize,
    max_len: usize,
    max_z: usize,
) -> TuplePair {
    let left: Vec<Word> = (0..n).map(|_| random_word(rng, rank, 1, max_len)).collect();
    let shared = random_word(rng, rank, 0, max_z);
    let right = left
        .iter()
        .map(|a| {
            let z = if rng.gen_bool(0.5) {
                shared.clone()
            } else {
                random_word(rng, rank, 0, max_z)
            };
            a.conjugate_by(&z)
        })
        .collect();
    TuplePair::new(rank, left, right).expect("valid")
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub samples: u64,
    pub failures: u64,
    pub skipped: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            samples: 0,
            failures: 0,
            skipped: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub const SUITES: [&str; 4] = ["geometry", "conjugacy", "whitehead", "bounds"];

pub fn run_suite(name: &str, samples: u64, seed: u64) -> Option<Vec<SuiteReport>> {
    let mut r = rng(seed);
    match name {
        "geometry" => Some(geometry_suite(&mut r, samples)),
        "conjugacy" => Some(conjugacy_suite(&mut r, samples)),
        "whitehead" => Some(whitehead_suite(&mut r, samples)),
        "bounds" => Some(bounds_suite(&mut r, samples)),
        "all" => Some(
            SUITES
                .iter()
                .flat_map(|s| run_suite(s, samples, seed).expect("known"))
                .collect(),
        ),
        _ => None,
    }
}

/// A chain `1 = A1, ..., An` of concatenated segments without backtracking.
pub fn random_geodesic_chain<R: Rng>(
    rng: &mut R,
    rank: usize,
    n: usize,
    max_seg: usize,
) -> Vec<Word> {
    let mut pts = vec![Word::identity()];
    let mut last: Option<Letter> = None;
    for _ in 1..n {
        let len = rng.gen_range(1..=max_seg);
        let seg = random_word_between(rng, rank, len, last, None);
        last = seg.letters().last().copied();
        let next = pts.last().expect("nonempty").mul(&seg);
        pts.push(next);
    }
    pts
}

/// `(u, v, w, c)` with both products `c`-products and `|v| > 2c`.
pub fn random_cc_triple<R: Rng>(rng: &mut R, rank: usize) -> (Word, Word, Word, f64) {
    let c = rng.gen_range(1..=3usize);
    // cancellation at each joint is at most c - 1
    let k1 = rng.gen_range(0..c);
    let k2 = rng.gen_range(0..c);
    let v = random_word(rng, rank, 2 * c + 1, 2 * c + 6);
    let vl = v.letters();
    let head: Word = Word::from_letters(vl[..k1].iter().copied());
    let tail: Word = Word::from_letters(vl[vl.len() - k2..].iter().copied());
    let (lu, lw) = (rng.gen_range(0..5), rng.gen_range(0..5));
    // u0 must not cancel into the part of v left after removing the head
    let u0 = random_word_between(rng, rank, lu, None, vl.get(k1).copied());
    let w0 = random_word_between(rng, rank, lw, vl.get(vl.len() - k2 - 1).copied(), None);
    let u = u0.mul(&head.inverse());
    let w = tail.inverse().mul(&w0);
    (u, v, w, c as f64)
}

fn geometry_suite(r: &mut ChaCha8Rng, samples: u64) -> Vec<SuiteReport> {
    let metric = geometry::FreeMetric;
    let ctx = BoundContext::free(2);
    let mut rect = SuiteReport::new("rectangle");
    let mut chain = SuiteReport::new("chain");
    let mut triple = SuiteReport::new("triple-length");
    let mut power = SuiteReport::new("power-defect");
    for _ in 0..samples {
        let p: Vec<Word> = (0..4).map(|_| random_word(r, 2, 0, 8)).collect();
        rect.record(
            geometry::rectangle_check(&p[0], &p[1], &p[2], &p[3], 0.0),
            || format!("{p:?}"),
        );

        let n = r.gen_range(3..=6);
        let pts = random_geodesic_chain(r, 2, n, 4);
        match geometry::chain_bound_check_in(&metric, &pts, 0.0) {
            Ok(ok) => chain.record(ok, || format!("{pts:?}")),
            Err(_) => chain.skipped += 1,
        }

        let (u, v, w, c) = random_cc_triple(r, 2);
        match geometry::triple_length_bound_check(&u, &v, &w, c, 0.0) {
            Ok(ok) => triple.record(ok, || format!("{u} {v} {w} c={c}")),
            Err(_) => triple.skipped += 1,
        }

        let g = random_word(r, 2, 1, 8);
        let (s, t) = (r.gen_range(1..=10), r.gen_range(1..=10));
        let mu = ctx
            .mu(&Magnitude::int(g.len() as u64))
            .expect("free")
            .value
            .to_u64()
            .expect("small");
        power.record(
            geometry::power_defect_check(&g, s, t, mu).unwrap_or(false),
            || format!("{g} {s} {t}"),
        );
    }
    vec![rect, chain, triple, power]
}

fn conjugacy_suite(r: &mut ChaCha8Rng, samples: u64) -> Vec<SuiteReport> {
    let mut forward = SuiteReport::new("criterion-forward");
    let mut certified = SuiteReport::new("certificates");
    let mut decompositions = SuiteReport::new("decompositions");
    let ctx = BoundContext::free(2);
    for _ in 0..samples {
        let rank = r.gen_range(2..=3);
        let n = r.gen_range(1..=3);
        let (tp, _) = random_uniform_pair(r, rank, n, 6, 4);
        let pass = word_criterion(&tp, 3).map(|c| c.passed()).unwrap_or(false);
        forward.record(pass, || format!("{:?} {:?}", tp.left(), tp.right()));
        let cp = random_componentwise_pair(r, 2, 2, 4, 3);
        if let Some(g) = uniform_conjugator(&cp) {
            certified.record(cp.verifies(&g), || {
                format!("{:?} {:?} {g}", cp.left(), cp.right())
            });
        } else {
            certified.record(true, String::new);
        }
        let (z, w, b) = (
            random_word(r, 2, 0, 5),
            random_word(r, 2, 0, 3),
            random_word(r, 2, 1, 4),
        );
        let k = r.gen_range(0..=6u64);
        let lb = Magnitude::int(b.len() as u64);
        let c1 = ctx
            .cancellation_c(CancellationMode::Easy1, &lb, &Magnitude::zero())
            .expect("free");
        let c2 = ctx
            .cancellation_c(CancellationMode::Circ, &lb, &Magnitude::int(w.len() as u64))
            .expect("free");
        let (c1, c2) = (
            c1.value.to_u64().expect("small") as f64,
            c2.value.to_u64().expect("small") as f64,
        );
        let x = geometry::conjugate_power_decompose(&z, &b).expect("b != 1");
        let (y, l) = geometry::conjugate_shift_decompose(&z, &w, &b, k).expect("b != 1");
        let ok = geometry::verify_power_decomposition(&z, &b, &x, c1, 10)
            && geometry::verify_shift_decomposition(&z, &w, &b, k, &y, l, c2);
        decompositions.record(ok, || format!("z={z} w={w} b={b} k={k}"));
    }
    vec![forward, certified, decompositions]
}

fn whitehead_suite(r: &mut ChaCha8Rng, samples: u64) -> Vec<SuiteReport> {
    let auts = all_whitehead_auts(2).expect("rank 2");
    let mut round = SuiteReport::new("inverse-round-trip");
    let mut mono = SuiteReport::new("minimize-monotone");
    for _ in 0..samples {
        let w = random_word(r, 2, 0, 10);
        let a = auts.choose(r).expect("nonempty");
        let back = a
            .inverse()
            .apply(&a.apply(&w, 2).expect("rank"), 2)
            .expect("rank");
        round.record(back == w, || format!("{a} on {w}"));
        let t: Vec<Word> = (0..r.gen_range(1..=2))
            .map(|_| random_word(r, 2, 1, 6))
            .collect();
        let before: usize = t.iter().map(Word::cyclic_length).sum();
        let (m, seq) = minimize(&t, 2).expect("rank 2");
        let again = minimize(&t, 2).expect("rank 2");
        let after: usize = m.iter().map(Word::len).sum();
        mono.record(after <= before && again.1 == seq, || format!("{t:?}"));
    }
    vec![round, mono]
}

fn bounds_suite(r: &mut ChaCha8Rng, samples: u64) -> Vec<SuiteReport> {
    let mut ident = SuiteReport::new("constant-identities");
    let mut mono = SuiteReport::new("constant-monotonicity");
    for _ in 0..samples.min(200) {
        let delta = Magnitude::ratio(r.gen_range(0..4), r.gen_range(1..3));
        let s = r.gen_range(1..=4);
        let ctx = BoundContext::new(delta.as_exact().expect("exact").clone(), s).expect("valid");
        let n = r.gen_range(1..=12);
        let len = Magnitude::int(n);
        let rc = ctx.r_const(&len).expect("ok").value.clone();
        let mu = ctx.mu(&len).expect("ok").value.clone();
        let f1 = ctx.f1(&len).expect("ok").value.clone();
        let f2 = ctx.f2(&len).expect("ok").value.clone();
        let hb = ctx.hbar(&len).expect("ok").value.clone();
        let rhs = f1
            .half()
            .add(&f2.half())
            .add(&rc.mul_int(2))
            .add(&ctx.delta().mul_int(21))
            .add_int(1);
        let ok = f1 == rc.mul_int(4) && f2 == rc.mul_int(2).add(&mu.mul_int(2)) && hb == rhs;
        ident.record(ok, || format!("delta={} s={s} n={n}", ctx.delta()));
        let next = Magnitude::int(n + 1);
        let up = ctx.hbar(&next).expect("ok").value.clone() >= hb
            && ctx.mu(&next).expect("ok").value.clone() >= mu
            && ctx.r_const(&next).expect("ok").value.clone() >= rc;
        mono.record(up, || format!("delta={} s={s} n={n}", ctx.delta()));
    }
    vec![ident, mono]
}
