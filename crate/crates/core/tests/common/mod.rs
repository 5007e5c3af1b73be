//! Naive free-group arithmetic on signed-integer vectors, written without
//! the library so it can serve as an oracle.
#![allow(dead_code)]

use uniconj::word::{Letter, Word};

pub type V = Vec<i32>;

pub fn red(v: &[i32]) -> V {
    let mut out: V = Vec::with_capacity(v.len());
    for &x in v {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn mul(a: &[i32], b: &[i32]) -> V {
    red(&[a, b].concat())
}

pub fn inv(a: &[i32]) -> V {
    a.iter().rev().map(|x| -x).collect()
}

pub fn pow(a: &[i32], k: i64) -> V {
    let base = if k < 0 { inv(a) } else { a.to_vec() };
    let mut out = V::new();
    for _ in 0..k.unsigned_abs() {
        out = mul(&out, &base);
    }
    out
}

/// `z^-1 a z`.
pub fn conj_by(a: &[i32], z: &[i32]) -> V {
    mul(&mul(&inv(z), a), z)
}

pub fn core(v: &[i32]) -> V {
    let mut v = red(v);
    while v.len() >= 2 && v[0] == -v[v.len() - 1] {
        v = v[1..v.len() - 1].to_vec();
    }
    v
}

/// Least rotation of the cyclic core under plain integer order.
pub fn canon(v: &[i32]) -> V {
    let c = core(v);
    (0..c.len().max(1))
        .map(|i| [&c[i..], &c[..i]].concat())
        .min()
        .unwrap_or_default()
}

pub fn conjugate(a: &[i32], b: &[i32]) -> bool {
    canon(a) == canon(b)
}

/// Every reduced word of length `0..=max` over `rank` generators.
pub fn all_words(rank: i32, max: usize) -> Vec<V> {
    let letters: Vec<i32> = (1..=rank).flat_map(|g| [g, -g]).collect();
    let mut out = vec![V::new()];
    let mut layer = vec![V::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() != Some(&-l) {
                    let mut x = w.clone();
                    x.push(l);
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Apply the endomorphism with generator images `images`.
pub fn subst(images: &[V], v: &[i32]) -> V {
    let mut out = V::new();
    for &x in v {
        let img = &images[(x.unsigned_abs() - 1) as usize];
        out = if x > 0 {
            mul(&out, img)
        } else {
            mul(&out, &inv(img))
        };
    }
    out
}

/// Generator images of every Whitehead automorphism of the given rank.
pub fn whitehead_images(rank: i32) -> Vec<Vec<V>> {
    let mut out = Vec::new();
    // permutations with inversion masks
    let mut perms: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..rank {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (1..=rank)
                    .filter(|g| !p.contains(g))
                    .map(|g| [p.clone(), vec![g]].concat())
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    for p in &perms {
        for mask in 0..(1 << rank) {
            out.push(
                (0..rank as usize)
                    .map(|i| vec![if mask >> i & 1 == 1 { -p[i] } else { p[i] }])
                    .collect(),
            );
        }
    }
    let letters: Vec<i32> = (1..=rank).flat_map(|g| [g, -g]).collect();
    for &a in &letters {
        let others: Vec<i32> = letters
            .iter()
            .copied()
            .filter(|&y| y != a && y != -a)
            .collect();
        for mask in 0..(1u32 << others.len()) {
            let set: Vec<i32> = others
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &y)| y)
                .collect();
            let images: Vec<V> = (1..=rank)
                .map(|x| {
                    if x == a.abs() {
                        return vec![x];
                    }
                    let mut img = V::new();
                    if set.contains(&-x) {
                        img.push(a);
                    }
                    img.push(x);
                    if set.contains(&x) {
                        img.push(-a);
                    }
                    red(&img)
                })
                .collect();
            if images
                .iter()
                .enumerate()
                .any(|(i, w)| w != &vec![i as i32 + 1])
            {
                out.push(images);
            }
        }
    }
    out
}

pub fn v(w: &Word) -> V {
    w.letters().iter().map(|l| l.signed()).collect()
}

pub fn w(v: &[i32]) -> Word {
    Word::from_letters(v.iter().map(|&x| Letter::new(x)))
}

pub fn vs(ws: &[Word]) -> Vec<V> {
    ws.iter().map(v).collect()
}
