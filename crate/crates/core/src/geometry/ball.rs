//! Balls in Cayley graphs and thin-triangle estimates.

use std::collections::HashMap;

use num_rational::Rational64;

use super::dehn::Presentation;
use super::{GeometryError, Metric};
use crate::word::{Letter, Word};

const DEFAULT_GUARD_MB: u64 = 2048;
const GEODESIC_CAP: usize = 64;

/// Memory limit for ball construction, from `UNICONJ_GUARD_MB`.
pub fn guard_megabytes() -> u64 {
    std::env::var("UNICONJ_GUARD_MB")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_GUARD_MB)
}

/// The ball of radius `radius` around 1 in the Cayley graph.
///
/// Vertices are represented by their shortlex-least geodesic words, which
/// is what breadth-first search in shortlex order discovers first.
#[derive(Debug, Clone)]
pub struct BallGraph {
    presentation: Presentation,
    radius: usize,
    reps: Vec<Word>,
    dist: Vec<u32>,
    /// `neighbors[v][key]` is the vertex `v * letter(key)`, when it lies in the ball.
    neighbors: Vec<Vec<Option<u32>>>,
    index: HashMap<Vec<i64>, Vec<u32>>,
    lattice: Vec<(usize, Vec<i64>)>,
}

/// Result of a thin-triangle scan.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaEstimate {
    pub delta: Rational64,
    pub triangles: u64,
    /// Some pair had more than 64 geodesics; only the first 64 were used.
    pub sampled: bool,
    /// Some distance could not be resolved inside the ball.
    pub exceeded: bool,
}

fn bytes_per_vertex(radius: usize, rank: usize) -> u64 {
    (radius * 4 + rank * 16 + 128) as u64
}

impl BallGraph {
    pub fn free(rank: usize, radius: usize) -> Result<Self, GeometryError> {
        Self::build(&Presentation::free(rank), radius)
    }

    pub fn build(presentation: &Presentation, radius: usize) -> Result<Self, GeometryError> {
        presentation.require_small_cancellation()?;
        let rank = presentation.rank();
        let limit_mb = guard_megabytes();
        let per = bytes_per_vertex(radius, rank);
        let worst = crate::bounds::free_ball_size(radius as u32, rank as u32);
        let worst_mb: u64 = (worst * per / (1u64 << 20)).try_into().unwrap_or(u64::MAX);
        if presentation.is_free() && worst_mb > limit_mb {
            return Err(GeometryError::MemoryGuard {
                radius,
                needed_mb: worst_mb,
                limit_mb,
            });
        }
        let mut lattice = hermite_rows(presentation, rank);
        lattice.sort_by_key(|(c, _)| *c);
        let mut ball = BallGraph {
            presentation: presentation.clone(),
            radius,
            reps: vec![Word::identity()],
            dist: vec![0],
            neighbors: Vec::new(),
            index: HashMap::new(),
            lattice,
        };
        let key = ball.abelian_key(&Word::identity());
        ball.index.insert(key, vec![0]);
        let mut layer_start = 0usize;
        for n in 0..=radius {
            let layer_end = ball.reps.len();
            for v in layer_start..layer_end {
                let mut row = Vec::with_capacity(2 * rank);
                for k in 0..2 * rank as u32 {
                    let x = ball.reps[v].mul(&Word::from_letters([Letter::from_key(k)]));
                    let found = ball.find(&x, n.saturating_sub(1), n + 1);
                    let id = match found {
                        Some(id) => Some(id),
                        None if n < radius => {
                            let id = ball.reps.len() as u32;
                            let key = ball.abelian_key(&x);
                            ball.index.entry(key).or_default().push(id);
                            ball.reps.push(x);
                            ball.dist.push(n as u32 + 1);
                            Some(id)
                        }
                        None => None,
                    };
                    row.push(id);
                }
                ball.neighbors.push(row);
                let used_mb = ball.reps.len() as u64 * per / (1 << 20);
                if used_mb > limit_mb {
                    return Err(GeometryError::MemoryGuard {
                        radius,
                        needed_mb: used_mb,
                        limit_mb,
                    });
                }
            }
            layer_start = layer_end;
        }
        Ok(ball)
    }

    /// Exponent-sum vector reduced modulo the relator lattice.
    fn abelian_key(&self, w: &Word) -> Vec<i64> {
        let mut v = vec![0i64; self.presentation.rank()];
        for l in w.letters() {
            v[l.index() - 1] += if l.is_inverse() { -1 } else { 1 };
        }
        for (col, row) in &self.lattice {
            let q = v[*col].div_euclid(row[*col]);
            if q != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= q * r;
                }
            }
        }
        v
    }

    /// Vertex equal to `w` with distance in `[lo, hi]`.
    fn find(&self, w: &Word, lo: usize, hi: usize) -> Option<u32> {
        let bucket = self.index.get(&self.abelian_key(w))?;
        if self.presentation.is_free() {
            return bucket
                .iter()
                .copied()
                .find(|&id| self.reps[id as usize] == *w);
        }
        bucket.iter().copied().find(|&id| {
            let d = self.dist[id as usize] as usize;
            d >= lo
                && d <= hi
                && self
                    .presentation
                    .is_trivial(&self.reps[id as usize].inverse().mul(w))
        })
    }

    /// The vertex representing `w`, if it lies in the ball.
    pub fn locate(&self, w: &Word) -> Option<u32> {
        if self.presentation.is_free() {
            return if w.len() <= self.radius {
                self.find(w, 0, self.radius)
            } else {
                None
            };
        }
        let short = self.presentation.dehn_unchecked(w);
        self.find(&short, 0, short.len().min(self.radius))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representative(&self, id: u32) -> &Word {
        &self.reps[id as usize]
    }

    pub fn distance(&self, id: u32) -> u32 {
        self.dist[id as usize]
    }

    pub fn neighbors(&self, id: u32) -> &[Option<u32>] {
        &self.neighbors[id as usize]
    }

    pub fn vertices(&self) -> impl Iterator<Item = (u32, &Word, u32)> {
        self.reps
            .iter()
            .zip(&self.dist)
            .enumerate()
            .map(|(i, (w, d))| (i as u32, w, *d))
    }

    /// Number of vertices at each distance `0..=radius`.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius + 1];
        for &d in &self.dist {
            sizes[d as usize] += 1;
        }
        sizes
    }

    /// Geodesic vertex paths from 1 to `target`, at most `GEODESIC_CAP` of them.
    fn geodesics(&self, target: u32) -> (Vec<Vec<u32>>, bool) {
        let mut out = Vec::new();
        let mut path = vec![target];
        let mut truncated = false;
        self.geodesics_rec(&mut path, &mut out, &mut truncated);
        for p in &mut out {
            p.reverse();
        }
        (out, truncated)
    }

    fn geodesics_rec(&self, path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, truncated: &mut bool) {
        let v = *path.last().expect("nonempty");
        let d = self.dist[v as usize];
        if d == 0 {
            if out.len() >= GEODESIC_CAP {
                *truncated = true;
            } else {
                out.push(path.clone());
            }
            return;
        }
        // edges are symmetric, so predecessors are neighbours one layer down
        let mut preds: Vec<u32> = self.neighbors[v as usize]
            .iter()
            .flatten()
            .copied()
            .filter(|&u| self.dist[u as usize] + 1 == d)
            .collect();
        preds.sort_unstable();
        preds.dedup();
        for u in preds {
            if out.len() >= GEODESIC_CAP {
                *truncated = true;
                return;
            }
            path.push(u);
            self.geodesics_rec(path, out, truncated);
            path.pop();
        }
    }

    /// Largest thin-triangle (insize) defect over geodesic triangles `1, A, B` with
    /// `A, B` in the ball of radius `radius / 2`; by left-invariance these are
    /// all triangles whose sides stay in the ball, up to translation.
    pub fn delta_estimate(&self) -> DeltaEstimate {
        let half = self.radius / 2;
        let over = self.radius as u64 + 1;
        let pts: Vec<u32> = (0..self.len() as u32)
            .filter(|&v| self.dist[v as usize] as usize <= half)
            .collect();
        let mut geo_cache: HashMap<u32, Vec<Vec<u32>>> = HashMap::new();
        let mut dist_cache: HashMap<(u32, u32), u64> = HashMap::new();
        let mut est = DeltaEstimate {
            delta: Rational64::from_integer(0),
            triangles: 0,
            sampled: false,
            exceeded: false,
        };
        let mut best = 0u64;

        let id_of = |ball: &BallGraph, w: &Word, est: &mut DeltaEstimate| -> Option<u32> {
            let id = ball.locate(w);
            if id.is_none() {
                est.exceeded = true;
            }
            id
        };

        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i..] {
                est.triangles += 1;
                let verts = [
                    Word::identity(),
                    self.reps[a as usize].clone(),
                    self.reps[b as usize].clone(),
                ];
                for corner in 0..3 {
                    let o = &verts[corner];
                    let p = &verts[(corner + 1) % 3];
                    let q = &verts[(corner + 2) % 3];
                    let oi = o.inverse();
                    let (Some(ep), Some(eq)) = (
                        id_of(self, &oi.mul(p), &mut est),
                        id_of(self, &oi.mul(q), &mut est),
                    ) else {
                        best = best.max(over);
                        continue;
                    };
                    let Some(epq) = id_of(self, &p.inverse().mul(q), &mut est) else {
                        best = best.max(over);
                        continue;
                    };
                    let gp2 =
                        self.dist[ep as usize] + self.dist[eq as usize] - self.dist[epq as usize];
                    let limit = (gp2 / 2) as usize;
                    if limit == 0 {
                        continue;
                    }
                    for target in [ep, eq] {
                        if !geo_cache.contains_key(&target) {
                            let (paths, truncated) = self.geodesics(target);
                            est.sampled |= truncated;
                            geo_cache.insert(target, paths);
                        }
                    }
                    let gps = &geo_cache[&ep];
                    let gqs = &geo_cache[&eq];
                    for gpath in gps {
                        for qpath in gqs {
                            for t in 1..=limit {
                                let (x, y) = (gpath[t], qpath[t]);
                                if x == y {
                                    continue;
                                }
                                let key = (x.min(y), x.max(y));
                                let d = match dist_cache.get(&key) {
                                    Some(d) => *d,
                                    None => {
                                        let w = self.reps[x as usize]
                                            .inverse()
                                            .mul(&self.reps[y as usize]);
                                        let d = match self.locate(&w) {
                                            Some(id) => self.dist[id as usize] as u64,
                                            None => {
                                                est.exceeded = true;
                                                over
                                            }
                                        };
                                        dist_cache.insert(key, d);
                                        d
                                    }
                                };
                                best = best.max(d);
                            }
                        }
                    }
                }
            }
        }
        est.delta = Rational64::from_integer(best as i64);
        est
    }
}

impl Metric for BallGraph {
    fn length(&self, w: &Word) -> Result<u64, GeometryError> {
        self.locate(w)
            .map(|id| self.dist[id as usize] as u64)
            .ok_or_else(|| GeometryError::OutsideBall(w.to_string()))
    }
}

/// Hermite normal form rows `(pivot column, row)` of the relator exponent vectors.
fn hermite_rows(p: &Presentation, rank: usize) -> Vec<(usize, Vec<i64>)> {
    let mut rows: Vec<Vec<i64>> = p
        .relators()
        .iter()
        .map(|r| {
            let mut v = vec![0i64; rank];
            for l in r.letters() {
                v[l.index() - 1] += if l.is_inverse() { -1 } else { 1 };
            }
            v
        })
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    let mut out = Vec::new();
    let mut col = 0;
    while col < rank && !rows.is_empty() {
        // Euclid on column `col` until at most one row is nonzero there.
        loop {
            rows.retain(|r| r.iter().any(|&x| x != 0));
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&i| rows[i][col].abs());
            let piv = nz[0];
            for &i in &nz[1..] {
                let q = rows[i][col] / rows[piv][col];
                let pr = rows[piv].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= q * y;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
            let mut r = rows.remove(i);
            if r[col] < 0 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            out.push((col, r));
        }
        col += 1;
    }
    // reduce entries above each pivot
    for i in 0..out.len() {
        let (c, piv) = out[i].clone();
        for (_, row) in out.iter_mut().take(i) {
            let q = row[c].div_euclid(piv[c]);
            for (x, y) in row.iter_mut().zip(&piv) {
                *x -= q * y;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::free_ball_size;

    #[test]
    fn free_ball_counts() {
        for rank in 1..=3usize {
            for r in 0..=4usize {
                let b = BallGraph::free(rank, r).unwrap();
                assert_eq!(
                    num_bigint::BigUint::from(b.len()),
                    free_ball_size(r as u32, rank as u32)
                );
            }
        }
    }

    #[test]
    fn free_delta_is_zero() {
        for r in 0..=4 {
            let est = BallGraph::free(2, r).unwrap().delta_estimate();
            assert_eq!(est.delta, Rational64::from_integer(0));
            assert!(!est.exceeded);
        }
    }

    #[test]
    fn edges_are_lipschitz() {
        let b = BallGraph::build(&Presentation::surface(2), 3).unwrap();
        for (v, _, d) in b.vertices() {
            for u in b.neighbors(v).iter().flatten() {
                assert!((b.distance(*u) as i64 - d as i64).abs() <= 1);
            }
        }
        assert_eq!(b.layer_sizes()[..3], [1, 8, 56]);
    }

    #[test]
    fn torsion_lattice_keys() {
        // <a, b | a^7> is C'(1/6) with trivial pieces; a^7 = 1 in the quotient
        let p = Presentation::parse("2\naaaaaaa\n").unwrap();
        let b = BallGraph::build(&p, 4).unwrap();
        assert_eq!(
            b.locate(&Word::parse("aaaa", 2).unwrap()),
            b.locate(&Word::parse("AAA", 2).unwrap())
        );
    }

    #[test]
    fn guard_trips() {
        std::env::set_var("UNICONJ_GUARD_MB", "1");
        let res = BallGraph::free(3, 12);
        std::env::remove_var("UNICONJ_GUARD_MB");
        assert!(matches!(res, Err(GeometryError::MemoryGuard { .. })));
    }
}
