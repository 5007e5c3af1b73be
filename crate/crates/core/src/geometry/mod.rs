//! Metric layer: c-products, the inequality checkers, norms and axes in free
//! groups, the two cancellation-controlled decompositions, and a Cayley-ball
//! explorer for small-cancellation presentations.

mod ball;
mod dehn;

pub use ball::{guard_megabytes, BallGraph, DeltaEstimate};
pub use dehn::{Presentation, PresentationError};

use num_rational::Rational64;

use crate::word::{is_conjugate, Word, WordError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("element {0} is outside the explored ball")]
    OutsideBall(String),
    #[error("search radius {given} is too small to certify; need at least {needed}")]
    RadiusTooSmall { needed: usize, given: usize },
    #[error("ball of radius {radius} needs about {needed_mb} MB, above the {limit_mb} MB guard")]
    MemoryGuard {
        radius: usize,
        needed_mb: u64,
        limit_mb: u64,
    },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Word metric on a group given by generators.
pub trait Metric {
    /// Geodesic length of the element represented by `w`.
    fn length(&self, w: &Word) -> Result<u64, GeometryError>;

    fn dist(&self, x: &Word, y: &Word) -> Result<u64, GeometryError> {
        self.length(&x.inverse().mul(y))
    }

    /// `(|u| + |v| - |uv|) / 2`.
    fn cancellation(&self, u: &Word, v: &Word) -> Result<f64, GeometryError> {
        let (a, b, ab) = (self.length(u)?, self.length(v)?, self.length(&u.mul(v))?);
        Ok((a as f64 + b as f64 - ab as f64) / 2.0)
    }
}

/// The free group on the standard basis; freely reduced words are geodesics.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeMetric;

impl Metric for FreeMetric {
    fn length(&self, w: &Word) -> Result<u64, GeometryError> {
        Ok(w.len() as u64)
    }
}

/// `uv = u ._c v` in the free group.
pub fn c_product_check(u: &Word, v: &Word, c: f64) -> bool {
    (u.cancellation_with(v) as f64) < c
}

/// `|uvw| > |u| + |v| + |w| - (4c + 2 delta)` for a triple of c-products with a long middle.
pub fn triple_length_bound_check(
    u: &Word,
    v: &Word,
    w: &Word,
    c: f64,
    delta: f64,
) -> Result<bool, GeometryError> {
    triple_length_bound_check_in(&FreeMetric, u, v, w, c, delta)
}

pub fn triple_length_bound_check_in<M: Metric>(
    metric: &M,
    u: &Word,
    v: &Word,
    w: &Word,
    c: f64,
    delta: f64,
) -> Result<bool, GeometryError> {
    if metric.cancellation(u, v)? >= c || metric.cancellation(v, w)? >= c {
        return Err(GeometryError::Precondition(
            "the adjacent products are not c-products".into(),
        ));
    }
    let lv = metric.length(v)? as f64;
    if lv <= 2.0 * c + delta {
        return Err(GeometryError::Precondition(format!(
            "|v| = {lv} is not above 2c + delta"
        )));
    }
    let lhs = metric.length(&Word::product([u, v, w]))? as f64;
    let rhs = metric.length(u)? as f64 + lv + metric.length(w)? as f64 - (4.0 * c + 2.0 * delta);
    Ok(lhs > rhs)
}

/// Lower bound for `|A1 An|` along a chain of nearly-geodesic corners.
pub fn chain_bound_check(points: &[Word], delta: f64) -> Result<bool, GeometryError> {
    chain_bound_check_in(&FreeMetric, points, delta)
}

pub fn chain_bound_check_in<M: Metric>(
    metric: &M,
    points: &[Word],
    delta: f64,
) -> Result<bool, GeometryError> {
    let n = points.len();
    if n < 3 {
        return Err(GeometryError::Precondition(
            "need at least three points".into(),
        ));
    }
    let d = |i: usize, j: usize| metric.dist(&points[i], &points[j]).map(|v| v as f64);
    // 1-based indices in the conditions map to i-1 here.
    for i in 1..n - 1 {
        if d(i - 1, i + 1)? < d(i - 1, i)? + d(i, i + 1)? - 2.0 * delta {
            return Err(GeometryError::Precondition(format!(
                "corner {} is not 2 delta-geodesic",
                i + 1
            )));
        }
    }
    let bound = (2 * n - 3) as f64 * delta;
    for i in 2..n - 1 {
        if d(i - 1, i)? <= bound {
            return Err(GeometryError::Precondition(format!(
                "segment {i} is not longer than (2n-3) delta"
            )));
        }
    }
    let mut sum = 0.0;
    for i in 0..n - 1 {
        sum += d(i, i + 1)?;
    }
    Ok(d(0, n - 1)? >= sum - (4 * n - 10) as f64 * delta)
}

/// `|AC| + |BD| <= max(|BC| + |AD|, |AB| + |CD|) + 2 delta`.
pub fn rectangle_check(a: &Word, b: &Word, c: &Word, d: &Word, delta: f64) -> bool {
    rectangle_check_in(&FreeMetric, a, b, c, d, delta).expect("free metric is total")
}

pub fn rectangle_check_in<M: Metric>(
    metric: &M,
    a: &Word,
    b: &Word,
    c: &Word,
    d: &Word,
    delta: f64,
) -> Result<bool, GeometryError> {
    let dist = |x: &Word, y: &Word| metric.dist(x, y).map(|v| v as f64);
    let lhs = dist(a, c)? + dist(b, d)?;
    let rhs = (dist(b, c)? + dist(a, d)?).max(dist(a, b)? + dist(c, d)?) + 2.0 * delta;
    Ok(lhs <= rhs)
}

/// `|g^(s+t)| >= |g^s| + |g^t| - 2 mu`.
pub fn power_defect_check(g: &Word, s: u64, t: u64, mu: u64) -> Result<bool, GeometryError> {
    if g.is_identity() {
        return Err(GeometryError::Precondition("g must be nontrivial".into()));
    }
    let len = |k: u64| g.pow(k as i64).len() as i64;
    Ok(len(s + t) >= len(s) + len(t) - 2 * mu as i64)
}

/// Minimal displacement of `g`: the length of its cyclic core.
pub fn norm(g: &Word) -> usize {
    g.cyclic_length()
}

pub fn is_on_axis(g: &Word, x: &Word) -> bool {
    g.conjugate_by(x).len() == norm(g)
}

/// Vertices of the axis of `g` lying in the ball of radius `radius`.
///
/// With `g = u c u^-1`, `c` cyclically reduced, the axis is the line
/// `u c^m p` over `m` in Z and proper prefixes `p` of `c`.
pub fn axis_vertices(g: &Word, radius: usize) -> Vec<Word> {
    if g.is_identity() {
        return Vec::new();
    }
    let cw = g.cyclic_reduce();
    let (u, c) = (&cw.witness, &cw.core);
    let span = ((radius + u.len()) / c.len() + 2) as i64;
    let mut out = Vec::new();
    for m in -span..=span {
        let base = u.mul(&c.pow(m));
        for p in 0..c.len() {
            let v = base.mul(&Word::from_letters(c.letters()[..p].iter().copied()));
            if v.len() <= radius {
                out.push(v);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Distance between the vertex sets of the axes of `g` and `h`.
///
/// The bridge between two lines of the tree lies within `|g| + |h|` of the
/// origin, so smaller radii are refused.
pub fn axes_distance(
    g: &Word,
    h: &Word,
    search_radius: usize,
) -> Result<Rational64, GeometryError> {
    if g.is_identity() || h.is_identity() {
        return Err(GeometryError::Precondition(
            "both elements must be nontrivial".into(),
        ));
    }
    let needed = g.len() + h.len();
    if search_radius < needed {
        return Err(GeometryError::RadiusTooSmall {
            needed,
            given: search_radius,
        });
    }
    let ag = axis_vertices(g, search_radius);
    let ah = axis_vertices(h, search_radius);
    let best = ag
        .iter()
        .flat_map(|x| ah.iter().map(move |y| x.inverse().mul(y).len()))
        .min()
        .expect("axes meet the ball");
    Ok(Rational64::from_integer(best as i64))
}

/// The tree bound `max(0, (||gh|| - ||g|| - ||h||) / 2)` on the axes distance.
pub fn axes_bound(g: &Word, h: &Word) -> Rational64 {
    let v = Rational64::new(norm(&g.mul(h)) as i64 - norm(g) as i64 - norm(h) as i64, 2);
    v.max(Rational64::from_integer(0))
}

/// `x` with `z^-1 b^k z = x^-1 b^k x` for all `k`, where `x^-1` is a shortest
/// element of `z^-1 <b>` (earliest exponent in the order 0, 1, -1, 2, ...).
pub fn conjugate_power_decompose(z: &Word, b: &Word) -> Result<Word, GeometryError> {
    if b.is_identity() {
        return Err(GeometryError::Precondition("b must be nontrivial".into()));
    }
    // |b^n z| >= |n| - |z|, so exponents beyond 2|z| + 1 never win.
    let bound = 2 * z.len() as i64 + 1;
    let mut best = z.clone();
    for n in (1..=bound).flat_map(|n| [n, -n]) {
        let cand = b.pow(n).mul(z);
        if cand.len() < best.len() {
            best = cand;
        }
    }
    Ok(best)
}

/// Reverify a power decomposition on `|k| <= horizon` with cancellation at most `c`.
pub fn verify_power_decomposition(z: &Word, b: &Word, x: &Word, c: f64, horizon: i64) -> bool {
    let xi = x.inverse();
    (-horizon..=horizon).all(|k| {
        let bk = b.pow(k);
        bk.conjugate_by(z) == bk.conjugate_by(x)
            && xi.cancellation_with(&bk) as f64 <= c
            && bk.cancellation_with(x) as f64 <= c
    })
}

/// `(x, l)` with `z^-1 w b^k z = x^-1 (b^(k-l) w b^l) x` and `|x|` minimal
/// (smallest `l` among ties).
pub fn conjugate_shift_decompose(
    z: &Word,
    w: &Word,
    b: &Word,
    k: u64,
) -> Result<(Word, u64), GeometryError> {
    if b.is_identity() {
        return Err(GeometryError::Precondition("b must be nontrivial".into()));
    }
    let target = w.mul(&b.pow(k as i64)).conjugate_by(z);
    let mut best: Option<(Word, u64)> = None;
    for l in 0..=k {
        let middle = Word::product([&b.pow((k - l) as i64), w, &b.pow(l as i64)]);
        let x = is_conjugate(&middle, &target).expect("conjugate by construction");
        if best.as_ref().map_or(true, |(bx, _)| x.len() < bx.len()) {
            best = Some((x, l));
        }
    }
    Ok(best.expect("k + 1 candidates"))
}

/// Reverify a shift decomposition: the equality and both strict c-products.
pub fn verify_shift_decomposition(
    z: &Word,
    w: &Word,
    b: &Word,
    k: u64,
    x: &Word,
    l: u64,
    c: f64,
) -> bool {
    if l > k {
        return false;
    }
    let middle = Word::product([&b.pow((k - l) as i64), w, &b.pow(l as i64)]);
    let target = w.mul(&b.pow(k as i64)).conjugate_by(z);
    middle.conjugate_by(x) == target
        && c_product_check(&x.inverse(), &middle, c)
        && c_product_check(&middle, x, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 4).unwrap()
    }

    #[test]
    fn c_products() {
        assert!(c_product_check(&w("ab"), &w("ba"), 1.0));
        assert!(!c_product_check(&w("ab"), &w("BA"), 1.0));
        assert!(c_product_check(&w("ab"), &w("Ba"), 2.0));
        assert!(!c_product_check(&w("ab"), &w("Ba"), 1.0));
    }

    #[test]
    fn triple_bound() {
        // |v| = 2c exactly is excluded by the strict precondition
        assert!(triple_length_bound_check(&w("a"), &w("bb"), &w("a"), 1.0, 0.0).is_err());
        assert_eq!(
            triple_length_bound_check(&w("a"), &w("bb"), &w("a"), 0.5, 0.0),
            Ok(true)
        );
        assert_eq!(
            triple_length_bound_check(&w("a"), &w("bbb"), &w("a"), 1.0, 0.0),
            Ok(true)
        );
        assert!(matches!(
            triple_length_bound_check(&w("a"), &w("b"), &w("a"), 1.0, 0.0),
            Err(GeometryError::Precondition(_))
        ));
    }

    #[test]
    fn rectangles_and_chains() {
        let one = Word::identity();
        assert!(rectangle_check(&one, &w("a"), &w("ab"), &w("b"), 0.0));
        assert!(rectangle_check(&w("a"), &w("a"), &w("a"), &w("a"), 0.0));
        let pts = [one.clone(), w("ab"), w("abab"), w("ababa")];
        assert_eq!(chain_bound_check(&pts, 0.0), Ok(true));
        let bad = [one.clone(), w("a"), w("a"), one];
        assert!(chain_bound_check(&bad, 0.0).is_err());
    }

    #[test]
    fn norms_and_axes() {
        assert_eq!(norm(&w("abA")), 1);
        assert_eq!(norm(&Word::identity()), 0);
        assert!(!is_on_axis(&w("b"), &w("a")));
        assert!(is_on_axis(&w("abA"), &w("a")));
        assert_eq!(
            axes_distance(&w("a"), &w("b"), 4).unwrap(),
            Rational64::from_integer(0)
        );
        assert_eq!(
            axes_distance(&w("a"), &w("baB"), 4).unwrap(),
            Rational64::from_integer(1)
        );
        assert_eq!(axes_bound(&w("a"), &w("baB")), Rational64::from_integer(1));
        assert_eq!(
            axes_distance(&w("a"), &w("a"), 2).unwrap(),
            Rational64::from_integer(0)
        );
        assert!(matches!(
            axes_distance(&w("a"), &w("baB"), 2),
            Err(GeometryError::RadiusTooSmall { .. })
        ));
    }

    #[test]
    fn axis_vertices_match_ball_filter() {
        for g in crate::word::ReducedWords::new(2, 1, 4) {
            let direct: Vec<Word> = crate::word::ReducedWords::new(2, 0, 5)
                .filter(|x| is_on_axis(&g, x))
                .collect();
            let mut direct = direct;
            direct.sort();
            assert_eq!(axis_vertices(&g, 5), direct, "g = {g}");
        }
    }

    #[test]
    fn power_defect() {
        assert_eq!(power_defect_check(&w("abA"), 1, 1, 1), Ok(true));
        assert_eq!(power_defect_check(&w("abA"), 1, 1, 0), Ok(false));
    }

    #[test]
    fn power_decomposition_examples() {
        let x = conjugate_power_decompose(&w("ab"), &w("b")).unwrap();
        assert_eq!(x, w("ab"));
        assert!(verify_power_decomposition(&w("ab"), &w("b"), &x, 0.0, 10));
        let x = conjugate_power_decompose(&w("bbb"), &w("b")).unwrap();
        assert!(x.is_identity());
        let x = conjugate_power_decompose(&w("a"), &w("bab")).unwrap();
        assert_eq!(x, w("a"));
    }

    #[test]
    fn shift_decomposition_examples() {
        let (x, l) = conjugate_shift_decompose(&w("ab"), &Word::identity(), &w("b"), 3).unwrap();
        assert_eq!(l, 0);
        assert!(verify_shift_decomposition(
            &w("ab"),
            &Word::identity(),
            &w("b"),
            3,
            &x,
            l,
            1.0
        ));
        let (x, l) = conjugate_shift_decompose(&Word::identity(), &w("ab"), &w("b"), 2).unwrap();
        // w b^k itself is the l = k decomposition
        assert!(x.is_identity() && l == 2);
    }
}
