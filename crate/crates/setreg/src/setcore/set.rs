use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::extreal::ExtReal;
use super::norm::NormSpec;
use super::scalar::Scalar;
use super::Error;

/// A point of an ambient space: a finite real coordinate vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point<T> {
    pub coords: Vec<T>,
}

impl<T: Scalar> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        debug_assert!(coords.iter().all(|c| c.is_finite()), "point coordinates must be finite");
        Point { coords }
    }

    pub fn scalar(v: T) -> Self {
        Point { coords: vec![v] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn dist(&self, other: &Point<T>, norm: NormSpec) -> T {
        norm.dist(&self.coords, &other.coords)
    }

    /// Total lexicographic order on coordinates; used for deterministic
    /// storage and witness selection.
    pub fn lex_cmp(&self, other: &Point<T>) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.partial_cmp(b) {
                Some(Ordering::Equal) => continue,
                Some(o) => return o,
                None => return Ordering::Equal,
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }
}

impl<T: Scalar> From<Vec<T>> for Point<T> {
    fn from(coords: Vec<T>) -> Self {
        Point::new(coords)
    }
}

/// A finite (possibly empty) collection of distinct points of one ambient
/// space, kept lexicographically sorted.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiniteSet<T> {
    points: Vec<Point<T>>,
}

impl<T: Scalar> FiniteSet<T> {
    pub fn empty() -> Self {
        FiniteSet { points: Vec::new() }
    }

    pub fn new(mut points: Vec<Point<T>>) -> Self {
        points.sort_by(|a, b| a.lex_cmp(b));
        points.dedup_by(|a, b| a.lex_cmp(b) == Ordering::Equal);
        FiniteSet { points }
    }

    pub fn singleton(p: Point<T>) -> Self {
        FiniteSet { points: vec![p] }
    }

    pub fn from_scalars(vals: impl IntoIterator<Item = T>) -> Self {
        FiniteSet::new(vals.into_iter().map(Point::scalar).collect())
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(Point::dim)
    }

    /// Exact-equality membership.
    pub fn contains(&self, p: &Point<T>) -> bool {
        self.points
            .binary_search_by(|q| q.lex_cmp(p))
            .is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point<T>> {
        self.points.iter()
    }

    /// Subset of points within distance `r` of `center`.
    pub fn restrict_ball(&self, center: &Point<T>, r: T, norm: NormSpec) -> FiniteSet<T> {
        FiniteSet {
            points: self
                .points
                .iter()
                .filter(|p| p.dist(center, norm) <= r)
                .cloned()
                .collect(),
        }
    }

    pub fn union(&self, other: &FiniteSet<T>) -> FiniteSet<T> {
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        FiniteSet::new(pts)
    }
}

/// Minimum distance from a point to a finite set; `+∞` for the empty set.
pub fn dist_point_set<T: Scalar>(
    x: &Point<T>,
    set: &FiniteSet<T>,
    norm: NormSpec,
) -> Result<ExtReal<T>, Error> {
    if let Some(d) = set.dim() {
        if d != x.dim() {
            return Err(Error::DimensionMismatch { expected: d, got: x.dim() });
        }
    }
    Ok(dist_point_set_unchecked(x, set, norm))
}

/// `dist_point_set` without the dimension check, for hot loops that have
/// validated dimensions up front.
pub(crate) fn dist_point_set_unchecked<T: Scalar>(
    x: &Point<T>,
    set: &FiniteSet<T>,
    norm: NormSpec,
) -> ExtReal<T> {
    if set.is_empty() {
        return ExtReal::Inf;
    }
    if x.dim() == 1 {
        // Sorted 1-D sets admit a binary-search nearest-neighbor lookup.
        let v = x.coords[0];
        let pts = set.points();
        let idx = pts.partition_point(|p| p.coords[0] < v);
        let mut best = T::infinity();
        if idx < pts.len() {
            best = best.min((pts[idx].coords[0] - v).abs());
        }
        if idx > 0 {
            best = best.min((pts[idx - 1].coords[0] - v).abs());
        }
        return ExtReal::Finite(best);
    }
    ExtReal::min_over(set.iter().map(|p| p.dist(x, norm)))
}

/// Excess `e(A,B) = sup_{a∈A} d(a,B)`, with `e(∅,B) = 0` and
/// `e(A,∅) = +∞` for nonempty `A`.
pub fn excess<T: Scalar>(
    a: &FiniteSet<T>,
    b: &FiniteSet<T>,
    norm: NormSpec,
) -> Result<ExtReal<T>, Error> {
    match (a.dim(), b.dim()) {
        (Some(da), Some(db)) if da != db => {
            return Err(Error::DimensionMismatch { expected: da, got: db })
        }
        _ => {}
    }
    Ok(excess_unchecked(a, b, norm))
}

pub(crate) fn excess_unchecked<T: Scalar>(
    a: &FiniteSet<T>,
    b: &FiniteSet<T>,
    norm: NormSpec,
) -> ExtReal<T> {
    let mut sup = ExtReal::zero();
    for p in a.iter() {
        sup = sup.max(dist_point_set_unchecked(p, b, norm));
        if sup.is_inf() {
            break;
        }
    }
    sup
}

/// Symmetric excess (Hausdorff distance) between two nonempty sets.
pub(crate) fn hausdorff<T: Scalar>(a: &FiniteSet<T>, b: &FiniteSet<T>, norm: NormSpec) -> ExtReal<T> {
    excess_unchecked(a, b, norm).max(excess_unchecked(b, a, norm))
}

/// Axis-aligned truncation box for codomain samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window<T> {
    pub lo: Vec<T>,
    pub hi: Vec<T>,
}

impl<T: Scalar> Window<T> {
    pub fn new(lo: Vec<T>, hi: Vec<T>) -> Result<Self, Error> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::DegenerateWindow);
        }
        Ok(Window { lo, hi })
    }

    /// Symmetric 1-D window `[-r, r]`.
    pub fn symmetric_1d(r: T) -> Self {
        Window { lo: vec![-r], hi: vec![r] }
    }

    pub fn symmetric(r: T, dim: usize) -> Self {
        Window { lo: vec![-r; dim], hi: vec![r; dim] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        p.dim() == self.dim()
            && p.coords
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(c, (l, h))| *c >= *l && *c <= *h)
    }

    /// Smallest window containing both. Used when image sets are combined.
    pub fn hull(&self, other: &Window<T>) -> Window<T> {
        Window {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| a.min(*b)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| a.max(*b)).collect(),
        }
    }

    /// Minkowski sum of windows: componentwise interval sum.
    pub fn minkowski(&self, other: &Window<T>) -> Window<T> {
        Window {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| *a + *b).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| *a + *b).collect(),
        }
    }
}

/// Regular 1-D lattice `{k·h}` intersected with `[lo, hi]`, anchored at 0.
pub fn lattice_1d<T: Scalar>(lo: T, hi: T, h: T) -> Vec<T> {
    debug_assert!(h > T::zero());
    let kmin = (lo / h).ceil();
    let kmax = (hi / h).floor();
    let mut out = Vec::new();
    let mut k = kmin;
    while k <= kmax {
        out.push(k * h);
        k = k + T::one();
    }
    out
}

/// Lattice points of a window at step `h` per axis (anchored at 0).
pub fn lattice_nd<T: Scalar>(window: &Window<T>, h: T) -> Vec<Point<T>> {
    let axes: Vec<Vec<T>> = window
        .lo
        .iter()
        .zip(&window.hi)
        .map(|(&l, &u)| lattice_1d(l, u, h))
        .collect();
    let mut out = vec![Vec::new()];
    for axis in &axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for partial in &out {
            for &v in axis {
                let mut p = partial.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(Point::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(vals: &[f64]) -> FiniteSet<f64> {
        FiniteSet::from_scalars(vals.iter().copied())
    }

    #[test]
    fn dist_examples() {
        // x=0, A={1,2} -> 1
        let d = dist_point_set(&Point::scalar(0.0), &s(&[1.0, 2.0]), NormSpec::Max).unwrap();
        assert_eq!(d, ExtReal::Finite(1.0));
        // empty set -> +inf
        let d = dist_point_set(&Point::scalar(0.0), &FiniteSet::empty(), NormSpec::Max).unwrap();
        assert!(d.is_inf());
        // additive product metric on a 2-D point treated with the sum norm
        let d = dist_point_set(
            &Point::new(vec![0.0, 0.0]),
            &FiniteSet::singleton(Point::new(vec![1.0, 1.0])),
            NormSpec::Sum,
        )
        .unwrap();
        assert_eq!(d, ExtReal::Finite(2.0));
    }

    #[test]
    fn dist_zero_iff_member() {
        let a = s(&[0.25, 0.5, 1.0]);
        for p in a.iter() {
            assert_eq!(dist_point_set(p, &a, NormSpec::Max).unwrap(), ExtReal::zero());
        }
        let q = Point::scalar(0.3);
        assert!(!a.contains(&q));
        assert!(dist_point_set(&q, &a, NormSpec::Max).unwrap() > ExtReal::zero());
    }

    #[test]
    fn excess_examples() {
        assert_eq!(excess(&s(&[0.0, 2.0]), &s(&[0.0]), NormSpec::Max).unwrap(), ExtReal::Finite(2.0));
        assert!(excess(&s(&[0.5]), &FiniteSet::empty(), NormSpec::Max).unwrap().is_inf());
        // A ⊆ B -> 0
        assert_eq!(excess(&s(&[0.5]), &s(&[0.5, 1.0]), NormSpec::Max).unwrap(), ExtReal::zero());
        // e(∅, B) = 0 by convention
        assert_eq!(excess(&FiniteSet::empty(), &s(&[3.0]), NormSpec::Max).unwrap(), ExtReal::zero());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = FiniteSet::singleton(Point::new(vec![0.0, 0.0]));
        assert!(dist_point_set(&Point::scalar(0.0), &a, NormSpec::Max).is_err());
    }

    #[test]
    fn window_validation() {
        assert!(Window::new(vec![0.0], vec![-1.0]).is_err());
        let w = Window::new(vec![-1.0], vec![1.0]).unwrap();
        assert!(w.contains(&Point::scalar(1.0)));
        assert!(!w.contains(&Point::scalar(1.5)));
    }

    #[test]
    fn lattice_anchored_at_zero() {
        assert_eq!(lattice_1d(-1.0, 1.0, 1.0), vec![-1.0, 0.0, 1.0]);
        assert_eq!(lattice_1d(-0.25, 0.6, 0.25), vec![-0.25, 0.0, 0.25, 0.5]);
    }
}
