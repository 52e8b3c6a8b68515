use std::sync::Arc;

use super::multifunction::{FiniteMultifunction, MfMeta};
use super::norm::NormSpec;
use super::scalar::Scalar;
use super::set::{FiniteSet, Point, Window};
use super::Error;

/// One piece of an analytic image description.
///
/// Interval bounds may be `±∞`; the window truncates them before sampling
/// (a truncated open endpoint becomes closed at the window edge).
#[derive(Clone, Debug)]
pub enum SetPiece<T> {
    /// A single exact point, kept off-lattice as given.
    Singleton(Vec<T>),
    /// Explicit finite point list, kept exact.
    Points(Vec<Vec<T>>),
    /// 1-D interval with open-endpoint markers.
    Interval { lo: T, hi: T, open_lo: bool, open_hi: bool },
    /// Closed axis-aligned box (n-D).
    ClosedBox { lo: Vec<T>, hi: Vec<T> },
}

impl<T: Scalar> SetPiece<T> {
    pub fn closed_interval(lo: T, hi: T) -> Self {
        SetPiece::Interval { lo, hi, open_lo: false, open_hi: false }
    }

    pub fn all_reals() -> Self {
        SetPiece::Interval {
            lo: T::neg_infinity(),
            hi: T::infinity(),
            open_lo: false,
            open_hi: false,
        }
    }
}

/// A finite union of pieces; an empty union is the empty set.
#[derive(Clone, Debug, Default)]
pub struct SetDescription<T> {
    pub pieces: Vec<SetPiece<T>>,
}

impl<T: Scalar> SetDescription<T> {
    pub fn empty() -> Self {
        SetDescription { pieces: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn of(pieces: Vec<SetPiece<T>>) -> Self {
        SetDescription { pieces }
    }

    pub fn singleton(coords: Vec<T>) -> Self {
        SetDescription { pieces: vec![SetPiece::Singleton(coords)] }
    }
}

/// Deterministic evaluation rule `x ↦ set description`.
#[derive(Clone)]
pub struct ImageOracle<T> {
    eval: Arc<dyn Fn(&[T]) -> SetDescription<T> + Send + Sync>,
}

impl<T: Scalar> ImageOracle<T> {
    pub fn new(eval: impl Fn(&[T]) -> SetDescription<T> + Send + Sync + 'static) -> Self {
        ImageOracle { eval: Arc::new(eval) }
    }

    pub fn describe(&self, x: &[T]) -> SetDescription<T> {
        (self.eval)(x)
    }

    /// Sampled image at one point: description intersected with the window
    /// and discretized at step `h_y`.
    pub fn sample_at(&self, x: &[T], window: &Window<T>, h_y: T) -> FiniteSet<T> {
        sample_description(&self.describe(x), window, h_y)
    }
}

impl<T> std::fmt::Debug for ImageOracle<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("ImageOracle")
    }
}

/// Discretize a set description inside `window` at codomain step `h_y`.
///
/// Closed endpoints are always included. An open endpoint is excluded and
/// replaced by the nearest interior grid node at offset `h_y`; singletons
/// and explicit point lists are kept exact (no re-gridding).
pub fn sample_description<T: Scalar>(
    desc: &SetDescription<T>,
    window: &Window<T>,
    h_y: T,
) -> FiniteSet<T> {
    let mut pts: Vec<Point<T>> = Vec::new();
    for piece in &desc.pieces {
        match piece {
            SetPiece::Singleton(c) => {
                let p = Point::new(c.clone());
                if window.contains(&p) {
                    pts.push(p);
                }
            }
            SetPiece::Points(list) => {
                for c in list {
                    let p = Point::new(c.clone());
                    if window.contains(&p) {
                        pts.push(p);
                    }
                }
            }
            SetPiece::Interval { lo, hi, open_lo, open_hi } => {
                debug_assert_eq!(window.dim(), 1, "Interval pieces are 1-D");
                let (mut lo, mut hi, mut open_lo, mut open_hi) = (*lo, *hi, *open_lo, *open_hi);
                if lo < window.lo[0] {
                    lo = window.lo[0];
                    open_lo = false;
                }
                if hi > window.hi[0] {
                    hi = window.hi[0];
                    open_hi = false;
                }
                for v in sample_axis(lo, hi, open_lo, open_hi, h_y) {
                    pts.push(Point::scalar(v));
                }
            }
            SetPiece::ClosedBox { lo, hi } => {
                let lo: Vec<T> = lo
                    .iter()
                    .zip(&window.lo)
                    .map(|(&a, &w)| a.max(w))
                    .collect();
                let hi: Vec<T> = hi
                    .iter()
                    .zip(&window.hi)
                    .map(|(&a, &w)| a.min(w))
                    .collect();
                if lo.iter().zip(&hi).any(|(a, b)| a > b) {
                    continue;
                }
                let axes: Vec<Vec<T>> = lo
                    .iter()
                    .zip(&hi)
                    .map(|(&a, &b)| sample_axis(a, b, false, false, h_y))
                    .collect();
                let mut partials = vec![Vec::new()];
                for axis in &axes {
                    let mut next = Vec::with_capacity(partials.len() * axis.len());
                    for partial in &partials {
                        for &v in axis {
                            let mut p = partial.clone();
                            p.push(v);
                            next.push(p);
                        }
                    }
                    partials = next;
                }
                pts.extend(partials.into_iter().map(Point::new));
            }
        }
    }
    FiniteSet::new(pts)
}

/// 1-D discretization anchored at the lower endpoint.
fn sample_axis<T: Scalar>(lo: T, hi: T, open_lo: bool, open_hi: bool, h: T) -> Vec<T> {
    if lo > hi || (lo == hi && (open_lo || open_hi)) {
        return Vec::new();
    }
    let guard = h * T::of(1e-9);
    let start = if open_lo { lo + h } else { lo };
    let mut out = Vec::new();
    let mut k = T::zero();
    loop {
        let v = start + k * h;
        if open_hi {
            if v >= hi - guard {
                break;
            }
        } else if v > hi + guard {
            break;
        }
        out.push(v.min(hi));
        k = k + T::one();
    }
    if !open_hi && out.last().map(|&v| v != hi).unwrap_or(true) && hi >= start {
        out.push(hi);
    }
    out
}

/// Discretize an image oracle over an explicit domain grid.
pub fn sample_multifunction<T: Scalar>(
    oracle: &ImageOracle<T>,
    grid: &[Point<T>],
    window: &Window<T>,
    h_x: T,
    h_y: T,
    x_norm: NormSpec,
    y_norm: NormSpec,
) -> Result<FiniteMultifunction<T>, Error> {
    if h_y <= T::zero() {
        return Err(Error::InvalidParameter("h_y must be positive".into()));
    }
    if grid.is_empty() {
        return Err(Error::InvalidGrid("empty domain grid".into()));
    }
    let x_dim = grid[0].dim();
    let images: Vec<FiniteSet<T>> = grid
        .iter()
        .map(|x| oracle.sample_at(&x.coords, window, h_y))
        .collect();
    FiniteMultifunction::new(
        grid.to_vec(),
        images,
        MfMeta {
            h_x,
            h_y,
            window: window.clone(),
            x_norm,
            y_norm,
            x_dim,
            y_dim: window.dim(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_1d(piece: SetPiece<f64>, win: f64, h: f64) -> Vec<f64> {
        let desc = SetDescription::of(vec![piece]);
        sample_description(&desc, &Window::symmetric_1d(win), h)
            .iter()
            .map(|p| p.coords[0])
            .collect()
    }

    #[test]
    fn closed_interval_keeps_both_endpoints() {
        assert_eq!(
            sample_1d(SetPiece::closed_interval(0.0, 1.0), 2.0, 0.5),
            vec![0.0, 0.5, 1.0]
        );
    }

    #[test]
    fn open_lower_endpoint_starts_at_offset() {
        let got = sample_1d(
            SetPiece::Interval { lo: 0.0, hi: 1.0, open_lo: true, open_hi: false },
            2.0,
            0.25,
        );
        assert_eq!(got, vec![0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn open_upper_endpoint_is_excluded() {
        let got = sample_1d(
            SetPiece::Interval { lo: 0.0, hi: 1.0, open_lo: false, open_hi: true },
            2.0,
            0.25,
        );
        assert_eq!(got, vec![0.0, 0.25, 0.5, 0.75]);
    }

    #[test]
    fn unbounded_interval_is_window_truncated() {
        assert_eq!(sample_1d(SetPiece::all_reals(), 1.0, 1.0), vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn refinement_produces_superset_for_aligned_closed_pieces() {
        let coarse = sample_1d(SetPiece::closed_interval(-0.5, 1.0), 2.0, 0.01);
        let fine = sample_1d(SetPiece::closed_interval(-0.5, 1.0), 2.0, 0.005);
        for v in &coarse {
            assert!(fine.contains(v), "{v} missing after refinement");
        }
    }

    #[test]
    fn ragged_upper_end_is_included_when_closed() {
        assert_eq!(
            sample_1d(SetPiece::closed_interval(0.0, 0.9), 2.0, 0.25),
            vec![0.0, 0.25, 0.5, 0.75, 0.9]
        );
    }

    #[test]
    fn oracle_example_interval() {
        let oracle = ImageOracle::new(|_x: &[f64]| {
            SetDescription::of(vec![SetPiece::closed_interval(0.0, 1.0)])
        });
        let mf = sample_multifunction(
            &oracle,
            &[Point::scalar(0.0)],
            &Window::symmetric_1d(2.0),
            0.5,
            0.5,
            NormSpec::Max,
            NormSpec::Max,
        )
        .unwrap();
        let got: Vec<f64> = mf.image(0).iter().map(|p| p.coords[0]).collect();
        assert_eq!(got, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn degenerate_window_rejected_upstream() {
        assert!(Window::new(vec![1.0], vec![0.0]).is_err());
    }
}
