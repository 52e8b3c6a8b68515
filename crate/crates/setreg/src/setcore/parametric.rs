use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use super::multifunction::{FiniteMultifunction, MfMeta};
use super::norm::NormSpec;
use super::oracle::SetDescription;
use super::sample_description;
use super::scalar::Scalar;
use super::set::{FiniteSet, Point, Window};
use super::Error;

/// Space metadata of a sampled parametric relation H : X×P ⇉ Y.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamMeta<T> {
    pub h_x: T,
    pub h_p: T,
    pub h_y: T,
    pub window: Window<T>,
    pub x_norm: NormSpec,
    pub p_norm: NormSpec,
    pub y_norm: NormSpec,
    pub x_dim: usize,
    pub p_dim: usize,
    pub y_dim: usize,
}

/// Access to a sampled parametric multifunction. Implemented both by the
/// stored [`ParametricMultifunction`] and by streaming oracle adapters that
/// never materialize the full (x,p) image table.
pub trait ParamEval<T: Scalar> {
    fn x_grid(&self) -> &[Point<T>];
    fn p_grid(&self) -> &[Point<T>];
    fn meta(&self) -> &ParamMeta<T>;
    fn image(&self, xi: usize, pi: usize) -> Cow<'_, FiniteSet<T>>;

    /// Slice H_p (fix p): a plain multifunction of x.
    fn slice_p(&self, pi: usize) -> FiniteMultifunction<T> {
        let m = self.meta();
        FiniteMultifunction::new(
            self.x_grid().to_vec(),
            (0..self.x_grid().len())
                .map(|xi| self.image(xi, pi).into_owned())
                .collect(),
            MfMeta {
                h_x: m.h_x,
                h_y: m.h_y,
                window: m.window.clone(),
                x_norm: m.x_norm,
                y_norm: m.y_norm,
                x_dim: m.x_dim,
                y_dim: m.y_dim,
            },
        )
        .expect("slice grids are valid")
    }

    /// Slice H_x (fix x): a plain multifunction of p.
    fn slice_x(&self, xi: usize) -> FiniteMultifunction<T> {
        let m = self.meta();
        FiniteMultifunction::new(
            self.p_grid().to_vec(),
            (0..self.p_grid().len())
                .map(|pi| self.image(xi, pi).into_owned())
                .collect(),
            MfMeta {
                h_x: m.h_p,
                h_y: m.h_y,
                window: m.window.clone(),
                x_norm: m.p_norm,
                y_norm: m.y_norm,
                x_dim: m.p_dim,
                y_dim: m.y_dim,
            },
        )
        .expect("slice grids are valid")
    }

    fn x_index(&self, x: &Point<T>) -> Option<usize> {
        self.x_grid().iter().position(|q| q.lex_cmp(x).is_eq())
    }

    fn p_index(&self, p: &Point<T>) -> Option<usize> {
        self.p_grid().iter().position(|q| q.lex_cmp(p).is_eq())
    }
}

/// A sampled H over an X×P grid with stored images.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricMultifunction<T> {
    x_grid: Vec<Point<T>>,
    p_grid: Vec<Point<T>>,
    /// `images[xi][pi]`
    images: Vec<Vec<FiniteSet<T>>>,
    meta: ParamMeta<T>,
}

impl<T: Scalar> ParametricMultifunction<T> {
    pub fn new(
        x_grid: Vec<Point<T>>,
        p_grid: Vec<Point<T>>,
        images: Vec<Vec<FiniteSet<T>>>,
        meta: ParamMeta<T>,
    ) -> Result<Self, Error> {
        if x_grid.is_empty() || p_grid.is_empty() {
            return Err(Error::InvalidGrid("empty x or p grid".into()));
        }
        if images.len() != x_grid.len() || images.iter().any(|row| row.len() != p_grid.len()) {
            return Err(Error::InvalidGrid("image table shape mismatch".into()));
        }
        Ok(ParametricMultifunction { x_grid, p_grid, images, meta })
    }

    /// Sample an oracle over `(x,p)` pairs; image description evaluated on
    /// the concatenated coordinates `x ++ p`.
    pub fn sample(
        oracle: impl Fn(&[T], &[T]) -> SetDescription<T>,
        x_grid: Vec<Point<T>>,
        p_grid: Vec<Point<T>>,
        meta: ParamMeta<T>,
    ) -> Result<Self, Error> {
        let images = x_grid
            .iter()
            .map(|x| {
                p_grid
                    .iter()
                    .map(|p| sample_description(&oracle(&x.coords, &p.coords), &meta.window, meta.h_y))
                    .collect()
            })
            .collect();
        ParametricMultifunction::new(x_grid, p_grid, images, meta)
    }
}

impl<T: Scalar> ParamEval<T> for ParametricMultifunction<T> {
    fn x_grid(&self) -> &[Point<T>] {
        &self.x_grid
    }

    fn p_grid(&self) -> &[Point<T>] {
        &self.p_grid
    }

    fn meta(&self) -> &ParamMeta<T> {
        &self.meta
    }

    fn image(&self, xi: usize, pi: usize) -> Cow<'_, FiniteSet<T>> {
        Cow::Borrowed(&self.images[xi][pi])
    }
}

/// Streaming adapter: images are sampled from the oracle on demand.
pub struct OracleParametric<T: Scalar> {
    pub x_grid: Vec<Point<T>>,
    pub p_grid: Vec<Point<T>>,
    pub meta: ParamMeta<T>,
    pub oracle: Box<dyn Fn(&[T], &[T]) -> SetDescription<T> + Send + Sync>,
}

impl<T: Scalar> ParamEval<T> for OracleParametric<T> {
    fn x_grid(&self) -> &[Point<T>] {
        &self.x_grid
    }

    fn p_grid(&self) -> &[Point<T>] {
        &self.p_grid
    }

    fn meta(&self) -> &ParamMeta<T> {
        &self.meta
    }

    fn image(&self, xi: usize, pi: usize) -> Cow<'_, FiniteSet<T>> {
        let desc = (self.oracle)(&self.x_grid[xi].coords, &self.p_grid[pi].coords);
        Cow::Owned(sample_description(&desc, &self.meta.window, self.meta.h_y))
    }
}

/// Wire schema `{"x_grid":…, "p_grid":…, "images":…}` plus metadata.
#[derive(Serialize, Deserialize)]
struct ParamWire<T> {
    x_grid: Vec<Vec<T>>,
    p_grid: Vec<Vec<T>>,
    images: Vec<Vec<Vec<Vec<T>>>>,
    window: Window<T>,
    h_x: T,
    h_p: T,
    h_y: T,
    norm: NormSpec,
}

impl<T: Scalar + Serialize> Serialize for ParametricMultifunction<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ParamWire {
            x_grid: self.x_grid.iter().map(|p| p.coords.clone()).collect(),
            p_grid: self.p_grid.iter().map(|p| p.coords.clone()).collect(),
            images: self
                .images
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|img| img.iter().map(|p| p.coords.clone()).collect())
                        .collect()
                })
                .collect(),
            window: self.meta.window.clone(),
            h_x: self.meta.h_x,
            h_p: self.meta.h_p,
            h_y: self.meta.h_y,
            norm: self.meta.y_norm,
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for ParametricMultifunction<T> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let w = ParamWire::<T>::deserialize(deserializer)?;
        let meta = ParamMeta {
            h_x: w.h_x,
            h_p: w.h_p,
            h_y: w.h_y,
            x_norm: w.norm,
            p_norm: w.norm,
            y_norm: w.norm,
            x_dim: w.x_grid.first().map(Vec::len).unwrap_or(1),
            p_dim: w.p_grid.first().map(Vec::len).unwrap_or(1),
            y_dim: w.window.dim(),
            window: w.window,
        };
        ParametricMultifunction::new(
            w.x_grid.into_iter().map(Point::new).collect(),
            w.p_grid.into_iter().map(Point::new).collect(),
            w.images
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|img| FiniteSet::new(img.into_iter().map(Point::new).collect()))
                        .collect()
                })
                .collect(),
            meta,
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcore::oracle::SetPiece;

    pub(crate) fn meta_1d(h: f64, win: f64) -> ParamMeta<f64> {
        ParamMeta {
            h_x: h,
            h_p: h,
            h_y: h,
            window: Window::symmetric_1d(win),
            x_norm: NormSpec::Max,
            p_norm: NormSpec::Max,
            y_norm: NormSpec::Max,
            x_dim: 1,
            p_dim: 1,
            y_dim: 1,
        }
    }

    #[test]
    fn slices_agree_with_oracle() {
        let grid: Vec<Point<f64>> = [-1.0, 0.0, 1.0].iter().map(|&v| Point::scalar(v)).collect();
        let pm = ParametricMultifunction::sample(
            |x, p| SetDescription::of(vec![SetPiece::Singleton(vec![x[0] - p[0]])]),
            grid.clone(),
            grid.clone(),
            meta_1d(1.0, 2.0),
        )
        .unwrap();
        let hp = pm.slice_p(1); // p = 0
        assert!(hp.on_graph(&Point::scalar(1.0), &Point::scalar(1.0)));
        let hx = pm.slice_x(1); // x = 0
        assert!(hx.on_graph(&Point::scalar(1.0), &Point::scalar(-1.0)));
    }

    #[test]
    fn streaming_adapter_matches_stored() {
        let grid: Vec<Point<f64>> = [-1.0, 0.0, 1.0].iter().map(|&v| Point::scalar(v)).collect();
        let oracle = |x: &[f64], p: &[f64]| {
            SetDescription::of(vec![SetPiece::Singleton(vec![x[0] + p[0]])])
        };
        let stored = ParametricMultifunction::sample(oracle, grid.clone(), grid.clone(), meta_1d(1.0, 3.0)).unwrap();
        let streamed = OracleParametric {
            x_grid: grid.clone(),
            p_grid: grid,
            meta: meta_1d(1.0, 3.0),
            oracle: Box::new(oracle),
        };
        for xi in 0..3 {
            for pi in 0..3 {
                assert_eq!(stored.image(xi, pi).as_ref(), streamed.image(xi, pi).as_ref());
            }
        }
    }
}
