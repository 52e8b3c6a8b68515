use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::norm::NormSpec;
use super::scalar::Scalar;
use super::set::{FiniteSet, Point, Window};
use super::Error;

/// Resolution and space metadata of a sampled relation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MfMeta<T> {
    pub h_x: T,
    pub h_y: T,
    pub window: Window<T>,
    pub x_norm: NormSpec,
    pub y_norm: NormSpec,
    pub x_dim: usize,
    pub y_dim: usize,
}

/// A sampled multifunction: a finite domain grid, each point mapped to a
/// finite (possibly empty) codomain set inside a truncation window.
///
/// The graph is a finite subset of X×Y. `Dom F` is the set of domain points
/// with nonempty image. Inversion transposes the graph and is an involution
/// on graphs.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMultifunction<T> {
    domain: Vec<Point<T>>,
    images: Vec<FiniteSet<T>>,
    meta: MfMeta<T>,
}

impl<T: Scalar> FiniteMultifunction<T> {
    pub fn new(
        domain: Vec<Point<T>>,
        images: Vec<FiniteSet<T>>,
        meta: MfMeta<T>,
    ) -> Result<Self, Error> {
        if domain.len() != images.len() {
            return Err(Error::InvalidGrid("domain/images length mismatch".into()));
        }
        if domain.is_empty() {
            return Err(Error::InvalidGrid("empty domain grid".into()));
        }
        if domain.iter().any(|p| p.dim() != meta.x_dim) {
            return Err(Error::DimensionMismatch { expected: meta.x_dim, got: 0 });
        }
        for img in &images {
            if let Some(d) = img.dim() {
                if d != meta.y_dim {
                    return Err(Error::DimensionMismatch { expected: meta.y_dim, got: d });
                }
            }
        }
        let mut order: Vec<usize> = (0..domain.len()).collect();
        order.sort_by(|&i, &j| domain[i].lex_cmp(&domain[j]));
        let mut sorted_domain = Vec::with_capacity(domain.len());
        let mut sorted_images = Vec::with_capacity(images.len());
        for &i in &order {
            if let Some(prev) = sorted_domain.last() {
                if domain[i].lex_cmp(prev) == Ordering::Equal {
                    return Err(Error::InvalidGrid("duplicate domain point".into()));
                }
            }
            sorted_domain.push(domain[i].clone());
            sorted_images.push(images[i].clone());
        }
        Ok(FiniteMultifunction { domain: sorted_domain, images: sorted_images, meta: meta })
    }

    pub fn domain(&self) -> &[Point<T>] {
        &self.domain
    }

    pub fn images(&self) -> &[FiniteSet<T>] {
        &self.images
    }

    pub fn meta(&self) -> &MfMeta<T> {
        &self.meta
    }

    pub fn image(&self, i: usize) -> &FiniteSet<T> {
        &self.images[i]
    }

    /// Index of an exact domain point.
    pub fn domain_index(&self, x: &Point<T>) -> Option<usize> {
        self.domain.binary_search_by(|q| q.lex_cmp(x)).ok()
    }

    /// Image of an exact domain point; empty set if `x` is not a grid point.
    pub fn image_at(&self, x: &Point<T>) -> FiniteSet<T> {
        match self.domain_index(x) {
            Some(i) => self.images[i].clone(),
            None => FiniteSet::empty(),
        }
    }

    /// Domain points with nonempty image.
    pub fn dom(&self) -> impl Iterator<Item = &Point<T>> {
        self.domain
            .iter()
            .zip(&self.images)
            .filter(|(_, img)| !img.is_empty())
            .map(|(x, _)| x)
    }

    pub fn graph(&self) -> impl Iterator<Item = (&Point<T>, &Point<T>)> {
        self.domain
            .iter()
            .zip(&self.images)
            .flat_map(|(x, img)| img.iter().map(move |y| (x, y)))
    }

    pub fn graph_len(&self) -> usize {
        self.images.iter().map(FiniteSet::len).sum()
    }

    /// Whether `(x, y)` lies exactly on the sampled graph.
    pub fn on_graph(&self, x: &Point<T>, y: &Point<T>) -> bool {
        self.domain_index(x)
            .map(|i| self.images[i].contains(y))
            .unwrap_or(false)
    }

    /// Graph transpose: `Gr F⁻¹ = {(y,x) : (x,y) ∈ Gr F}`.
    pub fn invert(&self) -> FiniteMultifunction<T> {
        let mut ys: Vec<Point<T>> = self.graph().map(|(_, y)| y.clone()).collect();
        ys.sort_by(|a, b| a.lex_cmp(b));
        ys.dedup_by(|a, b| a.lex_cmp(b) == Ordering::Equal);
        let mut images: Vec<Vec<Point<T>>> = vec![Vec::new(); ys.len()];
        for (x, y) in self.graph() {
            let idx = ys.binary_search_by(|q| q.lex_cmp(y)).expect("image point present");
            images[idx].push(x.clone());
        }
        // New codomain = old domain: take its bounding box as the window.
        let (lo, hi) = bounding_box(&self.domain);
        FiniteMultifunction {
            domain: ys,
            images: images.into_iter().map(FiniteSet::new).collect(),
            meta: MfMeta {
                h_x: self.meta.h_y,
                h_y: self.meta.h_x,
                window: Window { lo, hi },
                x_norm: self.meta.y_norm,
                y_norm: self.meta.x_norm,
                x_dim: self.meta.y_dim,
                y_dim: self.meta.x_dim,
            },
        }
    }

    /// All distinct codomain points realized by some image.
    pub fn realized_values(&self) -> FiniteSet<T> {
        let mut all = Vec::with_capacity(self.graph_len());
        for img in &self.images {
            all.extend(img.iter().cloned());
        }
        FiniteSet::new(all)
    }

    /// Pointwise image transform (e.g. negation); keeps the domain grid.
    pub fn map_images(&self, f: impl Fn(&FiniteSet<T>) -> FiniteSet<T>, window: Window<T>) -> Self {
        FiniteMultifunction {
            domain: self.domain.clone(),
            images: self.images.iter().map(f).collect(),
            meta: MfMeta { window, ..self.meta.clone() },
        }
    }
}

pub(crate) fn bounding_box<T: Scalar>(pts: &[Point<T>]) -> (Vec<T>, Vec<T>) {
    let dim = pts.first().map(Point::dim).unwrap_or(0);
    let mut lo = vec![T::infinity(); dim];
    let mut hi = vec![T::neg_infinity(); dim];
    for p in pts {
        for (k, &c) in p.coords.iter().enumerate() {
            lo[k] = lo[k].min(c);
            hi[k] = hi[k].max(c);
        }
    }
    (lo, hi)
}

/// Grid data interchange schema:
/// `{"domain": [...], "images": [...], "window": {...}, "h_x":…, "h_y":…, "norm":…}`.
#[derive(Serialize, Deserialize)]
struct MfWire<T> {
    domain: Vec<Vec<T>>,
    images: Vec<Vec<Vec<T>>>,
    window: Window<T>,
    h_x: T,
    h_y: T,
    norm: NormSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x_norm: Option<NormSpec>,
}

impl<T: Scalar + Serialize> Serialize for FiniteMultifunction<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let x_norm = (self.meta.x_norm != self.meta.y_norm).then_some(self.meta.x_norm);
        MfWire {
            domain: self.domain.iter().map(|p| p.coords.clone()).collect(),
            images: self
                .images
                .iter()
                .map(|img| img.iter().map(|p| p.coords.clone()).collect())
                .collect(),
            window: self.meta.window.clone(),
            h_x: self.meta.h_x,
            h_y: self.meta.h_y,
            norm: self.meta.y_norm,
            x_norm,
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for FiniteMultifunction<T> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = MfWire::<T>::deserialize(deserializer)?;
        let x_dim = wire.domain.first().map(Vec::len).unwrap_or(1);
        let y_dim = wire.window.dim();
        let meta = MfMeta {
            h_x: wire.h_x,
            h_y: wire.h_y,
            window: wire.window,
            x_norm: wire.x_norm.unwrap_or(wire.norm),
            y_norm: wire.norm,
            x_dim,
            y_dim,
        };
        FiniteMultifunction::new(
            wire.domain.into_iter().map(Point::new).collect(),
            wire.images
                .into_iter()
                .map(|img| FiniteSet::new(img.into_iter().map(Point::new).collect()))
                .collect(),
            meta,
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcore::set::lattice_1d;

    pub(crate) fn mf_1d(
        xs: &[f64],
        img: impl Fn(f64) -> Vec<f64>,
        h_x: f64,
        h_y: f64,
        win: f64,
    ) -> FiniteMultifunction<f64> {
        FiniteMultifunction::new(
            xs.iter().map(|&x| Point::scalar(x)).collect(),
            xs.iter()
                .map(|&x| FiniteSet::from_scalars(img(x)))
                .collect(),
            MfMeta {
                h_x,
                h_y,
                window: Window::symmetric_1d(win),
                x_norm: NormSpec::Max,
                y_norm: NormSpec::Max,
                x_dim: 1,
                y_dim: 1,
            },
        )
        .unwrap()
    }

    #[test]
    fn invert_transposes_single_pair() {
        let f = mf_1d(&[0.0], |_| vec![1.0], 1.0, 1.0, 2.0);
        let inv = f.invert();
        assert_eq!(inv.domain(), &[Point::scalar(1.0)]);
        assert!(inv.image(0).contains(&Point::scalar(0.0)));
    }

    #[test]
    fn invert_identity_is_identity() {
        let xs = lattice_1d(-1.0, 1.0, 0.5);
        let f = mf_1d(&xs, |x| vec![x], 0.5, 0.5, 1.0);
        let inv = f.invert();
        assert_eq!(inv.domain(), f.domain());
        for (i, x) in inv.domain().iter().enumerate() {
            assert!(inv.image(i).contains(x));
            assert_eq!(inv.image(i).len(), 1);
        }
    }

    #[test]
    fn invert_scales_graph() {
        let f = mf_1d(&[-1.0, 0.0, 1.0], |x| vec![2.0 * x], 1.0, 1.0, 2.0);
        let inv = f.invert();
        for &y in &[-2.0, 0.0, 2.0] {
            let i = inv.domain_index(&Point::scalar(y)).unwrap();
            assert!(inv.image(i).contains(&Point::scalar(y / 2.0)));
        }
    }

    #[test]
    fn invert_is_involution_on_graphs() {
        let f = mf_1d(&[-1.0, 0.0, 1.0], |x| vec![x.abs(), 1.0], 1.0, 1.0, 2.0);
        let back = f.invert().invert();
        let g1: Vec<_> = f.graph().map(|(x, y)| (x.clone(), y.clone())).collect();
        let g2: Vec<_> = back.graph().map(|(x, y)| (x.clone(), y.clone())).collect();
        assert_eq!(g1, g2);
    }

    #[test]
    fn wire_schema_round_trip() {
        let f = mf_1d(&[0.0, 1.0], |x| vec![x], 1.0, 0.5, 2.0);
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"domain\""));
        assert!(json.contains("\"h_x\""));
        assert!(json.contains("\"norm\""));
        let back: FiniteMultifunction<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn duplicate_domain_point_rejected() {
        let r = FiniteMultifunction::new(
            vec![Point::scalar(0.0), Point::scalar(0.0)],
            vec![FiniteSet::empty(), FiniteSet::empty()],
            MfMeta {
                h_x: 1.0,
                h_y: 1.0,
                window: Window::symmetric_1d(1.0),
                x_norm: NormSpec::Max,
                y_norm: NormSpec::Max,
                x_dim: 1,
                y_dim: 1,
            },
        );
        assert!(r.is_err());
    }
}
