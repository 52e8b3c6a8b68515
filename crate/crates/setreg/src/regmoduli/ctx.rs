use crate::setcore::{dist_point_set_unchecked, hausdorff, lattice_nd};
use crate::{ExtReal, FiniteMultifunction, FiniteSet, Point, Window};

/// Shared evaluation context for the checks on one sampled multifunction.
///
/// Quantifiers over continuum codomain points are discretized to the window
/// lattice at step `h_y` united with the realized image values. Preimages of
/// such candidates use a resolution-aware membership radius per domain
/// point: `eps(x') = max(tol, vspread(x')/2)` where `vspread(x')` is the
/// Hausdorff distance between `F(x')` and the images of its grid neighbors.
/// A steep sampled map thus keeps the preimages its continuum counterpart
/// has, while a constant map does not absorb codomain points it never hits.
pub(crate) struct CheckCtx<'a> {
    pub mf: &'a FiniteMultifunction,
    pub tol: f64,
    vspread: Vec<f64>,
    realized: FiniteSet,
}

impl<'a> CheckCtx<'a> {
    pub fn new(mf: &'a FiniteMultifunction, tol: f64) -> Self {
        let vspread = compute_vspread(mf);
        let realized = mf.realized_values();
        CheckCtx { mf, tol, vspread, realized }
    }

    pub fn eps(&self, i: usize) -> f64 {
        self.tol.max(self.vspread[i] / 2.0)
    }

    /// Domain indices inside the closed ball `B(center, r)`.
    pub fn domain_ball(&self, center: &Point, r: f64) -> Vec<usize> {
        let norm = self.mf.meta().x_norm;
        (0..self.mf.domain().len())
            .filter(|&i| self.mf.domain()[i].dist(center, norm) <= r)
            .collect()
    }

    /// Codomain candidates within `r` of `center`: window lattice united
    /// with realized image values, lexicographically sorted.
    pub fn target_candidates(&self, center: &Point, r: f64) -> Vec<Point> {
        let meta = self.mf.meta();
        let win = &meta.window;
        let lo: Vec<f64> = win
            .lo
            .iter()
            .zip(&center.coords)
            .map(|(&l, &c)| l.max(c - r))
            .collect();
        let hi: Vec<f64> = win
            .hi
            .iter()
            .zip(&center.coords)
            .map(|(&h, &c)| h.min(c + r))
            .collect();
        let mut pts = if lo.iter().zip(&hi).all(|(l, h)| l <= h) {
            lattice_nd(&Window { lo, hi }, meta.h_y)
        } else {
            Vec::new()
        };
        pts.extend(self.realized.iter().cloned());
        let set = FiniteSet::new(pts);
        set.iter()
            .filter(|p| p.dist(center, meta.y_norm) <= r)
            .cloned()
            .collect()
    }

    /// Sampled preimage of `y`: domain points whose image passes within the
    /// local membership radius.
    pub fn preimage(&self, y: &Point) -> FiniteSet {
        let norm = self.mf.meta().y_norm;
        let mut pts = Vec::new();
        for (i, x) in self.mf.domain().iter().enumerate() {
            let img = self.mf.image(i);
            if img.is_empty() {
                continue;
            }
            if let ExtReal::Finite(d) = dist_point_set_unchecked(y, img, norm) {
                if d <= self.eps(i) {
                    pts.push(x.clone());
                }
            }
        }
        FiniteSet::new(pts)
    }

    /// `d(y, F(x_i))`.
    pub fn dist_to_image(&self, y: &Point, i: usize) -> ExtReal {
        dist_point_set_unchecked(y, self.mf.image(i), self.mf.meta().y_norm)
    }

    /// `d(x, A)` in the domain norm.
    pub fn dist_domain(&self, x: &Point, set: &FiniteSet) -> ExtReal {
        dist_point_set_unchecked(x, set, self.mf.meta().x_norm)
    }
}

fn compute_vspread(mf: &FiniteMultifunction) -> Vec<f64> {
    let meta = mf.meta();
    let reach = 1.5 * meta.h_x;
    let n = mf.domain().len();
    let one_dim = meta.x_dim == 1;
    let mut out = vec![0.0; n];
    for i in 0..n {
        if mf.image(i).is_empty() {
            continue;
        }
        let xi = &mf.domain()[i];
        let mut spread = 0.0_f64;
        let mut visit = |j: usize| {
            if j == i || mf.image(j).is_empty() {
                return;
            }
            if mf.domain()[j].dist(xi, meta.x_norm) <= reach {
                if let ExtReal::Finite(h) = hausdorff(mf.image(i), mf.image(j), meta.y_norm) {
                    spread = spread.max(h);
                }
            }
        };
        if one_dim {
            // Sorted domain: scan outward until the 1-D window is left.
            let v = xi.coords[0];
            let mut j = i;
            while j > 0 && (mf.domain()[j - 1].coords[0] - v).abs() <= reach {
                j -= 1;
                visit(j);
            }
            let mut j = i + 1;
            while j < n && (mf.domain()[j].coords[0] - v).abs() <= reach {
                visit(j);
                j += 1;
            }
        } else {
            for j in 0..n {
                visit(j);
            }
        }
        out[i] = spread;
    }
    out
}
