use crate::setcore::excess_unchecked;
use crate::{ExtReal, FiniteMultifunction, Point};

use super::checks::{self, require_graph_point};
use super::ctx::CheckCtx;
use super::report::{ModulusEstimate, ModulusKind, NbhdConfig};
use super::Error;

struct RatioSup {
    best: Option<(ExtReal, Vec<f64>, Vec<f64>)>,
    usable: bool,
}

impl RatioSup {
    fn new() -> Self {
        RatioSup { best: None, usable: false }
    }

    fn push(&mut self, num: ExtReal, den: f64, tol: f64, wx: &Point, wy: &Point) {
        if den <= tol {
            return;
        }
        self.usable = true;
        let ratio = match num {
            ExtReal::Inf => ExtReal::Inf,
            ExtReal::Finite(n) => ExtReal::Finite(n / den),
        };
        let better = match &self.best {
            None => true,
            Some((cur, _, _)) => ratio > *cur,
        };
        if better {
            self.best = Some((ratio, wx.coords.clone(), wy.coords.clone()));
        }
    }

    fn finish(self, kind: ModulusKind, resolution: (f64, f64)) -> ModulusEstimate {
        match self.best {
            Some((value, wx, wy)) => ModulusEstimate {
                kind,
                value,
                resolution,
                argmax_witness: Some((wx, wy)),
                degenerate: false,
            },
            None => ModulusEstimate {
                kind,
                value: ExtReal::zero(),
                resolution,
                argmax_witness: None,
                degenerate: true,
            },
        }
    }
}

/// Supremum-ratio or largest-passing-rate estimate of one exact bound.
///
/// Ratio kinds return the exact supremum of the sampled ratios, skipping
/// points whose denominator is below `cfg.tol`. Rate kinds return the
/// largest rate of `cfg.l_grid` whose check passes, refined by 20 bisection
/// steps against the first failing grid rate.
pub fn estimate_modulus(
    mf: &FiniteMultifunction,
    xbar: &Point,
    ybar: &Point,
    kind: ModulusKind,
    cfg: &NbhdConfig,
) -> Result<ModulusEstimate, Error> {
    require_graph_point(mf, xbar, ybar)?;
    cfg.validate()?;
    let ctx = CheckCtx::new(mf, cfg.tol);
    let meta = mf.meta();
    let resolution = (meta.h_x, meta.h_y);
    let mut sup = RatioSup::new();
    match kind {
        ModulusKind::Subreg => {
            let zero_set = ctx.preimage(ybar);
            for i in ctx.domain_ball(xbar, cfg.r_u) {
                let den = match ctx.dist_to_image(ybar, i) {
                    ExtReal::Finite(d) => d,
                    ExtReal::Inf => continue,
                };
                let x = &mf.domain()[i];
                sup.push(ctx.dist_domain(x, &zero_set), den, cfg.tol, x, ybar);
            }
        }
        ModulusKind::Clm => {
            let reference = mf.image_at(xbar);
            for i in ctx.domain_ball(xbar, cfg.r_u) {
                let x = &mf.domain()[i];
                let den = x.dist(xbar, meta.x_norm);
                let truncated = mf.image(i).restrict_ball(ybar, cfg.r_v, meta.y_norm);
                let num = excess_unchecked(&truncated, &reference, meta.y_norm);
                sup.push(num, den, cfg.tol, x, ybar);
            }
        }
        ModulusKind::Psdclm => {
            for i in ctx.domain_ball(xbar, cfg.r_u) {
                let x = &mf.domain()[i];
                let den = x.dist(xbar, meta.x_norm);
                sup.push(ctx.dist_to_image(ybar, i), den, cfg.tol, x, ybar);
            }
        }
        ModulusKind::Hemreg => {
            for cand in ctx.target_candidates(ybar, cfg.r_v) {
                let den = cand.dist(ybar, meta.y_norm);
                if den <= cfg.tol {
                    continue;
                }
                let pre = ctx.preimage(&cand);
                sup.push(ctx.dist_domain(xbar, &pre), den, cfg.tol, xbar, &cand);
            }
        }
        ModulusKind::Lip => {
            let u = ctx.domain_ball(xbar, cfg.r_u);
            for &i in &u {
                let xi = &mf.domain()[i];
                let truncated = mf.image(i).restrict_ball(ybar, cfg.r_v, meta.y_norm);
                for &j in &u {
                    if i == j {
                        continue;
                    }
                    let xj = &mf.domain()[j];
                    let den = xi.dist(xj, meta.x_norm);
                    let num = excess_unchecked(&truncated, mf.image(j), meta.y_norm);
                    sup.push(num, den, cfg.tol, xi, xj);
                }
            }
        }
        ModulusKind::Reg => {
            let u = ctx.domain_ball(xbar, cfg.r_u);
            for cand in ctx.target_candidates(ybar, cfg.r_v) {
                let pre = ctx.preimage(&cand);
                for &i in &u {
                    let den = match ctx.dist_to_image(&cand, i) {
                        ExtReal::Finite(d) => d,
                        ExtReal::Inf => continue,
                    };
                    let x = &mf.domain()[i];
                    sup.push(ctx.dist_domain(x, &pre), den, cfg.tol, x, &cand);
                }
            }
        }
        ModulusKind::Lop | ModulusKind::Plop | ModulusKind::Lpo => {
            return rate_estimate(mf, &ctx, xbar, ybar, kind, cfg, resolution);
        }
    }
    Ok(sup.finish(kind, resolution))
}

fn rate_estimate(
    _mf: &FiniteMultifunction,
    ctx: &CheckCtx,
    xbar: &Point,
    ybar: &Point,
    kind: ModulusKind,
    cfg: &NbhdConfig,
    resolution: (f64, f64),
) -> Result<ModulusEstimate, Error> {
    let passes = |l: f64| -> bool {
        let outcome = match kind {
            ModulusKind::Lop => checks::open_around(ctx, xbar, ybar, l, cfg),
            ModulusKind::Plop => checks::open_at(ctx, xbar, ybar, l, cfg),
            ModulusKind::Lpo => checks::lpo(ctx, xbar, ybar, l, cfg),
            _ => unreachable!("rate_estimate called with a ratio kind"),
        };
        outcome.verdict.holds()
    };
    let mut grid: Vec<f64> = cfg.l_grid.clone();
    grid.sort_by(f64::total_cmp);
    let mut last_pass = None;
    let mut first_fail = None;
    for &l in &grid {
        if passes(l) {
            last_pass = Some(l);
        } else {
            first_fail = Some(l);
            break;
        }
    }
    let value = match (last_pass, first_fail) {
        (None, _) => {
            return Ok(ModulusEstimate {
                kind,
                value: ExtReal::zero(),
                resolution,
                argmax_witness: None,
                degenerate: true,
            })
        }
        (Some(l), None) => l,
        (Some(mut lo), Some(mut hi)) => {
            for _ in 0..20 {
                let mid = 0.5 * (lo + hi);
                if passes(mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        }
    };
    Ok(ModulusEstimate {
        kind,
        value: ExtReal::Finite(value),
        resolution,
        argmax_witness: Some((xbar.coords.clone(), ybar.coords.clone())),
        degenerate: false,
    })
}
