use serde::{Deserialize, Serialize};

use crate::setcore::{excess_unchecked, ParamEval};
use crate::{ExtReal, Point};

use super::checks;
use super::ctx::CheckCtx;
use super::report::{CheckReport, ModulusEstimate, ModulusKind, NbhdConfig, Verdict};
use super::Error;

/// Which variable carries the property; the other is swept uniformly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamDirection {
    XUnifP,
    PUnifX,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    Open,
    Aubin,
    Mreg,
    Calm,
}

fn require_param_graph(
    f: &dyn ParamEval<f64>,
    xbar: &Point,
    pbar: &Point,
    ybar: &Point,
) -> Result<(usize, usize), Error> {
    let xi = f.x_index(xbar).ok_or(Error::NotOnGraph)?;
    let pi = f.p_index(pbar).ok_or(Error::NotOnGraph)?;
    if !f.image(xi, pi).contains(ybar) {
        return Err(Error::NotOnGraph);
    }
    Ok((xi, pi))
}

/// Parametric around-point checks and partial calmness (direction
/// `x_unif_p` checks the property in x uniformly over parameters in the
/// `r_v`-ball; `p_unif_x` exchanges the roles of x and p).
pub fn check_parametric(
    f: &dyn ParamEval<f64>,
    direction: ParamDirection,
    kind: ParamKind,
    xbar: &Point,
    pbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> Result<CheckReport, Error> {
    let (xbar_i, pbar_i) = require_param_graph(f, xbar, pbar, ybar)?;
    checks::require_positive_rate(l)?;
    cfg.validate()?;
    let property = format!(
        "param_{}_{}@L={l}",
        match kind {
            ParamKind::Open => "open",
            ParamKind::Aubin => "aubin",
            ParamKind::Mreg => "mreg",
            ParamKind::Calm => "calm",
        },
        match direction {
            ParamDirection::XUnifP => "x_unif_p",
            ParamDirection::PUnifX => "p_unif_x",
        }
    );
    if kind == ParamKind::Calm {
        let outcome = partial_calm(f, direction, (xbar_i, pbar_i), ybar, l, cfg, None);
        return Ok(outcome.into_report(&property, cfg));
    }

    // Slice-uniform checks: every slice in the parameter ball must pass.
    let meta = f.meta();
    let slice_cfg = NbhdConfig {
        r_u: match direction {
            ParamDirection::XUnifP => cfg.r_u,
            ParamDirection::PUnifX => cfg.r_v,
        },
        r_v: cfg.r_w,
        ..cfg.clone()
    };
    let sweep: Vec<usize> = match direction {
        ParamDirection::XUnifP => (0..f.p_grid().len())
            .filter(|&pi| f.p_grid()[pi].dist(pbar, meta.p_norm) <= cfg.r_v)
            .collect(),
        ParamDirection::PUnifX => (0..f.x_grid().len())
            .filter(|&xi| f.x_grid()[xi].dist(xbar, meta.x_norm) <= cfg.r_u)
            .collect(),
    };
    for idx in sweep {
        let (slice, base, sweep_pt) = match direction {
            ParamDirection::XUnifP => (f.slice_p(idx), xbar, &f.p_grid()[idx]),
            ParamDirection::PUnifX => (f.slice_x(idx), pbar, &f.x_grid()[idx]),
        };
        let ctx = CheckCtx::new(&slice, slice_cfg.tol);
        let outcome = match kind {
            ParamKind::Open => checks::open_around(&ctx, base, ybar, l, &slice_cfg),
            ParamKind::Aubin => checks::aubin(&ctx, base, ybar, l, &slice_cfg),
            ParamKind::Mreg => checks::mreg(&ctx, base, ybar, l, &slice_cfg),
            ParamKind::Calm => unreachable!(),
        };
        if outcome.verdict == Verdict::Fails {
            let mut report = outcome.into_report(&property, cfg);
            if let Some(w) = &mut report.witness {
                w.tuple.push(sweep_pt.coords.clone());
                w.detail.push_str(" (last tuple entry: swept slice parameter)");
            }
            return Ok(report);
        }
    }
    Ok(checks::CheckOutcome::holds().into_report(&property, cfg))
}

/// Partial calmness (clmFxp-style): for `x_unif_p`,
/// `e(F_p(x) ∩ W, F_p(x̄)) ≤ L·d(x, x̄)` over sampled `x ∈ U`, `p ∈ V`.
fn partial_calm(
    f: &dyn ParamEval<f64>,
    direction: ParamDirection,
    base: (usize, usize),
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
    mut sup: Option<&mut ParamRatioSup>,
) -> checks::CheckOutcome {
    let meta = f.meta();
    let (xbar_i, pbar_i) = base;
    let (move_grid, move_norm, move_r, sweep_grid, sweep_norm, sweep_r) = match direction {
        ParamDirection::XUnifP => (
            f.x_grid(),
            meta.x_norm,
            cfg.r_u,
            f.p_grid(),
            meta.p_norm,
            cfg.r_v,
        ),
        ParamDirection::PUnifX => (
            f.p_grid(),
            meta.p_norm,
            cfg.r_v,
            f.x_grid(),
            meta.x_norm,
            cfg.r_u,
        ),
    };
    let (move_base_i, sweep_base_i) = match direction {
        ParamDirection::XUnifP => (xbar_i, pbar_i),
        ParamDirection::PUnifX => (pbar_i, xbar_i),
    };
    let move_base = &move_grid[move_base_i];
    for (si, s) in sweep_grid.iter().enumerate() {
        if s.dist(&sweep_grid[sweep_base_i], sweep_norm) > sweep_r {
            continue;
        }
        let reference = match direction {
            ParamDirection::XUnifP => f.image(move_base_i, si).into_owned(),
            ParamDirection::PUnifX => f.image(si, move_base_i).into_owned(),
        };
        for (mi, m) in move_grid.iter().enumerate() {
            let d = m.dist(move_base, move_norm);
            if d > move_r {
                continue;
            }
            let img = match direction {
                ParamDirection::XUnifP => f.image(mi, si),
                ParamDirection::PUnifX => f.image(si, mi),
            };
            let truncated = img.restrict_ball(ybar, cfg.r_w, meta.y_norm);
            let lhs = excess_unchecked(&truncated, &reference, meta.y_norm);
            if let Some(sup) = sup.as_deref_mut() {
                sup.push(lhs, d, cfg.tol, m, s);
            } else if let Some(v) = violation_ext(lhs, l * d + cfg.tol) {
                return checks::CheckOutcome::fail(
                    vec![m.coords.clone(), s.coords.clone()],
                    v,
                    "partial calmness excess exceeds L*d".into(),
                );
            }
        }
    }
    checks::CheckOutcome::holds()
}

fn violation_ext(lhs: ExtReal, bound: f64) -> Option<ExtReal> {
    match lhs {
        ExtReal::Inf => Some(ExtReal::Inf),
        ExtReal::Finite(a) => (a > bound).then(|| ExtReal::Finite(a - bound)),
    }
}

struct ParamRatioSup {
    best: Option<(ExtReal, Vec<f64>, Vec<f64>)>,
    usable: bool,
}

impl ParamRatioSup {
    fn push(&mut self, num: ExtReal, den: f64, tol: f64, a: &Point, b: &Point) {
        if den <= tol {
            return;
        }
        self.usable = true;
        let ratio = match num {
            ExtReal::Inf => ExtReal::Inf,
            ExtReal::Finite(n) => ExtReal::Finite(n / den),
        };
        if self.best.as_ref().map(|(c, _, _)| ratio > *c).unwrap_or(true) {
            self.best = Some((ratio, a.coords.clone(), b.coords.clone()));
        }
    }
}

/// Supremum-ratio estimate of the exact partial calmness bound
/// (`clm_x` for `x_unif_p`, `clm_p` for `p_unif_x`).
pub fn estimate_param_calm(
    f: &dyn ParamEval<f64>,
    direction: ParamDirection,
    xbar: &Point,
    pbar: &Point,
    ybar: &Point,
    cfg: &NbhdConfig,
) -> Result<ModulusEstimate, Error> {
    let base = require_param_graph(f, xbar, pbar, ybar)?;
    cfg.validate()?;
    let mut sup = ParamRatioSup { best: None, usable: false };
    partial_calm(f, direction, base, ybar, 1.0, cfg, Some(&mut sup));
    let meta = f.meta();
    Ok(match sup.best {
        Some((value, a, b)) => ModulusEstimate {
            kind: ModulusKind::Clm,
            value,
            resolution: (meta.h_x, meta.h_y),
            argmax_witness: Some((a, b)),
            degenerate: false,
        },
        None => ModulusEstimate {
            kind: ModulusKind::Clm,
            value: ExtReal::zero(),
            resolution: (meta.h_x, meta.h_y),
            argmax_witness: None,
            degenerate: true,
        },
    })
}

/// Supremum-ratio estimate of the exact partial Aubin bound
/// (`lip_x` for `x_unif_p`): pairs (x, u) swept inside U for each parameter.
pub fn estimate_param_aubin(
    f: &dyn ParamEval<f64>,
    direction: ParamDirection,
    xbar: &Point,
    pbar: &Point,
    ybar: &Point,
    cfg: &NbhdConfig,
) -> Result<ModulusEstimate, Error> {
    require_param_graph(f, xbar, pbar, ybar)?;
    cfg.validate()?;
    let meta = f.meta();
    let mut sup = ParamRatioSup { best: None, usable: false };
    match direction {
        ParamDirection::XUnifP => {
            let xs: Vec<usize> = (0..f.x_grid().len())
                .filter(|&i| f.x_grid()[i].dist(xbar, meta.x_norm) <= cfg.r_u)
                .collect();
            for pi in 0..f.p_grid().len() {
                if f.p_grid()[pi].dist(pbar, meta.p_norm) > cfg.r_v {
                    continue;
                }
                for &i in &xs {
                    let truncated =
                        f.image(i, pi).restrict_ball(ybar, cfg.r_w, meta.y_norm);
                    for &j in &xs {
                        if i == j {
                            continue;
                        }
                        let num =
                            excess_unchecked(&truncated, f.image(j, pi).as_ref(), meta.y_norm);
                        let den = f.x_grid()[i].dist(&f.x_grid()[j], meta.x_norm);
                        sup.push(num, den, cfg.tol, &f.x_grid()[i], &f.x_grid()[j]);
                    }
                }
            }
        }
        ParamDirection::PUnifX => {
            let ps: Vec<usize> = (0..f.p_grid().len())
                .filter(|&i| f.p_grid()[i].dist(pbar, meta.p_norm) <= cfg.r_v)
                .collect();
            for xi in 0..f.x_grid().len() {
                if f.x_grid()[xi].dist(xbar, meta.x_norm) > cfg.r_u {
                    continue;
                }
                for &i in &ps {
                    let truncated =
                        f.image(xi, i).restrict_ball(ybar, cfg.r_w, meta.y_norm);
                    for &j in &ps {
                        if i == j {
                            continue;
                        }
                        let num =
                            excess_unchecked(&truncated, f.image(xi, j).as_ref(), meta.y_norm);
                        let den = f.p_grid()[i].dist(&f.p_grid()[j], meta.p_norm);
                        sup.push(num, den, cfg.tol, &f.p_grid()[i], &f.p_grid()[j]);
                    }
                }
            }
        }
    }
    Ok(match sup.best {
        Some((value, a, b)) => ModulusEstimate {
            kind: ModulusKind::Lip,
            value,
            resolution: (meta.h_x, meta.h_y),
            argmax_witness: Some((a, b)),
            degenerate: false,
        },
        None => ModulusEstimate {
            kind: ModulusKind::Lip,
            value: ExtReal::zero(),
            resolution: (meta.h_x, meta.h_y),
            argmax_witness: None,
            degenerate: true,
        },
    })
}

