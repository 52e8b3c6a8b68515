//! The defining inequalities of the three regularity triads, checked over
//! discretized quantifier domains.
//!
//! Conventions shared by every check: `r_u` bounds the domain-side
//! neighborhood, `r_v` the codomain side; balls are closed; an inequality
//! holds when `lhs ≤ L·rhs + tol` (ties count as holding); a verdict of
//! `fails` carries the first violating tuple in scan order, which is
//! lexicographic.

use crate::setcore::excess_unchecked;
use crate::{ExtReal, FiniteMultifunction, FiniteSet, Point};

use super::ctx::CheckCtx;
use super::report::{CheckReport, NbhdConfig, Verdict, Witness};
use super::Error;

#[derive(Clone)]
pub(crate) struct CheckOutcome {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub empty_excess_fires: usize,
}

impl CheckOutcome {
    pub(crate) fn holds() -> Self {
        CheckOutcome { verdict: Verdict::HoldsAtResolution, witness: None, empty_excess_fires: 0 }
    }

    pub(crate) fn fail(tuple: Vec<Vec<f64>>, violation: ExtReal, detail: String) -> Self {
        CheckOutcome {
            verdict: Verdict::Fails,
            witness: Some(Witness { tuple, violation, detail }),
            empty_excess_fires: 0,
        }
    }

    pub fn into_report(self, property: &str, cfg: &NbhdConfig) -> CheckReport {
        let mut notes = Vec::new();
        if self.empty_excess_fires > 0 {
            notes.push(format!(
                "e(empty,.)=0 convention fired {} times",
                self.empty_excess_fires
            ));
        }
        CheckReport {
            property: property.to_string(),
            verdict: self.verdict,
            witness: self.witness,
            swept: cfg.clone(),
            notes,
        }
    }
}

/// `lhs ≤ L·rhs + tol` on extended reals; `Some(violation)` when it fails.
fn violation(lhs: ExtReal, rhs: ExtReal, l: f64, tol: f64) -> Option<ExtReal> {
    match (lhs, rhs) {
        (_, ExtReal::Inf) => None,
        (ExtReal::Inf, ExtReal::Finite(_)) => Some(ExtReal::Inf),
        (ExtReal::Finite(a), ExtReal::Finite(b)) => {
            let bound = l * b + tol;
            (a > bound).then(|| ExtReal::Finite(a - bound))
        }
    }
}

pub(crate) fn require_graph_point(
    mf: &FiniteMultifunction,
    xbar: &Point,
    ybar: &Point,
) -> Result<(), Error> {
    if !mf.on_graph(xbar, ybar) {
        return Err(Error::NotOnGraph);
    }
    Ok(())
}

pub(crate) fn require_positive_rate(l: f64) -> Result<(), Error> {
    if l <= 0.0 || !l.is_finite() {
        return Err(Error::BadConfig("rate L must be positive".into()));
    }
    Ok(())
}

/// (Lopen): `B(y, ρL) ⊂ F(B(x, ρ))` for every sampled graph point in U×V
/// and every ρ in the sweep.
pub(crate) fn open_around(
    ctx: &CheckCtx,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> CheckOutcome {
    let rho_max = cfg.rho_grid.first().copied().unwrap_or(cfg.eps);
    let pool = ctx.target_candidates(ybar, cfg.r_v + l * rho_max);
    let preimages: Vec<FiniteSet> = pool.iter().map(|y| ctx.preimage(y)).collect();
    let u = ctx.domain_ball(xbar, cfg.r_u);
    let y_norm = ctx.mf.meta().y_norm;
    for &rho in &cfg.rho_grid {
        for &i in &u {
            let x = &ctx.mf.domain()[i];
            for y in ctx.mf.image(i).iter() {
                if y.dist(ybar, y_norm) > cfg.r_v {
                    continue;
                }
                for (cand, pre) in pool.iter().zip(&preimages) {
                    if cand.dist(y, y_norm) > rho * l {
                        continue;
                    }
                    let reach = ctx.dist_domain(x, pre);
                    if let Some(v) =
                        violation(reach, ExtReal::Finite(rho), 1.0, cfg.tol)
                    {
                        return CheckOutcome::fail(
                            vec![vec![rho], x.coords.clone(), y.coords.clone(), cand.coords.clone()],
                            v,
                            "target in B(y,rho*L) not covered by F(B(x,rho))".into(),
                        );
                    }
                }
            }
        }
    }
    CheckOutcome::holds()
}

/// (Lopen_at): the covering only at the reference point.
pub(crate) fn open_at(
    ctx: &CheckCtx,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> CheckOutcome {
    let rho_max = cfg.rho_grid.first().copied().unwrap_or(cfg.eps);
    let pool = ctx.target_candidates(ybar, l * rho_max);
    let y_norm = ctx.mf.meta().y_norm;
    for &rho in &cfg.rho_grid {
        for cand in &pool {
            if cand.dist(ybar, y_norm) > rho * l {
                continue;
            }
            let pre = ctx.preimage(cand);
            let reach = ctx.dist_domain(xbar, &pre);
            if let Some(v) = violation(reach, ExtReal::Finite(rho), 1.0, cfg.tol) {
                return CheckOutcome::fail(
                    vec![vec![rho], xbar.coords.clone(), cand.coords.clone()],
                    v,
                    "target in B(ybar,rho*L) not covered by F(B(xbar,rho))".into(),
                );
            }
        }
    }
    CheckOutcome::holds()
}

/// (psdop): every sampled x in U∩F⁻¹(B(ȳ,Lρ)) has ȳ ∈ F(B(x,ρ)).
pub(crate) fn lpo(
    ctx: &CheckCtx,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> CheckOutcome {
    let zero_set = ctx.preimage(ybar);
    let u = ctx.domain_ball(xbar, cfg.r_u);
    for &rho in &cfg.rho_grid {
        for &i in &u {
            let gap = ctx.dist_to_image(ybar, i);
            if gap > ExtReal::Finite(l * rho) {
                continue;
            }
            let x = &ctx.mf.domain()[i];
            let reach = ctx.dist_domain(x, &zero_set);
            if let Some(v) = violation(reach, ExtReal::Finite(rho), 1.0, cfg.tol) {
                return CheckOutcome::fail(
                    vec![vec![rho], x.coords.clone()],
                    v,
                    "x in F^{-1}(B(ybar,L*rho)) but ybar not in F(B(x,rho))".into(),
                );
            }
        }
    }
    CheckOutcome::holds()
}

/// (LLip_like): `e(F(x)∩V, F(u)) ≤ L·d(x,u)` for sampled pairs in U.
pub(crate) fn aubin(
    ctx: &CheckCtx,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> CheckOutcome {
    let u = ctx.domain_ball(xbar, cfg.r_u);
    let meta = ctx.mf.meta();
    let mut empties = 0usize;
    for &i in &u {
        let truncated = ctx.mf.image(i).restrict_ball(ybar, cfg.r_v, meta.y_norm);
        if truncated.is_empty() && !ctx.mf.image(i).is_empty() {
            empties += 1;
        }
        let xi = &ctx.mf.domain()[i];
        for &j in &u {
            if i == j {
                continue;
            }
            let lhs = excess_unchecked(&truncated, ctx.mf.image(j), meta.y_norm);
            let d = xi.dist(&ctx.mf.domain()[j], meta.x_norm);
            if let Some(v) = violation(lhs, ExtReal::Finite(d), l, cfg.tol) {
                return CheckOutcome::fail(
                    vec![xi.coords.clone(), ctx.mf.domain()[j].coords.clone()],
                    v,
                    "Aubin excess exceeds L*d(x,u)".into(),
                );
            }
        }
    }
    CheckOutcome { empty_excess_fires: empties, ..CheckOutcome::holds() }
}

/// Aubin property of F⁻¹ around (ȳ, x̄), evaluated through sampled
/// preimages: `e(F⁻¹(y)∩B(x̄,r_u), F⁻¹(u)) ≤ L·d(y,u)` over codomain
/// candidates y, u.
pub(crate) fn aubin_inverse(
    ctx: &CheckCtx,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> CheckOutcome {
    let cands = ctx.target_candidates(ybar, cfg.r_v);
    let preimages: Vec<FiniteSet> = cands.iter().map(|y| ctx.preimage(y)).collect();
    let meta = ctx.mf.meta();
    let mut empties = 0usize;
    for (y, pre_y) in cands.iter().zip(&preimages) {
        let truncated = pre_y.restrict_ball(xbar, cfg.r_u, meta.x_norm);
        if truncated.is_empty() && !pre_y.is_empty() {
            empties += 1;
        }
        for (uy, pre_u) in cands.iter().zip(&preimages) {
            if std::ptr::eq(y, uy) {
                continue;
            }
            let lhs = excess_unchecked(&truncated, pre_u, meta.x_norm);
            let d = y.dist(uy, meta.y_norm);
            if let Some(v) = violation(lhs, ExtReal::Finite(d), l, cfg.tol) {
                return CheckOutcome::fail(
                    vec![y.coords.clone(), uy.coords.clone()],
                    v,
                    "Aubin excess of F^{-1} exceeds L*d(y,u)".into(),
                );
            }
        }
    }
    CheckOutcome { empty_excess_fires: empties, ..CheckOutcome::holds() }
}

/// (Lmreg): `d(x, F⁻¹(y)) ≤ L·d(y, F(x))` over U × codomain candidates.
pub(crate) fn mreg(
    ctx: &CheckCtx,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> CheckOutcome {
    let u = ctx.domain_ball(xbar, cfg.r_u);
    let cands = ctx.target_candidates(ybar, cfg.r_v);
    for cand in &cands {
        let pre = ctx.preimage(cand);
        for &i in &u {
            let lhs = ctx.dist_domain(&ctx.mf.domain()[i], &pre);
            let rhs = ctx.dist_to_image(cand, i);
            if let Some(v) = violation(lhs, rhs, l, cfg.tol) {
                return CheckOutcome::fail(
                    vec![ctx.mf.domain()[i].coords.clone(), cand.coords.clone()],
                    v,
                    "d(x,F^{-1}(y)) exceeds L*d(y,F(x))".into(),
                );
            }
        }
    }
    CheckOutcome::holds()
}

/// (Lpseudocalm): `d(ȳ, F(x)) ≤ L·d(x, x̄)` for sampled x in U.
pub(crate) fn psdclm(
    ctx: &CheckCtx,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> CheckOutcome {
    let u = ctx.domain_ball(xbar, cfg.r_u);
    let meta = ctx.mf.meta();
    for &i in &u {
        let lhs = ctx.dist_to_image(ybar, i);
        let d = ctx.mf.domain()[i].dist(xbar, meta.x_norm);
        if let Some(v) = violation(lhs, ExtReal::Finite(d), l, cfg.tol) {
            return CheckOutcome::fail(
                vec![ctx.mf.domain()[i].coords.clone()],
                v,
                "d(ybar,F(x)) exceeds L*d(x,xbar)".into(),
            );
        }
    }
    CheckOutcome::holds()
}

/// (Lhemireg): `d(x̄, F⁻¹(y)) ≤ L·d(y, ȳ)` over codomain candidates.
pub(crate) fn hemreg(
    ctx: &CheckCtx,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> CheckOutcome {
    let cands = ctx.target_candidates(ybar, cfg.r_v);
    let y_norm = ctx.mf.meta().y_norm;
    for cand in &cands {
        let pre = ctx.preimage(cand);
        let lhs = ctx.dist_domain(xbar, &pre);
        let d = cand.dist(ybar, y_norm);
        if let Some(v) = violation(lhs, ExtReal::Finite(d), l, cfg.tol) {
            return CheckOutcome::fail(
                vec![cand.coords.clone()],
                v,
                "d(xbar,F^{-1}(y)) exceeds L*d(y,ybar)".into(),
            );
        }
    }
    CheckOutcome::holds()
}

/// (calm): `e(F(x)∩V, F(x̄)) ≤ L·d(x, x̄)` for sampled x in U.
pub(crate) fn calm(
    ctx: &CheckCtx,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> CheckOutcome {
    let u = ctx.domain_ball(xbar, cfg.r_u);
    let meta = ctx.mf.meta();
    let reference = ctx.mf.image_at(xbar);
    let mut empties = 0usize;
    for &i in &u {
        let truncated = ctx.mf.image(i).restrict_ball(ybar, cfg.r_v, meta.y_norm);
        if truncated.is_empty() && !ctx.mf.image(i).is_empty() {
            empties += 1;
        }
        let lhs = excess_unchecked(&truncated, &reference, meta.y_norm);
        let d = ctx.mf.domain()[i].dist(xbar, meta.x_norm);
        if let Some(v) = violation(lhs, ExtReal::Finite(d), l, cfg.tol) {
            return CheckOutcome::fail(
                vec![ctx.mf.domain()[i].coords.clone()],
                v,
                "calmness excess exceeds L*d(x,xbar)".into(),
            );
        }
    }
    CheckOutcome { empty_excess_fires: empties, ..CheckOutcome::holds() }
}

/// Calmness of F⁻¹ at (ȳ, x̄) through sampled preimages.
pub(crate) fn calm_inverse(
    ctx: &CheckCtx,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> CheckOutcome {
    let cands = ctx.target_candidates(ybar, cfg.r_v);
    let reference = ctx.preimage(ybar);
    let meta = ctx.mf.meta();
    let mut empties = 0usize;
    for y in &cands {
        let pre = ctx.preimage(y);
        let truncated = pre.restrict_ball(xbar, cfg.r_u, meta.x_norm);
        if truncated.is_empty() && !pre.is_empty() {
            empties += 1;
        }
        let lhs = excess_unchecked(&truncated, &reference, meta.x_norm);
        let d = y.dist(ybar, meta.y_norm);
        if let Some(v) = violation(lhs, ExtReal::Finite(d), l, cfg.tol) {
            return CheckOutcome::fail(
                vec![y.coords.clone()],
                v,
                "calmness excess of F^{-1} exceeds L*d(y,ybar)".into(),
            );
        }
    }
    CheckOutcome { empty_excess_fires: empties, ..CheckOutcome::holds() }
}

/// (subreg): `d(x, F⁻¹(ȳ)) ≤ L·d(ȳ, F(x))` for sampled x in U.
pub(crate) fn subreg(
    ctx: &CheckCtx,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> CheckOutcome {
    let zero_set = ctx.preimage(ybar);
    let u = ctx.domain_ball(xbar, cfg.r_u);
    for &i in &u {
        let lhs = ctx.dist_domain(&ctx.mf.domain()[i], &zero_set);
        let rhs = ctx.dist_to_image(ybar, i);
        if let Some(v) = violation(lhs, rhs, l, cfg.tol) {
            return CheckOutcome::fail(
                vec![ctx.mf.domain()[i].coords.clone()],
                v,
                "d(x,F^{-1}(ybar)) exceeds L*d(ybar,F(x))".into(),
            );
        }
    }
    CheckOutcome::holds()
}
