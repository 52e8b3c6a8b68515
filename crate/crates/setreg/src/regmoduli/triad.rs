use serde::{Deserialize, Serialize};

use crate::{FiniteMultifunction, Point};

use super::checks::{self, require_graph_point, require_positive_rate};
use super::ctx::CheckCtx;
use super::report::{CheckReport, NbhdConfig, TriadReport};
use super::Error;

/// The individually checkable properties, for the CLI and the corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    OpenAround,
    Aubin,
    AubinInverse,
    Mreg,
    OpenAt,
    Psdclm,
    Hemreg,
    Lpo,
    Calm,
    CalmInverse,
    Subreg,
}

impl PropertyKind {
    pub fn name(self) -> &'static str {
        match self {
            PropertyKind::OpenAround => "open_around",
            PropertyKind::Aubin => "aubin",
            PropertyKind::AubinInverse => "aubin_inverse",
            PropertyKind::Mreg => "mreg",
            PropertyKind::OpenAt => "open_at",
            PropertyKind::Psdclm => "psdclm",
            PropertyKind::Hemreg => "hemreg",
            PropertyKind::Lpo => "lpo",
            PropertyKind::Calm => "calm",
            PropertyKind::CalmInverse => "calm_inverse",
            PropertyKind::Subreg => "subreg",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "open_around" => PropertyKind::OpenAround,
            "aubin" => PropertyKind::Aubin,
            "aubin_inverse" => PropertyKind::AubinInverse,
            "mreg" => PropertyKind::Mreg,
            "open_at" => PropertyKind::OpenAt,
            "psdclm" => PropertyKind::Psdclm,
            "hemreg" => PropertyKind::Hemreg,
            "lpo" => PropertyKind::Lpo,
            "calm" => PropertyKind::Calm,
            "calm_inverse" => PropertyKind::CalmInverse,
            "subreg" => PropertyKind::Subreg,
            _ => return None,
        })
    }
}

/// Check one property of `F` at `(x̄, ȳ)` with constant `l`.
pub fn check_property(
    mf: &FiniteMultifunction,
    kind: PropertyKind,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> Result<CheckReport, Error> {
    require_graph_point(mf, xbar, ybar)?;
    require_positive_rate(l)?;
    cfg.validate()?;
    let ctx = CheckCtx::new(mf, cfg.tol);
    let outcome = match kind {
        PropertyKind::OpenAround => checks::open_around(&ctx, xbar, ybar, l, cfg),
        PropertyKind::Aubin => checks::aubin(&ctx, xbar, ybar, l, cfg),
        PropertyKind::AubinInverse => checks::aubin_inverse(&ctx, xbar, ybar, l, cfg),
        PropertyKind::Mreg => checks::mreg(&ctx, xbar, ybar, l, cfg),
        PropertyKind::OpenAt => checks::open_at(&ctx, xbar, ybar, l, cfg),
        PropertyKind::Psdclm => checks::psdclm(&ctx, xbar, ybar, l, cfg),
        PropertyKind::Hemreg => checks::hemreg(&ctx, xbar, ybar, l, cfg),
        PropertyKind::Lpo => checks::lpo(&ctx, xbar, ybar, l, cfg),
        PropertyKind::Calm => checks::calm(&ctx, xbar, ybar, l, cfg),
        PropertyKind::CalmInverse => checks::calm_inverse(&ctx, xbar, ybar, l, cfg),
        PropertyKind::Subreg => checks::subreg(&ctx, xbar, ybar, l, cfg),
    };
    Ok(outcome.into_report(&format!("{}@L={l}", kind.name()), cfg))
}

/// Around-point triad at openness rate `L`: openness at `L`, Aubin property
/// of F⁻¹ and metric regularity of F at `1/L`, plus the reciprocity flag.
pub fn check_around_triad(
    mf: &FiniteMultifunction,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> Result<TriadReport, Error> {
    require_graph_point(mf, xbar, ybar)?;
    require_positive_rate(l)?;
    cfg.validate()?;
    let ctx = CheckCtx::new(mf, cfg.tol);
    let inv = 1.0 / l;
    let reports = [
        checks::open_around(&ctx, xbar, ybar, l, cfg).into_report(&format!("open_around@L={l}"), cfg),
        checks::aubin_inverse(&ctx, xbar, ybar, inv, cfg)
            .into_report(&format!("aubin_inverse@L={inv}"), cfg),
        checks::mreg(&ctx, xbar, ybar, inv, cfg).into_report(&format!("mreg@L={inv}"), cfg),
    ];
    let cross_consistent = reports.iter().all(|r| r.verdict == reports[0].verdict);
    Ok(TriadReport { triad: "around".into(), reports, cross_consistent })
}

/// Type-I at-point triad: openness at the point at rate `L`, pseudocalmness
/// of F⁻¹ and metric hemiregularity of F at `1/L`.
///
/// The latter two are one and the same sampled inequality
/// `d(x̄, F⁻¹(y)) ≤ L⁻¹ d(y, ȳ)`; they are computed once and reported under
/// both names so the reciprocity is visible in the report.
pub fn check_at1_triad(
    mf: &FiniteMultifunction,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> Result<TriadReport, Error> {
    require_graph_point(mf, xbar, ybar)?;
    require_positive_rate(l)?;
    cfg.validate()?;
    let ctx = CheckCtx::new(mf, cfg.tol);
    let inv = 1.0 / l;
    let open = checks::open_at(&ctx, xbar, ybar, l, cfg).into_report(&format!("open_at@L={l}"), cfg);
    let hem = checks::hemreg(&ctx, xbar, ybar, inv, cfg);
    let psd = hem.clone();
    let reports = [
        open,
        psd.into_report(&format!("psdclm_inverse@L={inv}"), cfg),
        hem.into_report(&format!("hemreg@L={inv}"), cfg),
    ];
    let cross_consistent = reports.iter().all(|r| r.verdict == reports[0].verdict);
    Ok(TriadReport { triad: "at_point_type_1".into(), reports, cross_consistent })
}

/// Type-II at-point triad: linear pseudo-openness at rate `L`, calmness of
/// F⁻¹ and metric subregularity of F at `1/L`.
pub fn check_at2_triad(
    mf: &FiniteMultifunction,
    xbar: &Point,
    ybar: &Point,
    l: f64,
    cfg: &NbhdConfig,
) -> Result<TriadReport, Error> {
    require_graph_point(mf, xbar, ybar)?;
    require_positive_rate(l)?;
    cfg.validate()?;
    let ctx = CheckCtx::new(mf, cfg.tol);
    let inv = 1.0 / l;
    let reports = [
        checks::lpo(&ctx, xbar, ybar, l, cfg).into_report(&format!("lpo@L={l}"), cfg),
        checks::calm_inverse(&ctx, xbar, ybar, inv, cfg)
            .into_report(&format!("calm_inverse@L={inv}"), cfg),
        checks::subreg(&ctx, xbar, ybar, inv, cfg).into_report(&format!("subreg@L={inv}"), cfg),
    ];
    let cross_consistent = reports.iter().all(|r| r.verdict == reports[0].verdict);
    Ok(TriadReport { triad: "at_point_type_2".into(), reports, cross_consistent })
}
