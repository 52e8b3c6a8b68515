use serde::{Deserialize, Serialize};

use crate::ExtReal;

/// Quantifier discretization for one regularity check.
///
/// The ∃ε quantifiers of the openness definitions are swept over `rho_grid`
/// (a decreasing list inside `(0, eps)`), the ∃-neighborhood quantifiers
/// over the fixed radii `r_u` (domain side), `r_v` (codomain side) and `r_w`
/// (codomain side of parametric checks). `l_grid` is the geometric grid of
/// candidate rates for the rate-kind estimators. `tol` is both the
/// inequality slack and the base membership tolerance: ties at exactly
/// `L·d(·)` count as holding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NbhdConfig {
    #[serde(rename = "r_U")]
    pub r_u: f64,
    #[serde(rename = "r_V")]
    pub r_v: f64,
    #[serde(rename = "r_W")]
    pub r_w: f64,
    pub eps: f64,
    pub rho_grid: Vec<f64>,
    #[serde(rename = "L_grid")]
    pub l_grid: Vec<f64>,
    pub tol: f64,
}

impl NbhdConfig {
    /// Default sweep at codomain resolution `h_y`: radii 0.25, ε = 0.5,
    /// five dyadic ρ values, rate grid 2⁻⁶…2⁶, tol = `h_y/2`.
    pub fn at_resolution(h_y: f64) -> Self {
        let eps = 0.5;
        let rho_grid = (1..=5).map(|j| eps / f64::powi(2.0, j)).collect();
        let l_grid = (-6..=6).map(|k| f64::powi(2.0, k)).collect();
        NbhdConfig {
            r_u: 0.25,
            r_v: 0.25,
            r_w: 0.25,
            eps,
            rho_grid,
            l_grid,
            tol: h_y / 2.0,
        }
    }

    pub fn with_radii(mut self, r_u: f64, r_v: f64) -> Self {
        self.r_u = r_u;
        self.r_v = r_v;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<(), super::Error> {
        if self.r_u <= 0.0 || self.r_v <= 0.0 || self.r_w <= 0.0 || self.eps <= 0.0 {
            return Err(super::Error::BadConfig("radii and eps must be positive".into()));
        }
        if self.tol < 0.0 {
            return Err(super::Error::BadConfig("tol must be nonnegative".into()));
        }
        let mut prev = self.eps;
        for &r in &self.rho_grid {
            if r <= 0.0 || r >= self.eps || r > prev {
                return Err(super::Error::BadConfig(
                    "rho_grid must decrease inside (0, eps)".into(),
                ));
            }
            prev = r;
        }
        if self.rho_grid.is_empty() {
            return Err(super::Error::BadConfig("rho_grid must be nonempty".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HoldsAtResolution,
    Fails,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::HoldsAtResolution
    }
}

/// The sampled tuple violating a defining inequality, with the violation
/// magnitude (how far beyond `L·d(·) + tol` the left side landed).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub tuple: Vec<Vec<f64>>,
    pub violation: ExtReal,
    pub detail: String,
}

/// Verdict of one quantified regularity property at fixed resolution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub property: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(rename = "config")]
    pub swept: NbhdConfig,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

/// Modulus kinds. Ratio kinds report the exact supremum of the sampled
/// ratios; rate kinds (lop, plop, lpo) report the largest rate surviving the
/// corresponding check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModulusKind {
    Lop,
    Lip,
    Reg,
    Plop,
    Psdclm,
    Hemreg,
    Lpo,
    Clm,
    Subreg,
}

impl ModulusKind {
    pub fn is_rate(self) -> bool {
        matches!(self, ModulusKind::Lop | ModulusKind::Plop | ModulusKind::Lpo)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulusEstimate {
    pub kind: ModulusKind,
    pub value: ExtReal,
    pub resolution: (f64, f64),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmax_witness: Option<(Vec<f64>, Vec<f64>)>,
    /// Set when no sampled point survived the denominator cutoff.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

/// The three reports of one triad plus the reciprocity flag: true iff the
/// verdicts agree as the corresponding equivalence proposition requires on
/// identical neighborhoods.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriadReport {
    pub triad: String,
    pub reports: [CheckReport; 3],
    pub cross_consistent: bool,
}

impl TriadReport {
    pub fn all_hold(&self) -> bool {
        self.reports.iter().all(CheckReport::holds)
    }
}
