//! Checkers and modulus estimators for the three regularity triads
//! (around-point, at-point type I, at-point type II) and their parametric
//! variants, on sampled multifunctions.
//!
//! A verdict of `holds_at_resolution` is explicitly not a proof: each
//! report records the swept quantifier domain. Triads take the openness
//! rate `L` and run the metric-side inequalities at `1/L`, matching the
//! reciprocity of the exact bounds.

mod checks;
mod ctx;
mod estimate;
mod parametric;
mod report;
mod triad;

pub use estimate::estimate_modulus;
pub use parametric::{
    check_parametric, estimate_param_aubin, estimate_param_calm, ParamDirection, ParamKind,
};
pub use report::{
    CheckReport, ModulusEstimate, ModulusKind, NbhdConfig, TriadReport, Verdict, Witness,
};
pub use triad::{
    check_around_triad, check_at1_triad, check_at2_triad, check_property, PropertyKind,
};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("reference point is not on the sampled graph")]
    NotOnGraph,
    #[error("bad configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Core(#[from] crate::setcore::Error),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcore::lattice_1d;
    use crate::{ExtReal, FiniteMultifunction, FiniteSet, MfMeta, NormSpec, Point, Window};

    pub(crate) fn sampled_1d(
        h: f64,
        extent: f64,
        win: f64,
        img: impl Fn(f64) -> Vec<f64>,
    ) -> FiniteMultifunction {
        let xs = lattice_1d(-extent, extent, h);
        FiniteMultifunction::new(
            xs.iter().map(|&x| Point::scalar(x)).collect(),
            xs.iter().map(|&x| FiniteSet::from_scalars(img(x))).collect(),
            MfMeta {
                h_x: h,
                h_y: h,
                window: Window::symmetric_1d(win),
                x_norm: NormSpec::Max,
                y_norm: NormSpec::Max,
                x_dim: 1,
                y_dim: 1,
            },
        )
        .unwrap()
    }

    fn origin() -> Point {
        Point::scalar(0.0)
    }

    #[test]
    fn identity_around_triad_holds_below_rate_one() {
        let f = sampled_1d(0.01, 1.0, 1.0, |x| vec![x]);
        let cfg = NbhdConfig::at_resolution(0.01);
        let t = check_around_triad(&f, &origin(), &origin(), 0.9, &cfg).unwrap();
        assert!(t.all_hold(), "{:?}", t.reports.iter().map(|r| (&r.property, r.verdict)).collect::<Vec<_>>());
        assert!(t.cross_consistent);
    }

    #[test]
    fn doubling_map_around_triad_transitions_at_rate_two() {
        let f = sampled_1d(0.01, 1.0, 2.0, |x| vec![2.0 * x]);
        let cfg = NbhdConfig::at_resolution(0.01);
        let pass = check_around_triad(&f, &origin(), &origin(), 1.9, &cfg).unwrap();
        assert!(pass.all_hold(), "{:?}", pass.reports.iter().map(|r| (&r.property, r.verdict, &r.witness)).collect::<Vec<_>>());
        assert!(pass.cross_consistent);
        let fail = check_around_triad(&f, &origin(), &origin(), 2.1, &cfg).unwrap();
        assert!(!fail.all_hold());
        assert!(fail.cross_consistent, "{:?}", fail.reports.iter().map(|r| (&r.property, r.verdict)).collect::<Vec<_>>());
    }

    #[test]
    fn constant_map_fails_metric_regularity_with_infinite_witness() {
        let f = sampled_1d(0.01, 1.0, 1.0, |_| vec![0.0]);
        let cfg = NbhdConfig::at_resolution(0.01);
        for l in [0.5, 2.0, 50.0] {
            let r = check_property(&f, PropertyKind::Mreg, &origin(), &origin(), l, &cfg).unwrap();
            assert_eq!(r.verdict, Verdict::Fails);
            let w = r.witness.expect("failing check carries a witness");
            assert!(w.violation.is_inf());
            assert!(w.tuple[1][0] != 0.0, "witness target must be y != 0");
        }
    }

    #[test]
    fn identity_at1_triad_holds() {
        let f = sampled_1d(0.01, 1.0, 1.0, |x| vec![x]);
        let cfg = NbhdConfig::at_resolution(0.01);
        let t = check_at1_triad(&f, &origin(), &origin(), 0.9, &cfg).unwrap();
        assert!(t.all_hold());
        assert!(t.cross_consistent);
    }

    #[test]
    fn square_map_fails_openness_at_point() {
        let f = sampled_1d(0.01, 1.0, 1.0, |x| vec![x * x]);
        let cfg = NbhdConfig::at_resolution(0.01);
        for l in [0.25, 1.0, 4.0] {
            let t = check_at1_triad(&f, &origin(), &origin(), l, &cfg).unwrap();
            assert_eq!(t.reports[0].verdict, Verdict::Fails, "open_at must fail at L={l}");
            // witness target sits below zero
            let w = t.reports[0].witness.as_ref().unwrap();
            assert!(w.tuple[2][0] < 0.0);
            assert!(t.cross_consistent);
        }
    }

    #[test]
    fn doubling_map_at1_reciprocity_estimates() {
        let f = sampled_1d(0.001, 1.0, 2.0, |x| vec![2.0 * x]);
        let cfg = NbhdConfig::at_resolution(0.001);
        let plop = estimate_modulus(&f, &origin(), &origin(), ModulusKind::Plop, &cfg).unwrap();
        let psdclm_inv =
            estimate_modulus(&f.invert(), &origin(), &origin(), ModulusKind::Psdclm, &cfg).unwrap();
        let plop_v = plop.value.expect_finite();
        let psd_v = psdclm_inv.value.expect_finite();
        assert!((plop_v - 2.0).abs() < 0.05, "plop ~ 2, got {plop_v}");
        assert!((psd_v - 0.5).abs() < 0.01, "psdclm of inverse ~ 1/2, got {psd_v}");
        assert!((plop_v * psd_v - 1.0).abs() < 0.03);
    }

    #[test]
    fn at2_triad_on_complement_ray_map() {
        // S(p) = R \ (-|p|, |p|) sampled; subregular and calm with constant 1.
        let h = 0.01;
        let xs = lattice_1d(-1.0, 1.0, h);
        let f = FiniteMultifunction::new(
            xs.iter().map(|&p| Point::scalar(p)).collect(),
            xs.iter()
                .map(|&p| {
                    FiniteSet::from_scalars(
                        lattice_1d(-1.0, 1.0, h).into_iter().filter(|&x| x.abs() >= p.abs()),
                    )
                })
                .collect(),
            MfMeta {
                h_x: h,
                h_y: h,
                window: Window::symmetric_1d(1.0),
                x_norm: NormSpec::Max,
                y_norm: NormSpec::Max,
                x_dim: 1,
                y_dim: 1,
            },
        )
        .unwrap();
        // metric-side constant 1 + 1e-6 corresponds to rate L = 1/(1+1e-6)
        let l = 1.0 / (1.0 + 1e-6);
        let cfg = NbhdConfig::at_resolution(h);
        let t = check_at2_triad(&f, &origin(), &origin(), l, &cfg).unwrap();
        assert!(t.reports[1].holds(), "calm of inverse: {:?}", t.reports[1].witness);
        assert!(t.reports[2].holds(), "subreg: {:?}", t.reports[2].witness);
        assert!(t.all_hold());
        assert!(t.cross_consistent);
    }

    #[test]
    fn constant_map_subregularity_trivially_holds() {
        let f = sampled_1d(0.01, 1.0, 1.0, |_| vec![0.0]);
        let cfg = NbhdConfig::at_resolution(0.01);
        let r = check_property(&f, PropertyKind::Subreg, &origin(), &origin(), 0.01, &cfg).unwrap();
        assert!(r.holds());
        let e = estimate_modulus(&f, &origin(), &origin(), ModulusKind::Subreg, &cfg).unwrap();
        assert_eq!(e.value, ExtReal::Finite(0.0));
        assert!(e.degenerate);
    }

    #[test]
    fn doubling_map_at2_estimates() {
        let f = sampled_1d(0.001, 1.0, 2.0, |x| vec![2.0 * x]);
        let cfg = NbhdConfig::at_resolution(0.001);
        let subreg = estimate_modulus(&f, &origin(), &origin(), ModulusKind::Subreg, &cfg).unwrap();
        assert!((subreg.value.expect_finite() - 0.5).abs() < 0.01);
        let clm_inv =
            estimate_modulus(&f.invert(), &origin(), &origin(), ModulusKind::Clm, &cfg).unwrap();
        assert!((clm_inv.value.expect_finite() - 0.5).abs() < 0.01);
        let lpo = estimate_modulus(&f, &origin(), &origin(), ModulusKind::Lpo, &cfg).unwrap();
        assert!((lpo.value.expect_finite() - 2.0).abs() < 0.04, "lpo = {:?}", lpo.value);
    }

    #[test]
    fn around_implies_both_at_point_triads() {
        for (h, slope) in [(0.01, 1.0), (0.01, 2.0)] {
            let f = sampled_1d(h, 1.0, 2.0, move |x| vec![slope * x]);
            let cfg = NbhdConfig::at_resolution(h);
            let l = 0.8 * slope;
            let around = check_around_triad(&f, &origin(), &origin(), l, &cfg).unwrap();
            assert!(around.all_hold());
            let at1 = check_at1_triad(&f, &origin(), &origin(), l, &cfg).unwrap();
            let at2 = check_at2_triad(&f, &origin(), &origin(), l, &cfg).unwrap();
            assert!(at1.all_hold());
            assert!(at2.all_hold());
        }
    }

    #[test]
    fn monotone_in_rate_for_ratio_style_checks() {
        let f = sampled_1d(0.01, 1.0, 2.0, |x| vec![2.0 * x]);
        let cfg = NbhdConfig::at_resolution(0.01);
        let mut held = false;
        for l in [0.1, 0.3, 0.5, 0.7, 1.0] {
            let r = check_property(&f, PropertyKind::Subreg, &origin(), &origin(), l, &cfg).unwrap();
            if held {
                assert!(r.holds(), "subreg must stay holding as L grows (L={l})");
            }
            held = held || r.holds();
        }
        assert!(held);
    }

    #[test]
    fn off_graph_base_point_is_an_error() {
        let f = sampled_1d(0.01, 1.0, 1.0, |x| vec![x]);
        let cfg = NbhdConfig::at_resolution(0.01);
        let r = check_at2_triad(&f, &origin(), &Point::scalar(0.5), 1.0, &cfg);
        assert!(matches!(r, Err(Error::NotOnGraph)));
    }
}
