//! Exact metrics and bounds side by side.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::designs::{Certificate, IncidenceStructure};
use crate::error::Result;
use crate::mosaics::FunctionalForm;

use super::*;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecurityReport {
    pub scenario: String,
    pub exact: BTreeMap<String, f64>,
    pub bounds: BTreeMap<String, f64>,
    /// Every bound dominates the metric it controls.
    pub dominates: bool,
    /// Names of the failed comparisons, empty when `dominates`.
    pub violations: Vec<String>,
    pub coefficients: Specialization,
}

/// `exact ≤ bound` up to a relative slack.
pub fn dominated(exact: f64, bound: f64, tol: f64) -> bool {
    exact <= bound + tol * bound.abs().max(1.0)
}

fn member(ff: &dyn FunctionalForm, alpha: usize) -> IncidenceStructure {
    IncidenceStructure::from_fn(ff.points(), ff.blocks(), |x, s| ff.color(x, s) == alpha)
}

struct Checker {
    tol: f64,
    violations: Vec<String>,
}

impl Checker {
    fn le(&mut self, name: &str, exact: f64, bound: f64) {
        if !dominated(exact, bound, self.tol) {
            self.violations.push(format!("{name}: {exact} > {bound}"));
        }
    }
}

/// Wiretap metrics at `p_a` against the bounds for the mosaic's parameters.
/// The spectral bound is the maximum over members.
pub fn wiretap_report(
    ff: &dyn FunctionalForm,
    cert: &Certificate,
    w: &Channel,
    p_a: &[f64],
    tol: f64,
) -> Result<SecurityReport> {
    let params = BoundParams::from_certificate(cert)?;
    let j = wiretap_joint(ff, w, p_a)?;
    let m = exact_wiretap_metrics(&j);
    let div_bound = bound_wt(&params, w)?;
    let tv_bound = bound_wt_tv(&params, w)?;
    let lmax = bound_wt_lambda_max(&params, w)?;
    let mut spectral = f64::NEG_INFINITY;
    for alpha in 0..ff.colors() {
        spectral = spectral.max(generalized_bound_wt(&member(ff, alpha), w)?);
    }
    let p_z_gap = j.p_z_from_tensor().iter().zip(j.p_z()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);

    let mut c = Checker { tol, violations: Vec::new() };
    c.le("mutual information vs divergence bound", m.mutual_information, div_bound.log2());
    c.le("max exp D2 vs divergence bound", m.max_exp_d2_cond, div_bound);
    c.le("max exp D2 vs lambda_max bound", m.max_exp_d2_cond, lmax);
    c.le("max exp D2 vs spectral bound", m.max_exp_d2_cond, spectral);
    c.le("tv metric vs tv bound", m.tv_metric, tv_bound);
    c.le("tv upper vs tv bound", m.tv_upper, tv_bound);
    c.le("mutual information vs max KL", m.mutual_information, m.max_kl_cond);
    c.le("max KL vs max D2", m.max_kl_cond, m.max_d2_cond);
    c.le("tv metric vs tv upper", m.tv_metric, m.tv_upper);
    if p_z_gap > NORMALIZATION_TOL {
        c.violations.push(format!("P_Z two ways differ by {p_z_gap}"));
    }

    let exact = BTreeMap::from([
        ("mutual_information".into(), m.mutual_information),
        ("max_kl_cond".into(), m.max_kl_cond),
        ("max_d2_cond".into(), m.max_d2_cond),
        ("max_exp_d2_cond".into(), m.max_exp_d2_cond),
        ("tv_metric".into(), m.tv_metric),
        ("tv_upper".into(), m.tv_upper),
        ("p_z_discrepancy".into(), p_z_gap),
    ]);
    let bounds = BTreeMap::from([
        ("divergence".into(), div_bound),
        ("total_variation".into(), tv_bound),
        ("lambda_max".into(), lmax),
        ("spectral".into(), spectral),
    ]);
    Ok(SecurityReport {
        scenario: "wiretap".into(),
        exact,
        bounds,
        dominates: c.violations.is_empty(),
        violations: c.violations,
        coefficients: specialized_coefficients(&params),
    })
}

/// Privacy-amplification metrics against the bounds for the mosaic's
/// parameters, including exact key uniformity.
pub fn pa_report(ff: &dyn FunctionalForm, cert: &Certificate, pxz: &JointXZ, tol: f64) -> Result<SecurityReport> {
    let params = BoundParams::from_certificate(cert)?;
    let j = pa_joint(ff, pxz)?;
    let m = exact_pa_metrics(&j);
    let key = key_uniformity_exact(ff, pxz)?;
    let div_bound = bound_pa_kl(&params, pxz)?;
    let tv_bound = bound_pa_tv(&params, pxz)?;
    let lmax = bound_pa_lambda_max(&params, pxz)?;
    let mut spectral = f64::NEG_INFINITY;
    for alpha in 0..ff.colors() {
        spectral = spectral.max(generalized_bound_pa(&member(ff, alpha), pxz)?);
    }

    let mut c = Checker { tol, violations: Vec::new() };
    c.le("max KL vs divergence bound", m.max_kl, div_bound.log2());
    c.le("max seed exp D2 vs divergence bound", m.max_exp_d2_seed, div_bound);
    c.le("max seed exp D2 vs lambda_max bound", m.max_exp_d2_seed, lmax);
    c.le("max seed exp D2 vs spectral bound", m.max_exp_d2_seed, spectral);
    c.le("max tv vs tv bound", m.max_tv, tv_bound);
    c.le("mutual information vs max KL", m.mutual_information, m.max_kl);
    if !key.uniform {
        c.violations.push("key marginal is not exactly uniform".into());
    }

    let exact = BTreeMap::from([
        ("max_kl".into(), m.max_kl),
        ("max_tv".into(), m.max_tv),
        ("mutual_information".into(), m.mutual_information),
        ("max_exp_d2_seed".into(), m.max_exp_d2_seed),
        ("key_deviation".into(), m.key_deviation),
        ("key_uniform_exact".into(), if key.uniform { 1.0 } else { 0.0 }),
    ]);
    let bounds = BTreeMap::from([
        ("divergence".into(), div_bound),
        ("total_variation".into(), tv_bound),
        ("lambda_max".into(), lmax),
        ("spectral".into(), spectral),
    ]);
    Ok(SecurityReport {
        scenario: "privacy-amplification".into(),
        exact,
        bounds,
        dominates: c.violations.is_empty(),
        violations: c.violations,
        coefficients: specialized_coefficients(&params),
    })
}
