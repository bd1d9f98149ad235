//! Closed-form security bounds for mosaics of BIBDs and GDDs.
//!
//! Wiretap bounds are stated for `max exp(I(A∧Z,S))` and the total variation
//! criterion; privacy-amplification bounds for `max_α exp(D(P_{ZS|A=α}‖P_Z P_S))`
//! and its total variation analogue. Everything is evaluated in base 2.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::designs::{BibdParams, Certificate, GddParams, IncidenceStructure, Partition};
use crate::error::{Error, Result};

use super::{exp_d2_cond, BoundParams, Channel, DesignClass, JointXZ};

/// Wiretap coefficients in order: constant, `exp D₂(R_Π W‖P_X W|P_Π)`,
/// `exp D₂(W‖P_X W|P_X)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WtCoefficients {
    pub constant: f64,
    pub partition: f64,
    pub channel: f64,
}

/// Privacy-amplification coefficients in order: `2^{−H₂(X|Z=z)}`,
/// `2^{−H₂(X_Π|Z=z)}`, and the offset under the square root of the total
/// variation bound. The divergence bound uses `1 + offset` as its constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaCoefficients {
    pub entropy: f64,
    pub partition: f64,
    pub offset: f64,
}

pub fn wt_coefficients(p: &BoundParams) -> WtCoefficients {
    let kr = (p.k * p.r) as f64;
    let partition = (p.lambda1 as f64 - p.lambda2 as f64) * p.u as f64 / kr;
    let channel = (p.r - p.lambda1) as f64 / kr;
    WtCoefficients { constant: 1.0 - p.spread() / kr, partition, channel }
}

pub fn pa_coefficients(p: &BoundParams) -> PaCoefficients {
    let (a, r) = (p.a() as f64, p.r as f64);
    PaCoefficients {
        entropy: a * (r - p.lambda1 as f64) / r,
        partition: a * (p.lambda1 as f64 - p.lambda2 as f64) / r,
        offset: -p.spread() / (p.k * p.r) as f64,
    }
}

/// Coefficients written in the simplified form available for each class,
/// alongside the general ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Specialization {
    pub class: DesignClass,
    pub transversal: bool,
    pub general_wt: WtCoefficients,
    pub general_pa: PaCoefficients,
    pub special_wt: Option<WtCoefficients>,
    pub special_pa: Option<PaCoefficients>,
    /// Special and general forms agree to `1e-12`.
    pub consistent: bool,
}

pub fn specialized_coefficients(p: &BoundParams) -> Specialization {
    let (k, r, a, u) = (p.k as f64, p.r as f64, p.a() as f64, p.u as f64);
    let transversal = p.class == DesignClass::SemiRegular && p.lambda1 == 0 && p.k == p.v / p.u;
    let (special_wt, special_pa) = match p.class {
        DesignClass::Bibd => {
            let c = (r - p.lambda1 as f64) / (k * r);
            (
                Some(WtCoefficients { constant: 1.0 - c, partition: 0.0, channel: c }),
                Some(PaCoefficients { entropy: a * (r - p.lambda1 as f64) / r, partition: 0.0, offset: -c }),
            )
        }
        DesignClass::Singular => {
            // underlying BIBD: k* = k/u, r* = r, λ* = λ2
            let (ks, rs, ls) = (k / u, r, p.lambda2 as f64);
            let c = (rs - ls) / (ks * rs);
            (
                Some(WtCoefficients { constant: 1.0 - c, partition: c, channel: 0.0 }),
                Some(PaCoefficients { entropy: 0.0, partition: a * (rs - ls) / rs, offset: -c }),
            )
        }
        DesignClass::SemiRegular if transversal => (
            Some(WtCoefficients { constant: 1.0, partition: -1.0 / k, channel: 1.0 / k }),
            Some(PaCoefficients { entropy: a, partition: -1.0, offset: 0.0 }),
        ),
        DesignClass::SemiRegular => {
            let c = (r - p.lambda1 as f64) / (k * r);
            let e = a * (r - p.lambda1 as f64) / r;
            (
                Some(WtCoefficients { constant: 1.0, partition: -c, channel: c }),
                Some(PaCoefficients { entropy: e, partition: -e / u, offset: 0.0 }),
            )
        }
        DesignClass::Regular => (None, None),
    };
    let general_wt = wt_coefficients(p);
    let general_pa = pa_coefficients(p);
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-12;
    let consistent = special_wt.is_none_or(|s| {
        close(s.constant, general_wt.constant)
            && close(s.partition, general_wt.partition)
            && close(s.channel, general_wt.channel)
    }) && special_pa.is_none_or(|s| {
        close(s.entropy, general_pa.entropy)
            && close(s.partition, general_pa.partition)
            && close(s.offset, general_pa.offset)
    });
    Specialization { class: p.class, transversal, general_wt, general_pa, special_wt, special_pa, consistent }
}

/// `exp D₂(W‖P_X W|P_X)` and `exp D₂(R_Π W‖P_X W|P_Π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelDivergences {
    pub exp_d2_channel: f64,
    pub exp_d2_partition: f64,
}

pub fn channel_divergences(w: &Channel, partition: &Partition) -> Result<ChannelDivergences> {
    let q = w.uniform_output();
    let v = w.inputs();
    let rp = w.class_average(partition)?;
    let m = partition.class_count();
    Ok(ChannelDivergences {
        exp_d2_channel: exp_d2_cond(w, &q, &vec![1.0 / v as f64; v])?,
        exp_d2_partition: exp_d2_cond(&rp, &q, &vec![1.0 / m as f64; m])?,
    })
}

fn check_inputs(p: &BoundParams, n: usize) -> Result<()> {
    if n != p.v {
        return Err(Error::DimensionMismatch(format!("{n} inputs for a design on {} points", p.v)));
    }
    Ok(())
}

/// Upper bound on `max_{P_A} exp(I(A∧Z,S))`.
pub fn bound_wt(p: &BoundParams, w: &Channel) -> Result<f64> {
    check_inputs(p, w.inputs())?;
    let c = wt_coefficients(p);
    let d = channel_divergences(w, &p.partition)?;
    Ok(c.constant + c.partition * d.exp_d2_partition + c.channel * d.exp_d2_channel)
}

pub fn bound_wt_bibd(p: &BibdParams, w: &Channel) -> Result<f64> {
    bound_wt(&BoundParams::from_certificate(&Certificate::Bibd(*p))?, w)
}

pub fn bound_wt_gdd(p: &GddParams, w: &Channel) -> Result<f64> {
    bound_wt(&BoundParams::from_certificate(&Certificate::Gdd(p.clone()))?, w)
}

/// Upper bound on `max_{P_A} ‖P_{ZSA} − P_{ZS}P_A‖`.
pub fn bound_wt_tv(p: &BoundParams, w: &Channel) -> Result<f64> {
    Ok(2.0 * (bound_wt(p, w)? - 1.0).max(0.0).sqrt())
}

pub fn bound_wt_tv_bibd(p: &BibdParams, w: &Channel) -> Result<f64> {
    bound_wt_tv(&BoundParams::from_certificate(&Certificate::Bibd(*p))?, w)
}

pub fn bound_wt_tv_gdd(p: &GddParams, w: &Channel) -> Result<f64> {
    bound_wt_tv(&BoundParams::from_certificate(&Certificate::Gdd(p.clone()))?, w)
}

/// `max_z` of the per-`z` expression with coefficients `c`.
fn pa_max(p: &BoundParams, pxz: &JointXZ, c: &PaCoefficients) -> Result<f64> {
    check_inputs(p, pxz.inputs())?;
    Ok((0..pxz.outputs())
        .map(|z| {
            c.entropy * pxz.collision_given(z) + c.partition * pxz.class_collision_given(z, &p.partition) + c.offset
        })
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Upper bound on `max_α exp(D(P_{ZS|A=α}‖P_Z P_S))`.
pub fn bound_pa_kl(p: &BoundParams, pxz: &JointXZ) -> Result<f64> {
    Ok(1.0 + pa_max(p, pxz, &pa_coefficients(p))?)
}

/// Upper bound on `max_α ‖P_{ZS|A=α} − P_Z P_S‖`.
pub fn bound_pa_tv(p: &BoundParams, pxz: &JointXZ) -> Result<f64> {
    Ok(pa_max(p, pxz, &pa_coefficients(p))?.max(0.0).sqrt())
}

/// Wiretap bound of BIBD shape with `λ` replaced by `λ_max = max(λ1, λ2)`.
pub fn bound_wt_lambda_max(p: &BoundParams, w: &Channel) -> Result<f64> {
    check_inputs(p, w.inputs())?;
    let (c, d) = ((p.r - p.lambda_max()) as f64, p.lambda_max() as f64);
    Ok(generalized_wt(p.v, p.k, p.r, c, d, channel_divergences(w, &p.partition)?.exp_d2_channel))
}

/// Privacy-amplification bound of BIBD shape with `λ_max`.
pub fn bound_pa_lambda_max(p: &BoundParams, pxz: &JointXZ) -> Result<f64> {
    check_inputs(p, pxz.inputs())?;
    let (c, d) = ((p.r - p.lambda_max()) as f64, p.lambda_max() as f64);
    Ok(generalized_pa(p.v, p.k, p.r, c, d, pxz))
}

/// `dv/(kr) + c/(kr) · exp D₂(W‖P_X W|P_X)`.
fn generalized_wt(v: usize, k: usize, r: usize, c: f64, d: f64, exp_d2_channel: f64) -> f64 {
    let kr = (k * r) as f64;
    d * v as f64 / kr + c / kr * exp_d2_channel
}

/// `max_z (ac/r · 2^{−H₂(X|Z=z)} + ad/r)`.
fn generalized_pa(v: usize, k: usize, r: usize, c: f64, d: f64, pxz: &JointXZ) -> f64 {
    let a = v as f64 / k as f64;
    (0..pxz.outputs())
        .map(|z| a * c / r as f64 * pxz.collision_given(z) + a * d / r as f64)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Constants `(c, d)` with `wᵀNNᵀw ≤ c wᵀw + d (wᵀj)²` for nonnegative `w`,
/// from the two largest eigenvalues of `NNᵀ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralConstants {
    pub v: usize,
    pub k: usize,
    pub r: usize,
    pub mu1: f64,
    pub mu2: f64,
    pub c: f64,
    pub d: f64,
}

pub fn spectral_constants(n: &IncidenceStructure) -> Result<SpectralConstants> {
    let (v, b) = (n.v(), n.b());
    if v == 0 || b == 0 {
        return Err(Error::InvalidParameter("empty incidence structure".into()));
    }
    let k = n.column_sum(0);
    let r = n.row_sum(0);
    let gram = n.gram();
    let m = DMatrix::from_fn(v, v, |i, j| gram[i][j] as f64);
    let mut eig: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    let mu1 = eig[0];
    let mu2 = eig.get(1).copied().unwrap_or(0.0).max(0.0);
    Ok(SpectralConstants { v, k, r, mu1, mu2, c: mu2, d: (mu1 - mu2) / v as f64 })
}

/// Spectral bound on `exp D₂(P_{Z|S}‖P_Z|P_S)` for one tactical configuration.
pub fn generalized_bound_wt(n: &IncidenceStructure, w: &Channel) -> Result<f64> {
    let sc = spectral_constants(n)?;
    if w.inputs() != sc.v {
        return Err(Error::DimensionMismatch("channel and design disagree".into()));
    }
    let v = w.inputs();
    let e = exp_d2_cond(w, &w.uniform_output(), &vec![1.0 / v as f64; v])?;
    Ok(generalized_wt(sc.v, sc.k, sc.r, sc.c, sc.d, e))
}

/// Spectral bound on `max_z exp D₂(P_{S|Z=z}‖P_S)` for one tactical configuration.
pub fn generalized_bound_pa(n: &IncidenceStructure, pxz: &JointXZ) -> Result<f64> {
    let sc = spectral_constants(n)?;
    if pxz.inputs() != sc.v {
        return Err(Error::DimensionMismatch("source and design disagree".into()));
    }
    Ok(generalized_pa(sc.v, sc.k, sc.r, sc.c, sc.d, pxz))
}

/// Color-rate loss of a `u`-fold point multiple of BIBDs against a mosaic of
/// BIBDs or semi-regular GDDs at the same security target `δ`, when the
/// partition divergence is as large as the channel divergence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateLoss {
    /// `1 − (D₂(W) + log(1/δ))/log v`.
    pub reference_rate: f64,
    /// `reference_rate − log u / log v`.
    pub singular_rate: f64,
    pub loss: f64,
}

pub fn singular_rate_loss(v: usize, u: usize, d2_channel: f64, delta: f64) -> Result<RateLoss> {
    if v < 2 || u == 0 || !(delta > 0.0) {
        return Err(Error::InvalidParameter("need v ≥ 2, u ≥ 1, δ > 0".into()));
    }
    let lv = (v as f64).log2();
    let reference_rate = 1.0 - (d2_channel + (1.0 / delta).log2()) / lv;
    let loss = (u as f64).log2() / lv;
    Ok(RateLoss { reference_rate, singular_rate: reference_rate - loss, loss })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bibd(v: usize, b: usize, k: usize, r: usize, lambda: usize) -> BoundParams {
        BoundParams::from_certificate(&Certificate::Bibd(BibdParams { v, b, k, r, lambda })).unwrap()
    }

    #[test]
    fn identity_channel_bibd_gives_a() {
        // AG(2,3): v=9, b=12, k=3, r=4, λ=1
        let p = bibd(9, 12, 3, 4, 1);
        let bnd = bound_wt(&p, &Channel::identity(9)).unwrap();
        assert!((bnd - 3.0).abs() < 1e-12);
        let tv = bound_wt_tv(&p, &Channel::identity(9)).unwrap();
        let expect = 2.0 * (3.0f64 * 8.0 / 12.0).sqrt();
        assert!((tv - expect).abs() < 1e-12);
    }

    #[test]
    fn constant_channel_gives_one() {
        let p = bibd(9, 12, 3, 4, 1);
        let w = Channel::constant(9, &[0.25, 0.75]).unwrap();
        assert!((bound_wt(&p, &w).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(bound_wt_tv(&p, &w).unwrap(), 0.0);
    }

    #[test]
    fn lambda_equal_gdd_matches_bibd() {
        let pb = bibd(4, 6, 2, 3, 1);
        let pg =
            BoundParams { u: 2, partition: Partition::consecutive(2, 2), class: DesignClass::Regular, ..pb.clone() };
        let w = Channel::symmetric(4, 0.3).unwrap();
        assert!((bound_wt(&pb, &w).unwrap() - bound_wt(&pg, &w).unwrap()).abs() < 1e-15);
        let pxz = JointXZ::from_channel(&[0.1, 0.2, 0.3, 0.4], &w).unwrap();
        assert!((bound_pa_kl(&pb, &pxz).unwrap() - bound_pa_kl(&pg, &pxz).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn independent_source_pa_bound() {
        // X uniform, Z independent: 2^{−H₂(X|z)} = 1/v, bound = a(r−λ)/(rv) + 1 − (r−λ)/(kr) = 1
        let p = bibd(9, 12, 3, 4, 1);
        let pxz = JointXZ::new(vec![vec![1.0 / 18.0; 2]; 9]).unwrap();
        assert!((bound_pa_kl(&p, &pxz).unwrap() - 1.0).abs() < 1e-12);
        assert!(bound_pa_tv(&p, &pxz).unwrap() < 1e-6);
    }

    #[test]
    fn rate_loss_is_log_u_over_log_v() {
        let l = singular_rate_loss(64, 4, 1.0, 0.5).unwrap();
        assert!((l.loss - 2.0 / 6.0).abs() < 1e-15);
        assert!((l.reference_rate - (1.0 - 2.0 / 6.0)).abs() < 1e-15);
    }
}
