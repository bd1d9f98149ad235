//! Wiretap and privacy-amplification joints built from a functional form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mosaics::FunctionalForm;

use super::{exp_d2, kl, mutual_information, tv, Channel, JointXZ, NORMALIZATION_TOL};

fn color_table(ff: &dyn FunctionalForm) -> Vec<u32> {
    let (v, b) = (ff.points(), ff.blocks());
    let mut t = Vec::with_capacity(v * b);
    for x in 0..v {
        for s in 0..b {
            t.push(ff.color(x, s) as u32);
        }
    }
    t
}

fn check_distribution(p: &[f64], len: usize, what: &str) -> Result<()> {
    if p.len() != len {
        return Err(Error::DimensionMismatch(format!("{what} has length {}, expected {len}", p.len())));
    }
    if p.iter().any(|&q| !q.is_finite() || q < 0.0) {
        return Err(Error::InvalidDistribution(format!("{what} has a negative entry")));
    }
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::InvalidDistribution(format!("{what} sums to {s}")));
    }
    Ok(())
}

/// `P_{ZXSA}(z,x,s,α) = w(z|x) N_α(x,s) P_A(α) / (bk)`, stored through the
/// member conditionals `P_{Z|S,A=α}`.
#[derive(Clone, Debug)]
pub struct WiretapJoint {
    v: usize,
    b: usize,
    a: usize,
    k: usize,
    nz: usize,
    colors: Vec<u32>,
    w: Channel,
    p_a: Vec<f64>,
    /// `P_{Z|S,A}(z|s,α)` at `(α·b + s)·|Z| + z`.
    cond: Vec<f64>,
    /// `P_X W` with `P_X` uniform.
    p_z: Vec<f64>,
}

pub fn wiretap_joint(ff: &dyn FunctionalForm, w: &Channel, p_a: &[f64]) -> Result<WiretapJoint> {
    let (v, b, a, k) = (ff.points(), ff.blocks(), ff.colors(), ff.preimage_size());
    if w.inputs() != v {
        return Err(Error::DimensionMismatch(format!("channel has {} inputs, mosaic has {v} points", w.inputs())));
    }
    check_distribution(p_a, a, "P_A")?;
    let nz = w.outputs();
    let colors = color_table(ff);
    let mut cond = vec![0.0; a * b * nz];
    for x in 0..v {
        let row = w.row(x);
        for s in 0..b {
            let alpha = colors[x * b + s] as usize;
            let base = (alpha * b + s) * nz;
            for (c, &p) in cond[base..base + nz].iter_mut().zip(row) {
                *c += p;
            }
        }
    }
    cond.iter_mut().for_each(|c| *c /= k as f64);
    let j = WiretapJoint { v, b, a, k, nz, colors, p_z: w.uniform_output(), w: w.clone(), p_a: p_a.to_vec(), cond };
    let total: f64 = j.p_zsa_rows().iter().flatten().sum();
    if !w.is_substochastic() && (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!("wiretap joint sums to {total}")));
    }
    Ok(j)
}

impl WiretapJoint {
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (self.v, self.b, self.a, self.nz)
    }

    pub fn p_a(&self) -> &[f64] {
        &self.p_a
    }

    /// `P_{Z|S=s,A=α}`.
    pub fn member_conditional(&self, alpha: usize, s: usize) -> &[f64] {
        let base = (alpha * self.b + s) * self.nz;
        &self.cond[base..base + self.nz]
    }

    /// Full tensor entry `P_{ZXSA}(z,x,s,α)`.
    pub fn p_zxsa(&self, z: usize, x: usize, s: usize, alpha: usize) -> f64 {
        if self.colors[x * self.b + s] as usize != alpha {
            return 0.0;
        }
        self.w.get(x, z) * self.p_a[alpha] / (self.b * self.k) as f64
    }

    /// `P_{ZSA}` as rows indexed by `α`, columns by `s·|Z| + z`.
    pub fn p_zsa_rows(&self) -> Vec<Vec<f64>> {
        (0..self.a)
            .map(|alpha| {
                let scale = self.p_a[alpha] / self.b as f64;
                let base = alpha * self.b * self.nz;
                self.cond[base..base + self.b * self.nz].iter().map(|c| c * scale).collect()
            })
            .collect()
    }

    /// `P_Z = P_X W`, independent of `P_A`.
    pub fn p_z(&self) -> &[f64] {
        &self.p_z
    }

    /// `P_Z` as the marginal of the tensor.
    pub fn p_z_from_tensor(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.nz];
        for row in self.p_zsa_rows() {
            for (i, p) in row.iter().enumerate() {
                out[i % self.nz] += p;
            }
        }
        out
    }

    /// Marginal over `(z, s)` of the tensor, indexed `s·|Z| + z`.
    pub fn p_zs(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.b * self.nz];
        for row in self.p_zsa_rows() {
            out.iter_mut().zip(&row).for_each(|(o, p)| *o += p);
        }
        out
    }

    /// `exp(D₂(P_{Z|S,A=α}‖P_Z|P_S))`.
    pub fn member_exp_d2(&self, alpha: usize) -> f64 {
        (0..self.b).map(|s| exp_d2(self.member_conditional(alpha, s), &self.p_z).expect("lengths")).sum::<f64>()
            / self.b as f64
    }

    /// `D(P_{Z|S,A=α}‖P_Z|P_S)`.
    pub fn member_kl(&self, alpha: usize) -> f64 {
        (0..self.b).map(|s| kl(self.member_conditional(alpha, s), &self.p_z).expect("lengths")).sum::<f64>()
            / self.b as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WiretapMetrics {
    /// `I(A∧Z,S)` at the supplied `P_A`.
    pub mutual_information: f64,
    /// `max_α D(P_{Z|S,A=α}‖P_Z|P_S)`.
    pub max_kl_cond: f64,
    /// `max_α D₂(P_{Z|S,A=α}‖P_Z|P_S)`.
    pub max_d2_cond: f64,
    /// `max_α exp(D₂(P_{Z|S,A=α}‖P_Z|P_S))`.
    pub max_exp_d2_cond: f64,
    /// `‖P_{ZSA} − P_{ZS}P_A‖`.
    pub tv_metric: f64,
    /// `2 max_α ‖P_{ZS|A=α} − P_Z P_S‖`.
    pub tv_upper: f64,
}

impl WiretapMetrics {
    /// `I ≤ max KL ≤ max D₂` and `tv_metric ≤ tv_upper`, up to `tol`.
    pub fn chain_holds(&self, tol: f64) -> bool {
        self.mutual_information <= self.max_kl_cond + tol
            && self.max_kl_cond <= self.max_d2_cond + tol
            && self.tv_metric <= self.tv_upper + tol
    }
}

pub fn exact_wiretap_metrics(j: &WiretapJoint) -> WiretapMetrics {
    let rows = j.p_zsa_rows();
    let p_zs = j.p_zs();
    let mut tv_metric = 0.0;
    for (row, &pa) in rows.iter().zip(&j.p_a) {
        tv_metric += row.iter().zip(&p_zs).map(|(p, q)| (p - q * pa).abs()).sum::<f64>();
    }
    let product: Vec<f64> = (0..j.b).flat_map(|_| j.p_z.iter().map(|p| p / j.b as f64)).collect();
    let mut max_kl = f64::NEG_INFINITY;
    let mut max_exp = f64::NEG_INFINITY;
    let mut max_tv = 0.0f64;
    for alpha in 0..j.a {
        max_kl = max_kl.max(j.member_kl(alpha));
        max_exp = max_exp.max(j.member_exp_d2(alpha));
        let base = alpha * j.b * j.nz;
        let member: Vec<f64> = j.cond[base..base + j.b * j.nz].iter().map(|c| c / j.b as f64).collect();
        max_tv = max_tv.max(tv(&member, &product).expect("lengths"));
    }
    WiretapMetrics {
        mutual_information: mutual_information(&rows).expect("rectangular"),
        max_kl_cond: max_kl,
        max_d2_cond: max_exp.log2(),
        max_exp_d2_cond: max_exp,
        tv_metric,
        tv_upper: 2.0 * max_tv,
    }
}

/// `P_{XZSA}(x,z,s,α) = P_XZ(x,z) N_α(x,s) / b`, stored through `P_{ZSA}`.
#[derive(Clone, Debug)]
pub struct PaJoint {
    v: usize,
    b: usize,
    a: usize,
    r: usize,
    nz: usize,
    colors: Vec<u32>,
    pxz: JointXZ,
    /// `P_{ZSA}(z,s,α)` at `(α·b + s)·|Z| + z`.
    p_zsa: Vec<f64>,
}

pub fn pa_joint(ff: &dyn FunctionalForm, pxz: &JointXZ) -> Result<PaJoint> {
    let (v, b, a, k) = (ff.points(), ff.blocks(), ff.colors(), ff.preimage_size());
    if pxz.inputs() != v {
        return Err(Error::DimensionMismatch(format!("P_XZ has {} inputs, mosaic has {v} points", pxz.inputs())));
    }
    let nz = pxz.outputs();
    let colors = color_table(ff);
    let mut p_zsa = vec![0.0; a * b * nz];
    for x in 0..v {
        let row = &pxz.rows()[x];
        for s in 0..b {
            let base = (colors[x * b + s] as usize * b + s) * nz;
            for (c, &p) in p_zsa[base..base + nz].iter_mut().zip(row) {
                *c += p / b as f64;
            }
        }
    }
    let total: f64 = p_zsa.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!("privacy-amplification joint sums to {total}")));
    }
    Ok(PaJoint { v, b, a, r: b * k / v, nz, colors, pxz: pxz.clone(), p_zsa })
}

impl PaJoint {
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (self.v, self.b, self.a, self.nz)
    }

    pub fn p_zsa(&self, z: usize, s: usize, alpha: usize) -> f64 {
        self.p_zsa[(alpha * self.b + s) * self.nz + z]
    }

    /// Full tensor entry `P_{XZSA}(x,z,s,α)`.
    pub fn p_xzsa(&self, x: usize, z: usize, s: usize, alpha: usize) -> f64 {
        if self.colors[x * self.b + s] as usize != alpha {
            return 0.0;
        }
        self.pxz.get(x, z) / self.b as f64
    }

    pub fn key_marginal(&self) -> Vec<f64> {
        let block = self.b * self.nz;
        self.p_zsa.chunks(block).map(|c| c.iter().sum()).collect()
    }

    pub fn p_z(&self) -> Vec<f64> {
        self.pxz.marginal_z()
    }

    /// `P_{S|Z=z,A=α}` computed from the tensor.
    pub fn seed_given(&self, z: usize, alpha: usize) -> Vec<f64> {
        let col: Vec<f64> = (0..self.b).map(|s| self.p_zsa(z, s, alpha)).collect();
        let total: f64 = col.iter().sum();
        col.into_iter().map(|p| p / total).collect()
    }

    /// `(p_z^T N_α)(s) / (r p_z^T j)`.
    pub fn seed_given_closed_form(&self, z: usize, alpha: usize) -> Vec<f64> {
        let pz = self.pxz.p_z(z);
        let mass: f64 = pz.iter().sum();
        (0..self.b)
            .map(|s| {
                let hit: f64 =
                    (0..self.v).filter(|&x| self.colors[x * self.b + s] as usize == alpha).map(|x| pz[x]).sum();
                hit / (self.r as f64 * mass)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaMetrics {
    /// `max_α D(P_{ZS|A=α}‖P_Z P_S)`.
    pub max_kl: f64,
    /// `max_α ‖P_{ZS|A=α} − P_Z P_S‖`.
    pub max_tv: f64,
    /// `I(A∧Z,S)`.
    pub mutual_information: f64,
    /// `max_{z,α} exp(D₂(P_{S|Z=z,A=α}‖P_S))`.
    pub max_exp_d2_seed: f64,
    /// `max_α |P_A(α) − 1/a|` in floating point.
    pub key_deviation: f64,
}

impl PaMetrics {
    pub fn strong_secrecy_holds(&self, tol: f64) -> bool {
        self.mutual_information <= self.max_kl + tol
    }
}

pub fn exact_pa_metrics(j: &PaJoint) -> PaMetrics {
    let p_z = j.p_z();
    let block = j.b * j.nz;
    let p_a = j.key_marginal();
    let product: Vec<f64> = (0..j.b).flat_map(|_| p_z.iter().map(|p| p / j.b as f64)).collect();
    let rows: Vec<Vec<f64>> = j.p_zsa.chunks(block).map(<[f64]>::to_vec).collect();
    let mut max_kl = f64::NEG_INFINITY;
    let mut max_tv = 0.0f64;
    for (row, &pa) in rows.iter().zip(&p_a) {
        let cond: Vec<f64> = row.iter().map(|p| p / pa).collect();
        max_kl = max_kl.max(kl(&cond, &product).expect("lengths"));
        max_tv = max_tv.max(tv(&cond, &product).expect("lengths"));
    }
    let uniform = vec![1.0 / j.b as f64; j.b];
    let mut max_exp = f64::NEG_INFINITY;
    for z in 0..j.nz {
        for alpha in 0..j.a {
            max_exp = max_exp.max(exp_d2(&j.seed_given(z, alpha), &uniform).expect("lengths"));
        }
    }
    PaMetrics {
        max_kl,
        max_tv,
        mutual_information: mutual_information(&rows).expect("rectangular"),
        max_exp_d2_seed: max_exp,
        key_deviation: p_a.iter().map(|p| (p - 1.0 / j.a as f64).abs()).fold(0.0, f64::max),
    }
}

/// Key marginal in exact rational arithmetic, with the inputs read as the
/// exact dyadic rationals their `f64` values denote.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KeyUniformity {
    /// Every `P_A(α)` equals `(Σ P_XZ)/a` exactly.
    pub uniform: bool,
    pub total: String,
    pub marginal: Vec<String>,
}

pub fn key_uniformity_exact(ff: &dyn FunctionalForm, pxz: &JointXZ) -> Result<KeyUniformity> {
    let (v, b, a) = (ff.points(), ff.blocks(), ff.colors());
    if pxz.inputs() != v {
        return Err(Error::DimensionMismatch("P_XZ and mosaic disagree".into()));
    }
    let to_rat =
        |p: f64| BigRational::from_float(p).ok_or_else(|| Error::InvalidDistribution(format!("{p} is not finite")));
    let mut px = Vec::with_capacity(v);
    for row in pxz.rows() {
        let mut acc = BigRational::zero();
        for &p in row {
            acc += to_rat(p)?;
        }
        px.push(acc);
    }
    let total: BigRational = px.iter().cloned().sum();
    let mut counts = vec![0u64; a];
    let mut marginal = vec![BigRational::zero(); a];
    for (x, p) in px.iter().enumerate() {
        counts.iter_mut().for_each(|c| *c = 0);
        for s in 0..b {
            counts[ff.color(x, s)] += 1;
        }
        for (m, &c) in marginal.iter_mut().zip(&counts) {
            *m += p * BigRational::from_integer(BigInt::from(c));
        }
    }
    let b_rat = BigRational::from_integer(BigInt::from(b));
    marginal.iter_mut().for_each(|m| *m /= &b_rat);
    let target = &total / BigRational::from_integer(BigInt::from(a));
    Ok(KeyUniformity {
        uniform: marginal.iter().all(|m| *m == target),
        total: total.to_string(),
        marginal: marginal.iter().map(ToString::to_string).collect(),
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::families::{M1, M4};
    use crate::security::{pa_report, wiretap_report, DOMINATION_TOL};

    #[test]
    fn identity_channel_on_smallest_affine_plane() {
        let m = M1::new(2, 2).unwrap();
        let j = wiretap_joint(&m, &Channel::identity(4), &[0.5, 0.5]).unwrap();
        let metrics = exact_wiretap_metrics(&j);
        assert!(metrics.chain_holds(1e-12));
        // every member is AG(2,2) with v/k = 2
        assert!((metrics.max_exp_d2_cond - 2.0).abs() < 1e-12);
        let rep = wiretap_report(&m, &m.certificate(), &Channel::identity(4), &[0.5, 0.5], DOMINATION_TOL).unwrap();
        assert!(rep.dominates, "{:?}", rep.violations);
    }

    #[test]
    fn constant_columns_leak_nothing() {
        let m = M1::new(2, 3).unwrap();
        let w = Channel::constant(9, &[0.2, 0.3, 0.5]).unwrap();
        let j = wiretap_joint(&m, &w, &[0.1, 0.6, 0.3]).unwrap();
        let metrics = exact_wiretap_metrics(&j);
        assert!(metrics.mutual_information.abs() < 1e-12);
        assert!(metrics.tv_metric < 1e-12);
    }

    #[test]
    fn point_mass_and_independence_of_prior() {
        let m = M1::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let w = Channel::random(9, 4, 0.2, &mut rng);
        let a = wiretap_joint(&m, &w, &[1.0, 0.0, 0.0]).unwrap();
        let b = wiretap_joint(&m, &w, &[0.2, 0.3, 0.5]).unwrap();
        // marginal over (z, s) under a point mass is member 0's law
        let zs = a.p_zs();
        for s in 0..m.blocks() {
            for (z, &p) in a.member_conditional(0, s).iter().enumerate() {
                assert!((zs[s * 4 + z] - p / m.blocks() as f64).abs() < 1e-15);
            }
        }
        let (ma, mb) = (exact_wiretap_metrics(&a), exact_wiretap_metrics(&b));
        assert!((ma.max_d2_cond - mb.max_d2_cond).abs() < 1e-12);
        for (x, y) in a.p_z_from_tensor().iter().zip(a.p_z()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn seed_conditional_closed_form() {
        let m = M4::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pxz = JointXZ::random(6, 3, 0.1, &mut rng);
        let j = pa_joint(&m, &pxz).unwrap();
        for z in 0..3 {
            for alpha in 0..3 {
                for (x, y) in j.seed_given(z, alpha).iter().zip(j.seed_given_closed_form(z, alpha)) {
                    assert!((x - y).abs() < 1e-12);
                }
            }
        }
        assert!(exact_pa_metrics(&j).strong_secrecy_holds(1e-12));
        assert!(key_uniformity_exact(&m, &pxz).unwrap().uniform);
        let rep = pa_report(&m, &m.certificate(), &pxz, DOMINATION_TOL).unwrap();
        assert!(rep.dominates, "{:?}", rep.violations);
    }

    #[test]
    fn independent_source_has_zero_leakage() {
        let m = M4::new(2, 3).unwrap();
        let pxz = JointXZ::new(vec![vec![1.0 / 12.0; 2]; 6]).unwrap();
        let metrics = exact_pa_metrics(&pa_joint(&m, &pxz).unwrap());
        assert!(metrics.max_kl.abs() < 1e-12 && metrics.max_tv < 1e-12 && metrics.mutual_information.abs() < 1e-12);
    }
}
