//! Per-member identities and the divergence/entropy sandwich.

use serde::{Deserialize, Serialize};

use crate::designs::{IncidenceStructure, Partition};
use crate::error::{Error, Result};

use super::{
    channel_divergences, collision_probability, pa_coefficients, wt_coefficients, BoundParams, Channel, JointXZ,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub discrepancy: f64,
}

impl IdentityCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        IdentityCheck { lhs, rhs, discrepancy: (lhs - rhs).abs() }
    }
}

fn check_member(n: &IncidenceStructure, p: &BoundParams, inputs: usize) -> Result<()> {
    if n.v() != p.v || n.b() != p.b || inputs != p.v {
        return Err(Error::DimensionMismatch(format!(
            "design {}×{}, parameters v={} b={}, {inputs} inputs",
            n.v(),
            n.b(),
            p.v,
            p.b
        )));
    }
    Ok(())
}

/// `exp D₂(P_{Z|S}‖P_Z|P_S)` for `P_{ZXS} = w(z|x)N(x,s)/(bk)`, against the
/// three-term closed form.
pub fn prop41_check(n: &IncidenceStructure, p: &BoundParams, w: &Channel) -> Result<IdentityCheck> {
    check_member(n, p, w.inputs())?;
    let q = w.uniform_output();
    let nz = w.outputs();
    let mut lhs = 0.0;
    let mut col = vec![0.0; nz];
    for s in 0..n.b() {
        col.iter_mut().for_each(|c| *c = 0.0);
        for x in n.points_of(s) {
            col.iter_mut().zip(w.row(x)).for_each(|(c, &p)| *c += p);
        }
        for (c, &qz) in col.iter().zip(&q) {
            if *c > 0.0 {
                let pz = c / p.k as f64;
                lhs += pz * pz / qz;
            }
        }
    }
    lhs /= n.b() as f64;
    let c = wt_coefficients(p);
    let d = channel_divergences(w, &p.partition)?;
    Ok(IdentityCheck::new(lhs, c.constant + c.partition * d.exp_d2_partition + c.channel * d.exp_d2_channel))
}

/// Per-`z` check of `exp D₂(P_{S|Z=z}‖P_S)` for `P_{XZS} = P_XZ N / r`.
pub fn prop42_check(n: &IncidenceStructure, p: &BoundParams, pxz: &JointXZ) -> Result<Vec<IdentityCheck>> {
    check_member(n, p, pxz.inputs())?;
    let c = pa_coefficients(p);
    let blocks: Vec<Vec<usize>> = (0..n.b()).map(|s| n.points_of(s)).collect();
    Ok((0..pxz.outputs())
        .map(|z| {
            let pz = pxz.p_z(z);
            let mass: f64 = pz.iter().sum();
            let seed: Vec<f64> =
                blocks.iter().map(|blk| blk.iter().map(|&x| pz[x]).sum::<f64>() / (p.r as f64 * mass)).collect();
            let lhs = n.b() as f64 * collision_probability(&seed);
            let rhs = c.entropy * pxz.collision_given(z)
                + c.partition * pxz.class_collision_given(z, &p.partition)
                + 1.0
                + c.offset;
            IdentityCheck::new(lhs, rhs)
        })
        .collect())
}

pub fn max_discrepancy(checks: &[IdentityCheck]) -> f64 {
    checks.iter().map(|c| c.discrepancy).fold(0.0, f64::max)
}

/// `D₂(W) − log u ≤ D₂(R_Π W) ≤ D₂(W)` with both equality conditions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivergenceSandwich {
    pub d2_channel: f64,
    pub d2_partition: f64,
    pub log_u: f64,
    pub lower_holds: bool,
    pub upper_holds: bool,
    pub lower_equal: bool,
    pub upper_equal: bool,
    /// At most one `x` per class has `w(z|x) > 0`, for every `z`.
    pub lower_condition: bool,
    /// `w(z|x)` is constant over each class, for every `z`.
    pub upper_condition: bool,
}

fn class_size(partition: &Partition) -> Result<usize> {
    let u = partition.class_size();
    if partition.classes().iter().any(|c| c.len() != u) {
        return Err(Error::MalformedPartition("classes must have equal size".into()));
    }
    Ok(u)
}

fn at_most_one_positive(partition: &Partition, value: impl Fn(usize) -> f64) -> bool {
    partition.classes().iter().all(|c| c.iter().filter(|&&x| value(x) > 0.0).count() <= 1)
}

fn constant_on_classes(partition: &Partition, value: impl Fn(usize) -> f64) -> bool {
    partition.classes().iter().all(|c| {
        let first = value(c[0]);
        c.iter().all(|&x| (value(x) - first).abs() <= 1e-12 * first.abs().max(1e-300))
    })
}

pub fn divergence_comparison(w: &Channel, partition: &Partition, tol: f64) -> Result<DivergenceSandwich> {
    let u = class_size(partition)?;
    let d = channel_divergences(w, partition)?;
    let (dw, dp, lu) = (d.exp_d2_channel.log2(), d.exp_d2_partition.log2(), (u as f64).log2());
    let lower_condition = (0..w.outputs()).all(|z| at_most_one_positive(partition, |x| w.get(x, z)));
    let upper_condition = (0..w.outputs()).all(|z| constant_on_classes(partition, |x| w.get(x, z)));
    Ok(DivergenceSandwich {
        d2_channel: dw,
        d2_partition: dp,
        log_u: lu,
        lower_holds: dw - lu <= dp + tol,
        upper_holds: dp <= dw + tol,
        lower_equal: (dw - lu - dp).abs() <= tol,
        upper_equal: (dp - dw).abs() <= tol,
        lower_condition,
        upper_condition,
    })
}

/// `H₂(X|Z=z) − log u ≤ H₂(X_Π|Z=z) ≤ H₂(X|Z=z)` for one `z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropySandwich {
    pub z: usize,
    pub h2: f64,
    pub h2_partition: f64,
    pub log_u: f64,
    pub lower_holds: bool,
    pub upper_holds: bool,
    pub lower_equal: bool,
    pub upper_equal: bool,
    /// `p_z` is constant over each class.
    pub lower_condition: bool,
    /// At most one `x` per class has `p_z(x) > 0`.
    pub upper_condition: bool,
}

pub fn entropy_comparison(pxz: &JointXZ, partition: &Partition, tol: f64) -> Result<Vec<EntropySandwich>> {
    let u = class_size(partition)?;
    if partition.point_count() != pxz.inputs() {
        return Err(Error::DimensionMismatch("partition and source disagree".into()));
    }
    let lu = (u as f64).log2();
    Ok((0..pxz.outputs())
        .map(|z| {
            let h = -pxz.collision_given(z).log2();
            let hp = -pxz.class_collision_given(z, partition).log2();
            EntropySandwich {
                z,
                h2: h,
                h2_partition: hp,
                log_u: lu,
                lower_holds: h - lu <= hp + tol,
                upper_holds: hp <= h + tol,
                lower_equal: (h - lu - hp).abs() <= tol,
                upper_equal: (hp - h).abs() <= tol,
                lower_condition: constant_on_classes(partition, |x| pxz.get(x, z)),
                upper_condition: at_most_one_positive(partition, |x| pxz.get(x, z)),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{BibdParams, Certificate};

    fn ag22() -> (IncidenceStructure, BoundParams) {
        let blocks = vec![vec![0, 1], vec![2, 3], vec![0, 2], vec![1, 3], vec![0, 3], vec![1, 2]];
        let d = IncidenceStructure::from_blocks(4, &blocks).unwrap();
        let p = BoundParams::from_certificate(&Certificate::Bibd(BibdParams { v: 4, b: 6, k: 2, r: 3, lambda: 1 }))
            .unwrap();
        (d, p)
    }

    #[test]
    fn identity_channel_gives_v_over_k() {
        let (d, p) = ag22();
        let c = prop41_check(&d, &p, &Channel::identity(4)).unwrap();
        assert!((c.lhs - 2.0).abs() < 1e-12 && c.discrepancy < 1e-12);
    }

    #[test]
    fn constant_channel_gives_one() {
        let (d, p) = ag22();
        let c = prop41_check(&d, &p, &Channel::constant(4, &[0.5, 0.5]).unwrap()).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-15 && (c.rhs - 1.0).abs() < 1e-15);
    }

    #[test]
    fn independent_uniform_source() {
        let (d, p) = ag22();
        let pxz = JointXZ::new(vec![vec![1.0 / 12.0; 3]; 4]).unwrap();
        for c in prop42_check(&d, &p, &pxz).unwrap() {
            assert!((c.lhs - 1.0).abs() < 1e-12 && (c.rhs - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sandwich_equality_cases() {
        let pi = Partition::consecutive(2, 2);
        // constant within classes: right equality
        let w = Channel::new(vec![vec![0.7, 0.3], vec![0.7, 0.3], vec![0.2, 0.8], vec![0.2, 0.8]]).unwrap();
        let s = divergence_comparison(&w, &pi, 1e-12).unwrap();
        assert!(s.upper_condition && s.upper_equal && !s.lower_condition);
        // class-disjoint supports: left equality
        let w = Channel::new(vec![
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.5, 0.5, 0.0],
            vec![0.5, 0.0, 0.0, 0.5],
        ])
        .unwrap();
        let s = divergence_comparison(&w, &pi, 1e-12).unwrap();
        assert!(s.lower_condition && s.lower_equal && !s.upper_equal);
        // singletons: both sides collapse
        let s = divergence_comparison(&w, &Partition::singletons(4), 1e-12).unwrap();
        assert!(s.lower_equal && s.upper_equal);
    }
}
