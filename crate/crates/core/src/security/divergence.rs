//! Distances, divergences and entropies on finite alphabets.
//!
//! Logarithms are base 2 and `exp` means `2^x`. The conventions `0·log 0 = 0`
//! and `0²/0 = 0` apply; `kl` and `d2` are `+∞` exactly when `P` puts mass
//! where `Q` vanishes.

use crate::error::{Error, Result};

use super::Channel;

fn same_len(p: &[f64], q: &[f64]) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(format!("distributions of length {} and {}", p.len(), q.len())));
    }
    Ok(())
}

/// `Σ_z |P(z) − Q(z)|`, without the factor ½.
pub fn tv(p: &[f64], q: &[f64]) -> Result<f64> {
    same_len(p, q)?;
    Ok(p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum())
}

/// `Σ_{Q(z)>0} (P(z) − Q(z))²/Q(z)`.
pub fn chi2(p: &[f64], q: &[f64]) -> Result<f64> {
    same_len(p, q)?;
    Ok(p.iter().zip(q).filter(|(_, &b)| b > 0.0).map(|(a, b)| (a - b) * (a - b) / b).sum())
}

pub fn kl(p: &[f64], q: &[f64]) -> Result<f64> {
    same_len(p, q)?;
    let mut acc = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a > 0.0 {
            if b <= 0.0 {
                return Ok(f64::INFINITY);
            }
            acc += a * (a / b).log2();
        }
    }
    Ok(acc)
}

/// `Σ_z P(z)²/Q(z)`, i.e. `exp(D₂(P‖Q))`.
pub fn exp_d2(p: &[f64], q: &[f64]) -> Result<f64> {
    same_len(p, q)?;
    let mut acc = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a > 0.0 {
            if b <= 0.0 {
                return Ok(f64::INFINITY);
            }
            acc += a * a / b;
        }
    }
    Ok(acc)
}

pub fn d2(p: &[f64], q: &[f64]) -> Result<f64> {
    Ok(exp_d2(p, q)?.log2())
}

/// `Σ_x P(x) exp(D₂(W(·|x)‖Q))`.
pub fn exp_d2_cond(w: &Channel, q: &[f64], p: &[f64]) -> Result<f64> {
    if w.inputs() != p.len() {
        return Err(Error::DimensionMismatch(format!("channel with {} inputs, P of length {}", w.inputs(), p.len())));
    }
    let mut acc = 0.0;
    for (x, &px) in p.iter().enumerate() {
        if px > 0.0 {
            acc += px * exp_d2(w.row(x), q)?;
        }
    }
    Ok(acc)
}

/// `log Σ_x P(x) exp(D₂(W(·|x)‖Q))`.
pub fn d2_cond(w: &Channel, q: &[f64], p: &[f64]) -> Result<f64> {
    Ok(exp_d2_cond(w, q, p)?.log2())
}

/// `Σ_x P(x) D(W(·|x)‖Q)`.
pub fn kl_cond(w: &Channel, q: &[f64], p: &[f64]) -> Result<f64> {
    if w.inputs() != p.len() {
        return Err(Error::DimensionMismatch(format!("channel with {} inputs, P of length {}", w.inputs(), p.len())));
    }
    let mut acc = 0.0;
    for (x, &px) in p.iter().enumerate() {
        if px > 0.0 {
            acc += px * kl(w.row(x), q)?;
        }
    }
    Ok(acc)
}

/// `Σ_x P(x)²`, i.e. `2^{−H₂(P)}`.
pub fn collision_probability(p: &[f64]) -> f64 {
    p.iter().map(|a| a * a).sum()
}

/// `H₂(P) = −log Σ_x P(x)²`.
pub fn renyi2_entropy(p: &[f64]) -> f64 {
    -collision_probability(p).log2()
}

/// `I(X∧Y) = D(P_{Y|X}‖P_Y|P_X)` for a joint given as rows indexed by `x`.
pub fn mutual_information(pxy: &[Vec<f64>]) -> Result<f64> {
    let ny = pxy.first().map_or(0, Vec::len);
    if pxy.iter().any(|row| row.len() != ny) {
        return Err(Error::DimensionMismatch("ragged joint distribution".into()));
    }
    let mut py = vec![0.0; ny];
    for row in pxy {
        for (acc, &p) in py.iter_mut().zip(row) {
            *acc += p;
        }
    }
    let mut acc = 0.0;
    for row in pxy {
        let px: f64 = row.iter().sum();
        for (&p, &q) in row.iter().zip(&py) {
            if p > 0.0 {
                acc += p * (p / (px * q)).log2();
            }
        }
    }
    Ok(acc.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_against_uniform() {
        let (p, q) = ([1.0, 0.0], [0.5, 0.5]);
        assert!((d2(&p, &q).unwrap() - 1.0).abs() < 1e-15);
        assert!((chi2(&p, &q).unwrap() - 1.0).abs() < 1e-15);
        assert!((tv(&p, &q).unwrap() - 1.0).abs() < 1e-15);
        assert!((kl(&p, &q).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn self_divergences_vanish() {
        let p = [0.2, 0.3, 0.5];
        assert_eq!(tv(&p, &p).unwrap(), 0.0);
        assert_eq!(chi2(&p, &p).unwrap(), 0.0);
        assert!(kl(&p, &p).unwrap().abs() < 1e-15);
        assert!(d2(&p, &p).unwrap().abs() < 1e-15);
    }

    #[test]
    fn support_failure_is_infinite() {
        let (p, q) = ([0.5, 0.5], [1.0, 0.0]);
        assert_eq!(kl(&p, &q).unwrap(), f64::INFINITY);
        assert_eq!(d2(&p, &q).unwrap(), f64::INFINITY);
        assert!(tv(&[0.5], &q).is_err());
    }

    #[test]
    fn identity_channel_conditional() {
        let v = 5;
        let w = Channel::identity(v);
        let u = vec![1.0 / v as f64; v];
        assert!((d2_cond(&w, &u, &u).unwrap() - (v as f64).log2()).abs() < 1e-12);
        assert!((kl_cond(&w, &u, &u).unwrap() - (v as f64).log2()).abs() < 1e-12);
    }

    #[test]
    fn mutual_information_of_copy() {
        let pxy = vec![vec![0.5, 0.0], vec![0.0, 0.5]];
        assert!((mutual_information(&pxy).unwrap() - 1.0).abs() < 1e-15);
        let ind = vec![vec![0.25, 0.25], vec![0.25, 0.25]];
        assert_eq!(mutual_information(&ind).unwrap(), 0.0);
    }
}
