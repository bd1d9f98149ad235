//! Monte Carlo wiretap and privacy-amplification pipelines.
//!
//! The main channel between Alice and Bob is the identity. Trials run in
//! fixed-size chunks; chunk `i` draws from the ChaCha8 stream `i` of the
//! master seed, so the merged histograms do not depend on how chunks are
//! spread over threads. Empirical laws are compared with the exact ones from
//! [`crate::security`] by χ² tests.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::mosaics::{sample_inverse, FunctionalForm};
use crate::security::{exact_pa_metrics, exact_wiretap_metrics, pa_joint, wiretap_joint, Channel, JointXZ};

const CHUNK: u64 = 4096;
/// Cells with a smaller expected count are pooled before the χ² test.
const MIN_EXPECTED: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ChannelKind {
    File { path: PathBuf },
    Symmetric { v: usize, crossover: f64 },
    Identity { v: usize },
    ConstantColumn { v: usize, q: Vec<f64> },
    Random { v: usize, outputs: usize, seed: u64 },
}

pub fn make_channel(kind: &ChannelKind) -> Result<Channel> {
    match kind {
        ChannelKind::File { path } => Channel::from_csv(&std::fs::read_to_string(path)?),
        ChannelKind::Symmetric { v, crossover } => Channel::symmetric(*v, *crossover),
        ChannelKind::Identity { v } => Ok(Channel::identity(*v)),
        ChannelKind::ConstantColumn { v, q } => Channel::constant(*v, q),
        ChannelKind::Random { v, outputs, seed } => {
            Ok(Channel::random(*v, *outputs, 0.0, &mut ChaCha8Rng::seed_from_u64(*seed)))
        }
    }
}

/// Distribution of the confidential message in the wiretap pipeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Prior {
    Uniform,
    PointMass { alpha: usize },
    Custom { p: Vec<f64> },
}

impl Prior {
    pub fn resolve(&self, a: usize) -> Result<Vec<f64>> {
        match self {
            Prior::Uniform => Ok(vec![1.0 / a as f64; a]),
            Prior::PointMass { alpha } if *alpha < a => {
                Ok((0..a).map(|i| if i == *alpha { 1.0 } else { 0.0 }).collect())
            }
            Prior::PointMass { alpha } => {
                Err(Error::InvalidParameter(format!("message {alpha} out of range for a={a}")))
            }
            Prior::Custom { p } if p.len() == a => Ok(p.clone()),
            Prior::Custom { p } => Err(Error::DimensionMismatch(format!("prior of length {} for a={a}", p.len()))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub prior: Prior,
    /// Bootstrap replicates for the leakage standard error.
    pub bootstrap: usize,
    pub significance: f64,
}

impl SimConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        SimConfig { trials, seed, prior: Prior::Uniform, bootstrap: 200, significance: 1e-3 }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trial count must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&self.significance) {
            return Err(Error::InvalidParameter("significance must lie in [0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// Cells after pooling those with expected count below 5.
    pub cells: usize,
}

/// Pearson χ² of observed counts against probabilities `expected`.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> ChiSquareTest {
    let n: u64 = observed.iter().sum();
    let n = n as f64;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut pool_o, mut pool_e) = (0.0, 0.0);
    let mut impossible = false;
    for (&o, &p) in observed.iter().zip(expected) {
        let e = p * n;
        if p <= 0.0 {
            impossible |= o > 0;
        } else if e < MIN_EXPECTED {
            pool_o += o as f64;
            pool_e += e;
        } else {
            cells.push((o as f64, e));
        }
    }
    if pool_e > 0.0 {
        if pool_e >= MIN_EXPECTED || cells.is_empty() {
            cells.push((pool_o, pool_e));
        } else {
            let last = cells.last_mut().expect("nonempty");
            last.0 += pool_o;
            last.1 += pool_e;
        }
    }
    let statistic = if impossible { f64::INFINITY } else { cells.iter().map(|(o, e)| (o - e) * (o - e) / e).sum() };
    let dof = cells.len().saturating_sub(1);
    let p_value = match () {
        _ if impossible => 0.0,
        _ if dof == 0 => 1.0,
        _ => ChiSquared::new(dof as f64).map_or(0.0, |d| d.sf(statistic)),
    };
    ChiSquareTest { statistic, dof, p_value, cells: cells.len() }
}

/// Plug-in `I(A∧Y)` of a count table with rows `α`.
fn plug_in_mi(counts: &[u64], a: usize) -> f64 {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let cols = counts.len() / a;
    let n = total as f64;
    let mut col = vec![0u64; cols];
    let mut row = vec![0u64; a];
    for (i, &c) in counts.iter().enumerate() {
        row[i / cols] += c;
        col[i % cols] += c;
    }
    let mut acc = 0.0;
    for (i, &c) in counts.iter().enumerate() {
        if c > 0 {
            let c = c as f64;
            acc += c / n * (c * n / (row[i / cols] as f64 * col[i % cols] as f64)).log2();
        }
    }
    acc.max(0.0)
}

fn cdf(p: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    p.iter()
        .map(|&q| {
            acc += q;
            acc
        })
        .collect()
}

fn draw<R: Rng + ?Sized>(cdf: &[f64], rng: &mut R) -> usize {
    let u = rng.random::<f64>() * cdf.last().copied().unwrap_or(1.0);
    cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
}

/// Bias-corrected estimate and bootstrap standard error of the plug-in MI.
fn bootstrap_mi(counts: &[u64], a: usize, replicates: usize, seed: u64) -> (f64, f64) {
    let est = plug_in_mi(counts, a);
    if replicates < 2 {
        return (est, 0.0);
    }
    let n: u64 = counts.iter().sum();
    let probs: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
    let c = cdf(&probs);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let mut reps = Vec::with_capacity(replicates);
    let mut buf = vec![0u64; counts.len()];
    for _ in 0..replicates {
        buf.iter_mut().for_each(|b| *b = 0);
        for _ in 0..n {
            buf[draw(&c, &mut rng)] += 1;
        }
        reps.push(plug_in_mi(&buf, a));
    }
    let mean = reps.iter().sum::<f64>() / replicates as f64;
    let var = reps.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / (replicates - 1) as f64;
    (2.0 * est - mean, var.sqrt())
}

/// Runs `trials` trials in chunks, each chunk on its own stream, and adds
/// the per-chunk histograms.
fn run_chunks<F>(cells: usize, cfg: &SimConfig, trial: F) -> (Vec<u64>, u64)
where
    F: Fn(&mut ChaCha8Rng, &mut [u64]) -> bool + Sync,
{
    let chunks = cfg.trials.div_ceil(CHUNK);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(chunks as usize).max(1);
    let results: Vec<(Vec<u64>, u64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let trial = &trial;
                scope.spawn(move || {
                    let mut hist = vec![0u64; cells];
                    let mut failures = 0u64;
                    for chunk in (w as u64..chunks).step_by(workers) {
                        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                        rng.set_stream(chunk);
                        let len = CHUNK.min(cfg.trials - chunk * CHUNK);
                        for _ in 0..len {
                            if !trial(&mut rng, &mut hist) {
                                failures += 1;
                            }
                        }
                    }
                    (hist, failures)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut hist = vec![0u64; cells];
    let mut failures = 0;
    for (h, f) in results {
        hist.iter_mut().zip(h).for_each(|(a, b)| *a += b);
        failures += f;
    }
    (hist, failures)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub scenario: String,
    pub seed: u64,
    pub trials: u64,
    /// Wiretap: Bob decodes a different message. Privacy amplification:
    /// Alice and Bob disagree on the key.
    pub errors: u64,
    pub key_counts: Vec<u64>,
    pub key_expected: Vec<f64>,
    pub key_test: ChiSquareTest,
    /// Counts of `(α, s, z)` at `(α·b + s)·|Z| + z`.
    pub joint_counts: Vec<u64>,
    pub joint_test: ChiSquareTest,
    /// Bias-corrected plug-in estimate of `I(A∧Z,S)` with bootstrap σ.
    pub leakage_estimate: f64,
    pub leakage_sigma: f64,
    pub leakage_exact: f64,
    /// Privacy amplification only: plug-in `max_α ‖P̂_{ZS|A=α} − P̂_Z P_S‖`.
    pub tv_estimate: Option<f64>,
    pub tv_exact: Option<f64>,
    pub significance: f64,
    pub passed: bool,
}

impl SimResult {
    /// `|estimate − exact| ≤ n_sigma · σ`, with a floor for exact-zero σ.
    pub fn leakage_within(&self, n_sigma: f64) -> bool {
        (self.leakage_estimate - self.leakage_exact).abs() <= n_sigma * self.leakage_sigma.max(1e-12)
    }
}

fn key_counts(joint: &[u64], a: usize) -> Vec<u64> {
    joint.chunks(joint.len() / a).map(|c| c.iter().sum()).collect()
}

/// Alice draws `s` and `α ~ P_A`, transmits a uniform preimage point `x`;
/// Bob decodes `f(x, s)`; Eve sees `z ~ w(·|x)` and `s`.
pub fn wiretap_roundtrip(ff: &dyn FunctionalForm, w: &Channel, cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    let (b, a) = (ff.blocks(), ff.colors());
    let p_a = cfg.prior.resolve(a)?;
    let joint = wiretap_joint(ff, w, &p_a)?;
    let nz = w.outputs();
    let prior_cdf = cdf(&p_a);
    let rows: Vec<Vec<f64>> = w.rows().iter().map(|r| cdf(r)).collect();
    let (hist, errors) = run_chunks(a * b * nz, cfg, |rng, hist| {
        let s = rng.random_range(0..b);
        let alpha = draw(&prior_cdf, rng);
        let x = sample_inverse(ff, s, alpha, rng).expect("nonempty preimage");
        let decoded = ff.color(x, s);
        let z = draw(&rows[x], rng);
        hist[(alpha * b + s) * nz + z] += 1;
        decoded == alpha
    });
    let expected: Vec<f64> = joint.p_zsa_rows().concat();
    let joint_test = chi_square(&hist, &expected);
    let kc = key_counts(&hist, a);
    let key_test = chi_square(&kc, &p_a);
    let (leakage_estimate, leakage_sigma) = bootstrap_mi(&hist, a, cfg.bootstrap, cfg.seed);
    let exact = exact_wiretap_metrics(&joint);
    let passed = errors == 0 && joint_test.p_value >= cfg.significance && key_test.p_value >= cfg.significance;
    Ok(SimResult {
        scenario: "wiretap".into(),
        seed: cfg.seed,
        trials: cfg.trials,
        errors,
        key_counts: kc,
        key_expected: p_a,
        key_test,
        joint_counts: hist,
        joint_test,
        leakage_estimate,
        leakage_sigma,
        leakage_exact: exact.mutual_information,
        tv_estimate: None,
        tv_exact: None,
        significance: cfg.significance,
        passed,
    })
}

/// Alice and Bob share `x`, Eve holds `z`, `(x, z) ~ P_XZ`; the public seed
/// `s` is uniform and both parties compute the key `f(x, s)`.
pub fn pa_roundtrip(ff: &dyn FunctionalForm, pxz: &JointXZ, cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    let (b, a) = (ff.blocks(), ff.colors());
    let joint = pa_joint(ff, pxz)?;
    let nz = pxz.outputs();
    let source_cdf = cdf(&pxz.rows().concat());
    let (hist, errors) = run_chunks(a * b * nz, cfg, |rng, hist| {
        let cell = draw(&source_cdf, rng);
        let (x, z) = (cell / nz, cell % nz);
        let s = rng.random_range(0..b);
        let alice = ff.color(x, s);
        let bob = ff.color(x, s);
        hist[(alice * b + s) * nz + z] += 1;
        alice == bob
    });
    let mut expected = Vec::with_capacity(a * b * nz);
    for alpha in 0..a {
        for s in 0..b {
            for z in 0..nz {
                expected.push(joint.p_zsa(z, s, alpha));
            }
        }
    }
    let joint_test = chi_square(&hist, &expected);
    let kc = key_counts(&hist, a);
    let uniform = vec![1.0 / a as f64; a];
    let key_test = chi_square(&kc, &uniform);
    let (leakage_estimate, leakage_sigma) = bootstrap_mi(&hist, a, cfg.bootstrap, cfg.seed);
    let exact = exact_pa_metrics(&joint);
    let passed = errors == 0 && joint_test.p_value >= cfg.significance && key_test.p_value >= cfg.significance;
    Ok(SimResult {
        scenario: "privacy-amplification".into(),
        seed: cfg.seed,
        trials: cfg.trials,
        errors,
        key_counts: kc,
        key_expected: uniform,
        key_test,
        joint_counts: hist.clone(),
        joint_test,
        leakage_estimate,
        leakage_sigma,
        leakage_exact: exact.mutual_information,
        tv_estimate: Some(empirical_max_tv(&hist, a, b, nz)),
        tv_exact: Some(exact.max_tv),
        significance: cfg.significance,
        passed,
    })
}

fn empirical_max_tv(hist: &[u64], a: usize, b: usize, nz: usize) -> f64 {
    let n: u64 = hist.iter().sum();
    let mut p_z = vec![0.0; nz];
    for (i, &c) in hist.iter().enumerate() {
        p_z[i % nz] += c as f64 / n as f64;
    }
    let block = b * nz;
    (0..a)
        .map(|alpha| {
            let row = &hist[alpha * block..(alpha + 1) * block];
            let na: u64 = row.iter().sum();
            if na == 0 {
                return 0.0;
            }
            row.iter().enumerate().map(|(i, &c)| (c as f64 / na as f64 - p_z[i % nz] / b as f64).abs()).sum::<f64>()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{M1, M4};

    #[test]
    fn channel_constructors() {
        let id = make_channel(&ChannelKind::Identity { v: 4 }).unwrap();
        assert_eq!(id, make_channel(&ChannelKind::Symmetric { v: 4, crossover: 0.0 }).unwrap());
        assert_eq!(id.row(2), &[0.0, 0.0, 1.0, 0.0]);
        let c = make_channel(&ChannelKind::ConstantColumn { v: 3, q: vec![0.5, 0.5] }).unwrap();
        assert_eq!(c.inputs(), 3);
        assert!(make_channel(&ChannelKind::ConstantColumn { v: 3, q: vec![0.5, 0.6] }).is_err());
    }

    #[test]
    fn pooling_and_impossible_cells() {
        let t = chi_square(&[50, 50, 0], &[0.5, 0.5, 0.0]);
        assert_eq!((t.dof, t.statistic), (1, 0.0));
        assert_eq!(chi_square(&[50, 49, 1], &[0.5, 0.5, 0.0]).p_value, 0.0);
        let t = chi_square(&[100, 1, 1], &[0.98, 0.01, 0.01]);
        assert_eq!(t.cells, 1);
    }

    #[test]
    fn reproducible_and_correct() {
        let m = M1::new(2, 2).unwrap();
        let w = Channel::symmetric(4, 0.2).unwrap();
        let mut cfg = SimConfig::new(10_000, 42);
        cfg.bootstrap = 20;
        let r1 = wiretap_roundtrip(&m, &w, &cfg).unwrap();
        let r2 = wiretap_roundtrip(&m, &w, &cfg).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.errors, 0);
        assert_eq!(r1.key_counts.iter().sum::<u64>(), 10_000);
    }

    #[test]
    fn keys_agree() {
        let m = M4::new(2, 3).unwrap();
        let pxz = JointXZ::new(vec![vec![1.0 / 12.0; 2]; 6]).unwrap();
        let mut cfg = SimConfig::new(5_000, 1);
        cfg.bootstrap = 0;
        let r = pa_roundtrip(&m, &pxz, &cfg).unwrap();
        assert_eq!(r.errors, 0);
        assert!(r.tv_exact.unwrap() < 1e-12);
    }
}
