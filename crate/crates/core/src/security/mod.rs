//! Exact semantic-security quantities for mosaic-based security functions.
//!
//! Channels and joint distributions are dense `f64` matrices. The wiretap and
//! privacy-amplification joints are built from a functional form, evaluated
//! exactly, and compared against the closed-form bounds for BIBD and GDD
//! mosaics. Per-member identities are checked numerically.

mod bounds;
mod divergence;
mod identities;
mod joint;
mod report;

pub use bounds::*;
pub use divergence::*;
pub use identities::*;
pub use joint::*;
pub use report::*;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::designs::{classify_gdd, Certificate, GddClass, Partition};
use crate::error::{Error, Result};

/// Row sums and total mass must match 1 within this tolerance.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Default tolerance for the per-member identities.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Default relative slack when comparing a bound with an exact metric.
pub const DOMINATION_TOL: f64 = 1e-9;

fn check_entries(rows: &[Vec<f64>]) -> Result<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || cols == 0 {
        return Err(Error::InvalidDistribution("empty matrix".into()));
    }
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch("ragged matrix".into()));
    }
    if rows.iter().flatten().any(|&p| !p.is_finite() || p < 0.0) {
        return Err(Error::InvalidDistribution("entries must be finite and nonnegative".into()));
    }
    Ok(cols)
}

fn parse_csv_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(',').map(|c| c.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{c:?}: {e}")))).collect()
        })
        .collect()
}

fn format_csv_matrix(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|p| format!("{p:e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Exponential weights, normalized; entries are zeroed with probability
/// `zero_prob` while keeping at least one positive entry.
fn random_simplex<R: Rng + ?Sized>(n: usize, zero_prob: f64, rng: &mut R) -> Vec<f64> {
    let mut w: Vec<f64> =
        (0..n).map(|_| if rng.random_bool(zero_prob) { 0.0 } else { -(1.0 - rng.random::<f64>()).ln() }).collect();
    if w.iter().all(|&p| p == 0.0) {
        w[rng.random_range(0..n)] = 1.0;
    }
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|p| *p /= total);
    w
}

/// A stochastic matrix `w(z|x)` with rows indexed by inputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Channel {
    rows: Vec<Vec<f64>>,
    substochastic: bool,
}

impl Channel {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        check_entries(&rows)?;
        for (x, row) in rows.iter().enumerate() {
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > NORMALIZATION_TOL {
                return Err(Error::InvalidDistribution(format!("row {x} sums to {s}")));
            }
        }
        Ok(Channel { rows, substochastic: false })
    }

    /// Rows may sum to less than 1.
    pub fn substochastic(rows: Vec<Vec<f64>>) -> Result<Self> {
        check_entries(&rows)?;
        if let Some(x) = rows.iter().position(|r| r.iter().sum::<f64>() > 1.0 + NORMALIZATION_TOL) {
            return Err(Error::InvalidDistribution(format!("row {x} sums to more than 1")));
        }
        Ok(Channel { rows, substochastic: true })
    }

    pub fn identity(v: usize) -> Self {
        let rows = (0..v).map(|x| (0..v).map(|z| if x == z { 1.0 } else { 0.0 }).collect()).collect();
        Channel { rows, substochastic: false }
    }

    /// Every row equals `q`; the output carries no information about the input.
    pub fn constant(v: usize, q: &[f64]) -> Result<Self> {
        Channel::new(vec![q.to_vec(); v])
    }

    /// `1 − p` on the diagonal, `p/(v − 1)` elsewhere.
    pub fn symmetric(v: usize, crossover: f64) -> Result<Self> {
        if v < 2 || !(0.0..=1.0).contains(&crossover) {
            return Err(Error::InvalidParameter(format!(
                "symmetric channel needs v ≥ 2 and p ∈ [0, 1], got v={v}, p={crossover}"
            )));
        }
        let off = crossover / (v - 1) as f64;
        let rows = (0..v).map(|x| (0..v).map(|z| if x == z { 1.0 - crossover } else { off }).collect()).collect();
        Channel::new(rows)
    }

    pub fn random<R: Rng + ?Sized>(v: usize, outputs: usize, zero_prob: f64, rng: &mut R) -> Self {
        let rows = (0..v).map(|_| random_simplex(outputs, zero_prob, rng)).collect();
        Channel { rows, substochastic: false }
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        Channel::new(parse_csv_matrix(text)?)
    }

    pub fn to_csv(&self) -> String {
        format_csv_matrix(&self.rows)
    }

    pub fn inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn outputs(&self) -> usize {
        self.rows[0].len()
    }

    pub fn is_substochastic(&self) -> bool {
        self.substochastic
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn get(&self, x: usize, z: usize) -> f64 {
        self.rows[x][z]
    }

    /// `w_z`, the column of `z`.
    pub fn column(&self, z: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[z]).collect()
    }

    /// `P W`.
    pub fn output_distribution(&self, p: &[f64]) -> Result<Vec<f64>> {
        if p.len() != self.inputs() {
            return Err(Error::DimensionMismatch(format!("P of length {} for {} inputs", p.len(), self.inputs())));
        }
        let mut out = vec![0.0; self.outputs()];
        for (row, &px) in self.rows.iter().zip(p) {
            for (o, &w) in out.iter_mut().zip(row) {
                *o += px * w;
            }
        }
        Ok(out)
    }

    /// `P_X W` with `P_X` uniform.
    pub fn uniform_output(&self) -> Vec<f64> {
        let v = self.inputs();
        self.output_distribution(&vec![1.0 / v as f64; v]).expect("matching length")
    }

    /// `R_Π W`: row `i` is the average of the rows in class `i`.
    pub fn class_average(&self, partition: &Partition) -> Result<Channel> {
        if partition.point_count() != self.inputs() {
            return Err(Error::DimensionMismatch(format!(
                "partition of {} points for {} inputs",
                partition.point_count(),
                self.inputs()
            )));
        }
        let rows = partition
            .classes()
            .iter()
            .map(|class| {
                let mut acc = vec![0.0; self.outputs()];
                for &x in class {
                    acc.iter_mut().zip(&self.rows[x]).for_each(|(a, w)| *a += w);
                }
                acc.iter_mut().for_each(|a| *a /= class.len() as f64);
                acc
            })
            .collect();
        Ok(Channel { rows, substochastic: self.substochastic })
    }
}

/// A joint distribution `P_XZ` with `P_Z(z) > 0` for every `z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointXZ {
    p: Vec<Vec<f64>>,
}

impl JointXZ {
    pub fn new(p: Vec<Vec<f64>>) -> Result<Self> {
        let cols = check_entries(&p)?;
        let total: f64 = p.iter().flatten().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidDistribution(format!("joint sums to {total}")));
        }
        if let Some(z) = (0..cols).find(|&z| p.iter().all(|r| r[z] == 0.0)) {
            return Err(Error::InvalidDistribution(format!("P_Z({z}) = 0")));
        }
        Ok(JointXZ { p })
    }

    /// `P_XZ(x, z) = P_X(x) w(z|x)`.
    pub fn from_channel(px: &[f64], w: &Channel) -> Result<Self> {
        if px.len() != w.inputs() {
            return Err(Error::DimensionMismatch("P_X and channel disagree".into()));
        }
        JointXZ::new(px.iter().zip(w.rows()).map(|(&p, row)| row.iter().map(|&q| p * q).collect()).collect())
    }

    /// A random joint with every `P_Z(z)` positive.
    pub fn random<R: Rng + ?Sized>(v: usize, outputs: usize, zero_prob: f64, rng: &mut R) -> Self {
        loop {
            let flat = random_simplex(v * outputs, zero_prob, rng);
            let p: Vec<Vec<f64>> = flat.chunks(outputs).map(<[f64]>::to_vec).collect();
            if let Ok(j) = JointXZ::new(p) {
                return j;
            }
        }
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        JointXZ::new(parse_csv_matrix(text)?)
    }

    pub fn to_csv(&self) -> String {
        format_csv_matrix(&self.p)
    }

    pub fn inputs(&self) -> usize {
        self.p.len()
    }

    pub fn outputs(&self) -> usize {
        self.p[0].len()
    }

    pub fn get(&self, x: usize, z: usize) -> f64 {
        self.p[x][z]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.p
    }

    /// `p_z(x) = P_XZ(x, z)`.
    pub fn p_z(&self, z: usize) -> Vec<f64> {
        self.p.iter().map(|r| r[z]).collect()
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        self.p.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn marginal_z(&self) -> Vec<f64> {
        (0..self.outputs()).map(|z| self.p.iter().map(|r| r[z]).sum()).collect()
    }

    pub fn conditional_x(&self, z: usize) -> Vec<f64> {
        let pz = self.p_z(z);
        let total: f64 = pz.iter().sum();
        pz.into_iter().map(|p| p / total).collect()
    }

    /// `2^{−H₂(X|Z=z)}`.
    pub fn collision_given(&self, z: usize) -> f64 {
        collision_probability(&self.conditional_x(z))
    }

    /// `P_{X_Π|Z}(i|z) = P_{X|Z}(X_i|z)`.
    pub fn class_conditional(&self, z: usize, partition: &Partition) -> Vec<f64> {
        let c = self.conditional_x(z);
        partition.classes().iter().map(|class| class.iter().map(|&x| c[x]).sum()).collect()
    }

    /// `2^{−H₂(X_Π|Z=z)}`.
    pub fn class_collision_given(&self, z: usize, partition: &Partition) -> f64 {
        collision_probability(&self.class_conditional(z, partition))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DesignClass {
    Bibd,
    Singular,
    SemiRegular,
    Regular,
}

/// GDD parameters used by the bound formulas. A BIBD is treated as a GDD
/// with singleton classes and `λ1 = λ2 = λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    pub v: usize,
    pub b: usize,
    pub k: usize,
    pub r: usize,
    pub lambda1: usize,
    pub lambda2: usize,
    pub u: usize,
    pub partition: Partition,
    pub class: DesignClass,
}

impl BoundParams {
    pub fn from_certificate(cert: &Certificate) -> Result<Self> {
        Ok(match cert {
            Certificate::Bibd(p) => BoundParams {
                v: p.v,
                b: p.b,
                k: p.k,
                r: p.r,
                lambda1: p.lambda,
                lambda2: p.lambda,
                u: 1,
                partition: Partition::singletons(p.v),
                class: DesignClass::Bibd,
            },
            Certificate::Gdd(p) => BoundParams {
                v: p.v,
                b: p.b,
                k: p.k,
                r: p.r,
                lambda1: p.lambda1,
                lambda2: p.lambda2,
                u: p.u,
                partition: p.partition.clone(),
                class: match classify_gdd(p)? {
                    GddClass::Singular => DesignClass::Singular,
                    GddClass::SemiRegular => DesignClass::SemiRegular,
                    GddClass::Regular => DesignClass::Regular,
                },
            },
        })
    }

    /// Same numbers with a caller-chosen partition of the same shape.
    pub fn with_partition(&self, partition: Partition) -> Result<Self> {
        if partition.point_count() != self.v || partition.class_size() != self.u {
            return Err(Error::DimensionMismatch("replacement partition has a different shape".into()));
        }
        Ok(BoundParams { partition, ..self.clone() })
    }

    /// `a = v/k`.
    pub fn a(&self) -> usize {
        self.v / self.k
    }

    pub fn lambda_max(&self) -> usize {
        self.lambda1.max(self.lambda2)
    }

    /// `(r − λ1) + (λ1 − λ2)u`, signed.
    fn spread(&self) -> f64 {
        (self.r as f64 - self.lambda1 as f64) + (self.lambda1 as f64 - self.lambda2 as f64) * self.u as f64
    }
}
