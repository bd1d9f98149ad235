//! Universal-hash and orthogonal-array properties of functional forms.
//!
//! The collision count of two points is the number of block indices on which
//! they receive the same color. A functional form is a universal hash family
//! when every normalized count is at most `1/a`, and optimally universal when
//! every count meets Stinson's floor `b(v − a)/(a(v − 1))` exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::designs::GddParams;
use crate::mosaics::FunctionalForm;

/// Collision counts for all unordered point pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionSpectrum {
    pub v: usize,
    pub b: usize,
    pub a: usize,
    /// Upper triangle, row-major: pair `(x, y)` with `x < y`.
    counts: Vec<u64>,
    pub min: u64,
    pub max: u64,
    /// Count value → number of pairs attaining it.
    pub histogram: BTreeMap<u64, usize>,
}

impl CollisionSpectrum {
    fn offset(&self, x: usize) -> usize {
        x * self.v - x * (x + 1) / 2
    }

    /// `|{s : f(x, s) = f(y, s)}|` for `x ≠ y`.
    pub fn count(&self, x: usize, y: usize) -> u64 {
        assert_ne!(x, y);
        let (x, y) = (x.min(y), x.max(y));
        self.counts[self.offset(x) + (y - x - 1)]
    }

    pub fn normalized_min(&self) -> f64 {
        self.min as f64 / self.b as f64
    }

    pub fn normalized_max(&self) -> f64 {
        self.max as f64 / self.b as f64
    }

    pub fn is_constant(&self) -> bool {
        self.min == self.max
    }
}

/// Exact spectrum by grouping points per `(s, color)`.
pub fn collision_spectrum(ff: &dyn FunctionalForm) -> CollisionSpectrum {
    let (v, b, a) = (ff.points(), ff.blocks(), ff.colors());
    let pairs = v * v.saturating_sub(1) / 2;
    let mut counts = vec![0u64; pairs];
    let offset = |x: usize| x * v - x * (x + 1) / 2;
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); a];
    for s in 0..b {
        groups.iter_mut().for_each(Vec::clear);
        for x in 0..v {
            groups[ff.color(x, s)].push(x);
        }
        for g in &groups {
            for (i, &x) in g.iter().enumerate() {
                for &y in &g[i + 1..] {
                    counts[offset(x) + (y - x - 1)] += 1;
                }
            }
        }
    }
    let mut histogram = BTreeMap::new();
    for &c in &counts {
        *histogram.entry(c).or_insert(0) += 1;
    }
    CollisionSpectrum {
        v,
        b,
        a,
        min: counts.iter().copied().min().unwrap_or(0),
        max: counts.iter().copied().max().unwrap_or(0),
        counts,
        histogram,
    }
}

/// Every normalized collision count is at most `1/a`.
pub fn is_universal(spec: &CollisionSpectrum) -> bool {
    spec.max * spec.a as u64 <= spec.b as u64
}

/// Every collision count equals `b(v − a)/(a(v − 1))`, compared exactly.
pub fn is_optimally_universal(spec: &CollisionSpectrum) -> bool {
    let (v, b, a) = (spec.v as u64, spec.b as u64, spec.a as u64);
    v >= 2 && spec.histogram.keys().all(|&c| c * a * (v - 1) == b * (v - a))
}

/// Stinson's lower bound `(v − a)/(a(v − 1))` on the normalized maximum.
pub fn stinson_floor(v: usize, a: usize) -> f64 {
    (v - a) as f64 / (a as f64 * (v - 1) as f64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GddUhfVerdict {
    pub universal: bool,
    pub kr: usize,
    pub lambda1_v: usize,
}

/// For a mosaic built from a resolvable GDD with `λ1 ≥ λ2`, universality is
/// equivalent to `kr ≥ λ1 v`.
pub fn check_regular_gdd_uhf(p: &GddParams) -> GddUhfVerdict {
    check_gdd_uhf_numbers(p.v, p.k, p.r, p.lambda1, p.lambda2)
}

pub fn check_gdd_uhf_numbers(v: usize, k: usize, r: usize, lambda1: usize, lambda2: usize) -> GddUhfVerdict {
    let (kr, lambda1_v) = (k * r, lambda1 * v);
    GddUhfVerdict { universal: lambda1 <= lambda2 || kr >= lambda1_v, kr, lambda1_v }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OaReport {
    /// Every ordered symbol pair appears exactly `λ = b/a²` times in every
    /// pair of rows.
    pub is_oa: bool,
    pub lambda: Option<usize>,
    /// `|{x : M(x, s) = α}|` is the same for every `(s, α)`.
    pub counts_constant: bool,
    /// `a · max_{x≠x', α, α'} |{s : M(x,s)=α, M(x',s)=α'}| / b`.
    pub epsilon: f64,
    /// A nontrivial array cannot be an OA with constant column counts.
    pub impossibility_holds: bool,
}

/// Exhaustive orthogonal-array check of a `v × b` array over `[a]`.
pub fn oa_check(array: &[Vec<usize>], a: usize) -> OaReport {
    let v = array.len();
    let b = array.first().map_or(0, Vec::len);
    let lambda = (a > 0 && b.is_multiple_of(a * a)).then(|| b / (a * a));
    let mut is_oa = lambda.is_some() && v >= 2;
    let mut max_pair = 0usize;
    let mut table = vec![0usize; a * a];
    for x in 0..v {
        for y in x + 1..v {
            table.iter_mut().for_each(|c| *c = 0);
            for s in 0..b {
                table[array[x][s] * a + array[y][s]] += 1;
            }
            max_pair = max_pair.max(table.iter().copied().max().unwrap_or(0));
            if table.iter().any(|&c| Some(c) != lambda) {
                is_oa = false;
            }
        }
    }
    let mut col_counts = Vec::with_capacity(a * b);
    for s in 0..b {
        let mut c = vec![0usize; a];
        for row in array {
            c[row[s]] += 1;
        }
        col_counts.extend(c);
    }
    let counts_constant = col_counts.windows(2).all(|w| w[0] == w[1]);
    OaReport {
        is_oa,
        lambda: lambda.filter(|_| is_oa),
        counts_constant,
        epsilon: if b == 0 { 0.0 } else { (a * max_pair) as f64 / b as f64 },
        impossibility_holds: a == 1 || !(is_oa && counts_constant),
    }
}

/// Color table `f(x, s)` as a `v × b` array.
pub fn color_array(ff: &dyn FunctionalForm) -> Vec<Vec<usize>> {
    (0..ff.points()).map(|x| (0..ff.blocks()).map(|s| ff.color(x, s)).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HashReport {
    pub spectrum_min: u64,
    pub spectrum_max: u64,
    pub universal: bool,
    pub optimally_universal: bool,
    pub epsilon: f64,
}

pub fn hash_report(ff: &dyn FunctionalForm) -> HashReport {
    let spec = collision_spectrum(ff);
    let oa = oa_check(&color_array(ff), ff.colors());
    HashReport {
        spectrum_min: spec.min,
        spectrum_max: spec.max,
        universal: is_universal(&spec),
        optimally_universal: is_optimally_universal(&spec),
        epsilon: oa.epsilon,
    }
}
