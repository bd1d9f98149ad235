//! Incidence structures and exact verification of tactical configurations,
//! BIBDs, group divisible designs, resolutions and affine resolvable designs.
//!
//! Incidence matrices are stored row-major (one row per point) and packed
//! into 64-bit words. All checks use integer arithmetic and report the first
//! witness of a violation.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};

/// A verification failure together with the first witness found.
#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    #[error("point {point} lies on {found} blocks, expected {expected}")]
    RowSum { point: usize, expected: usize, found: usize },
    #[error("block {block} contains {found} points, expected {expected}")]
    ColumnSum { block: usize, expected: usize, found: usize },
    #[error("points {x} and {y} share {found} blocks, expected {expected}")]
    PairCount { x: usize, y: usize, expected: u64, found: u64 },
    #[error("structure has no points or no blocks")]
    Empty,
    #[error("parameter relation fails: {0}")]
    Parameters(String),
    #[error("parallel class {class}: point {point} is covered {count} times")]
    ParallelClass { class: usize, point: usize, count: usize },
    #[error("resolution shape: {0}")]
    ResolutionShape(String),
    #[error("incidence ({point}, {block}) is covered by {count} members")]
    Cover { point: usize, block: usize, count: usize },
    #[error("member {color} is empty")]
    EmptyMember { color: usize },
    #[error("member {color}: {inner}")]
    Member { color: usize, inner: Box<Violation> },
}

/// A `v × b` 0/1 incidence matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IncidenceStructure {
    v: usize,
    b: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for IncidenceStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IncidenceStructure(v={}, b={})", self.v, self.b)
    }
}

impl IncidenceStructure {
    pub fn empty(v: usize, b: usize) -> Self {
        let words = b.div_ceil(64);
        IncidenceStructure { v, b, words, bits: vec![0; v * words] }
    }

    pub fn from_fn(v: usize, b: usize, mut incident: impl FnMut(usize, usize) -> bool) -> Self {
        let mut d = Self::empty(v, b);
        for x in 0..v {
            for s in 0..b {
                if incident(x, s) {
                    d.set(x, s, true);
                }
            }
        }
        d
    }

    /// Builds a structure from its blocks, each given as a list of points.
    pub fn from_blocks(v: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut d = Self::empty(v, blocks.len());
        for (s, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= v {
                    return Err(Error::DimensionMismatch(format!("block {s} names point {x} but v = {v}")));
                }
                d.set(x, s, true);
            }
        }
        Ok(d)
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let v = rows.len();
        let b = rows.first().map_or(0, Vec::len);
        let mut d = Self::empty(v, b);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != b {
                return Err(Error::DimensionMismatch(format!("row {x} has {} entries, expected {b}", row.len())));
            }
            for (s, &e) in row.iter().enumerate() {
                match e {
                    0 => {}
                    1 => d.set(x, s, true),
                    _ => return Err(Error::Parse(format!("entry ({x}, {s}) is {e}, not 0 or 1"))),
                }
            }
        }
        Ok(d)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn get(&self, x: usize, s: usize) -> bool {
        debug_assert!(x < self.v && s < self.b);
        (self.bits[x * self.words + s / 64] >> (s % 64)) & 1 == 1
    }

    pub fn set(&mut self, x: usize, s: usize, on: bool) {
        assert!(x < self.v && s < self.b, "incidence ({x}, {s}) out of range");
        let w = &mut self.bits[x * self.words + s / 64];
        if on {
            *w |= 1 << (s % 64);
        } else {
            *w &= !(1 << (s % 64));
        }
    }

    fn row(&self, x: usize) -> &[u64] {
        &self.bits[x * self.words..(x + 1) * self.words]
    }

    pub fn row_sum(&self, x: usize) -> usize {
        self.row(x).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn column_sum(&self, s: usize) -> usize {
        (0..self.v).filter(|&x| self.get(x, s)).count()
    }

    pub fn points_of(&self, s: usize) -> Vec<usize> {
        (0..self.v).filter(|&x| self.get(x, s)).collect()
    }

    pub fn blocks_of(&self, x: usize) -> Vec<usize> {
        (0..self.b).filter(|&s| self.get(x, s)).collect()
    }

    pub fn incidence_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Number of blocks containing both `x` and `y` (row AND + popcount).
    pub fn common_blocks(&self, x: usize, y: usize) -> u64 {
        self.row(x).iter().zip(self.row(y)).map(|(a, b)| (a & b).count_ones() as u64).sum()
    }

    /// `NN^T`, computed with packed rows.
    pub fn gram(&self) -> Vec<Vec<u64>> {
        let mut g = vec![vec![0u64; self.v]; self.v];
        for x in 0..self.v {
            for y in x..self.v {
                let c = self.common_blocks(x, y);
                g[x][y] = c;
                g[y][x] = c;
            }
        }
        g
    }

    /// Transposed structure: points and blocks swap roles.
    pub fn dual(&self) -> Self {
        Self::from_fn(self.b, self.v, |s, x| self.get(x, s))
    }

    /// Relabels points and blocks: `(x, s)` of `self` becomes `(pi[x], sigma[s])`.
    pub fn relabel(&self, pi: &[usize], sigma: &[usize]) -> Self {
        let mut d = Self::empty(self.v, self.b);
        for x in 0..self.v {
            for s in 0..self.b {
                if self.get(x, s) {
                    d.set(pi[x], sigma[s], true);
                }
            }
        }
        d
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.v * (2 * self.b + 1));
        for x in 0..self.v {
            for s in 0..self.b {
                if s > 0 {
                    out.push(',');
                }
                out.push(if self.get(x, s) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .enumerate()
            .map(|(i, line)| {
                line.split(',')
                    .map(|cell| match cell.trim() {
                        "0" => Ok(0u8),
                        "1" => Ok(1u8),
                        other => Err(Error::Parse(format!("line {}: entry {other:?} is not 0 or 1", i + 1))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TacticalParams {
    pub v: usize,
    pub b: usize,
    pub k: usize,
    pub r: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BibdParams {
    pub v: usize,
    pub b: usize,
    pub k: usize,
    pub r: usize,
    pub lambda: usize,
}

impl BibdParams {
    pub fn tactical(&self) -> TacticalParams {
        TacticalParams { v: self.v, b: self.b, k: self.k, r: self.r }
    }

    /// Fisher's inequality `b ≥ v` for `k < v`.
    pub fn satisfies_fisher(&self) -> bool {
        self.k >= self.v || self.b >= self.v
    }

    /// Bose's inequality `b ≥ v + r − 1` for resolvable designs.
    pub fn satisfies_bose(&self) -> bool {
        self.b + 1 >= self.v + self.r
    }
}

/// Point classes of a group divisible design: `m` disjoint classes of size `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Validates that `classes` are disjoint, equally sized and cover `0..v`.
    pub fn new(v: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let u = classes.first().map_or(0, Vec::len);
        if u == 0 {
            return Err(Error::MalformedPartition("no classes or an empty class".into()));
        }
        let mut seen = vec![false; v];
        for (i, class) in classes.iter().enumerate() {
            if class.len() != u {
                return Err(Error::MalformedPartition(format!("class {i} has size {}, expected {u}", class.len())));
            }
            for &x in class {
                if x >= v {
                    return Err(Error::MalformedPartition(format!("point {x} out of range (v = {v})")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::MalformedPartition(format!("point {x} appears twice")));
                }
            }
        }
        if let Some(x) = seen.iter().position(|&s| !s) {
            return Err(Error::MalformedPartition(format!("point {x} is in no class")));
        }
        Ok(Partition { classes })
    }

    /// Classes `{i·u, …, i·u + u − 1}`.
    pub fn consecutive(m: usize, u: usize) -> Self {
        Partition { classes: (0..m).map(|i| (i * u..(i + 1) * u).collect()).collect() }
    }

    pub fn singletons(v: usize) -> Self {
        Self::consecutive(v, 1)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_size(&self) -> usize {
        self.classes[0].len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn point_count(&self) -> usize {
        self.class_size() * self.class_count()
    }

    /// Class index of every point.
    pub fn class_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.point_count()];
        for (i, class) in self.classes.iter().enumerate() {
            for &x in class {
                out[x] = i;
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GddParams {
    pub v: usize,
    pub b: usize,
    pub k: usize,
    pub r: usize,
    pub lambda1: usize,
    pub lambda2: usize,
    pub u: usize,
    pub m: usize,
    pub partition: Partition,
}

impl GddParams {
    pub fn tactical(&self) -> TacticalParams {
        TacticalParams { v: self.v, b: self.b, k: self.k, r: self.r }
    }

    /// A transversal design: no pair inside a class, and each block meets
    /// every class exactly once.
    pub fn is_transversal(&self) -> bool {
        self.lambda1 == 0 && self.k == self.m
    }

    /// Hanani's bound `k(u − 1) ≤ λu² − 1` for transversal designs.
    pub fn satisfies_hanani(&self) -> bool {
        !self.is_transversal() || self.u < 2 || self.k * (self.u - 1) < self.lambda2 * self.u * self.u
    }
}

/// Bose–Connor classification of group divisible designs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GddClass {
    Singular,
    SemiRegular,
    Regular,
}

/// Parameter certificate as serialized alongside incidence matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Certificate {
    Gdd(GddParams),
    Bibd(BibdParams),
}

impl Certificate {
    pub fn tactical(&self) -> TacticalParams {
        match self {
            Certificate::Gdd(p) => p.tactical(),
            Certificate::Bibd(p) => p.tactical(),
        }
    }

    /// Re-verifies `d` against this certificate.
    pub fn verify(&self, d: &IncidenceStructure) -> std::result::Result<(), Violation> {
        let found = match self {
            Certificate::Bibd(p) => Certificate::Bibd(verify_bibd(d, p.lambda)?),
            Certificate::Gdd(p) => Certificate::Gdd(verify_gdd(d, &p.partition, p.lambda1, p.lambda2)?),
        };
        if &found != self {
            return Err(Violation::Parameters(format!(
                "certificate {self:?} disagrees with verified parameters {found:?}"
            )));
        }
        Ok(())
    }
}

/// Parallel classes of block indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Resolution {
    classes: Vec<Vec<usize>>,
}

impl Resolution {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }
}

/// Checks constant row and column sums.
pub fn verify_tactical(d: &IncidenceStructure) -> std::result::Result<TacticalParams, Violation> {
    if d.v == 0 || d.b == 0 {
        return Err(Violation::Empty);
    }
    let r = d.row_sum(0);
    for x in 1..d.v {
        let found = d.row_sum(x);
        if found != r {
            return Err(Violation::RowSum { point: x, expected: r, found });
        }
    }
    let mut cols = vec![0usize; d.b];
    for x in 0..d.v {
        for s in d.blocks_of(x) {
            cols[s] += 1;
        }
    }
    let k = cols[0];
    if let Some(s) = cols.iter().position(|&c| c != k) {
        return Err(Violation::ColumnSum { block: s, expected: k, found: cols[s] });
    }
    debug_assert_eq!(d.b * k, d.v * r);
    Ok(TacticalParams { v: d.v, b: d.b, k, r })
}

/// Checks `NN^T = (r − λ)I + λJ` exactly.
pub fn verify_bibd(d: &IncidenceStructure, lambda: usize) -> std::result::Result<BibdParams, Violation> {
    let t = verify_tactical(d)?;
    if lambda == 0 {
        return Err(Violation::Parameters("λ must be at least 1".into()));
    }
    for x in 0..d.v {
        for y in x + 1..d.v {
            let found = d.common_blocks(x, y);
            if found != lambda as u64 {
                return Err(Violation::PairCount { x, y, expected: lambda as u64, found });
            }
        }
    }
    Ok(BibdParams { v: t.v, b: t.b, k: t.k, r: t.r, lambda })
}

/// Checks `NN^T = (r − λ1)I + (λ1 − λ2)C + λ2J` exactly.
pub fn verify_gdd(
    d: &IncidenceStructure,
    partition: &Partition,
    lambda1: usize,
    lambda2: usize,
) -> std::result::Result<GddParams, Violation> {
    if partition.point_count() != d.v {
        return Err(Violation::Parameters(format!(
            "partition covers {} points but v = {}",
            partition.point_count(),
            d.v
        )));
    }
    let t = verify_tactical(d)?;
    if lambda2 == 0 {
        return Err(Violation::Parameters("λ2 must be at least 1".into()));
    }
    let class = partition.class_of();
    for x in 0..d.v {
        for y in x + 1..d.v {
            let expected = if class[x] == class[y] { lambda1 } else { lambda2 } as u64;
            let found = d.common_blocks(x, y);
            if found != expected {
                return Err(Violation::PairCount { x, y, expected, found });
            }
        }
    }
    Ok(GddParams {
        v: t.v,
        b: t.b,
        k: t.k,
        r: t.r,
        lambda1,
        lambda2,
        u: partition.class_size(),
        m: partition.class_count(),
        partition: partition.clone(),
    })
}

pub fn dual(d: &IncidenceStructure) -> IncidenceStructure {
    d.dual()
}

/// Checks that every class is a parallel class and that there are `r`
/// classes of `v/k` blocks each.
pub fn verify_resolution(d: &IncidenceStructure, classes: &[Vec<usize>]) -> std::result::Result<Resolution, Violation> {
    let t = verify_tactical(d)?;
    if classes.len() != t.r {
        return Err(Violation::ResolutionShape(format!("{} classes, expected r = {}", classes.len(), t.r)));
    }
    let mut used = vec![false; d.b];
    for (i, class) in classes.iter().enumerate() {
        if class.len() * t.k != t.v {
            return Err(Violation::ResolutionShape(format!(
                "class {i} has {} blocks, expected v/k = {}",
                class.len(),
                t.v / t.k.max(1)
            )));
        }
        let mut cover = vec![0usize; d.v];
        for &s in class {
            if s >= d.b || std::mem::replace(&mut used[s], true) {
                return Err(Violation::ResolutionShape(format!("block {s} missing or used twice")));
            }
            for x in d.points_of(s) {
                cover[x] += 1;
            }
        }
        if let Some(x) = cover.iter().position(|&c| c != 1) {
            return Err(Violation::ParallelClass { class: i, point: x, count: cover[x] });
        }
    }
    Ok(Resolution { classes: classes.to_vec() })
}

/// Bose–Connor class; parameters matching none of the three are rejected.
pub fn classify_gdd(p: &GddParams) -> Result<GddClass> {
    let (rk, vl2) = (p.r * p.k, p.v * p.lambda2);
    match () {
        _ if p.r == p.lambda1 => Ok(GddClass::Singular),
        _ if p.r > p.lambda1 && rk == vl2 => Ok(GddClass::SemiRegular),
        _ if p.r > p.lambda1 && rk > vl2 => Ok(GddClass::Regular),
        _ => Err(Error::InvalidParameter(format!(
            "r={}, λ1={}, rk={rk}, vλ2={vl2} fit no Bose–Connor class",
            p.r, p.lambda1
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineVerdict {
    /// Equality in Bose's inequality.
    pub affine: bool,
    /// Common size of intersections of non-parallel blocks, when constant.
    pub mu: Option<usize>,
}

/// Affinity of a resolvable BIBD.
pub fn check_affine(d: &IncidenceStructure, resolution: &Resolution) -> std::result::Result<AffineVerdict, Violation> {
    let t = verify_tactical(d)?;
    let mut class_of = vec![0usize; d.b];
    for (i, class) in resolution.classes.iter().enumerate() {
        for &s in class {
            class_of[s] = i;
        }
    }
    let cols: Vec<Vec<usize>> = (0..d.b).map(|s| d.points_of(s)).collect();
    let mut mu = None;
    let mut constant = true;
    'pairs: for s in 0..d.b {
        for s2 in s + 1..d.b {
            if class_of[s] == class_of[s2] {
                continue;
            }
            let meet = cols[s].iter().filter(|x| cols[s2].binary_search(x).is_ok()).count();
            match mu {
                None => mu = Some(meet),
                Some(m) if m != meet => {
                    constant = false;
                    break 'pairs;
                }
                _ => {}
            }
        }
    }
    Ok(AffineVerdict { affine: t.b + 1 == t.v + t.r, mu: mu.filter(|_| constant) })
}

/// `NN^T` as an integer matrix.
pub fn incidence_gram(d: &IncidenceStructure) -> Vec<Vec<u64>> {
    d.gram()
}

/// Pair counts by walking blocks: an oracle for [`incidence_gram`] that does
/// not use row products.
pub fn pair_counts_by_blocks(d: &IncidenceStructure) -> Vec<Vec<u64>> {
    let mut g = vec![vec![0u64; d.v]; d.v];
    for s in 0..d.b {
        let pts = d.points_of(s);
        for &x in &pts {
            for &y in &pts {
                g[x][y] += 1;
            }
        }
    }
    g
}

/// Human-readable matrix dump used in diagnostics.
pub fn format_matrix(m: &[Vec<u64>]) -> String {
    let mut out = String::new();
    for row in m {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// AG(2,2): points of GF(2)², blocks are the 6 lines.
    fn ag22() -> IncidenceStructure {
        IncidenceStructure::from_blocks(4, &[vec![0, 1], vec![2, 3], vec![0, 2], vec![1, 3], vec![0, 3], vec![1, 2]])
            .unwrap()
    }

    /// AG(2,3) with its four parallel classes (slopes 0, 1, 2, ∞).
    fn ag23() -> (IncidenceStructure, Vec<Vec<usize>>) {
        let pt = |x: usize, y: usize| 3 * x + y;
        let mut blocks = Vec::new();
        let mut classes = Vec::new();
        for m in 0..3 {
            let mut class = Vec::new();
            for c in 0..3 {
                class.push(blocks.len());
                blocks.push((0..3).map(|x| pt(x, (m * x + c) % 3)).collect());
            }
            classes.push(class);
        }
        let mut class = Vec::new();
        for c in 0..3 {
            class.push(blocks.len());
            blocks.push((0..3).map(|y| pt(c, y)).collect());
        }
        classes.push(class);
        (IncidenceStructure::from_blocks(9, &blocks).unwrap(), classes)
    }

    /// Clatworthy R1: the (4, 8) design with groups {0,1}, {2,3}.
    pub(crate) fn clatworthy_r1() -> (IncidenceStructure, Partition) {
        let blocks =
            vec![vec![0, 1], vec![0, 1], vec![2, 3], vec![2, 3], vec![0, 2], vec![1, 3], vec![0, 3], vec![1, 2]];
        (IncidenceStructure::from_blocks(4, &blocks).unwrap(), Partition::consecutive(2, 2))
    }

    #[test]
    fn tactical_examples() {
        assert_eq!(verify_tactical(&ag22()).unwrap(), TacticalParams { v: 4, b: 6, k: 2, r: 3 });
        let ones = IncidenceStructure::from_fn(2, 2, |_, _| true);
        assert_eq!(verify_tactical(&ones).unwrap(), TacticalParams { v: 2, b: 2, k: 2, r: 2 });
        let mut bad = ones.clone();
        bad.set(1, 1, false);
        assert!(matches!(verify_tactical(&bad), Err(Violation::RowSum { point: 1, .. })));
    }

    #[test]
    fn bibd_examples() {
        let (d, _) = ag23();
        let p = verify_bibd(&d, 1).unwrap();
        assert_eq!((p.v, p.b, p.k, p.r, p.lambda), (9, 12, 3, 4, 1));
        assert!(p.satisfies_fisher() && p.satisfies_bose());
        let (r1, _) = clatworthy_r1();
        assert!(matches!(verify_bibd(&r1, 1), Err(Violation::PairCount { .. })));
        assert!(verify_bibd(&r1, 2).is_err());
    }

    #[test]
    fn gdd_examples() {
        let (r1, part) = clatworthy_r1();
        let p = verify_gdd(&r1, &part, 2, 1).unwrap();
        assert_eq!((p.v, p.r, p.k, p.lambda1, p.lambda2), (4, 4, 2, 2, 1));
        assert_eq!(classify_gdd(&p).unwrap(), GddClass::Regular);
        // a BIBD with singleton classes: λ1 never enters
        let (d, _) = ag23();
        for l1 in [0, 1, 7] {
            assert!(verify_gdd(&d, &Partition::singletons(9), l1, 1).is_ok());
        }
        assert!(Partition::new(4, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(4, vec![vec![0, 1], vec![2]]).is_err());
    }

    #[test]
    fn gram_matches_pair_oracle() {
        let (d, _) = ag23();
        assert_eq!(incidence_gram(&d), pair_counts_by_blocks(&d));
        let empty = IncidenceStructure::empty(3, 0);
        assert_eq!(incidence_gram(&empty), vec![vec![0; 3]; 3]);
    }

    #[test]
    fn dual_is_involution() {
        let d = ag22();
        assert_eq!(dual(&dual(&d)), d);
        let t = verify_tactical(&d.dual()).unwrap();
        assert_eq!((t.v, t.b, t.k, t.r), (6, 4, 3, 2));
    }

    #[test]
    fn resolutions() {
        let (d, classes) = ag23();
        let res = verify_resolution(&d, &classes).unwrap();
        assert_eq!(check_affine(&d, &res).unwrap(), AffineVerdict { affine: true, mu: Some(1) });
        // swap one block between two classes
        let mut shuffled = classes.clone();
        let tmp = shuffled[0][0];
        shuffled[0][0] = shuffled[1][0];
        shuffled[1][0] = tmp;
        assert!(matches!(verify_resolution(&d, &shuffled), Err(Violation::ParallelClass { .. })));
        // v = k: one block repeated, one class each
        let rep = IncidenceStructure::from_fn(3, 2, |_, _| true);
        assert!(verify_resolution(&rep, &[vec![0], vec![1]]).is_ok());
    }

    #[test]
    fn csv_round_trip() {
        let d = ag22();
        assert_eq!(IncidenceStructure::from_csv(&d.to_csv()).unwrap(), d);
        assert!(IncidenceStructure::from_csv("0,1\n1,2\n").is_err());
        assert!(IncidenceStructure::from_csv("0,1\n1\n").is_err());
    }

    #[test]
    fn certificate_json_shapes() {
        let (r1, part) = clatworthy_r1();
        let cert = Certificate::Gdd(verify_gdd(&r1, &part, 2, 1).unwrap());
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["lambda1"], 2);
        assert_eq!(json["partition"], serde_json::json!([[0, 1], [2, 3]]));
        let back: Certificate = serde_json::from_value(json).unwrap();
        assert_eq!(back, cert);
        back.verify(&r1).unwrap();
        let bibd: Certificate = serde_json::from_str(r#"{"v":4,"b":6,"k":2,"r":3,"lambda":1}"#).unwrap();
        assert!(matches!(bibd, Certificate::Bibd(_)));
        bibd.verify(&ag22()).unwrap();
    }
}
