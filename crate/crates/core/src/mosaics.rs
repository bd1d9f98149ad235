//! Mosaics of incidence structures, their functional forms, and the
//! construction of a mosaic from a resolvable design and a quasigroup.
//!
//! A mosaic on `v` points and `b` block indices with `a` colors is a family of
//! incidence structures `D_0 … D_{a-1}` whose incidence matrices sum to the
//! all-ones matrix. Its functional form `f(x, s)` names the unique member in
//! which `x` and `s` are incident; the preimage enumerator `g(s, α, κ)` lists
//! `{x : f(x, s) = α}` for `κ < k`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::designs::{
    verify_resolution, verify_tactical, BibdParams, Certificate, IncidenceStructure, Resolution, Violation,
};
use crate::error::{invalid, Error, Result};
use crate::field::{Field, FieldElement};

/// A finite quasigroup on `0..order` (a Latin square with division).
pub trait Quasigroup: Send + Sync {
    fn order(&self) -> usize;
    fn eval(&self, beta: usize, gamma: usize) -> usize;
    /// The unique `γ` with `L(β, γ) = α`.
    fn solve_right(&self, beta: usize, alpha: usize) -> usize;
    /// The unique `β` with `L(β, γ) = α`.
    fn solve_left(&self, gamma: usize, alpha: usize) -> usize;
}

/// `Z_a` under addition.
#[derive(Clone, Copy, Debug)]
pub struct CyclicGroup {
    pub order: usize,
}

impl Quasigroup for CyclicGroup {
    fn order(&self) -> usize {
        self.order
    }
    fn eval(&self, beta: usize, gamma: usize) -> usize {
        (beta + gamma) % self.order
    }
    fn solve_right(&self, beta: usize, alpha: usize) -> usize {
        (alpha + self.order - beta) % self.order
    }
    fn solve_left(&self, gamma: usize, alpha: usize) -> usize {
        (alpha + self.order - gamma) % self.order
    }
}

/// Additive group of a finite field, elements indexed by their packed encoding.
#[derive(Clone, Debug)]
pub struct FieldAdditive {
    field: Field,
}

impl FieldAdditive {
    pub fn new(field: Field) -> Self {
        FieldAdditive { field }
    }
}

fn fe(i: usize) -> FieldElement {
    FieldElement::from_index(i as u32)
}

impl Quasigroup for FieldAdditive {
    fn order(&self) -> usize {
        self.field.order() as usize
    }
    fn eval(&self, beta: usize, gamma: usize) -> usize {
        self.field.add(fe(beta), fe(gamma)).index() as usize
    }
    fn solve_right(&self, beta: usize, alpha: usize) -> usize {
        self.field.sub(fe(alpha), fe(beta)).index() as usize
    }
    fn solve_left(&self, gamma: usize, alpha: usize) -> usize {
        self.field.sub(fe(alpha), fe(gamma)).index() as usize
    }
}

/// Quasigroup given by its Cayley table, with precomputed division tables.
#[derive(Clone, Debug)]
pub struct TableQuasigroup {
    table: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
}

impl TableQuasigroup {
    /// Accepts `table` only if it is a Latin square; checked exhaustively.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let a = table.len();
        if a == 0 {
            return Err(Error::NotLatin("empty table".into()));
        }
        let mut right = vec![vec![usize::MAX; a]; a];
        let mut left = vec![vec![usize::MAX; a]; a];
        for (beta, row) in table.iter().enumerate() {
            if row.len() != a {
                return Err(Error::NotLatin(format!("row {beta} has length {}", row.len())));
            }
            for (gamma, &alpha) in row.iter().enumerate() {
                if alpha >= a {
                    return Err(Error::NotLatin(format!("entry ({beta}, {gamma}) = {alpha} out of range")));
                }
                if right[beta][alpha] != usize::MAX {
                    return Err(Error::NotLatin(format!("symbol {alpha} repeated in row {beta}")));
                }
                if left[gamma][alpha] != usize::MAX {
                    return Err(Error::NotLatin(format!("symbol {alpha} repeated in column {gamma}")));
                }
                right[beta][alpha] = gamma;
                left[gamma][alpha] = beta;
            }
        }
        Ok(TableQuasigroup { table, right, left })
    }

    pub fn from_quasigroup(q: &dyn Quasigroup) -> Result<Self> {
        let a = q.order();
        Self::new((0..a).map(|b| (0..a).map(|g| q.eval(b, g)).collect()).collect())
    }
}

impl Quasigroup for TableQuasigroup {
    fn order(&self) -> usize {
        self.table.len()
    }
    fn eval(&self, beta: usize, gamma: usize) -> usize {
        self.table[beta][gamma]
    }
    fn solve_right(&self, beta: usize, alpha: usize) -> usize {
        self.right[beta][alpha]
    }
    fn solve_left(&self, gamma: usize, alpha: usize) -> usize {
        self.left[gamma][alpha]
    }
}

/// Oracle access to a mosaic of tactical configurations: the color map and
/// an enumerator of each preimage.
pub trait FunctionalForm: Send + Sync {
    fn points(&self) -> usize;
    fn blocks(&self) -> usize;
    fn colors(&self) -> usize;
    /// Common preimage size `k = |{x : f(x, s) = α}|`.
    fn preimage_size(&self) -> usize;
    fn color(&self, x: usize, s: usize) -> usize;
    /// The `κ`-th point of `{x : f(x, s) = α}`, for `κ < k`.
    fn preimage(&self, s: usize, alpha: usize, kappa: usize) -> usize;
}

impl<F: FunctionalForm + ?Sized> FunctionalForm for &F {
    fn points(&self) -> usize {
        (**self).points()
    }
    fn blocks(&self) -> usize {
        (**self).blocks()
    }
    fn colors(&self) -> usize {
        (**self).colors()
    }
    fn preimage_size(&self) -> usize {
        (**self).preimage_size()
    }
    fn color(&self, x: usize, s: usize) -> usize {
        (**self).color(x, s)
    }
    fn preimage(&self, s: usize, alpha: usize, kappa: usize) -> usize {
        (**self).preimage(s, alpha, kappa)
    }
}

impl<F: FunctionalForm + ?Sized> FunctionalForm for Box<F> {
    fn points(&self) -> usize {
        (**self).points()
    }
    fn blocks(&self) -> usize {
        (**self).blocks()
    }
    fn colors(&self) -> usize {
        (**self).colors()
    }
    fn preimage_size(&self) -> usize {
        (**self).preimage_size()
    }
    fn color(&self, x: usize, s: usize) -> usize {
        (**self).color(x, s)
    }
    fn preimage(&self, s: usize, alpha: usize, kappa: usize) -> usize {
        (**self).preimage(s, alpha, kappa)
    }
}

/// A materialized mosaic: one incidence structure per color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mosaic {
    v: usize,
    b: usize,
    members: Vec<IncidenceStructure>,
}

impl Mosaic {
    /// Wraps members of equal shape. The partition property is checked by
    /// [`verify_mosaic`], not here.
    pub fn from_members(members: Vec<IncidenceStructure>) -> Result<Self> {
        let first = members.first().ok_or_else(|| invalid("a mosaic needs at least one member"))?;
        let (v, b) = (first.v(), first.b());
        if let Some(i) = members.iter().position(|m| m.v() != v || m.b() != b) {
            return Err(Error::DimensionMismatch(format!(
                "member {i} is {}×{}, expected {v}×{b}",
                members[i].v(),
                members[i].b()
            )));
        }
        Ok(Mosaic { v, b, members })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn a(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[IncidenceStructure] {
        &self.members
    }

    pub fn member(&self, alpha: usize) -> &IncidenceStructure {
        &self.members[alpha]
    }

    /// Color of `(x, s)`: the first member in which they are incident.
    pub fn color_of(&self, x: usize, s: usize) -> Option<usize> {
        self.members.iter().position(|m| m.get(x, s))
    }
}

/// Checks `Σ_α N_α = J` and that no member is empty.
pub fn verify_mosaic(m: &Mosaic) -> std::result::Result<(), Violation> {
    if let Some(color) = m.members.iter().position(IncidenceStructure::is_empty) {
        return Err(Violation::EmptyMember { color });
    }
    for x in 0..m.v {
        for s in 0..m.b {
            let count = m.members.iter().filter(|d| d.get(x, s)).count();
            if count != 1 {
                return Err(Violation::Cover { point: x, block: s, count });
            }
        }
    }
    Ok(())
}

/// Verifies the partition property and every member against its certificate.
pub fn verify_mosaic_members(m: &Mosaic, certs: &[Certificate]) -> std::result::Result<(), Violation> {
    verify_mosaic(m)?;
    if certs.len() != m.a() {
        return Err(Violation::Parameters(format!("{} certificates for {} members", certs.len(), m.a())));
    }
    for (color, (d, cert)) in m.members.iter().zip(certs).enumerate() {
        cert.verify(d).map_err(|e| Violation::Member { color, inner: Box::new(e) })?;
    }
    Ok(())
}

/// Members of the mosaic described by `f`, read off by pure evaluation.
pub fn materialize(ff: &dyn FunctionalForm) -> Result<Mosaic> {
    let (v, b, a) = (ff.points(), ff.blocks(), ff.colors());
    let mut members = vec![IncidenceStructure::empty(v, b); a];
    for x in 0..v {
        for s in 0..b {
            let alpha = ff.color(x, s);
            if alpha >= a {
                return Err(Error::InconsistentForm(format!("f({x}, {s}) = {alpha} is not a color below {a}")));
            }
            members[alpha].set(x, s, true);
        }
    }
    Mosaic::from_members(members)
}

/// Tabulated functional form of a materialized mosaic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableForm {
    v: usize,
    b: usize,
    a: usize,
    k: usize,
    colors: Vec<u32>,
    preimages: Vec<u32>,
}

impl FunctionalForm for TableForm {
    fn points(&self) -> usize {
        self.v
    }
    fn blocks(&self) -> usize {
        self.b
    }
    fn colors(&self) -> usize {
        self.a
    }
    fn preimage_size(&self) -> usize {
        self.k
    }
    fn color(&self, x: usize, s: usize) -> usize {
        self.colors[x * self.b + s] as usize
    }
    fn preimage(&self, s: usize, alpha: usize, kappa: usize) -> usize {
        debug_assert!(kappa < self.k);
        self.preimages[(s * self.a + alpha) * self.k + kappa] as usize
    }
}

/// Functional form of a mosaic whose members all have the same constant
/// block size. Preimages are enumerated in increasing point order.
pub fn functional_form(m: &Mosaic) -> Result<TableForm> {
    verify_mosaic(m).map_err(|e| Error::InconsistentForm(e.to_string()))?;
    let (v, b, a) = (m.v, m.b, m.a());
    let mut colors = vec![0u32; v * b];
    let mut lists = vec![Vec::new(); b * a];
    for x in 0..v {
        for s in 0..b {
            let alpha = m.color_of(x, s).expect("partition verified");
            colors[x * b + s] = alpha as u32;
            lists[s * a + alpha].push(x as u32);
        }
    }
    let k = lists[0].len();
    if let Some(i) = lists.iter().position(|l| l.len() != k) {
        return Err(Error::InconsistentForm(format!(
            "preimage of block {} under color {} has {} points, expected {k}",
            i / a,
            i % a,
            lists[i].len()
        )));
    }
    Ok(TableForm { v, b, a, k, colors, preimages: lists.concat() })
}

/// Rebuilds the mosaic from `(f, g)`, rejecting `g` unless it is a bijection
/// onto every preimage.
pub fn from_functional_form(ff: &dyn FunctionalForm) -> Result<Mosaic> {
    check_explicitness(ff)?;
    materialize(ff)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitnessReport {
    pub pairs_checked: usize,
    pub preimage_size: usize,
}

/// Exhaustive check that `κ ↦ g(s, α, κ)` is a bijection onto
/// `{x : f(x, s) = α}` for every `(s, α)`.
pub fn check_explicitness(ff: &dyn FunctionalForm) -> Result<ExplicitnessReport> {
    let (v, b, a, k) = (ff.points(), ff.blocks(), ff.colors(), ff.preimage_size());
    let mut counts = vec![0usize; a];
    let mut seen = vec![usize::MAX; v];
    for s in 0..b {
        counts.iter_mut().for_each(|c| *c = 0);
        for x in 0..v {
            let alpha = ff.color(x, s);
            if alpha >= a {
                return Err(Error::InconsistentForm(format!("f({x}, {s}) = {alpha} out of range")));
            }
            counts[alpha] += 1;
        }
        for (alpha, &count) in counts.iter().enumerate() {
            if count != k {
                return Err(Error::InconsistentForm(format!(
                    "block {s}, color {alpha}: preimage has {count} points, expected {k}"
                )));
            }
            let stamp = s * a + alpha;
            for kappa in 0..k {
                let x = ff.preimage(s, alpha, kappa);
                if x >= v {
                    return Err(Error::InconsistentForm(format!("g({s}, {alpha}, {kappa}) = {x} out of range")));
                }
                if ff.color(x, s) != alpha {
                    return Err(Error::InconsistentForm(format!(
                        "g({s}, {alpha}, {kappa}) = {x} but f({x}, {s}) = {}",
                        ff.color(x, s)
                    )));
                }
                if seen[x] == stamp {
                    return Err(Error::InconsistentForm(format!("g({s}, {alpha}, ·) repeats point {x}")));
                }
                seen[x] = stamp;
            }
        }
    }
    Ok(ExplicitnessReport { pairs_checked: b * a, preimage_size: k })
}

/// Uniform draw from `{x : f(x, s) = α}`: `κ` uniform in `[k]`, mapped by `g`.
pub fn sample_inverse<R: Rng + ?Sized>(ff: &dyn FunctionalForm, s: usize, alpha: usize, rng: &mut R) -> Result<usize> {
    let k = ff.preimage_size();
    if k == 0 {
        return Err(Error::EmptyPreimage { block: s, color: alpha });
    }
    Ok(ff.preimage(s, alpha, rng.random_range(0..k)))
}

/// The mosaic obtained from a resolvable design `D` with parallel classes
/// `S_0 … S_{r-1}` and a quasigroup `L` of order `a = v/k`.
///
/// Block index `(i, β)` is numbered `i·a + β`. Point `p` is incident with it
/// in `D_α` exactly when `p` lies on block `γ` of class `i` and `L(β, γ) = α`.
pub struct ResolvableConstruction {
    v: usize,
    k: usize,
    r: usize,
    a: usize,
    /// `position[p·r + i]`: index within class `i` of the block through `p`.
    position: Vec<u32>,
    /// `class_points[i][γ]`: sorted points of block `γ` of class `i`.
    class_points: Vec<Vec<Vec<usize>>>,
    /// `class_blocks[i][γ]`: the block of `D` at position `γ` of class `i`.
    class_blocks: Vec<Vec<usize>>,
    quasigroup: Box<dyn Quasigroup>,
}

pub fn construct_from_resolvable(
    d: &IncidenceStructure,
    resolution: &Resolution,
    quasigroup: Box<dyn Quasigroup>,
) -> Result<ResolvableConstruction> {
    let t = verify_tactical(d)?;
    let resolution = verify_resolution(d, resolution.classes())?;
    let a = t.v / t.k;
    if quasigroup.order() != a {
        return Err(Error::QuasigroupOrderMismatch { quasigroup: quasigroup.order(), expected: a });
    }
    let r = t.r;
    let mut position = vec![0u32; t.v * r];
    let mut class_points = Vec::with_capacity(r);
    for (i, class) in resolution.classes().iter().enumerate() {
        let mut blocks = Vec::with_capacity(a);
        for (gamma, &s) in class.iter().enumerate() {
            let pts = d.points_of(s);
            for &p in &pts {
                position[p * r + i] = gamma as u32;
            }
            blocks.push(pts);
        }
        class_points.push(blocks);
    }
    Ok(ResolvableConstruction {
        v: t.v,
        k: t.k,
        r,
        a,
        position,
        class_points,
        class_blocks: resolution.classes().to_vec(),
        quasigroup,
    })
}

impl ResolvableConstruction {
    /// Block relabeling `σ_α` with `D.relabel(id, σ_α) = D_α`.
    pub fn member_isomorphism(&self, alpha: usize) -> Vec<usize> {
        let b = self.r * self.a;
        let mut sigma = vec![0; b];
        for (i, class) in self.class_blocks.iter().enumerate() {
            for (gamma, &s) in class.iter().enumerate() {
                sigma[s] = i * self.a + self.quasigroup.solve_left(gamma, alpha);
            }
        }
        sigma
    }
}

impl FunctionalForm for ResolvableConstruction {
    fn points(&self) -> usize {
        self.v
    }
    fn blocks(&self) -> usize {
        self.r * self.a
    }
    fn colors(&self) -> usize {
        self.a
    }
    fn preimage_size(&self) -> usize {
        self.k
    }
    fn color(&self, x: usize, s: usize) -> usize {
        let (i, beta) = (s / self.a, s % self.a);
        self.quasigroup.eval(beta, self.position[x * self.r + i] as usize)
    }
    fn preimage(&self, s: usize, alpha: usize, kappa: usize) -> usize {
        let (i, beta) = (s / self.a, s % self.a);
        self.class_points[i][self.quasigroup.solve_right(beta, alpha)][kappa]
    }
}

/// Member-wise transpose.
pub fn dual_mosaic(m: &Mosaic) -> Mosaic {
    Mosaic { v: m.b, b: m.v, members: m.members.iter().map(IncidenceStructure::dual).collect() }
}

/// The sum of a mosaic: `x` is incident with copy `α` of `s` (column `α·b + s`)
/// iff `x` and `s` are incident in `D_α`.
pub fn sum(m: &Mosaic) -> IncidenceStructure {
    IncidenceStructure::from_fn(m.v, m.a() * m.b, |x, col| m.members[col / m.b].get(x, col % m.b))
}

/// The natural resolution of [`sum`]: the `a` copies of each block index.
pub fn sum_resolution(m: &Mosaic) -> Vec<Vec<usize>> {
    (0..m.b).map(|s| (0..m.a()).map(|alpha| alpha * m.b + s).collect()).collect()
}

/// The `u`-fold point multiple: point `x*` becomes `x*·u + i` for `i < u`.
pub fn point_multiple(m: &Mosaic, u: usize) -> Result<Mosaic> {
    if u == 0 {
        return Err(invalid("point multiple needs u ≥ 1"));
    }
    let members =
        m.members.iter().map(|d| IncidenceStructure::from_fn(d.v() * u, d.b(), |x, s| d.get(x / u, s))).collect();
    Mosaic::from_members(members)
}

/// Functional form of the `u`-fold point multiple of an inner form.
pub struct PointMultiple<F> {
    inner: F,
    u: usize,
}

impl<F: FunctionalForm> PointMultiple<F> {
    pub fn new(inner: F, u: usize) -> Result<Self> {
        if u == 0 {
            return Err(invalid("point multiple needs u ≥ 1"));
        }
        Ok(PointMultiple { inner, u })
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }

    pub fn multiplicity(&self) -> usize {
        self.u
    }
}

impl<F: FunctionalForm> FunctionalForm for PointMultiple<F> {
    fn points(&self) -> usize {
        self.inner.points() * self.u
    }
    fn blocks(&self) -> usize {
        self.inner.blocks()
    }
    fn colors(&self) -> usize {
        self.inner.colors()
    }
    fn preimage_size(&self) -> usize {
        self.inner.preimage_size() * self.u
    }
    fn color(&self, x: usize, s: usize) -> usize {
        self.inner.color(x / self.u, s)
    }
    fn preimage(&self, s: usize, alpha: usize, kappa: usize) -> usize {
        self.inner.preimage(s, alpha, kappa / self.u) * self.u + kappa % self.u
    }
}

/// `ϱ0(v, k) = 1 − (log(v−1) + log k − log(k−1)) / (2 log v)`.
pub fn rho0(v: usize, k: usize) -> f64 {
    let (v, k) = (v as f64, k as f64);
    1.0 - ((v - 1.0).ln() + k.ln() - (k - 1.0).ln()) / (2.0 * v.ln())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Optimality {
    Optimal,
    NearOptimal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub v: usize,
    pub b: usize,
    pub a: usize,
    pub k: usize,
    /// `log a / log v`.
    pub color_rate: f64,
    /// `log b / log v`.
    pub block_rate: f64,
    /// `log b / (ϱ log v) = log b / log a`.
    pub ratio: f64,
    pub rho0: f64,
    /// Smallest `b` allowed by the block-count lower bound for these members.
    pub b_lower_bound: f64,
    pub verdict: Optimality,
    pub reason: String,
    /// For mosaics of transversal designs: `ϱ ≥ log u / (log u + log(u+1))`.
    pub td_color_rate_condition: Option<bool>,
}

/// Rates and block-rate optimality verdict for a mosaic of BIBDs or GDDs.
/// All members must share the certificate type; the verdict uses exact
/// integer conditions.
pub fn check_block_rate_optimal(v: usize, b: usize, a: usize, certs: &[Certificate]) -> Result<RateReport> {
    let first = certs.first().ok_or_else(|| invalid("no member certificates"))?;
    let k = first.tactical().k;
    if a < 2 || v < 2 {
        return Err(invalid("rates need a ≥ 2 and v ≥ 2"));
    }
    let (lv, lb, la) = ((v as f64).ln(), (b as f64).ln(), (a as f64).ln());
    let color_rate = la / lv;
    let r0 = rho0(v, k);
    let mut report = RateReport {
        v,
        b,
        a,
        k,
        color_rate,
        block_rate: lb / lv,
        ratio: lb / la,
        rho0: r0,
        b_lower_bound: 0.0,
        verdict: Optimality::NearOptimal,
        reason: String::new(),
        td_color_rate_condition: None,
    };
    let bibds: Option<Vec<&BibdParams>> = certs
        .iter()
        .map(|c| match c {
            Certificate::Bibd(p) => Some(p),
            Certificate::Gdd(_) => None,
        })
        .collect();
    if let Some(bibds) = bibds {
        let lambda_one = bibds.iter().all(|p| p.lambda == 1);
        // ϱ ≥ ϱ0 ⟺ a² ≥ v²(k−1)/((v−1)k), compared exactly
        let above = (a * a) as u128 * ((v - 1) * k) as u128 >= (v * v) as u128 * (k - 1) as u128;
        let (vf, kf, af) = (v as f64, k as f64, a as f64);
        report.b_lower_bound = ((vf - 1.0) * kf * af * af / (vf * (kf - 1.0))).max(vf);
        let optimal = if above { lambda_one } else { b == v };
        report.verdict = if optimal { Optimality::Optimal } else { Optimality::NearOptimal };
        report.reason = match (above, optimal) {
            (true, true) => "color rate at least ϱ0 and λ = 1".into(),
            (true, false) => "color rate at least ϱ0 but λ > 1".into(),
            (false, true) => "color rate below ϱ0 and b = v".into(),
            (false, false) => format!("color rate below ϱ0 and b = {b} ≠ v = {v}"),
        };
        return Ok(report);
    }
    let gdds = certs
        .iter()
        .map(|c| match c {
            Certificate::Gdd(p) => Ok(p),
            Certificate::Bibd(_) => Err(invalid("mixed BIBD and GDD certificates")),
        })
        .collect::<Result<Vec<_>>>()?;
    report.b_lower_bound = (a * a) as f64;
    let all_td = gdds.iter().all(|p| p.is_transversal() && p.u == a && p.lambda2 == 1);
    if gdds.iter().all(|p| p.is_transversal()) {
        let u = gdds[0].u as f64;
        report.td_color_rate_condition = Some(color_rate >= u.ln() / (u.ln() + (u + 1.0).ln()) - 1e-12);
    }
    report.verdict = if all_td { Optimality::Optimal } else { Optimality::NearOptimal };
    report.reason = if all_td {
        format!("every member is an ({a},{k},1) transversal design")
    } else {
        "some member is not an (a,k,1) transversal design".into()
    };
    Ok(report)
}

/// JSON header written next to member matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MosaicHeader {
    pub family: String,
    pub params: serde_json::Value,
    pub v: usize,
    pub b: usize,
    pub a: usize,
    pub k: usize,
}
