//! Denniston maximal arcs in `AG(2, 2^t)` and the mosaic built on them.
//!
//! With `Q(x, y) = η1x² + η2xy + η3y²` irreducible and `H` the span of
//! `1, θ, …, θ^(ℓ-1)`, the arc `X = {(x, y) : Q(x, y) ∈ H}` meets every line
//! in `0` or `2^ℓ` points. The nonempty line intersections form a resolvable
//! `(v, 2^ℓ, 1)` BIBD whose parallel classes are the slopes `GF(q) ∪ {∞}`.
//!
//! Everything here is computed with field arithmetic in the polynomial basis:
//! points, intercepts and blocks are ranked and unranked without tables.

use serde::{Deserialize, Serialize};

use crate::designs::{verify_resolution, BibdParams, Certificate, IncidenceStructure, Resolution};
use crate::error::{invalid, Error, Result};
use crate::field::{make_field, DualBasisData, Field, FieldElement};
use crate::mosaics::FunctionalForm;

/// A slope of `AG(2, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slope {
    Finite(FieldElement),
    Infinite,
}

pub type Point = (FieldElement, FieldElement);

#[derive(Clone, Debug)]
pub struct DennistonGeometry {
    t: u32,
    l: u32,
    field: Field,
    eta: [FieldElement; 3],
    dual: DualBasisData,
}

impl DennistonGeometry {
    /// Builds the geometry with `η1 = η3 = 1` and the least `η2` making `Q`
    /// irreducible.
    pub fn new(t: u32, l: u32) -> Result<Self> {
        if t < 2 || l < 1 || l > t {
            return Err(invalid(format!("Denniston arcs need t ≥ 2 and 1 ≤ ℓ ≤ t, got t={t}, ℓ={l}")));
        }
        let field = make_field(2, t)?;
        let one = FieldElement::ONE;
        let eta2 = field
            .elements()
            .skip(1)
            .find(|&e2| {
                let tr = field.trace(field.inv(field.square(e2)).expect("nonzero")).expect("char 2");
                // Q(x, 1) = x² + η2x + 1 has no root
                let rootless =
                    field.elements().all(|x| !field.add(field.add(field.square(x), field.mul(e2, x)), one).is_zero());
                tr == 1 && rootless
            })
            .ok_or_else(|| invalid("no irreducible quadratic form found"))?;
        let dual = field.dual_basis()?;
        let geom = DennistonGeometry { t, l, field, eta: [one, eta2, one], dual };
        let check = geom.field.div(geom.field.mul(geom.eta[0], geom.eta[2]), geom.field.square(eta2))?;
        assert_eq!(geom.field.trace_bit(check), 1, "Q must be irreducible");
        Ok(geom)
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn eta(&self) -> [FieldElement; 3] {
        self.eta
    }

    pub fn q(&self) -> usize {
        1 << self.t
    }

    /// Block size `2^ℓ`.
    pub fn k(&self) -> usize {
        1 << self.l
    }

    /// Intercepts per slope, `2^t + 1 − 2^(t−ℓ)`.
    pub fn a(&self) -> usize {
        self.q() + 1 - (1 << (self.t - self.l))
    }

    /// `|X| = 1 + (2^t + 1)(2^ℓ − 1)`.
    pub fn v(&self) -> usize {
        1 + (self.q() + 1) * (self.k() - 1)
    }

    pub fn in_h(&self, z: FieldElement) -> bool {
        (z.index() as usize) < self.k()
    }

    pub fn quadratic_form(&self, (x, y): Point) -> FieldElement {
        let f = &self.field;
        let [e1, e2, e3] = self.eta;
        f.add(f.add(f.mul(e1, f.square(x)), f.mul(e2, f.mul(x, y))), f.mul(e3, f.square(y)))
    }

    /// `N(c) = η1 + η2c + η3c²`, with `N(∞) = η3`.
    pub fn norm(&self, c: Slope) -> FieldElement {
        let f = &self.field;
        let [e1, e2, e3] = self.eta;
        match c {
            Slope::Finite(c) => f.add(f.add(e1, f.mul(e2, c)), f.mul(e3, f.square(c))),
            Slope::Infinite => e3,
        }
    }

    pub fn slope(&self, i: usize) -> Slope {
        if i == self.q() {
            Slope::Infinite
        } else {
            Slope::Finite(FieldElement::from_index(i as u32))
        }
    }

    pub fn slope_index(&self, c: Slope) -> usize {
        match c {
            Slope::Finite(c) => c.index() as usize,
            Slope::Infinite => self.q(),
        }
    }

    fn sqrt(&self, x: FieldElement) -> FieldElement {
        self.field.sqrt_char2(x).expect("char 2")
    }

    fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.field.div(a, b).expect("nonzero divisor")
    }

    /// Point number `idx`: 0 is the origin; otherwise `idx − 1 = i(2^ℓ − 1) + (h − 1)`
    /// picks slope `i` and the value `Q = h ∈ H \ {0}` on the line through the origin.
    pub fn point(&self, idx: usize) -> Point {
        assert!(idx < self.v(), "point index {idx} out of range");
        if idx == 0 {
            return (FieldElement::ZERO, FieldElement::ZERO);
        }
        let per = self.k() - 1;
        let (i, h) = ((idx - 1) / per, FieldElement::from_index(((idx - 1) % per + 1) as u32));
        match self.slope(i) {
            Slope::Finite(c) => {
                let x = self.sqrt(self.div(h, self.norm(Slope::Finite(c))));
                (x, self.field.mul(c, x))
            }
            Slope::Infinite => (FieldElement::ZERO, self.sqrt(self.div(h, self.eta[2]))),
        }
    }

    pub fn point_index(&self, (x, y): Point) -> Result<usize> {
        if x.is_zero() && y.is_zero() {
            return Ok(0);
        }
        let (slope, h) = if x.is_zero() {
            (Slope::Infinite, self.field.mul(self.eta[2], self.field.square(y)))
        } else {
            let c = Slope::Finite(self.div(y, x));
            (c, self.field.mul(self.field.square(x), self.norm(c)))
        };
        if !self.in_h(h) {
            return Err(invalid(format!("({}, {}) is not on the arc", x.index(), y.index())));
        }
        Ok(1 + self.slope_index(slope) * (self.k() - 1) + h.index() as usize - 1)
    }

    /// The element `Σ e_i ζ_i` with dual-basis coordinates packed in `e`.
    fn from_dual(&self, e: u32) -> FieldElement {
        self.dual
            .dual
            .iter()
            .enumerate()
            .filter(|(i, _)| (e >> i) & 1 == 1)
            .fold(FieldElement::ZERO, |acc, (_, &z)| self.field.add(acc, z))
    }

    /// `N(c) / (η2² d²)`, whose trace against `H` decides whether `L_{c,d}` meets the arc.
    fn intercept_key(&self, c: Slope, d: FieldElement) -> FieldElement {
        let denom = self.field.mul(self.field.square(self.eta[1]), self.field.square(d));
        self.div(self.norm(c), denom)
    }

    /// Intercept number `idx` for slope `c`. 0 is the intercept 0; otherwise
    /// `idx − 1 = hi(2^ℓ − 1) + (lo − 1)` gives the dual coordinates
    /// `e = hi·2^ℓ + lo` of `β = N(c)/(η2² d²)`, which lies outside `H⊥`.
    pub fn intercept(&self, c: Slope, idx: usize) -> FieldElement {
        assert!(idx < self.a(), "intercept index {idx} out of range");
        if idx == 0 {
            return FieldElement::ZERO;
        }
        let per = self.k() - 1;
        let (hi, lo) = ((idx - 1) / per, (idx - 1) % per + 1);
        let beta = self.from_dual(((hi << self.l) | lo) as u32);
        let denom = self.field.mul(self.field.square(self.eta[1]), beta);
        self.sqrt(self.div(self.norm(c), denom))
    }

    pub fn intercept_index(&self, c: Slope, d: FieldElement) -> Result<usize> {
        if d.is_zero() {
            return Ok(0);
        }
        let e = self.field.dual_coords(self.intercept_key(c, d)) as usize;
        let (hi, lo) = (e >> self.l, e & (self.k() - 1));
        if lo == 0 {
            return Err(Error::InterceptNotInRange);
        }
        Ok(1 + hi * (self.k() - 1) + lo - 1)
    }

    /// Intercept of the line of slope `c` through `p`.
    pub fn intercept_through(&self, c: Slope, (x, y): Point) -> FieldElement {
        match c {
            Slope::Finite(c) => self.field.add(y, self.field.mul(c, x)),
            Slope::Infinite => x,
        }
    }

    /// `U_c` in intercept-index order.
    pub fn enumerate_uc(&self, c: Slope) -> Vec<FieldElement> {
        (0..self.a()).map(|i| self.intercept(c, i)).collect()
    }

    /// `H_{c,d} = {z ∈ H : Tr(N(c) z / (η2² d²)) = 1}`, in enumeration order:
    /// the `j`-th element fills the non-pivot coordinates with the bits of `j`
    /// and fixes the pivot coordinate to make the parity odd.
    pub fn enumerate_hcd(&self, c: Slope, d: FieldElement) -> Result<Vec<FieldElement>> {
        if d.is_zero() {
            return Err(invalid("H_{c,d} needs d ≠ 0"));
        }
        let e = self.field.dual_coords(self.intercept_key(c, d)) & (self.k() as u32 - 1);
        if e == 0 {
            return Err(Error::InterceptNotInRange);
        }
        let pivot = e.trailing_zeros();
        let others: Vec<u32> = (0..self.l).filter(|&i| i != pivot).collect();
        Ok((0..1u32 << (self.l - 1))
            .map(|j| {
                let mut z = others.iter().enumerate().fold(0u32, |z, (bit, &pos)| z | (((j >> bit) & 1) << pos));
                if (z & e).count_ones().is_multiple_of(2) {
                    z |= 1 << pivot;
                }
                FieldElement::from_index(z)
            })
            .collect())
    }

    /// The two slopes contributed by `z ∈ H_{c,d}`, in a fixed order.
    fn slopes_for(&self, c: Slope, d: FieldElement, z: FieldElement) -> [Slope; 2] {
        let f = &self.field;
        let [e1, e2, e3] = self.eta;
        let d2 = f.square(d);
        let roots = match c {
            Slope::Finite(c) => {
                let lead = f.add(z, f.mul(e3, d2));
                if lead.is_zero() {
                    // Q(0, d) = η3d² = z: the quadratic drops to a linear equation
                    let finite = self.div(f.add(e1, f.mul(e3, f.square(c))), e2);
                    return [Slope::Finite(finite), Slope::Infinite];
                }
                let constant = f.add(f.mul(e1, d2), f.mul(f.square(c), z));
                f.quadratic_root_transform(lead, f.mul(e2, d2), constant)
            }
            Slope::Infinite => f.quadratic_root_transform(f.mul(e3, d2), f.mul(e2, d2), f.add(f.mul(e1, d2), z)),
        }
        .expect("nondegenerate quadratic");
        assert_eq!(roots.len(), 2, "z in H_(c,d) yields two slopes");
        [Slope::Finite(roots[0]), Slope::Finite(roots[1])]
    }

    /// `R_{c,d}`: the slopes `c̃` with `L_{c,d} ∩ X_{c̃} ≠ ∅`, for `d ∈ U_c \ {0}`.
    pub fn enumerate_rcd(&self, c: Slope, d: FieldElement) -> Result<Vec<Slope>> {
        Ok(self.enumerate_hcd(c, d)?.into_iter().flat_map(|z| self.slopes_for(c, d, z)).collect())
    }

    /// Intersection of `L_{c,d}` with `X_{c̃}`.
    fn meet(&self, c: Slope, d: FieldElement, other: Slope) -> Point {
        let f = &self.field;
        match (c, other) {
            (Slope::Finite(c), Slope::Finite(ct)) => {
                let x = self.div(d, f.add(c, ct));
                (x, f.mul(ct, x))
            }
            (Slope::Finite(_), Slope::Infinite) => (FieldElement::ZERO, d),
            (Slope::Infinite, Slope::Finite(ct)) => (d, f.mul(ct, d)),
            (Slope::Infinite, Slope::Infinite) => unreachable!("parallel lines"),
        }
    }

    /// The `κ`-th point of the block `L_{c,d} ∩ X`, for `d ∈ U_c`.
    pub fn block_point(&self, c: Slope, d: FieldElement, kappa: usize) -> Point {
        assert!(kappa < self.k());
        if d.is_zero() {
            return self.point(if kappa == 0 { 0 } else { 1 + self.slope_index(c) * (self.k() - 1) + kappa - 1 });
        }
        let hcd = self.enumerate_hcd(c, d).expect("intercept in U_c");
        let slope = self.slopes_for(c, d, hcd[kappa / 2])[kappa % 2];
        self.meet(c, d, slope)
    }

    pub fn block_points(&self, c: Slope, d: FieldElement) -> Vec<Point> {
        (0..self.k()).map(|kappa| self.block_point(c, d, kappa)).collect()
    }

    pub fn certificate(&self) -> Certificate {
        let r = self.q() + 1;
        Certificate::Bibd(BibdParams { v: self.v(), b: r * self.a(), k: self.k(), r, lambda: 1 })
    }

    /// All points of the plane with `Q(p) ∈ H`, found by scanning `GF(q)²`.
    pub fn brute_force_points(&self) -> Vec<Point> {
        let els: Vec<_> = self.field.elements().collect();
        els.iter()
            .flat_map(|&x| els.iter().map(move |&y| (x, y)))
            .filter(|&p| self.in_h(self.quadratic_form(p)))
            .collect()
    }

    /// Points of the line `L_{c,d}`.
    pub fn line(&self, c: Slope, d: FieldElement) -> Vec<Point> {
        self.field
            .elements()
            .map(|x| match c {
                Slope::Finite(c) => (x, self.field.add(self.field.mul(c, x), d)),
                Slope::Infinite => (d, x),
            })
            .collect()
    }

    /// The Denniston design computed by intersecting lines with the arc:
    /// block `(c, γ)` is `L_{c, d_γ} ∩ X`, numbered `c_idx·a + γ`.
    pub fn design(&self) -> (IncidenceStructure, Resolution) {
        let a = self.a();
        let mut blocks = Vec::with_capacity((self.q() + 1) * a);
        for ci in 0..=self.q() {
            let c = self.slope(ci);
            for gamma in 0..a {
                let d = self.intercept(c, gamma);
                let pts = self
                    .line(c, d)
                    .into_iter()
                    .filter(|&p| self.in_h(self.quadratic_form(p)))
                    .map(|p| self.point_index(p).expect("arc point"))
                    .collect();
                blocks.push(pts);
            }
        }
        let d = IncidenceStructure::from_blocks(self.v(), &blocks).expect("indices in range");
        let classes: Vec<Vec<usize>> = (0..=self.q()).map(|i| (i * a..(i + 1) * a).collect()).collect();
        let res = verify_resolution(&d, &classes).expect("slope classes are parallel");
        (d, res)
    }
}

/// The mosaic `M^(2)`: block index `(c, β)` numbered `c_idx·a + β`, colors in
/// `Z_a`, and `f(p; c, β) = β + γ` where `γ` numbers the intercept of the line
/// of slope `c` through `p`.
#[derive(Clone, Debug)]
pub struct M2 {
    geom: DennistonGeometry,
}

impl M2 {
    pub fn new(t: u32, l: u32) -> Result<Self> {
        Ok(M2 { geom: DennistonGeometry::new(t, l)? })
    }

    pub fn geometry(&self) -> &DennistonGeometry {
        &self.geom
    }

    pub fn certificate(&self) -> Certificate {
        self.geom.certificate()
    }
}

impl FunctionalForm for M2 {
    fn points(&self) -> usize {
        self.geom.v()
    }
    fn blocks(&self) -> usize {
        (self.geom.q() + 1) * self.geom.a()
    }
    fn colors(&self) -> usize {
        self.geom.a()
    }
    fn preimage_size(&self) -> usize {
        self.geom.k()
    }
    fn color(&self, x: usize, s: usize) -> usize {
        let a = self.geom.a();
        let c = self.geom.slope(s / a);
        let d = self.geom.intercept_through(c, self.geom.point(x));
        let gamma = self.geom.intercept_index(c, d).expect("lines through arc points meet the arc");
        (s % a + gamma) % a
    }
    fn preimage(&self, s: usize, alpha: usize, kappa: usize) -> usize {
        let a = self.geom.a();
        let c = self.geom.slope(s / a);
        let gamma = (alpha + a - s % a) % a;
        let d = self.geom.intercept(c, gamma);
        self.geom.point_index(self.geom.block_point(c, d, kappa)).expect("block points lie on the arc")
    }
}
