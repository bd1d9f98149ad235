//! Exact arithmetic in GF(p^n) over a polynomial basis `{1, θ, …, θ^(n-1)}`.
//!
//! Elements are packed into a single integer: the coefficient of `θ^i` is the
//! base-`p` digit `i` (for `p = 2` this is simply bit `i`). The modulus is the
//! lexicographically least monic irreducible of degree `n`, so every build of
//! a field with the same `(p, n)` is identical.
//!
//! Besides the field operations, characteristic-2 fields carry the basis
//! machinery used by the Denniston construction: absolute trace, the trace
//! dual basis, square roots and solving `w² + w = a`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Fields up to this order get log/antilog tables.
const TABLE_LIMIT: u32 = 1 << 16;

/// An element of GF(p^n), packed as the integer `Σ c_i p^i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Element with packed index `i`. The caller is responsible for `i < q`.
    pub const fn from_index(i: u32) -> Self {
        FieldElement(i)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Serializable description of a field: characteristic, degree and modulus
/// coefficients (low degree first, including the leading 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Row-reduced form of the GF(2)-linear map `w ↦ w² + w`.
#[derive(Clone, Debug)]
struct ArtinSchreierSolver {
    /// For each pivot column `c`, the combination of right-hand-side bits giving `w_c`.
    pivots: Vec<(u32, u32)>,
    /// Combinations of right-hand-side bits that must vanish for solvability.
    consistency: Vec<u32>,
}

/// A finite field GF(p^n) with its polynomial basis.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    /// For `p = 2`: modulus without the leading term, as a bit mask.
    low_mask: u64,
    tables: Option<LogTables>,
    artin_schreier: Option<ArtinSchreierSolver>,
}

/// Dual basis `ζ_0 … ζ_{n-1}` of the polynomial basis with respect to the
/// absolute trace: `Tr(ζ_i θ^j) = δ_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualBasisData {
    pub dual: Vec<FieldElement>,
    /// Row `i` holds the polynomial-basis coordinates of `ζ_i`.
    pub change_of_basis: Vec<Vec<u8>>,
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, n)` with `q = p^n`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut rest, mut n) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

/// Builds GF(p^n) with the lexicographically least monic irreducible modulus.
pub fn make_field(p: u32, n: u32) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
    }
    let q = order_checked(p, n)?;
    for low in 0..q {
        let mut modulus = digits(low, p, n as usize);
        modulus.push(1);
        if poly_is_irreducible(&modulus, p) {
            return Field::from_spec(FieldSpec { p, n, modulus });
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF({p})")
}

/// Builds GF(q) for a prime power `q`.
pub fn field_of_order(q: u32) -> Result<Field> {
    let (p, n) = prime_power(q).ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
    make_field(p, n)
}

fn order_checked(p: u32, n: u32) -> Result<u32> {
    let q = (p as u64).checked_pow(n).filter(|&q| q <= MAX_FIELD_ORDER);
    q.map(|q| q as u32).ok_or(Error::FieldTooLarge { p, n, bound: MAX_FIELD_ORDER })
}

impl Field {
    /// Validates a spec (prime characteristic, irreducible monic modulus) and
    /// precomputes the arithmetic tables.
    pub fn from_spec(spec: FieldSpec) -> Result<Field> {
        let FieldSpec { p, n, ref modulus } = spec;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = order_checked(p, n)?;
        if modulus.len() != n as usize + 1
            || modulus[n as usize] != 1
            || modulus.iter().any(|&c| c >= p)
            || !poly_is_irreducible(modulus, p)
        {
            return Err(Error::ReducibleModulus { p, degree: n });
        }
        let low_mask = if p == 2 {
            modulus[..n as usize].iter().enumerate().fold(0u64, |m, (i, &c)| m | ((c as u64) << i))
        } else {
            0
        };
        let mut field = Field { spec, q, low_mask, tables: None, artin_schreier: None };
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        if p == 2 {
            field.artin_schreier = Some(field.build_artin_schreier());
        }
        Ok(field)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// All elements in packed-index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    /// `θ^i` for `i < n`.
    pub fn basis(&self, i: u32) -> FieldElement {
        assert!(i < self.spec.n);
        FieldElement(self.spec.p.pow(i))
    }

    /// Element of the prime subfield.
    pub fn from_int(&self, c: u64) -> FieldElement {
        FieldElement((c % self.spec.p as u64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.spec.n as usize || coeffs.iter().any(|&c| c >= self.spec.p) {
            return Err(Error::InvalidParameter(format!(
                "coefficient vector {coeffs:?} does not describe an element of GF({}^{})",
                self.spec.p, self.spec.n
            )));
        }
        Ok(FieldElement(coeffs.iter().rev().fold(0, |acc, &c| acc * self.spec.p + c)))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        digits(x.0, self.spec.p, self.spec.n as usize)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.spec.p;
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.spec.n == 1 {
            return FieldElement((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.spec.p;
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_polynomial(a, b),
        }
    }

    /// Schoolbook multiplication followed by reduction modulo the defining
    /// polynomial. Independent of the log tables used by [`Field::mul`].
    pub fn mul_polynomial(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let n = self.spec.n as usize;
        if self.spec.p == 2 {
            let (x, y) = (a.0 as u64, b.0 as u64);
            let mut prod = 0u64;
            for i in 0..n {
                if (y >> i) & 1 == 1 {
                    prod ^= x << i;
                }
            }
            for i in (n..2 * n).rev() {
                if (prod >> i) & 1 == 1 {
                    prod ^= (1u64 << i) | (self.low_mask << (i - n));
                }
            }
            return FieldElement(prod as u32);
        }
        let p = self.spec.p as u64;
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = prod[i];
            if c != 0 {
                for (j, &m) in self.spec.modulus.iter().enumerate() {
                    let idx = i - n + j;
                    prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
                }
            }
        }
        let low: Vec<u32> = prod[..n].iter().map(|&c| c as u32).collect();
        FieldElement(low.iter().rev().fold(0, |acc, &c| acc * self.spec.p + c))
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero(self.q));
        }
        Ok(match &self.tables {
            Some(t) => FieldElement(t.exp[((self.q - 1 - t.log[a.0 as usize]) % (self.q - 1)) as usize]),
            None => self.pow(a, self.q as u64 - 2),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn build_tables(&self) -> LogTables {
        let order = self.q - 1;
        if order == 1 {
            return LogTables { exp: vec![1, 1], log: vec![0, 0] };
        }
        'candidate: for g in 2..self.q {
            let g = FieldElement(g);
            let mut exp = Vec::with_capacity(2 * order as usize);
            let mut x = FieldElement::ONE;
            for i in 0..order {
                if i > 0 && x == FieldElement::ONE {
                    continue 'candidate;
                }
                exp.push(x.0);
                x = self.mul_polynomial(x, g);
            }
            let mut log = vec![0u32; self.q as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            exp.extend_from_within(..);
            return LogTables { exp, log };
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    fn require_char2(&self) -> Result<()> {
        match self.spec.p {
            2 => Ok(()),
            p => Err(Error::NotCharacteristicTwo(p)),
        }
    }

    /// Absolute trace `Tr(x) = x + x² + … + x^(2^(n-1))` into GF(2).
    pub fn trace(&self, x: FieldElement) -> Result<u8> {
        self.require_char2()?;
        Ok(self.trace_bit(x))
    }

    pub(crate) fn trace_bit(&self, x: FieldElement) -> u8 {
        let mut acc = x;
        let mut power = x;
        for _ in 1..self.spec.n {
            power = self.square(power);
            acc = self.add(acc, power);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 as u8
    }

    /// The unique square root in characteristic 2, computed as `x^(2^(n-1))`.
    pub fn sqrt_char2(&self, x: FieldElement) -> Result<FieldElement> {
        self.require_char2()?;
        let mut y = x;
        for _ in 1..self.spec.n {
            y = self.square(y);
        }
        Ok(y)
    }

    /// Dual basis of the polynomial basis under the trace form.
    pub fn dual_basis(&self) -> Result<DualBasisData> {
        self.require_char2()?;
        let n = self.spec.n as usize;
        // Gram matrix of the trace form, rows as bit masks.
        let gram: Vec<u32> = (0..n)
            .map(|j| {
                (0..n).fold(0u32, |row, k| {
                    let t = self.trace_bit(self.mul(self.basis(j as u32), self.basis(k as u32)));
                    row | ((t as u32) << k)
                })
            })
            .collect();
        let inverse = gf2_invert(&gram).expect("trace form is nondegenerate");
        let dual: Vec<FieldElement> = inverse.iter().map(|&row| FieldElement(row)).collect();
        let change_of_basis = dual.iter().map(|z| (0..n).map(|i| ((z.0 >> i) & 1) as u8).collect()).collect();
        Ok(DualBasisData { dual, change_of_basis })
    }

    /// Coordinates of `x` in the dual basis, packed as bits: bit `i` is `Tr(x θ^i)`.
    pub(crate) fn dual_coords(&self, x: FieldElement) -> u32 {
        (0..self.spec.n).fold(0u32, |acc, i| acc | ((self.trace_bit(self.mul(x, self.basis(i))) as u32) << i))
    }

    fn build_artin_schreier(&self) -> ArtinSchreierSolver {
        let n = self.spec.n as usize;
        // rows[i] has bit j set when coordinate i of (θ^j)² + θ^j is 1.
        let mut rows = vec![0u32; n];
        for j in 0..n {
            let e = self.basis(j as u32);
            let image = self.add(self.square(e), e);
            for (i, row) in rows.iter_mut().enumerate() {
                if (image.0 >> i) & 1 == 1 {
                    *row |= 1 << j;
                }
            }
        }
        let mut combos: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for col in 0..n {
            let Some(found) = (next..n).find(|&r| (rows[r] >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(next, found);
            combos.swap(next, found);
            for r in 0..n {
                if r != next && (rows[r] >> col) & 1 == 1 {
                    rows[r] ^= rows[next];
                    combos[r] ^= combos[next];
                }
            }
            pivots.push(col as u32);
            next += 1;
        }
        let pivots = pivots.into_iter().zip(combos.iter().copied()).collect();
        let consistency = combos[next..].to_vec();
        ArtinSchreierSolver { pivots, consistency }
    }

    /// All `w` with `w² + w = a`: either none (when `Tr(a) = 1`) or a pair
    /// `{w, w + 1}`, returned in ascending packed order.
    pub fn solve_artin_schreier(&self, a: FieldElement) -> Result<Vec<FieldElement>> {
        self.require_char2()?;
        let solver = self.artin_schreier.as_ref().expect("built for characteristic 2");
        let parity = |mask: u32| (mask & a.0).count_ones() & 1;
        if solver.consistency.iter().any(|&c| parity(c) == 1) {
            return Ok(Vec::new());
        }
        let w = solver.pivots.iter().fold(0u32, |w, &(col, combo)| w | (parity(combo) << col));
        let (w0, w1) = (FieldElement(w), FieldElement(w ^ 1));
        Ok(if w0 < w1 { vec![w0, w1] } else { vec![w1, w0] })
    }

    /// All roots `c` of `αc² + βc + γ` in characteristic 2.
    ///
    /// For `β ≠ 0` this substitutes `c = βw/α` and solves `w² + w = αγ/β²`.
    /// For `β = 0` the single root is `sqrt(γ/α)`. `α = 0` is rejected.
    pub fn quadratic_root_transform(
        &self,
        alpha: FieldElement,
        beta: FieldElement,
        gamma: FieldElement,
    ) -> Result<Vec<FieldElement>> {
        self.require_char2()?;
        if alpha.is_zero() {
            return Err(Error::DegenerateQuadratic);
        }
        if beta.is_zero() {
            return Ok(vec![self.sqrt_char2(self.div(gamma, alpha)?)?]);
        }
        let constant = self.div(self.mul(alpha, gamma), self.square(beta))?;
        let scale = self.div(beta, alpha)?;
        let mut roots: Vec<FieldElement> =
            self.solve_artin_schreier(constant)?.into_iter().map(|w| self.mul(scale, w)).collect();
        roots.sort();
        Ok(roots)
    }
}

/// Inverse of a square GF(2) matrix given as row bit masks.
fn gf2_invert(rows: &[u32]) -> Option<Vec<u32>> {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut inv: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| (a[r] >> col) & 1 == 1)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..n {
            if r != col && (a[r] >> col) & 1 == 1 {
                a[r] ^= a[col];
                inv[r] ^= inv[col];
            }
        }
    }
    Some(inv)
}

fn digits(mut x: u32, p: u32, n: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(x % p);
        x /= p;
    }
    out
}

fn poly_degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = poly_degree(m).expect("nonzero divisor");
    let lead_inv = mod_inv(m[dm], p);
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p64 = p as u64;
    while let Some(dr) = r.iter().rposition(|&c| c != 0) {
        if dr < dm {
            break;
        }
        let factor = r[dr] * lead_inv as u64 % p64;
        for (j, &mj) in m[..=dm].iter().enumerate() {
            let idx = dr - dm + j;
            r[idx] = (r[idx] + (p64 - factor) * mj as u64) % p64;
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Brute-force factor search: no monic divisor of degree `1..=deg/2`.
fn poly_is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(deg) = poly_degree(f) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low as u32, p, d);
            g.push(1);
            if poly_degree(&poly_rem(f, &g, p)).is_none() {
                return false;
            }
        }
    }
    true
}
