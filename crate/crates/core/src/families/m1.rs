//! Mosaics from the affine hyperplane design `AG_{t-1}(t, q)`.
//!
//! Points are vectors `x ∈ GF(q)^t`, numbered `Σ x_i q^i` with `x_i` the packed
//! field index. Block indices are pairs `(h, β)` numbered `h_idx·q + β`, where
//! `h` runs over nonzero vectors whose first nonzero entry is 1.

use crate::designs::{verify_resolution, BibdParams, Certificate, IncidenceStructure, Resolution};
use crate::error::{invalid, Result};
use crate::field::{field_of_order, Field, FieldElement};
use crate::mosaics::FunctionalForm;

#[derive(Clone, Debug)]
pub struct M1 {
    t: usize,
    q: usize,
    field: Field,
    /// Normalized hyperplane normals, coordinates as field elements.
    normals: Vec<Vec<FieldElement>>,
    /// Index of the first nonzero coordinate of each normal.
    pivots: Vec<usize>,
}

impl M1 {
    pub fn new(t: usize, q: usize) -> Result<Self> {
        if t < 2 {
            return Err(invalid("M1 needs t ≥ 2"));
        }
        let field = field_of_order(u32::try_from(q).map_err(|_| invalid("q too large"))?)?;
        let v = q.checked_pow(t as u32).filter(|&v| v <= 1 << 24).ok_or_else(|| invalid("q^t too large"))?;
        let mut normals = Vec::new();
        let mut pivots = Vec::new();
        for idx in 1..v {
            let h = Self::digits(idx, q, t);
            let pivot = h.iter().position(|&c| c != 0).expect("nonzero vector");
            if h[pivot] == 1 {
                normals.push(h.into_iter().map(|c| FieldElement::from_index(c as u32)).collect());
                pivots.push(pivot);
            }
        }
        Ok(M1 { t, q, field, normals, pivots })
    }

    fn digits(mut x: usize, q: usize, t: usize) -> Vec<usize> {
        (0..t)
            .map(|_| {
                let d = x % q;
                x /= q;
                d
            })
            .collect()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn normals(&self) -> &[Vec<FieldElement>] {
        &self.normals
    }

    pub fn point(&self, x: usize) -> Vec<FieldElement> {
        Self::digits(x, self.q, self.t).into_iter().map(|c| FieldElement::from_index(c as u32)).collect()
    }

    pub fn point_index(&self, coords: &[FieldElement]) -> usize {
        coords.iter().rev().fold(0, |acc, c| acc * self.q + c.index() as usize)
    }

    fn dot(&self, h: &[FieldElement], x: usize) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut rest = x;
        for &hi in h {
            let xi = FieldElement::from_index((rest % self.q) as u32);
            rest /= self.q;
            acc = self.field.add(acc, self.field.mul(hi, xi));
        }
        acc
    }

    pub fn r(&self) -> usize {
        self.normals.len()
    }

    pub fn v(&self) -> usize {
        self.q.pow(self.t as u32)
    }

    /// Two points lie on `(q^(t-1) − 1)/(q − 1)` common hyperplanes, which is
    /// `q^(t-2)` only for `t = 2`.
    pub fn certificate(&self) -> Certificate {
        let (q, t) = (self.q, self.t as u32);
        Certificate::Bibd(BibdParams {
            v: q.pow(t),
            b: q * (q.pow(t) - 1) / (q - 1),
            k: q.pow(t - 1),
            r: (q.pow(t) - 1) / (q - 1),
            lambda: (q.pow(t - 1) - 1) / (q - 1),
        })
    }

    /// `AG_{t-1}(t, q)` with block `(h, γ) = {x : h·x = γ}` numbered
    /// `h_idx·q + γ`, and its resolution into classes of parallel hyperplanes.
    pub fn design(&self) -> (IncidenceStructure, Resolution) {
        let (v, q) = (self.v(), self.q);
        let d = IncidenceStructure::from_fn(v, self.r() * q, |x, s| {
            self.dot(&self.normals[s / q], x).index() as usize == s % q
        });
        let classes: Vec<Vec<usize>> = (0..self.r()).map(|i| (i * q..(i + 1) * q).collect()).collect();
        let res = verify_resolution(&d, &classes).expect("parallel hyperplanes form a resolution");
        (d, res)
    }
}

impl FunctionalForm for M1 {
    fn points(&self) -> usize {
        self.v()
    }
    fn blocks(&self) -> usize {
        self.r() * self.q
    }
    fn colors(&self) -> usize {
        self.q
    }
    fn preimage_size(&self) -> usize {
        self.q.pow(self.t as u32 - 1)
    }
    fn color(&self, x: usize, s: usize) -> usize {
        let beta = FieldElement::from_index((s % self.q) as u32);
        self.field.add(self.dot(&self.normals[s / self.q], x), beta).index() as usize
    }
    /// Free coordinates (all but the pivot) are the base-`q` digits of `κ`;
    /// the pivot coordinate is solved from `h·x = α − β`.
    fn preimage(&self, s: usize, alpha: usize, kappa: usize) -> usize {
        let (h, pivot) = (&self.normals[s / self.q], self.pivots[s / self.q]);
        let f = &self.field;
        let target = f.sub(FieldElement::from_index(alpha as u32), FieldElement::from_index((s % self.q) as u32));
        let mut coords = vec![FieldElement::ZERO; self.t];
        let mut rest = kappa;
        let mut partial = FieldElement::ZERO;
        for i in (0..self.t).filter(|&i| i != pivot) {
            coords[i] = FieldElement::from_index((rest % self.q) as u32);
            rest /= self.q;
            partial = f.add(partial, f.mul(h[i], coords[i]));
        }
        coords[pivot] = f.sub(target, partial);
        self.point_index(&coords)
    }
}
