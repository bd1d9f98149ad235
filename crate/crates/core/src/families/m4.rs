//! Mosaics of transversal designs from slope classes of `AG(2, q)`.
//!
//! Points are pairs `(c, d)` with `c` in a slope set `R` of size `k` and
//! `d ∈ GF(q)`, numbered `c_pos·q + d`. Block indices are `(s1, s2) ∈ GF(q)²`,
//! numbered `s1·q + s2`. The color is `s2 − c·s1 + d` for finite `c` and
//! `s1 + d` for `c = ∞`.

use crate::designs::{Certificate, GddParams, Partition};
use crate::error::{invalid, Result};
use crate::families::denniston::Slope;
use crate::field::{field_of_order, Field, FieldElement};
use crate::mosaics::FunctionalForm;

#[derive(Clone, Debug)]
pub struct M4 {
    q: usize,
    field: Field,
    slopes: Vec<Slope>,
}

fn fe(i: usize) -> FieldElement {
    FieldElement::from_index(i as u32)
}

impl M4 {
    /// Default slope set: the first `k` field elements by packed index, or
    /// `∞` followed by all of `GF(q)` when `k = q + 1`.
    pub fn new(k: usize, q: usize) -> Result<Self> {
        if k < 2 || k > q + 1 {
            return Err(invalid(format!("M4 needs 2 ≤ k ≤ q + 1, got k={k}, q={q}")));
        }
        let slopes = if k == q + 1 {
            std::iter::once(Slope::Infinite).chain((0..q).map(|c| Slope::Finite(fe(c)))).collect()
        } else {
            (0..k).map(|c| Slope::Finite(fe(c))).collect()
        };
        Self::with_slopes(q, slopes)
    }

    pub fn with_slopes(q: usize, slopes: Vec<Slope>) -> Result<Self> {
        let field = field_of_order(u32::try_from(q).map_err(|_| invalid("q too large"))?)?;
        if slopes.len() < 2 || slopes.len() > q + 1 {
            return Err(invalid(format!("slope set has {} elements, need 2..={}", slopes.len(), q + 1)));
        }
        for (i, s) in slopes.iter().enumerate() {
            if let Slope::Finite(c) = s {
                if c.index() as usize >= q {
                    return Err(invalid(format!("slope {} is not in GF({q})", c.index())));
                }
            }
            if slopes[..i].contains(s) {
                return Err(invalid(format!("slope {s:?} repeated")));
            }
        }
        Ok(M4 { q, field, slopes })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn k(&self) -> usize {
        self.slopes.len()
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.slopes
    }

    pub fn certificate(&self) -> Certificate {
        let (q, k) = (self.q, self.k());
        Certificate::Gdd(GddParams {
            v: q * k,
            b: q * q,
            k,
            r: q,
            lambda1: 0,
            lambda2: 1,
            u: q,
            m: k,
            partition: Partition::consecutive(k, q),
        })
    }
}

impl FunctionalForm for M4 {
    fn points(&self) -> usize {
        self.q * self.k()
    }
    fn blocks(&self) -> usize {
        self.q * self.q
    }
    fn colors(&self) -> usize {
        self.q
    }
    fn preimage_size(&self) -> usize {
        self.k()
    }
    fn color(&self, x: usize, s: usize) -> usize {
        let f = &self.field;
        let d = fe(x % self.q);
        let (s1, s2) = (fe(s / self.q), fe(s % self.q));
        match self.slopes[x / self.q] {
            Slope::Finite(c) => f.add(f.sub(s2, f.mul(c, s1)), d),
            Slope::Infinite => f.add(s1, d),
        }
        .index() as usize
    }
    /// Point on slope `R[κ]`, with `d = α − s2 + c·s1` (or `α − s1` for `∞`).
    fn preimage(&self, s: usize, alpha: usize, kappa: usize) -> usize {
        let f = &self.field;
        let (s1, s2, alpha) = (fe(s / self.q), fe(s % self.q), fe(alpha));
        let d = match self.slopes[kappa] {
            Slope::Finite(c) => f.add(f.sub(alpha, s2), f.mul(c, s1)),
            Slope::Infinite => f.sub(alpha, s1),
        };
        kappa * self.q + d.index() as usize
    }
}
