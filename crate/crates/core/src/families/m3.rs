//! Point multiples of the Denniston mosaic: mosaics of singular GDDs.

use crate::designs::{Certificate, GddParams, Partition};
use crate::error::Result;
use crate::families::denniston::M2;
use crate::mosaics::{FunctionalForm, PointMultiple};

/// `u`-fold point multiple of `M^(2)_{t,ℓ}`. Point `x*·u + i` is copy `i` of `x*`.
pub struct M3 {
    form: PointMultiple<M2>,
}

impl M3 {
    pub fn new(t: u32, l: u32, u: usize) -> Result<Self> {
        Ok(M3 { form: PointMultiple::new(M2::new(t, l)?, u)? })
    }

    pub fn base(&self) -> &M2 {
        self.form.inner()
    }

    pub fn u(&self) -> usize {
        self.form.multiplicity()
    }

    pub fn certificate(&self) -> Certificate {
        let g = self.base().geometry();
        let u = self.u();
        let r = g.q() + 1;
        Certificate::Gdd(GddParams {
            v: u * g.v(),
            b: r * g.a(),
            k: u * g.k(),
            r,
            lambda1: r,
            lambda2: 1,
            u,
            m: g.v(),
            partition: Partition::consecutive(g.v(), u),
        })
    }
}

impl FunctionalForm for M3 {
    fn points(&self) -> usize {
        self.form.points()
    }
    fn blocks(&self) -> usize {
        self.form.blocks()
    }
    fn colors(&self) -> usize {
        self.form.colors()
    }
    fn preimage_size(&self) -> usize {
        self.form.preimage_size()
    }
    fn color(&self, x: usize, s: usize) -> usize {
        self.form.color(x, s)
    }
    fn preimage(&self, s: usize, alpha: usize, kappa: usize) -> usize {
        self.form.preimage(s, alpha, kappa)
    }
}
