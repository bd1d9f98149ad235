//! The four explicit mosaic families.
//!
//! * `m1`: affine hyperplane designs `AG_{t-1}(t, q)`, colors `GF(q)`.
//! * `m2`: Denniston arcs in `AG(2, 2^t)`, colors `Z_a`.
//! * `m3`: `u`-fold point multiples of `m2` (singular GDDs).
//! * `m4`: transversal designs from `k` slope classes of `AG(2, q)`.

pub mod denniston;
pub mod m1;
pub mod m3;
pub mod m4;

use serde::{Deserialize, Serialize};

use crate::designs::Certificate;
use crate::error::{invalid, Result};
use crate::mosaics::{FunctionalForm, MosaicHeader};

pub use denniston::{DennistonGeometry, Slope, M2};
pub use m1::M1;
pub use m3::M3;
pub use m4::M4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    M1,
    M2,
    M3,
    M4,
}

impl std::str::FromStr for FamilyKind {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m1" => Ok(FamilyKind::M1),
            "m2" => Ok(FamilyKind::M2),
            "m3" => Ok(FamilyKind::M3),
            "m4" => Ok(FamilyKind::M4),
            other => Err(invalid(format!("unknown family {other:?}"))),
        }
    }
}

/// Family parameters. Unused fields for a family are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: FamilyKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<usize>,
}

impl FamilySpec {
    pub fn m1(t: u32, q: usize) -> Self {
        FamilySpec { family: FamilyKind::M1, t: Some(t), l: None, q: Some(q), k: None, u: None }
    }
    pub fn m2(t: u32, l: u32) -> Self {
        FamilySpec { family: FamilyKind::M2, t: Some(t), l: Some(l), q: None, k: None, u: None }
    }
    pub fn m3(t: u32, l: u32, u: usize) -> Self {
        FamilySpec { family: FamilyKind::M3, t: Some(t), l: Some(l), q: None, k: None, u: Some(u) }
    }
    pub fn m4(k: usize, q: usize) -> Self {
        FamilySpec { family: FamilyKind::M4, t: None, l: None, q: Some(q), k: Some(k), u: None }
    }
}

/// A built family member.
pub enum Family {
    M1(M1),
    M2(M2),
    M3(M3),
    M4(M4),
}

fn need<T>(v: Option<T>, name: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| invalid(format!("family {family} needs --{name}")))
}

impl Family {
    pub fn build(spec: &FamilySpec) -> Result<Family> {
        Ok(match spec.family {
            FamilyKind::M1 => Family::M1(M1::new(need(spec.t, "t", "m1")? as usize, need(spec.q, "q", "m1")?)?),
            FamilyKind::M2 => Family::M2(M2::new(need(spec.t, "t", "m2")?, need(spec.l, "l", "m2")?)?),
            FamilyKind::M3 => {
                Family::M3(M3::new(need(spec.t, "t", "m3")?, need(spec.l, "l", "m3")?, need(spec.u, "u", "m3")?)?)
            }
            FamilyKind::M4 => Family::M4(M4::new(need(spec.k, "k", "m4")?, need(spec.q, "q", "m4")?)?),
        })
    }

    pub fn form(&self) -> &dyn FunctionalForm {
        match self {
            Family::M1(m) => m,
            Family::M2(m) => m,
            Family::M3(m) => m,
            Family::M4(m) => m,
        }
    }

    /// Parameters every member must verify with.
    pub fn certificate(&self) -> Certificate {
        match self {
            Family::M1(m) => m.certificate(),
            Family::M2(m) => m.certificate(),
            Family::M3(m) => m.certificate(),
            Family::M4(m) => m.certificate(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::M1(_) => "m1",
            Family::M2(_) => "m2",
            Family::M3(_) => "m3",
            Family::M4(_) => "m4",
        }
    }

    pub fn header(&self, spec: &FamilySpec) -> MosaicHeader {
        let f = self.form();
        MosaicHeader {
            family: self.name().into(),
            params: serde_json::to_value(spec).expect("plain struct"),
            v: f.points(),
            b: f.blocks(),
            a: f.colors(),
            k: f.preimage_size(),
        }
    }
}

impl FunctionalForm for Family {
    fn points(&self) -> usize {
        self.form().points()
    }
    fn blocks(&self) -> usize {
        self.form().blocks()
    }
    fn colors(&self) -> usize {
        self.form().colors()
    }
    fn preimage_size(&self) -> usize {
        self.form().preimage_size()
    }
    fn color(&self, x: usize, s: usize) -> usize {
        self.form().color(x, s)
    }
    fn preimage(&self, s: usize, alpha: usize, kappa: usize) -> usize {
        self.form().preimage(s, alpha, kappa)
    }
}
