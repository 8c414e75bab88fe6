//! Graded dimensions of the deficiency module `H^1_*(I_C)` of a curve.

use super::minimal_resolution;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::Echelon;
use crate::monomial::{count_monomials, monomials_of_degree, Monomial};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::ops::RangeInclusive;

/// `t -> dim_k H^1(I_C(t))` over a finite window of twists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeficiencyProfile {
    pub dims: BTreeMap<i32, usize>,
}

#[derive(Serialize, Deserialize)]
struct ProfileJson {
    h1: Vec<[i64; 2]>,
}

impl DeficiencyProfile {
    pub fn get(&self, t: i32) -> usize {
        self.dims.get(&t).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// Twists with a nonzero dimension.
    pub fn support(&self) -> Vec<i32> {
        self.dims
            .iter()
            .filter(|(_, &d)| d > 0)
            .map(|(&t, _)| t)
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let h1 = self
            .dims
            .iter()
            .map(|(&t, &d)| [t as i64, d as i64])
            .collect();
        serde_json::to_value(ProfileJson { h1 }).expect("plain data")
    }
}

impl Serialize for DeficiencyProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// `dim M(C)_t` for `t` in `window`, where `M(C) = H^1_m(R/I)`.
///
/// By graded local duality `M(C)_t` is dual to `Ext^{n-1}(R/I, R)_{-t-n}`,
/// the cokernel of the transposed last map of the minimal resolution.
pub fn deficiency_profile(i: &Ideal, window: RangeInclusive<i32>) -> Result<DeficiencyProfile> {
    let ring = i.ring();
    let n = ring.num_vars();
    if i.dimension() != 2 {
        return Err(Error::NotACurve(i.dimension()));
    }
    let (res, _) = minimal_resolution(i)?;
    let len = res.length();
    let mut out = DeficiencyProfile::default();
    if len > n - 1 {
        return Err(Error::UnexpectedResolutionLength(len));
    }
    if len < n - 1 {
        for t in window {
            out.dims.insert(t, 0);
        }
        return Ok(out);
    }
    let d = &res.maps[n - 2];
    let a = &d.source.twists;
    let b = &d.target.twists;
    let f = ring.field();
    for t in window {
        let s = -t - n as i32;
        let total: usize = a.iter().map(|&aj| count_monomials(n, (s + aj) as i64)).sum();
        let mut ech: Echelon<(u32, Monomial)> = Echelon::new(f);
        for (row, &bi) in d.entries.iter().zip(b) {
            let deg = s + bi;
            if deg < 0 {
                continue;
            }
            for m in monomials_of_degree(n, deg as u32) {
                let mut v = Vec::new();
                for (j, e) in row.iter().enumerate() {
                    for &(mm, c) in e.terms() {
                        v.push(((j as u32, mm.mul(&m)), c));
                    }
                }
                if !v.is_empty() {
                    ech.insert(v);
                }
            }
        }
        out.dims.insert(t, total - ech.rank());
    }
    Ok(out)
}
