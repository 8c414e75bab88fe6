//! Graded free resolutions, Betti tables and deficiency modules.

mod deficiency;
mod minimize;
mod schreyer;

pub use deficiency::{deficiency_profile, DeficiencyProfile};
pub use minimize::minimize;
pub use schreyer::free_resolution;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::{self, ModuleOrder, Term, Vector};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::RingContext;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// `⊕ R(-a)` over the listed twists `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedFreeModule {
    pub twists: Vec<i32>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i32>) -> Self {
        Self { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// A degree-preserving map of graded free modules, stored as a
/// `target.rank() x source.rank()` matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    pub entries: Vec<Vec<Polynomial>>,
}

impl GradedMap {
    /// Checks shape and that entry `(i, j)` is zero or homogeneous of degree
    /// `source_j - target_i`.
    pub fn new(
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::InvalidMatrix("matrix shape does not match the modules".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let want = source.twists[j] - target.twists[i];
                if e.degree().map(|d| d as i32) != Some(want) {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i},{j}) = {e} should be homogeneous of degree {want}"
                    )));
                }
            }
        }
        Ok(Self { source, target, entries })
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap, f: PrimeField) -> Vec<Vec<Polynomial>> {
        let mut out = vec![vec![Polynomial::zero(); other.source.rank()]; self.target.rank()];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = Polynomial::zero();
                for k in 0..self.source.rank() {
                    let a = &self.entries[i][k];
                    let b = &other.entries[k][j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b, f), f);
                    }
                }
                *cell = acc;
            }
        }
        out
    }

    pub fn has_unit_entry(&self) -> bool {
        self.entries.iter().flatten().any(|e| e.is_unit())
    }
}

/// `0 <- F_0 <- F_1 <- ... <- F_len` with `F_0 = R`; `maps[k]` is
/// `F_{k+1} -> F_k`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub ring: RingContext,
    pub modules: Vec<GradedFreeModule>,
    pub maps: Vec<GradedMap>,
    pub minimal: bool,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Consecutive maps compose to the zero matrix.
    pub fn is_complex(&self) -> bool {
        let f = self.ring.field();
        self.maps.windows(2).all(|w| {
            w[0].compose(&w[1], f)
                .iter()
                .flatten()
                .all(|e| e.is_zero())
        })
    }

    /// Betti numbers of the resolved ideal: `β_{i,j}` counts `R(-j)` in
    /// `F_{i+1}`.
    pub fn betti_table(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for (k, m) in self.modules.iter().enumerate().skip(1) {
            for &a in &m.twists {
                *t.entries.entry((k - 1, a)).or_insert(0) += 1;
            }
        }
        t
    }
}

/// Graded Betti numbers `β_{i,j}` of the minimal resolution of an ideal
/// (homological index `i = 0` for the generators).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), usize>,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    betti: Vec<[i64; 3]>,
}

impl BettiTable {
    /// Builds a table from `(i, j, rank)` triples; zero ranks are ignored.
    pub fn from_triples(triples: &[(usize, i32, usize)]) -> Self {
        let mut t = Self::default();
        for &(i, j, r) in triples {
            if r > 0 {
                *t.entries.entry((i, j)).or_insert(0) += r;
            }
        }
        t
    }

    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total rank of the `i`-th module.
    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, r)| r)
            .sum()
    }

    /// Number of minimal generators.
    pub fn mu(&self) -> usize {
        self.total(0)
    }

    pub fn length(&self) -> usize {
        self.entries.keys().map(|(i, _)| i + 1).max().unwrap_or(0)
    }

    /// Degrees of the minimal generators with multiplicity.
    pub fn generator_degrees(&self) -> Vec<i32> {
        self.entries
            .iter()
            .filter(|((i, _), _)| *i == 0)
            .flat_map(|((_, j), r)| std::iter::repeat(*j).take(*r))
            .collect()
    }

    /// `1 - Σ_i (-1)^i Σ_j β_{i,j} t^j`: the Hilbert series numerator of
    /// `R/I` over `(1 - t)^n`.
    pub fn k_polynomial(&self) -> Vec<i64> {
        let top = self.entries.keys().map(|(_, j)| *j).max().unwrap_or(0).max(0) as usize;
        let mut k = vec![0i64; top + 1];
        k[0] = 1;
        for (&(i, j), &r) in &self.entries {
            let sign = if i % 2 == 0 { -1 } else { 1 };
            k[j as usize] += sign * r as i64;
        }
        while k.last() == Some(&0) {
            k.pop();
        }
        k
    }

    /// The table of the ideal's resolution is symmetric about its middle,
    /// as for Gorenstein ideals: `β_{i,j} = β_{c-2-i, s-j}` for `i < c - 1`
    /// and a single last module `R(-s)`.
    pub fn is_self_dual(&self) -> bool {
        let c = self.length();
        if c == 0 || self.total(c - 1) != 1 {
            return false;
        }
        let s = self.entries.keys().find(|(i, _)| *i == c - 1).unwrap().1;
        self.entries.iter().all(|(&(i, j), &r)| {
            i == c - 1 || self.get(c - 2 - i, s - j) == r
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let betti: Vec<[i64; 3]> = self
            .entries
            .iter()
            .map(|(&(i, j), &r)| [i as i64, j as i64, r as i64])
            .collect();
        serde_json::to_value(BettiJson { betti }).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let b: BettiJson = serde_json::from_value(v.clone())?;
        let mut t = Self::default();
        for [i, j, r] in b.betti {
            if i < 0 || r < 0 {
                return Err(Error::InvalidMatrix(format!("bad Betti entry [{i},{j},{r}]")));
            }
            if r > 0 {
                t.entries.insert((i as usize, j as i32), r as usize);
            }
        }
        Ok(t)
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Self::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Rows are `j - i`, columns are homological degrees `i`, in the usual
/// layout with a leading `total` row.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "(zero ideal)");
        }
        let len = self.length();
        let rows: Vec<i32> = {
            let mut r: Vec<i32> = self.entries.keys().map(|&(i, j)| j - i as i32).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        write!(f, "{:>7}", "total:")?;
        for i in 0..len {
            write!(f, " {:>4}", self.total(i))?;
        }
        writeln!(f)?;
        for r in (rows[0]..=*rows.last().unwrap()).collect::<Vec<_>>() {
            write!(f, "{:>6}:", r)?;
            for i in 0..len {
                match self.get(i, r + i as i32) {
                    0 => write!(f, " {:>4}", "-")?,
                    v => write!(f, " {:>4}", v)?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Generators of the kernel of `phi`, minimal and sorted by degree.
pub fn syzygies(phi: &GradedMap, ring: RingContext) -> GradedMap {
    let f = ring.field();
    let r = phi.target.rank();
    let s = phi.source.rank();
    let mut twists = phi.target.twists.clone();
    twists.extend(phi.source.twists.iter().copied());
    let order = ModuleOrder::pot(twists);
    let inputs: Vec<Vector> = (0..s)
        .map(|j| {
            let mut v: Vector = Vec::new();
            for i in 0..r {
                for &(m, c) in phi.entries[i][j].terms() {
                    v.push((Term::new(i as u32, m), c));
                }
            }
            v.push((Term::new((r + j) as u32, crate::monomial::Monomial::one()), 1));
            v
        })
        .collect();
    let out = groebner::module_groebner(&inputs, &order, f);
    let kernel: Vec<Vector> = out
        .basis
        .into_iter()
        .filter(|v| v[0].0.comp as usize >= r)
        .map(|v| {
            v.into_iter()
                .map(|(t, c)| (Term::new(t.comp - r as u32, t.mon), c))
                .collect()
        })
        .collect();
    let src_order = ModuleOrder::top(phi.source.twists.clone());
    let kernel: Vec<Vector> = kernel
        .into_iter()
        .map(|v| src_order.normalize(v, f))
        .collect();
    let min = groebner::module_groebner(&kernel, &src_order, f).minimal_inputs;
    let mut gens: Vec<(i32, Vector)> = min
        .into_iter()
        .map(|k| (src_order.vector_grading(&kernel[k]).unwrap(), kernel[k].clone()))
        .collect();
    gens.sort_by_key(|g| g.0);
    let mut entries = vec![vec![Polynomial::zero(); gens.len()]; s];
    for (col, (_, v)) in gens.iter().enumerate() {
        for row in 0..s {
            entries[row][col] = groebner::extract(v, row as u32, f);
        }
    }
    GradedMap {
        source: GradedFreeModule::new(gens.iter().map(|g| g.0).collect()),
        target: phi.source.clone(),
        entries,
    }
}

/// Minimal resolution of `R/I` and its Betti table.
pub fn minimal_resolution(i: &Ideal) -> Result<(FreeResolution, BettiTable)> {
    Ok(minimize(&free_resolution(i)?))
}

/// Betti table of the minimal resolution of `I`.
pub fn betti_table(i: &Ideal) -> Result<BettiTable> {
    Ok(minimal_resolution(i)?.1)
}

/// Degrees of a minimal generating set of `I`, with `μ(I)`.
pub fn minimal_generator_degrees(i: &Ideal) -> (Vec<u32>, usize) {
    let d = i.minimal_generator_degrees();
    let n = d.len();
    (d, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> RingContext {
        RingContext::new(32003, 4).unwrap()
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = ring();
        let phi = GradedMap::new(
            GradedFreeModule::new(vec![1, 1]),
            GradedFreeModule::new(vec![0]),
            vec![vec![r.var(0), r.var(1)]],
        )
        .unwrap();
        let syz = syzygies(&phi, r);
        assert_eq!(syz.source.twists, vec![2]);
        let f = r.field();
        let col = syz.column(0);
        assert!(col[0] == r.var(1).neg(f) && col[1] == r.var(0) || col[0] == r.var(1) && col[1] == r.var(0).neg(f));
        assert!(phi.compose(&syz, f).iter().flatten().all(|e| e.is_zero()));
    }

    #[test]
    fn identity_has_no_syzygies() {
        let r = ring();
        let one = Polynomial::constant(1);
        let z = Polynomial::zero();
        let phi = GradedMap::new(
            GradedFreeModule::new(vec![0, 1]),
            GradedFreeModule::new(vec![0, 1]),
            vec![vec![one.clone(), z.clone()], vec![z, one]],
        )
        .unwrap();
        assert_eq!(syzygies(&phi, r).source.rank(), 0);
    }

    #[test]
    fn skew_line_generators_have_four_linear_syzygies() {
        let r = ring();
        let f = r.field();
        let g = |a: usize, b: usize| r.var(a).mul(&r.var(b), f);
        let phi = GradedMap::new(
            GradedFreeModule::new(vec![2; 4]),
            GradedFreeModule::new(vec![0]),
            vec![vec![g(0, 2), g(0, 3), g(1, 2), g(1, 3)]],
        )
        .unwrap();
        let syz = syzygies(&phi, r);
        assert_eq!(syz.source.twists, vec![3; 4]);
    }

    #[test]
    fn rejects_incompatible_degrees() {
        let r = ring();
        let bad = GradedMap::new(
            GradedFreeModule::new(vec![2]),
            GradedFreeModule::new(vec![0]),
            vec![vec![r.var(0)]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn betti_json_and_k_polynomial() {
        let t = BettiTable::from_triples(&[(0, 2, 4), (1, 3, 4), (2, 4, 1)]);
        assert_eq!(
            t.to_json().to_string(),
            r#"{"betti":[[0,2,4],[1,3,4],[2,4,1]]}"#
        );
        assert_eq!(BettiTable::from_json(&t.to_json()).unwrap(), t);
        assert_eq!(t.k_polynomial(), vec![1, 0, -4, 4, -1]);
        assert!(!t.is_self_dual());
        let g = BettiTable::from_triples(&[(0, 2, 5), (1, 3, 5), (2, 5, 1)]);
        assert!(g.is_self_dual());
        assert_eq!(g.mu(), 5);
    }
}
