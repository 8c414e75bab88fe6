//! Homogeneous ideals with a lazily computed, shared Groebner basis.

use crate::error::{Error, Result};
use crate::groebner::{self, embed, extract, ModuleOrder, Term, Vector};
use crate::hilbert::{self, HVector};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::ring::RingContext;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Iteration cap for [`Ideal::saturate`].
pub const SATURATION_LIMIT: usize = 50;

/// A homogeneous ideal given by generators.
///
/// The reduced Groebner basis, a minimal generating set and the Hilbert
/// series are computed on first use and then shared between clones.
#[derive(Clone)]
pub struct Ideal {
    ring: RingContext,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<Vec<Polynomial>>>,
    mingens: OnceLock<Arc<Vec<Polynomial>>>,
    hilbert: OnceLock<Arc<(Vec<i64>, HVector)>>,
}

impl Ideal {
    /// Zero generators are dropped; the rest must be homogeneous.
    pub fn new(ring: RingContext, gens: Vec<Polynomial>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.is_zero() {
                continue;
            }
            if !ring.owns(&g) {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
            kept.push(g);
        }
        Ok(Self::raw(ring, kept))
    }

    fn raw(ring: RingContext, gens: Vec<Polynomial>) -> Self {
        Self {
            ring,
            gens,
            gb: OnceLock::new(),
            mingens: OnceLock::new(),
            hilbert: OnceLock::new(),
        }
    }

    /// Wraps a reduced Groebner basis without recomputing it.
    pub(crate) fn from_reduced_gb(ring: RingContext, gb: Vec<Polynomial>) -> Self {
        let me = Self::raw(ring, gb.clone());
        let _ = me.gb.set(Arc::new(gb));
        me
    }

    pub fn zero(ring: RingContext) -> Self {
        Self::raw(ring, Vec::new())
    }

    pub fn unit(ring: RingContext) -> Self {
        Self::from_reduced_gb(ring, vec![Polynomial::constant(1)])
    }

    /// The irrelevant ideal `(x0, ..., x{n-1})`.
    pub fn maximal(ring: RingContext) -> Self {
        Self::from_reduced_gb(ring, ring.vars().into_iter().rev().collect())
    }

    pub fn ring(&self) -> RingContext {
        self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    fn compute_gb(&self) -> (Vec<Polynomial>, Vec<Polynomial>) {
        let (gb, idx) = groebner::ideal_groebner(&self.gens, self.ring.field());
        let min = idx.iter().map(|&i| self.gens[i].clone()).collect();
        (gb, min)
    }

    /// Reduced Groebner basis (grevlex), sorted by increasing leading term.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| {
            let (gb, min) = self.compute_gb();
            let _ = self.mingens.set(Arc::new(min));
            Arc::new(gb)
        })
    }

    /// A minimal homogeneous generating set drawn from the generators.
    pub fn minimal_generators(&self) -> &[Polynomial] {
        self.mingens.get_or_init(|| {
            let (gb, min) = self.compute_gb();
            let _ = self.gb.set(Arc::new(gb));
            Arc::new(min)
        })
    }

    /// A minimal generating set that starts with as many of `preferred` as
    /// possible. Every element of `preferred` must lie in the ideal.
    pub fn minimal_generators_with_priority(&self, preferred: &[Polynomial]) -> Vec<Polynomial> {
        let mut all: Vec<Polynomial> = preferred.to_vec();
        all.extend(self.minimal_generators().iter().cloned());
        let (_, idx) = groebner::ideal_groebner(&all, self.ring.field());
        idx.into_iter().map(|i| all[i].clone()).collect()
    }

    /// Degrees of a minimal generating set, non-decreasing.
    pub fn minimal_generator_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self
            .minimal_generators()
            .iter()
            .map(|g| g.degree().unwrap_or(0))
            .collect();
        d.sort_unstable();
        d
    }

    /// Number of minimal generators.
    pub fn mu(&self) -> usize {
        self.minimal_generators().len()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis()
            .iter()
            .filter_map(|g| g.leading_monomial())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().iter().any(|g| g.is_unit())
    }

    fn order() -> ModuleOrder {
        ModuleOrder::top(vec![0])
    }

    fn gb_vectors(&self) -> Vec<Vector> {
        self.groebner_basis().iter().map(|g| embed(g, 0)).collect()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.normal_forms(std::slice::from_ref(p)).pop().unwrap()
    }

    pub fn normal_forms(&self, ps: &[Polynomial]) -> Vec<Polynomial> {
        let f = self.ring.field();
        groebner::normal_forms(
            &Self::order(),
            f,
            &self.gb_vectors(),
            ps.iter().map(|p| embed(p, 0)).collect(),
        )
        .iter()
        .map(|v| extract(v, 0, f))
        .collect()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.is_empty() || self.normal_forms(&other.gens).iter().all(|r| r.is_zero())
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Self::raw(self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let f = self.ring.field();
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b, f));
            }
        }
        Self::raw(self.ring, g)
    }

    /// `h * I` for a nonzero homogeneous `h`.
    pub fn scale(&self, h: &Polynomial) -> Ideal {
        let f = self.ring.field();
        Self::raw(self.ring, self.gens.iter().map(|g| g.mul(h, f)).collect())
    }

    /// Adds one generator.
    pub fn with_generator(&self, h: &Polynomial) -> Result<Ideal> {
        let mut g = self.gens.clone();
        g.push(h.clone());
        Self::new(self.ring, g)
    }

    /// `I : (h)`.
    pub fn quotient_by(&self, h: &Polynomial) -> Ideal {
        if h.is_zero() || self.contains(h) {
            return Self::unit(self.ring);
        }
        if self.is_zero() {
            return Self::zero(self.ring);
        }
        let f = self.ring.field();
        let dh = h.degree().expect("homogeneous") as i32;
        let order = ModuleOrder::pot(vec![0, dh]);
        let mut inputs = self.gb_vectors();
        let mut v = embed(h, 0);
        v.push((Term::new(1, Monomial::one()), 1));
        inputs.push(v);
        let out = groebner::module_groebner(&inputs, &order, f);
        let gb = out
            .basis
            .iter()
            .filter(|v| v[0].0.comp == 1)
            .map(|v| extract(v, 1, f))
            .collect();
        Self::from_reduced_gb(self.ring, gb)
    }

    /// `I : J`.
    pub fn quotient(&self, other: &Ideal) -> Ideal {
        let mut acc: Option<Ideal> = None;
        for h in other.minimal_generators() {
            if self.contains(h) {
                continue;
            }
            let q = self.quotient_by(h);
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        acc.unwrap_or_else(|| Self::unit(self.ring))
    }

    /// `I : J^infinity`, iterating quotients until they stabilize.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = self.clone();
        for _ in 0..SATURATION_LIMIT {
            let next = cur.quotient(other);
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::SaturationLimit(SATURATION_LIMIT))
    }

    /// `I : m^infinity` for the irrelevant ideal `m`.
    pub fn saturation(&self) -> Result<Ideal> {
        self.saturate(&Self::maximal(self.ring))
    }

    pub fn is_saturated(&self) -> bool {
        self.quotient(&Self::maximal(self.ring)) == *self
    }

    /// `I ∩ J`, eliminating through a second module component.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring);
        }
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let f = self.ring.field();
        let order = ModuleOrder::pot(vec![0, 0]);
        let mut inputs = self.gb_vectors();
        for h in other.groebner_basis() {
            let mut v = embed(h, 0);
            v.extend(embed(h, 1));
            inputs.push(v);
        }
        let out = groebner::module_groebner(&inputs, &order, f);
        let gb = out
            .basis
            .iter()
            .filter(|v| v[0].0.comp == 1)
            .map(|v| extract(v, 1, f))
            .collect();
        Self::from_reduced_gb(self.ring, gb)
    }

    fn hilbert_data(&self) -> &(Vec<i64>, HVector) {
        self.hilbert.get_or_init(|| {
            let n = self.ring.num_vars();
            let k = hilbert::monomial_numerator(&self.leading_monomials(), n);
            let h = hilbert::reduce_numerator(&k, n);
            Arc::new((k, h))
        })
    }

    /// Hilbert series numerator of `R/I` over `(1 - t)^n`.
    pub fn hilbert_numerator(&self) -> &[i64] {
        &self.hilbert_data().0
    }

    /// Reduced numerator and Krull dimension of `R/I`.
    pub fn h_vector(&self) -> &HVector {
        &self.hilbert_data().1
    }

    pub fn dimension(&self) -> usize {
        self.h_vector().dimension
    }

    /// `n - dim R/I`; equals `n` for the unit ideal.
    pub fn codimension(&self) -> usize {
        self.ring.num_vars() - self.dimension()
    }

    /// Multiplicity of `R/I`.
    pub fn degree(&self) -> i64 {
        self.h_vector().degree()
    }

    /// `dim_k (R/I)_d`.
    pub fn hilbert_function(&self, d: i64) -> i64 {
        self.h_vector().hilbert_function(d)
    }

    /// Basis of the vector space `I_d`: one element `m - NF(m)` for each
    /// monomial `m` of degree `d` in the leading term ideal.
    pub fn degree_slice_basis(&self, d: u32) -> Vec<Polynomial> {
        let f = self.ring.field();
        let gb = self.groebner_basis();
        if gb.is_empty() {
            return Vec::new();
        }
        let mut rows = Vec::new();
        for m in monomials_of_degree(self.ring.num_vars(), d) {
            if let Some(g) = gb.iter().find(|g| g.leading_monomial().unwrap().divides(&m)) {
                let q = m.div_exact(&g.leading_monomial().unwrap());
                rows.push(embed(&g.mul_term(&q, 1, f), 0));
            }
        }
        if rows.is_empty() {
            return Vec::new();
        }
        groebner::tail_reduce(&Self::order(), f, &self.gb_vectors(), rows)
            .iter()
            .map(|v| extract(v, 0, f))
            .collect()
    }

    /// Image under the ring map `x_i -> images[i]`.
    pub fn map(&self, images: &[Polynomial]) -> Result<Ideal> {
        let f = self.ring.field();
        Self::new(
            self.ring,
            self.gens.iter().map(|g| g.substitute(images, f)).collect(),
        )
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.groebner_basis() == other.groebner_basis()
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

pub fn groebner_basis(i: &Ideal) -> &[Polynomial] {
    i.groebner_basis()
}

pub fn normal_form(p: &Polynomial, i: &Ideal) -> Polynomial {
    i.normal_form(p)
}

pub fn ideal_quotient(i: &Ideal, j: &Ideal) -> Ideal {
    i.quotient(j)
}

pub fn saturate(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.saturate(j)
}

pub fn intersect(i: &Ideal, j: &Ideal) -> Ideal {
    i.intersect(j)
}

/// Reduced numerator and Krull dimension of `R/I`.
pub fn hilbert_series(i: &Ideal) -> HVector {
    i.h_vector().clone()
}

pub fn codimension(i: &Ideal) -> usize {
    i.codimension()
}

pub fn degree_slice_basis(i: &Ideal, d: u32) -> Vec<Polynomial> {
    i.degree_slice_basis(d)
}
