//! Complete intersections, linkage and minimal linkage.

mod drivers;

pub use drivers::{
    gorenstein_double_link, gorenstein_run, minimal_licci_run, GorensteinDoubleLink, GorensteinReport, LinkTrace,
    TerminalStatus,
};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::Echelon;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::resolution::{betti_table, BettiTable};
use crate::ring::RingContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Attempts made by [`sample_ci`] before giving up.
pub const CI_SAMPLING_ATTEMPTS: usize = 20;

/// A regular sequence of homogeneous forms, sorted by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteIntersection {
    forms: Vec<Polynomial>,
    degrees: Vec<u32>,
}

impl CompleteIntersection {
    /// Sorts the forms by degree and checks that they form a regular
    /// sequence.
    pub fn new(ring: RingContext, mut forms: Vec<Polynomial>) -> Result<Self> {
        if forms.iter().any(|f| f.is_zero() || !f.is_homogeneous()) {
            return Err(Error::NotRegularSequence("forms must be nonzero and homogeneous".into()));
        }
        forms.sort_by_key(|f| f.degree().unwrap());
        if !is_regular_sequence(ring, &forms) {
            return Err(Error::NotRegularSequence(format!(
                "forms of degrees {:?} do not cut the expected codimension",
                forms.iter().map(|f| f.degree().unwrap()).collect::<Vec<_>>()
            )));
        }
        let degrees = forms.iter().map(|f| f.degree().unwrap()).collect();
        Ok(Self { forms, degrees })
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn codimension(&self) -> usize {
        self.forms.len()
    }

    /// `∏ a_i`, the degree of the complete intersection.
    pub fn degree(&self) -> i64 {
        self.degrees.iter().map(|&d| d as i64).product()
    }

    pub fn degree_sum(&self) -> u32 {
        self.degrees.iter().sum()
    }

    pub fn ideal(&self, ring: RingContext) -> Ideal {
        Ideal::new(ring, self.forms.clone()).expect("forms are homogeneous")
    }
}

/// True iff the forms generate an ideal of codimension equal to their
/// number.
pub fn is_regular_sequence(ring: RingContext, forms: &[Polynomial]) -> bool {
    if forms.iter().any(|f| f.is_zero() || !f.is_homogeneous()) {
        return false;
    }
    if forms.is_empty() {
        return true;
    }
    match Ideal::new(ring, forms.to_vec()) {
        Ok(i) => !i.is_unit() && i.codimension() == forms.len(),
        Err(_) => false,
    }
}

/// `(a_1, ..., a_c)`: `a_i` is the least `t` such that the minimal
/// generators of degree at most `t` generate an ideal of codimension at
/// least `i`.
pub fn least_ci_degrees(ideal: &Ideal, c: usize) -> Result<Vec<u32>> {
    let actual = ideal.codimension();
    if actual < c || ideal.is_unit() {
        return Err(Error::CodimensionTooSmall { required: c, actual });
    }
    let ring = ideal.ring();
    let mut gens: Vec<Polynomial> = ideal.minimal_generators().to_vec();
    gens.sort_by_key(|g| g.degree().unwrap());
    let mut degs: Vec<u32> = gens.iter().map(|g| g.degree().unwrap()).collect();
    degs.dedup();
    let mut out = Vec::with_capacity(c);
    for t in degs {
        let sub: Vec<Polynomial> = gens.iter().filter(|g| g.degree().unwrap() <= t).cloned().collect();
        let codim = Ideal::new(ring, sub)?.codimension();
        while out.len() < c && out.len() < codim {
            out.push(t);
        }
        if out.len() == c {
            break;
        }
    }
    Ok(out)
}

fn keyed(p: &Polynomial) -> Vec<(Monomial, u32)> {
    p.terms().to_vec()
}

/// Span of `(m I)_d`, the degree-`d` part of the maximal ideal times `I`.
fn m_times_slice(ideal: &Ideal, d: u32) -> Echelon<Monomial> {
    let ring = ideal.ring();
    let f = ring.field();
    let mut ech = Echelon::new(f);
    if d == 0 {
        return ech;
    }
    for b in ideal.degree_slice_basis(d - 1) {
        for x in ring.vars() {
            ech.insert(keyed(&b.mul(&x, f)));
        }
    }
    ech
}

/// True when `forms` (all in `ideal`) extend to a minimal generating set:
/// in each degree they are independent modulo `(m I)_d`.
pub fn extends_to_minimal_generators(ideal: &Ideal, forms: &[Polynomial]) -> bool {
    if forms.iter().any(|f| f.is_zero() || !ideal.contains(f)) {
        return false;
    }
    let mut degs: Vec<u32> = forms.iter().filter_map(|f| f.degree()).collect();
    degs.sort_unstable();
    degs.dedup();
    for d in degs {
        let mut ech = m_times_slice(ideal, d);
        for g in forms.iter().filter(|g| g.degree() == Some(d)) {
            if !ech.insert(keyed(g)) {
                return false;
            }
        }
    }
    true
}

/// Random complete intersection of the given degrees inside `ideal` whose
/// forms extend to a minimal generating set.
pub fn sample_ci(ideal: &Ideal, degrees: &[u32], seed: u64) -> Result<CompleteIntersection> {
    let ring = ideal.ring();
    let f = ring.field();
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reason = String::from("no attempt made");
    let slices: Vec<Vec<Polynomial>> = degrees.iter().map(|&d| ideal.degree_slice_basis(d)).collect();
    if let Some(k) = slices.iter().position(|s| s.is_empty()) {
        let reason = format!("the ideal has no forms of degree {}", degrees[k]);
        return Err(Error::CiSamplingExhausted {
            degrees,
            attempts: 0,
            reason,
        });
    }
    'attempt: for _ in 0..CI_SAMPLING_ATTEMPTS {
        let mut chosen: Vec<Polynomial> = Vec::with_capacity(degrees.len());
        let mut ech: Option<(u32, Echelon<Monomial>)> = None;
        for (k, &d) in degrees.iter().enumerate() {
            let mut form = Polynomial::zero();
            for b in &slices[k] {
                form = form.add(&b.scale(ring.random_scalar(&mut rng), f), f);
            }
            if form.is_zero() {
                reason = format!("random combination of degree {d} vanished");
                continue 'attempt;
            }
            if ech.as_ref().map(|e| e.0) != Some(d) {
                ech = Some((d, m_times_slice(ideal, d)));
            }
            if !ech.as_mut().unwrap().1.insert(keyed(&form)) {
                reason = format!("form of degree {d} is not a minimal generator");
                continue 'attempt;
            }
            chosen.push(form);
            if !is_regular_sequence(ring, &chosen) {
                reason = format!(
                    "forms of degrees {:?} are not a regular sequence",
                    &degrees[..=k]
                );
                continue 'attempt;
            }
        }
        return CompleteIntersection::new(ring, chosen);
    }
    Err(Error::CiSamplingExhausted {
        degrees,
        attempts: CI_SAMPLING_ATTEMPTS,
        reason,
    })
}

/// One linkage step `I -> CI : I` with snapshots of both ends.
#[derive(Clone, Debug)]
pub struct LinkStep {
    pub ci: CompleteIntersection,
    pub source: Ideal,
    pub residual: Ideal,
    pub minimal: bool,
    pub betti_before: BettiTable,
    pub betti_after: BettiTable,
    pub mu_before: usize,
    pub mu_after: usize,
    pub degree_before: i64,
    pub degree_after: i64,
}

impl LinkStep {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "ci_type": self.ci.degrees(),
            "minimal": self.minimal,
            "mu_before": self.mu_before,
            "mu_after": self.mu_after,
            "degree_before": self.degree_before,
            "degree_after": self.degree_after,
            "betti_before": self.betti_before.to_json(),
            "betti_after": self.betti_after.to_json(),
        })
    }

    /// `CI : (CI : I) = I`.
    pub fn involution_holds(&self) -> bool {
        let c = self.ci.ideal(self.source.ring());
        c.quotient(&self.residual) == self.source
    }
}

/// Links `ideal` by `ci`, which must lie in it and differ from it.
pub fn link(ideal: &Ideal, ci: &CompleteIntersection) -> Result<LinkStep> {
    let ring = ideal.ring();
    let c = ci.ideal(ring);
    if !ideal.contains_ideal(&c) {
        return Err(Error::NotContained);
    }
    if c == *ideal {
        return Err(Error::TrivialLink);
    }
    let residual = c.quotient(ideal);
    let (db, da) = (ideal.degree(), residual.degree());
    if db + da != ci.degree() {
        return Err(Error::DegreeMismatch {
            before: db,
            after: da,
            product: ci.degree(),
        });
    }
    Ok(LinkStep {
        ci: ci.clone(),
        betti_before: betti_table(ideal)?,
        betti_after: betti_table(&residual)?,
        mu_before: ideal.mu(),
        mu_after: residual.mu(),
        degree_before: db,
        degree_after: da,
        source: ideal.clone(),
        residual,
        minimal: false,
    })
}

/// Link by a complete intersection of least degrees.
pub fn minimal_link(ideal: &Ideal, seed: u64) -> Result<LinkStep> {
    let c = ideal.codimension();
    if ideal.mu() <= c {
        return Err(Error::TrivialLink);
    }
    let degrees = least_ci_degrees(ideal, c)?;
    let ci = sample_ci(ideal, &degrees, seed)?;
    let mut step = link(ideal, &ci)?;
    step.minimal = true;
    Ok(step)
}

/// `ℓ·I + (f)` for a linear form `ℓ` and `f ∈ I` with `(ℓ, f)` regular.
pub fn basic_double_link(ideal: &Ideal, f: &Polynomial, ell: &Polynomial) -> Result<Ideal> {
    let ring = ideal.ring();
    if ell.degree() != Some(1) {
        return Err(Error::NotRegularSequence("ℓ must be a linear form".into()));
    }
    if !ideal.contains(f) {
        return Err(Error::NotContained);
    }
    if !is_regular_sequence(ring, &[ell.clone(), f.clone()]) {
        return Err(Error::NotRegularSequence(format!("(ℓ, f) with ℓ = {ell}")));
    }
    let out = ideal.scale(ell).with_generator(f)?;
    if !out.is_saturated() {
        return Err(Error::ClaimFailed("the basic double link is not saturated".into()));
    }
    Ok(out)
}

/// Deterministic child seed for the `index`-th sampling site of a run.
pub fn child_seed(root: u64, index: u64) -> u64 {
    fn splitmix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    splitmix(root ^ splitmix(index))
}
