//! The ambient polynomial ring k[x0, ..., x{n-1}] with k = GF(p).

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MAX_VARS};
use crate::poly::Polynomial;
use serde::{Deserialize, Serialize};

/// Number of variables and coefficient field. The term order is always
/// graded reverse lexicographic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingContext {
    num_vars: usize,
    field: PrimeField,
}

impl RingContext {
    pub fn new(characteristic: u32, num_vars: usize) -> Result<Self> {
        if !(2..=MAX_VARS).contains(&num_vars) {
            return Err(Error::InvalidRing(format!(
                "number of variables must lie in 2..={MAX_VARS}, got {num_vars}"
            )));
        }
        Ok(Self {
            num_vars,
            field: PrimeField::new(characteristic)?,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        assert!(i < self.num_vars, "variable x{i} out of range");
        Polynomial::monomial(Monomial::var(i), 1)
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.num_vars).map(|i| self.var(i)).collect()
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs with signed
    /// integer coefficients.
    pub fn poly(&self, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(
            terms
                .iter()
                .map(|(c, e)| (Monomial::from_exponents(e), self.field.from_i64(*c)))
                .collect(),
            self.field,
        )
    }

    /// True when every variable index used by `p` is in range.
    pub fn owns(&self, p: &Polynomial) -> bool {
        p.terms()
            .iter()
            .all(|(m, _)| m.support().all(|i| i < self.num_vars))
    }
}

impl RingContext {
    /// Form of degree `d` with independent uniform coefficients on every
    /// monomial in the variables `vars`.
    pub fn random_form_in<R: rand::Rng + ?Sized>(&self, vars: &[usize], d: u32, rng: &mut R) -> Polynomial {
        let p = self.characteristic();
        let terms = crate::monomial::monomials_of_degree(vars.len(), d)
            .into_iter()
            .map(|m| {
                let mut e = vec![0u32; self.num_vars];
                for (k, &v) in vars.iter().enumerate() {
                    e[v] = m.exponent(k);
                }
                (Monomial::from_exponents(&e), rng.gen_range(0..p))
            })
            .collect();
        Polynomial::from_terms(terms, self.field)
    }

    /// Form of degree `d` with uniform random coefficients.
    pub fn random_form<R: rand::Rng + ?Sized>(&self, d: u32, rng: &mut R) -> Polynomial {
        let vars: Vec<usize> = (0..self.num_vars).collect();
        self.random_form_in(&vars, d, rng)
    }

    /// Uniform random element of the field.
    pub fn random_scalar<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.characteristic())
    }
}
