//! Sparse polynomials over GF(p) with terms sorted by decreasing grevlex.

use crate::field::PrimeField;
use crate::monomial::Monomial;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// A polynomial as a strictly decreasing (grevlex) list of nonzero terms.
///
/// Coefficients are canonical representatives in `[0, p)`; the field itself
/// is not stored, so arithmetic takes it as an argument.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn constant(c: u32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn monomial(m: Monomial, c: u32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self { terms: vec![(m, c)] }
        }
    }

    /// Normalizes arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(mut terms: Vec<(Monomial, u32)>, f: PrimeField) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % f.characteristic();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Self { terms: out }
    }

    /// Wraps terms already sorted strictly decreasing with nonzero
    /// coefficients.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Self { terms }
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    /// Common total degree of all terms, `None` for zero or inhomogeneous
    /// polynomials.
    pub fn degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn neg(&self, f: PrimeField) -> Self {
        Self {
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: u32, f: PrimeField) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, f: PrimeField) -> Self {
        match self.leading_coefficient() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(f.inv(c), f),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32, f: PrimeField) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|&(t, a)| (t.mul(m), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self, f: PrimeField) -> Self {
        self.axpy(1, &Monomial::one(), other, f)
    }

    pub fn sub(&self, other: &Self, f: PrimeField) -> Self {
        self.axpy(f.neg(1), &Monomial::one(), other, f)
    }

    /// `self + c * m * other` in one merge pass.
    pub fn axpy(&self, c: u32, m: &Monomial, other: &Self, f: PrimeField) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|&(t, v)| (t.mul(m), f.mul(v, c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Greater => out.push(*a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let s = f.add(x.1, y.1);
                        if s != 0 {
                            out.push((x.0, s));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
        out.retain(|t| t.1 != 0);
        Self { terms: out }
    }

    pub fn mul(&self, other: &Self, f: PrimeField) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.len() == 1 {
            return other.mul_term(&self.terms[0].0, self.terms[0].1, f);
        }
        if other.len() == 1 {
            return self.mul_term(&other.terms[0].0, other.terms[0].1, f);
        }
        let p = f.characteristic() as u64;
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.len() * other.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(&mb)).or_insert(0);
                *e = (*e + ca as u64 * cb as u64) % p;
            }
        }
        let terms: Vec<(Monomial, u32)> = acc
            .into_iter()
            .filter(|t| t.1 != 0)
            .map(|(m, c)| (m, c as u32))
            .collect();
        let mut terms = terms;
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Self { terms }
    }

    pub fn pow(&self, e: u32, f: PrimeField) -> Self {
        let mut out = Self::constant(1);
        for _ in 0..e {
            out = out.mul(self, f);
        }
        out
    }

    /// Exact division. Returns `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self, f: PrimeField) -> Option<Self> {
        let (lm, lc) = *divisor.terms.first()?;
        let lc_inv = f.inv(lc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(&(m, c)) = rem.terms.first() {
            let q = lm.quotient_of(&m)?;
            let qc = f.mul(c, lc_inv);
            quot.push((q, qc));
            rem = rem.axpy(f.neg(qc), &q, divisor, f);
        }
        Some(Self::from_sorted_unchecked(quot))
    }

    /// Substitutes `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Polynomial], f: PrimeField) -> Self {
        let mut out = Self::zero();
        for &(m, c) in &self.terms {
            let mut t = Self::constant(c);
            for (i, img) in images.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t = t.mul(&img.pow(e, f), f);
                }
            }
            out = out.add(&t, f);
        }
        out
    }

    pub fn evaluate(&self, point: &[u32], f: PrimeField) -> u32 {
        let mut acc = 0;
        for &(m, c) in &self.terms {
            let mut v = c;
            for (i, &x) in point.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    v = f.mul(v, x);
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text form: terms in decreasing grevlex order joined by ` + `,
/// coefficients as their representatives in `[0, p)`, a coefficient of one
/// omitted in front of a non-constant monomial.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}
