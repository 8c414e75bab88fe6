//! Hilbert series of quotients by monomial ideals, by recursive pivoting.

use crate::monomial::{binomial, Monomial};
use serde::{Deserialize, Serialize};

/// Reduced Hilbert series numerator `h(t)` of `R/I`, so that the series is
/// `h(t) / (1 - t)^dimension`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVector {
    pub coefficients: Vec<i64>,
    pub dimension: usize,
}

impl HVector {
    /// Multiplicity `h(1)`.
    pub fn degree(&self) -> i64 {
        self.coefficients.iter().sum()
    }

    /// `dim_k (R/I)_d`.
    pub fn hilbert_function(&self, d: i64) -> i64 {
        if d < 0 {
            return 0;
        }
        if self.dimension == 0 {
            return self.coefficients.get(d as usize).copied().unwrap_or(0);
        }
        let r = self.dimension as u64 - 1;
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(i, _)| *i as i64 <= d)
            .map(|(i, &h)| h * binomial(d as u64 - i as u64 + r, r) as i64)
            .sum()
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.cmp(a)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn add_shifted(acc: &mut Vec<i64>, v: &[i64], shift: usize) {
    if acc.len() < v.len() + shift {
        acc.resize(v.len() + shift, 0);
    }
    for (i, &c) in v.iter().enumerate() {
        acc[i + shift] += c;
    }
}

fn numerator_rec(gens: Vec<Monomial>, n: usize) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens[0].is_one() {
        return Vec::new();
    }
    let mut acc_lcm = Monomial::one();
    let mut coprime = true;
    for g in &gens {
        if !g.is_coprime(&acc_lcm) {
            coprime = false;
            break;
        }
        acc_lcm = acc_lcm.lcm(g);
    }
    if coprime {
        let mut out = vec![1i64];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = out.clone();
            add_shifted(&mut next, &out.iter().map(|c| -c).collect::<Vec<_>>(), d);
            out = next;
        }
        return trim(out);
    }
    let mut counts = vec![0usize; n];
    for g in &gens {
        for i in g.support() {
            counts[i] += 1;
        }
    }
    let var = (0..n).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let mut exps: Vec<u32> = gens
        .iter()
        .map(|g| g.exponent(var))
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let mut e = exps[exps.len() / 2];
    for g in &gens {
        if g.support().count() == 1 && g.exponent(var) > 0 {
            e = e.min(g.exponent(var) - 1);
        }
    }
    debug_assert!(e >= 1);
    let mut pe = vec![0u32; var + 1];
    pe[var] = e;
    let p = Monomial::from_exponents(&pe);
    let mut plus: Vec<Monomial> = gens.iter().copied().filter(|g| !p.divides(g)).collect();
    plus.push(p);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.div_exact(&g.gcd(&p))).collect();
    let mut out = numerator_rec(plus, n);
    add_shifted(&mut out, &numerator_rec(colon, n), e as usize);
    trim(out)
}

/// Numerator `K(t)` of the Hilbert series of `k[x0..x{n-1}] / (gens)` over
/// `(1 - t)^n`. Empty for the unit ideal.
pub fn monomial_numerator(gens: &[Monomial], n: usize) -> Vec<i64> {
    numerator_rec(gens.to_vec(), n)
}

/// Divides out `(1 - t)` as long as possible.
pub fn reduce_numerator(k: &[i64], n: usize) -> HVector {
    let mut cur = trim(k.to_vec());
    if cur.is_empty() {
        return HVector {
            coefficients: Vec::new(),
            dimension: 0,
        };
    }
    let mut dim = n;
    while dim > 0 && cur.iter().sum::<i64>() == 0 {
        let mut q = Vec::with_capacity(cur.len());
        let mut run = 0;
        for &c in &cur[..cur.len() - 1] {
            run += c;
            q.push(run);
        }
        cur = trim(q);
        dim -= 1;
    }
    HVector {
        coefficients: cur,
        dimension: dim,
    }
}

/// Coefficients of `(1 - t)^k * h(t)`, used to go back from a reduced
/// numerator to the numerator over `(1 - t)^n`.
pub fn expand_numerator(h: &HVector, n: usize) -> Vec<i64> {
    let mut cur = h.coefficients.clone();
    for _ in h.dimension..n {
        let mut next = vec![0i64; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c;
        }
        cur = next;
    }
    trim(cur)
}
