//! Packed monomials and the graded reverse lexicographic order.
//!
//! Exponents live one per byte of a `u64` (variable `i` in byte `i`), each at
//! most 127 so the top bit of every byte is free to act as a borrow guard.
//! That makes divisibility, lcm and gcd branch-free word operations.

use std::cmp::Ordering;
use std::fmt;

/// Maximum number of variables a packed monomial can hold.
pub const MAX_VARS: usize = 8;

/// Largest exponent of a single variable.
pub const MAX_EXPONENT: u32 = 127;

const GUARD: u64 = 0x8080_8080_8080_8080;
const LOW7: u64 = 0x7f7f_7f7f_7f7f_7f7f;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    bits: u64,
    degree: u32,
}

impl Monomial {
    pub const fn one() -> Self {
        Self { bits: 0, degree: 0 }
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        Self {
            bits: 1u64 << (8 * i),
            degree: 1,
        }
    }

    /// Builds a monomial from an exponent vector. Panics if an exponent
    /// exceeds [`MAX_EXPONENT`] or there are more than [`MAX_VARS`] entries.
    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut bits = 0u64;
        let mut degree = 0;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXPONENT, "exponent {e} exceeds {MAX_EXPONENT}");
            bits |= (e as u64) << (8 * i);
            degree += e;
        }
        Self { bits, degree }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        ((self.bits >> (8 * i)) & 0x7f) as u32
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.bits == 0
    }

    /// Variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_VARS).filter(move |&i| self.exponent(i) > 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let bits = self.bits + other.bits;
        assert!(bits & GUARD == 0, "monomial exponent overflow");
        Monomial {
            bits,
            degree: self.degree + other.degree,
        }
    }

    /// True iff `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && ((other.bits | GUARD) - self.bits) & GUARD == GUARD
    }

    /// `other / self` if `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial {
                bits: other.bits - self.bits,
                degree: other.degree - self.degree,
            })
        } else {
            None
        }
    }

    /// Exact quotient `self / other`; caller guarantees divisibility.
    #[inline]
    pub fn div_exact(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial {
            bits: self.bits - other.bits,
            degree: self.degree - other.degree,
        }
    }

    /// Mask with 0x7f in every byte where `a >= b`.
    #[inline]
    fn ge_mask(a: u64, b: u64) -> u64 {
        let m = ((a | GUARD) - b) & GUARD;
        (m - (m >> 7)) & LOW7
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let m = Self::ge_mask(self.bits, other.bits);
        let bits = (self.bits & m) | (other.bits & !m & LOW7);
        Monomial {
            bits,
            degree: byte_sum(bits),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let m = Self::ge_mask(self.bits, other.bits);
        let bits = (other.bits & m) | (self.bits & !m & LOW7);
        Monomial {
            bits,
            degree: byte_sum(bits),
        }
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        // Nonzero bytes never overlap.
        let a = (self.bits + LOW7) & GUARD;
        let b = (other.bits + LOW7) & GUARD;
        a & b == 0
    }

    /// Graded reverse lexicographic comparison with `x0 > x1 > ... `.
    #[inline]
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.bits.cmp(&self.bits))
    }
}

#[inline]
fn byte_sum(bits: u64) -> u32 {
    let pairs = (bits & 0x00ff_00ff_00ff_00ff) + ((bits >> 8) & 0x00ff_00ff_00ff_00ff);
    (pairs.wrapping_mul(0x0001_0001_0001_0001) >> 48) as u32
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grevlex(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 0..MAX_VARS {
            let e = self.exponent(i);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of total degree `d` in `n` variables, in decreasing grevlex
/// order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    if n == 0 {
        return out;
    }
    rec(0, d, &mut exps, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Number of monomials of degree `d` in `n` variables.
pub fn count_monomials(n: usize, d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    binomial(d as u64 + n as u64 - 1, n as u64 - 1) as usize
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
