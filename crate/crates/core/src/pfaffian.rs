//! Pfaffians of alternating matrices and Buchsbaum-Eisenbud ideals.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal::Ideal;
use crate::io;
use crate::poly::Polynomial;
use crate::ring::RingContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Row degrees `r` and shift `c`: entry `(i, j)` has degree `r_i + r_j - c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePattern {
    pub row_degrees: Vec<i32>,
    pub shift: i32,
}

impl DegreePattern {
    pub fn new(row_degrees: Vec<i32>, shift: i32) -> Self {
        Self { row_degrees, shift }
    }

    /// All entries linear.
    pub fn linear(s: usize) -> Self {
        Self::new(vec![1; s], 1)
    }

    /// One row of quadrics, all other entries linear.
    pub fn one_quadric_row(s: usize) -> Self {
        let mut r = vec![1; s];
        r[s - 1] = 2;
        Self::new(r, 1)
    }

    pub fn entry_degree(&self, i: usize, j: usize) -> i32 {
        self.row_degrees[i] + self.row_degrees[j] - self.shift
    }

    /// Degree of the `i`-th submaximal Pfaffian.
    pub fn pfaffian_degree(&self, i: usize) -> i32 {
        let s = self.row_degrees.len() as i32;
        let total: i32 = self.row_degrees.iter().sum();
        total - self.row_degrees[i] - self.shift * (s - 1) / 2
    }
}

/// Odd-size alternating matrix of homogeneous forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewSymmetricMatrix {
    ring: RingContext,
    entries: Vec<Vec<Polynomial>>,
    pattern: DegreePattern,
}

impl SkewSymmetricMatrix {
    /// Validates oddness, antisymmetry and the degree pattern.
    pub fn new(ring: RingContext, entries: Vec<Vec<Polynomial>>, pattern: DegreePattern) -> Result<Self> {
        let s = entries.len();
        if s < 3 || s % 2 == 0 {
            return Err(Error::InvalidMatrix(format!("size must be odd and at least 3, got {s}")));
        }
        if pattern.row_degrees.len() != s {
            return Err(Error::InvalidMatrix("degree vector has the wrong length".into()));
        }
        let f = ring.field();
        for i in 0..s {
            if entries[i].len() != s {
                return Err(Error::InvalidMatrix("matrix is not square".into()));
            }
            if !entries[i][i].is_zero() {
                return Err(Error::InvalidMatrix(format!("diagonal entry {i} is nonzero")));
            }
            for j in i + 1..s {
                let e = &entries[i][j];
                if entries[j][i] != e.neg(f) {
                    return Err(Error::InvalidMatrix(format!("entries ({i},{j}) and ({j},{i}) are not opposite")));
                }
                if !e.is_zero() && e.degree().map(|d| d as i32) != Some(pattern.entry_degree(i, j)) {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i},{j}) = {e} should be homogeneous of degree {}",
                        pattern.entry_degree(i, j)
                    )));
                }
            }
        }
        Ok(Self { ring, entries, pattern })
    }

    /// Builds the matrix from its strict upper triangle (row-major) and
    /// infers a degree pattern from the Pfaffian degrees.
    pub fn from_upper(ring: RingContext, s: usize, upper: Vec<Polynomial>) -> Result<Self> {
        if s < 3 || s % 2 == 0 || upper.len() != s * (s - 1) / 2 {
            return Err(Error::InvalidMatrix(format!(
                "expected {} upper-triangle entries for an odd size {s}",
                s * s.saturating_sub(1) / 2
            )));
        }
        let f = ring.field();
        let mut entries = vec![vec![Polynomial::zero(); s]; s];
        let mut it = upper.into_iter();
        for i in 0..s {
            for j in i + 1..s {
                let e = it.next().unwrap();
                entries[j][i] = e.neg(f);
                entries[i][j] = e;
            }
        }
        let pattern = infer_pattern(&entries, f)?;
        Self::new(ring, entries, pattern)
    }

    pub fn ring(&self) -> RingContext {
        self.ring
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn pattern(&self) -> &DegreePattern {
        &self.pattern
    }

    /// Reorders rows and columns so the row degrees are non-decreasing.
    /// Returns the matrix and `perm` with new index `k` = old index `perm[k]`.
    pub fn canonicalize(&self) -> (Self, Vec<usize>) {
        let s = self.size();
        let mut perm: Vec<usize> = (0..s).collect();
        perm.sort_by_key(|&i| self.pattern.row_degrees[i]);
        let entries = perm
            .iter()
            .map(|&a| perm.iter().map(|&b| self.entries[a][b].clone()).collect())
            .collect();
        let pattern = DegreePattern::new(
            perm.iter().map(|&i| self.pattern.row_degrees[i]).collect(),
            self.pattern.shift,
        );
        (
            Self {
                ring: self.ring,
                entries,
                pattern,
            },
            perm,
        )
    }

    /// Principal submatrix on the kept indices.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Vec<Vec<Polynomial>> {
        keep.iter()
            .map(|&a| keep.iter().map(|&b| self.entries[a][b].clone()).collect())
            .collect()
    }

    fn without(&self, drop: &[usize]) -> Vec<usize> {
        (0..self.size()).filter(|i| !drop.contains(i)).collect()
    }

    /// Text form: ring header, `skew s=<size>`, then the strict upper
    /// triangle row by row, one entry per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\nskew s={}\n", io::ring_header(self.ring), self.size());
        for i in 0..self.size() {
            for j in i + 1..self.size() {
                out.push_str(&self.entries[i][j].to_string());
                out.push('\n');
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = io::content_lines(text);
        let missing = |line| Error::Parse {
            line,
            msg: "unexpected end of matrix file".into(),
        };
        let (ln, header) = lines.next().ok_or(missing(1))?;
        let ring = io::parse_ring_header(header, ln)?;
        let (ln, skew) = lines.next().ok_or(missing(ln + 1))?;
        let s: usize = skew
            .strip_prefix("skew s=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or(Error::Parse {
                line: ln,
                msg: "expected 'skew s=<size>'".into(),
            })?;
        let mut upper = Vec::new();
        for (ln, l) in lines {
            upper.push(io::parse_line(l, ring, ln)?);
        }
        Self::from_upper(ring, s, upper)
    }
}

fn infer_pattern(entries: &[Vec<Polynomial>], f: PrimeField) -> Result<DegreePattern> {
    let s = entries.len();
    let all: Vec<usize> = (0..s).collect();
    let mut g = Vec::with_capacity(s);
    for i in 0..s {
        let keep: Vec<usize> = all.iter().copied().filter(|&k| k != i).collect();
        let sub: Vec<Vec<Polynomial>> = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| entries[a][b].clone()).collect())
            .collect();
        let pf = pfaffian(&sub, f)?;
        g.push(pf.degree().ok_or_else(|| {
            Error::InvalidMatrix(format!("Pfaffian {i} is zero or inhomogeneous; cannot infer degrees"))
        })? as i32);
    }
    let sum: i32 = g.iter().sum();
    if (2 * sum) % (s as i32 - 1) != 0 {
        return Err(Error::InvalidMatrix("Pfaffian degrees admit no degree pattern".into()));
    }
    let t = 2 * sum / (s as i32 - 1);
    let min = g.iter().map(|d| -d).min().unwrap();
    let a = 1 - min;
    Ok(DegreePattern::new(g.iter().map(|d| a - d).collect(), 2 * a - t))
}

fn pf_rec(m: &[Vec<Polynomial>], set: u32, f: PrimeField, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
    if set == 0 {
        return Polynomial::constant(1);
    }
    if let Some(p) = memo.get(&set) {
        return p.clone();
    }
    let i0 = set.trailing_zeros() as usize;
    let rest = set & !(1 << i0);
    let mut acc = Polynomial::zero();
    let mut pos = 1;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        pos += 1;
        let a = &m[i0][j];
        if a.is_zero() {
            continue;
        }
        let sub = pf_rec(m, rest & !(1 << j), f, memo);
        if sub.is_zero() {
            continue;
        }
        let term = a.mul(&sub, f);
        acc = if pos % 2 == 0 { acc.add(&term, f) } else { acc.sub(&term, f) };
    }
    memo.insert(set, acc.clone());
    acc
}

/// Pfaffian of an even-size alternating matrix, by expansion along the
/// first row.
pub fn pfaffian(m: &[Vec<Polynomial>], f: PrimeField) -> Result<Polynomial> {
    let s = m.len();
    if s % 2 == 1 {
        return Err(Error::OddPfaffian(s));
    }
    if s > 31 {
        return Err(Error::InvalidMatrix("matrix too large".into()));
    }
    let full = if s == 0 { 0 } else { (1u32 << s) - 1 };
    Ok(pf_rec(m, full, f, &mut HashMap::new()))
}

fn det_rec(m: &[Vec<Polynomial>], row: usize, cols: u32, f: PrimeField, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
    if row == m.len() {
        return Polynomial::constant(1);
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = Polynomial::zero();
    let mut bits = cols;
    let mut pos = 0;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = &m[row][j];
        if !a.is_zero() {
            let sub = det_rec(m, row + 1, cols & !(1 << j), f, memo);
            let term = a.mul(&sub, f);
            acc = if pos % 2 == 0 { acc.add(&term, f) } else { acc.sub(&term, f) };
        }
        pos += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Determinant by cofactor expansion with memoized minors.
pub fn determinant(m: &[Vec<Polynomial>], f: PrimeField) -> Polynomial {
    let s = m.len();
    assert!(s <= 31, "matrix too large");
    det_rec(m, 0, if s == 0 { 0 } else { (1u32 << s) - 1 }, f, &mut HashMap::new())
}

/// Signed submaximal Pfaffians `(-1)^i Pf(M without row/column i)` (0-based
/// `i`), so that `M` annihilates the vector they form.
pub fn submaximal_pfaffians(m: &SkewSymmetricMatrix) -> Vec<Polynomial> {
    let f = m.ring.field();
    (0..m.size())
        .map(|i| {
            let p = pfaffian(&m.principal_submatrix(&m.without(&[i])), f).expect("even size");
            if i % 2 == 0 {
                p
            } else {
                p.neg(f)
            }
        })
        .collect()
}

/// The ideal of submaximal Pfaffians.
pub fn buchsbaum_eisenbud_ideal(m: &SkewSymmetricMatrix) -> Result<Ideal> {
    Ideal::new(m.ring, submaximal_pfaffians(m))
}

/// Pfaffian of the matrix with three rows and columns removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WatanabeU {
    pub u: Polynomial,
    /// Set for `s = 3`, where the deletion is empty and `u = 1`.
    pub is_unit: bool,
}

/// `u = Pf(M without rows/columns i, j, k)` for distinct 0-based indices.
pub fn watanabe_u(m: &SkewSymmetricMatrix, i: usize, j: usize, k: usize) -> Result<WatanabeU> {
    let s = m.size();
    if i == j || j == k || i == k || i >= s || j >= s || k >= s {
        return Err(Error::InvalidIndices(format!("({i},{j},{k}) for size {s}")));
    }
    let u = pfaffian(&m.principal_submatrix(&m.without(&[i, j, k])), m.ring.field())?;
    Ok(WatanabeU {
        is_unit: s == 3,
        u,
    })
}

/// Alternating matrix with dense random entries of the pattern's degrees,
/// deterministic in `seed`.
pub fn random_be_matrix(ring: RingContext, s: usize, pattern: &DegreePattern, seed: u64) -> Result<SkewSymmetricMatrix> {
    if s < 3 || s % 2 == 0 {
        return Err(Error::InvalidMatrix(format!("size must be odd and at least 3, got {s}")));
    }
    if pattern.row_degrees.len() != s {
        return Err(Error::InfeasibleDegrees("degree vector has the wrong length".into()));
    }
    let f = ring.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = vec![vec![Polynomial::zero(); s]; s];
    for i in 0..s {
        for j in i + 1..s {
            let d = pattern.entry_degree(i, j);
            if d < 0 {
                return Err(Error::InfeasibleDegrees(format!("entry ({i},{j}) would have degree {d}")));
            }
            let e = ring.random_form(d as u32, &mut rng);
            entries[j][i] = e.neg(f);
            entries[i][j] = e;
        }
    }
    SkewSymmetricMatrix::new(ring, entries, pattern.clone())
}
