//! Slow, independent reference computations used as test oracles.
#![allow(dead_code)]

use liaison_core::monomial::monomials_of_degree;
use liaison_core::resolution::BettiTable;
use liaison_core::*;
use std::collections::BTreeMap;

fn monic(p: &Polynomial, f: PrimeField) -> Polynomial {
    p.scale(f.inv(p.leading_coefficient().unwrap()), f)
}

/// Full reduction of `p` by a list of monic polynomials.
pub fn reduce(p: &Polynomial, g: &[Polynomial], f: PrimeField) -> Polynomial {
    let mut p = p.clone();
    let mut rem = Polynomial::zero();
    while let Some(lm) = p.leading_monomial() {
        let lc = p.leading_coefficient().unwrap();
        match g.iter().find(|h| h.leading_monomial().unwrap().divides(&lm)) {
            Some(h) => {
                let q = lm.div_exact(&h.leading_monomial().unwrap());
                p = p.sub(&h.mul_term(&q, lc, f), f);
            }
            None => {
                let t = Polynomial::monomial(lm, lc);
                rem = rem.add(&t, f);
                p = p.sub(&t, f);
            }
        }
    }
    rem
}

/// Textbook Buchberger with all pairs, followed by interreduction. Sorted
/// ascending by leading monomial.
pub fn buchberger(gens: &[Polynomial], f: PrimeField) -> Vec<Polynomial> {
    let mut g: Vec<Polynomial> = gens.iter().filter(|p| !p.is_zero()).map(|p| monic(p, f)).collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (a, b) = (g[i].leading_monomial().unwrap(), g[j].leading_monomial().unwrap());
        let l = a.lcm(&b);
        let s = g[i].mul_term(&l.div_exact(&a), 1, f).sub(&g[j].mul_term(&l.div_exact(&b), 1, f), f);
        let r = reduce(&s, &g, f);
        if !r.is_zero() {
            g.push(monic(&r, f));
            let k = g.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    let mut min: Vec<Polynomial> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let lm = p.leading_monomial().unwrap();
        let redundant = g.iter().enumerate().any(|(k2, q)| {
            let lq = q.leading_monomial().unwrap();
            k2 != k && lq.divides(&lm) && (lq != lm || k2 < k)
        });
        if !redundant {
            min.push(p.clone());
        }
    }
    let mut out: Vec<Polynomial> = (0..min.len())
        .map(|k| {
            let others: Vec<Polynomial> = min.iter().enumerate().filter(|(k2, _)| *k2 != k).map(|(_, p)| p.clone()).collect();
            let lm = min[k].leading_monomial().unwrap();
            let head = Polynomial::monomial(lm, 1);
            let tail = min[k].sub(&head, f);
            head.add(&reduce(&tail, &others, f), f)
        })
        .collect();
    out.sort_by_key(|p| p.leading_monomial().unwrap());
    out
}

/// Row rank over GF(p) by dense elimination.
pub fn rank(mut rows: Vec<Vec<u32>>, f: PrimeField) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let m = rows[i][c];
                for k in 0..ncols {
                    let v = f.mul(m, rows[r][k]);
                    rows[i][k] = f.sub(rows[i][k], v);
                }
            }
        }
        r += 1;
    }
    r
}

/// `β_{i,j}` of `I` (`= dim Tor_{i+1}(R/I, k)_j`) for `j <= max_j`, from the
/// homology of the Koszul complex on the variables tensored with `R/I`.
pub fn koszul_betti(i: &Ideal, max_j: i32) -> BettiTable {
    let r = i.ring();
    let n = r.num_vars();
    let f = r.field();
    let gb = i.groebner_basis().to_vec();
    let leads = i.leading_monomials();
    let standard = |d: i32| -> Vec<Monomial> {
        if d < 0 {
            return Vec::new();
        }
        monomials_of_degree(n, d as u32)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect()
    };
    let subsets = |k: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|b| s >> b & 1 == 1).collect())
            .collect()
    };
    // Matrix of d_k : K_k -> K_{k-1} in internal degree j.
    let diff_rank = |k: usize, j: i32| -> usize {
        if k == 0 || k > n {
            return 0;
        }
        let src_b = standard(j - k as i32);
        let tgt_b = standard(j - k as i32 + 1);
        let tgt_sets = subsets(k - 1);
        let tgt_index: BTreeMap<(Vec<usize>, Monomial), usize> = tgt_sets
            .iter()
            .flat_map(|s| tgt_b.iter().map(move |m| (s.clone(), *m)))
            .enumerate()
            .map(|(a, b)| (b, a))
            .collect();
        let mut rows = Vec::new();
        for s in subsets(k) {
            for m in &src_b {
                let mut row = vec![0u32; tgt_index.len()];
                for (t, &v) in s.iter().enumerate() {
                    let rest: Vec<usize> = s.iter().copied().filter(|&x| x != v).collect();
                    let img = reduce(&Polynomial::monomial(m.mul(&Monomial::var(v)), 1), &gb, f);
                    for &(mm, c) in img.terms() {
                        let c = if t % 2 == 0 { c } else { f.neg(c) };
                        let col = tgt_index[&(rest.clone(), mm)];
                        row[col] = f.add(row[col], c);
                    }
                }
                rows.push(row);
            }
        }
        if rows.is_empty() || tgt_index.is_empty() {
            return 0;
        }
        rank(rows, f)
    };
    let mut triples = Vec::new();
    for k in 1..=n {
        for j in 0..=max_j {
            let dim = subsets(k).len() * standard(j - k as i32).len();
            let tor = dim - diff_rank(k, j) - diff_rank(k + 1, j);
            if tor > 0 {
                triples.push((k - 1, j, tor));
            }
        }
    }
    BettiTable::from_triples(&triples)
}

/// Koszul pattern of a complete intersection: `β_{k-1, j}` counts `k`-subsets
/// of the degrees summing to `j`.
pub fn ci_betti(degrees: &[u32]) -> BettiTable {
    let c = degrees.len();
    let mut counts: BTreeMap<(usize, i32), usize> = BTreeMap::new();
    for s in 1u32..1 << c {
        let k = s.count_ones() as usize;
        let sum: u32 = (0..c).filter(|b| s >> b & 1 == 1).map(|b| degrees[b]).sum();
        *counts.entry((k - 1, sum as i32)).or_default() += 1;
    }
    let triples: Vec<_> = counts.into_iter().map(|((i, j), r)| (i, j, r)).collect();
    BettiTable::from_triples(&triples)
}

/// Monomial ideals as minimal lists of exponent vectors.
pub type Mono = Vec<u32>;

pub fn mono_minimize(mut gens: Vec<Mono>) -> Vec<Mono> {
    gens.sort();
    gens.dedup();
    let divides = |a: &Mono, b: &Mono| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut out: Vec<Mono> = Vec::new();
    for g in &gens {
        if !gens.iter().any(|h| h != g && divides(h, g)) {
            out.push(g.clone());
        }
    }
    out
}

pub fn mono_intersect(a: &[Mono], b: &[Mono]) -> Vec<Mono> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            out.push(x.iter().zip(y).map(|(p, q)| *p.max(q)).collect());
        }
    }
    mono_minimize(out)
}

pub fn mono_quotient(a: &[Mono], b: &[Mono]) -> Vec<Mono> {
    let n = a.first().or(b.first()).map_or(0, |v| v.len());
    let mut acc: Vec<Mono> = vec![vec![0; n]];
    for y in b {
        let q: Vec<Mono> = a
            .iter()
            .map(|x| x.iter().zip(y).map(|(p, q)| p.saturating_sub(*q)).collect())
            .collect();
        acc = mono_intersect(&acc, &mono_minimize(q));
    }
    mono_minimize(acc)
}

pub fn mono_ideal(r: RingContext, gens: &[Mono]) -> Ideal {
    let polys = gens
        .iter()
        .map(|e| Polynomial::monomial(Monomial::from_exponents(e), 1))
        .collect();
    Ideal::new(r, polys).unwrap()
}

/// Minimal monomial generators of a monomial ideal, read off its basis.
pub fn mono_gens(i: &Ideal) -> Vec<Mono> {
    let n = i.ring().num_vars();
    mono_minimize(i.groebner_basis().iter().map(|g| g.leading_monomial().unwrap().exponents(n)).collect())
}
