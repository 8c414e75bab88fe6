//! Schreyer's algorithm: the syzygies of a Groebner basis form a Groebner
//! basis for the induced order, so a whole (non-minimal) resolution comes
//! from S-vector reductions alone.

use super::{FreeResolution, GradedFreeModule, GradedMap};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use std::cmp::Ordering;

/// A term `coeff * mon * e_comp`; `total` is `mon` times the image monomial
/// of `e_comp` in `R` and drives the induced order.
#[derive(Clone, Copy, Debug)]
struct STerm {
    total: Monomial,
    comp: u32,
    mon: Monomial,
    coeff: u32,
}

/// Induced order: total monomial first, then the smaller index wins.
#[inline]
fn cmp_terms(a: &STerm, b: &STerm) -> Ordering {
    a.total
        .cmp_grevlex(&b.total)
        .then_with(|| b.comp.cmp(&a.comp))
}

type SVec = Vec<STerm>;

/// `a - c * q * b`, both sorted decreasing.
fn sub_mul(a: &SVec, c: u32, q: &Monomial, b: &SVec, f: PrimeField) -> SVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let m = f.neg(c);
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let bj = (j < b.len()).then(|| STerm {
            total: b[j].total.mul(q),
            comp: b[j].comp,
            mon: b[j].mon.mul(q),
            coeff: f.mul(m, b[j].coeff),
        });
        match (i < a.len(), bj) {
            (true, None) => {
                out.push(a[i]);
                i += 1;
            }
            (false, Some(t)) => {
                out.push(t);
                j += 1;
            }
            (true, Some(t)) => match cmp_terms(&a[i], &t) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(t);
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a[i].coeff, t.coeff);
                    if v != 0 {
                        out.push(STerm { coeff: v, ..a[i] });
                    }
                    i += 1;
                    j += 1;
                }
            },
            (false, None) => unreachable!(),
        }
    }
    out
}

struct Level {
    elems: Vec<SVec>,
}

impl Level {
    fn lead(&self, a: usize) -> &STerm {
        &self.elems[a][0]
    }
}

fn sort_level(elems: &mut [SVec], var: usize) {
    elems.sort_by(|a, b| {
        a[0].comp
            .cmp(&b[0].comp)
            .then_with(|| b[0].mon.exponent(var).cmp(&a[0].mon.exponent(var)))
    });
}

/// Syzygies of the elements of `lvl`, as elements of the next level.
fn next_level(lvl: &Level, f: PrimeField) -> Vec<SVec> {
    let r = lvl.elems.len();
    let mut by_comp: std::collections::HashMap<u32, Vec<usize>> = Default::default();
    for a in 0..r {
        by_comp.entry(lvl.lead(a).comp).or_default().push(a);
    }
    let mut out = Vec::new();
    for a in 0..r {
        let la = *lvl.lead(a);
        let mut cands: Vec<(Monomial, usize)> = by_comp[&la.comp]
            .iter()
            .copied()
            .filter(|&b| b > a)
            .map(|b| (la.mon.lcm(&lvl.lead(b).mon).div_exact(&la.mon), b))
            .collect();
        cands.sort_by(|x, y| x.0.degree().cmp(&y.0.degree()).then(x.1.cmp(&y.1)));
        let mut chosen: Vec<(Monomial, usize)> = Vec::new();
        for (q, b) in cands {
            if !chosen.iter().any(|(m, _)| m.divides(&q)) {
                chosen.push((q, b));
            }
        }
        for (q, b) in chosen {
            let lb = *lvl.lead(b);
            let qb = la.mon.mul(&q).div_exact(&lb.mon);
            let mut sigma: SVec = vec![
                STerm {
                    total: la.total.mul(&q),
                    comp: a as u32,
                    mon: q,
                    coeff: 1,
                },
                STerm {
                    total: lb.total.mul(&qb),
                    comp: b as u32,
                    mon: qb,
                    coeff: f.neg(1),
                },
            ];
            let mut s = sub_mul(
                &lvl.elems[a].iter().map(|t| STerm { total: t.total.mul(&q), mon: t.mon.mul(&q), ..*t }).collect(),
                1,
                &qb,
                &lvl.elems[b],
                f,
            );
            while let Some(&lt) = s.first() {
                let j = by_comp
                    .get(&lt.comp)
                    .and_then(|v| v.iter().copied().find(|&j| lvl.lead(j).mon.divides(&lt.mon)))
                    .expect("Schreyer S-vector reduces to zero");
                let qj = lt.mon.div_exact(&lvl.lead(j).mon);
                sigma.push(STerm {
                    total: lvl.lead(j).total.mul(&qj),
                    comp: j as u32,
                    mon: qj,
                    coeff: f.neg(lt.coeff),
                });
                s = sub_mul(&s, lt.coeff, &qj, &lvl.elems[j], f);
            }
            sigma.sort_by(|x, y| cmp_terms(y, x));
            let mut merged: SVec = Vec::with_capacity(sigma.len());
            for t in sigma {
                match merged.last_mut() {
                    Some(l) if l.comp == t.comp && l.mon == t.mon => l.coeff = f.add(l.coeff, t.coeff),
                    _ => merged.push(t),
                }
            }
            merged.retain(|t| t.coeff != 0);
            debug_assert!(merged[0].comp == a as u32 && merged[0].mon == q);
            out.push(merged);
        }
    }
    out
}

fn to_map(elems: &[SVec], target: &GradedFreeModule) -> GradedMap {
    let f_twists: Vec<i32> = elems.iter().map(|e| e[0].total.degree() as i32).collect();
    let mut entries = vec![vec![Vec::new(); elems.len()]; target.rank()];
    for (j, e) in elems.iter().enumerate() {
        for t in e {
            entries[t.comp as usize][j].push((t.mon, t.coeff));
        }
    }
    GradedMap {
        source: GradedFreeModule::new(f_twists),
        target: target.clone(),
        entries: entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(Polynomial::from_sorted_unchecked)
                    .collect()
            })
            .collect(),
    }
}

/// A (usually non-minimal) free resolution of `R/I`.
pub fn free_resolution(ideal: &Ideal) -> Result<FreeResolution> {
    let ring = ideal.ring();
    let f = ring.field();
    let n = ring.num_vars();
    let mut modules = vec![GradedFreeModule::new(vec![0])];
    let mut maps = Vec::new();
    let mut elems: Vec<SVec> = ideal
        .groebner_basis()
        .iter()
        .map(|g| {
            g.terms()
                .iter()
                .map(|&(m, c)| STerm { total: m, comp: 0, mon: m, coeff: c })
                .collect()
        })
        .collect();
    let mut level = 1;
    while !elems.is_empty() {
        if level > n {
            return Err(Error::UnexpectedResolutionLength(level));
        }
        sort_level(&mut elems, level - 1);
        let map = to_map(&elems, modules.last().unwrap());
        modules.push(map.source.clone());
        maps.push(map);
        let lvl = Level { elems };
        elems = next_level(&lvl, f);
        level += 1;
    }
    Ok(FreeResolution {
        ring,
        modules,
        maps,
        minimal: false,
    })
}
