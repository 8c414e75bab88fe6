//! Minimization by cancelling unit entries.

use super::{BettiTable, FreeResolution, GradedFreeModule, GradedMap};
use crate::field::PrimeField;
use crate::poly::Polynomial;

fn find_unit(m: &GradedMap) -> Option<(usize, usize)> {
    for (i, row) in m.entries.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if e.is_unit() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Splits off `R(-a) -> R(-a)` given by the unit entry `(r, c)` of
/// `maps[k]`.
fn cancel(maps: &mut [GradedMap], k: usize, r: usize, c: usize, f: PrimeField) {
    let d = &mut maps[k];
    let u = d.entries[r][c].leading_coefficient().unwrap();
    let u_inv = f.inv(u);
    let col: Vec<Polynomial> = d.entries.iter().map(|row| row[c].clone()).collect();
    let row_r: Vec<Polynomial> = d.entries[r].iter().map(|e| e.scale(u_inv, f)).collect();
    for (i, ci) in col.iter().enumerate() {
        if i == r || ci.is_zero() {
            continue;
        }
        for (j, rj) in row_r.iter().enumerate() {
            if j == c || rj.is_zero() {
                continue;
            }
            let cell = &mut d.entries[i][j];
            *cell = cell.sub(&ci.mul(rj, f), f);
        }
    }
    d.entries.remove(r);
    for row in d.entries.iter_mut() {
        row.remove(c);
    }
    d.target.twists.remove(r);
    d.source.twists.remove(c);
    if k + 1 < maps.len() {
        let next = &mut maps[k + 1];
        next.entries.remove(c);
        next.target.twists.remove(c);
    }
    if k >= 1 {
        let prev = &mut maps[k - 1];
        for row in prev.entries.iter_mut() {
            row.remove(r);
        }
        prev.source.twists.remove(r);
    }
}

fn permutation_by_twist(m: &GradedFreeModule) -> Vec<usize> {
    let mut p: Vec<usize> = (0..m.rank()).collect();
    p.sort_by_key(|&i| m.twists[i]);
    p
}

/// Minimal resolution obtained by repeatedly splitting off unit entries,
/// with the twists of every module sorted, and its Betti table.
pub fn minimize(res: &FreeResolution) -> (FreeResolution, BettiTable) {
    let f = res.ring.field();
    let mut maps = res.maps.clone();
    loop {
        let hit = (1..maps.len()).find_map(|k| find_unit(&maps[k]).map(|(r, c)| (k, r, c)));
        match hit {
            Some((k, r, c)) => cancel(&mut maps, k, r, c, f),
            None => break,
        }
    }
    while maps.last().is_some_and(|m| m.source.rank() == 0) {
        maps.pop();
    }
    for k in 0..maps.len() {
        let perm = permutation_by_twist(&maps[k].source);
        let m = &mut maps[k];
        m.source.twists = perm.iter().map(|&j| m.source.twists[j]).collect();
        for row in m.entries.iter_mut() {
            *row = perm.iter().map(|&j| row[j].clone()).collect();
        }
        if k + 1 < maps.len() {
            let next = &mut maps[k + 1];
            next.target.twists = perm.iter().map(|&j| next.target.twists[j]).collect();
            next.entries = perm.iter().map(|&j| next.entries[j].clone()).collect();
        }
    }
    let mut modules = vec![res.modules[0].clone()];
    modules.extend(maps.iter().map(|m| m.source.clone()));
    let out = FreeResolution {
        ring: res.ring,
        modules,
        maps,
        minimal: true,
    };
    let betti = out.betti_table();
    (out, betti)
}
