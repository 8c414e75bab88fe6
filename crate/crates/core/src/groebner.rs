//! Homogeneous Groebner bases for submodules of graded free modules.
//!
//! One engine serves ideals (a single component), colon ideals,
//! intersections and syzygy modules. Work proceeds degree by degree: all
//! S-pairs of the lowest degree are turned into rows of a sparse matrix,
//! reducers are gathered by symbolic preprocessing and the block is reduced
//! with a dense accumulator (F4 style).

use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

/// A term `mon * e_comp` of a free module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: u32,
    pub mon: Monomial,
}

impl Term {
    pub fn new(comp: u32, mon: Monomial) -> Self {
        Self { comp, mon }
    }
}

/// Sparse module element, terms strictly decreasing in the module order.
pub type Vector = Vec<(Term, u32)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    /// Graded degree first, then grevlex, then position.
    TermOverPosition,
    /// Position first (component 0 is largest), then grevlex.
    PositionOverTerm,
}

/// Module term order together with the twists of the basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    kind: OrderKind,
    twists: Vec<i32>,
}

impl ModuleOrder {
    pub fn top(twists: Vec<i32>) -> Self {
        Self {
            kind: OrderKind::TermOverPosition,
            twists,
        }
    }

    pub fn pot(twists: Vec<i32>) -> Self {
        Self {
            kind: OrderKind::PositionOverTerm,
            twists,
        }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    #[inline]
    pub fn grading(&self, t: &Term) -> i32 {
        t.mon.degree() as i32 + self.twists[t.comp as usize]
    }

    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        match self.kind {
            OrderKind::TermOverPosition => self
                .grading(a)
                .cmp(&self.grading(b))
                .then_with(|| a.mon.cmp_grevlex(&b.mon))
                .then_with(|| b.comp.cmp(&a.comp)),
            OrderKind::PositionOverTerm => b
                .comp
                .cmp(&a.comp)
                .then_with(|| a.mon.cmp_grevlex(&b.mon)),
        }
    }

    /// Sorts, merges equal terms and drops zero coefficients.
    pub fn normalize(&self, mut v: Vector, field: PrimeField) -> Vector {
        v.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vector = Vec::with_capacity(v.len());
        for (t, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == t => last.1 = field.add(last.1, c),
                _ => out.push((t, c)),
            }
        }
        out.retain(|x| x.1 != 0);
        out
    }

    /// Grading of a homogeneous vector, `None` for zero or inhomogeneous input.
    pub fn vector_grading(&self, v: &Vector) -> Option<i32> {
        let g = self.grading(&v.first()?.0);
        v.iter().all(|(t, _)| self.grading(t) == g).then_some(g)
    }
}

/// Embeds a polynomial in component `comp`.
pub fn embed(p: &Polynomial, comp: u32) -> Vector {
    p.terms()
        .iter()
        .map(|&(m, c)| (Term::new(comp, m), c))
        .collect()
}

/// Collects the terms of component `comp` into a polynomial.
pub fn extract(v: &Vector, comp: u32, field: PrimeField) -> Polynomial {
    Polynomial::from_terms(
        v.iter()
            .filter(|(t, _)| t.comp == comp)
            .map(|&(t, c)| (t.mon, c))
            .collect(),
        field,
    )
}

fn mul_vector(v: &Vector, m: &Monomial, field: PrimeField, c: u32) -> Vector {
    v.iter()
        .map(|&(t, a)| (Term::new(t.comp, t.mon.mul(m)), field.mul(a, c)))
        .collect()
}

fn make_monic(v: &mut Vector, field: PrimeField) {
    if let Some(&(_, lc)) = v.first() {
        if lc != 1 {
            let inv = field.inv(lc);
            for e in v.iter_mut() {
                e.1 = field.mul(e.1, inv);
            }
        }
    }
}

/// Lead-term lookup over a family of monic vectors.
struct Divisors<'a> {
    elems: &'a [Vector],
    by_comp: HashMap<u32, Vec<usize>>,
}

impl<'a> Divisors<'a> {
    fn new(elems: &'a [Vector], indices: impl Iterator<Item = usize>) -> Self {
        let mut by_comp: HashMap<u32, Vec<usize>> = HashMap::new();
        for i in indices {
            by_comp.entry(elems[i][0].0.comp).or_default().push(i);
        }
        Self { elems, by_comp }
    }

    fn find(&self, t: &Term) -> Option<usize> {
        self.by_comp
            .get(&t.comp)?
            .iter()
            .copied()
            .find(|&i| self.elems[i][0].0.mon.divides(&t.mon))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Rows are reduced in turn; each nonzero result becomes a pivot.
    Echelon,
    /// Rows keep their (distinct, monic) leads and get their tails reduced.
    Tail,
    /// Every row is reduced to its normal form independently.
    Independent,
}

#[derive(Clone, Copy)]
enum PivotRef {
    Row(usize),
    Todo(usize),
}

/// Reduces `todo` against the multiples of `divs`, the `fixed` rows and
/// (depending on `mode`) each other.
fn block_reduce(
    order: &ModuleOrder,
    field: PrimeField,
    divs: &Divisors<'_>,
    fixed: Vec<Vector>,
    todo: Vec<Vector>,
    mode: Mode,
) -> Vec<Option<Vector>> {
    let mut rows: Vec<Vector> = fixed;
    let mut pivot_of: HashMap<Term, PivotRef> = HashMap::new();
    for (k, r) in rows.iter().enumerate() {
        pivot_of.insert(r[0].0, PivotRef::Row(k));
    }
    if mode == Mode::Tail {
        for (k, r) in todo.iter().enumerate() {
            pivot_of.insert(r[0].0, PivotRef::Todo(k));
        }
    }

    let mut seen: HashSet<Term> = HashSet::new();
    let mut stack: Vec<Term> = Vec::new();
    for r in rows.iter().chain(todo.iter()) {
        for (t, _) in r {
            if seen.insert(*t) {
                stack.push(*t);
            }
        }
    }
    while let Some(t) = stack.pop() {
        if pivot_of.contains_key(&t) {
            continue;
        }
        if let Some(i) = divs.find(&t) {
            let g = &divs.elems[i];
            let q = t.mon.div_exact(&g[0].0.mon);
            let row = mul_vector(g, &q, field, 1);
            for (s, _) in &row {
                if seen.insert(*s) {
                    stack.push(*s);
                }
            }
            pivot_of.insert(t, PivotRef::Row(rows.len()));
            rows.push(row);
        }
    }

    let mut cols: Vec<Term> = seen.into_iter().collect();
    cols.sort_by(|a, b| order.cmp(b, a));
    let col_of: HashMap<Term, u32> = cols
        .iter()
        .enumerate()
        .map(|(i, t)| (*t, i as u32))
        .collect();
    let ncols = cols.len();
    let convert = |v: &Vector| -> Vec<(u32, u32)> { v.iter().map(|(t, c)| (col_of[t], *c)).collect() };

    let mut arena: Vec<Vec<(u32, u32)>> = rows.iter().map(convert).collect();
    let todo_rows: Vec<Vec<(u32, u32)>> = todo.iter().map(convert).collect();
    let mut pivot: Vec<u32> = vec![u32::MAX; ncols];
    let mut todo_arena_slot: Vec<usize> = vec![usize::MAX; todo.len()];
    for (t, r) in &pivot_of {
        let c = col_of[t] as usize;
        match *r {
            PivotRef::Row(k) => pivot[c] = k as u32,
            PivotRef::Todo(k) => {
                todo_arena_slot[k] = arena.len();
                pivot[c] = arena.len() as u32;
                arena.push(todo_rows[k].clone());
            }
        }
    }
    drop(rows);

    let p = field.characteristic() as u64;
    let p2 = p * p;
    let mut acc = vec![0u64; ncols];
    let mut out = Vec::with_capacity(todo.len());
    for (k, row) in todo_rows.iter().enumerate() {
        if row.is_empty() {
            out.push(None);
            continue;
        }
        for &(c, v) in row {
            acc[c as usize] = v as u64;
        }
        let mut res: Vec<(u32, u32)> = Vec::new();
        let mut start = row[0].0 as usize;
        if mode == Mode::Tail {
            res.push(row[0]);
            acc[start] = 0;
            start += 1;
        }
        for c in start..ncols {
            let a = acc[c];
            if a == 0 {
                continue;
            }
            acc[c] = 0;
            let v = (a % p) as u32;
            if v == 0 {
                continue;
            }
            let pr = pivot[c];
            if pr != u32::MAX {
                let m = p - v as u64;
                for &(cc, cv) in &arena[pr as usize][1..] {
                    let x = acc[cc as usize] + m * cv as u64;
                    acc[cc as usize] = if x >= p2 { x - p2 } else { x };
                }
            } else {
                res.push((c as u32, v));
            }
        }
        if res.is_empty() {
            out.push(None);
            continue;
        }
        match mode {
            Mode::Echelon => {
                let inv = field.inv(res[0].1);
                for e in res.iter_mut() {
                    e.1 = field.mul(e.1, inv);
                }
                pivot[res[0].0 as usize] = arena.len() as u32;
                arena.push(res.clone());
            }
            Mode::Tail => arena[todo_arena_slot[k]] = res.clone(),
            Mode::Independent => {}
        }
        out.push(Some(
            res.into_iter().map(|(c, v)| (cols[c as usize], v)).collect(),
        ));
    }
    out
}

/// Reduced Groebner basis plus the indices of inputs that were needed as
/// generators (a minimal generating subset, chosen greedily in input order
/// within each degree).
#[derive(Clone, Debug)]
pub struct GbOutput {
    pub basis: Vec<Vector>,
    pub minimal_inputs: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
    deg: i32,
}

struct Engine<'a> {
    order: &'a ModuleOrder,
    basis: Vec<Vector>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    product_criterion: bool,
}

impl<'a> Engine<'a> {
    fn lead(&self, i: usize) -> Term {
        self.basis[i][0].0
    }

    /// Gebauer-Moeller installation of a new basis element.
    fn update(&mut self, h: usize) {
        let lh = self.lead(h);
        let cand: Vec<(usize, Monomial)> = (0..self.basis.len())
            .filter(|&g| g != h && self.active[g] && self.lead(g).comp == lh.comp)
            .map(|g| (g, lh.mon.lcm(&self.lead(g).mon)))
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (k, &(g, l)) in cand.iter().enumerate() {
            let coprime = self.product_criterion && lh.mon.is_coprime(&self.lead(g).mon);
            if coprime
                || !(cand[k + 1..].iter().any(|(_, l2)| l2.divides(&l))
                    || kept.iter().any(|(_, l2, _)| l2.divides(&l)))
            {
                kept.push((g, l, coprime));
            }
        }
        let leads: Vec<Term> = (0..self.basis.len()).map(|i| self.lead(i)).collect();
        self.pairs.retain(|p| {
            if p.lcm.comp != lh.comp || !lh.mon.divides(&p.lcm.mon) {
                return true;
            }
            let li = lh.mon.lcm(&leads[p.i].mon);
            let lj = lh.mon.lcm(&leads[p.j].mon);
            li == p.lcm.mon || lj == p.lcm.mon
        });
        for (g, l, coprime) in kept {
            if coprime {
                continue;
            }
            let t = Term::new(lh.comp, l);
            self.pairs.push(Pair {
                i: g.min(h),
                j: g.max(h),
                lcm: t,
                deg: self.order.grading(&t),
            });
        }
        for g in 0..self.basis.len() {
            if g != h && self.active[g] && leads[g].comp == lh.comp && lh.mon.divides(&leads[g].mon) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }
}

/// Computes a reduced Groebner basis of the submodule generated by
/// homogeneous `inputs`.
///
/// Panics if an input is not homogeneous for the grading of `order`.
pub fn module_groebner(inputs: &[Vector], order: &ModuleOrder, field: PrimeField) -> GbOutput {
    module_groebner_truncated(inputs, order, field, None)
}

/// As [`module_groebner`], stopping after degree `max_degree` when given.
pub fn module_groebner_truncated(
    inputs: &[Vector],
    order: &ModuleOrder,
    field: PrimeField,
    max_degree: Option<i32>,
) -> GbOutput {
    let normalized: Vec<Vector> = inputs
        .iter()
        .map(|v| order.normalize(v.clone(), field))
        .collect();
    let mut pending: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (k, v) in normalized.iter().enumerate() {
        if v.is_empty() {
            continue;
        }
        let g = order
            .vector_grading(v)
            .expect("module_groebner requires homogeneous input");
        pending.entry(g).or_default().push(k);
    }
    let mut eng = Engine {
        order,
        basis: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        product_criterion: order.rank() == 1,
    };
    let mut minimal_inputs = Vec::new();

    loop {
        let dp = eng.pairs.iter().map(|p| p.deg).min();
        let di = pending.keys().next().copied();
        let d = match (dp, di) {
            (None, None) => break,
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        if max_degree.is_some_and(|m| d > m) {
            break;
        }
        let mut selected = Vec::new();
        eng.pairs.retain(|p| {
            if p.deg == d {
                selected.push(*p);
                false
            } else {
                true
            }
        });
        let mut groups: HashMap<Term, Vec<usize>> = HashMap::new();
        for p in &selected {
            let e = groups.entry(p.lcm).or_default();
            e.push(p.i);
            e.push(p.j);
        }
        let mut groups: Vec<(Term, Vec<usize>)> = groups.into_iter().collect();
        groups.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut fixed = Vec::new();
        let mut todo = Vec::new();
        let mut todo_input: Vec<Option<usize>> = Vec::new();
        for (l, mut elems) in groups {
            elems.sort_unstable();
            elems.dedup();
            for (k, &e) in elems.iter().enumerate() {
                let q = l.mon.div_exact(&eng.lead(e).mon);
                let row = mul_vector(&eng.basis[e], &q, field, 1);
                if k == 0 {
                    fixed.push(row);
                } else {
                    todo.push(row);
                    todo_input.push(None);
                }
            }
        }
        if di == Some(d) {
            for k in pending.remove(&d).unwrap() {
                todo.push(normalized[k].clone());
                todo_input.push(Some(k));
            }
        }
        let results = {
            let divs = Divisors::new(&eng.basis, (0..eng.basis.len()).filter(|&i| eng.active[i]));
            block_reduce(order, field, &divs, fixed, todo, Mode::Echelon)
        };
        for (r, tag) in results.into_iter().zip(todo_input) {
            if let Some(mut v) = r {
                if let Some(k) = tag {
                    minimal_inputs.push(k);
                }
                make_monic(&mut v, field);
                eng.basis.push(v);
                eng.active.push(false);
                let h = eng.basis.len() - 1;
                eng.update(h);
            }
        }
    }

    let mut act: Vec<usize> = (0..eng.basis.len()).filter(|&i| eng.active[i]).collect();
    act.sort_by_key(|&i| order.grading(&eng.lead(i)));
    let mut reduced: Vec<Vector> = Vec::with_capacity(act.len());
    let mut k = 0;
    while k < act.len() {
        let g = order.grading(&eng.lead(act[k]));
        let mut end = k;
        while end < act.len() && order.grading(&eng.lead(act[end])) == g {
            end += 1;
        }
        let rows: Vec<Vector> = act[k..end].iter().map(|&i| eng.basis[i].clone()).collect();
        let done = {
            let divs = Divisors::new(&reduced, 0..reduced.len());
            block_reduce(order, field, &divs, Vec::new(), rows, Mode::Tail)
        };
        reduced.extend(done.into_iter().map(|r| r.expect("tail reduction keeps the lead")));
        k = end;
    }
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    minimal_inputs.sort_unstable();
    GbOutput {
        basis: reduced,
        minimal_inputs,
    }
}

/// Normal forms of `rows` modulo a Groebner basis (monic elements).
pub fn normal_forms(order: &ModuleOrder, field: PrimeField, gb: &[Vector], rows: Vec<Vector>) -> Vec<Vector> {
    let rows: Vec<Vector> = rows.into_iter().map(|r| order.normalize(r, field)).collect();
    let divs = Divisors::new(gb, 0..gb.len());
    block_reduce(order, field, &divs, Vec::new(), rows, Mode::Independent)
        .into_iter()
        .map(Option::unwrap_or_default)
        .collect()
}

/// For monic rows with pairwise distinct leads, reduces every non-leading
/// term modulo `gb` and modulo the other rows.
pub fn tail_reduce(order: &ModuleOrder, field: PrimeField, gb: &[Vector], rows: Vec<Vector>) -> Vec<Vector> {
    let divs = Divisors::new(gb, 0..gb.len());
    block_reduce(order, field, &divs, Vec::new(), rows, Mode::Tail)
        .into_iter()
        .map(|r| r.expect("tail reduction keeps the lead"))
        .collect()
}

/// Reduced Groebner basis of an ideal, as polynomials sorted by increasing
/// leading monomial, together with the indices of a minimal generating
/// subset of `gens`.
pub fn ideal_groebner(gens: &[Polynomial], field: PrimeField) -> (Vec<Polynomial>, Vec<usize>) {
    let order = ModuleOrder::top(vec![0]);
    let inputs: Vec<Vector> = gens.iter().map(|g| embed(g, 0)).collect();
    let out = module_groebner(&inputs, &order, field);
    let basis = out
        .basis
        .iter()
        .map(|v| Polynomial::from_sorted_unchecked(v.iter().map(|&(t, c)| (t.mon, c)).collect()))
        .collect();
    (basis, out.minimal_inputs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn p(terms: &[(i64, &[u32])]) -> Polynomial {
        let f = f();
        Polynomial::from_terms(
            terms
                .iter()
                .map(|(c, e)| (Monomial::from_exponents(e), f.from_i64(*c)))
                .collect(),
            f,
        )
    }

    #[test]
    fn small_reduced_basis() {
        let g1 = p(&[(1, &[2, 0])]);
        let g2 = p(&[(1, &[1, 1]), (1, &[0, 2])]);
        let (gb, min) = ideal_groebner(&[g1.clone(), g2.clone()], f());
        assert_eq!(gb, vec![g2, g1, p(&[(1, &[0, 3])])]);
        assert_eq!(min, vec![0, 1]);
    }

    #[test]
    fn redundant_inputs_are_not_minimal() {
        let x = p(&[(1, &[1, 0])]);
        let x2 = p(&[(1, &[2, 0])]);
        let (gb, min) = ideal_groebner(&[x.clone(), x.clone(), x2], f());
        assert_eq!(gb, vec![x]);
        assert_eq!(min, vec![0]);
    }

    #[test]
    fn pot_colon_extracts_quotient() {
        // (x0*x1) : x1 = (x0)
        let f = f();
        let order = ModuleOrder::pot(vec![0, 1]);
        let a = embed(&p(&[(1, &[1, 1])]), 0);
        let mut b = embed(&p(&[(1, &[0, 1])]), 0);
        b.push((Term::new(1, Monomial::one()), 1));
        let out = module_groebner(&[a, b], &order, f);
        let q: Vec<Polynomial> = out
            .basis
            .iter()
            .filter(|v| v[0].0.comp == 1)
            .map(|v| extract(v, 1, f))
            .collect();
        assert_eq!(q, vec![p(&[(1, &[1, 0])])]);
    }
}
