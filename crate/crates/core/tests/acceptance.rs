//! The ten acceptance criteria, checked against literal expected values.
//! Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

use liaison_core::liaison::*;
use liaison_core::pfaffian::{determinant, pfaffian, SkewSymmetricMatrix};
use liaison_core::resolution::{betti_table, deficiency_profile, minimal_resolution, BettiTable};
use liaison_core::scenarios::{basic_double_link_tower, line_plus_plane_curve, skew_lines, thm34_curve, Scenario, ScenarioParams};
use liaison_core::*;

const PRIMES: [u32; 2] = [32003, 31013];

type Failures = Vec<String>;

/// Everything produced along the way, for the cross-module invariants.
#[derive(Default)]
struct Seen {
    steps: Vec<LinkStep>,
    ideals: Vec<Ideal>,
    matrices: Vec<SkewSymmetricMatrix>,
}

fn table(t: &[(usize, i32, usize)]) -> BettiTable {
    BettiTable::from_triples(t)
}

fn ring(p: u32) -> RingContext {
    RingContext::new(p, 4).unwrap()
}

fn build(name: &str, params: ScenarioParams) -> Result<(Ideal, Option<SkewSymmetricMatrix>)> {
    let b = Scenario::new(name, params)?.build()?;
    Ok((b.ideal, b.matrix))
}

fn expect<T: PartialEq + std::fmt::Debug>(bad: &mut Failures, what: &str, want: T, got: T) {
    if want != got {
        bad.push(format!("{what}: expected {want:?}, got {got:?}"));
    }
}

fn record(seen: &mut Seen, t: &LinkTrace) {
    seen.ideals.push(t.start.clone());
    seen.steps.extend(t.steps.iter().cloned());
}

fn criterion_1(p: u32, seen: &mut Seen) -> Result<Failures> {
    let mut bad = Vec::new();
    let i = skew_lines(ring(p));
    expect(&mut bad, "betti", table(&[(0, 2, 4), (1, 3, 4), (2, 4, 1)]), betti_table(&i)?);
    expect(&mut bad, "degree", 2, i.degree());
    record(seen, &minimal_licci_run(&i, 3, 1)?);
    Ok(bad)
}

fn criterion_2(p: u32, seen: &mut Seen) -> Result<Failures> {
    let mut bad = Vec::new();
    let i = line_plus_plane_curve(ring(p), 4, 1)?;
    expect(&mut bad, "betti", table(&[(0, 2, 2), (0, 5, 2), (1, 3, 1), (1, 6, 3), (2, 7, 1)]), betti_table(&i)?);
    let m = deficiency_profile(&i, -4..=10)?;
    let dims: Vec<usize> = (-4..=10).map(|t| m.get(t)).collect();
    expect(&mut bad, "deficiency", vec![0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0], dims);
    expect(&mut bad, "least CI", vec![2, 5], least_ci_degrees(&i, 2)?);
    record(seen, &minimal_licci_run(&i, 3, 1)?);
    Ok(bad)
}

fn criterion_3(p: u32, seen: &mut Seen) -> Result<Failures> {
    let mut bad = Vec::new();
    let (c, c1) = thm34_curve(ring(p), 4, 4, 1)?;
    expect(&mut bad, "least CI", vec![3, 6], least_ci_degrees(&c, 2)?);
    let first = minimal_link(&c, 11)?;
    let second = minimal_link(&first.residual, 12)?;
    expect(&mut bad, "betti after two minimal links", betti_table(&c)?, betti_table(&second.residual)?);
    let t = minimal_licci_run(&c, 3, 1)?;
    expect(&mut bad, "terminal", TerminalStatus::CycleDetected, t.terminal);
    if t.double_steps() > 3 {
        bad.push(format!("cycle found after {} double steps", t.double_steps()));
    }
    let mc = deficiency_profile(&c, -2..=8)?;
    let m1 = deficiency_profile(&c1, -2..=8)?;
    expect(&mut bad, "deficiency support of C1", vec![0, 1, 2, 3], m1.support());
    let shifted: Vec<usize> = (-2..8).map(|t| m1.get(t)).collect();
    let right: Vec<usize> = (-1..=8).map(|t| mc.get(t)).collect();
    expect(&mut bad, "deficiency shifted one degree right", shifted, right);
    seen.steps.push(first);
    seen.steps.push(second);
    record(seen, &t);
    Ok(bad)
}

fn criterion_4(p: u32, seen: &mut Seen) -> Result<Failures> {
    let mut bad = Vec::new();
    let r = ring(p);
    let target = table(&[(0, 2, 4), (1, 3, 4), (2, 4, 1)]);
    for seed in 0..10u64 {
        let c = basic_double_link_tower(&skew_lines(r), (seed % 3 + 1) as usize, 5, seed)?;
        let t = minimal_licci_run(&c, 6, seed)?;
        let chain = std::iter::once(&t.start).chain(t.steps.iter().map(|s| &s.residual));
        let mut hit = None;
        for (k, i) in chain.enumerate() {
            if betti_table(i)? == target {
                hit = Some(k);
                break;
            }
        }
        match hit {
            Some(k) if k.div_ceil(2) <= 6 => {}
            other => bad.push(format!("seed {seed}: skew lines table reached at {other:?}")),
        }
        record(seen, &t);
    }
    Ok(bad)
}

fn criterion_5(p: u32, seen: &mut Seen) -> Result<Failures> {
    let mut bad = Vec::new();
    let (z, _) = build("twisted_cubic_points", ScenarioParams { n: Some(8), prime: p, ..Default::default() })?;
    expect(&mut bad, "h-vector", vec![1, 3, 3, 1], z.h_vector().coefficients.clone());
    let s = minimal_link(&z, 1)?;
    expect(&mut bad, "link type", vec![2, 2, 3], s.ci.degrees().to_vec());
    expect(&mut bad, "residual h-vector", vec![1, 2, 1], s.residual.h_vector().coefficients.clone());
    seen.steps.push(s);
    record(seen, &minimal_licci_run(&z, 4, 1)?);
    Ok(bad)
}

fn criterion_6(p: u32, seen: &mut Seen) -> Result<Failures> {
    let mut bad = Vec::new();
    let (z, _) = build("bd_ex1", ScenarioParams { prime: p, ..Default::default() })?;
    let want = table(&[(0, 2, 2), (0, 3, 2), (0, 4, 1), (1, 3, 1), (1, 4, 2), (1, 5, 2), (2, 7, 1)]);
    expect(&mut bad, "betti", want, betti_table(&z)?);
    expect(&mut bad, "h-vector", vec![1, 3, 4, 3, 1], z.h_vector().coefficients.clone());
    let t = minimal_licci_run(&z, 4, 1)?;
    let types: Vec<Vec<u32>> = t.steps.iter().map(|s| s.ci.degrees().to_vec()).collect();
    expect(&mut bad, "link types", vec![vec![2, 3, 4], vec![2, 2, 4]], types);
    expect(&mut bad, "terminal", TerminalStatus::CompleteIntersectionReached, t.terminal);
    expect(&mut bad, "terminal CI type", vec![1, 2, 2], t.end().minimal_generator_degrees());
    if let Some(s) = t.steps.first() {
        expect(&mut bad, "residual h-vector", vec![1, 3, 4, 3, 1], s.residual.h_vector().coefficients.clone());
    }
    record(seen, &t);
    Ok(bad)
}

fn criterion_7(p: u32, seen: &mut Seen) -> Result<Failures> {
    let mut bad = Vec::new();
    let (z, _) = build("bd_ex2", ScenarioParams { prime: p, ..Default::default() })?;
    let want = table(&[(0, 2, 2), (0, 6, 2), (0, 10, 1), (1, 3, 1), (1, 7, 2), (1, 11, 2), (2, 13, 1)]);
    expect(&mut bad, "betti", want, betti_table(&z)?);
    let s = minimal_link(&z, 1)?;
    expect(&mut bad, "link type", vec![2, 6, 10], s.ci.degrees().to_vec());
    let res = table(&[
        (0, 2, 1),
        (0, 5, 1),
        (0, 6, 1),
        (0, 10, 1),
        (1, 7, 2),
        (1, 11, 2),
        (1, 15, 1),
        (2, 12, 1),
        (2, 16, 1),
    ]);
    expect(&mut bad, "residual betti", res, betti_table(&s.residual)?);
    let g = gorenstein_double_link(&z, 1)?;
    expect(&mut bad, "(deg u, deg f)", (5, 2), (g.report.deg_u, g.report.first_ci[0]));
    seen.steps.extend([s, g.first, g.second]);
    seen.ideals.push(z);
    Ok(bad)
}

fn criterion_8(p: u32, seen: &mut Seen) -> Result<Failures> {
    let mut bad = Vec::new();
    let params = ScenarioParams { s: Some(7), e: Some(1), prime: p, ..Default::default() };
    let (i, m) = build("be_generic", params)?;
    expect(&mut bad, "betti", table(&[(0, 3, 7), (1, 4, 7), (2, 7, 1)]), betti_table(&i)?);
    let first = minimal_link(&i, 1)?;
    expect(&mut bad, "first link type", vec![3, 3, 3], first.ci.degrees().to_vec());
    let j = first.residual.clone();
    expect(&mut bad, "residual generator degrees", vec![2, 3, 3, 3], j.minimal_generator_degrees());
    let cubic = sample_ci(&j, &[3, 3, 3], 2)?;
    let back = link(&j, &cubic)?;
    expect(&mut bad, "mu after cubic second link", 7, back.residual.mu());
    let minimal = minimal_link(&j, 3)?;
    expect(&mut bad, "mu after minimal second link", 5, minimal.residual.mu());
    seen.steps.extend([first, back, minimal]);
    seen.ideals.push(i);
    seen.matrices.extend(m);
    Ok(bad)
}

fn criterion_9(p: u32, seen: &mut Seen) -> Result<Failures> {
    let mut bad = Vec::new();
    let mut count = 0;
    for s in [5u32, 7] {
        for e in [1u32, 2] {
            for seed in 1..=5u64 {
                let params = ScenarioParams { s: Some(s), e: Some(e), seed, prime: p, ..Default::default() };
                let (i, m) = build("be_generic", params)?;
                let tag = format!("s={s} e={e} seed={seed}");
                expect(&mut bad, &format!("{tag} codim"), 3, i.codimension());
                let mu0 = i.mu();
                let (trace, reports) = gorenstein_run(&i, 8, seed)?;
                expect(&mut bad, &format!("{tag} double links"), (mu0 - 3) / 2, reports.len());
                for g in &reports {
                    expect(&mut bad, &format!("{tag} mu drop"), g.mu_before - 2, g.mu_after);
                    if !(g.claim1 && g.claim2 && g.degree_sum_after < g.degree_sum_before) {
                        bad.push(format!("{tag}: {}", serde_json::to_string(g).unwrap_or_default()));
                    }
                }
                let t = minimal_licci_run(&i, 8, seed)?;
                expect(&mut bad, &format!("{tag} terminal"), TerminalStatus::CompleteIntersectionReached, t.terminal);
                expect(&mut bad, &format!("{tag} double steps"), (mu0 - 3) / 2, t.double_steps());
                record(seen, &trace);
                record(seen, &t);
                seen.matrices.extend(m);
                count += 1;
            }
        }
    }
    expect(&mut bad, "matrices", 20, count);
    Ok(bad)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|b| s >> b & 1 == 1).collect())
        .collect()
}

fn criterion_10(seen: &Seen) -> Result<Failures> {
    let mut bad = Vec::new();
    let mut ideals: Vec<&Ideal> = seen.ideals.iter().collect();
    for s in &seen.steps {
        if s.ci.ideal(s.source.ring()).quotient(&s.residual) != s.source {
            bad.push(format!("involution fails for link {:?}", s.ci.degrees()));
        }
        if s.source.degree() + s.residual.degree() != s.ci.degrees().iter().map(|&d| d as i64).product::<i64>() {
            bad.push(format!("degrees do not add up for link {:?}", s.ci.degrees()));
        }
        ideals.push(&s.residual);
    }
    for i in ideals {
        let (_, b) = minimal_resolution(i)?;
        let mut k = b.k_polynomial();
        let mut h = i.hilbert_numerator().to_vec();
        for v in [&mut k, &mut h] {
            while v.last() == Some(&0) {
                v.pop();
            }
        }
        if k != h {
            bad.push(format!("K-polynomial {k:?} differs from Hilbert numerator {h:?}"));
        }
    }
    for m in &seen.matrices {
        let f = m.ring().field();
        for even in (2..m.size()).step_by(2) {
            for keep in subsets(m.size(), even) {
                let sub = m.principal_submatrix(&keep);
                let pf = pfaffian(&sub, f)?;
                if pf.mul(&pf, f) != determinant(&sub, f) {
                    bad.push(format!("pf^2 != det on rows {keep:?}"));
                }
            }
        }
    }
    Ok(bad)
}

type Criterion = fn(u32, &mut Seen) -> Result<Failures>;

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("skew lines: Betti table and degree", criterion_1),
        ("line plus plane quartic: Betti table, deficiency, least CI", criterion_2),
        ("double link of the line plus quartic is never minimal", criterion_3),
        ("basic double links of skew lines return to skew lines", criterion_4),
        ("eight points on a twisted cubic", criterion_5),
        ("Gorenstein points of degree 12", criterion_6),
        ("Gorenstein points of degree 45", criterion_7),
        ("generic 7x7 linear Pfaffians and cubic negative control", criterion_8),
        ("Gorenstein double link property suite", criterion_9),
    ];
    let mut seen = Seen::default();
    let mut lines = Vec::new();
    for (k, (title, run)) in criteria.iter().enumerate() {
        let mut bad = Vec::new();
        for p in PRIMES {
            match run(p, &mut seen) {
                Ok(b) => bad.extend(b.into_iter().map(|m| format!("p={p} {m}"))),
                Err(e) => bad.push(format!("p={p} error: {e}")),
            }
        }
        lines.push((k + 1, *title, bad));
    }
    let bad = criterion_10(&seen).unwrap_or_else(|e| vec![format!("error: {e}")]);
    lines.push((10, "cross-module invariants", bad));
    let mut all = true;
    for (id, title, bad) in &lines {
        if bad.is_empty() {
            println!("criterion {id:>2}: PASS  {title}");
        } else {
            all = false;
            println!("criterion {id:>2}: FAIL  {title}");
            for m in bad {
                println!("    {m}");
            }
        }
    }
    let passed = lines.iter().filter(|l| l.2.is_empty()).count();
    println!("{passed}/{} criteria pass", lines.len());
    if !all {
        std::process::exit(1);
    }
}
