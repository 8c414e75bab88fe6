//! Iterated linkage: minimal-licci runs and Gorenstein double links.

use super::{
    child_seed, extends_to_minimal_generators, is_regular_sequence, minimal_link, LinkStep,
};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::io::ring_header;
use crate::linalg::Echelon;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use serde::Serialize;
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalStatus {
    CompleteIntersectionReached,
    CycleDetected,
    StepLimit,
}

impl TerminalStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::CompleteIntersectionReached => "complete_intersection_reached",
            Self::CycleDetected => "cycle_detected",
            Self::StepLimit => "step_limit",
        }
    }
}

/// Chain of linkage steps; the residual of each step is the source of the
/// next.
#[derive(Clone, Debug)]
pub struct LinkTrace {
    pub seed: u64,
    pub start: Ideal,
    pub steps: Vec<LinkStep>,
    pub terminal: TerminalStatus,
}

impl LinkTrace {
    /// The last ideal of the chain.
    pub fn end(&self) -> &Ideal {
        self.steps.last().map_or(&self.start, |s| &s.residual)
    }

    /// Number of double links (pairs of steps), rounded up.
    pub fn double_steps(&self) -> usize {
        self.steps.len().div_ceil(2)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "ring": ring_header(self.start.ring()),
            "seed": self.seed,
            "steps": self.steps.iter().map(LinkStep::to_json).collect::<Vec<_>>(),
            "terminal": self.terminal.as_str(),
        })
    }
}

/// Links minimally until a complete intersection is reached, the Betti
/// table repeats with period two, or `2 * max_double_steps` links are done.
pub fn minimal_licci_run(ideal: &Ideal, max_double_steps: usize, seed: u64) -> Result<LinkTrace> {
    let codim = ideal.codimension();
    let mut steps: Vec<LinkStep> = Vec::new();
    let mut cur = ideal.clone();
    let terminal = loop {
        if cur.mu() <= codim {
            break TerminalStatus::CompleteIntersectionReached;
        }
        let t = steps.len();
        if t >= 2 && steps[t - 1].betti_after == steps[t - 2].betti_before {
            break TerminalStatus::CycleDetected;
        }
        if t >= 2 * max_double_steps {
            break TerminalStatus::StepLimit;
        }
        let step = minimal_link(&cur, child_seed(seed, t as u64))?;
        cur = step.residual.clone();
        steps.push(step);
    };
    Ok(LinkTrace {
        seed,
        start: ideal.clone(),
        steps,
        terminal,
    })
}

/// Checks recorded for one Gorenstein double link `I -> J -> I'`.
///
/// `(f, g, h)` is the first complete intersection, `u` the extra minimal
/// generator of `J = (f, g, h) : I`, and `(u, f', g')` the second one.
#[derive(Clone, Debug, Serialize)]
pub struct GorensteinReport {
    pub first_ci: Vec<u32>,
    pub second_ci: Vec<u32>,
    pub deg_u: u32,
    pub mu_before: usize,
    pub mu_middle: usize,
    pub mu_after: usize,
    /// `deg u < deg g`.
    pub claim1: bool,
    /// `u, f` is a regular sequence.
    pub claim2: bool,
    /// `u` lies in the second complete intersection and the other two forms,
    /// moved into `(f, g, h)` modulo `u`, extend to a minimal generating set
    /// of `(f, g, h)`.
    pub claim3: bool,
    pub mu_drop_is_two: bool,
    pub residual_gorenstein: bool,
    pub degree_sum_before: u32,
    pub degree_sum_after: u32,
    pub u: String,
    pub f_prime: String,
    pub g_prime: String,
}

impl GorensteinReport {
    pub fn strict_descent(&self) -> bool {
        self.degree_sum_after < self.degree_sum_before
    }

    pub fn all_hold(&self) -> bool {
        self.claim1
            && self.claim2
            && self.claim3
            && self.mu_drop_is_two
            && self.residual_gorenstein
            && self.strict_descent()
    }
}

#[derive(Clone, Debug)]
pub struct GorensteinDoubleLink {
    pub first: LinkStep,
    pub second: LinkStep,
    pub report: GorensteinReport,
}

/// Solves `p - q·u ∈ K` for `q` and returns `p - q·u`.
fn move_into(k: &Ideal, u: &Polynomial, p: &Polynomial) -> Option<Polynomial> {
    let ring = k.ring();
    let f = ring.field();
    let (dp, du) = (p.degree()?, u.degree()?);
    if dp < du {
        return k.contains(p).then(|| p.clone());
    }
    // Value columns (1, m) dominate tag columns (0, m).
    let mut ech: Echelon<(u8, Monomial)> = Echelon::new(f);
    for m in monomials_of_degree(ring.num_vars(), dp - du) {
        let nf = k.normal_form(&u.mul_term(&m, 1, f));
        let mut row: Vec<((u8, Monomial), u32)> = nf.terms().iter().map(|&(mm, c)| ((1, mm), c)).collect();
        row.push(((0, m), 1));
        ech.insert(row);
    }
    let target: Vec<((u8, Monomial), u32)> =
        k.normal_form(p).terms().iter().map(|&(mm, c)| ((1, mm), c)).collect();
    let rem = ech.reduce(target);
    if rem.iter().any(|((tag, _), _)| *tag == 1) {
        return None;
    }
    let q = Polynomial::from_terms(rem.iter().map(|&((_, m), c)| (m, f.neg(c))).collect(), f);
    let out = p.sub(&q.mul(u, f), f);
    debug_assert!(k.contains(&out));
    Some(out)
}

/// Picks a form of degree `du` outside `K`; since `J_du = K_du + k·u`, it
/// can serve as `u`. The remaining forms are returned alongside it.
fn split_off_u(k: &Ideal, forms: &[Polynomial], du: u32) -> Option<(Polynomial, Vec<Polynomial>)> {
    let pick = (0..forms.len()).find(|&i| forms[i].degree() == Some(du) && !k.contains(&forms[i]))?;
    let rest = (0..forms.len()).filter(|&i| i != pick).map(|i| forms[i].clone()).collect();
    Some((forms[pick].clone(), rest))
}

fn diagnostics(r: &GorensteinReport) -> String {
    serde_json::to_string(r).unwrap_or_default()
}

/// Two minimal links of a codimension three Gorenstein ideal, with the
/// structural claims behind the descent checked along the way.
pub fn gorenstein_double_link(ideal: &Ideal, seed: u64) -> Result<GorensteinDoubleLink> {
    let ring = ideal.ring();
    if ideal.codimension() != 3 {
        return Err(Error::Precondition(format!(
            "codimension {} instead of 3",
            ideal.codimension()
        )));
    }
    let betti = crate::resolution::betti_table(ideal)?;
    if !betti.is_self_dual() {
        return Err(Error::Precondition("Betti table is not self-dual".into()));
    }
    if ideal.mu() <= 3 {
        return Err(Error::Precondition("already a complete intersection".into()));
    }
    let first = minimal_link(ideal, child_seed(seed, 0))?;
    let j = &first.residual;
    let cforms = first.ci.forms().to_vec();
    let k = first.ci.ideal(ring);
    let gens = j.minimal_generators_with_priority(&cforms);
    if gens.len() != 4 || gens[..3] != cforms[..] {
        return Err(Error::ClaimFailed(format!(
            "the residual has {} minimal generators, expected an almost complete intersection",
            gens.len()
        )));
    }
    let degs = first.ci.degrees().to_vec();
    let deg_u = gens[3].degree().unwrap();

    let second = minimal_link(j, child_seed(seed, 1))?;
    let (mut fp, mut gp) = (Polynomial::zero(), Polynomial::zero());
    let (u, claim3) = match split_off_u(&k, second.ci.forms(), deg_u) {
        Some((u, rest)) if rest.len() == 2 => {
            let ok = match (move_into(&k, &u, &rest[0]), move_into(&k, &u, &rest[1])) {
                (Some(a), Some(b)) => {
                    let ok = extends_to_minimal_generators(&k, &[a.clone(), b.clone()]);
                    fp = a;
                    gp = b;
                    ok
                }
                _ => false,
            };
            (u, ok)
        }
        _ => (gens[3].clone(), false),
    };
    let claim1 = deg_u < degs[1];
    let claim2 = is_regular_sequence(ring, &[u.clone(), cforms[0].clone()]);
    let residual_gorenstein = second.betti_after.is_self_dual();
    let report = GorensteinReport {
        first_ci: degs.clone(),
        second_ci: second.ci.degrees().to_vec(),
        deg_u,
        mu_before: first.mu_before,
        mu_middle: first.mu_after,
        mu_after: second.mu_after,
        claim1,
        claim2,
        claim3,
        mu_drop_is_two: second.mu_after + 2 == first.mu_before,
        residual_gorenstein,
        degree_sum_before: first.ci.degree_sum(),
        degree_sum_after: second.ci.degree_sum(),
        u: u.to_string(),
        f_prime: fp.to_string(),
        g_prime: gp.to_string(),
    };
    if !report.all_hold() {
        return Err(Error::ClaimFailed(diagnostics(&report)));
    }
    Ok(GorensteinDoubleLink {
        first,
        second,
        report,
    })
}

/// Gorenstein double links until a complete intersection is reached or
/// `max_double_steps` double links are done.
pub fn gorenstein_run(
    ideal: &Ideal,
    max_double_steps: usize,
    seed: u64,
) -> Result<(LinkTrace, Vec<GorensteinReport>)> {
    let mut steps = Vec::new();
    let mut reports = Vec::new();
    let mut cur = ideal.clone();
    let terminal = loop {
        if cur.mu() <= 3 {
            break TerminalStatus::CompleteIntersectionReached;
        }
        if reports.len() >= max_double_steps {
            break TerminalStatus::StepLimit;
        }
        let dl = gorenstein_double_link(&cur, child_seed(seed, reports.len() as u64))?;
        cur = dl.second.residual.clone();
        reports.push(dl.report);
        steps.push(dl.first);
        steps.push(dl.second);
    };
    Ok((
        LinkTrace {
            seed,
            start: ideal.clone(),
            steps,
            terminal,
        },
        reports,
    ))
}
