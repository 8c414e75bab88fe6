use liaison_core::io::parse_polynomial;
use liaison_core::liaison::*;
use liaison_core::pfaffian::{buchsbaum_eisenbud_ideal, random_be_matrix, DegreePattern};
use liaison_core::resolution::betti_table;
use liaison_core::scenarios::*;
use liaison_core::*;
use proptest::prelude::*;

fn ring() -> RingContext {
    RingContext::new(32003, 4).unwrap()
}

fn poly(r: RingContext, s: &str) -> Polynomial {
    parse_polynomial(s, r).unwrap()
}

fn build(name: &str) -> Ideal {
    Scenario::new(name, ScenarioParams::default()).unwrap().build().unwrap().ideal
}

#[test]
fn least_complete_intersection_degrees() {
    let r = ring();
    assert_eq!(least_ci_degrees(&skew_lines(r), 2).unwrap(), [2, 2]);
    assert_eq!(least_ci_degrees(&line_plus_plane_curve(r, 4, 1).unwrap(), 2).unwrap(), [2, 5]);
    assert_eq!(least_ci_degrees(&thm34_curve(r, 4, 4, 1).unwrap().0, 2).unwrap(), [3, 6]);
    assert_eq!(least_ci_degrees(&build("twisted_cubic_points"), 3).unwrap(), [2, 2, 3]);
    assert_eq!(least_ci_degrees(&build("bd_ex1"), 3).unwrap(), [2, 3, 4]);
    assert_eq!(least_ci_degrees(&build("bd_ex2"), 3).unwrap(), [2, 6, 10]);
    assert_eq!(least_ci_degrees(&build("be_generic"), 3).unwrap(), [3, 3, 3]);
    assert!(matches!(
        least_ci_degrees(&skew_lines(r), 3),
        Err(Error::CodimensionTooSmall { required: 3, actual: 2 })
    ));
}

#[test]
fn no_cubic_pair_links_the_double_link_curve() {
    let r = ring();
    let (c, _) = thm34_curve(r, 4, 4, 1).unwrap();
    assert!(matches!(sample_ci(&c, &[3, 3], 5), Err(Error::CiSamplingExhausted { .. })));
    assert!(sample_ci(&c, &[3, 6], 5).is_ok());
}

#[test]
fn complete_intersection_validation() {
    let r = ring();
    let shared = vec![poly(r, "x0*x3"), poly(r, "x1*x3")];
    assert!(!is_regular_sequence(r, &shared));
    assert!(matches!(CompleteIntersection::new(r, shared), Err(Error::NotRegularSequence(_))));
    let ci = CompleteIntersection::new(r, vec![poly(r, "x1^3"), poly(r, "x0^2")]).unwrap();
    assert_eq!(ci.degrees(), [2, 3]);
    assert_eq!((ci.degree(), ci.degree_sum(), ci.codimension()), (6, 5, 2));
}

#[test]
fn link_errors() {
    let r = ring();
    let s = skew_lines(r);
    let outside = CompleteIntersection::new(r, vec![poly(r, "x0"), poly(r, "x2")]).unwrap();
    assert!(matches!(link(&s, &outside), Err(Error::NotContained)));
    let ci = Ideal::new(r, vec![poly(r, "x0*x2"), poly(r, "x1*x3")]).unwrap();
    assert!(matches!(minimal_link(&ci, 1), Err(Error::TrivialLink)));
}

#[test]
fn points_on_a_twisted_cubic_link_to_a_degree_four_residual() {
    let z = build("twisted_cubic_points");
    let step = minimal_link(&z, 1).unwrap();
    assert_eq!(step.ci.degrees(), [2, 2, 3]);
    assert_eq!(step.residual.h_vector().coefficients, [1, 2, 1]);
    assert_eq!((step.degree_before, step.degree_after), (8, 4));
    assert!(step.involution_holds());
}

#[test]
fn line_plus_quartic_links_by_quadric_and_quintic() {
    let r = ring();
    let step = minimal_link(&line_plus_plane_curve(r, 4, 3).unwrap(), 3).unwrap();
    assert_eq!(step.ci.degrees(), [2, 5]);
    assert_eq!(step.degree_before + step.degree_after, 10);
    assert!(step.involution_holds());
}

#[test]
fn gorenstein_points_link_by_234() {
    let z = build("bd_ex1");
    assert_eq!(z.degree(), 12);
    let step = minimal_link(&z, 1).unwrap();
    assert_eq!(step.ci.degrees(), [2, 3, 4]);
    assert_eq!(step.degree_after, 12);
    assert_eq!(step.residual.h_vector().coefficients, [1, 3, 4, 3, 1]);
}

#[test]
fn basic_double_link_adds_degrees() {
    let r = ring();
    let s = skew_lines(r);
    let ell = poly(r, "x0 + 2*x1 + 3*x2 + 5*x3");
    for (f, e) in [("x0*x2", 2), ("x0*x2*x3 + x1^2*x3", 3), ("x1*x2^3", 4)] {
        let c = basic_double_link(&s, &poly(r, f), &ell).unwrap();
        assert_eq!(c.degree(), s.degree() + e);
        assert_eq!(c.dimension(), 2);
    }
    assert!(matches!(basic_double_link(&s, &poly(r, "x0^2"), &ell), Err(Error::NotContained)));
    assert!(basic_double_link(&s, &poly(r, "x0*x2"), &poly(r, "x0^2")).is_err());
    assert!(matches!(basic_double_link(&s, &poly(r, "x0*x2"), &poly(r, "x0")), Err(Error::NotRegularSequence(_))));
}

#[test]
fn complete_intersection_input_has_empty_trace() {
    let r = ring();
    let ci = Ideal::new(r, vec![poly(r, "x0*x2"), poly(r, "x1*x3 + x0^2")]).unwrap();
    let t = minimal_licci_run(&ci, 4, 1).unwrap();
    assert!(t.steps.is_empty());
    assert_eq!(t.terminal, TerminalStatus::CompleteIntersectionReached);
    assert_eq!(t.end(), &ci);
}

#[test]
fn licci_traces_are_chains_of_minimal_links() {
    for name in ["twisted_cubic_points", "bd_ex1", "be_generic"] {
        let i = build(name);
        let t = minimal_licci_run(&i, 8, 2).unwrap();
        assert_eq!(t.terminal, TerminalStatus::CompleteIntersectionReached, "{name}");
        let mut cur = i.clone();
        for s in &t.steps {
            assert_eq!(s.source, cur);
            assert!(s.minimal);
            assert_eq!(s.ci.degrees(), &least_ci_degrees(&cur, 3).unwrap()[..]);
            assert_eq!(s.degree_before + s.degree_after, s.ci.degree());
            assert!(s.involution_holds());
            cur = s.residual.clone();
        }
        // Minimal links never raise the sum of the least CI degrees.
        let sums: Vec<u32> = t.steps.iter().map(|s| s.ci.degree_sum()).collect();
        assert!(sums.windows(3).all(|w| w[2] <= w[0]), "{name}: {sums:?}");
    }
}

#[test]
fn runs_are_reproducible() {
    for name in ["skew_lines", "twisted_cubic_points", "be_generic"] {
        let sc = Scenario::new(name, ScenarioParams { seed: 9, ..Default::default() }).unwrap();
        let strip = |mut v: serde_json::Value| {
            v.as_object_mut().unwrap().remove("runtime_ms");
            v
        };
        let a = strip(run_scenario(&sc).unwrap().to_json());
        let b = strip(run_scenario(&sc).unwrap().to_json());
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn gorenstein_double_link_on_a_five_by_five() {
    let r = ring();
    let m = random_be_matrix(r, 5, &DegreePattern::linear(5), 4).unwrap();
    let i = buchsbaum_eisenbud_ideal(&m).unwrap();
    let g = gorenstein_double_link(&i, 4).unwrap();
    let rep = &g.report;
    assert_eq!((rep.mu_before, rep.mu_middle, rep.mu_after), (5, 4, 3));
    assert_eq!(rep.first_ci, [2, 2, 2]);
    assert_eq!(rep.deg_u, 1);
    assert!(rep.all_hold());
    assert_eq!(g.second.residual.mu(), 3);
    assert!(betti_table(&g.second.residual).unwrap().is_self_dual());
    assert!(matches!(gorenstein_double_link(&skew_lines(r), 1), Err(Error::Precondition(_))));
    let ci = Ideal::new(r, vec![r.var(0), r.var(1), r.var(2)]).unwrap();
    assert!(matches!(gorenstein_double_link(&ci, 1), Err(Error::Precondition(_))));
}

#[test]
fn gorenstein_points_double_link_lowers_degree_sums() {
    let g = gorenstein_double_link(&build("bd_ex1"), 1).unwrap();
    let rep = &g.report;
    assert_eq!((rep.degree_sum_before, rep.degree_sum_after), (9, 8));
    assert_eq!(rep.second_ci, [2, 2, 4]);
    assert!(rep.strict_descent());
    assert!(rep.all_hold());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_links_are_involutions(seed in any::<u64>(), bump in 0u32..2) {
        let z = build("twisted_cubic_points");
        let r = z.ring();
        let base = sample_ci(&z, &[2, 2, 3], seed).unwrap();
        let mut forms = base.forms().to_vec();
        if bump == 1 {
            // A non-minimal link: push the cubic up by a linear form.
            forms[2] = forms[2].mul(&poly(r, "x0 - x1 + 7*x3"), r.field());
        }
        let ci = CompleteIntersection::new(r, forms).unwrap();
        let step = link(&z, &ci).unwrap();
        prop_assert!(step.involution_holds());
        prop_assert_eq!(step.degree_before + step.degree_after, ci.degree());
        let back = link(&step.residual, &ci).unwrap();
        prop_assert_eq!(back.residual, z);
    }
}
