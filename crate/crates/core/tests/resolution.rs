mod common;

use common::*;
use liaison_core::resolution::*;
use liaison_core::scenarios::*;
use liaison_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring() -> RingContext {
    RingContext::new(32003, 4).unwrap()
}

fn build(name: &str) -> Ideal {
    Scenario::new(name, ScenarioParams::default()).unwrap().build().unwrap().ideal
}

fn max_twist(b: &BettiTable) -> i32 {
    b.entries.keys().map(|(_, j)| *j).max().unwrap()
}

fn trim(v: &[i64]) -> Vec<i64> {
    let mut v = v.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn check_against_koszul(i: &Ideal) {
    let (res, b) = minimal_resolution(i).unwrap();
    assert!(res.is_complex());
    assert_eq!(koszul_betti(i, max_twist(&b) + 2), b);
    assert_eq!(trim(&b.k_polynomial()), trim(i.hilbert_numerator()));
}

#[test]
fn scenario_betti_tables_match_koszul_homology() {
    for name in SCENARIO_NAMES {
        check_against_koszul(&build(name));
    }
}

#[test]
fn literature_betti_tables() {
    assert_eq!(betti_table(&build("skew_lines")).unwrap(), skew_lines_betti());
    assert_eq!(betti_table(&build("line_plus_plane_curve")).unwrap(), line_plus_plane_curve_betti(4));
    let z = build("bd_ex1");
    assert_eq!(z.minimal_generator_degrees(), vec![2, 2, 3, 3, 4]);
    let be = build("be_generic");
    assert_eq!(be.minimal_generator_degrees(), vec![3; 7]);
    assert_eq!(betti_table(&be).unwrap(), be7_linear_betti());
}

#[test]
fn complete_intersections_have_koszul_betti_tables() {
    let r = ring();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for c in 1..=3usize {
        for k in 0..4u32.pow(c as u32) {
            let t: Vec<u32> = (0..c).map(|i| k / 4u32.pow(i as u32) % 4 + 1).collect();
            if t.windows(2).any(|w| w[0] > w[1]) {
                continue;
            }
            let forms = t.iter().map(|&d| r.random_form(d, &mut rng)).collect();
            let i = Ideal::new(r, forms).unwrap();
            assert_eq!(betti_table(&i).unwrap(), ci_betti(&t), "{t:?}");
        }
    }
}

#[test]
fn minimization_is_idempotent() {
    for name in ["skew_lines", "thm34_curve", "bd_ex1"] {
        let i = build(name);
        let full = free_resolution(&i).unwrap();
        assert!(full.is_complex());
        let (min, b) = minimize(&full);
        let (again, b2) = minimize(&min);
        assert_eq!(b, b2);
        assert_eq!(min.maps.len(), again.maps.len());
        for (a, c) in min.maps.iter().zip(&again.maps) {
            assert_eq!(a.entries, c.entries);
        }
        assert!(!min.maps.iter().skip(1).any(|m| m.has_unit_entry()));
    }
}

#[test]
fn deficiency_examples() {
    let r = ring();
    let c1 = line_plus_plane_curve(r, 3, 1).unwrap();
    let p = deficiency_profile(&c1, -3..=6).unwrap();
    assert_eq!(p.support(), vec![0, 1, 2]);
    assert_eq!(p.total(), 3);
    let s = deficiency_profile(&skew_lines(r), -3..=4).unwrap();
    assert_eq!(s.support(), vec![0]);
    assert_eq!(s.get(0), 1);
    let tc = Ideal::new(
        r,
        vec![
            r.poly(&[(1, &[1, 0, 1, 0]), (-1, &[0, 2, 0, 0])]),
            r.poly(&[(1, &[1, 0, 0, 1]), (-1, &[0, 1, 1, 0])]),
            r.poly(&[(1, &[0, 1, 0, 1]), (-1, &[0, 0, 2, 0])]),
        ],
    )
    .unwrap();
    assert_eq!(tc.degree(), 3);
    assert_eq!(deficiency_profile(&tc, -3..=5).unwrap().total(), 0);
    assert!(matches!(deficiency_profile(&Ideal::maximal(r), 0..=1), Err(Error::NotACurve(0))));
}

#[test]
fn deficiency_is_invariant_under_coordinate_changes() {
    let r = ring();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let thm34 = thm34_curve(r, 4, 4, 1).unwrap().0;
    for c in [skew_lines(r), line_plus_plane_curve(r, 4, 1).unwrap(), thm34] {
        let base = deficiency_profile(&c, -3..=8).unwrap();
        for _ in 0..3 {
            let images: Vec<Polynomial> = (0..4).map(|_| r.random_form(1, &mut rng)).collect();
            let moved = c.map(&images).unwrap();
            assert_eq!(moved.degree(), c.degree());
            let p = deficiency_profile(&moved, -3..=8).unwrap();
            assert_eq!(p.total(), base.total());
            assert_eq!(p.dims, base.dims);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_ideals_match_koszul_homology(seed in any::<u64>(), degs in proptest::collection::vec(1u32..=3, 1..5)) {
        let r = ring();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<Polynomial> = degs
            .iter()
            .map(|&d| {
                // Sparse forms keep the ideals away from complete intersections.
                let mut p = Polynomial::zero();
                for _ in 0..2 {
                    let m = monomial::monomials_of_degree(4, d);
                    let pick = m[rand::Rng::gen_range(&mut rng, 0..m.len())];
                    p = p.add(&Polynomial::monomial(pick, r.random_scalar(&mut rng)), r.field());
                }
                p
            })
            .collect();
        let i = Ideal::new(r, gens).unwrap();
        prop_assume!(!i.is_zero());
        check_against_koszul(&i);
    }
}
