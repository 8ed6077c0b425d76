use idxlab_core::field::{field_of_order, make_prime_field, FiniteField};
use idxlab_core::geometry::{lowest_form, parse};
use idxlab_core::invariants::{gamma_estimate, SamplingConfig};
use idxlab_core::local::{local_length, LocalRingSpec};
use idxlab_core::poly::{vars, Monomial};
use idxlab_core::resolution::{blowup_step, resolve_germ, ResolveOptions};
use idxlab_core::Poly;
use proptest::prelude::*;

const XY: [&str; 2] = ["x", "y"];

/// Germs with zero constant term and order at most three.
fn random_germ(field: &FiniteField, cs: &[u32]) -> Poly {
    let monos: Vec<Monomial> = (1..=4)
        .flat_map(|d| Monomial::all_of_degree(2, d))
        .collect();
    Poly::from_terms(
        field,
        &vars(&XY),
        monos
            .into_iter()
            .zip(cs)
            .map(|(m, &c)| (m, c % field.order())),
    )
}

fn resolution_corpus() -> Vec<Poly> {
    let f2 = make_prime_field(2).unwrap();
    let f3 = make_prime_field(3).unwrap();
    let f5 = make_prime_field(5).unwrap();
    vec![
        parse("x^2+x*y+y^2", &f2, &XY),
        parse("x*y*(x+y)", &f2, &XY),
        parse("y^2-x^3", &f5, &XY),
        parse("x^2+y^2", &f3, &XY),
        parse("(x^2+x*y+y^2)^2+x^5", &f2, &XY),
        parse("y^3-x^7", &f5, &XY),
        parse("x*(x^2+y^2)", &f3, &XY),
    ]
}

#[test]
fn moving_multiplicity_divides_sampled_multiplicities() {
    for g in resolution_corpus() {
        let n = resolve_germ(&g, &ResolveOptions::default())
            .unwrap()
            .n_value;
        let spec = LocalRingSpec::hypersurface(&g).unwrap();
        let r = gamma_estimate(&spec, 4, 9, &[], &SamplingConfig::default()).unwrap();
        assert_eq!(r.e_of_m % n, 0, "{g}");
        assert_eq!(r.running_gcd % n, 0, "{g}");
        for s in &r.samples {
            assert_eq!(s.e % n, 0, "{g}: sample {}", s.ideal.display());
        }
    }
}

#[test]
fn expected_moving_multiplicities() {
    let expected = [2, 1, 1, 2, 2, 1, 1];
    for (g, n) in resolution_corpus().iter().zip(expected) {
        assert_eq!(
            resolve_germ(g, &ResolveOptions::default()).unwrap().n_value,
            n,
            "{g}"
        );
    }
}

#[test]
fn conjugate_roots_give_the_same_places() {
    let f4 = field_of_order(2, 2).unwrap();
    let f2 = make_prime_field(2).unwrap();
    for g in [
        parse("(x^2+x*y+y^2)^2+x^5", &f2, &XY),
        parse("(y^3+x^2*y+x^3)*(y-x^2)", &f2, &XY),
        parse("y^2+x^3", &f4, &XY),
    ] {
        let degrees = |choice| {
            let r = resolve_germ(
                &g,
                &ResolveOptions {
                    root_choice: choice,
                    ..Default::default()
                },
            )
            .unwrap();
            let mut d: Vec<u32> = r.places.iter().map(|p| p.residue_degree).collect();
            d.sort();
            (d, r.blowup_count)
        };
        assert_eq!(degrees(0), degrees(1), "{g}");
        assert_eq!(degrees(0), degrees(2), "{g}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn total_transform_law(cs in prop::collection::vec(0u32..5, 14), p in prop_oneof![Just(2u64), Just(3), Just(5)]) {
        let field = make_prime_field(p).unwrap();
        let g = random_germ(&field, &cs);
        prop_assume!(!g.is_zero());
        let s = blowup_step(&g, 1).unwrap();
        let x = Poly::var(&field, g.vars(), 0);
        let y = Poly::var(&field, g.vars(), 1);
        prop_assert_eq!(s.mult, lowest_form(&g).unwrap().0);
        prop_assert_eq!(g.compose(&[x.clone(), x.mul(&y)]), x.pow(s.mult).mul(&s.chart1));
        prop_assert_eq!(g.compose(&[x.mul(&y), y.clone()]), y.pow(s.mult).mul(&s.chart2));
        // points on the exceptional line: degrees weighted by contact add up
        // to the multiplicity
        let weighted: u32 = s.exceptional_points.iter().map(|pt| pt.degree * pt.contact).sum();
        prop_assert_eq!(weighted, s.mult);
    }

    #[test]
    fn n_divides_the_multiplicity_and_principal_lengths(cs in prop::collection::vec(0u32..5, 14), h in prop::collection::vec(0u32..5, 14), p in prop_oneof![Just(2u64), Just(3)]) {
        let field = make_prime_field(p).unwrap();
        let g = random_germ(&field, &cs);
        prop_assume!(!g.is_zero());
        prop_assume!(lowest_form(&g).unwrap().0 <= 3);
        let r = resolve_germ(&g, &ResolveOptions::default()).unwrap();
        let sum: u64 = r.places.iter().map(|pl| pl.residue_degree as u64).sum();
        prop_assert!(sum >= r.n_value);
        let order = lowest_form(&r.reduced_input).unwrap().0 as u64;
        prop_assert_eq!(order % r.n_value, 0);
        let spec = LocalRingSpec::hypersurface(&g).unwrap();
        let h = random_germ(&field, &h);
        if let Ok(len) = local_length(&spec, &[h]) {
            prop_assert_eq!(len % r.n_value, 0);
        }
    }
}
