use idxlab_core::census::enumerate_points;
use idxlab_core::field::{field_of_order, make_prime_field, Embedding, FiniteField};
use idxlab_core::models::{
    fiber_cycle_identity, fiber_multiplicity_direct, lift_degree, model_fiber_decomposition,
    model_point_report, model_regularity_at, ModelDescriptor, ModelError, DEFAULT_T_TRUNCATION,
};
use idxlab_core::poly::vars;
use idxlab_core::{Point, Poly};
use proptest::prelude::*;

fn model(field: &FiniteField, f: &str, comps: &[(&str, u32)]) -> ModelDescriptor {
    let full = vars(&["x", "y", "t"]);
    let plane = vars(&["x", "y"]);
    let f = Poly::parse(f, field, &full).unwrap();
    let comps = comps
        .iter()
        .map(|(g, r)| (Poly::parse(g, field, &plane).unwrap(), *r))
        .collect();
    ModelDescriptor::new(field, ["x", "y"], "t", f, comps, DEFAULT_T_TRUNCATION).unwrap()
}

fn corpus() -> Vec<ModelDescriptor> {
    let f2 = make_prime_field(2).unwrap();
    let f3 = make_prime_field(3).unwrap();
    vec![
        model(&f3, "x^2+y^2+t", &[("x^2+y^2", 1)]),
        model(&f3, "t-(x^2+y^2+1)^2", &[("x^2+y^2+1", 2)]),
        model(&f2, "x*y-t", &[("x", 1), ("y", 1)]),
        model(&f2, "x^2*(x+y+1)-t", &[("x", 2), ("x+y+1", 1)]),
        model(&f3, "x*(y^2-x)+t*(1+x)", &[("x", 1), ("y^2-x", 1)]),
    ]
}

/// Every `(point, cutting line)` pair on the fiber over `F_{q^d}` where the
/// lift preconditions hold.
fn lifts(m: &ModelDescriptor, d: u32) -> Vec<(Point, u64, u64)> {
    let pts = enumerate_points(&m.fiber_variety(), d).unwrap();
    let plane = vars(&["x", "y"]);
    let mut out = Vec::new();
    for pt in pts {
        let embed = Embedding::new(&m.field, &pt.field).unwrap();
        for i in 0..2 {
            // the line fixing coordinate i, when that coordinate is rational
            let c = pt.coords[i];
            let Some(c0) = m.field.elements().find(|&e| embed.apply(e) == c) else {
                continue;
            };
            let line = Poly::var(&m.field, &plane, i).sub(&Poly::constant(&m.field, &plane, c0));
            match lift_degree(m, &pt, &line) {
                Ok(r) => {
                    let bound = model_point_report(m, &pt).unwrap().min_degree_bound;
                    out.push((pt.clone(), r.computed_degree, bound));
                    assert!(r.agrees(), "{r:?}");
                }
                Err(ModelError::NotRegularPoint | ModelError::NotTransversal { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    out
}

#[test]
fn special_fiber_index_divides_every_lift() {
    for m in corpus() {
        let gcd = model_fiber_decomposition(&m, 2).unwrap().gcd_xk;
        let mut found = 0;
        for d in 1..=2 {
            for (pt, degree, bound) in lifts(&m, d) {
                assert_eq!(degree % gcd, 0, "{} at {}", m.f, pt.format("a"));
                assert!(degree >= bound);
                found += 1;
            }
        }
        assert!(found > 0, "no lift found on {}", m.f);
    }
}

#[test]
fn index_two_models_have_a_lift_of_degree_two() {
    for m in corpus().into_iter().take(2) {
        assert_eq!(model_fiber_decomposition(&m, 2).unwrap().gcd_xk, 2);
        let degrees: Vec<u64> = (1..=2).flat_map(|d| lifts(&m, d)).map(|l| l.1).collect();
        assert!(degrees.contains(&2), "{}", m.f);
    }
}

#[test]
fn two_routes_to_the_fiber_multiplicity_agree() {
    for m in corpus() {
        for d in 1..=2 {
            for pt in enumerate_points(&m.fiber_variety(), d).unwrap() {
                let r = model_point_report(&m, &pt).unwrap();
                assert_eq!(
                    r.e_fiber,
                    fiber_multiplicity_direct(&m, &pt).unwrap(),
                    "{}",
                    m.f
                );
                assert_eq!(r.min_degree_bound, r.e_fiber * r.degree as u64);
            }
        }
        assert!(fiber_cycle_identity(&m, 2).unwrap());
    }
}

#[test]
fn regularity_examples() {
    let f3 = make_prime_field(3).unwrap();
    let origin = Point::origin(&f3, 2);
    assert!(model_regularity_at(&corpus()[0], &origin).unwrap());
    let m = model(&f3, "x^2+y^2+t^2", &[("x^2+y^2", 1)]);
    assert!(!model_regularity_at(&m, &origin).unwrap());
    let f9 = field_of_order(3, 2).unwrap();
    let i = f9.generator();
    assert!(model_regularity_at(&corpus()[0], &Point::new(&f9, vec![i, 1])).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `g^r + t h` is a model with one component; every transversal lift at
    /// a rational smooth point has degree `r`.
    #[test]
    fn single_component_lifts(r in 1u32..4, h in prop_oneof![Just("1"), Just("1+x"), Just("1+y^2"), Just("x*y+1")], a in 0u32..3) {
        let f3 = make_prime_field(3).unwrap();
        let g = format!("y-x^2-{a}");
        let f = format!("({g})^{r}+t*({h})");
        let m = model(&f3, &f, &[(&g, r)]);
        prop_assert_eq!(model_fiber_decomposition(&m, 1).unwrap().gcd_xk, r as u64);
        let plane = vars(&["x", "y"]);
        for x0 in 0..3u32 {
            let y0 = f3.add(f3.mul(x0, x0), a);
            let pt = Point::new(&f3, vec![x0, y0]);
            let regular = model_regularity_at(&m, &pt).unwrap();
            // regular iff r = 1 or h does not vanish there
            let hv = Poly::parse(h, &f3, &plane).unwrap().eval(&[x0, y0]);
            prop_assert_eq!(regular, r == 1 || hv != 0);
            let line = Poly::parse(&format!("x-{x0}"), &f3, &plane).unwrap();
            match lift_degree(&m, &pt, &line) {
                Ok(rep) => {
                    prop_assert_eq!(rep.computed_degree, r as u64);
                    prop_assert!(rep.agrees());
                    if r == 1 {
                        prop_assert!(rep.series_witness.unwrap().residual_vanishes);
                    }
                }
                Err(e) => prop_assert!(!regular, "{e}"),
            }
        }
    }
}
