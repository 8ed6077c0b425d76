use idxlab_core::census::{closed_point_census, enumerate_points, index_estimate, regular_filter};
use idxlab_core::field::{field_of_order, make_prime_field};
use idxlab_core::geometry::{parse, poly_eval};
use idxlab_core::poly::{vars, Monomial};
use idxlab_core::variety::VarietyDescriptor;
use idxlab_core::{Point, Poly};
use proptest::prelude::*;

fn mobius(n: u64) -> i64 {
    let (mut n, mut k, mut sign) = (n, 2, 1i64);
    while k * k <= n {
        if n % k == 0 {
            n /= k;
            if n % k == 0 {
                return 0;
            }
            sign = -sign;
        }
        k += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

/// Closed points of degree exactly `d` from the rational counts.
fn closed_from_rational(rational: &[u64], d: usize) -> u64 {
    let s: i64 = (1..=d)
        .filter(|e| d.is_multiple_of(*e))
        .map(|e| mobius((d / e) as u64) * rational[e - 1] as i64)
        .sum();
    s as u64 / d as u64
}

/// Affine zeros of `gens` over `F_{p^{k d}}`, by evaluating every tuple.
fn brute_affine_count(gens: &[Poly], nvars: usize, p: u64, k: u32, d: u32) -> u64 {
    let ext = field_of_order(p, k * d).unwrap();
    let q = ext.order() as u64;
    let mut count = 0;
    for mut i in 0..q.pow(nvars as u32) {
        let coords: Vec<u32> = (0..nvars)
            .map(|_| {
                let c = (i % q) as u32;
                i /= q;
                c
            })
            .collect();
        let pt = Point::new(&ext, coords);
        if gens.iter().all(|g| poly_eval(g, &pt).unwrap() == 0) {
            count += 1;
        }
    }
    count
}

#[test]
fn projective_space_counts() {
    let f2 = make_prime_field(2).unwrap();
    for n in [1u32, 2] {
        let names: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let v = VarietyDescriptor::projective(&f2, &vars(&names), vec![]).unwrap();
        let c = closed_point_census(&v, 6).unwrap();
        for d in 1..=6u32 {
            let qd = 2u64.pow(d);
            let expected = (qd.pow(n + 1) - 1) / (qd - 1);
            assert_eq!(c.rational_counts[d as usize - 1], expected);
            assert_eq!(
                c.closed_counts[d as usize - 1],
                closed_from_rational(&c.rational_counts, d as usize)
            );
        }
        assert!(c.orbit_identity_holds());
        assert_eq!(c.gcd_estimate, 1);
    }
}

#[test]
fn projective_points_are_normalized_and_distinct() {
    let f3 = make_prime_field(3).unwrap();
    let names = ["x", "y", "z"];
    let v =
        VarietyDescriptor::projective(&f3, &vars(&names), vec![parse("x^2+y^2+z^2", &f3, &names)])
            .unwrap();
    for d in 1..=2 {
        let pts = enumerate_points(&v, d).unwrap();
        // a smooth conic is a P^1
        assert_eq!(pts.len() as u64, 3u64.pow(d) + 1);
        let mut seen = std::collections::HashSet::new();
        for p in &pts {
            assert_eq!(*p.coords.iter().find(|&&c| c != 0).unwrap(), 1);
            assert!(seen.insert(p.coords.clone()));
        }
    }
}

#[test]
fn removing_rational_points_keeps_the_index() {
    let f2 = make_prime_field(2).unwrap();
    let names = ["x", "y"];
    let line = VarietyDescriptor::projective(&f2, &vars(&names), vec![]).unwrap();
    let open = ["x", "y", "x+y"]
        .iter()
        .try_fold(line.clone(), |v, g| {
            v.with_excluded(vec![parse(g, &f2, &names)])
        })
        .unwrap();
    assert_eq!(closed_point_census(&open, 2).unwrap().gcd_estimate, 2);
    for big_d in 3..=5 {
        let c = closed_point_census(&open, big_d).unwrap();
        assert_eq!(c.closed_counts[0], 0);
        assert_eq!(c.gcd_estimate, index_estimate(&line, big_d).unwrap());
        assert_eq!(c.gcd_estimate, 1);
    }
}

#[test]
fn regular_locus_can_have_a_larger_index() {
    let f3 = make_prime_field(3).unwrap();
    let names = ["x", "y"];
    let v =
        VarietyDescriptor::affine(&f3, &vars(&names), vec![parse("x^2+y^2", &f3, &names)]).unwrap();
    assert_eq!(index_estimate(&v, 4).unwrap(), 1);
    assert_eq!(regular_filter(&v, 4).unwrap().gcd_estimate, 2);
}

#[test]
fn estimates_refine_under_divisibility() {
    let f2 = make_prime_field(2).unwrap();
    let names = ["x", "y", "z"];
    let v = VarietyDescriptor::projective(
        &f2,
        &vars(&names),
        vec![parse("x^3+y^3+z^3+x*y*z", &f2, &names)],
    )
    .unwrap();
    let mut prev = 0;
    for d in 1..=4 {
        let g = index_estimate(&v, d).unwrap();
        if prev != 0 {
            assert_eq!(prev % g, 0);
        }
        prev = g;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn counts_match_brute_force(cs in prop::collection::vec(0u32..3, 10), p in prop_oneof![Just(2u64), Just(3)]) {
        let field = make_prime_field(p).unwrap();
        let monos: Vec<Monomial> = (0..=3).flat_map(|d| Monomial::all_of_degree(2, d)).collect();
        let f = Poly::from_terms(&field, &vars(&["x", "y"]), monos.into_iter().zip(cs).map(|(m, c)| (m, c % p as u32)));
        prop_assume!(!f.is_zero() && !f.is_constant());
        let v = VarietyDescriptor::affine(&field, f.vars(), vec![f.clone()]).unwrap();
        let c = closed_point_census(&v, 3).unwrap();
        for d in 1..=3u32 {
            prop_assert_eq!(c.rational_counts[d as usize - 1], brute_affine_count(std::slice::from_ref(&f), 2, p, 1, d));
            prop_assert_eq!(c.closed_counts[d as usize - 1], closed_from_rational(&c.rational_counts, d as usize));
        }
        prop_assert!(c.orbit_identity_holds());
        let reg = regular_filter(&v, 3).unwrap();
        for d in 0..3 {
            prop_assert!(reg.closed_counts[d] <= c.closed_counts[d]);
        }
    }
}
