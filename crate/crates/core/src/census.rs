//! Points of varieties over finite extensions of the base field, closed
//! point degrees and the index estimate `delta_{<=D}`.
//!
//! The regular locus is detected with the Jacobian criterion. Over the
//! (perfect) finite fields used here, regular and smooth points coincide.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::gcd_of_list;
use crate::field::{field_of_order, FieldError, FiniteField};
use crate::geometry::{base_change, jacobian_rank_at, GeomError, Point, Poly};
use crate::variety::{Ambient, VarietyDescriptor};

/// Largest number of coordinate tuples an enumeration may visit.
pub const ENUMERATION_LIMIT: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("enumerating {tuples} tuples over F_{q}^{d} exceeds the limit")]
    EnumerationTooLarge { q: u32, d: u32, tuples: u128 },
    #[error("codimension unknown: declare it for ideals with several generators")]
    CodimUnknown,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Number of coordinate tuples visited for `v` over `F_{q^d}`.
fn tuple_count(v: &VarietyDescriptor, d: u32) -> u128 {
    let q = v.field.order() as u128;
    q.checked_pow(d * v.nvars() as u32).unwrap_or(u128::MAX)
}

/// The field `F_{q^d}` for the base field `F_q` of `v`, checked against the
/// enumeration limit.
fn extension_for(v: &VarietyDescriptor, d: u32) -> Result<FiniteField, CensusError> {
    let tuples = tuple_count(v, d);
    if d == 0 || tuples > ENUMERATION_LIMIT as u128 {
        return Err(CensusError::EnumerationTooLarge {
            q: v.field.order(),
            d,
            tuples,
        });
    }
    Ok(field_of_order(
        v.field.characteristic() as u64,
        v.field.degree() * d,
    )?)
}

struct Evaluator {
    field: FiniteField,
    /// Per generator: `(coefficient, exponents)`.
    polys: Vec<Vec<(u32, Vec<u32>)>>,
}

impl Evaluator {
    fn new(gens: &[Poly], field: &FiniteField) -> Result<Evaluator, GeomError> {
        let mut polys = Vec::new();
        for g in gens {
            let g = base_change(g, field)?;
            polys.push(g.terms().map(|(m, c)| (*c, m.exps().to_vec())).collect());
        }
        Ok(Evaluator {
            field: field.clone(),
            polys,
        })
    }

    fn all_vanish(&self, x: &[u32]) -> bool {
        let f = &self.field;
        self.polys.iter().all(|terms| {
            terms.iter().fold(0, |acc, (c, e)| {
                let t = e
                    .iter()
                    .zip(x)
                    .filter(|(k, _)| **k > 0)
                    .fold(*c, |t, (k, xi)| f.mul(t, f.pow(*xi, *k as u64)));
                f.add(acc, t)
            }) == 0
        })
    }
}

fn keep_point(ideal: &Evaluator, excluded: &[Evaluator], x: &[u32]) -> bool {
    ideal.all_vanish(x) && !excluded.iter().any(|e| e.all_vanish(x))
}

/// Decodes `index` into `n` base-`q` digits.
fn digits(mut index: u64, q: u64, n: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for c in out.iter_mut() {
        *c = (index % q) as u32;
        index /= q;
    }
    out
}

/// All points of `v` over `F_{q^d}`. Projective points are normalized with
/// first nonzero coordinate 1.
pub fn enumerate_points(v: &VarietyDescriptor, d: u32) -> Result<Vec<Point>, CensusError> {
    let field = extension_for(v, d)?;
    let ideal = Evaluator::new(&v.ideal, &field)?;
    let excluded: Vec<Evaluator> = v
        .excluded
        .iter()
        .map(|gens| Evaluator::new(gens, &field))
        .collect::<Result<_, _>>()?;
    let n = v.nvars();
    let q = field.order() as u64;
    let mut points: Vec<Vec<u32>> = Vec::new();
    match v.ambient {
        Ambient::Affine => {
            let total = q.pow(n as u32);
            points = (0..total)
                .into_par_iter()
                .map(|i| digits(i, q, n))
                .filter(|x| keep_point(&ideal, &excluded, x))
                .collect();
        }
        Ambient::Projective => {
            for lead in 0..n {
                let free = n - lead - 1;
                let total = q.pow(free as u32);
                let chunk: Vec<Vec<u32>> = (0..total)
                    .into_par_iter()
                    .map(|i| {
                        let mut x = vec![0u32; n];
                        x[lead] = 1;
                        x[lead + 1..].copy_from_slice(&digits(i, q, free));
                        x
                    })
                    .filter(|x| keep_point(&ideal, &excluded, x))
                    .collect();
                points.extend(chunk);
            }
        }
    }
    Ok(points.into_iter().map(|x| Point::new(&field, x)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedPointCensus {
    pub max_degree: u32,
    /// `N_d` for `d = 1..=D`.
    pub rational_counts: Vec<u64>,
    /// `a_d` for `d = 1..=D`.
    pub closed_counts: Vec<u64>,
    pub degree_set: Vec<u32>,
    /// gcd of `degree_set`; 0 when it is empty.
    pub gcd_estimate: u64,
}

impl ClosedPointCensus {
    fn from_exact_counts(
        max_degree: u32,
        rational: Vec<u64>,
        exact: Vec<u64>,
    ) -> ClosedPointCensus {
        let closed: Vec<u64> = exact
            .iter()
            .enumerate()
            .map(|(i, c)| c / (i as u64 + 1))
            .collect();
        let degree_set: Vec<u32> = closed
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, _)| i as u32 + 1)
            .collect();
        ClosedPointCensus {
            max_degree,
            rational_counts: rational,
            closed_counts: closed,
            gcd_estimate: gcd_of_list(degree_set.iter().map(|&d| d as u64)),
            degree_set,
        }
    }

    /// `sum_{e | d} e a_e = N_d` for every `d`.
    pub fn orbit_identity_holds(&self) -> bool {
        (1..=self.max_degree as usize).all(|d| {
            let lhs: u64 = (1..=d)
                .filter(|e| d % e == 0)
                .map(|e| e as u64 * self.closed_counts[e - 1])
                .sum();
            lhs == self.rational_counts[d - 1]
        })
    }

    /// Smallest degree of a closed point, if any.
    pub fn min_degree(&self) -> Option<u32> {
        self.degree_set.first().copied()
    }
}

fn census_with(
    v: &VarietyDescriptor,
    max_degree: u32,
    keep: impl Fn(&Point) -> Result<bool, CensusError> + Sync,
) -> Result<ClosedPointCensus, CensusError> {
    let mut rational = Vec::new();
    let mut exact = Vec::new();
    for d in 1..=max_degree {
        let pts = enumerate_points(v, d)?;
        let kept: Vec<(bool, u32)> = pts
            .par_iter()
            .map(|p| Ok((keep(p)?, p.degree_over(&v.field))))
            .collect::<Result<_, CensusError>>()?;
        rational.push(kept.iter().filter(|k| k.0).count() as u64);
        exact.push(kept.iter().filter(|k| k.0 && k.1 == d).count() as u64);
    }
    Ok(ClosedPointCensus::from_exact_counts(
        max_degree, rational, exact,
    ))
}

pub fn closed_point_census(
    v: &VarietyDescriptor,
    max_degree: u32,
) -> Result<ClosedPointCensus, CensusError> {
    census_with(v, max_degree, |_| Ok(true))
}

/// `delta_{<=D}`: gcd of the closed point degrees up to `D`, 0 if none.
pub fn index_estimate(v: &VarietyDescriptor, max_degree: u32) -> Result<u64, CensusError> {
    Ok(closed_point_census(v, max_degree)?.gcd_estimate)
}

/// Whether the Jacobian rank of `v` at `point` equals its codimension.
pub fn is_regular_point(v: &VarietyDescriptor, point: &Point) -> Result<bool, CensusError> {
    let codim = v.codim().ok_or(CensusError::CodimUnknown)?;
    Ok(jacobian_rank_at(&v.ideal, point)? == codim as usize)
}

/// The census of the regular locus.
pub fn regular_filter(
    v: &VarietyDescriptor,
    max_degree: u32,
) -> Result<ClosedPointCensus, CensusError> {
    v.codim().ok_or(CensusError::CodimUnknown)?;
    census_with(v, max_degree, |p| is_regular_point(v, p))
}

/// Largest `d` with `q^{d n} <= ENUMERATION_LIMIT` for which `F_{q^d}` can be
/// built.
pub fn default_max_degree(v: &VarietyDescriptor) -> u32 {
    let mut d = 1;
    while tuple_count(v, d + 1) <= ENUMERATION_LIMIT as u128
        && field_of_order(v.field.characteristic() as u64, v.field.degree() * (d + 1)).is_ok()
    {
        d += 1;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_prime_field;
    use crate::geometry::parse;
    use crate::poly::vars;

    fn affine(p: u64, names: &[&str], ideal: &[&str]) -> VarietyDescriptor {
        let f = make_prime_field(p).unwrap();
        let gens = ideal.iter().map(|s| parse(s, &f, names)).collect();
        VarietyDescriptor::affine(&f, &vars(names), gens).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let f2 = make_prime_field(2).unwrap();
        let p1 = VarietyDescriptor::projective(&f2, &vars(&["x", "y"]), vec![]).unwrap();
        assert_eq!(enumerate_points(&p1, 1).unwrap().len(), 3);
        let spec_f4 = affine(2, &["x"], &["x^2+x+1"]);
        assert_eq!(enumerate_points(&spec_f4, 1).unwrap().len(), 0);
        assert_eq!(enumerate_points(&spec_f4, 2).unwrap().len(), 2);
        let circle = affine(3, &["x", "y"], &["x^2+y^2+1"]);
        let pts: Vec<Vec<u32>> = enumerate_points(&circle, 1)
            .unwrap()
            .into_iter()
            .map(|p| p.coords)
            .collect();
        assert_eq!(pts.len(), 4);
        for c in [[1, 1], [1, 2], [2, 1], [2, 2]] {
            assert!(pts.contains(&c.to_vec()));
        }
    }

    #[test]
    fn census_examples() {
        let f2 = make_prime_field(2).unwrap();
        let p1 = VarietyDescriptor::projective(&f2, &vars(&["x", "y"]), vec![]).unwrap();
        let c = closed_point_census(&p1, 2).unwrap();
        assert_eq!(
            (
                c.closed_counts.clone(),
                c.rational_counts[1],
                c.gcd_estimate
            ),
            (vec![3, 1], 5, 1)
        );
        let spec_f4 = affine(2, &["x"], &["x^2+x+1"]);
        let c = closed_point_census(&spec_f4, 2).unwrap();
        assert_eq!((c.closed_counts.clone(), c.gcd_estimate), (vec![0, 1], 2));
        assert_eq!(index_estimate(&spec_f4, 3).unwrap(), 2);
        let pair = affine(3, &["x", "y"], &["x^2+y^2"]);
        let c = closed_point_census(&pair, 2).unwrap();
        assert_eq!(
            (
                c.closed_counts.clone(),
                c.rational_counts[1],
                c.gcd_estimate
            ),
            (vec![1, 8], 17, 1)
        );
        assert!(c.orbit_identity_holds());
        let cusp = affine(5, &["x", "y"], &["y^2-x^3"]);
        assert_eq!(index_estimate(&cusp, 1).unwrap(), 1);
    }

    #[test]
    fn regular_locus() {
        let pair = affine(3, &["x", "y"], &["x^2+y^2"]);
        let c = regular_filter(&pair, 2).unwrap();
        assert_eq!((c.closed_counts.clone(), c.gcd_estimate), (vec![0, 8], 2));
        let cusp = affine(5, &["x", "y"], &["y^2-x^3"]);
        let all = closed_point_census(&cusp, 1).unwrap();
        let reg = regular_filter(&cusp, 1).unwrap();
        assert_eq!(reg.rational_counts[0] + 1, all.rational_counts[0]);
        assert_eq!(reg.gcd_estimate, 1);
        let f3 = make_prime_field(3).unwrap();
        let names = ["x", "y", "z"];
        let conic = VarietyDescriptor::projective(
            &f3,
            &vars(&names),
            vec![parse("x^2+y^2+z^2", &f3, &names)],
        )
        .unwrap();
        assert_eq!(
            regular_filter(&conic, 1).unwrap(),
            closed_point_census(&conic, 1).unwrap()
        );
        let two = affine(3, &["x", "y"], &["x", "y"]);
        assert_eq!(regular_filter(&two, 1), Err(CensusError::CodimUnknown));
        assert_eq!(
            regular_filter(&two.clone().with_codim(2), 1)
                .unwrap()
                .gcd_estimate,
            1
        );
    }

    #[test]
    fn excluded_points() {
        let f2 = make_prime_field(2).unwrap();
        let v = vars(&["x", "y"]);
        let p1 = VarietyDescriptor::projective(&f2, &v, vec![]).unwrap();
        let open = p1
            .with_excluded(vec![parse("x*y*(x+y)", &f2, &["x", "y"])])
            .unwrap();
        let c = closed_point_census(&open, 3).unwrap();
        assert_eq!(c.closed_counts, vec![0, 1, 2]);
        assert_eq!(c.gcd_estimate, 1);
        assert!(c.orbit_identity_holds());
    }
}
