//! Points, evaluation, translation and other local operations on
//! polynomials over finite fields.

use thiserror::Error;

use crate::field::{Embedding, FieldError, FiniteField};
use crate::linalg::dense_rank;
use crate::poly::{MultiPoly, Vars};
use crate::upoly::UPoly;

pub type Poly = MultiPoly<FiniteField>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("point and polynomial live over incompatible fields")]
    FieldMismatch,
    #[error("point has {got} coordinates, expected {expected}")]
    WrongArity { expected: usize, got: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("point does not lie on the variety")]
    PointNotOnVariety,
    #[error("polynomial is not univariate of positive degree: {0}")]
    NotUnivariate(String),
}

impl From<FieldError> for GeomError {
    fn from(_: FieldError) -> Self {
        GeomError::FieldMismatch
    }
}

/// A tuple of coordinates in a finite field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point {
    pub field: FiniteField,
    pub coords: Vec<u32>,
}

impl Point {
    pub fn new(field: &FiniteField, coords: Vec<u32>) -> Point {
        Point {
            field: field.clone(),
            coords,
        }
    }

    pub fn origin(field: &FiniteField, n: usize) -> Point {
        Point::new(field, vec![0; n])
    }

    /// Degree of the closed point through this geometric point, over `base`.
    pub fn degree_over(&self, base: &FiniteField) -> u32 {
        let mut x: Vec<u32> = self.coords.clone();
        let mut e = 0;
        loop {
            for _ in 0..base.degree() {
                for c in x.iter_mut() {
                    *c = self.field.frobenius(*c);
                }
            }
            e += 1;
            if x == self.coords {
                return e;
            }
        }
    }

    pub fn format(&self, gen_name: &str) -> String {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|&c| self.field.format_element(c, gen_name))
            .collect();
        format!("({})", parts.join(","))
    }
}

/// Maps the coefficients of `f` into the extension `target`.
pub fn base_change(f: &Poly, target: &FiniteField) -> Result<Poly, GeomError> {
    if f.ring() == target {
        return Ok(f.clone());
    }
    let emb = Embedding::new(f.ring(), target)?;
    Ok(f.map_coeffs(target, |&c| emb.apply(c)))
}

/// The value of `f` at `point`, computed in the field of the point.
pub fn poly_eval(f: &Poly, point: &Point) -> Result<u32, GeomError> {
    check_arity(f.nvars(), point)?;
    Ok(base_change(f, &point.field)?.eval(&point.coords))
}

fn check_arity(n: usize, point: &Point) -> Result<(), GeomError> {
    if n != point.coords.len() {
        return Err(GeomError::WrongArity {
            expected: n,
            got: point.coords.len(),
        });
    }
    Ok(())
}

/// `g(v) = f(v + point)`, with coefficients in the field of the point.
pub fn translate_to_origin(f: &Poly, point: &Point) -> Result<Poly, GeomError> {
    check_arity(f.nvars(), point)?;
    let g = base_change(f, &point.field)?;
    if point.coords.iter().all(|&c| c == 0) {
        return Ok(g);
    }
    let field = &point.field;
    let vars = f.vars();
    let images: Vec<Poly> = point
        .coords
        .iter()
        .enumerate()
        .map(|(i, &c)| Poly::var(field, vars, i).add(&Poly::constant(field, vars, c)))
        .collect();
    Ok(g.compose(&images))
}

/// The order of `f` at the origin and its lowest homogeneous part.
pub fn lowest_form(f: &Poly) -> Result<(u32, Poly), GeomError> {
    let ord = f.order().ok_or(GeomError::ZeroPolynomial)?;
    Ok((ord, f.homogeneous_part(ord)))
}

/// Rank of the Jacobian matrix of `generators` at `point`.
pub fn jacobian_rank_at(generators: &[Poly], point: &Point) -> Result<usize, GeomError> {
    let mut rows = Vec::with_capacity(generators.len());
    for g in generators {
        if poly_eval(g, point)? != 0 {
            return Err(GeomError::PointNotOnVariety);
        }
        let g = base_change(g, &point.field)?;
        rows.push(
            (0..g.nvars())
                .map(|i| g.derivative(i).eval(&point.coords))
                .collect::<Vec<u32>>(),
        );
    }
    Ok(dense_rank(&point.field, &rows))
}

/// Factors a univariate polynomial into monic irreducibles with
/// multiplicities. The factors are returned as polynomials in the same
/// variable set.
pub fn univar_factor(f: &Poly, seed: u64) -> Result<Vec<(Poly, u32)>, GeomError> {
    let support = f.support_vars();
    if support.len() != 1 {
        return Err(GeomError::NotUnivariate(f.to_string()));
    }
    let var = support[0];
    let u = UPoly::new(f.ring(), f.univariate_coeffs(var).unwrap());
    Ok(u.factor(seed)
        .into_iter()
        .map(|(g, m)| (g.to_multipoly(f.vars(), var), m))
        .collect())
}

/// Convenience parser for tests and callers that only need plain variable
/// names.
pub fn parse(src: &str, field: &FiniteField, names: &[&str]) -> Poly {
    Poly::parse(src, field, &crate::poly::vars(names)).expect("valid polynomial")
}

/// The variable list `names` as [`Vars`].
pub fn var_list(names: &[&str]) -> Vars {
    crate::poly::vars(names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_extension, make_prime_field};

    #[test]
    fn eval_examples() {
        let f3 = make_prime_field(3).unwrap();
        let f = parse("x^2+y^2", &f3, &["x", "y"]);
        assert_eq!(poly_eval(&f, &Point::new(&f3, vec![1, 1])).unwrap(), 2);
        let f2 = make_prime_field(2).unwrap();
        let g = parse("x^2+x*y+y^2", &f2, &["x", "y"]);
        assert_eq!(poly_eval(&g, &Point::origin(&f2, 2)).unwrap(), 0);
        let f5 = make_prime_field(5).unwrap();
        let c = parse("y^2-x^3", &f5, &["x", "y"]);
        assert_eq!(poly_eval(&c, &Point::new(&f5, vec![1, 1])).unwrap(), 0);
        assert_eq!(
            poly_eval(&c, &Point::new(&f3, vec![1, 1])),
            Err(GeomError::FieldMismatch)
        );
    }

    #[test]
    fn translation_of_cusp() {
        let f5 = make_prime_field(5).unwrap();
        let c = parse("y^2-x^3", &f5, &["x", "y"]);
        let t = translate_to_origin(&c, &Point::new(&f5, vec![1, 1])).unwrap();
        let expected = parse("(y+1)^2-(x+1)^3", &f5, &["x", "y"]);
        assert_eq!(t, expected);
        assert_eq!(t.constant_term(), 0);
    }

    #[test]
    fn lowest_forms() {
        let f2 = make_prime_field(2).unwrap();
        let f = parse("x*y*(x+y)", &f2, &["x", "y"]);
        assert_eq!(lowest_form(&f).unwrap(), (3, f.clone()));
        let f5 = make_prime_field(5).unwrap();
        let c = parse("y^2-x^3", &f5, &["x", "y"]);
        assert_eq!(
            lowest_form(&c).unwrap(),
            (2, parse("y^2", &f5, &["x", "y"]))
        );
        let l = parse("x+x^2", &f5, &["x", "y"]);
        assert_eq!(lowest_form(&l).unwrap().0, 1);
        assert_eq!(
            lowest_form(&Poly::zero(&f5, &var_list(&["x"]))),
            Err(GeomError::ZeroPolynomial)
        );
    }

    #[test]
    fn jacobian_examples() {
        let f3 = make_prime_field(3).unwrap();
        let f = parse("x^2+y^2+z^2", &f3, &["x", "y", "z"]);
        assert_eq!(
            jacobian_rank_at(std::slice::from_ref(&f), &Point::new(&f3, vec![1, 1, 1])).unwrap(),
            1
        );
        assert_eq!(
            jacobian_rank_at(&[f], &Point::new(&f3, vec![1, 0, 0])),
            Err(GeomError::PointNotOnVariety)
        );
        let f2 = make_prime_field(2).unwrap();
        let g = parse("x*y*(x+y)", &f2, &["x", "y"]);
        assert_eq!(jacobian_rank_at(&[g], &Point::origin(&f2, 2)).unwrap(), 0);
        let f5 = make_prime_field(5).unwrap();
        let c = parse("y^2-x^3", &f5, &["x", "y"]);
        assert_eq!(
            jacobian_rank_at(&[c], &Point::new(&f5, vec![1, 1])).unwrap(),
            1
        );
    }

    #[test]
    fn factor_examples() {
        let f2 = make_prime_field(2).unwrap();
        let v = ["y"];
        assert_eq!(
            univar_factor(&parse("y^2+y", &f2, &v), 1).unwrap(),
            vec![(parse("y", &f2, &v), 1), (parse("y+1", &f2, &v), 1)]
        );
        assert_eq!(
            univar_factor(&parse("y^2+y+1", &f2, &v), 1).unwrap(),
            vec![(parse("y^2+y+1", &f2, &v), 1)]
        );
        let f3 = make_prime_field(3).unwrap();
        assert_eq!(
            univar_factor(&parse("y^2+1", &f3, &v), 1).unwrap(),
            vec![(parse("y^2+1", &f3, &v), 1)]
        );
    }

    #[test]
    fn point_degrees() {
        let f2 = make_prime_field(2).unwrap();
        let f16 = make_extension(&f2, 4).unwrap();
        let f4 = make_extension(&f2, 2).unwrap();
        let g = f16.generator();
        assert_eq!(Point::new(&f16, vec![g, 0]).degree_over(&f2), 4);
        assert_eq!(Point::new(&f16, vec![g, 0]).degree_over(&f4), 2);
        assert_eq!(Point::new(&f16, vec![1, 0]).degree_over(&f2), 1);
    }
}
