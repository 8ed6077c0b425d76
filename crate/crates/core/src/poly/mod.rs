//! Sparse multivariate polynomials over a [`Ring`].
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! graded reverse lexicographic order; zero coefficients are never stored.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use parse::{parse_poly, ParseError};

use crate::ring::Ring;

/// An exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    /// All monomials in `nvars` variables of total degree exactly `d`.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .into()
}

#[derive(Clone)]
pub struct MultiPoly<R: Ring> {
    ring: R,
    vars: Vars,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> PartialEq for MultiPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.vars == other.vars && self.terms == other.terms
    }
}

impl<R: Ring> Eq for MultiPoly<R> {}

impl<R: Ring> Hash for MultiPoly<R> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(ring: &R, vars: &Vars) -> Self {
        MultiPoly {
            ring: ring.clone(),
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &R, vars: &Vars, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(ring: &R, vars: &Vars) -> Self {
        Self::constant(ring, vars, ring.one())
    }

    pub fn var(ring: &R, vars: &Vars, i: usize) -> Self {
        Self::monomial(ring, vars, Monomial::var(vars.len(), i), ring.one())
    }

    pub fn monomial(ring: &R, vars: &Vars, m: Monomial, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, vars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, R::Elem)>>(
        ring: &R,
        vars: &Vars,
        terms: I,
    ) -> Self {
        let mut p = Self::zero(ring, vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Parses a polynomial string; see [`parse_poly`].
    pub fn parse(src: &str, ring: &R, vars: &Vars) -> Result<Self, ParseError> {
        parse_poly(src, ring, vars, None)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing term order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> R::Elem {
        self.coeff(&Monomial::one(self.nvars()))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> R::Elem {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// Lowest total degree of a term; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.order(), self.total_degree()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    /// The terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        self.filter_terms(|m| m.degree() == d)
    }

    /// The terms of total degree `< n`.
    pub fn truncated(&self, n: u32) -> Self {
        self.filter_terms(|m| m.degree() < n)
    }

    fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: R::Elem) {
        debug_assert_eq!(m.0.len(), self.vars.len());
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.ring.add(existing, &c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.ring == other.ring && self.vars == other.vars,
            "polynomials over different rings or variable sets"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.ring.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(&self.ring, &self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.ring.mul(c1, c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        if self.ring.is_zero(c) {
            return Self::zero(&self.ring, &self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.ring.mul(v, c);
        }
        out.terms.retain(|_, v| !self.ring.is_zero(v));
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring, &self.vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales so that the leading coefficient is one (fields only).
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = self.ring.inv(c).expect("leading coefficient is invertible");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ring, &self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, self.ring.mul(c, &self.ring.from_int(e as i64)));
        }
        out
    }

    /// Evaluates at a point with coordinates in the coefficient ring.
    pub fn eval(&self, point: &[R::Elem]) -> R::Elem {
        assert_eq!(point.len(), self.nvars());
        let r = &self.ring;
        self.terms.iter().fold(r.zero(), |acc, (m, c)| {
            let v =
                m.0.iter()
                    .zip(point)
                    .filter(|(e, _)| **e > 0)
                    .fold(c.clone(), |t, (e, x)| r.mul(&t, &r.pow(x, *e as u64)));
            r.add(&acc, &v)
        })
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the
    /// variable set of the images.
    pub fn compose(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars());
        let target_vars = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut powers: Vec<Vec<Self>> = images
            .iter()
            .map(|p| vec![Self::one(&self.ring, &target_vars), p.clone()])
            .collect();
        let mut out = Self::zero(&self.ring, &target_vars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&self.ring, &target_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Maps coefficients into another ring.
    pub fn map_coeffs<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> MultiPoly<S> {
        let mut out = MultiPoly::zero(target, &self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Re-expresses the polynomial over another variable list, matching by
    /// name. Fails with the name of a used variable that is missing.
    pub fn with_vars(&self, new_vars: &Vars) -> Result<Self, String> {
        let mut index = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.iter().enumerate() {
            match new_vars.iter().position(|v| v == name) {
                Some(j) => index.push(Some(j)),
                None => {
                    if self.terms.keys().any(|m| m.0[i] > 0) {
                        return Err(name.clone());
                    }
                    index.push(None);
                }
            }
        }
        let mut out = Self::zero(&self.ring, new_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_vars.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if let Some(j) = index[i] {
                    e[j] = x;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Division with remainder by a single divisor, using leading terms in
    /// the graded reverse lexicographic order.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        self.check_compatible(divisor);
        let (lm, lc) = divisor.leading_term().expect("division by zero polynomial");
        let (lm, lc_inv) = (
            lm.clone(),
            self.ring
                .inv(lc)
                .expect("leading coefficient is invertible"),
        );
        let mut quotient = Self::zero(&self.ring, &self.vars);
        let mut remainder = Self::zero(&self.ring, &self.vars);
        let mut rest = self.clone();
        while let Some((m, c)) = rest.leading_term() {
            let (m, c) = (m.clone(), c.clone());
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = self.ring.mul(&c, &lc_inv);
                rest = rest.sub(&divisor.mul_monomial(&qm).scale(&qc));
                quotient.add_term(qm, qc);
            } else {
                rest.terms.remove(&m);
                remainder.add_term(m, c);
            }
        }
        (quotient, remainder)
    }

    /// Exact quotient, if `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Dense coefficient list (low degree first) when only variable `i`
    /// occurs.
    pub fn univariate_coeffs(&self, i: usize) -> Option<Vec<R::Elem>> {
        if self.support_vars().iter().any(|&j| j != i) {
            return None;
        }
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![self.ring.zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.0[i] as usize] = c.clone();
        }
        Some(out)
    }

    /// Builds `sum c_j x_i^j` from a dense coefficient list.
    pub fn from_univariate(ring: &R, vars: &Vars, i: usize, coeffs: &[R::Elem]) -> Self {
        Self::from_terms(
            ring,
            vars,
            coeffs.iter().enumerate().map(|(j, c)| {
                let mut e = vec![0; vars.len()];
                e[i] = j as u32;
                (Monomial(e), c.clone())
            }),
        )
    }
}

impl<R: Ring> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = self.ring.is_negative(c);
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { "-" } else { "+" })?;
            }
            let coeff = self.ring.format_elem(c);
            let plain = !coeff.contains('+');
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| {
                        if *e == 1 {
                            self.vars[i].clone()
                        } else {
                            format!("{}^{}", self.vars[i], e)
                        }
                    })
                    .collect();
            let coeff = if plain { coeff } else { format!("({coeff})") };
            if mono.is_empty() {
                f.write_str(&coeff)?;
            } else if coeff == "1" {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident) => {
        impl<R: Ring> std::ops::$tr for &MultiPoly<R> {
            type Output = MultiPoly<R>;
            fn $method(self, rhs: &MultiPoly<R>) -> MultiPoly<R> {
                MultiPoly::$method(self, rhs)
            }
        }
    };
}

poly_binop!(Add, add);
poly_binop!(Sub, sub);
poly_binop!(Mul, mul);

impl<R: Ring> std::ops::Neg for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn neg(self) -> MultiPoly<R> {
        MultiPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_prime_field;
    use crate::ring::Rationals;

    #[test]
    fn grevlex_order() {
        // x > y > z within degree one; x*z < y^2 in grevlex
        let x = Monomial::new(vec![1, 0, 0]);
        let y = Monomial::new(vec![0, 1, 0]);
        let z = Monomial::new(vec![0, 0, 1]);
        assert!(x > y && y > z);
        assert!(Monomial::new(vec![1, 0, 1]) < Monomial::new(vec![0, 2, 0]));
        assert!(Monomial::new(vec![0, 0, 2]) > x);
    }

    #[test]
    fn monomials_of_degree() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(2, 0).len(), 1);
    }

    #[test]
    fn arithmetic_and_display() {
        let f3 = make_prime_field(3).unwrap();
        let v = vars(&["x", "y"]);
        let f = MultiPoly::parse("x^2+y^2", &f3, &v).unwrap();
        let g = MultiPoly::parse("x-y", &f3, &v).unwrap();
        assert_eq!(f.to_string(), "x^2+y^2");
        assert_eq!((&g * &g).to_string(), "x^2+x*y+y^2");
        assert_eq!((&f - &f).to_string(), "0");
        let (q, r) = (&g * &f).div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q, f);
        assert!(f.div_exact(&g).is_none());
    }

    #[test]
    fn rational_display() {
        let v = vars(&["x"]);
        let p = MultiPoly::parse("5*x^3-10*x^2+x-7", &Rationals, &v).unwrap();
        assert_eq!(p.to_string(), "5*x^3-10*x^2+x-7");
    }

    #[test]
    fn derivative_and_compose() {
        let f5 = make_prime_field(5).unwrap();
        let v = vars(&["x", "y"]);
        let f = MultiPoly::parse("y^2-x^3", &f5, &v).unwrap();
        assert_eq!(f.derivative(0).to_string(), "2*x^2");
        let x = MultiPoly::var(&f5, &v, 0);
        let xy = MultiPoly::parse("x*y", &f5, &v).unwrap();
        // y^2 - x^3 at (x, x*y) = x^2 (y^2 - x)
        let chart = f.compose(&[x, xy]);
        assert_eq!(chart.to_string(), "x^2*y^2+4*x^3");
    }

    #[test]
    fn with_vars_remaps_by_name() {
        let f2 = make_prime_field(2).unwrap();
        let f = MultiPoly::parse("x*y+1", &f2, &vars(&["x", "y"])).unwrap();
        let g = f.with_vars(&vars(&["y", "t", "x"])).unwrap();
        assert_eq!(g.to_string(), "y*x+1");
        assert_eq!(f.with_vars(&vars(&["x"])), Err("y".to_string()));
    }
}
