//! Plane models `X = V(f)` over `F_q[[t]]`: special fiber components,
//! model regularity, local multiplicities of the fiber, and degrees of
//! points lifted from the special fiber.

use serde::Serialize;
use thiserror::Error;

use crate::arith::gcd_of_list;
use crate::bivariate;
use crate::census::{regular_filter, CensusError};
use crate::field::FiniteField;
use crate::geometry::{
    base_change, jacobian_rank_at, lowest_form, poly_eval, translate_to_origin, GeomError, Point,
    Poly,
};
use crate::local::{local_length, multiplicity_at_point, LocalError, LocalRingSpec};
use crate::poly::{vars, Monomial, Vars};
use crate::variety::VarietyDescriptor;

pub const DEFAULT_T_TRUNCATION: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("f mod t is not a unit times the product of the components: {0}")]
    ComponentProductMismatch(String),
    #[error("f is divisible by the uniformizer")]
    NotFlat,
    #[error("components {0} and {1} share a factor")]
    ComponentsNotCoprime(usize, usize),
    #[error("component {0} is reducible: {1}")]
    ReducibleComponent(usize, String),
    #[error("component multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("point is not on the special fiber")]
    PointNotOnFiber,
    #[error("model is not regular at the point, or the point is not a smooth point of a single component")]
    NotRegularPoint,
    #[error("cutting germ does not pass through the point")]
    GermMissesPoint,
    /// `contact` is `None` when the germ contains the component.
    #[error("cutting germ is not transversal to the component (contact {contact:?})")]
    NotTransversal { contact: Option<u64> },
    #[error("variables must be (x, y) with the uniformizer named separately")]
    BadVariables,
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// `X = V(f)` in the affine plane over `F_q[[t]]`, with the special fiber
/// `f mod t = u * prod g_i^{r_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelDescriptor {
    pub field: FiniteField,
    /// `(x, y)`.
    pub vars: Vars,
    /// `(x, y, t)`.
    pub full_vars: Vars,
    pub f: Poly,
    pub components: Vec<(Poly, u32)>,
    pub t_truncation: u32,
    /// Notes about checks that were skipped.
    pub warnings: Vec<String>,
}

/// Largest degree and field size for exhaustive factor searches.
const FACTOR_SEARCH_DEGREE: u32 = 4;
const FACTOR_SEARCH_ORDER: u32 = 4;

/// A proper factor of `g` found by trying every monic candidate of degree
/// at most half the degree of `g`.
fn find_factor(g: &Poly) -> Option<Poly> {
    let deg = g.total_degree()?;
    let field = g.ring();
    let q = field.order() as u64;
    let monomials: Vec<Monomial> = (0..=deg / 2)
        .flat_map(|d| Monomial::all_of_degree(g.nvars(), d))
        .collect();
    let total = q.pow(monomials.len() as u32);
    (0..total).find_map(|mut index| {
        let h = Poly::from_terms(
            field,
            g.vars(),
            monomials.iter().map(|m| {
                let c = (index % q) as u32;
                index /= q;
                (m.clone(), c)
            }),
        );
        if h.is_constant() || h.leading_coeff() != 1 {
            return None;
        }
        g.div_exact(&h).map(|_| h)
    })
}

impl ModelDescriptor {
    /// Validates the special fiber decomposition. `names` are the two plane
    /// coordinates; the uniformizer is `uniformizer`.
    pub fn new(
        field: &FiniteField,
        names: [&str; 2],
        uniformizer: &str,
        f: Poly,
        components: Vec<(Poly, u32)>,
        t_truncation: u32,
    ) -> Result<ModelDescriptor, ModelError> {
        if names[0] == names[1] || names.contains(&uniformizer) {
            return Err(ModelError::BadVariables);
        }
        let plane = vars(&names);
        let full = vars(&[names[0], names[1], uniformizer]);
        let f = f.with_vars(&full).map_err(|_| ModelError::BadVariables)?;
        let mut comps = Vec::new();
        for (g, r) in components {
            if r == 0 {
                return Err(ModelError::ZeroMultiplicity);
            }
            comps.push((
                g.with_vars(&plane).map_err(|_| ModelError::BadVariables)?,
                r,
            ));
        }
        let m = ModelDescriptor {
            field: field.clone(),
            vars: plane,
            full_vars: full,
            f,
            components: comps,
            t_truncation,
            warnings: Vec::new(),
        };
        m.validate()
    }

    fn validate(mut self) -> Result<ModelDescriptor, ModelError> {
        let fiber = self.special_fiber();
        if fiber.is_zero() {
            return Err(ModelError::NotFlat);
        }
        let product = self
            .components
            .iter()
            .fold(Poly::one(&self.field, &self.vars), |acc, (g, r)| {
                acc.mul(&g.pow(*r))
            });
        if product.is_zero() || fiber.monic() != product.monic() {
            return Err(ModelError::ComponentProductMismatch(format!(
                "{fiber} vs {product}"
            )));
        }
        for i in 0..self.components.len() {
            for j in i + 1..self.components.len() {
                let g = bivariate::gcd(&self.components[i].0, &self.components[j].0);
                if !g.is_constant() {
                    return Err(ModelError::ComponentsNotCoprime(i, j));
                }
            }
        }
        for (i, (g, _)) in self.components.iter().enumerate() {
            let deg = g.total_degree().unwrap_or(0);
            if deg <= FACTOR_SEARCH_DEGREE && self.field.order() <= FACTOR_SEARCH_ORDER {
                if let Some(h) = find_factor(g) {
                    return Err(ModelError::ReducibleComponent(i, h.to_string()));
                }
            } else {
                self.warnings.push(format!(
                    "irreducibility of component {g} assumed, not verified"
                ));
            }
        }
        Ok(self)
    }

    /// `f mod t` as a polynomial in `(x, y)`.
    pub fn special_fiber(&self) -> Poly {
        let images = [
            Poly::var(&self.field, &self.vars, 0),
            Poly::var(&self.field, &self.vars, 1),
            Poly::zero(&self.field, &self.vars),
        ];
        self.f.compose(&images)
    }

    pub fn component_variety(&self, i: usize) -> VarietyDescriptor {
        VarietyDescriptor::affine(&self.field, &self.vars, vec![self.components[i].0.clone()])
            .expect("component lives over the model field")
    }

    pub fn fiber_variety(&self) -> VarietyDescriptor {
        VarietyDescriptor::affine(&self.field, &self.vars, vec![self.special_fiber()])
            .expect("fiber lives over the model field")
    }

    fn full_point(&self, point: &Point) -> Point {
        let mut coords = point.coords.clone();
        coords.push(0);
        Point::new(&point.field, coords)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub g: String,
    pub r: u32,
    pub delta_reg: u64,
    #[serde(rename = "D")]
    pub max_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    #[serde(rename = "gcd_Xk")]
    pub gcd_xk: u64,
    pub components: Vec<ComponentSummary>,
    pub warnings: Vec<String>,
}

/// `gcd_i r_i delta_{<=D}(Gamma_i^reg)`.
pub fn model_fiber_decomposition(
    m: &ModelDescriptor,
    max_degree: u32,
) -> Result<FiberReport, ModelError> {
    let mut components = Vec::new();
    let mut warnings = m.warnings.clone();
    for (i, (g, r)) in m.components.iter().enumerate() {
        let census = regular_filter(&m.component_variety(i), max_degree)?;
        if census.gcd_estimate == 0 {
            warnings.push(format!(
                "component {g} has no regular point of degree <= {max_degree}"
            ));
        }
        components.push(ComponentSummary {
            g: g.to_string(),
            r: *r,
            delta_reg: census.gcd_estimate,
            max_degree,
        });
    }
    Ok(FiberReport {
        gcd_xk: gcd_of_list(components.iter().map(|c| c.r as u64 * c.delta_reg)),
        components,
        warnings,
    })
}

/// Whether `X` is regular at a point of the special fiber: `f` has order one
/// there in the coordinates `(x, y, t)`.
pub fn model_regularity_at(m: &ModelDescriptor, point: &Point) -> Result<bool, ModelError> {
    let full = m.full_point(point);
    let translated = translate_to_origin(&m.f, &full)?;
    if translated.constant_term() != 0 {
        return Err(ModelError::PointNotOnFiber);
    }
    Ok(lowest_form(&translated)?.0 == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelPointReport {
    pub point: String,
    pub degree: u32,
    pub regular_on_model: bool,
    /// `(component index, e_i)`.
    pub components_through: Vec<(usize, u64)>,
    pub e_fiber: u64,
    pub min_degree_bound: u64,
}

pub fn model_point_report(
    m: &ModelDescriptor,
    point: &Point,
) -> Result<ModelPointReport, ModelError> {
    let regular = model_regularity_at(m, point)?;
    let mut through = Vec::new();
    for (i, (g, _)) in m.components.iter().enumerate() {
        if poly_eval(g, point)? == 0 {
            through.push((i, multiplicity_at_point(&m.component_variety(i), point)?));
        }
    }
    let e_fiber = through
        .iter()
        .map(|&(i, e)| m.components[i].1 as u64 * e)
        .sum::<u64>();
    let degree = point.degree_over(&m.field);
    Ok(ModelPointReport {
        point: point.format("a"),
        degree,
        regular_on_model: regular,
        components_through: through,
        e_fiber,
        min_degree_bound: e_fiber * degree as u64,
    })
}

/// `e(O_{X_k, x})` computed directly from `f mod t`.
pub fn fiber_multiplicity_direct(m: &ModelDescriptor, point: &Point) -> Result<u64, ModelError> {
    Ok(multiplicity_at_point(&m.fiber_variety(), point)?)
}

/// A truncated power series solution of `f = 0` along the cutting line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesWitness {
    /// The coordinate solved for.
    pub variable: String,
    /// The fixed coordinate and its value.
    pub fixed: String,
    /// Coefficients of `t^0 .. t^{N-1}`.
    pub coefficients: Vec<String>,
    pub series: String,
    pub truncation: u32,
    pub residual_vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub point: String,
    pub cutting_germ: String,
    pub computed_degree: u64,
    pub predicted_degree: u64,
    pub series_witness: Option<SeriesWitness>,
}

impl LiftReport {
    pub fn agrees(&self) -> bool {
        self.computed_degree == self.predicted_degree
            && self
                .series_witness
                .as_ref()
                .is_none_or(|w| w.residual_vanishes)
    }
}

/// Truncated power series arithmetic mod `t^n`.
fn series_mul(field: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len();
    let mut out = vec![0u32; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().take(n - i).enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

/// `f(s_0(t), s_1(t), t)` mod `t^n`.
fn eval_series(f: &Poly, s: [&[u32]; 2], n: usize) -> Vec<u32> {
    let field = f.ring();
    let mut t = vec![0u32; n];
    if n > 1 {
        t[1] = 1;
    }
    let inputs = [s[0], s[1], &t[..]];
    let mut out = vec![0u32; n];
    for (m, c) in f.terms() {
        let mut term = vec![0u32; n];
        term[0] = *c;
        for (k, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                term = series_mul(field, &term, inputs[k]);
            }
        }
        for (o, v) in out.iter_mut().zip(term) {
            *o = field.add(*o, v);
        }
    }
    out
}

fn format_series(field: &FiniteField, coeffs: &[u32], var: &str) -> String {
    let parts: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(k, &c)| {
            let c = field.format_element(c, "a");
            let c = if c.contains('+') { format!("({c})") } else { c };
            match (k, c.as_str()) {
                (0, _) => c,
                (1, "1") => var.to_string(),
                (_, "1") => format!("{var}^{k}"),
                (1, _) => format!("{c}*{var}"),
                _ => format!("{c}*{var}^{k}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Solves `f = 0` for one plane coordinate as a series in `t`, with the other
/// coordinate fixed, by coefficient-wise Hensel lifting.
fn series_solution(
    m: &ModelDescriptor,
    f: &Poly,
    point: &Point,
    solve_for: usize,
) -> Option<SeriesWitness> {
    let field = &point.field;
    let n = m.t_truncation.max(1) as usize;
    let full = m.full_point(point);
    let slope = f.derivative(solve_for).eval(&full.coords);
    let slope_inv = field.inv(slope)?;
    let fixed = 1 - solve_for;
    let mut fixed_series = vec![0u32; n];
    fixed_series[0] = point.coords[fixed];
    let mut sol = vec![0u32; n];
    sol[0] = point.coords[solve_for];
    let inputs = |sol: &[u32]| -> Vec<u32> {
        let mut s: [&[u32]; 2] = [&fixed_series, &fixed_series];
        s[solve_for] = sol;
        eval_series(f, s, n)
    };
    for k in 1..n {
        let residual = inputs(&sol);
        sol[k] = field.neg(field.mul(residual[k], slope_inv));
    }
    let residual = inputs(&sol);
    let coefficients = sol.iter().map(|&c| field.format_element(c, "a")).collect();
    Some(SeriesWitness {
        variable: m.vars[solve_for].clone(),
        fixed: format!(
            "{}={}",
            m.vars[fixed],
            field.format_element(point.coords[fixed], "a")
        ),
        coefficients,
        series: format_series(field, &sol, &m.full_vars[2]),
        truncation: n as u32,
        residual_vanishes: residual.iter().all(|&c| c == 0),
    })
}

/// If `g = c (x - a)` or `c (y - b)`, the index of the fixed coordinate.
fn fixed_coordinate(g: &Poly) -> Option<usize> {
    if g.total_degree() != Some(1) {
        return None;
    }
    match g.support_vars().as_slice() {
        [i] => Some(*i),
        _ => None,
    }
}

/// The degree over `F_q[[t]]` of the lift of `point` cut out by `g`,
/// read as a length on the closed fiber.
pub fn lift_degree(m: &ModelDescriptor, point: &Point, g: &Poly) -> Result<LiftReport, ModelError> {
    let g = g.with_vars(&m.vars).map_err(|_| ModelError::BadVariables)?;
    let report = model_point_report(m, point)?;
    if !report.regular_on_model {
        return Err(ModelError::NotRegularPoint);
    }
    let [(i, e_i)] = report.components_through.as_slice() else {
        return Err(ModelError::NotRegularPoint);
    };
    let (component, r_i) = &m.components[*i];
    if jacobian_rank_at(std::slice::from_ref(component), point)? != 1 {
        return Err(ModelError::NotRegularPoint);
    }
    if poly_eval(&g, point)? != 0 {
        return Err(ModelError::GermMissesPoint);
    }
    let gamma_local = LocalRingSpec::hypersurface(&translate_to_origin(component, point)?)?;
    let g_local = translate_to_origin(&g, point)?;
    match local_length(&gamma_local, &[g_local]) {
        Ok(1) => {}
        Ok(contact) => {
            return Err(ModelError::NotTransversal {
                contact: Some(contact),
            })
        }
        Err(LocalError::NotFinite { .. }) => {
            return Err(ModelError::NotTransversal { contact: None })
        }
        Err(e) => return Err(e.into()),
    }
    let full = m.full_point(point);
    let f_local = translate_to_origin(&m.f, &full)?;
    let g_full = translate_to_origin(&g.with_vars(&m.full_vars).expect("plane variables"), &full)?;
    let t_local = Poly::var(&point.field, &m.full_vars, 2);
    let spec = LocalRingSpec::new(
        &point.field,
        &m.full_vars,
        vec![f_local, g_full, t_local],
        None,
    )?;
    let length = local_length(&spec, &[])?;
    let degree = report.degree as u64;
    let smooth_fiber = *r_i == 1 && *e_i == 1;
    let series_witness = if smooth_fiber {
        fixed_coordinate(&g).and_then(|fixed| {
            let f_ext = base_change(&m.f, &point.field).ok()?;
            series_solution(m, &f_ext, point, 1 - fixed)
        })
    } else {
        None
    };
    Ok(LiftReport {
        point: report.point,
        cutting_germ: g.to_string(),
        computed_degree: degree * length,
        predicted_degree: *r_i as u64 * e_i * degree,
        series_witness,
    })
}

/// For every `d <= D`: the fiber points over `F_{q^d}` are exactly the points
/// on some component, and counting each with the sum of the multiplicities
/// `r_i` of the components through it gives `sum_i r_i N_d(Gamma_i)`.
pub fn fiber_cycle_identity(m: &ModelDescriptor, max_degree: u32) -> Result<bool, ModelError> {
    use crate::census::enumerate_points;
    for d in 1..=max_degree {
        let fiber_points = enumerate_points(&m.fiber_variety(), d)?;
        let mut weighted = 0u64;
        for p in &fiber_points {
            let mut w = 0;
            for (g, r) in &m.components {
                if poly_eval(g, p)? == 0 {
                    w += *r as u64;
                }
            }
            if w == 0 {
                return Ok(false);
            }
            weighted += w;
        }
        let mut expected = 0u64;
        for (i, (_, r)) in m.components.iter().enumerate() {
            expected += *r as u64 * enumerate_points(&m.component_variety(i), d)?.len() as u64;
        }
        if weighted != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{field_of_order, make_prime_field};

    fn model(p: u64, f: &str, comps: &[(&str, u32)]) -> ModelDescriptor {
        let field = make_prime_field(p).unwrap();
        let full = vars(&["x", "y", "t"]);
        let plane = vars(&["x", "y"]);
        let f = Poly::parse(f, &field, &full).unwrap();
        let comps = comps
            .iter()
            .map(|(g, r)| (Poly::parse(g, &field, &plane).unwrap(), *r))
            .collect();
        ModelDescriptor::new(&field, ["x", "y"], "t", f, comps, DEFAULT_T_TRUNCATION).unwrap()
    }

    #[test]
    fn fiber_gcds() {
        let a = model(3, "x^2+y^2+t", &[("x^2+y^2", 1)]);
        assert_eq!(model_fiber_decomposition(&a, 2).unwrap().gcd_xk, 2);
        let b = model(3, "t-(x^2+y^2+1)^2", &[("x^2+y^2+1", 2)]);
        assert_eq!(model_fiber_decomposition(&b, 2).unwrap().gcd_xk, 2);
        let c = model(2, "x*y-t", &[("x", 1), ("y", 1)]);
        assert_eq!(model_fiber_decomposition(&c, 1).unwrap().gcd_xk, 1);
        for m in [&a, &b, &c] {
            assert!(fiber_cycle_identity(m, 2).unwrap());
        }
    }

    #[test]
    fn descriptor_validation() {
        let field = make_prime_field(2).unwrap();
        let full = vars(&["x", "y", "t"]);
        let plane = vars(&["x", "y"]);
        let p = |s: &str| Poly::parse(s, &field, &plane).unwrap();
        let f = Poly::parse("x*y-t", &field, &full).unwrap();
        let bad = ModelDescriptor::new(&field, ["x", "y"], "t", f.clone(), vec![(p("x"), 1)], 16);
        assert!(matches!(bad, Err(ModelError::ComponentProductMismatch(_))));
        let tf = Poly::parse("t*x", &field, &full).unwrap();
        assert_eq!(
            ModelDescriptor::new(&field, ["x", "y"], "t", tf, vec![(p("x"), 1)], 16),
            Err(ModelError::NotFlat)
        );
        let red = Poly::parse("x*y+x^2-t", &field, &full).unwrap();
        assert!(matches!(
            ModelDescriptor::new(&field, ["x", "y"], "t", red, vec![(p("x*y+x^2"), 1)], 16),
            Err(ModelError::ReducibleComponent(0, _))
        ));
        let same = Poly::parse("x^2-t", &field, &full).unwrap();
        assert_eq!(
            ModelDescriptor::new(
                &field,
                ["x", "y"],
                "t",
                same,
                vec![(p("x"), 1), (p("x"), 1)],
                16
            ),
            Err(ModelError::ComponentsNotCoprime(0, 1))
        );
    }

    #[test]
    fn regularity() {
        let f3 = make_prime_field(3).unwrap();
        let a = model(3, "x^2+y^2+t", &[("x^2+y^2", 1)]);
        assert!(model_regularity_at(&a, &Point::origin(&f3, 2)).unwrap());
        let b = model(3, "t-(x^2+y^2+1)^2", &[("x^2+y^2+1", 2)]);
        assert!(model_regularity_at(&b, &Point::new(&f3, vec![1, 1])).unwrap());
        let c = model(3, "x^2+y^2+t^2", &[("x^2+y^2", 1)]);
        assert!(!model_regularity_at(&c, &Point::origin(&f3, 2)).unwrap());
        assert_eq!(
            model_regularity_at(&a, &Point::new(&f3, vec![1, 0])),
            Err(ModelError::PointNotOnFiber)
        );
    }

    #[test]
    fn point_reports() {
        let f3 = make_prime_field(3).unwrap();
        let a = model(3, "x^2+y^2+t", &[("x^2+y^2", 1)]);
        let r = model_point_report(&a, &Point::origin(&f3, 2)).unwrap();
        assert_eq!((r.e_fiber, r.min_degree_bound), (2, 2));
        let b = model(3, "t-(x^2+y^2+1)^2", &[("x^2+y^2+1", 2)]);
        let pt = Point::new(&f3, vec![1, 1]);
        let r = model_point_report(&b, &pt).unwrap();
        assert_eq!((r.e_fiber, r.min_degree_bound), (2, 2));
        assert_eq!(fiber_multiplicity_direct(&b, &pt).unwrap(), 2);
        let f2 = make_prime_field(2).unwrap();
        let c = model(2, "x*y-t", &[("x", 1), ("y", 1)]);
        let r = model_point_report(&c, &Point::origin(&f2, 2)).unwrap();
        assert_eq!((r.e_fiber, r.min_degree_bound), (2, 2));
    }

    #[test]
    fn lifts() {
        let f3 = make_prime_field(3).unwrap();
        let plane = vars(&["x", "y"]);
        let b = model(3, "t-(x^2+y^2+1)^2", &[("x^2+y^2+1", 2)]);
        let g = Poly::parse("x-1", &f3, &plane).unwrap();
        let r = lift_degree(&b, &Point::new(&f3, vec![1, 1]), &g).unwrap();
        assert_eq!((r.computed_degree, r.predicted_degree), (2, 2));
        assert!(r.series_witness.is_none());

        let f2 = make_prime_field(2).unwrap();
        let c = model(2, "x*y-t", &[("x", 1), ("y", 1)]);
        let g = Poly::parse("x-1", &f2, &plane).unwrap();
        let r = lift_degree(&c, &Point::new(&f2, vec![1, 0]), &g).unwrap();
        assert_eq!((r.computed_degree, r.predicted_degree), (1, 1));
        let w = r.series_witness.unwrap();
        assert_eq!(
            (w.variable.as_str(), w.series.as_str(), w.residual_vanishes),
            ("y", "t", true)
        );

        let f9 = field_of_order(3, 2).unwrap();
        let a = model(3, "x^2+y^2+t", &[("x^2+y^2", 1)]);
        let i = f9.generator();
        assert_eq!(f9.mul(i, i), f9.from_int(-1));
        let g = Poly::parse("y-1", &f3, &plane).unwrap();
        let r = lift_degree(&a, &Point::new(&f9, vec![i, 1]), &g).unwrap();
        assert_eq!((r.computed_degree, r.predicted_degree), (2, 2));
        let w = r.series_witness.unwrap();
        assert!(w.residual_vanishes);
        assert_eq!(w.variable, "x");

        assert_eq!(
            lift_degree(&a, &Point::origin(&f3, 2), &g),
            Err(ModelError::NotRegularPoint)
        );
    }
}
