//! Resolution of plane curve germs by quadratic transforms.
//!
//! Blowing up the origin, the strict transform meets the exceptional line
//! in finitely many points. A point where the strict transform meets the
//! exceptional line with intersection multiplicity one is a smooth point of
//! the strict transform, so exactly one place of the normalization lies
//! over it, with the residue field of that point. Every other point is
//! blown up again. Points of degree `e > 1` are handled by extending
//! scalars to degree `e` and following one of the conjugate roots.

use serde::Serialize;
use thiserror::Error;

use crate::arith::gcd_of_list;
use crate::bivariate::radical;
use crate::field::{field_of_order, FieldError};
use crate::geometry::{base_change, lowest_form, univar_factor, GeomError, Poly};
use crate::poly::{Monomial, Vars};

pub const DEFAULT_BLOWUP_BUDGET: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("zero germ")]
    ZeroGerm,
    #[error("germ {0} does not vanish at the origin")]
    NotAtOrigin(String),
    #[error("germ must have exactly two variables")]
    NotPlane,
    #[error("more than {0} blow-ups needed")]
    BlowupBudgetExceeded(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A point of the exceptional line of one blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalPoint {
    /// 1: `y' = root of factor` in the chart `(x, y) = (x, x y')`;
    /// 2: the origin of the chart `(x, y) = (x' y, y)`.
    pub chart: u8,
    /// Irreducible factor of `g_1(0, y')` (chart 1) or `x` (chart 2).
    pub factor: Poly,
    /// Degree of the point over the field of the germ.
    pub degree: u32,
    /// Intersection multiplicity of the strict transform with the
    /// exceptional line there.
    pub contact: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupStep {
    pub mult: u32,
    /// `g(x, x y) = x^mult * chart1`.
    pub chart1: Poly,
    /// `g(x y, y) = y^mult * chart2`.
    pub chart2: Poly,
    pub exceptional_points: Vec<ExceptionalPoint>,
}

fn check_plane(g: &Poly) -> Result<(), ResolutionError> {
    if g.nvars() != 2 {
        return Err(ResolutionError::NotPlane);
    }
    if g.is_zero() {
        return Err(ResolutionError::ZeroGerm);
    }
    if g.constant_term() != 0 {
        return Err(ResolutionError::NotAtOrigin(g.to_string()));
    }
    Ok(())
}

/// Applies `x^a y^b -> exps(a, b)` to every term.
fn map_exponents(g: &Poly, exps: impl Fn(u32, u32) -> (u32, u32)) -> Poly {
    Poly::from_terms(
        g.ring(),
        g.vars(),
        g.terms().map(|(m, c)| {
            let (a, b) = exps(m.exps()[0], m.exps()[1]);
            (Monomial::new(vec![a, b]), *c)
        }),
    )
}

/// One quadratic transform at the origin.
pub fn blowup_step(g: &Poly, seed: u64) -> Result<BlowupStep, ResolutionError> {
    check_plane(g)?;
    let (m, form) = lowest_form(g)?;
    let chart1 = map_exponents(g, |a, b| (a + b - m, b));
    let chart2 = map_exponents(g, |a, b| (a, a + b - m));
    let field = g.ring();
    let mut points = Vec::new();
    // g_1(0, y') is the dehomogenized lowest form L(1, y')
    let on_line = map_exponents(&form, |_, b| (0, b));
    if !on_line.is_constant() {
        for (factor, contact) in univar_factor(&on_line, seed)? {
            let degree = factor.total_degree().unwrap();
            points.push(ExceptionalPoint {
                chart: 1,
                factor,
                degree,
                contact,
            });
        }
    }
    let top = Monomial::new(vec![0, m]);
    if form.coeff(&top) == 0 {
        let contact = form.terms().map(|(mono, _)| mono.exps()[0]).min().unwrap();
        points.push(ExceptionalPoint {
            chart: 2,
            factor: Poly::var(field, g.vars(), 0),
            degree: 1,
            contact,
        });
    }
    Ok(BlowupStep {
        mult: m,
        chart1,
        chart2,
        exceptional_points: points,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionPlace {
    /// Degree of the residue field over the field of the original germ.
    pub residue_degree: u32,
    pub chart_path: Vec<String>,
}

impl ResolutionPlace {
    pub fn path_string(&self) -> String {
        self.chart_path.concat()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionReport {
    pub places: Vec<ResolutionPlace>,
    pub n_value: u64,
    pub blowup_count: u32,
    pub reduced_input: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveOptions {
    pub budget: u32,
    /// Which conjugate root to follow at points of degree `e > 1`
    /// (taken modulo `e`).
    pub root_choice: usize,
    pub seed: u64,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions {
            budget: DEFAULT_BLOWUP_BUDGET,
            root_choice: 0,
            seed: 1,
        }
    }
}

struct Resolver {
    opts: ResolveOptions,
    blowups: u32,
    places: Vec<ResolutionPlace>,
}

fn swap_vars(g: &Poly) -> Poly {
    map_exponents(g, |a, b| (b, a))
}

/// `g(x, y + beta)`.
fn shift_y(g: &Poly, beta: u32) -> Poly {
    let field = g.ring();
    let vars: &Vars = g.vars();
    let images = [
        Poly::var(field, vars, 0),
        Poly::var(field, vars, 1).add(&Poly::constant(field, vars, beta)),
    ];
    g.compose(&images)
}

impl Resolver {
    /// Blows up the origin of `g` and handles every point over it.
    fn blow_up(&mut self, g: &Poly, scale: u32, path: &[String]) -> Result<(), ResolutionError> {
        self.blowups += 1;
        if self.blowups > self.opts.budget {
            return Err(ResolutionError::BlowupBudgetExceeded(self.opts.budget));
        }
        let step = blowup_step(g, self.opts.seed)?;
        for pt in &step.exceptional_points {
            let mut here = path.to_vec();
            here.push(format!("(chart:{}, root:{})", pt.chart, pt.factor));
            if pt.contact == 1 {
                self.places.push(ResolutionPlace {
                    residue_degree: scale * pt.degree,
                    chart_path: here,
                });
                continue;
            }
            if pt.chart == 2 {
                self.blow_up(&swap_vars(&step.chart2), scale, &here)?;
                continue;
            }
            let field = g.ring();
            let (next, beta) = if pt.degree == 1 {
                let beta = field.neg(pt.factor.constant_term());
                (step.chart1.clone(), beta)
            } else {
                let ext =
                    field_of_order(field.characteristic() as u64, field.degree() * pt.degree)?;
                let lifted = base_change(&pt.factor, &ext)?;
                let roots: Vec<u32> = univar_factor(&lifted, self.opts.seed)?
                    .into_iter()
                    .map(|(f, _)| ext.neg(f.constant_term()))
                    .collect();
                let beta = roots[self.opts.root_choice % roots.len()];
                (base_change(&step.chart1, &ext)?, beta)
            };
            self.blow_up(&shift_y(&next, beta), scale * pt.degree, &here)?;
        }
        Ok(())
    }
}

/// Places of the normalization over the origin of the plane curve germ
/// `g = 0`, with their residue degrees.
pub fn resolve_germ(g: &Poly, opts: &ResolveOptions) -> Result<ResolutionReport, ResolutionError> {
    check_plane(g)?;
    let reduced = radical(g);
    let mut r = Resolver {
        opts: *opts,
        blowups: 0,
        places: Vec::new(),
    };
    if reduced.order() == Some(1) {
        r.places.push(ResolutionPlace {
            residue_degree: 1,
            chart_path: Vec::new(),
        });
    } else {
        r.blow_up(&reduced, 1, &[])?;
    }
    r.places.sort_by(|a, b| a.chart_path.cmp(&b.chart_path));
    Ok(ResolutionReport {
        n_value: gcd_of_list(r.places.iter().map(|p| p.residue_degree as u64)),
        places: r.places,
        blowup_count: r.blowups,
        reduced_input: reduced,
    })
}
