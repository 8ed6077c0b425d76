//! The built-in verification suite.

use std::fmt::Display;

use idxlab_core::census::{closed_point_census, index_estimate, regular_filter};
use idxlab_core::cone::{build_affine_cone, cone_theorem_check};
use idxlab_core::fermat::fermat_decomposition;
use idxlab_core::field::{field_of_order, FiniteField};
use idxlab_core::geometry::lowest_form;
use idxlab_core::invariants::{
    check_additivity, check_associativity, gamma_estimate, principal_multiplicity_scan,
    ComponentData, GammaReport,
};
use idxlab_core::local::{hs_table, LocalRingSpec, PrimaryIdealSpec};
use idxlab_core::models::{
    fiber_multiplicity_direct, lift_degree, model_fiber_decomposition, model_point_report,
    model_regularity_at, ModelDescriptor, DEFAULT_T_TRUNCATION,
};
use idxlab_core::poly::vars;
use idxlab_core::resolution::{resolve_germ, ResolveOptions};
use idxlab_core::variety::{Ambient, VarietyDescriptor};
use idxlab_core::{Point, Poly};
use serde::Serialize;

use crate::config::RunConfig;
use crate::descriptor::{parse_element, parse_polynomial, SCHEMA};
use crate::views;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    /// The identity or value being checked.
    pub anchor: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub seed: u64,
    pub trials: u32,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    /// Checks of one acceptance criterion, by id prefix `c<n>.`.
    pub fn criterion(&self, n: u32) -> Vec<&Check> {
        let prefix = format!("c{n}.");
        self.checks
            .iter()
            .filter(|c| c.id.starts_with(&prefix))
            .collect()
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("suite report serializes");
        s.push('\n');
        s
    }
}

/// A polynomial over `F_{p^k}` in the given variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    pub p: u64,
    pub k: u32,
    pub vars: Vec<String>,
    pub f: String,
}

impl Germ {
    pub fn new(p: u64, k: u32, names: &[&str], f: &str) -> Germ {
        Germ {
            p,
            k,
            vars: names.iter().map(|s| s.to_string()).collect(),
            f: f.to_string(),
        }
    }

    fn field(&self) -> Result<FiniteField, String> {
        field_of_order(self.p, self.k).map_err(|e| e.to_string())
    }

    fn names(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    fn poly_in(&self, src: &str) -> Result<Poly, String> {
        parse_polynomial(src, &self.field()?, &vars(&self.names()), "corpus")
            .map_err(|e| e.to_string())
    }

    fn poly(&self) -> Result<Poly, String> {
        self.poly_in(&self.f)
    }

    fn local(&self) -> Result<LocalRingSpec, String> {
        LocalRingSpec::hypersurface(&self.poly()?).map_err(|e| e.to_string())
    }

    fn projective(&self) -> Result<VarietyDescriptor, String> {
        VarietyDescriptor::new(
            &self.field()?,
            Ambient::Projective,
            &vars(&self.names()),
            vec![self.poly()?],
        )
        .map_err(|e| e.to_string())
    }

    /// Ideals given as lists of generators, on the hypersurface ring.
    fn ideals(
        &self,
        spec: &LocalRingSpec,
        gens: &[Vec<String>],
    ) -> Result<Vec<PrimaryIdealSpec>, String> {
        gens.iter()
            .map(|g| {
                let polys = g
                    .iter()
                    .map(|s| self.poly_in(s))
                    .collect::<Result<Vec<_>, _>>()?;
                PrimaryIdealSpec::new(spec, polys).map_err(|e| e.to_string())
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelEntry {
    pub p: u64,
    pub f: String,
    pub components: Vec<(String, u32)>,
}

impl ModelEntry {
    fn new(p: u64, f: &str, components: &[(&str, u32)]) -> ModelEntry {
        ModelEntry {
            p,
            f: f.to_string(),
            components: components
                .iter()
                .map(|(g, r)| (g.to_string(), *r))
                .collect(),
        }
    }

    fn build(&self) -> Result<ModelDescriptor, String> {
        let field = field_of_order(self.p, 1).map_err(|e| e.to_string())?;
        let full = vars(&["x", "y", "t"]);
        let plane = vars(&["x", "y"]);
        let f = parse_polynomial(&self.f, &field, &full, "f").map_err(|e| e.to_string())?;
        let comps = self
            .components
            .iter()
            .map(|(g, r)| {
                Ok((
                    parse_polynomial(g, &field, &plane, "g").map_err(|e| e.to_string())?,
                    *r,
                ))
            })
            .collect::<Result<Vec<_>, String>>()?;
        ModelDescriptor::new(&field, ["x", "y"], "t", f, comps, DEFAULT_T_TRUNCATION)
            .map_err(|e| e.to_string())
    }
}

/// Inputs of the suite. Expected values live in the checks, so changing an
/// entry makes the corresponding checks fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    /// `xy(x+y)`, read over `F_2` and over `F_4`.
    pub triple_point: String,
    pub triple_point_curated: Vec<String>,
    /// `x^2+xy+y^2` over `F_2`: a germ, and a pair of conjugate points on `P^1`.
    pub conjugate_pair: String,
    pub conjugate_pair_curated: Vec<Vec<String>>,
    /// A smooth conic in `P^2` over `F_3`.
    pub conic: String,
    pub conic_curated: Vec<Vec<String>>,
    /// A cusp over `F_5`.
    pub cusp: String,
    pub quadric_model: ModelEntry,
    pub double_fiber_model: ModelEntry,
    pub node_model: ModelEntry,
    pub hypersurfaces: Vec<Germ>,
    pub fermat_primes: Vec<u64>,
}

impl Corpus {
    pub fn builtin() -> Corpus {
        let xy = ["x", "y"];
        let xyz = ["x", "y", "z"];
        Corpus {
            triple_point: "x*y*(x+y)".into(),
            triple_point_curated: vec!["x^2+x*y+y^2".into(), "x^2+y^3".into()],
            conjugate_pair: "x^2+x*y+y^2".into(),
            conjugate_pair_curated: vec![vec!["x".into()], vec!["y".into()]],
            conic: "x^2+y^2+z^2".into(),
            conic_curated: vec![
                vec!["x".into(), "y".into()],
                vec!["x-y".into(), "z-x+x^2".into()],
            ],
            cusp: "y^2-x^3".into(),
            quadric_model: ModelEntry::new(3, "x^2+y^2+t", &[("x^2+y^2", 1)]),
            double_fiber_model: ModelEntry::new(3, "t-(x^2+y^2+1)^2", &[("x^2+y^2+1", 2)]),
            node_model: ModelEntry::new(2, "x*y-t", &[("x", 1), ("y", 1)]),
            hypersurfaces: vec![
                Germ::new(2, 1, &xy, "y-x^2"),
                Germ::new(2, 1, &xy, "x*y*(x+y)"),
                Germ::new(2, 1, &xy, "x^2+x*y+y^2"),
                Germ::new(5, 1, &xy, "y^2-x^3"),
                Germ::new(3, 1, &xy, "x^2*y"),
                Germ::new(3, 1, &xy, "x^3+y^5+x*y^3"),
                Germ::new(5, 1, &xy, "(x^2-y^3)^2"),
                Germ::new(2, 2, &xy, "x^4+y^4+a*x^2*y"),
                Germ::new(3, 1, &xyz, "x^2+y^2+z^2"),
                Germ::new(2, 1, &xyz, "x*y*z"),
                Germ::new(5, 1, &xyz, "x^3+y^3+z^3+x*y*z^2"),
                Germ::new(3, 1, &xyz, "y^2*z-x^3-x*z^2"),
            ],
            fermat_primes: vec![5, 7, 11, 13],
        }
    }
}

struct Outcome {
    lhs: String,
    rhs: String,
    pass: bool,
    witness: String,
}

fn equal<T: PartialEq + Display>(lhs: T, rhs: T, witness: impl Into<String>) -> Outcome {
    Outcome {
        pass: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        witness: witness.into(),
    }
}

fn list<T: Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(T::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn err(e: impl Display) -> String {
    e.to_string()
}

struct Runner<'a> {
    config: &'a RunConfig,
    checks: Vec<Check>,
}

impl Runner<'_> {
    fn check(&mut self, id: &str, anchor: &str, f: impl FnOnce() -> Result<Outcome, String>) {
        let check = match f() {
            Ok(o) => Check {
                id: id.into(),
                anchor: anchor.into(),
                status: if o.pass { Status::Pass } else { Status::Fail },
                lhs: o.lhs,
                rhs: o.rhs,
                witness: o.witness,
            },
            Err(e) => Check {
                id: id.into(),
                anchor: anchor.into(),
                status: Status::Fail,
                lhs: String::new(),
                rhs: String::new(),
                witness: format!("error: {e}"),
            },
        };
        self.checks.push(check);
    }

    /// A check that draws random parameter ideals; skipped with zero trials.
    fn sampled(&mut self, id: &str, anchor: &str, f: impl FnOnce() -> Result<Outcome, String>) {
        if self.config.trials == 0 {
            self.checks.push(Check {
                id: id.into(),
                anchor: anchor.into(),
                status: Status::Skipped,
                lhs: String::new(),
                rhs: String::new(),
                witness: "trials = 0".into(),
            });
        } else {
            self.check(id, anchor, f);
        }
    }

    fn gamma(
        &self,
        spec: &LocalRingSpec,
        trials: u32,
        curated: &[PrimaryIdealSpec],
    ) -> Result<GammaReport, String> {
        gamma_estimate(
            spec,
            trials,
            self.config.seed,
            curated,
            &self.config.sampling(),
        )
        .map_err(err)
    }
}

fn principal(
    spec: &LocalRingSpec,
    gens: &[String],
    germ: &Germ,
) -> Result<Vec<PrimaryIdealSpec>, String> {
    let lists: Vec<Vec<String>> = gens.iter().map(|g| vec![g.clone()]).collect();
    germ.ideals(spec, &lists)
}

fn sample_values(r: &GammaReport) -> Vec<u64> {
    r.samples.iter().map(|s| s.e).collect()
}

/// `n` divides `e(m)` and every sampled multiplicity.
fn n_divides(n: u64, r: &GammaReport) -> Outcome {
    let all: Vec<u64> = std::iter::once(r.e_of_m).chain(sample_values(r)).collect();
    Outcome {
        pass: n != 0 && all.iter().all(|e| e % n == 0) && r.minimality_holds(),
        lhs: format!("gcd{} = {}", list(&all), r.running_gcd),
        rhs: format!("multiple of n = {n}"),
        witness: format!("{} sampled ideals", r.samples.len()),
    }
}

pub fn run_suite(config: &RunConfig) -> SuiteReport {
    run_suite_with(config, &Corpus::builtin())
}

pub fn run_suite_with(config: &RunConfig, corpus: &Corpus) -> SuiteReport {
    let mut r = Runner {
        config,
        checks: Vec::new(),
    };
    local_checks(&mut r, corpus);
    cone_checks(&mut r, corpus);
    resolution_checks(&mut r, corpus);
    model_checks(&mut r, corpus);
    census_checks(&mut r);
    fermat_checks(&mut r, corpus);
    property_checks(&mut r, corpus);
    let passed = r.checks.iter().all(|c| c.status != Status::Fail);
    SuiteReport {
        schema: SCHEMA,
        seed: config.seed,
        trials: config.trials,
        checks: r.checks,
        passed,
    }
}

fn local_checks(r: &mut Runner, corpus: &Corpus) {
    let xy = ["x", "y"];
    let triple = Germ::new(2, 1, &xy, &corpus.triple_point);
    let hs = r.config.hs_options();
    r.check(
        "c1.e_m",
        "e(m) of the triple point xy(x+y) over F_2",
        || {
            let spec = triple.local()?;
            let t = hs_table(&spec, &spec.maximal_ideal(), &hs).map_err(err)?;
            Ok(equal(t.multiplicity, 3, format!("lengths {:?}", t.rows)))
        },
    );
    let scan = || {
        let spec = triple.local()?;
        principal_multiplicity_scan(&spec, 3, &hs).map_err(err)
    };
    r.check(
        "c1.scan.attains",
        "principal colengths 6 and 7 occur (degree bound 3)",
        || {
            let s = scan()?;
            let values: Vec<u64> = s.values.keys().copied().collect();
            Ok(equal(
                format!("{},{}", s.contains(6), s.contains(7)),
                "true,true".into(),
                format!("values {}", list(&values)),
            ))
        },
    );
    r.check(
        "c1.scan.misses_three",
        "no principal ideal of colength 3 (degree bound 3)",
        || {
            let s = scan()?;
            Ok(equal(
                s.contains(3),
                false,
                format!("{} candidates, {} zero divisors", s.candidates, s.skipped),
            ))
        },
    );
    let curated_gamma = |r: &Runner| -> Result<GammaReport, String> {
        let spec = triple.local()?;
        let curated = principal(&spec, &corpus.triple_point_curated, &triple)?;
        r.gamma(&spec, 0, &curated)
    };
    let g = curated_gamma(r);
    r.check(
        "c1.gamma.curated_values",
        "e(Q) of the curated ideals",
        || {
            let g = g.clone()?;
            Ok(equal(
                list(&sample_values(&g)),
                "[6,7]".into(),
                views::gamma(&g).to_string(),
            ))
        },
    );
    r.check(
        "c1.gamma.curated_gcd",
        "gcd of e(m) and the curated e(Q)",
        || {
            let g = g.clone()?;
            Ok(equal(g.running_gcd, 1, list(&g.gcd_history)))
        },
    );
    let n = triple
        .poly()
        .and_then(|f| resolve_germ(&f, &ResolveOptions::default()).map_err(err));
    r.check("c1.resolve.n", "n from the resolution of xy(x+y)", || {
        let n = n.clone()?;
        Ok(equal(n.n_value, 1, views::resolution(&n).to_string()))
    });
    r.check(
        "c1.n_equals_gamma",
        "n equals the gcd of the multiplicities",
        || {
            Ok(equal(
                n.clone()?.n_value,
                g.clone()?.running_gcd,
                "resolution against curated gcd",
            ))
        },
    );
    r.sampled("c1.gamma.sampled", "n divides every sampled e(Q)", || {
        let spec = triple.local()?;
        let g = r_gamma(r.config, &spec)?;
        Ok(n_divides(n.clone()?.n_value, &g))
    });

    let triple4 = Germ::new(2, 2, &xy, &corpus.triple_point);
    r.check(
        "c2.scan_f4",
        "a linear element of colength 3 over F_4",
        || {
            let spec = triple4.local()?;
            let s = principal_multiplicity_scan(&spec, 1, &hs).map_err(err)?;
            let witness = s
                .values
                .get(&3)
                .map_or("none".to_string(), |f| format!("f = {f}"));
            Ok(equal(s.contains(3), true, witness))
        },
    );
    r.check(
        "c2.scan_f2",
        "no linear element of colength 3 over F_2",
        || {
            let spec = triple.local()?;
            let s = principal_multiplicity_scan(&spec, 1, &hs).map_err(err)?;
            let values: Vec<u64> = s.values.keys().copied().collect();
            Ok(equal(
                s.contains(3),
                false,
                format!("values {}", list(&values)),
            ))
        },
    );
}

fn r_gamma(config: &RunConfig, spec: &LocalRingSpec) -> Result<GammaReport, String> {
    gamma_estimate(spec, config.trials, config.seed, &[], &config.sampling()).map_err(err)
}

fn cone_checks(r: &mut Runner, corpus: &Corpus) {
    let cases = [
        (
            "pair",
            Germ::new(2, 1, &["x", "y"], &corpus.conjugate_pair),
            &corpus.conjugate_pair_curated,
            2u32,
            2u64,
            2u64,
        ),
        (
            "conic",
            Germ::new(3, 1, &["x", "y", "z"], &corpus.conic),
            &corpus.conic_curated,
            1,
            1,
            2,
        ),
    ];
    for (name, germ, curated, max_degree, delta, degree) in cases {
        let report = (|| {
            let v = germ.projective()?;
            let spec = build_affine_cone(&v).map_err(err)?;
            let curated = germ.ideals(&spec, curated)?;
            cone_theorem_check(
                &v,
                max_degree,
                0,
                &curated,
                r.config.seed,
                Some(degree),
                &r.config.sampling(),
            )
            .map_err(err)
        })();
        let label = format!("V({}) over F_{}", germ.f, germ.p);
        r.check(
            &format!("c3.{name}.delta"),
            &format!("index of {label}"),
            || {
                let c = report.clone()?;
                Ok(equal(
                    c.delta,
                    delta,
                    format!("degree set {}", list(&c.census.degree_set)),
                ))
            },
        );
        r.check(
            &format!("c3.{name}.e_vertex"),
            "e(m) at the vertex equals the degree",
            || {
                let c = report.clone()?;
                Ok(equal(
                    c.e_of_vertex,
                    degree,
                    format!("declared degree {degree}"),
                ))
            },
        );
        r.check(
            &format!("c3.{name}.curated_gcd"),
            "gcd of e(m) and the curated e(Q) at the vertex",
            || {
                let c = report.clone()?;
                Ok(equal(
                    c.gamma.running_gcd,
                    delta,
                    format!("samples {}", list(&sample_values(&c.gamma))),
                ))
            },
        );
        r.check(
            &format!("c3.{name}.equality"),
            "the gcd of multiplicities equals the index",
            || {
                let c = report.clone()?;
                Ok(equal(
                    c.equality_witnessed && c.passed(),
                    true,
                    "EQUALITY_WITNESSED",
                ))
            },
        );
        r.sampled(
            &format!("c3.{name}.sampled"),
            "the index divides every sampled e(Q) at the vertex",
            || {
                let v = germ.projective()?;
                let c = cone_theorem_check(
                    &v,
                    max_degree,
                    r.config.trials,
                    &[],
                    r.config.seed,
                    Some(degree),
                    &r.config.sampling(),
                )
                .map_err(err)?;
                Ok(equal(
                    c.delta_divides_samples,
                    true,
                    format!("samples {}", list(&sample_values(&c.gamma))),
                ))
            },
        );
    }
}

fn resolution_checks(r: &mut Runner, corpus: &Corpus) {
    let xy = ["x", "y"];
    let cases = [
        (
            "pair",
            Germ::new(2, 1, &xy, &corpus.conjugate_pair),
            "[2]",
            2u64,
        ),
        (
            "triple",
            Germ::new(2, 1, &xy, &corpus.triple_point),
            "[1,1,1]",
            1,
        ),
        ("cusp", Germ::new(5, 1, &xy, &corpus.cusp), "[1]", 1),
    ];
    for (name, germ, places, n) in cases {
        let res = germ
            .poly()
            .and_then(|f| resolve_germ(&f, &ResolveOptions::default()).map_err(err));
        let label = format!("{} over F_{}", germ.f, germ.p);
        r.check(
            &format!("c4.{name}.places"),
            &format!("residue degrees of the places of {label}"),
            || {
                let res = res.clone()?;
                let degrees: Vec<u32> = res.places.iter().map(|p| p.residue_degree).collect();
                Ok(equal(
                    list(&degrees),
                    places.to_string(),
                    views::resolution(&res).to_string(),
                ))
            },
        );
        r.check(&format!("c4.{name}.n"), &format!("n of {label}"), || {
            let res = res.clone()?;
            Ok(equal(
                res.n_value,
                n,
                format!("{} blow-ups", res.blowup_count),
            ))
        });
        r.check(&format!("c4.{name}.divides_e_m"), "n divides e(m)", || {
            let res = res.clone()?;
            let spec = germ.local()?;
            let e = hs_table(&spec, &spec.maximal_ideal(), &r.config.hs_options())
                .map_err(err)?
                .multiplicity;
            Ok(equal(e % res.n_value.max(1), 0, format!("e(m) = {e}")))
        });
        r.sampled(
            &format!("c4.{name}.divides_samples"),
            "n divides every sampled e(Q)",
            || {
                let res = res.clone()?;
                let g = r_gamma(r.config, &germ.local()?)?;
                Ok(n_divides(res.n_value, &g))
            },
        );
    }
}

struct LiftCase<'a> {
    id: &'a str,
    ext: u32,
    point: [&'a str; 2],
    germ: &'a str,
    degree: u64,
    series: Option<&'a str>,
}

fn model_checks(r: &mut Runner, corpus: &Corpus) {
    let cases = [
        (
            "quadric",
            &corpus.quadric_model,
            2u64,
            Some((true, 2u64)),
            LiftCase {
                id: "lift_degree_two",
                ext: 2,
                point: ["a", "1"],
                germ: "y-1",
                degree: 2,
                series: None,
            },
        ),
        (
            "double",
            &corpus.double_fiber_model,
            2,
            None,
            LiftCase {
                id: "lift",
                ext: 1,
                point: ["1", "1"],
                germ: "x-1",
                degree: 2,
                series: None,
            },
        ),
        (
            "node",
            &corpus.node_model,
            1,
            None,
            LiftCase {
                id: "lift",
                ext: 1,
                point: ["1", "0"],
                germ: "x-1",
                degree: 1,
                series: Some("t"),
            },
        ),
    ];
    for (name, entry, gcd, origin, lift) in cases {
        let model = entry.build();
        let label = format!("{} over F_{}", entry.f, entry.p);
        let fiber = model
            .clone()
            .and_then(|m| model_fiber_decomposition(&m, 2).map_err(err));
        r.check(
            &format!("c5.{name}.gcd"),
            &format!("gcd over the special fiber of {label}"),
            || {
                let f = fiber.clone()?;
                Ok(equal(
                    f.gcd_xk,
                    gcd,
                    serde_json::to_string(&f).map_err(err)?,
                ))
            },
        );
        if let Some((regular, e_fiber)) = origin {
            r.check(
                &format!("c5.{name}.regular_origin"),
                "the model is regular at the origin",
                || {
                    let m = model.clone()?;
                    let o = Point::origin(&m.field, 2);
                    Ok(equal(
                        model_regularity_at(&m, &o).map_err(err)?,
                        regular,
                        "f has order 1 in (x, y, t)",
                    ))
                },
            );
            r.check(
                &format!("c5.{name}.e_fiber_origin"),
                "fiber multiplicity at the origin, two ways",
                || {
                    let m = model.clone()?;
                    let o = Point::origin(&m.field, 2);
                    let rep = model_point_report(&m, &o).map_err(err)?;
                    let direct = fiber_multiplicity_direct(&m, &o).map_err(err)?;
                    Ok(equal(
                        format!("{},{}", rep.e_fiber, direct),
                        format!("{e_fiber},{e_fiber}"),
                        format!(
                            "sum of r_i e_i, then f mod t; bound {}",
                            rep.min_degree_bound
                        ),
                    ))
                },
            );
        }
        let lifted = (|| {
            let m = model.clone()?;
            let ext = field_of_order(entry.p, lift.ext).map_err(err)?;
            let coords = lift
                .point
                .iter()
                .map(|c| parse_element(c, &ext, "point").map_err(err))
                .collect::<Result<Vec<_>, _>>()?;
            let g = parse_polynomial(lift.germ, &m.field, &m.vars, "germ").map_err(err)?;
            lift_degree(&m, &Point::new(&ext, coords), &g).map_err(err)
        })();
        let at = format!(
            "({}) over F_{}^{} cut by {}",
            lift.point.join(","),
            entry.p,
            lift.ext,
            lift.germ
        );
        r.check(
            &format!("c5.{name}.{}", lift.id),
            &format!("degree of the lift at {at}"),
            || {
                let l = lifted.clone()?;
                Ok(equal(
                    format!("{},{}", l.computed_degree, l.predicted_degree),
                    format!("{},{}", lift.degree, lift.degree),
                    serde_json::to_string(&l).map_err(err)?,
                ))
            },
        );
        if let Some(series) = lift.series {
            r.check(
                &format!("c5.{name}.series"),
                "explicit power series of the lift",
                || {
                    let l = lifted.clone()?;
                    let w = l.series_witness.ok_or("no series witness")?;
                    Ok(equal(
                        format!("{}={}", w.variable, w.series),
                        format!("y={series}"),
                        format!("residual vanishes: {}", w.residual_vanishes),
                    ))
                },
            );
        }
        r.check(
            &format!("c5.{name}.divides_lift"),
            "the fiber gcd divides the lift degree",
            || {
                let (f, l) = (fiber.clone()?, lifted.clone()?);
                Ok(equal(
                    l.computed_degree % f.gcd_xk.max(1),
                    0,
                    format!("{} | {}", f.gcd_xk, l.computed_degree),
                ))
            },
        );
    }
}

/// `(q^{d(n+1)} - 1) / (q^d - 1)`.
fn projective_count(q: u64, n: u32, d: u32) -> u64 {
    let qd = q.pow(d);
    (qd.pow(n + 1) - 1) / (qd - 1)
}

fn census_checks(r: &mut Runner) {
    let f2 = field_of_order(2, 1).expect("F_2");
    let f3 = field_of_order(3, 1).expect("F_3");
    for n in [1u32, 2] {
        let names: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let census = VarietyDescriptor::projective(&f2, &vars(&names), vec![])
            .map_err(err)
            .and_then(|v| closed_point_census(&v, 6).map_err(err));
        r.check(
            &format!("c6.orbits.p{n}"),
            &format!("sum over e | d of e a_e equals N_d on P^{n} over F_2, d <= 6"),
            || {
                let c = census.clone()?;
                let sums: Vec<u64> = (1..=6usize)
                    .map(|d| {
                        (1..=d)
                            .filter(|e| d % e == 0)
                            .map(|e| e as u64 * c.closed_counts[e - 1])
                            .sum()
                    })
                    .collect();
                Ok(equal(
                    list(&sums),
                    list(&c.rational_counts),
                    format!("a_d = {}", list(&c.closed_counts)),
                ))
            },
        );
        r.check(
            &format!("c6.counts.p{n}"),
            &format!("N_d of P^{n} over F_2"),
            || {
                let c = census.clone()?;
                let expected: Vec<u64> = (1..=6).map(|d| projective_count(2, n, d)).collect();
                Ok(equal(
                    list(&c.rational_counts),
                    list(&expected),
                    "(q^(d(n+1)) - 1)/(q^d - 1)",
                ))
            },
        );
    }
    let open = (|| {
        let names = ["x", "y"];
        let p = |s: &str| parse_polynomial(s, &f2, &vars(&names), "exclude").map_err(err);
        let mut v = VarietyDescriptor::projective(&f2, &vars(&names), vec![]).map_err(err)?;
        for s in ["x", "y", "x+y"] {
            v = v.with_excluded(vec![p(s)?]).map_err(err)?;
        }
        Ok::<_, String>(v)
    })();
    r.check(
        "c6.open_p1",
        "index of P^1 minus its rational points, D = 3",
        || {
            let v = open.clone()?;
            let c = closed_point_census(&v, 3).map_err(err)?;
            let partial = index_estimate(&v, 2).map_err(err)?;
            Ok(equal(
                c.gcd_estimate,
                1,
                format!("a_d = {}; D = 2 gives {partial}", list(&c.closed_counts)),
            ))
        },
    );
    r.check(
        "c6.regular_locus",
        "index of the regular locus of V(x^2+y^2) over F_3, and of V itself",
        || {
            let names = ["x", "y"];
            let f = parse_polynomial("x^2+y^2", &f3, &vars(&names), "f").map_err(err)?;
            let v = VarietyDescriptor::affine(&f3, &vars(&names), vec![f]).map_err(err)?;
            let reg = regular_filter(&v, 4).map_err(err)?.gcd_estimate;
            let all = index_estimate(&v, 4).map_err(err)?;
            Ok(equal(
                format!("{reg},{all}"),
                "2,1".into(),
                "D = 4; the only rational point is the singular origin",
            ))
        },
    );
}

fn fermat_checks(r: &mut Runner, corpus: &Corpus) {
    for &p in &corpus.fermat_primes {
        let d = fermat_decomposition(p).map_err(err);
        r.check(
            &format!("c7.p{p}"),
            &format!("x^{p}+(1-x)^{p}-1 divided by x(x-1)(x^2-x+1)^b"),
            || {
                let d = d.clone()?;
                let degree = d.quotient.total_degree().map_or(-1, |x| x as i64);
                Ok(equal(
                    format!("remainder {}, degree {}", d.remainder, degree),
                    format!("remainder 0, degree {}", d.expected_degree()),
                    format!("b = {}, E = {}", d.b, d.quotient),
                ))
            },
        );
    }
    for (p, value) in [(5u64, "5"), (7, "7")] {
        r.check(
            &format!("c7.e{p}"),
            &format!("the quotient for p = {p}"),
            || {
                let d = fermat_decomposition(p).map_err(err)?;
                Ok(equal(
                    d.quotient.to_string(),
                    value.to_string(),
                    format!("b = {}", d.b),
                ))
            },
        );
    }
}

fn axiom_violations(f: &FiniteField) -> u64 {
    let els: Vec<u32> = f.elements().collect();
    let mut bad = 0;
    for &a in &els {
        bad += u64::from(f.add(a, f.neg(a)) != 0 || f.mul(a, 1) != a);
        if a != 0 {
            bad += u64::from(f.inv(a).map(|i| f.mul(a, i)) != Some(1));
        }
        for &b in &els {
            bad += u64::from(f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a));
            for &c in &els {
                bad += u64::from(f.add(f.add(a, b), c) != f.add(a, f.add(b, c)));
                bad += u64::from(f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c)));
                bad += u64::from(f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
    bad
}

fn property_checks(r: &mut Runner, corpus: &Corpus) {
    r.check(
        "c8.field_axioms",
        "field axioms on every field with at most 16 elements",
        || {
            let orders = [
                (2, 1),
                (3, 1),
                (2, 2),
                (5, 1),
                (7, 1),
                (2, 3),
                (3, 2),
                (11, 1),
                (13, 1),
                (2, 4),
            ];
            let mut bad = 0;
            for (p, k) in orders {
                bad += axiom_violations(&field_of_order(p, k).map_err(err)?);
            }
            Ok(equal(
                bad,
                0,
                format!("{} fields, exhaustive", orders.len()),
            ))
        },
    );
    let hs = r.config.hs_options();
    r.check(
        "c8.hypersurfaces",
        "e(m) of a hypersurface equals the order of its equation",
        || {
            let mut mismatches = Vec::new();
            for g in &corpus.hypersurfaces {
                let f = g.poly()?;
                let spec = g.local()?;
                let e = hs_table(&spec, &spec.maximal_ideal(), &hs)
                    .map_err(err)?
                    .multiplicity;
                let order = lowest_form(&f).map_err(err)?.0 as u64;
                if e != order {
                    mismatches.push(format!("{}: e = {e}, order = {order}", g.f));
                }
            }
            Ok(Outcome {
                pass: mismatches.is_empty() && corpus.hypersurfaces.len() >= 10,
                lhs: format!("{} mismatches", mismatches.len()),
                rhs: "0 mismatches".into(),
                witness: format!(
                    "{} germs {}",
                    corpus.hypersurfaces.len(),
                    mismatches.join("; ")
                ),
            })
        },
    );
    let xy = ["x", "y"];
    let additivity: [(&str, u64, &str, &[(&str, u32)]); 3] = [
        (
            "triple",
            2,
            corpus.triple_point.as_str(),
            &[("x", 1), ("y", 1), ("x+y", 1)],
        ),
        ("x2y", 3, "x^2*y", &[("x", 2), ("y", 1)]),
        (
            "pair",
            2,
            corpus.conjugate_pair.as_str(),
            &[("x^2+x*y+y^2", 1)],
        ),
    ];
    for (name, p, f, parts) in additivity {
        r.check(
            &format!("c8.additivity.{name}"),
            &format!("e(m) of {f} is the weighted sum over its components"),
            || {
                let germ = Germ::new(p, 1, &xy, f);
                let comps = parts
                    .iter()
                    .map(|(g, a)| Ok((germ.poly_in(g)?, *a)))
                    .collect::<Result<Vec<_>, String>>()?;
                let rep = check_additivity(&germ.local()?, &comps, &hs).map_err(err)?;
                Ok(Outcome {
                    pass: rep.holds,
                    lhs: rep.lhs.to_string(),
                    rhs: rep.rhs.to_string(),
                    witness: format!("(a_i, e_i) = {:?}", rep.terms),
                })
            },
        );
    }
    associativity_checks(r, corpus);
    r.sampled(
        "c8.seed_determinism",
        "two sampling runs with the same seed agree byte for byte",
        || {
            let germ = Germ::new(2, 1, &xy, &corpus.triple_point);
            let spec = germ.local()?;
            let a = views::gamma(&r_gamma(r.config, &spec)?).to_string();
            let b = views::gamma(&r_gamma(r.config, &spec)?).to_string();
            Ok(Outcome {
                pass: a == b,
                lhs: format!("{} bytes", a.len()),
                rhs: format!("{} bytes", b.len()),
                witness: format!("seed {}", r.config.seed),
            })
        },
    );
}

fn associativity_checks(r: &mut Runner, corpus: &Corpus) {
    let hs = r.config.hs_options();
    type Case<'a> = (
        &'a str,
        Germ,
        Vec<&'a str>,
        Vec<&'a str>,
        Vec<(Vec<&'a str>, u64, u64)>,
        bool,
    );
    let cases: Vec<Case> = vec![
        (
            "cone",
            Germ::new(3, 1, &["x", "y", "z"], &corpus.conic),
            vec!["x-y"],
            vec!["z-x+x^2"],
            vec![(vec!["x-y", "z-x"], 1, 2), (vec!["x-y", "z+x"], 1, 1)],
            true,
        ),
        (
            "empty_prefix",
            Germ::new(2, 1, &["x", "y"], &corpus.triple_point),
            vec![],
            vec!["x", "y"],
            vec![(vec!["x"], 1, 1), (vec!["y"], 1, 1), (vec!["x+y"], 1, 1)],
            true,
        ),
        (
            "regular",
            Germ::new(2, 1, &["x", "y"], "0"),
            vec!["x"],
            vec!["y"],
            vec![(vec!["x"], 1, 1)],
            false,
        ),
    ];
    for (name, germ, prefix, suffix, comps, hypersurface) in cases {
        r.check(
            &format!("c8.associativity.{name}"),
            "e(prefix + suffix) is the sum of local multiplicity times suffix order",
            || {
                let spec = if hypersurface {
                    germ.local()?
                } else {
                    LocalRingSpec::regular(&germ.field()?, &vars(&germ.names())).map_err(err)?
                };
                let polys = |l: &[&str]| {
                    l.iter()
                        .map(|s| germ.poly_in(s))
                        .collect::<Result<Vec<_>, _>>()
                };
                let components = comps
                    .iter()
                    .map(|(ideal, lambda, order)| {
                        Ok(ComponentData {
                            ideal: polys(ideal)?,
                            local_multiplicity: *lambda,
                            suffix_order: *order,
                        })
                    })
                    .collect::<Result<Vec<_>, String>>()?;
                let rep = check_associativity(
                    &spec,
                    &polys(&prefix)?,
                    &polys(&suffix)?,
                    &components,
                    &hs,
                )
                .map_err(err)?;
                Ok(Outcome {
                    pass: rep.holds,
                    lhs: rep.lhs.to_string(),
                    rhs: rep.rhs.to_string(),
                    witness: format!("(lambda_i, e_i) = {:?}", rep.terms),
                })
            },
        );
    }
}
