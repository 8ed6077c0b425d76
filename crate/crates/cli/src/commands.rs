//! One entry point per subcommand. Each returns a [`Report`]; errors are
//! input or usage problems and map to exit code 2.

use std::path::Path;

use idxlab_core::arith::is_prime;
use idxlab_core::census::{closed_point_census, default_max_degree, regular_filter};
use idxlab_core::cone::cone_theorem_check;
use idxlab_core::fermat::fermat_decomposition;
use idxlab_core::field::{field_of_order, FiniteField};
use idxlab_core::invariants::{gamma_estimate, principal_multiplicity_scan};
use idxlab_core::local::{hs_table, multiplicity_at_point, LocalRingSpec, PrimaryIdealSpec};
use idxlab_core::models::{
    fiber_cycle_identity, lift_degree, model_fiber_decomposition, model_point_report,
    ModelDescriptor,
};
use idxlab_core::resolution::{resolve_germ, ResolveOptions};
use idxlab_core::variety::VarietyDescriptor;
use idxlab_core::{Point, Poly, Vars};
use serde_json::json;
use thiserror::Error;

use crate::config::RunConfig;
use crate::descriptor::{
    parse_descriptor, parse_element, parse_field, parse_polynomial, Descriptor, DescriptorError,
    GENERATOR,
};
use crate::report::{error_value, Report};
use crate::suite::run_suite;
use crate::views;

/// Largest default census degree for model fibers; every closed point up to
/// this degree gets a local computation.
pub const MODEL_DEFAULT_MAX_DEGREE: u32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Descriptor(DescriptorError::Parse { .. }) => "parse",
            CliError::Descriptor(DescriptorError::Schema(_)) => "schema",
            CliError::Descriptor(DescriptorError::InvariantViolation(_)) => "invariant",
            CliError::Usage(_) => "usage",
            CliError::Compute(_) => "compute",
            CliError::Io { .. } => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        2
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&error_value(self.kind(), &self.to_string()))
            .expect("error values serialize");
        s.push('\n');
        s
    }
}

fn compute(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

pub fn load(path: &Path) -> Result<Descriptor, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(parse_descriptor(&bytes)?)
}

fn expect_local(d: Descriptor, command: &str) -> Result<LocalRingSpec, CliError> {
    match d {
        Descriptor::Local(spec) => Ok(spec),
        other => Err(CliError::Usage(format!(
            "{command} takes a local descriptor, got a {}",
            other.kind()
        ))),
    }
}

fn expect_variety(d: Descriptor, command: &str) -> Result<VarietyDescriptor, CliError> {
    match d {
        Descriptor::Variety(v) => Ok(v),
        other => Err(CliError::Usage(format!(
            "{command} takes a variety descriptor, got a {}",
            other.kind()
        ))),
    }
}

fn expect_model(d: Descriptor, command: &str) -> Result<ModelDescriptor, CliError> {
    match d {
        Descriptor::Model(m) => Ok(m),
        other => Err(CliError::Usage(format!(
            "{command} takes a model descriptor, got a {}",
            other.kind()
        ))),
    }
}

fn split_list(src: &str) -> Vec<&str> {
    src.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

fn parse_polys(
    src: &str,
    field: &FiniteField,
    vars: &Vars,
    location: &str,
) -> Result<Vec<Poly>, CliError> {
    split_list(src)
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            Ok(parse_polynomial(
                s,
                field,
                vars,
                &format!("{location}[{i}]"),
            )?)
        })
        .collect()
}

/// Ideals separated by `;`, generators by `,`.
fn parse_ideals(
    src: &str,
    spec: &LocalRingSpec,
    location: &str,
) -> Result<Vec<PrimaryIdealSpec>, CliError> {
    src.split(';')
        .filter(|s| !s.trim().is_empty())
        .enumerate()
        .map(|(i, part)| {
            let gens = parse_polys(part, &spec.field, &spec.vars, &format!("{location}[{i}]"))?;
            PrimaryIdealSpec::new(spec, gens).map_err(compute)
        })
        .collect()
}

/// A point with coordinates in `F_{q^ext}`, written in the generator `a`
/// of that field.
fn parse_point(src: &str, base: &FiniteField, ext: u32, nvars: usize) -> Result<Point, CliError> {
    if ext == 0 {
        return Err(CliError::Usage("--ext must be positive".into()));
    }
    let field =
        field_of_order(base.characteristic() as u64, base.degree() * ext).map_err(compute)?;
    let coords = split_list(src)
        .into_iter()
        .enumerate()
        .map(|(i, s)| Ok(parse_element(s, &field, &format!("point[{i}]"))?))
        .collect::<Result<Vec<_>, CliError>>()?;
    if coords.len() != nvars {
        return Err(CliError::Usage(format!(
            "point has {} coordinates, expected {nvars}",
            coords.len()
        )));
    }
    Ok(Point::new(&field, coords))
}

pub fn field(p: u64, k: u32) -> Result<Report, CliError> {
    let f = parse_field(p, k)?;
    let modulus = f.modulus().map(|m| {
        let terms: Vec<String> = m
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match (i, *c) {
                (0, c) => c.to_string(),
                (1, 1) => GENERATOR.to_string(),
                (1, c) => format!("{c}*{GENERATOR}"),
                (i, 1) => format!("{GENERATOR}^{i}"),
                (i, c) => format!("{c}*{GENERATOR}^{i}"),
            })
            .collect();
        terms.join("+")
    });
    Ok(Report::new(
        "field",
        json!({
            "p": p,
            "k": k,
            "order": f.order(),
            "modulus": modulus,
            "generator": (!f.is_prime_field()).then_some(GENERATOR),
            "primitive_element": f.format_element(primitive_element(&f), GENERATOR),
        }),
    ))
}

/// Smallest element, in the packed order, generating the multiplicative group.
fn primitive_element(f: &FiniteField) -> u32 {
    let n = f.order() as u64 - 1;
    let primes: Vec<u64> = (2..=n)
        .filter(|&r| n.is_multiple_of(r) && is_prime(r))
        .collect();
    (1..f.order())
        .find(|&a| primes.iter().all(|r| f.pow(a, n / r) != 1))
        .expect("the multiplicative group is cyclic")
}

pub fn mult(
    d: Descriptor,
    point: Option<&str>,
    ext: u32,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    match d {
        Descriptor::Variety(v) => {
            let pt = match point {
                Some(src) => parse_point(src, &v.field, ext, v.nvars())?,
                None => return Err(CliError::Usage("mult on a variety needs --point".into())),
            };
            let e = multiplicity_at_point(&v, &pt).map_err(compute)?;
            Ok(Report::new(
                "mult",
                json!({ "point": pt.format(GENERATOR), "multiplicity": e }),
            ))
        }
        Descriptor::Local(spec) => {
            if point.is_some() {
                return Err(CliError::Usage(
                    "a local descriptor is already centered at the origin".into(),
                ));
            }
            let t = hs_table(&spec, &spec.maximal_ideal(), &cfg.hs_options()).map_err(compute)?;
            Ok(Report::new(
                "mult",
                json!({ "point": "origin", "multiplicity": t.multiplicity, "dimension": t.dimension }),
            ))
        }
        Descriptor::Model(_) => Err(CliError::Usage(
            "mult takes a variety or local descriptor".into(),
        )),
    }
}

pub fn hs(d: Descriptor, ideal: Option<&str>, cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = expect_local(d, "hs")?;
    let q = match ideal {
        Some(src) => {
            let gens = parse_polys(src, &spec.field, &spec.vars, "ideal")?;
            PrimaryIdealSpec::new(&spec, gens).map_err(compute)?
        }
        None => spec.maximal_ideal(),
    };
    let t = hs_table(&spec, &q, &cfg.hs_options()).map_err(compute)?;
    let mut v = serde_json::to_value(&t).expect("tables serialize");
    v["ideal"] = json!(q.display());
    Ok(Report::new("hs", v))
}

pub fn gamma(d: Descriptor, curated: Option<&str>, cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = expect_local(d, "gamma")?;
    let curated = match curated {
        Some(src) => parse_ideals(src, &spec, "curated")?,
        None => Vec::new(),
    };
    let r =
        gamma_estimate(&spec, cfg.trials, cfg.seed, &curated, &cfg.sampling()).map_err(compute)?;
    Ok(Report::new("gamma", views::gamma(&r)).with_verdict(r.minimality_holds()))
}

pub fn scan(d: Descriptor, bound: u32, cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = expect_local(d, "scan")?;
    let r = principal_multiplicity_scan(&spec, bound, &cfg.hs_options()).map_err(compute)?;
    Ok(Report::new("scan", views::scan(bound, &r)))
}

fn census_degree(v: &VarietyDescriptor, cfg: &RunConfig) -> u32 {
    cfg.max_degree.unwrap_or_else(|| default_max_degree(v))
}

pub fn census(d: Descriptor, cfg: &RunConfig) -> Result<Report, CliError> {
    let v = expect_variety(d, "census")?;
    let c = closed_point_census(&v, census_degree(&v, cfg)).map_err(compute)?;
    Ok(Report::new("census", views::census(&c)).with_verdict(c.orbit_identity_holds()))
}

pub fn index(d: Descriptor, cfg: &RunConfig) -> Result<Report, CliError> {
    let v = expect_variety(d, "index")?;
    let max_degree = census_degree(&v, cfg);
    let all = closed_point_census(&v, max_degree).map_err(compute)?;
    let reg = regular_filter(&v, max_degree).map_err(compute)?;
    Ok(Report::new(
        "index",
        json!({
            "max_degree": max_degree,
            "delta": all.gcd_estimate,
            "delta_reg": reg.gcd_estimate,
            "min_degree": all.min_degree(),
            "min_degree_reg": reg.min_degree(),
        }),
    ))
}

pub fn cone(
    d: Descriptor,
    declared_degree: Option<u64>,
    curated: Option<&str>,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let v = expect_variety(d, "cone")?;
    let spec = idxlab_core::cone::build_affine_cone(&v).map_err(compute)?;
    let curated = match curated {
        Some(src) => parse_ideals(src, &spec, "curated")?,
        None => Vec::new(),
    };
    let max_degree = census_degree(&v, cfg);
    let r = cone_theorem_check(
        &v,
        max_degree,
        cfg.trials,
        &curated,
        cfg.seed,
        declared_degree,
        &cfg.sampling(),
    )
    .map_err(compute)?;
    Ok(Report::new("cone", views::cone(&r)).with_verdict(r.passed()))
}

pub fn resolve(d: Descriptor, cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = expect_local(d, "resolve")?;
    let [g] = spec.ideal.as_slice() else {
        return Err(CliError::Usage(
            "resolve takes a single plane curve equation".into(),
        ));
    };
    if spec.nvars() != 2 {
        return Err(CliError::Usage("resolve works in two variables".into()));
    }
    let opts = ResolveOptions {
        seed: cfg.seed,
        ..ResolveOptions::default()
    };
    let r = resolve_germ(g, &opts).map_err(compute)?;
    Ok(Report::new("resolve", views::resolution(&r)))
}

pub fn model(
    d: Descriptor,
    point: Option<&str>,
    ext: u32,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let m = expect_model(d, "model")?;
    if let Some(src) = point {
        let pt = parse_point(src, &m.field, ext, 2)?;
        let r = model_point_report(&m, &pt).map_err(compute)?;
        return Ok(Report::new("model", r));
    }
    let max_degree = cfg
        .max_degree
        .unwrap_or_else(|| default_max_degree(&m.fiber_variety()).min(MODEL_DEFAULT_MAX_DEGREE));
    let fiber = model_fiber_decomposition(&m, max_degree).map_err(compute)?;
    let identity = fiber_cycle_identity(&m, max_degree).map_err(compute)?;
    let mut v = serde_json::to_value(&fiber).expect("fiber reports serialize");
    v["fiber_cycle_identity"] = json!(identity);
    Ok(Report::new("model", v).with_verdict(identity))
}

pub fn lift(d: Descriptor, point: &str, germ: &str, ext: u32) -> Result<Report, CliError> {
    let m = expect_model(d, "lift")?;
    let pt = parse_point(point, &m.field, ext, 2)?;
    let g = parse_polynomial(germ, &m.field, &m.vars, "germ")?;
    let r = lift_degree(&m, &pt, &g).map_err(compute)?;
    let agrees = r.agrees();
    Ok(Report::new("lift", r).with_verdict(agrees))
}

pub fn fermat(p: u64) -> Result<Report, CliError> {
    let d = fermat_decomposition(p).map_err(|e| CliError::Usage(e.to_string()))?;
    let degree = d.quotient.total_degree().map_or(-1, |x| x as i64);
    let ok = d.remainder.is_zero() && degree == d.expected_degree();
    Ok(Report::new(
        "fermat",
        json!({
            "p": p,
            "b": d.b,
            "quotient": d.quotient.to_string(),
            "remainder": d.remainder.to_string(),
            "quotient_degree": degree,
            "expected_degree": d.expected_degree(),
        }),
    )
    .with_verdict(ok))
}

pub fn suite(cfg: &RunConfig) -> Result<Report, CliError> {
    let r = run_suite(cfg);
    let passed = r.passed;
    Ok(Report::new("suite", r).with_verdict(passed))
}
