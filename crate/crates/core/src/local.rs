//! Lengths and Hilbert-Samuel multiplicities of local rings at the origin.
//!
//! For an ideal `J` of `k[x_1..x_r]`, the quotient `k[x]/(J + m^M)` is
//! finite dimensional and equals the local quotient at the origin. When `J`
//! is primary to the maximal ideal `m` locally, the dimension stops growing
//! in `M` and the stable value is the local length. Everything is plain
//! linear algebra on truncated monomial spaces.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::field::FiniteField;
use crate::geometry::{lowest_form, translate_to_origin, GeomError, Point, Poly};
use crate::linalg::SparseEchelon;
use crate::poly::{Monomial, Vars};
use crate::variety::{Ambient, VarietyDescriptor};

pub const DEFAULT_M_MAX: u32 = 24;
pub const DEFAULT_N_MAX: u32 = 12;
/// Cap on the number of generators of `Q^n`.
pub const MAX_POWER_GENERATORS: usize = 5000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("generator {0} does not vanish at the origin")]
    NonzeroConstantTerm(String),
    #[error("generator {0} is over a different field or variable list")]
    Incompatible(String),
    #[error("local ring needs at least one variable")]
    NoVariables,
    #[error("length did not stabilize up to cutoff {cutoff}")]
    NotFinite { cutoff: u32 },
    #[error("ideal is not primary to the maximal ideal (row n={n} has no finite length)")]
    NotPrimary { n: u32 },
    #[error("no constant finite difference up to n={n_max}")]
    NoConvergence { n_max: u32 },
    #[error("Q^{n} needs {count} generators, above the cap")]
    TooManyGenerators { n: u32, count: usize },
    #[error("declared dimension {declared} but detected {detected}")]
    DimensionMismatch { declared: u32, detected: u32 },
    #[error("Hilbert-Samuel multiplicity {hs} disagrees with the lowest-form order {order}")]
    HypersurfaceMismatch { hs: u64, order: u32 },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// The local ring of `k[x_1..x_r]/I` at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalRingSpec {
    pub field: FiniteField,
    pub vars: Vars,
    pub ideal: Vec<Poly>,
    pub declared_dimension: Option<u32>,
}

impl LocalRingSpec {
    pub fn new(
        field: &FiniteField,
        vars: &Vars,
        ideal: Vec<Poly>,
        declared_dimension: Option<u32>,
    ) -> Result<LocalRingSpec, LocalError> {
        if vars.is_empty() {
            return Err(LocalError::NoVariables);
        }
        check_generators(field, vars, &ideal)?;
        Ok(LocalRingSpec {
            field: field.clone(),
            vars: vars.clone(),
            ideal: ideal.into_iter().filter(|g| !g.is_zero()).collect(),
            declared_dimension,
        })
    }

    /// `k[x]/(f)` at the origin.
    pub fn hypersurface(f: &Poly) -> Result<LocalRingSpec, LocalError> {
        LocalRingSpec::new(f.ring(), f.vars(), vec![f.clone()], None)
    }

    /// The regular local ring `k[x_1..x_r]` at the origin.
    pub fn regular(field: &FiniteField, vars: &Vars) -> Result<LocalRingSpec, LocalError> {
        LocalRingSpec::new(field, vars, Vec::new(), Some(vars.len() as u32))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// `A/(extra)`.
    pub fn quotient(&self, extra: &[Poly]) -> Result<LocalRingSpec, LocalError> {
        let mut ideal = self.ideal.clone();
        ideal.extend(extra.iter().cloned());
        LocalRingSpec::new(&self.field, &self.vars, ideal, None)
    }

    /// The maximal ideal, generated by the variables.
    pub fn maximal_ideal(&self) -> PrimaryIdealSpec {
        PrimaryIdealSpec {
            generators: (0..self.nvars())
                .map(|i| Poly::var(&self.field, &self.vars, i))
                .collect(),
        }
    }

    pub fn poly(&self, src: &str) -> Result<Poly, crate::poly::ParseError> {
        Poly::parse(src, &self.field, &self.vars)
    }
}

fn check_generators(field: &FiniteField, vars: &Vars, gens: &[Poly]) -> Result<(), LocalError> {
    for g in gens {
        if g.ring() != field || g.vars() != vars {
            return Err(LocalError::Incompatible(g.to_string()));
        }
        if g.constant_term() != 0 {
            return Err(LocalError::NonzeroConstantTerm(g.to_string()));
        }
    }
    Ok(())
}

/// Generators of an ideal `Q` of the local ring, expected to be primary to
/// the maximal ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimaryIdealSpec {
    pub generators: Vec<Poly>,
}

impl PrimaryIdealSpec {
    pub fn new(
        spec: &LocalRingSpec,
        generators: Vec<Poly>,
    ) -> Result<PrimaryIdealSpec, LocalError> {
        check_generators(&spec.field, &spec.vars, &generators)?;
        Ok(PrimaryIdealSpec { generators })
    }

    pub fn order(&self) -> u32 {
        self.generators
            .iter()
            .filter_map(Poly::order)
            .min()
            .unwrap_or(0)
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

/// Cutoff schedule for [`local_length_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LengthConfig {
    /// Largest cutoff tried, counted from the starting cutoff 2: with a
    /// starting cutoff `M0` the last cutoff tried is `m_max + M0 - 2`.
    pub m_max: u32,
    /// Number of consecutive unchanged increments required.
    pub stable_repeats: u32,
    pub step: u32,
}

impl Default for LengthConfig {
    fn default() -> Self {
        LengthConfig {
            m_max: DEFAULT_M_MAX,
            stable_repeats: 2,
            step: 2,
        }
    }
}

/// Dimension of `k[x]/(gens + m^n)`.
pub fn colength_truncated(field: &FiniteField, nvars: usize, gens: &[Poly], n: u32) -> usize {
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut by_degree: Vec<Vec<Monomial>> = Vec::new();
    for d in 0..n {
        let ms = Monomial::all_of_degree(nvars, d);
        for m in &ms {
            let next = index.len();
            index.insert(m.clone(), next);
        }
        by_degree.push(ms);
    }
    let ncols = index.len();
    let mut ech = SparseEchelon::new(field, ncols);
    let mut row: Vec<(usize, u32)> = Vec::new();
    for g in gens {
        let Some(ord) = g.order() else { continue };
        if ord >= n {
            continue;
        }
        let terms: Vec<(&Monomial, u32)> = g
            .terms()
            .filter(|(m, _)| m.degree() < n)
            .map(|(m, c)| (m, *c))
            .collect();
        for ms in by_degree.iter().take((n - ord) as usize) {
            for m in ms {
                let dm = m.degree();
                row.clear();
                for (t, c) in &terms {
                    if t.degree() + dm < n {
                        row.push((index[&t.mul(m)], *c));
                    }
                }
                ech.insert(&row);
                if ech.rank() == ncols {
                    return 0;
                }
            }
        }
    }
    ncols - ech.rank()
}

/// Dimension of `k[x]/(I + extra + m^n)`.
pub fn truncated_quotient_dim(spec: &LocalRingSpec, extra: &[Poly], n: u32) -> usize {
    assert!(n >= 1, "cutoff must be positive");
    let gens: Vec<Poly> = spec.ideal.iter().chain(extra).cloned().collect();
    colength_truncated(&spec.field, spec.nvars(), &gens, n)
}

/// Result of a stabilized length computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Length {
    pub value: u64,
    /// Largest cutoff evaluated.
    pub cutoff: u32,
}

/// Local length of `A/(extra)` with the default schedule.
pub fn local_length(spec: &LocalRingSpec, extra: &[Poly]) -> Result<u64, LocalError> {
    local_length_with(spec, extra, &LengthConfig::default()).map(|l| l.value)
}

pub fn local_length_with(
    spec: &LocalRingSpec,
    extra: &[Poly],
    cfg: &LengthConfig,
) -> Result<Length, LocalError> {
    check_generators(&spec.field, &spec.vars, extra)?;
    let start = extra
        .iter()
        .chain(&spec.ideal)
        .filter_map(Poly::order)
        .min()
        .unwrap_or(2)
        .max(2);
    let limit = cfg.m_max + start - 2;
    let mut m = start;
    let mut last = None;
    let mut repeats = 0;
    while m <= limit {
        let value = truncated_quotient_dim(spec, extra, m) as u64;
        if last == Some(value) {
            repeats += 1;
            if repeats >= cfg.stable_repeats {
                return Ok(Length { value, cutoff: m });
            }
        } else {
            repeats = 0;
        }
        last = Some(value);
        m += cfg.step;
    }
    Err(LocalError::NotFinite {
        cutoff: m - cfg.step,
    })
}

/// Hilbert-Samuel data of `A` with respect to `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HsTable {
    /// `(n, length(A/Q^n))`.
    pub rows: Vec<(u32, u64)>,
    pub dimension: u32,
    pub multiplicity: u64,
    pub truncation_used: u32,
    pub stabilized: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HsOptions {
    pub n_max: u32,
    /// Rows computed after detection to confirm the difference stays put.
    pub confirm_rows: u32,
    pub length: LengthConfig,
}

impl Default for HsOptions {
    fn default() -> Self {
        HsOptions {
            n_max: DEFAULT_N_MAX,
            confirm_rows: 0,
            length: LengthConfig::default(),
        }
    }
}

/// `d`-th finite differences of `values`.
pub fn finite_difference(values: &[i64], d: usize) -> Vec<i64> {
    let mut cur = values.to_vec();
    for _ in 0..d {
        cur = cur.windows(2).map(|w| w[1] - w[0]).collect();
    }
    cur
}

/// Smallest `d` whose `d`-th difference is constant on its last three
/// entries, with that constant.
fn detect(rows: &[(u32, u64)]) -> Option<(u32, i64)> {
    let values: Vec<i64> = rows.iter().map(|r| r.1 as i64).collect();
    for d in 0..values.len() {
        let diff = finite_difference(&values, d);
        if diff.len() < 3 {
            return None;
        }
        let tail = &diff[diff.len() - 3..];
        if tail[0] == tail[1] && tail[1] == tail[2] {
            return Some((d as u32, tail[0]));
        }
    }
    None
}

fn normalize(g: &Poly) -> Poly {
    g.monic()
}

/// Generators of the next power: all products with a generator of `Q`,
/// without repetition.
fn next_power(current: &[Poly], q: &[Poly]) -> Vec<Poly> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in current {
        for b in q {
            let p = normalize(&a.mul(b));
            if !p.is_zero() && seen.insert(p.clone()) {
                out.push(p);
            }
        }
    }
    out
}

pub fn hs_table(
    spec: &LocalRingSpec,
    q: &PrimaryIdealSpec,
    opts: &HsOptions,
) -> Result<HsTable, LocalError> {
    check_generators(&spec.field, &spec.vars, &q.generators)?;
    let base: Vec<Poly> = {
        let mut seen = HashSet::new();
        q.generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(normalize)
            .filter(|g| seen.insert(g.clone()))
            .collect()
    };
    let mut power = base.clone();
    let mut rows = Vec::new();
    let mut cutoff = 0;
    let mut detected: Option<(u32, i64)> = None;
    let mut extra_rows = 0;
    // Rows before the ideal of A is visible modulo Q^n only describe the
    // ambient regular ring, so detection starts at the first visible row.
    let ambient = LocalRingSpec::regular(&spec.field, &spec.vars)?;
    let mut visible_from = spec.ideal.is_empty().then_some(0usize);
    for n in 1..=opts.n_max {
        if n > 1 {
            power = next_power(&power, &base);
            if power.len() > MAX_POWER_GENERATORS {
                return Err(LocalError::TooManyGenerators {
                    n,
                    count: power.len(),
                });
            }
        }
        let len = match local_length_with(spec, &power, &opts.length) {
            Ok(l) => l,
            Err(LocalError::NotFinite { .. }) => return Err(LocalError::NotPrimary { n }),
            Err(e) => return Err(e),
        };
        cutoff = cutoff.max(len.cutoff);
        if visible_from.is_none() {
            let visible = match local_length_with(&ambient, &power, &opts.length) {
                Ok(l) => l.value > len.value,
                Err(LocalError::NotFinite { .. }) => true,
                Err(e) => return Err(e),
            };
            if visible {
                visible_from = Some(rows.len());
            }
        }
        rows.push((n, len.value));
        let Some(start) = visible_from else {
            continue;
        };
        let window = &rows[start..];
        match detected {
            None => {
                if let Some(found) = detect(window) {
                    detected = Some(found);
                    if opts.confirm_rows == 0 {
                        break;
                    }
                }
            }
            Some(found) => {
                extra_rows += 1;
                if detect(window) != Some(found) {
                    // The earlier plateau was accidental; keep looking.
                    detected = detect(window);
                    extra_rows = 0;
                }
                if detected.is_some() && extra_rows >= opts.confirm_rows {
                    break;
                }
            }
        }
    }
    let Some((dimension, e)) = detected else {
        return Err(LocalError::NoConvergence { n_max: opts.n_max });
    };
    if let Some(declared) = spec.declared_dimension {
        if declared != dimension {
            return Err(LocalError::DimensionMismatch {
                declared,
                detected: dimension,
            });
        }
    }
    Ok(HsTable {
        rows,
        dimension,
        multiplicity: e as u64,
        truncation_used: cutoff,
        stabilized: true,
    })
}

/// `(dim A, e(Q, A))` with default options.
pub fn hs_multiplicity(
    spec: &LocalRingSpec,
    q: &PrimaryIdealSpec,
) -> Result<(u32, u64), LocalError> {
    hs_table(spec, q, &HsOptions::default()).map(|t| (t.dimension, t.multiplicity))
}

/// The local ring of `v` at `point`, moved to the origin. Projective points
/// are read in the affine chart of their first nonzero coordinate.
pub fn local_ring_at(v: &VarietyDescriptor, point: &Point) -> Result<LocalRingSpec, LocalError> {
    let (vars, gens, coords) = match v.ambient {
        Ambient::Affine => (v.vars.clone(), v.ideal.clone(), point.coords.clone()),
        Ambient::Projective => {
            let i = point
                .coords
                .iter()
                .position(|&c| c != 0)
                .ok_or(GeomError::PointNotOnVariety)?;
            let inv = point.field.inv(point.coords[i]).unwrap();
            let names: Vec<&str> = v
                .vars
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, s)| s.as_str())
                .collect();
            let chart = crate::poly::vars(&names);
            let images: Vec<Poly> = (0..v.nvars())
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Equal => Poly::one(&v.field, &chart),
                    std::cmp::Ordering::Less => Poly::var(&v.field, &chart, j),
                    std::cmp::Ordering::Greater => Poly::var(&v.field, &chart, j - 1),
                })
                .collect();
            let gens = v.ideal.iter().map(|g| g.compose(&images)).collect();
            let coords = point
                .coords
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, &c)| point.field.mul(c, inv))
                .collect();
            (chart, gens, coords)
        }
    };
    let local_point = Point::new(&point.field, coords);
    let mut translated = Vec::with_capacity(gens.len());
    for g in &gens {
        let t = translate_to_origin(g, &local_point)?;
        if t.constant_term() != 0 {
            return Err(GeomError::PointNotOnVariety.into());
        }
        translated.push(t);
    }
    if translated.is_empty() {
        return LocalRingSpec::regular(&point.field, &vars);
    }
    LocalRingSpec::new(&point.field, &vars, translated, None)
}

/// `e(m, O_{X,x})` at `point`.
pub fn multiplicity_at_point(v: &VarietyDescriptor, point: &Point) -> Result<u64, LocalError> {
    let spec = local_ring_at(v, point)?;
    let (_, e) = hs_multiplicity(&spec, &spec.maximal_ideal())?;
    if spec.ideal.len() == 1 {
        let (order, _) = lowest_form(&spec.ideal[0])?;
        if order as u64 != e {
            return Err(LocalError::HypersurfaceMismatch { hs: e, order });
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_prime_field;
    use crate::geometry::parse;
    use crate::poly::vars;

    fn spec(p: u64, names: &[&str], ideal: &[&str]) -> LocalRingSpec {
        let f = make_prime_field(p).unwrap();
        let v = vars(names);
        let gens = ideal.iter().map(|s| parse(s, &f, names)).collect();
        LocalRingSpec::new(&f, &v, gens, None).unwrap()
    }

    #[test]
    fn truncated_dims() {
        let a = spec(2, &["x", "y"], &[]);
        assert_eq!(truncated_quotient_dim(&a, &[], 3), 6);
        let b = spec(2, &["x", "y"], &["x"]);
        assert_eq!(truncated_quotient_dim(&b, &[], 3), 3);
        let c = spec(2, &["x", "y"], &["x^2+x*y+y^2"]);
        assert_eq!(truncated_quotient_dim(&c, &[], 3), 5);
    }

    #[test]
    fn lengths() {
        let a = spec(2, &["x", "y"], &[]);
        let extra = vec![a.poly("x").unwrap(), a.poly("y^2").unwrap()];
        assert_eq!(local_length(&a, &extra), Ok(2));
        let cone = spec(3, &["x", "y", "z"], &["x^2+y^2+z^2"]);
        let extra = vec![cone.poly("x-y").unwrap(), cone.poly("z").unwrap()];
        assert_eq!(local_length(&cone, &extra), Ok(2));
        let triple = spec(2, &["x", "y"], &["x*y*(x+y)"]);
        let extra = vec![triple.poly("x").unwrap()];
        assert!(matches!(
            local_length(&triple, &extra),
            Err(LocalError::NotFinite { .. })
        ));
    }

    #[test]
    fn components_away_from_origin_do_not_count() {
        // V(y - x^2, y - 1) has no point at the origin
        let a = spec(5, &["x", "y"], &["y-x^2"]);
        let extra = vec![a.poly("x*(x-1)").unwrap()];
        assert_eq!(local_length(&a, &extra), Ok(1));
    }

    #[test]
    fn hs_examples() {
        let a = spec(2, &["x", "y"], &["y-x^2"]);
        assert_eq!(hs_multiplicity(&a, &a.maximal_ideal()), Ok((1, 1)));
        let b = spec(2, &["x", "y"], &["x*y*(x+y)"]);
        let t = hs_table(&b, &b.maximal_ideal(), &HsOptions::default()).unwrap();
        assert_eq!((t.dimension, t.multiplicity), (1, 3));
        for &(n, l) in &t.rows {
            if n >= 3 {
                assert_eq!(l, 3 * n as u64 - 3);
            }
        }
        let c = spec(2, &["x", "y"], &["x^2+x*y+y^2"]);
        let t = hs_table(&c, &c.maximal_ideal(), &HsOptions::default()).unwrap();
        assert_eq!((t.dimension, t.multiplicity), (1, 2));
        assert!(t.rows.iter().all(|&(n, l)| l == 2 * n as u64 - 1));
        let r = spec(2, &["x", "y"], &[]);
        let q = PrimaryIdealSpec::new(&r, vec![r.poly("x^2").unwrap(), r.poly("y^3").unwrap()])
            .unwrap();
        assert_eq!(hs_multiplicity(&r, &q), Ok((2, 6)));
    }

    #[test]
    fn cone_parameter_ideals() {
        let cone = spec(3, &["x", "y", "z"], &["x^2+y^2+z^2"]);
        let q1 = PrimaryIdealSpec::new(
            &cone,
            vec![cone.poly("x-y").unwrap(), cone.poly("z").unwrap()],
        )
        .unwrap();
        assert_eq!(hs_multiplicity(&cone, &q1), Ok((2, 2)));
        let q2 = PrimaryIdealSpec::new(
            &cone,
            vec![cone.poly("x-y").unwrap(), cone.poly("z-x+x^2").unwrap()],
        )
        .unwrap();
        assert_eq!(hs_multiplicity(&cone, &q2), Ok((2, 3)));
        let t = hs_table(&cone, &cone.maximal_ideal(), &HsOptions::default()).unwrap();
        assert!(t.rows.iter().all(|&(n, l)| l == (n * n) as u64));
    }

    #[test]
    fn not_primary() {
        let b = spec(2, &["x", "y"], &["x*y*(x+y)"]);
        let q = PrimaryIdealSpec::new(&b, vec![b.poly("x").unwrap()]).unwrap();
        assert_eq!(
            hs_multiplicity(&b, &q),
            Err(LocalError::NotPrimary { n: 1 })
        );
    }

    #[test]
    fn multiplicity_at_points() {
        let f5 = make_prime_field(5).unwrap();
        let v = vars(&["x", "y"]);
        let cusp =
            VarietyDescriptor::affine(&f5, &v, vec![parse("y^2-x^3", &f5, &["x", "y"])]).unwrap();
        assert_eq!(multiplicity_at_point(&cusp, &Point::origin(&f5, 2)), Ok(2));
        assert_eq!(
            multiplicity_at_point(&cusp, &Point::new(&f5, vec![1, 1])),
            Ok(1)
        );
        assert!(multiplicity_at_point(&cusp, &Point::new(&f5, vec![1, 2])).is_err());
        let f3 = make_prime_field(3).unwrap();
        let v3 = vars(&["x", "y", "z"]);
        let cone =
            VarietyDescriptor::affine(&f3, &v3, vec![parse("x^2+y^2+z^2", &f3, &["x", "y", "z"])])
                .unwrap();
        assert_eq!(multiplicity_at_point(&cone, &Point::origin(&f3, 3)), Ok(2));
        let conic = VarietyDescriptor::projective(
            &f3,
            &v3,
            vec![parse("x^2+y^2+z^2", &f3, &["x", "y", "z"])],
        )
        .unwrap();
        assert_eq!(
            multiplicity_at_point(&conic, &Point::new(&f3, vec![1, 1, 1])),
            Ok(1)
        );
    }
}
