//! Sampling of multiplicities `e(Q, A)` over primary ideals, exhaustive
//! scans of principal colengths, and the additivity and associativity
//! formulas for multiplicities.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd_of_list, sub_seed};
use crate::geometry::Poly;
use crate::local::{
    colength_truncated, hs_table, local_length_with, HsOptions, LocalError, LocalRingSpec,
    PrimaryIdealSpec,
};
use crate::poly::Monomial;

pub const DEFAULT_RETRY_BUDGET: u32 = 64;
/// Largest number of monomials a principal scan may range over.
pub const MAX_SCAN_MONOMIALS: usize = 20;
/// Largest number of candidate polynomials in a principal scan.
pub const MAX_SCAN_CANDIDATES: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("no primary ideal found after {attempts} attempts")]
    SamplingExhausted { attempts: u32 },
    #[error("sampling needs a local ring of positive dimension")]
    ZeroDimensional,
    #[error("scan over {monomials} monomials with {candidates} candidates is too large")]
    ScanTooLarge { monomials: usize, candidates: u128 },
    #[error("component product does not match the defining equation: {0}")]
    ComponentMismatch(String),
    #[error("inconsistent decomposition: {0}")]
    DecompositionInconsistent(String),
    #[error(transparent)]
    Local(#[from] LocalError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingConfig {
    pub degree_bound: u32,
    pub retry_budget: u32,
    pub hs: HsOptions,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            degree_bound: 2,
            retry_budget: DEFAULT_RETRY_BUDGET,
            hs: HsOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleSource {
    Curated,
    Sampled,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub index: usize,
    pub source: SampleSource,
    pub ideal: PrimaryIdealSpec,
    pub e: u64,
    /// Candidates drawn before acceptance (1 for curated ideals).
    pub attempts: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaReport {
    pub dimension: u32,
    pub e_of_m: u64,
    pub samples: Vec<Sample>,
    /// gcd of `e_of_m` and every sample.
    pub running_gcd: u64,
    /// Running gcd after `e_of_m` and after each sample in order.
    pub gcd_history: Vec<u64>,
    pub seed: u64,
}

impl GammaReport {
    /// Whether every sampled multiplicity is at least `e(m)`.
    pub fn minimality_holds(&self) -> bool {
        self.samples.iter().all(|s| s.e >= self.e_of_m)
    }
}

/// Monomials of degree `1..=bound`.
fn nonconstant_monomials(nvars: usize, bound: u32) -> Vec<Monomial> {
    (1..=bound)
        .flat_map(|d| Monomial::all_of_degree(nvars, d))
        .collect()
}

fn random_poly(spec: &LocalRingSpec, monomials: &[Monomial], rng: &mut ChaCha8Rng) -> Poly {
    let q = spec.field.order();
    loop {
        let p = Poly::from_terms(
            &spec.field,
            &spec.vars,
            monomials.iter().map(|m| (m.clone(), rng.gen_range(0..q))),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

fn sample_with_dimension(
    spec: &LocalRingSpec,
    dimension: u32,
    seed: u64,
    cfg: &SamplingConfig,
) -> Result<(PrimaryIdealSpec, u64, u32), InvariantError> {
    if dimension == 0 {
        return Err(InvariantError::ZeroDimensional);
    }
    let monomials = nonconstant_monomials(spec.nvars(), cfg.degree_bound.max(1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=cfg.retry_budget {
        let gens = (0..dimension)
            .map(|_| random_poly(spec, &monomials, &mut rng))
            .collect();
        let q = PrimaryIdealSpec { generators: gens };
        match hs_table(spec, &q, &cfg.hs) {
            Ok(t) => return Ok((q, t.multiplicity, attempt)),
            Err(
                LocalError::NotPrimary { .. }
                | LocalError::NoConvergence { .. }
                | LocalError::TooManyGenerators { .. },
            ) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(InvariantError::SamplingExhausted {
        attempts: cfg.retry_budget,
    })
}

/// Draws `dim A` random polynomials of degree at most the bound, until they
/// generate an ideal certified primary by [`hs_table`].
pub fn sample_parameter_ideal(
    spec: &LocalRingSpec,
    degree_bound: u32,
    seed: u64,
) -> Result<(PrimaryIdealSpec, u64), InvariantError> {
    let cfg = SamplingConfig {
        degree_bound,
        ..SamplingConfig::default()
    };
    let (dimension, _) = crate::local::hs_multiplicity(spec, &spec.maximal_ideal())?;
    sample_with_dimension(spec, dimension, seed, &cfg).map(|(q, e, _)| (q, e))
}

/// `e(m)` together with `e(Q)` for every curated ideal and `trials` sampled
/// parameter ideals. Sample `i` uses the sub-seed `sub_seed(seed, i)`, so
/// the report does not depend on scheduling.
pub fn gamma_estimate(
    spec: &LocalRingSpec,
    trials: u32,
    seed: u64,
    curated: &[PrimaryIdealSpec],
    cfg: &SamplingConfig,
) -> Result<GammaReport, InvariantError> {
    let m_table = hs_table(spec, &spec.maximal_ideal(), &cfg.hs)?;
    let (dimension, e_of_m) = (m_table.dimension, m_table.multiplicity);
    let mut samples = Vec::new();
    for q in curated {
        let t = hs_table(spec, q, &cfg.hs)?;
        samples.push(Sample {
            index: samples.len(),
            source: SampleSource::Curated,
            ideal: q.clone(),
            e: t.multiplicity,
            attempts: 1,
        });
    }
    let sampled: Vec<_> = (0..trials as u64)
        .into_par_iter()
        .map(|i| sample_with_dimension(spec, dimension, sub_seed(seed, i), cfg))
        .collect();
    for r in sampled {
        let (ideal, e, attempts) = r?;
        samples.push(Sample {
            index: samples.len(),
            source: SampleSource::Sampled,
            ideal,
            e,
            attempts,
        });
    }
    let mut gcd_history = vec![e_of_m];
    for s in &samples {
        let last = *gcd_history.last().unwrap();
        gcd_history.push(gcd_of_list([last, s.e]));
    }
    Ok(GammaReport {
        dimension,
        e_of_m,
        running_gcd: *gcd_history.last().unwrap(),
        gcd_history,
        samples,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    /// Each attained colength with the first polynomial attaining it, in
    /// enumeration order.
    pub values: BTreeMap<u64, Poly>,
    pub candidates: u64,
    /// Candidates skipped because their colength is not finite.
    pub skipped: u64,
}

impl ScanResult {
    pub fn contains(&self, v: u64) -> bool {
        self.values.contains_key(&v)
    }
}

/// All colengths `length(A/(f))` for nonzero `f` without constant term and
/// of degree at most `degree_bound`; zero divisors are skipped.
pub fn principal_multiplicity_scan(
    spec: &LocalRingSpec,
    degree_bound: u32,
    hs: &HsOptions,
) -> Result<ScanResult, InvariantError> {
    let monomials = nonconstant_monomials(spec.nvars(), degree_bound);
    let q = spec.field.order() as u128;
    let candidates = q.checked_pow(monomials.len() as u32).unwrap_or(u128::MAX);
    if q > 4 || monomials.len() > MAX_SCAN_MONOMIALS || candidates > MAX_SCAN_CANDIDATES as u128 {
        return Err(InvariantError::ScanTooLarge {
            monomials: monomials.len(),
            candidates,
        });
    }
    let q = q as u64;
    let candidates = candidates as u64;
    let results: Vec<(u64, Result<u64, LocalError>)> = (1..candidates)
        .into_par_iter()
        .map(|index| {
            let mut rest = index;
            let f = Poly::from_terms(
                &spec.field,
                &spec.vars,
                monomials.iter().map(|m| {
                    let c = (rest % q) as u32;
                    rest /= q;
                    (m.clone(), c)
                }),
            );
            (
                index,
                local_length_with(spec, &[f], &hs.length).map(|l| l.value),
            )
        })
        .collect();
    let mut values = BTreeMap::new();
    let mut skipped = 0;
    for (index, r) in results {
        match r {
            Ok(v) => {
                values.entry(v).or_insert_with(|| {
                    let mut rest = index;
                    Poly::from_terms(
                        &spec.field,
                        &spec.vars,
                        monomials.iter().map(|m| {
                            let c = (rest % q) as u32;
                            rest /= q;
                            (m.clone(), c)
                        }),
                    )
                });
            }
            Err(LocalError::NotFinite { .. }) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(ScanResult {
        values,
        candidates: candidates - 1,
        skipped,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub lhs: u64,
    /// `(coefficient, multiplicity)` per component.
    pub terms: Vec<(u64, u64)>,
    pub rhs: u64,
    pub holds: bool,
}

impl LawReport {
    fn new(lhs: u64, terms: Vec<(u64, u64)>) -> LawReport {
        let rhs = terms.iter().map(|(a, e)| a * e).sum();
        LawReport {
            lhs,
            terms,
            rhs,
            holds: lhs == rhs,
        }
    }
}

/// `e(m, A) = sum a_i e(m, A/(g_i))` for `A = k[x]/(prod g_i^{a_i})`.
pub fn check_additivity(
    spec: &LocalRingSpec,
    components: &[(Poly, u32)],
    hs: &HsOptions,
) -> Result<LawReport, InvariantError> {
    let [f] = spec.ideal.as_slice() else {
        return Err(InvariantError::ComponentMismatch(
            "the local ring is not a hypersurface".into(),
        ));
    };
    let product = components
        .iter()
        .fold(Poly::one(&spec.field, &spec.vars), |acc, (g, a)| {
            acc.mul(&g.pow(*a))
        });
    if product.monic() != f.monic() {
        return Err(InvariantError::ComponentMismatch(format!(
            "{product} vs {f}"
        )));
    }
    let whole = hs_table(spec, &spec.maximal_ideal(), hs)?;
    let mut terms = Vec::new();
    for (g, a) in components {
        let part = LocalRingSpec::hypersurface(g)?;
        let t = hs_table(&part, &part.maximal_ideal(), hs)?;
        if t.dimension != whole.dimension {
            return Err(InvariantError::ComponentMismatch(format!(
                "component {g} has dimension {} instead of {}",
                t.dimension, whole.dimension
            )));
        }
        terms.push((*a as u64, t.multiplicity));
    }
    Ok(LawReport::new(whole.multiplicity, terms))
}

/// A minimal component of `A/(prefix)` with its caller-supplied data.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentData {
    /// Generators of the prime ideal, in the ambient polynomial ring.
    pub ideal: Vec<Poly>,
    /// Length of `A/(prefix)` localized at the component.
    pub local_multiplicity: u64,
    /// Multiplicity of the suffix ideal on `A/component`.
    pub suffix_order: u64,
}

/// Checks `I` inside `J` near the origin by comparing truncated colengths.
fn contained_near_origin(spec: &LocalRingSpec, inner: &[Poly], outer: &[Poly]) -> bool {
    let n = spec.nvars();
    let mut outer_all: Vec<Poly> = outer.to_vec();
    outer_all.extend(spec.ideal.iter().cloned());
    let mut both = outer_all.clone();
    both.extend(inner.iter().cloned());
    [6, 8].into_iter().all(|m| {
        colength_truncated(&spec.field, n, &outer_all, m)
            == colength_truncated(&spec.field, n, &both, m)
    })
}

/// `e((prefix, suffix), A) = sum_i lambda_i e(suffix, A/P_i)` over the
/// minimal components `P_i` of `(prefix)`. Suffix orders are recomputed;
/// with a single component the local multiplicity is cross-checked too.
pub fn check_associativity(
    spec: &LocalRingSpec,
    prefix: &[Poly],
    suffix: &[Poly],
    components: &[ComponentData],
    hs: &HsOptions,
) -> Result<LawReport, InvariantError> {
    let mut all = prefix.to_vec();
    all.extend(suffix.iter().cloned());
    let q = PrimaryIdealSpec::new(spec, all)?;
    let lhs = hs_table(spec, &q, hs)?.multiplicity;
    if components.is_empty() {
        return Err(InvariantError::DecompositionInconsistent(
            "no components".into(),
        ));
    }
    let mut terms = Vec::new();
    for (i, c) in components.iter().enumerate() {
        if !contained_near_origin(spec, prefix, &c.ideal) {
            return Err(InvariantError::DecompositionInconsistent(format!(
                "component {i} does not contain the prefix"
            )));
        }
        let quotient = spec.quotient(&c.ideal)?;
        let sq = PrimaryIdealSpec::new(&quotient, suffix.to_vec())?;
        let order = hs_table(&quotient, &sq, hs)?.multiplicity;
        if order != c.suffix_order {
            return Err(InvariantError::DecompositionInconsistent(format!(
                "component {i}: suffix order {order}, supplied {}",
                c.suffix_order
            )));
        }
        terms.push((c.local_multiplicity, order));
    }
    if let [(lambda, order)] = terms.as_slice() {
        if lhs % order != 0 || lhs / order != *lambda {
            return Err(InvariantError::DecompositionInconsistent(format!(
                "single component: local multiplicity {lambda} but {lhs}/{order}"
            )));
        }
    }
    Ok(LawReport::new(lhs, terms))
}
