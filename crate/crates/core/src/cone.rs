//! Affine cones over projective varieties and the comparison between the
//! index of the variety and multiplicities at the vertex of its cone.

use thiserror::Error;

use crate::census::{closed_point_census, regular_filter, CensusError, ClosedPointCensus};
use crate::invariants::{gamma_estimate, GammaReport, InvariantError, SamplingConfig};
use crate::local::{LocalError, LocalRingSpec, PrimaryIdealSpec};
use crate::variety::{Ambient, VarietyDescriptor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("cones are built over projective varieties")]
    NotProjective,
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("variety has singular points of degree at most {0}")]
    NotRegular(u32),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Local(#[from] LocalError),
}

/// The affine cone: the homogeneous generators read in affine space, with
/// the vertex at the origin.
pub fn build_affine_cone(v: &VarietyDescriptor) -> Result<LocalRingSpec, ConeError> {
    if v.ambient != Ambient::Projective {
        return Err(ConeError::NotProjective);
    }
    if let Some(g) = v.ideal.iter().find(|g| !g.is_homogeneous()) {
        return Err(ConeError::NotHomogeneous(g.to_string()));
    }
    Ok(LocalRingSpec::new(
        &v.field,
        &v.vars,
        v.ideal.clone(),
        None,
    )?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConeReport {
    pub census: ClosedPointCensus,
    /// `delta_{<=D}` of the projective variety.
    pub delta: u64,
    pub e_of_vertex: u64,
    pub declared_degree: Option<u64>,
    pub gamma: GammaReport,
    /// `delta` divides `e(m)` and every sampled `e(Q)`.
    pub delta_divides_samples: bool,
    /// The gcd over the samples equals `delta`.
    pub equality_witnessed: bool,
}

impl ConeReport {
    /// `e(m)` at the vertex equals the declared degree, when one is given.
    pub fn degree_matches(&self) -> Option<bool> {
        self.declared_degree.map(|d| d == self.e_of_vertex)
    }

    pub fn passed(&self) -> bool {
        self.delta_divides_samples && self.degree_matches() != Some(false)
    }
}

pub fn cone_theorem_check(
    v: &VarietyDescriptor,
    max_degree: u32,
    trials: u32,
    curated: &[PrimaryIdealSpec],
    seed: u64,
    declared_degree: Option<u64>,
    cfg: &SamplingConfig,
) -> Result<ConeReport, ConeError> {
    let spec = build_affine_cone(v)?;
    let census = closed_point_census(v, max_degree)?;
    if regular_filter(v, max_degree)? != census {
        return Err(ConeError::NotRegular(max_degree));
    }
    let gamma = gamma_estimate(&spec, trials, seed, curated, cfg)?;
    let delta = census.gcd_estimate;
    let divides = |e: u64| delta != 0 && e.is_multiple_of(delta);
    let delta_divides_samples = divides(gamma.e_of_m) && gamma.samples.iter().all(|s| divides(s.e));
    Ok(ConeReport {
        delta,
        e_of_vertex: gamma.e_of_m,
        declared_degree,
        equality_witnessed: gamma.running_gcd == delta,
        delta_divides_samples,
        gamma,
        census,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_prime_field;
    use crate::geometry::parse;
    use crate::poly::vars;

    #[test]
    fn cone_examples() {
        let f2 = make_prime_field(2).unwrap();
        let names = ["x", "y"];
        let v = VarietyDescriptor::projective(
            &f2,
            &vars(&names),
            vec![parse("x^2+x*y+y^2", &f2, &names)],
        )
        .unwrap();
        let spec = build_affine_cone(&v).unwrap();
        let curated: Vec<PrimaryIdealSpec> = ["x", "y"]
            .iter()
            .map(|s| PrimaryIdealSpec::new(&spec, vec![spec.poly(s).unwrap()]).unwrap())
            .collect();
        let r =
            cone_theorem_check(&v, 2, 0, &curated, 1, Some(2), &SamplingConfig::default()).unwrap();
        assert_eq!((r.delta, r.e_of_vertex, r.gamma.running_gcd), (2, 2, 2));
        assert!(r.equality_witnessed && r.passed());

        let names = ["x", "y", "z"];
        let plane =
            VarietyDescriptor::projective(&f2, &vars(&names), vec![parse("x", &f2, &names)])
                .unwrap();
        let r =
            cone_theorem_check(&plane, 1, 0, &[], 1, Some(1), &SamplingConfig::default()).unwrap();
        assert_eq!((r.delta, r.e_of_vertex, r.gamma.running_gcd), (1, 1, 1));
        assert!(r.equality_witnessed);

        let affine = VarietyDescriptor::affine(&f2, &vars(&names), vec![]).unwrap();
        assert_eq!(build_affine_cone(&affine), Err(ConeError::NotProjective));
    }
}
