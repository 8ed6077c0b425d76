//! JSON views of library results that hold polynomials.

use idxlab_core::census::ClosedPointCensus;
use idxlab_core::cone::ConeReport;
use idxlab_core::invariants::{GammaReport, ScanResult};
use idxlab_core::resolution::ResolutionReport;
use serde_json::{json, Value};

pub fn gamma(r: &GammaReport) -> Value {
    json!({
        "dimension": r.dimension,
        "e_of_m": r.e_of_m,
        "samples": r.samples.iter().map(|s| json!({
            "index": s.index,
            "source": s.source,
            "ideal": s.ideal.display(),
            "e": s.e,
            "attempts": s.attempts,
        })).collect::<Vec<_>>(),
        "running_gcd": r.running_gcd,
        "gcd_history": r.gcd_history,
        "minimality_holds": r.minimality_holds(),
        "seed": r.seed,
    })
}

pub fn scan(bound: u32, r: &ScanResult) -> Value {
    json!({
        "degree_bound": bound,
        "values": r.values.keys().collect::<Vec<_>>(),
        "witnesses": r.values.iter().map(|(v, f)| json!({"value": v, "f": f.to_string()})).collect::<Vec<_>>(),
        "candidates": r.candidates,
        "skipped": r.skipped,
    })
}

pub fn census(c: &ClosedPointCensus) -> Value {
    let mut v = serde_json::to_value(c).expect("census serializes");
    v["orbit_identity_holds"] = json!(c.orbit_identity_holds());
    v
}

pub fn resolution(r: &ResolutionReport) -> Value {
    json!({
        "places": r.places.iter().map(|p| json!({
            "residue_degree": p.residue_degree,
            "chart_path": p.path_string(),
        })).collect::<Vec<_>>(),
        "n_value": r.n_value,
        "blowup_count": r.blowup_count,
        "reduced_input": r.reduced_input.to_string(),
    })
}

pub fn cone(r: &ConeReport) -> Value {
    json!({
        "delta": r.delta,
        "e_of_vertex": r.e_of_vertex,
        "declared_degree": r.declared_degree,
        "degree_matches": r.degree_matches(),
        "gamma": gamma(&r.gamma),
        "delta_divides_samples": r.delta_divides_samples,
        "equality_witnessed": r.equality_witnessed,
        "census": census(&r.census),
    })
}
