//! JSON descriptors for varieties, local rings and plane models.
//!
//! ```json
//! {"field": {"p": 3, "k": 1}, "ambient": "affine", "vars": ["x", "y"], "ideal": ["x^2+y^2"]}
//! {"field": {"p": 3}, "vars": ["x", "y"], "f": "x^2+y^2+t", "components": [{"g": "x^2+y^2", "r": 1}]}
//! {"field": {"p": 2}, "vars": ["x", "y"], "ideal": ["x*y*(x+y)"]}
//! ```
//!
//! A descriptor with `f` is a model, one with `ambient` is a variety, and
//! anything else is the local ring at the origin of `V(ideal)`.

use idxlab_core::field::{field_of_order, FiniteField};
use idxlab_core::local::LocalRingSpec;
use idxlab_core::models::{ModelDescriptor, DEFAULT_T_TRUNCATION};
use idxlab_core::poly::{parse_poly, vars, Vars};
use idxlab_core::variety::{Ambient, VarietyDescriptor};
use idxlab_core::Poly;
use serde::Deserialize;
use thiserror::Error;

pub const SCHEMA: &str = "idxlab/1";

/// Name of the field generator inside polynomial strings.
pub const GENERATOR: &str = "a";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("{location}: parse error at offset {offset}: {message}")]
    Parse {
        location: String,
        offset: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid descriptor: {0}")]
    InvariantViolation(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    p: u64,
    k: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    g: String,
    r: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDescriptor {
    schema: Option<String>,
    field: RawField,
    vars: Vec<String>,
    ambient: Option<Ambient>,
    #[serde(default)]
    ideal: Vec<String>,
    #[serde(default)]
    exclude: Vec<Vec<String>>,
    codim: Option<u32>,
    dimension: Option<u32>,
    f: Option<String>,
    #[serde(default)]
    components: Vec<RawComponent>,
    uniformizer: Option<String>,
    t_truncation: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Descriptor {
    Variety(VarietyDescriptor),
    Model(ModelDescriptor),
    Local(LocalRingSpec),
}

impl Descriptor {
    pub fn kind(&self) -> &'static str {
        match self {
            Descriptor::Variety(_) => "variety",
            Descriptor::Model(_) => "model",
            Descriptor::Local(_) => "local",
        }
    }
}

pub fn parse_field(p: u64, k: u32) -> Result<FiniteField, DescriptorError> {
    field_of_order(p, k).map_err(|e| DescriptorError::InvariantViolation(e.to_string()))
}

/// Parses a polynomial string; `location` names the descriptor entry in
/// error messages.
pub fn parse_polynomial(
    src: &str,
    field: &FiniteField,
    vars: &Vars,
    location: &str,
) -> Result<Poly, DescriptorError> {
    let generator = (!field.is_prime_field()).then(|| (GENERATOR, field.generator()));
    parse_poly(src, field, vars, generator).map_err(|e| DescriptorError::Parse {
        location: location.to_string(),
        offset: e.offset,
        message: e.message,
    })
}

/// A field element written as a constant expression in the generator.
pub fn parse_element(
    src: &str,
    field: &FiniteField,
    location: &str,
) -> Result<u32, DescriptorError> {
    let p = parse_polynomial(src, field, &vars(&[]), location)?;
    Ok(p.constant_term())
}

fn invariant(e: impl std::fmt::Display) -> DescriptorError {
    DescriptorError::InvariantViolation(e.to_string())
}

fn check_names(names: &[String], extra: Option<&str>) -> Result<(), DescriptorError> {
    let mut seen = std::collections::HashSet::new();
    for n in names.iter().map(String::as_str).chain(extra) {
        if n == GENERATOR {
            return Err(DescriptorError::Schema(format!(
                "'{GENERATOR}' is reserved for the field generator"
            )));
        }
        let valid = n
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(DescriptorError::Schema(format!(
                "invalid variable name '{n}'"
            )));
        }
        if !seen.insert(n) {
            return Err(DescriptorError::Schema(format!(
                "variable '{n}' listed twice"
            )));
        }
    }
    Ok(())
}

pub fn parse_descriptor(text: &[u8]) -> Result<Descriptor, DescriptorError> {
    let raw: RawDescriptor =
        serde_json::from_slice(text).map_err(|e| DescriptorError::Schema(e.to_string()))?;
    if let Some(s) = &raw.schema {
        if s != SCHEMA {
            return Err(DescriptorError::Schema(format!("unsupported schema '{s}'")));
        }
    }
    let field = parse_field(raw.field.p, raw.field.k.unwrap_or(1))?;
    if raw.f.is_some() {
        return model_descriptor(raw, &field).map(Descriptor::Model);
    }
    if !raw.components.is_empty() || raw.uniformizer.is_some() || raw.t_truncation.is_some() {
        return Err(DescriptorError::Schema(
            "model fields given without 'f'".into(),
        ));
    }
    check_names(&raw.vars, None)?;
    let names: Vec<&str> = raw.vars.iter().map(String::as_str).collect();
    let vs = vars(&names);
    let ideal = raw
        .ideal
        .iter()
        .enumerate()
        .map(|(i, s)| parse_polynomial(s, &field, &vs, &format!("ideal[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    match raw.ambient {
        Some(ambient) => {
            if raw.dimension.is_some() {
                return Err(DescriptorError::Schema(
                    "'dimension' applies to local rings".into(),
                ));
            }
            let mut v = VarietyDescriptor::new(&field, ambient, &vs, ideal).map_err(invariant)?;
            for (i, closed) in raw.exclude.iter().enumerate() {
                let gens = closed
                    .iter()
                    .enumerate()
                    .map(|(j, s)| parse_polynomial(s, &field, &vs, &format!("exclude[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                v = v.with_excluded(gens).map_err(invariant)?;
            }
            if let Some(c) = raw.codim {
                v = v.with_codim(c);
            }
            Ok(Descriptor::Variety(v))
        }
        None => {
            if !raw.exclude.is_empty() || raw.codim.is_some() {
                return Err(DescriptorError::Schema(
                    "'exclude' and 'codim' need an 'ambient'".into(),
                ));
            }
            LocalRingSpec::new(&field, &vs, ideal, raw.dimension)
                .map(Descriptor::Local)
                .map_err(invariant)
        }
    }
}

fn model_descriptor(
    raw: RawDescriptor,
    field: &FiniteField,
) -> Result<ModelDescriptor, DescriptorError> {
    if raw.ambient.is_some() || !raw.ideal.is_empty() || !raw.exclude.is_empty() {
        return Err(DescriptorError::Schema(
            "a model takes 'f' and 'components', not 'ambient' or 'ideal'".into(),
        ));
    }
    let [x, y] = raw.vars.as_slice() else {
        return Err(DescriptorError::Schema(
            "a model has exactly two variables".into(),
        ));
    };
    let t = raw.uniformizer.as_deref().unwrap_or("t");
    check_names(&raw.vars, Some(t))?;
    if raw.components.is_empty() {
        return Err(DescriptorError::Schema("a model needs 'components'".into()));
    }
    let full = vars(&[x, y, t]);
    let plane = vars(&[x, y]);
    let f = parse_polynomial(raw.f.as_deref().unwrap_or_default(), field, &full, "f")?;
    let components = raw
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Ok((
                parse_polynomial(&c.g, field, &plane, &format!("components[{i}].g"))?,
                c.r,
            ))
        })
        .collect::<Result<Vec<_>, DescriptorError>>()?;
    ModelDescriptor::new(
        field,
        [x, y],
        t,
        f,
        components,
        raw.t_truncation.unwrap_or(DEFAULT_T_TRUNCATION),
    )
    .map_err(invariant)
}
