//! Affine and projective varieties given by generators.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FiniteField;
use crate::geometry::Poly;
use crate::poly::Vars;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Affine,
    Projective,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VarietyError {
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("generator {0} is over a different field or variable list")]
    Incompatible(String),
    #[error("a variety needs at least one variable")]
    NoVariables,
}

/// `V(ideal) \ V(excluded[0]) \ ... ` inside affine or projective space.
///
/// The `excluded` list removes closed subsets: a point is dropped when every
/// polynomial of some excluded entry vanishes at it. Each entry is a list of
/// generators.
#[derive(Clone, Debug, PartialEq)]
pub struct VarietyDescriptor {
    pub field: FiniteField,
    pub ambient: Ambient,
    pub vars: Vars,
    pub ideal: Vec<Poly>,
    pub excluded: Vec<Vec<Poly>>,
    pub declared_codim: Option<u32>,
}

impl VarietyDescriptor {
    pub fn new(
        field: &FiniteField,
        ambient: Ambient,
        vars: &Vars,
        ideal: Vec<Poly>,
    ) -> Result<VarietyDescriptor, VarietyError> {
        let v = VarietyDescriptor {
            field: field.clone(),
            ambient,
            vars: vars.clone(),
            ideal,
            excluded: Vec::new(),
            declared_codim: None,
        };
        v.validate()?;
        Ok(v)
    }

    pub fn affine(
        field: &FiniteField,
        vars: &Vars,
        ideal: Vec<Poly>,
    ) -> Result<Self, VarietyError> {
        Self::new(field, Ambient::Affine, vars, ideal)
    }

    pub fn projective(
        field: &FiniteField,
        vars: &Vars,
        ideal: Vec<Poly>,
    ) -> Result<Self, VarietyError> {
        Self::new(field, Ambient::Projective, vars, ideal)
    }

    pub fn with_excluded(mut self, closed: Vec<Poly>) -> Result<Self, VarietyError> {
        self.excluded.push(closed);
        self.validate()?;
        Ok(self)
    }

    pub fn with_codim(mut self, codim: u32) -> Self {
        self.declared_codim = Some(codim);
        self
    }

    pub fn validate(&self) -> Result<(), VarietyError> {
        if self.vars.is_empty() {
            return Err(VarietyError::NoVariables);
        }
        for g in self.ideal.iter().chain(self.excluded.iter().flatten()) {
            if g.ring() != &self.field || g.vars() != &self.vars {
                return Err(VarietyError::Incompatible(g.to_string()));
            }
            if self.ambient == Ambient::Projective && !g.is_homogeneous() {
                return Err(VarietyError::NotHomogeneous(g.to_string()));
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// The codimension used by the Jacobian criterion: declared, or 1 for a
    /// single nonzero generator, or 0 for the zero ideal.
    pub fn codim(&self) -> Option<u32> {
        self.declared_codim.or_else(|| {
            let nonzero: Vec<&Poly> = self.ideal.iter().filter(|g| !g.is_zero()).collect();
            match nonzero.len() {
                0 => Some(0),
                1 => Some(1),
                _ => None,
            }
        })
    }
}
