use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyalg::{parse_poly, Poly, VarSet};

/// Closed subscheme of affine space given by generators of its ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineScheme {
    vars: Arc<VarSet>,
    generators: Vec<Poly>,
    dim: Option<usize>,
    dim_declared: bool,
}

impl AffineScheme {
    /// Without a declared dimension, `N - c` is recorded provisionally for
    /// presentations with `c <= N` generators.
    pub fn new(vars: &Arc<VarSet>, generators: Vec<Poly>, declared_dim: Option<usize>) -> Result<Self> {
        if let Some(i) = generators.iter().position(Poly::is_zero) {
            return Err(Error::InvalidInput(format!("generator {i} is zero")));
        }
        if generators.iter().any(|g| !g.same_vars(&Poly::zero(vars))) {
            return Err(Error::VarsetMismatch);
        }
        if let Some(d) = declared_dim {
            if d > vars.len() {
                return Err(Error::InvalidInput(format!("dimension {d} exceeds ambient dimension {}", vars.len())));
            }
        }
        let dim = declared_dim.or_else(|| vars.len().checked_sub(generators.len()));
        Ok(AffineScheme { vars: vars.clone(), generators, dim, dim_declared: declared_dim.is_some() })
    }

    pub fn parse<S: AsRef<str>>(var_names: &[S], generators: &[S], declared_dim: Option<usize>) -> Result<Self> {
        let vars = VarSet::from_names(var_names)?;
        let gens = generators.iter().map(|g| parse_poly(g.as_ref(), &vars)).collect::<Result<Vec<_>>>()?;
        AffineScheme::new(&vars, gens, declared_dim)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.vars.len()
    }

    /// Declared dimension, or the complete-intersection default.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn dim_is_declared(&self) -> bool {
        self.dim_declared
    }

    pub fn require_dim(&self) -> Result<usize> {
        self.dim.ok_or_else(|| {
            Error::InvalidInput("scheme dimension must be declared for this presentation".into())
        })
    }

    pub fn codim(&self) -> Result<usize> {
        Ok(self.ambient_dim() - self.require_dim()?)
    }

    pub fn with_generators(&self, generators: Vec<Poly>) -> Result<Self> {
        AffineScheme::new(&self.vars, generators, self.dim)
    }
}
