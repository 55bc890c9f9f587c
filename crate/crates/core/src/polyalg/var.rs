use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A variable name: a family symbol plus a list of indices.
///
/// Rendering: no index gives the bare family (`y`), one index gives
/// `family_i` (`q_2`, or `x0_3` for the order-3 jet of `x0`), and two or more
/// give `family{i0}_{i1}_...` (`xbar1_0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub family: String,
    pub indices: Vec<u32>,
}

impl VarId {
    pub fn new(family: impl Into<String>, indices: Vec<u32>) -> Self {
        VarId { family: family.into(), indices }
    }

    pub fn plain(name: impl Into<String>) -> Self {
        VarId::new(name, Vec::new())
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.indices.as_slice() {
            [] => write!(f, "{}", self.family),
            [i] => write!(f, "{}_{}", self.family, i),
            [first, rest @ ..] => {
                write!(f, "{}{}", self.family, first)?;
                for i in rest {
                    write!(f, "_{i}")?;
                }
                Ok(())
            }
        }
    }
}

/// An ordered, duplicate-free list of variables. Position in the list is the
/// variable's index inside monomials and its priority in monomial orders.
#[derive(Debug, Clone)]
pub struct VarSet {
    vars: Vec<VarId>,
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}

impl Eq for VarSet {}

impl VarSet {
    pub fn new(vars: Vec<VarId>) -> Result<Arc<Self>> {
        let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidInput(format!("`{name}` is not a valid variable name")));
            }
            if name == "t" {
                return Err(Error::InvalidInput("`t` is reserved for the arc parameter".into()));
            }
            if lookup.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Arc::new(VarSet { vars, names, lookup }))
    }

    /// Variables given by their rendered names, each taken as a bare family.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        VarSet::new(names.iter().map(|n| VarId::plain(n.as_ref())).collect())
    }

    /// The single-variable set `{t}` used for arc components.
    pub fn arc_parameter() -> Arc<Self> {
        let name = "t".to_string();
        Arc::new(VarSet {
            vars: vec![VarId::plain("t")],
            names: vec![name.clone()],
            lookup: HashMap::from([(name, 0)]),
        })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var(&self, index: usize) -> &VarId {
        &self.vars[index]
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn position(&self, var: &VarId) -> Option<usize> {
        self.index_of(&var.to_string())
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
