use std::sync::Arc;

use crate::error::Result;
use crate::polyalg::{VarId, VarSet};

/// Jet coordinates `x_i^{(j)}`, `j <= level`, over an ambient variable set.
///
/// The jet variable of `x_i` of order `j` is named `{x_i}_{j}` and sits at
/// index `i * (level + 1) + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetSpace {
    ambient: Arc<VarSet>,
    level: usize,
    vars: Arc<VarSet>,
}

impl JetSpace {
    pub fn new(ambient: &Arc<VarSet>, level: usize) -> Result<Self> {
        let mut ids = Vec::with_capacity(ambient.len() * (level + 1));
        for i in 0..ambient.len() {
            for j in 0..=level {
                ids.push(VarId::new(ambient.name(i), vec![j as u32]));
            }
        }
        Ok(JetSpace { ambient: ambient.clone(), level, vars: VarSet::new(ids)? })
    }

    pub fn ambient(&self) -> &Arc<VarSet> {
        &self.ambient
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Index of `x_i^{(j)}`.
    pub fn var(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.ambient.len() && j <= self.level);
        i * (self.level + 1) + j
    }

    /// `(ambient index, order)` of a jet variable index.
    pub fn split(&self, index: usize) -> (usize, usize) {
        (index / (self.level + 1), index % (self.level + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naming_and_indexing() {
        let amb = VarSet::from_names(&["x0", "y"]).unwrap();
        let js = JetSpace::new(&amb, 2).unwrap();
        assert_eq!(js.nvars(), 6);
        assert_eq!(js.vars().name(js.var(0, 2)), "x0_2");
        assert_eq!(js.vars().name(js.var(1, 1)), "y_1");
        assert_eq!(js.split(4), (1, 1));
    }
}
