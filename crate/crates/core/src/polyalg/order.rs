use std::cmp::Ordering;
use std::sync::Arc;

use smallvec::SmallVec;

use super::monomial::{cmp_grevlex, cmp_lex, Monomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Grlex,
    Lex,
    /// Local degree order: `a < b` iff `b <_grlex a`, so lower total degree
    /// is larger and `1` is the largest monomial.
    AntiGrlex,
}

/// A monomial order together with a variable priority. Without an explicit
/// priority the declaration order is used (variable 0 ranks highest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    rank: Option<Arc<[u32]>>,
}

impl MonomialOrder {
    pub const fn new(kind: OrderKind) -> Self {
        MonomialOrder { kind, rank: None }
    }

    pub const fn grevlex() -> Self {
        Self::new(OrderKind::Grevlex)
    }

    pub const fn grlex() -> Self {
        Self::new(OrderKind::Grlex)
    }

    pub const fn lex() -> Self {
        Self::new(OrderKind::Lex)
    }

    pub const fn antigrlex() -> Self {
        Self::new(OrderKind::AntiGrlex)
    }

    /// `priority[k]` is the variable with the k-th highest priority.
    pub fn with_priority(kind: OrderKind, priority: &[usize]) -> Result<Self> {
        let n = priority.len();
        let mut rank = vec![u32::MAX; n];
        for (r, &v) in priority.iter().enumerate() {
            if v >= n || rank[v] != u32::MAX {
                return Err(Error::InvalidInput("variable priority is not a permutation".into()));
            }
            rank[v] = r as u32;
        }
        Ok(MonomialOrder { kind, rank: Some(rank.into()) })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn is_global(&self) -> bool {
        self.kind != OrderKind::AntiGrlex
    }

    pub fn is_local(&self) -> bool {
        !self.is_global()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.rank {
            None => self.cmp_raw(a.raw(), b.raw(), a.degree(), b.degree()),
            Some(rank) => {
                let ra = ranked(a, rank);
                let rb = ranked(b, rank);
                self.cmp_raw(&ra, &rb, a.degree(), b.degree())
            }
        }
    }

    fn cmp_raw(&self, a: &[(u32, u32)], b: &[(u32, u32)], da: u32, db: u32) -> Ordering {
        match self.kind {
            OrderKind::Grevlex => cmp_grevlex(a, b, da, db),
            OrderKind::Lex => cmp_lex(a, b),
            OrderKind::Grlex => da.cmp(&db).then_with(|| cmp_lex(a, b)),
            OrderKind::AntiGrlex => db.cmp(&da).then_with(|| cmp_lex(b, a)),
        }
    }
}

fn ranked(m: &Monomial, rank: &[u32]) -> SmallVec<[(u32, u32); 8]> {
    let mut out: SmallVec<[(u32, u32); 8]> = m.iter().map(|(v, e)| (rank[v], e)).collect();
    out.sort_unstable_by_key(|p| p.0);
    out
}
