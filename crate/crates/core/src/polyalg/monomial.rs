use std::cmp::Ordering;

use smallvec::SmallVec;

type Exps = SmallVec<[(u32, u32); 4]>;

/// A power product stored sparsely as `(variable index, exponent)` pairs,
/// sorted by variable index, with no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Exps,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(index: usize) -> Self {
        Monomial::var_pow(index, 1)
    }

    pub fn var_pow(index: usize, exp: u32) -> Self {
        let mut exps = Exps::new();
        if exp > 0 {
            exps.push((index as u32, exp));
        }
        Monomial { exps, degree: exp }
    }

    /// Builds a monomial from arbitrary `(index, exponent)` pairs; repeated
    /// indices are combined and zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut exps: Exps = pairs
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(i, e)| (i as u32, e))
            .collect();
        exps.sort_unstable_by_key(|p| p.0);
        let mut merged = Exps::new();
        for (i, e) in exps {
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => merged.push((i, e)),
            }
        }
        let degree = merged.iter().map(|p| p.1).sum();
        Monomial { exps: merged, degree }
    }

    pub fn from_dense(exps: &[u32]) -> Self {
        Monomial::from_pairs(exps.iter().enumerate().map(|(i, &e)| (i, e)))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, index: usize) -> u32 {
        let index = index as u32;
        match self.exps.binary_search_by_key(&index, |p| p.0) {
            Ok(pos) => self.exps[pos].1,
            Err(_) => 0,
        }
    }

    /// `(variable index, exponent)` pairs in increasing variable order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(i, e)| (i as usize, e))
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().map(|p| p.0 as usize)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|p| p.0 as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Exps::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    exps.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&(i, e)| (i, e * k)).collect(),
            degree: self.degree * k,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.degree > other.degree || self.exps.len() > other.exps.len() {
            return false;
        }
        let mut j = 0;
        for &(v, e) in &self.exps {
            while j < other.exps.len() && other.exps[j].0 < v {
                j += 1;
            }
            if j == other.exps.len() || other.exps[j].0 != v || other.exps[j].1 < e {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = Exps::new();
        let mut i = 0;
        for &(v, e) in &other.exps {
            if i < self.exps.len() && self.exps[i].0 == v {
                let rest = e - self.exps[i].1;
                if rest > 0 {
                    exps.push((v, rest));
                }
                i += 1;
            } else {
                exps.push((v, e));
            }
        }
        Some(Monomial { exps, degree: other.degree - self.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = Exps::new();
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            let a = self.exps.get(i).copied();
            let b = other.exps.get(j).copied();
            match (a, b) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    exps.push((a.0, a.1.max(b.1)));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    exps.push(a);
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    exps.push(b);
                    j += 1;
                }
                (Some(a), None) => {
                    exps.push(a);
                    i += 1;
                }
                (None, Some(b)) => {
                    exps.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let degree = exps.iter().map(|p| p.1).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    /// Drops the variable `index`, returning the remaining monomial and the
    /// removed exponent.
    pub fn split_var(&self, index: usize) -> (Monomial, u32) {
        let mut removed = 0;
        let exps: Exps = self
            .exps
            .iter()
            .filter(|&&(v, e)| {
                if v as usize == index {
                    removed = e;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (Monomial { exps, degree: self.degree - removed }, removed)
    }

    /// Re-indexes variables through `map` (old index -> new index).
    pub fn reindex(&self, map: &[usize]) -> Monomial {
        Monomial::from_pairs(self.iter().map(|(i, e)| (map[i], e)))
    }
}

/// Graded reverse lexicographic comparison with declaration-order priority.
/// This is the canonical order used for storing and printing polynomials.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_grevlex(&self.exps, &other.exps, self.degree, other.degree)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn cmp_lex(a: &[(u32, u32)], b: &[(u32, u32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(x), Some(y)) => {
                if x.0 < y.0 {
                    return Ordering::Greater;
                }
                if x.0 > y.0 {
                    return Ordering::Less;
                }
                if x.1 != y.1 {
                    return x.1.cmp(&y.1);
                }
                i += 1;
                j += 1;
            }
        }
    }
}

pub(crate) fn cmp_grevlex(a: &[(u32, u32)], b: &[(u32, u32)], da: u32, db: u32) -> Ordering {
    if da != db {
        return da.cmp(&db);
    }
    let (mut i, mut j) = (a.len(), b.len());
    loop {
        match (i, j) {
            (0, 0) => return Ordering::Equal,
            (_, 0) => return Ordering::Less,
            (0, _) => return Ordering::Greater,
            _ => {
                let (x, y) = (a[i - 1], b[j - 1]);
                if x.0 > y.0 {
                    return Ordering::Less;
                }
                if x.0 < y.0 {
                    return Ordering::Greater;
                }
                if x.1 != y.1 {
                    return y.1.cmp(&x.1);
                }
                i -= 1;
                j -= 1;
            }
        }
    }
}

impl Monomial {
    pub(crate) fn raw(&self) -> &[(u32, u32)] {
        &self.exps
    }
}
