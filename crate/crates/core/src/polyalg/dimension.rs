use super::monomial::Monomial;

/// Krull dimension of `k[x_0..x_{n-1}] / (monomials)`.
///
/// A variable subset `U` is independent when no generator is supported inside
/// `U`; the dimension is the size of the largest one, i.e. `nvars` minus the
/// size of a minimum set of variables meeting every generator's support.
pub fn monomial_dim(monomials: &[Monomial], nvars: usize) -> usize {
    if monomials.iter().any(Monomial::is_one) {
        // unit ideal: empty quotient, reported as dimension 0
        return 0;
    }
    let mut supports: Vec<Vec<usize>> = monomials.iter().map(|m| m.support().collect()).collect();
    supports.sort();
    supports.dedup();
    // a support containing another one is redundant for hitting sets
    let minimal: Vec<Vec<usize>> = supports
        .iter()
        .filter(|s| !supports.iter().any(|t| t != *s && t.iter().all(|v| s.contains(v))))
        .cloned()
        .collect();
    let mut best = nvars;
    let mut chosen = vec![false; nvars];
    min_hitting_set(&minimal, &mut chosen, 0, &mut best);
    nvars - best
}

fn min_hitting_set(sets: &[Vec<usize>], chosen: &mut [bool], size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    let open: Vec<&Vec<usize>> = sets.iter().filter(|s| !s.iter().any(|&v| chosen[v])).collect();
    let Some(smallest) = open.iter().min_by_key(|s| s.len()) else {
        *best = size;
        return;
    };
    // lower bound: greedily pick pairwise-disjoint open sets
    let mut used = vec![false; chosen.len()];
    let mut disjoint = 0;
    for s in &open {
        if s.iter().all(|&v| !used[v]) {
            disjoint += 1;
            for &v in s.iter() {
                used[v] = true;
            }
        }
    }
    if size + disjoint >= *best {
        return;
    }
    for &v in smallest.iter() {
        chosen[v] = true;
        min_hitting_set(sets, chosen, size + 1, best);
        chosen[v] = false;
    }
}
