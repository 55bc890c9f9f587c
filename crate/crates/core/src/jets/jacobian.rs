use super::arc::{ord_along_arc, FormalArc};
use super::scheme::AffineScheme;
use crate::error::{Error, Result};
use crate::polyalg::{OrdResult, Poly};

/// `(∂g_i/∂x_j)`, one row per generator.
pub fn jacobian_matrix(generators: &[Poly]) -> Vec<Vec<Poly>> {
    generators
        .iter()
        .map(|g| (0..g.vars().len()).map(|j| g.partial_derivative(j)).collect())
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Poly>]) -> Poly {
    match m.len() {
        0 => unreachable!("determinant of an empty matrix needs a variable set"),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = Poly::zero(m[0][0].vars());
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][j] * &determinant(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Nonzero `r × r` minors of a polynomial matrix, rows-major over subsets.
pub fn minors(m: &[Vec<Poly>], r: usize) -> Vec<Poly> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for rows in subsets(m.len(), r) {
        for cols in subsets(ncols, r) {
            let sub: Vec<Vec<Poly>> =
                rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect();
            let det = determinant(&sub);
            if !det.is_zero() {
                out.push(det);
            }
        }
    }
    out
}

/// Generators of `Fitt^d(Ω_X)`: the nonzero `(N-d)`-minors of the Jacobian
/// matrix. For `d = N` this is the unit ideal.
pub fn jacobian_ideal(x: &AffineScheme, d: usize) -> Result<Vec<Poly>> {
    let n = x.ambient_dim();
    let c = x.generators().len();
    if d > n || n - d > c {
        return Err(Error::InvalidCodim { size: n.saturating_sub(d), rows: c, cols: n });
    }
    if n == d {
        return Ok(vec![Poly::one(x.vars())]);
    }
    Ok(minors(&jacobian_matrix(x.generators()), n - d))
}

/// A warning when the dimension is declared and `ord_α Fitt^d` is not shown
/// finite within `cap`; the invariants below then rest on the declaration.
pub fn finiteness_warning(x: &AffineScheme, alpha: &FormalArc, cap: usize) -> Result<Option<String>> {
    if !x.dim_is_declared() {
        return Ok(None);
    }
    let d = x.require_dim()?;
    let ord = ord_along_arc(&jacobian_ideal(x, d)?, alpha, cap)?;
    Ok(match ord {
        OrdResult::Exact(_) => None,
        other => Some(format!("order of the Jacobian ideal along the arc is {other} for declared dimension {d}")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(ps: &[Poly]) -> Vec<String> {
        ps.iter().map(Poly::to_string).collect()
    }

    #[test]
    fn gradients() {
        let x = AffineScheme::parse(&["x0", "x1", "x2", "x3"], &["x0*x3 + x1*x2"], None).unwrap();
        assert_eq!(strings(&jacobian_ideal(&x, 3).unwrap()), vec!["x3", "x2", "x1", "x0"]);
        let cusp = AffineScheme::parse(&["x", "y"], &["y^2 - x^3"], None).unwrap();
        assert_eq!(strings(&jacobian_ideal(&cusp, 1).unwrap()), vec!["-3*x^2", "2*y"]);
    }

    #[test]
    fn codimension_checks() {
        let x = AffineScheme::parse(&["x", "y", "z"], &["x*y"], None).unwrap();
        assert!(matches!(jacobian_ideal(&x, 1), Err(Error::InvalidCodim { .. })));
        assert!(matches!(jacobian_ideal(&x, 4), Err(Error::InvalidCodim { .. })));
        assert_eq!(strings(&jacobian_ideal(&x, 3).unwrap()), vec!["1"]);
    }

    #[test]
    fn three_by_three() {
        let x = AffineScheme::parse(&["x", "y", "z"], &["x^2", "y^2", "z^2"], None).unwrap();
        assert_eq!(strings(&jacobian_ideal(&x, 0).unwrap()), vec!["8*x*y*z"]);
        assert_eq!(subsets(4, 2).len(), 6);
    }

    #[test]
    fn declared_dimension_warning() {
        let node = AffineScheme::parse(&["x", "y"], &["x*y"], Some(1)).unwrap();
        let zero = FormalArc::parse(&["0", "0"], None).unwrap();
        let along_axis = FormalArc::parse(&["t", "0"], None).unwrap();
        assert!(finiteness_warning(&node, &zero, 16).unwrap().is_some());
        assert_eq!(finiteness_warning(&node, &along_axis, 16).unwrap(), None);
        let undeclared = AffineScheme::parse(&["x", "y"], &["x*y"], None).unwrap();
        assert_eq!(finiteness_warning(&undeclared, &zero, 16).unwrap(), None);
    }
}
