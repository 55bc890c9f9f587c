//! Exact polynomial algebra over Q: sparse polynomials, monomial orders,
//! Gröbner and Mora standard bases, truncated series and divisions.

mod dimension;
pub mod linalg;
mod monomial;
mod order;
mod parse;
mod poly;
mod series;
mod stdbasis;
mod unipoly;
mod var;
mod weierstrass;

pub use dimension::monomial_dim;
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use parse::parse_poly;
pub use poly::{poly_arith, ArithOp, Poly};
pub use series::{series_ops, series_ord, OrdResult, SeriesOp, TruncSeries};
pub use stdbasis::{
    groebner_basis, groebner_basis_with, initial_ideal, initial_ideal_with, leading_monomials, mora_normal_form,
    mora_normal_form_with, mora_standard_basis, mora_standard_basis_with, normal_form, s_polynomial, StdOptions,
};
pub use unipoly::{div_monic_t, TPoly};
pub use var::{VarId, VarSet};
pub use weierstrass::{regularity_order, regularize, weierstrass_divide, Regularization, Truncation, WeierstrassDivision};

pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub(crate) use poly::fmt_rational;

/// Renders a rational as `p/q`, or `p` when the denominator is 1.
pub fn rational_to_string(c: &Rational) -> String {
    fmt_rational(c)
}
