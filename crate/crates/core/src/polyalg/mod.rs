//! Exact arithmetic kernel: fields, polynomials, matrices and normal forms.

pub mod bivariate;
pub mod field;
pub mod linalg;
pub mod matrix;
pub mod normal_form;
pub mod poly;
pub mod ring;
pub mod roots;

pub use bivariate::{gcd_t, resultant, squarefree_part_t};
pub use field::{Field, Scalar};
pub use matrix::{Matrix, PolyMatrix};
pub use normal_form::{hermite_normal_form, kernel_basis, smith_normal_form, Smith};
pub use poly::{Poly, Var, XPoly, XTPoly};
pub use ring::{ExactDiv, Ring};

/// Monic gcd of two polynomials in the same variable.
pub fn poly_gcd(f: &XPoly, g: &XPoly) -> crate::Result<XPoly> {
    f.gcd(g)
}

/// `det(t*I - M)` for a square matrix over `k[x]`.
pub fn char_poly(m: &PolyMatrix) -> crate::Result<XTPoly> {
    m.char_poly()
}
