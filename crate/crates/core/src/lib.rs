//! Exact computational algebra for cyclic Higgs bundles on an affine chart.
//!
//! The crate works over `k = Q` or `k = F_p` with `R = k[x]` the coordinate
//! ring of the chart and `t` the tautological coordinate on the total space
//! `Y`. Modules:
//!
//! * [`polyalg`]: fields, polynomials, matrices, Smith/Hermite forms, resultants.
//! * [`quiver`]: the cyclic quiver, its path algebra `A(m)`, the center.
//! * [`reduction`]: the rank `m^2` algebra `Â(m)` over `R[t]` and its fibers.
//! * [`higgs`]: cyclic Higgs data, spectral curves, spectral quiver modules.
//! * [`correspondence`]: line bundle plus divisor spectral data for dims `(p,…,p)`.
//! * [`clifford`]: the `m = 2` even Clifford algebra identification.
//! * [`json`]: the JSON interchange formats.

pub mod algebra;
pub mod clifford;
pub mod correspondence;
pub mod error;
pub mod higgs;
pub mod json;
pub mod polyalg;
pub mod quiver;
pub mod reduction;

pub use error::{Error, Result};
pub use polyalg::{Field, Matrix, PolyMatrix, Scalar, XPoly, XTPoly};
