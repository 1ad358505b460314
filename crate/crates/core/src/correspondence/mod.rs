//! Spectral data `(c, L_0, D_0, …, D_{m-1})` for cyclic data of dimension
//! `(p, …, p)` over a smooth irreducible spectral curve, and the way back.
//!
//! On the chart, `L_i` is a `k[x]`-lattice with `t` acting by `T_i = Φ_i`, and
//! `D_i = Ann_S(coker φ_i)` is an ideal of `S = k[x][t]/(c)`. The divisors
//! satisfy `Π I_{D_i} = (t)`.

pub mod divisor;
pub mod reverse;
pub mod smooth;

pub use divisor::{
    companion, divisor_of_function, divisor_of_map, multiplication_matrix, structure_lattice, sum_all, sum_divisors,
    EffectiveDivisor,
};
pub use reverse::{reverse_construct, round_trip, RoundTripReport, DEFAULT_INTERTWINER_DEGREE};
pub use smooth::{
    invertibility_certificate, irreducibility, smoothness_certificate, Irreducibility, SmoothCertificate, SmoothWitness,
    Verdict,
};

use crate::error::{Error, Result};
use crate::higgs::{common_component_check, to_spectral_module, CyclicHiggsData, SLattice};
use crate::polyalg::XTPoly;

pub use crate::higgs::SLattice as SpectralLattice;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    pub c: XTPoly,
    pub l0: SLattice,
    pub divisors: Vec<EffectiveDivisor>,
}

impl SpectralData {
    pub fn m(&self) -> usize {
        self.divisors.len()
    }
}

/// Reject curves outside the smooth irreducible regime with a diagnostic.
pub fn require_supported_curve(c: &XTPoly) -> Result<()> {
    if !smoothness_certificate(c)?.is_smooth() {
        return Err(Error::Unsupported("the spectral curve is singular".into()));
    }
    match irreducibility(c)? {
        Irreducibility::Irreducible => Ok(()),
        Irreducibility::Reducible(_) => Err(Error::Unsupported("the spectral curve is reducible".into())),
        Irreducibility::Undetermined => Err(Error::Unsupported("irreducibility of the spectral curve is undetermined".into())),
    }
}

/// `(c, L_0, D_i = div(φ_i))` for dims `(p, …, p)`.
pub fn forward_spectral_data(h: &CyclicHiggsData) -> Result<SpectralData> {
    if !h.has_equal_dims() {
        return Err(Error::Unsupported(format!("dimension vector {:?} is not constant", h.dims())));
    }
    let report = common_component_check(h);
    if !report.strict || report.q.iter().any(|&q| q != 0) {
        return Err(Error::Unsupported(format!("spectral curves do not coincide (q = {:?}, strict = {})", report.q, report.strict)));
    }
    let c = report.common.expect("strict implies a common curve");
    require_supported_curve(&c)?;
    let s = to_spectral_module(h);
    for f in &s.modules {
        if f.t_matrix().char_poly()? != c {
            return Err(Error::Unsupported("a spectral module is not invertible on the curve".into()));
        }
    }
    let m = h.m();
    let divisors = (0..m)
        .map(|i| divisor_of_map(&s.psi[i], &s.modules[i], &s.modules[(i + 1) % m]))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralData { c, l0: s.modules[0].clone(), divisors })
}

/// `Σ D_i = div(t)` as ideal lattices.
pub fn check_divisor_relation(divisors: &[EffectiveDivisor], c: &XTPoly) -> Result<bool> {
    let total = sum_all(divisors, c)?;
    let div_t = divisor_of_function(&XTPoly::t(c.base_field()), c)?;
    Ok(total == div_t)
}
