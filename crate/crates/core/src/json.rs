//! JSON interchange.
//!
//! Coefficients are strings: `"n"` or `"n/d"` over `Q`, residues in `[0, p)`
//! over `F_p`. A polynomial in `x` is an ascending array of coefficients, a
//! polynomial in `t` over `k[x]` an ascending array of those, and a matrix an
//! array of rows.

use serde::{Deserialize, Serialize};

use crate::correspondence::{EffectiveDivisor, SpectralData};
use crate::error::{Error, Result};
use crate::higgs::{CyclicHiggsData, SLattice};
use crate::polyalg::{Field, Matrix, PolyMatrix, Scalar, XPoly, XTPoly};
use crate::quiver::{CyclicQuiver, Path, PathAlgebraElement};
use crate::reduction::FiberAlgebra;

pub type PolyJson = Vec<String>;
pub type XTPolyJson = Vec<PolyJson>;
pub type MatrixJson = Vec<Vec<PolyJson>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldJson {
    Prime { p: u64 },
    Rationals,
}

impl From<Field> for FieldJson {
    fn from(f: Field) -> Self {
        match f {
            Field::Rationals => FieldJson::Rationals,
            Field::Prime(p) => FieldJson::Prime { p },
        }
    }
}

impl TryFrom<FieldJson> for Field {
    type Error = Error;

    fn try_from(f: FieldJson) -> Result<Field> {
        match f {
            FieldJson::Rationals => Ok(Field::Rationals),
            FieldJson::Prime { p } => Field::prime(p),
        }
    }
}

pub fn scalar_to_json(s: &Scalar) -> String {
    s.to_string()
}

pub fn poly_to_json(f: &XPoly) -> PolyJson {
    f.coeffs().iter().map(scalar_to_json).collect()
}

pub fn poly_from_json(field: Field, v: &[String]) -> Result<XPoly> {
    Ok(XPoly::from_coeffs(field, v.iter().map(|s| field.parse(s)).collect::<Result<_>>()?))
}

pub fn xt_to_json(f: &XTPoly) -> XTPolyJson {
    f.coeffs().iter().map(poly_to_json).collect()
}

pub fn xt_from_json(field: Field, v: &[PolyJson]) -> Result<XTPoly> {
    Ok(XTPoly::from_coeffs(field, v.iter().map(|c| poly_from_json(field, c)).collect::<Result<_>>()?))
}

pub fn matrix_to_json(m: &PolyMatrix) -> MatrixJson {
    m.to_rows().iter().map(|row| row.iter().map(poly_to_json).collect()).collect()
}

/// `rows x cols` is checked against the declared shape when one is given.
pub fn matrix_from_json(field: Field, v: &MatrixJson, shape: Option<(usize, usize)>) -> Result<PolyMatrix> {
    let rows = v
        .iter()
        .map(|row| row.iter().map(|c| poly_from_json(field, c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let m = match shape {
        Some((r, 0)) if rows.is_empty() => Matrix::zeros(field, r, 0),
        Some((0, c)) => Matrix::zeros(field, 0, c),
        _ => Matrix::from_rows(field, rows)?,
    };
    if let Some(s) = shape {
        if m.shape() != s {
            return Err(Error::Shape(format!("expected a {}x{} matrix, got {}x{}", s.0, s.1, m.rows(), m.cols())));
        }
    }
    Ok(m)
}

fn parse<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

fn render<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HiggsJson {
    pub m: usize,
    pub field: FieldJson,
    pub dims: Vec<usize>,
    /// `phi[i]` is a `dims[i+1] x dims[i]` matrix.
    pub phi: Vec<MatrixJson>,
}

impl From<&CyclicHiggsData> for HiggsJson {
    fn from(h: &CyclicHiggsData) -> Self {
        HiggsJson { m: h.m(), field: h.field().into(), dims: h.dims().to_vec(), phi: h.phi().iter().map(matrix_to_json).collect() }
    }
}

impl TryFrom<&HiggsJson> for CyclicHiggsData {
    type Error = Error;

    fn try_from(j: &HiggsJson) -> Result<Self> {
        let field = Field::try_from(j.field)?;
        if j.m != j.dims.len() || j.m != j.phi.len() {
            return Err(Error::Shape(format!("m = {} but {} dims and {} maps", j.m, j.dims.len(), j.phi.len())));
        }
        let phi = (0..j.m)
            .map(|i| matrix_from_json(field, &j.phi[i], Some((j.dims[(i + 1) % j.m], j.dims[i]))))
            .collect::<Result<Vec<_>>>()?;
        CyclicHiggsData::new(field, j.dims.clone(), phi)
    }
}

pub fn higgs_to_json(h: &CyclicHiggsData) -> String {
    render(&HiggsJson::from(h))
}

pub fn higgs_from_json(s: &str) -> Result<CyclicHiggsData> {
    CyclicHiggsData::try_from(&parse::<HiggsJson>(s)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub rank: usize,
    #[serde(rename = "T")]
    pub t: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralDataJson {
    pub field: FieldJson,
    pub c: XTPolyJson,
    #[serde(rename = "L0")]
    pub l0: LatticeJson,
    /// Hermite matrices of the ideals in coordinates `1, t, …, t^{n-1}`.
    pub divisors: Vec<MatrixJson>,
}

impl From<&SpectralData> for SpectralDataJson {
    fn from(sd: &SpectralData) -> Self {
        SpectralDataJson {
            field: sd.c.base_field().into(),
            c: xt_to_json(&sd.c),
            l0: LatticeJson { rank: sd.l0.rank(), t: matrix_to_json(sd.l0.t_matrix()) },
            divisors: sd.divisors.iter().map(|d| matrix_to_json(d.lattice())).collect(),
        }
    }
}

impl TryFrom<&SpectralDataJson> for SpectralData {
    type Error = Error;

    fn try_from(j: &SpectralDataJson) -> Result<Self> {
        let field = Field::try_from(j.field)?;
        let c = xt_from_json(field, &j.c)?;
        let n = c.degree().ok_or_else(|| Error::Parse("the spectral curve is zero".into()))?;
        let l0 = SLattice::new(matrix_from_json(field, &j.l0.t, Some((j.l0.rank, j.l0.rank)))?)?;
        let divisors = j
            .divisors
            .iter()
            .map(|d| {
                let div = EffectiveDivisor::from_generators(&matrix_from_json(field, d, Some((n, n)))?)?;
                if div.is_t_stable(&c) {
                    Ok(div)
                } else {
                    Err(Error::Parse("a divisor lattice is not an ideal of S".into()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SpectralData { c, l0, divisors })
    }
}

pub fn spectral_data_to_json(sd: &SpectralData) -> String {
    render(&SpectralDataJson::from(sd))
}

pub fn spectral_data_from_json(s: &str) -> Result<SpectralData> {
    SpectralData::try_from(&parse::<SpectralDataJson>(s)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathTermJson {
    pub source: usize,
    pub target: usize,
    pub length: usize,
    pub coeff: PolyJson,
}

pub fn path_element_to_records(a: &PathAlgebraElement) -> Vec<PathTermJson> {
    a.terms()
        .iter()
        .map(|(p, c)| PathTermJson { source: p.source, target: p.target, length: p.length, coeff: poly_to_json(c) })
        .collect()
}

pub fn path_element_from_records(quiver: CyclicQuiver, field: Field, records: &[PathTermJson]) -> Result<PathAlgebraElement> {
    let mut out = PathAlgebraElement::zero(quiver, field);
    for r in records {
        let path: Path = quiver.path_between(r.source, r.target, r.length)?;
        out.add_term(path, poly_from_json(field, &r.coeff)?);
    }
    Ok(out)
}

pub fn path_element_to_json(a: &PathAlgebraElement) -> String {
    render(&path_element_to_records(a))
}

pub fn path_element_from_json(quiver: CyclicQuiver, field: Field, s: &str) -> Result<PathAlgebraElement> {
    path_element_from_records(quiver, field, &parse::<Vec<PathTermJson>>(s)?)
}

/// `table[a][b]` is the coefficient vector of `b_a b_b` on the ordered basis.
pub fn fiber_table(f: &FiberAlgebra) -> Vec<Vec<Vec<String>>> {
    f.algebra
        .table()
        .iter()
        .map(|row| row.iter().map(|v| v.iter().map(scalar_to_json).collect()).collect())
        .collect()
}

pub fn fiber_table_to_json(f: &FiberAlgebra) -> String {
    render(&fiber_table(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::forward_spectral_data;
    use crate::higgs::random_cyclic_data;
    use crate::reduction::fiber_at;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn field_json_shapes() {
        assert_eq!(serde_json::to_string(&FieldJson::from(Field::Rationals)).unwrap(), r#"{"kind":"rationals"}"#);
        assert_eq!(serde_json::to_string(&FieldJson::from(Field::prime(7).unwrap())).unwrap(), r#"{"kind":"prime","p":7}"#);
        assert!(Field::try_from(FieldJson::Prime { p: 8 }).is_err());
    }

    #[test]
    fn coefficient_strings() {
        let q = Field::Rationals;
        let f = XPoly::from_coeffs(q, vec![q.from_ratio(-1, 2).unwrap(), q.zero(), q.from_i64(3)]);
        assert_eq!(poly_to_json(&f), vec!["-1/2", "0", "3"]);
        assert_eq!(poly_from_json(q, &poly_to_json(&f)).unwrap(), f);
        let f7 = Field::prime(7).unwrap();
        assert_eq!(poly_to_json(&XPoly::from_i64s(f7, &[-1, 1])), vec!["6", "1"]);
        assert!(poly_from_json(q, &["x".to_string()]).is_err());
    }

    #[test]
    fn higgs_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for field in [Field::Rationals, Field::default_prime()] {
            let h = random_cyclic_data(field, &[2, 1, 3], 2, &mut rng).unwrap();
            let s = higgs_to_json(&h);
            assert_eq!(higgs_from_json(&s).unwrap(), h);
        }
    }

    #[test]
    fn higgs_schema_is_literal() {
        let s = r#"{"m":2,"field":{"kind":"rationals"},"dims":[1,1],"phi":[[[["0","1"]]],[[["-1","1"]]]]}"#;
        let h = higgs_from_json(s).unwrap();
        assert_eq!(h.phi()[1][(0, 0)], XPoly::from_i64s(Field::Rationals, &[-1, 1]));
        let bad_shape = r#"{"m":2,"field":{"kind":"rationals"},"dims":[2,1],"phi":[[[["0","1"]]],[[["-1","1"]]]]}"#;
        assert!(matches!(higgs_from_json(bad_shape), Err(Error::Shape(_))));
        let Err(Error::Parse(msg)) = higgs_from_json(r#"{"m":2,"#) else { panic!("expected a parse error") };
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn spectral_data_round_trip() {
        let s = r#"{"m":2,"field":{"kind":"rationals"},"dims":[1,1],"phi":[[[["0","1"]]],[[["-1","1"]]]]}"#;
        let sd = forward_spectral_data(&higgs_from_json(s).unwrap()).unwrap();
        let text = spectral_data_to_json(&sd);
        let back = spectral_data_from_json(&text).unwrap();
        assert_eq!(back, sd);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["L0"]["rank"], 1);
        assert_eq!(v["c"], serde_json::json!([["0", "1", "-1"], ["1"]]));
    }

    #[test]
    fn path_records_round_trip() {
        let f = Field::prime(7).unwrap();
        let quiver = CyclicQuiver::new(3).unwrap();
        let mut a = PathAlgebraElement::zero(quiver, f);
        a.add_term(quiver.path(1, 4), XPoly::from_i64s(f, &[1, 2]));
        a.add_term(quiver.idempotent(0), XPoly::from_i64s(f, &[3]));
        let s = path_element_to_json(&a);
        assert!(s.contains("\"length\": 4"));
        assert_eq!(path_element_from_json(quiver, f, &s).unwrap(), a);
    }

    #[test]
    fn fiber_table_shape() {
        let f = Field::prime(7).unwrap();
        let table = fiber_table(&fiber_at(2, &f.zero(), &f.from_i64(3)));
        assert_eq!((table.len(), table[0].len(), table[0][0].len()), (4, 4, 4));
        // b(0,1) b(1,0) = t e0
        assert_eq!(table[1][2], vec!["3", "0", "0", "0"]);
    }
}
