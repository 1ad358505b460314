//! Smith and Hermite normal forms over `k[x]`, and kernels of polynomial matrices.

use super::matrix::{Matrix, PolyMatrix};
use super::poly::XPoly;
use super::ring::Ring;
use crate::error::{Error, Result};

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_i | d_{i+1}`, each `d_i` monic or zero.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    pub v: PolyMatrix,
}

impl Smith {
    /// The nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<XPoly> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).filter(|e| !e.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn row_axpy(m: &mut PolyMatrix, target: usize, src: usize, q: &XPoly) {
    for j in 0..m.cols() {
        let s = q * &m[(src, j)];
        m[(target, j)] = &m[(target, j)] - &s;
    }
}

fn col_axpy(m: &mut PolyMatrix, target: usize, src: usize, q: &XPoly) {
    for i in 0..m.rows() {
        let s = q * &m[(i, src)];
        m[(i, target)] = &m[(i, target)] - &s;
    }
}

fn deg(p: &XPoly) -> usize {
    p.degree().expect("nonzero entry")
}

/// Smith normal form with smallest-degree pivoting (ties: lowest row, then lowest column).
pub fn smith_normal_form(m: &PolyMatrix) -> Smith {
    let f = m.field();
    let (rows, cols) = m.shape();
    let mut d = m.clone();
    let mut u = Matrix::identity(f, rows);
    let mut v = Matrix::identity(f, cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    let dg = deg(&d[(i, j)]);
                    if best.is_none_or(|(bd, _, _)| dg < bd) {
                        best = Some((dg, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = d[(i, t)].div_rem(&d[(t, t)]).expect("pivot nonzero");
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= r.is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = d[(t, j)].div_rem(&d[(t, t)]).expect("pivot nonzero");
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let piv = d[(t, t)].clone();
            let bad_row = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d[(i, j)].rem(&piv).expect("pivot nonzero").is_zero())
            });
            match bad_row {
                Some(i) => {
                    let minus_one = XPoly::constant(f.from_i64(-1));
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        let inv = d[(t, t)].leading().inv().expect("pivot nonzero");
        for j in 0..cols {
            d[(t, j)] = d[(t, j)].scale(&inv);
        }
        for j in 0..rows {
            u[(t, j)] = u[(t, j)].scale(&inv);
        }
    }
    finish(u, d, v)
}

fn finish(u: PolyMatrix, d: PolyMatrix, v: PolyMatrix) -> Smith {
    let n = d.rows().min(d.cols());
    for i in 1..n {
        let (a, b) = (&d[(i - 1, i - 1)], &d[(i, i)]);
        if !a.is_zero() {
            assert!(b.rem(a).expect("nonzero").is_zero(), "invariant factors must divide");
        } else {
            assert!(b.is_zero(), "zeros trail the invariant factors");
        }
    }
    Smith { u, d, v }
}

/// Column Hermite normal form of the `k[x]`-lattice spanned by the columns
/// of `m`, which must have full row rank. The result is square, upper
/// triangular with monic diagonal, and every entry right of a diagonal
/// entry has smaller degree than it.
pub fn hermite_normal_form(m: &PolyMatrix) -> Result<PolyMatrix> {
    let f = m.field();
    let n = m.rows();
    let mut active: Vec<Vec<XPoly>> = (0..m.cols()).map(|j| m.col(j)).collect();
    let mut finals: Vec<Option<Vec<XPoly>>> = vec![None; n];
    for r in (0..n).rev() {
        loop {
            let nz: Vec<usize> = (0..active.len()).filter(|&j| !active[j][r].is_zero()).collect();
            if nz.is_empty() {
                return Err(Error::Shape("lattice does not have full rank".into()));
            }
            let p = *nz.iter().min_by_key(|&&j| (deg(&active[j][r]), j)).expect("nonempty");
            if nz.len() == 1 {
                let mut col = active.remove(p);
                let inv = col[r].leading().inv().expect("nonzero");
                for e in col.iter_mut() {
                    *e = e.scale(&inv);
                }
                finals[r] = Some(col);
                break;
            }
            let pivot = active[p].clone();
            for &j in &nz {
                if j == p {
                    continue;
                }
                let (q, _) = active[j][r].div_rem(&pivot[r]).expect("pivot nonzero");
                for i in 0..n {
                    let s = &q * &pivot[i];
                    active[j][i] = &active[j][i] - &s;
                }
            }
        }
    }
    let cols: Vec<Vec<XPoly>> = finals.into_iter().map(|c| c.expect("filled")).collect();
    let mut h = Matrix::from_cols(f, n, &cols);
    for j in 0..n {
        for i in (0..j).rev() {
            let (q, _) = h[(i, j)].div_rem(&h[(i, i)]).expect("monic diagonal");
            if !q.is_zero() {
                col_axpy(&mut h, j, i, &q);
            }
        }
    }
    Ok(h)
}

/// A basis of the `k[x]`-module `{v : M v = 0}` as columns.
pub fn kernel_basis(m: &PolyMatrix) -> Vec<Vec<XPoly>> {
    let s = smith_normal_form(m);
    let r = s.rank();
    (r..m.cols()).map(|j| s.v.col(j)).collect()
}

/// `deg det` of a square nonsingular matrix: the `k`-dimension of its cokernel.
pub fn colength(m: &PolyMatrix) -> Result<usize> {
    let d = m.det()?;
    d.degree().ok_or(Error::SingularMap)
}

/// Whether `u` has constant nonzero determinant.
pub fn is_unimodular(u: &PolyMatrix) -> bool {
    u.det().is_ok_and(|d| d.degree() == Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::field::Field;
    use proptest::prelude::*;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    fn xp(f: Field, c: &[i64]) -> XPoly {
        XPoly::from_i64s(f, c)
    }

    fn check_smith(m: &PolyMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                } else if !s.d[(i, i)].is_zero() {
                    assert!(s.d[(i, i)].is_monic());
                }
            }
        }
        s
    }

    #[test]
    fn smith_examples() {
        let q = Field::Rationals;
        let diag = Matrix::from_rows(q, vec![vec![xp(q, &[0, 1]), xp(q, &[])], vec![xp(q, &[]), xp(q, &[0, 0, 1])]]).unwrap();
        assert_eq!(check_smith(&diag).d, diag);

        // [[x, 1], [0, x]] -> diag(1, x^2)
        let m = Matrix::from_rows(q, vec![vec![xp(q, &[0, 1]), xp(q, &[1])], vec![xp(q, &[]), xp(q, &[0, 1])]]).unwrap();
        let s = check_smith(&m);
        assert_eq!(s.d[(0, 0)], xp(q, &[1]));
        assert_eq!(s.d[(1, 1)], xp(q, &[0, 0, 1]));

        let z: PolyMatrix = Matrix::zeros(q, 2, 3);
        assert!(check_smith(&z).d.is_zero());
    }

    #[test]
    fn hermite_is_canonical() {
        let q = Field::Rationals;
        // lattice spanned by (x, 0), (1, x-1), (x^2, x) in k[x]^2
        let m = Matrix::from_rows(
            q,
            vec![
                vec![xp(q, &[0, 1]), xp(q, &[1]), xp(q, &[0, 0, 1])],
                vec![xp(q, &[]), xp(q, &[-1, 1]), xp(q, &[0, 1])],
            ],
        )
        .unwrap();
        let h = hermite_normal_form(&m).unwrap();
        assert!(h[(1, 0)].is_zero());
        assert!(h[(0, 0)].is_monic() && h[(1, 1)].is_monic());
        // a unimodular change of generators gives the same form
        let u = Matrix::from_rows(
            q,
            vec![
                vec![xp(q, &[1]), xp(q, &[0, 1]), xp(q, &[])],
                vec![xp(q, &[]), xp(q, &[1]), xp(q, &[])],
                vec![xp(q, &[2]), xp(q, &[3, 1]), xp(q, &[1])],
            ],
        )
        .unwrap();
        assert_eq!(hermite_normal_form(&(&m * &u)).unwrap(), h);
    }

    #[test]
    fn hermite_rejects_rank_deficient() {
        let q = Field::Rationals;
        let m = Matrix::from_rows(q, vec![vec![xp(q, &[0, 1])], vec![xp(q, &[1])]]).unwrap();
        assert!(hermite_normal_form(&m).is_err());
    }

    #[test]
    fn kernel_of_row() {
        let q = Field::Rationals;
        let m = Matrix::from_rows(q, vec![vec![xp(q, &[0, 1]), xp(q, &[-1, 0, 1])]]).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|e| e.is_zero()));
    }

    fn arb_matrix() -> impl Strategy<Value = PolyMatrix> {
        (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0i64..7, 0..3), r * c).prop_map(move |entries| {
                let f = f7();
                Matrix::from_fn(f, r, c, |i, j| xp(f, &entries[i * c + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn smith_invariants(m in arb_matrix()) {
            let s = check_smith(&m);
            if m.is_square() {
                let dm = m.det().unwrap();
                let dd = s.d.det().unwrap();
                prop_assert_eq!(dm.monic(), dd.monic());
            }
        }

        #[test]
        fn hermite_unchanged_by_unimodular_mixing(m in arb_matrix(), a in 0i64..7, b in 0i64..7) {
            prop_assume!(m.rows() <= m.cols());
            let Ok(h) = hermite_normal_form(&m) else { return Ok(()); };
            let f = f7();
            let mut u: PolyMatrix = Matrix::identity(f, m.cols());
            if m.cols() > 1 {
                u[(0, 1)] = xp(f, &[a, b]);
            }
            prop_assert_eq!(hermite_normal_form(&(&m * &u)).unwrap(), h);
        }
    }
}
