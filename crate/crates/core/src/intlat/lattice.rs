use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::IntMatrix;
use crate::error::{Error, Result};
use crate::exact::{lcm_denominators, rat_to_string, ser_bigint};

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
///
/// The result is in row echelon form with positive pivots, every entry
/// above a pivot reduced into `[0, pivot)`, and zero rows removed. It is a
/// canonical basis: two generator sets span the same lattice iff their forms
/// coincide.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let cols = m.cols();
    let mut rows: Vec<Vec<BigInt>> = m.row_vecs();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();

    for c in 0..cols {
        // Euclid on column c among the remaining rows.
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by(|&&a, &&b| rows[a][c].abs().cmp(&rows[b][c].abs()).then(a.cmp(&b)))
                .unwrap();
            for &i in &nonzero {
                if i == p {
                    continue;
                }
                let q = &rows[i][c] / &rows[p][c];
                let (src, dst) = (rows[p].clone(), &mut rows[i]);
                for (d, s) in dst.iter_mut().zip(&src) {
                    *d -= &q * s;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][c].is_zero()) {
            let mut r = rows.swap_remove(i);
            if r[c].is_negative() {
                r.iter_mut().for_each(|x| *x = -std::mem::take(x));
            }
            basis.push(r);
            pivots.push(c);
        }
    }
    debug_assert!(rows.iter().all(|r| r.iter().all(Zero::is_zero)));

    // Reduce above each pivot.
    for k in 0..basis.len() {
        let c = pivots[k];
        let p = basis[k][c].clone();
        for i in 0..k {
            let q = basis[i][c].div_floor(&p);
            if q.is_zero() {
                continue;
            }
            let src = basis[k].clone();
            for (d, s) in basis[i].iter_mut().zip(&src) {
                *d -= &q * s;
            }
        }
    }
    if basis.is_empty() {
        return IntMatrix::zeros(0, cols);
    }
    IntMatrix::from_rows(&basis).expect("rectangular")
}

/// A finitely generated subgroup of `Q^n`, stored canonically as
/// `(1/denominator) · H` with `H` an integer Hermite normal form and the
/// denominator as small as possible.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RationalLattice {
    ambient_dim: usize,
    #[serde(serialize_with = "ser_bigint")]
    denominator: BigInt,
    hnf_basis: IntMatrix,
}

impl RationalLattice {
    pub fn canonicalize(gens: &[Vec<BigRational>], ambient_dim: usize) -> Result<Self> {
        for g in gens {
            if g.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: g.len() });
            }
        }
        let l = lcm_denominators(gens.iter().flatten());
        let scaled: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect())
            .collect();
        let m = if scaled.is_empty() {
            IntMatrix::zeros(0, ambient_dim)
        } else {
            IntMatrix::from_rows(&scaled)?
        };
        Ok(Self::from_integer_parts(hermite_normal_form(&m), l, ambient_dim))
    }

    pub fn from_integer_rows(gens: &IntMatrix) -> Self {
        Self::from_integer_parts(hermite_normal_form(gens), BigInt::one(), gens.cols())
    }

    fn from_integer_parts(h: IntMatrix, l: BigInt, ambient_dim: usize) -> Self {
        let g = (0..h.rows())
            .flat_map(|i| h.row(i).to_vec())
            .fold(l.clone(), |acc, x| acc.gcd(&x));
        let (h, l) = if g.is_one() {
            (h, l)
        } else {
            let data = (0..h.rows()).flat_map(|i| h.row(i).to_vec()).map(|x| x / &g).collect();
            (IntMatrix::from_flat(h.rows(), h.cols(), data).unwrap(), l / &g)
        };
        RationalLattice { ambient_dim, denominator: l, hnf_basis: h }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.hnf_basis.rows()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn hnf_basis(&self) -> &IntMatrix {
        &self.hnf_basis
    }

    /// The canonical basis as rational vectors.
    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        (0..self.hnf_basis.rows())
            .map(|i| {
                self.hnf_basis
                    .row(i)
                    .iter()
                    .map(|x| BigRational::new(x.clone(), self.denominator.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn equals(&self, other: &RationalLattice) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        Ok(self == other)
    }

    pub fn sum(&self, other: &RationalLattice) -> Result<RationalLattice> {
        let mut gens = self.basis();
        gens.extend(other.basis());
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        RationalLattice::canonicalize(&gens, self.ambient_dim)
    }

    pub fn contains(&self, v: &[BigRational]) -> Result<bool> {
        let mut gens = self.basis();
        gens.push(v.to_vec());
        Ok(RationalLattice::canonicalize(&gens, self.ambient_dim)? == *self)
    }

    pub fn contains_integer(&self, v: &[BigInt]) -> Result<bool> {
        let v: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        self.contains(&v)
    }

    /// Image under `x ↦ M x` (generators are treated as column vectors).
    pub fn image(&self, m: &IntMatrix) -> Result<RationalLattice> {
        if m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: m.cols() });
        }
        let gens: Vec<Vec<BigRational>> = self
            .basis()
            .iter()
            .map(|g| {
                (0..m.rows())
                    .map(|i| {
                        m.row(i)
                            .iter()
                            .zip(g)
                            .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
                            .sum()
                    })
                    .collect()
            })
            .collect();
        RationalLattice::canonicalize(&gens, m.rows())
    }
}

pub fn lattice_equal(a: &RationalLattice, b: &RationalLattice) -> Result<bool> {
    a.equals(b)
}

impl fmt::Debug for RationalLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis()
            .iter()
            .map(|r| format!("({})", r.iter().map(rat_to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}
