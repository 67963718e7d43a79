use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{hermite_normal_form, FpAbelianGroup, IntMatrix};

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | … | d_r`, followed by zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by elementary row and column operations.
///
/// The pivot at each stage is the entry of minimal nonzero absolute value in
/// the trailing submatrix, ties broken by lowest row and then lowest column,
/// so the transforms are reproducible.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_pivot(&a, t) else {
                return SmithForm { d: a, u, v };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &p);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &p);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce the divisibility chain.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { d: a, u, v }
}

fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            // Strict comparison keeps the first (lowest row, then column) minimum.
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// `Z^rows / M Z^cols`.
pub fn cokernel(m: &IntMatrix) -> FpAbelianGroup {
    let snf = smith_normal_form(m);
    let factors = snf.invariant_factors();
    let free = m.rows() - factors.len();
    FpAbelianGroup::new(free, factors.into_iter().filter(|d| !d.is_one()).collect())
}

/// A saturated `Z`-basis (as rows, Hermite-reduced) of `{x ∈ Z^cols : M x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let cols: Vec<usize> = (r..m.cols()).collect();
    let basis = snf.v.select(&(0..m.cols()).collect::<Vec<_>>(), &cols).transpose();
    if basis.rows() == 0 {
        return IntMatrix::zeros(0, m.cols());
    }
    hermite_normal_form(&basis)
}

/// Integer solutions of `M x = b`: a particular solution and a kernel basis,
/// or `None` when no integer solution exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<(Vec<BigInt>, IntMatrix)> {
    assert_eq!(b.len(), m.rows(), "right-hand side length");
    let snf = smith_normal_form(m);
    let ub = snf.u.apply(b).expect("shape");
    let factors = snf.invariant_factors();
    let r = factors.len();
    let mut z = vec![BigInt::zero(); m.cols()];
    for (i, d) in factors.iter().enumerate() {
        if !ub[i].is_multiple_of(d) {
            return None;
        }
        z[i] = &ub[i] / d;
    }
    if ub[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let x = snf.v.apply(&z).expect("shape");
    Some((x, kernel_basis(m)))
}
