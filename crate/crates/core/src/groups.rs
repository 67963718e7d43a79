//! Arithmetic in `UT(4,Z)` and the group-theoretic facts behind the
//! crossed-product description of `B_θ`.
//!
//! Elements are stored by their six off-diagonal entries in `i64`. All
//! arithmetic is checked; overflow panics rather than wrapping.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::intlat::{cokernel, FpAbelianGroup, IntMatrix, RationalLattice};

/// A unipotent upper triangular 4×4 integer matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct UT4Element {
    pub a12: i64,
    pub a13: i64,
    pub a14: i64,
    pub a23: i64,
    pub a24: i64,
    pub a34: i64,
}

fn ck_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("UT(4,Z) entry overflow")
}

fn ck_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("UT(4,Z) entry overflow")
}

fn ck_neg(a: i64) -> i64 {
    a.checked_neg().expect("UT(4,Z) entry overflow")
}

impl UT4Element {
    pub const IDENTITY: UT4Element =
        UT4Element { a12: 0, a13: 0, a14: 0, a23: 0, a24: 0, a34: 0 };

    /// Entries in the order `[a12, a13, a14, a23, a24, a34]`.
    pub fn new(e: [i64; 6]) -> Self {
        UT4Element { a12: e[0], a13: e[1], a14: e[2], a23: e[3], a24: e[4], a34: e[5] }
    }

    pub fn entries(&self) -> [i64; 6] {
        [self.a12, self.a13, self.a14, self.a23, self.a24, self.a34]
    }

    /// `1 + t·e_ij` for `1 ≤ i < j ≤ 4`.
    pub fn unit(i: usize, j: usize, t: i64) -> Self {
        let mut e = [0i64; 6];
        let idx = match (i, j) {
            (1, 2) => 0,
            (1, 3) => 1,
            (1, 4) => 2,
            (2, 3) => 3,
            (2, 4) => 4,
            (3, 4) => 5,
            _ => panic!("no matrix unit e_{i}{j} above the diagonal"),
        };
        e[idx] = t;
        Self::new(e)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn inv(&self) -> Self {
        let a = self;
        let b12 = ck_neg(a.a12);
        let b23 = ck_neg(a.a23);
        let b34 = ck_neg(a.a34);
        let b13 = ck_add(ck_neg(a.a13), ck_mul(a.a12, a.a23));
        let b24 = ck_add(ck_neg(a.a24), ck_mul(a.a23, a.a34));
        let b14 = ck_add(
            ck_add(ck_add(ck_neg(a.a14), ck_mul(a.a12, a.a24)), ck_mul(a.a13, a.a34)),
            ck_neg(ck_mul(ck_mul(a.a12, a.a23), a.a34)),
        );
        UT4Element { a12: b12, a13: b13, a14: b14, a23: b23, a24: b24, a34: b34 }
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, b: &Self) -> Self {
        *self * *b * self.inv() * b.inv()
    }

    /// Central iff only the corner entry may be nonzero.
    pub fn is_central(&self) -> bool {
        self.a12 == 0 && self.a13 == 0 && self.a23 == 0 && self.a24 == 0 && self.a34 == 0
    }

    /// The full matrix, row-major.
    pub fn to_matrix(&self) -> [[i64; 4]; 4] {
        [
            [1, self.a12, self.a13, self.a14],
            [0, 1, self.a23, self.a24],
            [0, 0, 1, self.a34],
            [0, 0, 0, 1],
        ]
    }

    /// Inverse of [`to_matrix`](Self::to_matrix); `None` if not unipotent upper triangular.
    pub fn from_matrix(m: &[[i64; 4]; 4]) -> Option<Self> {
        for (i, row) in m.iter().enumerate() {
            if row[i] != 1 || row[..i].iter().any(|&x| x != 0) {
                return None;
            }
        }
        Some(Self::new([m[0][1], m[0][2], m[0][3], m[1][2], m[1][3], m[2][3]]))
    }

    /// Image in `H_4 / Z(H_4) = Z^4` in the basis
    /// `1+e12, 1+e13, 1+e24, 1+e34`; `None` outside `H_4` (`a23 ≠ 0`).
    pub fn heisenberg_coords(&self) -> Option<[i64; 4]> {
        (self.a23 == 0).then_some([self.a12, self.a13, self.a24, self.a34])
    }
}

impl Mul for UT4Element {
    type Output = UT4Element;

    fn mul(self, y: UT4Element) -> UT4Element {
        let x = self;
        UT4Element {
            a12: ck_add(x.a12, y.a12),
            a13: ck_add(ck_add(x.a13, ck_mul(x.a12, y.a23)), y.a13),
            a14: ck_add(
                ck_add(ck_add(x.a14, ck_mul(x.a12, y.a24)), ck_mul(x.a13, y.a34)),
                y.a14,
            ),
            a23: ck_add(x.a23, y.a23),
            a24: ck_add(ck_add(x.a24, ck_mul(x.a23, y.a34)), y.a24),
            a34: ck_add(x.a34, y.a34),
        }
    }
}

impl Serialize for UT4Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

impl fmt::Display for UT4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["e12", "e13", "e14", "e23", "e24", "e34"];
        write!(f, "1")?;
        for (n, v) in names.iter().zip(self.entries()) {
            match v {
                0 => {}
                1 => write!(f, " + {n}")?,
                -1 => write!(f, " - {n}")?,
                v if v < 0 => write!(f, " - {}{n}", -v)?,
                v => write!(f, " + {v}{n}")?,
            }
        }
        Ok(())
    }
}

/// A coset of the center, represented by its member with `a14 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CosetRep(UT4Element);

impl CosetRep {
    pub fn of(x: &UT4Element) -> Self {
        CosetRep(UT4Element { a14: 0, ..*x })
    }

    pub fn element(&self) -> &UT4Element {
        &self.0
    }
}

fn conjugator() -> UT4Element {
    UT4Element::unit(2, 3, 1)
}

/// `β(x) = (1+e23) x (1+e23)⁻¹`.
pub fn beta_apply(x: &UT4Element) -> UT4Element {
    let g = conjugator();
    g * *x * g.inv()
}

/// `β⁻¹(x) = (1+e23)⁻¹ x (1+e23)`.
pub fn beta_inv_apply(x: &UT4Element) -> UT4Element {
    let g = conjugator();
    g.inv() * *x * g
}

const HEISENBERG_BASIS: [(usize, usize); 4] = [(1, 2), (1, 3), (2, 4), (3, 4)];

fn induced_matrix(f: impl Fn(&UT4Element) -> UT4Element) -> IntMatrix {
    let mut m = IntMatrix::zeros(4, 4);
    for (j, &(a, b)) in HEISENBERG_BASIS.iter().enumerate() {
        let img = f(&UT4Element::unit(a, b, 1))
            .heisenberg_coords()
            .expect("beta preserves H_4");
        for (i, v) in img.iter().enumerate() {
            m[(i, j)] = BigInt::from(*v);
        }
    }
    m
}

/// Action of `β` on `H_4/Z(H_4) = Z^4`; column `j` is the image of basis vector `j`.
pub fn beta_matrix() -> IntMatrix {
    induced_matrix(beta_apply)
}

pub fn beta_inv_matrix() -> IntMatrix {
    induced_matrix(beta_inv_apply)
}

/// The two β-invariant rank-2 sublattices of `Z^4`, with the checks made on them.
#[derive(Debug, Clone, Serialize)]
pub struct XyReport {
    pub x_tilde: RationalLattice,
    pub y_tilde: RationalLattice,
    pub beta_fixes_x: bool,
    pub beta_inv_fixes_x: bool,
    pub beta_fixes_y: bool,
    pub beta_inv_fixes_y: bool,
    pub intersection_rank: usize,
    #[serde(serialize_with = "crate::exact::ser_bigint")]
    pub generator_det: BigInt,
}

impl XyReport {
    pub fn all_invariant(&self) -> bool {
        self.beta_fixes_x && self.beta_inv_fixes_x && self.beta_fixes_y && self.beta_inv_fixes_y
    }
}

fn xy_generators() -> IntMatrix {
    IntMatrix::from_i64(&[&[0, -1, 1, 0], &[1, 0, 0, 1], &[0, -1, -1, 0], &[1, 0, 0, -1]])
}

pub fn xy_sublattices() -> XyReport {
    let g = xy_generators();
    let x = RationalLattice::from_integer_rows(&g.select(&[0, 1], &[0, 1, 2, 3]));
    let y = RationalLattice::from_integer_rows(&g.select(&[2, 3], &[0, 1, 2, 3]));
    let (b, bi) = (beta_matrix(), beta_inv_matrix());
    let fixes = |l: &RationalLattice, m: &IntMatrix| l.image(m).and_then(|i| i.equals(l)).unwrap_or(false);
    let both = x.sum(&y).expect("same ambient dimension");
    XyReport {
        beta_fixes_x: fixes(&x, &b),
        beta_inv_fixes_x: fixes(&x, &bi),
        beta_fixes_y: fixes(&y, &b),
        beta_inv_fixes_y: fixes(&y, &bi),
        intersection_rank: x.rank() + y.rank() - both.rank(),
        generator_det: g.det().expect("square"),
        x_tilde: x,
        y_tilde: y,
    }
}

/// `Z^4 / <X̃, Ỹ>`.
pub fn quotient_by_xy() -> FpAbelianGroup {
    cokernel(&xy_generators().transpose())
}

/// Checks `π(e1) = π(e4) ≠ π(e2) = π(e3)` and `2π(e_i) = 0` in the quotient.
pub fn quotient_relations_hold() -> bool {
    let l = RationalLattice::from_integer_rows(&xy_generators());
    let has = |v: [i64; 4]| {
        let v: Vec<BigInt> = v.iter().map(|&t| BigInt::from(t)).collect();
        l.contains_integer(&v).expect("dimension 4")
    };
    has([1, 0, 0, -1])
        && has([0, 1, -1, 0])
        && !has([1, -1, 0, 0])
        && (0..4).all(|i| {
            let mut v = [0; 4];
            v[i] = 2;
            has(v)
        })
        && !has([1, 0, 0, 0])
        && !has([0, 1, 0, 0])
}

/// Exponent `a` of the cocycle value `e^{2πiaθ}` at `(xZ, yZ)`.
pub fn cocycle_omega(x: &UT4Element, y: &UT4Element) -> i64 {
    let cx = *CosetRep::of(x).element();
    let cy = *CosetRep::of(y).element();
    let cxy = *CosetRep::of(&(cx * cy)).element();
    let p = cx * cy * cxy.inv();
    assert!(p.is_central(), "section product {p} is not central");
    p.a14
}

/// All coset representatives with off-corner entries drawn from `values`.
pub fn coset_box(values: &[i64]) -> Vec<UT4Element> {
    let mut out = Vec::new();
    for &a12 in values {
        for &a13 in values {
            for &a23 in values {
                for &a24 in values {
                    for &a34 in values {
                        out.push(UT4Element { a12, a13, a14: 0, a23, a24, a34 });
                    }
                }
            }
        }
    }
    out
}

/// Checks `a(x,y) + a(xy,z) = a(y,z) + a(x,yz)` for every triple from the box.
/// Returns `(triples checked, failures)`.
pub fn cocycle_identity_sweep(values: &[i64]) -> (u64, u64) {
    let elems = coset_box(values);
    let failures: u64 = elems
        .par_iter()
        .map(|x| {
            let mut bad = 0u64;
            for y in &elems {
                let xy = *x * *y;
                let axy = cocycle_omega(x, y);
                for z in &elems {
                    if axy + cocycle_omega(&xy, z) != cocycle_omega(y, z) + cocycle_omega(x, &(*y * *z)) {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum();
    let n = elems.len() as u64;
    (n * n * n, failures)
}

/// The commutation relation `[1+e_ij, 1+e_kl] = 1 + δ_jk e_il − δ_il e_kj`,
/// checked over all ordered pairs of matrix units.
pub fn commutation_relations_hold() -> bool {
    let units = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    units.iter().all(|&(i, j)| {
        units.iter().all(|&(k, l)| {
            let c = UT4Element::unit(i, j, 1).commutator(&UT4Element::unit(k, l, 1));
            let mut expected = UT4Element::IDENTITY;
            if j == k {
                expected = expected * UT4Element::unit(i, l, 1);
            }
            if i == l {
                expected = expected * UT4Element::unit(k, j, -1);
            }
            c == expected
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn matmul(a: &[[i64; 4]; 4], b: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
        let mut c = [[0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        c
    }

    fn elt() -> impl Strategy<Value = UT4Element> {
        prop::array::uniform6(-5i64..=5).prop_map(UT4Element::new)
    }

    #[test]
    fn commutators() {
        let e12 = UT4Element::unit(1, 2, 1);
        let e24 = UT4Element::unit(2, 4, 1);
        let e34 = UT4Element::unit(3, 4, 1);
        assert_eq!(e12.commutator(&e24), UT4Element::unit(1, 4, 1));
        assert!(e12.commutator(&e34).is_identity());
        assert!(commutation_relations_hold());
    }

    #[test]
    fn center() {
        assert!(UT4Element::unit(1, 4, 3).is_central());
        assert!(!UT4Element::unit(2, 3, 1).is_central());
        assert!(UT4Element::IDENTITY.is_central());
        let gens: Vec<_> = [(1, 2), (2, 3), (3, 4), (1, 3)].iter().map(|&(i, j)| UT4Element::unit(i, j, 1)).collect();
        for x in coset_box(&[-1, 0, 1]) {
            for c in [-2, 0, 2] {
                let x = UT4Element { a14: c, ..x };
                let commutes = gens.iter().all(|g| x * *g == *g * x);
                assert_eq!(commutes, x.is_central(), "{x}");
            }
        }
    }

    #[test]
    fn beta_on_generators() {
        assert_eq!(beta_apply(&UT4Element::unit(1, 2, 1)), UT4Element::new([1, -1, 0, 0, 0, 0]));
        assert_eq!(beta_apply(&UT4Element::unit(3, 4, 1)), UT4Element::new([0, 0, 0, 0, 1, 1]));
        assert_eq!(beta_apply(&UT4Element::unit(1, 3, 1)), UT4Element::unit(1, 3, 1));
        assert_eq!(beta_apply(&UT4Element::unit(2, 4, 1)), UT4Element::unit(2, 4, 1));
        let expected = IntMatrix::from_i64(&[&[1, 0, 0, 0], &[-1, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
        assert_eq!(beta_matrix(), expected);
        assert_eq!(beta_matrix().try_mul(&beta_inv_matrix()).unwrap(), IntMatrix::identity(4));
    }

    #[test]
    fn beta_matrix_matches_group_action() {
        let b = beta_matrix();
        let vals = [-2, -1, 0, 1, 2];
        for &a12 in &vals {
            for &a13 in &vals {
                for &a24 in &vals {
                    for &a34 in &vals {
                        for &a14 in &[-2, 0, 2] {
                            let x = UT4Element { a12, a13, a14, a23: 0, a24, a34 };
                            let v: Vec<BigInt> = x.heisenberg_coords().unwrap().iter().map(|&t| t.into()).collect();
                            let img: Vec<BigInt> = beta_apply(&x).heisenberg_coords().unwrap().iter().map(|&t| t.into()).collect();
                            assert_eq!(b.apply(&v).unwrap(), img);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn xy_facts() {
        let r = xy_sublattices();
        assert!(r.all_invariant());
        assert_eq!(r.intersection_rank, 0);
        assert_eq!(r.generator_det.magnitude(), &4u32.into());
        let q = quotient_by_xy();
        assert_eq!(q.free_rank(), 0);
        assert_eq!(q.invariant_factors(), &[BigInt::from(2), BigInt::from(2)]);
        assert!(quotient_relations_hold());
    }

    #[test]
    fn cocycle_examples() {
        let e12 = UT4Element::unit(1, 2, 1);
        let e24 = UT4Element::unit(2, 4, 1);
        assert_eq!(cocycle_omega(&UT4Element::IDENTITY, &e24), 0);
        assert_eq!(cocycle_omega(&e12, &e24), 1);
        assert_eq!(cocycle_omega(&e24, &e12), 0);
        assert_eq!(cocycle_omega(&e12, &e24) - cocycle_omega(&e24, &e12), e12.commutator(&e24).a14);
    }

    #[test]
    fn cocycle_identity_small_box() {
        let (n, bad) = cocycle_identity_sweep(&[0, 1]);
        assert_eq!(n, 32 * 32 * 32);
        assert_eq!(bad, 0);
    }

    #[test]
    fn serializes_as_tuple() {
        let x = UT4Element::new([1, 2, 3, 4, 5, 6]);
        assert_eq!(serde_json::to_string(&x).unwrap(), "[1,2,3,4,5,6]");
    }

    proptest! {
        #[test]
        fn matches_matrix_product(a in elt(), b in elt()) {
            let p = matmul(&a.to_matrix(), &b.to_matrix());
            prop_assert_eq!(UT4Element::from_matrix(&p), Some(a * b));
        }

        #[test]
        fn inverse_and_associativity(a in elt(), b in elt(), c in elt()) {
            prop_assert!((a * a.inv()).is_identity());
            prop_assert!((a.inv() * a).is_identity());
            prop_assert_eq!((a * b) * c, a * (b * c));
        }

        #[test]
        fn beta_fixes_center(t in -100i64..100) {
            let z = UT4Element::unit(1, 4, t);
            prop_assert_eq!(beta_apply(&z), z);
        }

        #[test]
        fn cocycle_antisymmetry_is_commutator(a in elt(), b in elt()) {
            let (ca, cb) = (*CosetRep::of(&a).element(), *CosetRep::of(&b).element());
            if ca.commutator(&cb).is_central() {
                prop_assert_eq!(cocycle_omega(&a, &b) - cocycle_omega(&b, &a), ca.commutator(&cb).a14);
            }
        }
    }
}
