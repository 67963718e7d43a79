use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use ut4k::classify::normalize_class;
use ut4k::exact::rat;
use ut4k::groups::{beta_apply, beta_inv_apply, cocycle_omega, CosetRep};
use ut4k::intlat::{cokernel, smith_normal_form};
use ut4k::ktheory::elliott_invariant_in;
use ut4k::{certificate_for, FieldElement, IntMatrix, NumberField, Poly, QuadraticForm, RationalLattice, UT4Element};

fn cubic() -> NumberField {
    NumberField::make(Poly::from_i64(&[-1, -1, 0, 1]), rat(1), rat(2)).unwrap()
}

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-range..=range, rows * cols)
        .prop_map(move |v| IntMatrix::from_rows(&v.chunks(cols).map(<[i64]>::to_vec).collect::<Vec<_>>()).unwrap())
}

fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..=3), 0..15).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, t) in ops {
            let mut e = IntMatrix::identity(n);
            if i == j {
                e[(i, i)] = -BigInt::one();
            } else {
                e[(i, j)] = BigInt::from(t);
            }
            m = e.try_mul(&m).unwrap();
        }
        m
    })
}

fn ut4() -> impl Strategy<Value = UT4Element> {
    prop::array::uniform6(-20i64..=20).prop_map(UT4Element::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_decomposes(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c, 9))) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.try_mul(&m).unwrap().try_mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|d| d.is_positive()));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        let g = cokernel(&m);
        prop_assert_eq!(g.free_rank() + s.rank(), m.rows());
    }

    #[test]
    fn lattice_is_basis_independent(m in matrix(3, 3, 6), u in unimodular(3)) {
        let a = RationalLattice::from_integer_rows(&m);
        let b = RationalLattice::from_integer_rows(&u.try_mul(&m).unwrap());
        prop_assert_eq!(&a, &b);
        prop_assert!(a.equals(&b).unwrap());
    }

    #[test]
    fn ut4_is_a_group(x in ut4(), y in ut4(), z in ut4()) {
        prop_assert_eq!((x * y) * z, x * (y * z));
        prop_assert!((x * x.inv()).is_identity());
        prop_assert_eq!(beta_apply(&(x * y)), beta_apply(&x) * beta_apply(&y));
        prop_assert_eq!(beta_inv_apply(&beta_apply(&x)), x);
        prop_assert!(x.commutator(&y).commutator(&z).commutator(&x).is_identity());
    }

    #[test]
    fn cocycle_identity(x in ut4(), y in ut4(), z in ut4()) {
        let (x, y, z) = (*CosetRep::of(&x).element(), *CosetRep::of(&y).element(), *CosetRep::of(&z).element());
        let xy = *CosetRep::of(&(x * y)).element();
        let yz = *CosetRep::of(&(y * z)).element();
        prop_assert_eq!(cocycle_omega(&x, &y) + cocycle_omega(&xy, &z), cocycle_omega(&y, &z) + cocycle_omega(&x, &yz));
    }

    #[test]
    fn field_ring_laws(a in prop::collection::vec(-50i64..50, 3), b in prop::collection::vec(-50i64..50, 3)) {
        let f = cubic();
        let (x, y) = (f.elt_i64(&a), f.elt_i64(&b));
        let xy = x.checked_mul(&y).unwrap();
        prop_assert_eq!(&xy, &y.checked_mul(&x).unwrap());
        if !y.is_zero() {
            prop_assert_eq!(xy.checked_div(&y).unwrap(), x.clone());
        }
        let diff = x.checked_sub(&y).unwrap();
        prop_assert_eq!(diff.sign(), x.approx().partial_cmp(&y.approx()).unwrap_or(std::cmp::Ordering::Equal));
    }

    #[test]
    fn class_normalization(a in -40i64..40, b in -40i64..40, k in -1000i64..1000, neg in any::<bool>()) {
        let f = cubic();
        let x = f.elt_i64(&[0, a, b]);
        let s = if neg { -1 } else { 1 };
        let y = f.elt_i64(&[k, s * a, s * b]);
        prop_assert_eq!(normalize_class(&x), normalize_class(&y));
    }

    #[test]
    fn certificates_reverify(point in 0usize..5, neg in any::<bool>(), k in -100_000i64..100_000) {
        let f = cubic();
        let (a, b) = [(1, 0), (0, -1), (1, -1), (-1, -1), (4, 3)][point];
        let s = if neg { -1 } else { 1 };
        let eta = f.elt_i64(&[k, s * a, s * b]);
        let c = certificate_for(&f, &eta).unwrap().expect("known class");
        prop_assert!(c.verify());
        prop_assert_eq!(c.target(), &eta);
        prop_assert!(c.matrix().is_unimodular());
        let inv = c.inverse().unwrap();
        prop_assert!(inv.verify());
        let round = c.then(&inv).unwrap();
        prop_assert_eq!(round.matrix(), &IntMatrix::identity(3));
    }

    #[test]
    fn quadratic_certificates_reverify(x in -30i64..30, neg in any::<bool>(), k in -1000i64..1000, r in 2i64..40) {
        let Ok(q) = QuadraticForm::new(x, 1, 3, r) else { return Ok(()); };
        let (f, theta) = q.parse().unwrap();
        let s = if neg { -1 } else { 1 };
        let eta: FieldElement = f.elt_i64(&[k]).checked_add(&theta.checked_mul(&f.int(s)).unwrap()).unwrap();
        let c = certificate_for(&f, &eta).unwrap().expect("translate");
        prop_assert!(c.verify());
    }

    #[test]
    fn cone_axioms(x in prop::collection::vec(-50i64..=50, 10), y in prop::collection::vec(-50i64..=50, 10)) {
        let inv = elliott_invariant_in(&cubic()).unwrap();
        let big = |v: &[i64]| v.iter().map(|&t| BigInt::from(t)).collect::<Vec<_>>();
        let (x, y) = (big(&x), big(&y));
        let sum: Vec<BigInt> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let neg: Vec<BigInt> = x.iter().map(|t| -t).collect();
        let (px, py) = (inv.cone_contains(&x).unwrap(), inv.cone_contains(&y).unwrap());
        if px && py {
            prop_assert!(inv.cone_contains(&sum).unwrap());
        }
        if px && inv.cone_contains(&neg).unwrap() {
            prop_assert!(x.iter().all(Zero::is_zero));
        }
        // the cone is generating: x = (x + N·[1]) - N·[1] with both terms positive
        let n: BigInt = 1 + 3 * x.iter().map(Signed::abs).sum::<BigInt>();
        let mut shifted = x.clone();
        shifted[0] += &n;
        prop_assert!(inv.cone_contains(&shifted).unwrap());
        let infinitesimal: Vec<BigInt> = (0..10).map(|i| if i < 3 { BigInt::zero() } else { x[i].clone() }).collect();
        if infinitesimal.iter().any(|t| !t.is_zero()) {
            prop_assert!(!inv.cone_contains(&infinitesimal).unwrap());
        }
    }
}
