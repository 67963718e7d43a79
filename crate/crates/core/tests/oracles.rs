//! Fixed input/output pairs, each checked against an independent hand computation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;
use ut4k::classify::{same_translate_class, QUADRATIC_ASSUMPTION};
use ut4k::exact::{frac, rat};
use ut4k::groups::{beta_apply, beta_inv_apply, cocycle_omega, quotient_by_xy, xy_sublattices};
use ut4k::intlat::{cokernel, kernel_basis, smith_normal_form};
use ut4k::ktheory::{
    beta_tensor_k1_matrix, elliott_invariant_in, exterior_action, fixed_rank, heisenberg_step3_report, pv_report,
    ut4_alpha, ut4_k_groups,
};
use ut4k::numfield::integer_translate_class;
use ut4k::{
    decide_isomorphic, enumerate_equivalents, FpAbelianGroup, IntMatrix, NumberField, Poly, QuadraticForm,
    RationalLattice, UT4Element, Verdict,
};

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn cubic() -> NumberField {
    NumberField::make(Poly::from_i64(&[-1, -1, 0, 1]), rat(1), rat(2)).unwrap()
}

fn quartic() -> NumberField {
    NumberField::make(Poly::from_i64(&[-1, 1, 0, 0, 1]), rat(0), rat(1)).unwrap()
}

#[test]
fn smith_of_heisenberg_step() {
    let m = IntMatrix::from_i64(&[&[0, -2], &[0, 0]]);
    let s = smith_normal_form(&m);
    assert_eq!(s.invariant_factors(), big(&[2]));
    assert_eq!(s.d, IntMatrix::from_i64(&[&[2, 0], &[0, 0]]));
    assert_eq!(s.u.try_mul(&m).unwrap().try_mul(&s.v).unwrap(), s.d);
    assert_eq!(cokernel(&m), FpAbelianGroup::new(1, big(&[2])));
    assert_eq!(kernel_basis(&m), IntMatrix::from_i64(&[&[1, 0]]));
}

#[test]
fn ut4_blocks() {
    let a = exterior_action(&ut4_alpha(), 4).unwrap();
    let id_minus = |m: &IntMatrix| m.id_minus().unwrap();
    assert_eq!(cokernel(&id_minus(&a.odd_matrix)), FpAbelianGroup::free(4));
    assert_eq!(smith_normal_form(&id_minus(&a.odd_matrix)).invariant_factors(), big(&[1, 1, 1, 1]));
    assert_eq!(cokernel(&id_minus(&a.even_matrix)), FpAbelianGroup::free(6));
    assert_eq!(kernel_basis(&id_minus(&a.even_matrix)).rows(), 6);
}

#[test]
fn alpha_fixes_exactly_nine_classes() {
    let a = exterior_action(&ut4_alpha(), 4).unwrap();
    let fixed_cols = |m: &IntMatrix, basis: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        (0..m.cols())
            .filter(|&j| (0..m.rows()).all(|i| m[(i, j)] == BigInt::from((i == j) as i64)))
            .map(|j| basis[j].clone())
            .collect()
    };
    let mut fixed = fixed_cols(&a.even_matrix, a.even_basis());
    fixed.extend(fixed_cols(&a.odd_matrix, a.odd_basis()));
    fixed.sort();
    // 1, e2, e3, e12, e23, e34, e123, e234, e1234 (0-based indices)
    let mut expected = vec![vec![], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 1, 2], vec![1, 2, 3], vec![0, 1, 2, 3]];
    expected.sort();
    assert_eq!(fixed, expected);
    // α(e1∧e4) = e1∧e3 + e1∧e4 - e2∧e3 - e2∧e4; even basis 1, 12, 13, 14, 23, 24, 34, 1234
    let col: Vec<BigInt> = (0..8).map(|i| a.even_matrix[(i, 3)].clone()).collect();
    assert_eq!(col, big(&[0, 0, 1, 1, -1, -1, 0, 0]));
    // α(e1) = e1 - e2, α(e4) = e3 + e4, α(e124) = e123 + e124, α(e134) = e134 - e234
    let odd_col = |j: usize| (0..8).map(|i| a.odd_matrix[(i, j)].clone()).collect::<Vec<_>>();
    assert_eq!(odd_col(0), big(&[1, -1, 0, 0, 0, 0, 0, 0]));
    assert_eq!(odd_col(3), big(&[0, 0, 1, 1, 0, 0, 0, 0]));
    assert_eq!(odd_col(5), big(&[0, 0, 0, 0, 1, 1, 0, 0]));
    assert_eq!(odd_col(6), big(&[0, 0, 0, 0, 0, 0, 1, -1]));
}

#[test]
fn swap_negates_top_form() {
    let a = exterior_action(&IntMatrix::from_i64(&[&[0, 1], &[1, 0]]), 2).unwrap();
    assert_eq!(a.even_matrix, IntMatrix::from_i64(&[&[1, 0], &[0, -1]]));
}

#[test]
fn k_groups() {
    let k = ut4_k_groups();
    assert_eq!((k.pv.k0.clone(), k.pv.k1.clone()), (FpAbelianGroup::free(10), FpAbelianGroup::free(10)));
    assert_eq!(k.pv.coker_k1, FpAbelianGroup::free(4));
    assert_eq!(k.pv.coker_k0.free_rank() + k.pv.ker_rank_k1, 10);
    assert_eq!(k.pv.coker_k1.free_rank() + k.pv.ker_rank_k0, 10);
    assert!(k.pv.coker_k0.is_free() && k.pv.coker_k1.is_free());

    let h = heisenberg_step3_report();
    assert_eq!(h.k0, FpAbelianGroup::free(3));
    assert_eq!(h.k1, FpAbelianGroup::new(3, big(&[2])));
    assert_eq!((h.ker_rank_k0, h.ker_rank_k1), (2, 1));
    let again = pv_report(&IntMatrix::identity(2), &IntMatrix::from_i64(&[&[1, 2], &[0, 1]])).unwrap();
    assert_eq!(again, h);
}

#[test]
fn tensor_action_block() {
    let m = beta_tensor_k1_matrix();
    assert_eq!(m.rows(), 8);
    assert_eq!(m.det().unwrap(), BigInt::from(1));
    assert_eq!(fixed_rank(&m).unwrap(), 4);
}

#[test]
fn lattices() {
    let g = RationalLattice::from_integer_rows(&IntMatrix::from_i64(&[&[1, 0, 0], &[0, 4, 3], &[24, 33, 25]]));
    assert!(g.equals(&RationalLattice::from_integer_rows(&IntMatrix::identity(3))).unwrap());
    // (1, θ, θ²) for θ = (1+√2)/3 in (1, √2) coordinates
    let theta = RationalLattice::canonicalize(&[vec![rat(1), rat(0)], vec![frac(1, 3), frac(1, 3)], vec![frac(1, 3), frac(2, 9)]], 2).unwrap();
    let expected = RationalLattice::canonicalize(&[vec![frac(1, 3), rat(0)], vec![rat(0), frac(1, 9)]], 2).unwrap();
    assert!(theta.equals(&expected).unwrap());
    // η = (1+2√2)/3 gives (1/3)Z + (2/9)√2 Z instead
    let eta = RationalLattice::canonicalize(&[vec![rat(1), rat(0)], vec![frac(1, 3), frac(2, 3)], vec![rat(1), frac(4, 9)]], 2).unwrap();
    let eta_expected = RationalLattice::canonicalize(&[vec![frac(1, 3), rat(0)], vec![rat(0), frac(2, 9)]], 2).unwrap();
    assert!(eta.equals(&eta_expected).unwrap());
    assert!(!eta.equals(&theta).unwrap());
}

#[test]
fn field_arithmetic() {
    let f = cubic();
    assert!((f.theta().approx() - 1.324_717_957_244_746).abs() < 1e-12);
    let z = f.elt_i64(&[0, 4, 3]);
    assert_eq!(z.pow(2), f.elt_i64(&[24, 33, 25]));
    assert_eq!(f.theta().pow(3), f.elt_i64(&[1, 1]));
    assert_eq!(f.elt_i64(&[-1, 1]).sign(), Ordering::Greater);

    let q = quartic();
    assert_eq!(q.theta().pow(4), q.elt_i64(&[1, -1]));
    let (mp, deg) = q.theta().pow(2).minpoly();
    assert_eq!(deg, 4);
    assert_eq!(mp, Poly::from_i64(&[1, -1, -2, 0, 1]));

    let (k, t) = QuadraticForm::new(1, 1, 3, 2).unwrap().parse().unwrap();
    assert_eq!(k.minpoly(), &Poly::new(vec![frac(-1, 9), frac(-2, 3), rat(1)]));
    assert!((t.approx() - 0.804_737_854_124_365).abs() < 1e-12);
    assert!(k.elt_i64(&[-1, -6, 9]).is_zero());
}

#[test]
fn translate_classes() {
    let f = cubic();
    assert_eq!(integer_translate_class(&f, &f.elt_i64(&[5, -1])).unwrap(), Some((-1, BigInt::from(5))));
    assert_eq!(integer_translate_class(&f, &f.elt_i64(&[0, 4, 3])).unwrap(), None);
    assert!(same_translate_class(&f.elt_i64(&[2, 4, 3]), &f.elt_i64(&[-7, -4, -3])));

    let q = QuadraticForm::new(1, 1, 3, 2).unwrap();
    let (field, _) = q.parse().unwrap();
    let eta = ut4k::classify::quadratic_in(&q, &QuadraticForm::new(1, 2, 3, 2).unwrap(), &field);
    assert_eq!(integer_translate_class(&field, &eta).unwrap(), None);
}

#[test]
fn ut4_relations() {
    let e = UT4Element::unit;
    assert_eq!(e(1, 2, 1).commutator(&e(2, 4, 1)), e(1, 4, 1));
    assert!(e(1, 2, 1).commutator(&e(3, 4, 1)).is_identity());
    assert!(e(1, 4, 3).is_central());
    assert_eq!(beta_apply(&e(1, 2, 1)), UT4Element::new([1, -1, 0, 0, 0, 0]));
    assert_eq!(beta_apply(&e(3, 4, 1)), UT4Element::new([0, 0, 0, 0, 1, 1]));
    assert_eq!(beta_apply(&e(1, 3, 1)), e(1, 3, 1));
    assert_eq!(beta_inv_apply(&beta_apply(&e(2, 4, 5))), e(2, 4, 5));
}

#[test]
fn xy_quotient() {
    assert_eq!(quotient_by_xy(), FpAbelianGroup::new(0, big(&[2, 2])));
    let r = xy_sublattices();
    assert!(r.all_invariant());
    assert_eq!(r.intersection_rank, 0);
    assert_eq!(r.generator_det.abs(), BigInt::from(4));
}

#[test]
fn cocycle_values() {
    let e = UT4Element::unit;
    assert_eq!(cocycle_omega(&e(1, 2, 1), &e(2, 4, 1)), 1);
    assert_eq!(cocycle_omega(&e(2, 4, 1), &e(1, 2, 1)), 0);
    assert_eq!(cocycle_omega(&UT4Element::IDENTITY, &e(1, 2, 1)), 0);
}

#[test]
fn classification() {
    let f = cubic();
    let r = decide_isomorphic(&f, &f.elt_i64(&[0, 4, 3])).unwrap();
    assert_eq!(r.verdict, Verdict::Isomorphic);
    assert!(r.certificate.unwrap().verify());
    assert_eq!(decide_isomorphic(&f, &f.elt_i64(&[0, 2, 1])).unwrap().verdict, Verdict::NotIsomorphic);

    let q = quartic();
    let list = enumerate_equivalents(&q, 10).unwrap();
    assert_eq!(list.len(), 2);
    assert!(list.contains_class(&q.theta().pow(2)));

    let quintic = NumberField::make(Poly::from_i64(&[-1, -1, 0, 0, 0, 1]), rat(1), rat(2)).unwrap();
    assert_eq!(enumerate_equivalents(&quintic, 10).unwrap().len(), 1);

    let (sqrt2, _) = QuadraticForm::new(0, 1, 1, 2).unwrap().parse().unwrap();
    let r = decide_isomorphic(&sqrt2, &sqrt2.elt_i64(&[3, -1])).unwrap();
    assert_eq!(r.verdict, Verdict::Isomorphic);
    assert!(r.notes.iter().any(|n| n == QUADRATIC_ASSUMPTION));
}

#[test]
fn trace_ranges() {
    let q = quartic();
    let inv = elliott_invariant_in(&q).unwrap();
    assert_eq!(inv.trace_range.rank(), 3);
    assert!(inv.trace_range_contains(&q.theta().pow(2)).unwrap());
    assert!(!inv.trace_range_contains(&q.theta().pow(3)).unwrap());

    let f = cubic();
    let inv = elliott_invariant_in(&f).unwrap();
    assert!(inv.trace_range_contains(&f.theta().pow(3)).unwrap());
    let mut zero = big(&[0; 10]);
    assert!(inv.cone_contains(&zero).unwrap());
    zero[0] = BigInt::from(-1);
    assert!(!inv.cone_contains(&zero).unwrap());

    let (k, _) = QuadraticForm::new(1, 1, 3, 2).unwrap().parse().unwrap();
    let inv = elliott_invariant_in(&k).unwrap();
    let x = big(&[-1, -6, 9, 0, 0, 0, 0, 0, 0, 0]);
    let minus: Vec<BigInt> = x.iter().map(|t| -t).collect();
    assert!(!inv.cone_contains(&x).unwrap() && !inv.cone_contains(&minus).unwrap());
}
