//! Integer points of `a³ + p a²b + q ab² + r b³ = 1` and the projective
//! curve they lie on.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{lcm_denominators, Rat};
use crate::intlat::IntMatrix;
use crate::numfield::Poly;

/// `g(a) = c3 a³ + c2 a² + c1 a + c0` with `c3 > 0`.
struct IntCubic {
    c: [BigInt; 4],
}

impl IntCubic {
    fn eval(&self, a: &BigInt) -> BigInt {
        ((&self.c[3] * a + &self.c[2]) * a + &self.c[1]) * a + &self.c[0]
    }

    /// Integer roots in `[lo, hi]` on a piece where `g` is monotone.
    fn monotone_roots(&self, lo: &BigInt, hi: &BigInt, out: &mut Vec<BigInt>) {
        if lo > hi {
            return;
        }
        let (glo, ghi) = (self.eval(lo), self.eval(hi));
        if glo.is_zero() {
            out.push(lo.clone());
        }
        if ghi.is_zero() && hi != lo {
            out.push(hi.clone());
        }
        if glo.signum() * ghi.signum() >= BigInt::zero() {
            return;
        }
        let increasing = glo.is_negative();
        let (mut l, mut h) = (lo.clone(), hi.clone());
        // g(l) and g(h) have opposite signs, neither zero.
        while &h - &l > BigInt::one() {
            let mid: BigInt = (&l + &h) >> 1;
            let g = self.eval(&mid);
            if g.is_zero() {
                out.push(mid);
                return;
            }
            if g.is_negative() == increasing {
                l = mid;
            } else {
                h = mid;
            }
        }
    }

    /// All integer roots in `[-bound, bound]`.
    fn roots_in(&self, bound: &BigInt) -> Vec<BigInt> {
        let (lo, hi) = (-bound.clone(), bound.clone());
        let mut out = Vec::new();
        // g' = 3 c3 a² + 2 c2 a + c1, critical points (-2c2 ± √Δ) / (6 c3)
        let disc = BigInt::from(4) * &self.c[2] * &self.c[2] - BigInt::from(12) * &self.c[3] * &self.c[1];
        if disc.is_negative() {
            self.monotone_roots(&lo, &hi, &mut out);
        } else {
            let s = disc.sqrt();
            let den = BigInt::from(6) * &self.c[3];
            let floor_div = |n: BigInt| num_integer::Integer::div_floor(&n, &den);
            let c1 = floor_div(-BigInt::from(2) * &self.c[2] - &s);
            let c2 = floor_div(-BigInt::from(2) * &self.c[2] + &s);
            let clamp = |x: BigInt| x.max(&lo - BigInt::one()).min(&hi + BigInt::one());
            let (c1, c2) = (clamp(c1), clamp(c2));
            self.monotone_roots(&lo, &(&c1 - BigInt::from(2)).min(hi.clone()), &mut out);
            self.monotone_roots(&(&c1 + BigInt::one()).max(lo.clone()), &c2.clone().min(hi.clone()), &mut out);
            self.monotone_roots(&(&c2 + BigInt::from(2)).max(lo.clone()), &hi, &mut out);
            for a in [&c1 - BigInt::one(), c1.clone(), &c2 + BigInt::one()] {
                if a >= lo && a <= hi && self.eval(&a).is_zero() {
                    out.push(a);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// All `(a, b)` with `|a|, |b| ≤ bound` and `a³ + p a²b + q ab² + r b³ = 1`,
/// sorted lexicographically.
pub fn cubic_form_solutions(p: &Rat, q: &Rat, r: &Rat, bound: u64) -> Vec<(BigInt, BigInt)> {
    let l = Rat::from_integer(lcm_denominators([p, q, r]));
    let (lp, lq, lr) = ((&l * p).to_integer(), (&l * q).to_integer(), (&l * r).to_integer());
    let l = l.to_integer();
    let bound_big = BigInt::from(bound);
    let b_max = bound as i64;
    let mut pts: Vec<(BigInt, BigInt)> = (-b_max..=b_max)
        .into_par_iter()
        .flat_map_iter(|b| {
            let b = BigInt::from(b);
            let g = IntCubic {
                c: [&lr * &b * &b * &b - &l, &lq * &b * &b, &lp * &b, l.clone()],
            };
            g.roots_in(&bound_big).into_iter().map(move |a| (a, b.clone()))
        })
        .collect();
    pts.sort();
    pts
}

/// `A = [[1,0,0],[0,a,b],[c,d,e]]` from the cubic-case equations, when
/// `c, d, e` are integers and `det A = 1`.
pub fn cubic_matrix(l2: &Rat, l1: &Rat, l0: &Rat, a: &BigInt, b: &BigInt) -> Option<IntMatrix> {
    let (aq, bq) = (Rat::from_integer(a.clone()), Rat::from_integer(b.clone()));
    let s = Rat::from_integer(BigInt::from(2)) * &aq * &bq - &bq * &bq * l2;
    let c = -(&s * l0);
    let d = -(&s * l1) - &bq * &bq * l0;
    let e = &aq * &aq - &bq * &bq * l1 - &s * l2;
    if !(c.is_integer() && d.is_integer() && e.is_integer()) {
        return None;
    }
    let m = IntMatrix::from_rows(&[
        vec![BigInt::one(), BigInt::zero(), BigInt::zero()],
        vec![BigInt::zero(), a.clone(), b.clone()],
        vec![c.to_integer(), d.to_integer(), e.to_integer()],
    ])
    .ok()?;
    (m.det().ok()? == BigInt::one()).then_some(m)
}

/// Points of [`cubic_form_solutions`] whose matrix `A` is integral with
/// determinant 1. The `λ`s are recovered from `p = −2λ₂`, `q = λ₂² + λ₁`,
/// `r = λ₀ − λ₁λ₂`.
pub fn cubic_integer_points(p: &Rat, q: &Rat, r: &Rat, bound: u64) -> Vec<(BigInt, BigInt)> {
    let l2 = -p / Rat::from_integer(BigInt::from(2));
    let l1 = q - &l2 * &l2;
    let l0 = r + &l1 * &l2;
    cubic_form_solutions(p, q, r, bound)
        .into_iter()
        .filter(|(a, b)| cubic_matrix(&l2, &l1, &l0, a, b).is_some())
        .collect()
}

/// Polynomials in `x` with coefficients in `Q[y]`, ascending in `x`.
type BiPoly = Vec<Poly>;

fn det_poly(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(Rat::one());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::constant(Rat::zero());
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][j] * &det_poly(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `Res_x(f, g)` via the Sylvester matrix.
fn resultant_x(f: &BiPoly, g: &BiPoly) -> Poly {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let zero = Poly::constant(Rat::zero());
    let mut s = vec![vec![zero; size]; size];
    for i in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            s[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            s[n + i][i + k] = c.clone();
        }
    }
    det_poly(&s)
}

fn mono(c: Rat, deg: usize) -> Poly {
    let mut v = vec![Rat::zero(); deg + 1];
    v[deg] = c;
    Poly::new(v)
}

#[derive(Debug, Clone, Serialize)]
pub struct CubicCurveReport {
    /// No common zero of `F, F_x, F_y` in the affine plane.
    pub affine_nonsingular: bool,
    /// `"resultant"` or `"euler"`.
    pub affine_method: String,
    /// Discriminant of the binary cubic `X³ + pX²Y + qXY² + rY³`.
    #[serde(serialize_with = "crate::exact::ser_rat")]
    pub discriminant_at_infinity: Rat,
    pub infinity_nonsingular: bool,
}

impl CubicCurveReport {
    pub fn nonsingular(&self) -> bool {
        self.affine_nonsingular && self.infinity_nonsingular
    }
}

/// Singularity analysis of `X³ + pX²Y + qXY² + rY³ − Z³ = 0`.
pub fn cubic_curve_report(p: &Rat, q: &Rat, r: &Rat) -> CubicCurveReport {
    let c = |v: i64| Rat::from_integer(BigInt::from(v));
    // F = x³ + p y x² + q y² x + r y³ − 1
    let f: BiPoly = vec![&mono(r.clone(), 3) - &Poly::constant(c(1)), mono(q.clone(), 2), mono(p.clone(), 1), Poly::constant(c(1))];
    // F_x = 3x² + 2p y x + q y²
    let fx: BiPoly = vec![mono(q.clone(), 2), mono(c(2) * p, 1), Poly::constant(c(3))];
    // F_y = p x² + 2q y x + 3r y²
    let fy: BiPoly = vec![mono(c(3) * r, 2), mono(c(2) * q, 1), Poly::constant(p.clone())];
    let r1 = resultant_x(&fx, &fy);
    let r2 = resultant_x(&fx, &f);
    let g = r1.gcd(&r2);
    let (affine_nonsingular, affine_method) = if g.degree() == Some(0) {
        (true, "resultant")
    } else {
        // x F_x + y F_y − 3F = 3 identically, so F, F_x, F_y never vanish together.
        (euler_identity_holds(&f, &fx, &fy), "euler")
    };
    let (a, b, cc, d) = (c(1), p.clone(), q.clone(), r.clone());
    let disc = &b * &b * &cc * &cc - c(4) * &a * &cc * &cc * &cc - c(4) * &b * &b * &b * &d - c(27) * &a * &a * &d * &d
        + c(18) * &a * &b * &cc * &d;
    CubicCurveReport {
        affine_nonsingular,
        affine_method: affine_method.to_string(),
        infinity_nonsingular: !disc.is_zero(),
        discriminant_at_infinity: disc,
    }
}

fn euler_identity_holds(f: &BiPoly, fx: &BiPoly, fy: &BiPoly) -> bool {
    let y = mono(Rat::one(), 1);
    let mut lhs: BiPoly = vec![Poly::constant(Rat::zero()); 5];
    for (i, c) in fx.iter().enumerate() {
        lhs[i + 1] = &lhs[i + 1] + c;
    }
    for (i, c) in fy.iter().enumerate() {
        lhs[i] = &lhs[i] + &(&y * c);
    }
    for (i, c) in f.iter().enumerate() {
        lhs[i] = &lhs[i] - &c.scale(&Rat::from_integer(BigInt::from(3)));
    }
    lhs[0] == Poly::constant(Rat::from_integer(BigInt::from(3))) && lhs[1..].iter().all(Poly::is_zero)
}

/// Whether the projective curve `X³ + pX²Y + qXY² + rY³ = Z³` is nonsingular.
pub fn verify_nonsingular_cubic(p: &Rat, q: &Rat, r: &Rat) -> bool {
    cubic_curve_report(p, q, r).nonsingular()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn pts(v: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        v.iter().map(|&(a, b)| (BigInt::from(a), BigInt::from(b))).collect()
    }

    fn brute(p: &Rat, q: &Rat, r: &Rat, bound: i64) -> Vec<(BigInt, BigInt)> {
        let mut out = Vec::new();
        for a in -bound..=bound {
            for b in -bound..=bound {
                let (x, y) = (rat(a), rat(b));
                if &x * &x * &x + p * &x * &x * &y + q * &x * &y * &y + r * &y * &y * &y == rat(1) {
                    out.push((BigInt::from(a), BigInt::from(b)));
                }
            }
        }
        out
    }

    #[test]
    fn example_curve() {
        let got = cubic_integer_points(&rat(0), &rat(-1), &rat(-1), 1000);
        assert_eq!(got, pts(&[(-1, -1), (0, -1), (1, -1), (1, 0), (4, 3)]));
        let got = cubic_integer_points(&rat(0), &rat(0), &rat(-2), 1000);
        assert_eq!(got, pts(&[(-1, -1), (1, 0)]));
    }

    #[test]
    fn matches_brute_force() {
        let cases = [
            (rat(0), rat(-1), rat(-1)),
            (rat(0), rat(0), rat(-2)),
            (rat(1), rat(-2), rat(-1)),
            (rat(-3), rat(0), rat(1)),
            (Rat::new(1.into(), 2.into()), rat(1), Rat::new((-3).into(), 4.into())),
            (rat(3), rat(3), rat(0)),
        ];
        for (p, q, r) in cases {
            assert_eq!(cubic_form_solutions(&p, &q, &r, 40), brute(&p, &q, &r, 40), "{p} {q} {r}");
        }
    }

    #[test]
    fn trivial_point_always() {
        for (p, q, r) in [(5, -7, 11), (0, 0, 0), (-1, 2, -3)] {
            let got = cubic_form_solutions(&rat(p), &rat(q), &rat(r), 5);
            assert!(got.contains(&(BigInt::one(), BigInt::zero())));
        }
    }

    #[test]
    fn curve_checks() {
        let rep = cubic_curve_report(&rat(0), &rat(-1), &rat(-1));
        assert!(rep.nonsingular());
        assert_eq!(rep.discriminant_at_infinity, rat(-23));
        assert_eq!(rep.affine_method, "resultant");
        assert!(!verify_nonsingular_cubic(&rat(0), &rat(0), &rat(0)));
        assert!(verify_nonsingular_cubic(&rat(0), &rat(0), &rat(1)));
        // (X - Y)²(X + 2Y) has a double root at infinity.
        assert!(!verify_nonsingular_cubic(&rat(0), &rat(-3), &rat(2)));
    }
}
