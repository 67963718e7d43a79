use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{FieldElement, NumberField, Poly, RealAlgebraic};
use crate::error::{Error, Result};
use crate::exact::{ser_bigint, Rat};

/// The quadratic irrational `(x + y√k) / z`.
///
/// Canonical form: `gcd(x, y, z) = 1`, `z > 0`, `y ≠ 0`, and `k > 1` a
/// squarefree integer. A radicand `r/s` is absorbed as `√(r/s) = √(rs)/s`,
/// so the denominator of `k` is always 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticForm {
    #[serde(serialize_with = "ser_bigint")]
    x: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    y: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    z: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    k: BigInt,
}

impl QuadraticForm {
    pub fn new(x: i64, y: i64, z: i64, r: i64) -> Result<Self> {
        Self::from_parts(x.into(), y.into(), z.into(), r.into(), BigInt::one())
    }

    /// `(x + y·√(r/s)) / z`, canonicalized.
    pub fn from_parts(x: BigInt, y: BigInt, z: BigInt, r: BigInt, s: BigInt) -> Result<Self> {
        if z.is_zero() || s.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if y.is_zero() {
            return Err(Error::Rational(format!("({x})/{z}")));
        }
        // √(r/s) = √(rs)/|s| (sign of s moves into the radicand).
        let rs = &r * &s;
        if !rs.is_positive() {
            return Err(Error::Domain(format!("radicand {r}/{s} is not positive")));
        }
        let (f, k) = squarefree_decompose(&rs);
        if k.is_one() {
            return Err(Error::PerfectSquare(format!("{r}/{s}")));
        }
        let sa = s.abs();
        // (x + y f √k / |s|) / z = (|s| x + y f √k) / (|s| z)
        let (mut x, mut y, mut z) = (&sa * x, y * f, sa * z);
        if z.is_negative() {
            x = -x;
            y = -y;
            z = -z;
        }
        let g = x.gcd(&y).gcd(&z);
        Ok(QuadraticForm { x: x / &g, y: y / &g, z: z / &g, k })
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn z(&self) -> &BigInt {
        &self.z
    }

    /// The squarefree radicand `k`.
    pub fn radicand(&self) -> &BigInt {
        &self.k
    }

    /// Minimal polynomial `t^2 - (2x/z) t + (x^2 - y^2 k)/z^2`.
    pub fn minpoly(&self) -> Poly {
        let z2 = &self.z * &self.z;
        Poly::new(vec![
            Rat::new(&self.x * &self.x - &self.y * &self.y * &self.k, z2),
            Rat::new(-BigInt::from(2) * &self.x, self.z.clone()),
            Rat::one(),
        ])
    }

    /// The number as a real algebraic number with an isolating interval.
    pub fn real(&self) -> RealAlgebraic {
        let p = self.minpoly();
        // a^2 < k < b^2
        let mut a = Rat::from_integer(self.k.sqrt());
        let mut b = &a + Rat::one();
        let k = Rat::from_integer(self.k.clone());
        loop {
            let (x, y, z) = (Rat::from_integer(self.x.clone()), Rat::from_integer(self.y.clone()), Rat::from_integer(self.z.clone()));
            let e1 = (&x + &y * &a) / &z;
            let e2 = (&x + &y * &b) / &z;
            let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
            if let Ok(r) = RealAlgebraic::new(p.clone(), lo, hi) {
                return r;
            }
            let mid = (&a + &b) / Rat::from_integer(2.into());
            if &mid * &mid < k {
                a = mid;
            } else {
                b = mid;
            }
        }
    }

    /// The field `Q(θ)` and `θ` itself.
    pub fn parse(&self) -> Result<(NumberField, FieldElement)> {
        let field = NumberField::from_generator(self.real())?;
        let theta = field.theta();
        Ok((field, theta))
    }

    /// `√k` as an element of a field generated by this number.
    pub fn sqrt_k_in(&self, field: &NumberField) -> FieldElement {
        // √k = (zθ - x)/y
        field.elt(vec![
            Rat::new(-self.x.clone(), self.y.clone()),
            Rat::new(self.z.clone(), self.y.clone()),
        ])
    }

    /// Canonical surd form of the generator of a degree-2 field.
    pub fn canonical(field: &NumberField) -> Result<Self> {
        if field.degree() != 2 {
            return Err(Error::Domain(format!("degree {} field is not quadratic", field.degree())));
        }
        let p = field.minpoly();
        let (c0, c1) = (p.coeff(0), p.coeff(1));
        // θ = -c1/2 ± √D / 2, D = c1^2 - 4 c0 = n/m, √D = √(nm)/m
        let disc = &c1 * &c1 - Rat::from_integer(4.into()) * &c0;
        let nm = disc.numer() * disc.denom();
        let (f, k) = squarefree_decompose(&nm);
        if k.is_one() {
            return Err(Error::PerfectSquare(crate::exact::rat_to_string(&disc)));
        }
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        let centre = field.rational(-&c1 * &half);
        let sign = (&field.theta() - &centre).signum();
        let yk = Rat::new(f * sign, disc.denom() * 2);
        let xk = -&c1 * &half;
        let den = xk.denom().lcm(yk.denom());
        let x = (xk * Rat::from_integer(den.clone())).to_integer();
        let y = (yk * Rat::from_integer(den.clone())).to_integer();
        Self::from_parts(x, y, den, k, BigInt::one())
    }
}

/// `n = f^2 · k` with `k` squarefree (sign kept on `k`).
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    let mut m = n.abs();
    let mut f = BigInt::one();
    let mut k = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            f *= num_traits::pow(p.clone(), (e / 2) as usize);
            if e % 2 == 1 {
                k *= &p;
            }
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    k *= m;
    if n.is_negative() {
        k = -k;
    }
    (f, k)
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.y.is_negative() { "-" } else { "+" };
        write!(f, "({} {} {}√{})/{}", self.x, sign, self.y.abs(), self.k, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    #[test]
    fn parse_examples() {
        let q = QuadraticForm::new(1, 1, 3, 2).unwrap();
        let (f, t) = q.parse().unwrap();
        assert_eq!(f.minpoly(), &Poly::new(vec![frac(-1, 9), frac(-2, 3), rat(1)]));
        assert!((t.approx() - 0.804_737_854_124_365).abs() < 1e-12);
        let r2 = QuadraticForm::new(0, 1, 1, 2).unwrap();
        assert_eq!(r2.minpoly(), Poly::from_i64(&[-2, 0, 1]));
    }

    #[test]
    fn canonicalization() {
        assert_eq!(QuadraticForm::new(2, 2, 6, 2).unwrap(), QuadraticForm::new(1, 1, 3, 2).unwrap());
        // √8 = 2√2
        assert_eq!(QuadraticForm::new(0, 1, 1, 8).unwrap(), QuadraticForm::new(0, 2, 1, 2).unwrap());
        // √(1/2) = √2 / 2
        let h = QuadraticForm::from_parts(0.into(), 1.into(), 1.into(), 1.into(), 2.into()).unwrap();
        assert_eq!(h, QuadraticForm::new(0, 1, 2, 2).unwrap());
        assert_eq!(QuadraticForm::new(1, -1, -3, 2).unwrap(), QuadraticForm::new(-1, 1, 3, 2).unwrap());
        assert!(matches!(QuadraticForm::new(1, 1, 1, 4), Err(Error::PerfectSquare(_))));
        assert!(matches!(QuadraticForm::new(1, 0, 1, 2), Err(Error::Rational(_))));
        assert!(QuadraticForm::new(1, 1, 1, -2).is_err());
    }

    #[test]
    fn round_trip_through_field() {
        for (x, y, z, k) in [(1, 1, 3, 2), (1, -1, 3, 2), (0, 1, 1, 2), (-5, 3, 7, 6), (2, -1, 1, 3)] {
            let q = QuadraticForm::new(x, y, z, k).unwrap();
            let (field, _) = q.parse().unwrap();
            assert_eq!(QuadraticForm::canonical(&field).unwrap(), q);
            let s = q.sqrt_k_in(&field);
            assert_eq!(&s * &s, field.int(k));
            assert_eq!(s.signum(), 1);
        }
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decompose(&BigInt::from(72)), (BigInt::from(6), BigInt::from(2)));
        assert_eq!(squarefree_decompose(&BigInt::from(-45)), (BigInt::from(3), BigInt::from(-5)));
        assert_eq!(squarefree_decompose(&BigInt::from(1)), (BigInt::one(), BigInt::one()));
    }
}
