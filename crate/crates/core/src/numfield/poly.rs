use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{lcm_denominators, rat_to_string, Rat};

/// A univariate polynomial over `Q`, coefficients in ascending order
/// (constant term first), with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        Poly::new(coeffs.iter().cloned().map(Rat::from_integer).collect())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Poly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &Rat) -> Ordering {
        self.eval(x).cmp(&Rat::zero())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Euclidean division: `self = q · d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Poly::default(), Poly::default());
        };
        if sd < dd {
            return (Poly::default(), self.clone());
        }
        let lc = d.leading();
        let mut q = vec![Rat::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &r[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero only if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·other = g = gcd(self, other)`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::constant(Rat::one()), Poly::default());
        let (mut t0, mut t1) = (Poly::default(), Poly::constant(Rat::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Rat::one() / r0.leading();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `self / gcd(self, self')`, made monic.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().is_none_or(|d| d == 0) {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = -seq.last().unwrap().rem(&next);
            seq.push(next);
            next = r;
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &Rat, hi: &Rat) -> usize {
        if lo >= hi || self.is_zero() {
            return 0;
        }
        let seq = self.squarefree_part().sturm_sequence();
        variations(&seq, lo).saturating_sub(variations(&seq, hi))
    }

    /// Isolating intervals `(lo, hi]` of width at most `max_width` for every
    /// real root, in increasing order.
    pub fn isolate_real_roots(&self, max_width: &Rat) -> Vec<(Rat, Rat)> {
        let sf = self.squarefree_part();
        let Some(d) = sf.degree() else { return Vec::new() };
        if d == 0 {
            return Vec::new();
        }
        let seq = sf.sturm_sequence();
        let bound = sf.cauchy_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let n = variations(&seq, &lo).saturating_sub(variations(&seq, &hi));
            if n == 0 {
                continue;
            }
            if n == 1 && &(&hi - &lo) <= max_width {
                out.push((lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / Rat::from_integer(2.into());
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        out.sort();
        out
    }

    /// `1 + max |c_i / c_n|`; every root has absolute value below it.
    pub fn cauchy_bound(&self) -> Rat {
        let lc = self.leading();
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| (c / &lc).abs())
            .max()
            .unwrap_or_else(Rat::zero);
        m + Rat::one()
    }

    /// All rational roots (the polynomial need not be monic).
    pub fn rational_roots(&self) -> Vec<Rat> {
        if self.degree().is_none_or(|d| d == 0) {
            return Vec::new();
        }
        let (q, scale) = self.integer_monic_transform();
        // Rational roots of q are integers; isolate and test.
        let mut roots = Vec::new();
        for (lo, hi) in q.isolate_real_roots(&Rat::from_integer(BigInt::one())) {
            let mut k = lo.floor();
            while k <= hi {
                if q.eval(&k).is_zero() && !roots.contains(&k) {
                    roots.push(k.clone());
                }
                k += Rat::one();
            }
        }
        let mut out: Vec<Rat> = roots.into_iter().map(|r| r / &scale).collect();
        out.sort();
        out
    }

    /// For a polynomial `p` of degree `d`, returns `(q, D)` with
    /// `q(y) = D^d · p(y/D) / lc(p)` monic with integer coefficients.
    pub fn integer_monic_transform(&self) -> (Poly, Rat) {
        let p = self.monic();
        let d = p.degree().unwrap_or(0);
        let den = lcm_denominators(p.coeffs.iter());
        let den_r = Rat::from_integer(den.clone());
        let coeffs = p
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rat::from_integer(num_traits::pow(den.clone(), d - i)))
            .collect();
        (Poly::new(coeffs), den_r)
    }

    /// Irreducibility over `Q` for degree at most 4; `None` above that.
    pub fn irreducibility(&self) -> Option<Result<(), String>> {
        let d = self.degree()?;
        if d == 0 {
            return Some(Err("constant polynomial".into()));
        }
        if d == 1 {
            return Some(Ok(()));
        }
        if d > 4 {
            return None;
        }
        if let Some(r) = self.rational_roots().first() {
            return Some(Err(format!("rational root {}", rat_to_string(r))));
        }
        if d == 4 {
            let (q, scale) = self.integer_monic_transform();
            match q.integer_quadratic_factor() {
                Ok(Some((b, c))) => {
                    // Translate the factor y^2 + b y + c back to x = y / D.
                    let f = Poly::new(vec![
                        Rat::from_integer(c) / (&scale * &scale),
                        Rat::from_integer(b) / &scale,
                        Rat::one(),
                    ]);
                    return Some(Err(format!("quadratic factor {f}")));
                }
                Ok(None) => {}
                Err(msg) => return Some(Err(msg)),
            }
        }
        Some(Ok(()))
    }

    /// For a monic integer quartic `y^4 + q3 y^3 + q2 y^2 + q1 y + q0` with
    /// `q0 ≠ 0`, finds `(b, c)` such that `y^2 + b y + c` is a factor.
    fn integer_quadratic_factor(&self) -> Result<Option<(BigInt, BigInt)>, String> {
        let q: Vec<BigInt> = (0..5).map(|i| self.coeff(i).to_integer()).collect();
        let q0 = &q[0];
        let divisors = divisors(&q0.abs()).ok_or_else(|| {
            format!("constant term {q0} too large to test for quadratic factors")
        })?;
        for c in divisors.iter().flat_map(|d| [d.clone(), -d]) {
            let f = q0 / &c;
            let s = &q[3];
            let prod = &q[2] - &c - &f;
            let disc = s * s - BigInt::from(4) * &prod;
            if disc.is_negative() {
                continue;
            }
            let root = disc.sqrt();
            if &root * &root != disc {
                continue;
            }
            for b in [(s + &root), (s - &root)] {
                if b.is_odd() {
                    continue;
                }
                let b = b / 2;
                let e = s - &b;
                if &b * &f + &c * &e == q[1] {
                    return Ok(Some((b, c)));
                }
            }
        }
        Ok(None)
    }
}

fn variations(seq: &[Poly], x: &Rat) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Positive divisors by trial division; `None` if `n` is beyond the range
/// where that is cheap.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let n = n.to_u128().filter(|&v| v > 0 && v <= 1u128 << 46)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d: u128 = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::default();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = rat_to_string(&a);
            match (i, a.is_one()) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coef}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{coef}*x^{i}")?,
            }
        }
        Ok(())
    }
}
