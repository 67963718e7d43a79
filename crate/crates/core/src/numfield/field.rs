use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, Serializer};

use super::{Poly, RealAlgebraic};
use crate::error::{Error, Result};
use crate::exact::{rat_to_f64, rat_to_string, ser_rats, Rat};

#[derive(Debug)]
struct FieldData {
    generator: RealAlgebraic,
    irreducibility_checked: bool,
}

/// `Q(θ)` for a real algebraic `θ`, with power basis `1, θ, …, θ^{d-1}`.
#[derive(Clone, Debug)]
pub struct NumberField(Arc<FieldData>);

impl NumberField {
    /// Validates the minimal polynomial and isolating interval.
    ///
    /// Irreducibility is proved for degree at most 4. For higher degrees only
    /// the absence of rational roots and of repeated factors is checked, and
    /// [`irreducibility_checked`](Self::irreducibility_checked) reports `false`.
    pub fn make(minpoly: Poly, lo: Rat, hi: Rat) -> Result<Self> {
        if !minpoly.is_monic() || minpoly.degree().is_none_or(|d| d < 1) {
            return Err(Error::NotMonic);
        }
        let checked = match minpoly.irreducibility() {
            Some(Ok(())) => true,
            Some(Err(why)) => return Err(Error::Reducible(why)),
            None => {
                if let Some(r) = minpoly.rational_roots().first() {
                    return Err(Error::Reducible(format!("rational root {}", rat_to_string(r))));
                }
                false
            }
        };
        let generator = RealAlgebraic::new(minpoly, lo, hi)?;
        Ok(NumberField(Arc::new(FieldData { generator, irreducibility_checked: checked })))
    }

    pub fn from_generator(generator: RealAlgebraic) -> Result<Self> {
        let (lo, hi) = generator.interval();
        Self::make(generator.minpoly().clone(), lo.clone(), hi.clone())
    }

    pub fn generator(&self) -> &RealAlgebraic {
        &self.0.generator
    }

    pub fn minpoly(&self) -> &Poly {
        self.0.generator.minpoly()
    }

    pub fn degree(&self) -> usize {
        self.0.generator.degree()
    }

    pub fn irreducibility_checked(&self) -> bool {
        self.0.irreducibility_checked
    }

    /// The element `Σ c_i θ^i`; any number of coefficients is accepted and
    /// reduced modulo the minimal polynomial.
    pub fn elt(&self, coeffs: Vec<Rat>) -> FieldElement {
        self.from_poly(&Poly::new(coeffs))
    }

    pub fn elt_i64(&self, coeffs: &[i64]) -> FieldElement {
        self.from_poly(&Poly::from_i64(coeffs))
    }

    pub fn from_poly(&self, p: &Poly) -> FieldElement {
        FieldElement { field: self.clone(), poly: p.rem(self.minpoly()) }
    }

    pub fn rational(&self, q: Rat) -> FieldElement {
        self.from_poly(&Poly::constant(q))
    }

    pub fn int(&self, n: i64) -> FieldElement {
        self.rational(Rat::from_integer(n.into()))
    }

    pub fn zero(&self) -> FieldElement {
        self.int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    /// The generator `θ` as a field element.
    pub fn theta(&self) -> FieldElement {
        self.from_poly(&Poly::x())
    }

    /// Re-presents `Q(θ)` with `η` as its generator, when `η` has full
    /// degree. Returns the new field and `θ` expressed in it.
    pub fn with_generator(&self, eta: &FieldElement) -> Result<(NumberField, FieldElement)> {
        self.check(eta)?;
        let d = self.degree();
        let (m, deg) = eta.minpoly();
        if deg != d {
            return Err(Error::Domain(format!("element has degree {deg}, field has degree {d}")));
        }
        // Isolate the value of η among the roots of its minimal polynomial.
        let mut theta = self.generator().clone();
        let real = loop {
            let (lo, hi) = eta.enclose(&theta);
            if lo < hi && !m.eval(&lo).is_zero() && !m.eval(&hi).is_zero() && m.count_roots(&lo, &hi) == 1 {
                break RealAlgebraic::new(m.clone(), lo, hi)?;
            }
            theta = theta.bisect();
        };
        let field = NumberField::from_generator(real)?;
        // Solve θ = Σ w_j η^j: rows of `powers` are the coordinates of η^j.
        let mut powers = Vec::with_capacity(d);
        let mut p = self.one();
        for _ in 0..d {
            powers.push(p.coords());
            p = &p * eta;
        }
        let target = self.theta().coords();
        let w = solve_left(&powers, &target).ok_or_else(|| Error::Domain("singular change of basis".into()))?;
        Ok((field.clone(), field.elt(w)))
    }

    /// Errors unless `a` lies in this field.
    pub fn check(&self, a: &FieldElement) -> Result<()> {
        if self.same_as(&a.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn same_as(&self, other: &NumberField) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.generator.same_number(&other.0.generator)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for NumberField {}

/// Solves `w · A = b` for square `A` (given by rows) over `Q`.
fn solve_left(rows: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = rows.len();
    // Augmented system Aᵗ w = b.
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut r: Vec<Rat> = (0..n).map(|j| rows[j][i].clone()).collect();
            r.push(b[i].clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = Rat::one() / &m[c][c];
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// An element of `Q(θ)`, stored as a polynomial in `θ` of degree below `d`.
#[derive(Clone)]
pub struct FieldElement {
    field: NumberField,
    poly: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn elt_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    /// Coordinates over the power basis, exactly `d` of them.
    pub fn coords(&self) -> Vec<Rat> {
        (0..self.field.degree()).map(|i| self.poly.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.poly.degree().is_none_or(|d| d == 0)
    }

    pub fn checked_add(&self, b: &FieldElement) -> Result<FieldElement> {
        self.field.check(b)?;
        Ok(FieldElement { field: self.field.clone(), poly: &self.poly + &b.poly })
    }

    pub fn checked_sub(&self, b: &FieldElement) -> Result<FieldElement> {
        self.field.check(b)?;
        Ok(FieldElement { field: self.field.clone(), poly: &self.poly - &b.poly })
    }

    pub fn checked_mul(&self, b: &FieldElement) -> Result<FieldElement> {
        self.field.check(b)?;
        Ok(self.field.from_poly(&(&self.poly * &b.poly)))
    }

    pub fn checked_div(&self, b: &FieldElement) -> Result<FieldElement> {
        self.checked_mul(&b.inverse()?)
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.poly.ext_gcd(self.field.minpoly());
        if g.degree() != Some(0) {
            // Only possible when the minimal polynomial is reducible.
            return Err(Error::Reducible(format!("common factor {g}")));
        }
        Ok(self.field.from_poly(&s))
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Matrix of `x ↦ self · x` on the power basis (columns are images).
    pub fn multiplication_matrix(&self) -> Vec<Vec<Rat>> {
        let d = self.field.degree();
        let theta = self.field.theta();
        let mut col = self.clone();
        let mut cols = Vec::with_capacity(d);
        for _ in 0..d {
            cols.push(col.coords());
            col = &col * &theta;
        }
        (0..d).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    }

    /// Monic minimal polynomial over `Q` and its degree.
    ///
    /// Computed as the squarefree part of the characteristic polynomial of
    /// the multiplication matrix.
    pub fn minpoly(&self) -> (Poly, usize) {
        let chi = charpoly(&self.multiplication_matrix());
        let m = chi.squarefree_part();
        let d = m.degree().unwrap_or(0);
        (m, d)
    }

    /// Exact sign of the real number this element denotes.
    pub fn sign(&self) -> Ordering {
        let g = &self.poly;
        if g.is_zero() {
            return Ordering::Equal;
        }
        let theta = self.field.generator();
        let (lo, hi) = theta.interval();
        if lo == hi {
            return g.sign_at(lo);
        }
        // Zero test: θ is a root of gcd(p, g).
        let h = theta.minpoly().gcd(g);
        if h.degree().is_some_and(|d| d >= 1) && h.count_roots(lo, hi) == 1 {
            return Ordering::Equal;
        }
        // g(θ) ≠ 0: shrink until g has no root near θ.
        let mut t = theta.clone();
        loop {
            let (lo, hi) = t.interval();
            if lo == hi {
                return g.sign_at(lo);
            }
            if !g.eval(lo).is_zero() && g.count_roots(lo, hi) == 0 {
                return g.sign_at(lo);
            }
            t = t.bisect();
        }
    }

    pub fn signum(&self) -> i32 {
        match self.sign() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Rational interval containing the value, from interval evaluation over
    /// the isolating interval of `θ` supplied.
    pub fn enclose(&self, theta: &RealAlgebraic) -> (Rat, Rat) {
        let (lo, hi) = theta.interval();
        let mut acc = (Rat::zero(), Rat::zero());
        for c in self.poly.coeffs().iter().rev() {
            let prods = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let mn = prods.iter().min().unwrap().clone();
            let mx = prods.iter().max().unwrap().clone();
            acc = (mn + c, mx + c);
        }
        acc
    }

    /// Non-authoritative decimal value.
    pub fn approx(&self) -> f64 {
        let eps = Rat::new(BigInt::one(), BigInt::from(1u64 << 50));
        let mut t = self.field.generator().clone();
        loop {
            let (lo, hi) = self.enclose(&t);
            if &hi - &lo < eps || t.interval().0 == t.interval().1 {
                return rat_to_f64(&((lo + hi) / Rat::from_integer(2.into())));
            }
            t = t.bisect();
        }
    }

    /// `(±1, k)` when `self = ±θ + k` with `k ∈ Z`.
    pub fn integer_translate_class(&self) -> Option<(i8, BigInt)> {
        let c = self.coords();
        if c.len() < 2 || c[2..].iter().any(|x| !x.is_zero()) || !c[0].is_integer() {
            return None;
        }
        let sign = if c[1].is_one() {
            1
        } else if (-&c[1]).is_one() {
            -1
        } else {
            return None;
        };
        Some((sign, c[0].to_integer()))
    }
}

/// `(±, k)` with `η = ±θ + k`, if any.
pub fn integer_translate_class(field: &NumberField, eta: &FieldElement) -> Result<Option<(i8, BigInt)>> {
    field.check(eta)?;
    Ok(eta.integer_translate_class())
}

/// Characteristic polynomial `det(x I - M)` by Faddeev–LeVerrier.
pub fn charpoly(m: &[Vec<Rat>]) -> Poly {
    let n = m.len();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut mk = vec![vec![Rat::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rat::zero();
                for l in 0..n {
                    if !m[i][l].is_zero() && !mk[l][j].is_zero() {
                        s += &m[i][l] * &mk[l][j];
                    }
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        mk = next;
        // c_{n-k} = -tr(A M_k) / k
        let mut tr = Rat::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &m[i][l] * &mk[l][i];
            }
        }
        coeffs[n - k] = -tr / Rat::from_integer(BigInt::from(k));
    }
    Poly::new(coeffs)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.poly == other.poly
    }
}

impl Eq for FieldElement {}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), poly: -self.poly.clone() }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Written as a polynomial in `θ`, e.g. `3θ^2 + 4θ`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let coef = if a.is_one() && i > 0 { String::new() } else { rat_to_string(&a) };
            let mono = match i {
                0 => String::new(),
                1 => "θ".to_string(),
                _ => format!("θ^{i}"),
            };
            write!(f, "{sep}{coef}{mono}")?;
        }
        Ok(())
    }
}

/// Serialized as its power-basis coordinates.
impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ser_rats(&self.coords(), s)
    }
}
