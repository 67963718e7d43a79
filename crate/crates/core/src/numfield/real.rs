use std::fmt;

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::Poly;
use crate::error::{Error, Result};
use crate::exact::{rat_to_f64, rat_to_string, Rat};

/// A real algebraic number: a monic squarefree minimal polynomial over `Q`
/// together with a rational interval `[lo, hi]` containing exactly one of
/// its roots. Rational numbers are stored with `lo = hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealAlgebraic {
    minpoly: Poly,
    lo: Rat,
    hi: Rat,
}

impl RealAlgebraic {
    pub fn new(minpoly: Poly, lo: Rat, hi: Rat) -> Result<Self> {
        let d = minpoly.degree().filter(|&d| d >= 1).ok_or(Error::NotMonic)?;
        if !minpoly.is_monic() {
            return Err(Error::NotMonic);
        }
        let bad = |count| Error::BadInterval { lo: rat_to_string(&lo), hi: rat_to_string(&hi), count };
        if lo > hi {
            return Err(bad(0));
        }
        if d == 1 {
            let r = -minpoly.coeff(0);
            if r < lo || r > hi {
                return Err(bad(0));
            }
            return Ok(RealAlgebraic { minpoly, lo: r.clone(), hi: r });
        }
        for end in [&lo, &hi] {
            if minpoly.eval(end).is_zero() {
                return Err(Error::Reducible(format!("rational root {}", rat_to_string(end))));
            }
        }
        if !minpoly.is_squarefree() {
            return Err(Error::Reducible("repeated factor".into()));
        }
        let n = minpoly.count_roots(&lo, &hi);
        if n != 1 {
            return Err(bad(n));
        }
        Ok(RealAlgebraic { minpoly, lo, hi })
    }

    pub fn rational(q: Rat) -> Self {
        RealAlgebraic { minpoly: Poly::new(vec![-q.clone(), Rat::one()]), lo: q.clone(), hi: q }
    }

    pub fn minpoly(&self) -> &Poly {
        &self.minpoly
    }

    pub fn interval(&self) -> (&Rat, &Rat) {
        (&self.lo, &self.hi)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// One bisection step; the result isolates the same root.
    pub fn bisect(&self) -> Self {
        if self.lo == self.hi {
            return self.clone();
        }
        let mid = (&self.lo + &self.hi) / Rat::from_integer(2.into());
        let s_mid = self.minpoly.sign_at(&mid);
        let (lo, hi) = if s_mid == std::cmp::Ordering::Equal {
            (mid.clone(), mid)
        } else if self.minpoly.sign_at(&self.lo) != s_mid {
            (self.lo.clone(), mid)
        } else {
            (mid, self.hi.clone())
        };
        RealAlgebraic { minpoly: self.minpoly.clone(), lo, hi }
    }

    pub fn refine_to(&self, width: &Rat) -> Self {
        let mut r = self.clone();
        while &(&r.hi - &r.lo) > width {
            r = r.bisect();
        }
        r
    }

    /// Whether both describe the same real number.
    pub fn same_number(&self, other: &RealAlgebraic) -> bool {
        if self.minpoly != other.minpoly {
            return false;
        }
        if self.is_rational() {
            return self.lo == other.lo;
        }
        let lo = (&self.lo).max(&other.lo);
        let hi = (&self.hi).min(&other.hi);
        lo < hi && self.minpoly.count_roots(lo, hi) == 1
    }

    /// Non-authoritative decimal value.
    pub fn approx(&self) -> f64 {
        let r = self.refine_to(&Rat::new(1.into(), num_bigint::BigInt::from(1u64 << 60)));
        rat_to_f64(&((&r.lo + &r.hi) / Rat::from_integer(2.into())))
    }
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in [{}, {}]", self.minpoly, rat_to_string(&self.lo), rat_to_string(&self.hi))
    }
}

impl Serialize for RealAlgebraic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RealAlgebraic", 2)?;
        let coeffs: Vec<String> = self.minpoly.coeffs().iter().map(rat_to_string).collect();
        st.serialize_field("minpoly", &coeffs)?;
        st.serialize_field("interval", &[rat_to_string(&self.lo), rat_to_string(&self.hi)])?;
        st.end()
    }
}
