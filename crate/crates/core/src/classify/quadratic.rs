//! Degree 2: every `η` with `Z + ηZ + η²Z = Z + θZ + θ²Z` is found among
//! finitely many candidates `(x + y√k)/z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{certificate_for, quadratic_in, Certificate, EquivalentsList, QUADRATIC_ASSUMPTION};
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::intlat::IntMatrix;
use crate::ktheory::trace_range_of;
use crate::numfield::QuadraticForm;

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            let j = &n / &i;
            if j != i {
                large.push(j);
            }
            small.push(i.clone());
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All classes `{±η + Z}` with `G_η = G_θ`, for `θ = (a + b√k)/c`.
///
/// Candidates satisfy `z | c²` and `|y|/(z w) = |b|/(c d)`, where `d` and `w`
/// are the reduced denominators of `2a/c` and `2x/z`; each is then tested by
/// lattice equality.
pub fn quadratic_equivalents(theta: &QuadraticForm) -> Result<EquivalentsList> {
    let (field, t) = theta.parse()?;
    let (a, b, c) = (theta.x(), theta.y(), theta.z());
    if !c.is_positive() || b.is_zero() {
        return Err(Error::NonCanonical(theta.to_string()));
    }
    let target = trace_range_of(&t)?;
    let d = Rat::new(BigInt::from(2) * a, c.clone()).denom().clone();
    let mut list = EquivalentsList::new(2, true, None);
    list.notes.push(QUADRATIC_ASSUMPTION.to_string());
    let own = Certificate::new(IntMatrix::identity(3), t.clone(), t.clone()).expect("identity");
    list.push(own, None, Some(theta.clone()));
    let cd = c * &d;
    for z in positive_divisors(&(c * c)) {
        for w in positive_divisors(&z) {
            let num = b.abs() * &z * &w;
            if !num.is_multiple_of(&cd) {
                continue;
            }
            let y = num / &cd;
            let mut x = BigInt::zero();
            while x < z {
                let denom_ok = Rat::new(BigInt::from(2) * &x, z.clone()).denom() == &w;
                if denom_ok && x.gcd(&y).gcd(&z).is_one() {
                    let q = QuadraticForm::from_parts(x.clone(), y.clone(), z.clone(), theta.radicand().clone(), BigInt::one())?;
                    let eta = quadratic_in(theta, &q, &field);
                    if trace_range_of(&eta)?.equals(&target)? {
                        let cert = certificate_for(&field, &eta)?.ok_or_else(|| {
                            Error::Domain(format!("no certificate for {q} despite equal lattices"))
                        })?;
                        list.push(cert, None, Some(q));
                    }
                }
                x += 1;
            }
        }
    }
    Ok(list)
}
