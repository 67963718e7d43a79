//! Deciding `B_θ ≅ B_η` and enumerating the `η` equivalent to a given `θ`.
//!
//! The decision compares the subgroups `Z + θZ + θ²Z` and `Z + ηZ + η²Z` of
//! `R` as lattices in power-basis coordinates of `Q(θ)`. This is bound-free.
//! Every positive verdict carries a matrix `A ∈ GL(3,Z)` with
//! `A (1, θ, θ²)ᵗ = (1, η, η²)ᵗ`, re-verified by exact arithmetic.

mod cubic;
mod quadratic;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{frac_part, Rat};
use crate::intlat::{smith_normal_form, solve_integer, IntMatrix};
use crate::ktheory::trace_range_of;
use crate::numfield::{FieldElement, NumberField, QuadraticForm};

pub use cubic::{
    cubic_curve_report, cubic_form_solutions, cubic_integer_points, cubic_matrix, verify_nonsingular_cubic,
    CubicCurveReport,
};
pub use quadratic::quadratic_equivalents;

/// Default search bound for the degree-3 Thue-type search.
pub const DEFAULT_BOUND: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    IsomorphicUpToBoundIncomplete,
}

/// A matrix `A ∈ GL(3,Z)` with `A (1, s, s²)ᵗ = (1, t, t²)ᵗ` for `s, t ∈ Q(θ)`.
#[derive(Debug, Clone)]
pub struct Certificate {
    matrix: IntMatrix,
    source: FieldElement,
    target: FieldElement,
}

fn triple(x: &FieldElement) -> [FieldElement; 3] {
    let f = x.field();
    [f.one(), x.clone(), x * x]
}

impl Certificate {
    /// Checks the certificate and wraps it; `None` if it does not verify.
    pub fn new(matrix: IntMatrix, source: FieldElement, target: FieldElement) -> Option<Self> {
        let c = Certificate { matrix, source, target };
        c.verify().then_some(c)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source(&self) -> &FieldElement {
        &self.source
    }

    pub fn target(&self) -> &FieldElement {
        &self.target
    }

    /// Recomputes `det A = ±1` and `A (1, s, s²)ᵗ = (1, t, t²)ᵗ` from scratch.
    pub fn verify(&self) -> bool {
        if self.matrix.rows() != 3 || self.matrix.cols() != 3 || !self.matrix.is_unimodular() {
            return false;
        }
        if self.source.field() != self.target.field() {
            return false;
        }
        let f = self.source.field();
        let src = triple(&self.source);
        let dst = triple(&self.target);
        (0..3).all(|i| {
            let mut acc = f.zero();
            for (j, s) in src.iter().enumerate() {
                let a = &self.matrix[(i, j)];
                if !a.is_zero() {
                    acc = &acc + &(&f.rational(Rat::from_integer(a.clone())) * s);
                }
            }
            acc == dst[i]
        })
    }

    /// `other ∘ self`: from `self.source` to `other.target`.
    pub fn then(&self, other: &Certificate) -> Option<Certificate> {
        if self.target != other.source {
            return None;
        }
        Certificate::new(other.matrix.try_mul(&self.matrix).ok()?, self.source.clone(), other.target.clone())
    }

    /// The certificate from `target` back to `source`.
    pub fn inverse(&self) -> Option<Certificate> {
        let s = smith_normal_form(&self.matrix);
        if s.d != IntMatrix::identity(3) {
            return None;
        }
        Certificate::new(&s.v * &s.u, self.target.clone(), self.source.clone())
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Certificate", 4)?;
        st.serialize_field("matrix", &self.matrix)?;
        st.serialize_field("theta", self.source.field().generator())?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("target", &self.target)?;
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub degree: usize,
    pub case: String,
    pub bound: Option<u64>,
    /// `(sign, k)` when `η = sign·θ + k`.
    #[serde(serialize_with = "ser_translate")]
    pub translate: Option<(i8, BigInt)>,
    pub notes: Vec<String>,
}

fn ser_translate<S: Serializer>(v: &Option<(i8, BigInt)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(|(sg, k)| (sg, k.to_string())).serialize(s)
}

fn case_name(degree: usize) -> &'static str {
    match degree {
        2 => "quadratic",
        3 => "cubic",
        4 => "quartic",
        _ => "degree_above_4",
    }
}

pub const QUADRATIC_ASSUMPTION: &str =
    "degree 2: equality of Z + θZ + θ²Z and Z + ηZ + η²Z is taken as the isomorphism criterion";

/// Whether `B_θ ≅ B_η`, for `θ` the generator of `field` and `η ∈ Q(θ)`.
pub fn decide_isomorphic(field: &NumberField, eta: &FieldElement) -> Result<ClassificationResult> {
    field.check(eta)?;
    let degree = field.degree();
    if degree < 2 {
        return Err(Error::Rational(field.minpoly().to_string()));
    }
    if eta.is_rational() {
        return Err(Error::Rational(eta.to_string()));
    }
    let theta = field.theta();
    let equal = trace_range_of(&theta)?.equals(&trace_range_of(eta)?)?;
    let mut notes = Vec::new();
    if degree == 2 {
        notes.push(QUADRATIC_ASSUMPTION.to_string());
    }
    let translate = eta.integer_translate_class();
    let certificate = if equal { certificate_for(field, eta)? } else { None };
    if equal && translate.is_none() {
        notes.push("η is not ±θ mod Z".to_string());
    }
    let verdict = match (equal, &certificate) {
        (true, Some(_)) => Verdict::Isomorphic,
        (false, _) => Verdict::NotIsomorphic,
        (true, None) => return Err(Error::Domain("equal lattices but no certificate found".into())),
    };
    Ok(ClassificationResult {
        verdict,
        certificate,
        degree,
        case: case_name(degree).to_string(),
        bound: None,
        translate,
        notes,
    })
}

/// As [`decide_isomorphic`], with both numbers given as quadratic surds.
pub fn decide_isomorphic_quadratic(theta: &QuadraticForm, eta: &QuadraticForm) -> Result<ClassificationResult> {
    let (field, _) = theta.parse()?;
    if theta.radicand() != eta.radicand() {
        return Ok(ClassificationResult {
            verdict: Verdict::NotIsomorphic,
            certificate: None,
            degree: 2,
            case: case_name(2).to_string(),
            bound: None,
            translate: None,
            notes: vec![format!(
                "Q(√{}) ≠ Q(√{}): the rational spans of the trace ranges differ",
                theta.radicand(),
                eta.radicand()
            )],
        });
    }
    decide_isomorphic(&field, &quadratic_in(theta, eta, &field))
}

/// `η = (x + y√k)/z` as an element of `Q(θ)`, `θ` a surd over the same `k`.
pub fn quadratic_in(theta: &QuadraticForm, eta: &QuadraticForm, field: &NumberField) -> FieldElement {
    let s = theta.sqrt_k_in(field);
    let z = Rat::from_integer(eta.z().clone());
    let x = field.rational(Rat::from_integer(eta.x().clone()) / &z);
    let y = field.rational(Rat::from_integer(eta.y().clone()) / &z);
    &x + &(&y * &s)
}

fn translate_matrix(sign: i8, k: &BigInt) -> IntMatrix {
    let s = BigInt::from(sign);
    let mut m = IntMatrix::zeros(3, 3);
    m[(0, 0)] = BigInt::one();
    m[(1, 0)] = k.clone();
    m[(1, 1)] = s.clone();
    m[(2, 0)] = k * k;
    m[(2, 1)] = s * 2 * k;
    m[(2, 2)] = BigInt::one();
    m
}

/// A verified certificate for `θ ~ η`, or `None` if there is none.
pub fn certificate_for(field: &NumberField, eta: &FieldElement) -> Result<Option<Certificate>> {
    field.check(eta)?;
    let theta = field.theta();
    if let Some((sign, k)) = eta.integer_translate_class() {
        return Ok(Certificate::new(translate_matrix(sign, &k), theta, eta.clone()));
    }
    let rows = triple(eta).map(|t| t.coords());
    if field.degree() >= 3 {
        // 1, θ, θ² are independent: the coordinates are the only candidate.
        if rows.iter().any(|r| r[3..].iter().any(|c| !c.is_zero()) || r[..3].iter().any(|c| !c.is_integer())) {
            return Ok(None);
        }
        let m = IntMatrix::from_rows(&rows.iter().map(|r| r[..3].iter().map(|c| c.to_integer()).collect()).collect::<Vec<Vec<BigInt>>>())?;
        return Ok(Certificate::new(m, theta, eta.clone()));
    }
    Ok(quadratic_certificate(field, eta))
}

/// Degree 2: each row `r` solves `r · (1, θ, θ²) = target`, a coset of the
/// rank-1 relation lattice; pick the offsets so that `det = ±1`.
fn quadratic_certificate(field: &NumberField, eta: &FieldElement) -> Option<Certificate> {
    let theta = field.theta();
    let src = triple(&theta).map(|t| t.coords());
    let dst = triple(eta).map(|t| t.coords());
    let den = crate::exact::lcm_denominators(src.iter().chain(dst.iter()).flatten());
    let scale = |v: &Rat| (v * Rat::from_integer(den.clone())).to_integer();
    // 2×3 system: column j = coordinates of the j-th source generator.
    let mut t = IntMatrix::zeros(2, 3);
    for (j, s) in src.iter().enumerate() {
        for i in 0..2 {
            t[(i, j)] = scale(&s[i]);
        }
    }
    let mut particular = Vec::new();
    let mut kernel = None;
    for d in &dst {
        let b: Vec<BigInt> = d.iter().map(scale).collect();
        let (x, k) = solve_integer(&t, &b)?;
        particular.push(x);
        kernel = Some(k);
    }
    let kernel = kernel?;
    if kernel.rows() != 1 {
        return None;
    }
    let n = kernel.row(0).to_vec();
    // Keep row 0 at (1, 0, 0) when possible.
    let e1 = vec![BigInt::one(), BigInt::zero(), BigInt::zero()];
    for first_fixed in [true, false] {
        let mut x0 = particular.clone();
        if first_fixed {
            x0[0] = e1.clone();
        }
        let free: Vec<usize> = if first_fixed { vec![1, 2] } else { vec![0, 1, 2] };
        let base = IntMatrix::from_rows(&x0).ok()?;
        let d0 = base.det().ok()?;
        let coeffs: Vec<BigInt> = free
            .iter()
            .map(|&i| {
                let mut m = x0.clone();
                m[i] = n.clone();
                IntMatrix::from_rows(&m).unwrap().det().unwrap()
            })
            .collect();
        for target in [BigInt::one(), -BigInt::one()] {
            if let Some(ts) = solve_linear_diophantine(&coeffs, &(&target - &d0)) {
                let mut rows = x0.clone();
                for (&i, t) in free.iter().zip(&ts) {
                    for (r, nv) in rows[i].iter_mut().zip(&n) {
                        *r += t * nv;
                    }
                }
                let m = IntMatrix::from_rows(&rows).ok()?;
                if let Some(c) = Certificate::new(m, theta.clone(), eta.clone()) {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Integers `t` with `Σ cᵢ tᵢ = rhs`, if any.
fn solve_linear_diophantine(c: &[BigInt], rhs: &BigInt) -> Option<Vec<BigInt>> {
    // Fold extended gcds: g = Σ cᵢ uᵢ.
    let mut g = BigInt::zero();
    let mut u: Vec<BigInt> = vec![BigInt::zero(); c.len()];
    for (i, ci) in c.iter().enumerate() {
        let e = g.extended_gcd(ci);
        for uj in u.iter_mut().take(i) {
            *uj *= &e.x;
        }
        u[i] = e.y;
        g = e.gcd;
    }
    if g.is_zero() {
        return rhs.is_zero().then(|| vec![BigInt::zero(); c.len()]);
    }
    if !rhs.is_multiple_of(&g) {
        return None;
    }
    let f = rhs / &g;
    Some(u.into_iter().map(|x| x * &f).collect())
}

/// Representative of `{±η + k}`: the constant coordinate reduced to `[0, 1)`,
/// lexicographically smaller of the two signs.
pub fn normalize_class(eta: &FieldElement) -> FieldElement {
    let f = eta.field();
    let reduce = |c: Vec<Rat>| {
        let mut c = c;
        c[0] = frac_part(&c[0]);
        c
    };
    let pos = reduce(eta.coords());
    let neg = reduce((-eta).coords());
    let pick = if lex_cmp(&neg, &pos) == Ordering::Less { neg } else { pos };
    f.elt(pick)
}

fn lex_cmp(a: &[Rat], b: &[Rat]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// `b = ±a + k` for some integer `k`.
pub fn same_translate_class(a: &FieldElement, b: &FieldElement) -> bool {
    (a - b).is_rational() && (a - b).coords()[0].is_integer()
        || (a + b).is_rational() && (a + b).coords()[0].is_integer()
}

/// One class `{±η + Z}` equivalent to `θ`.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalentClass {
    /// The member found by the search.
    pub eta: FieldElement,
    /// Normalized representative of the class.
    pub representative: FieldElement,
    pub certificate: Certificate,
    /// `(a, b)` with `η = aθ + bθ²`, for the cubic and quartic searches.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_point")]
    pub point: Option<(BigInt, BigInt)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surd: Option<QuadraticForm>,
}

fn ser_point<S: Serializer>(v: &Option<(BigInt, BigInt)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(|(a, b)| [a.to_string(), b.to_string()]).serialize(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalentsList {
    pub entries: Vec<EquivalentClass>,
    pub complete: bool,
    pub bound: Option<u64>,
    pub degree: usize,
    pub case: String,
    pub notes: Vec<String>,
}

impl EquivalentsList {
    fn new(degree: usize, complete: bool, bound: Option<u64>) -> Self {
        EquivalentsList { entries: Vec::new(), complete, bound, degree, case: case_name(degree).to_string(), notes: Vec::new() }
    }

    /// Adds `η` unless its class is already present. Returns whether it was added.
    fn push(&mut self, certificate: Certificate, point: Option<(BigInt, BigInt)>, surd: Option<QuadraticForm>) -> bool {
        let eta = certificate.target().clone();
        let representative = normalize_class(&eta);
        if self.entries.iter().any(|e| e.representative == representative) {
            return false;
        }
        self.entries.push(EquivalentClass { eta, representative, certificate, point, surd });
        true
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains_class(&self, eta: &FieldElement) -> bool {
        let r = normalize_class(eta);
        self.entries.iter().any(|e| e.representative == r)
    }
}

/// The quartic `μ`-test.
#[derive(Debug, Clone, Serialize)]
pub struct QuarticTest {
    #[serde(serialize_with = "crate::exact::ser_rat")]
    pub mu: Rat,
    #[serde(serialize_with = "ser_opt_bigint")]
    pub k: Option<BigInt>,
    /// `A = [[1,0,0],[0,a,b],[c,d,e]]` when `k` passes.
    pub matrix: Option<IntMatrix>,
    /// Why a cube `1/μ = k³` was rejected (non-integral or non-unimodular `A`).
    pub rejected: Option<String>,
}

fn ser_opt_bigint<S: Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(|k| k.to_string()).serialize(s)
}

impl QuarticTest {
    /// `ζ = aθ + bθ²` as `(a, b)`.
    pub fn zeta_coeffs(&self) -> Option<(BigInt, BigInt)> {
        let m = self.matrix.as_ref()?;
        Some((m[(1, 1)].clone(), m[(1, 2)].clone()))
    }
}

fn int_cube_root(n: &BigInt) -> Option<BigInt> {
    let r = n.cbrt();
    (&r * &r * &r == *n).then_some(r)
}

/// `μ = ⅛λ₃³ − ½λ₃λ₂ + λ₁` for `x⁴ + λ₃x³ + λ₂x² + λ₁x + λ₀`, and the `k` with `1/μ = k³`.
pub fn degree4_mu(l3: &Rat, l2: &Rat, l1: &Rat, l0: &Rat) -> QuarticTest {
    let r = |n: i64, d: i64| Rat::new(n.into(), d.into());
    let mu = r(1, 8) * l3 * l3 * l3 - r(1, 2) * l3 * l2 + l1;
    let mut out = QuarticTest { mu: mu.clone(), k: None, matrix: None, rejected: None };
    if mu.is_zero() || !mu.numer().abs().is_one() {
        return out;
    }
    let inv = mu.recip().to_integer();
    let Some(k) = int_cube_root(&inv) else {
        return out;
    };
    let kq = Rat::from_integer(k.clone());
    let a = r(1, 2) * &kq * l3;
    let e = r(1, 4) * &kq * &kq * l3 * l3 - &kq * &kq * l2;
    let d = -(&kq * &kq * l1);
    let c = -(&kq * &kq * l0);
    if ![&a, &c, &d, &e].iter().all(|v| v.is_integer()) {
        out.rejected = Some(format!(
            "k = {k}: entries a = {a}, c = {c}, d = {d}, e = {e} are not all integers"
        ));
        return out;
    }
    let m = IntMatrix::from_rows(&[
        vec![BigInt::one(), BigInt::zero(), BigInt::zero()],
        vec![BigInt::zero(), a.to_integer(), k.clone()],
        vec![c.to_integer(), d.to_integer(), e.to_integer()],
    ])
    .expect("3x3");
    if m.det().expect("square") != BigInt::one() {
        out.rejected = Some(format!("k = {k}: det A ≠ 1"));
        return out;
    }
    out.k = Some(k);
    out.matrix = Some(m);
    out
}

/// All classes `{±η + Z}` with `B_η ≅ B_θ`, `θ` the generator of `field`.
///
/// Complete for degree 2 and degree ≥ 4; for degree 3 complete only up to `bound`.
pub fn enumerate_equivalents(field: &NumberField, bound: u64) -> Result<EquivalentsList> {
    let degree = field.degree();
    if degree < 2 {
        return Err(Error::Rational(field.minpoly().to_string()));
    }
    let theta = field.theta();
    let identity = Certificate::new(IntMatrix::identity(3), theta.clone(), theta.clone()).expect("identity");
    let p = field.minpoly();
    match degree {
        2 => {
            let q = QuadraticForm::canonical(field)?;
            let mut list = quadratic_equivalents(&q)?;
            // Re-home into the caller's field.
            for e in &mut list.entries {
                let surd = e.surd.clone().expect("quadratic entries carry a surd");
                let eta = quadratic_in(&q, &surd, field);
                e.certificate = Certificate::new(e.certificate.matrix().clone(), theta.clone(), eta.clone())
                    .expect("same number in an equal field");
                e.representative = normalize_class(&eta);
                e.eta = eta;
            }
            Ok(list)
        }
        3 => {
            let mut list = EquivalentsList::new(3, false, Some(bound));
            list.notes.push(format!(
                "cubic case: integer points searched with |a|, |b| ≤ {bound}; complete only up to this bound"
            ));
            if !field.irreducibility_checked() {
                list.notes.push("irreducibility not checked".into());
            }
            let (l2, l1, l0) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let pc = Rat::from_integer((-2).into()) * &l2;
            let qc = &l2 * &l2 + &l1;
            let rc = &l0 - &l1 * &l2;
            list.push(identity, None, None);
            for (a, b) in cubic_integer_points(&pc, &qc, &rc, bound) {
                let eta = field.elt(vec![Rat::zero(), Rat::from_integer(a.clone()), Rat::from_integer(b.clone())]);
                let m = cubic_matrix(&l2, &l1, &l0, &a, &b).expect("filtered points reconstruct");
                let cert = Certificate::new(m, theta.clone(), eta).ok_or_else(|| {
                    Error::Domain(format!("certificate for point ({a}, {b}) failed to verify"))
                })?;
                list.push(cert, Some((a, b)), None);
            }
            Ok(list)
        }
        4 => {
            let mut list = EquivalentsList::new(4, true, None);
            list.push(identity, None, None);
            let t = degree4_mu(&p.coeff(3), &p.coeff(2), &p.coeff(1), &p.coeff(0));
            list.notes.push(format!("quartic case: μ = {}", crate::exact::rat_to_string(&t.mu)));
            if let Some(r) = &t.rejected {
                list.notes.push(format!("candidate rejected: {r}"));
            }
            if let (Some(m), Some((a, b))) = (&t.matrix, t.zeta_coeffs()) {
                let zeta = field.elt(vec![Rat::zero(), Rat::from_integer(a.clone()), Rat::from_integer(b.clone())]);
                let cert = Certificate::new(m.clone(), theta.clone(), zeta)
                    .ok_or_else(|| Error::Domain("ζ certificate failed to verify".into()))?;
                list.push(cert, Some((a, b)), None);
            }
            Ok(list)
        }
        _ => {
            let mut list = EquivalentsList::new(degree, true, None);
            if !field.irreducibility_checked() {
                list.notes.push(format!(
                    "irreducibility of the degree {degree} polynomial was not checked; assuming it"
                ));
            }
            list.push(identity, None, None);
            Ok(list)
        }
    }
}
