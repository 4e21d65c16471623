//! Truncated formal power series over the rationals or a prime field,
//! restricted on request to a numerical-semigroup ring k[[S]].
//!
//! Every series carries an explicit precision: exponents at or past it are
//! unknown. Arithmetic propagates precision pessimistically, so equality of
//! results is always "to tracked precision". Square-root extraction uses the
//! classical coefficient recurrence (a Hensel lift along 2*s0), which is why
//! characteristic 2 is refused wherever squares are involved.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::semigroup::{NumericalSemigroup, SemigroupError};

/// Default exponent bound for freshly constructed series.
pub const DEFAULT_PRECISION: u64 = 64;
/// Construction-time precision cap (keeps O(p^2) kernels tractable).
pub const MAX_RING_PRECISION: u64 = 4096;
/// Hard cap that precision growth through multiplication never exceeds.
pub const MAX_PRECISION: u64 = 1 << 16;
/// Largest modulus or prime-field order with exhaustive arithmetic.
pub const MAX_MODULUS: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series is not a unit (valuation positive or unknown)")]
    NotAUnit,
    #[error("context mismatch: {0}")]
    ContextError(String),
    #[error("precision exceeded: {0}")]
    PrecisionExceeded(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// Coefficient field: exact rationals or the prime field of order p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

/// A single coefficient; the variant always matches the ambient `FieldKind`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Rational(BigRational),
    Prime(u64),
}

fn mismatch() -> ! {
    panic!("coefficient field mismatch, construct series through one FieldKind")
}

impl FieldKind {
    pub fn rationals() -> Self {
        FieldKind::Rationals
    }

    /// Validates primality and the exhaustive-arithmetic size cap.
    pub fn prime(p: u64) -> Result<Self, SeriesError> {
        if p > MAX_MODULUS {
            return Err(SeriesError::InvalidArgument(format!(
                "prime field order {p} exceeds the cap {MAX_MODULUS}"
            )));
        }
        if p < 2 || !crate::fibers::is_prime(p) {
            return Err(SeriesError::InvalidArgument(format!(
                "prime field order must be prime, got {p}"
            )));
        }
        Ok(FieldKind::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldKind::Rationals => Coeff::Rational(BigRational::zero()),
            FieldKind::Prime(_) => Coeff::Prime(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            FieldKind::Rationals => Coeff::Rational(BigRational::one()),
            FieldKind::Prime(_) => Coeff::Prime(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            FieldKind::Rationals => Coeff::Rational(BigRational::from(BigInt::from(v))),
            FieldKind::Prime(p) => Coeff::Prime(v.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn ratio(&self, num: i64, den: i64) -> Result<Coeff, SeriesError> {
        if den == 0 {
            return Err(SeriesError::InvalidArgument("zero denominator".into()));
        }
        match self {
            FieldKind::Rationals => Ok(Coeff::Rational(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldKind::Prime(_) => {
                let d = self.from_i64(den);
                let inv = self
                    .inv(&d)
                    .ok_or_else(|| SeriesError::InvalidArgument("zero denominator".into()))?;
                Ok(self.mul(&self.from_i64(num), &inv))
            }
        }
    }

    pub fn is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Rational(r) => r.is_zero(),
            Coeff::Prime(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldKind::Rationals, Coeff::Rational(x), Coeff::Rational(y)) => {
                Coeff::Rational(x + y)
            }
            (FieldKind::Prime(p), Coeff::Prime(x), Coeff::Prime(y)) => {
                Coeff::Prime((x + y) % p)
            }
            _ => mismatch(),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldKind::Rationals, Coeff::Rational(x)) => Coeff::Rational(-x),
            (FieldKind::Prime(p), Coeff::Prime(x)) => Coeff::Prime((p - x) % p),
            _ => mismatch(),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldKind::Rationals, Coeff::Rational(x), Coeff::Rational(y)) => {
                Coeff::Rational(x * y)
            }
            (FieldKind::Prime(p), Coeff::Prime(x), Coeff::Prime(y)) => {
                Coeff::Prime((x * y) % p)
            }
            _ => mismatch(),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        match (self, a) {
            (FieldKind::Rationals, Coeff::Rational(x)) => {
                (!x.is_zero()).then(|| Coeff::Rational(x.recip()))
            }
            (FieldKind::Prime(p), Coeff::Prime(x)) => {
                (*x != 0).then(|| Coeff::Prime(pow_mod(*x, p - 2, *p)))
            }
            _ => mismatch(),
        }
    }

    /// Exact square root in the field, `None` when no root exists.
    pub fn sqrt(&self, c: &Coeff) -> Option<Coeff> {
        match (self, c) {
            (FieldKind::Rationals, Coeff::Rational(x)) => {
                if x.is_negative() {
                    return None;
                }
                let (n, d) = (x.numer(), x.denom());
                let (rn, rd) = (n.sqrt(), d.sqrt());
                (&rn * &rn == *n && &rd * &rd == *d)
                    .then(|| Coeff::Rational(BigRational::new(rn, rd)))
            }
            (FieldKind::Prime(p), Coeff::Prime(x)) => {
                // field order is capped, a scan is exact and cheap
                (0..*p).find(|y| (y * y) % p == *x).map(Coeff::Prime)
            }
            _ => mismatch(),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Prime(v) => write!(f, "{v}"),
        }
    }
}

/// Order of vanishing, with an explicit "at least the precision" sentinel
/// for series indistinguishable from zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(u64),
    AtLeast(u64),
}

impl Valuation {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(p) => write!(f, ">={p}"),
        }
    }
}

/// A power series known up to (but excluding) exponent `precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: FieldKind,
    coeffs: BTreeMap<u64, Coeff>,
    precision: u64,
}

impl TruncatedSeries {
    pub fn zero(field: FieldKind, precision: u64) -> Self {
        TruncatedSeries {
            field,
            coeffs: BTreeMap::new(),
            precision: precision.min(MAX_PRECISION),
        }
    }

    pub fn constant(field: FieldKind, c: Coeff, precision: u64) -> Self {
        Self::from_terms(field, [(0, c)], precision)
    }

    pub fn one(field: FieldKind, precision: u64) -> Self {
        Self::constant(field, field.one(), precision)
    }

    pub fn monomial(field: FieldKind, exp: u64, c: Coeff, precision: u64) -> Self {
        Self::from_terms(field, [(exp, c)], precision)
    }

    /// Sums duplicate exponents, drops zeros and anything past the precision.
    pub fn from_terms(
        field: FieldKind,
        terms: impl IntoIterator<Item = (u64, Coeff)>,
        precision: u64,
    ) -> Self {
        let precision = precision.min(MAX_PRECISION);
        let mut coeffs: BTreeMap<u64, Coeff> = BTreeMap::new();
        for (e, c) in terms {
            if e >= precision {
                continue;
            }
            let entry = coeffs.entry(e).or_insert_with(|| field.zero());
            *entry = field.add(entry, &c);
        }
        coeffs.retain(|_, c| !field.is_zero(c));
        TruncatedSeries {
            field,
            coeffs,
            precision,
        }
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, Coeff> {
        &self.coeffs
    }

    pub fn coeff(&self, e: u64) -> Coeff {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.keys().next() {
            Some(&v) => Valuation::Finite(v),
            None => Valuation::AtLeast(self.precision),
        }
    }

    fn valuation_floor(&self) -> u64 {
        match self.valuation() {
            Valuation::Finite(v) => v,
            Valuation::AtLeast(p) => p,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        let terms = self
            .coeffs
            .iter()
            .chain(other.coeffs.iter())
            .map(|(&e, c)| (e, c.clone()));
        Self::from_terms(self.field, terms, precision)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e, self.field.neg(c)))
                .collect(),
            precision: self.precision,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let terms = self.coeffs.iter().map(|(&e, x)| (e, self.field.mul(x, c)));
        Self::from_terms(self.field, terms, self.precision)
    }

    /// Product precision is min(p1 + v2, p2 + v1), capped.
    pub fn mul(&self, other: &Self) -> Self {
        let precision = (self.precision + other.valuation_floor())
            .min(other.precision + self.valuation_floor())
            .min(MAX_PRECISION);
        let mut terms = Vec::new();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                if e1 + e2 < precision {
                    terms.push((e1 + e2, self.field.mul(c1, c2)));
                }
            }
        }
        Self::from_terms(self.field, terms, precision)
    }

    /// Multiplies by X^e, shifting known exponents and the precision alike.
    pub fn mul_monomial(&self, e: u64) -> Self {
        let terms = self.coeffs.iter().map(|(&k, c)| (k + e, c.clone()));
        Self::from_terms(self.field, terms, (self.precision + e).min(MAX_PRECISION))
    }

    /// Substitutes X -> X^2; knowing f mod X^p gives f(X^2) mod X^{2p}.
    pub fn substitute_square(&self) -> Self {
        let terms = self.coeffs.iter().map(|(&k, c)| (2 * k, c.clone()));
        Self::from_terms(self.field, terms, (2 * self.precision).min(MAX_PRECISION))
    }

    pub fn truncated(&self, precision: u64) -> Self {
        let terms = self.coeffs.iter().map(|(&e, c)| (e, c.clone()));
        Self::from_terms(self.field, terms, precision.min(self.precision))
    }

    /// Equality on the common known range.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let p = self.precision.min(other.precision);
        self.truncated(p).coeffs == other.truncated(p).coeffs
    }

    /// True when every known exponent lies in the semigroup.
    pub fn supported_on(&self, s: &NumericalSemigroup) -> bool {
        self.coeffs.keys().all(|&e| s.contains(e as i64))
    }

    /// Reciprocal of a unit series, to this series' precision.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        if !self.is_unit() {
            return Err(SeriesError::NotAUnit);
        }
        let f = self.field;
        let c0 = self.coeff(0);
        let c0_inv = f.inv(&c0).expect("unit constant term");
        let mut inv: Vec<Coeff> = Vec::with_capacity(self.precision as usize);
        inv.push(c0_inv.clone());
        for n in 1..self.precision {
            let mut acc = f.zero();
            for (&k, c) in self.coeffs.range(1..=n) {
                acc = f.add(&acc, &f.mul(c, &inv[(n - k) as usize]));
            }
            inv.push(f.neg(&f.mul(&c0_inv, &acc)));
        }
        Ok(Self::from_terms(
            f,
            inv.into_iter().enumerate().map(|(e, c)| (e as u64, c)),
            self.precision,
        ))
    }

    /// Square root witness in k[[X]], `None` when the series is not a square
    /// in k((X)). The decision needs an even valuation and a square leading
    /// coefficient; the rest of the root is forced by the coefficient
    /// recurrence s_k = (u_k - sum s_j s_{k-j}) / (2 s_0).
    pub fn square_root(&self) -> Result<Option<Self>, SeriesError> {
        if self.field.characteristic() == 2 {
            return Err(SeriesError::Unsupported(
                "square testing needs characteristic different from 2".into(),
            ));
        }
        let v = match self.valuation() {
            Valuation::Finite(v) => v,
            Valuation::AtLeast(_) => {
                return Err(SeriesError::InvalidArgument(
                    "series is zero to tracked precision, squareness is undecidable".into(),
                ))
            }
        };
        if v % 2 == 1 {
            return Ok(None);
        }
        let f = self.field;
        // unit part u with u(0) != 0
        let u = Self::from_terms(
            f,
            self.coeffs.iter().map(|(&e, c)| (e - v, c.clone())),
            self.precision - v,
        );
        let s0 = match f.sqrt(&u.coeff(0)) {
            Some(r) => r,
            None => return Ok(None),
        };
        let two_s0_inv = f
            .inv(&f.add(&s0, &s0))
            .expect("2*s0 invertible away from characteristic 2");
        let n = u.precision as usize;
        let mut s: Vec<Coeff> = Vec::with_capacity(n);
        s.push(s0);
        for k in 1..n {
            let mut conv = f.zero();
            for j in 1..k {
                conv = f.add(&conv, &f.mul(&s[j], &s[k - j]));
            }
            let num = f.sub(&u.coeff(k as u64), &conv);
            s.push(f.mul(&num, &two_s0_inv));
        }
        let root = Self::from_terms(
            f,
            s.into_iter()
                .enumerate()
                .map(|(e, c)| (e as u64 + v / 2, c)),
            u.precision + v / 2,
        );
        debug_assert!(root.mul(&root).agrees_with(self));
        Ok(Some(root))
    }
}

/// Whether t^2 - b is irreducible over k((X)): exactly when b is a non-square.
pub fn irreducible_t2_minus_b(b: &TruncatedSeries) -> Result<bool, SeriesError> {
    Ok(b.square_root()?.is_none())
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let one = self.field.one();
        for (k, (&e, c)) in self.coeffs.iter().enumerate() {
            let (neg, body) = match c {
                Coeff::Rational(r) if r.is_negative() => (true, self.field.neg(c)),
                _ => (false, c.clone()),
            };
            if neg {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let body_is_one = body == one;
            match (e, body_is_one) {
                (0, _) => write!(f, "{body}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{body}*X")?,
                (_, true) => write!(f, "X^{e}")?,
                (_, false) => write!(f, "{body}*X^{e}")?,
            }
        }
        Ok(())
    }
}

/// A series constrained to k[[S]] for a fixed numerical semigroup S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupRingElement {
    series: TruncatedSeries,
    ambient: NumericalSemigroup,
}

impl SemigroupRingElement {
    pub fn new(
        series: TruncatedSeries,
        ambient: NumericalSemigroup,
    ) -> Result<Self, SeriesError> {
        if let Some(&e) = series.coeffs().keys().find(|&&e| !ambient.contains(e as i64)) {
            return Err(SeriesError::InvalidArgument(format!(
                "exponent {e} lies outside the semigroup {ambient}"
            )));
        }
        Ok(SemigroupRingElement { series, ambient })
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn ambient(&self) -> &NumericalSemigroup {
        &self.ambient
    }

    pub fn valuation(&self) -> Valuation {
        self.series.valuation()
    }

    fn check_ambient(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ambient != other.ambient {
            return Err(SeriesError::ContextError(
                "semigroup ring elements have different ambients".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ambient(other)?;
        Self::new(self.series.add(&other.series), self.ambient.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ambient(other)?;
        // closure holds because S is additively closed, new() re-certifies
        Self::new(self.series.mul(&other.series), self.ambient.clone())
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.series.agrees_with(&other.series)
    }
}

/// The doubling homomorphism into k[[T]] for T the duplication of (S, E):
/// r(X) + i(X)t maps to r(X^2) + i(X^2) X^m.
///
/// Requires a context over k[[S]] with a = 0 and b exactly -X^m, so that
/// t^2 = X^m holds in the quotient.
pub fn phi_map(
    x: &crate::family::FamilyElement,
    m: u64,
) -> Result<SemigroupRingElement, SeriesError> {
    use crate::base::{BaseRing, Scalar};

    let ctx = x.ctx();
    let ring = match ctx.base() {
        BaseRing::Series(ring) => ring,
        _ => {
            return Err(SeriesError::ContextError(
                "the doubling map needs a series base ring".into(),
            ))
        }
    };
    let e = ctx.ideal().value_set().ok_or_else(|| {
        SeriesError::ContextError("the doubling map needs a monomial ideal".into())
    })?;
    if m % 2 == 0 || !ring.semigroup.contains(m as i64) {
        return Err(SeriesError::InvalidArgument(format!(
            "m = {m} must be an odd member of the semigroup"
        )));
    }
    let (a, b) = (ctx.a(), ctx.b());
    let zero_a = matches!(a, Scalar::Series(sa) if sa.is_zero());
    if !zero_a {
        return Err(SeriesError::ContextError(
            "the doubling map needs a = 0".into(),
        ));
    }
    let b_ok = matches!(b, Scalar::Series(sb) if {
        let minus_one = ring.field.neg(&ring.field.one());
        sb.coeffs().len() == 1 && sb.coeff(m) == minus_one
    });
    if !b_ok {
        return Err(SeriesError::ContextError(format!(
            "the doubling map needs b = -X^{m} exactly"
        )));
    }
    let (r, i) = match (x.r(), x.i()) {
        (Scalar::Series(r), Scalar::Series(i)) => (r, i),
        _ => unreachable!("series context carries series scalars"),
    };
    let image = r
        .substitute_square()
        .add(&i.substitute_square().mul_monomial(m));
    let t = crate::semigroup::duplication(&ring.semigroup, e, m as i64)?;
    SemigroupRingElement::new(image, t.semigroup)
}
