//! Runtime-dispatched base rings: the integers, Z/n with exhaustive
//! arithmetic for small n, and truncated series rings k[[S]].
//!
//! Everything the quotient-family construction needs from a base is here:
//! scalars, units, zero divisors, and finitely generated ideals with a
//! decidable membership test.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::semigroup::{NumericalSemigroup, RelativeIdeal, SemigroupError};
use crate::series::{
    FieldKind, SeriesError, TruncatedSeries, MAX_MODULUS, MAX_RING_PRECISION,
};

/// Cap on the number of ideal generators accepted from input.
pub const MAX_IDEAL_GENERATORS: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("context mismatch: {0}")]
    ContextError(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("denominator is a zero divisor")]
    NotRegular,
    #[error("not a factorization of t^2+at+b: {0}")]
    NotAFactorization(String),
    #[error("roots are not comaximal: {0}")]
    NotComaximal(String),
    #[error("modulus {0} is outside the supported range 2..={MAX_MODULUS}")]
    BadModulus(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("computation too large: {0}")]
    TooLarge(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// A truncated-series base ring k[[S]] with a construction precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRing {
    pub field: FieldKind,
    pub semigroup: NumericalSemigroup,
    pub precision: u64,
}

/// The supported coefficient bases for the family construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseRing {
    Integers,
    Modular { modulus: u64 },
    Series(SeriesRing),
}

/// One scalar of a base ring; the variant always matches the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Mod(u64),
    Series(TruncatedSeries),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Series(s) => write!(f, "{s}"),
        }
    }
}

fn kind_mismatch() -> ! {
    panic!("scalar does not belong to this base ring, construct through the ring API")
}

impl BaseRing {
    pub fn integers() -> Self {
        BaseRing::Integers
    }

    /// Z/n for 2 <= n <= 2^16 (zero-divisor checks are exhaustive).
    pub fn modular(n: u64) -> Result<Self, FamilyError> {
        if !(2..=MAX_MODULUS).contains(&n) {
            return Err(FamilyError::BadModulus(n));
        }
        Ok(BaseRing::Modular { modulus: n })
    }

    pub fn series(
        field: FieldKind,
        semigroup: NumericalSemigroup,
        precision: u64,
    ) -> Result<Self, FamilyError> {
        if !(1..=MAX_RING_PRECISION).contains(&precision) {
            return Err(FamilyError::InvalidArgument(format!(
                "precision {precision} is outside 1..={MAX_RING_PRECISION}"
            )));
        }
        Ok(BaseRing::Series(SeriesRing {
            field,
            semigroup,
            precision,
        }))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            BaseRing::Integers => Scalar::Int(BigInt::from(v)),
            BaseRing::Modular { modulus } => Scalar::Mod(v.rem_euclid(*modulus as i64) as u64),
            BaseRing::Series(ring) => Scalar::Series(TruncatedSeries::constant(
                ring.field,
                ring.field.from_i64(v),
                ring.precision,
            )),
        }
    }

    /// Reduces a scalar to canonical form (used on externally built values).
    pub fn canonicalize(&self, s: Scalar) -> Scalar {
        match (self, s) {
            (BaseRing::Modular { modulus }, Scalar::Mod(v)) => Scalar::Mod(v % modulus),
            (_, s) => s,
        }
    }

    /// True when the scalar's variant matches this ring; series scalars must
    /// also be supported on the ring's semigroup and use the same field.
    pub fn admits(&self, s: &Scalar) -> bool {
        match (self, s) {
            (BaseRing::Integers, Scalar::Int(_)) => true,
            (BaseRing::Modular { modulus }, Scalar::Mod(v)) => v < modulus,
            (BaseRing::Series(ring), Scalar::Series(f)) => {
                f.field() == ring.field && f.supported_on(&ring.semigroup)
            }
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (BaseRing::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (BaseRing::Modular { modulus }, Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod((x + y) % modulus)
            }
            (BaseRing::Series(_), Scalar::Series(x), Scalar::Series(y)) => {
                Scalar::Series(x.add(y))
            }
            _ => kind_mismatch(),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (BaseRing::Integers, Scalar::Int(x)) => Scalar::Int(-x),
            (BaseRing::Modular { modulus }, Scalar::Mod(x)) => {
                Scalar::Mod((modulus - x) % modulus)
            }
            (BaseRing::Series(_), Scalar::Series(x)) => Scalar::Series(x.neg()),
            _ => kind_mismatch(),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (BaseRing::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (BaseRing::Modular { modulus }, Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(x * y % modulus)
            }
            (BaseRing::Series(_), Scalar::Series(x), Scalar::Series(y)) => {
                Scalar::Series(x.mul(y))
            }
            _ => kind_mismatch(),
        }
    }

    /// Ring equality: exact for integers and Z/n, to tracked precision for
    /// series.
    pub fn eq(&self, a: &Scalar, b: &Scalar) -> bool {
        match (a, b) {
            (Scalar::Series(x), Scalar::Series(y)) => x.agrees_with(y),
            _ => a == b,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_zero(),
            Scalar::Mod(v) => *v == 0,
            Scalar::Series(s) => s.is_zero(),
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match (self, a) {
            (BaseRing::Integers, Scalar::Int(x)) => x.abs().is_one(),
            (BaseRing::Modular { modulus }, Scalar::Mod(v)) => v.gcd(modulus) == 1,
            (BaseRing::Series(_), Scalar::Series(s)) => s.is_unit(),
            _ => kind_mismatch(),
        }
    }

    pub fn invert(&self, a: &Scalar) -> Result<Scalar, FamilyError> {
        match (self, a) {
            (BaseRing::Integers, Scalar::Int(x)) => {
                if x.abs().is_one() {
                    Ok(Scalar::Int(x.clone()))
                } else {
                    Err(FamilyError::NotAUnit)
                }
            }
            (BaseRing::Modular { modulus }, Scalar::Mod(v)) => {
                mod_inverse(*v, *modulus).map(Scalar::Mod).ok_or(FamilyError::NotAUnit)
            }
            (BaseRing::Series(_), Scalar::Series(s)) => s
                .invert()
                .map(Scalar::Series)
                .map_err(|_| FamilyError::NotAUnit),
            _ => kind_mismatch(),
        }
    }

    /// Zero-divisor test, including zero itself. For Z/n the scan over all
    /// residues is the definition; the modulus cap keeps it total.
    pub fn is_zero_divisor(&self, a: &Scalar) -> bool {
        match (self, a) {
            (BaseRing::Integers, Scalar::Int(x)) => x.is_zero(),
            (BaseRing::Modular { modulus }, Scalar::Mod(v)) => {
                (1..*modulus).any(|y| v * y % modulus == 0) || *v == 0
            }
            (BaseRing::Series(_), Scalar::Series(s)) => {
                // a series with a known nonzero coefficient is regular in a
                // domain; one that is zero to precision cannot be certified
                matches!(s.valuation(), crate::series::Valuation::AtLeast(_))
            }
            _ => kind_mismatch(),
        }
    }

    /// Whether the base is local (Z/n exactly for prime powers).
    pub fn is_local(&self) -> bool {
        match self {
            BaseRing::Integers => false,
            BaseRing::Modular { modulus } => is_prime_power(*modulus),
            BaseRing::Series(_) => true,
        }
    }

    /// All elements, for bases small enough to enumerate.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            BaseRing::Modular { modulus } => Some((0..*modulus).map(Scalar::Mod).collect()),
            _ => None,
        }
    }
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i128) as u64)
}

fn is_prime_power(mut n: u64) -> bool {
    for p in 2..=n {
        if p * p > n {
            return n > 1;
        }
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
    }
    false
}

/// A finitely generated ideal of a base ring with decidable membership.
///
/// Integer and Z/n ideals reduce to a gcd; series ideals must be generated
/// by monomials, so membership is a support check against the value set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    generators: Vec<Scalar>,
    repr: IdealRepr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum IdealRepr {
    /// gcd of the generators, >= 0; zero means the zero ideal.
    IntGcd(BigInt),
    /// gcd of the generators and the modulus (so always >= 1).
    ModGcd { modulus: u64, d: u64 },
    /// Value set of a monomial ideal of k[[S]].
    ValueSet(RelativeIdeal),
}

impl IdealSpec {
    pub fn new(base: &BaseRing, generators: Vec<Scalar>) -> Result<Self, FamilyError> {
        if generators.len() > MAX_IDEAL_GENERATORS {
            return Err(FamilyError::TooLarge(format!(
                "{} ideal generators exceed the cap {MAX_IDEAL_GENERATORS}",
                generators.len()
            )));
        }
        if let Some(bad) = generators.iter().find(|g| !base.admits(g)) {
            return Err(FamilyError::InvalidArgument(format!(
                "generator {bad} does not belong to the base ring"
            )));
        }
        let repr = match base {
            BaseRing::Integers => {
                let mut d = BigInt::zero();
                for g in &generators {
                    if let Scalar::Int(v) = g {
                        d = d.gcd(v);
                    }
                }
                IdealRepr::IntGcd(d)
            }
            BaseRing::Modular { modulus } => {
                let mut d = *modulus;
                for g in &generators {
                    if let Scalar::Mod(v) = g {
                        d = d.gcd(v);
                    }
                }
                IdealRepr::ModGcd {
                    modulus: *modulus,
                    d,
                }
            }
            BaseRing::Series(ring) => {
                let mut exponents = Vec::new();
                for g in &generators {
                    let Scalar::Series(s) = g else { unreachable!() };
                    if s.is_zero() {
                        continue;
                    }
                    if s.coeffs().len() != 1 {
                        return Err(FamilyError::InvalidArgument(format!(
                            "series ideals must be generated by monomials, got {s}"
                        )));
                    }
                    exponents.push(*s.coeffs().keys().next().unwrap() as i64);
                }
                if exponents.is_empty() {
                    return Err(FamilyError::InvalidArgument(
                        "the zero ideal has no value set, give a nonzero monomial generator"
                            .into(),
                    ));
                }
                IdealRepr::ValueSet(RelativeIdeal::from_generators(
                    &ring.semigroup,
                    &exponents,
                )?)
            }
        };
        Ok(IdealSpec { generators, repr })
    }

    /// Wraps a value set directly as the monomial ideal it generates.
    pub fn from_value_set(base: &BaseRing, e: RelativeIdeal) -> Result<Self, FamilyError> {
        let BaseRing::Series(ring) = base else {
            return Err(FamilyError::ContextError(
                "value-set ideals need a series base ring".into(),
            ));
        };
        if e.ambient() != &ring.semigroup {
            return Err(FamilyError::ContextError(
                "value set lives over a different semigroup".into(),
            ));
        }
        if !e.contained_in_ambient() {
            return Err(FamilyError::InvalidArgument(
                "value set must sit inside the semigroup".into(),
            ));
        }
        let generators = e
            .minimal_generators()
            .into_iter()
            .map(|v| {
                Scalar::Series(TruncatedSeries::monomial(
                    ring.field,
                    v as u64,
                    ring.field.one(),
                    ring.precision,
                ))
            })
            .collect();
        Ok(IdealSpec {
            generators,
            repr: IdealRepr::ValueSet(e),
        })
    }

    pub fn generators(&self) -> &[Scalar] {
        &self.generators
    }

    pub fn value_set(&self) -> Option<&RelativeIdeal> {
        match &self.repr {
            IdealRepr::ValueSet(e) => Some(e),
            _ => None,
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (&self.repr, x) {
            (IdealRepr::IntGcd(d), Scalar::Int(v)) => {
                if d.is_zero() {
                    v.is_zero()
                } else {
                    (v % d).is_zero()
                }
            }
            (IdealRepr::ModGcd { d, .. }, Scalar::Mod(v)) => v % d == 0,
            (IdealRepr::ValueSet(e), Scalar::Series(s)) => {
                s.coeffs().keys().all(|&k| e.contains(k as i64))
            }
            _ => false,
        }
    }

    /// The ideal scaled by a ring element c. For series bases c must be a
    /// unit (the scaled ideal is then literally the same monomial ideal).
    pub fn scale(&self, base: &BaseRing, c: &Scalar) -> Result<Self, FamilyError> {
        match &self.repr {
            IdealRepr::ValueSet(_) => {
                if !base.is_unit(c) {
                    return Err(FamilyError::InvalidArgument(
                        "series ideals scale only by units".into(),
                    ));
                }
                Ok(self.clone())
            }
            _ => {
                let scaled = self.generators.iter().map(|g| base.mul(c, g)).collect();
                IdealSpec::new(base, scaled)
            }
        }
    }

    /// All elements of the ideal, for enumerable bases.
    pub fn elements(&self, base: &BaseRing) -> Option<Vec<Scalar>> {
        match (&self.repr, base) {
            (IdealRepr::ModGcd { modulus, d }, BaseRing::Modular { .. }) => {
                Some((0..*modulus).step_by(*d as usize).map(Scalar::Mod).collect())
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_bounds_enforced() {
        assert!(BaseRing::modular(1).is_err());
        assert!(BaseRing::modular(2).is_ok());
        assert!(BaseRing::modular(1 << 16).is_ok());
        assert!(BaseRing::modular((1 << 16) + 1).is_err());
    }

    #[test]
    fn precision_bounds_enforced() {
        let s = NumericalSemigroup::natural();
        assert!(BaseRing::series(FieldKind::Rationals, s.clone(), 0).is_err());
        assert!(BaseRing::series(FieldKind::Rationals, s.clone(), 64).is_ok());
        assert!(BaseRing::series(FieldKind::Rationals, s, MAX_RING_PRECISION + 1).is_err());
    }

    #[test]
    fn modular_units_and_zero_divisors_partition() {
        // in Z/n every element is a unit or a zero divisor, and the
        // exhaustive scan agrees with the gcd criterion
        for n in [2u64, 6, 8, 9, 12, 60] {
            let ring = BaseRing::modular(n).unwrap();
            for v in 0..n {
                let x = Scalar::Mod(v);
                let unit = ring.is_unit(&x);
                let zd = ring.is_zero_divisor(&x);
                assert_ne!(unit, zd, "v={v} mod {n}");
                assert_eq!(unit, v.gcd(&n) == 1);
                if unit {
                    let inv = ring.invert(&x).unwrap();
                    assert_eq!(ring.mul(&x, &inv), Scalar::Mod(1 % n));
                }
            }
        }
    }

    #[test]
    fn integer_ideal_membership_is_gcd_divisibility() {
        let z = BaseRing::integers();
        let i = IdealSpec::new(&z, vec![z.from_i64(12), z.from_i64(18)]).unwrap();
        assert!(i.contains(&z.from_i64(6)));
        assert!(i.contains(&z.from_i64(-30)));
        assert!(!i.contains(&z.from_i64(4)));
        assert!(i.contains(&z.from_i64(0)));
        let zero = IdealSpec::new(&z, vec![z.from_i64(0)]).unwrap();
        assert!(zero.contains(&z.from_i64(0)));
        assert!(!zero.contains(&z.from_i64(2)));
    }

    #[test]
    fn modular_ideal_membership() {
        let r8 = BaseRing::modular(8).unwrap();
        let i = IdealSpec::new(&r8, vec![Scalar::Mod(6)]).unwrap();
        // gcd(6, 8) = 2
        assert!(i.contains(&Scalar::Mod(2)));
        assert!(i.contains(&Scalar::Mod(0)));
        assert!(!i.contains(&Scalar::Mod(3)));
        assert_eq!(i.elements(&r8).unwrap().len(), 4);
    }

    #[test]
    fn series_ideal_needs_monomials() {
        let s = NumericalSemigroup::from_generators(&[2, 3]).unwrap();
        let ring = BaseRing::series(FieldKind::Rationals, s.clone(), 32).unwrap();
        let x2 = match ring.from_i64(1) {
            Scalar::Series(one) => Scalar::Series(one.mul_monomial(2)),
            _ => unreachable!(),
        };
        let i = IdealSpec::new(&ring, vec![x2]).unwrap();
        let e = i.value_set().unwrap();
        assert!(e.contains(2) && e.contains(4) && e.contains(5) && !e.contains(3));
        let mixed = ring.add(&ring.from_i64(1), &ring.zero());
        assert!(IdealSpec::new(&ring, vec![ring.sub(&mixed, &ring.from_i64(2))]).is_ok());
        let two_terms = match (ring.from_i64(1), ring.from_i64(1)) {
            (Scalar::Series(a), Scalar::Series(b)) => {
                Scalar::Series(a.mul_monomial(2).add(&b.mul_monomial(3)))
            }
            _ => unreachable!(),
        };
        assert!(IdealSpec::new(&ring, vec![two_terms]).is_err());
        assert!(IdealSpec::new(&ring, vec![ring.zero()]).is_err());
    }

    #[test]
    fn locality() {
        assert!(!BaseRing::integers().is_local());
        assert!(BaseRing::modular(8).unwrap().is_local());
        assert!(BaseRing::modular(9).unwrap().is_local());
        assert!(!BaseRing::modular(6).unwrap().is_local());
        let s = NumericalSemigroup::natural();
        assert!(BaseRing::series(FieldKind::Rationals, s, 16)
            .unwrap()
            .is_local());
    }

    #[test]
    fn series_zero_divisor_is_valuation_based() {
        let s = NumericalSemigroup::natural();
        let ring = BaseRing::series(FieldKind::Rationals, s, 8).unwrap();
        assert!(ring.is_zero_divisor(&ring.zero()));
        assert!(!ring.is_zero_divisor(&ring.from_i64(3)));
    }
}
