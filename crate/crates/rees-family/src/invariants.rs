//! Invariants of the family ring attached to (S, E): Hilbert function,
//! embedding dimension, multiplicity, Cohen-Macaulay type, Gorenstein-ness.
//!
//! Everything here is computed combinatorially from windows of the value
//! sets, except for `brute_force_hilbert`, which really multiplies elements
//! in the family ring and counts graded value pairs. The two roads agreeing
//! on sample data is the main internal cross-check of the crate.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::base::{BaseRing, FamilyError, Scalar};
use crate::family::{FamilyContext, FamilyElement};
use crate::semigroup::{
    cm_type_family, NumericalSemigroup, RelativeIdeal, SemigroupError,
};
use crate::series::{Coeff, FieldKind, SeriesError, TruncatedSeries, Valuation};

/// Largest Hilbert index the brute-force walker accepts.
pub const MAX_BRUTE_INDEX: usize = 16;
const MAX_LEVEL_SIZE: usize = 1 << 14;

/// Hilbert function values with the detected stabilization point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertRecord {
    pub values: Vec<u64>,
    /// Least n >= 1 from which the computed values are all equal (with at
    /// least one repetition witnessed inside the window).
    pub stabilized_at: Option<usize>,
    /// The stable value, when stabilization was witnessed.
    pub multiplicity: Option<u64>,
}

impl HilbertRecord {
    fn from_values(values: Vec<u64>) -> Self {
        let mut stabilized_at = None;
        for k in 1..values.len().saturating_sub(1) {
            if values[k..].iter().all(|&v| v == values[k]) {
                stabilized_at = Some(k);
                break;
            }
        }
        let multiplicity = stabilized_at.map(|k| values[k]);
        HilbertRecord {
            values,
            stabilized_at,
            multiplicity,
        }
    }
}

/// Hilbert function of the family ring of (S, E) for n = 0..=n_max, via
/// H(n) = |nM \ (n+1)M| + |(E + (n-1)M) \ (E + nM)| with M the maximal
/// ideal of S.
pub fn hilbert_family(
    s: &NumericalSemigroup,
    e: &RelativeIdeal,
    n_max: usize,
) -> Result<HilbertRecord, SemigroupError> {
    check_proper(s, e)?;
    let m = RelativeIdeal::maximal_ideal(s);
    // powers of M, with 0M = S
    let mut m_pow = vec![RelativeIdeal::whole(s)];
    for _ in 0..=n_max {
        m_pow.push(m_pow.last().unwrap().sum(&m)?);
    }
    let mut e_chain = vec![e.clone()];
    for _ in 0..n_max {
        e_chain.push(e_chain.last().unwrap().sum(&m)?);
    }
    let mut values = vec![1u64];
    for n in 1..=n_max {
        let ring_part = m_pow[n].set_minus(&m_pow[n + 1])?.len() as u64;
        let ideal_part = e_chain[n - 1].set_minus(&e_chain[n])?.len() as u64;
        values.push(ring_part + ideal_part);
    }
    Ok(HilbertRecord::from_values(values))
}

/// Embedding dimension of the family ring: nu(S) + nu(E).
pub fn embedding_dimension_family(
    s: &NumericalSemigroup,
    e: &RelativeIdeal,
) -> Result<usize, SemigroupError> {
    check_proper(s, e)?;
    Ok(s.embedding_dimension() + e.generator_count())
}

/// Multiplicity of the family ring, read off the stabilized Hilbert value.
pub fn multiplicity_family(
    s: &NumericalSemigroup,
    e: &RelativeIdeal,
) -> Result<u64, SemigroupError> {
    for n_max in [8usize, 16, 32, 64] {
        let rec = hilbert_family(s, e, n_max)?;
        if let Some(m) = rec.multiplicity {
            return Ok(m);
        }
    }
    Err(SemigroupError::Internal(
        "Hilbert function did not stabilize within 64 steps".into(),
    ))
}

/// Cohen-Macaulay type of the family ring of (S, E).
pub fn cm_type(s: &NumericalSemigroup, e: &RelativeIdeal) -> Result<usize, SemigroupError> {
    cm_type_family(s, e)
}

/// Gorenstein exactly when the type is 1.
pub fn is_gorenstein(s: &NumericalSemigroup, e: &RelativeIdeal) -> Result<bool, SemigroupError> {
    Ok(cm_type_family(s, e)? == 1)
}

fn check_proper(s: &NumericalSemigroup, e: &RelativeIdeal) -> Result<(), SemigroupError> {
    if e.ambient() != s {
        return Err(SemigroupError::InvalidArgument(
            "ideal has a different ambient semigroup".into(),
        ));
    }
    if !e.is_proper() {
        return Err(SemigroupError::InvalidArgument(
            "ideal must be proper: contained in the semigroup with floor at least 1".into(),
        ));
    }
    Ok(())
}

/// Graded value pair of a single-component element: (v(r), v(i)).
type Pair = (Option<u64>, Option<u64>);

/// Hilbert function computed by multiplying actual ring elements.
///
/// Walks the powers of the maximal ideal m + It of the family ring over
/// F_p[[S]] by brute-force products of the monomial generators, and counts
/// the value pairs each power reaches modulo the next. Exact for the fibers
/// where generator products stay single-component monomials: constant a
/// with b = 0, or a = 0 with b zero or a single monomial.
pub fn brute_force_hilbert(
    ctx: &Arc<FamilyContext>,
    n_max: usize,
) -> Result<HilbertRecord, FamilyError> {
    if n_max > MAX_BRUTE_INDEX {
        return Err(FamilyError::TooLarge(format!(
            "brute-force Hilbert index {n_max} exceeds the cap {MAX_BRUTE_INDEX}"
        )));
    }
    let BaseRing::Series(ring) = ctx.base() else {
        return Err(FamilyError::InvalidArgument(
            "brute-force Hilbert needs a series base ring".into(),
        ));
    };
    if !matches!(ring.field, FieldKind::Prime(_)) {
        return Err(FamilyError::InvalidArgument(
            "brute-force Hilbert needs prime-field coefficients".into(),
        ));
    }
    let e = ctx.ideal().value_set().ok_or_else(|| {
        FamilyError::InvalidArgument("brute-force Hilbert needs a monomial ideal".into())
    })?;
    if !e.is_proper() {
        return Err(FamilyError::InvalidArgument(
            "brute-force Hilbert needs a proper ideal".into(),
        ));
    }
    let s = &ring.semigroup;
    let (Scalar::Series(sa), Scalar::Series(sb)) = (ctx.a(), ctx.b()) else {
        unreachable!("series context carries series scalars")
    };
    let a_ok = sa.is_zero()
        || (sa.coeffs().len() == 1 && sa.valuation() == Valuation::Finite(0));
    let b_ok = sb.is_zero() || sb.coeffs().len() == 1;
    if !a_ok || !b_ok || (!sa.is_zero() && !sb.is_zero()) {
        return Err(FamilyError::InvalidArgument(
            "brute-force Hilbert supports constant a with b = 0, or a = 0 with b a monomial"
                .into(),
        ));
    }
    let b_shift = sb.coeffs().keys().next().copied().unwrap_or(0);

    let e_gens = e.minimal_generators();
    let g_max = (s.max_generator() as i64).max(e_gens.iter().copied().max().unwrap_or(0)) as u64;
    let needed = (n_max as u64 + 2) * (g_max + b_shift)
        + s.conductor() as u64
        + s.max_generator()
        + 2;
    if ring.precision <= needed {
        return Err(FamilyError::Series(SeriesError::PrecisionExceeded(format!(
            "brute-force Hilbert needs ring precision above {needed}, got {}",
            ring.precision
        ))));
    }

    // generators of the maximal ideal: (X^g, 0) for g generating S,
    // (0, X^e) for e generating E
    let monomial = |exp: i64| {
        Scalar::Series(TruncatedSeries::monomial(
            ring.field,
            exp as u64,
            ring.field.one(),
            ring.precision,
        ))
    };
    let mut gens: Vec<FamilyElement> = Vec::new();
    for &g in s.generators() {
        gens.push(ctx.element(monomial(g as i64), ctx.base().zero())?);
    }
    for &ge in &e_gens {
        gens.push(ctx.element(ctx.base().zero(), monomial(ge))?);
    }

    // levels of literal products, deduplicated by exact coefficients
    let mut levels: Vec<Vec<FamilyElement>> = vec![vec![ctx.one()]];
    for _ in 0..=n_max {
        let prev = levels.last().unwrap();
        let mut next: Vec<FamilyElement> = Vec::new();
        let mut seen: HashSet<(Vec<(u64, u64)>, Vec<(u64, u64)>)> = HashSet::new();
        for x in prev {
            for g in &gens {
                let p = x.mul(g)?;
                if seen.insert(element_key(&p)) {
                    next.push(p);
                }
            }
            if next.len() > MAX_LEVEL_SIZE {
                return Err(FamilyError::TooLarge(
                    "brute-force level size exceeds the internal cap".into(),
                ));
            }
        }
        levels.push(next);
    }

    // value pairs per level, then their closure under the diagonal S-action
    let mut lit_pairs: Vec<HashSet<Pair>> = Vec::with_capacity(levels.len());
    let mut max_coord = 0u64;
    for level in &levels {
        let mut pairs = HashSet::new();
        for x in level {
            match pair_of(x)? {
                None => {}
                Some(p) => {
                    if let (Some(v), _) | (_, Some(v)) = p {
                        max_coord = max_coord.max(v);
                    }
                    pairs.insert(p);
                }
            }
        }
        lit_pairs.push(pairs);
    }
    let bound = max_coord + s.conductor() as u64 + s.max_generator() + 1;
    let shifts: Vec<u64> = s
        .members_in(0, bound as i64 + 1)
        .into_iter()
        .map(|v| v as u64)
        .collect();
    let closed: Vec<HashSet<Pair>> = lit_pairs
        .iter()
        .map(|pairs| close_pairs(pairs, &shifts, bound))
        .collect();

    let mut values = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let count = closed[n].difference(&closed[n + 1]).count() as u64;
        values.push(count);
    }
    Ok(HilbertRecord::from_values(values))
}

fn element_key(x: &FamilyElement) -> (Vec<(u64, u64)>, Vec<(u64, u64)>) {
    let side = |s: &Scalar| -> Vec<(u64, u64)> {
        let Scalar::Series(t) = s else {
            unreachable!("series context carries series scalars")
        };
        t.coeffs()
            .iter()
            .map(|(&e, c)| match c {
                Coeff::Prime(v) => (e, *v),
                Coeff::Rational(_) => unreachable!("prime field enforced"),
            })
            .collect()
    };
    (side(x.r()), side(x.i()))
}

/// `None` for the zero element, otherwise the single-component value pair.
fn pair_of(x: &FamilyElement) -> Result<Option<Pair>, FamilyError> {
    let val = |s: &Scalar| -> Option<u64> {
        let Scalar::Series(t) = s else {
            unreachable!("series context carries series scalars")
        };
        t.valuation().finite()
    };
    let p = (val(x.r()), val(x.i()));
    match p {
        (None, None) => Ok(None),
        (Some(_), Some(_)) => Err(FamilyError::Internal(
            "brute-force product left the single-component regime".into(),
        )),
        _ => Ok(Some(p)),
    }
}

fn close_pairs(pairs: &HashSet<Pair>, shifts: &[u64], bound: u64) -> HashSet<Pair> {
    let mut out = HashSet::new();
    for &(p, q) in pairs {
        for &sh in shifts {
            let p2 = p.map(|v| v + sh);
            let q2 = q.map(|v| v + sh);
            let max = p2.unwrap_or(0).max(q2.unwrap_or(0));
            if max <= bound {
                out.insert((p2, q2));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::IdealSpec;
    use crate::semigroup::canonical_ideal;

    fn sgp(gens: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    fn shifted_whole(s: &NumericalSemigroup, c: i64) -> RelativeIdeal {
        RelativeIdeal::from_generators(s, &[c]).unwrap()
    }

    #[test]
    fn hilbert_of_model_pair() {
        let s = sgp(&[2, 3]);
        let e = shifted_whole(&s, 3);
        let rec = hilbert_family(&s, &e, 6).unwrap();
        assert_eq!(rec.values, vec![1, 3, 4, 4, 4, 4, 4]);
        assert_eq!(rec.stabilized_at, Some(2));
        assert_eq!(rec.multiplicity, Some(4));
    }

    #[test]
    fn hilbert_with_maximal_ideal() {
        let s = sgp(&[2, 3]);
        let e = RelativeIdeal::maximal_ideal(&s);
        let rec = hilbert_family(&s, &e, 5).unwrap();
        assert_eq!(rec.values, vec![1, 4, 4, 4, 4, 4]);
        assert_eq!(rec.stabilized_at, Some(1));
    }

    #[test]
    fn multiplicity_is_twice_the_semigroup_multiplicity() {
        for gens in [vec![2u64, 3], vec![3, 4, 5], vec![4, 6, 11], vec![5, 7]] {
            let s = sgp(&gens);
            let e = canonical_ideal(&s).unwrap();
            assert_eq!(
                multiplicity_family(&s, &e).unwrap(),
                2 * s.multiplicity(),
                "gens {gens:?}"
            );
            let m = RelativeIdeal::maximal_ideal(&s);
            assert_eq!(multiplicity_family(&s, &m).unwrap(), 2 * s.multiplicity());
        }
    }

    #[test]
    fn embedding_dimension_adds_generator_counts() {
        let s = sgp(&[3, 4, 5]);
        let m = RelativeIdeal::maximal_ideal(&s);
        // nu(S) = 3 and nu(M) = 3
        assert_eq!(embedding_dimension_family(&s, &m).unwrap(), 6);
        let principal = shifted_whole(&s, 3);
        assert_eq!(embedding_dimension_family(&s, &principal).unwrap(), 4);
        // H(1) equals the embedding dimension
        let rec = hilbert_family(&s, &principal, 3).unwrap();
        assert_eq!(rec.values[1] as usize, 4);
    }

    #[test]
    fn gorenstein_iff_canonical_ideal() {
        let s = sgp(&[3, 4, 5]);
        let k = canonical_ideal(&s).unwrap();
        assert!(is_gorenstein(&s, &k).unwrap());
        assert_eq!(cm_type(&s, &k).unwrap(), 1);
        let m = RelativeIdeal::maximal_ideal(&s);
        assert!(!is_gorenstein(&s, &m).unwrap());
    }

    #[test]
    fn improper_ideals_are_rejected() {
        let s = sgp(&[2, 3]);
        let whole = RelativeIdeal::whole(&s);
        assert!(hilbert_family(&s, &whole, 3).is_err());
        assert!(embedding_dimension_family(&s, &whole).is_err());
    }

    fn series_ctx(
        p: u64,
        s: &NumericalSemigroup,
        e_shift: i64,
        a: Option<i64>,
        b_shift: Option<u64>,
        precision: u64,
    ) -> Arc<FamilyContext> {
        let field = FieldKind::prime(p).unwrap();
        let base = BaseRing::series(field, s.clone(), precision).unwrap();
        let e = RelativeIdeal::from_generators(s, &[e_shift]).unwrap();
        let ideal = IdealSpec::from_value_set(&base, e).unwrap();
        let a = base.from_i64(a.unwrap_or(0));
        let b = match b_shift {
            Some(m) => Scalar::Series(TruncatedSeries::monomial(
                field,
                m,
                field.from_i64(-1),
                precision,
            )),
            None => base.zero(),
        };
        FamilyContext::new(base, ideal, a, b).unwrap()
    }

    #[test]
    fn brute_force_matches_window_computation_on_model_fibers() {
        let s = sgp(&[2, 3]);
        let e = shifted_whole(&s, 3);
        let expected = hilbert_family(&s, &e, 4).unwrap().values;
        for (a, b) in [(Some(0), None), (Some(-1), None), (Some(0), Some(5u64))] {
            let ctx = series_ctx(7, &s, 3, a, b, 128);
            let rec = brute_force_hilbert(&ctx, 4).unwrap();
            assert_eq!(rec.values, expected, "fiber a={a:?} b_shift={b:?}");
        }
    }

    #[test]
    fn brute_force_on_three_generated_semigroup() {
        let s = sgp(&[3, 4, 5]);
        let e = RelativeIdeal::maximal_ideal(&s);
        let expected = hilbert_family(&s, &e, 3).unwrap().values;
        let field = FieldKind::prime(5).unwrap();
        let base = BaseRing::series(field, s.clone(), 256).unwrap();
        let ideal = IdealSpec::from_value_set(&base, e).unwrap();
        let ctx = FamilyContext::new(base.clone(), ideal, base.from_i64(-1), base.zero())
            .unwrap();
        let rec = brute_force_hilbert(&ctx, 3).unwrap();
        assert_eq!(rec.values, expected);
    }

    #[test]
    fn brute_force_guards() {
        let s = sgp(&[2, 3]);
        // low precision is refused, not silently truncated
        let ctx = series_ctx(7, &s, 3, Some(0), Some(5), 32);
        assert!(matches!(
            brute_force_hilbert(&ctx, 4),
            Err(FamilyError::Series(SeriesError::PrecisionExceeded(_)))
        ));
        // unsupported fiber shape: both a and b nonzero
        let field = FieldKind::prime(7).unwrap();
        let base = BaseRing::series(field, s.clone(), 128).unwrap();
        let e = RelativeIdeal::from_generators(&s, &[3]).unwrap();
        let ideal = IdealSpec::from_value_set(&base, e).unwrap();
        let b = Scalar::Series(TruncatedSeries::monomial(
            field,
            5,
            field.from_i64(-1),
            128,
        ));
        let ctx2 = FamilyContext::new(base.clone(), ideal, base.from_i64(1), b).unwrap();
        assert!(matches!(
            brute_force_hilbert(&ctx2, 3),
            Err(FamilyError::InvalidArgument(_))
        ));
        // index cap
        let ctx3 = series_ctx(7, &s, 3, Some(0), None, 128);
        assert!(matches!(
            brute_force_hilbert(&ctx3, MAX_BRUTE_INDEX + 1),
            Err(FamilyError::TooLarge(_))
        ));
    }
}
