//! End-to-end verification suite.
//!
//! Each check exercises one documented guarantee of the crate against an
//! independent computation: exhaustive enumeration where the base ring is
//! finite, brute force where a faster formula exists, and seeded random
//! sampling elsewhere. The checks are deterministic; a few carry wall-clock
//! budgets and fail when they overrun them.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::base::{BaseRing, FamilyError, IdealSpec, Scalar};
use crate::family::{
    comaximal_to_duplication, componentwise_mul, duplication_mul, idealization_mul, pair_add,
    rationalize, FamilyContext, FamilyElement,
};
use crate::fibers::{brute_force_splitting, count_primes_over, is_prime, Splitting};
use crate::invariants::{brute_force_hilbert, hilbert_family};
use crate::semigroup::{
    cm_type_family, duplication, is_canonical, NumericalSemigroup, RelativeIdeal,
};
use crate::series::{irreducible_t2_minus_b, phi_map, FieldKind, TruncatedSeries, Valuation};

/// One check's result: name, verdict, a human-readable summary, timing.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type CheckFn = fn() -> Result<String, String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// The registered checks with their wall-clock budgets in milliseconds.
pub fn checks() -> Vec<(&'static str, CheckFn, Option<u128>)> {
    vec![
        ("duplication-model", check_duplication_model, Some(1_000)),
        ("fiber-identifications", check_fiber_identifications, Some(5_000)),
        ("comaximal-equivalence", check_comaximal_equivalence, None),
        ("hilbert-across-fibers", check_hilbert_across_fibers, Some(10_000)),
        (
            "random-duplication-invariants",
            check_random_duplication_invariants,
            None,
        ),
        ("unit-criterion", check_unit_criterion, None),
        ("rationalization", check_rationalization, None),
        ("prime-fibers", check_prime_fibers, Some(5_000)),
        ("semigroup-ring-map", check_semigroup_ring_map, None),
        ("reducibility-witness", check_reducibility_witness, None),
    ]
}

fn run_one(name: &'static str, f: CheckFn, budget: Option<u128>) -> CheckOutcome {
    let start = Instant::now();
    let result = f();
    let millis = start.elapsed().as_millis();
    let (passed, detail) = match result {
        Ok(detail) => match budget {
            Some(cap) if millis > cap => (
                false,
                format!("{detail}; but took {millis} ms, over the {cap} ms budget"),
            ),
            _ => (true, detail),
        },
        Err(detail) => (false, detail),
    };
    CheckOutcome {
        name,
        passed,
        detail,
        millis,
    }
}

/// Runs every check, in registration order.
pub fn run_all() -> Vec<CheckOutcome> {
    checks()
        .into_iter()
        .map(|(name, f, budget)| run_one(name, f, budget))
        .collect()
}

/// Runs a single check by name.
pub fn run_named(name: &str) -> Option<CheckOutcome> {
    checks()
        .into_iter()
        .find(|(n, _, _)| *n == name)
        .map(|(n, f, budget)| run_one(n, f, budget))
}

fn model_pair() -> Result<(NumericalSemigroup, RelativeIdeal), String> {
    let s = lib(NumericalSemigroup::from_generators(&[2, 3]))?;
    let e = lib(RelativeIdeal::from_generators(&s, &[3]))?;
    Ok((s, e))
}

/// duplication(<2,3>, 3+S, 5) is <4,6,11>: symmetric, gaps and type pinned.
fn check_duplication_model() -> Result<String, String> {
    let (s, e) = model_pair()?;
    let dup = lib(duplication(&s, &e, 5))?;
    let t = &dup.semigroup;
    check!(
        t.generators() == [4, 6, 11],
        "duplication generated by {:?}, expected [4, 6, 11]",
        t.generators()
    );
    check!(
        t.gaps() == [1, 2, 3, 5, 7, 9, 13],
        "duplication gaps {:?}, expected [1, 2, 3, 5, 7, 9, 13]",
        t.gaps()
    );
    check!(t.is_symmetric(), "duplication of {s} along {e} should be symmetric");
    let ty = lib(cm_type_family(&s, &e))?;
    check!(ty == 1, "family type {ty}, expected 1");
    Ok(format!("duplication is {t}, symmetric, family type 1"))
}

fn as_mod(s: &Scalar) -> Result<u64, String> {
    match s {
        Scalar::Mod(v) => Ok(*v),
        other => Err(format!("expected a modular scalar, got {other}")),
    }
}

fn mod_pair(p: &(Scalar, Scalar)) -> Result<(u64, u64), String> {
    Ok((as_mod(&p.0)?, as_mod(&p.1)?))
}

fn all_elements(ctx: &Arc<FamilyContext>) -> Result<Vec<FamilyElement>, String> {
    let base = ctx.base();
    let rs = base
        .elements()
        .ok_or_else(|| "base ring is not enumerable".to_string())?;
    let is = ctx
        .ideal()
        .elements(base)
        .ok_or_else(|| "ideal is not enumerable".to_string())?;
    let mut out = Vec::with_capacity(rs.len() * is.len());
    for r in &rs {
        for i in &is {
            out.push(lib(ctx.element(r.clone(), i.clone()))?);
        }
    }
    Ok(out)
}

/// Checks that `map` is a bijective ring homomorphism from the family ring
/// onto `expected_image` with the pairwise operations `target_mul`/pair_add,
/// sending 1 to `expected_one`.
fn verify_identification(
    ctx: &Arc<FamilyContext>,
    map: &dyn Fn(&FamilyElement) -> Result<(Scalar, Scalar), FamilyError>,
    target_mul: fn(&BaseRing, &(Scalar, Scalar), &(Scalar, Scalar)) -> (Scalar, Scalar),
    expected_image: &std::collections::BTreeSet<(u64, u64)>,
    expected_one: (u64, u64),
) -> Result<usize, String> {
    let base = ctx.base();
    let elems = all_elements(ctx)?;
    let images: Vec<(Scalar, Scalar)> = elems
        .iter()
        .map(|x| lib(map(x)))
        .collect::<Result<_, _>>()?;

    let image_set: std::collections::BTreeSet<(u64, u64)> = images
        .iter()
        .map(mod_pair)
        .collect::<Result<_, _>>()?;
    check!(
        image_set.len() == elems.len(),
        "identification is not injective: {} elements, {} images",
        elems.len(),
        image_set.len()
    );
    check!(
        &image_set == expected_image,
        "identification image has {} pairs, expected {}",
        image_set.len(),
        expected_image.len()
    );

    let one_image = mod_pair(&lib(map(&ctx.one()))?)?;
    check!(
        one_image == expected_one,
        "identity maps to {one_image:?}, expected {expected_one:?}"
    );

    let mut pairs = 0usize;
    for (x, fx) in elems.iter().zip(&images) {
        for (y, fy) in elems.iter().zip(&images) {
            let sum = lib(map(&lib(x.add(y))?))?;
            check!(
                mod_pair(&sum)? == mod_pair(&pair_add(base, fx, fy))?,
                "additivity fails at {x} + {y}"
            );
            let prod = lib(map(&lib(x.mul(y))?))?;
            check!(
                mod_pair(&prod)? == mod_pair(&target_mul(base, fx, fy))?,
                "multiplicativity fails at {x} * {y}"
            );
            pairs += 1;
        }
    }
    Ok(pairs)
}

/// The (0,0) and (-1,0) members over Z/8 with I=(2) and Z/9 with I=(3) are
/// the idealization and the duplication, elementwise and pairwise.
fn check_fiber_identifications() -> Result<String, String> {
    let mut pairs = 0usize;
    for (n, g) in [(8u64, 2i64), (9, 3)] {
        let base = lib(BaseRing::modular(n))?;
        let ideal = lib(IdealSpec::new(&base, vec![base.from_i64(g)]))?;
        let ideal_values: std::collections::BTreeSet<u64> = ideal
            .elements(&base)
            .ok_or_else(|| "ideal is not enumerable".to_string())?
            .iter()
            .map(as_mod)
            .collect::<Result<_, _>>()?;

        let idealization_image: std::collections::BTreeSet<(u64, u64)> = (0..n)
            .flat_map(|r| ideal_values.iter().map(move |&i| (r, i)))
            .collect();
        let ctx0 = lib(FamilyContext::new(
            base.clone(),
            ideal.clone(),
            base.zero(),
            base.zero(),
        ))?;
        pairs += verify_identification(
            &ctx0,
            &|x| x.to_idealization(),
            idealization_mul,
            &idealization_image,
            (1, 0),
        )?;

        let duplication_image: std::collections::BTreeSet<(u64, u64)> = (0..n)
            .flat_map(|u| {
                ideal_values
                    .iter()
                    .map(move |&i| (u, (u + i) % n))
                    .collect::<Vec<_>>()
            })
            .collect();
        let ctxd = lib(FamilyContext::new(
            base.clone(),
            ideal.clone(),
            base.from_i64(-1),
            base.zero(),
        ))?;
        // images live in R x R with componentwise operations
        pairs += verify_identification(
            &ctxd,
            &|x| x.to_duplication(),
            componentwise_mul,
            &duplication_image,
            (1, 1),
        )?;
    }
    Ok(format!(
        "both identifications are bijective ring maps on {pairs} pairs"
    ))
}

/// When t^2+at+b = (t-alpha)(t-beta) with beta-alpha a unit, the shifted
/// map identifies the family ring with the duplication along (beta-alpha)I.
fn check_comaximal_equivalence() -> Result<String, String> {
    let mut pairs = 0usize;
    for (n, a, b, alpha, beta, g) in [
        (7u64, -5i64, 6i64, 2i64, 3i64, 0i64),
        (7, -5, 6, 2, 3, 1),
        (35, -5, 6, 2, 3, 5),
    ] {
        let base = lib(BaseRing::modular(n))?;
        let ideal = lib(IdealSpec::new(&base, vec![base.from_i64(g)]))?;
        let ctx = lib(FamilyContext::new(
            base.clone(),
            ideal,
            base.from_i64(a),
            base.from_i64(b),
        ))?;
        let shift = lib(comaximal_to_duplication(
            &ctx,
            base.from_i64(alpha),
            base.from_i64(beta),
        ))?;
        let j_values: std::collections::BTreeSet<u64> = shift
            .j_ideal()
            .elements(&base)
            .ok_or_else(|| "shifted ideal is not enumerable".to_string())?
            .iter()
            .map(as_mod)
            .collect::<Result<_, _>>()?;
        let expected: std::collections::BTreeSet<(u64, u64)> = (0..n)
            .flat_map(|u| j_values.iter().map(move |&w| (u, w)))
            .collect();
        pairs += verify_identification(
            &ctx,
            &|x| shift.apply(x),
            duplication_mul,
            &expected,
            (1, 0),
        )?;
    }

    // beta - alpha = 7 is a zero divisor mod 35, so the shift must refuse
    let base = lib(BaseRing::modular(35))?;
    let ideal = lib(IdealSpec::new(&base, vec![base.from_i64(5)]))?;
    let ctx = lib(FamilyContext::new(
        base.clone(),
        ideal,
        base.from_i64(-11),
        base.from_i64(18),
    ))?;
    check!(
        comaximal_to_duplication(&ctx, base.from_i64(2), base.from_i64(9)).is_err(),
        "a root gap of 7 mod 35 must be rejected as non-comaximal"
    );
    Ok(format!(
        "comaximal identification is a bijective ring map on {pairs} pairs"
    ))
}

/// Over F_2 and F_5, the (0,0), (-1,0), (0,-X^5) members of the model pair
/// all have Hilbert function 1,3,4,4,4 by literal power enumeration.
fn check_hilbert_across_fibers() -> Result<String, String> {
    let (s, e) = model_pair()?;
    let expected = [1u64, 3, 4, 4, 4];
    let family = lib(hilbert_family(&s, &e, 4))?;
    check!(
        family.values == expected,
        "filtration count gives {:?}, expected {:?}",
        family.values,
        expected
    );
    let mut fibers = 0usize;
    for p in [2u64, 5] {
        let field = lib(FieldKind::prime(p))?;
        let base = lib(BaseRing::series(field, s.clone(), 64))?;
        let ideal = lib(IdealSpec::from_value_set(&base, e.clone()))?;
        let minus_x5 = Scalar::Series(TruncatedSeries::monomial(
            field,
            5,
            field.from_i64(-1),
            64,
        ));
        for (a, b) in [
            (base.zero(), base.zero()),
            (base.from_i64(-1), base.zero()),
            (base.zero(), minus_x5),
        ] {
            let ctx = lib(FamilyContext::new(base.clone(), ideal.clone(), a, b))?;
            let brute = lib(brute_force_hilbert(&ctx, 4))?;
            check!(
                brute.values == expected,
                "power enumeration over F_{p} gives {:?}, expected {:?}",
                brute.values,
                expected
            );
            fibers += 1;
        }
    }
    Ok(format!(
        "Hilbert function 1,3,4,4,4 agrees across {fibers} fibers and the filtration count"
    ))
}

fn random_semigroup(rng: &mut ChaCha8Rng) -> Option<NumericalSemigroup> {
    let k = rng.gen_range(2..=4);
    let gens: Vec<u64> = (0..k).map(|_| rng.gen_range(2..40)).collect();
    let d = gens.iter().fold(0u64, |acc, &x| num_integer::gcd(acc, x));
    if d != 1 {
        return None;
    }
    NumericalSemigroup::from_generators(&gens).ok()
}

/// On random (S, E, m): the family type equals the semigroup type of the
/// numerical duplication, and canonical E matches symmetric duplication.
fn check_random_duplication_invariants() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0005_1223);
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < 25 {
        attempts += 1;
        check!(attempts < 10_000, "random triple generation stalled");
        let Some(s) = random_semigroup(&mut rng) else {
            continue;
        };
        let pool = s.members_in(1, s.conductor() + 2 * s.max_generator() as i64 + 2);
        if pool.is_empty() {
            continue;
        }
        let k = rng.gen_range(1..=3usize);
        let egens: Vec<i64> = (0..k)
            .map(|_| pool[rng.gen_range(0..pool.len())])
            .collect();
        let Ok(e) = RelativeIdeal::from_generators(&s, &egens) else {
            continue;
        };
        let odds: Vec<i64> = s
            .members_in(1, 2 * s.conductor() + 2 * s.max_generator() as i64 + 3)
            .into_iter()
            .filter(|&m| m % 2 == 1)
            .collect();
        check!(!odds.is_empty(), "no odd member found in {s}");
        let m = odds[rng.gen_range(0..odds.len())];

        let dup = lib(duplication(&s, &e, m))?;
        let family_type = lib(cm_type_family(&s, &e))?;
        let dup_type = dup.semigroup.semigroup_type();
        check!(
            family_type == dup_type,
            "family type {family_type} but duplication type {dup_type} for S={s}, E={e}, m={m}"
        );
        let canonical = lib(is_canonical(&s, &e))?;
        let symmetric = dup.semigroup.is_symmetric();
        check!(
            canonical == symmetric,
            "canonical={canonical} but symmetric={symmetric} for S={s}, E={e}, m={m}"
        );
        done += 1;
    }
    Ok(format!(
        "type and symmetry match the duplication on {done} random triples"
    ))
}

/// Over Z/8 with I=(2), for every (a,b): x is a unit iff delta(x) is a unit
/// iff r is a unit, and every inverse multiplies back to 1.
fn check_unit_criterion() -> Result<String, String> {
    let base = lib(BaseRing::modular(8))?;
    let ideal = lib(IdealSpec::new(&base, vec![base.from_i64(2)]))?;
    let mut units = 0usize;
    let mut total = 0usize;
    for a in 0..8i64 {
        for b in 0..8i64 {
            let ctx = lib(FamilyContext::new(
                base.clone(),
                ideal.clone(),
                base.from_i64(a),
                base.from_i64(b),
            ))?;
            for x in all_elements(&ctx)? {
                total += 1;
                let unit = x.is_unit();
                let delta_unit = base.is_unit(&x.delta());
                let r_unit = base.is_unit(x.r());
                check!(
                    unit == delta_unit && unit == r_unit,
                    "unit criteria disagree at {x} with (a,b)=({a},{b}): \
                     unit={unit}, delta unit={delta_unit}, r unit={r_unit}"
                );
                if unit {
                    units += 1;
                    let inv = lib(x.invert())?;
                    let prod = lib(x.mul(&inv))?;
                    check!(
                        prod == ctx.one(),
                        "inverse of {x} fails: {x} * {inv} = {prod}"
                    );
                } else {
                    check!(x.invert().is_err(), "non-unit {x} produced an inverse");
                }
            }
        }
    }
    Ok(format!(
        "unit/delta/r criteria agree on {total} elements across 64 parameter pairs ({units} units inverted)"
    ))
}

fn random_series(
    rng: &mut ChaCha8Rng,
    field: FieldKind,
    support: &[i64],
    precision: u64,
) -> TruncatedSeries {
    let k = rng.gen_range(0..=4usize);
    let terms: Vec<(u64, crate::series::Coeff)> = (0..k)
        .map(|_| {
            let e = support[rng.gen_range(0..support.len())] as u64;
            (e, field.from_i64(rng.gen_range(0..5)))
        })
        .collect();
    TruncatedSeries::from_terms(field, terms, precision)
}

/// mul((s,j), (ja-s, j)) has zero t-part and r-part s(ja-s) - j^2 b, for
/// random inputs over Z/9 and over F_5 series; regular denominators also
/// rationalize consistently.
fn check_rationalization() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0007_4a31);

    let base = lib(BaseRing::modular(9))?;
    let ideal = lib(IdealSpec::new(&base, vec![base.from_i64(3)]))?;
    let mut cleared = 0usize;
    for _ in 0..1000 {
        let a = base.from_i64(rng.gen_range(0..9));
        let b = base.from_i64(rng.gen_range(0..9));
        let ctx = lib(FamilyContext::new(base.clone(), ideal.clone(), a, b))?;
        verify_conjugate_product(&ctx, &mut rng, 9)?;

        let den = lib(ctx.element_from_i64(rng.gen_range(0..9), 3 * rng.gen_range(0..3)))?;
        let num = lib(ctx.element_from_i64(rng.gen_range(0..9), 3 * rng.gen_range(0..3)))?;
        if let Ok((y, u)) = rationalize(&num, &den) {
            let left = lib(den.mul(&y))?;
            let right = lib(ctx.element(
                ctx.base().mul(&u, num.r()),
                ctx.base().mul(&u, num.i()),
            ))?;
            check!(
                left == right,
                "rationalize certificate fails: den*y = {left}, u*num = {right}"
            );
            cleared += 1;
        }
    }

    let field = lib(FieldKind::prime(5))?;
    let (s, e) = model_pair()?;
    let sbase = lib(BaseRing::series(field, s.clone(), 32))?;
    let sideal = lib(IdealSpec::from_value_set(&sbase, e.clone()))?;
    let s_support = s.members_in(0, 13);
    let e_support = e.members_in(0, 13);
    for _ in 0..1000 {
        let a = Scalar::Series(random_series(&mut rng, field, &s_support, 32));
        let b = Scalar::Series(random_series(&mut rng, field, &s_support, 32));
        let ctx = lib(FamilyContext::new(sbase.clone(), sideal.clone(), a, b))?;
        let sv = Scalar::Series(random_series(&mut rng, field, &s_support, 32));
        let jv = Scalar::Series(random_series(&mut rng, field, &e_support, 32));
        verify_conjugate_product_scalars(&ctx, sv, jv)?;
    }
    Ok(format!(
        "conjugate products are scalar over both bases on 2000 samples ({cleared} denominators cleared)"
    ))
}

fn verify_conjugate_product(
    ctx: &Arc<FamilyContext>,
    rng: &mut ChaCha8Rng,
    modulus: i64,
) -> Result<(), String> {
    let s = ctx.base().from_i64(rng.gen_range(0..modulus));
    let j = ctx.base().from_i64(3 * rng.gen_range(0..modulus / 3));
    verify_conjugate_product_scalars(ctx, s, j)
}

fn verify_conjugate_product_scalars(
    ctx: &Arc<FamilyContext>,
    s: Scalar,
    j: Scalar,
) -> Result<(), String> {
    let base = ctx.base();
    let den = lib(ctx.element(s.clone(), j.clone()))?;
    let conj_r = base.sub(&base.mul(&j, ctx.a()), &s);
    let conj = lib(ctx.element(conj_r.clone(), j.clone()))?;
    let prod = lib(den.mul(&conj))?;
    let u = base.sub(
        &base.mul(&s, &conj_r),
        &base.mul(&base.mul(&j, &j), ctx.b()),
    );
    check!(
        base.eq(prod.r(), &u) && base.is_zero(prod.i()),
        "conjugate product of {den} is {prod}, expected the scalar {u}"
    );
    Ok(())
}

/// For every prime p < 1000 at (a,b) = (0,1), the fiber count over (p)
/// matches brute-force root enumeration; p=5 splits, p=3 does not.
fn check_prime_fibers() -> Result<String, String> {
    let mut primes = 0usize;
    for p in 2..1000u64 {
        if !is_prime(p) {
            continue;
        }
        primes += 1;
        let report = lib(count_primes_over(p, 0, 1))?;
        let brute = lib(brute_force_splitting(p, 0, 1))?;
        check!(
            report.splitting == brute,
            "splitting at p={p} is {} but brute force found {}",
            report.splitting,
            brute
        );
        let expected = match brute {
            Splitting::TwoDistinctRoots => 2,
            _ => 1,
        };
        check!(
            report.primes_over_quadratic == expected,
            "prime count at p={p} is {}, expected {expected}",
            report.primes_over_quadratic
        );
    }
    let at5 = lib(count_primes_over(5, 0, 1))?;
    check!(
        at5.primes_over_quadratic == 2,
        "p=5 should split into 2 primes, got {}",
        at5.primes_over_quadratic
    );
    let at3 = lib(count_primes_over(3, 0, 1))?;
    check!(
        at3.primes_over_quadratic == 1,
        "p=3 should stay prime, got {}",
        at3.primes_over_quadratic
    );
    Ok(format!(
        "fiber counts match brute force at all {primes} primes below 1000"
    ))
}

/// The doubling map at b = -X^5 over F_5[[<2,3>]] is multiplicative and
/// additive to precision 64, with image valuations inside <4,6,11>.
fn check_semigroup_ring_map() -> Result<String, String> {
    let field = lib(FieldKind::prime(5))?;
    let (s, e) = model_pair()?;
    let base = lib(BaseRing::series(field, s.clone(), 64))?;
    let ideal = lib(IdealSpec::from_value_set(&base, e.clone()))?;
    let b = Scalar::Series(TruncatedSeries::monomial(field, 5, field.from_i64(-1), 64));
    let ctx = lib(FamilyContext::new(base.clone(), ideal, base.zero(), b))?;
    let target = lib(duplication(&s, &e, 5))?.semigroup;

    let s_support = s.members_in(0, 15);
    let e_support = e.members_in(0, 15);
    let mut rng = ChaCha8Rng::seed_from_u64(0x0009_77fe);
    let mut valuations = 0usize;
    for _ in 0..500 {
        let x = lib(ctx.element(
            Scalar::Series(random_series(&mut rng, field, &s_support, 64)),
            Scalar::Series(random_series(&mut rng, field, &e_support, 64)),
        ))?;
        let y = lib(ctx.element(
            Scalar::Series(random_series(&mut rng, field, &s_support, 64)),
            Scalar::Series(random_series(&mut rng, field, &e_support, 64)),
        ))?;
        let fx = lib(phi_map(&x, 5))?;
        let fy = lib(phi_map(&y, 5))?;

        let f_prod = lib(phi_map(&lib(x.mul(&y))?, 5))?;
        let prod_f = lib(fx.mul(&fy))?;
        check!(
            f_prod.series().truncated(64).agrees_with(&prod_f.series().truncated(64)),
            "doubling map is not multiplicative at {x} * {y}"
        );
        let f_sum = lib(phi_map(&lib(x.add(&y))?, 5))?;
        let sum_f = lib(fx.add(&fy))?;
        check!(
            f_sum.series().truncated(64).agrees_with(&sum_f.series().truncated(64)),
            "doubling map is not additive at {x} + {y}"
        );

        if !x.is_zero() {
            match fx.valuation() {
                Valuation::Finite(v) => {
                    check!(
                        target.contains(v as i64),
                        "image valuation {v} of {x} lies outside {target}"
                    );
                    valuations += 1;
                }
                Valuation::AtLeast(_) => {
                    return Err(format!("nonzero {x} mapped below working precision"));
                }
            }
        }
    }
    Ok(format!(
        "doubling map is a ring map on 500 samples; {valuations} image valuations all in {target}"
    ))
}

/// t^2 - X^5 admits no series root; t^2 - X^4(1+X) over Q splits with an
/// explicit square-root witness.
fn check_reducibility_witness() -> Result<String, String> {
    let q = FieldKind::Rationals;
    let b_odd = TruncatedSeries::monomial(q, 5, q.one(), 64);
    check!(
        lib(irreducible_t2_minus_b(&b_odd))?,
        "t^2 - X^5 should be irreducible"
    );

    let b_even = TruncatedSeries::from_terms(q, [(4, q.one()), (5, q.one())], 64);
    check!(
        !lib(irreducible_t2_minus_b(&b_even))?,
        "t^2 - X^4(1+X) should be reducible over Q"
    );
    let w = lib(b_even.square_root())?
        .ok_or_else(|| "reducible case must produce a square-root witness".to_string())?;
    let w2 = w.mul(&w);
    check!(
        w2.precision() >= 64 && w2.agrees_with(&b_even),
        "witness fails: w^2 = {w2} differs from {b_even}"
    );
    check!(
        w.valuation() == Valuation::Finite(2),
        "witness valuation {}, expected 2",
        w.valuation()
    );
    Ok(format!(
        "odd valuation blocks the root; X^4(1+X) splits with witness {} + ...",
        w.truncated(6)
    ))
}
