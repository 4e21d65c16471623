//! Numerical semigroups, relative ideals, and the numerical duplication.
//!
//! A numerical semigroup is a cofinite additive submonoid of the natural
//! numbers, described here by its minimal generators, Frobenius number and
//! gap set. Relative ideals are the bounded-below subsets closed under
//! addition by the semigroup; they carry the ideal calculus (sums,
//! differences, intersections) needed for duplication and type formulas.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest accepted generator, keeps sieve windows bounded.
pub const MAX_GENERATOR: u64 = 1 << 20;
/// Hard cap on any internal membership sieve.
const MAX_SIEVE: usize = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    /// The generators do not span a cofinite monoid.
    #[error("generators have gcd {0}, expected 1")]
    NotNumerical(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Only raised for <1>, whose canonical ideal degenerates.
    #[error("the full monoid <1> has no proper canonical ideal")]
    NoProperCanonical,
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// A numerical semigroup in minimal-generator form.
///
/// Invariants: generators sorted ascending and irredundant, `frobenius` is
/// the largest non-member (`-1` for the full monoid), `gaps` lists every
/// positive non-member in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    frobenius: i64,
    gaps: Vec<u64>,
}

/// JSON-facing summary of a semigroup.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SemigroupRecord {
    pub generators: Vec<u64>,
    pub frobenius: i64,
    pub gaps: Vec<u64>,
    pub genus: usize,
    #[serde(rename = "type")]
    pub type_: usize,
    pub symmetric: bool,
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// DP membership table over `[0, bound]`.
fn sieve(gens: &[u64], bound: usize) -> Vec<bool> {
    let mut member = vec![false; bound + 1];
    member[0] = true;
    for n in 1..=bound {
        member[n] = gens
            .iter()
            .take_while(|&&g| g as usize <= n)
            .any(|&g| member[n - g as usize]);
    }
    member
}

/// First index `c` with `run` consecutive members starting at `c`.
fn first_full_run(member: &[bool], run: usize) -> Option<usize> {
    let mut streak = 0usize;
    for (n, &m) in member.iter().enumerate() {
        if m {
            streak += 1;
            if streak == run {
                return Some(n + 1 - run);
            }
        } else {
            streak = 0;
        }
    }
    None
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `gens`, minimizing the generating set.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::InvalidArgument(
                "at least one generator is required".into(),
            ));
        }
        if gens.contains(&0) {
            return Err(SemigroupError::InvalidArgument(
                "generators must be positive".into(),
            ));
        }
        if let Some(&big) = gens.iter().find(|&&g| g > MAX_GENERATOR) {
            return Err(SemigroupError::TooLarge(format!(
                "generator {big} exceeds {MAX_GENERATOR}"
            )));
        }
        let mut g: Vec<u64> = gens.to_vec();
        g.sort_unstable();
        g.dedup();
        let d = g.iter().fold(0, |acc, &x| gcd(acc, x));
        if d != 1 {
            return Err(SemigroupError::NotNumerical(d));
        }
        if g[0] == 1 {
            return Ok(Self::natural());
        }
        let min = g[0] as usize;
        let max = *g.last().unwrap() as usize;

        // (min-1)(max-1) covers the two-generator worst case, then doubled
        // until a run of `min` consecutive members certifies cofiniteness.
        let mut bound = (min - 1) * (max - 1) + max + 2;
        loop {
            if bound > MAX_SIEVE {
                return Err(SemigroupError::TooLarge(
                    "membership sieve exceeds the internal window cap".into(),
                ));
            }
            let member = sieve(&g, bound);
            if let Some(run_start) = first_full_run(&member, min) {
                return Self::from_member_table(&member, run_start, Some(&g));
            }
            bound *= 2;
        }
    }

    /// The full monoid <1>.
    pub fn natural() -> Self {
        NumericalSemigroup {
            generators: vec![1],
            frobenius: -1,
            gaps: Vec::new(),
        }
    }

    /// Assembles invariants from a verified membership table.
    ///
    /// `run_start` must satisfy: every index >= run_start is a member. When
    /// `input_gens` is given, minimal generators are filtered from it;
    /// otherwise they are recomputed from scratch by a decomposition scan.
    fn from_member_table(
        member: &[bool],
        run_start: usize,
        input_gens: Option<&[u64]>,
    ) -> Result<Self, SemigroupError> {
        let frobenius = (0..run_start).rev().find(|&n| !member[n]);
        let frobenius = match frobenius {
            Some(f) => f as i64,
            None => -1,
        };
        let gaps: Vec<u64> = (1..run_start).filter(|&n| !member[n]).map(|n| n as u64).collect();
        debug_assert_eq!(gaps.last().map(|&g| g as i64).unwrap_or(-1), frobenius);

        let contains = |n: usize| n >= run_start || member[n];
        let generators: Vec<u64> = match input_gens {
            Some(gens) => gens
                .iter()
                .copied()
                .filter(|&g| {
                    !gens
                        .iter()
                        .any(|&h| h < g && contains((g - h) as usize))
                })
                .collect(),
            None => {
                // A member is a minimal generator when it has no splitting
                // into two nonzero members.
                let mult = (1..member.len()).find(|&n| member[n]).ok_or_else(|| {
                    SemigroupError::Internal("member table has no nonzero member".into())
                })?;
                let hi = frobenius.max(0) as usize + mult;
                let mut out = Vec::new();
                for n in 1..=hi {
                    if !contains(n) {
                        continue;
                    }
                    let split = (mult..=n / 2).any(|x| contains(x) && contains(n - x));
                    if !split {
                        out.push(n as u64);
                    }
                }
                out
            }
        };
        Ok(NumericalSemigroup {
            generators,
            frobenius,
            gaps,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Largest integer outside the semigroup, -1 for <1>.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    /// Least bound past which every integer is a member.
    pub fn conductor(&self) -> i64 {
        self.frobenius + 1
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    /// Least nonzero member.
    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn max_generator(&self) -> u64 {
        *self.generators.last().unwrap()
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        if n >= self.conductor() {
            return true;
        }
        if n == 0 {
            return true;
        }
        self.gaps.binary_search(&(n as u64)).is_err()
    }

    /// Members in `[lo, hi)`, ascending.
    pub fn members_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo.max(0)..hi).filter(|&n| self.contains(n)).collect()
    }

    /// The n smallest members in distinct residue classes mod `n`.
    pub fn apery_set(&self, n: u64) -> Result<Vec<i64>, SemigroupError> {
        if n == 0 || !self.contains(n as i64) {
            return Err(SemigroupError::InvalidArgument(format!(
                "apery base {n} must be a nonzero member"
            )));
        }
        let n = n as i64;
        let mut found: Vec<Option<i64>> = vec![None; n as usize];
        let mut remaining = n;
        let mut k = 0i64;
        while remaining > 0 {
            if self.contains(k) {
                let r = (k % n) as usize;
                if found[r].is_none() {
                    found[r] = Some(k);
                    remaining -= 1;
                }
            }
            k += 1;
        }
        let mut out: Vec<i64> = found.into_iter().map(|v| v.unwrap()).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Gaps x with x + (S \ {0}) inside S; `{-1}` for <1> by convention.
    pub fn pseudo_frobenius(&self) -> Vec<i64> {
        if self.generators == [1] {
            return vec![-1];
        }
        self.gaps
            .iter()
            .map(|&g| g as i64)
            .filter(|&g| self.generators.iter().all(|&h| self.contains(g + h as i64)))
            .collect()
    }

    /// Number of pseudo-Frobenius elements, the Cohen-Macaulay type of k[[S]].
    pub fn semigroup_type(&self) -> usize {
        self.pseudo_frobenius().len()
    }

    /// True when gap g implies frobenius - g is a member.
    pub fn is_symmetric(&self) -> bool {
        self.gaps
            .iter()
            .all(|&g| self.contains(self.frobenius - g as i64))
    }

    pub fn record(&self) -> SemigroupRecord {
        SemigroupRecord {
            generators: self.generators.clone(),
            frobenius: self.frobenius,
            gaps: self.gaps.clone(),
            genus: self.genus(),
            type_: self.semigroup_type(),
            symmetric: self.is_symmetric(),
        }
    }
}

/// A relative ideal E of a numerical semigroup: bounded below, E + S inside E.
///
/// Stored as the ambient semigroup, the floor, and every member inside the
/// canonical window `[floor, floor + conductor + max_generator]`; membership
/// past the window is automatic because the tail is cofinite from
/// `floor + conductor` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeIdeal {
    ambient: NumericalSemigroup,
    floor: i64,
    elements: Vec<i64>,
}

impl fmt::Display for RelativeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ideal(")?;
        for (k, e) in self.minimal_generators().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ";")?;
        for (k, g) in self.ambient.generators().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

const MAX_IDEAL_SHIFT: i64 = 1 << 20;

impl RelativeIdeal {
    fn window_len(ambient: &NumericalSemigroup) -> i64 {
        ambient.conductor() + ambient.max_generator() as i64 + 1
    }

    /// Builds a window representation from an exact membership predicate.
    ///
    /// `floor` must be the least member and the predicate must describe a
    /// relative ideal; closure is checked in debug builds.
    fn from_membership(
        ambient: &NumericalSemigroup,
        floor: i64,
        member: impl Fn(i64) -> bool,
    ) -> Self {
        let len = Self::window_len(ambient);
        let elements: Vec<i64> = (floor..floor + len).filter(|&n| member(n)).collect();
        debug_assert_eq!(elements.first(), Some(&floor));
        let ideal = RelativeIdeal {
            ambient: ambient.clone(),
            floor,
            elements,
        };
        debug_assert!(ideal.closure_holds());
        ideal
    }

    fn closure_holds(&self) -> bool {
        // every n past floor + conductor must be stored, and E + gens must stay in E
        let tail = self.tail_start();
        let end = self.floor + Self::window_len(&self.ambient);
        (tail..end).all(|n| self.contains(n))
            && self.elements.iter().all(|&e| {
                self.ambient
                    .generators()
                    .iter()
                    .all(|&g| self.contains(e + g as i64))
            })
    }

    /// The union of g + S over the given generators.
    pub fn from_generators(
        ambient: &NumericalSemigroup,
        gens: &[i64],
    ) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::InvalidArgument(
                "at least one ideal generator is required".into(),
            ));
        }
        if let Some(&big) = gens.iter().find(|&&g| g.unsigned_abs() > MAX_IDEAL_SHIFT as u64) {
            return Err(SemigroupError::TooLarge(format!(
                "ideal generator {big} exceeds the supported range"
            )));
        }
        let floor = *gens.iter().min().unwrap();
        Ok(Self::from_membership(ambient, floor, |n| {
            gens.iter().any(|&g| ambient.contains(n - g))
        }))
    }

    /// S itself viewed as a relative ideal.
    pub fn whole(ambient: &NumericalSemigroup) -> Self {
        Self::from_membership(ambient, 0, |n| ambient.contains(n))
    }

    /// The maximal ideal M = S \ {0}.
    pub fn maximal_ideal(ambient: &NumericalSemigroup) -> Self {
        let floor = ambient.multiplicity() as i64;
        Self::from_membership(ambient, floor, |n| n != 0 && ambient.contains(n))
    }

    pub fn ambient(&self) -> &NumericalSemigroup {
        &self.ambient
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    /// Everything from here on is a member.
    pub fn tail_start(&self) -> i64 {
        self.floor + self.ambient.conductor()
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < self.floor {
            return false;
        }
        if n >= self.floor + Self::window_len(&self.ambient) {
            return true;
        }
        self.elements.binary_search(&n).is_ok()
    }

    /// Members in `[lo, hi)`, ascending.
    pub fn members_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo.max(self.floor)..hi).filter(|&n| self.contains(n)).collect()
    }

    /// Stored window members (everything below `floor + conductor + max gen`).
    pub fn window(&self) -> &[i64] {
        &self.elements
    }

    pub fn shifted(&self, c: i64) -> Result<Self, SemigroupError> {
        let floor = self
            .floor
            .checked_add(c)
            .filter(|f| f.unsigned_abs() <= 2 * MAX_IDEAL_SHIFT as u64)
            .ok_or_else(|| SemigroupError::TooLarge("ideal shift out of range".into()))?;
        Ok(RelativeIdeal {
            ambient: self.ambient.clone(),
            floor,
            elements: self.elements.iter().map(|&e| e + c).collect(),
        })
    }

    fn check_same_ambient(&self, other: &Self) -> Result<(), SemigroupError> {
        if self.ambient != other.ambient {
            return Err(SemigroupError::InvalidArgument(
                "ideals live over different ambient semigroups".into(),
            ));
        }
        Ok(())
    }

    /// Members e not expressible as (member) + (nonzero semigroup member).
    pub fn minimal_generators(&self) -> Vec<i64> {
        self.elements
            .iter()
            .copied()
            .filter(|&e| {
                !self
                    .ambient
                    .generators()
                    .iter()
                    .any(|&g| self.contains(e - g as i64))
            })
            .collect()
    }

    /// Minimal number of generators.
    pub fn generator_count(&self) -> usize {
        self.minimal_generators().len()
    }

    /// The ideal quotient `self - other = { z : z + other inside self }`.
    pub fn difference(&self, other: &Self) -> Result<Self, SemigroupError> {
        self.check_same_ambient(other)?;
        let zmin = self.floor - other.floor;
        let all_in = |z: i64| other.elements.iter().all(|&b| self.contains(z + b));
        let qual = |z: i64| z >= zmin && (z >= zmin + self.ambient.conductor() || all_in(z));
        let floor = (zmin..=zmin + self.ambient.conductor())
            .find(|&z| qual(z))
            .expect("difference tail always qualifies");
        Ok(Self::from_membership(&self.ambient, floor, qual))
    }

    /// The sumset `self + other`, again a relative ideal.
    pub fn sum(&self, other: &Self) -> Result<Self, SemigroupError> {
        self.check_same_ambient(other)?;
        let floor = self.floor + other.floor;
        Ok(Self::from_membership(&self.ambient, floor, |n| {
            (self.floor..=n - other.floor).any(|a| self.contains(a) && other.contains(n - a))
        }))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, SemigroupError> {
        self.check_same_ambient(other)?;
        let lo = self.floor.max(other.floor);
        let hi = self.tail_start().max(other.tail_start());
        let floor = (lo..=hi)
            .find(|&n| self.contains(n) && other.contains(n))
            .expect("cofinite ideals always intersect");
        Ok(Self::from_membership(&self.ambient, floor, |n| {
            self.contains(n) && other.contains(n)
        }))
    }

    /// The finite set `self \ other`, ascending.
    pub fn set_minus(&self, other: &Self) -> Result<Vec<i64>, SemigroupError> {
        self.check_same_ambient(other)?;
        let hi = self.tail_start().max(other.tail_start());
        Ok((self.floor..hi)
            .filter(|&n| self.contains(n) && !other.contains(n))
            .collect())
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool, SemigroupError> {
        Ok(self.set_minus(other)?.is_empty())
    }

    /// True when every member belongs to the ambient semigroup.
    pub fn contained_in_ambient(&self) -> bool {
        self.floor >= 0 && self.elements.iter().all(|&e| self.ambient.contains(e))
    }

    /// Value set of a proper monomial ideal: inside S and missing 0.
    pub fn is_proper(&self) -> bool {
        self.floor >= 1 && self.contained_in_ambient()
    }
}

/// Outcome of a numerical duplication, with the windows that witnessed it.
#[derive(Clone, Debug, Serialize)]
pub struct DuplicationResult {
    #[serde(serialize_with = "serialize_semigroup")]
    pub semigroup: NumericalSemigroup,
    /// 2S members inside the verified window.
    pub even_members: Vec<i64>,
    /// 2E + m members inside the verified window.
    pub odd_members: Vec<i64>,
    pub window_end: i64,
    /// Set when floor(E) = 0, i.e. E is all of S and the result is 2S + m-shifts.
    pub unit_ideal: bool,
}

fn serialize_semigroup<S>(s: &NumericalSemigroup, ser: S) -> Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    s.record().serialize(ser)
}

/// The numerical duplication `2S ∪ (2E + m)` for odd m in S and E inside S.
pub fn duplication(
    s: &NumericalSemigroup,
    e: &RelativeIdeal,
    m: i64,
) -> Result<DuplicationResult, SemigroupError> {
    if e.ambient() != s {
        return Err(SemigroupError::InvalidArgument(
            "ideal has a different ambient semigroup".into(),
        ));
    }
    if m <= 0 || m % 2 == 0 {
        return Err(SemigroupError::InvalidArgument(format!(
            "duplication offset m = {m} must be odd and positive"
        )));
    }
    if !s.contains(m) {
        return Err(SemigroupError::InvalidArgument(format!(
            "duplication offset m = {m} must be a member of the semigroup"
        )));
    }
    if !e.contained_in_ambient() {
        return Err(SemigroupError::InvalidArgument(
            "ideal must be contained in the semigroup".into(),
        ));
    }
    let unit_ideal = e.floor() == 0;

    let cond = s.conductor();
    // past c0 every even lands in 2S and every odd in 2E + m
    let c0 = (2 * cond).max(2 * (e.floor() + cond) + m);
    let window_end = c0 + 2 * (s.max_generator() as i64) + m + 2;
    if window_end as usize > MAX_SIEVE {
        return Err(SemigroupError::TooLarge(
            "duplication window exceeds the internal cap".into(),
        ));
    }

    let mut member = vec![false; window_end as usize + 1];
    let mut even_members = Vec::new();
    let mut odd_members = Vec::new();
    for n in 0..=window_end {
        let is_even = n % 2 == 0 && s.contains(n / 2);
        let is_odd = n % 2 == 1 && n >= m && e.contains((n - m) / 2);
        if is_even {
            even_members.push(n);
        }
        if is_odd {
            odd_members.push(n);
        }
        member[n as usize] = is_even || is_odd;
    }

    let semigroup = NumericalSemigroup::from_member_table(&member, c0 as usize, None)?;
    // regenerate from the derived minimal generators and insist on agreement
    let regenerated = NumericalSemigroup::from_generators(semigroup.generators())?;
    if regenerated != semigroup {
        return Err(SemigroupError::Internal(
            "duplication window disagrees with its regenerated semigroup".into(),
        ));
    }
    Ok(DuplicationResult {
        semigroup,
        even_members,
        odd_members,
        window_end,
        unit_ideal,
    })
}

/// The canonical ideal `{ z : frobenius - z not in S }` in definitional form
/// (floor 0).
pub fn canonical_ideal_raw(s: &NumericalSemigroup) -> Result<RelativeIdeal, SemigroupError> {
    if s.generators() == [1] {
        return Err(SemigroupError::NoProperCanonical);
    }
    let f = s.frobenius();
    Ok(RelativeIdeal::from_membership(s, 0, |z| !s.contains(f - z)))
}

/// The canonical ideal shifted by the least amount making it proper.
pub fn canonical_ideal(s: &NumericalSemigroup) -> Result<RelativeIdeal, SemigroupError> {
    let raw = canonical_ideal_raw(s)?;
    let cond = s.conductor();
    for c in 1..=cond.max(1) {
        let shifted = raw.shifted(c)?;
        if shifted.is_proper() {
            return Ok(shifted);
        }
    }
    // c = conductor always lands every member at or past the conductor
    Err(SemigroupError::Internal(
        "no proper shift of the canonical ideal found".into(),
    ))
}

fn require_proper(s: &NumericalSemigroup, e: &RelativeIdeal) -> Result<(), SemigroupError> {
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

/// Cohen-Macaulay type of the duplication ring attached to (S, E):
/// `|((E-E) ∩ (S-M)) \ S| + |(E-M) \ E|` with M the maximal ideal.
pub fn cm_type_family(
    s: &NumericalSemigroup,
    e: &RelativeIdeal,
) -> Result<usize, SemigroupError> {
    require_proper(s, e)?;
    let whole = RelativeIdeal::whole(s);
    let m = RelativeIdeal::maximal_ideal(s);
    let e_e = e.difference(e)?;
    let s_m = whole.difference(&m)?;
    let first = e_e.intersection(&s_m)?.set_minus(&whole)?.len();
    let second = e.difference(&m)?.set_minus(e)?.len();
    Ok(first + second)
}

/// True when E is a canonical ideal of S, detected by `|(E-M) \ E| = 1`.
pub fn is_canonical(s: &NumericalSemigroup, e: &RelativeIdeal) -> Result<bool, SemigroupError> {
    require_proper(s, e)?;
    let m = RelativeIdeal::maximal_ideal(s);
    Ok(e.difference(&m)?.set_minus(e)?.len() == 1)
}
