//! Factorizations in `M_{r,S}` as finite-support coefficient vectors over the
//! generators `r^{s_n}`.
//!
//! Everything here rests on the rewriting identity
//! `n(r)^{delta_i} r^{s_i} = d(r)^{delta_i} r^{s_{i+1}}`. Applied right to left
//! it shortens a factorization when `r < 1` and yields the unique minimum-length
//! normal form; applied left to right as a carry it produces the maximum-length
//! factorization whenever one exists.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::arith::{mod_inverse, Ratio};
use crate::error::{Error, Result};
use crate::monoid::{AtomicityKind, ExpMonoid};

/// Default number of carry levels explored by [`ExpMonoid::max_length_sweep`].
pub const DEFAULT_LEVEL_BOUND: usize = 64;

/// A formal sum `sum c_n r^{s_n}` with finitely many nonzero `c_n`.
///
/// Ordering is lexicographic on the sorted `(index, coefficient)` pairs, which
/// is the canonical order used for every returned set.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factorization {
    coeffs: BTreeMap<usize, BigUint>,
}

impl Factorization {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from `(index, coefficient)` pairs; repeated indices add up and
    /// zero coefficients are dropped.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigUint>,
    {
        let mut z = Factorization::new();
        for (i, c) in pairs {
            z.add(i, &c.into());
        }
        z
    }

    /// Dense vector `c_0..c_{len-1}`, zeros included.
    pub fn from_dense(coeffs: &[BigUint]) -> Self {
        Self::from_pairs(coeffs.iter().cloned().enumerate())
    }

    pub fn get(&self, i: usize) -> BigUint {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, c: BigUint) {
        if c.is_zero() {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, c);
        }
    }

    pub fn add(&mut self, i: usize, c: &BigUint) {
        if c.is_zero() {
            return;
        }
        *self.coeffs.entry(i).or_default() += c;
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `|z| = sum c_n`.
    pub fn length(&self) -> BigUint {
        self.coeffs.values().sum()
    }

    pub fn top_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    /// `[[index, coefficient], ...]`; coefficients beyond u64 are strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.iter()
                .map(|(i, c)| {
                    let c = c
                        .to_u64()
                        .map(Value::from)
                        .unwrap_or_else(|| Value::from(c.to_string()));
                    Value::Array(vec![Value::from(i), c])
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let pairs = v
            .as_array()
            .ok_or_else(|| Error::parse("factorization must be an array of [index, coefficient] pairs"))?;
        let mut z = Factorization::new();
        for p in pairs {
            let (i, c) = match p.as_array().map(Vec::as_slice) {
                Some([i, c]) => (i, c),
                _ => return Err(Error::parse(format!("bad factorization entry {p}"))),
            };
            let i = i
                .as_u64()
                .and_then(|i| usize::try_from(i).ok())
                .ok_or_else(|| Error::parse(format!("bad index {i}")))?;
            let c = match c {
                Value::Number(n) => n
                    .as_u64()
                    .map(BigUint::from)
                    .ok_or_else(|| Error::parse(format!("bad coefficient {n}")))?,
                Value::String(s) => crate::arith::parse_nat(s)?,
                other => return Err(Error::parse(format!("bad coefficient {other}"))),
            };
            z.add(i, &c);
        }
        Ok(z)
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Result of the maximum-length carry sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaxLengthOutcome {
    /// The unique factorization of maximum length.
    Found(Factorization),
    /// Carries were still nonzero after this many levels.
    NoTerminationWithinBound(usize),
}

/// Lengths of the factorizations found within a support bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthSet {
    pub lengths: Vec<BigUint>,
    /// The minimum is the true `min L(x)`.
    pub min_exact: bool,
    /// The maximum is the true `max L(x)`.
    pub max_exact: bool,
}

fn big_pow(b: &BigUint, e: u64) -> BigUint {
    Pow::pow(b, e)
}

impl ExpMonoid {
    fn require_below_one(&self, op: &str) -> Result<()> {
        if self.below_one() {
            Ok(())
        } else {
            Err(Error::precondition(format!(
                "{op} needs r < 1; use finite enumeration for r >= 1"
            )))
        }
    }

    /// Value `sum c_n r^{s_n}`, exact.
    pub fn evaluate(&self, z: &Factorization) -> Result<Ratio> {
        let Some(top) = z.top_index() else {
            return Ok(Ratio::zero());
        };
        let exps = self.delta().exponents(top)?;
        // Common denominator d^{s_top}.
        let s_top = exps[top];
        let mut num = BigUint::zero();
        for (i, c) in z.iter() {
            num += c * big_pow(self.n(), exps[i]) * big_pow(self.d(), s_top - exps[i]);
        }
        Ratio::new(num, big_pow(self.d(), s_top))
    }

    #[cfg(debug_assertions)]
    fn assert_same_value(&self, a: &Factorization, b: &Factorization) -> Result<()> {
        assert_eq!(self.evaluate(a)?, self.evaluate(b)?, "rewriting changed the value");
        Ok(())
    }

    #[cfg(not(debug_assertions))]
    fn assert_same_value(&self, _: &Factorization, _: &Factorization) -> Result<()> {
        Ok(())
    }

    /// One application of `d^{delta_{i-1}} r^{s_i} -> n^{delta_{i-1}} r^{s_{i-1}}`.
    pub fn rewrite_down_step(&self, z: &Factorization, i: usize) -> Result<Factorization> {
        self.require_below_one("rewrite_down_step")?;
        if i == 0 {
            return Err(Error::precondition("step not applicable: index 0 has no lower neighbour"));
        }
        let gap = self.delta().delta(i - 1)?;
        let block = big_pow(self.d(), gap);
        let c = z.get(i);
        if c < block {
            return Err(Error::precondition(format!(
                "step not applicable: c_{i} = {c} < d(r)^delta_{} = {block}",
                i - 1
            )));
        }
        let mut out = z.clone();
        out.set(i, c - block);
        out.add(i - 1, &big_pow(self.n(), gap));
        self.assert_same_value(z, &out)?;
        Ok(out)
    }

    /// The unique minimum-length factorization of `value(z)`: all coefficients
    /// `c_i < d(r)^{delta_{i-1}}` for `i >= 1`.
    ///
    /// Steps are applied at the highest index first; a single downward pass
    /// suffices because lower indices never feed back upward.
    pub fn min_normal_form(&self, z: &Factorization) -> Result<Factorization> {
        self.require_below_one("min_normal_form")?;
        let Some(top) = z.top_index() else {
            return Ok(Factorization::new());
        };
        let gaps = self.delta().gaps(top)?;
        let mut out = z.clone();
        for i in (1..=top).rev() {
            let block = big_pow(self.d(), gaps[i - 1]);
            let (q, rem) = out.get(i).div_rem(&block);
            if q.is_zero() {
                continue;
            }
            out.set(i, rem);
            out.add(i - 1, &(q * big_pow(self.n(), gaps[i - 1])));
        }
        self.assert_same_value(z, &out)?;
        Ok(out)
    }

    /// Whether `z` already satisfies the minimum-length criterion.
    pub fn is_min_normal(&self, z: &Factorization) -> Result<bool> {
        for (i, c) in z.iter().filter(|&(i, _)| i > 0) {
            if *c >= big_pow(self.d(), self.delta().delta(i - 1)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Low-to-high carry: at level `i` keep `c_i mod n^{delta_i}` and carry
    /// `(c_i div n^{delta_i}) * d^{delta_i}` to level `i + 1`.
    ///
    /// When the gap rule eventually satisfies `d^{delta_i} < n^{delta_{i+1}}`
    /// the carries strictly decrease past the support, so the sweep runs to
    /// completion and `level_bound` is ignored.
    pub fn max_length_sweep(&self, z: &Factorization, level_bound: usize) -> Result<MaxLengthOutcome> {
        self.require_below_one("max_length_sweep")?;
        let top = z.top_index();
        let guaranteed = crate::accp::sufficient_condition_eventually(self);
        let limit = level_bound.max(top.map_or(0, |t| t));
        let last = self.delta().last_index();
        let mut out = Factorization::new();
        let mut carry = BigUint::zero();
        let mut i = 0usize;
        loop {
            let total = z.get(i) + &carry;
            if top.is_none_or(|t| i > t) && total.is_zero() {
                break;
            }
            if last == Some(i) {
                out.set(i, total);
                break;
            }
            if !guaranteed && i > limit {
                return Ok(MaxLengthOutcome::NoTerminationWithinBound(level_bound));
            }
            let gap = self.delta().delta(i)?;
            let (q, rem) = total.div_rem(&big_pow(self.n(), gap));
            out.set(i, rem);
            carry = q * big_pow(self.d(), gap);
            i += 1;
        }
        self.assert_same_value(z, &out)?;
        Ok(MaxLengthOutcome::Found(out))
    }

    /// Sufficient condition for `|Z(value(z))| = 1`: every `c_i < n(r)`.
    pub fn unique_factorization_check(&self, z: &Factorization) -> Result<bool> {
        self.require_below_one("unique_factorization_check")?;
        Ok(z.iter().all(|(_, c)| c < self.n()))
    }

    /// Largest generator index that can occur in a factorization: 0 when
    /// `d(r) = 1` (the only atom is 1), the last index for finite sets.
    fn clip_index(&self, max_index: usize) -> usize {
        if self.d().is_one() {
            return 0;
        }
        match self.delta().last_index() {
            Some(last) => max_index.min(last),
            None => max_index,
        }
    }

    /// For `r > 1`: the first index whose generator exceeds `x` (clipped to a
    /// finite set). Restricting support to this bound loses nothing.
    pub fn natural_bound(&self, x: &Ratio) -> Option<usize> {
        if self.d().is_one() {
            return Some(0);
        }
        if !self.above_one() {
            return None;
        }
        let mut n = 0usize;
        loop {
            if self.delta().last_index() == Some(n) {
                return Some(n);
            }
            match self.atom(n) {
                Ok(a) if a > *x => return Some(n),
                Ok(_) => n += 1,
                Err(_) => return Some(n),
            }
        }
    }

    fn search_plan(&self, x: &Ratio, max_index: usize) -> Result<Option<SearchPlan>> {
        let b = self.clip_index(max_index);
        let exps = self.delta().exponents(b)?;
        let scale = big_pow(self.d(), exps[b]);
        let scaled = x.numer() * &scale;
        let (target, rem) = scaled.div_rem(x.denom());
        if !rem.is_zero() {
            return Ok(None);
        }
        let n_pows: Vec<BigUint> = exps.iter().map(|&s| big_pow(self.n(), s)).collect();
        let mut moduli = vec![BigUint::one()];
        let mut inverses = vec![BigUint::zero()];
        for i in 1..=b {
            let m = big_pow(self.d(), exps[i] - exps[i - 1]);
            let inv = mod_inverse(&n_pows[i], &m).expect("gcd(n(r), d(r)) = 1");
            moduli.push(m);
            inverses.push(inv);
        }
        Ok(Some(SearchPlan {
            target,
            n_pows,
            moduli,
            inverses,
        }))
    }

    /// Every factorization of `x` with support in `[0, max_index]`, in
    /// canonical order.
    ///
    /// Works over the common denominator `d^{s_B}`: at level `i` the coefficient
    /// is pinned modulo `d^{delta_{i-1}}` because every lower generator carries
    /// that factor, so only one residue class is walked, capped by
    /// `c_i <= x / r^{s_i}`.
    pub fn enumerate_all(&self, x: &Ratio, max_index: usize) -> Result<Vec<Factorization>> {
        let mut out = Vec::new();
        if let Some(plan) = self.search_plan(x, max_index)? {
            let _ = plan.walk(&mut |dense| {
                out.push(Factorization::from_dense(dense));
                ControlFlow::Continue(())
            });
        }
        out.sort();
        Ok(out)
    }

    /// First factorization of `x` with support in `[0, max_index]`.
    pub fn find_factorization(&self, x: &Ratio, max_index: usize) -> Result<Option<Factorization>> {
        let mut found = None;
        if let Some(plan) = self.search_plan(x, max_index)? {
            let _ = plan.walk(&mut |dense| {
                found = Some(Factorization::from_dense(dense));
                ControlFlow::Break(())
            });
        }
        Ok(found)
    }

    /// For `r < 1`: the minimum-length factorization of `x` among those with
    /// support in `[0, max_index]`, or `None` if there are none.
    ///
    /// The normal-form inequalities leave exactly one admissible residue at each
    /// level, so this is a single top-down pass.
    pub fn min_factorization_within(&self, x: &Ratio, max_index: usize) -> Result<Option<Factorization>> {
        self.require_below_one("min_factorization_within")?;
        let Some(plan) = self.search_plan(x, max_index)? else {
            return Ok(None);
        };
        let b = plan.n_pows.len() - 1;
        let mut target = plan.target;
        let mut z = Factorization::new();
        for i in (1..=b).rev() {
            let m = &plan.moduli[i];
            let c = (&target % m) * &plan.inverses[i] % m;
            let used = &c * &plan.n_pows[i];
            if used > target {
                return Ok(None);
            }
            target = (target - used) / m;
            z.set(i, c);
        }
        z.set(0, target);
        Ok(Some(z))
    }

    /// Lengths of the factorizations of `x` supported in `[0, max_index]`
    /// (the full length set when `r > 1`), plus exactness flags.
    ///
    /// For `r < 1` the minimum is always exact and the maximum is exact when
    /// the carry sweep terminates; the maximum-length factorization's length
    /// is included even if its support exceeds `max_index`.
    pub fn length_set(&self, x: &Ratio, max_index: usize) -> Result<LengthSet> {
        match self.classify_atomicity().kind {
            AtomicityKind::Antimatter => {
                return Err(Error::precondition("monoid is antimatter: no factorizations"))
            }
            AtomicityKind::IsoNaturals => {
                if !x.is_integer() {
                    return Err(Error::precondition("membership unresolved: no witness found"));
                }
                return Ok(LengthSet {
                    lengths: vec![x.numer().clone()],
                    min_exact: true,
                    max_exact: true,
                });
            }
            AtomicityKind::Atomic => {}
        }
        if self.above_one() {
            let bound = self.natural_bound(x).expect("r > 1").max(max_index);
            let all = self.enumerate_all(x, bound)?;
            if all.is_empty() {
                return Err(Error::precondition("membership unresolved: no witness found"));
            }
            let mut lengths: Vec<BigUint> = all.iter().map(Factorization::length).collect();
            lengths.sort();
            lengths.dedup();
            return Ok(LengthSet {
                lengths,
                min_exact: true,
                max_exact: true,
            });
        }
        let all = self.enumerate_all(x, max_index)?;
        let Some(witness) = all.first() else {
            return Err(Error::precondition("membership unresolved: no witness found"));
        };
        let mut lengths: Vec<BigUint> = all.iter().map(Factorization::length).collect();
        let max_exact = match self.max_length_sweep(witness, DEFAULT_LEVEL_BOUND)? {
            MaxLengthOutcome::Found(w) => {
                lengths.push(w.length());
                true
            }
            MaxLengthOutcome::NoTerminationWithinBound(_) => false,
        };
        lengths.sort();
        lengths.dedup();
        Ok(LengthSet {
            lengths,
            min_exact: true,
            max_exact,
        })
    }
}

/// Residue-pruned search state for `sum_i c_i n^{s_i} d^{s_B - s_i} = target`.
struct SearchPlan {
    target: BigUint,
    /// `n^{s_i}`
    n_pows: Vec<BigUint>,
    /// `d^{delta_{i-1}}` (index 0 unused)
    moduli: Vec<BigUint>,
    /// `n^{-s_i} mod d^{delta_{i-1}}` (index 0 unused)
    inverses: Vec<BigUint>,
}

impl SearchPlan {
    fn walk(&self, visit: &mut impl FnMut(&[BigUint]) -> ControlFlow<()>) -> ControlFlow<()> {
        let b = self.n_pows.len() - 1;
        let mut coeffs = vec![BigUint::zero(); b + 1];
        self.descend(b, self.target.clone(), &mut coeffs, visit)
    }

    fn descend(
        &self,
        i: usize,
        target: BigUint,
        coeffs: &mut Vec<BigUint>,
        visit: &mut impl FnMut(&[BigUint]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == 0 {
            coeffs[0] = target;
            return visit(coeffs);
        }
        let m = &self.moduli[i];
        let weight = &self.n_pows[i];
        let mut c = (&target % m) * &self.inverses[i] % m;
        loop {
            let used = &c * weight;
            if used > target {
                break;
            }
            coeffs[i] = c.clone();
            let next = (&target - used) / m;
            self.descend(i - 1, next, coeffs, visit)?;
            c += m;
        }
        coeffs[i] = BigUint::zero();
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> ExpMonoid {
        s.parse().unwrap()
    }

    fn q(s: &str) -> Ratio {
        s.parse().unwrap()
    }

    fn z(pairs: &[(usize, u64)]) -> Factorization {
        Factorization::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn evaluate_examples() {
        let mon = m("r=2/3; delta=const(1)");
        assert_eq!(mon.evaluate(&z(&[])).unwrap(), Ratio::zero());
        assert_eq!(mon.evaluate(&z(&[(0, 2)])).unwrap(), q("2"));
        assert_eq!(mon.evaluate(&z(&[(1, 1), (2, 3)])).unwrap(), q("2"));
    }

    #[test]
    fn rewrite_step_examples() {
        let mon = m("r=2/3; delta=const(1)");
        assert_eq!(mon.rewrite_down_step(&z(&[(1, 3)]), 1).unwrap(), z(&[(0, 2)]));
        let stepped = mon.rewrite_down_step(&z(&[(2, 9)]), 2).unwrap();
        assert_eq!(stepped, z(&[(1, 2), (2, 6)]));
        assert_eq!(mon.evaluate(&stepped).unwrap(), q("4"));
        assert!(matches!(
            mon.rewrite_down_step(&z(&[(1, 2)]), 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rewrite_step_shortens() {
        let mon = m("r=2/3; delta=const(1)");
        let before = z(&[(2, 9)]);
        let after = mon.rewrite_down_step(&before, 2).unwrap();
        assert!(after.length() < before.length());
    }

    #[test]
    fn min_normal_form_examples() {
        let mon = m("r=2/3; delta=const(1)");
        let nf = mon.min_normal_form(&z(&[(1, 3)])).unwrap();
        assert_eq!(nf, z(&[(0, 2)]));
        assert_eq!(nf.length(), BigUint::from(2u32));
        let nf = mon.min_normal_form(&z(&[(2, 9)])).unwrap();
        assert_eq!(nf, z(&[(0, 4)]));
        assert_eq!(mon.min_normal_form(&z(&[(0, 2)])).unwrap(), z(&[(0, 2)]));
    }

    #[test]
    fn min_normal_form_needs_r_below_one() {
        let mon = m("r=3/2; delta=const(1)");
        assert!(matches!(mon.min_normal_form(&z(&[(0, 1)])), Err(Error::Precondition(_))));
        assert!(matches!(
            mon.max_length_sweep(&z(&[(0, 1)]), 8),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn max_length_examples() {
        let flat = m("r=2/3; delta=const(1)");
        assert_eq!(
            flat.max_length_sweep(&z(&[(0, 1)]), DEFAULT_LEVEL_BOUND).unwrap(),
            MaxLengthOutcome::Found(z(&[(0, 1)]))
        );
        assert_eq!(
            flat.max_length_sweep(&z(&[(0, 2)]), 64).unwrap(),
            MaxLengthOutcome::NoTerminationWithinBound(64)
        );
        let geom = m("r=2/3; delta=geom(1,2)");
        let found = geom.max_length_sweep(&z(&[(0, 2)]), 16).unwrap();
        assert_eq!(found, MaxLengthOutcome::Found(z(&[(1, 3)])));
    }

    #[test]
    fn max_length_ignores_bound_when_guaranteed() {
        let geom = m("r=2/3; delta=geom(1,2)");
        let out = geom.max_length_sweep(&z(&[(0, 40)]), 1).unwrap();
        let MaxLengthOutcome::Found(w) = out else { panic!("expected termination") };
        assert_eq!(geom.evaluate(&w).unwrap(), q("40"));
    }

    #[test]
    fn max_length_on_finite_set_stops_at_last_generator() {
        let fin = m("r=2/3; delta=prefix(1); finite");
        let out = fin.max_length_sweep(&z(&[(0, 4)]), 1).unwrap();
        assert_eq!(out, MaxLengthOutcome::Found(z(&[(1, 6)])));
    }

    #[test]
    fn enumerate_examples() {
        let mon = m("r=2/3; delta=const(1)");
        let all = mon.enumerate_all(&q("2"), 3).unwrap();
        let expected = vec![
            z(&[(0, 2)]),
            z(&[(1, 1), (2, 1), (3, 3)]),
            z(&[(1, 1), (2, 3)]),
            z(&[(1, 3)]),
        ];
        assert_eq!(all, expected);
        for f in &all {
            assert_eq!(mon.evaluate(f).unwrap(), q("2"));
        }
        assert_eq!(mon.enumerate_all(&Ratio::zero(), 5).unwrap(), vec![Factorization::new()]);
        assert_eq!(mon.enumerate_all(&q("1"), 4).unwrap(), vec![z(&[(0, 1)])]);
        assert!(mon.enumerate_all(&q("1/5"), 4).unwrap().is_empty());
    }

    #[test]
    fn enumerate_above_one_is_complete_at_natural_bound() {
        let mon = m("r=3/2; delta=const(1)");
        let x = q("9/2");
        let bound = mon.natural_bound(&x).unwrap();
        assert_eq!(bound, 4); // (3/2)^4 = 81/16 > 9/2
        let all = mon.enumerate_all(&x, bound).unwrap();
        assert!(!all.is_empty());
        assert_eq!(all, mon.enumerate_all(&x, bound + 3).unwrap());
    }

    #[test]
    fn integer_base_has_single_atom() {
        let mon = m("r=3; delta=const(1)");
        assert_eq!(mon.enumerate_all(&q("5"), 4).unwrap(), vec![z(&[(0, 5)])]);
        let ls = mon.length_set(&q("5"), 4).unwrap();
        assert_eq!(ls.lengths, vec![BigUint::from(5u32)]);
    }

    #[test]
    fn length_set_examples() {
        let flat = m("r=2/3; delta=const(1)");
        let ls = flat.length_set(&q("2"), 3).unwrap();
        let want: Vec<BigUint> = (2u32..=5).map(BigUint::from).collect();
        assert_eq!(ls.lengths, want);
        assert!(ls.min_exact && !ls.max_exact);

        let geom = m("r=2/3; delta=geom(1,2)");
        let ls = geom.length_set(&q("2"), 2).unwrap();
        assert_eq!(ls.lengths, vec![BigUint::from(2u32), BigUint::from(3u32)]);
        assert!(ls.min_exact && ls.max_exact);

        let ls = geom.length_set(&q("1"), 4).unwrap();
        assert_eq!(ls.lengths, vec![BigUint::one()]);
        assert!(ls.max_exact);

        assert!(matches!(flat.length_set(&q("1/5"), 4), Err(Error::Precondition(_))));
        assert!(m("r=1/2; delta=const(1)").length_set(&q("1"), 2).is_err());
    }

    #[test]
    fn unique_factorization_examples() {
        let mon = m("r=2/3; delta=const(1)");
        assert!(mon.unique_factorization_check(&z(&[(0, 1), (1, 1)])).unwrap());
        assert!(!mon.unique_factorization_check(&z(&[(0, 2)])).unwrap());
        assert!(mon.unique_factorization_check(&z(&[])).unwrap());
        assert_eq!(mon.enumerate_all(&q("2"), 3).unwrap().len(), 4);
    }

    #[test]
    fn min_factorization_within_matches_normal_form() {
        let mon = m("r=2/3; delta=const(1)");
        assert_eq!(mon.min_factorization_within(&q("4/3"), 4).unwrap(), Some(z(&[(1, 2)])));
        assert_eq!(mon.min_factorization_within(&q("4/3"), 1).unwrap(), Some(z(&[(1, 2)])));
        assert_eq!(mon.min_factorization_within(&q("1/5"), 6).unwrap(), None);
    }

    #[test]
    fn json_round_trip() {
        let f = z(&[(2, 3), (1, 1)]);
        assert_eq!(f.to_string(), "[[1,1],[2,3]]");
        assert_eq!(Factorization::parse_json("[[1,1],[2,3]]").unwrap(), f);
        assert_eq!(Factorization::parse_json(r#"[[0,"12345678901234567890123"]]"#).unwrap().get(0).to_string(), "12345678901234567890123");
        assert!(Factorization::parse_json("[[1]]").is_err());
        assert!(Factorization::parse_json("[[-1,2]]").is_err());
    }
}
