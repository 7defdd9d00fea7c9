//! Membership and divisibility in `M_{r,S}`.
//!
//! Negative answers are only given with a proof: a prime of `d(q)` missing
//! from `d(r)`, or an exhausted finite search. Bounded searches that find
//! nothing for `r < 1` are reported as unresolved.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde_json::{json, Value};

use crate::arith::{smallest_prime_factor, Ratio};
use crate::factorization::Factorization;
use crate::monoid::{AtomicityKind, ExpMonoid};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipResult {
    Member(Factorization),
    NotMember(String),
    UnresolvedWithinBound(usize),
}

impl MembershipResult {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipResult::Member(_))
    }

    pub fn status(&self) -> &'static str {
        match self {
            MembershipResult::Member(_) => "member",
            MembershipResult::NotMember(_) => "not-member",
            MembershipResult::UnresolvedWithinBound(_) => "unresolved",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            MembershipResult::Member(z) => json!({"membership": self.status(), "witness": z.to_json()}),
            MembershipResult::NotMember(why) => json!({"membership": self.status(), "reason": why}),
            MembershipResult::UnresolvedWithinBound(b) => json!({"membership": self.status(), "bound": b}),
        }
    }
}

/// A prime dividing `d(q)` but not `d(r)`, if any.
fn denominator_obstruction(q: &Ratio, m: &ExpMonoid) -> Option<BigUint> {
    let mut rest = q.denom().clone();
    loop {
        let g = rest.gcd(m.d());
        if g.is_one() {
            break;
        }
        while (&rest % &g).is_zero() {
            rest /= &g;
        }
    }
    smallest_prime_factor(&rest)
}

/// Smallest `m` with `d(q) | d(r)^{s_m}`, within the exponent set.
fn forced_level(q: &Ratio, m: &ExpMonoid) -> Option<usize> {
    if q.denom().is_one() {
        return Some(0);
    }
    let mut level = 0usize;
    loop {
        let s = m.s_index(level).ok()?;
        if (Pow::pow(m.d(), s) % q.denom()).is_zero() {
            return Some(level);
        }
        level += 1;
    }
}

/// `m + 3` where `m` is the denominator-forced level (0 if there is none).
pub fn default_support_bound(q: &Ratio, m: &ExpMonoid) -> usize {
    if denominator_obstruction(q, m).is_some() {
        return 3;
    }
    forced_level(q, m).unwrap_or(0) + 3
}

pub fn is_member(q: &Ratio, m: &ExpMonoid, support_bound: usize) -> MembershipResult {
    if q.is_zero() {
        return MembershipResult::Member(Factorization::new());
    }
    if let Some(p) = denominator_obstruction(q, m) {
        return MembershipResult::NotMember(format!("prime {p} \u{2224} d(r)={}", m.d()));
    }
    if m.d().is_one() {
        // The only atom is 1.
        return MembershipResult::Member(Factorization::from_pairs([(0usize, q.numer().clone())]));
    }
    if m.classify_atomicity().kind == AtomicityKind::Antimatter {
        // n(r) = 1: every rational with a forced level is a multiple of 1/d^{s_m}.
        return match forced_level(q, m) {
            Some(level) => {
                let s = m.s_index(level).expect("level exists");
                let c = q.numer() * (Pow::pow(m.d(), s) / q.denom());
                MembershipResult::Member(Factorization::from_pairs([(level, c)]))
            }
            None => MembershipResult::NotMember(format!(
                "d(q)={} does not divide d(r)^s for s in the finite exponent set",
                q.denom()
            )),
        };
    }
    if m.above_one() {
        let bound = m.natural_bound(q).expect("r > 1");
        return match m.find_factorization(q, bound) {
            Ok(Some(z)) => MembershipResult::Member(z),
            _ => MembershipResult::NotMember(format!(
                "exhausted finite search over support [0, {bound}]"
            )),
        };
    }
    match m.min_factorization_within(q, support_bound) {
        Ok(Some(z)) => MembershipResult::Member(z),
        _ => match m.delta().last_index() {
            Some(last) if support_bound >= last => MembershipResult::NotMember(format!(
                "no factorization over the finite exponent set (last index {last})"
            )),
            _ => MembershipResult::UnresolvedWithinBound(support_bound),
        },
    }
}

/// Whether `x | y` in `M`, i.e. `y - x` is a member.
pub fn divides(x: &Ratio, y: &Ratio, m: &ExpMonoid, support_bound: usize) -> MembershipResult {
    match y.checked_sub(x) {
        Some(diff) => is_member(&diff, m, support_bound),
        None => MembershipResult::NotMember("negative difference".to_string()),
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

    #[test]
    fn worked_examples() {
        let flat = m("r=2/3; delta=const(1)");
        assert_eq!(is_member(&q("0"), &flat, 0), MembershipResult::Member(Factorization::new()));
        assert_eq!(
            is_member(&q("1/5"), &flat, 4),
            MembershipResult::NotMember("prime 5 \u{2224} d(r)=3".into())
        );
        assert_eq!(
            is_member(&q("4/3"), &flat, 4),
            MembershipResult::Member(Factorization::from_pairs([(1usize, 2u32)]))
        );
        assert!(divides(&q("2/3"), &q("2"), &flat, 3).is_member());
        assert_eq!(divides(&q("2"), &q("2"), &flat, 3), MembershipResult::Member(Factorization::new()));
        assert_eq!(
            divides(&q("3"), &q("2"), &flat, 3),
            MembershipResult::NotMember("negative difference".into())
        );
    }

    #[test]
    fn above_one_is_decided() {
        let mon = m("r=5/2; delta=const(1)");
        assert!(is_member(&q("7/2"), &mon, 0).is_member());
        // 1/2 is below every generator carrying a 2 in the denominator.
        assert!(matches!(is_member(&q("1/2"), &mon, 0), MembershipResult::NotMember(_)));
        let mon = m("r=3/2; delta=const(2)");
        assert!(matches!(is_member(&q("3/2"), &mon, 9), MembershipResult::NotMember(_)));
    }

    #[test]
    fn degenerate_bases() {
        assert_eq!(
            is_member(&q("7"), &m("r=3; delta=const(1)"), 0),
            MembershipResult::Member(Factorization::from_pairs([(0usize, 7u32)]))
        );
        assert_eq!(
            is_member(&q("5/4"), &m("r=1/2; delta=const(1)"), 0),
            MembershipResult::Member(Factorization::from_pairs([(2usize, 5u32)]))
        );
        assert!(matches!(
            is_member(&q("1/8"), &m("r=1/2; delta=prefix(2); finite"), 0),
            MembershipResult::NotMember(_)
        ));
    }

    #[test]
    fn unresolved_is_not_negative() {
        // 1/9 needs level 2 but has no factorization supported on [0, 1].
        let flat = m("r=2/3; delta=const(1)");
        assert_eq!(is_member(&q("1/9"), &flat, 1), MembershipResult::UnresolvedWithinBound(1));
        assert_eq!(default_support_bound(&q("1/9"), &flat), 5);
        assert!(is_member(&q("4/9"), &flat, 5).is_member());
    }
}
