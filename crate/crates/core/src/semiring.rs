//! Exponent sets `N` for which `S_{r,N} = <r^n : n in N>` is a semiring,
//! numerical-monoid utilities, and the multiplicative monoid `(S_{r,N}^•, ·)`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::accp::{Classification, Evidence, Rule, Verdict};
use crate::arith::{max_power_dividing, prime_power_base, Ratio};
use crate::error::{Error, Result};
use crate::membership::{is_member, MembershipResult};
use crate::monoid::{classify_atomicity, DeltaSpec, ExpMonoid, Tail};

/// A submonoid of `N_0` given by generators (0 is implicit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalMonoidSpec {
    generators: Vec<u64>,
}

/// Queries above this use the Apéry set instead of a reachability table.
const DP_LIMIT: u64 = 1 << 20;

impl NumericalMonoidSpec {
    pub fn new(generators: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut generators: Vec<u64> = generators.into_iter().collect();
        if generators.contains(&0) {
            return Err(Error::parse("generators must be positive"));
        }
        generators.sort_unstable();
        generators.dedup();
        Ok(NumericalMonoidSpec { generators })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// gcd of the generators; 0 for `{0}`.
    pub fn gcd(&self) -> u64 {
        self.generators.iter().fold(0, |g, &x| g.gcd(&x))
    }

    /// Reachability table `0..=x`.
    fn reachable(&self, x: u64) -> Vec<bool> {
        let mut table = vec![false; x as usize + 1];
        table[0] = true;
        for i in 1..=x as usize {
            table[i] = self
                .generators
                .iter()
                .any(|&g| g as usize <= i && table[i - g as usize]);
        }
        table
    }

    pub fn contains(&self, x: u64) -> bool {
        if x == 0 {
            return true;
        }
        let Some(&m) = self.generators.first() else {
            return false;
        };
        if x <= DP_LIMIT {
            return self.reachable(x)[x as usize];
        }
        let apery = self.apery_set(m);
        apery[(x % m) as usize].is_some_and(|w| w <= x)
    }

    /// `Ap(N, m)[i]`: least element congruent to `i` mod `m`, by Dijkstra over
    /// residues. `None` for residues that never occur.
    pub fn apery_set(&self, m: u64) -> Vec<Option<u64>> {
        assert!(m >= 1, "modulus must be positive");
        let mut best: Vec<Option<u64>> = vec![None; m as usize];
        best[0] = Some(0);
        let mut heap = BinaryHeap::from([Reverse((0u64, 0u64))]);
        while let Some(Reverse((w, res))) = heap.pop() {
            if best[res as usize] != Some(w) {
                continue;
            }
            for &g in &self.generators {
                let nw = w + g;
                let nr = ((res + g) % m) as usize;
                if best[nr].is_none_or(|b| nw < b) {
                    best[nr] = Some(nw);
                    heap.push(Reverse((nw, nr as u64)));
                }
            }
        }
        best
    }

    fn require_numerical(&self) -> Result<()> {
        if self.gcd() != 1 {
            return Err(Error::precondition("not a numerical monoid (infinite complement)"));
        }
        if self.generators.first() == Some(&1) {
            return Err(Error::precondition("no Frobenius number"));
        }
        Ok(())
    }

    /// Largest gap: `max Ap(N, m) - m` for the smallest generator `m`.
    pub fn frobenius(&self) -> Result<u64> {
        self.require_numerical()?;
        let m = self.generators[0];
        let max = self
            .apery_set(m)
            .into_iter()
            .map(|w| w.expect("gcd 1 reaches every residue"))
            .max()
            .expect("m >= 2");
        Ok(max - m)
    }

    /// Largest gap found by scanning until `min generator` consecutive members.
    pub fn frobenius_dp(&self) -> Result<u64> {
        self.require_numerical()?;
        let m = self.generators[0] as usize;
        let mut table = vec![true];
        let mut run = 1usize;
        let mut last_gap = 0u64;
        while run < m {
            let i = table.len();
            let hit = self.generators.iter().any(|&g| g as usize <= i && table[i - g as usize]);
            table.push(hit);
            if hit {
                run += 1;
            } else {
                run = 0;
                last_gap = i as u64;
            }
        }
        Ok(last_gap)
    }

    /// Sorted elements up to and including `limit`.
    pub fn elements_up_to(&self, limit: u64) -> Vec<u64> {
        self.reachable(limit)
            .into_iter()
            .enumerate()
            .filter(|&(_, hit)| hit)
            .map(|(i, _)| i as u64)
            .collect()
    }
}

impl fmt::Display for NumericalMonoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(u64::to_string).collect();
        write!(f, "<{}>", gens.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentSetSpec {
    Generators(NumericalMonoidSpec),
    /// `P ∪ {n : n >= T}` with `P ⊆ [0, T)`.
    PrefixCofinite { prefix: Vec<u64>, threshold: u64 },
}

impl ExponentSetSpec {
    /// `N_0` itself.
    pub fn naturals() -> Self {
        ExponentSetSpec::PrefixCofinite {
            prefix: Vec::new(),
            threshold: 0,
        }
    }

    pub fn prefix_cofinite(prefix: impl IntoIterator<Item = u64>, threshold: u64) -> Result<Self> {
        let mut prefix: Vec<u64> = prefix.into_iter().collect();
        prefix.sort_unstable();
        prefix.dedup();
        if prefix.last().is_some_and(|&p| p >= threshold) {
            return Err(Error::parse(format!("prefix elements must be below the threshold {threshold}")));
        }
        Ok(ExponentSetSpec::PrefixCofinite { prefix, threshold })
    }

    pub fn contains(&self, x: u64) -> bool {
        match self {
            ExponentSetSpec::Generators(g) => g.contains(x),
            ExponentSetSpec::PrefixCofinite { prefix, threshold } => x >= *threshold || prefix.contains(&x),
        }
    }

    /// Sorted elements below `limit` and the tail gap that continues them
    /// forever past the last listed element, or `None` when `N = {0}`.
    fn layout(&self) -> (Vec<u64>, Option<u64>) {
        match self {
            ExponentSetSpec::Generators(g) => {
                let step = g.gcd();
                if step == 0 {
                    return (vec![0], None);
                }
                let reduced = NumericalMonoidSpec::new(g.generators().iter().map(|x| x / step))
                    .expect("positive generators");
                let conductor = reduced.frobenius().map(|f| f + 1).unwrap_or(0);
                let elems = g.elements_up_to(step * conductor.max(1));
                (elems, Some(step))
            }
            ExponentSetSpec::PrefixCofinite { prefix, threshold } => {
                let mut elems = prefix.clone();
                elems.push(*threshold);
                (elems, Some(1))
            }
        }
    }

    /// `(shift, M)` with `S_{r,N} = r^shift * M_{r, N - shift}`.
    pub fn to_monoid(&self, r: &Ratio) -> Result<(u64, ExpMonoid)> {
        let (elems, step) = self.layout();
        let shift = elems[0];
        let gaps: Vec<u64> = elems.windows(2).map(|w| w[1] - w[0]).collect();
        let tail = match step {
            Some(c) => Tail::Constant(c),
            None => Tail::Finite,
        };
        Ok((shift, ExpMonoid::new(r.clone(), DeltaSpec::new(gaps, tail)?)?))
    }
}

impl fmt::Display for ExponentSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentSetSpec::Generators(g) => {
                let gens: Vec<String> = g.generators().iter().map(u64::to_string).collect();
                write!(f, "N=gens({})", gens.join(","))
            }
            ExponentSetSpec::PrefixCofinite { prefix, threshold } => {
                let p: Vec<String> = prefix.iter().map(u64::to_string).collect();
                write!(f, "N=prefix({});tail>={threshold}", p.join(","))
            }
        }
    }
}

fn parse_list(body: &str) -> Result<Vec<u64>> {
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| t.parse::<u64>().map_err(|_| Error::parse(format!("bad integer {t:?} in exponent set"))))
        .collect()
}

impl FromStr for ExponentSetSpec {
    type Err = Error;

    /// `N=gens(2,3)` or `N=prefix(0,1);tail>=5`; the `N=` is optional.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact.strip_prefix("N=").unwrap_or(&compact);
        if let Some(rest) = body.strip_prefix("gens(").and_then(|r| r.strip_suffix(')')) {
            return Ok(ExponentSetSpec::Generators(NumericalMonoidSpec::new(parse_list(rest)?)?));
        }
        if let Some(rest) = body.strip_prefix("prefix(") {
            let (list, tail) = rest
                .split_once(");tail>=")
                .ok_or_else(|| Error::parse(format!("expected prefix(..);tail>=T, got {s:?}")))?;
            let threshold = tail
                .parse::<u64>()
                .map_err(|_| Error::parse(format!("bad threshold {tail:?}")))?;
            return ExponentSetSpec::prefix_cofinite(parse_list(list)?, threshold);
        }
        Err(Error::parse(format!("unknown exponent set {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiringVerdict {
    pub semiring: bool,
    pub reason: String,
    /// Set when `r` is an integer or `n(r) = 1`, outside the characterization.
    pub degenerate: bool,
}

/// Whether `S_{r,N}` is closed under multiplication (and contains 1).
pub fn is_semiring(r: &Ratio, set: &ExponentSetSpec) -> SemiringVerdict {
    let has_zero = set.contains(0);
    if r.is_integer() || r.numer().is_one() {
        let (semiring, reason) = if *r == Ratio::one() {
            (true, "r = 1: S_{r,N} = N_0".to_string())
        } else if has_zero {
            (true, "0 in N: S_{r,N} equals S_r, a semiring".to_string())
        } else {
            (false, "0 not in N: 1 is not in S_{r,N}".to_string())
        };
        return SemiringVerdict { semiring, reason, degenerate: true };
    }
    let (semiring, reason) = match set {
        ExponentSetSpec::Generators(g) => (true, format!("N = {g} is a submonoid of N_0")),
        ExponentSetSpec::PrefixCofinite { prefix, threshold } => {
            if !has_zero {
                (false, "0 \u{2209} N".to_string())
            } else {
                let violation = prefix.iter().enumerate().find_map(|(i, &a)| {
                    prefix[i..]
                        .iter()
                        .find(|&&b| !set.contains(a + b))
                        .map(|&b| (a, b))
                });
                match violation {
                    Some((a, b)) => (false, format!("{a}+{b}={} \u{2209} N", a + b)),
                    None => (true, format!("N is closed under addition below {threshold}")),
                }
            }
        }
    };
    SemiringVerdict { semiring, reason, degenerate: false }
}

/// `max{n : n(r)^n | n(x)}`; no power of `r` beyond it divides `x`
/// multiplicatively.
pub fn mult_divisor_bound(r: &Ratio, x: &Ratio) -> Result<u64> {
    if *r >= Ratio::one() || r.numer().is_one() || x.is_zero() {
        return Err(Error::precondition("not applicable: needs r < 1 < n(r) and x > 0"));
    }
    Ok(max_power_dividing(r.numer(), x.numer()))
}

/// Whether `r^n` divides `x` in `(S_{r,N}^•, ·)`, i.e. `x r^{-n} ∈ S_{r,N}`.
pub fn mult_divides(
    r: &Ratio,
    n: u64,
    x: &Ratio,
    set: &ExponentSetSpec,
    support_bound: usize,
) -> Result<MembershipResult> {
    if x.is_zero() {
        return Err(Error::precondition("x must be positive"));
    }
    if !set.contains(n) {
        return Ok(MembershipResult::NotMember(format!("{n} \u{2209} N: r^{n} is not in S_(r,N)")));
    }
    if let Ok(bound) = mult_divisor_bound(r, x) {
        if n > bound {
            return Ok(MembershipResult::NotMember(format!(
                "n = {n} exceeds the divisor bound {bound} (n(r)^n does not divide n(x))"
            )));
        }
    }
    let quotient = x.div(&r.pow(n))?;
    let (shift, monoid) = set.to_monoid(r)?;
    let scaled = quotient.div(&r.pow(shift))?;
    // Witness index i is the i-th smallest element of N.
    Ok(is_member(&scaled, &monoid, support_bound))
}

/// Classification of `(S_{r,N}^•, ·)`. Independent of `N`.
pub fn classify_mult(r: &Ratio, _set: &ExponentSetSpec) -> Classification {
    let atomicity = classify_atomicity(r);
    let build = |accp, bfp, ffp, rule, instance: String| Classification {
        atomicity,
        accp,
        bfp,
        ffp,
        evidence: Evidence { rule, instance },
    };
    if r.numer().is_one() || r.is_integer() {
        return build(
            Verdict::Yes,
            Verdict::Yes,
            Verdict::Yes,
            Rule::MultDegenerate,
            format!("n(r) = 1 or d(r) = 1 (r = {r}): S_(r,N)^• = S_r^•, a reduced free monoid up to units"),
        );
    }
    if *r > Ratio::one() {
        return build(
            Verdict::Yes,
            Verdict::Yes,
            Verdict::Yes,
            Rule::MultAboveOne,
            format!("r = {r} > 1: atoms of S_r^• exceed 1, so S_r^• is an FFM"),
        );
    }
    if let Some(p) = prime_power_base(r.denom()) {
        let k = max_power_dividing(&p, r.denom());
        return build(
            Verdict::Yes,
            Verdict::Unknown,
            Verdict::Unknown,
            Rule::MultPrimePower,
            format!("d(r) = {} = {p}^{k} is a prime power", r.denom()),
        );
    }
    build(
        Verdict::Unknown,
        Verdict::Unknown,
        Verdict::Unknown,
        Rule::NoRuleApplies,
        format!("r = {r} < 1 and d(r) = {} is not a prime power", r.denom()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::Factorization;

    fn q(s: &str) -> Ratio {
        s.parse().unwrap()
    }

    fn nm(g: &[u64]) -> NumericalMonoidSpec {
        NumericalMonoidSpec::new(g.iter().copied()).unwrap()
    }

    #[test]
    fn numerical_monoid_examples() {
        let n23 = nm(&[2, 3]);
        assert!(!n23.contains(1));
        assert!(n23.contains(7));
        assert!(n23.contains(0));
        assert!(nm(&[]).contains(0));
        assert_eq!(n23.frobenius().unwrap(), 1);
        assert_eq!(nm(&[3, 5]).frobenius().unwrap(), 7);
        assert_eq!(
            nm(&[1]).frobenius().unwrap_err().to_string(),
            Error::precondition("no Frobenius number").to_string()
        );
        assert!(nm(&[4, 6]).frobenius().is_err());
        assert!(nm(&[3, 5]).contains(DP_LIMIT + 1));
    }

    #[test]
    fn frobenius_methods_agree() {
        for a in 2..=12u64 {
            for b in (a + 1)..=20 {
                let g = nm(&[a, b]);
                if g.gcd() == 1 {
                    assert_eq!(g.frobenius().unwrap(), a * b - a - b);
                    assert_eq!(g.frobenius_dp().unwrap(), a * b - a - b);
                }
            }
        }
        let g = nm(&[6, 9, 20]);
        assert_eq!(g.frobenius().unwrap(), 43);
        assert_eq!(g.frobenius_dp().unwrap(), 43);
    }

    #[test]
    fn exponent_set_grammar() {
        let n: ExponentSetSpec = "N=gens(2,3)".parse().unwrap();
        assert_eq!(n.to_string(), "N=gens(2,3)");
        let p: ExponentSetSpec = "N = prefix(0, 1); tail >= 5".parse().unwrap();
        assert_eq!(p.to_string(), "N=prefix(0,1);tail>=5");
        assert!("N=prefix(0,7);tail>=5".parse::<ExponentSetSpec>().is_err());
        assert!("N=all".parse::<ExponentSetSpec>().is_err());
    }

    #[test]
    fn semiring_examples() {
        let r = q("2/3");
        assert!(is_semiring(&r, &"N=gens(2,3)".parse().unwrap()).semiring);
        let v = is_semiring(&r, &"N=prefix(0,1);tail>=5".parse().unwrap());
        assert!(!v.semiring);
        assert_eq!(v.reason, "1+1=2 \u{2209} N");
        assert!(is_semiring(&r, &"N=prefix(0);tail>=2".parse().unwrap()).semiring);
        assert!(!is_semiring(&r, &"N=prefix(1);tail>=2".parse().unwrap()).semiring);
        let v = is_semiring(&q("3"), &"N=gens(2)".parse().unwrap());
        assert!(v.semiring && v.degenerate);
    }

    #[test]
    fn to_monoid_layout() {
        let (shift, m) = "N=gens(2,3)".parse::<ExponentSetSpec>().unwrap().to_monoid(&q("2/3")).unwrap();
        assert_eq!(shift, 0);
        assert_eq!(m.delta().exponents(4).unwrap(), vec![0, 2, 3, 4, 5]);
        let (_, m) = "N=gens(4,6)".parse::<ExponentSetSpec>().unwrap().to_monoid(&q("2/3")).unwrap();
        assert_eq!(m.delta().exponents(5).unwrap(), vec![0, 4, 6, 8, 10, 12]);
        let (shift, m) = "N=prefix(3);tail>=7".parse::<ExponentSetSpec>().unwrap().to_monoid(&q("2/3")).unwrap();
        assert_eq!(shift, 3);
        assert_eq!(m.delta().exponents(2).unwrap(), vec![0, 4, 5]);
        let (_, m) = ExponentSetSpec::naturals().to_monoid(&q("2/3")).unwrap();
        assert_eq!(m.delta().exponents(3).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn mult_examples() {
        let r = q("2/3");
        assert_eq!(mult_divisor_bound(&r, &q("4/3")).unwrap(), 2);
        assert_eq!(mult_divisor_bound(&r, &q("1/3")).unwrap(), 0);
        assert_eq!(mult_divisor_bound(&r, &q("32/9")).unwrap(), 5);
        assert!(mult_divisor_bound(&q("3/2"), &q("1")).is_err());

        let nat = ExponentSetSpec::naturals();
        assert_eq!(
            mult_divides(&r, 2, &q("4/3"), &nat, 4).unwrap(),
            MembershipResult::Member(Factorization::from_pairs([(0usize, 3u32)]))
        );
        assert!(matches!(
            mult_divides(&r, 3, &q("4/3"), &nat, 4).unwrap(),
            MembershipResult::NotMember(_)
        ));
        assert_eq!(
            mult_divides(&q("5/7"), 0, &q("1"), &"N=gens(2,3)".parse().unwrap(), 4).unwrap(),
            MembershipResult::Member(Factorization::from_pairs([(0usize, 1u32)]))
        );
    }

    #[test]
    fn classify_mult_examples() {
        let n0 = ExponentSetSpec::naturals();
        let n23: ExponentSetSpec = "N=gens(2,3)".parse().unwrap();
        let c = classify_mult(&q("5/2"), &n0);
        assert_eq!((c.ffp, c.evidence.rule), (Verdict::Yes, Rule::MultAboveOne));
        let c = classify_mult(&q("2/9"), &n0);
        assert_eq!((c.accp, c.ffp, c.evidence.rule), (Verdict::Yes, Verdict::Unknown, Rule::MultPrimePower));
        let c = classify_mult(&q("2/15"), &n0);
        assert_eq!(c.accp, Verdict::Unknown);
        for r in ["5/2", "2/9", "2/15", "1/4", "3", "7/8"] {
            assert_eq!(classify_mult(&q(r), &n0), classify_mult(&q(r), &n23));
        }
    }
}
