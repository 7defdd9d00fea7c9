//! ACCP / BFP / FFP classification of exponential monoids.
//!
//! For atomic exponential monoids the three properties coincide, so a single
//! verdict is reported. Decisions are exact integer comparisons made on the
//! tail rule of the gap sequence; a finite prefix never changes the verdict
//! (truncating `S` to `S - s_i` preserves the ACCP).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::arith::Ratio;
use crate::error::{Error, Result};
use crate::factorization::{Factorization, DEFAULT_LEVEL_BOUND};
use crate::monoid::{recurrence_step, AtomicityKind, AtomicityVerdict, ExpMonoid, Tail, RECURRENCE_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "yes")]
    Yes,
    #[serde(rename = "no")]
    No,
    #[serde(rename = "unknown")]
    Unknown,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
            Verdict::NotApplicable => "n/a",
        })
    }
}

/// The rule of the decision tree that produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `d(r) = 1`: the monoid is `N_0`.
    IsoNaturals,
    /// `n(r) = 1 < d(r)`.
    Antimatter,
    /// Finite exponent set: isomorphic to a numerical monoid.
    FinitelyGenerated,
    /// `r > 1`: finite factorization monoid.
    RAboveOne,
    /// Bounded gaps.
    BoundedDelta,
    /// `d^{delta_n} < n^{delta_{n+1}}` eventually.
    SufficientCondition,
    /// `d^{delta_n} > n^{delta_{n+1}}` eventually, witnessed by the identity
    /// `n^{delta_n} r^{s_n} = (d^{delta_n} - n^{delta_{n+1}}) r^{s_{n+1}} + n^{delta_{n+1}} r^{s_{n+1}}`.
    NonAccpIdentity,
    /// Non-constant polynomial gaps: `delta_{n+1}/delta_n -> 1`.
    PolynomialDelta,
    /// The limsup bound `d <= n * limsup n^{delta_n/s_n}` fails.
    NecessaryCondition,
    NoRuleApplies,
    /// Multiplicative monoid with `n(r) = 1` or `d(r) = 1`.
    MultDegenerate,
    /// Multiplicative monoid with `r > 1`.
    MultAboveOne,
    /// Multiplicative monoid with `r < 1` and `d(r)` a prime power.
    MultPrimePower,
}

impl Rule {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rule::IsoNaturals => "iso-naturals",
            Rule::Antimatter => "antimatter",
            Rule::FinitelyGenerated => "finitely-generated",
            Rule::RAboveOne => "r-above-one",
            Rule::BoundedDelta => "bounded-delta",
            Rule::SufficientCondition => "sufficient-condition",
            Rule::NonAccpIdentity => "non-accp-identity",
            Rule::PolynomialDelta => "polynomial-delta",
            Rule::NecessaryCondition => "necessary-condition",
            Rule::NoRuleApplies => "no-rule-applies",
            Rule::MultDegenerate => "mult-degenerate",
            Rule::MultAboveOne => "mult-r-above-one",
            Rule::MultPrimePower => "mult-prime-power-denominator",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub rule: Rule,
    /// The exact inequality instance that was checked, in words.
    pub instance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub atomicity: AtomicityVerdict,
    pub accp: Verdict,
    pub bfp: Verdict,
    pub ffp: Verdict,
    pub evidence: Evidence,
}

impl Classification {
    /// Verdict for the additive monoid, where FFP = BFP = ACCP.
    fn additive(atomicity: AtomicityVerdict, accp: Verdict, rule: Rule, instance: String) -> Self {
        Classification {
            atomicity,
            accp,
            bfp: accp,
            ffp: accp,
            evidence: Evidence { rule, instance },
        }
    }
}

fn pow(b: &BigUint, e: u64) -> BigUint {
    Pow::pow(b, e)
}

/// Exponents above this are not expanded when searching for a displayed instance.
const INSTANCE_EXPONENT_LIMIT: u64 = 1 << 16;
/// How far into the tail to look for a first verified instance.
const INSTANCE_WINDOW: usize = 4096;

/// Compares `d^{delta_i}` with `n^{delta_{i+1}}`.
fn compare_at(m: &ExpMonoid, i: usize) -> Result<Ordering> {
    let gaps = m.delta().gaps(i + 2)?;
    Ok(pow(m.d(), gaps[i]).cmp(&pow(m.n(), gaps[i + 1])))
}

fn describe_at(m: &ExpMonoid, i: usize) -> Result<String> {
    let gaps = m.delta().gaps(i + 2)?;
    let sign = match compare_at(m, i)? {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    };
    Ok(format!(
        "{}^{} {} {}^{} at n = {}",
        m.d(),
        gaps[i],
        sign,
        m.n(),
        gaps[i + 1],
        i
    ))
}

/// First tail index where `d^{delta_n}` compares to `n^{delta_{n+1}}` as `want`.
fn first_instance(m: &ExpMonoid, from: usize, want: Ordering) -> Option<usize> {
    (from..from + INSTANCE_WINDOW)
        .take_while(|&i| {
            m.delta()
                .gaps(i + 2)
                .map(|g| g[i + 1] <= INSTANCE_EXPONENT_LIMIT)
                .unwrap_or(false)
        })
        .find(|&i| compare_at(m, i).ok() == Some(want))
}

/// Looks for `p/q` strictly between `log_a b` and `log_n d` (both > 1), where
/// `a^p > b^q` means `p/q > log_a b`. Returns how `log_a b` compares with
/// `log_n d` when a separating fraction with `q <= 64` exists.
fn compare_logs(a: &BigUint, b: &BigUint, n: &BigUint, d: &BigUint) -> Option<Ordering> {
    for q in 1u64..=64 {
        let bq = pow(b, q);
        let dq = pow(d, q);
        for p in (q + 1)..=(q * 64) {
            let ap = pow(a, p);
            let np = pow(n, p);
            let above_ab = ap > bq;
            let below_ab = ap < bq;
            let above_nd = np > dq;
            let below_nd = np < dq;
            if above_ab && below_nd {
                return Some(Ordering::Less);
            }
            if below_ab && above_nd {
                return Some(Ordering::Greater);
            }
            if above_ab && above_nd {
                break;
            }
        }
    }
    None
}

/// The decision tree. Never fails: anything it cannot settle is `Unknown`
/// with the reason recorded.
pub fn classify(m: &ExpMonoid) -> Classification {
    let atomicity = m.classify_atomicity();
    match atomicity.kind {
        AtomicityKind::IsoNaturals => {
            return Classification::additive(
                atomicity,
                Verdict::Yes,
                Rule::IsoNaturals,
                format!("d(r) = 1, so the monoid is N_0 (r = {})", m.r()),
            )
        }
        AtomicityKind::Antimatter => {
            return Classification::additive(
                atomicity,
                Verdict::NotApplicable,
                Rule::Antimatter,
                format!("n(r) = 1 < d(r) = {}: no atoms", m.d()),
            )
        }
        AtomicityKind::Atomic => {}
    }
    if m.delta().is_finite() {
        return Classification::additive(
            atomicity,
            Verdict::Yes,
            Rule::FinitelyGenerated,
            format!("finite exponent set with {} elements", m.delta().prefix().len() + 1),
        );
    }
    if m.above_one() {
        return Classification::additive(
            atomicity,
            Verdict::Yes,
            Rule::RAboveOne,
            format!("r = {} > 1", m.r()),
        );
    }
    let (accp, rule, instance) = tail_analysis(m);
    if accp == Verdict::Unknown {
        if let Ok(NecessaryCheck { bound_holds: Some(false), lhs, rhs, .. }) = check_necessary(m) {
            return Classification::additive(
                atomicity,
                Verdict::No,
                Rule::NecessaryCondition,
                format!("{lhs} > {rhs}"),
            );
        }
    }
    Classification::additive(atomicity, accp, rule, instance)
}

/// Verdict from the tail rule of an atomic, infinite monoid with `r < 1`.
fn tail_analysis(m: &ExpMonoid) -> (Verdict, Rule, String) {
    let k = m.delta().prefix().len();
    let (n, d) = (m.n(), m.d());
    match m.delta().tail() {
        Tail::Constant(_) | Tail::Periodic(_) => {
            let max = m.delta().bounded_max().expect("bounded rule");
            (
                Verdict::No,
                Rule::BoundedDelta,
                format!("delta_n < k = {} for all n", max + 1),
            )
        }
        Tail::Polynomial(c) if c.len() == 1 => {
            let max = m.delta().bounded_max().expect("constant polynomial");
            (
                Verdict::No,
                Rule::BoundedDelta,
                format!("delta_n < k = {} for all n", max + 1),
            )
        }
        Tail::Polynomial(_) => {
            let mut instance = format!(
                "delta_(n+1)/delta_n -> 1 while log_{n} {d} > 1, so d^delta_n > n^delta_(n+1) eventually"
            );
            if let Some(i) = first_instance(m, k, Ordering::Greater) {
                if let Ok(s) = describe_at(m, i) {
                    instance = format!("{instance}; first verified: {s}");
                }
            }
            (Verdict::No, Rule::PolynomialDelta, instance)
        }
        Tail::Geometric { ratio, .. } => {
            let nc = pow(n, *ratio);
            let at = describe_at(m, k).unwrap_or_default();
            match d.cmp(&nc) {
                Ordering::Less => (
                    Verdict::Yes,
                    Rule::SufficientCondition,
                    format!("d(r) = {d} < n(r)^{ratio} = {nc}, so d^delta_n < n^delta_(n+1) for n >= {k}; {at}"),
                ),
                Ordering::Greater => (
                    Verdict::No,
                    Rule::NonAccpIdentity,
                    format!("d(r) = {d} > n(r)^{ratio} = {nc}, so d^delta_n > n^delta_(n+1) for n >= {k}; {at}"),
                ),
                // gcd(n, d) = 1 with n >= 2 rules out d = n^c.
                Ordering::Equal => unreachable!("coprime n(r) >= 2 and d(r) cannot satisfy d = n^c"),
            }
        }
        Tail::Recurrence { a, b } => {
            let from = k.saturating_sub(1);
            let (a_big, b_big) = (BigUint::from(*a), BigUint::from(*b));
            let matching = (&a_big, &b_big) == (n, d);
            let order = if matching {
                Some(Ordering::Less)
            } else {
                compare_logs(&a_big, &b_big, n, d)
            };
            match order {
                Some(Ordering::Less) => {
                    let at = describe_at(m, from).unwrap_or_default();
                    let bound = if matching {
                        format!("log_{n} {d}")
                    } else {
                        format!("log_{a} {b} < log_{n} {d}")
                    };
                    (
                        Verdict::No,
                        Rule::NonAccpIdentity,
                        format!("delta_(n+1)/delta_n < {bound}, so d^delta_n > n^delta_(n+1) for n >= {from}; {at}"),
                    )
                }
                Some(Ordering::Greater) => {
                    let at = first_instance(m, k, Ordering::Less)
                        .and_then(|i| describe_at(m, i).ok())
                        .unwrap_or_default();
                    (
                        Verdict::Yes,
                        Rule::SufficientCondition,
                        format!("delta_(n+1)/delta_n -> log_{a} {b} > log_{n} {d}, so d^delta_n < n^delta_(n+1) eventually; {at}"),
                    )
                }
                _ => (
                    Verdict::Unknown,
                    Rule::NoRuleApplies,
                    format!("could not separate log_{a} {b} from log_{n} {d}"),
                ),
            }
        }
        Tail::Finite => unreachable!("finite sets are classified before tail analysis"),
    }
}

/// Whether the gap rule provably satisfies `d^{delta_n} < n^{delta_{n+1}}`
/// for all large `n` (so maximum-length carries always terminate).
pub fn sufficient_condition_eventually(m: &ExpMonoid) -> bool {
    if !m.below_one() || m.n().is_one() || m.delta().is_finite() {
        return false;
    }
    matches!(tail_analysis(m), (Verdict::Yes, Rule::SufficientCondition, _))
}

/// Outcome of the limsup test `d(r) <= n(r) * limsup n(r)^{delta_n / s_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryCheck {
    /// `None` when the rule has no implemented closed form.
    pub bound_holds: Option<bool>,
    pub lhs: String,
    pub rhs: String,
    /// Closed form of `limsup delta_n / s_n`.
    pub limsup_ratio: String,
}

/// Evaluates the necessary condition in closed form for the rule family.
pub fn check_necessary(m: &ExpMonoid) -> Result<NecessaryCheck> {
    if !m.below_one() || m.n().is_one() || m.delta().is_finite() {
        return Err(Error::precondition(
            "not applicable: needs an atomic monoid with r < 1 and infinite exponent set",
        ));
    }
    let (n, d) = (m.n(), m.d());
    let lhs = format!("d(r) = {d}");
    let flat = |why: &str| NecessaryCheck {
        bound_holds: Some(d <= n),
        lhs: lhs.clone(),
        rhs: format!("n(r) * 1 = {n}"),
        limsup_ratio: format!("0 ({why})"),
    };
    Ok(match m.delta().tail() {
        Tail::Constant(_) | Tail::Periodic(_) => flat("bounded gaps"),
        Tail::Polynomial(_) => flat("polynomial gaps"),
        Tail::Geometric { ratio, .. } => {
            let nc = pow(n, *ratio);
            NecessaryCheck {
                bound_holds: Some(*d <= nc),
                lhs,
                rhs: format!("n(r) * n(r)^{} = {nc}", ratio - 1),
                limsup_ratio: format!("{}", ratio - 1),
            }
        }
        Tail::Recurrence { a, b } => {
            let (a_big, b_big) = (BigUint::from(*a), BigUint::from(*b));
            let holds = if (&a_big, &b_big) == (n, d) {
                Some(true)
            } else {
                compare_logs(&a_big, &b_big, n, d).map(|o| o == Ordering::Greater)
            };
            NecessaryCheck {
                bound_holds: holds,
                lhs,
                rhs: format!("n(r) * n(r)^(log_{a} {b} - 1) = {n}^log_{a} {b}"),
                limsup_ratio: format!("log_{a} {b} - 1"),
            }
        }
        Tail::Finite => unreachable!(),
    })
}

/// Partial sums of `sum_k (n^{delta_k} - 1) r^{s_k}` for `k < terms`.
pub fn series_partial_sums(m: &ExpMonoid, terms: usize) -> Result<Vec<Ratio>> {
    if !m.below_one() {
        return Err(Error::precondition("series needs r < 1"));
    }
    let gaps = m.delta().gaps(terms)?;
    let mut out = Vec::with_capacity(terms);
    let mut acc = Ratio::zero();
    let mut s = 0u64;
    for g in gaps {
        let coeff = pow(m.n(), g) - BigUint::one();
        acc = acc.add(&m.r().pow(s).mul_int(&coeff));
        out.push(acc.clone());
        s += g;
    }
    Ok(out)
}

/// A strictly descending divisibility chain `x_0 > x_1 > ...` with
/// `x_j = x_{j+1} + y_j`, `y_j` a nonzero element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessChain {
    /// Generator indices `a_j` carrying `x_j`.
    pub indices: Vec<usize>,
    pub elements: Vec<Ratio>,
    /// `x_j = n^{s_{a_{j+1}} - s_{a_j}} r^{s_{a_j}}`.
    pub element_factorizations: Vec<Factorization>,
    /// `y_j = (d^{Δ_j} - n^{Δ_{j+1}}) r^{s_{a_{j+1}}}`.
    pub differences: Vec<Factorization>,
}

impl WitnessChain {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Re-evaluates every element and link exactly.
    pub fn verify(&self, m: &ExpMonoid) -> Result<bool> {
        for (x, z) in self.elements.iter().zip(&self.element_factorizations) {
            if m.evaluate(z)? != *x {
                return Ok(false);
            }
        }
        for (j, y) in self.differences.iter().enumerate() {
            let y_val = m.evaluate(y)?;
            if y_val.is_zero() {
                return Ok(false);
            }
            if self.elements[j].checked_sub(&self.elements[j + 1]) != Some(y_val) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Builds a chain of `k` elements from the identity
/// `n^{Δ} r^{s_a} = (d^{Δ} - n^{Δ'}) r^{s_b} + n^{Δ'} r^{s_b}`.
///
/// Bounded rules step over whole periods so that `Δ` is constant and
/// `d^Δ > n^Δ` holds trivially.
pub fn witness_chain(m: &ExpMonoid, k: usize) -> Result<WitnessChain> {
    if k == 0 {
        return Err(Error::precondition("chain length must be at least 1"));
    }
    let cls = classify(m);
    let constructive = cls.accp == Verdict::No
        && matches!(
            cls.evidence.rule,
            Rule::BoundedDelta | Rule::NonAccpIdentity | Rule::PolynomialDelta
        );
    if !constructive {
        return Err(Error::precondition(format!(
            "no constructive witness available (accp = {}, rule {})",
            cls.accp,
            cls.evidence.rule.as_str()
        )));
    }
    let block = match m.delta().tail() {
        Tail::Periodic(p) => p.len(),
        _ => 1,
    };
    let tail_start = m.delta().prefix().len();
    let search_from = match m.delta().tail() {
        Tail::Recurrence { .. } => tail_start.saturating_sub(1),
        _ => tail_start,
    };
    for start in search_from..search_from + INSTANCE_WINDOW {
        let indices: Vec<usize> = (0..=k).map(|j| start + j * block).collect();
        let exps = m.delta().exponents(indices[k])?;
        let spans: Vec<u64> = indices
            .windows(2)
            .map(|w| exps[w[1]] - exps[w[0]])
            .collect();
        let links_hold = spans
            .windows(2)
            .all(|w| pow(m.d(), w[0]) > pow(m.n(), w[1]));
        if !links_hold {
            continue;
        }
        let mut chain = WitnessChain {
            indices: indices[..k].to_vec(),
            elements: Vec::with_capacity(k),
            element_factorizations: Vec::with_capacity(k),
            differences: Vec::with_capacity(k - 1),
        };
        for j in 0..k {
            let z = Factorization::from_pairs([(indices[j], pow(m.n(), spans[j]))]);
            chain.elements.push(m.evaluate(&z)?);
            chain.element_factorizations.push(z);
            if j + 1 < k {
                let coeff = pow(m.d(), spans[j]) - pow(m.n(), spans[j + 1]);
                chain
                    .differences
                    .push(Factorization::from_pairs([(indices[j + 1], coeff)]));
            }
        }
        if !chain.verify(m)? {
            return Err(Error::precondition("witness chain failed exact verification"));
        }
        return Ok(chain);
    }
    Err(Error::precondition(format!(
        "no chain start found within {INSTANCE_WINDOW} tail indices"
    )))
}

/// One exact inequality checked by [`construct_counterexample`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub n: usize,
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub a: u64,
    pub b: u64,
    /// `a/b` in lowest terms.
    pub r: Ratio,
    pub delta: Vec<u64>,
    pub checks: Vec<InequalityCheck>,
    pub verified: bool,
    pub warnings: Vec<String>,
}

impl CounterexampleReport {
    /// The monoid with the first `depth` gaps written out and the recurrence
    /// continuing the tail.
    pub fn monoid(&self, depth: usize) -> Result<ExpMonoid> {
        let tail = Tail::Recurrence { a: self.a, b: self.b };
        let rule = crate::monoid::DeltaSpec::new(Vec::new(), tail.clone())?;
        let prefix = rule.gaps(depth)?;
        ExpMonoid::new(self.r.clone(), crate::monoid::DeltaSpec::new(prefix, tail)?)
    }
}

/// Gap sequence whose ratios approach `log_a b` from below:
/// `delta_0 = 2`, `delta_{n+1} = max{m : a^m < b^{delta_n}}`.
///
/// For each produced `n` two facts are checked exactly:
/// `b^{delta_n} > a^{delta_{n+1}}` and `a^{delta_{n+1} + 1} >= b^{delta_n}`.
pub fn construct_counterexample(a: u64, b: u64, k: usize) -> Result<CounterexampleReport> {
    if k < 2 {
        return Err(Error::precondition("usage: k must be at least 2"));
    }
    if a < 2 || b <= a {
        return Err(Error::precondition("usage: need 1 < a < b"));
    }
    let mut seq = vec![RECURRENCE_SEED];
    while seq.len() <= k {
        let next = recurrence_step(a, b, *seq.last().expect("seeded"))?;
        seq.push(next);
    }
    let (a_big, b_big) = (BigUint::from(a), BigUint::from(b));
    let mut checks = Vec::with_capacity(2 * k);
    for n in 0..k {
        let (cur, next) = (seq[n], seq[n + 1]);
        let b_pow = pow(&b_big, cur);
        checks.push(InequalityCheck {
            n,
            statement: format!("{b}^{cur} > {a}^{next}"),
            holds: b_pow > pow(&a_big, next),
        });
        checks.push(InequalityCheck {
            n,
            statement: format!("{a}^{} >= {b}^{cur}", next + 1),
            holds: pow(&a_big, next + 1) >= b_pow,
        });
    }
    let r = Ratio::new(a, b)?;
    let mut warnings = Vec::new();
    if a.gcd(&b) != 1 {
        warnings.push(format!("r = {a}/{b} reduces to {r}"));
    }
    if r.numer().is_one() {
        warnings.push("n(r) = 1: M_(r,S) is antimatter".to_string());
    }
    seq.truncate(k);
    Ok(CounterexampleReport {
        a,
        b,
        r,
        verified: checks.iter().all(|c| c.holds),
        delta: seq,
        checks,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub chain: Vec<Ratio>,
    pub differences: Vec<Factorization>,
    /// Number of chain elements found.
    pub length: usize,
    /// True when no further split was found before reaching `depth`.
    pub terminated: bool,
}

/// Greedily extends a strictly descending divisibility chain from `value(x)`.
///
/// Each step runs the low-to-high carry on the current factorization and
/// splits off the remainders collected below the first level that still
/// carries: `x = y + x'` with `y` the remainders and `x'` the carried part.
pub fn empirical_probe(m: &ExpMonoid, x: &Factorization, depth: usize) -> Result<ProbeReport> {
    if m.classify_atomicity().kind == AtomicityKind::Antimatter {
        return Err(Error::precondition("probe needs an atomic monoid"));
    }
    let mut report = ProbeReport {
        chain: Vec::new(),
        differences: Vec::new(),
        length: 0,
        terminated: true,
    };
    if x.is_empty() || depth == 0 {
        report.terminated = x.is_empty();
        return Ok(report);
    }
    let mut current = x.clone();
    report.chain.push(m.evaluate(&current)?);
    while report.chain.len() < depth {
        let Some((y, next)) = split_off_remainders(m, &current)? else {
            report.length = report.chain.len();
            return Ok(report);
        };
        let value = m.evaluate(&next)?;
        let prev = report.chain.last().expect("nonempty");
        debug_assert_eq!(prev.checked_sub(&value), Some(m.evaluate(&y)?));
        report.chain.push(value);
        report.differences.push(y);
        current = next;
    }
    report.length = report.chain.len();
    report.terminated = split_off_remainders(m, &current)?.is_none();
    Ok(report)
}

fn split_off_remainders(m: &ExpMonoid, z: &Factorization) -> Result<Option<(Factorization, Factorization)>> {
    let Some(top) = z.top_index() else {
        return Ok(None);
    };
    let last = m.delta().last_index();
    let mut dropped = Factorization::new();
    let mut carry = BigUint::zero();
    for i in 0..=top + DEFAULT_LEVEL_BOUND {
        let total = z.get(i) + &carry;
        if i > top && total.is_zero() {
            return Ok(None);
        }
        if last == Some(i) {
            return Ok(None);
        }
        let gap = m.delta().delta(i)?;
        let (q, rem) = total.div_rem(&pow(m.n(), gap));
        dropped.set(i, rem);
        carry = q * pow(m.d(), gap);
        if !dropped.is_empty() && !carry.is_zero() {
            let mut rest = Factorization::from_pairs(z.iter().filter(|&(j, _)| j > i).map(|(j, c)| (j, c.clone())));
            rest.add(i + 1, &carry);
            return Ok(Some((dropped, rest)));
        }
    }
    Ok(None)
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "accp={} ({}: {})",
            self.accp,
            self.evidence.rule.as_str(),
            self.evidence.instance
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> ExpMonoid {
        s.parse().unwrap()
    }

    #[test]
    fn named_family_verdicts() {
        let c = classify(&m("r=2/3; delta=const(1)"));
        assert_eq!((c.accp, c.evidence.rule), (Verdict::No, Rule::BoundedDelta));
        let c = classify(&m("r=2/3; delta=geom(1,2)"));
        assert_eq!((c.accp, c.evidence.rule), (Verdict::Yes, Rule::SufficientCondition));
        assert!(c.evidence.instance.contains("3 < n(r)^2 = 4"), "{}", c.evidence.instance);
        let c = classify(&m("r=2/3; delta=poly(1,1)"));
        assert_eq!((c.accp, c.evidence.rule), (Verdict::No, Rule::PolynomialDelta));
        assert!(c.evidence.instance.contains("3^2 > 2^3 at n = 1"), "{}", c.evidence.instance);
        let c = classify(&m("r=2/5; delta=geom(3,2)"));
        assert_eq!((c.accp, c.evidence.rule), (Verdict::No, Rule::NonAccpIdentity));
    }

    #[test]
    fn early_rules() {
        let c = classify(&m("r=3; delta=const(1)"));
        assert_eq!((c.accp, c.evidence.rule), (Verdict::Yes, Rule::IsoNaturals));
        let c = classify(&m("r=1/2; delta=geom(1,2)"));
        assert_eq!(c.accp, Verdict::NotApplicable);
        assert_eq!(c.atomicity.kind, AtomicityKind::Antimatter);
        let c = classify(&m("r=2/3; delta=prefix(1,2); finite"));
        assert_eq!((c.accp, c.evidence.rule), (Verdict::Yes, Rule::FinitelyGenerated));
        let c = classify(&m("r=5/2; delta=const(1)"));
        assert_eq!((c.accp, c.evidence.rule), (Verdict::Yes, Rule::RAboveOne));
    }

    #[test]
    fn ffp_bfp_accp_never_differ() {
        for s in ["r=2/3; delta=const(1)", "r=2/3; delta=geom(1,2)", "r=1/2; delta=const(1)", "r=7/2; delta=const(3)"] {
            let c = classify(&m(s));
            assert_eq!(c.accp, c.bfp);
            assert_eq!(c.accp, c.ffp);
        }
    }

    #[test]
    fn recurrence_rules() {
        let c = classify(&m("r=2/3; delta=recur(2,3)"));
        assert_eq!((c.accp, c.evidence.rule), (Verdict::No, Rule::NonAccpIdentity));
        // log_2 5 > log_2 3: ratios overtake log_n d, so the sufficient condition kicks in.
        let c = classify(&m("r=2/3; delta=recur(2,5)"));
        assert_eq!((c.accp, c.evidence.rule), (Verdict::Yes, Rule::SufficientCondition));
        // log_3 4 < log_2 3
        let c = classify(&m("r=2/3; delta=recur(3,4)"));
        assert_eq!(c.accp, Verdict::No);
        // log_4 9 = log_2 3 exactly: no separating fraction exists.
        let c = classify(&m("r=2/3; delta=recur(4,9)"));
        assert_eq!((c.accp, c.evidence.rule), (Verdict::Unknown, Rule::NoRuleApplies));
    }

    #[test]
    fn necessary_examples() {
        let chk = check_necessary(&m("r=2/9; delta=const(1)")).unwrap();
        assert_eq!(chk.bound_holds, Some(false));
        let chk = check_necessary(&m("r=2/3; delta=geom(1,2)")).unwrap();
        assert_eq!(chk.bound_holds, Some(true));
        assert!(chk.rhs.ends_with("= 4"));
        let chk = check_necessary(&m("r=2/3; delta=const(5)")).unwrap();
        assert_eq!(chk.bound_holds, Some(false));
        assert!(check_necessary(&m("r=3/2; delta=const(1)")).is_err());
        assert!(check_necessary(&m("r=1/2; delta=const(1)")).is_err());
        let chk = check_necessary(&m("r=2/3; delta=recur(2,3)")).unwrap();
        assert_eq!(chk.bound_holds, Some(true));
    }

    #[test]
    fn series_examples() {
        let q = |s: &str| s.parse::<Ratio>().unwrap();
        assert_eq!(series_partial_sums(&m("r=2/3; delta=const(1)"), 1).unwrap(), vec![q("1")]);
        assert_eq!(
            series_partial_sums(&m("r=2/3; delta=const(1)"), 3).unwrap(),
            vec![q("1"), q("5/3"), q("19/9")]
        );
        assert_eq!(
            series_partial_sums(&m("r=2/3; delta=geom(1,2)"), 2).unwrap(),
            vec![q("1"), q("3")]
        );
    }

    #[test]
    fn witness_chain_examples() {
        let mon = m("r=2/3; delta=const(1)");
        let chain = witness_chain(&mon, 3).unwrap();
        assert_eq!(chain.len(), 3);
        for (j, x) in chain.elements.iter().enumerate() {
            assert_eq!(*x, "2/3".parse::<Ratio>().unwrap().pow(j as u64).mul_int(&BigUint::from(2u32)));
        }
        assert_eq!(chain.differences[0], Factorization::from_pairs([(1usize, 1u32)]));
        assert!(chain.verify(&mon).unwrap());

        let five = m("r=2/5; delta=const(1)");
        let chain = witness_chain(&five, 2).unwrap();
        assert_eq!(chain.differences, vec![Factorization::from_pairs([(1usize, 3u32)])]);

        assert!(witness_chain(&m("r=2/3; delta=geom(1,2)"), 4).is_err());
        assert!(witness_chain(&mon, 0).is_err());
    }

    #[test]
    fn witness_chain_periodic_uses_blocks() {
        // 3 < 2^5, so single steps do not work; whole periods do.
        let mon = m("r=2/3; delta=prefix(4); periodic(1,5)");
        let chain = witness_chain(&mon, 5).unwrap();
        assert_eq!(chain.indices, vec![1, 3, 5, 7, 9]);
        assert!(chain.verify(&mon).unwrap());
    }

    #[test]
    fn counterexample_examples() {
        let rep = construct_counterexample(2, 3, 6).unwrap();
        assert_eq!(rep.delta, vec![2, 3, 4, 6, 9, 14]);
        assert_eq!(rep.checks.len(), 12);
        assert!(rep.verified);

        let rep = construct_counterexample(2, 4, 3).unwrap();
        assert_eq!(rep.delta, vec![2, 3, 5]);
        assert_eq!(rep.r.to_string(), "1/2");
        assert_eq!(rep.warnings.len(), 2);
        assert_eq!(classify(&rep.monoid(3).unwrap()).atomicity.kind, AtomicityKind::Antimatter);

        let rep = construct_counterexample(3, 5, 3).unwrap();
        assert_eq!(rep.delta, vec![2, 2, 2]);
        assert!(rep.checks.iter().filter(|c| c.statement.starts_with("5^")).all(|c| c.holds));
        let c = classify(&rep.monoid(3).unwrap());
        assert_eq!((c.accp, c.evidence.rule), (Verdict::No, Rule::NonAccpIdentity));

        assert!(construct_counterexample(2, 3, 1).is_err());
        assert!(construct_counterexample(3, 2, 4).is_err());
    }

    #[test]
    fn probe_examples() {
        let two = Factorization::from_pairs([(0usize, 2u32)]);
        let rep = empirical_probe(&m("r=2/3; delta=geom(1,2)"), &two, 20).unwrap();
        assert!(rep.length < 20);
        assert!(rep.terminated);
        let flat = m("r=2/3; delta=const(1)");
        let rep = empirical_probe(&flat, &two, 10).unwrap();
        assert_eq!(rep.length, 10);
        assert!(!rep.terminated);
        for (j, y) in rep.differences.iter().enumerate() {
            assert_eq!(rep.chain[j].checked_sub(&rep.chain[j + 1]), Some(flat.evaluate(y).unwrap()));
        }
        let rep = empirical_probe(&flat, &Factorization::new(), 10).unwrap();
        assert_eq!(rep.length, 0);
    }
}
