//! Symbolic exponential monoids `M_{r,S} = <r^{s_n} : n >= 0>`.
//!
//! The exponent set `S = {0 = s_0 < s_1 < ...}` is never materialized; it is
//! described by its gap sequence `delta_n = s_{n+1} - s_n`, an explicit
//! prefix followed by a rule-based tail. All "eventually" questions asked by
//! the classifier are answered from the tail rule.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{parse_nat, Ratio};
use crate::error::{Error, Result};

/// Gap rule applied after the explicit prefix. Tail indices are relative to
/// the start of the tail: for `prefix` of length `k`, `delta_{k+j}` is the
/// rule evaluated at `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    /// `delta = c` forever.
    Constant(u64),
    /// `delta = p(j)`; coefficients lowest degree first.
    Polynomial(Vec<BigInt>),
    /// `delta = scale * ratio^j`.
    Geometric { scale: u64, ratio: u64 },
    /// The pattern repeated.
    Periodic(Vec<u64>),
    /// `delta_{n+1} = max{m : a^m < b^{delta_n}}`, seeded by the last prefix
    /// gap or by 2 when the prefix is empty.
    Recurrence { a: u64, b: u64 },
    /// No tail: `S` is the finite set spanned by the prefix.
    Finite,
}

/// Seed used by [`Tail::Recurrence`] when there is no prefix.
pub const RECURRENCE_SEED: u64 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSpec {
    prefix: Vec<u64>,
    tail: Tail,
}

impl DeltaSpec {
    pub fn new(prefix: Vec<u64>, tail: Tail) -> Result<Self> {
        if let Some(i) = prefix.iter().position(|&d| d == 0) {
            return Err(Error::parse(format!("prefix gap {i} is zero; gaps must be >= 1")));
        }
        let tail = validate_tail(tail)?;
        Ok(DeltaSpec { prefix, tail })
    }

    pub fn constant(c: u64) -> Result<Self> {
        Self::new(Vec::new(), Tail::Constant(c))
    }

    pub fn geometric(scale: u64, ratio: u64) -> Result<Self> {
        Self::new(Vec::new(), Tail::Geometric { scale, ratio })
    }

    pub fn polynomial(coeffs: &[i64]) -> Result<Self> {
        Self::new(
            Vec::new(),
            Tail::Polynomial(coeffs.iter().map(|&c| BigInt::from(c)).collect()),
        )
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.tail, Tail::Finite)
    }

    /// Largest valid index into `S` for finite specs.
    pub fn last_index(&self) -> Option<usize> {
        self.is_finite().then_some(self.prefix.len())
    }

    /// `delta_n`.
    pub fn delta(&self, n: usize) -> Result<u64> {
        if n < self.prefix.len() {
            return Ok(self.prefix[n]);
        }
        if let Tail::Recurrence { .. } = self.tail {
            return Ok(*self.gaps(n + 1)?.last().expect("nonempty window"));
        }
        self.tail_delta(n - self.prefix.len())
    }

    fn tail_delta(&self, j: usize) -> Result<u64> {
        match &self.tail {
            Tail::Constant(c) => Ok(*c),
            Tail::Polynomial(coeffs) => eval_poly_u64(coeffs, j as u64),
            Tail::Geometric { scale, ratio } => u32::try_from(j)
                .ok()
                .and_then(|j| ratio.checked_pow(j))
                .and_then(|p| p.checked_mul(*scale))
                .ok_or_else(|| Error::range(format!("geometric gap at tail index {j} overflows u64"))),
            Tail::Periodic(pattern) => Ok(pattern[j % pattern.len()]),
            Tail::Recurrence { .. } => unreachable!("recurrence gaps are computed sequentially"),
            Tail::Finite => Err(Error::range(format!(
                "gap {} requested from a finite exponent set with {} gaps",
                j + self.prefix.len(),
                self.prefix.len()
            ))),
        }
    }

    /// The first `count` gaps `delta_0 .. delta_{count-1}`.
    pub fn gaps(&self, count: usize) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(count);
        out.extend(self.prefix.iter().take(count).copied());
        if let Tail::Recurrence { a, b } = self.tail {
            let mut prev = self.prefix.last().copied();
            while out.len() < count {
                let next = match prev {
                    None => RECURRENCE_SEED,
                    Some(p) => recurrence_step(a, b, p)?,
                };
                out.push(next);
                prev = Some(next);
            }
            return Ok(out);
        }
        for j in 0..count.saturating_sub(self.prefix.len()) {
            out.push(self.tail_delta(j)?);
        }
        Ok(out)
    }

    /// `s_n = delta_0 + ... + delta_{n-1}`.
    pub fn s_index(&self, n: usize) -> Result<u64> {
        if let Some(last) = self.last_index() {
            if n > last {
                return Err(Error::range(format!(
                    "index {n} beyond finite exponent set (largest index {last})"
                )));
            }
        }
        self.gaps(n)?
            .iter()
            .try_fold(0u64, |acc, &d| acc.checked_add(d))
            .ok_or_else(|| Error::range(format!("s_{n} overflows u64")))
    }

    /// `s_0 ..= s_n`.
    pub fn exponents(&self, n: usize) -> Result<Vec<u64>> {
        if let Some(last) = self.last_index() {
            if n > last {
                return Err(Error::range(format!(
                    "index {n} beyond finite exponent set (largest index {last})"
                )));
            }
        }
        let mut out = Vec::with_capacity(n + 1);
        let mut s = 0u64;
        out.push(0);
        for d in self.gaps(n)? {
            s = s
                .checked_add(d)
                .ok_or_else(|| Error::range("exponent overflows u64"))?;
            out.push(s);
        }
        Ok(out)
    }

    /// Gap spec of `S - s_i`: the first `i` gaps dropped.
    pub fn truncate(&self, i: usize) -> Result<DeltaSpec> {
        let k = self.prefix.len();
        if i <= k {
            if i == k {
                if let Tail::Recurrence { .. } = self.tail {
                    // The recurrence is seeded by the gap before it, which
                    // must survive the cut.
                    if k > 0 && i > 0 {
                        let seed_tail = self.gaps(k + 1)?[k];
                        return DeltaSpec::new(vec![seed_tail], self.tail.clone());
                    }
                }
            }
            return DeltaSpec::new(self.prefix[i..].to_vec(), self.tail.clone());
        }
        let j = i - k;
        let tail = match &self.tail {
            Tail::Constant(c) => Tail::Constant(*c),
            Tail::Polynomial(coeffs) => Tail::Polynomial(taylor_shift(coeffs, j as u64)),
            Tail::Geometric { ratio, .. } => Tail::Geometric {
                scale: self.tail_delta(j)?,
                ratio: *ratio,
            },
            Tail::Periodic(p) => {
                let s = j % p.len();
                Tail::Periodic(p[s..].iter().chain(&p[..s]).copied().collect())
            }
            Tail::Recurrence { .. } => {
                let d = self.delta(i)?;
                return DeltaSpec::new(vec![d], self.tail.clone());
            }
            Tail::Finite => {
                return Err(Error::range(format!(
                    "cannot truncate {i} gaps from a finite exponent set with {k} gaps"
                )))
            }
        };
        DeltaSpec::new(Vec::new(), tail)
    }

    /// Upper bound on every gap when the rule is bounded.
    pub fn bounded_max(&self) -> Option<u64> {
        let tail_max = match &self.tail {
            Tail::Constant(c) => *c,
            Tail::Periodic(p) => *p.iter().max()?,
            Tail::Polynomial(c) if c.len() == 1 => c[0].to_u64()?,
            Tail::Finite => 0,
            _ => return None,
        };
        Some(self.prefix.iter().copied().fold(tail_max, u64::max))
    }

    pub fn to_json(&self) -> Value {
        let tail = match &self.tail {
            Tail::Constant(c) => json!({ "const": c }),
            Tail::Polynomial(cs) => {
                json!({ "poly": cs.iter().map(|c| c.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::from(c.to_string()))).collect::<Vec<_>>() })
            }
            Tail::Geometric { scale, ratio } => json!({ "geom": [scale, ratio] }),
            Tail::Periodic(p) => json!({ "periodic": p }),
            Tail::Recurrence { a, b } => json!({ "recur": [a, b] }),
            Tail::Finite => json!("finite"),
        };
        json!({ "prefix": self.prefix, "tail": tail })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::parse("delta must be a JSON object"))?;
        let prefix = match obj.get("prefix") {
            None | Some(Value::Null) => Vec::new(),
            Some(p) => json_u64_list(p, "prefix")?,
        };
        let tail_v = obj
            .get("tail")
            .ok_or_else(|| Error::parse("delta.tail is required"))?;
        let tail = match tail_v {
            Value::String(s) if s == "finite" => Tail::Finite,
            Value::Object(t) if t.len() == 1 => {
                let (k, args) = t.iter().next().expect("one entry");
                match k.as_str() {
                    "const" => {
                        let v = match args {
                            Value::Array(_) => single(&json_u64_list(args, "const")?, "const")?,
                            _ => json_u64(args, "const")?,
                        };
                        Tail::Constant(v)
                    }
                    "poly" => Tail::Polynomial(json_int_list(args)?),
                    "geom" => {
                        let v = json_u64_list(args, "geom")?;
                        match v[..] {
                            [scale, ratio] => Tail::Geometric { scale, ratio },
                            _ => return Err(Error::parse("geom takes [scale, ratio]")),
                        }
                    }
                    "periodic" => Tail::Periodic(json_u64_list(args, "periodic")?),
                    "recur" => {
                        let v = json_u64_list(args, "recur")?;
                        match v[..] {
                            [a, b] => Tail::Recurrence { a, b },
                            _ => return Err(Error::parse("recur takes [a, b]")),
                        }
                    }
                    "finite" => Tail::Finite,
                    other => return Err(Error::parse(format!("unknown tail rule {other:?}"))),
                }
            }
            _ => return Err(Error::parse("delta.tail must be \"finite\" or a one-key object")),
        };
        DeltaSpec::new(prefix, tail)
    }
}

fn single(v: &[u64], what: &str) -> Result<u64> {
    match v {
        [x] => Ok(*x),
        _ => Err(Error::parse(format!("{what} takes exactly one argument"))),
    }
}

fn json_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::parse(format!("{what}: expected a nonnegative integer, got {v}")))
}

fn json_u64_list(v: &Value, what: &str) -> Result<Vec<u64>> {
    v.as_array()
        .ok_or_else(|| Error::parse(format!("{what}: expected an array")))?
        .iter()
        .map(|x| json_u64(x, what))
        .collect()
}

fn json_int_list(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::parse("poly: expected an array"))?
        .iter()
        .map(|x| match x {
            Value::Number(n) => BigInt::from_str(&n.to_string())
                .map_err(|_| Error::parse(format!("poly: bad coefficient {n}"))),
            Value::String(s) => parse_int(s),
            _ => Err(Error::parse(format!("poly: bad coefficient {x}"))),
        })
        .collect()
}

fn validate_tail(tail: Tail) -> Result<Tail> {
    match tail {
        Tail::Constant(0) => Err(Error::parse("const(c) needs c >= 1")),
        Tail::Geometric { scale, ratio } if scale == 0 || ratio < 2 => {
            Err(Error::parse("geom(a, c) needs integer a >= 1 and c >= 2"))
        }
        Tail::Periodic(ref p) if p.is_empty() || p.contains(&0) => {
            Err(Error::parse("periodic pattern must be nonempty with entries >= 1"))
        }
        Tail::Recurrence { a, b } if a < 2 || b <= a => {
            Err(Error::parse("recur(a, b) needs 2 <= a < b"))
        }
        Tail::Polynomial(mut coeffs) => {
            while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
                coeffs.pop();
            }
            if coeffs.is_empty() {
                return Err(Error::parse("poly needs at least one coefficient"));
            }
            check_poly_positive(&coeffs)?;
            Ok(Tail::Polynomial(coeffs))
        }
        t => Ok(t),
    }
}

/// Window beyond which positivity is not checked exhaustively.
const POLY_CHECK_LIMIT: u64 = 1 << 20;

/// Verifies `p(j) >= 1` for every `j >= 0`.
///
/// Nonnegative coefficients with `p(0) >= 1` settle it symbolically. Otherwise
/// the leading coefficient must be positive and every integer beyond the
/// Cauchy root bound `1 + max|c_i| / c_d` is past the last real root, so the
/// window up to that bound is checked term by term.
fn check_poly_positive(coeffs: &[BigInt]) -> Result<()> {
    let lead = coeffs.last().expect("nonempty");
    if coeffs.len() == 1 {
        return if *lead >= BigInt::one() {
            Ok(())
        } else {
            Err(Error::parse("constant poly must be >= 1"))
        };
    }
    if coeffs.iter().all(|c| !c.is_negative()) && coeffs[0] >= BigInt::one() {
        return Ok(());
    }
    if !lead.is_positive() {
        return Err(Error::parse("poly leading coefficient must be positive"));
    }
    let max_low = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .expect("degree >= 1");
    let bound = BigInt::one() + (max_low + lead - BigInt::one()) / lead;
    let bound = bound
        .to_u64()
        .filter(|&b| b <= POLY_CHECK_LIMIT)
        .ok_or_else(|| Error::parse("cannot certify poly positivity: root bound too large"))?;
    for j in 0..=bound {
        if eval_poly(coeffs, j) < BigInt::one() {
            return Err(Error::parse(format!("poly evaluates below 1 at n = {j}")));
        }
    }
    Ok(())
}

fn eval_poly(coeffs: &[BigInt], x: u64) -> BigInt {
    let x = BigInt::from(x);
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * &x + c)
}

fn eval_poly_u64(coeffs: &[BigInt], x: u64) -> Result<u64> {
    eval_poly(coeffs, x)
        .to_u64()
        .ok_or_else(|| Error::range(format!("polynomial gap at tail index {x} overflows u64")))
}

/// Coefficients of `p(x + j)`.
fn taylor_shift(coeffs: &[BigInt], j: u64) -> Vec<BigInt> {
    let j = BigInt::from(j);
    let mut out = coeffs.to_vec();
    // Repeated synthetic division by (x - j).
    let n = out.len();
    for i in 0..n {
        for k in (i..n - 1).rev() {
            let carry = &out[k + 1] * &j;
            out[k] += carry;
        }
    }
    out
}

/// `max{m : a^m < b^delta}` with exact big-integer comparisons.
pub fn recurrence_step(a: u64, b: u64, delta: u64) -> Result<u64> {
    debug_assert!(a >= 2 && b > a);
    let target = Pow::pow(BigUint::from(b), delta);
    let a_big = BigUint::from(a);
    // a^m < 2^(m * bits(a)) <= 2^(bits(target) - 1) <= target
    let mut m = (target.bits() - 1) / a_big.bits();
    let mut pow = Pow::pow(&a_big, m);
    loop {
        let next = &pow * &a_big;
        if next >= target {
            return Ok(m);
        }
        pow = next;
        m += 1;
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let mag = parse_nat(digits)?;
    Ok(BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag))
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tail::Constant(c) => write!(f, "const({c})"),
            Tail::Polynomial(cs) => write!(f, "poly({})", join(cs)),
            Tail::Geometric { scale, ratio } => write!(f, "geom({scale},{ratio})"),
            Tail::Periodic(p) => write!(f, "periodic({})", join(p)),
            Tail::Recurrence { a, b } => write!(f, "recur({a},{b})"),
            Tail::Finite => write!(f, "finite"),
        }
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for DeltaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            write!(f, "prefix({}); ", join(&self.prefix))?;
        }
        write!(f, "{}", self.tail)
    }
}

fn call_args<'a>(token: &'a str, name: &str) -> Option<&'a str> {
    token
        .strip_prefix(name)?
        .strip_prefix('(')?
        .strip_suffix(')')
}

fn nat_list(args: &str) -> Result<Vec<u64>> {
    if args.is_empty() {
        return Ok(Vec::new());
    }
    args.split(',')
        .map(|a| {
            a.parse::<u64>()
                .map_err(|_| Error::parse(format!("expected a nonnegative integer, got {a:?}")))
        })
        .collect()
}

fn parse_tail(token: &str) -> Result<Tail> {
    if token == "finite" {
        return Ok(Tail::Finite);
    }
    if let Some(args) = call_args(token, "const") {
        return Ok(Tail::Constant(single(&nat_list(args)?, "const")?));
    }
    if let Some(args) = call_args(token, "poly") {
        let cs = args.split(',').map(parse_int).collect::<Result<Vec<_>>>()?;
        return Ok(Tail::Polynomial(cs));
    }
    if let Some(args) = call_args(token, "geom") {
        return match nat_list(args)?[..] {
            [scale, ratio] => Ok(Tail::Geometric { scale, ratio }),
            _ => Err(Error::parse("geom takes two arguments")),
        };
    }
    if let Some(args) = call_args(token, "periodic") {
        return Ok(Tail::Periodic(nat_list(args)?));
    }
    if let Some(args) = call_args(token, "recur") {
        return match nat_list(args)?[..] {
            [a, b] => Ok(Tail::Recurrence { a, b }),
            _ => Err(Error::parse("recur takes two arguments")),
        };
    }
    Err(Error::parse(format!("unknown gap rule {token:?}")))
}

impl FromStr for DeltaSpec {
    type Err = Error;

    /// `[prefix(d0,...);] tail`, whitespace-insensitive.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let tokens: Vec<&str> = compact.split(';').filter(|t| !t.is_empty()).collect();
        match tokens[..] {
            [tail] => DeltaSpec::new(Vec::new(), parse_tail(tail)?),
            [prefix, tail] => {
                let args = call_args(prefix, "prefix")
                    .ok_or_else(|| Error::parse(format!("expected prefix(...), got {prefix:?}")))?;
                DeltaSpec::new(nat_list(args)?, parse_tail(tail)?)
            }
            _ => Err(Error::parse(format!("malformed gap rule {s:?}"))),
        }
    }
}

/// `M_{r,S}` for `r > 0` and `S` described by its gaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpMonoid {
    r: Ratio,
    delta: DeltaSpec,
}

impl ExpMonoid {
    pub fn new(r: Ratio, delta: DeltaSpec) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::parse("r must be positive"));
        }
        Ok(ExpMonoid { r, delta })
    }

    pub fn r(&self) -> &Ratio {
        &self.r
    }

    pub fn delta(&self) -> &DeltaSpec {
        &self.delta
    }

    /// n(r)
    pub fn n(&self) -> &BigUint {
        self.r.numer()
    }

    /// d(r)
    pub fn d(&self) -> &BigUint {
        self.r.denom()
    }

    pub fn below_one(&self) -> bool {
        self.n() < self.d()
    }

    pub fn above_one(&self) -> bool {
        self.n() > self.d()
    }

    pub fn s_index(&self, n: usize) -> Result<u64> {
        self.delta.s_index(n)
    }

    /// `r^{s_n}`.
    pub fn atom(&self, n: usize) -> Result<Ratio> {
        Ok(self.r.pow(self.s_index(n)?))
    }

    pub fn truncate(&self, i: usize) -> Result<ExpMonoid> {
        Ok(ExpMonoid {
            r: self.r.clone(),
            delta: self.delta.truncate(i)?,
        })
    }

    pub fn classify_atomicity(&self) -> AtomicityVerdict {
        classify_atomicity(&self.r)
    }

    pub fn to_json(&self) -> Value {
        json!({ "r": self.r.to_string(), "delta": self.delta.to_json() })
    }

    /// Parses the spec-file form `{"r": "2/3", "delta": {"prefix": [], "tail": {...}}}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let r = v
            .get("r")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::parse("spec file needs a string field \"r\""))?
            .parse()?;
        let delta = DeltaSpec::from_json(
            v.get("delta")
                .ok_or_else(|| Error::parse("spec file needs a field \"delta\""))?,
        )?;
        ExpMonoid::new(r, delta)
    }
}

impl fmt::Display for ExpMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={}; delta={}", self.r, self.delta)
    }
}

impl FromStr for ExpMonoid {
    type Err = Error;

    /// `r=<p>/<q>; delta=[prefix(...);] <tail>`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (r_part, rest) = compact
            .split_once(';')
            .ok_or_else(|| Error::parse("expected `r=<p>/<q>; delta=<rule>`"))?;
        let r = r_part
            .strip_prefix("r=")
            .ok_or_else(|| Error::parse(format!("expected r=<p>/<q>, got {r_part:?}")))?
            .parse()?;
        let delta = rest
            .strip_prefix("delta=")
            .ok_or_else(|| Error::parse(format!("expected delta=<rule>, got {rest:?}")))?
            .parse()?;
        ExpMonoid::new(r, delta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AtomicityKind {
    /// `d(r) = 1`: the monoid is `N_0`.
    IsoNaturals,
    /// `n(r) = 1 < d(r)`: no atoms.
    Antimatter,
    /// `n(r), d(r) > 1`: atoms are exactly the generators.
    Atomic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AtomSet {
    /// `{1}`
    One,
    Empty,
    /// `{r^{s_n} : n >= 0}`
    Generators,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AtomicityVerdict {
    pub kind: AtomicityKind,
    pub atoms: AtomSet,
}

/// The atomicity trichotomy; depends on `r` only.
pub fn classify_atomicity(r: &Ratio) -> AtomicityVerdict {
    if r.denom().is_one() {
        AtomicityVerdict {
            kind: AtomicityKind::IsoNaturals,
            atoms: AtomSet::One,
        }
    } else if r.numer().is_one() {
        AtomicityVerdict {
            kind: AtomicityKind::Antimatter,
            atoms: AtomSet::Empty,
        }
    } else {
        AtomicityVerdict {
            kind: AtomicityKind::Atomic,
            atoms: AtomSet::Generators,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> ExpMonoid {
        s.parse().unwrap()
    }

    #[test]
    fn s_index_examples() {
        assert_eq!(DeltaSpec::constant(1).unwrap().s_index(5).unwrap(), 5);
        assert_eq!(DeltaSpec::geometric(1, 2).unwrap().s_index(3).unwrap(), 7);
        let d: DeltaSpec = "prefix(2,3); const(4)".parse().unwrap();
        assert_eq!(d.s_index(4).unwrap(), 13);
    }

    #[test]
    fn s_index_finite_range() {
        let d: DeltaSpec = "prefix(2,3); finite".parse().unwrap();
        assert_eq!(d.s_index(2).unwrap(), 5);
        assert!(matches!(d.s_index(3), Err(Error::Range(_))));
    }

    #[test]
    fn atom_examples() {
        assert_eq!(m("r=2/3; delta=const(1)").atom(2).unwrap().to_string(), "4/9");
        assert_eq!(m("r=2/3; delta=geom(1,2)").atom(2).unwrap().to_string(), "8/27");
        assert_eq!(m("r=5/7; delta=poly(3,0,2)").atom(0).unwrap(), Ratio::one());
    }

    #[test]
    fn atomicity_trichotomy() {
        let k = |s: &str| classify_atomicity(&s.parse().unwrap());
        assert_eq!(k("3").kind, AtomicityKind::IsoNaturals);
        assert_eq!(k("3").atoms, AtomSet::One);
        assert_eq!(k("1/2").kind, AtomicityKind::Antimatter);
        assert_eq!(k("1/2").atoms, AtomSet::Empty);
        assert_eq!(k("2/3").kind, AtomicityKind::Atomic);
        assert_eq!(k("2/3").atoms, AtomSet::Generators);
    }

    #[test]
    fn truncate_examples() {
        let d: DeltaSpec = "prefix(5); const(1)".parse().unwrap();
        assert_eq!(d.truncate(1).unwrap(), DeltaSpec::constant(1).unwrap());
        let g = DeltaSpec::geometric(1, 2).unwrap();
        assert_eq!(g.truncate(2).unwrap(), DeltaSpec::geometric(4, 2).unwrap());
        assert_eq!(g.truncate(0).unwrap(), g);
        let f: DeltaSpec = "prefix(1,2); finite".parse().unwrap();
        assert!(f.truncate(2).is_ok());
        assert!(matches!(f.truncate(3), Err(Error::Range(_))));
    }

    #[test]
    fn truncate_shifts_rules() {
        let p = DeltaSpec::polynomial(&[1, 1]).unwrap();
        assert_eq!(p.truncate(3).unwrap().gaps(4).unwrap(), vec![4, 5, 6, 7]);
        let q: DeltaSpec = "periodic(1,2,3)".parse().unwrap();
        assert_eq!(q.truncate(4).unwrap().gaps(4).unwrap(), vec![2, 3, 1, 2]);
        let rec: DeltaSpec = "prefix(2,3); recur(2,3)".parse().unwrap();
        assert_eq!(rec.truncate(2).unwrap().gaps(3).unwrap(), vec![4, 6, 9]);
        assert_eq!(rec.truncate(3).unwrap().gaps(3).unwrap(), vec![6, 9, 14]);
    }

    #[test]
    fn recurrence_gaps() {
        let rec: DeltaSpec = "recur(2,3)".parse().unwrap();
        assert_eq!(rec.gaps(6).unwrap(), vec![2, 3, 4, 6, 9, 14]);
        assert_eq!(rec.delta(5).unwrap(), 14);
        let flat: DeltaSpec = "recur(3,5)".parse().unwrap();
        assert_eq!(flat.gaps(3).unwrap(), vec![2, 2, 2]);
    }

    #[test]
    fn poly_validation() {
        assert!(DeltaSpec::polynomial(&[1, 1]).is_ok());
        assert!(DeltaSpec::polynomial(&[2, -1, 1]).is_ok());
        assert!(DeltaSpec::polynomial(&[0, 1]).is_err());
        assert!(DeltaSpec::polynomial(&[5, -1]).is_err());
        assert!(DeltaSpec::polynomial(&[3, -4, 1]).is_err()); // p(1) = 0
        assert_eq!(DeltaSpec::polynomial(&[2, -1, 1]).unwrap().gaps(4).unwrap(), vec![2, 2, 4, 8]);
    }

    #[test]
    fn grammar_round_trip() {
        for s in [
            "r=2/3; delta=geom(1,2)",
            "r=2/3; delta=prefix(1,3); const(2)",
            "r=7/4; delta=periodic(1,2)",
            "r=2/9; delta=poly(1,-1,1)",
            "r=2/3; delta=prefix(2,3); finite",
            "r=2/3; delta=recur(2,3)",
        ] {
            let parsed = m(s);
            assert_eq!(parsed.to_string(), s);
            assert_eq!(ExpMonoid::from_json(&parsed.to_json()).unwrap(), parsed);
        }
        assert_eq!(m(" r = 4/6 ;delta = const( 1 ) ").to_string(), "r=2/3; delta=const(1)");
    }

    #[test]
    fn grammar_errors() {
        for bad in [
            "r=2/0; delta=const(1)",
            "r=2/3",
            "r=2/3; delta=const(0)",
            "r=2/3; delta=geom(1,1)",
            "r=2/3; delta=prefix(0); const(1)",
            "r=2/3; delta=banana(1)",
            "r=0/3; delta=const(1)",
            "r=-2/3; delta=const(1)",
        ] {
            assert!(bad.parse::<ExpMonoid>().is_err(), "{bad}");
        }
    }

    #[test]
    fn spec_file_form() {
        let v: Value = serde_json::from_str(
            r#"{"r": "2/3", "delta": {"prefix": [], "tail": {"geom": [1,2]}}}"#,
        )
        .unwrap();
        assert_eq!(ExpMonoid::from_json(&v).unwrap(), m("r=2/3; delta=geom(1,2)"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_spec() -> impl Strategy<Value = DeltaSpec> {
            let prefix = proptest::collection::vec(1u64..6, 0..4);
            let tail = prop_oneof![
                (1u64..5).prop_map(Tail::Constant),
                ((1u64..4), (2u64..4)).prop_map(|(scale, ratio)| Tail::Geometric { scale, ratio }),
                proptest::collection::vec(1u64..5, 1..4).prop_map(Tail::Periodic),
                proptest::collection::vec(0i64..4, 1..3)
                    .prop_map(|mut c| { c[0] += 1; Tail::Polynomial(c.into_iter().map(BigInt::from).collect()) }),
                Just(Tail::Recurrence { a: 2, b: 3 }),
            ];
            (prefix, tail).prop_map(|(p, t)| DeltaSpec::new(p, t).unwrap())
        }

        proptest! {
            #[test]
            fn strictly_increasing_and_sums(d in arb_spec()) {
                let gaps = d.gaps(20).unwrap();
                let exps = d.exponents(20).unwrap();
                prop_assert_eq!(exps[0], 0);
                let mut acc = 0u64;
                for (i, g) in gaps.iter().enumerate() {
                    prop_assert!(*g >= 1);
                    prop_assert_eq!(exps[i], acc);
                    prop_assert!(exps[i] < exps[i + 1]);
                    acc += g;
                }
                for (n, e) in exps.iter().enumerate().take(21) {
                    prop_assert_eq!(d.s_index(n).unwrap(), *e);
                }
            }

            #[test]
            fn truncation_composes(d in arb_spec(), i in 0usize..6, j in 0usize..6) {
                let two_step = d.truncate(i).unwrap().truncate(j).unwrap();
                let one_step = d.truncate(i + j).unwrap();
                prop_assert_eq!(two_step.gaps(12).unwrap(), one_step.gaps(12).unwrap());
                let full = d.gaps(i + j + 12).unwrap();
                prop_assert_eq!(&full[i + j..], &one_step.gaps(12).unwrap()[..]);
            }

            #[test]
            fn atomicity_ignores_gaps(p in 1u64..30, q in 1u64..30, d1 in arb_spec(), d2 in arb_spec()) {
                let r = Ratio::new(p, q).unwrap();
                let a = ExpMonoid::new(r.clone(), d1).unwrap();
                let b = ExpMonoid::new(r, d2).unwrap();
                prop_assert_eq!(a.classify_atomicity(), b.classify_atomicity());
            }
        }
    }
}
