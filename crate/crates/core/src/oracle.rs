//! Brute-force enumeration of factorizations, used to check the fast paths.
//!
//! Shares nothing with [`ExpMonoid::enumerate_all`]: no residues, no normal
//! forms, just nested loops over capped coefficients. Vectors are indexed by
//! generator `r^{s_i}`; integer bases are not collapsed to the single atom 1.

use num_bigint::BigUint;
use num_traits::{Pow, Zero};

use crate::arith::Ratio;
use crate::error::Result;
use crate::monoid::ExpMonoid;

/// All `(c_0, ..., c_B)` with `sum c_i r^{s_i} = x`, sorted. `B` is clipped to
/// the last index of a finite exponent set.
pub fn oracle_enumerate(x: &Ratio, m: &ExpMonoid, max_index: usize) -> Result<Vec<Vec<BigUint>>> {
    let b = match m.delta().last_index() {
        Some(last) => max_index.min(last),
        None => max_index,
    };
    let exps: Vec<u64> = (0..=b).map(|i| m.s_index(i)).collect::<Result<_>>()?;
    let top = exps[b];
    let scaled = x.numer() * Pow::pow(m.d(), top);
    if !(&scaled % x.denom()).is_zero() {
        return Ok(Vec::new());
    }
    let target = scaled / x.denom();
    // Value of r^{s_i} over the common denominator d^{s_B}.
    let weights: Vec<BigUint> = exps
        .iter()
        .map(|&s| Pow::pow(m.n(), s) * Pow::pow(m.d(), top - s))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(b + 1);
    nested(&weights, &target, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn nested(weights: &[BigUint], remaining: &BigUint, current: &mut Vec<BigUint>, out: &mut Vec<Vec<BigUint>>) {
    let level = current.len();
    let w = &weights[level];
    if level + 1 == weights.len() {
        // The last coefficient is forced.
        if (remaining % w).is_zero() {
            let mut v = current.clone();
            v.push(remaining / w);
            out.push(v);
        }
        return;
    }
    let cap = remaining / w;
    let mut c = BigUint::zero();
    let mut used = BigUint::zero();
    while c <= cap {
        current.push(c.clone());
        nested(weights, &(remaining - &used), current, out);
        current.pop();
        c += 1u32;
        used += w;
    }
}
