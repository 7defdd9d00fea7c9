//! Descending divisibility chains: constructed for non-ACCP monoids,
//! probed greedily for any atomic one.

use expmonoid::accp::{empirical_probe, witness_chain};
use expmonoid::{ExpMonoid, Factorization};

fn main() -> expmonoid::Result<()> {
    let m: ExpMonoid = "r=2/3; delta=const(1)".parse()?;
    let chain = witness_chain(&m, 6)?;
    for (j, x) in chain.elements.iter().enumerate() {
        match chain.differences.get(j) {
            Some(y) => println!("x_{j} = {x} = x_{} + value({y})", j + 1),
            None => println!("x_{j} = {x}"),
        }
    }
    println!("verified: {}", chain.verify(&m)?);

    let seed = Factorization::from_pairs([(0usize, 2u32)]);
    for spec in ["r=2/3; delta=const(1)", "r=2/3; delta=geom(1,2)"] {
        let m: ExpMonoid = spec.parse()?;
        let probe = empirical_probe(&m, &seed, 20)?;
        println!("{m}: probe chain of length {} (stopped on its own: {})", probe.length, probe.terminated);
    }
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
