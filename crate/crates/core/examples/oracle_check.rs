//! Compares the residue-pruned enumeration with the brute-force oracle.

use expmonoid::oracle::oracle_enumerate;
use expmonoid::{ExpMonoid, Factorization, Ratio};

fn main() -> expmonoid::Result<()> {
    let m: ExpMonoid = "r=2/3; delta=const(2)".parse()?;
    let bound = 3;
    let scale = 3u64.pow(m.s_index(bound)? as u32);
    let mut agree = 0;
    for t in 1..=200u64 {
        let x = Ratio::new(t, scale)?;
        let fast = m.enumerate_all(&x, bound)?;
        let mut slow: Vec<Factorization> = oracle_enumerate(&x, &m, bound)?
            .iter()
            .map(|v| Factorization::from_dense(v))
            .collect();
        slow.sort();
        assert_eq!(fast, slow, "disagreement at {x}");
        agree += 1;
    }
    println!("{m}: enumerate_all and the oracle agree on {agree} values at bound {bound}");
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
