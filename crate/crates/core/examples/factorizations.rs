//! Normal forms, the carry sweep, bounded enumeration and length sets.

use expmonoid::factorization::MaxLengthOutcome;
use expmonoid::{ExpMonoid, Factorization, Ratio};

fn main() -> expmonoid::Result<()> {
    let flat: ExpMonoid = "r=2/3; delta=const(1)".parse()?;
    let z = Factorization::from_pairs([(2usize, 9u32)]);
    println!("value of {z} = {}", flat.evaluate(&z)?);
    println!("one rewriting step: {}", flat.rewrite_down_step(&z, 2)?);
    println!("min normal form: {}", flat.min_normal_form(&z)?);

    let two = Ratio::integer(2u32);
    for f in flat.enumerate_all(&two, 3)? {
        println!("  2 = {f}  (length {})", f.length());
    }
    let seed = Factorization::from_pairs([(0usize, 2u32)]);
    match flat.max_length_sweep(&seed, 64)? {
        MaxLengthOutcome::Found(w) => println!("max length factorization {w}"),
        MaxLengthOutcome::NoTerminationWithinBound(b) => println!("no maximum length: carries pass level {b}"),
    }

    let geom: ExpMonoid = "r=2/3; delta=geom(1,2)".parse()?;
    if let MaxLengthOutcome::Found(w) = geom.max_length_sweep(&seed, 16)? {
        println!("{geom}: max length factorization of 2 is {w}");
    }
    let ls = geom.length_set(&two, 2)?;
    let lengths: Vec<String> = ls.lengths.iter().map(|l| l.to_string()).collect();
    println!("L(2) = {{{}}}, min exact {}, max exact {}", lengths.join(","), ls.min_exact, ls.max_exact);
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
