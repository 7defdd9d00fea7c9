//! Atomicity trichotomy and atoms of a few exponent sets.

use expmonoid::{AtomicityKind, ExpMonoid};

fn main() -> expmonoid::Result<()> {
    for spec in [
        "r=3; delta=const(1)",
        "r=1/2; delta=const(1)",
        "r=2/3; delta=geom(1,2)",
        "r=5/2; delta=prefix(1,3); periodic(2,1)",
    ] {
        let m: ExpMonoid = spec.parse()?;
        let verdict = m.classify_atomicity();
        print!("{m}: {:?}", verdict.kind);
        if verdict.kind == AtomicityKind::Atomic {
            let atoms: Vec<String> = (0..5).map(|i| m.atom(i).map(|a| a.to_string())).collect::<Result<_, _>>()?;
            print!("  atoms {}", atoms.join(", "));
        }
        println!();
    }
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
