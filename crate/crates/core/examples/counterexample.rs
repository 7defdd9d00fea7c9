//! Gap sequences whose ratios creep up to log_a b from below.

use expmonoid::accp::{check_necessary, classify, construct_counterexample};

fn main() -> expmonoid::Result<()> {
    for (a, b, k) in [(2, 3, 6), (2, 4, 3), (3, 5, 3)] {
        let rep = construct_counterexample(a, b, k)?;
        println!("a={a} b={b}: delta = {:?}, r = {}, verified {}", rep.delta, rep.r, rep.verified);
        for w in &rep.warnings {
            println!("  warning: {w}");
        }
    }
    let rep = construct_counterexample(2, 3, 12)?;
    for c in rep.checks.iter().take(4) {
        println!("  n={} {} : {}", c.n, c.statement, c.holds);
    }
    let m = rep.monoid(12)?;
    println!("{m}\n  {}", classify(&m));
    let nec = check_necessary(&m)?;
    println!("  necessary condition holds: {:?} (yet no ACCP)", nec.bound_holds);
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
