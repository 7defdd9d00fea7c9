//! ACCP verdicts with evidence, the necessary condition and the series.

use expmonoid::accp::{check_necessary, classify, series_partial_sums};
use expmonoid::ExpMonoid;

fn main() -> expmonoid::Result<()> {
    for spec in [
        "r=2/3; delta=const(1)",
        "r=2/3; delta=geom(1,2)",
        "r=2/5; delta=geom(1,2)",
        "r=2/3; delta=poly(1,1)",
        "r=2/3; delta=prefix(1,1,1); periodic(1,2)",
        "r=2/3; delta=recur(2,3)",
        "r=1/2; delta=const(1)",
        "r=7/3; delta=const(1)",
    ] {
        let m: ExpMonoid = spec.parse()?;
        let c = classify(&m);
        println!("{m}\n  {c}");
        if let Ok(nec) = check_necessary(&m) {
            println!("  necessary condition: {} vs {} -> {:?}", nec.lhs, nec.rhs, nec.bound_holds);
        }
    }
    let m: ExpMonoid = "r=2/3; delta=const(1)".parse()?;
    let sums: Vec<String> = series_partial_sums(&m, 6)?.iter().map(|s| s.to_string()).collect();
    println!("partial sums: {}", sums.join(", "));
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
