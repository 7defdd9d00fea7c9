//! Numerical monoids, semiring exponent sets and the multiplicative monoid.

use expmonoid::semiring::{classify_mult, is_semiring, mult_divides, ExponentSetSpec, NumericalMonoidSpec};
use expmonoid::Ratio;

fn main() -> expmonoid::Result<()> {
    for gens in [vec![2, 3], vec![3, 5], vec![6, 9, 20]] {
        let nm = NumericalMonoidSpec::new(gens)?;
        let apery: Vec<u64> = nm.apery_set(nm.generators()[0]).into_iter().flatten().collect();
        println!("{nm}: Frobenius {} (scan {}), Apery set {apery:?}", nm.frobenius()?, nm.frobenius_dp()?);
    }

    let r: Ratio = "2/3".parse()?;
    for set in ["N=gens(2,3)", "N=prefix(0,1);tail>=5", "N=prefix(0);tail>=2"] {
        let n: ExponentSetSpec = set.parse()?;
        let v = is_semiring(&r, &n);
        println!("{set}: semiring {} ({})", v.semiring, v.reason);
    }

    let nat = ExponentSetSpec::naturals();
    let x: Ratio = "4/3".parse()?;
    for n in 0..4 {
        println!("r^{n} | 4/3: {}", mult_divides(&r, n, &x, &nat, 4)?.to_json());
    }
    for r in ["5/2", "2/9", "2/15", "1/3"] {
        let c = classify_mult(&r.parse()?, &nat);
        println!("mult r={r}: accp {} ffp {} ({})", c.accp, c.ffp, c.evidence.instance);
    }
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
