//! Membership and divisibility queries with their three possible outcomes.

use expmonoid::membership::{default_support_bound, divides, is_member};
use expmonoid::{ExpMonoid, Ratio};

fn main() -> expmonoid::Result<()> {
    let m: ExpMonoid = "r=2/3; delta=const(1)".parse()?;
    for x in ["4/3", "1/5", "1/9", "10/27"] {
        let q: Ratio = x.parse()?;
        let bound = default_support_bound(&q, &m);
        println!("{x} in M at bound {bound}: {}", is_member(&q, &m, bound).to_json());
    }
    let (x, y): (Ratio, Ratio) = ("2/3".parse()?, "2".parse()?);
    println!("2/3 | 2: {}", divides(&x, &y, &m, 3).to_json());

    let big: ExpMonoid = "r=5/2; delta=const(1)".parse()?;
    let q: Ratio = "3/2".parse()?;
    println!("3/2 in {big}: {}", is_member(&q, &big, 0).to_json());
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
