//! The JSON front end, driven in-process.

fn main() {
    for args in [
        vec!["classify", "--monoid", "r=2/3; delta=geom(1,2)"],
        vec!["member", "--monoid", "r=2/3; delta=const(1)", "--x", "1/5"],
        vec!["counterexample", "--a", "2", "--b", "3", "--k", "6"],
        vec!["oracle", "enumerate", "--monoid", "r=2/3; delta=const(1)", "--x", "2", "--max-index", "3"],
        vec!["classify", "--monoid", "r=2/0; delta=const(1)"],
    ] {
        let (code, out) = expmonoid::cli::run(std::iter::once("expmonoid").chain(args));
        println!("[exit {code}] {out}");
    }
}

#[test]
fn runs() {
    main();
}
