//! JSON command-line front end.
//!
//! Every invocation prints one document
//! `{"command", "input", "status": "ok"|"error", "result"|"message"}`.
//! Exit codes: 0 ok (including unknown or unresolved answers), 2 parse
//! errors, 3 precondition errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::accp::{self, classify};
use crate::arith::Ratio;
use crate::error::{Error, Result};
use crate::factorization::{Factorization, MaxLengthOutcome, DEFAULT_LEVEL_BOUND};
use crate::membership::{default_support_bound, divides, is_member};
use crate::monoid::ExpMonoid;
use crate::oracle::oracle_enumerate;
use crate::semiring::{self, ExponentSetSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "expmonoid", version, about = "Exact computation with exponential Puiseux monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize)]
struct MonoidArgs {
    /// Inline spec, e.g. "r=2/3; delta=geom(1,2)".
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    monoid: Option<String>,
    /// JSON file {"r": "2/3", "delta": {"prefix": [], "tail": {"geom": [1,2]}}}.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    spec_file: Option<PathBuf>,
}

impl MonoidArgs {
    fn load(&self) -> Result<ExpMonoid> {
        match (&self.monoid, &self.spec_file) {
            (Some(s), None) => s.parse(),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
                let v: Value = serde_json::from_str(&text).map_err(|e| Error::parse(e.to_string()))?;
                ExpMonoid::from_json(&v)
            }
            (Some(_), Some(_)) => Err(Error::parse("give either --monoid or --spec-file, not both")),
            (None, None) => Err(Error::parse("missing --monoid or --spec-file")),
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct MonoidOnly {
    #[command(flatten)]
    #[serde(flatten)]
    monoid: MonoidArgs,
}

#[derive(Args, Debug, Serialize)]
struct WithX {
    #[command(flatten)]
    #[serde(flatten)]
    monoid: MonoidArgs,
    #[arg(long)]
    x: String,
    /// Support bound; defaults to the denominator-forced level plus 3.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct Member {
    #[command(flatten)]
    #[serde(flatten)]
    monoid: MonoidArgs,
    #[arg(long)]
    x: String,
    /// With `--y`, decide whether x divides y.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    y: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct WithXIndex {
    #[command(flatten)]
    #[serde(flatten)]
    monoid: MonoidArgs,
    #[arg(long)]
    x: String,
    #[arg(long, default_value_t = 4)]
    max_index: usize,
}

#[derive(Args, Debug, Serialize)]
struct WithZ {
    #[command(flatten)]
    #[serde(flatten)]
    monoid: MonoidArgs,
    /// Factorization as JSON pairs, e.g. "[[0,2],[3,1]]".
    #[arg(long)]
    z: String,
    #[arg(long, default_value_t = DEFAULT_LEVEL_BOUND)]
    bound: usize,
}

#[derive(Args, Debug, Serialize)]
struct Probe {
    #[command(flatten)]
    #[serde(flatten)]
    monoid: MonoidArgs,
    #[arg(long)]
    z: String,
    #[arg(long, default_value_t = 10)]
    depth: usize,
}

#[derive(Args, Debug, Serialize)]
struct Chain {
    #[command(flatten)]
    #[serde(flatten)]
    monoid: MonoidArgs,
    #[arg(long, default_value_t = 5)]
    k: usize,
}

#[derive(Args, Debug, Serialize)]
struct Series {
    #[command(flatten)]
    #[serde(flatten)]
    monoid: MonoidArgs,
    #[arg(long, default_value_t = 5)]
    terms: usize,
}

#[derive(Args, Debug, Serialize)]
struct Counterexample {
    #[arg(long)]
    a: u64,
    #[arg(long)]
    b: u64,
    #[arg(long)]
    k: usize,
}

#[derive(Args, Debug, Serialize)]
struct SemiringArgs {
    #[arg(long)]
    r: String,
    /// `N=gens(2,3)` or `N=prefix(0,1);tail>=5`.
    #[arg(long)]
    exponents: String,
    /// With `--x`, decide whether r^n divides x multiplicatively.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<String>,
    #[arg(long, default_value_t = 4)]
    bound: usize,
}

#[derive(Args, Debug, Serialize)]
struct MultArgs {
    #[arg(long)]
    r: String,
    #[arg(long, default_value = "N=gens(1)")]
    exponents: String,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Brute-force enumeration of coefficient vectors.
    Enumerate(WithXIndex),
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Atomicity and ACCP/BFP/FFP verdict with evidence.
    Classify(MonoidOnly),
    /// One factorization of x (minimum length when r < 1).
    Factorize(WithX),
    /// Minimum-length normal form of a factorization.
    NormalForm(WithZ),
    /// Maximum-length factorization by the carry sweep.
    MaxLength(WithZ),
    /// All factorizations with bounded support.
    Enumerate(WithXIndex),
    /// Membership of x, or divisibility x | y.
    Member(Member),
    /// Length set with bounded support.
    Lengths(WithXIndex),
    /// Descending divisibility chain of length k.
    Chain(Chain),
    /// Greedy descending chain from a factorization.
    Probe(Probe),
    /// The limsup necessary condition in closed form.
    Necessary(MonoidOnly),
    /// Partial sums of the series sum (n^delta_k - 1) r^s_k.
    Series(Series),
    /// The log_a b gap sequence and its checks.
    Counterexample(Counterexample),
    /// Whether S_(r,N) is a semiring.
    Semiring(SemiringArgs),
    /// Classification of the multiplicative monoid.
    MultClassify(MultArgs),
    /// Brute-force reference computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

fn big_json(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn ratio(s: &str) -> Result<Ratio> {
    s.parse()
}

fn input_of<T: Serialize>(args: &T) -> Value {
    serde_json::to_value(args).unwrap_or(Value::Null)
}

fn execute(command: &Command) -> (&'static str, Value, Result<Value>) {
    match command {
        Command::Classify(a) => ("classify", input_of(a), a.monoid.load().map(|m| json!(classify(&m)))),
        Command::Factorize(a) => ("factorize", input_of(a), factorize(a)),
        Command::NormalForm(a) => ("normal-form", input_of(a), normal_form(a)),
        Command::MaxLength(a) => ("max-length", input_of(a), max_length(a)),
        Command::Enumerate(a) => ("enumerate", input_of(a), enumerate(a)),
        Command::Member(a) => ("member", input_of(a), member(a)),
        Command::Lengths(a) => ("lengths", input_of(a), lengths(a)),
        Command::Chain(a) => ("chain", input_of(a), chain(a)),
        Command::Probe(a) => ("probe", input_of(a), probe(a)),
        Command::Necessary(a) => (
            "necessary",
            input_of(a),
            a.monoid.load().and_then(|m| accp::check_necessary(&m)).map(|c| json!(c)),
        ),
        Command::Series(a) => ("series", input_of(a), series(a)),
        Command::Counterexample(a) => ("counterexample", input_of(a), counterexample(a)),
        Command::Semiring(a) => ("semiring", input_of(a), semiring_cmd(a)),
        Command::MultClassify(a) => ("mult-classify", input_of(a), mult_classify(a)),
        Command::Oracle(OracleCommand::Enumerate(a)) => ("oracle enumerate", input_of(a), oracle(a)),
    }
}

fn factorize(a: &WithX) -> Result<Value> {
    let m = a.monoid.load()?;
    let x = ratio(&a.x)?;
    let bound = a.bound.unwrap_or_else(|| default_support_bound(&x, &m));
    let res = is_member(&x, &m, bound);
    let mut out = res.to_json();
    if let crate::MembershipResult::Member(z) = &res {
        out["length"] = big_json(&z.length());
    }
    out["bound"] = json!(bound);
    Ok(out)
}

fn normal_form(a: &WithZ) -> Result<Value> {
    let m = a.monoid.load()?;
    let z = Factorization::parse_json(&a.z)?;
    let nf = m.min_normal_form(&z)?;
    Ok(json!({
        "value": m.evaluate(&z)?,
        "normal_form": nf,
        "length": big_json(&nf.length()),
        "input_length": big_json(&z.length()),
    }))
}

fn max_length(a: &WithZ) -> Result<Value> {
    let m = a.monoid.load()?;
    let z = Factorization::parse_json(&a.z)?;
    Ok(match m.max_length_sweep(&z, a.bound)? {
        MaxLengthOutcome::Found(w) => json!({
            "outcome": "found",
            "factorization": w,
            "length": big_json(&w.length()),
            "value": m.evaluate(&w)?,
        }),
        MaxLengthOutcome::NoTerminationWithinBound(b) => json!({
            "outcome": "no-termination-within-bound",
            "bound": b,
        }),
    })
}

fn enumerate(a: &WithXIndex) -> Result<Value> {
    let m = a.monoid.load()?;
    let all = m.enumerate_all(&ratio(&a.x)?, a.max_index)?;
    Ok(json!({"count": all.len(), "factorizations": all}))
}

fn member(a: &Member) -> Result<Value> {
    let m = a.monoid.load()?;
    let x = ratio(&a.x)?;
    let (res, bound) = match &a.y {
        Some(y) => {
            let y = ratio(y)?;
            let bound = a.bound.unwrap_or_else(|| match y.checked_sub(&x) {
                Some(diff) => default_support_bound(&diff, &m),
                None => 0,
            });
            (divides(&x, &y, &m, bound), bound)
        }
        None => {
            let bound = a.bound.unwrap_or_else(|| default_support_bound(&x, &m));
            (is_member(&x, &m, bound), bound)
        }
    };
    let mut out = res.to_json();
    out["bound"] = json!(bound);
    Ok(out)
}

fn lengths(a: &WithXIndex) -> Result<Value> {
    let m = a.monoid.load()?;
    let ls = m.length_set(&ratio(&a.x)?, a.max_index)?;
    Ok(json!({
        "lengths": ls.lengths.iter().map(big_json).collect::<Vec<_>>(),
        "min_exact": ls.min_exact,
        "max_exact": ls.max_exact,
    }))
}

fn chain(a: &Chain) -> Result<Value> {
    let m = a.monoid.load()?;
    let c = accp::witness_chain(&m, a.k)?;
    let mut out = json!(c);
    out["verified"] = json!(c.verify(&m)?);
    Ok(out)
}

fn probe(a: &Probe) -> Result<Value> {
    let m = a.monoid.load()?;
    let z = Factorization::parse_json(&a.z)?;
    Ok(json!(accp::empirical_probe(&m, &z, a.depth)?))
}

fn series(a: &Series) -> Result<Value> {
    let m = a.monoid.load()?;
    Ok(json!({"partial_sums": accp::series_partial_sums(&m, a.terms)?}))
}

fn counterexample(a: &Counterexample) -> Result<Value> {
    let rep = accp::construct_counterexample(a.a, a.b, a.k)?;
    let monoid = rep.monoid(rep.delta.len().max(12))?;
    let mut out = json!(rep);
    out["monoid"] = json!(monoid.to_string());
    out["classification"] = json!(classify(&monoid));
    Ok(out)
}

fn semiring_cmd(a: &SemiringArgs) -> Result<Value> {
    let r = ratio(&a.r)?;
    let set: ExponentSetSpec = a.exponents.parse()?;
    let mut out = json!(semiring::is_semiring(&r, &set));
    if let Some(x) = &a.x {
        let x = ratio(x)?;
        let n = a.n.unwrap_or(0);
        out["divisor_bound"] = match semiring::mult_divisor_bound(&r, &x) {
            Ok(b) => json!(b),
            Err(_) => Value::Null,
        };
        out["mult_divides"] = semiring::mult_divides(&r, n, &x, &set, a.bound)?.to_json();
    }
    Ok(out)
}

fn mult_classify(a: &MultArgs) -> Result<Value> {
    let r = ratio(&a.r)?;
    let set: ExponentSetSpec = a.exponents.parse()?;
    Ok(json!(semiring::classify_mult(&r, &set)))
}

fn oracle(a: &WithXIndex) -> Result<Value> {
    let m = a.monoid.load()?;
    let vecs = oracle_enumerate(&ratio(&a.x)?, &m, a.max_index)?;
    let rows: Vec<Vec<Value>> = vecs.iter().map(|v| v.iter().map(big_json).collect()).collect();
    Ok(json!({"count": rows.len(), "vectors": rows}))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::ZeroDenominator => EXIT_PARSE,
        Error::Range(_) | Error::Precondition(_) => EXIT_PRECONDITION,
    }
}

/// Runs one command line (including the program name) and returns the exit
/// code and the text to print.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (EXIT_OK, e.to_string());
            }
            let doc = json!({"command": Value::Null, "input": Value::Null, "status": "error", "message": e.to_string()});
            return (EXIT_PARSE, doc.to_string());
        }
    };
    let (command, input, result) = execute(&cli.command);
    match result {
        Ok(result) => (
            EXIT_OK,
            json!({"command": command, "input": input, "status": "ok", "result": result}).to_string(),
        ),
        Err(e) => (
            exit_code(&e),
            json!({"command": command, "input": input, "status": "error", "message": e.to_string()}).to_string(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, Value) {
        let (code, out) = run(std::iter::once("expmonoid").chain(args.iter().copied()));
        (code, serde_json::from_str(&out).unwrap())
    }

    #[test]
    fn classify_bounded() {
        let (code, v) = call(&["classify", "--monoid", "r=2/3; delta=const(1)"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["accp"], "no");
        assert_eq!(v["result"]["evidence"]["rule"], "bounded-delta");
    }

    #[test]
    fn member_obstruction() {
        let (code, v) = call(&["member", "--monoid", "r=2/3; delta=const(1)", "--x", "1/5"]);
        assert_eq!(code, 0);
        assert_eq!(v["status"], "ok");
        assert_eq!(v["result"]["membership"], "not-member");
    }

    #[test]
    fn error_codes() {
        let (code, v) = call(&["classify", "--monoid", "r=2/0; delta=const(1)"]);
        assert_eq!(code, EXIT_PARSE);
        assert_eq!(v["status"], "error");
        let (code, _) = call(&["chain", "--monoid", "r=2/3; delta=geom(1,2)", "--k", "3"]);
        assert_eq!(code, EXIT_PRECONDITION);
        let (code, _) = call(&["counterexample", "--a", "2", "--b", "3", "--k", "1"]);
        assert_eq!(code, EXIT_PRECONDITION);
        let (code, _) = call(&["frobnicate"]);
        assert_eq!(code, EXIT_PARSE);
    }
}
