fn main() {
    let (code, out) = expmonoid::cli::run(std::env::args_os());
    println!("{out}");
    std::process::exit(code);
}
