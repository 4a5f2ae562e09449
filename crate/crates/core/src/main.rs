fn main() { std::process::exit(disthom::cli::run()) }
