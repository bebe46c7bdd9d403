fn main() { std::process::exit(taffine::cli::main()) }
