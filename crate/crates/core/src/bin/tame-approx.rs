fn main() {
    std::process::exit(tame_approx::cli::main());
}
