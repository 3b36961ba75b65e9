fn main() {
    std::process::exit(firefly_games::cli::run(std::env::args_os()));
}
