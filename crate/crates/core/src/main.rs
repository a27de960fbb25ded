fn main() {
    std::process::exit(rs_insdel::cli::main_with_args(std::env::args_os()));
}
