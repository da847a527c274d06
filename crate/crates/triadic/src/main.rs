fn main() {
    std::process::exit(triadic::report::cli_main());
}
