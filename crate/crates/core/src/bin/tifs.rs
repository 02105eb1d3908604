fn main() {
    std::process::exit(tifs::cli::dispatch(std::env::args_os()));
}
