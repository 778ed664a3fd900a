//! The `pa-stat` command line; see [`pastat::cli`].

fn main() {
    std::process::exit(pastat::cli::main());
}
