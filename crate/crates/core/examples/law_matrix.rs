//! Prints the model × law matrix in fixture format:
//! `cargo run --release --example law_matrix > fixtures/law_matrix.txt`

use valgroups::laws::{builtin_models, run_matrix, ALL_LAWS, MATRIX_SAMPLES, MATRIX_SEED};

fn main() {
    let rows = run_matrix(MATRIX_SAMPLES, MATRIX_SEED);
    println!("# model law expected ({MATRIX_SAMPLES} samples, seed {MATRIX_SEED})");
    for model in builtin_models() {
        println!();
        for law in ALL_LAWS {
            let (entry, _) = rows
                .iter()
                .find(|(e, _)| e.model == model.name() && e.law == law.id())
                .expect("every pair is run");
            println!("{} {} {}", entry.model, entry.law, entry.expected);
        }
    }
}
