//! Loading algebras, squares and generated subalgebras.
//!
//! ```text
//! cargo run --example algebras -- builtin:m3
//! cargo run --example algebras -- crates/core/examples/data/rps.json
//! ```

use congrel::{corpus, generate_subuniverse, square, SubSquare};

fn main() -> congrel::Result<()> {
    let spec = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "builtin:z4".into());
    let a = corpus::resolve(&spec)?;
    println!("{a}");
    println!("as JSON: {}", a.to_json());

    let sq = square(&a);
    println!(
        "\n{} has {} elements; (x, y) is encoded as x*{} + y",
        sq.name(),
        sq.size(),
        a.size()
    );

    let seeds = [1 % a.size()];
    let sub = generate_subuniverse(&a, &seeds)?;
    println!("subuniverse generated by {seeds:?}: {:?}", sub.elements());

    let n = a.size();
    let gens = [(0, n - 1), (n - 1, 0)];
    let b = SubSquare::generate(&a, &sq, &gens)?;
    println!(
        "subalgebra of the square generated by {gens:?} has {} pairs:",
        b.len()
    );
    for (i, (x, y)) in b.pairs().into_iter().enumerate() {
        println!("  #{i}: ({x},{y})");
    }
    Ok(())
}
