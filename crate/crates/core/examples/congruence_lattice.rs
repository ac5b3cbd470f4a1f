//! Congruences and tolerances of an algebra.
//!
//! ```text
//! cargo run --example congruence_lattice -- builtin:m3
//! ```

use congrel::relations::{enumerate_congruences, enumerate_tolerances};
use congrel::{corpus, Limits};

fn main() -> congrel::Result<()> {
    let spec = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "builtin:m3".into());
    let a = corpus::resolve(&spec)?;
    let limits = Limits::from_env();

    let cons = enumerate_congruences(&a, &limits)?;
    println!("{} has {} congruences:", a.name(), cons.len());
    for (i, p) in cons.iter().enumerate() {
        // lower covers: strictly finer congruences with nothing strictly between
        let below: Vec<usize> = (0..cons.len())
            .filter(|&j| j != i && cons[j].refines(p))
            .filter(|&j| {
                !(0..cons.len())
                    .any(|k| k != i && k != j && cons[j].refines(&cons[k]) && cons[k].refines(p))
            })
            .collect();
        println!("  c{i} = {p}   covers {below:?}");
    }

    let tols = enumerate_tolerances(&a, &limits)?;
    let proper: Vec<_> = tols.iter().filter(|t| !t.is_transitive()).collect();
    println!(
        "\n{} tolerances, {} of them not transitive",
        tols.len(),
        proper.len()
    );
    if let Some(t) = proper.first() {
        println!("for example\n{t}");
    }
    Ok(())
}
