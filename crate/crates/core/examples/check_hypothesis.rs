//! Checks `β(γ∘δ∘γ) ⊆ βγ + δ` and modularity on every 4-generated
//! subalgebra of `A × A`.
//!
//! ```text
//! cargo run --release --example check_hypothesis -- builtin:n5
//! cargo run --release --example check_hypothesis -- builtin:pureset4
//! ```

use std::time::Instant;

use congrel::corpus;
use congrel::theorems::{check_hypothesis, check_modularity_subsquares, four_generated_subsquares};
use congrel::Limits;

fn main() -> congrel::Result<()> {
    let spec = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "builtin:z2xz2".into());
    let a = corpus::resolve(&spec)?;
    let limits = Limits::from_env();

    let t = Instant::now();
    let subsquares = four_generated_subsquares(&a, None)?;
    let largest = subsquares.iter().map(|b| b.len()).max().unwrap_or(0);
    println!(
        "{}: {} distinct 4-generated subsquares (largest has {largest} elements) in {:.2?}",
        a.name(),
        subsquares.len(),
        t.elapsed()
    );

    for report in [
        check_hypothesis(&a, None, &limits)?,
        check_modularity_subsquares(&a, None, &limits)?,
    ] {
        println!("{report}");
    }
    Ok(())
}
