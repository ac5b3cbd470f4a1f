//! Random search for a binding that breaks one of the four conclusions.
//! Pure sets are the natural place to look.
//!
//! ```text
//! cargo run --release --example counterexample_search -- builtin:pureset4 5000 1
//! ```

use congrel::theorems::{replay, search_counterexample};
use congrel::{corpus, Limits};

fn main() -> congrel::Result<()> {
    let mut args = std::env::args().skip(1);
    let a = corpus::resolve(&args.next().unwrap_or_else(|| "builtin:pureset4".into()))?;
    let budget = args.next().map_or(5000, |s| s.parse().expect("budget"));
    let seed = args.next().map_or(1, |s| s.parse().expect("seed"));
    let limits = Limits::from_env();

    match search_counterexample(&a, budget, seed, &limits)? {
        Some(v) => {
            println!("{}: counterexample after at most {budget} draws", a.name());
            println!("{v}");
            println!("replays: {}", replay(&a, &v, &limits)?);
        }
        None => println!(
            "{}: nothing found in {budget} draws (seed {seed})",
            a.name()
        ),
    }
    Ok(())
}
