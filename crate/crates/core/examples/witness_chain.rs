//! Builds the alternating chain from `(a, a)` to `(c, c)` inside the
//! subalgebra of `A × A` generated by `(a,a), (a,b), (c,b), (c,c)`.
//!
//! ```text
//! cargo run --example witness_chain -- builtin:m3
//! cargo run --example witness_chain -- builtin:pureset3
//! ```

use congrel::relations::{enumerate_congruences, BinRel};
use congrel::theorems::{witness_chain, WitnessOutcome};
use congrel::{corpus, Limits};

fn main() -> congrel::Result<()> {
    let spec = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "builtin:m3".into());
    let alg = corpus::resolve(&spec)?;
    let n = alg.size();
    let alpha = enumerate_congruences(&alg, &Limits::from_env())?
        .pop()
        .expect("the full congruence");
    let (a, b, c) = (0, 1 % n, 2 % n);
    let r = BinRel::principal(n, a, b)?;
    let s = BinRel::principal(n, b, c)?;
    println!("alpha = {alpha}, a R b = ({a},{b}), b S c = ({b},{c})");

    match witness_chain(&alg, &alpha, a, b, c, &r, &s)? {
        WitnessOutcome::Chain(chain) => {
            println!("{chain}");
            match chain.validate(&alg, &alpha, &r, &s) {
                Ok(()) => println!("chain re-validates"),
                Err(defect) => println!("chain defect: {defect:?}"),
            }
        }
        WitnessOutcome::Disconnected {
            subsquare,
            reachable,
        } => {
            println!(
                "(c,c) is not reachable: only {reachable} of {} pairs of B are connected to (a,a)",
                subsquare.len()
            );
        }
    }
    Ok(())
}
