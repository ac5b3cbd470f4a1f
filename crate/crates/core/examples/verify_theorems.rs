//! Checks the four relational conclusions, once on a chosen binding and
//! then over the whole quantifier grid.
//!
//! ```text
//! cargo run --release --example verify_theorems -- builtin:bool4 principal+sample:200
//! ```

use congrel::relations::{enumerate_congruences, random_reflexive};
use congrel::theorems::{sweep, verify_rr, verify_subrel, verify_subrelpiu, Strategy};
use congrel::{corpus, Limits};

fn main() -> congrel::Result<()> {
    let mut args = std::env::args().skip(1);
    let a = corpus::resolve(&args.next().unwrap_or_else(|| "builtin:bool4".into()))?;
    let strategy: Strategy = args
        .next()
        .unwrap_or_else(|| "principal+sample:200".into())
        .parse()?;
    let limits = Limits::from_env();
    let n = a.size();

    let cons = enumerate_congruences(&a, &limits)?;
    let alpha = cons.last().expect("the full congruence");
    let r = random_reflexive(n, 0.3, 1)?;
    let s = random_reflexive(n, 0.3, 2)?;
    println!("single binding, alpha = {alpha}");
    println!("{}", verify_subrel(&a, alpha, &r, &s)?);
    println!("{}", verify_subrelpiu(&a, alpha, &r, &s)?);
    println!("{}", verify_rr(&a, alpha, &r)?);

    println!("\nsweep with strategy {strategy}, seed 7");
    for report in sweep(&a, strategy, 7, &limits)? {
        println!("{report}");
    }
    Ok(())
}
