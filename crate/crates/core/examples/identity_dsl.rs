//! Parses and checks identities written in the statement language.
//!
//! ```text
//! cargo run --release --example identity_dsl -- builtin:z4 "forall a:Cong, T:Tol . a & T* = (a & T)*"
//! ```

use congrel::dsl::{builtin_statements, check_statement, parse};
use congrel::theorems::Strategy;
use congrel::{corpus, Limits};

fn main() -> congrel::Result<()> {
    let mut args = std::env::args().skip(1);
    let a = corpus::resolve(&args.next().unwrap_or_else(|| "builtin:pureset3".into()))?;
    let limits = Limits::from_env();
    let strategy = if a.size() <= 3 {
        Strategy::Exhaust
    } else {
        Strategy::PrincipalSample(100)
    };

    let texts: Vec<String> = match args.next() {
        Some(text) => vec![text],
        None => {
            let mut t: Vec<String> = builtin_statements()
                .iter()
                .map(|b| b.text.to_string())
                .collect();
            t.push("forall R:Refl, S:Refl . R;S = S;R".into());
            t
        }
    };
    for text in texts {
        let stmt = match parse(&text) {
            Ok(s) => s,
            Err(e) => {
                println!("{text}\n  parse error at {e}");
                continue;
            }
        };
        let report = check_statement(&a, &stmt, strategy, 0, &limits)?;
        println!("{stmt}\n  {report}");
    }
    Ok(())
}
