//! Relation operators on a finite algebra: closures, alternating join and
//! generated congruences.
//!
//! ```text
//! cargo run --example relations -- builtin:n5 principal:1,3
//! ```

use congrel::relations::{
    cg, classify, compatible_closure, parse_relation_spec, rel_plus, CgStrategy,
};
use congrel::{corpus, BinRel};

fn main() -> congrel::Result<()> {
    let mut args = std::env::args().skip(1);
    let a = corpus::resolve(&args.next().unwrap_or_else(|| "builtin:n5".into()))?;
    let spec = args.next().unwrap_or_else(|| "principal:1,3".into());
    let n = a.size();
    let r = parse_relation_spec(&spec, n)?;
    let s = r.converse();

    println!("R =\n{r}");
    println!("R is {:?}\n", classify(&r, &a)?);

    let cl = compatible_closure(&r, &a)?;
    println!("cl(R) =\n{cl}");
    println!("R* =\n{}", r.transitive_closure());
    println!("R + R^- =\n{}", rel_plus(&r, &s)?);

    let by_formula = cg(&r, &a, CgStrategy::Formula)?;
    let by_unionfind = cg(&r, &a, CgStrategy::UnionFind)?;
    println!(
        "Cg(R) = {by_formula} (union-find agrees: {})",
        by_formula == by_unionfind
    );

    let cl_cl_conv = cl.compose(&cl.converse())?;
    println!(
        "cl(R);cl(R)^- is a tolerance: {}",
        classify(&cl_cl_conv, &a)?.is_tolerance
    );

    let full = BinRel::full(n);
    println!("R & 1 = R: {}", r.intersect(&full)? == r);
    Ok(())
}
