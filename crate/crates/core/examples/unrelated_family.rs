// Builds an explicit family of pairwise unrelated poset copies and compares
// its size with the counting formula.
//
// Run with `cargo run --example unrelated_family`.

use fdlat::estimates::{f_lower_general, EstimateParams};
use fdlat::oracle::{build_unrelated_family, pairwise_unrelated};

pub fn run() -> fdlat::Result<()> {
    for (r, a, b, p, n) in [(3, 0, 3, 0, 9), (4, 0, 4, 0, 9), (4, 0, 4, 0, 8), (3, 1, 3, 1, 10)] {
        let params = EstimateParams::new(r, a, b, p, n)?;
        let family = build_unrelated_family(&params)?;
        println!(
            "r={r} a={a} b={b} p={p} n={n}: built {} copies, formula {}, unrelated {}",
            family.len(),
            f_lower_general(&params)?,
            pairwise_unrelated(&family)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fdlat::Result<()> {
    run()
}
