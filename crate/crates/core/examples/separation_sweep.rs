// Checks that consecutive estimate pairs do not overlap.
//
// Run with `cargo run --example separation_sweep`.

use fdlat::gmin::{is_separated, EstimatePair, LowerEstimate, UpperEstimate};

pub fn run(r_max: u64, n_hi: u64) -> fdlat::Result<()> {
    for r in 3..=r_max {
        let rep = is_separated(&EstimatePair::default_for(r)?, r, n_hi)?;
        println!("{} r={r}: violations={:?} equalities={}", rep.pair, rep.violations, rep.equalities.len());
    }
    let crown = EstimatePair::new(LowerEstimate::Flat { r: 3 }, UpperEstimate::CrownDoubleStar)?;
    let rep = is_separated(&crown, 4, n_hi.min(300))?;
    println!("{}: violations={:?} equalities={:?}", rep.pair, rep.violations, rep.equalities);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fdlat::Result<()> {
    run(20, 120)
}
