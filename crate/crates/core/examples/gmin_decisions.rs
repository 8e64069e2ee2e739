// Decides the smallest generating set size of `FD(r)^k` for a few powers.
//
// Run with `cargo run --example gmin_decisions`.

use fdlat::gmin::{corollary_upper, gmin_power, EstimatePair};
use fdlat::report::{gmin_query, gmin_text, parse_natural};

pub fn run() -> fdlat::Result<()> {
    for (r, k) in [(3, "2"), (3, "1000"), (4, "20000"), (5, "25000"), (3, "10^88")] {
        let res = gmin_query(r, k)?;
        println!("{}", gmin_text(&res));
    }

    let k = parse_natural("1489e1795")?;
    let res = gmin_power(20, &k, &EstimatePair::default_for(20)?)?;
    println!("r=20 k=1489e1795 -> {}", res.outcome);
    println!("closed upper bound for r=3 k=1000: {}", corollary_upper(3, &parse_natural("1000")?)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fdlat::Result<()> {
    run()
}
