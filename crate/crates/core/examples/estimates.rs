// Lower and upper estimates for the number of generators of `FD(r)^k`.
//
// Run with `cargo run --example estimates`.

use fdlat::estimates::{f_lower_full_range, f_lower_max, flat_lower, g3_doublestar, g_upper};
use fdlat::report::format_scientific;

pub fn run() -> fdlat::Result<()> {
    for n in 4..=10u64 {
        println!(
            "r=3 n={n:>2}  flat={:>4}  fmax={:>4}  g3**={:>5}  g3={:>5}",
            flat_lower(3, n)?,
            f_lower_max(3, 0, 3, n)?,
            g3_doublestar(n)?,
            g_upper(3, n)?
        );
    }

    let values = f_lower_full_range(-4, 4, 4, 15)?;
    for (p, v) in (-4i64..=4).zip(&values) {
        println!("r=4 n=15 p={p:>2}  f={v}");
    }

    let big = flat_lower(20, 6000)?;
    println!("flat20(6000) ~ {} ({} digits)", format_scientific(&big, 13), big.to_string().len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> fdlat::Result<()> {
    run()
}
