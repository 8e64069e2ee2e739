// Locates the minimum of the crown counting function on the discrete
// simplex and compares it with the closed form.
//
// Run with `cargo run --example min_location -- 40` to check `3..=40`.

use std::time::Instant;

use fdlat::minsearch::{min_fha_exhaustive, mn_closed_form, verify_min_location};

pub fn run(n_max: u64) -> fdlat::Result<()> {
    for n in 3..=n_max {
        let start = Instant::now();
        let (located, res) = verify_min_location(n)?;
        // fha at (t, x, x, x) is 3/2 of the fhb minimum at (t, x, x)
        let closed = mn_closed_form(n) * 2u32 == &res.value * 3u32;
        println!("{} located={located} closed_form={closed}", res.telemetry_line(start.elapsed().as_millis()));
    }

    let full = min_fha_exhaustive(12)?;
    println!("four-variable search at n=12: min={} argmin={:?}", full.value, full.argmin);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fdlat::Result<()> {
    let n_max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    run(n_max)
}
