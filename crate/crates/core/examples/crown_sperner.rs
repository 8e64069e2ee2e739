// Exact values of the Sperner-type count for the singleton and the crown.
//
// Run with `cargo run --example crown_sperner`.

use fdlat::estimates::{flat_lower, g3_doublestar};
use fdlat::oracle::{sp_exact, sp_exact_crown, FinitePoset};

pub fn run(n_max: u64) -> fdlat::Result<()> {
    for n in 0..=5 {
        println!("Sp(singleton, {n}) = {}", sp_exact(&FinitePoset::singleton(), n)?.value);
    }
    for n in 3..=n_max {
        let res = sp_exact_crown(n)?;
        println!(
            "Sp(crown, {n}) = {} over {} copies, bounds [{}, {}]",
            res.value,
            res.copies,
            flat_lower(3, n)?,
            g3_doublestar(n)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fdlat::Result<()> {
    run(6)
}
