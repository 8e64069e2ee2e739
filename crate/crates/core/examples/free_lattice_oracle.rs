// Builds small free distributive lattices and checks their join-irreducibles.
//
// Run with `cargo run --example free_lattice_oracle`.

use fdlat::oracle::{build_fd, build_fsp, check_lemma, join_irreducibles, FiniteLattice};

pub fn run() -> fdlat::Result<()> {
    for r in 2..=4u32 {
        let fd = build_fd(r)?;
        let (ji, _) = join_irreducibles(&fd);
        let expected = build_fsp(r as u64, 0, r as u64)?;
        println!(
            "FD({r}): {} elements, {} join-irreducibles, matches FSP({r},0,{r}): {}",
            fd.size(),
            ji.size(),
            ji.is_isomorphic(&expected)
        );
    }
    println!("lemma holds for r=5: {}", check_lemma(5)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fdlat::Result<()> {
    run()
}
