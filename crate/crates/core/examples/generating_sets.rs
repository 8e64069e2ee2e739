// Smallest generating sets of small lattices by exhaustive search.
//
// Run with `cargo run --example generating_sets`.

use fdlat::oracle::lattice::CLOSURE_CAP;
use fdlat::oracle::{build_fd, min_generating_size, FiniteLattice, LatticeTable};

pub fn run() -> fdlat::Result<()> {
    let fd2 = LatticeTable::from_lattice(&build_fd(2)?)?;
    for k in 1..=3u32 {
        let lat = fd2.power(k)?;
        let res = min_generating_size(&lat, CLOSURE_CAP);
        println!("FD(2)^{k}: {} elements, needs {} generators, witness {:?}", lat.size(), res.size, res.witness);
    }
    let fd3 = build_fd(3)?;
    let res = min_generating_size(&fd3, CLOSURE_CAP);
    println!("FD(3): needs {} generators after {} closures", res.size, res.closure_calls);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fdlat::Result<()> {
    run()
}
