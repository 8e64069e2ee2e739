//! Exhaustive ground truth on small instances.

pub mod family;
pub mod lattice;
pub mod permutations;
pub mod poset;
pub mod sperner;

pub use family::{build_unrelated_family, pairwise_unrelated, BlockPartition, FundamentalPair, PosetCopy};
pub use lattice::{
    build_fd, check_lemma, closure, join_irreducibles, min_generating_size, FiniteLattice, FreeDistributive,
    GeneratingSize, LatticeTable,
};
pub use permutations::{crown_with_shape, gset_size_bruteforce};
pub use poset::{build_fsp, crown, FinitePoset};
pub use sperner::{sp_exact, sp_exact_crown, CrownCopy, SpResult};
