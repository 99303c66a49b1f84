//! Numerical monodromy: loops in coefficient space, the permutation group
//! they generate, the solution lattice, and consistency checks.

pub mod analysis;
pub mod loops;
pub mod perm;
pub mod run;

pub use analysis::{poisson_divisibility_check, verify_wreath_structure, PoissonReport, WreathReport};
pub use loops::{coefficient_circle, facet_resultant_loop, random_loop, trinomial_loop, LoopKind, MonodromyLoop, Signature};
pub use perm::{Perm, PermutationGroup};
pub use run::{
    execute_loop, match_permutation, run_monodromy, ClosedWinding, LoopKinds, LoopOutcome, LoopRecord, MonodromyConfig,
    MonodromyRun,
};
