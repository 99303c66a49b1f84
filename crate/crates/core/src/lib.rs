//! Galois groups of sparse polynomial systems.
//!
//! The combinatorial layer ([`lattice`], [`polytope`], [`tuples`],
//! [`criterion`]) decides exactly whether the monodromy group of a generic
//! system with given supports is the expected wreath product. The numerical
//! layer ([`numerics`], [`monodromy`]) computes the group by tracking roots
//! around loops in coefficient space.

pub mod criterion;
pub mod error;
pub mod lattice;
pub mod monodromy;
pub mod numerics;
pub mod polytope;
pub mod tuples;

pub use error::{Error, Result};
pub use lattice::{
    generates_with, saturation, smith_normal_form, sublattice_index, surjects_onto, AbelianPresentation,
    Index, IntMatrix, SmithDecomposition, Sublattice,
};
pub use polytope::{
    convex_hull, lattice_mixed_volume, minkowski_sum, refined_cone_representatives, support_face, Facet,
    LatticePoint, Polytope, SupportSet,
};
pub use tuples::{
    essential_vectors, is_ample, is_analogous, is_irreducible, is_reduced, normalize, reduction,
    resultant_multiplicity, EssentialData, EssentialRecord, EssentialTuple, Multiplicity, ReductionData,
    SupportTuple,
};
pub use criterion::{
    criterion, expected_group, homogeneous_generation, inductive_connectivity, univariate_group, GroupDescriptor,
    HomogeneousGenerator, SufficientCondition, Verdict, Witness,
};
pub use numerics::{solve_system_2d, solve_univariate, track_path, Root, SparseSystem, TrackedPath, TrackerSettings};
pub use monodromy::{
    poisson_divisibility_check, run_monodromy, verify_wreath_structure, MonodromyConfig, MonodromyRun, Perm,
    PermutationGroup,
};
