//! Floating-point layer: sparse systems, start solutions and path tracking.

pub mod linalg;
pub mod solve2d;
pub mod system;
pub mod tracking;
pub mod univariate;

pub use solve2d::{solve_system_2d, sort_roots};
pub use system::{newton, random_coefficients, random_complex, Root, SparseSystem};
pub use tracking::{track_path, CoefficientPath, Linear, Loop, Piece, TrackedPath, TrackerSettings};
pub use univariate::{polynomial_roots, solve_univariate};
