//! Homogeneous solutions `Ψ = r^λ ψ(θ)` of the steady two-dimensional Euler
//! equations.
//!
//! The angular profile obeys a planar Hamiltonian system whose conserved
//! quantity is the pressure constant `P`. This crate integrates that system,
//! computes the period function on the elliptic region, counts and builds
//! the 2π-periodic solutions, maps profiles across the `λ ↔ 1/λ` duality and
//! evaluates the resulting velocity fields.

pub mod classify;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod numerics;
pub mod period;
pub mod profile;

pub use classify::{
    conjugate_dual, count_elliptic, find_periodic, ma_count, reconstruct_profile, scan_classification, Classification, Mode,
    ProfileOptions, ScanOptions, ScanReport, Sign,
};
pub use dynamics::{elliptic_center, integrate_orbit, pressure_hamiltonian, vector_field, Params, PhaseState};
pub use error::{Error, Result};
pub use field::{euler_residual, velocity_field, GridSpec, Orientation};
pub use period::{elliptic_orbit, period, period_limits, period_table, turning_points, EllipticOrbit, Level, Method};
pub use profile::{SolutionProfile, TypeTag};
