//! Exact combinatorics and linear algebra for enhanced nilpotent orbits,
//! nilpotent pairs and enhanced quiver varieties.

pub mod error;
pub mod partition;

pub use error::{Error, Result, SqError};
pub use partition::{enumerate_partitions, nilpotent_orbit_dim, Composition, Partition};
pub mod bipartition;
pub use bipartition::{enumerate_bipartitions, Bipartition, MoveRecord};
pub mod signed;
pub use signed::{
    enumerate_signed_partitions, enumerate_sq, transfer_image, validate_sq, Orientation, Sign, SignedPartition,
    SignedQuasibipartition, Signature, TransferDirection,
};
pub mod linalg;
pub use linalg::{rank_exact, IntMatrix};
pub mod matrix_models;
pub use matrix_models::{
    orbit_dim_enhanced, orbit_dim_enhanced_pair, orbit_dim_nilpotent, orbit_dim_pair, point_from_bipartition, point_from_signed_partition, point_from_sq,
    EnhancedPairPoint, EnhancedPoint, PairPoint,
};
pub mod par;
pub mod quiver;
pub use quiver::{
    count_strata, enumerate_strata, enumerate_strata_upto, generic_point_jacobian, naive_dims, phi_image, quiver_data, stratum_dim_bound, stratum_dim_exact, verify_conjecture, verify_conjecture_exhaustive, ConjectureReport,
    QuiverData, StratumRecord,
};
pub mod selftest;
