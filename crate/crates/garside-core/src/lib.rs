//! Garside groupoids of Springer type over real reflection groups.
//!
//! The crate builds, from exact root-system data, the divisor interval of a
//! Coxeter element as a lattice, the combinatorial presentation of the
//! associated Springer category for a regular number `d`, and a full
//! computational toolkit on the resulting Garside groupoid: left-weighted
//! normal forms, fraction arithmetic, conjugacy via the swap function,
//! standard parabolic subgroupoids, parabolic closure, and the adjacency
//! test for the curve graph. The flagship instance is the groupoid on 88
//! objects presenting the braid group of the reflection group labelled 31
//! in the Shephard–Todd list, built from E8 with d = 4.

pub mod dataset;
pub mod engine;
pub mod error;
pub mod factorization;
pub mod instances;
pub mod interval;
pub mod parabolic;
pub mod perm;
pub mod root_system;
pub mod springer;
pub mod verify;

pub use error::{Error, Result};
pub use interval::{build_interval, ElemIdx, IntervalLattice};
pub use perm::{GroupElement, Perm};
pub use root_system::{build_root_system, CartanType, RootSystem};
pub use springer::{build_springer_data, GroupoidData, ObjId, RegularParams, Simple, SimpleId};
