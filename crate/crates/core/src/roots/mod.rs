//! Root systems of classical Cartan types, weights, Weyl groups and cosets.

pub mod cartan;
pub mod system;
pub mod weight;
pub mod weyl;

pub use cartan::{CartanType, Family, SimpleType};
pub use system::{build_root_system, build_root_system_with, enumerate_weyl_group, Limits, Root, RootSystem};
pub use weight::Weight;
pub use weyl::{coset_representatives, WeylElement, WeylGroup, WeylSubgroup};
