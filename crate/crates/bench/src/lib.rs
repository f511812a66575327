//! Benchmark fixtures shared by the criterion targets.

use shelstad_core::real_forms::{Catalog, InnerFormPair};
use shelstad_core::roots::{build_root_system, CartanType, RootSystem};
use shelstad_core::torus::{sample_regular_points, TorusPoint};

pub fn system(name: &str) -> RootSystem {
    build_root_system(&name.parse::<CartanType>().expect("valid type")).expect("buildable type")
}

pub fn pair(name: &str) -> InnerFormPair {
    Catalog::builtin().lookup(name).expect("catalog pair").clone()
}

/// A fixed regular point for `pair`.
pub fn point(pair: &InnerFormPair) -> TorusPoint {
    sample_regular_points(pair.root_system(), 1, 13, 0)
        .expect("regular point")
        .remove(0)
}
