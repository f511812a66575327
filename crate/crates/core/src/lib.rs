//! Exact verification of the discrete-series packet character identity
//! between a real form with compact Cartan and its compact inner form.
//!
//! All character values are computed at finite-order torus points and live in
//! cyclotomic fields, so every comparison is exact.

pub mod characters;
pub mod error;
pub mod exact;
pub mod fixed_point;
pub mod packets;
pub mod real_forms;
pub mod roots;
pub mod torus;
pub mod weil;

pub use characters::{ds_character, freudenthal_character, weyl_character, HarishChandraParameter};
pub use error::{Error, Result};
pub use exact::{Cyclotomic, Rational};
pub use fixed_point::{tau_index_compact, tau_index_noncompact, verify_pf1_decomposition, FixedPointDatum, Pf1Check};
pub use packets::{build_packet, sweep, verify_identity, LPacket, LambdaRange, PacketReport, Route, SweepOutcome};
pub use real_forms::{validate_real_form, Catalog, InnerFormPair, RealFormSpec};
pub use roots::{build_root_system, CartanType, RootSystem, Weight, WeylGroup};
pub use torus::{sample_regular_points, TorusPoint};
pub use weil::{check_homomorphism, phi_n, weil_multiply, ProjectivePair, WeilElement};
