//! Discrete Euler calculus on finite posets.
//!
//! * [`poset`]: finite partial orders, up/down sets, filters, induced subposets.
//! * [`mobius`]: the Möbius function and the Euler characteristic, by zeta
//!   inversion and by alternating chain counts.
//! * [`iso`]: order isomorphism for small posets.
//! * [`reduction`]: beat points, weak beat points, chi-points, cores and
//!   chi-minimal models.
//! * [`calculus`] and [`map`]: integer functions, their Euler integral,
//!   pushforward and pullback along poset maps.
//! * [`sensor`]: target counting on acyclic sensor networks.
//!
//! ```
//! use euler_scan::fixtures::n11;
//! use euler_scan::sensor::{enumerate_targets, SensorNetwork, TargetSet};
//!
//! let net = SensorNetwork::new(n11::poset(), TargetSet::new(n11::targets())).unwrap();
//! assert_eq!(net.counting().values(), &n11::COUNTING);
//! assert_eq!(enumerate_targets(&net).unwrap(), 6);
//! ```

pub mod calculus;
pub mod error;
pub mod fixtures;
pub mod iso;
pub mod map;
pub mod mobius;
pub mod poset;
pub mod reduction;
pub mod sensor;

pub use calculus::{
    excursion_characteristics, indicator, integrate, integrate_excursion, mobius_coefficients,
    FilterLinearForm, PosetFunction,
};
pub use error::{Error, Result};
pub use iso::are_isomorphic;
pub use map::{
    down_beat_closure, is_ascending_closure_operator, is_chi_distinguished, pullback, pushforward,
    PosetMap,
};
pub use mobius::{euler_characteristic, euler_characteristic_by_chains, mobius, MobiusTable};
pub use poset::{ElementId, ElementSet, Poset};
pub use reduction::{
    chi_minimal_model, classify_points, core, is_contractible, PointClass, ReductionReport,
    RemovalReason, TieBreak,
};
pub use sensor::{
    corrupt, counting_function, enumerate_reduced, enumerate_targets, random_network,
    sensor_placement_plan, NetworkShape, NoiseSpec, SensorNetwork, TargetPosition, TargetSet,
};
