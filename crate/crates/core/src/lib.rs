//! Exact arithmetic for sheaf counting on K3 orbifold quotients `[S/G]`.
//!
//! - [`lattice`]: Mukai and ADE root-lattice pairings in the integral model.
//! - [`series`]: `χ(Hilb^n(K3))` from `Π(1 − q^m)^{−24}`.
//! - [`transport`]: vectors and lattices on the crepant resolution.
//! - [`joyce`]: the multiple cover formula.
//! - [`stability`]: twisted slopes, tilt stability, thresholds and walls.
//! - [`hall`]: logarithm/exponential over decompositions of a class.
//! - [`config`]: surface configurations and their JSON form.

pub mod config;
pub mod error;
pub mod hall;
pub mod joyce;
pub mod lattice;
pub mod rational;
pub mod series;
pub mod stability;
pub mod transport;

pub use config::{load_config, SurfaceConfig};
pub use error::{Error, Result};
pub use hall::{CoordBox, EffectiveCone, HallAlgebra, Matcher};
pub use joyce::{joyce_invariant, joyce_invariant_compactified};
pub use lattice::{Gram, MukaiVector, OrbifoldMukaiVector, RootKind, RootSystemData, SingularPointData};
pub use rational::{ExtendedRational, Rational};
pub use series::{hilb_euler_k3, CoefficientSeries};
pub use stability::{CentralChargeValue, NumericalClass, Polarization, StabilityParams, ThresholdSquared, Wall};
pub use transport::{HilbIndex, ResolvedLattice};
