//! Point counts of moduli of genus four curves over finite fields.
//!
//! The crate is organised bottom-up: exact arithmetic, finite fields, inverse
//! zeta coefficients, quadric surface models, the sieve engine, hyperelliptic
//! counts, the assembly pipeline and the symplectic local-system translation.

pub mod assembly;
pub mod exactalg;
pub mod finitefield;
pub mod hyperelliptic;
pub mod local_systems;
pub mod quadrics;
pub mod sieve;
pub mod zeta;

pub use assembly::{AssemblyError, AutOrders, BoundaryData, EulerData};
pub use exactalg::{DualityCompletion, ExactAlgError, Partition, Rational, SchurVector, TruncatedQPoly, Var};
pub use finitefield::{FieldElement, FieldError};
pub use hyperelliptic::HyperellipticError;
pub use local_systems::{LocalSystemError, PowerSumFrame, SymplecticDecomposition};
pub use quadrics::{QuadricError, QuadricKind, SurfacePoint};
pub use sieve::{FamilySpec, SieveError, SieveTermKey};
pub use zeta::{NamedSpace, SpaceDescriptor, ZetaCoeffs, ZetaError};
