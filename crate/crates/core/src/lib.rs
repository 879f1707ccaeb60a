//! Configurations of hat-homologous saddle connections on flat surfaces.
//!
//! The crate models strata of quadratic differentials, validates
//! configurations of hat-homologous saddle connections, enumerates every
//! configuration on the Riemann sphere and on hyperelliptic connected
//! components (by lifting through the double cover), and computes the genus
//! of a surface from its configuration via ribbon graphs.

pub mod classify;
pub mod configuration;
pub mod cp1_enum;
pub mod error;
pub mod hyp_lift;
pub mod ribbon_genus;
pub mod strata;

pub use configuration::{Configuration, ValidationReport};
pub use error::{Error, Result};
pub use strata::{genus_of, StratumSignature};
