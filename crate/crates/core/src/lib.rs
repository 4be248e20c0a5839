//! Numerical laboratory for Lorentz-boosted spin-1/2 wave packets.
//!
//! A massive spin-1/2 particle prepared in a pure spin state with a Gaussian
//! momentum profile is described by a moving observer through a
//! momentum-dependent Wigner rotation. Tracing out momentum then leaves a
//! mixed spin state. This crate evaluates that picture by brute-force
//! tensor quadrature and Monte Carlo:
//!
//! * [`kinematics`]: on-shell four-momenta and x-axis boosts by rapidity.
//! * [`packets`]: momentum grids and discretized spinor wave packets.
//! * [`wigner`]: the Wigner rotation matrix and packet transformation.
//! * [`spinreduce`]: reduced spin density matrices and von Neumann entropy.
//! * [`measurement`]: record-state orthogonality, detector efficiency,
//!   Born probabilities and a click simulator.
//! * [`experiment`]: parameter sweeps behind the `wigner-lab` binary.
//!
//! Natural units are used throughout (c = ħ = 1); the particle mass is the
//! only scale.
//!
//! ```
//! use std::sync::Arc;
//! use wigner_lab::packets::{sigma_x_packet, GridScheme, MomentumGrid};
//! use wigner_lab::spinreduce::{reduce, von_neumann_entropy};
//! use wigner_lab::{wigner::boost_packet, BoostParams};
//!
//! let xi = 0.05;
//! let grid = Arc::new(MomentumGrid::for_width(xi, GridScheme::default())?);
//! let packet = sigma_x_packet(xi, grid)?;
//! let moving = boost_packet(&packet, &BoostParams::new(0.8, 1.0)?)?;
//! let rho = reduce(&moving)?;
//! assert!(rho.delta().norm() < 1.0);
//! assert!(von_neumann_entropy(&rho) > 0.0);
//! # Ok::<(), wigner_lab::Error>(())
//! ```

pub mod error;
pub mod experiment;
pub mod kinematics;
pub mod measurement;
pub mod packets;
pub mod quadrature;
pub mod spin;
pub mod spinreduce;
pub mod wigner;

pub use error::{Error, Result};
pub use kinematics::{BoostParams, FourMomentum};
pub use measurement::{ClickSetup, ClickStats, MeasurementSetup, SpinBasis};
pub use packets::{GridScheme, MomentumGrid, SpinorPacket, SpinorProfile};
pub use spin::{Mat2, Spinor};
pub use spinreduce::SpinDensityMatrix;
pub use wigner::WignerMatrix;

/// Complex scalar used for every amplitude.
pub type C64 = num_complex::Complex64;
