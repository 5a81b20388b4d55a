//! Few-photon scattering on waveguide-coupled emitters and the measurement
//! devices built from it.
//!
//! A single two-level emitter at the end of a one-dimensional waveguide
//! imprints a frequency-dependent phase on single photons and an effective
//! interaction on photon pairs. This crate implements those scattering maps
//! in the frequency domain, checks them against an independent time-domain
//! lattice integrator, and composes them into measurement devices:
//!
//! - a **photon sorter** that routes pairs and single photons to different
//!   ports, and arrays thereof;
//! - a **quantum non-demolition detector** that flips a metastable atomic
//!   qubit when a photon passes, with no dark counts;
//! - an **active Bell-state analyzer** built from two such detectors;
//! - a **passive Bell-state analyzer** chaining photon sorters, with a
//!   linear-optics fallback stage.
//!
//! All quantities are dimensionless; the reference waveguide coupling is the
//! frequency unit. The `wqed` binary exposes the device sweeps as CSV/JSON
//! emitting subcommands; see the book under `book/` for a guided tour.

pub mod devices;
pub mod error;
pub mod harness;
pub mod oracle;
pub mod scattering;
pub mod wavepackets;

mod guide;

pub use error::{Error, Result};
pub use scattering::EmitterParams;
pub use wavepackets::{FrequencyGrid, GaussianPulse, OnePhotonAmplitude, TwoPhotonAmplitude};
