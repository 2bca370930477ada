//! Hybrid quantum-classical MNIST classifier on a statevector simulator.
//!
//! - [`gates`] and [`qsim`]: unitary matrices and a dense statevector engine.
//! - [`pqc`]: the star-shaped parametrized circuit (16 data qubits controlling
//!   one readout) with a 17-qubit statevector backend and a closed-form
//!   analytic backend, plus exact gradients for both.
//! - [`nn`]: dense layers, softmax, cross-entropy, Adam and metrics.
//! - [`model`]: the 218-parameter quantum model and the 310-parameter dense baseline.
//! - [`dataset`]: IDX parsing, 8×8 resize, quadrant split and seeded splits.
//! - [`experiment`]: the seeded multi-run training protocol and its reports.

pub mod dataset;
pub mod error;
pub mod experiment;
pub mod gates;
pub mod model;
pub mod nn;
pub mod pqc;
pub mod qsim;
pub mod rng;

pub use error::{Error, Result};
