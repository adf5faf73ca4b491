//! Energy-efficiency maximization for a dual-functional radar-communication
//! transmitter using rate-splitting multiple access, low-resolution DACs and
//! RF-chain selection.
//!
//! The crate is organized around the pipeline stages:
//!
//! - [`model`]: system configuration, channels, DAC quantization model and
//!   RF-chain selection types.
//! - [`comms`]: SINRs, rates, MMSE/WMSE transforms, power consumption and
//!   energy efficiency.
//! - [`radar`]: steering vectors, transmit covariance models, reference
//!   covariances, detection probability and DOA CRB.
//! - [`conic`]: dense interior-point solver over linear/second-order/PSD
//!   cones, SDR lifting and rank-one recovery.
//! - [`optim`]: the ADMM precoder updates, SCA/SDR RF-chain selection and the
//!   alternating-optimization drivers (perfect and sampled CSIT).
//! - [`oracle`]: brute-force baselines used to certify the optimizers on tiny
//!   instances.
//! - [`harness`]: experiment configuration, seeded Monte-Carlo sweeps and CSV
//!   emission.

pub mod comms;
pub mod conic;
pub mod error;
pub mod harness;
pub mod model;
pub mod optim;
pub mod oracle;
pub mod radar;

pub use comms::{RateReport, WmseState};
pub use error::{Error, Result};
pub use harness::{Experiment, ExperimentResults};
pub use model::{ChannelSet, PrecoderBlock, QuantConfig, RfSelection, SystemConfig};
pub use optim::{AdmmState, ScaState, SolveReport};
pub use oracle::OracleResult;
pub use radar::RadarReference;
