//! Discrete-time simulator of oligopolistic price competition.
//!
//! Firms with Cobb-Douglas technologies price at unit cost under randomly
//! drifting factor prices and rescale output after every cost move. The
//! market clears on the short side each interval and unsold output is
//! disposed. The [`experiments`] module measures how much excess supply this
//! produces across seeds and reaction sensitivities.

pub mod economics;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod market;
pub mod rng;

pub use economics::{FactorPrices, FirmParams, PriceMove};
pub use engine::{
    init_state, run, step, EngineState, FirmInterval, FirmState, IntervalRecord, PriceProcess,
    RunResult, SimConfig,
};
pub use error::{Error, Result};
pub use experiments::{
    calibrate, sweep, Calibration, CellStats, EnsembleStats, SweepResult, SweepSpec,
};
pub use market::{clear, ClearingResult};
pub use rng::{SimRng, PRNG_ID};
