//! Sequential Hicksian weeks.
//!
//! Interval 0 is the initial snapshot: factor prices at their initial values,
//! every firm selling at unit cost and producing an equal share of demand.
//! Each following interval runs, in order:
//!
//! 1. draw new factor prices;
//! 2. reprice every firm at its new unit cost;
//! 3. rescale each firm's output against its previous selling price;
//! 4. clear the market on the new outputs;
//! 5. debit each buffer with the cost value of the disposed output.

use serde::Serialize;

use crate::economics::{
    production_response, unit_cost, FactorPrices, FirmParams, DEFAULT_PRICE_EPS,
};
use crate::error::{config as invalid, Result};
use crate::market::clear;
use crate::rng::SimRng;

/// Expansion sensitivity selected by calibration against a global excess of 1.5.
pub const CALIBRATED_GAMMA_ONE: f64 = 0.7;
/// Contraction sensitivity selected by calibration against a global excess of 1.5.
pub const CALIBRATED_GAMMA_TWO: f64 = 0.6;
pub const DEFAULT_INITIAL_BUFFER: f64 = 1.0;
pub const DEFAULT_HORIZON: usize = 30;
pub const DEFAULT_P_MIN: f64 = 0.05;

/// Capital exponents of the four reference firms.
pub const PAPER_CAPITAL_EXPONENTS: [f64; 4] = [0.2, 0.4, 0.6, 0.8];

/// How factor prices move from one interval to the next.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PriceProcess {
    /// `p1` drawn afresh each interval, uniform on `[p_min, 1 - p_min]`.
    IidUniform { p_min: f64 },
    /// `p1` takes a uniform step in `[-step, step]`, clamped to `[p_min, 1 - p_min]`.
    RandomWalk { step: f64, p_min: f64 },
}

impl PriceProcess {
    fn p_min(&self) -> f64 {
        match *self {
            PriceProcess::IidUniform { p_min } | PriceProcess::RandomWalk { p_min, .. } => p_min,
        }
    }
}

impl Default for PriceProcess {
    fn default() -> Self {
        PriceProcess::IidUniform {
            p_min: DEFAULT_P_MIN,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub firms: Vec<FirmParams>,
    pub horizon: usize,
    pub demand: f64,
    pub seed: u64,
    pub price_process: PriceProcess,
    pub eps_price: f64,
    pub initial_prices: FactorPrices,
}

impl SimConfig {
    /// Four firms with capital exponents 0.2, 0.4, 0.6, 0.8, demand 1, thirty
    /// intervals and the calibrated reaction sensitivities.
    pub fn paper(seed: u64) -> Self {
        let firms = PAPER_CAPITAL_EXPONENTS
            .iter()
            .map(|&c| {
                FirmParams::new(
                    c,
                    CALIBRATED_GAMMA_ONE,
                    CALIBRATED_GAMMA_TWO,
                    DEFAULT_INITIAL_BUFFER,
                )
                .expect("reference firms are valid")
            })
            .collect();
        Self {
            firms,
            horizon: DEFAULT_HORIZON,
            demand: 1.0,
            seed,
            price_process: PriceProcess::default(),
            eps_price: DEFAULT_PRICE_EPS,
            initial_prices: FactorPrices::default(),
        }
    }

    /// Copy with every firm's sensitivities replaced.
    pub fn with_gammas(&self, gamma_one: f64, gamma_two: f64) -> Result<Self> {
        let firms = self
            .firms
            .iter()
            .map(|f| f.with_gammas(gamma_one, gamma_two))
            .collect::<Result<_>>()?;
        Ok(Self {
            firms,
            ..self.clone()
        })
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.firms.is_empty() {
            return Err(invalid("at least one firm is required"));
        }
        if self.horizon < 1 {
            return Err(invalid("horizon must be >= 1"));
        }
        if !(self.demand >= 0.0 && self.demand.is_finite()) {
            return Err(invalid(format!(
                "demand={} must be finite and >= 0",
                self.demand
            )));
        }
        if !(self.eps_price >= 0.0 && self.eps_price.is_finite()) {
            return Err(invalid(format!(
                "eps_price={} must be >= 0",
                self.eps_price
            )));
        }
        let p_min = self.price_process.p_min();
        if !(p_min > 0.0 && p_min < 0.5) {
            return Err(invalid(format!("p_min={p_min} must lie in (0, 0.5)")));
        }
        if let PriceProcess::RandomWalk { step, .. } = self.price_process {
            if !(step >= 0.0 && step.is_finite()) {
                return Err(invalid(format!("random-walk step={step} must be >= 0")));
            }
        }
        Ok(())
    }
}

/// Evolving state of one firm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FirmState {
    pub production: f64,
    pub selling_price: f64,
    pub buffer: f64,
    pub cumulative_excess: f64,
}

#[derive(Debug, Clone)]
pub struct EngineState {
    t: usize,
    prices: FactorPrices,
    firms: Vec<FirmState>,
    rng: SimRng,
}

impl EngineState {
    /// Index of the last completed interval (0 right after initialization).
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn prices(&self) -> FactorPrices {
        self.prices
    }

    pub fn firms(&self) -> &[FirmState] {
        &self.firms
    }
}

/// Per-firm line of an [`IntervalRecord`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FirmInterval {
    pub cost: f64,
    pub production: f64,
    pub sales: f64,
    pub excess: f64,
    pub buffer: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalRecord {
    pub t: usize,
    pub prices: FactorPrices,
    pub firms: Vec<FirmInterval>,
    pub total_supply: f64,
    pub total_excess: f64,
    pub unmet_demand: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunResult {
    pub records: Vec<IntervalRecord>,
    /// Sum over intervals of aggregate excess supply.
    pub global_excess: f64,
    pub cumulative_excess: Vec<f64>,
    pub final_buffers: Vec<f64>,
}

/// Draws the next interval's factor prices.
pub fn next_prices(
    rng: &mut SimRng,
    process: &PriceProcess,
    current: FactorPrices,
) -> Result<FactorPrices> {
    let p1 = match *process {
        PriceProcess::IidUniform { p_min } => rng.uniform_in(p_min, 1.0 - p_min),
        PriceProcess::RandomWalk { step, p_min } => {
            let delta = rng.uniform_in(-step, step);
            (current.p1() + delta).clamp(p_min, 1.0 - p_min)
        }
    };
    FactorPrices::new(p1)
}

pub fn init_state(config: &SimConfig) -> Result<EngineState> {
    config.validate()?;
    let share = config.demand / config.firms.len() as f64;
    let firms = config
        .firms
        .iter()
        .map(|f| FirmState {
            production: share,
            selling_price: unit_cost(&config.initial_prices, f),
            buffer: f.initial_buffer(),
            cumulative_excess: 0.0,
        })
        .collect();
    Ok(EngineState {
        t: 0,
        prices: config.initial_prices,
        firms,
        rng: SimRng::new(config.seed),
    })
}

/// Advances one interval and returns its record.
pub fn step(state: &mut EngineState, config: &SimConfig) -> Result<IntervalRecord> {
    if state.t >= config.horizon {
        return Err(invalid(format!(
            "cannot step past horizon {}",
            config.horizon
        )));
    }
    let prices = next_prices(&mut state.rng, &config.price_process, state.prices)?;

    let mut costs = Vec::with_capacity(config.firms.len());
    let mut productions = Vec::with_capacity(config.firms.len());
    for (params, firm) in config.firms.iter().zip(&state.firms) {
        let cost = unit_cost(&prices, params);
        let y = production_response(
            firm.production,
            firm.selling_price,
            cost,
            params,
            config.eps_price,
        )?;
        costs.push(cost);
        productions.push(y);
    }

    let cleared = clear(&productions, config.demand)?;

    let mut lines = Vec::with_capacity(config.firms.len());
    for (i, firm) in state.firms.iter_mut().enumerate() {
        let excess = cleared.excess[i];
        firm.production = productions[i];
        firm.selling_price = costs[i];
        firm.buffer -= costs[i] * excess;
        firm.cumulative_excess += excess;
        lines.push(FirmInterval {
            cost: costs[i],
            production: productions[i],
            sales: cleared.sales[i],
            excess,
            buffer: firm.buffer,
        });
    }

    state.t += 1;
    state.prices = prices;
    Ok(IntervalRecord {
        t: state.t,
        prices,
        firms: lines,
        total_supply: productions.iter().sum(),
        total_excess: cleared.total_excess,
        unmet_demand: cleared.unmet_demand,
    })
}

/// Runs a full cycle of `config.horizon` intervals.
pub fn run(config: &SimConfig) -> Result<RunResult> {
    let mut state = init_state(config)?;
    let records = (0..config.horizon)
        .map(|_| step(&mut state, config))
        .collect::<Result<Vec<_>>>()?;
    let global_excess = records.iter().map(|r| r.total_excess).sum();
    Ok(RunResult {
        records,
        global_excess,
        cumulative_excess: state.firms.iter().map(|f| f.cumulative_excess).collect(),
        final_buffers: state.firms.iter().map(|f| f.buffer).collect(),
    })
}
