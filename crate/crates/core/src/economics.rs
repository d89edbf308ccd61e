//! Cobb-Douglas technology, cost-based pricing and the production-response rule.
//!
//! Every firm produces with constant returns to scale, `y = x1^c * x2^d` with
//! `c + d = 1`, and sells at unit cost. When its cost moves between two
//! intervals the firm rescales output through an arctangent response whose
//! sensitivity differs for expansion (`gamma_one`) and contraction
//! (`gamma_two`).

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{config, domain, Result};

/// Tolerance on `c + d = 1`.
pub const EXPONENT_SUM_TOL: f64 = 1e-12;

/// Default absolute tolerance under which two selling prices count as equal.
pub const DEFAULT_PRICE_EPS: f64 = 1e-12;

/// Technology and behavior of one firm. Immutable for the whole cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FirmParams {
    c: f64,
    d: f64,
    gamma_one: f64,
    gamma_two: f64,
    initial_buffer: f64,
}

impl FirmParams {
    /// Builds a firm from its capital exponent; the labor exponent is `1 - c`.
    pub fn new(c: f64, gamma_one: f64, gamma_two: f64, initial_buffer: f64) -> Result<Self> {
        Self::with_exponents(c, 1.0 - c, gamma_one, gamma_two, initial_buffer)
    }

    /// Builds a firm from both exponents, which must sum to one.
    pub fn with_exponents(
        c: f64,
        d: f64,
        gamma_one: f64,
        gamma_two: f64,
        initial_buffer: f64,
    ) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(config(format!("capital exponent c={c} must lie in (0, 1)")));
        }
        if !(d > 0.0 && d < 1.0) {
            return Err(config(format!("labor exponent d={d} must lie in (0, 1)")));
        }
        if (c + d - 1.0).abs() > EXPONENT_SUM_TOL {
            return Err(config(format!(
                "exponents must sum to 1, got c+d={}",
                c + d
            )));
        }
        if !(gamma_one >= 0.0 && gamma_one.is_finite()) {
            return Err(config(format!(
                "gamma_one={gamma_one} must be finite and >= 0"
            )));
        }
        if !(gamma_two >= 0.0 && gamma_two.is_finite()) {
            return Err(config(format!(
                "gamma_two={gamma_two} must be finite and >= 0"
            )));
        }
        if !(initial_buffer >= 0.0 && initial_buffer.is_finite()) {
            return Err(config(format!(
                "initial_buffer={initial_buffer} must be finite and >= 0"
            )));
        }
        Ok(Self {
            c,
            d,
            gamma_one,
            gamma_two,
            initial_buffer,
        })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn gamma_one(&self) -> f64 {
        self.gamma_one
    }

    pub fn gamma_two(&self) -> f64 {
        self.gamma_two
    }

    pub fn initial_buffer(&self) -> f64 {
        self.initial_buffer
    }

    /// Same technology and buffer, different reaction sensitivities.
    pub fn with_gammas(&self, gamma_one: f64, gamma_two: f64) -> Result<Self> {
        Self::with_exponents(self.c, self.d, gamma_one, gamma_two, self.initial_buffer)
    }
}

/// Normalized factor prices: `p1` for capital, `p2 = 1 - p1` for labor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorPrices {
    p1: f64,
    p2: f64,
}

impl FactorPrices {
    pub fn new(p1: f64) -> Result<Self> {
        if !(p1 > 0.0 && p1 < 1.0) {
            return Err(domain(format!("capital price p1={p1} must lie in (0, 1)")));
        }
        Ok(Self { p1, p2: 1.0 - p1 })
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }
}

impl Default for FactorPrices {
    fn default() -> Self {
        Self { p1: 0.5, p2: 0.5 }
    }
}

/// Direction of a firm's selling price between two consecutive intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PriceMove {
    Lowered,
    Raised,
    Unchanged,
}

/// Cobb-Douglas output `x1^c * x2^d`.
pub fn output(x1: f64, x2: f64, params: &FirmParams) -> Result<f64> {
    if !(x1 >= 0.0 && x2 >= 0.0) {
        return Err(domain(format!(
            "factor quantities must be >= 0, got ({x1}, {x2})"
        )));
    }
    Ok(x1.powf(params.c) * x2.powf(params.d))
}

/// Cost-minimizing factor bundle producing `y` at the given prices.
pub fn factor_demands(y: f64, prices: &FactorPrices, params: &FirmParams) -> Result<(f64, f64)> {
    if y.is_nan() || y < 0.0 {
        return Err(domain(format!("target output y={y} must be >= 0")));
    }
    let (c, d) = (params.c, params.d);
    // Optimal capital/labor ratio.
    let ratio = c * prices.p2 / (d * prices.p1);
    Ok((y * ratio.powf(d), y * ratio.recip().powf(c)))
}

/// Unit cost for arbitrary positive factor prices, without the `p1 + p2 = 1`
/// normalization.
pub fn unit_cost_raw(p1: f64, p2: f64, params: &FirmParams) -> f64 {
    1.0 / ((params.c / p1).powf(params.c) * (params.d / p2).powf(params.d))
}

/// Minimum expenditure per unit of output; the firm's selling price.
pub fn unit_cost(prices: &FactorPrices, params: &FirmParams) -> f64 {
    unit_cost_raw(prices.p1, prices.p2, params)
}

pub fn classify_price_move(p_new: f64, p_old: f64, eps: f64) -> PriceMove {
    if p_new < p_old - eps {
        PriceMove::Lowered
    } else if p_new > p_old + eps {
        PriceMove::Raised
    } else {
        PriceMove::Unchanged
    }
}

/// Next production level given the previous one and the selling-price move.
///
/// A cost cut expands output by `gamma_one * atan(gap) / (pi/2)`, a cost rise
/// contracts it by `gamma_two * atan(gap) / (pi/2)`, where
/// `gap = p_old - p_new`. Output is clamped at zero when `gamma_two > 1`
/// would otherwise drive it negative.
pub fn production_response(
    y_old: f64,
    p_old: f64,
    p_new: f64,
    params: &FirmParams,
    eps: f64,
) -> Result<f64> {
    if y_old.is_nan() || y_old < 0.0 {
        return Err(domain(format!(
            "previous output y_old={y_old} must be >= 0"
        )));
    }
    let gamma = match classify_price_move(p_new, p_old, eps) {
        PriceMove::Unchanged => return Ok(y_old),
        PriceMove::Lowered => params.gamma_one,
        PriceMove::Raised => params.gamma_two,
    };
    let multiplier = 1.0 + gamma * (p_old - p_new).atan() / FRAC_PI_2;
    Ok((y_old * multiplier).max(0.0))
}
