//! Short-side clearing of a single interval.
//!
//! Aggregate demand is fixed and price-inelastic. When supply falls short,
//! every firm sells its whole output and part of demand stays unmet. When
//! supply exceeds demand, sales are rationed in proportion to output and the
//! unsold part is freely disposed.

use serde::Serialize;

use crate::error::{domain, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClearingResult {
    pub sales: Vec<f64>,
    pub excess: Vec<f64>,
    pub shares: Vec<f64>,
    pub total_excess: f64,
    pub unmet_demand: f64,
}

pub fn clear(productions: &[f64], demand: f64) -> Result<ClearingResult> {
    if productions.is_empty() {
        return Err(domain("clearing requires at least one firm"));
    }
    if !(demand >= 0.0 && demand.is_finite()) {
        return Err(domain(format!("demand={demand} must be finite and >= 0")));
    }
    if let Some(bad) = productions.iter().find(|y| !(**y >= 0.0 && y.is_finite())) {
        return Err(domain(format!("production={bad} must be finite and >= 0")));
    }

    let n = productions.len();
    let supply: f64 = productions.iter().sum();
    let shares = if supply > 0.0 {
        productions.iter().map(|y| y / supply).collect()
    } else {
        vec![1.0 / n as f64; n]
    };

    if supply <= demand {
        return Ok(ClearingResult {
            sales: productions.to_vec(),
            excess: vec![0.0; n],
            shares,
            total_excess: 0.0,
            unmet_demand: demand - supply,
        });
    }

    let fill = demand / supply;
    let sales: Vec<f64> = productions.iter().map(|y| y * fill).collect();
    let excess = productions.iter().zip(&sales).map(|(y, s)| y - s).collect();
    Ok(ClearingResult {
        sales,
        excess,
        shares,
        total_excess: supply - demand,
        unmet_demand: 0.0,
    })
}
