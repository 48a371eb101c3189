use anyhow::{ensure, Result};

/// Per-interface power draw at full load (`max`) and at idle (`idle`), in watts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParams {
    pub max: f64,
    pub idle: f64,
}

impl Default for EnergyParams {
    fn default() -> Self {
        EnergyParams { max: 2.0, idle: 1.7 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Energy {
    pub watts: f64,
    /// Increase over the all-idle network, in percent.
    pub relative: f64,
}

/// Sum over edges of `(max - idle) * u + idle`.
pub fn energy(utilizations: &[f64], params: &EnergyParams) -> Result<Energy> {
    ensure!(
        params.max >= params.idle && params.idle >= 0.0,
        "energy parameters need max >= idle >= 0"
    );
    let mut watts = 0.0;
    for (i, &u) in utilizations.iter().enumerate() {
        ensure!((0.0..=1.0).contains(&u), "utilization {u} of edge {i} is outside [0, 1]");
        watts += (params.max - params.idle) * u + params.idle;
    }
    let base = utilizations.len() as f64 * params.idle;
    let relative = if base > 0.0 { (watts - base) / base * 100.0 } else { 0.0 };
    Ok(Energy { watts, relative })
}
