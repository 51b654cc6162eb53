//! Glimm random-choice transport: each step copies, per cell, either the
//! upwind neighbor or the cell itself according to one shared sample.

use crate::error::{Error, Result};
use crate::grid::CellField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Radical-inverse (bit-reversal) base-2 value of n >= 1.
pub fn van_der_corput(n: u64) -> f64 {
    let mut n = n;
    let mut x = 0.0;
    let mut f = 0.5;
    while n > 0 {
        if n & 1 == 1 {
            x += f;
        }
        n >>= 1;
        f *= 0.5;
    }
    x
}

/// Source of the per-step samples in [0, 1).
#[derive(Debug, Clone)]
pub enum SamplingSequence {
    /// Deterministic low-discrepancy sequence, starting at index 1.
    VanDerCorput { next_index: u64 },
    /// Seeded pseudo-random stream; one seed reproduces one run exactly.
    PseudoRandom { rng: ChaCha8Rng },
}

impl SamplingSequence {
    pub fn van_der_corput() -> Self {
        SamplingSequence::VanDerCorput { next_index: 1 }
    }

    pub fn pseudo_random(seed: u64) -> Self {
        SamplingSequence::PseudoRandom { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn next_sample(&mut self) -> f64 {
        match self {
            SamplingSequence::VanDerCorput { next_index } => {
                let x = van_der_corput(*next_index);
                *next_index += 1;
                x
            }
            SamplingSequence::PseudoRandom { rng } => rng.gen::<f64>(),
        }
    }
}

/// One random-choice step: every cell takes its upwind neighbor when
/// sample < nu, otherwise keeps its own value. No new values are created.
pub fn glimm_step(c: &CellField, nu: f64, sample: f64) -> Result<CellField> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::CflViolation(format!("need 0 <= nu <= 1, got {nu}")));
    }
    if !(0.0..1.0).contains(&sample) {
        return Err(Error::InvalidArgument(format!("sample {sample} outside [0, 1)")));
    }
    let values = if sample < nu {
        (0..c.n()).map(|j| c.value_at(j as isize - 1)).collect()
    } else {
        c.values.clone()
    };
    CellField::new(c.grid.clone(), values)
}

/// Absolute change of the conserved total against the first snapshot,
/// one entry per history element.
pub fn conservation_drift(history: &[CellField]) -> Result<Vec<f64>> {
    let first = match history.first() {
        Some(f) => f,
        None => return Ok(Vec::new()),
    };
    if history.iter().any(|c| c.grid != first.grid) {
        return Err(Error::GridMismatch);
    }
    let base = first.conserved_sum();
    Ok(history.iter().map(|c| (c.conserved_sum() - base).abs()).collect())
}
