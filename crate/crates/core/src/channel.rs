//! Rayleigh MIMO channel with first-order Gauss-Markov time evolution.
//!
//! A frame's channel is a trace `H[0..T_total)` covering the pilot slots and
//! the data slots. `H[0]` is i.i.d. unit-variance complex Gaussian and
//! `H[n] = zeta H[n-1] + sqrt(1 - zeta^2) G[n]`, which keeps the per-entry
//! stationary variance at 1 for any correlation coefficient `zeta`.

use crate::linalg::ComplexMatrix;
use crate::rng::RngStream;
use crate::{Error, Result};

/// Channel matrices for one frame, pilot slots first.
#[derive(Debug, Clone)]
pub struct ChannelTrace {
    matrices: Vec<ComplexMatrix>,
    zeta: f64,
}

impl ChannelTrace {
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn at(&self, slot: usize) -> &ComplexMatrix {
        &self.matrices[slot]
    }
}

/// Per-entry complex noise variance, tied to the `SNR = Nt / sigma^2`
/// convention.
#[derive(Debug, Clone, Copy)]
pub struct NoiseConfig {
    pub sigma2: f64,
}

impl NoiseConfig {
    pub fn from_snr_db(snr_db: f64, nt: usize) -> Self {
        NoiseConfig {
            sigma2: snr_to_sigma2(snr_db, nt),
        }
    }
}

/// `sigma^2 = Nt / 10^(snr_db / 10)`.
pub fn snr_to_sigma2(snr_db: f64, nt: usize) -> f64 {
    nt as f64 / 10f64.powf(snr_db / 10.0)
}

/// Generates a Gauss-Markov channel trace of `t_total` slots.
pub fn generate_trace(
    rng: &mut RngStream,
    nt: usize,
    nr: usize,
    t_total: usize,
    zeta: f64,
) -> Result<ChannelTrace> {
    if !(0.0..=1.0).contains(&zeta) {
        return Err(Error::invalid(format!(
            "temporal correlation must lie in [0, 1], got {zeta}"
        )));
    }
    let innovation = (1.0 - zeta * zeta).sqrt();
    let mut matrices: Vec<ComplexMatrix> = Vec::with_capacity(t_total);
    for slot in 0..t_total {
        let fresh = ComplexMatrix::from_fn(nr, nt, |_, _| rng.complex_gaussian(1.0));
        let h = if slot == 0 {
            fresh
        } else {
            matrices[slot - 1].scale(zeta).add(&fresh.scale(innovation))
        };
        matrices.push(h);
    }
    Ok(ChannelTrace { matrices, zeta })
}
