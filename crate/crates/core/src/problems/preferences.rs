//! Random preference vectors on the probability simplex.

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PreferenceVector;
use crate::seed::{stream_rng, Stream};

/// Symmetric Dirichlet concentration. `Uniform` is the infinite-concentration
/// limit and always yields `(1/m, ..., 1/m)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Concentration {
    Uniform,
    Dirichlet(f64),
}

impl Default for Concentration {
    fn default() -> Self {
        Concentration::Dirichlet(1.0)
    }
}

impl Concentration {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Concentration::Uniform => Ok(()),
            Concentration::Dirichlet(a) if a > 0.0 && a.is_finite() => Ok(()),
            Concentration::Dirichlet(a) => Err(Error::InvalidParameter(format!(
                "dirichlet concentration must be positive and finite, got {a}"
            ))),
        }
    }
}

/// Draws one vector from `conc` using `rng`.
pub fn sample_preference<R: Rng + ?Sized>(m: usize, conc: Concentration, rng: &mut R) -> Result<PreferenceVector> {
    if m == 0 {
        return Err(Error::Empty("preference dimension"));
    }
    conc.validate()?;
    let alpha = match conc {
        Concentration::Uniform => return Ok(PreferenceVector::uniform(m)),
        Concentration::Dirichlet(a) => a,
    };
    let gamma = Gamma::new(alpha, 1.0).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    loop {
        let draws: Vec<f64> = (0..m).map(|_| gamma.sample(rng)).collect();
        // Tiny concentrations can underflow every draw to zero; redraw.
        if draws.iter().sum::<f64>() > 0.0 {
            return PreferenceVector::normalized(draws);
        }
    }
}

/// `count` preference vectors from the preference stream of `seed`.
pub fn sample_preferences(m: usize, count: usize, conc: Concentration, seed: u64) -> Result<Vec<PreferenceVector>> {
    let mut rng = stream_rng(seed, Stream::Preference(0));
    (0..count).map(|_| sample_preference(m, conc, &mut rng)).collect()
}
