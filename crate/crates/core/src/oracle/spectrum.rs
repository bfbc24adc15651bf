use nalgebra::{Complex, DMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cones::{inequality_system, ConeKind, Relation};
use crate::error::{Error, Result};

/// Absolute tolerance for checking sampled spectra against the cone forms.
pub const SPECTRUM_TOLERANCE: f64 = 1e-9;

type C64 = Complex<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMode {
    /// `C = A_1 + ... + A_{s-1}`, checked against `C_r^s`.
    Equal,
    /// `C ≤ A_1 + ... + A_{s-1}`, checked against `EqC_r^s`.
    Majorized,
}

impl SpectrumMode {
    fn cone(self) -> ConeKind {
        match self {
            SpectrumMode::Equal => ConeKind::C,
            SpectrumMode::Majorized => ConeKind::EqC,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub mode: SpectrumMode,
    pub trials: usize,
    pub seed: u64,
    /// Multiplier on the positive semidefinite term `G G† / r` subtracted
    /// in majorized mode.
    pub perturbation_scale: f64,
    /// When false the diagonal matrices are summed as they are.
    pub conjugate: bool,
}

impl SamplerConfig {
    pub fn new(mode: SpectrumMode, trials: usize, seed: u64) -> Self {
        Self {
            mode,
            trials,
            seed,
            perturbation_scale: 1.0,
            conjugate: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSample {
    pub trial: usize,
    pub mode: SpectrumMode,
    pub spectra: Vec<Vec<f64>>,
    pub result: Vec<f64>,
    /// Largest amount by which any form of the target cone fails.
    pub max_violation: f64,
}

fn check_spectra(spectra: &[Vec<f64>]) -> Result<usize> {
    if spectra.len() < 2 {
        return Err(Error::Shape(format!(
            "need at least two input spectra, got {}",
            spectra.len()
        )));
    }
    let r = spectra[0].len();
    if r == 0 {
        return Err(Error::Shape("spectra must be nonempty".into()));
    }
    for (j, spec) in spectra.iter().enumerate() {
        if spec.len() != r {
            return Err(Error::Shape(format!(
                "spectrum {} has length {}, expected {r}",
                j + 1,
                spec.len()
            )));
        }
        if spec.iter().any(|x| !x.is_finite()) || spec.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "spectrum {} is not a weakly decreasing finite vector",
                j + 1
            )));
        }
    }
    Ok(r)
}

fn gaussian(r: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    DMatrix::from_fn(r, r, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    })
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal moved into `Q`.
fn haar_unitary(r: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let qr = gaussian(r, rng).qr();
    let mut q = qr.q();
    let rr = qr.r();
    for k in 0..r {
        let d = rr[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..r {
            q[(i, k)] *= phase;
        }
    }
    q
}

fn one_trial(spectra: &[Vec<f64>], r: usize, config: &SamplerConfig, trial: usize) -> Result<SpectrumSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial as u64);
    let mut sum = DMatrix::<C64>::zeros(r, r);
    for spec in spectra {
        let diag = DMatrix::from_fn(r, r, |i, k| {
            if i == k {
                C64::new(spec[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        if config.conjugate {
            let u = haar_unitary(r, &mut rng);
            sum += &u * diag * u.adjoint();
        } else {
            sum += diag;
        }
    }
    if config.mode == SpectrumMode::Majorized {
        let g = gaussian(r, &mut rng);
        let psd = &g * g.adjoint();
        sum -= psd * C64::new(config.perturbation_scale / r as f64, 0.0);
    }
    // symmetrize away rounding before the Hermitian solver
    let herm = (&sum + sum.adjoint()) * C64::new(0.5, 0.0);
    let mut result: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
    result.sort_by(|a, b| b.total_cmp(a));
    let max_violation = max_violation(spectra, &result, config.mode)?;
    Ok(SpectrumSample {
        trial,
        mode: config.mode,
        spectra: spectra.to_vec(),
        result,
        max_violation,
    })
}

/// Eigenvalues of sums of randomly conjugated diagonal matrices with the
/// given spectra, one sample per trial. Trial `t` draws from stream `t` of a
/// ChaCha8 generator seeded with `config.seed`, so output depends only on
/// the inputs.
pub fn sample_spectrum_sum(spectra: &[Vec<f64>], config: &SamplerConfig) -> Result<Vec<SpectrumSample>> {
    let r = check_spectra(spectra)?;
    if config.trials == 0 {
        return Err(Error::Range("trials must be at least 1".into()));
    }
    if !(config.perturbation_scale >= 0.0 && config.perturbation_scale.is_finite()) {
        return Err(Error::Range("perturbation scale must be a finite nonnegative number".into()));
    }
    (0..config.trials)
        .into_par_iter()
        .map(|t| one_trial(spectra, r, config, t))
        .collect()
}

/// Largest violation of the forms of `C` (equal) or `EqC` (majorized) at
/// the real point `(spectra; result)`. Zero when every form holds exactly.
pub fn max_violation(spectra: &[Vec<f64>], result: &[f64], mode: SpectrumMode) -> Result<f64> {
    let r = check_spectra(spectra)?;
    if result.len() != r {
        return Err(Error::Shape(format!(
            "result has length {}, expected {r}",
            result.len()
        )));
    }
    let s = spectra.len() + 1;
    let point: Vec<f64> = spectra.iter().flatten().chain(result).copied().collect();
    let sys = inequality_system(r, s, mode.cone())?;
    let worst = sys
        .forms
        .iter()
        .map(|f| {
            let v: f64 = f
                .coefficients
                .iter()
                .zip(&point)
                .map(|(&c, &x)| c as f64 * x)
                .sum();
            match f.relation {
                Relation::Geq => (-v).max(0.0),
                Relation::Eq => v.abs(),
            }
        })
        .fold(0.0, f64::max);
    Ok(worst)
}

/// One JSON object per line, in trial order.
pub fn to_json_lines(samples: &[SpectrumSample]) -> Result<String> {
    let mut out = String::new();
    for s in samples {
        out.push_str(&serde_json::to_string(s)?);
        out.push('\n');
    }
    Ok(out)
}
