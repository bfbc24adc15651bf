//! Independent back-ends used to cross-check the main algorithms: a small
//! exact double-description ray enumerator and a random Hermitian-spectrum
//! sampler.

mod dd;
mod spectrum;

pub use dd::{dd_rays, dd_rays_with_limit, DD_DEFAULT_MAX_DIM};
pub use spectrum::{
    max_violation, sample_spectrum_sum, to_json_lines, SamplerConfig, SpectrumMode,
    SpectrumSample, SPECTRUM_TOLERANCE,
};
