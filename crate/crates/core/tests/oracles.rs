mod common;

use common::*;
use lrcone::cones::{inequality_system, ConeKind};
use lrcone::oracle::{
    dd_rays, dd_rays_with_limit, max_violation, sample_spectrum_sum, to_json_lines, SamplerConfig,
    SpectrumMode, SPECTRUM_TOLERANCE,
};
use lrcone::rays::enumerate_rays;
use lrcone::Error;

#[test]
fn double_description_matches_recursion() {
    for r in 1..=2 {
        for kind in kinds_with_rays() {
            let sys = inequality_system(r, 3, kind).unwrap();
            assert_eq!(dd_rays(&sys).unwrap(), enumerate_rays(r, 3, kind).unwrap().points(), "{kind} r={r}");
        }
    }
    let sys = inequality_system(3, 3, ConeKind::EqLR).unwrap();
    assert_eq!(dd_rays(&sys).unwrap(), enumerate_rays(3, 3, ConeKind::EqLR).unwrap().points());
}

#[test]
fn double_description_beyond_the_default_ceiling() {
    for kind in kinds_with_rays() {
        let sys = inequality_system(4, 3, kind).unwrap();
        assert!(matches!(dd_rays(&sys), Err(Error::ResourceLimit(_))));
        assert_eq!(
            dd_rays_with_limit(&sys, 12).unwrap(),
            enumerate_rays(4, 3, kind).unwrap().points(),
            "{kind}"
        );
    }
    for kind in [ConeKind::LR, ConeKind::EqLR] {
        let sys = inequality_system(2, 4, kind).unwrap();
        assert_eq!(dd_rays_with_limit(&sys, 8).unwrap(), enumerate_rays(2, 4, kind).unwrap().points());
    }
}

#[test]
fn double_description_refuses_cones_with_lines() {
    for kind in [ConeKind::C, ConeKind::EqC] {
        let sys = inequality_system(3, 3, kind).unwrap();
        assert!(matches!(dd_rays(&sys), Err(Error::Lineality(_))));
    }
}

fn rank_three_spectra() -> Vec<Vec<Vec<f64>>> {
    vec![
        vec![vec![2.0, 0.5, -1.0], vec![1.0, 1.0, 0.0]],
        vec![vec![1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]],
        vec![vec![3.5, 3.5, -2.25], vec![0.0, -1.0, -4.0]],
    ]
}

#[test]
fn sampled_spectra_satisfy_the_cone_systems() {
    for mode in [SpectrumMode::Equal, SpectrumMode::Majorized] {
        for (i, spectra) in rank_three_spectra().iter().enumerate() {
            let cfg = SamplerConfig::new(mode, 1000, 2024 + i as u64);
            let samples = sample_spectrum_sum(spectra, &cfg).unwrap();
            assert_eq!(samples.len(), 1000);
            for s in &samples {
                assert!(s.result.windows(2).all(|w| w[0] >= w[1]));
                let v = max_violation(spectra, &s.result, mode).unwrap();
                assert!(v <= SPECTRUM_TOLERANCE, "{mode:?} trial {} violation {v}", s.trial);
                assert_eq!(v, s.max_violation);
            }
        }
    }
}

#[test]
fn sampling_is_deterministic() {
    let spectra = &rank_three_spectra()[0];
    for mode in [SpectrumMode::Equal, SpectrumMode::Majorized] {
        let cfg = SamplerConfig::new(mode, 64, 5);
        let a = to_json_lines(&sample_spectrum_sum(spectra, &cfg).unwrap()).unwrap();
        let b = to_json_lines(&sample_spectrum_sum(spectra, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
        let other = SamplerConfig::new(mode, 64, 6);
        assert_ne!(a, to_json_lines(&sample_spectrum_sum(spectra, &other).unwrap()).unwrap());
    }
}

#[test]
fn majorized_samples_drop_trace() {
    let spectra = &rank_three_spectra()[0];
    let samples = sample_spectrum_sum(spectra, &SamplerConfig::new(SpectrumMode::Majorized, 100, 1)).unwrap();
    let total: f64 = spectra.iter().flatten().sum();
    assert!(samples.iter().all(|s| s.result.iter().sum::<f64>() < total));
}
