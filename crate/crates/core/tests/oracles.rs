use differint::engine::{fft_forward, fft_inverse};
use differint::oracles::{
    convolution_apply, direct_dft, direct_dft_complex, finite_difference_derivative,
    rl_riesz_integral_quadrature, QuadratureConfig,
};
use differint::spectral::{multiplier_for, riesz_multiplier, FrequencyGrid, Multiplier};
use differint::{differintegrate_1d, DcPolicy, DiffintParams, Error, Scale, Signal1D};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;

fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum();
    let den: f64 = b.iter().map(|y| y * y).sum();
    (num / den).sqrt()
}

fn random(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

#[test]
fn fast_transform_matches_direct_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2, 3, 16, 64, 100, 1024, 4096] {
        let x: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        for inverse in [false, true] {
            let slow = direct_dft_complex(&x, inverse);
            let mut fast = x.clone();
            if inverse {
                fft_inverse(&mut fast);
            } else {
                fft_forward(&mut fast);
            }
            let num: f64 = slow.iter().zip(&fast).map(|(a, b)| (a - b).norm_sqr()).sum();
            let den: f64 = slow.iter().map(|a| a.norm_sqr()).sum();
            assert!((num / den).sqrt() < 1e-9, "n={n} inverse={inverse}");
        }
    }
}

#[test]
fn direct_dft_examples() {
    let impulse = direct_dft(&Signal1D::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap());
    assert!(impulse.iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-15));
    let constant = direct_dft(&Signal1D::new(vec![1.0; 4]).unwrap());
    assert!((constant[0] - Complex64::new(4.0, 0.0)).norm() < 1e-15);
    assert!(constant[1..].iter().all(|v| v.norm() < 1e-15));
}

#[test]
fn convolution_matches_engine_over_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in [16, 64, 256] {
        let grid = FrequencyGrid::new_1d(n).unwrap();
        let mut done = 0;
        while done < 50 {
            let params = DiffintParams::feller(rng.random_range(-2.5..2.5), rng.random_range(0.0..=1.0));
            let Ok(m) = multiplier_for(&grid, &params) else { continue };
            let x = Signal1D::new(random(&mut rng, n)).unwrap();
            let a = differintegrate_1d(&x, &params).unwrap();
            let b = convolution_apply(&x, &m).unwrap();
            assert!(rel_err(a.samples(), b.samples()) < 1e-9, "{params:?}");
            done += 1;
        }
    }
}

#[test]
fn convolution_edge_cases() {
    let x = Signal1D::new(vec![1.0, -2.0, 0.5, 4.0, 3.0]).unwrap();
    let ones = convolution_apply(&x, &Multiplier::ones(vec![5])).unwrap();
    assert!(rel_err(ones.samples(), x.samples()) < 1e-14);
    let zeros = Multiplier::new(vec![5], vec![Complex64::new(0.0, 0.0); 5]).unwrap();
    assert!(convolution_apply(&x, &zeros).unwrap().samples().iter().all(|v| *v == 0.0));
    let wrong = riesz_multiplier(&FrequencyGrid::new_1d(6).unwrap(), 1.0, DcPolicy::Zero);
    assert!(matches!(convolution_apply(&x, &wrong), Err(Error::LengthMismatch { .. })));
}

#[test]
fn quadrature_is_linear_and_rejects_bad_orders() {
    let config = QuadratureConfig {
        q: 0.5,
        support: (-1.0, 1.0),
        n_points: 256,
    };
    let g: Vec<f64> = config.nodes().iter().map(|t| (-50.0 * t * t).exp()).collect();
    let one = rl_riesz_integral_quadrature(&g, &config).unwrap();
    let doubled: Vec<f64> = g.iter().map(|v| 2.0 * v).collect();
    let two = rl_riesz_integral_quadrature(&doubled, &config).unwrap();
    assert!(one.iter().zip(&two).all(|(a, b)| (2.0 * a - b).abs() <= 1e-12 * b.abs().max(1.0)));
    let zero = rl_riesz_integral_quadrature(&vec![0.0; 256], &config).unwrap();
    assert!(zero.iter().all(|v| *v == 0.0));
    for q in [0.0, 1.0, -0.5, 1.5] {
        let bad = QuadratureConfig { q, ..config };
        assert!(matches!(
            rl_riesz_integral_quadrature(&g, &bad),
            Err(Error::UnsupportedOrder(_))
        ));
    }
}

/// Mean-removed relative RMS of the engine against the quadrature on a
/// Gaussian pulse of width span/40.
fn pulse_discrepancy(order: f64, n: usize) -> f64 {
    let config = QuadratureConfig {
        q: order,
        support: (-0.5, 0.5),
        n_points: n,
    };
    let g: Vec<f64> = config
        .nodes()
        .iter()
        .map(|t| (-t * t * 800.0).exp())
        .collect();
    let oracle = rl_riesz_integral_quadrature(&g, &config).unwrap();
    let params = DiffintParams::riesz(-order).with_scale(Scale::Physical { sample_rate: n as f64 });
    let engine = differintegrate_1d(&Signal1D::new(g).unwrap(), &params).unwrap();
    let centre = |v: &[f64]| {
        let m = v.iter().sum::<f64>() / v.len() as f64;
        v.iter().map(|x| x - m).collect::<Vec<_>>()
    };
    rel_err(&centre(engine.samples()), &centre(&oracle))
}

#[test]
fn pulse_discrepancy_does_not_grow_with_n() {
    let a = pulse_discrepancy(0.5, 1024);
    let b = pulse_discrepancy(0.5, 2048);
    assert!(b <= a, "{a} -> {b}");
    assert!(b < 0.05);
}

#[test]
fn central_difference_tracks_the_first_derivative() {
    // Normalized frequency makes the Feller θ = 1, q = 1 operator -d/dt with
    // unit-π sample spacing; the central difference converges to it as O(Δt²).
    let mut errs = Vec::new();
    for n in [64, 128, 256] {
        let x: Vec<f64> = (0..n)
            .map(|k| {
                let t = k as f64 / n as f64;
                (2.0 * std::f64::consts::PI * t).sin() + 0.5 * (6.0 * std::f64::consts::PI * t).cos()
            })
            .collect();
        let s = Signal1D::new(x).unwrap();
        let fd = finite_difference_derivative(&s).unwrap();
        let spectral = differintegrate_1d(&s, &DiffintParams::feller(1.0, 1.0)).unwrap();
        let neg: Vec<f64> = spectral.samples().iter().map(|v| -v).collect();
        errs.push(rel_err(fd.samples(), &neg));
    }
    assert!(errs[0] < 0.05);
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order > 1.9, "{errs:?}");
    }
}
