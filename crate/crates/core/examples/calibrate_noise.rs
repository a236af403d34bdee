//! Sweeps the transit noise level and reports how often the q = 0.5 and
//! q = 1 detectors land within 2% of n of the analytic inflection points.
//!
//! cargo run --release --example calibrate_noise

use differint::transit::{crone_inflection_detect, eclipse_lightcurve};
use differint::{NoiseSpec, TransitParams};

fn passes(p: &TransitParams, noise: &NoiseSpec, q: f64) -> bool {
    let curve = eclipse_lightcurve(p, noise).unwrap();
    let (a, b) = p.inflection_indices();
    let tol = 0.02 * p.n_samples as f64;
    match crone_inflection_detect(&curve, q, 1.0).unwrap().indices() {
        Some([i, j]) => (i as f64 - a).abs() <= tol && (j as f64 - b).abs() <= tol,
        None => false,
    }
}

fn main() {
    let p = TransitParams::default();
    let seeds = 200u64;
    println!("sigma  q=0.5  q=1.0  first seed with q=0.5 pass and q=1 fail");
    for sigma in [0.01, 0.02, 0.03, 0.05, 0.08, 0.1, 0.15, 0.2, 0.3] {
        let (mut half, mut one) = (0, 0);
        let mut first = None;
        for seed in 0..seeds {
            let noise = NoiseSpec { sigma, seed };
            let h = passes(&p, &noise, 0.5);
            let o = passes(&p, &noise, 1.0);
            half += h as u32;
            one += o as u32;
            if h && !o && first.is_none() {
                first = Some(seed);
            }
        }
        println!(
            "{sigma:<6} {:>5.1}% {:>5.1}%  {:?}",
            100.0 * half as f64 / seeds as f64,
            100.0 * one as f64 / seeds as f64,
            first
        );
    }
}
