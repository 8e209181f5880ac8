//! Additive-noise channel perturbation for evaluation runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::signal::SpeechSignal;

/// Add white Gaussian noise scaled so the result has the requested
/// signal-to-noise ratio, deterministically from `rng_seed`. Samples clamp
/// at the PCM16 bounds. A silent signal passes through unchanged (its SNR
/// is undefined).
pub fn add_noise_snr_db(signal: &SpeechSignal, snr_db: f64, rng_seed: u64) -> SpeechSignal {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    add_noise_with_rng(signal, snr_db, &mut rng)
}

/// Like [`add_noise_snr_db`] but drawing from a caller-managed RNG, so a
/// harness can run one deterministic stream across many files.
pub fn add_noise_with_rng<R: Rng>(signal: &SpeechSignal, snr_db: f64, rng: &mut R) -> SpeechSignal {
    let n = signal.len();
    if n == 0 {
        return signal.clone();
    }
    let power = signal
        .samples()
        .iter()
        .map(|&s| f64::from(s) * f64::from(s))
        .sum::<f64>()
        / n as f64;
    if power == 0.0 {
        return signal.clone();
    }

    let sigma = (power / 10f64.powf(snr_db / 10.0)).sqrt();
    let normal = Normal::new(0.0, sigma).expect("sigma is finite and positive");
    let samples = signal
        .samples()
        .iter()
        .map(|&s| {
            let noisy = f64::from(s) + normal.sample(rng);
            noisy.round().clamp(-32768.0, 32767.0) as i16
        })
        .collect();
    SpeechSignal::new(samples, signal.sample_rate_hz())
}
