//! Synthetic speech-like test signals.
//!
//! Voiced segments are sums of two or three harmonics with raised-cosine
//! attack/release ramps, separated by silence gaps. The result has the
//! gross features the pipeline cares about: realistic low RMS, plenty of
//! silence intervals for the baseline method, and smooth onsets whose
//! threshold crossings move under small perturbations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::signal::{SpeechSignal, FULL_SCALE};

/// Generate `total_samples` of speech-like audio, deterministically from
/// `seed`.
pub fn speech_like(sample_rate_hz: u32, total_samples: usize, seed: u64) -> SpeechSignal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rate = f64::from(sample_rate_hz);
    let ramp_len = (0.025 * rate) as usize; // 25 ms attack and release

    let mut samples = Vec::with_capacity(total_samples);

    // Leading gap so the first voiced onset is never at sample zero.
    let lead = rng.random_range((0.08 * rate) as usize..(0.15 * rate) as usize);
    samples.resize(lead.min(total_samples), 0);

    while samples.len() < total_samples {
        // Voiced segment: 0.2 - 0.6 s of 2-3 harmonics.
        let voiced_len = rng.random_range((0.2 * rate) as usize..(0.6 * rate) as usize);
        let f0 = rng.random_range(100.0..250.0);
        let harmonics = rng.random_range(2..=3usize);
        let amplitude = rng.random_range(0.05..0.12);
        let phases: Vec<f64> = (0..harmonics)
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect();
        // Normalize so the harmonic stack peaks at `amplitude`.
        let weight_sum: f64 = (1..=harmonics).map(|h| 1.0 / h as f64).sum();

        for i in 0..voiced_len {
            if samples.len() >= total_samples {
                break;
            }
            let t = i as f64 / rate;
            let mut value = 0.0;
            for (h, phase) in phases.iter().enumerate() {
                let freq = f0 * (h + 1) as f64;
                value += (std::f64::consts::TAU * freq * t + phase).sin() / (h + 1) as f64;
            }
            value *= amplitude / weight_sum;

            let envelope = if i < ramp_len {
                raised_cosine(i as f64 / ramp_len as f64)
            } else if i + ramp_len > voiced_len {
                raised_cosine((voiced_len - i) as f64 / ramp_len as f64)
            } else {
                1.0
            };
            samples.push((value * envelope * f64::from(FULL_SCALE)).round() as i16);
        }

        // Silence gap: 0.05 - 0.3 s.
        let gap = rng.random_range((0.05 * rate) as usize..(0.3 * rate) as usize);
        for _ in 0..gap {
            if samples.len() >= total_samples {
                break;
            }
            samples.push(0);
        }
    }

    SpeechSignal::new(samples, sample_rate_hz)
}

fn raised_cosine(x: f64) -> f64 {
    0.5 - 0.5 * (std::f64::consts::PI * x.clamp(0.0, 1.0)).cos()
}

/// A duration in the 2.5 - 5 s band, in samples, drawn deterministically.
pub fn corpus_duration_samples(sample_rate_hz: u32, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seconds = rng.random_range(2.5..5.0);
    (seconds * f64::from(sample_rate_hz)) as usize
}
