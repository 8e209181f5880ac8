//! Silence-interval steganography, the comparison baseline.
//!
//! Digits are hidden by trimming each detected silence interval so that its
//! length mod 10 equals the digit, removing at most nine trailing samples
//! per interval. Extraction re-detects the intervals and reads the lengths
//! back. The scheme is deliberately fragile: anything that moves an
//! interval boundary (noise, re-quantization) corrupts digits, which is the
//! behavior the evaluation harness contrasts against per-frame embedding.
//!
//! This is an approximation of the silence-interval approach, not a
//! bit-faithful reproduction of any particular implementation; numbers it
//! produces are reported as this implementation's.

use thiserror::Error;

use crate::signal::{SpeechSignal, FULL_SCALE};

/// Default detection threshold, as a fraction of full scale.
pub const DEFAULT_SILENCE_THRESHOLD: f64 = 0.01;

/// Default minimum interval length in samples (40 ms at 8 kHz).
pub const DEFAULT_MIN_INTERVAL: usize = 320;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SilenceError {
    #[error("payload needs {needed} silence intervals, only {available} detected")]
    InsufficientIntervals { needed: usize, available: usize },
    #[error("digit {0} out of range 0..=9")]
    DigitOutOfRange(u8),
}

/// A maximal run of samples below the silence threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SilenceInterval {
    pub start: usize,
    pub length: usize,
    /// Mean |sample| over the interval, in PCM units.
    pub mean_abs_level: f64,
}

/// Find maximal runs of samples with |sample| / full_scale < threshold and
/// length >= min_interval, in signal order.
///
/// Panics if `threshold` is outside (0, 1).
pub fn detect_silence(
    signal: &SpeechSignal,
    threshold: f64,
    min_interval: usize,
) -> Vec<SilenceInterval> {
    assert!(
        threshold > 0.0 && threshold < 1.0,
        "silence threshold must be in (0, 1)"
    );
    let limit = threshold * f64::from(FULL_SCALE);
    let min_interval = min_interval.max(1);

    let mut intervals = Vec::new();
    let mut run_start = None;
    let mut abs_sum = 0u64;
    let samples = signal.samples();

    for (i, &s) in samples.iter().enumerate() {
        if f64::from(s.unsigned_abs()) < limit {
            if run_start.is_none() {
                run_start = Some(i);
                abs_sum = 0;
            }
            abs_sum += u64::from(s.unsigned_abs());
        } else if let Some(start) = run_start.take() {
            push_interval(&mut intervals, start, i - start, abs_sum, min_interval);
        }
    }
    if let Some(start) = run_start {
        push_interval(
            &mut intervals,
            start,
            samples.len() - start,
            abs_sum,
            min_interval,
        );
    }
    intervals
}

fn push_interval(
    intervals: &mut Vec<SilenceInterval>,
    start: usize,
    length: usize,
    abs_sum: u64,
    min_interval: usize,
) {
    if length >= min_interval {
        intervals.push(SilenceInterval {
            start,
            length,
            mean_abs_level: abs_sum as f64 / length as f64,
        });
    }
}

/// Hide `digits` by trimming silence intervals: interval i loses
/// (length - digit) mod 10 trailing samples, so its new length mod 10 equals
/// digits[i]. The output signal is shorter by the total samples removed.
pub fn embed_silence(
    signal: &SpeechSignal,
    digits: &[u8],
    threshold: f64,
    min_interval: usize,
) -> Result<SpeechSignal, SilenceError> {
    if let Some(&bad) = digits.iter().find(|&&d| d > 9) {
        return Err(SilenceError::DigitOutOfRange(bad));
    }
    let intervals = detect_silence(signal, threshold, min_interval);
    if digits.len() > intervals.len() {
        return Err(SilenceError::InsufficientIntervals {
            needed: digits.len(),
            available: intervals.len(),
        });
    }

    let plan = removal_plan(&intervals, digits);
    let mut samples = Vec::with_capacity(signal.len());
    let mut cursor = 0usize;
    for &(skip_start, skip_len) in &plan {
        samples.extend_from_slice(&signal.samples()[cursor..skip_start]);
        cursor = skip_start + skip_len;
    }
    samples.extend_from_slice(&signal.samples()[cursor..]);
    Ok(SpeechSignal::new(samples, signal.sample_rate_hz()))
}

/// Trailing-sample removals (start, length) that encode `digits` into the
/// detected `intervals`. At most 9 samples go per interval.
pub fn removal_plan(intervals: &[SilenceInterval], digits: &[u8]) -> Vec<(usize, usize)> {
    intervals
        .iter()
        .zip(digits)
        .filter_map(|(interval, &digit)| {
            let remove = (interval.length - usize::from(digit)) % 10;
            (remove > 0).then(|| (interval.start + interval.length - remove, remove))
        })
        .collect()
}

/// Read `count` digits back as interval lengths mod 10.
pub fn extract_silence(
    signal: &SpeechSignal,
    count: usize,
    threshold: f64,
    min_interval: usize,
) -> Result<Vec<u8>, SilenceError> {
    let intervals = detect_silence(signal, threshold, min_interval);
    if count > intervals.len() {
        return Err(SilenceError::InsufficientIntervals {
            needed: count,
            available: intervals.len(),
        });
    }
    Ok(intervals[..count]
        .iter()
        .map(|interval| (interval.length % 10) as u8)
        .collect())
}
