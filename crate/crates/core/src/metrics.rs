//! Fidelity and integrity metrics: MSE, PSNR, windowed 1-D SSIM, and BER.
//!
//! All computations run on samples normalized to [-1, 1] (sample / 32767)
//! and are generic over the float scalar; `f64` is the crate default via the
//! aliases at the crate root. Summation is plain index order so results are
//! reproducible run to run.

use num_traits::{Float, FromPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::signal::{SpeechSignal, FULL_SCALE};

/// SSIM window length in samples; one frame by default.
pub const SSIM_WINDOW: usize = 160;

/// SSIM window stride in samples.
pub const SSIM_STRIDE: usize = 80;

/// Float scalar the metric kernels compute in (f32 or f64).
pub trait Scalar: Float + FromPrimitive {}
impl<T: Float + FromPrimitive> Scalar for T {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("signal lengths differ: {a} vs {b}")]
    LengthMismatch { a: usize, b: usize },
    #[error("empty input")]
    Empty,
    #[error("signals shorter than the SSIM window ({len} < {window})")]
    TooShort { len: usize, window: usize },
    #[error("window and stride must be positive")]
    BadWindow,
}

/// Fidelity and integrity summary for one cover/stego/recovered triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricsReport<F> {
    pub mse: F,
    pub psnr_db: F,
    pub ssim: F,
    pub ber_percent: F,
}

/// Mean squared error over normalized samples.
pub fn mse<F: Scalar>(a: &SpeechSignal, b: &SpeechSignal) -> Result<F, MetricError> {
    check_pair(a, b)?;
    let scale = F::from_i32(FULL_SCALE).unwrap();
    let mut acc = F::zero();
    for (&x, &y) in a.samples().iter().zip(b.samples()) {
        let diff = (F::from_i16(x).unwrap() - F::from_i16(y).unwrap()) / scale;
        acc = acc + diff * diff;
    }
    Ok(acc / F::from_usize(a.len()).unwrap())
}

/// Peak signal-to-noise ratio in dB against the normalized peak of 1.0;
/// +infinity for identical signals.
pub fn psnr<F: Scalar>(a: &SpeechSignal, b: &SpeechSignal) -> Result<F, MetricError> {
    Ok(psnr_from_mse(mse(a, b)?))
}

/// 10 * log10(1 / mse) with PEAK = 1.0 in normalized units.
pub fn psnr_from_mse<F: Scalar>(mse: F) -> F {
    if mse <= F::zero() {
        F::infinity()
    } else {
        -F::from_f64(10.0).unwrap() * mse.log10()
    }
}

/// Mean SSIM over sliding 1-D windows of normalized samples, dynamic range
/// R = 2.0 (the span of [-1, 1]), C1 = (0.01 R)^2, C2 = (0.03 R)^2, and
/// population (divide-by-n) window statistics.
pub fn ssim_1d<F: Scalar>(
    a: &SpeechSignal,
    b: &SpeechSignal,
    window: usize,
    stride: usize,
) -> Result<F, MetricError> {
    if window == 0 || stride == 0 {
        return Err(MetricError::BadWindow);
    }
    check_pair(a, b)?;
    if a.len() < window {
        return Err(MetricError::TooShort {
            len: a.len(),
            window,
        });
    }

    let scale = F::from_i32(FULL_SCALE).unwrap();
    let c1 = F::from_f64(0.02 * 0.02).unwrap(); // (K1 * R)^2, K1 = 0.01, R = 2
    let c2 = F::from_f64(0.06 * 0.06).unwrap(); // (K2 * R)^2, K2 = 0.03
    let n = F::from_usize(window).unwrap();
    let two = F::from_f64(2.0).unwrap();

    let mut total = F::zero();
    let mut count = 0usize;
    let mut start = 0usize;
    while start + window <= a.len() {
        let wa = &a.samples()[start..start + window];
        let wb = &b.samples()[start..start + window];

        let mut sum_a = F::zero();
        let mut sum_b = F::zero();
        for (&x, &y) in wa.iter().zip(wb) {
            sum_a = sum_a + F::from_i16(x).unwrap() / scale;
            sum_b = sum_b + F::from_i16(y).unwrap() / scale;
        }
        let mean_a = sum_a / n;
        let mean_b = sum_b / n;

        let mut var_a = F::zero();
        let mut var_b = F::zero();
        let mut cov = F::zero();
        for (&x, &y) in wa.iter().zip(wb) {
            let da = F::from_i16(x).unwrap() / scale - mean_a;
            let db = F::from_i16(y).unwrap() / scale - mean_b;
            var_a = var_a + da * da;
            var_b = var_b + db * db;
            cov = cov + da * db;
        }
        var_a = var_a / n;
        var_b = var_b / n;
        cov = cov / n;

        let luminance = (two * mean_a * mean_b + c1) / (mean_a * mean_a + mean_b * mean_b + c1);
        let structure = (two * cov + c2) / (var_a + var_b + c2);
        total = total + luminance * structure;
        count += 1;
        start += stride;
    }
    Ok(total / F::from_usize(count).unwrap())
}

/// SSIM at the default window (160) and stride (80).
pub fn ssim<F: Scalar>(a: &SpeechSignal, b: &SpeechSignal) -> Result<F, MetricError> {
    ssim_1d(a, b, SSIM_WINDOW, SSIM_STRIDE)
}

/// Bit error rate as a percentage: 100 * differing positions / length.
pub fn ber<F: Scalar>(sent: &[bool], received: &[bool]) -> Result<F, MetricError> {
    if sent.len() != received.len() {
        return Err(MetricError::LengthMismatch {
            a: sent.len(),
            b: received.len(),
        });
    }
    if sent.is_empty() {
        return Err(MetricError::Empty);
    }
    let errors = sent
        .iter()
        .zip(received)
        .filter(|(x, y)| x != y)
        .count();
    Ok(F::from_f64(100.0).unwrap() * F::from_usize(errors).unwrap()
        / F::from_usize(sent.len()).unwrap())
}

fn check_pair(a: &SpeechSignal, b: &SpeechSignal) -> Result<(), MetricError> {
    if a.len() != b.len() {
        return Err(MetricError::LengthMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    if a.is_empty() {
        return Err(MetricError::Empty);
    }
    Ok(())
}
