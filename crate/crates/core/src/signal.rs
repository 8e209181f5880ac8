//! Carrier signal types and fixed-length framing.
//!
//! The sample domain is 16-bit signed integer PCM throughout. Keeping the
//! pipeline in integers is what makes the cipher exactly invertible and the
//! payload round-trip bit-exact; floating point enters only in the metrics.

use thiserror::Error;

/// Full-scale PCM16 amplitude; the peak used to normalize samples to [-1, 1].
pub const FULL_SCALE: i32 = 32767;

/// Default frame length in samples (20 ms at 8 kHz).
pub const DEFAULT_FRAME_LENGTH: usize = 160;

/// Smallest accepted frame length: the 10 embedding slots plus margin.
pub const MIN_FRAME_LENGTH: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    #[error("frame length {given} is too small (minimum {MIN_FRAME_LENGTH})")]
    FrameLengthTooSmall { given: usize },
}

/// A mono PCM16 speech signal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeechSignal {
    samples: Vec<i16>,
    sample_rate_hz: u32,
}

impl SpeechSignal {
    /// Panics if `sample_rate_hz` is zero.
    pub fn new(samples: Vec<i16>, sample_rate_hz: u32) -> Self {
        assert!(sample_rate_hz > 0, "sample rate must be positive");
        Self {
            samples,
            sample_rate_hz,
        }
    }

    pub fn samples(&self) -> &[i16] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> u32 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn into_samples(self) -> Vec<i16> {
        self.samples
    }
}

/// A signal partitioned into `N` full frames of `frame_length` samples plus
/// an untouched tail of fewer than `frame_length` samples.
///
/// Storage stays flat, so `N * L + tail.len()` always equals the original
/// sample count and reassembly is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameSet {
    samples: Vec<i16>,
    frame_length: usize,
    frame_count: usize,
    sample_rate_hz: u32,
}

/// Split a signal into full frames of `frame_length` samples; leftover
/// samples become the tail and pass through every downstream stage untouched.
pub fn frame_signal(signal: &SpeechSignal, frame_length: usize) -> Result<FrameSet, FrameError> {
    if frame_length < MIN_FRAME_LENGTH {
        return Err(FrameError::FrameLengthTooSmall {
            given: frame_length,
        });
    }
    Ok(FrameSet {
        frame_count: signal.len() / frame_length,
        samples: signal.samples().to_vec(),
        frame_length,
        sample_rate_hz: signal.sample_rate_hz(),
    })
}

/// Concatenate frames and tail back into a signal. Exact inverse of
/// [`frame_signal`].
pub fn assemble(frames: &FrameSet) -> SpeechSignal {
    SpeechSignal::new(frames.samples.clone(), frames.sample_rate_hz)
}

impl FrameSet {
    pub fn frame_count(&self) -> usize {
        self.frame_count
    }

    pub fn frame_length(&self) -> usize {
        self.frame_length
    }

    pub fn sample_rate_hz(&self) -> u32 {
        self.sample_rate_hz
    }

    /// Total samples including the tail.
    pub fn total_len(&self) -> usize {
        self.samples.len()
    }

    /// Panics if `index >= frame_count()`.
    pub fn frame(&self, index: usize) -> &[i16] {
        assert!(index < self.frame_count, "frame index out of range");
        let start = index * self.frame_length;
        &self.samples[start..start + self.frame_length]
    }

    pub(crate) fn frame_mut(&mut self, index: usize) -> &mut [i16] {
        assert!(index < self.frame_count, "frame index out of range");
        let start = index * self.frame_length;
        &mut self.samples[start..start + self.frame_length]
    }

    pub fn frames(&self) -> impl Iterator<Item = &[i16]> {
        self.samples[..self.frame_count * self.frame_length].chunks_exact(self.frame_length)
    }

    pub fn tail(&self) -> &[i16] {
        &self.samples[self.frame_count * self.frame_length..]
    }

    pub fn into_signal(self) -> SpeechSignal {
        SpeechSignal::new(self.samples, self.sample_rate_hz)
    }
}
