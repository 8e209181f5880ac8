//! Exactly invertible per-frame encryption: keyed in-frame permutation
//! (scrambling) composed with a modular additive mask.
//!
//! Both stages work in 16-bit modular arithmetic and are individually
//! optional. Scrambling permutes the frame's samples (multiset preserved);
//! masking adds per-sample key material with two's-complement wraparound, so
//! no clipping or saturation can ever lose information. Encrypt order is
//! scramble-then-mask; decryption inverts both exactly.

use thiserror::Error;

use crate::keystream::{FrameKey, FrameKeyStream, KeySeed};
use crate::signal::FrameSet;

/// Spreads the small key digits (1..=9) across the 16-bit range. Any odd
/// multiplier keeps the mask invertible; this value is fixed for
/// interoperability.
pub const MASK_MULTIPLIER: u16 = 3641;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CipherError {
    #[error("frame length {frame} does not match key length {key}")]
    LengthMismatch { frame: usize, key: usize },
    #[error("cipher mode has both scramble and mask disabled")]
    InactiveMode,
}

/// Which stages run. At least one must be enabled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CipherMode {
    pub scramble: bool,
    pub mask: bool,
}

impl Default for CipherMode {
    fn default() -> Self {
        Self {
            scramble: true,
            mask: true,
        }
    }
}

impl CipherMode {
    pub fn new(scramble: bool, mask: bool) -> Result<Self, CipherError> {
        let mode = Self { scramble, mask };
        mode.validate()?;
        Ok(mode)
    }

    pub fn validate(&self) -> Result<(), CipherError> {
        if !self.scramble && !self.mask {
            return Err(CipherError::InactiveMode);
        }
        Ok(())
    }
}

/// Encrypt one frame: scramble (if enabled), then mask (if enabled).
pub fn encrypt_frame(
    frame: &[i16],
    key: &FrameKey,
    mode: CipherMode,
) -> Result<Vec<i16>, CipherError> {
    mode.validate()?;
    check_lengths(frame, key)?;

    let mut out = frame.to_vec();
    if mode.scramble {
        let targets = permutation_targets(key);
        for i in (1..out.len()).rev() {
            out.swap(i, targets[i]);
        }
    }
    if mode.mask {
        for (sample, &k) in out.iter_mut().zip(key.values()) {
            *sample = (*sample as u16).wrapping_add(mask_value(k)) as i16;
        }
    }
    Ok(out)
}

/// Exact inverse of [`encrypt_frame`]: unmask, then unscramble.
pub fn decrypt_frame(
    frame: &[i16],
    key: &FrameKey,
    mode: CipherMode,
) -> Result<Vec<i16>, CipherError> {
    mode.validate()?;
    check_lengths(frame, key)?;

    let mut out = frame.to_vec();
    if mode.mask {
        for (sample, &k) in out.iter_mut().zip(key.values()) {
            *sample = (*sample as u16).wrapping_sub(mask_value(k)) as i16;
        }
    }
    if mode.scramble {
        let targets = permutation_targets(key);
        for (i, &target) in targets.iter().enumerate().skip(1) {
            out.swap(i, target);
        }
    }
    Ok(out)
}

/// Encrypt every full frame with its own frame key; the tail passes through.
pub fn encrypt_signal(
    frames: &FrameSet,
    seed: &KeySeed,
    mode: CipherMode,
) -> Result<FrameSet, CipherError> {
    apply_signal(frames, seed, mode, encrypt_frame)
}

/// Decrypt every full frame; exact inverse of [`encrypt_signal`] under the
/// same seed and mode.
pub fn decrypt_signal(
    frames: &FrameSet,
    seed: &KeySeed,
    mode: CipherMode,
) -> Result<FrameSet, CipherError> {
    apply_signal(frames, seed, mode, decrypt_frame)
}

type FrameOp = fn(&[i16], &FrameKey, CipherMode) -> Result<Vec<i16>, CipherError>;

fn apply_signal(
    frames: &FrameSet,
    seed: &KeySeed,
    mode: CipherMode,
    op: FrameOp,
) -> Result<FrameSet, CipherError> {
    mode.validate()?;
    let mut out = frames.clone();
    let keys = FrameKeyStream::new(seed, frames.frame_length());
    for (index, key) in keys.take(frames.frame_count()).enumerate() {
        let processed = op(frames.frame(index), &key, mode)?;
        out.frame_mut(index).copy_from_slice(&processed);
    }
    Ok(out)
}

fn mask_value(k: u8) -> u16 {
    (u32::from(k) * u32::from(MASK_MULTIPLIER) % 65536) as u16
}

/// Swap targets for the keyed permutation: position i (walked from the top
/// of the frame down) swaps with the running sum of the first i key values
/// taken mod (i + 1).
fn permutation_targets(key: &FrameKey) -> Vec<usize> {
    let mut targets = vec![0usize; key.len()];
    let mut running_sum = 0u64;
    for (i, &value) in key.values().iter().enumerate() {
        targets[i] = (running_sum % (i as u64 + 1)) as usize;
        running_sum += u64::from(value);
    }
    targets
}

fn check_lengths(frame: &[i16], key: &FrameKey) -> Result<(), CipherError> {
    if frame.len() != key.len() {
        return Err(CipherError::LengthMismatch {
            frame: frame.len(),
            key: key.len(),
        });
    }
    Ok(())
}
