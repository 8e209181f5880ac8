//! Payload digits and their quantized embedding levels.
//!
//! A payload is exactly ten decimal digits. Each digit d maps to the PCM16
//! quantization of the normalized value d / divisor, so with the default
//! divisor of 1000 every embedded sample stays below 0.01 of full scale.
//! The digit/level maps are exact integer arithmetic (round half away from
//! zero) so the extraction side inverts embedding without error.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::signal::{FULL_SCALE, MIN_FRAME_LENGTH};

/// Digits per payload; one payload occupies one frame.
pub const PAYLOAD_DIGITS: usize = 10;

/// Default scaling divisor: digit d embeds as d/1000 of full scale.
pub const DEFAULT_DIVISOR: u32 = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PayloadError {
    #[error("line {line}: expected {PAYLOAD_DIGITS} digits, found {len} characters")]
    BadLength { line: usize, len: usize },
    #[error("line {line}: non-digit character {ch:?}")]
    NonDigit { line: usize, ch: char },
    #[error("no payload lines found")]
    EmptyFile,
    #[error("digit {0} out of range 0..=9")]
    DigitOutOfRange(u8),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("frame length {0} is too small (minimum {MIN_FRAME_LENGTH})")]
    FrameLengthTooSmall(usize),
    #[error("{slots} slots starting at offset {offset} do not fit a {frame_length}-sample frame")]
    SlotsOutOfRange {
        slots: usize,
        offset: usize,
        frame_length: usize,
    },
    #[error("slots per frame must be {PAYLOAD_DIGITS}, got {0}")]
    UnsupportedSlotCount(usize),
    #[error("divisor {0} is too small; embedded levels would leave the low-amplitude range")]
    DivisorTooSmall(u32),
    #[error("divisor {0} is too large; digit levels collide and extraction cannot invert")]
    DivisorNotInjective(u32),
    #[error("full scale {0} out of range 1..=32767")]
    BadFullScale(i32),
}

/// One ten-digit payload, one digit per embedding slot.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PayloadDigits([u8; PAYLOAD_DIGITS]);

impl PayloadDigits {
    pub fn new(digits: [u8; PAYLOAD_DIGITS]) -> Result<Self, PayloadError> {
        if let Some(&bad) = digits.iter().find(|&&d| d > 9) {
            return Err(PayloadError::DigitOutOfRange(bad));
        }
        Ok(Self(digits))
    }

    pub fn digits(&self) -> &[u8; PAYLOAD_DIGITS] {
        &self.0
    }
}

impl fmt::Display for PayloadDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PayloadDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PayloadDigits({self})")
    }
}

impl FromStr for PayloadDigits {
    type Err = PayloadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_line(s, 0)
    }
}

fn parse_line(line: &str, line_no: usize) -> Result<PayloadDigits, PayloadError> {
    let count = line.chars().count();
    if count != PAYLOAD_DIGITS {
        return Err(PayloadError::BadLength {
            line: line_no,
            len: count,
        });
    }
    let mut digits = [0u8; PAYLOAD_DIGITS];
    for (slot, ch) in digits.iter_mut().zip(line.chars()) {
        *slot = ch
            .to_digit(10)
            .ok_or(PayloadError::NonDigit { line: line_no, ch })? as u8;
    }
    Ok(PayloadDigits(digits))
}

/// Parse a payload file: one ten-digit number per line, leading zeros
/// allowed, `#` comment lines and blank lines skipped, CRLF tolerated.
pub fn parse_payload_file(text: &str) -> Result<Vec<PayloadDigits>, PayloadError> {
    let mut payloads = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        payloads.push(parse_line(line, idx + 1)?);
    }
    if payloads.is_empty() {
        return Err(PayloadError::EmptyFile);
    }
    Ok(payloads)
}

/// Embedding geometry and scaling. Defaults match the 160-sample frame with
/// the payload in its last ten samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StegoConfig {
    pub frame_length: usize,
    pub slots_per_frame: usize,
    pub divisor: u32,
    pub full_scale: i32,
    /// Index of the first embedding slot within a frame.
    pub slot_offset: usize,
}

impl Default for StegoConfig {
    fn default() -> Self {
        Self::with_frame_length(crate::signal::DEFAULT_FRAME_LENGTH)
    }
}

impl StegoConfig {
    /// Default geometry for a given frame length: slots occupy the final
    /// `PAYLOAD_DIGITS` samples of each frame.
    pub fn with_frame_length(frame_length: usize) -> Self {
        Self {
            frame_length,
            slots_per_frame: PAYLOAD_DIGITS,
            divisor: DEFAULT_DIVISOR,
            full_scale: FULL_SCALE,
            slot_offset: frame_length.saturating_sub(PAYLOAD_DIGITS),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.frame_length < MIN_FRAME_LENGTH {
            return Err(ConfigError::FrameLengthTooSmall(self.frame_length));
        }
        if self.slots_per_frame != PAYLOAD_DIGITS {
            return Err(ConfigError::UnsupportedSlotCount(self.slots_per_frame));
        }
        if self.slot_offset + self.slots_per_frame > self.frame_length {
            return Err(ConfigError::SlotsOutOfRange {
                slots: self.slots_per_frame,
                offset: self.slot_offset,
                frame_length: self.frame_length,
            });
        }
        if !(1..=FULL_SCALE).contains(&self.full_scale) {
            return Err(ConfigError::BadFullScale(self.full_scale));
        }
        // Levels must stay small relative to full scale ...
        if self.divisor < 90 {
            return Err(ConfigError::DivisorTooSmall(self.divisor));
        }
        // ... yet distinct, or extraction cannot invert embedding.
        for d in 0..9u8 {
            if digit_to_level(d, self) == digit_to_level(d + 1, self) {
                return Err(ConfigError::DivisorNotInjective(self.divisor));
            }
        }
        Ok(())
    }
}

/// PCM16 level carrying digit `d`: round(d * full_scale / divisor), exact
/// integer arithmetic, round half up (operands are non-negative).
pub fn digit_to_level(d: u8, cfg: &StegoConfig) -> i16 {
    debug_assert!(d <= 9);
    let num = 2 * i64::from(d) * i64::from(cfg.full_scale) + i64::from(cfg.divisor);
    (num / (2 * i64::from(cfg.divisor))) as i16
}

/// Digit recovered from a received level: round(v * divisor / full_scale)
/// clamped to 0..=9. Total by design; out-of-range levels clamp rather than
/// error so a perturbed signal still yields a comparable digit sequence.
pub fn level_to_digit(v: i16, cfg: &StegoConfig) -> u8 {
    let num = i64::from(v) * i64::from(cfg.divisor);
    let den = i64::from(cfg.full_scale);
    let rounded = if num >= 0 {
        (2 * num + den) / (2 * den)
    } else {
        -((-2 * num + den) / (2 * den))
    };
    rounded.clamp(0, 9) as u8
}
