//! Per-frame payload embedding, extraction, and verification.
//!
//! Each full frame can carry one ten-digit payload in its embedding slots
//! (by default the frame's last ten samples). Embedding replaces the slot
//! values with quantized digit levels and leaves every other sample
//! bit-identical, so extraction is an exact inverse on a clean channel.

use serde::Serialize;
use thiserror::Error;

use crate::payload::{digit_to_level, level_to_digit, PayloadDigits, StegoConfig, PAYLOAD_DIGITS};
use crate::signal::FrameSet;

/// Bits per digit in the verification bit stream (4-bit BCD).
pub const BITS_PER_DIGIT: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StegoError {
    #[error("payload count {payloads} exceeds capacity of {frames} full frames")]
    CapacityExceeded { payloads: usize, frames: usize },
    #[error("payload list lengths differ: sent {sent}, received {received}")]
    LengthMismatch { sent: usize, received: usize },
    #[error("config frame length {config} does not match frame set length {actual}")]
    FrameLengthMismatch { config: usize, actual: usize },
}

/// Outcome of embedding: the stego frames plus how many frames carry data.
#[derive(Debug, Clone)]
pub struct StegoResult {
    pub stego_frames: FrameSet,
    pub embedded_count: usize,
}

/// Result of comparing sent and received payload lists bit-by-bit.
///
/// Digits are compared over their 4-bit binary encodings, so one payload
/// contributes 40 bits and `ber_percent` is 100 * error_bits / total_bits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub matched: bool,
    pub total_bits: usize,
    pub error_bits: usize,
    pub ber_percent: f64,
    pub mismatch_frames: Vec<usize>,
}

/// Number of payloads a carrier can hold: one per full frame.
pub fn capacity(frames: &FrameSet) -> usize {
    frames.frame_count()
}

/// Write one payload into each of the first `payloads.len()` frames.
/// Frames beyond the payload list and the tail pass through unchanged.
pub fn embed(
    cover: &FrameSet,
    payloads: &[PayloadDigits],
    cfg: &StegoConfig,
) -> Result<StegoResult, StegoError> {
    check_frame_length(cover, cfg)?;
    if payloads.len() > cover.frame_count() {
        return Err(StegoError::CapacityExceeded {
            payloads: payloads.len(),
            frames: cover.frame_count(),
        });
    }

    let mut stego = cover.clone();
    for (index, payload) in payloads.iter().enumerate() {
        let frame = stego.frame_mut(index);
        for (slot, &digit) in payload.digits().iter().enumerate() {
            frame[cfg.slot_offset + slot] = digit_to_level(digit, cfg);
        }
    }
    Ok(StegoResult {
        stego_frames: stego,
        embedded_count: payloads.len(),
    })
}

/// Read `count` payloads back out of the embedding slots. Total on any
/// sample values; perturbed levels clamp to the nearest digit.
pub fn extract(
    frames: &FrameSet,
    count: usize,
    cfg: &StegoConfig,
) -> Result<Vec<PayloadDigits>, StegoError> {
    check_frame_length(frames, cfg)?;
    if count > frames.frame_count() {
        return Err(StegoError::CapacityExceeded {
            payloads: count,
            frames: frames.frame_count(),
        });
    }

    let mut payloads = Vec::with_capacity(count);
    for index in 0..count {
        let frame = frames.frame(index);
        let mut digits = [0u8; PAYLOAD_DIGITS];
        for (slot, digit) in digits.iter_mut().enumerate() {
            *digit = level_to_digit(frame[cfg.slot_offset + slot], cfg);
        }
        payloads.push(PayloadDigits::new(digits).expect("digits are clamped to 0..=9"));
    }
    Ok(payloads)
}

/// Compare sent and received payload lists; transmission succeeds only on an
/// exact match.
pub fn verify(
    sent: &[PayloadDigits],
    received: &[PayloadDigits],
) -> Result<VerificationReport, StegoError> {
    if sent.len() != received.len() {
        return Err(StegoError::LengthMismatch {
            sent: sent.len(),
            received: received.len(),
        });
    }

    let mut error_bits = 0usize;
    let mut mismatch_frames = Vec::new();
    for (index, (a, b)) in sent.iter().zip(received).enumerate() {
        let frame_errors: usize = a
            .digits()
            .iter()
            .zip(b.digits())
            .map(|(&x, &y)| (x ^ y).count_ones() as usize)
            .sum();
        if frame_errors > 0 {
            mismatch_frames.push(index);
            error_bits += frame_errors;
        }
    }

    let total_bits = sent.len() * PAYLOAD_DIGITS * BITS_PER_DIGIT;
    let ber_percent = if total_bits == 0 {
        0.0
    } else {
        100.0 * error_bits as f64 / total_bits as f64
    };
    Ok(VerificationReport {
        matched: error_bits == 0,
        total_bits,
        error_bits,
        ber_percent,
        mismatch_frames,
    })
}

/// 4-bit binary encoding of a digit, most significant bit first. This is the
/// bit stream BER is computed over.
pub fn digit_bits(d: u8) -> [bool; BITS_PER_DIGIT] {
    debug_assert!(d <= 9);
    [d & 8 != 0, d & 4 != 0, d & 2 != 0, d & 1 != 0]
}

/// Flatten a digit sequence into its verification bit stream.
pub fn digits_to_bits(digits: &[u8]) -> Vec<bool> {
    digits.iter().flat_map(|&d| digit_bits(d)).collect()
}

fn check_frame_length(frames: &FrameSet, cfg: &StegoConfig) -> Result<(), StegoError> {
    if frames.frame_length() != cfg.frame_length {
        return Err(StegoError::FrameLengthMismatch {
            config: cfg.frame_length,
            actual: frames.frame_length(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{frame_signal, SpeechSignal};

    fn zeros(n: usize) -> FrameSet {
        frame_signal(&SpeechSignal::new(vec![0; n], 8000), 160).unwrap()
    }

    fn payload(digits: [u8; 10]) -> PayloadDigits {
        PayloadDigits::new(digits).unwrap()
    }

    #[test]
    fn zero_payload_on_zero_frame_is_a_fixpoint() {
        let cover = zeros(160);
        let result = embed(&cover, &[payload([0; 10])], &StegoConfig::default()).unwrap();
        assert_eq!(result.embedded_count, 1);
        assert_eq!(result.stego_frames, cover);
    }

    #[test]
    fn embeds_hand_oracle_levels_into_trailing_slots() {
        let cover = zeros(160);
        let digits = payload([0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
        let result = embed(&cover, &[digits], &StegoConfig::default()).unwrap();
        let frame = result.stego_frames.frame(0);
        assert_eq!(
            &frame[150..160],
            &[0, 33, 66, 98, 131, 164, 197, 229, 262, 295]
        );
        assert!(frame[..150].iter().all(|&s| s == 0));
    }

    #[test]
    fn extract_reads_hand_oracle_levels() {
        let mut samples = vec![0i16; 160];
        samples[150..160].copy_from_slice(&[0, 33, 66, 98, 131, 164, 197, 229, 262, 295]);
        let frames = frame_signal(&SpeechSignal::new(samples, 8000), 160).unwrap();
        let payloads = extract(&frames, 1, &StegoConfig::default()).unwrap();
        assert_eq!(payloads[0].digits(), &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
    }

    #[test]
    fn capacity_counts_full_frames() {
        assert_eq!(capacity(&zeros(18000)), 112);
        assert_eq!(capacity(&zeros(0)), 0);
        assert_eq!(capacity(&zeros(319)), 1);
    }

    #[test]
    fn too_many_payloads_exceed_capacity() {
        let cover = zeros(320); // 2 frames
        let payloads = vec![payload([1; 10]); 3];
        assert_eq!(
            embed(&cover, &payloads, &StegoConfig::default()).unwrap_err(),
            StegoError::CapacityExceeded {
                payloads: 3,
                frames: 2
            }
        );
    }

    #[test]
    fn extract_from_garbage_is_total() {
        let samples: Vec<i16> = (0..160)
            .map(|i| ((i * 2654435761usize) % 65536) as u16 as i16)
            .collect();
        let frames = frame_signal(&SpeechSignal::new(samples, 8000), 160).unwrap();
        let payloads = extract(&frames, 1, &StegoConfig::default()).unwrap();
        assert!(payloads[0].digits().iter().all(|&d| d <= 9));
    }

    #[test]
    fn embed_then_extract_round_trips() {
        let cover = frame_signal(
            &SpeechSignal::new((0..1600).map(|i| (i as i16).wrapping_mul(321)).collect(), 8000),
            160,
        )
        .unwrap();
        let payloads = vec![
            payload([0, 1, 2, 3, 4, 5, 6, 7, 8, 9]),
            payload([9, 8, 7, 6, 5, 4, 3, 2, 1, 0]),
            payload([5; 10]),
        ];
        let result = embed(&cover, &payloads, &StegoConfig::default()).unwrap();
        let recovered = extract(&result.stego_frames, 3, &StegoConfig::default()).unwrap();
        assert_eq!(recovered, payloads);
    }

    #[test]
    fn embedding_is_local_to_slots() {
        let cover = frame_signal(
            &SpeechSignal::new((0..480).map(|i| i as i16 - 240).collect(), 8000),
            160,
        )
        .unwrap();
        let payloads = vec![payload([7; 10]); 2];
        let result = embed(&cover, &payloads, &StegoConfig::default()).unwrap();

        for i in 0..cover.frame_count() {
            for (j, (&a, &b)) in cover.frame(i).iter().zip(result.stego_frames.frame(i)).enumerate()
            {
                if i < 2 && (150..160).contains(&j) {
                    continue;
                }
                assert_eq!(a, b, "frame {i} sample {j} must be untouched");
            }
        }
        assert_eq!(cover.tail(), result.stego_frames.tail());
    }

    #[test]
    fn verify_identical_lists_matches_with_zero_ber() {
        let payloads = vec![payload([1, 2, 3, 4, 5, 6, 7, 8, 9, 0]); 4];
        let report = verify(&payloads, &payloads).unwrap();
        assert!(report.matched);
        assert_eq!(report.error_bits, 0);
        assert_eq!(report.total_bits, 160);
        assert_eq!(report.ber_percent, 0.0);
        assert!(report.mismatch_frames.is_empty());
    }

    #[test]
    fn single_digit_flip_gives_2_5_percent_ber() {
        // 3 -> 2 is binary 0011 -> 0010: exactly one bit over 40 total.
        let sent = vec![payload([3, 0, 0, 0, 0, 0, 0, 0, 0, 0])];
        let received = vec![payload([2, 0, 0, 0, 0, 0, 0, 0, 0, 0])];
        let report = verify(&sent, &received).unwrap();
        assert!(!report.matched);
        assert_eq!(report.error_bits, 1);
        assert_eq!(report.total_bits, 40);
        assert_eq!(report.ber_percent, 2.5);
        assert_eq!(report.mismatch_frames, vec![0]);
    }

    #[test]
    fn verify_rejects_length_mismatch() {
        let a = vec![payload([0; 10])];
        let b = vec![payload([0; 10]); 2];
        assert_eq!(
            verify(&a, &b).unwrap_err(),
            StegoError::LengthMismatch {
                sent: 1,
                received: 2
            }
        );
    }

    #[test]
    fn verify_empty_lists_match() {
        let report = verify(&[], &[]).unwrap();
        assert!(report.matched);
        assert_eq!(report.ber_percent, 0.0);
    }

    #[test]
    fn digit_bits_are_bcd_msb_first() {
        assert_eq!(digit_bits(0), [false, false, false, false]);
        assert_eq!(digit_bits(3), [false, false, true, true]);
        assert_eq!(digit_bits(9), [true, false, false, true]);
        assert_eq!(digits_to_bits(&[3, 9]).len(), 8);
    }

    #[test]
    fn report_serializes_with_all_fields() {
        let report = verify(&[payload([1; 10])], &[payload([1; 10])]).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        for field in ["matched", "total_bits", "error_bits", "ber_percent", "mismatch_frames"] {
            assert!(json.get(field).is_some(), "missing field {field}");
        }
    }
}
