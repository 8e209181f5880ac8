//! Hide ten-digit numeric payloads inside mono speech audio.
//!
//! The transmit pipeline splits a PCM16 signal into 160-sample frames,
//! writes one ten-digit payload into the final ten samples of each frame as
//! small quantized levels, then encrypts every frame with a keyed in-frame
//! permutation plus a modular additive mask derived from a three-prime seed.
//! Receiving runs the exact inverse: decrypt, extract, and compare against
//! the expected payloads. On a clean channel the round trip is bit-exact,
//! so the payload bit error rate is exactly zero.
//!
//! Fidelity of the stego signal against its cover is measured with MSE,
//! PSNR, and a windowed 1-D SSIM; payload integrity with BER. A
//! silence-interval baseline (hiding digits in silence-run lengths) is
//! included for side-by-side comparison under the same metrics.
//!
//! # Security
//!
//! The keystream here is a small arithmetic recurrence, **not** a vetted
//! cipher. It scrambles the signal enough to make casual interception and
//! tampering evident, and no more. Do not use it where real confidentiality
//! is required.
//!
//! ```
//! use framesteg::{cipher, keystream, payload, signal, stego};
//!
//! let cover = framesteg::synth::speech_like(8000, 24_000, 1);
//! let frames = signal::frame_signal(&cover, 160).unwrap();
//! let cfg = payload::StegoConfig::default();
//! let seed = keystream::validate_seed(7919, 104729, 3).unwrap();
//! let sent = vec!["0123456789".parse().unwrap()];
//!
//! let stego = stego::embed(&frames, &sent, &cfg).unwrap().stego_frames;
//! let sealed = cipher::encrypt_signal(&stego, &seed, Default::default()).unwrap();
//!
//! let opened = cipher::decrypt_signal(&sealed, &seed, Default::default()).unwrap();
//! let received = stego::extract(&opened, 1, &cfg).unwrap();
//! assert_eq!(received, sent);
//! ```

pub mod cipher;
pub mod keystream;
pub mod metrics;
pub mod noise;
pub mod payload;
pub mod signal;
pub mod silence;
pub mod stego;
pub mod synth;
pub mod wav;

pub use cipher::{decrypt_signal, encrypt_signal, CipherError, CipherMode};
pub use keystream::{frame_key, validate_seed, FrameKey, KeyError, KeySeed};
pub use payload::{parse_payload_file, PayloadDigits, PayloadError, StegoConfig};
pub use signal::{assemble, frame_signal, FrameError, FrameSet, SpeechSignal, FULL_SCALE};
pub use stego::{capacity, embed, extract, verify, StegoError, StegoResult, VerificationReport};
pub use wav::{load_wav, save_wav, WavError};

/// Metric scalar used throughout the CLI and reports.
pub type Metric = f64;

/// [`metrics::MetricsReport`] at the default `f64` precision.
pub type MetricsReport = metrics::MetricsReport<Metric>;
