//! WAV (RIFF/WAVE) reading and writing for mono integer PCM.
//!
//! The reader accepts 8- and 16-bit PCM, scales 8-bit material up to the
//! 16-bit domain, and skips chunks it does not understand (LIST, fact, ...).
//! The writer always emits 16-bit mono PCM and can attach an informational
//! LIST/INFO comment chunk that any compliant reader will skip.

use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::signal::SpeechSignal;

const FORMAT_PCM: u16 = 1;

#[derive(Debug, Error)]
pub enum WavError {
    #[error("not a RIFF/WAVE file")]
    NotWav,
    #[error("malformed WAV: {0}")]
    Malformed(&'static str),
    #[error("unsupported encoding: format tag {format}, {bits} bits/sample (integer PCM 8/16-bit only)")]
    UnsupportedEncoding { format: u16, bits: u16 },
    #[error("expected mono audio, found {0} channels")]
    MultiChannel(u16),
    #[error("data chunk truncated: header declares {declared} bytes, {available} available")]
    Truncated { declared: usize, available: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Load a mono PCM WAV file as a [`SpeechSignal`].
pub fn load_wav<P: AsRef<Path>>(path: P) -> Result<SpeechSignal, WavError> {
    decode_wav(&fs::read(path)?)
}

/// Write `signal` as a 16-bit mono PCM WAV file.
pub fn save_wav<P: AsRef<Path>>(signal: &SpeechSignal, path: P) -> Result<(), WavError> {
    fs::write(path, encode_wav(signal))?;
    Ok(())
}

/// Like [`save_wav`] but with an informational LIST/INFO comment chunk.
/// The comment is advisory; decoding never depends on it.
pub fn save_wav_with_comment<P: AsRef<Path>>(
    signal: &SpeechSignal,
    path: P,
    comment: &str,
) -> Result<(), WavError> {
    fs::write(path, encode_wav_with_comment(signal, Some(comment)))?;
    Ok(())
}

struct Fmt {
    format: u16,
    channels: u16,
    sample_rate: u32,
    bits: u16,
}

/// Decode a WAV byte buffer into a [`SpeechSignal`].
pub fn decode_wav(bytes: &[u8]) -> Result<SpeechSignal, WavError> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(WavError::NotWav);
    }

    let mut fmt: Option<Fmt> = None;
    let mut data: Option<&[u8]> = None;
    let mut offset = 12usize;

    while offset + 8 <= bytes.len() {
        let id = &bytes[offset..offset + 4];
        let size = u32::from_le_bytes(bytes[offset + 4..offset + 8].try_into().unwrap()) as usize;
        let body_start = offset + 8;

        if bytes.len() - body_start < size {
            if id == b"data" {
                return Err(WavError::Truncated {
                    declared: size,
                    available: bytes.len() - body_start,
                });
            }
            return Err(WavError::Malformed("chunk overruns file"));
        }
        let body = &bytes[body_start..body_start + size];

        match id {
            b"fmt " => {
                if size < 16 {
                    return Err(WavError::Malformed("fmt chunk shorter than 16 bytes"));
                }
                fmt = Some(Fmt {
                    format: u16::from_le_bytes(body[0..2].try_into().unwrap()),
                    channels: u16::from_le_bytes(body[2..4].try_into().unwrap()),
                    sample_rate: u32::from_le_bytes(body[4..8].try_into().unwrap()),
                    bits: u16::from_le_bytes(body[14..16].try_into().unwrap()),
                });
            }
            b"data" => {
                data = Some(body);
                // Chunks after data are legal but irrelevant to us.
            }
            _ => {} // LIST, fact, and friends: skip.
        }

        // Chunk bodies are word-aligned; odd sizes carry a pad byte.
        offset = body_start + size + (size & 1);
    }

    let fmt = fmt.ok_or(WavError::Malformed("missing fmt chunk"))?;
    let data = data.ok_or(WavError::Malformed("missing data chunk"))?;

    if fmt.format != FORMAT_PCM || !matches!(fmt.bits, 8 | 16) {
        return Err(WavError::UnsupportedEncoding {
            format: fmt.format,
            bits: fmt.bits,
        });
    }
    if fmt.channels != 1 {
        return Err(WavError::MultiChannel(fmt.channels));
    }
    if fmt.sample_rate == 0 {
        return Err(WavError::Malformed("zero sample rate"));
    }

    let samples = match fmt.bits {
        8 => data
            .iter()
            .map(|&b| (i16::from(b) - 128) * 256)
            .collect(),
        16 => {
            if data.len() % 2 != 0 {
                return Err(WavError::Malformed("data chunk size not sample-aligned"));
            }
            data.chunks_exact(2)
                .map(|pair| i16::from_le_bytes([pair[0], pair[1]]))
                .collect()
        }
        _ => unreachable!(),
    };

    Ok(SpeechSignal::new(samples, fmt.sample_rate))
}

/// Encode `signal` as 16-bit mono PCM WAV bytes.
pub fn encode_wav(signal: &SpeechSignal) -> Vec<u8> {
    encode_wav_with_comment(signal, None)
}

/// Encode with an optional LIST/INFO ICMT comment chunk between fmt and data.
pub fn encode_wav_with_comment(signal: &SpeechSignal, comment: Option<&str>) -> Vec<u8> {
    let data_size = signal.len() * 2;
    let list_body = comment.map(|text| {
        // LIST form "INFO" + ICMT subchunk, NUL-terminated and padded even.
        let mut icmt = text.as_bytes().to_vec();
        icmt.push(0);
        if icmt.len() % 2 != 0 {
            icmt.push(0);
        }
        let mut body = Vec::with_capacity(12 + icmt.len());
        body.extend_from_slice(b"INFO");
        body.extend_from_slice(b"ICMT");
        body.extend_from_slice(&(icmt.len() as u32).to_le_bytes());
        body.extend_from_slice(&icmt);
        body
    });
    let list_size = list_body.as_ref().map_or(0, |b| 8 + b.len());
    let riff_size = 4 + (8 + 16) + list_size + (8 + data_size);

    let mut out = Vec::with_capacity(8 + riff_size);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(riff_size as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");

    let rate = signal.sample_rate_hz();
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&FORMAT_PCM.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // mono
    out.extend_from_slice(&rate.to_le_bytes());
    out.extend_from_slice(&(rate * 2).to_le_bytes()); // byte rate
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes()); // bits per sample

    if let Some(body) = list_body {
        out.extend_from_slice(b"LIST");
        out.extend_from_slice(&(body.len() as u32).to_le_bytes());
        out.extend_from_slice(&body);
    }

    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_size as u32).to_le_bytes());
    for sample in signal.samples() {
        out.extend_from_slice(&sample.to_le_bytes());
    }
    out
}
