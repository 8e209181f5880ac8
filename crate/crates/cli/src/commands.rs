//! Implementations behind the CLI subcommands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use framesteg::cipher::{decrypt_signal, encrypt_signal, CipherMode};
use framesteg::keystream::{next_prime, validate_seed, KeySeed};
use framesteg::metrics;
use framesteg::noise::add_noise_with_rng;
use framesteg::payload::{parse_payload_file, PayloadDigits, StegoConfig};
use framesteg::signal::{assemble, frame_signal, FrameSet, SpeechSignal};
use framesteg::silence::{detect_silence, embed_silence, removal_plan};
use framesteg::stego::{capacity, digits_to_bits, embed, extract, verify};
use framesteg::synth::{corpus_duration_samples, speech_like};
use framesteg::wav::{load_wav, save_wav, save_wav_with_comment};

use crate::error::CmdError;
use crate::report::{
    aggregate, write_records_jsonl, write_records_table, EmbedReport, EvalRecord, SendReport,
    StageReport, METHOD_PROPOSED, METHOD_SILENCE,
};

const EXPECTED_SAMPLE_RATE: u32 = 8000;

fn load_carrier(path: &Path, cfg: &StegoConfig) -> Result<(SpeechSignal, FrameSet), CmdError> {
    let signal = load_wav(path)?;
    if signal.sample_rate_hz() != EXPECTED_SAMPLE_RATE {
        eprintln!(
            "warning: {} is sampled at {} Hz, not {} Hz; the frame length stays {} samples",
            path.display(),
            signal.sample_rate_hz(),
            EXPECTED_SAMPLE_RATE,
            cfg.frame_length
        );
    }
    let frames = frame_signal(&signal, cfg.frame_length)?;
    Ok((signal, frames))
}

fn comment_for(mode: CipherMode, cfg: &StegoConfig) -> String {
    let mut letters = String::new();
    if mode.scramble {
        letters.push('s');
    }
    if mode.mask {
        letters.push('m');
    }
    format!(
        "mode={letters} L={} slots={} v=1",
        cfg.frame_length, cfg.slots_per_frame
    )
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("report serializes"));
}

pub fn keygen(
    passphrase: Option<&str>,
    primes: Option<(u64, u64, u64)>,
    out: Option<&Path>,
) -> Result<(), CmdError> {
    let seed = match (passphrase, primes) {
        (Some(phrase), None) => seed_from_passphrase(phrase),
        (None, Some((p, q, m))) => validate_seed(p, q, m)?,
        _ => {
            return Err(CmdError::Usage(
                "provide either --passphrase or all of --p, --q, --m".to_string(),
            ))
        }
    };
    if let Some(path) = out {
        fs::write(path, seed.to_text())?;
    }
    print!("{}", seed.to_text());
    Ok(())
}

/// Derive three primes from a passphrase: hash it, carve the digest into
/// three integers, and search upward for the next prime of each.
fn seed_from_passphrase(passphrase: &str) -> KeySeed {
    let digest = Sha256::digest(passphrase.as_bytes());
    let carve = |from: usize| {
        let mut bytes = [0u8; 8];
        bytes.copy_from_slice(&digest[from..from + 8]);
        1_000 + u64::from_le_bytes(bytes) % 10_000_000
    };
    validate_seed(
        next_prime(carve(0)),
        next_prime(carve(8)),
        next_prime(carve(16)),
    )
    .expect("next_prime outputs are prime")
}

pub fn embed_cmd(
    cover: &Path,
    payload: &Path,
    out: &Path,
    cfg: &StegoConfig,
) -> Result<(), CmdError> {
    let payloads = parse_payload_file(&fs::read_to_string(payload)?)?;
    let (_, frames) = load_carrier(cover, cfg)?;
    let result = embed(&frames, &payloads, cfg)?;
    save_wav(&assemble(&result.stego_frames), out)?;
    print_json(&EmbedReport {
        out: out.display().to_string(),
        capacity: capacity(&frames),
        embedded_count: result.embedded_count,
    });
    Ok(())
}

pub fn extract_cmd(input: &Path, count: usize, cfg: &StegoConfig) -> Result<(), CmdError> {
    let (_, frames) = load_carrier(input, cfg)?;
    for payload in extract(&frames, count, cfg)? {
        println!("{payload}");
    }
    Ok(())
}

pub fn encrypt_cmd(
    input: &Path,
    out: &Path,
    seed: &KeySeed,
    mode: CipherMode,
    cfg: &StegoConfig,
) -> Result<(), CmdError> {
    let (_, frames) = load_carrier(input, cfg)?;
    let encrypted = encrypt_signal(&frames, seed, mode)?;
    save_wav_with_comment(&assemble(&encrypted), out, &comment_for(mode, cfg))?;
    print_json(&StageReport {
        out: out.display().to_string(),
        frames: encrypted.frame_count(),
        tail_samples: encrypted.tail().len(),
    });
    Ok(())
}

pub fn decrypt_cmd(
    input: &Path,
    out: &Path,
    seed: &KeySeed,
    mode: CipherMode,
    cfg: &StegoConfig,
) -> Result<(), CmdError> {
    let (_, frames) = load_carrier(input, cfg)?;
    let decrypted = decrypt_signal(&frames, seed, mode)?;
    save_wav(&assemble(&decrypted), out)?;
    print_json(&StageReport {
        out: out.display().to_string(),
        frames: decrypted.frame_count(),
        tail_samples: decrypted.tail().len(),
    });
    Ok(())
}

pub fn send_cmd(
    cover: &Path,
    payload: &Path,
    out: &Path,
    seed: &KeySeed,
    mode: CipherMode,
    cfg: &StegoConfig,
) -> Result<(), CmdError> {
    let payloads = parse_payload_file(&fs::read_to_string(payload)?)?;
    let (cover_signal, frames) = load_carrier(cover, cfg)?;

    let result = embed(&frames, &payloads, cfg)?;
    let stego_signal = assemble(&result.stego_frames);
    let encrypted = encrypt_signal(&result.stego_frames, seed, mode)?;
    save_wav_with_comment(&assemble(&encrypted), out, &comment_for(mode, cfg))?;

    print_json(&SendReport {
        out: out.display().to_string(),
        capacity: capacity(&frames),
        embedded_count: result.embedded_count,
        mse: metrics::mse(&cover_signal, &stego_signal)?,
        psnr_db: metrics::psnr(&cover_signal, &stego_signal)?,
        ssim: metrics::ssim(&cover_signal, &stego_signal)?,
    });
    Ok(())
}

pub fn receive_cmd(
    input: &Path,
    count: usize,
    expected: Option<&Path>,
    seed: &KeySeed,
    mode: CipherMode,
    cfg: &StegoConfig,
) -> Result<(), CmdError> {
    let (_, frames) = load_carrier(input, cfg)?;
    let decrypted = decrypt_signal(&frames, seed, mode)?;
    let received = extract(&decrypted, count, cfg)?;
    for payload in &received {
        println!("{payload}");
    }

    if let Some(expected_path) = expected {
        let sent = parse_payload_file(&fs::read_to_string(expected_path)?)?;
        let report = verify(&sent, &received)?;
        print_json(&report);
        if !report.matched {
            return Err(CmdError::Mismatch);
        }
    }
    Ok(())
}

pub struct EvaluateOptions {
    pub payloads_per_file: usize,
    pub snr_db: f64,
    pub rng_seed: u64,
    pub silence_threshold: f64,
    pub min_interval: usize,
    pub table: bool,
    pub output: Option<PathBuf>,
}

pub fn evaluate_cmd(
    corpus: &Path,
    seed: &KeySeed,
    mode: CipherMode,
    cfg: &StegoConfig,
    opts: &EvaluateOptions,
) -> Result<(), CmdError> {
    let mut files: Vec<PathBuf> = fs::read_dir(corpus)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|path| {
            path.extension()
                .is_some_and(|ext| ext.eq_ignore_ascii_case("wav"))
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CmdError::Format(format!(
            "no WAV files found in {}",
            corpus.display()
        )));
    }

    // One deterministic stream drives payload generation and the noise pass;
    // files are processed in sorted order so runs are reproducible.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
    let mut records = Vec::new();
    for path in &files {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let (cover, frames) = load_carrier(path, cfg)?;
        if frames.frame_count() == 0 {
            eprintln!("warning: {name} is shorter than one frame, skipping");
            continue;
        }

        records.push(evaluate_proposed(&name, &cover, &frames, seed, mode, cfg, opts, &mut rng)?);
        records.push(evaluate_baseline(&name, &cover, opts, &mut rng)?);
    }

    let mut all = records.clone();
    all.extend(aggregate(&records, METHOD_PROPOSED));
    all.extend(aggregate(&records, METHOD_SILENCE));

    match &opts.output {
        Some(path) => {
            let mut file = fs::File::create(path)?;
            emit(&mut file, &all, opts.table)?;
        }
        None => {
            let stdout = std::io::stdout();
            emit(&mut stdout.lock(), &all, opts.table)?;
        }
    }
    Ok(())
}

fn emit<W: Write>(out: &mut W, records: &[EvalRecord], table: bool) -> std::io::Result<()> {
    if table {
        write_records_table(out, records)
    } else {
        write_records_jsonl(out, records)
    }
}

#[allow(clippy::too_many_arguments)]
fn evaluate_proposed(
    name: &str,
    cover: &SpeechSignal,
    frames: &FrameSet,
    seed: &KeySeed,
    mode: CipherMode,
    cfg: &StegoConfig,
    opts: &EvaluateOptions,
    rng: &mut ChaCha8Rng,
) -> Result<EvalRecord, CmdError> {
    let count = opts.payloads_per_file.min(capacity(frames)).max(1);
    let payloads: Vec<PayloadDigits> = (0..count)
        .map(|_| {
            let mut digits = [0u8; 10];
            for d in &mut digits {
                *d = rng.random_range(0..=9);
            }
            PayloadDigits::new(digits).expect("digits in range")
        })
        .collect();

    let stego = embed(frames, &payloads, cfg)?.stego_frames;
    let stego_signal = assemble(&stego);
    let transmitted = encrypt_signal(&stego, seed, mode)?;

    // Clean channel: decrypt and extract from the transmitted signal as-is.
    let received = extract(&decrypt_signal(&transmitted, seed, mode)?, count, cfg)?;
    let report = verify(&payloads, &received)?;

    Ok(EvalRecord {
        file: name.to_string(),
        method: METHOD_PROPOSED,
        mse: metrics::mse(cover, &stego_signal)?,
        psnr_db: metrics::psnr(cover, &stego_signal)?,
        ssim: metrics::ssim(cover, &stego_signal)?,
        ber_percent: report.ber_percent,
    })
}

fn evaluate_baseline(
    name: &str,
    cover: &SpeechSignal,
    opts: &EvaluateOptions,
    rng: &mut ChaCha8Rng,
) -> Result<EvalRecord, CmdError> {
    let intervals = detect_silence(cover, opts.silence_threshold, opts.min_interval);
    if intervals.is_empty() {
        eprintln!("warning: {name} has no usable silence intervals; baseline marked as total loss");
        return Ok(EvalRecord {
            file: name.to_string(),
            method: METHOD_SILENCE,
            mse: 0.0,
            psnr_db: f64::INFINITY,
            ssim: 1.0,
            ber_percent: 100.0,
        });
    }

    let digits: Vec<u8> = (0..intervals.len().min(opts.payloads_per_file.max(1) * 10))
        .map(|_| rng.random_range(0..=9))
        .collect();
    let stego = embed_silence(cover, &digits, opts.silence_threshold, opts.min_interval)?;

    // Fidelity is measured on a length-aligned view: the samples the
    // truncation removes are zeroed in place instead, so cover and stego
    // stay sample-aligned outside the embedded intervals.
    let mut aligned = cover.samples().to_vec();
    for (start, len) in removal_plan(&intervals, &digits) {
        for sample in &mut aligned[start..start + len] {
            *sample = 0;
        }
    }
    let aligned = SpeechSignal::new(aligned, cover.sample_rate_hz());

    // The channel adds noise at the configured SNR; extraction is defensive
    // so BER stays defined even when interval detection falls apart.
    let noisy = add_noise_with_rng(&stego, opts.snr_db, rng);
    let found = detect_silence(&noisy, opts.silence_threshold, opts.min_interval);
    let mut recovered = vec![0u8; digits.len()];
    for (slot, interval) in recovered.iter_mut().zip(&found) {
        *slot = (interval.length % 10) as u8;
    }

    let sent_bits = digits_to_bits(&digits);
    let got_bits = digits_to_bits(&recovered);
    let ber = metrics::ber(&sent_bits, &got_bits)?;

    Ok(EvalRecord {
        file: name.to_string(),
        method: METHOD_SILENCE,
        mse: metrics::mse(cover, &aligned)?,
        psnr_db: metrics::psnr(cover, &aligned)?,
        ssim: metrics::ssim(cover, &aligned)?,
        ber_percent: ber,
    })
}

pub fn synth_cmd(
    out_dir: &Path,
    count: usize,
    sample_rate: u32,
    seed: u64,
) -> Result<(), CmdError> {
    fs::create_dir_all(out_dir)?;
    for index in 0..count {
        let file_seed = seed.wrapping_add(index as u64);
        let samples = corpus_duration_samples(sample_rate, file_seed);
        let signal = speech_like(sample_rate, samples, file_seed);
        let path = out_dir.join(format!("synth_{index:02}.wav"));
        save_wav(&signal, &path)?;
        println!("{}", path.display());
    }
    Ok(())
}
