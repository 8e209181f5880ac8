//! framesteg: hide ten-digit numbers in speech audio, scramble the result
//! with a keyed frame cipher, and evaluate fidelity and payload integrity.

mod commands;
mod error;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use framesteg::cipher::CipherMode;
use framesteg::keystream::{validate_seed, KeySeed};
use framesteg::payload::StegoConfig;
use framesteg::silence::{DEFAULT_MIN_INTERVAL, DEFAULT_SILENCE_THRESHOLD};

use commands::EvaluateOptions;
use error::CmdError;

#[derive(Parser)]
#[command(
    name = "framesteg",
    version,
    about = "Hide ten-digit numbers in speech audio with per-frame embedding and keyed scrambling",
    after_help = "Exit codes: 0 success/match, 1 verification failure, 2 usage error, 3 I/O or format error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Samples per frame
    #[arg(long, default_value_t = 160)]
    frame_length: usize,

    /// Embedding slots per frame (one digit each)
    #[arg(long, default_value_t = 10)]
    slots: usize,

    /// Scaling divisor: digit d embeds as d/divisor of full scale
    #[arg(long, default_value_t = 1000)]
    divisor: u32,
}

impl ConfigArgs {
    fn build(&self) -> Result<StegoConfig, CmdError> {
        let mut cfg = StegoConfig::with_frame_length(self.frame_length);
        cfg.slots_per_frame = self.slots;
        cfg.slot_offset = self.frame_length.saturating_sub(self.slots);
        cfg.divisor = self.divisor;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct SeedArgs {
    /// Seed file with fields p, q, m (see `keygen`)
    #[arg(long, env = "FRAMESTEG_SEED", value_name = "PATH")]
    seed: Option<PathBuf>,

    /// Seed prime p (with --q and --m, instead of --seed)
    #[arg(long, value_name = "PRIME")]
    p: Option<u64>,

    /// Seed prime q
    #[arg(long, value_name = "PRIME")]
    q: Option<u64>,

    /// Seed prime m
    #[arg(long, value_name = "PRIME")]
    m: Option<u64>,
}

impl SeedArgs {
    fn resolve(&self) -> Result<KeySeed, CmdError> {
        match (self.p, self.q, self.m, &self.seed) {
            (Some(p), Some(q), Some(m), _) => Ok(validate_seed(p, q, m)?),
            (None, None, None, Some(path)) => Ok(KeySeed::parse(&fs::read_to_string(path)?)?),
            (None, None, None, None) => Err(CmdError::Usage(
                "no key given: pass --seed FILE (or set FRAMESTEG_SEED) or all of --p, --q, --m"
                    .to_string(),
            )),
            _ => Err(CmdError::Usage(
                "give either --seed FILE or all three of --p, --q, --m".to_string(),
            )),
        }
    }
}

#[derive(Args)]
struct ModeArgs {
    /// Disable the keyed in-frame permutation
    #[arg(long)]
    no_scramble: bool,

    /// Disable the modular additive mask
    #[arg(long)]
    no_mask: bool,
}

impl ModeArgs {
    fn build(&self) -> Result<CipherMode, CmdError> {
        Ok(CipherMode::new(!self.no_scramble, !self.no_mask)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Create a seed of three primes, from a passphrase or given directly
    Keygen {
        /// Derive the primes deterministically from a passphrase
        #[arg(long, conflicts_with_all = ["p", "q", "m"])]
        passphrase: Option<String>,
        #[arg(long, requires_all = ["q", "m"])]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        /// Write the seed file here as well as printing it
        #[arg(long, short = 'o', value_name = "PATH")]
        out: Option<PathBuf>,
    },

    /// Embed payloads into a cover signal (no encryption)
    Embed {
        cover: PathBuf,
        /// Payload file: one ten-digit number per line
        payload: PathBuf,
        out: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },

    /// Extract payloads from a stego signal (no decryption)
    Extract {
        input: PathBuf,
        /// How many payloads to read (one per frame, from the start)
        #[arg(long)]
        count: usize,
        #[command(flatten)]
        config: ConfigArgs,
    },

    /// Encrypt a signal frame-by-frame with the keyed cipher
    Encrypt {
        input: PathBuf,
        out: PathBuf,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        config: ConfigArgs,
    },

    /// Decrypt a signal encrypted with the same seed and mode
    Decrypt {
        input: PathBuf,
        out: PathBuf,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        config: ConfigArgs,
    },

    /// Embed then encrypt: the full transmit path, with a fidelity report
    Send {
        cover: PathBuf,
        payload: PathBuf,
        out: PathBuf,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        config: ConfigArgs,
    },

    /// Decrypt then extract; optionally verify against expected payloads
    Receive {
        input: PathBuf,
        /// How many payloads to extract
        #[arg(long)]
        count: usize,
        /// Expected payload file; exit 1 if the extraction does not match
        #[arg(long, value_name = "PATH")]
        expected: Option<PathBuf>,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        config: ConfigArgs,
    },

    /// Run both methods over a corpus directory and report per-file metrics
    Evaluate {
        /// Directory of WAV files
        corpus: PathBuf,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        config: ConfigArgs,
        /// Payloads embedded per file (capped at capacity)
        #[arg(long, default_value_t = 10)]
        payloads: usize,
        /// SNR of the additive-noise pass applied to the baseline channel
        #[arg(long, default_value_t = 40.0)]
        snr_db: f64,
        /// RNG seed for payload generation and the noise pass
        #[arg(long, default_value_t = 42)]
        rng_seed: u64,
        /// Silence detection threshold (fraction of full scale)
        #[arg(long, default_value_t = DEFAULT_SILENCE_THRESHOLD)]
        silence_threshold: f64,
        /// Minimum silence interval length in samples
        #[arg(long, default_value_t = DEFAULT_MIN_INTERVAL)]
        min_interval: usize,
        /// Human-readable table instead of JSON lines
        #[arg(long)]
        table: bool,
        /// Write the report here instead of stdout
        #[arg(long, short = 'o', value_name = "PATH")]
        output: Option<PathBuf>,
    },

    /// Generate a synthetic speech-like test corpus
    Synth {
        out_dir: PathBuf,
        /// Number of files to generate
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 8000)]
        sample_rate: u32,
        /// Base RNG seed; file i uses seed + i
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<(), CmdError> {
    match cli.command {
        Command::Keygen {
            passphrase,
            p,
            q,
            m,
            out,
        } => {
            let primes = match (p, q, m) {
                (Some(p), Some(q), Some(m)) => Some((p, q, m)),
                _ => None,
            };
            commands::keygen(passphrase.as_deref(), primes, out.as_deref())
        }
        Command::Embed {
            cover,
            payload,
            out,
            config,
        } => commands::embed_cmd(&cover, &payload, &out, &config.build()?),
        Command::Extract {
            input,
            count,
            config,
        } => commands::extract_cmd(&input, count, &config.build()?),
        Command::Encrypt {
            input,
            out,
            seed,
            mode,
            config,
        } => commands::encrypt_cmd(&input, &out, &seed.resolve()?, mode.build()?, &config.build()?),
        Command::Decrypt {
            input,
            out,
            seed,
            mode,
            config,
        } => commands::decrypt_cmd(&input, &out, &seed.resolve()?, mode.build()?, &config.build()?),
        Command::Send {
            cover,
            payload,
            out,
            seed,
            mode,
            config,
        } => commands::send_cmd(
            &cover,
            &payload,
            &out,
            &seed.resolve()?,
            mode.build()?,
            &config.build()?,
        ),
        Command::Receive {
            input,
            count,
            expected,
            seed,
            mode,
            config,
        } => commands::receive_cmd(
            &input,
            count,
            expected.as_deref(),
            &seed.resolve()?,
            mode.build()?,
            &config.build()?,
        ),
        Command::Evaluate {
            corpus,
            seed,
            mode,
            config,
            payloads,
            snr_db,
            rng_seed,
            silence_threshold,
            min_interval,
            table,
            output,
        } => commands::evaluate_cmd(
            &corpus,
            &seed.resolve()?,
            mode.build()?,
            &config.build()?,
            &EvaluateOptions {
                payloads_per_file: payloads,
                snr_db,
                rng_seed,
                silence_threshold,
                min_interval,
                table,
                output,
            },
        ),
        Command::Synth {
            out_dir,
            count,
            sample_rate,
            seed,
        } => commands::synth_cmd(&out_dir, count, sample_rate, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
