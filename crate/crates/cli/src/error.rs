//! Error-to-exit-code mapping. The contract is stable for scripting:
//! 0 success / payloads matched, 1 verification failure, 2 usage error,
//! 3 I/O or input format error.

use std::fmt;
use std::io;

use framesteg::cipher::CipherError;
use framesteg::keystream::KeyError;
use framesteg::metrics::MetricError;
use framesteg::payload::{ConfigError, PayloadError};
use framesteg::signal::FrameError;
use framesteg::silence::SilenceError;
use framesteg::stego::StegoError;
use framesteg::wav::WavError;

#[derive(Debug)]
pub enum CmdError {
    /// Bad flags or parameter combinations (exit 2).
    Usage(String),
    /// Extracted payloads did not match the expected ones (exit 1).
    Mismatch,
    /// Input file contents could not be used (exit 3).
    Format(String),
    /// Filesystem failure (exit 3).
    Io(io::Error),
}

impl CmdError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CmdError::Mismatch => 1,
            CmdError::Usage(_) => 2,
            CmdError::Format(_) | CmdError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmdError::Usage(msg) => write!(f, "{msg}"),
            CmdError::Mismatch => write!(f, "extracted payloads do not match the expected ones"),
            CmdError::Format(msg) => write!(f, "{msg}"),
            CmdError::Io(err) => write!(f, "{err}"),
        }
    }
}

impl From<io::Error> for CmdError {
    fn from(err: io::Error) -> Self {
        CmdError::Io(err)
    }
}

impl From<WavError> for CmdError {
    fn from(err: WavError) -> Self {
        match err {
            WavError::Io(inner) => CmdError::Io(inner),
            other => CmdError::Format(other.to_string()),
        }
    }
}

impl From<PayloadError> for CmdError {
    fn from(err: PayloadError) -> Self {
        CmdError::Format(err.to_string())
    }
}

impl From<KeyError> for CmdError {
    fn from(err: KeyError) -> Self {
        match err {
            KeyError::NotPrime { .. } => CmdError::Usage(err.to_string()),
            KeyError::Parse(_) => CmdError::Format(err.to_string()),
        }
    }
}

impl From<ConfigError> for CmdError {
    fn from(err: ConfigError) -> Self {
        CmdError::Usage(err.to_string())
    }
}

impl From<FrameError> for CmdError {
    fn from(err: FrameError) -> Self {
        CmdError::Usage(err.to_string())
    }
}

impl From<StegoError> for CmdError {
    fn from(err: StegoError) -> Self {
        CmdError::Usage(err.to_string())
    }
}

impl From<CipherError> for CmdError {
    fn from(err: CipherError) -> Self {
        CmdError::Usage(err.to_string())
    }
}

impl From<MetricError> for CmdError {
    fn from(err: MetricError) -> Self {
        CmdError::Format(err.to_string())
    }
}

impl From<SilenceError> for CmdError {
    fn from(err: SilenceError) -> Self {
        CmdError::Format(err.to_string())
    }
}
