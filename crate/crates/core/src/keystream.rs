//! Deterministic key expansion from a three-prime seed.
//!
//! The generator is a small integer recurrence over a state (p, q, m):
//!
//! ```text
//! k  = (p * q) mod 10        (k == 0 becomes 1)
//! p' = (k + 1) * m
//! q' = round(p / q) + position of the current sample
//! ```
//!
//! Division rounds half away from zero; a q' of zero is remapped to 1 so the
//! next division is always defined. One step is taken per frame to advance
//! the state, and 160 further steps expand each frame's key, making every
//! frame key a pure function of (seed, frame index).
//!
//! This is NOT a vetted cipher. The emitted values never include 0, the
//! state is tiny, and no security analysis exists; treat the scrambling as
//! tamper-evidence and obfuscation, not cryptography.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KeyError {
    #[error("{component} = {value} is not prime")]
    NotPrime { component: SeedComponent, value: u64 },
    #[error("seed file: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedComponent {
    P,
    Q,
    M,
}

impl fmt::Display for SeedComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeedComponent::P => "p",
            SeedComponent::Q => "q",
            SeedComponent::M => "m",
        })
    }
}

/// Three primes seeding the recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeySeed {
    p: u64,
    q: u64,
    m: u64,
}

impl KeySeed {
    pub fn new(p: u64, q: u64, m: u64) -> Result<Self, KeyError> {
        validate_seed(p, q, m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Parse the seed file format: `p = <n>`, `q = <n>`, `m = <n>` lines
    /// (TOML-compatible; `#` comments and blank lines allowed).
    pub fn parse(text: &str) -> Result<Self, KeyError> {
        let mut p = None;
        let mut q = None;
        let mut m = None;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, value) = line
                .split_once('=')
                .ok_or_else(|| KeyError::Parse(format!("expected `name = value`, got {line:?}")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| KeyError::Parse(format!("bad integer in {line:?}")))?;
            match name.trim() {
                "p" => p = Some(value),
                "q" => q = Some(value),
                "m" => m = Some(value),
                other => return Err(KeyError::Parse(format!("unknown field {other:?}"))),
            }
        }
        let missing = |name| KeyError::Parse(format!("missing field {name:?}"));
        validate_seed(
            p.ok_or_else(|| missing("p"))?,
            q.ok_or_else(|| missing("q"))?,
            m.ok_or_else(|| missing("m"))?,
        )
    }

    /// Render in the seed file format parsed by [`KeySeed::parse`].
    pub fn to_text(&self) -> String {
        format!("p = {}\nq = {}\nm = {}\n", self.p, self.q, self.m)
    }
}

/// Check all three values for primality by trial division and build a seed.
pub fn validate_seed(p: u64, q: u64, m: u64) -> Result<KeySeed, KeyError> {
    for (component, value) in [
        (SeedComponent::P, p),
        (SeedComponent::Q, q),
        (SeedComponent::M, m),
    ] {
        if !is_prime(value) {
            return Err(KeyError::NotPrime { component, value });
        }
    }
    Ok(KeySeed { p, q, m })
}

/// Deterministic trial division; seeds are small config values.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Smallest prime >= n. Used by passphrase-derived key generation.
pub fn next_prime(n: u64) -> u64 {
    let mut candidate = n.max(2);
    while !is_prime(candidate) {
        candidate += 1;
    }
    candidate
}

/// Running state of the recurrence. `k` is the digit emitted by the most
/// recent step (1 before any step has run).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyState {
    p: u64,
    q: u64,
    m: u64,
    k: u8,
}

impl KeyState {
    pub fn from_seed(seed: &KeySeed) -> Self {
        Self {
            p: seed.p,
            q: seed.q,
            m: seed.m,
            k: 1,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> u8 {
        self.k
    }
}

/// One step of the recurrence at sample position `pos`. Returns the new
/// state and the emitted digit, always in 1..=9.
///
/// Panics on u64 overflow rather than wrapping; with any realistic seed the
/// state is bounded well inside u64 (p never exceeds 10 * m after the first
/// step).
pub fn step(state: KeyState, pos: u64) -> (KeyState, u8) {
    let k = ((state.p % 10) * (state.q % 10)) % 10;
    let k = if k == 0 { 1 } else { k as u8 };
    let p_new = u64::from(k + 1)
        .checked_mul(state.m)
        .expect("keystream state overflow in p");
    let q_new = round_div(state.p, state.q)
        .checked_add(pos)
        .expect("keystream state overflow in q");
    let q_new = if q_new == 0 { 1 } else { q_new };
    (
        KeyState {
            p: p_new,
            q: q_new,
            m: state.m,
            k,
        },
        k,
    )
}

/// p / q rounded half away from zero (operands are positive).
fn round_div(p: u64, q: u64) -> u64 {
    ((2 * u128::from(p) + u128::from(q)) / (2 * u128::from(q))) as u64
}

/// Per-frame key: one emitted digit per sample position plus its parity bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameKey {
    frame_index: usize,
    values: Vec<u8>,
    bits: Vec<bool>,
}

impl FrameKey {
    pub fn frame_index(&self) -> usize {
        self.frame_index
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[cfg(test)]
    pub(crate) fn test_only_new(frame_index: usize, values: Vec<u8>, bits: Vec<bool>) -> Self {
        Self {
            frame_index,
            values,
            bits,
        }
    }
}

/// Key for one frame, generated random-access: the state is advanced once
/// per preceding frame (at that frame's first sample position), then
/// `frame_length` expansion steps run at the frame's own sample positions.
/// Identical to what sequential generation via [`FrameKeyStream`] yields.
pub fn frame_key(seed: &KeySeed, frame_index: usize, frame_length: usize) -> FrameKey {
    let mut state = KeyState::from_seed(seed);
    for i in 0..frame_index {
        state = step(state, (i * frame_length) as u64).0;
    }
    expand_frame(state, frame_index, frame_length)
}

fn expand_frame(state: KeyState, frame_index: usize, frame_length: usize) -> FrameKey {
    let base = frame_index as u64 * frame_length as u64;
    let mut values = Vec::with_capacity(frame_length);
    let mut inner = state;
    for j in 0..frame_length {
        let (next, k) = step(inner, base + j as u64);
        inner = next;
        values.push(k);
    }
    let bits = values.iter().map(|&v| v % 2 == 1).collect();
    FrameKey {
        frame_index,
        values,
        bits,
    }
}

/// Sequential frame-key generator; equivalent to calling [`frame_key`] for
/// 0, 1, 2, ... but without re-advancing the chain each time.
pub struct FrameKeyStream {
    state: KeyState,
    next_frame: usize,
    frame_length: usize,
}

impl FrameKeyStream {
    pub fn new(seed: &KeySeed, frame_length: usize) -> Self {
        Self {
            state: KeyState::from_seed(seed),
            next_frame: 0,
            frame_length,
        }
    }
}

impl Iterator for FrameKeyStream {
    type Item = FrameKey;

    fn next(&mut self) -> Option<FrameKey> {
        let key = expand_frame(self.state, self.next_frame, self.frame_length);
        self.state = step(
            self.state,
            (self.next_frame * self.frame_length) as u64,
        )
        .0;
        self.next_frame += 1;
        Some(key)
    }
}
