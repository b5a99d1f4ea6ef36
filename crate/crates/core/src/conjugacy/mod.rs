//! Conjugacy certificates for the Toeplitz and Morse minimal sets.
//!
//! A Toeplitz certificate is a pair of distinct `2^k`-blocks `C0, C1` such
//! that points of the candidate system cut (at a single phase) into `C0`/`C1`
//! tokens, and the token sequence has no square `BB` with an even number of
//! `C0` in `B`. A Morse certificate adds gap blocks `C0'`, `C1'`: every second
//! token is `C0` or `C1` and forms an overlap-free sequence, and each token in
//! between is fixed by its ordered pair of neighbours:
//!
//! | left | right | gap  |
//! |------|-------|------|
//! | C1   | C1    | C0   |
//! | C0   | C0    | C1   |
//! | C1   | C0    | C0'  |
//! | C0   | C1    | C1'  |
//!
//! Verification is necessarily finite: windows of a fixed radius around every
//! periodic point of the minimal set, plus every language block of the same
//! length. An accepted verdict is evidence at that radius, not a proof.

mod derive;
mod recode;
mod search;
mod verify;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::words::{Alphabet, Tiling, Window, Word, MIN_TILES};

pub use derive::{
    derive_substitution, necessary_conditions, self_similarity_witness, DerivedSubstitution,
    NecessaryConditions, SelfSimilarity, TargetKind,
};
pub use recode::{recode_morse, recode_morse_tokens, recode_toeplitz, recode_toeplitz_tokens};
pub use search::{search_morse_certificate, search_toeplitz_certificate};
pub use verify::{
    check_morse_tokens, check_toeplitz_tokens, morse_roles, verify_morse_certificate,
    verify_toeplitz_certificate, Role,
};

/// Radius used for verification when none is given: `32 * 2^k`.
pub fn default_radius(k: u32) -> usize {
    32usize << k
}

/// Token words shorter than this may legitimately parse at several phases.
pub const PHASE_UNIQUENESS_MIN_TOKENS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToeplitzCertificate {
    pub k: u32,
    pub c0: Word,
    pub c1: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseCertificate {
    pub k: u32,
    pub c0: Word,
    pub c1: Word,
    pub c0p: Word,
    pub c1p: Word,
}

fn check_block_len(k: u32, blocks: &[&Word]) -> Result<usize> {
    let len = 1usize
        .checked_shl(k)
        .filter(|&l| l <= crate::substitution::DEFAULT_MAX_WORD_LEN)
        .ok_or_else(|| Error::Capacity(format!("block length 2^{k} is too large")))?;
    for b in blocks {
        if b.len() != len {
            return Err(Error::Domain(format!(
                "certificate block has length {}, expected 2^{k} = {len}",
                b.len()
            )));
        }
    }
    Ok(len)
}

impl ToeplitzCertificate {
    /// Checks block lengths only; `C0 == C1` is reported by verification.
    pub fn new(k: u32, c0: Word, c1: Word) -> Result<Self> {
        check_block_len(k, &[&c0, &c1])?;
        Ok(Self { k, c0, c1 })
    }

    pub fn block_len(&self) -> usize {
        1 << self.k
    }
}

impl MorseCertificate {
    pub fn new(k: u32, c0: Word, c1: Word, c0p: Word, c1p: Word) -> Result<Self> {
        check_block_len(k, &[&c0, &c1, &c0p, &c1p])?;
        Ok(Self {
            k,
            c0,
            c1,
            c0p,
            c1p,
        })
    }

    pub fn block_len(&self) -> usize {
        1 << self.k
    }

    /// Blocks in role order `C0, C1, C0', C1'`.
    pub fn blocks(&self) -> [&Word; 4] {
        [&self.c0, &self.c1, &self.c0p, &self.c1p]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Toeplitz(ToeplitzCertificate),
    Morse(MorseCertificate),
}

/// JSON form: `{"kind":"toeplitz","k":1,"C0":"21","C1":"00"}` or
/// `{"kind":"morse","k":0,"C0":"0","C1":"1","C0p":"0","C1p":"1"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CertificateFile {
    Toeplitz {
        k: u32,
        #[serde(rename = "C0")]
        c0: String,
        #[serde(rename = "C1")]
        c1: String,
    },
    Morse {
        k: u32,
        #[serde(rename = "C0")]
        c0: String,
        #[serde(rename = "C1")]
        c1: String,
        #[serde(rename = "C0p")]
        c0p: String,
        #[serde(rename = "C1p")]
        c1p: String,
    },
}

impl Certificate {
    pub fn k(&self) -> u32 {
        match self {
            Certificate::Toeplitz(c) => c.k,
            Certificate::Morse(c) => c.k,
        }
    }

    pub fn from_file(file: &CertificateFile, alphabet: &Alphabet) -> Result<Self> {
        Ok(match file {
            CertificateFile::Toeplitz { k, c0, c1 } => Certificate::Toeplitz(
                ToeplitzCertificate::new(*k, alphabet.parse_word(c0)?, alphabet.parse_word(c1)?)?,
            ),
            CertificateFile::Morse {
                k,
                c0,
                c1,
                c0p,
                c1p,
            } => Certificate::Morse(MorseCertificate::new(
                *k,
                alphabet.parse_word(c0)?,
                alphabet.parse_word(c1)?,
                alphabet.parse_word(c0p)?,
                alphabet.parse_word(c1p)?,
            )?),
        })
    }

    pub fn from_json(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let file: CertificateFile = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("certificate JSON: {e}")))?;
        Self::from_file(&file, alphabet)
    }

    pub fn to_file(&self, alphabet: &Alphabet) -> CertificateFile {
        match self {
            Certificate::Toeplitz(c) => CertificateFile::Toeplitz {
                k: c.k,
                c0: alphabet.render(&c.c0),
                c1: alphabet.render(&c.c1),
            },
            Certificate::Morse(c) => CertificateFile::Morse {
                k: c.k,
                c0: alphabet.render(&c.c0),
                c1: alphabet.render(&c.c1),
                c0p: alphabet.render(&c.c0p),
                c1p: alphabet.render(&c.c1p),
            },
        }
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> String {
        serde_json::to_string(&self.to_file(alphabet)).expect("certificate serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    NoPhase,
    MultiplePhases,
    TokenPattern,
    GapRule,
    BlocksEqual,
}

/// One phase parse of a window.
///
/// Token letters index the certificate blocks in role order (`0 = C0`,
/// `1 = C1`, and for Morse `2 = C0'`, `3 = C1'`); a tile equal to several
/// blocks takes the first role.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseParse {
    pub phase: usize,
    /// Bilateral index where the first token starts.
    pub offset: isize,
    #[serde(serialize_with = "serialize_tokens")]
    pub tokens: Word,
    /// Morse only: which token positions (mod 2) carry `C0`/`C1`.
    pub parity: Option<usize>,
}

fn serialize_tokens<S: serde::Serializer>(tokens: &Word, s: S) -> Result<S::Ok, S::Error> {
    let text: String = tokens
        .iter()
        .map(|&t| char::from_digit(u32::from(t), 10).unwrap_or('?'))
        .collect();
    s.serialize_str(&text)
}

impl From<Tiling> for PhaseParse {
    fn from(t: Tiling) -> Self {
        Self {
            phase: t.phase,
            offset: t.offset,
            tokens: t.tokens,
            parity: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseVerdict {
    pub kind: TargetKind,
    pub accepted: bool,
    pub radius: usize,
    pub windows_checked: usize,
    /// Parses of the primary window (the first periodic point sampled).
    pub phases: Vec<PhaseParse>,
    pub failure_reason: Option<FailureReason>,
    pub detail: Option<String>,
}

/// Anything that can supply finite excerpts of a minimal system.
pub trait SampleSource {
    fn alphabet(&self) -> &Alphabet;

    /// Windows of radius `radius`; the first one is the primary window.
    fn sample_windows(&self, radius: usize) -> Result<Vec<Window>>;

    /// The `n`-blocks of the system.
    fn blocks(&self, n: usize) -> Result<BTreeSet<Word>>;
}

impl SampleSource for Substitution {
    fn alphabet(&self) -> &Alphabet {
        Substitution::alphabet(self)
    }

    /// Central windows of every periodic point of the minimal set, then every
    /// `2 * radius`-block of the language centered at its midpoint.
    fn sample_windows(&self, radius: usize) -> Result<Vec<Window>> {
        let mut windows = Vec::new();
        for seed in self.minimal_seeds()? {
            windows.push(self.periodic_window(seed, radius)?);
        }
        if radius > 0 {
            for block in self.language(2 * radius)? {
                windows.push(Window::new(block, radius)?);
            }
        }
        Ok(windows)
    }

    fn blocks(&self, n: usize) -> Result<BTreeSet<Word>> {
        self.language(n)
    }
}

/// A system given only by sample windows, e.g. excerpts of a point computed
/// elsewhere. Its blocks are the factors of those windows.
#[derive(Debug, Clone)]
pub struct ExplicitSample {
    alphabet: Alphabet,
    windows: Vec<Window>,
}

impl ExplicitSample {
    pub fn new(alphabet: Alphabet, windows: Vec<Window>) -> Result<Self> {
        if windows.is_empty() {
            return Err(Error::Domain("an explicit sample needs a window".into()));
        }
        for w in &windows {
            alphabet.check(w.letters())?;
        }
        Ok(Self { alphabet, windows })
    }
}

impl SampleSource for ExplicitSample {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn sample_windows(&self, _radius: usize) -> Result<Vec<Window>> {
        Ok(self.windows.clone())
    }

    fn blocks(&self, n: usize) -> Result<BTreeSet<Word>> {
        let mut out = BTreeSet::new();
        for w in &self.windows {
            if n >= 1 && n <= w.len() {
                out.extend(w.letters().factors(n)?);
            }
        }
        Ok(out)
    }
}

/// Every phase at which `window` tiles exactly by `blocks` (all of length
/// `block_len`) with at least three tiles.
pub fn parse_phases(window: &Window, blocks: &[Word], block_len: usize) -> Result<Vec<Tiling>> {
    if block_len == 0 || blocks.iter().any(|b| b.len() != block_len) {
        return Err(Error::Domain(format!(
            "all blocks must have length {block_len}"
        )));
    }
    if window.len() < MIN_TILES * block_len {
        return Err(Error::InsufficientWindow(format!(
            "window of length {} holds fewer than {MIN_TILES} blocks of length {block_len}",
            window.len()
        )));
    }
    Ok(window.tilings(blocks, block_len))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_json_round_trip() {
        let a = Alphabet::new("012".chars()).unwrap();
        let text = r#"{"kind":"toeplitz","k":1,"C0":"21","C1":"00"}"#;
        let cert = Certificate::from_json(text, &a).unwrap();
        assert_eq!(cert.to_json(&a), text);
        let text = r#"{"kind":"morse","k":0,"C0":"0","C1":"1","C0p":"0","C1p":"1"}"#;
        let cert = Certificate::from_json(text, &Alphabet::binary()).unwrap();
        assert_eq!(cert.to_json(&Alphabet::binary()), text);
        assert!(
            Certificate::from_json(r#"{"kind":"toeplitz","k":1,"C0":"2","C1":"00"}"#, &a).is_err()
        );
        assert!(Certificate::from_json(r#"{"kind":"other","k":1}"#, &a).is_err());
    }

    #[test]
    fn parse_phases_examples() {
        let s = Substitution::parse("0->12;1->02;2->10").unwrap();
        let a = s.alphabet().clone();
        let seed = s.minimal_seeds().unwrap()[0];
        let win = s.periodic_window(seed, 16).unwrap();
        let blocks = [a.parse_word("21").unwrap(), a.parse_word("00").unwrap()];
        let parses = parse_phases(&win, &blocks, 2).unwrap();
        assert_eq!(parses.len(), 1);
        assert_eq!(parses[0].phase, 1);

        let mu = Substitution::morse();
        let win = mu.sample_windows(8).unwrap().remove(0);
        let b = Alphabet::binary();
        let blocks = [b.parse_word("01").unwrap(), b.parse_word("10").unwrap()];
        assert_eq!(parse_phases(&win, &blocks, 2).unwrap().len(), 1);

        let ones = b.parse_window("11111111").unwrap();
        assert!(parse_phases(&ones, &blocks, 2).unwrap().is_empty());
        assert!(matches!(
            parse_phases(&ones, &[b.parse_word("0").unwrap()], 2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn equal_blocks_parse_at_several_phases() {
        let b = Alphabet::binary();
        let w = b.parse_window("0101010101.0101010101").unwrap();
        let same = b.parse_word("0101").unwrap();
        let parses = parse_phases(&w, &[same.clone(), same], 4).unwrap();
        assert_eq!(parses.len(), 2);
    }
}
