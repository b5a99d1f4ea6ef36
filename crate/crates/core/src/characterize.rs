//! Forbidden-pattern checkers for finite words.
//!
//! * Overlaps `BBb`, with `b` the first letter of `B`. Points of the Morse
//!   minimal set contain none.
//! * Squares `BB` where `B` holds an even number (zero included) of a
//!   designated letter. Points of the Toeplitz minimal set contain none when
//!   the designated letter is `0`.
//!
//! Both theorems speak about bilaterally infinite sequences. For finite words
//! only one direction carries over: every factor of the minimal set is
//! pattern-free, but a pattern-free word need not be a factor.
//!
//! Scans run one period at a time, tracking the length of the current run of
//! positions with `w[p] == w[p + period]`, which keeps the cost at
//! `O(len^2)`. Witnesses are the smallest start, then the smallest period.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::words::{Alphabet, Letter, Word};

/// Words longer than this are refused by the command-line front end.
pub const MAX_SCAN_LEN: usize = 1 << 16;

/// Longest word [`classify_word`] checks for factor membership by default.
pub const DEFAULT_FACTOR_BOUND: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    #[serde(rename = "overlap_BBb")]
    Overlap,
    #[serde(rename = "even_square_BB")]
    EvenSquare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PatternWitness {
    pub start: usize,
    pub half_length: usize,
    pub kind: PatternKind,
}

impl PatternWitness {
    /// Replays the witness against `w`. `zero` is only consulted for even squares.
    pub fn holds_in(&self, w: &[Letter], zero: Letter) -> bool {
        let (i, l) = (self.start, self.half_length);
        if l == 0 {
            return false;
        }
        let end = match self.kind {
            PatternKind::Overlap => i + 2 * l + 1,
            PatternKind::EvenSquare => i + 2 * l,
        };
        if end > w.len() || w[i..i + l] != w[i + l..i + 2 * l] {
            return false;
        }
        match self.kind {
            PatternKind::Overlap => w[i + 2 * l] == w[i],
            PatternKind::EvenSquare => w[i..i + l].iter().filter(|&&x| x == zero).count() % 2 == 0,
        }
    }
}

/// Smallest `(i, l)` with `w[i..i+l) == w[i+l..i+2l)` and `w[i+2l] == w[i]`.
pub fn find_overlap(w: &[Letter]) -> Option<PatternWitness> {
    let n = w.len();
    let mut best: Option<(usize, usize)> = None;
    let mut period = 1;
    while 2 * period < n {
        // an overlap needs period + 1 consecutive matching positions
        let mut run = 0;
        for p in 0..n - period {
            if let Some((bi, _)) = best {
                if p >= bi + period {
                    break;
                }
            }
            if w[p] == w[p + period] {
                run += 1;
                if run == period + 1 {
                    let start = p - period;
                    if best.is_none_or(|(bi, _)| start < bi) {
                        best = Some((start, period));
                    }
                    break;
                }
            } else {
                run = 0;
            }
        }
        period += 1;
    }
    best.map(|(start, half_length)| PatternWitness {
        start,
        half_length,
        kind: PatternKind::Overlap,
    })
}

/// Smallest `(i, l)` with `w[i..i+l) == w[i+l..i+2l)` and an even count of
/// `zero` in the first half.
pub fn find_even_square(
    w: &[Letter],
    zero: Letter,
    alphabet: &Alphabet,
) -> Result<Option<PatternWitness>> {
    if !alphabet.contains(zero) {
        return Err(Error::Domain(format!(
            "letter index {zero} is not in alphabet {alphabet}"
        )));
    }
    Ok(scan_even_square(w, zero))
}

pub(crate) fn scan_even_square(w: &[Letter], zero: Letter) -> Option<PatternWitness> {
    let n = w.len();
    let mut zeros = vec![0usize; n + 1];
    for (p, &x) in w.iter().enumerate() {
        zeros[p + 1] = zeros[p] + usize::from(x == zero);
    }
    let mut best: Option<(usize, usize)> = None;
    let mut period = 1;
    while 2 * period <= n {
        let mut run = 0;
        for p in 0..n - period {
            let Some(start) = (p + 1).checked_sub(period) else {
                run = if w[p] == w[p + period] { run + 1 } else { 0 };
                continue;
            };
            if best.is_some_and(|(bi, _)| start >= bi) {
                break;
            }
            run = if w[p] == w[p + period] { run + 1 } else { 0 };
            if run >= period && (zeros[start + period] - zeros[start]).is_multiple_of(2) {
                best = Some((start, period));
                break;
            }
        }
        period += 1;
    }
    best.map(|(start, half_length)| PatternWitness {
        start,
        half_length,
        kind: PatternKind::EvenSquare,
    })
}

/// Outcome of a factor-membership check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorCheck {
    Yes,
    No,
    Unchecked,
}

/// Joint report on a binary word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordReport {
    pub overlap_free: bool,
    pub overlap: Option<PatternWitness>,
    pub toeplitz_admissible: bool,
    pub even_square: Option<PatternWitness>,
    pub morse_factor: FactorCheck,
    pub toeplitz_factor: FactorCheck,
}

/// Runs both checkers on a word over `{0, 1}` (letter 0 is the designated
/// "zero") and tests membership in the Morse and Toeplitz languages when the
/// word has at most `factor_bound` letters.
pub fn classify_word(w: &Word, alphabet: &Alphabet, factor_bound: usize) -> Result<WordReport> {
    if !alphabet.is_binary() {
        return Err(Error::Domain(format!(
            "classification needs a binary alphabet, got {alphabet}"
        )));
    }
    alphabet.check(w)?;
    let overlap = find_overlap(w);
    let even_square = scan_even_square(w, 0);
    let factor = |s: Substitution| -> Result<FactorCheck> {
        if w.len() > factor_bound {
            return Ok(FactorCheck::Unchecked);
        }
        if w.is_empty() {
            return Ok(FactorCheck::Yes);
        }
        Ok(if s.language(w.len())?.contains(w) {
            FactorCheck::Yes
        } else {
            FactorCheck::No
        })
    };
    Ok(WordReport {
        overlap_free: overlap.is_none(),
        overlap,
        toeplitz_admissible: even_square.is_none(),
        even_square,
        morse_factor: factor(Substitution::morse())?,
        toeplitz_factor: factor(Substitution::toeplitz())?,
    })
}
