//! The recodings onto the Toeplitz and Morse minimal sets.
//!
//! Toeplitz: `C0 -> tau^k(0)`, `C1 -> tau^k(1)`. Morse: `C0, C0' -> mu^k(0)`
//! and `C1, C1' -> mu^k(1)`, where a gap token is recoded by the role the
//! neighbour table gives it rather than by its raw block, so coinciding
//! blocks (say `C0' = C1`) cannot corrupt the output. A gap at the right edge
//! is still determined (its role depends only on the left neighbour's bit);
//! a gap at the left edge is dropped.

use super::verify::{check_morse_tokens, check_toeplitz_tokens};
use super::{MorseCertificate, ParseVerdict, TargetKind, ToeplitzCertificate};
use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::words::{Letter, Window, Word};

fn images(s: &Substitution, k: u32) -> Result<[Word; 2]> {
    let one = |a: Letter| -> Result<Word> {
        if k == 0 {
            Ok(Word::new(vec![a]))
        } else {
            s.power(k)?.apply(&[a])
        }
    };
    Ok([one(0)?, one(1)?])
}

fn expand(s: &Substitution, k: u32, bits: &[Letter]) -> Result<Word> {
    let [zero, one] = images(s, k)?;
    let mut out = Vec::with_capacity(bits.len() << k);
    for &b in bits {
        out.extend_from_slice(if b == 0 { &zero } else { &one });
    }
    Ok(Word::new(out))
}

/// Every `n`-factor of `w`, `n <= max_n`, must lie in the target language.
fn check_in_language(target: &Substitution, w: &Word, max_n: usize) -> Result<()> {
    for n in 1..=max_n.min(w.len()) {
        let lang = target.language(n)?;
        if let Some(bad) = w.factors(n)?.into_iter().find(|f| !lang.contains(f)) {
            return Err(Error::Consistency(format!(
                "recoded factor {} is outside the target language",
                target.alphabet().render(&bad)
            )));
        }
    }
    Ok(())
}

fn place(word: Word, offset: isize) -> Result<Window> {
    let origin = usize::try_from(-offset)
        .ok()
        .filter(|&o| o <= word.len())
        .ok_or_else(|| Error::Range(format!("token offset {offset} does not cover the origin")))?;
    Window::new(word, origin)
}

/// `Upsilon` on a Toeplitz token word (`0 = C0`, `1 = C1`).
pub fn recode_toeplitz_tokens(cert: &ToeplitzCertificate, tokens: &[Letter]) -> Result<Word> {
    if tokens.iter().any(|&t| t > 1) {
        return Err(Error::State("token word is not over {C0, C1}".into()));
    }
    if let Some(w) = check_toeplitz_tokens(tokens) {
        return Err(Error::State(format!(
            "tokens fail verification: even square at {} with half length {}",
            w.start, w.half_length
        )));
    }
    let tau = Substitution::toeplitz();
    let out = expand(&tau, cert.k, tokens)?;
    check_in_language(&tau, &out, cert.block_len() + 2)?;
    Ok(out)
}

fn accepted_phase(verdict: &ParseVerdict, kind: TargetKind) -> Result<&super::PhaseParse> {
    if verdict.kind != kind || !verdict.accepted || verdict.phases.len() != 1 {
        return Err(Error::State(format!(
            "recoding needs an accepted {kind:?} verdict"
        )));
    }
    Ok(&verdict.phases[0])
}

/// `Upsilon` on the primary window of an accepted verdict, placed at the same
/// bilateral positions.
pub fn recode_toeplitz(cert: &ToeplitzCertificate, verdict: &ParseVerdict) -> Result<Window> {
    let phase = accepted_phase(verdict, TargetKind::Toeplitz)?;
    place(recode_toeplitz_tokens(cert, &phase.tokens)?, phase.offset)
}

/// `Xi` on a Morse token word (role indices) at the given parity. Returns the
/// recoded word and the index of the first token it covers.
pub fn recode_morse_tokens(
    cert: &MorseCertificate,
    tokens: &[Letter],
    parity: usize,
) -> Result<(Word, usize)> {
    check_morse_tokens(cert, tokens, parity)
        .map_err(|(_, d)| Error::State(format!("tokens fail verification: {d}")))?;
    let bit = |t: Letter| -> Letter {
        if *cert.blocks()[usize::from(t)] == cert.c0 {
            0
        } else {
            1
        }
    };
    let first = if parity == 1 && !tokens.is_empty() {
        1
    } else {
        0
    };
    let mut bits = Vec::with_capacity(tokens.len());
    for i in first..tokens.len() {
        if i % 2 == parity {
            bits.push(bit(tokens[i]));
        } else {
            // C0 and C0' recode to 0, C1 and C1' to 1: the opposite of the left bit
            bits.push(1 - bit(tokens[i - 1]));
        }
    }
    let mu = Substitution::morse();
    let out = expand(&mu, cert.k, &bits)?;
    check_in_language(&mu, &out, cert.block_len() + 2)?;
    Ok((out, first))
}

/// `Xi` on the primary window of an accepted verdict.
pub fn recode_morse(cert: &MorseCertificate, verdict: &ParseVerdict) -> Result<Window> {
    let phase = accepted_phase(verdict, TargetKind::Morse)?;
    let parity = phase
        .parity
        .ok_or_else(|| Error::State("accepted Morse verdict without a parity".into()))?;
    let (word, first) = recode_morse_tokens(cert, &phase.tokens, parity)?;
    let offset = phase.offset + (first * cert.block_len()) as isize;
    place(word, offset)
}
