//! Exhaustive certificate search in lexicographic order of
//! `(k, C0, C1[, C0', C1'])`, blocks drawn from the `2^k`-blocks of the system.
//! Sample windows are computed once per `k`.

use std::collections::BTreeSet;

use super::verify::{verify_morse_on, verify_toeplitz_on};
use super::{default_radius, MorseCertificate, SampleSource, ToeplitzCertificate};
use crate::error::{Error, Result};
use crate::substitution::DEFAULT_MAX_WORD_LEN;
use crate::words::Word;

fn block_len_for(k: u32) -> Result<usize> {
    1usize
        .checked_shl(k)
        .filter(|&l| l.checked_mul(64).is_some_and(|w| w <= DEFAULT_MAX_WORD_LEN))
        .ok_or_else(|| Error::Capacity(format!("search windows for k = {k} exceed the word cap")))
}

fn candidates<S: SampleSource + ?Sized>(source: &S, len: usize) -> Result<Vec<Word>> {
    Ok(source.blocks(len)?.into_iter().collect())
}

/// Least Toeplitz certificate with `k <= kmax`, verified at radius `32 * 2^k`.
pub fn search_toeplitz_certificate<S: SampleSource + ?Sized>(
    source: &S,
    kmax: u32,
) -> Result<Option<ToeplitzCertificate>> {
    block_len_for(kmax)?;
    for k in 0..=kmax {
        let len = block_len_for(k)?;
        let radius = default_radius(k);
        let windows = source.sample_windows(radius)?;
        let blocks = candidates(source, len)?;
        for c0 in &blocks {
            for c1 in &blocks {
                if c0 == c1 {
                    continue;
                }
                let cert = ToeplitzCertificate::new(k, c0.clone(), c1.clone())?;
                if verify_toeplitz_on(&windows, &cert, radius)?.accepted {
                    return Ok(Some(cert));
                }
            }
        }
    }
    Ok(None)
}

/// Least Morse certificate with `k <= kmax`, verified at radius `32 * 2^k`.
///
/// A tuple is only verified when the six ordered pairs `C0 C1`, `C0 C1'`,
/// `C1 C0`, `C1 C0'`, `C0' C0`, `C1' C1` are all `2^(k+1)`-blocks of the
/// system; each of them occurs in any point that passes.
pub fn search_morse_certificate<S: SampleSource + ?Sized>(
    source: &S,
    kmax: u32,
) -> Result<Option<MorseCertificate>> {
    block_len_for(kmax)?;
    for k in 0..=kmax {
        let len = block_len_for(k)?;
        let radius = default_radius(k);
        let windows = source.sample_windows(radius)?;
        let blocks = candidates(source, len)?;
        let pairs: BTreeSet<Word> = source.blocks(2 * len)?;
        let joined = |a: &Word, b: &Word| pairs.contains(&a.concat(b));
        for c0 in &blocks {
            for c1 in &blocks {
                if c0 == c1 || !joined(c0, c1) || !joined(c1, c0) {
                    continue;
                }
                for c0p in &blocks {
                    if !joined(c1, c0p) || !joined(c0p, c0) {
                        continue;
                    }
                    for c1p in &blocks {
                        if !joined(c0, c1p) || !joined(c1p, c1) {
                            continue;
                        }
                        let cert = MorseCertificate::new(
                            k,
                            c0.clone(),
                            c1.clone(),
                            c0p.clone(),
                            c1p.clone(),
                        )?;
                        if verify_morse_on(&windows, &cert, radius)?.accepted {
                            return Ok(Some(cert));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}
