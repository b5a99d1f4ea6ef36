use serde::Serialize;

use super::{
    parse_phases, FailureReason, MorseCertificate, ParseVerdict, PhaseParse, SampleSource,
    TargetKind, ToeplitzCertificate, PHASE_UNIQUENESS_MIN_TOKENS,
};
use crate::characterize::{find_overlap, scan_even_square, PatternWitness};
use crate::error::{Error, Result};
use crate::words::{Letter, Tiling, Window, Word};

/// Token roles of a Morse parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Role {
    C0,
    C1,
    C0p,
    C1p,
}

impl Role {
    pub fn from_index(i: Letter) -> Option<Role> {
        [Role::C0, Role::C1, Role::C0p, Role::C1p]
            .get(usize::from(i))
            .copied()
    }

    /// Gap role for the ordered pair of neighbouring bits.
    pub fn gap(left: Letter, right: Letter) -> Role {
        match (left, right) {
            (1, 1) => Role::C0,
            (0, 0) => Role::C1,
            (1, 0) => Role::C0p,
            _ => Role::C1p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Fault {
    pub reason: FailureReason,
    pub detail: String,
    /// How far the check got: membership, overlap, gap rule.
    pub stage: u8,
}

fn check_radius(k: u32, radius: usize) -> Result<()> {
    let need = 3usize << k;
    if radius < need {
        return Err(Error::InsufficientWindow(format!(
            "radius {radius} is below 3 * 2^{k} = {need}"
        )));
    }
    Ok(())
}

fn rejected(
    kind: TargetKind,
    radius: usize,
    reason: FailureReason,
    detail: String,
) -> ParseVerdict {
    ParseVerdict {
        kind,
        accepted: false,
        radius,
        windows_checked: 0,
        phases: Vec::new(),
        failure_reason: Some(reason),
        detail: Some(detail),
    }
}

/// The tilings a window must be judged on, or the phase fault.
fn phase_candidates(tilings: &[Tiling]) -> std::result::Result<&[Tiling], Fault> {
    if tilings.is_empty() {
        return Err(Fault {
            reason: FailureReason::NoPhase,
            detail: "no phase tiles the window".into(),
            stage: 0,
        });
    }
    if tilings.len() > 1
        && tilings
            .iter()
            .any(|t| t.tokens.len() >= PHASE_UNIQUENESS_MIN_TOKENS)
    {
        let phases: Vec<String> = tilings.iter().map(|t| t.phase.to_string()).collect();
        return Err(Fault {
            reason: FailureReason::MultiplePhases,
            detail: format!("window tiles at phases {}", phases.join(", ")),
            stage: 0,
        });
    }
    Ok(tilings)
}

/// The even square `BB` (even count of `C0` tokens in `B`) in a Toeplitz token
/// word, if any. Tokens are `0 = C0`, `1 = C1`.
pub fn check_toeplitz_tokens(tokens: &[Letter]) -> Option<PatternWitness> {
    scan_even_square(tokens, 0)
}

fn toeplitz_fault(tokens: &[Letter]) -> Option<Fault> {
    if let Some(&t) = tokens.iter().find(|&&t| t > 1) {
        return Some(Fault {
            reason: FailureReason::TokenPattern,
            detail: format!("token {t} is not C0 or C1"),
            stage: 0,
        });
    }
    check_toeplitz_tokens(tokens).map(|w| Fault {
        reason: FailureReason::TokenPattern,
        detail: format!(
            "token word has an even square at {} with half length {}",
            w.start, w.half_length
        ),
        stage: 1,
    })
}

fn run_verification<F>(
    kind: TargetKind,
    windows: &[Window],
    blocks: &[Word],
    block_len: usize,
    radius: usize,
    mut judge: F,
) -> Result<ParseVerdict>
where
    F: FnMut(&Tiling) -> std::result::Result<Option<usize>, Fault>,
{
    let mut verdict = ParseVerdict {
        kind,
        accepted: false,
        radius,
        windows_checked: 0,
        phases: Vec::new(),
        failure_reason: None,
        detail: None,
    };
    for (i, window) in windows.iter().enumerate() {
        let tilings = parse_phases(window, blocks, block_len)?;
        verdict.windows_checked = i + 1;
        if i == 0 {
            verdict.phases = tilings.iter().cloned().map(PhaseParse::from).collect();
        }
        let outcome = phase_candidates(&tilings).and_then(|cands| {
            let mut parities = Vec::with_capacity(cands.len());
            for t in cands {
                parities.push(judge(t)?);
            }
            Ok(parities)
        });
        match outcome {
            Ok(parities) => {
                if i == 0 {
                    for (p, parity) in verdict.phases.iter_mut().zip(parities) {
                        p.parity = parity;
                    }
                }
            }
            Err(fault) => {
                verdict.failure_reason = Some(fault.reason);
                verdict.detail = Some(format!("window {i}: {}", fault.detail));
                return Ok(verdict);
            }
        }
    }
    if verdict.phases.len() == 1 {
        verdict.accepted = true;
    } else {
        verdict.failure_reason = Some(if verdict.phases.is_empty() {
            FailureReason::NoPhase
        } else {
            FailureReason::MultiplePhases
        });
        verdict.detail = Some("window 0: primary window has no unique phase".into());
    }
    Ok(verdict)
}

/// Checks a Toeplitz certificate on every sample window of radius `radius`.
pub fn verify_toeplitz_certificate<S: SampleSource + ?Sized>(
    source: &S,
    cert: &ToeplitzCertificate,
    radius: usize,
) -> Result<ParseVerdict> {
    check_radius(cert.k, radius)?;
    source.alphabet().check(&cert.c0)?;
    source.alphabet().check(&cert.c1)?;
    if cert.c0 == cert.c1 {
        return Ok(rejected(
            TargetKind::Toeplitz,
            radius,
            FailureReason::BlocksEqual,
            "C0 equals C1".into(),
        ));
    }
    let windows = source.sample_windows(radius)?;
    verify_toeplitz_on(&windows, cert, radius)
}

pub(crate) fn verify_toeplitz_on(
    windows: &[Window],
    cert: &ToeplitzCertificate,
    radius: usize,
) -> Result<ParseVerdict> {
    let blocks = [cert.c0.clone(), cert.c1.clone()];
    run_verification(
        TargetKind::Toeplitz,
        windows,
        &blocks,
        cert.block_len(),
        radius,
        |t| match toeplitz_fault(&t.tokens) {
            Some(f) => Err(f),
            None => Ok(None),
        },
    )
}

/// Bit of a parity token: `Some(0)` for `C0`, `Some(1)` for `C1`.
fn parity_bit(cert: &MorseCertificate, token: Letter) -> Option<Letter> {
    let block = cert.blocks().get(usize::from(token)).copied()?;
    if *block == cert.c0 {
        Some(0)
    } else if *block == cert.c1 {
        Some(1)
    } else {
        None
    }
}

fn role_block(cert: &MorseCertificate, role: Role) -> &Word {
    cert.blocks()[role as usize]
}

pub(crate) fn morse_fault(
    cert: &MorseCertificate,
    tokens: &[Letter],
    parity: usize,
) -> Option<Fault> {
    let mut bits = Vec::with_capacity(tokens.len() / 2 + 1);
    for (i, &t) in tokens.iter().enumerate().skip(parity).step_by(2) {
        match parity_bit(cert, t) {
            Some(b) => bits.push(b),
            None => {
                return Some(Fault {
                    reason: FailureReason::TokenPattern,
                    detail: format!("parity {parity}: token {i} is not C0 or C1"),
                    stage: 0,
                })
            }
        }
    }
    if let Some(w) = find_overlap(&bits) {
        return Some(Fault {
            reason: FailureReason::TokenPattern,
            detail: format!(
                "parity {parity}: token word has an overlap at {} with half length {}",
                w.start, w.half_length
            ),
            stage: 1,
        });
    }
    for i in (parity + 1..tokens.len().saturating_sub(1)).step_by(2) {
        let left = bits[(i - 1 - parity) / 2];
        let right = bits[(i + 1 - parity) / 2];
        let want = role_block(cert, Role::gap(left, right));
        if *cert.blocks()[usize::from(tokens[i])] != *want {
            return Some(Fault {
                reason: FailureReason::GapRule,
                detail: format!("parity {parity}: gap token {i} breaks the neighbour rule"),
                stage: 2,
            });
        }
    }
    None
}

/// Checks a Morse token word (role indices `0..4`) at a given parity.
/// Returns the failure reason and a description, or `Ok` when every parity
/// token is `C0`/`C1`, those tokens are overlap-free and every inner gap
/// follows the neighbour table.
pub fn check_morse_tokens(
    cert: &MorseCertificate,
    tokens: &[Letter],
    parity: usize,
) -> std::result::Result<(), (FailureReason, String)> {
    if parity > 1 || tokens.iter().any(|&t| t > 3) {
        return Err((FailureReason::TokenPattern, "malformed token word".into()));
    }
    match morse_fault(cert, tokens, parity) {
        Some(f) => Err((f.reason, f.detail)),
        None => Ok(()),
    }
}

/// Roles of a verified Morse parse. Parity tokens are `C0`/`C1`; each inner
/// gap takes its role from the neighbour table; edge gaps are `None`.
pub fn morse_roles(
    cert: &MorseCertificate,
    tokens: &[Letter],
    parity: usize,
) -> Result<Vec<Option<Role>>> {
    check_morse_tokens(cert, tokens, parity)
        .map_err(|(_, d)| Error::State(format!("tokens fail verification: {d}")))?;
    let bit = |i: usize| parity_bit(cert, tokens[i]).unwrap_or(0);
    Ok((0..tokens.len())
        .map(|i| {
            if i % 2 == parity {
                Some(if bit(i) == 0 { Role::C0 } else { Role::C1 })
            } else if i > 0 && i + 1 < tokens.len() {
                Some(Role::gap(bit(i - 1), bit(i + 1)))
            } else {
                None
            }
        })
        .collect())
}

fn judge_morse(cert: &MorseCertificate, tokens: &[Letter]) -> std::result::Result<usize, Fault> {
    let mut worst: Option<Fault> = None;
    for parity in 0..2 {
        match morse_fault(cert, tokens, parity) {
            None => return Ok(parity),
            Some(f) => {
                if worst.as_ref().is_none_or(|w| f.stage > w.stage) {
                    worst = Some(f);
                }
            }
        }
    }
    Err(worst.expect("both parities failed"))
}

/// Checks a Morse certificate on every sample window of radius `radius`.
pub fn verify_morse_certificate<S: SampleSource + ?Sized>(
    source: &S,
    cert: &MorseCertificate,
    radius: usize,
) -> Result<ParseVerdict> {
    check_radius(cert.k, radius)?;
    for b in cert.blocks() {
        source.alphabet().check(b)?;
    }
    if cert.c0 == cert.c1 {
        return Ok(rejected(
            TargetKind::Morse,
            radius,
            FailureReason::BlocksEqual,
            "C0 equals C1".into(),
        ));
    }
    let windows = source.sample_windows(radius)?;
    verify_morse_on(&windows, cert, radius)
}

pub(crate) fn verify_morse_on(
    windows: &[Window],
    cert: &MorseCertificate,
    radius: usize,
) -> Result<ParseVerdict> {
    let blocks: Vec<Word> = cert.blocks().into_iter().cloned().collect();
    run_verification(
        TargetKind::Morse,
        windows,
        &blocks,
        cert.block_len(),
        radius,
        |t| judge_morse(cert, &t.tokens).map(Some),
    )
}
