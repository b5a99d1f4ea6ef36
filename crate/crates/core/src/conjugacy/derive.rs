//! Necessary conditions, the induced substitution of a memory-0 rule, and a
//! finite self-similarity witness.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sliding_code::LocalRule;
use crate::substitution::{Substitution, DEFAULT_MAX_WORD_LEN};
use crate::words::{Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    Toeplitz,
    Morse,
}

impl TargetKind {
    /// Largest alphabet a substitution conjugate to the target can need.
    pub fn alphabet_bound(self) -> usize {
        match self {
            TargetKind::Toeplitz => 3,
            TargetKind::Morse => 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NecessaryConditions {
    pub kind: TargetKind,
    pub injective: bool,
    pub primitive: bool,
    pub length_power_of_two: bool,
    pub alphabet_bound_ok: bool,
    /// All of the above. Passing does not imply conjugacy.
    pub all_pass: bool,
}

/// Conditions every injective primitive substitution conjugate to the target
/// satisfies: length a power of two, at most 3 (Toeplitz) or 6 (Morse) letters.
pub fn necessary_conditions(kind: TargetKind, s: &Substitution) -> NecessaryConditions {
    let injective = s.is_injective();
    let primitive = s.is_primitive();
    let length_power_of_two = s.length().is_power_of_two();
    let alphabet_bound_ok = s.alphabet().len() <= kind.alphabet_bound();
    NecessaryConditions {
        kind,
        injective,
        primitive,
        length_power_of_two,
        alphabet_bound_ok,
        all_pass: injective && primitive && length_power_of_two && alphabet_bound_ok,
    }
}

const NAME_POOL: &str = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

#[derive(Debug, Clone, PartialEq)]
pub struct DerivedSubstitution {
    pub substitution: Substitution,
    /// `blocks[i]` is the `(mr+1)`-block named by letter `i`.
    pub blocks: Vec<Word>,
    pub primitive: bool,
}

impl DerivedSubstitution {
    /// Letter name to block text.
    pub fn naming(&self, source: &Alphabet) -> BTreeMap<char, String> {
        let names = self.substitution.alphabet();
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (names.name(i as u8), source.render(b)))
            .collect()
    }
}

/// The substitution induced by a memory-0 rule `phi` of anticipation `m`
/// mapping `(m+1)`-blocks of `X` to `r`-blocks of `X`.
///
/// Letters are the `(mr+1)`-blocks of `X`. A block `b = x[i, i+mr]` fixes
/// `x'[ir, ir+mr+r)` of `x' = Phi(x)`, and its image is the `r` blocks of
/// length `mr+1` starting at `x'_{ir}, ..., x'_{ir+r-1}`. With `m = 0` the
/// letters keep their names; otherwise they are named `0-9a-zA-Z` in
/// lexicographic block order.
pub fn derive_substitution(
    source: &Substitution,
    rule: &LocalRule,
    r: usize,
) -> Result<DerivedSubstitution> {
    if rule.memory() != 0 {
        return Err(Error::Precondition("the rule must have memory 0".into()));
    }
    if r < 2 {
        return Err(Error::Domain(format!("r = {r} must be at least 2")));
    }
    if rule.output_len() != r {
        return Err(Error::Domain(format!(
            "rule emits blocks of length {}, expected r = {r}",
            rule.output_len()
        )));
    }
    if rule.input() != source.alphabet() || rule.output() != source.alphabet() {
        return Err(Error::Domain(
            "rule alphabets differ from the system alphabet".into(),
        ));
    }
    let m = rule.anticipation();
    let coded = m
        .checked_mul(r)
        .and_then(|x| x.checked_add(1))
        .filter(|&x| x <= DEFAULT_MAX_WORD_LEN)
        .ok_or_else(|| Error::Capacity("block length m*r + 1 is too large".into()))?;

    let targets = source.language(r)?;
    for w in source.language(m + 1)? {
        let v = rule.lookup(&w).ok_or_else(|| {
            Error::Consistency(format!(
                "rule is undefined on {}",
                source.alphabet().render(&w)
            ))
        })?;
        if !targets.contains(v) {
            return Err(Error::Consistency(format!(
                "rule sends {} to {}, which is not a block of the system",
                source.alphabet().render(&w),
                source.alphabet().render(v)
            )));
        }
    }

    let blocks: Vec<Word> = source.language(coded)?.into_iter().collect();
    let index: BTreeMap<&Word, u8> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b, i as u8))
        .collect();
    let alphabet = if coded == 1 {
        let names: Vec<char> = blocks
            .iter()
            .map(|b| source.alphabet().name(b[0]))
            .collect();
        Alphabet::new(names)?
    } else {
        if blocks.len() > NAME_POOL.len() {
            return Err(Error::Capacity(format!(
                "{} blocks exceed the {} available letter names",
                blocks.len(),
                NAME_POOL.len()
            )));
        }
        Alphabet::new(NAME_POOL.chars().take(blocks.len()))?
    };

    let mut images = Vec::with_capacity(blocks.len());
    for b in &blocks {
        // the padded rule reads m(r-1)+1 letters but only depends on the first m+1
        let mut extended = Vec::with_capacity(coded + r - 1);
        for s in 0..=m {
            let v = rule
                .lookup(&b[s..s + m + 1])
                .ok_or_else(|| Error::Consistency("rule is undefined on a block".into()))?;
            extended.extend_from_slice(v);
        }
        let mut image = Vec::with_capacity(r);
        for t in 0..r {
            let piece = &extended[t..t + coded];
            let letter = index.get(&Word::from(piece)).ok_or_else(|| {
                Error::Consistency(format!(
                    "induced block {} is not a block of the system",
                    source.alphabet().render(piece)
                ))
            })?;
            image.push(*letter);
        }
        images.push(Word::new(image));
    }
    let substitution = Substitution::new(alphabet, images)?;
    let primitive = substitution.is_primitive();
    Ok(DerivedSubstitution {
        substitution,
        blocks,
        primitive,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfSimilarity {
    pub n: usize,
    pub r: usize,
    /// Number of distinct images of `n`-blocks.
    pub image_count: usize,
    /// Number of `rn`-blocks.
    pub target_count: usize,
    pub contained: bool,
    pub proper: bool,
    /// Desubstitution at `k = 1` has one phase on every periodic window.
    pub unique_phase: bool,
    pub windows_checked: usize,
    pub holds: bool,
}

/// Finite evidence that `theta(X)` is a proper closed `sigma^r`-invariant
/// part of `X` on which `theta` is injective.
pub fn self_similarity_witness(s: &Substitution, n: usize) -> Result<SelfSimilarity> {
    if !s.is_injective() {
        return Err(Error::Precondition(
            "self-similarity needs an injective substitution".into(),
        ));
    }
    let r = s.length();
    let target = s.language(r * n)?;
    let mut images = std::collections::BTreeSet::new();
    for w in s.language(n)? {
        images.insert(s.apply(&w)?);
    }
    let contained = images.is_subset(&target);
    let proper = contained && images.len() < target.len();
    let mut unique_phase = true;
    let mut windows_checked = 0;
    for seed in s.minimal_seeds()? {
        let window = s.periodic_window(seed, 32 * r)?;
        windows_checked += 1;
        if s.desubstitute(1, &window)?.len() != 1 {
            unique_phase = false;
            break;
        }
    }
    Ok(SelfSimilarity {
        n,
        r,
        image_count: images.len(),
        target_count: target.len(),
        contained,
        proper,
        unique_phase,
        windows_checked,
        holds: contained && proper && unique_phase,
    })
}
