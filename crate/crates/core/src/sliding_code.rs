//! Local rules and the sliding block codes they induce.
//!
//! A rule with memory `m` and anticipation `a` reads the `(m + a + 1)`-block
//! `x[i-m ..= i+a]` and writes output position `i`. Outputs are blocks of a
//! fixed length (1 for an ordinary code; `r` for a map into a `sigma^r`
//! system), so output index `i` covers bilateral indices `i*q .. i*q + q`.
//! Rules are explicit tables; a table that does not cover every input block is
//! a partial rule, defined only on the listed blocks.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::words::{Alphabet, Letter, Window, Word};

/// Cap on partial preimages visited by [`LocalRule::preimage_blocks`].
pub const MAX_PREIMAGE_EXPANSIONS: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRule {
    input: Alphabet,
    output: Alphabet,
    memory: usize,
    anticipation: usize,
    output_len: usize,
    table: BTreeMap<Word, Word>,
}

/// On-disk JSON form of a rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleFile {
    pub memory: usize,
    pub anticipation: usize,
    pub input: String,
    pub output: String,
    pub table: BTreeMap<String, String>,
}

impl LocalRule {
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        memory: usize,
        anticipation: usize,
        table: BTreeMap<Word, Word>,
    ) -> Result<Self> {
        let width = memory + anticipation + 1;
        let output_len = match table.values().next() {
            Some(v) => v.len(),
            None => return Err(Error::Domain("rule table is empty".into())),
        };
        if output_len == 0 {
            return Err(Error::Domain("rule outputs must be nonempty".into()));
        }
        for (key, value) in &table {
            if key.len() != width {
                return Err(Error::Domain(format!(
                    "table key {} has length {}, expected {width}",
                    input.render(key),
                    key.len()
                )));
            }
            if value.len() != output_len {
                return Err(Error::Domain("rule outputs have unequal lengths".into()));
            }
            input.check(key)?;
            output.check(value)?;
        }
        Ok(Self {
            input,
            output,
            memory,
            anticipation,
            output_len,
            table,
        })
    }

    /// `phi(u, v) = u + v + 1 mod 2`, memory 0, anticipation 1.
    pub fn oxtoby() -> Self {
        let table = [([0, 0], 1), ([0, 1], 0), ([1, 0], 0), ([1, 1], 1)]
            .into_iter()
            .map(|(k, v)| (Word(k.to_vec()), Word(vec![v])))
            .collect();
        Self::new(Alphabet::binary(), Alphabet::binary(), 0, 1, table).expect("valid rule")
    }

    /// Copies the letter at offset 0 of a `(memory + anticipation + 1)`-window.
    pub fn projection(alphabet: &Alphabet, memory: usize, anticipation: usize) -> Self {
        let width = memory + anticipation + 1;
        let table = all_words(alphabet.len(), width)
            .into_iter()
            .map(|w| {
                let v = Word(vec![w[memory]]);
                (w, v)
            })
            .collect();
        Self::new(
            alphabet.clone(),
            alphabet.clone(),
            memory,
            anticipation,
            table,
        )
        .expect("valid rule")
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        Self::projection(alphabet, 0, 0)
    }

    /// The substitution itself read as a 1-block to r-block rule.
    pub fn from_substitution(s: &Substitution) -> Self {
        let table = s
            .images()
            .iter()
            .enumerate()
            .map(|(a, img)| (Word(vec![a as Letter]), img.clone()))
            .collect();
        Self::new(s.alphabet().clone(), s.alphabet().clone(), 0, 0, table).expect("valid rule")
    }

    pub fn from_file(file: &RuleFile) -> Result<Self> {
        let input = Alphabet::new(file.input.chars())?;
        let output = Alphabet::new(file.output.chars())?;
        let table = file
            .table
            .iter()
            .map(|(k, v)| Ok((input.parse_word(k)?, output.parse_word(v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Self::new(input, output, file.memory, file.anticipation, table)
    }

    pub fn to_file(&self) -> RuleFile {
        RuleFile {
            memory: self.memory,
            anticipation: self.anticipation,
            input: self.input.names().iter().collect(),
            output: self.output.names().iter().collect(),
            table: self
                .table
                .iter()
                .map(|(k, v)| (self.input.render(k), self.output.render(v)))
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: RuleFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("rule JSON: {e}")))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("rule serializes")
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn anticipation(&self) -> usize {
        self.anticipation
    }

    pub fn width(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    pub fn output_len(&self) -> usize {
        self.output_len
    }

    pub fn table(&self) -> &BTreeMap<Word, Word> {
        &self.table
    }

    /// True when every input block of the rule's width has an entry.
    pub fn is_total(&self) -> bool {
        (self.input.len() as u128).checked_pow(self.width() as u32)
            == Some(self.table.len() as u128)
    }

    pub fn lookup(&self, block: &[Letter]) -> Option<&Word> {
        self.table.get(block)
    }

    /// Slides the rule over a finite word: output length is
    /// `(len - width + 1) * output_len`.
    pub fn apply_word(&self, w: &[Letter]) -> Result<Word> {
        let width = self.width();
        if w.len() < width {
            return Err(Error::Range(format!(
                "word of length {} is shorter than the rule width {width}",
                w.len()
            )));
        }
        let mut out = Vec::with_capacity((w.len() - width + 1) * self.output_len);
        for block in w.windows(width) {
            let v = self.lookup(block).ok_or_else(|| {
                Error::Domain(format!(
                    "rule undefined on block {}",
                    self.input.render(block)
                ))
            })?;
            out.extend_from_slice(v);
        }
        Ok(Word(out))
    }

    /// Applies the code to a window, keeping bilateral indices aligned.
    pub fn apply_code(&self, window: &Window) -> Result<Window> {
        self.input.check(window.letters())?;
        let letters = self.apply_word(window.letters())?;
        let origin = window.origin() as isize - self.memory as isize;
        let positions = (window.len() - self.width() + 1) as isize;
        if origin < 0 || origin > positions {
            return Err(Error::Range(format!(
                "index 0 of the window falls outside the {positions} coded positions"
            )));
        }
        Window::new(letters, origin as usize * self.output_len)
    }

    /// Every input word whose code is exactly `w`, sorted.
    pub fn preimage_blocks(&self, w: &Word) -> Result<BTreeSet<Word>> {
        self.output.check(w)?;
        if !w.len().is_multiple_of(self.output_len) {
            return Err(Error::Domain(format!(
                "word length {} is not a multiple of the output block length {}",
                w.len(),
                self.output_len
            )));
        }
        let positions = w.len() / self.output_len;
        let context = self.width() - 1;
        let q = self.output_len;
        let mut layer = all_words(self.input.len(), context);
        let mut expansions = layer.len();
        for j in 0..positions {
            let target = &w[j * q..(j + 1) * q];
            let mut next = Vec::new();
            for u in &layer {
                for c in 0..self.input.len() as Letter {
                    expansions += 1;
                    if expansions > MAX_PREIMAGE_EXPANSIONS {
                        return Err(Error::Capacity(format!(
                            "preimage search exceeded {MAX_PREIMAGE_EXPANSIONS} expansions"
                        )));
                    }
                    let mut cand = u.clone();
                    cand.0.push(c);
                    if self.lookup(&cand[j..]).map(|v| v.letters()) == Some(target) {
                        next.push(cand);
                    }
                }
            }
            layer = next;
        }
        Ok(layer.into_iter().collect())
    }

    /// `{code(w) : w in blocks}`; every input word must have the same length.
    pub fn image_language(&self, blocks: &BTreeSet<Word>) -> Result<BTreeSet<Word>> {
        let mut lengths = blocks.iter().map(|w| w.len());
        if let Some(first) = lengths.next() {
            if lengths.any(|l| l != first) {
                return Err(Error::Domain("input blocks have unequal lengths".into()));
            }
        }
        blocks.iter().map(|w| self.apply_word(w)).collect()
    }
}

/// All words of length `n` over `size` letters, in lexicographic order.
pub fn all_words(size: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..size as Letter).map(move |c| {
                    let mut x = w.clone();
                    x.0.push(c);
                    x
                })
            })
            .collect();
    }
    out
}
