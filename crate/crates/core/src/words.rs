//! Alphabets, finite words and centered windows.
//!
//! A letter is a small index into an [`Alphabet`]; the alphabet carries the
//! printable single-character names used for parsing and rendering. Words are
//! plain letter vectors so that token words (letters standing for whole
//! blocks) reuse every routine written for ordinary words.

use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

pub type Letter = u8;

/// Largest number of symbols an alphabet may hold.
pub const MAX_ALPHABET: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    names: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(names: I) -> Result<Self> {
        let names: Vec<char> = names.into_iter().collect();
        if names.len() < 2 {
            return Err(Error::Domain(format!(
                "an alphabet needs at least 2 symbols, got {}",
                names.len()
            )));
        }
        if names.len() > MAX_ALPHABET {
            return Err(Error::Capacity(format!(
                "alphabet of {} symbols exceeds {MAX_ALPHABET}",
                names.len()
            )));
        }
        for (i, &c) in names.iter().enumerate() {
            if c == '.' || c == ';' || c.is_whitespace() || c.is_control() {
                return Err(Error::Domain(format!("{c:?} cannot name a symbol")));
            }
            if names[..i].contains(&c) {
                return Err(Error::Domain(format!("symbol {c:?} declared twice")));
            }
        }
        Ok(Self { names })
    }

    /// The alphabet `{0, 1}`.
    pub fn binary() -> Self {
        Self {
            names: vec!['0', '1'],
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.names.len() == 2
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn name(&self, letter: Letter) -> char {
        self.names[letter as usize]
    }

    pub fn index_of(&self, name: char) -> Option<Letter> {
        self.names
            .iter()
            .position(|&c| c == name)
            .map(|i| i as Letter)
    }

    pub fn letter(&self, name: char) -> Result<Letter> {
        self.index_of(name)
            .ok_or_else(|| Error::Domain(format!("symbol {name:?} is not in alphabet {self}")))
    }

    pub fn contains(&self, letter: Letter) -> bool {
        (letter as usize) < self.names.len()
    }

    pub fn check(&self, letters: &[Letter]) -> Result<()> {
        match letters.iter().find(|&&l| !self.contains(l)) {
            Some(l) => Err(Error::Domain(format!(
                "letter index {l} is outside alphabet {self}"
            ))),
            None => Ok(()),
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.chars()
            .map(|c| self.letter(c))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render(&self, letters: &[Letter]) -> String {
        letters.iter().map(|&l| self.name(l)).collect()
    }

    /// Parses `"10010110.01101001"`. A string without `'.'` has origin 0.
    pub fn parse_window(&self, text: &str) -> Result<Window> {
        let mut parts = text.split('.');
        let left = parts.next().unwrap_or("");
        let right = parts.next();
        if parts.next().is_some() {
            return Err(Error::Parse(format!(
                "window {text:?} has more than one '.'"
            )));
        }
        match right {
            Some(right) => {
                let mut letters = self.parse_word(left)?;
                let origin = letters.len();
                letters.0.extend(self.parse_word(right)?.0);
                Window::new(letters, origin)
            }
            None => Window::new(self.parse_word(left)?, 0),
        }
    }

    pub fn render_window(&self, window: &Window) -> String {
        let (left, right) = window.letters.split_at(window.origin);
        format!("{}.{}", self.render(left), self.render(right))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.names.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// A finite word: a sequence of letter indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// All distinct length-`n` subwords.
    pub fn factors(&self, n: usize) -> Result<BTreeSet<Word>> {
        if n == 0 || n > self.len() {
            return Err(Error::Range(format!(
                "factor length {n} not in 1..={}",
                self.len()
            )));
        }
        Ok(self.windows(n).map(|w| Word(w.to_vec())).collect())
    }

    pub fn count_letter(&self, letter: Letter) -> usize {
        self.iter().filter(|&&l| l == letter).count()
    }

    /// Letterwise swap `0 <-> 1` over a binary alphabet.
    pub fn complement(&self, alphabet: &Alphabet) -> Result<Word> {
        if !alphabet.is_binary() {
            return Err(Error::Domain(format!(
                "complement needs a binary alphabet, got {alphabet}"
            )));
        }
        alphabet.check(self)?;
        Ok(Word(self.iter().map(|&l| 1 - l).collect()))
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(other);
        Word(letters)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

/// A finite excerpt of a bilaterally infinite sequence.
///
/// The letter at position `origin` carries bilateral index 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Window {
    letters: Word,
    origin: usize,
}

impl Window {
    pub fn new(letters: Word, origin: usize) -> Result<Self> {
        if origin > letters.len() {
            return Err(Error::Range(format!(
                "origin {origin} outside window of length {}",
                letters.len()
            )));
        }
        Ok(Self { letters, origin })
    }

    pub fn letters(&self) -> &Word {
        &self.letters
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Bilateral index of the first stored letter.
    pub fn first_index(&self) -> isize {
        -(self.origin as isize)
    }

    /// Letter at bilateral index `index`, if stored.
    pub fn at(&self, index: isize) -> Option<Letter> {
        let pos = index + self.origin as isize;
        if pos < 0 {
            return None;
        }
        self.letters.get(pos as usize).copied()
    }

    /// `sigma^j`: moves bilateral index 0 rightward by `j` positions.
    pub fn shift(&self, j: isize) -> Result<Window> {
        let origin = self.origin as isize + j;
        if origin < 0 || origin > self.len() as isize {
            return Err(Error::Range(format!(
                "shift by {j} moves origin to {origin}, outside 0..={}",
                self.len()
            )));
        }
        Ok(Window {
            letters: self.letters.clone(),
            origin: origin as usize,
        })
    }

    /// Restriction to bilateral indices `[from, to)`.
    pub fn slice(&self, from: isize, to: isize) -> Result<Window> {
        let lo = from + self.origin as isize;
        let hi = to + self.origin as isize;
        if from > 0 || to < 0 || lo < 0 || hi > self.len() as isize || lo > hi {
            return Err(Error::Range(format!(
                "indices [{from}, {to}) not inside the window around its origin"
            )));
        }
        Window::new(
            Word::from(&self.letters[lo as usize..hi as usize]),
            (-from) as usize,
        )
    }
}

/// Fewest whole tiles a phase must contain before it is reported.
pub const MIN_TILES: usize = 3;

/// One way of cutting a window into whole blocks at a fixed phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    /// Residue modulo the block length of the bilateral index where tiles start.
    pub phase: usize,
    /// Position (within the window letters) of the first tile.
    pub start: usize,
    /// Bilateral index of the first tile.
    pub offset: isize,
    /// One token per tile; token `t` stands for `blocks[t]`.
    pub tokens: Word,
}

impl Window {
    /// Every phase at which the maximal aligned sub-window is an exact
    /// concatenation of `blocks` with at least [`MIN_TILES`] tiles.
    ///
    /// Each tile is tokenized by the first block it equals, so duplicate
    /// blocks should be removed by the caller when tokens must be unique.
    pub fn tilings(&self, blocks: &[Word], block_len: usize) -> Vec<Tiling> {
        if block_len == 0 {
            return Vec::new();
        }
        let mut found = Vec::new();
        for phase in 0..block_len {
            let start = (phase + self.origin) % block_len;
            let count = self.len().saturating_sub(start) / block_len;
            if count < MIN_TILES {
                continue;
            }
            let tokens: Option<Vec<Letter>> = self.letters[start..start + count * block_len]
                .chunks_exact(block_len)
                .map(|tile| {
                    blocks
                        .iter()
                        .position(|b| b.letters() == tile)
                        .map(|t| t as Letter)
                })
                .collect();
            if let Some(tokens) = tokens {
                found.push(Tiling {
                    phase,
                    start,
                    offset: start as isize - self.origin as isize,
                    tokens: Word(tokens),
                });
            }
        }
        found
    }
}
