//! Constant-length substitutions and the minimal sets they generate.
//!
//! A substitution maps each letter to a block of a fixed length `r >= 2` and
//! acts on words blockwise. Two-sided periodic points are grown outward from a
//! seed pair `a.b` (letter `a` at index -1, letter `b` at index 0): the seed is
//! admissible for period `p` when `theta^p(a)` ends with `a` and
//! `theta^p(b)` begins with `b`, which makes repeated iteration coherent on
//! both sides of the origin.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graphs::SubstitutionGraph;
use crate::words::{Alphabet, Letter, Tiling, Window, Word, MIN_TILES};

/// Default cap on the length of any materialized word.
pub const DEFAULT_MAX_WORD_LEN: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    length: usize,
    images: Vec<Word>,
    max_word_len: usize,
}

/// Seed of a two-sided periodic point: `a` at index -1, `b` at index 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Seed {
    pub a: Letter,
    pub b: Letter,
    pub period: usize,
}

impl Seed {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        format!("{}.{}", alphabet.name(self.a), alphabet.name(self.b))
    }
}

impl Substitution {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::Domain(format!(
                "{} images for an alphabet of {} letters",
                images.len(),
                alphabet.len()
            )));
        }
        let length = images[0].len();
        if length < 2 {
            return Err(Error::Domain(format!(
                "substitution length must be at least 2, got {length}"
            )));
        }
        for (a, image) in images.iter().enumerate() {
            if image.len() != length {
                return Err(Error::Domain(format!(
                    "image of {} has length {}, expected {length}",
                    alphabet.name(a as Letter),
                    image.len()
                )));
            }
            alphabet.check(image)?;
        }
        Ok(Self {
            alphabet,
            length,
            images,
            max_word_len: DEFAULT_MAX_WORD_LEN,
        })
    }

    /// Parses `a->w(;b->w)*`, e.g. `0->01;1->10`. Letters are declared in rule order.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut rules = Vec::new();
        for rule in spec.split(';').map(str::trim).filter(|r| !r.is_empty()) {
            let mut chars = rule.chars();
            let name = chars
                .next()
                .ok_or_else(|| Error::Parse("empty rule".into()))?;
            let rest = chars.as_str().trim_start();
            let image = rest
                .strip_prefix("->")
                .ok_or_else(|| Error::Parse(format!("rule {rule:?} is not of the form a->w")))?;
            rules.push((name, image.trim()));
        }
        let alphabet = Alphabet::new(rules.iter().map(|&(c, _)| c))
            .map_err(|e| Error::Parse(format!("substitution {spec:?}: {e}")))?;
        let images = rules
            .iter()
            .map(|&(_, image)| alphabet.parse_word(image))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, images)
    }

    /// The Morse substitution `0->01; 1->10`.
    pub fn morse() -> Self {
        Self::new(Alphabet::binary(), vec![Word(vec![0, 1]), Word(vec![1, 0])])
            .expect("valid substitution")
    }

    /// The Toeplitz substitution `0->01; 1->00`.
    pub fn toeplitz() -> Self {
        Self::new(Alphabet::binary(), vec![Word(vec![0, 1]), Word(vec![0, 0])])
            .expect("valid substitution")
    }

    pub fn with_max_word_len(mut self, max: usize) -> Self {
        self.max_word_len = max;
        self
    }

    pub fn max_word_len(&self) -> usize {
        self.max_word_len
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The constant image length `r`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, a: Letter) -> &Word {
        &self.images[a as usize]
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len > self.max_word_len {
            return Err(Error::Capacity(format!(
                "word of length {len} exceeds the limit of {}",
                self.max_word_len
            )));
        }
        Ok(())
    }

    /// `r^k`, checked against the word-length limit.
    pub fn block_len(&self, k: u32) -> Result<usize> {
        let len = self
            .length
            .checked_pow(k)
            .ok_or_else(|| Error::Capacity(format!("{}^{k} overflows", self.length)))?;
        self.check_len(len)?;
        Ok(len)
    }

    /// Blockwise image `theta(w_0) theta(w_1) ...`.
    pub fn apply(&self, w: &[Letter]) -> Result<Word> {
        self.alphabet.check(w)?;
        self.check_len(w.len().saturating_mul(self.length))?;
        let mut out = Vec::with_capacity(w.len() * self.length);
        for &a in w {
            out.extend_from_slice(&self.images[a as usize]);
        }
        Ok(Word(out))
    }

    fn apply_times(&self, w: &[Letter], times: usize) -> Result<Word> {
        let mut cur = Word::from(w);
        for _ in 0..times {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    /// `theta^k`, a substitution of length `r^k`.
    pub fn power(&self, k: u32) -> Result<Substitution> {
        if k == 0 {
            return Err(Error::Range("power exponent must be at least 1".into()));
        }
        self.block_len(k)?;
        let images = (0..self.alphabet.len())
            .map(|a| self.apply_times(&[a as Letter], k as usize))
            .collect::<Result<Vec<_>>>()?;
        Ok(Substitution::new(self.alphabet.clone(), images)?.with_max_word_len(self.max_word_len))
    }

    /// First (or last) letter of `theta^p(a)` for every `a`.
    fn edge_letters(&self, p: usize, last: bool) -> Vec<Letter> {
        let step: Vec<Letter> = self
            .images
            .iter()
            .map(|img| if last { img[img.len() - 1] } else { img[0] })
            .collect();
        (0..self.alphabet.len())
            .map(|a| {
                let mut x = a as Letter;
                for _ in 0..p {
                    x = step[x as usize];
                }
                x
            })
            .collect()
    }

    /// All admissible seeds `(a, b)` for period `p`, sorted.
    pub fn periodic_seeds(&self, p: usize) -> Result<Vec<Seed>> {
        if p == 0 {
            return Err(Error::Range("period must be at least 1".into()));
        }
        let first = self.edge_letters(p, false);
        let last = self.edge_letters(p, true);
        let n = self.alphabet.len() as Letter;
        let mut seeds = Vec::new();
        for a in (0..n).filter(|&a| last[a as usize] == a) {
            for b in (0..n).filter(|&b| first[b as usize] == b) {
                seeds.push(Seed { a, b, period: p });
            }
        }
        Ok(seeds)
    }

    /// Smallest period at which every cycle of the first-letter and the
    /// last-letter maps closes; admissible seeds always exist for it.
    pub fn natural_period(&self) -> usize {
        let mut p = 1;
        for last in [false, true] {
            let step = self.edge_letters(1, last);
            for start in 0..step.len() {
                // walk far enough to land on the cycle, then measure it
                let mut x = start as Letter;
                for _ in 0..step.len() {
                    x = step[x as usize];
                }
                let mut len = 1;
                let mut y = step[x as usize];
                while y != x {
                    y = step[y as usize];
                    len += 1;
                }
                p = lcm(p, len);
            }
        }
        p
    }

    /// Central excerpt `[-radius, radius)` of the periodic point seeded by `seed`.
    pub fn periodic_window(&self, seed: Seed, radius: usize) -> Result<Window> {
        let n = self.alphabet.len() as Letter;
        if seed.a >= n || seed.b >= n || seed.period == 0 {
            return Err(Error::Seed("seed letters outside the alphabet".into()));
        }
        if !self.periodic_seeds(seed.period)?.contains(&seed) {
            return Err(Error::Seed(format!(
                "{} is not admissible for period {}",
                seed.render(&self.alphabet),
                seed.period
            )));
        }
        let mut left = Word(vec![seed.a]);
        let mut right = Word(vec![seed.b]);
        while left.len() < radius {
            left = self.apply_times(&left, seed.period)?;
        }
        while right.len() < radius {
            right = self.apply_times(&right, seed.period)?;
        }
        let mut letters = left[left.len() - radius.min(left.len())..].to_vec();
        letters.extend_from_slice(&right[..radius.min(right.len())]);
        Window::new(Word(letters), radius)
    }

    pub fn graph(&self) -> SubstitutionGraph {
        SubstitutionGraph::from_substitution(self)
    }

    pub fn is_primitive(&self) -> bool {
        self.graph().is_primitive()
    }

    fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NotPrimitive(format!(
                "{self} does not generate a unique minimal set; identify equal images or inspect its graph"
            )))
        }
    }

    /// Language 2-blocks: the closure of the 2-blocks inside letter images
    /// under `uv -> 2-blocks of theta(u) theta(v)`.
    fn two_blocks(&self) -> BTreeSet<Word> {
        let mut known: BTreeSet<Word> = BTreeSet::new();
        let mut pending: Vec<Word> = Vec::new();
        let add = |w: &[Letter], known: &mut BTreeSet<Word>, pending: &mut Vec<Word>| {
            for pair in w.windows(2) {
                let pair = Word::from(pair);
                if known.insert(pair.clone()) {
                    pending.push(pair);
                }
            }
        };
        for image in &self.images {
            add(image, &mut known, &mut pending);
        }
        while let Some(uv) = pending.pop() {
            let joined = self.image(uv[0]).concat(self.image(uv[1]));
            add(&joined, &mut known, &mut pending);
        }
        known
    }

    /// The `n`-blocks of the minimal set generated by a primitive substitution.
    pub fn language(&self, n: usize) -> Result<BTreeSet<Word>> {
        if n == 0 {
            return Err(Error::Range("block length must be at least 1".into()));
        }
        self.require_primitive()?;
        let mut m = 0u32;
        let mut span = 1usize;
        while span < n {
            m += 1;
            span = self.block_len(m)?;
        }
        self.check_len(2 * span)?;
        let mut out = BTreeSet::new();
        for uv in self.two_blocks() {
            let expanded = self.apply_times(&uv, m as usize)?;
            for f in expanded.windows(n) {
                out.insert(Word::from(f));
            }
        }
        Ok(out)
    }

    /// Admissible seeds at [`Self::natural_period`] whose pair `ab` belongs to
    /// the language, i.e. the periodic points lying in the minimal set.
    pub fn minimal_seeds(&self) -> Result<Vec<Seed>> {
        let pairs = self.language(2)?;
        Ok(self
            .periodic_seeds(self.natural_period())?
            .into_iter()
            .filter(|s| pairs.contains(&Word(vec![s.a, s.b])))
            .collect())
    }

    pub fn is_injective(&self) -> bool {
        let distinct: BTreeSet<&Word> = self.images.iter().collect();
        distinct.len() == self.images.len()
    }

    /// Merges letters with equal images (repeatedly) until the substitution is
    /// one-to-one. Each class is named after its smallest member. Returns the
    /// quotient and the map from original letters to quotient letters.
    pub fn identify_equal_images(&self) -> Result<(Substitution, Vec<Letter>)> {
        let mut current = self.clone();
        let mut class_of: Vec<Letter> = (0..self.alphabet.len() as Letter).collect();
        loop {
            if current.is_injective() {
                return Ok((current, class_of));
            }
            let mut reps: BTreeMap<&Word, Letter> = BTreeMap::new();
            let mut step = Vec::with_capacity(current.images.len());
            let mut names = Vec::new();
            for (a, image) in current.images.iter().enumerate() {
                let next = reps.len() as Letter;
                let class = *reps.entry(image).or_insert_with(|| {
                    names.push(current.alphabet.name(a as Letter));
                    next
                });
                step.push(class);
            }
            if names.len() < 2 {
                return Err(Error::Degenerate(format!(
                    "identifying equal images of {self} leaves a single letter"
                )));
            }
            let images = current
                .images
                .iter()
                .enumerate()
                .filter(|&(a, _)| {
                    // keep the first member of each class only
                    step[..a].iter().all(|&c| c != step[a])
                })
                .map(|(_, image)| Word(image.iter().map(|&l| step[l as usize]).collect()))
                .collect();
            current = Substitution::new(Alphabet::new(names)?, images)?
                .with_max_word_len(self.max_word_len);
            for c in class_of.iter_mut() {
                *c = step[*c as usize];
            }
        }
    }

    /// Cuts `window` into blocks `theta^k(a)` at every phase where that works,
    /// recovering the preimage letters.
    pub fn desubstitute(&self, k: u32, window: &Window) -> Result<Vec<Tiling>> {
        let block_len = self.block_len(k)?;
        self.alphabet.check(window.letters())?;
        if window.len() < MIN_TILES * block_len {
            return Err(Error::InsufficientWindow(format!(
                "window of length {} is shorter than {MIN_TILES} blocks of length {block_len}",
                window.len()
            )));
        }
        let blocks: Vec<Word> = if k == 0 {
            (0..self.alphabet.len() as Letter)
                .map(|a| Word(vec![a]))
                .collect()
        } else {
            self.power(k)?.images
        };
        Ok(window.tilings(&blocks, block_len))
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, image) in self.images.iter().enumerate() {
            if a > 0 {
                write!(f, ";")?;
            }
            write!(
                f,
                "{}->{}",
                self.alphabet.name(a as Letter),
                self.alphabet.render(image)
            )?;
        }
        Ok(())
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}
