//! Independent string-based oracles for the integration tests. Nothing here
//! calls into the library.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

pub const MORSE: &str = "0->01;1->10";
pub const TOEPLITZ: &str = "0->01;1->00";
pub const THREE_LETTER: &str = "0->12;1->02;2->10";

pub fn parse_sub(spec: &str) -> BTreeMap<char, String> {
    spec.split(';')
        .map(|rule| {
            let (a, w) = rule.split_once("->").expect("rule a->w");
            (a.chars().next().expect("letter"), w.to_string())
        })
        .collect()
}

pub fn apply(sub: &BTreeMap<char, String>, w: &str) -> String {
    w.chars().map(|c| sub[&c].as_str()).collect()
}

/// Iterates the substitution on its first letter until the word has at
/// least `min_len` letters.
pub fn long_word(spec: &str, min_len: usize) -> String {
    let sub = parse_sub(spec);
    let mut w = sub.keys().next().unwrap().to_string();
    while w.len() < min_len {
        w = apply(&sub, &w);
    }
    w
}

pub fn factors(w: &str, n: usize) -> BTreeSet<String> {
    if n == 0 || n > w.len() {
        return BTreeSet::new();
    }
    (0..=w.len() - n).map(|i| w[i..i + n].to_string()).collect()
}

/// Iterate-and-collect language of a primitive substitution.
pub fn brute_language(spec: &str, n: usize) -> BTreeSet<String> {
    factors(&long_word(spec, 1 << 15), n)
}

pub fn naive_overlap(w: &[u8]) -> Option<(usize, usize)> {
    for i in 0..w.len() {
        for l in 1..w.len() {
            if i + 2 * l + 1 > w.len() {
                break;
            }
            if w[i..i + l] == w[i + l..i + 2 * l] && w[i + 2 * l] == w[i] {
                return Some((i, l));
            }
        }
    }
    None
}

pub fn naive_even_square(w: &[u8], zero: u8) -> Option<(usize, usize)> {
    for i in 0..w.len() {
        for l in 1..w.len() {
            if i + 2 * l > w.len() {
                break;
            }
            if w[i..i + l] == w[i + l..i + 2 * l]
                && w[i..i + l].iter().filter(|&&x| x == zero).count() % 2 == 0
            {
                return Some((i, l));
            }
        }
    }
    None
}

pub fn complement(w: &str) -> String {
    w.chars()
        .map(|c| if c == '0' { '1' } else { '0' })
        .collect()
}

/// `phi(u, v) = u + v + 1 mod 2` applied along a word.
pub fn oxtoby(w: &str) -> String {
    let b = w.as_bytes();
    b.windows(2)
        .map(|p| if p[0] == p[1] { '1' } else { '0' })
        .collect()
}

pub fn all_binary(n: usize) -> Vec<String> {
    (0..1u32 << n)
        .map(|x| {
            (0..n)
                .rev()
                .map(|i| if x >> i & 1 == 1 { '1' } else { '0' })
                .collect()
        })
        .collect()
}

/// Token sequences of every phase that tiles `w` exactly by `blocks`; the
/// token is the index of the first equal block.
pub fn tilings(w: &str, blocks: &[&str], len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for phase in 0..len {
        let mut tokens = Vec::new();
        let mut ok = true;
        let mut p = phase;
        while p + len <= w.len() {
            match blocks.iter().position(|b| *b == &w[p..p + len]) {
                Some(t) => tokens.push(t),
                None => {
                    ok = false;
                    break;
                }
            }
            p += len;
        }
        if ok && tokens.len() >= 3 {
            out.push(tokens);
        }
    }
    out
}

fn as_bytes(tokens: &[usize]) -> Vec<u8> {
    tokens.iter().map(|&t| t as u8).collect()
}

pub fn toeplitz_ok(samples: &[String], c0: &str, c1: &str) -> bool {
    if c0 == c1 {
        return false;
    }
    samples.iter().all(|w| {
        let t = tilings(w, &[c0, c1], c0.len());
        t.len() == 1 && naive_even_square(&as_bytes(&t[0]), 0).is_none()
    })
}

pub fn morse_ok(samples: &[String], c: [&str; 4]) -> bool {
    if c[0] == c[1] {
        return false;
    }
    samples.iter().all(|w| {
        let t = tilings(w, &c, c[0].len());
        if t.len() != 1 {
            return false;
        }
        let blocks: Vec<&str> = t[0].iter().map(|&i| c[i]).collect();
        (0..2).any(|parity| {
            let mut bits = Vec::new();
            for b in blocks.iter().skip(parity).step_by(2) {
                if *b == c[0] {
                    bits.push(0u8);
                } else if *b == c[1] {
                    bits.push(1u8);
                } else {
                    return false;
                }
            }
            if naive_overlap(&bits).is_some() {
                return false;
            }
            (parity + 1..blocks.len().saturating_sub(1))
                .step_by(2)
                .all(|i| {
                    let left = bits[(i - 1 - parity) / 2];
                    let right = bits[(i + 1 - parity) / 2];
                    let want = match (left, right) {
                        (1, 1) => c[0],
                        (0, 0) => c[1],
                        (1, 0) => c[2],
                        _ => c[3],
                    };
                    blocks[i] == want
                })
        })
    })
}

/// Every factor of length `64 * len` of a long iterate.
pub fn samples(spec: &str, len: usize) -> Vec<String> {
    let w = long_word(spec, 1 << 15);
    factors(&w, 64 * len).into_iter().collect()
}

pub fn oracle_search_toeplitz(spec: &str, kmax: u32) -> Option<(u32, String, String)> {
    for k in 0..=kmax {
        let len = 1usize << k;
        let s = samples(spec, len);
        let cands = brute_language(spec, len);
        for c0 in &cands {
            for c1 in &cands {
                if toeplitz_ok(&s, c0, c1) {
                    return Some((k, c0.clone(), c1.clone()));
                }
            }
        }
    }
    None
}

pub fn oracle_search_morse(spec: &str, kmax: u32) -> Option<(u32, [String; 4])> {
    for k in 0..=kmax {
        let len = 1usize << k;
        let s = samples(spec, len);
        let cands: Vec<String> = brute_language(spec, len).into_iter().collect();
        for a in &cands {
            for b in &cands {
                for c in &cands {
                    for d in &cands {
                        if morse_ok(&s, [a, b, c, d]) {
                            return Some((k, [a.clone(), b.clone(), c.clone(), d.clone()]));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Bits of a binary string.
pub fn bits(w: &str) -> Vec<u8> {
    w.bytes().map(|b| b - b'0').collect()
}
