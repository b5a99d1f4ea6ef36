//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{
    all_binary, brute_language, complement, naive_even_square, naive_overlap, oracle_search_morse,
    oracle_search_toeplitz, oxtoby, MORSE, THREE_LETTER, TOEPLITZ,
};
use subshift::characterize::{find_even_square, find_overlap};
use subshift::conjugacy::{
    default_radius, derive_substitution, morse_roles, necessary_conditions, parse_phases,
    recode_morse, recode_morse_tokens, recode_toeplitz, recode_toeplitz_tokens,
    search_morse_certificate, search_toeplitz_certificate, self_similarity_witness,
    verify_morse_certificate, verify_toeplitz_certificate, MorseCertificate, Role, SampleSource,
    TargetKind, ToeplitzCertificate,
};
use subshift::graphs::SubstitutionGraph;
use subshift::sliding_code::LocalRule;
use subshift::substitution::{Seed, Substitution};
use subshift::words::{Alphabet, Word};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sub(spec: &str) -> Substitution {
    Substitution::parse(spec).unwrap()
}

fn rendered(s: &Substitution, n: usize) -> BTreeSet<String> {
    s.language(n)
        .unwrap()
        .iter()
        .map(|w| s.alphabet().render(w))
        .collect()
}

fn bin(w: &str) -> Word {
    Alphabet::binary().parse_word(w).unwrap()
}

fn within(limit: Duration, start: Instant) -> Outcome {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn morse_window() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_subshift"))
        .args([
            "generate", "--sub", MORSE, "--seed", "0.0", "--period", "2", "--radius", "8",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    within(Duration::from_secs(1), start)?;
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}", out.status)
    })?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(text == "10010110.01101001\n", || {
        format!("printed {text:?}")
    })
}

fn periodic_census() -> Outcome {
    let mu = Substitution::morse();
    let tau = Substitution::toeplitz();
    let seeds = mu.periodic_seeds(2).unwrap();
    ensure(seeds.len() == 4, || format!("mu period 2: {seeds:?}"))?;
    let pairs: Vec<(u8, u8)> = tau
        .periodic_seeds(2)
        .unwrap()
        .iter()
        .map(|s| (s.a, s.b))
        .collect();
    ensure(pairs == [(0, 0), (1, 0)], || {
        format!("tau period 2: {pairs:?}")
    })?;
    for s in [&mu, &tau] {
        let fixed = s.periodic_seeds(1).unwrap();
        ensure(fixed.is_empty(), || format!("fixed seeds {fixed:?}"))?;
        ensure(s.natural_period() == 2, || "natural period".into())?;
    }
    Ok(())
}

fn combinatorial_theorems() -> Outcome {
    let start = Instant::now();
    let seed = Seed {
        a: 0,
        b: 0,
        period: 2,
    };
    let mu = Substitution::morse();
    let tau = Substitution::toeplitz();
    let m = mu.periodic_window(seed, 2048).unwrap();
    ensure(find_overlap(m.letters()).is_none(), || {
        "overlap in Morse window".into()
    })?;
    let t = tau.periodic_window(seed, 2048).unwrap();
    let sq = find_even_square(t.letters(), 0, tau.alphabet()).unwrap();
    ensure(sq.is_none(), || {
        format!("even square in Toeplitz window: {sq:?}")
    })?;
    for n in 1..=12 {
        for w in mu.language(n).unwrap() {
            ensure(
                find_overlap(&w).is_none() && naive_overlap(&w).is_none(),
                || format!("overlap in Morse block {w:?}"),
            )?;
        }
        for w in tau.language(n).unwrap() {
            ensure(
                find_even_square(&w, 0, tau.alphabet()).unwrap().is_none()
                    && naive_even_square(&w, 0).is_none(),
                || format!("even square in Toeplitz block {w:?}"),
            )?;
        }
    }
    within(Duration::from_secs(10), start)
}

fn oxtoby_semi_conjugacy() -> Outcome {
    let mu = Substitution::morse();
    let tau = Substitution::toeplitz();
    let phi = LocalRule::oxtoby();
    let a = Alphabet::binary();
    for n in 1..=12 {
        let source = mu.language(n + 1).unwrap();
        let image = phi.image_language(&source).unwrap();
        let target = tau.language(n).unwrap();
        ensure(image == target, || {
            format!("image language differs at n = {n}")
        })?;
        let oracle: BTreeSet<String> = brute_language(MORSE, n + 1)
            .iter()
            .map(|w| oxtoby(w))
            .collect();
        ensure(oracle == brute_language(TOEPLITZ, n), || {
            format!("oracle image language differs at n = {n}")
        })?;
        for w in &target {
            let pre: Vec<Word> = phi
                .preimage_blocks(w)
                .unwrap()
                .into_iter()
                .filter(|p| source.contains(p))
                .collect();
            ensure(pre.len() == 2, || {
                format!("{} has {} preimages", a.render(w), pre.len())
            })?;
            ensure(pre[1] == pre[0].complement(&a).unwrap(), || {
                format!("preimages of {} are not complements", a.render(w))
            })?;
        }
    }
    Ok(())
}

fn preimage_dichotomy() -> Outcome {
    let start = Instant::now();
    let phi = LocalRule::oxtoby();
    let a = Alphabet::binary();
    for l in 1..=6 {
        let candidates = all_binary(2 * l + 1);
        for b in all_binary(l) {
            let bb = format!("{b}{b}");
            let got: BTreeSet<String> = phi
                .preimage_blocks(&bin(&bb))
                .unwrap()
                .iter()
                .map(|w| a.render(w))
                .collect();
            let oracle: BTreeSet<String> = candidates
                .iter()
                .filter(|w| oxtoby(w) == bb)
                .cloned()
                .collect();
            ensure(got == oracle, || {
                format!("preimages of {bb} differ from oracle")
            })?;
            let p = got.iter().find(|w| w.starts_with('0')).unwrap();
            let c = &p[..l];
            let cbar = complement(c);
            let even = b.chars().filter(|&x| x == '0').count() % 2 == 0;
            let expected: BTreeSet<String> = if even {
                [
                    format!("{c}{c}{}", &c[..1]),
                    format!("{cbar}{cbar}{}", &cbar[..1]),
                ]
                .into()
            } else {
                [
                    format!("{c}{cbar}{}", &c[..1]),
                    format!("{cbar}{c}{}", &cbar[..1]),
                ]
                .into()
            };
            ensure(got == expected, || {
                format!("dichotomy fails for B = {b}: {got:?}")
            })?;
        }
    }
    within(Duration::from_secs(5), start)
}

fn three_letter_example() -> Outcome {
    let s = sub(THREE_LETTER);
    let a = s.alphabet();
    let cert =
        ToeplitzCertificate::new(1, a.parse_word("21").unwrap(), a.parse_word("00").unwrap())
            .unwrap();
    let v = verify_toeplitz_certificate(&s, &cert, 64).unwrap();
    ensure(v.accepted, || format!("rejected: {v:?}"))?;
    let found = search_toeplitz_certificate(&s, 2)
        .unwrap()
        .ok_or("search found nothing")?;
    let again = verify_toeplitz_certificate(&s, &found, default_radius(found.k)).unwrap();
    ensure(again.accepted, || "search result does not verify".into())?;
    let oracle = oracle_search_toeplitz(THREE_LETTER, 2).ok_or("oracle found nothing")?;
    let ours = (found.k, a.render(&found.c0), a.render(&found.c1));
    ensure(ours == oracle, || {
        format!("search {ours:?} vs oracle {oracle:?}")
    })?;
    let nc = necessary_conditions(TargetKind::Toeplitz, &s);
    ensure(
        nc.length_power_of_two
            && nc.alphabet_bound_ok
            && nc.injective
            && nc.primitive
            && nc.all_pass,
        || format!("{nc:?}"),
    )?;
    ensure(s.length() == 2 && s.alphabet().len() == 3, || {
        "shape".into()
    })
}

fn six_pairs(blocks: [&Word; 4]) -> BTreeSet<(Word, Word)> {
    let [c0, c1, c0p, c1p] = blocks;
    [
        (c0, c1),
        (c0, c1p),
        (c1, c0),
        (c1, c0p),
        (c0p, c0),
        (c1p, c1),
    ]
    .into_iter()
    .map(|(x, y)| (x.clone(), y.clone()))
    .collect()
}

fn morse_parses_use_six_pairs(cert: &MorseCertificate, radius: usize) -> Outcome {
    let mu = Substitution::morse();
    let allowed_roles: BTreeSet<(Role, Role)> = [
        (Role::C0, Role::C1),
        (Role::C0, Role::C1p),
        (Role::C1, Role::C0),
        (Role::C1, Role::C0p),
        (Role::C0p, Role::C0),
        (Role::C1p, Role::C1),
    ]
    .into();
    let allowed_blocks = six_pairs(cert.blocks());
    let blocks: Vec<Word> = cert.blocks().into_iter().cloned().collect();
    for w in mu.sample_windows(radius).unwrap() {
        let parses = parse_phases(&w, &blocks, cert.block_len()).unwrap();
        ensure(parses.len() == 1, || "window without a unique phase".into())?;
        let tokens = &parses[0].tokens;
        let roles = (0..2)
            .find_map(|p| morse_roles(cert, tokens, p).ok())
            .ok_or("no parity passes")?;
        for pair in roles.windows(2) {
            if let [Some(x), Some(y)] = pair {
                ensure(allowed_roles.contains(&(*x, *y)), || {
                    format!("role pair {x:?} {y:?}")
                })?;
            }
        }
        for pair in tokens.windows(2) {
            let x = blocks[pair[0] as usize].clone();
            let y = blocks[pair[1] as usize].clone();
            ensure(allowed_blocks.contains(&(x, y)), || {
                "block pair outside the six".into()
            })?;
        }
    }
    Ok(())
}

fn morse_identity_certificate() -> Outcome {
    let mu = Substitution::morse();
    let cert = MorseCertificate::new(0, bin("0"), bin("1"), bin("0"), bin("1")).unwrap();
    let v = verify_morse_certificate(&mu, &cert, 64).unwrap();
    ensure(v.accepted, || format!("rejected: {v:?}"))?;
    morse_parses_use_six_pairs(&cert, 64)?;
    let level_one = MorseCertificate::new(1, bin("01"), bin("10"), bin("01"), bin("10")).unwrap();
    ensure(
        verify_morse_certificate(&mu, &level_one, 128)
            .unwrap()
            .accepted,
        || "level-one certificate rejected".into(),
    )?;
    morse_parses_use_six_pairs(&level_one, 128)
}

/// Oracle languages of a target, indexed by block length.
fn oracle_languages(target: &str, max_n: usize) -> Vec<BTreeSet<String>> {
    (0..=max_n).map(|n| brute_language(target, n)).collect()
}

fn factors_inside(w: &Word, langs: &[BTreeSet<String>], max_n: usize) -> Outcome {
    let text = Alphabet::binary().render(w);
    for n in 1..=max_n.min(text.len()) {
        let lang = &langs[n];
        for i in 0..=text.len() - n {
            ensure(lang.contains(&text[i..i + n]), || {
                format!(
                    "recoded factor {} is outside the target language",
                    &text[i..i + n]
                )
            })?;
        }
    }
    Ok(())
}

fn recoding_soundness() -> Outcome {
    let three = sub(THREE_LETTER);
    let a = three.alphabet().clone();
    let tau = Substitution::toeplitz();
    let mu = Substitution::morse();
    let mut toeplitz_cases = vec![
        (
            three.clone(),
            ToeplitzCertificate::new(1, a.parse_word("21").unwrap(), a.parse_word("00").unwrap())
                .unwrap(),
        ),
        (
            tau.clone(),
            ToeplitzCertificate::new(0, bin("0"), bin("1")).unwrap(),
        ),
    ];
    if let Some(found) = search_toeplitz_certificate(&three, 2).unwrap() {
        toeplitz_cases.push((three.clone(), found));
    }
    let toeplitz_langs = oracle_languages(TOEPLITZ, 6);
    let morse_langs = oracle_languages(MORSE, 6);
    for (s, cert) in &toeplitz_cases {
        let radius = default_radius(cert.k);
        let v = verify_toeplitz_certificate(s, cert, radius).unwrap();
        ensure(v.accepted, || format!("{cert:?} rejected"))?;
        let primary = recode_toeplitz(cert, &v).unwrap();
        factors_inside(primary.letters(), &toeplitz_langs, cert.block_len() + 2)?;
        let blocks = [cert.c0.clone(), cert.c1.clone()];
        for w in s.sample_windows(radius).unwrap() {
            let parses = parse_phases(&w, &blocks, cert.block_len()).unwrap();
            let out = recode_toeplitz_tokens(cert, &parses[0].tokens).unwrap();
            factors_inside(&out, &toeplitz_langs, cert.block_len() + 2)?;
        }
    }
    let morse_cases = [
        MorseCertificate::new(0, bin("0"), bin("1"), bin("0"), bin("1")).unwrap(),
        MorseCertificate::new(1, bin("01"), bin("10"), bin("01"), bin("10")).unwrap(),
    ];
    for cert in &morse_cases {
        let radius = default_radius(cert.k);
        let v = verify_morse_certificate(&mu, cert, radius).unwrap();
        ensure(v.accepted, || format!("{cert:?} rejected"))?;
        let primary = recode_morse(cert, &v).unwrap();
        factors_inside(primary.letters(), &morse_langs, cert.block_len() + 2)?;
        let blocks: Vec<Word> = cert.blocks().into_iter().cloned().collect();
        for w in mu.sample_windows(radius).unwrap() {
            let parses = parse_phases(&w, &blocks, cert.block_len()).unwrap();
            let (out, _) = (0..2)
                .find_map(|p| recode_morse_tokens(cert, &parses[0].tokens, p).ok())
                .ok_or("no parity recodes")?;
            factors_inside(&out, &morse_langs, cert.block_len() + 2)?;
        }
    }
    Ok(())
}

fn graph_analysis() -> Outcome {
    let start = Instant::now();
    ensure(Substitution::morse().is_primitive(), || "mu".into())?;
    ensure(Substitution::toeplitz().is_primitive(), || "tau".into())?;
    let g = sub("0->11;1->00").graph();
    ensure(g.is_strongly_connected(), || {
        "not strongly connected".into()
    })?;
    ensure(g.period().unwrap().length == 2, || "period".into())?;
    ensure(!g.is_primitive(), || "primitive".into())?;
    for n in 1..=4usize {
        for mask in 0u32..1 << (n * n) {
            let adjacency: Vec<Vec<bool>> = (0..n)
                .map(|i| (0..n).map(|j| mask >> (i * n + j) & 1 == 1).collect())
                .collect();
            let g = SubstitutionGraph::from_adjacency(adjacency).unwrap();
            ensure(
                g.is_primitive() == g.primitivity_exponent().is_some(),
                || format!("routes disagree on n = {n}, mask = {mask:#x}"),
            )?;
        }
    }
    within(Duration::from_secs(30), start)
}

fn induced_substitution() -> Outcome {
    for s in [Substitution::morse(), Substitution::toeplitz()] {
        let d = derive_substitution(&s, &LocalRule::from_substitution(&s), 2).unwrap();
        ensure(d.substitution == s, || {
            format!("derived {}", d.substitution)
        })?;
        let w = self_similarity_witness(&s, 4).unwrap();
        ensure(w.contained && w.proper && w.holds, || format!("{w:?}"))?;
    }
    Ok(())
}

fn language_oracle() -> Outcome {
    for spec in [MORSE, TOEPLITZ, THREE_LETTER] {
        let s = sub(spec);
        for n in 1..=10 {
            ensure(rendered(&s, n) == brute_language(spec, n), || {
                format!("{spec}: language differs at n = {n}")
            })?;
        }
    }
    Ok(())
}

fn negative_searches() -> Outcome {
    let t = search_toeplitz_certificate(&Substitution::morse(), 2).unwrap();
    ensure(t.is_none(), || format!("found {t:?}"))?;
    let m = search_morse_certificate(&Substitution::toeplitz(), 1).unwrap();
    ensure(m.is_none(), || format!("found {m:?}"))?;
    ensure(oracle_search_toeplitz(MORSE, 2).is_none(), || {
        "oracle found a Toeplitz certificate".into()
    })?;
    ensure(oracle_search_morse(TOEPLITZ, 1).is_none(), || {
        "oracle found a Morse certificate".into()
    })
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        ("Morse window printed by generate", morse_window),
        ("periodic-point census", periodic_census),
        (
            "overlap-free Morse, even-square-free Toeplitz",
            combinatorial_theorems,
        ),
        (
            "Oxtoby map is two-to-one onto Toeplitz",
            oxtoby_semi_conjugacy,
        ),
        ("preimage dichotomy of BB", preimage_dichotomy),
        (
            "three-letter substitution is Toeplitz",
            three_letter_example,
        ),
        (
            "Morse identity certificate and six pairs",
            morse_identity_certificate,
        ),
        ("recoding soundness", recoding_soundness),
        ("graph primitivity", graph_analysis),
        (
            "induced substitution and self-similarity",
            induced_substitution,
        ),
        ("language agrees with brute force", language_oracle),
        ("negative certificate searches", negative_searches),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({took:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({took:.2}s): {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
