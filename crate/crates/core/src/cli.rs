//! Command-line front end.
//!
//! Exit status 0 means pass or found, 1 fail or not found, 2 a usage, input
//! or domain error. With `--json` every command prints one JSON object.

use std::collections::BTreeSet;
use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::characterize::{classify_word, find_even_square, find_overlap, MAX_SCAN_LEN};
use crate::conjugacy::{
    default_radius, derive_substitution, necessary_conditions, recode_morse, recode_toeplitz,
    search_morse_certificate, search_toeplitz_certificate, self_similarity_witness,
    verify_morse_certificate, verify_toeplitz_certificate, Certificate, ParseVerdict, TargetKind,
};
use crate::error::{Error, Result};
use crate::sliding_code::LocalRule;
use crate::substitution::{Seed, Substitution};
use crate::words::Alphabet;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Longest block the `language` and `witness` commands will enumerate.
pub const MAX_CLI_BLOCK_LEN: usize = 1 << 12;

#[derive(Debug, Parser)]
#[command(name = "subshift", version)]
#[command(about = "Morse and Toeplitz minimal sets: substitutions, patterns, codes, certificates")]
struct Cli {
    /// Print a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PatternArg {
    Overlap,
    Toeplitz,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Toeplitz,
    Morse,
}

impl From<KindArg> for TargetKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Toeplitz => TargetKind::Toeplitz,
            KindArg::Morse => TargetKind::Morse,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Central window of a periodic point of a substitution.
    Generate {
        #[arg(long)]
        sub: String,
        /// Seed `a.b`.
        #[arg(long)]
        seed: String,
        /// Defaults to the natural period.
        #[arg(long)]
        period: Option<usize>,
        #[arg(long)]
        radius: usize,
    },
    /// The n-blocks of a primitive substitution.
    Language {
        #[arg(long)]
        sub: String,
        #[arg(long)]
        n: usize,
    },
    /// Search a word for an overlap or an even square.
    Check {
        #[arg(long, value_enum)]
        pattern: PatternArg,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Designated letter for even squares.
        #[arg(long, default_value_t = '0')]
        zero: char,
    },
    /// Both pattern checks plus Morse and Toeplitz factor membership.
    Classify {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = crate::characterize::DEFAULT_FACTOR_BOUND)]
        factor_bound: usize,
    },
    /// Apply a sliding block code to a window.
    Image {
        /// Rule JSON file, inline JSON, or `oxtoby`.
        #[arg(long)]
        rule: String,
        #[arg(long)]
        window: String,
    },
    /// All blocks mapped onto a word.
    Preimage {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        word: String,
    },
    /// Check a conjugacy certificate.
    VerifyCert {
        /// Certificate JSON file or inline JSON.
        #[arg(long)]
        cert: String,
        #[arg(long)]
        sub: String,
        /// Defaults to 32 * 2^k.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Least certificate with k <= kmax.
    SearchCert {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        sub: String,
        #[arg(long)]
        kmax: u32,
    },
    /// Graph, periodic points and necessary conditions of a substitution.
    Analyze {
        #[arg(long)]
        sub: String,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Substitution induced by a memory-0 rule into the r-th power shift.
    Derive {
        #[arg(long)]
        sub: String,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        r: usize,
    },
    /// Finite self-similarity witness.
    Witness {
        #[arg(long)]
        sub: String,
        #[arg(long)]
        n: usize,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    pass: bool,
    text: String,
    json: serde_json::Value,
}

impl Report {
    fn new<T: Serialize>(pass: bool, text: String, payload: &T) -> Self {
        Self {
            pass,
            text,
            json: serde_json::to_value(payload).expect("payload serializes"),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_PASS,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let stdout = if cli.json {
                format!("{}\n", report.json)
            } else {
                with_newline(report.text)
            };
            Outcome {
                code: if report.pass { EXIT_PASS } else { EXIT_FAIL },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: EXIT_ERROR,
            stdout: if cli.json {
                format!("{}\n", json!({ "error": e.to_string() }))
            } else {
                String::new()
            },
            stderr: format!("error: {e}\n"),
        },
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Serialized name of a unit enum value.
fn label<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn read_source(arg: &str, what: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| Error::Parse(format!("cannot read {what} file {arg}: {e}")))
    }
}

fn load_rule(arg: &str) -> Result<LocalRule> {
    if arg == "oxtoby" {
        return Ok(LocalRule::oxtoby());
    }
    LocalRule::from_json(&read_source(arg, "rule")?)
}

fn parse_seed(s: &Substitution, text: &str, period: Option<usize>) -> Result<Seed> {
    let mut parts = text.split('.');
    let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(Error::Parse(format!(
            "seed {text:?} is not of the form a.b"
        )));
    };
    let letter = |p: &str| -> Result<u8> {
        let mut chars = p.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => s.alphabet().letter(c),
            _ => Err(Error::Parse(format!(
                "seed part {p:?} is not a single letter"
            ))),
        }
    };
    Ok(Seed {
        a: letter(a)?,
        b: letter(b)?,
        period: period.unwrap_or_else(|| s.natural_period()),
    })
}

/// `0` and `1` plus every other letter of the word, in sorted order.
fn word_alphabet(word: &str) -> Result<Alphabet> {
    let mut names: BTreeSet<char> = ['0', '1'].into_iter().collect();
    names.extend(word.chars());
    Alphabet::new(names)
}

fn check_block_len(n: usize) -> Result<()> {
    if n > MAX_CLI_BLOCK_LEN {
        return Err(Error::Capacity(format!(
            "block length {n} exceeds {MAX_CLI_BLOCK_LEN}"
        )));
    }
    Ok(())
}

fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::Generate {
            sub,
            seed,
            period,
            radius,
        } => {
            let s = Substitution::parse(sub)?;
            let seed = parse_seed(&s, seed, *period)?;
            let window = s.periodic_window(seed, *radius)?;
            let text = s.alphabet().render_window(&window);
            let payload = json!({
                "seed": seed.render(s.alphabet()),
                "period": seed.period,
                "radius": radius,
                "window": text,
            });
            Ok(Report::new(true, text, &payload))
        }
        Command::Language { sub, n } => {
            check_block_len(*n)?;
            let s = Substitution::parse(sub)?;
            let blocks: Vec<String> = s
                .language(*n)?
                .iter()
                .map(|w| s.alphabet().render(w))
                .collect();
            let payload = json!({ "n": n, "count": blocks.len(), "blocks": blocks });
            Ok(Report::new(true, blocks.join("\n"), &payload))
        }
        Command::Check {
            pattern,
            word,
            zero,
        } => {
            if word.chars().count() > MAX_SCAN_LEN {
                return Err(Error::Capacity(format!(
                    "word is longer than {MAX_SCAN_LEN} letters"
                )));
            }
            let alphabet = word_alphabet(word)?;
            let w = alphabet.parse_word(word)?;
            let (name, witness) = match pattern {
                PatternArg::Overlap => ("overlap", find_overlap(&w)),
                PatternArg::Toeplitz => {
                    let z = alphabet.letter(*zero)?;
                    ("toeplitz", find_even_square(&w, z, &alphabet)?)
                }
            };
            let text = match &witness {
                None => format!("pass: no {name} pattern"),
                Some(x) => format!(
                    "fail: {} at start {} period {}",
                    label(&x.kind),
                    x.start,
                    x.half_length
                ),
            };
            let payload = json!({
                "pattern": name,
                "length": w.len(),
                "pass": witness.is_none(),
                "witness": witness,
            });
            Ok(Report::new(witness.is_none(), text, &payload))
        }
        Command::Classify { word, factor_bound } => {
            let alphabet = Alphabet::binary();
            let w = alphabet.parse_word(word)?;
            let report = classify_word(&w, &alphabet, *factor_bound)?;
            let text = format!(
                "overlap_free: {}\ntoeplitz_admissible: {}\nmorse_factor: {:?}\ntoeplitz_factor: {:?}",
                report.overlap_free,
                report.toeplitz_admissible,
                report.morse_factor,
                report.toeplitz_factor
            );
            Ok(Report::new(true, text, &report))
        }
        Command::Image { rule, window } => {
            let rule = load_rule(rule)?;
            let win = rule.input().parse_window(window)?;
            let out = rule.apply_code(&win)?;
            let text = rule.output().render_window(&out);
            let payload = json!({ "window": text });
            Ok(Report::new(true, text, &payload))
        }
        Command::Preimage { rule, word } => {
            let rule = load_rule(rule)?;
            let w = rule.output().parse_word(word)?;
            let blocks: Vec<String> = rule
                .preimage_blocks(&w)?
                .iter()
                .map(|b| rule.input().render(b))
                .collect();
            let payload = json!({ "count": blocks.len(), "blocks": blocks });
            Ok(Report::new(!blocks.is_empty(), blocks.join("\n"), &payload))
        }
        Command::VerifyCert { cert, sub, radius } => {
            let s = Substitution::parse(sub)?;
            let cert = Certificate::from_json(&read_source(cert, "certificate")?, s.alphabet())?;
            let radius = radius.unwrap_or_else(|| default_radius(cert.k()));
            let (verdict, recoded) = match &cert {
                Certificate::Toeplitz(c) => {
                    let v = verify_toeplitz_certificate(&s, c, radius)?;
                    let r = if v.accepted {
                        Some(recode_toeplitz(c, &v)?)
                    } else {
                        None
                    };
                    (v, r)
                }
                Certificate::Morse(c) => {
                    let v = verify_morse_certificate(&s, c, radius)?;
                    let r = if v.accepted {
                        Some(recode_morse(c, &v)?)
                    } else {
                        None
                    };
                    (v, r)
                }
            };
            let recoded = recoded.map(|w| Alphabet::binary().render_window(&w));
            let text = verdict_text(&verdict, recoded.as_deref());
            let mut payload = serde_json::to_value(&verdict).expect("verdict serializes");
            payload["recoded"] = json!(recoded);
            Ok(Report::new(verdict.accepted, text, &payload))
        }
        Command::SearchCert { kind, sub, kmax } => {
            let s = Substitution::parse(sub)?;
            let found = match kind {
                KindArg::Toeplitz => {
                    search_toeplitz_certificate(&s, *kmax)?.map(Certificate::Toeplitz)
                }
                KindArg::Morse => search_morse_certificate(&s, *kmax)?.map(Certificate::Morse),
            };
            let kind = TargetKind::from(*kind);
            let text = match &found {
                Some(c) => c.to_json(s.alphabet()),
                None => format!("not found for k <= {kmax}"),
            };
            let payload = json!({
                "kind": kind,
                "kmax": kmax,
                "found": found.is_some(),
                "certificate": found.as_ref().map(|c| c.to_file(s.alphabet())),
            });
            Ok(Report::new(found.is_some(), text, &payload))
        }
        Command::Analyze { sub, kind } => analyze(sub, kind.map(TargetKind::from)),
        Command::Derive { sub, rule, r } => {
            let s = Substitution::parse(sub)?;
            let rule = load_rule(rule)?;
            let d = derive_substitution(&s, &rule, *r)?;
            let naming = d.naming(s.alphabet());
            let mut text = format!("{}\nprimitive: {}", d.substitution, d.primitive);
            for (name, block) in &naming {
                text.push_str(&format!("\n{name} = {block}"));
            }
            let payload = json!({
                "substitution": d.substitution.to_string(),
                "naming": naming,
                "primitive": d.primitive,
            });
            Ok(Report::new(d.primitive, text, &payload))
        }
        Command::Witness { sub, n } => {
            let s = Substitution::parse(sub)?;
            check_block_len(n.saturating_mul(s.length()))?;
            let w = self_similarity_witness(&s, *n)?;
            let text = format!(
                "holds: {}\nimages: {} of {} blocks of length {}\ncontained: {}\nproper: {}\nunique_phase: {}",
                w.holds,
                w.image_count,
                w.target_count,
                w.r * w.n,
                w.contained,
                w.proper,
                w.unique_phase
            );
            Ok(Report::new(w.holds, text, &w))
        }
    }
}

fn verdict_text(v: &ParseVerdict, recoded: Option<&str>) -> String {
    let mut out = if v.accepted {
        format!(
            "accepted at radius {} ({} windows)",
            v.radius, v.windows_checked
        )
    } else {
        format!(
            "rejected: {} at radius {}",
            label(&v.failure_reason),
            v.radius
        )
    };
    if let Some(d) = &v.detail {
        out.push_str(&format!("\n{d}"));
    }
    for p in &v.phases {
        out.push_str(&format!("\nphase {} offset {}", p.phase, p.offset));
        if let Some(parity) = p.parity {
            out.push_str(&format!(" parity {parity}"));
        }
    }
    if let Some(r) = recoded {
        out.push_str(&format!("\nrecoded: {r}"));
    }
    out
}

#[derive(Serialize)]
struct Analysis {
    substitution: String,
    letters: usize,
    length: usize,
    injective: bool,
    strongly_connected: bool,
    period: Option<usize>,
    period_classes: Option<Vec<Vec<char>>>,
    primitive: bool,
    primitivity_exponent: Option<usize>,
    natural_period: usize,
    minimal_seeds: Option<Vec<String>>,
    necessary_conditions: Vec<crate::conjugacy::NecessaryConditions>,
}

fn analyze(sub: &str, kind: Option<TargetKind>) -> Result<Report> {
    let s = Substitution::parse(sub)?;
    let g = s.graph();
    let period = g.period().ok();
    let names = s.alphabet();
    let minimal_seeds = s
        .minimal_seeds()
        .ok()
        .map(|seeds| seeds.iter().map(|x| x.render(names)).collect());
    let kinds = match kind {
        Some(k) => vec![k],
        None => vec![TargetKind::Toeplitz, TargetKind::Morse],
    };
    let conditions: Vec<_> = kinds.iter().map(|&k| necessary_conditions(k, &s)).collect();
    let a = Analysis {
        substitution: s.to_string(),
        letters: names.len(),
        length: s.length(),
        injective: s.is_injective(),
        strongly_connected: g.is_strongly_connected(),
        period: period.as_ref().map(|p| p.length),
        period_classes: period.as_ref().map(|p| {
            p.classes
                .iter()
                .map(|c| c.iter().map(|&v| names.name(v as u8)).collect())
                .collect()
        }),
        primitive: g.is_primitive(),
        primitivity_exponent: g.primitivity_exponent(),
        natural_period: s.natural_period(),
        minimal_seeds,
        necessary_conditions: conditions,
    };
    let pass = match kind {
        Some(_) => a.necessary_conditions.iter().all(|c| c.all_pass),
        None => a.primitive,
    };
    let mut text = format!(
        "substitution: {}\nletters: {}\nlength: {}\ninjective: {}\nstrongly_connected: {}\nprimitive: {}",
        a.substitution, a.letters, a.length, a.injective, a.strongly_connected, a.primitive
    );
    if let Some(p) = a.period {
        text.push_str(&format!("\nperiod: {p}"));
    }
    if let Some(e) = a.primitivity_exponent {
        text.push_str(&format!("\nprimitivity_exponent: {e}"));
    }
    text.push_str(&format!("\nnatural_period: {}", a.natural_period));
    if let Some(seeds) = &a.minimal_seeds {
        text.push_str(&format!("\nminimal_seeds: {}", seeds.join(" ")));
    }
    for c in &a.necessary_conditions {
        text.push_str(&format!(
            "\n{}: injective={} primitive={} length_power_of_two={} alphabet_bound_ok={} all_pass={}",
            label(&c.kind),
            c.injective,
            c.primitive,
            c.length_power_of_two,
            c.alphabet_bound_ok,
            c.all_pass
        ));
    }
    Ok(Report::new(pass, text, &a))
}

/// Runs the command line of this process and exits.
pub fn main_entry() -> ! {
    let outcome = run(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code)
}
