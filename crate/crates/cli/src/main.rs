//! `wltl`: check, translate, evaluate and cross-check weighted LTL formulas.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 ok, 1 parse
//! error, 2 formula outside the monoid's fragment, 3 reach cap exceeded,
//! 4 semantics and automaton disagree.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use wltl::automata::{to_dot, to_json};
use wltl::consistency::Explorer;
use wltl::eval::{check_equivalence, eval_behavior, eval_semantics, normalize, EquivConfig, EquivReport, LassoWord};
use wltl::formula::{is_rultl, is_trultl, reduce};
use wltl::{parse, Automaton, Formula, FragmentReport, Monoid, MonoidKind, Symbol, TranslateError};

/// Exploration bound for formulas outside the fragment.
const PROBE_CAP: usize = 200;

#[derive(Parser)]
#[command(name = "wltl", version, about = "Weighted LTL over omega-valuation monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a formula and print its reduced form.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Translate a formula into its ε-wgBa.
    Translate {
        #[command(flatten)]
        common: Common,
        /// Degeneralize and remove ε-transitions first.
        #[arg(long)]
        normalize: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate formula and automaton on one lasso word, e.g. `{a}({}{a,b})^w`.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare formula and automaton on random lasso words.
    Equiv {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_stem: usize,
        #[arg(long, default_value_t = 3)]
        max_period: usize,
        /// Skip the brute-force cross-check.
        #[arg(long)]
        no_brute: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, value_parser = parse_monoid)]
    monoid: Monoid,
    /// Comma-separated atomic propositions.
    #[arg(long, value_delimiter = ',', required = true)]
    ap: Vec<String>,
    /// Bound on the number of consistent sets explored.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    formula: String,
}

fn parse_monoid(s: &str) -> Result<Monoid, String> {
    s.parse().map_err(|_| format!("unknown monoid `{s}` (expected tropical or liminf)"))
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Fragment(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Fragment(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Mismatch(_) => 4,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<TranslateError> for CliError {
    fn from(e: TranslateError) -> Self {
        match e {
            TranslateError::Cap(_) => CliError::Cap(e.to_string()),
            TranslateError::UnknownAtom(_) => CliError::Parse(e.to_string()),
            TranslateError::NotReduced(_) | TranslateError::FragmentMismatch(_) => CliError::Fragment(e.to_string()),
        }
    }
}

impl Common {
    fn formula(&self) -> Result<Formula, CliError> {
        parse(&self.formula, &self.ap, self.monoid).map_err(|e| CliError::Parse(e.to_string()))
    }

    fn cap(&self) -> usize {
        usize::try_from(self.cap).unwrap_or(usize::MAX)
    }

    /// Outside the fragment the reachable sets may be infinite, and each new
    /// one is dearer to enumerate than the last. Such formulas are explored
    /// up to `min(cap, PROBE_CAP)` sets: hitting that bound is reported as a
    /// cap overrun, anything else as a fragment error.
    fn translated(&self, f: &Formula) -> Result<Automaton, CliError> {
        match wltl::translate(f, self.monoid, &self.ap, self.cap()) {
            Ok(t) => Ok(t.automaton),
            Err(e @ TranslateError::FragmentMismatch(_)) => {
                let mut ex = Explorer::new(self.monoid, self.cap().min(PROBE_CAP));
                let seeds = ex.sets(f).to_vec();
                match ex.explore(&seeds) {
                    Err(cap) => Err(CliError::Cap(format!("{e}; {cap}"))),
                    Ok(_) => Err(e.into()),
                }
            }
            Err(e) => Err(e.into()),
        }
    }
}

fn in_fragment(f: &Formula, m: Monoid) -> bool {
    match m.kind() {
        MonoidKind::Product => is_rultl(f, m),
        MonoidKind::Generalized => is_trultl(f, m),
    }
}

fn fragment_name(m: Monoid) -> &'static str {
    match m.kind() {
        MonoidKind::Product => "RULTL",
        MonoidKind::Generalized => "t-RULTL",
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckOutput {
    formula: String,
    reduced: String,
    monoid: String,
    fragment: &'static str,
    in_fragment: bool,
    report: FragmentReport,
}

fn check(common: &Common, format: Format) -> Result<String, CliError> {
    let m = common.monoid;
    let red = reduce(&common.formula()?, m);
    let ok = in_fragment(&red, m);
    let out = CheckOutput {
        formula: common.formula.clone(),
        reduced: red.pretty(m).to_string(),
        monoid: m.to_string(),
        fragment: fragment_name(m),
        in_fragment: ok,
        report: FragmentReport::classify(&red, m),
    };
    let text = match format {
        Format::Json => json(&out),
        Format::Text | Format::Dot => {
            let r = &out.report;
            let mut s = String::new();
            let _ = writeln!(s, "reduced: {}", out.reduced);
            let _ = writeln!(s, "monoid: {}", out.monoid);
            let _ = writeln!(s, "boolean: {}", r.is_boolean);
            let _ = writeln!(s, "step: {}", r.is_step);
            let _ = writeln!(s, "restricted step: {}", r.is_restricted_step);
            let _ = writeln!(s, "RULTL: {}", r.is_rultl);
            let _ = writeln!(s, "t-RULTL: {}", r.is_trultl);
            let _ = writeln!(s, "{} {}", if ok { "in" } else { "not in" }, out.fragment);
            s
        }
    };
    if ok {
        Ok(text)
    } else {
        print!("{text}");
        Err(CliError::Fragment(format!("formula is not in {}", out.fragment)))
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn automaton_text(a: &Automaton) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "monoid: {}", a.monoid());
    let _ = writeln!(s, "ap: {}", a.ap().join(","));
    let _ = writeln!(s, "states: {}", a.num_states());
    for (q, label) in a.labels().iter().enumerate() {
        let mut flags = String::new();
        if a.initial().contains(&q) {
            flags.push_str(" initial");
        }
        for (i, f) in a.final_family().iter().enumerate() {
            if f.contains(&q) {
                let _ = write!(flags, " F{}", i + 1);
            }
        }
        let _ = writeln!(s, "  q{q} {label}{flags}");
    }
    let _ = writeln!(s, "final sets: {}", a.final_family().len());
    let _ = writeln!(s, "transitions:");
    for (p, sym, q, w) in a.transitions() {
        let letter = match sym {
            Symbol::Eps => "eps".to_string(),
            Symbol::Letter(l) => format!("{{{}}}", a.letter_props(l).join(",")),
        };
        let _ = writeln!(s, "  q{p} -{letter}/{w}-> q{q}");
    }
    s
}

fn translate(common: &Common, normalized: bool, format: Format) -> Result<String, CliError> {
    let m = common.monoid;
    let f = reduce(&common.formula()?, m);
    let mut a = common.translated(&f)?;
    if normalized {
        a = normalize(&a).map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(match format {
        Format::Json => to_json(&a) + "\n",
        Format::Dot => to_dot(&a),
        Format::Text => automaton_text(&a),
    })
}

#[derive(Serialize)]
struct EvalOutput {
    formula: String,
    word: String,
    semantics: String,
    behavior: String,
}

fn eval(common: &Common, word: &str, format: Format) -> Result<String, CliError> {
    let m = common.monoid;
    let w: LassoWord = word.parse().map_err(|e| CliError::Parse(format!("bad word: {e}")))?;
    if let Some(bad) = w.stem().iter().chain(w.period()).flatten().find(|p| !common.ap.contains(p)) {
        return Err(CliError::Parse(format!("proposition `{bad}` in the word is not in the alphabet")));
    }
    let f = reduce(&common.formula()?, m);
    let a = normalize(&common.translated(&f)?).map_err(|e| CliError::Internal(e.to_string()))?;
    let semantics = eval_semantics(&f, &w, m);
    let behavior = eval_behavior(&a, &w).map_err(|e| CliError::Internal(e.to_string()))?;
    let out = EvalOutput {
        formula: f.pretty(m).to_string(),
        word: w.to_string(),
        semantics: semantics.to_string(),
        behavior: behavior.to_string(),
    };
    let text = match format {
        Format::Json => json(&out),
        _ => format!("semantics={}\nbehavior={}\n", out.semantics, out.behavior),
    };
    if semantics == behavior {
        Ok(text)
    } else {
        print!("{text}");
        Err(CliError::Mismatch("semantics and behavior differ".into()))
    }
}

fn report_text(r: &EquivReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "formula: {}", r.formula);
    let _ = writeln!(s, "monoid: {}", r.monoid);
    let _ = writeln!(s, "samples: {}", r.samples);
    let _ = writeln!(s, "mismatches: {}", r.mismatches.len());
    for x in &r.mismatches {
        let _ = writeln!(s, "  {}: semantics={} behavior={}", x.word, x.semantics, x.behavior);
    }
    let _ = writeln!(s, "brute-force checked: {}", r.brute_checked);
    let _ = writeln!(s, "brute-force mismatches: {}", r.brute_mismatches.len());
    for x in &r.brute_mismatches {
        let _ = writeln!(s, "  {}: behavior={} brute-force={}", x.word, x.behavior, x.brute_force);
    }
    let _ = writeln!(s, "unstable horizons: {}", r.horizon_unstable.len());
    for w in &r.horizon_unstable {
        let _ = writeln!(s, "  {w}");
    }
    let _ = writeln!(s, "{}", if r.is_ok() { "ok" } else { "MISMATCH" });
    s
}

fn equiv(common: &Common, cfg: EquivConfig, format: Format) -> Result<String, CliError> {
    let m = common.monoid;
    let f = common.formula()?;
    let red = reduce(&f, m);
    if !in_fragment(&red, m) {
        return Err(CliError::Fragment(format!("formula is not in {}", fragment_name(m))));
    }
    let r = check_equivalence(&f, m, &common.ap, &cfg).map_err(|e| match e {
        wltl::eval::EquivError::Translate(t) => CliError::from(t),
        other => CliError::Internal(other.to_string()),
    })?;
    let text = match format {
        Format::Json => json(&r),
        _ => report_text(&r),
    };
    if r.is_ok() {
        Ok(text)
    } else {
        print!("{text}");
        Err(CliError::Mismatch(format!("{} mismatches", r.mismatches.len() + r.brute_mismatches.len())))
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Check { common, format } => check(&common, format),
        Command::Translate { common, normalize, format } => translate(&common, normalize, format),
        Command::Eval { common, word, format } => eval(&common, &word, format),
        Command::Equiv { common, samples, seed, max_stem, max_period, no_brute, format } => {
            let cfg = EquivConfig {
                samples,
                seed,
                max_stem,
                max_period,
                cap: common.cap(),
                brute: !no_brute,
            };
            equiv(&common, cfg, format)
        }
    }
}

fn main() -> ExitCode {
    // usage errors share the parse-error code; 2 is reserved for fragments
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
