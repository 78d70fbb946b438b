//! Command logic behind the `crw` binary, kept in a library so tests can
//! drive it without spawning processes.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crw_core::algebras::{builtin, parse_presentation, BUILTIN_NAMES};
use crw_core::stepalgebra::{ProjectorIdentityReport, ZRelationReport};
use crw_core::{
    Element, Error, Monomial, Presentation, ProjectorSeries, RationalFunction, StepAlgebra, ZLetter,
    ZWord,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_ENGINE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "crw", version, about = "Normal ordering, projector and step-algebra relations for cRW(sl2)")]
pub struct Cli {
    #[command(flatten)]
    pub cfg: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Built-in presentation name or path to a DSL file.
    #[arg(long, global = true, default_value = "crw")]
    pub algebra: String,
    /// Apply the documented corrections to a built-in presentation.
    #[arg(long, global = true, value_enum, default_value_t = Switch::On)]
    pub corrections: Switch,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Series order for the projector identity check.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub truncation: u32,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Switch {
    On,
    Off,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the normal form of an expression.
    Normalize { expr: String },
    /// Resolve all overlaps and validate weight homogeneity.
    Check,
    /// Verify or derive step-algebra relations.
    Zrel {
        #[command(subcommand)]
        mode: ZrelMode,
    },
    /// Apply the extremal projector, or check its defining identities.
    Projector {
        expr: Option<String>,
        /// Check `l1*p = 0` and `p*l-1 = 0` through order N (default: --truncation).
        #[arg(long, num_args = 0..=1, default_missing_value = "0")]
        identities: Option<u32>,
        /// Check idempotence modulo the ideal on N random elements.
        #[arg(long)]
        idempotence: Option<usize>,
        /// Use the perturbed series (negative control).
        #[arg(long)]
        perturbed: bool,
    },
    /// Print the presentation.
    Show,
}

#[derive(Subcommand, Debug)]
pub enum ZrelMode {
    /// Check printed relation K (1..=10) or all of them.
    Verify {
        #[arg(required_unless_present = "all")]
        index: Option<usize>,
        #[arg(long, conflicts_with = "index")]
        all: bool,
    },
    /// Solve for the relation with left-hand side v_I v_J, I > J.
    Derive {
        #[arg(allow_hyphen_values = true)]
        i: i64,
        #[arg(allow_hyphen_values = true)]
        j: i64,
    },
}

/// Exit code plus what goes to standard output and standard error.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::UnknownGenerator(_) => EXIT_PARSE,
        _ => EXIT_ENGINE,
    }
}

pub fn load_presentation(cfg: &RunConfig) -> Result<Presentation, Error> {
    if BUILTIN_NAMES.contains(&cfg.algebra.as_str()) {
        return builtin(&cfg.algebra, cfg.corrections == Switch::On);
    }
    let text = std::fs::read_to_string(&cfg.algebra).map_err(|e| Error::Parse {
        line: 0,
        col: 0,
        msg: format!(
            "'{}' is neither a built-in ({}) nor a readable file: {e}",
            cfg.algebra,
            BUILTIN_NAMES.join(", ")
        ),
    })?;
    parse_presentation(&text)
}

pub fn run(cli: &Cli) -> Outcome {
    let mut out = Outcome::default();
    match dispatch(cli, &mut out) {
        Ok(code) => out.code = code,
        Err(e) => {
            out.code = error_code(&e);
            let _ = writeln!(out.stderr, "error: {e}");
        }
    }
    out
}

fn dispatch(cli: &Cli, out: &mut Outcome) -> Result<i32, Error> {
    let cfg = &cli.cfg;
    let pres = load_presentation(cfg)?;
    match &cli.command {
        Command::Normalize { expr } => normalize(cfg, &pres, expr, out),
        Command::Check => check(cfg, &pres, out),
        Command::Show => {
            out.stdout = match cfg.format {
                Format::Json => pretty(&pres.to_json()),
                Format::Text => pres.render(),
                Format::Latex => presentation_latex(&pres),
            };
            Ok(EXIT_OK)
        }
        Command::Projector {
            expr,
            identities,
            idempotence,
            perturbed,
        } => {
            let series = if *perturbed {
                ProjectorSeries::PerturbedFirst
            } else {
                ProjectorSeries::Standard
            };
            let step = StepAlgebra::with_series(pres, series)?;
            if let Some(n) = identities {
                let order = if *n == 0 { cfg.truncation } else { *n };
                return identities_cmd(cfg, &step, order as usize, out);
            }
            if let Some(n) = idempotence {
                return idempotence_cmd(cfg, &step, *n, out);
            }
            let Some(expr) = expr else {
                return Err(Error::Invalid(
                    "projector needs an expression, --identities or --idempotence".into(),
                ));
            };
            let x = step.presentation().parse_element(expr)?;
            let y = step.apply_projector(&x)?;
            out.stdout = match cfg.format {
                Format::Text => y.render() + "\n",
                Format::Latex => y.to_latex() + "\n",
                Format::Json => pretty(&json!({"input": expr, "projected": y.render()})),
            };
            Ok(EXIT_OK)
        }
        Command::Zrel { mode } => {
            let step = StepAlgebra::new(pres)?;
            zrel(cfg, &step, mode, out)
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn normalize(cfg: &RunConfig, pres: &Presentation, expr: &str, out: &mut Outcome) -> Result<i32, Error> {
    let x = pres.parse_element(expr)?;
    let nf = pres.normal_form(&x)?;
    out.stdout = match cfg.format {
        Format::Text => nf.render() + "\n",
        Format::Latex => nf.to_latex() + "\n",
        Format::Json => pretty(&json!({"input": expr, "normal_form": nf.render()})),
    };
    Ok(EXIT_OK)
}

fn check(cfg: &RunConfig, pres: &Presentation, out: &mut Outcome) -> Result<i32, Error> {
    let validation = pres.validate();
    let missing: Vec<String> = pres
        .rules()
        .missing_pairs()
        .into_iter()
        .map(|(hi, lo)| {
            let g = pres.generators();
            format!("[{},{}]", g.name(hi), g.name(lo))
        })
        .collect();
    let overlaps = pres.rules().check_overlaps()?;
    let unresolved: Vec<_> = overlaps.iter().filter(|o| !o.resolved).collect();
    let ok = unresolved.is_empty() && validation.weight_homogeneous && missing.is_empty();
    let code = if ok { EXIT_OK } else { EXIT_MATH };
    let mut s = String::new();
    match cfg.format {
        Format::Json => {
            s = pretty(&json!({
                "algebra": pres.name,
                "corrections": pres.corrections.iter().map(|c| &c.id).collect::<Vec<_>>(),
                "triples": overlaps.len(),
                "resolved": overlaps.len() - unresolved.len(),
                "unresolved": unresolved.iter().map(|o| o.summary()).collect::<Vec<_>>(),
                "missing_rules": missing,
                "validation": validation,
                "passed": ok,
            }));
        }
        Format::Text | Format::Latex => {
            let latex = cfg.format == Format::Latex;
            let _ = writeln!(s, "algebra: {} ({} corrections)", pres.name, pres.corrections.len());
            let _ = writeln!(s, "kind: {}", validation.kind);
            if validation.weight_homogeneous {
                let _ = writeln!(s, "weight homogeneity: ok");
            } else {
                let _ = writeln!(s, "weight homogeneity: FAIL");
                for t in &validation.offending {
                    let _ = writeln!(
                        s,
                        "  [{},{}]: term {} has weight {}, expected {}",
                        t.relation[0], t.relation[1], t.term, t.weight, t.expected
                    );
                }
            }
            for m in &missing {
                let _ = writeln!(s, "missing rule: {m}");
            }
            let _ = writeln!(s, "overlaps: {}/{} resolved", overlaps.len() - unresolved.len(), overlaps.len());
            for o in &unresolved {
                let diff = if latex { o.difference.to_latex() } else { o.difference.render() };
                let _ = writeln!(s, "  unresolved ({}, {}, {}): {}", o.names[0], o.names[1], o.names[2], diff);
            }
            for m in &validation.messages {
                let _ = writeln!(s, "note: {m}");
            }
            let _ = writeln!(s, "result: {}", if ok { "PASS" } else { "FAIL" });
        }
    }
    out.stdout = s;
    Ok(code)
}

fn identities_line(r: &ProjectorIdentityReport) -> String {
    format!(
        "l1*p = 0, p*l-1 = 0 up to order {}: {}",
        r.order,
        if r.passed { "PASS" } else { "FAIL" }
    )
}

fn identities_cmd(cfg: &RunConfig, step: &StepAlgebra, order: usize, out: &mut Outcome) -> Result<i32, Error> {
    let r = step.check_projector_identities(order)?;
    out.stdout = match cfg.format {
        Format::Json => pretty(&serde_json::to_value(&r).expect("report serializes")),
        _ => {
            let mut s = identities_line(&r) + "\n";
            for (side, m, c) in &r.failures {
                let _ = writeln!(s, "  {side}: {m} has coefficient {c}");
            }
            s
        }
    };
    Ok(if r.passed { EXIT_OK } else { EXIT_MATH })
}

/// Random normal-ordered elements with at most `max_wdeg` letters from the
/// multiplet, plus a few sl2 and central letters.
pub fn random_elements(pres: &Presentation, count: usize, seed: u64, max_wdeg: usize) -> Result<Vec<Element>, Error> {
    let gens = pres.generators();
    let (lower, upper) = pres.require_sl2()?;
    let central: Vec<_> = gens.iter().filter(|g| g.central).map(|g| gens.require(&g.name)).collect::<Result<_, _>>()?;
    let multiplet: Vec<_> = gens
        .ids()
        .filter(|&g| g != lower && g != upper && !central.contains(&g))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut x = Element::zero(gens);
        for _ in 0..rng.gen_range(1..=3) {
            let mut letters = Vec::new();
            for _ in 0..rng.gen_range(0..=max_wdeg) {
                letters.push(multiplet[rng.gen_range(0..multiplet.len())]);
            }
            if rng.gen_bool(0.3) {
                letters.insert(0, lower);
            }
            if rng.gen_bool(0.2) {
                letters.push(upper);
            }
            if !central.is_empty() && rng.gen_bool(0.2) {
                letters.push(central[0]);
            }
            let c = RationalFunction::new(
                crw_core::Polynomial::from_ints(&[rng.gen_range(-3..=3), rng.gen_range(-2..=2)]),
                crw_core::Polynomial::from_ints(&[rng.gen_range(1..=4)]),
            )?;
            x = x.add(&Element::term(gens, c, Monomial::from_letters(letters)))?;
        }
        out.push(pres.normal_form(&x)?);
    }
    Ok(out)
}

/// Counts elements where projecting twice differs from projecting once.
pub fn idempotence_failures(step: &StepAlgebra, xs: &[Element]) -> Result<Vec<usize>, Error> {
    let mut bad = Vec::new();
    for (k, x) in xs.iter().enumerate() {
        let once = step.apply_projector(x)?;
        let twice = step.apply_projector(once.value())?;
        if once != twice {
            bad.push(k);
        }
    }
    Ok(bad)
}

fn idempotence_cmd(cfg: &RunConfig, step: &StepAlgebra, n: usize, out: &mut Outcome) -> Result<i32, Error> {
    let xs = random_elements(step.presentation(), n, cfg.seed, 3)?;
    let bad = idempotence_failures(step, &xs)?;
    out.stdout = match cfg.format {
        Format::Json => pretty(&json!({
            "count": n,
            "seed": cfg.seed,
            "failures": bad.iter().map(|&k| xs[k].render()).collect::<Vec<_>>(),
            "passed": bad.is_empty(),
        })),
        _ => {
            let mut s = format!(
                "projector idempotent on {n} random elements (seed {}): {}\n",
                cfg.seed,
                if bad.is_empty() { "PASS" } else { "FAIL" }
            );
            for &k in &bad {
                let _ = writeln!(s, "  {}", xs[k].render());
            }
            s
        }
    };
    Ok(if bad.is_empty() { EXIT_OK } else { EXIT_MATH })
}

fn zrel(cfg: &RunConfig, step: &StepAlgebra, mode: &ZrelMode, out: &mut Outcome) -> Result<i32, Error> {
    match mode {
        ZrelMode::Verify { all: true, .. } => {
            let reports: Vec<ZRelationReport> = step.verify_all().into_iter().collect::<Result<_, _>>()?;
            let ok = reports.iter().all(|r| r.verified);
            out.stdout = match cfg.format {
                Format::Json => pretty(&Value::Array(reports.iter().map(|r| r.to_json()).collect())),
                Format::Text => reports.iter().map(report_text).collect::<Vec<_>>().join("\n"),
                Format::Latex => reports.iter().map(report_latex).collect(),
            };
            Ok(if ok { EXIT_OK } else { EXIT_MATH })
        }
        ZrelMode::Verify { index, .. } => {
            let k = index.ok_or_else(|| Error::Invalid("missing relation index".into()))?;
            let r = step.verify_relation(k)?;
            out.stdout = format_report(cfg, &r);
            Ok(if r.verified { EXIT_OK } else { EXIT_MATH })
        }
        ZrelMode::Derive { i, j } => {
            let r = step.derive_relation(*i, *j)?;
            out.stdout = format_report(cfg, &r);
            Ok(if r.verified { EXIT_OK } else { EXIT_MATH })
        }
    }
}

fn format_report(cfg: &RunConfig, r: &ZRelationReport) -> String {
    match cfg.format {
        Format::Json => pretty(&r.to_json()),
        Format::Text => report_text(r),
        Format::Latex => report_latex(r),
    }
}

pub fn report_text(r: &ZRelationReport) -> String {
    let mut s = String::new();
    match r.relation_index {
        Some(k) => {
            let _ = writeln!(s, "relation {k}: {}", r.lhs.shape());
        }
        None => {
            let _ = writeln!(s, "pair ({}, {}): {}", r.pair.0, r.pair.1, r.lhs.shape());
        }
    }
    if !r.printed.is_empty() {
        let _ = writeln!(s, "  printed:  {}", r.printed_text());
    }
    match &r.derivation_error {
        Some(e) => {
            let _ = writeln!(s, "  derived:  failed ({e})");
        }
        None => {
            let _ = writeln!(s, "  derived:  {}", r.derived_text());
        }
    }
    let _ = writeln!(s, "  residual: {}", r.residual.render());
    let _ = writeln!(s, "  verified: {}", if r.verified { "yes" } else { "no" });
    if !r.pole_set.is_empty() {
        let poles: Vec<String> = r.pole_set.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(s, "  poles:    eta in {{{}}}", poles.join(", "));
    }
    for m in &r.mismatches {
        let _ = writeln!(s, "  mismatch {}: printed {}, derived {}", m.word, m.printed, m.derived);
    }
    s
}

fn word_latex(w: &ZWord) -> String {
    if w.letters.is_empty() {
        return String::new();
    }
    let mut s = String::new();
    let mut i = 0;
    while i < w.letters.len() {
        let mut j = i;
        while j < w.letters.len() && w.letters[j] == w.letters[i] {
            j += 1;
        }
        let base = match w.letters[i] {
            ZLetter::V(k) => format!("v_{{{k}}}"),
            ZLetter::R => "r".to_string(),
        };
        s.push_str(&base);
        if j - i > 1 {
            let _ = write!(s, "^{{{}}}", j - i);
        }
        i = j;
    }
    s
}

fn relation_latex(lhs: &ZWord, terms: &[(ZWord, RationalFunction)]) -> String {
    let mut s = format!("{} &=", word_latex(lhs));
    if terms.is_empty() {
        s.push_str(" 0");
    }
    for (k, (w, c)) in terms.iter().enumerate() {
        let body = c.to_latex();
        let coef = if c.is_one() && !w.letters.is_empty() {
            String::new()
        } else if c.numer().term_count() > 1 && !w.letters.is_empty() {
            format!("\\left({body}\\right)")
        } else {
            body
        };
        if k > 0 {
            s.push_str(" +");
        }
        let _ = write!(s, " {coef}{}", word_latex(w));
    }
    s
}

pub fn report_latex(r: &ZRelationReport) -> String {
    let mut s = String::from("\\begin{align*}\n");
    if !r.printed.is_empty() {
        let _ = writeln!(s, "% printed\n{} \\\\", relation_latex(&r.lhs, &r.printed));
    }
    let _ = writeln!(s, "% derived\n{}", relation_latex(&r.lhs, &r.derived));
    s.push_str("\\end{align*}\n");
    let _ = writeln!(
        s,
        "% residual {}: {}",
        if r.verified { "zero" } else { "nonzero" },
        r.residual.to_latex()
    );
    s
}

fn presentation_latex(p: &Presentation) -> String {
    let gens = p.generators();
    let mut s = String::from("\\begin{align*}\n");
    for (hi, lo, comm) in p.relations() {
        let _ = writeln!(
            s,
            "[{}, {}] &= {} \\\\",
            crw_core::ncpoly::latex_name(gens.name(hi)),
            crw_core::ncpoly::latex_name(gens.name(lo)),
            comm.to_latex()
        );
    }
    s.push_str("\\end{align*}\n");
    s
}
