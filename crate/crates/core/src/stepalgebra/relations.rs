//! Verification of the printed quadratic relations and their independent
//! derivation by solving for coefficients over `Q(eta)`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncpoly::{Element, Monomial};
use crate::rational::{parse_rational_function, RationalFunction};

use super::linsolve::solve;
use super::zword::{ZLetter, ZWord};
use super::{QuotientElement, StepAlgebra};

/// `(i, j)` with `i > j` for relations 1..=10, i.e. the left-hand side `v_i v_j`.
pub const RELATION_PAIRS: [(i64, i64); 10] = [
    (-1, -2),
    (0, -2),
    (0, -1),
    (1, -2),
    (1, -1),
    (2, -2),
    (2, -1),
    (1, 0),
    (2, 0),
    (2, 1),
];

pub fn relation_pair(k: usize) -> Result<(i64, i64)> {
    k.checked_sub(1)
        .and_then(|i| RELATION_PAIRS.get(i))
        .copied()
        .ok_or_else(|| Error::Invalid(format!("relation index must be 1..=10, got {k}")))
}

fn relation_index(pair: (i64, i64)) -> Option<usize> {
    RELATION_PAIRS.iter().position(|&p| p == pair).map(|i| i + 1)
}

#[derive(Clone, Debug)]
pub struct PrintedRelation {
    pub index: usize,
    pub lhs: ZWord,
    /// Verbatim source line.
    pub source: String,
    /// `(word, coefficient, coefficient text as transcribed)`.
    pub terms: Vec<(ZWord, RationalFunction, String)>,
}

#[derive(Clone, Debug)]
pub struct PrintedTable {
    /// `(name, value, source)`.
    pub definitions: Vec<(String, RationalFunction, String)>,
    pub relations: Vec<PrintedRelation>,
}

const FIXTURE: &str = include_str!("../../data/printed_relations.txt");

/// The transcribed relation table, parsed once.
pub fn printed_relations() -> &'static PrintedTable {
    static TABLE: OnceLock<PrintedTable> = OnceLock::new();
    TABLE.get_or_init(|| parse_fixture(FIXTURE).expect("printed relation fixture parses"))
}

fn substitute(src: &str, defs: &[(String, String)]) -> String {
    let mut out = String::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        match defs.iter().find(|(n, _)| n == word) {
            Some((_, v)) => {
                out.push('(');
                out.push_str(v);
                out.push(')');
            }
            None => out.push_str(word),
        }
        word.clear();
    };
    for c in src.chars() {
        if c.is_ascii_alphanumeric() || c == '_' {
            word.push(c);
        } else {
            flush(&mut word, &mut out);
            out.push(c);
        }
    }
    flush(&mut word, &mut out);
    out
}

fn parse_fixture(text: &str) -> Result<PrintedTable> {
    let mut def_src: Vec<(String, String)> = Vec::new();
    let mut definitions: Vec<(String, RationalFunction, String)> = Vec::new();
    let mut relations: Vec<PrintedRelation> = Vec::new();
    let bad = |line: usize, msg: &str| Error::Parse {
        line,
        col: 1,
        msg: msg.to_string(),
    };
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (kw, rest) = line.split_once(' ').ok_or_else(|| bad(n, "missing arguments"))?;
        match kw {
            "define" => {
                let (name, value) = rest.split_once('=').ok_or_else(|| bad(n, "expected '='"))?;
                let value = value.trim().to_string();
                let f = parse_rational_function(&substitute(&value, &def_src))?;
                def_src.push((name.trim().to_string(), value));
                definitions.push((name.trim().to_string(), f, String::new()));
            }
            "source" => match relations.last_mut() {
                Some(r) if r.source.is_empty() => r.source = rest.to_string(),
                _ => {
                    let (name, tex) = rest.split_once(' ').ok_or_else(|| bad(n, "expected name"))?;
                    let d = definitions
                        .iter_mut()
                        .find(|d| d.0 == name)
                        .ok_or_else(|| bad(n, "source for unknown definition"))?;
                    d.2 = tex.to_string();
                }
            },
            "relation" => {
                let (k, lhs) = rest.split_once(' ').ok_or_else(|| bad(n, "expected index and word"))?;
                relations.push(PrintedRelation {
                    index: k.parse().map_err(|_| bad(n, "bad index"))?,
                    lhs: ZWord::parse_shape(lhs)?,
                    source: String::new(),
                    terms: Vec::new(),
                });
            }
            "term" => {
                let (w, c) = rest.split_once('=').ok_or_else(|| bad(n, "expected '='"))?;
                let r = relations.last_mut().ok_or_else(|| bad(n, "term outside a relation"))?;
                let coef = c.trim().to_string();
                let f = parse_rational_function(&substitute(&coef, &def_src))?;
                r.terms.push((ZWord::parse_shape(w)?, f, coef));
            }
            _ => return Err(bad(n, "unknown keyword")),
        }
    }
    Ok(PrintedTable {
        definitions,
        relations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Verify,
    Derive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub word: String,
    pub printed: String,
    pub derived: String,
}

#[derive(Clone, Debug)]
pub struct ZRelationReport {
    pub relation_index: Option<usize>,
    pub pair: (i64, i64),
    pub mode: Mode,
    pub lhs: ZWord,
    pub lhs_value: QuotientElement,
    pub rhs_value: QuotientElement,
    /// `phi(lhs) - phi(rhs)`: the printed right-hand side in verify mode, the
    /// derived one in derive mode.
    pub residual: QuotientElement,
    pub verified: bool,
    pub ansatz: Vec<ZWord>,
    /// Nonzero solved coefficients, in ansatz order.
    pub derived: Vec<(ZWord, RationalFunction)>,
    pub derivation_error: Option<String>,
    pub printed: Vec<(ZWord, RationalFunction)>,
    pub printed_source: Option<String>,
    pub pole_set: Vec<BigRational>,
    pub mismatches: Vec<Mismatch>,
}

impl ZRelationReport {
    pub fn derived_coefficient(&self, shape: &str) -> RationalFunction {
        lookup(&self.derived, shape)
    }

    pub fn printed_coefficient(&self, shape: &str) -> RationalFunction {
        lookup(&self.printed, shape)
    }

    /// Relation as text, `lhs = c1*w1 + ...`, using the derived coefficients.
    pub fn derived_text(&self) -> String {
        render_relation(&self.lhs, &self.derived)
    }

    pub fn printed_text(&self) -> String {
        render_relation(&self.lhs, &self.printed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs = |v: &[(ZWord, RationalFunction)]| -> serde_json::Map<String, serde_json::Value> {
            v.iter()
                .map(|(w, c)| (w.shape(), serde_json::Value::String(c.to_string())))
                .collect()
        };
        serde_json::json!({
            "relation_index": self.relation_index,
            "pair": [self.pair.0, self.pair.1],
            "mode": self.mode,
            "lhs": self.lhs.shape(),
            "verified": self.verified,
            "residual": self.residual.render(),
            "derived_coefficients": coeffs(&self.derived),
            "derivation_error": self.derivation_error,
            "printed_coefficients": coeffs(&self.printed),
            "printed_source": self.printed_source,
            "ansatz": self.ansatz.iter().map(ZWord::shape).collect::<Vec<_>>(),
            "pole_set": self.pole_set.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "mismatches": self.mismatches,
        })
    }
}

fn lookup(v: &[(ZWord, RationalFunction)], shape: &str) -> RationalFunction {
    v.iter()
        .find(|(w, _)| w.shape() == shape)
        .map(|(_, c)| c.clone())
        .unwrap_or_default()
}

fn render_relation(lhs: &ZWord, terms: &[(ZWord, RationalFunction)]) -> String {
    if terms.is_empty() {
        return format!("{} = 0", lhs.shape());
    }
    let mut s = format!("{} =", lhs.shape());
    for (k, (w, c)) in terms.iter().enumerate() {
        let neg = c.leading_sign_negative();
        let mag = if neg { -c } else { c.clone() };
        s.push_str(match (k, neg) {
            (0, false) => " ",
            (0, true) => " -",
            (_, false) => " + ",
            (_, true) => " - ",
        });
        let coef = if mag.is_simple() {
            mag.to_string()
        } else {
            format!("({mag})")
        };
        match (w.letters.is_empty(), mag.is_one()) {
            (true, _) => s.push_str(&coef),
            (false, true) => s.push_str(&w.shape()),
            (false, false) => s.push_str(&format!("{coef}*{}", w.shape())),
        }
    }
    s
}

/// Transpose: `v_i -> v_{-i}`, word order reversed, `eta` fixed. Carrying
/// each coefficient back to the left of the reversed word shifts it by the
/// relation's weight, so `c(eta)` becomes `c(eta + weight)` where `weight`
/// is that of `v_i v_j`, i.e. `-(i + j)`.
pub fn z_mirror(
    pair: (i64, i64),
    terms: &[(ZWord, RationalFunction)],
) -> ((i64, i64), Vec<(ZWord, RationalFunction)>) {
    let weight = -(pair.0 + pair.1);
    let image = terms
        .iter()
        .map(|(w, c)| {
            let mut letters: Vec<ZLetter> = w.letters.iter().rev().map(|l| l.reversed()).collect();
            // r is central
            letters.sort_by_key(|l| matches!(l, ZLetter::R));
            (ZWord::new(letters), c.shift(weight))
        })
        .collect();
    ((-pair.1, -pair.0), image)
}

impl StepAlgebra {
    /// Words of index sum `s`: pairs `v_a v_b` with `a <= b`, singletons,
    /// and `1`, `r` when `s = 0`. The extended basis allows every sorted
    /// word of length at most three, `r` included.
    pub fn ansatz(&self, s: i64, extended: bool) -> Vec<ZWord> {
        let idx = self.letter_indices();
        let mut out = Vec::new();
        if !extended {
            for (ka, &a) in idx.iter().enumerate() {
                for &b in &idx[ka..] {
                    if a + b == s {
                        out.push(ZWord::new(vec![ZLetter::V(a), ZLetter::V(b)]));
                    }
                }
            }
            if idx.contains(&s) {
                out.push(ZWord::new(vec![ZLetter::V(s)]));
            }
            if s == 0 {
                out.push(ZWord::one());
                if self.letter_generator(ZLetter::R).is_ok() {
                    out.push(ZWord::new(vec![ZLetter::R]));
                }
            }
            return out;
        }
        let mut alphabet: Vec<ZLetter> = idx.iter().map(|&i| ZLetter::V(i)).collect();
        if self.letter_generator(ZLetter::R).is_ok() {
            alphabet.push(ZLetter::R);
        }
        fn rec(alpha: &[ZLetter], start: usize, left: usize, cur: &mut Vec<ZLetter>, s: i64, out: &mut Vec<ZWord>) {
            if cur.iter().map(|l| -l.weight()).sum::<i64>() == s {
                out.push(ZWord::new(cur.clone()));
            }
            if left == 0 {
                return;
            }
            for k in start..alpha.len() {
                cur.push(alpha[k]);
                rec(alpha, k, left - 1, cur, s, out);
                cur.pop();
            }
        }
        rec(&alphabet, 0, 3, &mut Vec::new(), s, &mut out);
        out.sort_by(|a, b| b.letters.len().cmp(&a.letters.len()).then(a.letters.cmp(&b.letters)));
        out
    }

    fn lhs_word(&self, pair: (i64, i64)) -> ZWord {
        ZWord::new(vec![ZLetter::V(pair.0), ZLetter::V(pair.1)])
    }

    fn combine(&self, terms: &[(ZWord, RationalFunction)]) -> Result<QuotientElement> {
        let gens = self.pres.generators();
        let mut acc = Element::zero(gens);
        for (w, c) in terms {
            acc = acc.add(&self.phi(&w.clone().with_coefficient(c.clone()))?.0)?;
        }
        Ok(QuotientElement(acc))
    }

    fn solve_with(&self, target: &Element, basis: &[ZWord]) -> Result<Vec<RationalFunction>> {
        let images: Vec<Element> = basis
            .iter()
            .map(|w| self.phi(w).map(|q| q.0))
            .collect::<Result<_>>()?;
        let mut rows: BTreeSet<Monomial> = target.terms().map(|(m, _)| m.clone()).collect();
        for im in &images {
            rows.extend(im.terms().map(|(m, _)| m.clone()));
        }
        let a: Vec<Vec<RationalFunction>> = rows
            .iter()
            .map(|m| images.iter().map(|im| im.coefficient(m)).collect())
            .collect();
        let b: Vec<RationalFunction> = rows.iter().map(|m| target.coefficient(m)).collect();
        solve(a, b, basis.len())
    }

    /// Solves `phi(v_i v_j) = sum_s c_s phi(s)` over the ansatz for `i > j`,
    /// retrying once with the extended basis.
    pub fn derive_relation(&self, i: i64, j: i64) -> Result<ZRelationReport> {
        if i <= j {
            return Err(Error::Invalid(format!("derive needs i > j, got ({i}, {j})")));
        }
        let idx = self.letter_indices();
        for k in [i, j] {
            if !idx.contains(&k) {
                return Err(Error::UnknownGenerator(format!("v{k}")));
            }
        }
        let pair = (i, j);
        let lhs = self.lhs_word(pair);
        let lhs_value = self.phi(&lhs)?;
        let (ansatz, coeffs) = match self.solve_with(lhs_value.value(), &self.ansatz(i + j, false)) {
            Ok(c) => (self.ansatz(i + j, false), c),
            Err(Error::SingularSystem(_) | Error::InconsistentSystem(_)) => {
                let basis = self.ansatz(i + j, true);
                let c = self.solve_with(lhs_value.value(), &basis)?;
                (basis, c)
            }
            Err(e) => return Err(e),
        };
        let derived: Vec<(ZWord, RationalFunction)> = ansatz
            .iter()
            .cloned()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let rhs_value = self.combine(&derived)?;
        let residual = QuotientElement(lhs_value.value().sub(rhs_value.value())?);
        let mut report = ZRelationReport {
            relation_index: relation_index(pair),
            pair,
            mode: Mode::Derive,
            lhs,
            verified: residual.is_zero(),
            lhs_value,
            rhs_value,
            residual,
            ansatz,
            derived,
            derivation_error: None,
            printed: Vec::new(),
            printed_source: None,
            pole_set: Vec::new(),
            mismatches: Vec::new(),
        };
        if let Some(k) = report.relation_index {
            attach_printed(&mut report, k);
        }
        finish(&mut report);
        Ok(report)
    }

    /// Residual of the printed relation `k`, together with the derived
    /// coefficients and every disagreement between the two.
    pub fn verify_relation(&self, k: usize) -> Result<ZRelationReport> {
        let pair = relation_pair(k)?;
        let printed = &printed_relations().relations[k - 1];
        debug_assert_eq!(printed.index, k);
        let terms: Vec<(ZWord, RationalFunction)> =
            printed.terms.iter().map(|(w, c, _)| (w.clone(), c.clone())).collect();
        let lhs = self.lhs_word(pair);
        let lhs_value = self.phi(&lhs)?;
        let rhs_value = self.combine(&terms)?;
        let residual = QuotientElement(lhs_value.value().sub(rhs_value.value())?);
        let (ansatz, derived, derivation_error) = match self.derive_relation(pair.0, pair.1) {
            Ok(d) => (d.ansatz, d.derived, None),
            Err(e) => (Vec::new(), Vec::new(), Some(e.to_string())),
        };
        let mut report = ZRelationReport {
            relation_index: Some(k),
            pair,
            mode: Mode::Verify,
            lhs,
            verified: residual.is_zero(),
            lhs_value,
            rhs_value,
            residual,
            ansatz,
            derived,
            derivation_error,
            printed: Vec::new(),
            printed_source: None,
            pole_set: Vec::new(),
            mismatches: Vec::new(),
        };
        attach_printed(&mut report, k);
        finish(&mut report);
        Ok(report)
    }

    /// All ten printed relations, computed in parallel, reported in index order.
    pub fn verify_all(&self) -> Vec<Result<ZRelationReport>> {
        (1..=RELATION_PAIRS.len())
            .into_par_iter()
            .map(|k| self.verify_relation(k))
            .collect()
    }

    /// Derivations for all ten pairs, in relation order.
    pub fn derive_all(&self) -> Vec<Result<ZRelationReport>> {
        RELATION_PAIRS
            .par_iter()
            .map(|&(i, j)| self.derive_relation(i, j))
            .collect()
    }

    /// Whether the transpose of the derived relation for `(i, j)` equals the
    /// derived relation for `(-j, -i)`.
    pub fn check_z_mirror(&self, i: i64, j: i64) -> Result<bool> {
        let a = self.derive_relation(i, j)?;
        let (pair, image) = z_mirror(a.pair, &a.derived);
        let b = self.derive_relation(pair.0, pair.1)?;
        let as_map = |v: &[(ZWord, RationalFunction)]| -> BTreeMap<String, RationalFunction> {
            v.iter().map(|(w, c)| (w.shape(), c.clone())).collect()
        };
        Ok(as_map(&image) == as_map(&b.derived))
    }
}

fn attach_printed(report: &mut ZRelationReport, k: usize) {
    let printed = &printed_relations().relations[k - 1];
    report.printed = printed.terms.iter().map(|(w, c, _)| (w.clone(), c.clone())).collect();
    report.printed_source = Some(printed.source.clone());
}

/// Fills poles and mismatches from the printed and derived coefficients.
fn finish(report: &mut ZRelationReport) {
    let mut poles: BTreeSet<BigRational> = BTreeSet::new();
    for (_, c) in report.printed.iter().chain(&report.derived) {
        poles.extend(c.poles());
    }
    report.pole_set = poles.into_iter().collect();
    if report.printed.is_empty() || report.derivation_error.is_some() {
        return;
    }
    let mut words: Vec<ZWord> = report.ansatz.clone();
    for (w, _) in &report.printed {
        if !words.contains(w) {
            words.push(w.clone());
        }
    }
    report.mismatches = words
        .iter()
        .filter_map(|w| {
            let p = lookup(&report.printed, &w.shape());
            let d = lookup(&report.derived, &w.shape());
            (p != d).then(|| Mismatch {
                word: w.shape(),
                printed: p.to_string(),
                derived: d.to_string(),
            })
        })
        .collect();
}
