//! Normal ordering by rewriting adjacent out-of-order generator pairs, and
//! overlap checking of a rule set.
//!
//! Termination uses a filtration: each generator gets degree 1 or 2 and
//! monomials are compared by (total degree, length, lexicographic letters).
//! Every rule must replace `hi*lo` by `lo*hi` plus strictly smaller terms.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncpoly::{Element, GenId, GeneratorSet, Monomial};
use crate::rational::RationalFunction;

/// Default bound on rewrite steps per [`RuleSet::normal_form`] call.
pub const DEFAULT_STEP_LIMIT: usize = 20_000_000;

/// `hi*lo -> right`, with `sort(hi) > sort(lo)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule {
    pub hi: GenId,
    pub lo: GenId,
    pub right: Element,
}

impl RewriteRule {
    /// Rule from a commutator: `hi*lo -> lo*hi + comm`.
    pub fn from_commutator(hi: GenId, lo: GenId, comm: &Element) -> Result<Self> {
        let gens = comm.generators();
        let swapped = Element::word(gens, &[lo, hi]);
        Ok(Self {
            hi,
            lo,
            right: swapped.add(comm)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct OrderKey {
    degree: u32,
    len: usize,
}

/// Immutable set of rewrite rules over one generator set.
#[derive(Clone, Debug)]
pub struct RuleSet {
    gens: Arc<GeneratorSet>,
    /// Indexed `hi * n + lo`; right-hand sides already in normal form.
    table: Vec<Option<Element>>,
    degree: Vec<u32>,
    step_limit: usize,
}

impl RuleSet {
    pub fn new(gens: &Arc<GeneratorSet>, rules: Vec<RewriteRule>) -> Result<Self> {
        let n = gens.len();
        let mut table: Vec<Option<Element>> = vec![None; n * n];
        for r in rules {
            if r.hi <= r.lo {
                return Err(Error::InvalidRelation(format!(
                    "rule {}*{} is not an out-of-order pair",
                    gens.name(r.hi),
                    gens.name(r.lo)
                )));
            }
            if !r.right.same_context(&Element::zero(gens)) {
                return Err(Error::MixedPresentations);
            }
            let slot = &mut table[r.hi as usize * n + r.lo as usize];
            if slot.is_some() {
                return Err(Error::DuplicateRule(
                    gens.name(r.hi).into(),
                    gens.name(r.lo).into(),
                ));
            }
            *slot = Some(r.right);
        }
        let degree = filtration_degrees(gens, &table);
        let mut set = Self {
            gens: gens.clone(),
            table,
            degree,
            step_limit: DEFAULT_STEP_LIMIT,
        };
        set.check_decreasing()?;
        // A word below hi*lo never contains hi*lo, so each right-hand side can
        // be normalized with the current table in any order.
        for i in 0..set.table.len() {
            if let Some(rhs) = set.table[i].clone() {
                let nf = set.normal_form(&rhs)?;
                set.table[i] = Some(nf);
            }
        }
        Ok(set)
    }

    pub fn with_step_limit(mut self, limit: usize) -> Self {
        self.step_limit = limit;
        self
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    /// Normalized right-hand side for `hi*lo`.
    pub fn rule(&self, hi: GenId, lo: GenId) -> Option<&Element> {
        self.table
            .get(hi as usize * self.gens.len() + lo as usize)
            .and_then(Option::as_ref)
    }

    /// All rules in order of `(hi, lo)`.
    pub fn rules(&self) -> Vec<RewriteRule> {
        let n = self.gens.len();
        self.table
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                r.as_ref().map(|right| RewriteRule {
                    hi: (i / n) as GenId,
                    lo: (i % n) as GenId,
                    right: right.clone(),
                })
            })
            .collect()
    }

    /// `[hi, lo]` as stored: `rule(hi,lo) - lo*hi`.
    pub fn stored_commutator(&self, hi: GenId, lo: GenId) -> Option<Element> {
        self.rule(hi, lo).map(|r| {
            r.sub(&Element::word(&self.gens, &[lo, hi]))
                .expect("same generator set")
        })
    }

    /// Out-of-order pairs without a rule.
    pub fn missing_pairs(&self) -> Vec<(GenId, GenId)> {
        let n = self.gens.len() as GenId;
        let mut out = Vec::new();
        for hi in 0..n {
            for lo in 0..hi {
                if self.rule(hi, lo).is_none() {
                    out.push((hi, lo));
                }
            }
        }
        out
    }

    pub fn filtration_degree(&self, g: GenId) -> u32 {
        self.degree[g as usize]
    }

    fn key(&self, m: &Monomial) -> OrderKey {
        OrderKey {
            degree: m.letters().iter().map(|&g| self.degree[g as usize]).sum(),
            len: m.degree(),
        }
    }

    /// Strict term-order comparison used for termination.
    pub fn term_cmp(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        (self.key(a), a).cmp(&(self.key(b), b))
    }

    fn check_decreasing(&self) -> Result<()> {
        for r in self.rules() {
            let lhs = Monomial::from_letters(vec![r.hi, r.lo]);
            if let Some((m, _)) = r
                .right
                .terms()
                .find(|(m, _)| self.term_cmp(m, &lhs).is_ge())
            {
                return Err(Error::InvalidRelation(format!(
                    "rule for {}*{} produces {} which is not below it in the term order",
                    self.gens.name(r.hi),
                    self.gens.name(r.lo),
                    m.render(&self.gens)
                )));
            }
        }
        Ok(())
    }

    /// Rewrites until every monomial is canonical. The largest pending
    /// monomial is always processed first, at its leftmost descent.
    pub fn normal_form(&self, x: &Element) -> Result<Element> {
        if !x.same_context(&Element::zero(&self.gens)) {
            return Err(Error::MixedPresentations);
        }
        let mut work: BTreeMap<(OrderKey, Monomial), RationalFunction> = BTreeMap::new();
        for (m, c) in x.terms() {
            work.insert((self.key(m), m.clone()), c.clone());
        }
        let mut out: BTreeMap<Monomial, RationalFunction> = BTreeMap::new();
        let mut steps = 0usize;
        let n = self.gens.len();
        while let Some(((_, m), c)) = work.pop_last() {
            let Some(pos) = m.first_descent() else {
                out.insert(m, c);
                continue;
            };
            steps += 1;
            if steps > self.step_limit {
                return Err(Error::StepLimit(self.step_limit));
            }
            let letters = m.letters();
            let (hi, lo) = (letters[pos], letters[pos + 1]);
            let rhs = self.table[hi as usize * n + lo as usize]
                .as_ref()
                .ok_or_else(|| Error::MissingRule {
                    hi: self.gens.name(hi).into(),
                    lo: self.gens.name(lo).into(),
                })?;
            let prefix = &letters[..pos];
            let suffix = &letters[pos + 2..];
            let shift = -prefix.iter().map(|&g| self.gens.weight(g)).sum::<i64>();
            for (r, f) in rhs.terms() {
                let mut word = Vec::with_capacity(prefix.len() + r.degree() + suffix.len());
                word.extend_from_slice(prefix);
                word.extend_from_slice(r.letters());
                word.extend_from_slice(suffix);
                let word = Monomial::from_letters(word);
                let coef = &c * &f.shift(shift);
                let key = (self.key(&word), word);
                match work.get_mut(&key) {
                    Some(v) => {
                        *v = &*v + &coef;
                        if v.is_zero() {
                            work.remove(&key);
                        }
                    }
                    None => {
                        work.insert(key, coef);
                    }
                }
            }
        }
        Ok(Element::from_map(&self.gens, out))
    }

    /// Normal form of the free product `x*y`.
    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.normal_form(&x.mul_free(y)?)
    }

    /// `normal_form(xy - yx)`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        self.normal_form(&x.mul_free(y)?.sub(&y.mul_free(x)?)?)
    }

    /// Reduces `c*b*a` along both overlaps for every triple `c > b > a`.
    pub fn check_overlaps(&self) -> Result<Vec<OverlapReport>> {
        let n = self.gens.len() as GenId;
        let mut triples = Vec::new();
        for c in 0..n {
            for b in 0..c {
                for a in 0..b {
                    triples.push((c, b, a));
                }
            }
        }
        triples
            .into_par_iter()
            .map(|(c, b, a)| self.overlap(c, b, a))
            .collect()
    }

    /// Two-path reduction of `c*b*a`.
    pub fn overlap(&self, c: GenId, b: GenId, a: GenId) -> Result<OverlapReport> {
        let missing = |hi: GenId, lo: GenId| Error::MissingRule {
            hi: self.gens.name(hi).into(),
            lo: self.gens.name(lo).into(),
        };
        let cb = self.rule(c, b).ok_or_else(|| missing(c, b))?;
        let ba = self.rule(b, a).ok_or_else(|| missing(b, a))?;
        let ga = Element::generator(&self.gens, a);
        let gc = Element::generator(&self.gens, c);
        let left = self.normal_form(&cb.mul_free(&ga)?)?;
        let right = self.normal_form(&gc.mul_free(ba)?)?;
        let difference = left.sub(&right)?;
        Ok(OverlapReport {
            triple: [c, b, a],
            names: [c, b, a].map(|g| self.gens.name(g).to_string()),
            resolved: difference.is_zero(),
            left,
            right,
            difference,
        })
    }
}

/// A generator gets degree 1 when none of its commutators has a monomial of
/// length two or more, otherwise 2.
fn filtration_degrees(gens: &GeneratorSet, table: &[Option<Element>]) -> Vec<u32> {
    let n = gens.len();
    let mut degree = vec![1u32; n];
    for hi in 0..n {
        for lo in 0..hi {
            let Some(rhs) = &table[hi * n + lo] else {
                continue;
            };
            let swapped = Monomial::from_letters(vec![lo as GenId, hi as GenId]);
            if rhs.terms().any(|(m, _)| *m != swapped && m.degree() >= 2) {
                degree[hi] = 2;
                degree[lo] = 2;
            }
        }
    }
    degree
}

#[derive(Clone, Debug)]
pub struct OverlapReport {
    /// `(c, b, a)` with `c > b > a`.
    pub triple: [GenId; 3],
    pub names: [String; 3],
    /// Normal form after rewriting `c*b` first.
    pub left: Element,
    /// Normal form after rewriting `b*a` first.
    pub right: Element,
    pub difference: Element,
    pub resolved: bool,
}

#[derive(Serialize)]
pub struct OverlapSummary {
    pub triple: [String; 3],
    pub resolved: bool,
    pub left: String,
    pub right: String,
    pub difference: String,
}

impl OverlapReport {
    pub fn summary(&self) -> OverlapSummary {
        OverlapSummary {
            triple: self.names.clone(),
            resolved: self.resolved,
            left: self.left.render(),
            right: self.right.render(),
            difference: self.difference.render(),
        }
    }
}

/// Signed relabelling of generators combined with `eta -> -eta` on
/// coefficients. Applied letter by letter, so it is an algebra automorphism
/// exactly when the rule set is symmetric under it.
#[derive(Clone, Debug)]
pub struct Mirror {
    gens: Arc<GeneratorSet>,
    image: Vec<(GenId, bool)>,
}

impl Mirror {
    /// `image[g] = (target, negate)`. Weights must be reversed.
    pub fn new(gens: &Arc<GeneratorSet>, image: Vec<(GenId, bool)>) -> Result<Self> {
        if image.len() != gens.len() {
            return Err(Error::Invalid("mirror image has the wrong length".into()));
        }
        for (g, &(t, _)) in image.iter().enumerate() {
            if gens.weight(t) != -gens.weight(g as GenId) {
                return Err(Error::Invalid(format!(
                    "mirror sends {} to {} without reversing its weight",
                    gens.name(g as GenId),
                    gens.name(t)
                )));
            }
        }
        Ok(Self {
            gens: gens.clone(),
            image,
        })
    }

    /// `x<k> -> x<-k>`, negating the sl2 raising and lowering generators.
    /// Generators without a numeric suffix map to themselves.
    pub fn index_reversal(gens: &Arc<GeneratorSet>, sl2: Option<(GenId, GenId)>) -> Result<Self> {
        let mut image = Vec::with_capacity(gens.len());
        for g in gens.ids() {
            let name = gens.name(g);
            let target = match split_index(name) {
                Some((stem, k)) => gens.require(&format!("{stem}{}", -k))?,
                None => g,
            };
            let negate = sl2.is_some_and(|(a, b)| g == a || g == b);
            image.push((target, negate));
        }
        Self::new(gens, image)
    }

    pub fn image(&self, g: GenId) -> (GenId, bool) {
        self.image[g as usize]
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !x.same_context(&Element::zero(&self.gens)) {
            return Err(Error::MixedPresentations);
        }
        let mut out = Element::zero(&self.gens);
        for (m, c) in x.terms() {
            let mut negative = false;
            let letters = m
                .letters()
                .iter()
                .map(|&g| {
                    let (t, neg) = self.image[g as usize];
                    negative ^= neg;
                    t
                })
                .collect();
            let c = c.reflect();
            let c = if negative { -&c } else { c };
            out.add_term(Monomial::from_letters(letters), c);
        }
        Ok(out)
    }
}

fn split_index(name: &str) -> Option<(&str, i64)> {
    let i = name.find(|c: char| c.is_ascii_digit() || c == '-')?;
    if i == 0 {
        return None;
    }
    Some((&name[..i], name[i..].parse().ok()?))
}
