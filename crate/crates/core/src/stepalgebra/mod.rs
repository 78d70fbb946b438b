//! Reduction modulo the left ideal generated by the raising operator, action
//! of the extremal projector, and the map from step-algebra words into the
//! quotient.

mod linsolve;
mod relations;
mod zword;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use serde::Serialize;

use crate::algebras::Presentation;
use crate::error::{Error, Result};
use crate::ncpoly::{Element, GenId, Monomial};
use crate::rational::{Polynomial, RationalFunction};

pub use linsolve::solve;
pub use relations::{
    printed_relations, relation_pair, z_mirror, Mismatch, Mode, PrintedRelation, PrintedTable,
    ZRelationReport, RELATION_PAIRS,
};
pub use zword::{ZLetter, ZWord};

/// Element of the quotient by the left ideal: normal-ordered, no monomial
/// contains the raising generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientElement(Element);

impl QuotientElement {
    pub fn value(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn render(&self) -> String {
        self.0.render()
    }

    pub fn to_latex(&self) -> String {
        self.0.to_latex()
    }
}

impl fmt::Display for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Coefficient sequence of the projector `sum_n c_n l-1^n l1^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectorSeries {
    /// `c_n = (-1)^n / (n! prod_{k=1..n} (2 eta - k - 1))`
    Standard,
    /// As `Standard` but with `2 eta - 1` in place of `2 eta - 2` in term 1.
    /// Negative control for the annihilation identities.
    PerturbedFirst,
}

impl ProjectorSeries {
    pub fn coefficient(self, n: usize) -> RationalFunction {
        if n == 1 && self == ProjectorSeries::PerturbedFirst {
            let d = RationalFunction::from_poly(Polynomial::from_ints(&[-1, 2]));
            return -&d.inv().expect("nonzero");
        }
        let mut den = Polynomial::one();
        let mut fact: i64 = 1;
        for k in 1..=n as i64 {
            den = &den * &Polynomial::from_ints(&[-(k + 1), 2]);
            fact *= k;
        }
        let den = den.scale(&num_rational::BigRational::from_integer(fact.into()));
        let sign = if n % 2 == 0 { 1 } else { -1 };
        RationalFunction::new(Polynomial::from_int(sign), den).expect("nonzero denominator")
    }

    pub fn name(self) -> &'static str {
        match self {
            ProjectorSeries::Standard => "standard",
            ProjectorSeries::PerturbedFirst => "perturbed-first",
        }
    }
}

/// Result of checking `l1 p = 0` and `p l-1 = 0` through a series order.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectorIdentityReport {
    pub order: usize,
    pub series: ProjectorSeries,
    /// Where the rational coefficient sits relative to `l-1^n l1^n`.
    pub coefficient_placement: &'static str,
    pub raising_annihilates: bool,
    pub lowering_annihilates: bool,
    pub passed: bool,
    /// `(side, monomial, coefficient)` for every surviving low-order term.
    pub failures: Vec<(String, String, String)>,
}

/// Step-algebra computations over a presentation with an sl2 pair whose
/// raising generator sorts last.
pub struct StepAlgebra {
    pres: Presentation,
    lower: GenId,
    upper: GenId,
    series: ProjectorSeries,
    min_weight: i64,
    phi_cache: Mutex<HashMap<Vec<ZLetter>, Element>>,
}

impl StepAlgebra {
    pub fn new(pres: Presentation) -> Result<Self> {
        Self::with_series(pres, ProjectorSeries::Standard)
    }

    pub fn with_series(pres: Presentation, series: ProjectorSeries) -> Result<Self> {
        let (lower, upper) = pres.require_sl2()?;
        let gens = pres.generators();
        if upper as usize != gens.len() - 1 {
            return Err(Error::Invalid(format!(
                "raising generator {} must sort last for the quotient to be a monomial filter",
                gens.name(upper)
            )));
        }
        let min_weight = gens
            .ids()
            .filter(|&g| g != upper)
            .map(|g| gens.weight(g))
            .min()
            .unwrap_or(0)
            .min(0);
        Ok(Self {
            pres,
            lower,
            upper,
            series,
            min_weight,
            phi_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn series(&self) -> ProjectorSeries {
        self.series
    }

    fn gen(&self, g: GenId) -> Element {
        Element::generator(self.pres.generators(), g)
    }

    fn nf(&self, x: &Element) -> Result<Element> {
        self.pres.normal_form(x)
    }

    /// Drops monomials containing the raising generator. `x` must already be
    /// in normal form.
    pub fn reduce_mod_iplus(&self, x: &Element) -> QuotientElement {
        QuotientElement(x.filter(|m| !m.contains(self.upper)))
    }

    /// Normal form followed by [`reduce_mod_iplus`](Self::reduce_mod_iplus).
    pub fn quotient(&self, x: &Element) -> Result<QuotientElement> {
        Ok(self.reduce_mod_iplus(&self.nf(x)?))
    }

    /// `c_n * l-1^n * l1^n`.
    pub fn projector_term(&self, n: usize) -> Element {
        let m = Monomial::from_factors(&[(self.lower, n as u32), (self.upper, n as u32)]);
        Element::term(self.pres.generators(), self.series.coefficient(n), m)
    }

    /// Largest `n` with a possibly nonzero `l1^n y` modulo the ideal: each
    /// raise lowers the weight by one, and a word of length `L` without `l1`
    /// has weight at least `L * min_weight`. Commuting with `l1` never
    /// lengthens a word, which the guard in `apply_projector` relies on.
    fn raise_bound(&self, y: &Element) -> usize {
        let gens = self.pres.generators();
        let max_w = y.terms().map(|(m, _)| m.weight(gens)).max().unwrap_or(0);
        let max_len = y.terms().map(|(m, _)| m.degree() as i64).max().unwrap_or(0);
        (max_w - max_len * self.min_weight).max(0) as usize
    }

    /// `p * x` modulo the ideal. The series is never formed; `l1^n x` is
    /// raised one step at a time until it vanishes.
    pub fn apply_projector(&self, x: &Element) -> Result<QuotientElement> {
        let mut y = self.quotient(x)?.0;
        let bound = self.raise_bound(&y);
        let l1 = self.gen(self.upper);
        let mut total = y.clone();
        let mut lower_pow = Element::one(self.pres.generators());
        let lm = self.gen(self.lower);
        for n in 1.. {
            y = self.quotient(&l1.mul_free(&y)?)?.0;
            if y.is_zero() {
                break;
            }
            if n > bound {
                return Err(Error::ProjectorGuard(bound));
            }
            lower_pow = lower_pow.mul_free(&lm)?;
            let c = Element::scalar(self.pres.generators(), self.series.coefficient(n));
            let term = c.mul_free(&lower_pow)?.mul_free(&y)?;
            total = total.add(&self.quotient(&term)?.0)?;
        }
        Ok(QuotientElement(total))
    }

    /// Checks that every coefficient of series order below `order` in
    /// `l1 * p` and `p * l-1` vanishes, using the terms `n <= order`.
    /// The series order of `l-1^a l1^b` is `min(a, b)`.
    pub fn check_projector_identities(&self, order: usize) -> Result<ProjectorIdentityReport> {
        if order == 0 {
            return Err(Error::Invalid("order must be at least 1".into()));
        }
        let gens = self.pres.generators();
        let mut p = Element::zero(gens);
        for n in 0..=order {
            p = p.add(&self.projector_term(n))?;
        }
        let left = self.nf(&self.gen(self.upper).mul_free(&p)?)?;
        let right = self.nf(&p.mul_free(&self.gen(self.lower))?)?;
        let mut failures = Vec::new();
        let mut scan = |side: &str, x: &Element| -> bool {
            let mut ok = true;
            for (m, c) in x.terms() {
                let k = m.count(self.lower).min(m.count(self.upper));
                if k < order {
                    ok = false;
                    failures.push((side.to_string(), m.render(gens), c.to_string()));
                }
            }
            ok
        };
        let raising_annihilates = scan("l1*p", &left);
        let lowering_annihilates = scan("p*l-1", &right);
        Ok(ProjectorIdentityReport {
            order,
            series: self.series,
            coefficient_placement: "left",
            raising_annihilates,
            lowering_annihilates,
            passed: raising_annihilates && lowering_annihilates,
            failures,
        })
    }

    /// Generator standing behind a step-algebra letter: `v_i -> w<i>`, `r` to
    /// the single central generator.
    pub fn letter_generator(&self, l: ZLetter) -> Result<GenId> {
        let gens = self.pres.generators();
        match l {
            ZLetter::V(i) => gens
                .iter()
                .find(|g| {
                    !g.central
                        && g.sort_index != self.lower as usize
                        && g.sort_index != self.upper as usize
                        && g.name.trim_start_matches(|c: char| c.is_ascii_alphabetic() || c == '_')
                            == i.to_string()
                })
                .map(|g| g.sort_index as GenId)
                .ok_or_else(|| Error::UnknownGenerator(l.to_string())),
            ZLetter::R => {
                let mut central = gens.iter().filter(|g| g.central);
                match (central.next(), central.next()) {
                    (Some(g), None) => Ok(g.sort_index as GenId),
                    _ => Err(Error::UnknownGenerator("r".into())),
                }
            }
        }
    }

    /// Multiplet indices available as `v` letters.
    pub fn letter_indices(&self) -> Vec<i64> {
        let gens = self.pres.generators();
        let mut out: Vec<i64> = gens
            .iter()
            .filter(|g| {
                !g.central && g.sort_index != self.lower as usize && g.sort_index != self.upper as usize
            })
            .filter_map(|g| {
                g.name
                    .trim_start_matches(|c: char| c.is_ascii_alphabetic() || c == '_')
                    .parse()
                    .ok()
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// `v_{i1} ... v_{ik} -> p w_{i1} p w_{i2} ... p w_{ik}` modulo the ideal,
    /// evaluated from the right (valid because the ideal is a left ideal);
    /// `r` multiplies by the central generator. No projector follows the
    /// last letter.
    pub fn phi(&self, word: &ZWord) -> Result<QuotientElement> {
        let base = self.phi_letters(&word.letters)?;
        let c = Element::scalar(self.pres.generators(), word.coefficient.clone());
        Ok(QuotientElement(c.mul_free(&base)?))
    }

    fn phi_letters(&self, letters: &[ZLetter]) -> Result<Element> {
        if letters.is_empty() {
            return Ok(Element::one(self.pres.generators()));
        }
        if let Some(hit) = self.phi_cache.lock().expect("cache lock").get(letters) {
            return Ok(hit.clone());
        }
        let tail = self.phi_letters(&letters[1..])?;
        let g = self.gen(self.letter_generator(letters[0])?);
        let x = g.mul_free(&tail)?;
        let value = match letters[0] {
            ZLetter::R => self.quotient(&x)?.0,
            ZLetter::V(_) => self.apply_projector(&x)?.0,
        };
        self.phi_cache
            .lock()
            .expect("cache lock")
            .insert(letters.to_vec(), value.clone());
        Ok(value)
    }

    /// `l1 * x` modulo the ideal.
    pub fn raise(&self, x: &QuotientElement) -> Result<QuotientElement> {
        self.quotient(&self.gen(self.upper).mul_free(&x.0)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::builtin_crw_sl2;

    fn crw() -> StepAlgebra {
        StepAlgebra::new(builtin_crw_sl2(true).unwrap()).unwrap()
    }

    fn el(s: &StepAlgebra, src: &str) -> Element {
        s.presentation().parse_element(src).unwrap()
    }

    #[test]
    fn reduction_drops_ideal_terms() {
        let s = crw();
        assert_eq!(s.quotient(&el(&s, "l-1*l1 + 2*eta")).unwrap().render(), "2*eta");
        assert_eq!(s.quotient(&el(&s, "w2")).unwrap().render(), "w2");
        assert_eq!(s.quotient(&el(&s, "l1*w1")).unwrap().render(), "w2");
    }

    #[test]
    fn projector_terms() {
        let s = crw();
        assert_eq!(s.projector_term(0).render(), "1");
        assert_eq!(s.projector_term(1).render(), "-(1/(2*eta-2))*l-1*l1");
        assert_eq!(
            s.projector_term(2),
            el(&s, "1/(2*(2*eta-2)*(2*eta-3))*l-1^2*l1^2")
        );
    }

    #[test]
    fn projector_on_generators() {
        let s = crw();
        assert_eq!(s.apply_projector(&el(&s, "1")).unwrap().render(), "1");
        assert_eq!(s.apply_projector(&el(&s, "w2")).unwrap().render(), "w2");
        assert_eq!(
            s.apply_projector(&el(&s, "w1")).unwrap().render(),
            "w1 - (1/(2*eta-2))*l-1*w2"
        );
        assert_eq!(s.apply_projector(&el(&s, "rho")).unwrap().render(), "rho");
    }

    #[test]
    fn projector_output_is_highest_weight() {
        let s = crw();
        for src in ["w-2", "w-1*w0", "l-1*w1", "w-2*w-2", "eta*w0 + rho*w-1"] {
            let y = s.apply_projector(&el(&s, src)).unwrap();
            assert!(s.raise(&y).unwrap().is_zero(), "{src}");
        }
    }

    #[test]
    fn identities_low_order() {
        let s = crw();
        assert!(s.check_projector_identities(2).unwrap().passed);
        let bad = StepAlgebra::with_series(builtin_crw_sl2(true).unwrap(), ProjectorSeries::PerturbedFirst)
            .unwrap();
        let r = bad.check_projector_identities(2).unwrap();
        assert!(!r.passed);
        assert!(!r.failures.is_empty());
    }

    #[test]
    fn phi_of_letters() {
        let s = crw();
        let w = |t: &str| ZWord::parse_shape(t).unwrap();
        assert_eq!(s.phi(&w("v2")).unwrap().render(), "w2");
        assert_eq!(s.phi(&w("r")).unwrap().render(), "rho");
        assert_eq!(s.phi(&w("v1")).unwrap().render(), "w1 - (1/(2*eta-2))*l-1*w2");
        assert_eq!(s.letter_indices(), vec![-2, -1, 0, 1, 2]);
    }
}
