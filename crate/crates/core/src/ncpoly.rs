//! Noncommutative elements: finite sums of generator words with left
//! coefficients in `Q(eta)`.
//!
//! `eta` is not a generator. A generator `g` of weight `m` satisfies
//! `[eta, g] = m*g`, so moving a coefficient to the left across `g` reads
//! `g * f(eta) = f(eta - m) * g`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{parse_err, parse_tokens, tokenize, ExprBuilder, Token};
use crate::rational::RationalFunction;

/// Index of a generator in its [`GeneratorSet`]; equal to its position in the
/// canonical monomial order.
pub type GenId = u16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub name: String,
    pub weight: i64,
    pub sort_index: usize,
    pub central: bool,
}

/// Generators of one presentation, stored in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

impl GeneratorSet {
    /// Builds the set from `(name, weight, central)` triples listed in
    /// canonical order.
    pub fn new(specs: &[(&str, i64, bool)]) -> Result<Self> {
        let mut gens: Vec<Generator> = Vec::with_capacity(specs.len());
        for (i, &(name, weight, central)) in specs.iter().enumerate() {
            if gens.iter().any(|g| g.name == name) {
                return Err(Error::Invalid(format!("duplicate generator '{name}'")));
            }
            if central && weight != 0 {
                return Err(Error::Invalid(format!(
                    "central generator '{name}' must have weight 0"
                )));
            }
            if matches!(name, "eta" | "o" | "l0") {
                return Err(Error::Invalid(format!("'{name}' is a reserved name")));
            }
            gens.push(Generator {
                name: name.to_string(),
                weight,
                sort_index: i,
                central,
            });
        }
        if gens.len() > GenId::MAX as usize {
            return Err(Error::Invalid("too many generators".into()));
        }
        Ok(Self { gens })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, id: GenId) -> &Generator {
        &self.gens[id as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> {
        0..self.gens.len() as GenId
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as GenId)
    }

    pub fn require(&self, name: &str) -> Result<GenId> {
        self.id(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.gens[id as usize].name
    }

    pub fn weight(&self, id: GenId) -> i64 {
        self.gens[id as usize].weight
    }
}

/// A word in the generators. Factors are kept letter by letter; [`factors`]
/// gives the run-length `(generator, exponent)` view.
///
/// Ordering is lexicographic on the letter sequence by generator index, a
/// proper prefix sorting first.
///
/// [`factors`]: Monomial::factors
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<GenId>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: Vec<GenId>) -> Self {
        Self(letters)
    }

    pub fn from_factors(factors: &[(GenId, u32)]) -> Self {
        Self(
            factors
                .iter()
                .flat_map(|&(g, e)| std::iter::repeat_n(g, e as usize))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> Vec<(GenId, u32)> {
        let mut out: Vec<(GenId, u32)> = Vec::new();
        for &g in &self.0 {
            match out.last_mut() {
                Some((h, e)) if *h == g => *e += 1,
                _ => out.push((g, 1)),
            }
        }
        out
    }

    /// Canonical when letters never decrease in sort order.
    pub fn is_canonical(&self) -> bool {
        self.first_descent().is_none()
    }

    /// Position of the leftmost adjacent out-of-order pair.
    pub fn first_descent(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[0] > w[1])
    }

    pub fn weight(&self, gens: &GeneratorSet) -> i64 {
        self.0.iter().map(|&g| gens.weight(g)).sum()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Self(v)
    }

    pub fn count(&self, g: GenId) -> usize {
        self.0.iter().filter(|&&h| h == g).count()
    }

    pub fn contains(&self, g: GenId) -> bool {
        self.0.contains(&g)
    }

    pub fn render(&self, gens: &GeneratorSet) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.factors()
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    gens.name(g).to_string()
                } else {
                    format!("{}^{e}", gens.name(g))
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn to_latex(&self, gens: &GeneratorSet) -> String {
        self.factors()
            .iter()
            .map(|&(g, e)| {
                let base = latex_name(gens.name(g));
                if e == 1 {
                    base
                } else {
                    format!("{base}^{{{e}}}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `l-1` -> `l_{-1}`, `rho` -> `\varrho`, `w2` -> `w_{2}`.
pub fn latex_name(name: &str) -> String {
    if name == "rho" {
        return "\\varrho".into();
    }
    match name.find(|c: char| c.is_ascii_digit() || c == '-') {
        Some(i) if i > 0 => format!("{}_{{{}}}", &name[..i], &name[i..]),
        _ => name.to_string(),
    }
}

/// Weight of a word, usable without an [`Element`].
pub fn weight_of(m: &Monomial, gens: &GeneratorSet) -> i64 {
    m.weight(gens)
}

/// Finite `Q(eta)`-combination of monomials, coefficients on the left.
#[derive(Clone, Debug)]
pub struct Element {
    gens: Arc<GeneratorSet>,
    terms: BTreeMap<Monomial, RationalFunction>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(gens: &Arc<GeneratorSet>) -> Self {
        Self {
            gens: gens.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(gens: &Arc<GeneratorSet>) -> Self {
        Self::scalar(gens, RationalFunction::one())
    }

    pub fn scalar(gens: &Arc<GeneratorSet>, c: RationalFunction) -> Self {
        Self::term(gens, c, Monomial::one())
    }

    pub fn eta(gens: &Arc<GeneratorSet>) -> Self {
        Self::scalar(gens, RationalFunction::eta())
    }

    pub fn generator(gens: &Arc<GeneratorSet>, g: GenId) -> Self {
        Self::term(gens, RationalFunction::one(), Monomial::from_letters(vec![g]))
    }

    pub fn term(gens: &Arc<GeneratorSet>, c: RationalFunction, m: Monomial) -> Self {
        let mut e = Self::zero(gens);
        e.add_term(m, c);
        e
    }

    pub fn word(gens: &Arc<GeneratorSet>, letters: &[GenId]) -> Self {
        Self::term(gens, RationalFunction::one(), Monomial::from_letters(letters.to_vec()))
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn same_context(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.gens, &other.gens) || *self.gens == *other.gens
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::MixedPresentations)
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> RationalFunction {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient if this element has only an empty-monomial term.
    pub fn as_scalar(&self) -> Option<RationalFunction> {
        match self.terms.len() {
            0 => Some(RationalFunction::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn from_map(gens: &Arc<GeneratorSet>, terms: BTreeMap<Monomial, RationalFunction>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Self {
            gens: gens.clone(),
            terms,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            gens: self.gens.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    /// Multiplies every coefficient on the left by `c`.
    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero(&self.gens);
        }
        Self {
            gens: self.gens.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), c * a)).collect(),
        }
    }

    /// Concatenation product without reordering. Each coefficient of `other`
    /// is carried left across the monomial it meets, shifted by that
    /// monomial's weight.
    pub fn mul_free(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = Self::zero(&self.gens);
        for (u, f) in &self.terms {
            let w = u.weight(&self.gens);
            for (v, g) in &other.terms {
                out.add_term(u.concat(v), f * &g.shift(-w));
            }
        }
        Ok(out)
    }

    /// Symmetrized product `(ab + ba)/2`, unreduced.
    pub fn weyl(&self, other: &Self) -> Result<Self> {
        let ab = self.mul_free(other)?;
        let ba = other.mul_free(self)?;
        Ok(ab.add(&ba)?.scale(&RationalFunction::ratio(1, 2)))
    }

    /// True when every monomial is canonical.
    pub fn is_normal_ordered(&self) -> bool {
        self.terms.keys().all(Monomial::is_canonical)
    }

    /// Weight of every term, if they all agree.
    pub fn homogeneous_weight(&self) -> Option<i64> {
        let mut ws = self.terms.keys().map(|m| m.weight(&self.gens));
        let first = ws.next().unwrap_or(0);
        ws.all(|w| w == first).then_some(first)
    }

    /// Splits into weight components.
    pub fn weight_components(&self) -> BTreeMap<i64, Element> {
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight(&self.gens))
                .or_insert_with(|| Element::zero(&self.gens))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Self {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms in rendering order: lexicographically descending monomials.
    fn ordered_terms(&self) -> impl Iterator<Item = (&Monomial, &RationalFunction)> {
        self.terms.iter().rev()
    }

    /// Canonical text rendering, e.g. `w1 - (1/(2*eta-2))*l-1*w2`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        if let Some(c) = self.as_scalar() {
            return c.to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.ordered_terms().enumerate() {
            let negative = c.leading_sign_negative();
            let mag = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let coef = if mag.is_simple() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match (m.is_one(), mag.is_one()) {
                (true, _) => out.push_str(&coef),
                (false, true) => out.push_str(&m.render(&self.gens)),
                (false, false) => {
                    out.push_str(&coef);
                    out.push('*');
                    out.push_str(&m.render(&self.gens));
                }
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.ordered_terms().enumerate() {
            let negative = c.leading_sign_negative();
            let mag = if negative { -c } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let coef = if mag.is_simple() {
                mag.to_latex()
            } else {
                format!("\\left({}\\right)", mag.to_latex())
            };
            match (m.is_one(), mag.is_one()) {
                (true, _) => out.push_str(&coef),
                (false, true) => out.push_str(&m.to_latex(&self.gens)),
                (false, false) => {
                    out.push_str(&coef);
                    out.push(' ');
                    out.push_str(&m.to_latex(&self.gens));
                }
            }
        }
        out
    }

    /// Parses the element grammar over this generator set. `o` expands with
    /// the given convention.
    pub fn parse(gens: &Arc<GeneratorSet>, src: &str, convention: Convention) -> Result<Self> {
        parse_element_at(gens, src, convention, 1, 1)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// How `A o B` is expanded in relation right-hand sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `(AB + BA)/2`
    #[default]
    Weyl,
    /// `AB`
    Left,
    /// `BA`
    Right,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Weyl => "weyl",
            Convention::Left => "left",
            Convention::Right => "right",
        }
    }

    pub fn apply(self, a: &Element, b: &Element) -> Result<Element> {
        match self {
            Convention::Weyl => a.weyl(b),
            Convention::Left => a.mul_free(b),
            Convention::Right => b.mul_free(a),
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weyl" => Ok(Self::Weyl),
            "left" => Ok(Self::Left),
            "right" => Ok(Self::Right),
            _ => Err(Error::Invalid(format!("unknown convention '{s}'"))),
        }
    }
}

/// `(ab + ba)/2` for two generators.
pub fn weyl_product(gens: &Arc<GeneratorSet>, a: GenId, b: GenId) -> Element {
    Element::generator(gens, a)
        .weyl(&Element::generator(gens, b))
        .expect("same generator set")
}

struct ElementBuilder<'a> {
    gens: &'a Arc<GeneratorSet>,
    convention: Convention,
}

impl ExprBuilder for ElementBuilder<'_> {
    type Value = Element;

    fn int(&self, n: BigInt) -> Result<Element> {
        Ok(Element::scalar(
            self.gens,
            RationalFunction::from_rational(BigRational::from_integer(n)),
        ))
    }

    fn ident(&self, name: &str, tok: &Token) -> Result<Element> {
        if let Some(g) = self.gens.id(name) {
            return Ok(Element::generator(self.gens, g));
        }
        match name {
            "eta" | "l0" => Ok(Element::eta(self.gens)),
            _ => Err(parse_err(tok, format!("unknown generator '{name}'"))),
        }
    }

    fn add(&self, a: Element, b: Element) -> Result<Element> {
        a.add(&b)
    }

    fn sub(&self, a: Element, b: Element) -> Result<Element> {
        a.sub(&b)
    }

    fn mul(&self, a: Element, b: Element) -> Result<Element> {
        a.mul_free(&b)
    }

    fn div(&self, a: Element, b: Element, tok: &Token) -> Result<Element> {
        let s = b
            .as_scalar()
            .ok_or_else(|| parse_err(tok, "can only divide by a coefficient"))?;
        let inv = s.inv().map_err(|_| parse_err(tok, "division by zero"))?;
        a.mul_free(&Element::scalar(self.gens, inv))
    }

    fn neg(&self, a: Element) -> Result<Element> {
        Ok(a.neg())
    }

    fn pow(&self, a: Element, e: i64, tok: &Token) -> Result<Element> {
        if let Some(s) = a.as_scalar() {
            let e = i32::try_from(e).map_err(|_| parse_err(tok, "exponent out of range"))?;
            let p = s.pow(e).map_err(|_| parse_err(tok, "negative power of zero"))?;
            return Ok(Element::scalar(self.gens, p));
        }
        if e < 0 {
            return Err(parse_err(tok, "negative power of a non-coefficient"));
        }
        let mut acc = Element::one(self.gens);
        for _ in 0..e {
            acc = acc.mul_free(&a)?;
        }
        Ok(acc)
    }

    fn weyl(&self, a: Element, b: Element, _tok: &Token) -> Result<Element> {
        self.convention.apply(&a, &b)
    }
}

pub(crate) fn parse_element_at(
    gens: &Arc<GeneratorSet>,
    src: &str,
    convention: Convention,
    line: usize,
    col: usize,
) -> Result<Element> {
    let is_name = |s: &str| gens.id(s).is_some();
    let toks = tokenize(src, line, col, &is_name)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            line,
            col,
            msg: "empty expression".into(),
        });
    }
    let b = ElementBuilder { gens, convention };
    parse_tokens(&toks, &b, (line, col + src.chars().count()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn crw_gens() -> Arc<GeneratorSet> {
        Arc::new(
            GeneratorSet::new(&[
                ("l-1", 1, false),
                ("w-2", 2, false),
                ("w-1", 1, false),
                ("w0", 0, false),
                ("w1", -1, false),
                ("w2", -2, false),
                ("rho", 0, true),
                ("l1", -1, false),
            ])
            .unwrap(),
        )
    }

    fn el(g: &Arc<GeneratorSet>, s: &str) -> Element {
        Element::parse(g, s, Convention::Weyl).unwrap()
    }

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    #[test]
    fn like_terms_and_cancellation() {
        let g = crw_gens();
        assert_eq!(el(&g, "w2 + w2"), el(&g, "2*w2"));
        let a = el(&g, "eta*l-1*w1 - 3*w0");
        assert!(a.add(&a.neg()).unwrap().is_zero());
        let b = el(&g, "1/(eta-2)*l-1").add(&el(&g, "(1 - 1/(eta-2))*l-1")).unwrap();
        assert_eq!(b, el(&g, "l-1"));
    }

    #[test]
    fn coefficients_shift_past_weighted_generators() {
        let g = crw_gens();
        let lm = Element::generator(&g, g.id("l-1").unwrap());
        let f = Element::scalar(&g, rf("1/(eta-2)"));
        let prod = lm.mul_free(&f).unwrap();
        assert_eq!(prod, el(&g, "1/(eta-3)*l-1"));
        let w0 = Element::generator(&g, g.id("w0").unwrap());
        assert_eq!(w0.mul_free(&f).unwrap(), f.mul_free(&w0).unwrap());
        let one = Element::one(&g);
        assert_eq!(one.mul_free(&prod).unwrap(), prod);
    }

    #[test]
    fn weights_of_words() {
        let g = crw_gens();
        let id = |s| g.id(s).unwrap();
        assert_eq!(Monomial::from_letters(vec![id("l-1"), id("w-2")]).weight(&g), 3);
        assert_eq!(Monomial::one().weight(&g), 0);
        assert_eq!(Monomial::from_factors(&[(id("l1"), 2), (id("w2"), 1)]).weight(&g), -4);
    }

    #[test]
    fn weyl_products() {
        let g = crw_gens();
        // eta o w0 = eta*w0 since w0 has weight zero
        assert_eq!(el(&g, "eta o w0"), el(&g, "eta*w0"));
        // w-1*eta = (eta-1)*w-1, so eta o w-1 = (eta - 1/2)*w-1
        assert_eq!(el(&g, "eta o w-1"), el(&g, "(eta - 1/2)*w-1"));
        let rho_l = weyl_product(&g, g.id("rho").unwrap(), g.id("l-1").unwrap());
        assert_eq!(rho_l, el(&g, "(rho*l-1 + l-1*rho)/2"));
    }

    #[test]
    fn mixing_generator_sets_fails() {
        let g = crw_gens();
        let h = Arc::new(GeneratorSet::new(&[("l-1", 1, false), ("l1", -1, false)]).unwrap());
        let a = Element::generator(&g, 0);
        let b = Element::generator(&h, 0);
        assert_eq!(a.add(&b), Err(Error::MixedPresentations));
        assert_eq!(a.mul_free(&b), Err(Error::MixedPresentations));
    }

    #[test]
    fn rendering_order_and_signs() {
        let g = crw_gens();
        assert_eq!(el(&g, "2*eta + l-1*l1").render(), "l-1*l1 + 2*eta");
        assert_eq!(el(&g, "w1 - 1/(2*eta-2)*l-1*w2").render(), "w1 - (1/(2*eta-2))*l-1*w2");
        assert_eq!(el(&g, "l-1*l-1*l1^2").render(), "l-1^2*l1^2");
        assert_eq!(el(&g, "-w0 + 3/2*rho").render(), "3/2*rho - w0");
        assert_eq!(el(&g, "0").render(), "0");
        assert_eq!(el(&g, "1 - 2/(eta-2)").render(), "1 - 2/(eta-2)");
    }

    #[test]
    fn render_parse_round_trip() {
        let g = crw_gens();
        for s in [
            "w1 - (1/(2*eta-2))*l-1*w2",
            "(eta - 1)*w-1*l1 - 3*w0 + (1 - 2/(eta-2))",
            "-w2*rho*l1 + 4/3*eta",
        ] {
            let e = el(&g, s);
            assert_eq!(el(&g, &e.render()), e, "{s}");
        }
    }

    #[test]
    fn parse_errors() {
        let g = crw_gens();
        assert!(matches!(Element::parse(&g, "w3", Convention::Weyl), Err(Error::Parse { .. })));
        assert!(Element::parse(&g, "w1/w2", Convention::Weyl).is_err());
        assert!(Element::parse(&g, "w1^-1", Convention::Weyl).is_err());
        assert!(Element::parse(&g, "o w1", Convention::Weyl).is_err());
    }

    #[test]
    fn latex_names() {
        assert_eq!(latex_name("l-1"), "l_{-1}");
        assert_eq!(latex_name("w2"), "w_{2}");
        assert_eq!(latex_name("rho"), "\\varrho");
    }
}
