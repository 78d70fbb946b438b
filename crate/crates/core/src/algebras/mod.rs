//! Presentations: generators, commutation relations, the rewrite rules derived
//! from them, and structural validation.

mod builtin;
mod dsl;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncpoly::{Convention, Element, GenId, GeneratorSet};
use crate::rewrite::{Mirror, RewriteRule, RuleSet};

pub use builtin::{builtin, builtin_crw_sl2, builtin_u_sl2, BUILTIN_NAMES};
pub use dsl::parse_presentation;

/// A named edit applied to a printed relation table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Correction {
    pub id: String,
    pub description: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    #[serde(rename = "enveloping")]
    Enveloping,
    #[serde(rename = "mho")]
    Mho,
    #[serde(rename = "affine-mho")]
    AffineMho,
    #[serde(rename = "other")]
    Other,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Enveloping => "enveloping",
            Kind::Mho => "mho",
            Kind::AffineMho => "affine-mho",
            Kind::Other => "other",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    gens: Arc<GeneratorSet>,
    /// Declared commutators `[hi, lo]`, unreduced, keyed `(hi, lo)`.
    relations: BTreeMap<(GenId, GenId), Element>,
    rules: RuleSet,
    pub corrections: Vec<Correction>,
    pub convention: Convention,
    sl2: Option<(GenId, GenId)>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && *self.gens == *other.gens
            && self.corrections == other.corrections
            && self.convention == other.convention
            && self.sl2 == other.sl2
            && self.rules.rules() == other.rules.rules()
    }
}

impl Presentation {
    /// `relations` are commutators `[a, b] = value` for any distinct `a, b`.
    /// Pairs involving a central generator default to zero. With `sl2 = None`
    /// a raising/lowering pair is looked for among the relations.
    pub fn new(
        name: &str,
        gens: Arc<GeneratorSet>,
        relations: Vec<(GenId, GenId, Element)>,
        convention: Convention,
        corrections: Vec<Correction>,
        sl2: Option<(GenId, GenId)>,
    ) -> Result<Self> {
        let mut rel: BTreeMap<(GenId, GenId), Element> = BTreeMap::new();
        for (a, b, value) in relations {
            if a == b {
                return Err(Error::InvalidRelation(format!(
                    "diagonal relation [{0},{0}]",
                    gens.name(a)
                )));
            }
            let (key, value) = if a > b { ((a, b), value) } else { ((b, a), value.neg()) };
            if rel.insert(key, value).is_some() {
                return Err(Error::DuplicateRule(
                    gens.name(key.0).into(),
                    gens.name(key.1).into(),
                ));
            }
        }
        for hi in gens.ids() {
            for lo in 0..hi {
                if gens.get(hi).central || gens.get(lo).central {
                    rel.entry((hi, lo)).or_insert_with(|| Element::zero(&gens));
                }
            }
        }
        let rules = rel
            .iter()
            .map(|(&(hi, lo), c)| RewriteRule::from_commutator(hi, lo, c))
            .collect::<Result<Vec<_>>>()?;
        let rules = RuleSet::new(&gens, rules)?;
        let sl2 = match sl2 {
            Some((lower, upper)) => Some((lower, upper)),
            None => detect_sl2(&gens, &rel),
        };
        Ok(Self {
            name: name.to_string(),
            gens,
            relations: rel,
            rules,
            corrections,
            convention,
            sl2,
        })
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    /// `(lowering, raising)`, i.e. `(l-1, l1)` for the built-ins.
    pub fn sl2(&self) -> Option<(GenId, GenId)> {
        self.sl2
    }

    pub fn require_sl2(&self) -> Result<(GenId, GenId)> {
        self.sl2.ok_or_else(|| Error::NoSl2Triple(self.name.clone()))
    }

    /// Declared commutator `[hi, lo]` before normal ordering.
    pub fn relation(&self, hi: GenId, lo: GenId) -> Option<&Element> {
        self.relations.get(&(hi, lo))
    }

    /// Declared commutators, `(hi, lo)` ascending.
    pub fn relations(&self) -> impl Iterator<Item = (GenId, GenId, &Element)> {
        self.relations.iter().map(|(&(h, l), e)| (h, l, e))
    }

    pub fn parse_element(&self, src: &str) -> Result<Element> {
        Element::parse(&self.gens, src, self.convention)
    }

    pub fn normal_form(&self, x: &Element) -> Result<Element> {
        self.rules.normal_form(x)
    }

    pub fn generator(&self, name: &str) -> Result<Element> {
        Ok(Element::generator(&self.gens, self.gens.require(name)?))
    }

    /// `x<k> -> x<-k>` with the sl2 pair negated and `eta -> -eta`.
    pub fn mirror(&self) -> Result<Mirror> {
        Mirror::index_reversal(&self.gens, self.sl2)
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// DSL text that parses back to this presentation.
    pub fn render(&self) -> String {
        dsl::render(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let report = self.validate();
        let generators: Vec<_> = self.gens.iter().collect();
        let rules: Vec<_> = self
            .rules
            .rules()
            .into_iter()
            .map(|r| {
                let comm = self
                    .rules
                    .stored_commutator(r.hi, r.lo)
                    .expect("rule exists");
                serde_json::json!({
                    "hi": self.gens.name(r.hi),
                    "lo": self.gens.name(r.lo),
                    "commutator": comm.render(),
                    "rhs": r.right.render(),
                })
            })
            .collect();
        serde_json::json!({
            "name": self.name,
            "convention": self.convention,
            "sl2": self.sl2.map(|(a, b)| [self.gens.name(a), self.gens.name(b)]),
            "generators": generators,
            "rules": rules,
            "corrections": self.corrections,
            "kind": report.kind,
            "messages": report.messages,
        })
    }
}

/// A pair `(a, b)` with weights `+1, -1` whose commutator is a nonzero
/// multiple of `eta`.
fn detect_sl2(
    gens: &GeneratorSet,
    rel: &BTreeMap<(GenId, GenId), Element>,
) -> Option<(GenId, GenId)> {
    for (&(hi, lo), c) in rel {
        let Some(s) = c.as_scalar() else { continue };
        let n = s.numer();
        if !s.denom().is_one() || n.degree() != Some(1) || !n.constant_term().is_zero() {
            continue;
        }
        match (gens.weight(hi), gens.weight(lo)) {
            (-1, 1) => return Some((lo, hi)),
            (1, -1) => return Some((hi, lo)),
            _ => {}
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OffendingTerm {
    pub relation: [String; 2],
    pub term: String,
    pub weight: i64,
    pub expected: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub weight_homogeneous: bool,
    pub offending: Vec<OffendingTerm>,
    pub mho_condition5: bool,
    pub affine_condition5p: bool,
    pub kind: Kind,
    pub messages: Vec<String>,
}

impl ValidationReport {
    /// Relations `[hi,lo]` with at least one offending term.
    pub fn inhomogeneous_relations(&self) -> Vec<[String; 2]> {
        let mut out: Vec<[String; 2]> = Vec::new();
        for t in &self.offending {
            if !out.contains(&t.relation) {
                out.push(t.relation.clone());
            }
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Sl2,
    Multiplet,
    Central,
}

fn validate(p: &Presentation) -> ValidationReport {
    let gens = &p.gens;
    let mut offending = Vec::new();
    let mut messages = Vec::new();
    for (&(hi, lo), c) in &p.relations {
        let expected = gens.weight(hi) + gens.weight(lo);
        for (m, _) in c.terms() {
            let w = m.weight(gens);
            if w != expected {
                offending.push(OffendingTerm {
                    relation: [gens.name(hi).into(), gens.name(lo).into()],
                    term: m.render(gens),
                    weight: w,
                    expected,
                });
            }
        }
    }
    for t in &offending {
        messages.push(format!(
            "[{},{}]: term {} has weight {}, expected {}",
            t.relation[0], t.relation[1], t.term, t.weight, t.expected
        ));
    }
    for (hi, lo) in p.rules.missing_pairs() {
        messages.push(format!(
            "no relation for [{},{}]",
            gens.name(hi),
            gens.name(lo)
        ));
    }

    let Some((lower, upper)) = p.sl2 else {
        messages.push("no sl2 pair: kind cannot be classified".into());
        return ValidationReport {
            weight_homogeneous: offending.is_empty(),
            offending,
            mho_condition5: false,
            affine_condition5p: false,
            kind: Kind::Other,
            messages,
        };
    };
    let role = |g: GenId| {
        if g == lower || g == upper {
            Role::Sl2
        } else if gens.get(g).central {
            Role::Central
        } else {
            Role::Multiplet
        }
    };
    let count = |c: &Element, r: Role| -> Vec<usize> {
        c.terms()
            .map(|(m, _)| m.letters().iter().filter(|&&g| role(g) == r).count())
            .collect()
    };

    let mut module_ok = true;
    let mut cond5 = true;
    let mut cond5p = true;
    let mut has_multiplet = false;
    for (&(hi, lo), c) in &p.relations {
        let pis = count(c, Role::Multiplet);
        let centrals = count(c, Role::Central);
        match (role(hi), role(lo)) {
            (Role::Central, _) | (_, Role::Central) => {
                if !c.is_zero() {
                    messages.push(format!(
                        "[{},{}]: central generator has a nonzero commutator",
                        gens.name(hi),
                        gens.name(lo)
                    ));
                    module_ok = false;
                }
            }
            (Role::Sl2, Role::Sl2) => module_ok &= pis.iter().all(|&k| k == 0),
            (Role::Sl2, Role::Multiplet) | (Role::Multiplet, Role::Sl2) => {
                has_multiplet = true;
                module_ok &= pis
                    .iter()
                    .zip(&centrals)
                    .all(|(&k, &z)| k == 1 && z == 0);
            }
            (Role::Multiplet, Role::Multiplet) => {
                has_multiplet = true;
                let linear = |k: usize, z: usize| k == 1 && z == 0;
                cond5 &= pis.iter().zip(&centrals).all(|(&k, &z)| linear(k, z));
                cond5p &= pis.iter().zip(&centrals).all(|(&k, &z)| linear(k, z) || k == 0);
            }
        }
    }
    let kind = if !module_ok {
        messages.push("sl2 relations do not make the multiplet a module".into());
        Kind::Other
    } else if !has_multiplet {
        Kind::Enveloping
    } else if cond5 {
        Kind::Mho
    } else if cond5p {
        Kind::AffineMho
    } else {
        Kind::Other
    };
    if has_multiplet {
        messages.push(
            "only weight data and the shape of commutators are checked; module isomorphism conditions are not"
                .into(),
        );
    }
    ValidationReport {
        weight_homogeneous: offending.is_empty(),
        offending,
        mho_condition5: has_multiplet && cond5,
        affine_condition5p: has_multiplet && cond5p,
        kind,
        messages,
    }
}
