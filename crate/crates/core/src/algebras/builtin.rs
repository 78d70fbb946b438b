use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ncpoly::{Convention, Element, GenId, GeneratorSet};
use crate::rational::RationalFunction;

use super::{Correction, Presentation};

pub const BUILTIN_NAMES: &[&str] = &["crw", "u-sl2"];

/// Built-in by name; `corrected` only matters for `crw`.
pub fn builtin(name: &str, corrected: bool) -> Result<Presentation> {
    match name {
        "crw" => builtin_crw_sl2(corrected),
        "u-sl2" | "usl2" => builtin_u_sl2(),
        _ => Err(Error::Invalid(format!("unknown built-in algebra '{name}'"))),
    }
}

pub fn builtin_u_sl2() -> Result<Presentation> {
    let gens = Arc::new(GeneratorSet::new(&[("l-1", 1, false), ("l1", -1, false)])?);
    let comm = Element::scalar(&gens, RationalFunction::from_int(2) * RationalFunction::eta());
    Presentation::new("u-sl2", gens, vec![(1, 0, comm)], Convention::Weyl, vec![], Some((0, 1)))
}

const CRW_GENERATORS: &[(&str, i64, bool)] = &[
    ("l-1", 1, false),
    ("w-2", 2, false),
    ("w-1", 1, false),
    ("w0", 0, false),
    ("w1", -1, false),
    ("w2", -2, false),
    ("rho", 0, true),
    ("l1", -1, false),
];

pub(crate) fn crw_corrections() -> Vec<Correction> {
    [
        ("a", "[w0,w-1]: first term read as l1 o w-2 (weight +1) instead of l1 o w2"),
        ("b", "[w2,w-2]: second term read as l-1 o w1 (weight 0) instead of l1 o w1"),
        ("c", "[w2,w0]: unclosed bracket closed after w2"),
        ("d", "[w1,w0]: l-1 w2 read as the symmetrized product l-1 o w2"),
        ("e", "[w2,w-1]: coefficient of l-1 o w2 is 1, mirroring [w1,w-2]"),
        ("f", "[w2,w-2]: extra central term 4*rho*eta, as required by sl2-equivariance"),
    ]
    .into_iter()
    .map(|(id, d)| Correction {
        id: id.into(),
        description: d.into(),
    })
    .collect()
}

/// The eight ordered generators with `l0` as `eta`. Without corrections the
/// table is read literally; only the unclosed bracket has to be closed.
pub fn builtin_crw_sl2(corrected: bool) -> Result<Presentation> {
    let g = Arc::new(GeneratorSet::new(CRW_GENERATORS)?);
    let id = |s: &str| g.require(s);
    let gen = |s: &str| -> Result<Element> { Ok(Element::generator(&g, id(s)?)) };
    let l = |i: i64| -> Result<Element> {
        match i {
            0 => Ok(Element::eta(&g)),
            -1 => gen("l-1"),
            1 => gen("l1"),
            _ => unreachable!(),
        }
    };
    let w = |j: i64| gen(&format!("w{j}"));
    let o = |a: Element, b: Element| a.weyl(&b);
    let q = |n: i64, d: i64| RationalFunction::ratio(n, d);
    let rho = gen("rho")?;
    let sum = |parts: Vec<Element>| -> Result<Element> {
        parts
            .into_iter()
            .try_fold(Element::zero(&g), |acc, x| acc.add(&x))
    };

    let mut rel: Vec<(GenId, GenId, Element)> = Vec::new();
    rel.push((id("l1")?, id("l-1")?, l(0)?.scale(&q(2, 1))));
    for i in [-1i64, 1] {
        for j in -2i64..=2 {
            let c = 2 * i - j;
            let value = if (i + j).abs() <= 2 && c != 0 {
                w(i + j)?.scale(&q(c, 1))
            } else {
                Element::zero(&g)
            };
            rel.push((id(if i < 0 { "l-1" } else { "l1" })?, id(&format!("w{j}"))?, value));
        }
    }

    let wm2_or_w2 = if corrected { w(-2)? } else { w(2)? };
    let lm1_or_l1 = if corrected { l(-1)? } else { l(1)? };
    let lm1_w2 = if corrected {
        o(l(-1)?, w(2)?)?
    } else {
        l(-1)?.mul_free(&w(2)?)?
    };
    let e_coef = if corrected { 1 } else { 2 };
    let f_term = if corrected {
        rho.mul_free(&l(0)?)?
    } else {
        Element::zero(&g)
    };

    let table: Vec<(i64, i64, Element)> = vec![
        (-1, -2, o(l(-1)?, w(-2)?)?.scale(&q(2, 1))),
        (
            0,
            -2,
            sum(vec![o(l(-1)?, w(-1)?)?.scale(&q(2, 1)), o(l(0)?, w(-2)?)?])?.scale(&q(4, 3)),
        ),
        (
            0,
            -1,
            sum(vec![
                o(l(1)?, wm2_or_w2)?.neg(),
                o(l(0)?, w(-1)?)?.scale(&q(10, 1)),
                o(l(-1)?, w(0)?)?.scale(&q(3, 1)),
                rho.mul_free(&l(-1)?)?.scale(&q(-3, 1)),
            ])?
            .scale(&q(1, 6)),
        ),
        (
            1,
            -2,
            sum(vec![
                o(l(1)?, w(-2)?)?,
                o(l(0)?, w(-1)?)?.scale(&q(2, 1)),
                o(l(-1)?, w(0)?)?.scale(&q(3, 1)),
                rho.mul_free(&l(-1)?)?,
            ])?,
        ),
        (
            1,
            -1,
            sum(vec![
                o(l(1)?, w(-1)?)?,
                o(l(0)?, w(0)?)?.scale(&q(6, 1)),
                o(l(-1)?, w(1)?)?,
                rho.mul_free(&l(0)?)?.neg(),
            ])?
            .scale(&q(1, 2)),
        ),
        (
            2,
            -2,
            sum(vec![o(l(1)?, w(-1)?)?, o(lm1_or_l1, w(1)?)?, f_term])?.scale(&q(4, 1)),
        ),
        (
            2,
            -1,
            sum(vec![
                o(l(-1)?, w(2)?)?.scale(&q(e_coef, 1)),
                o(l(0)?, w(1)?)?.scale(&q(2, 1)),
                o(l(1)?, w(0)?)?.scale(&q(3, 1)),
                rho.mul_free(&l(1)?)?,
            ])?,
        ),
        (
            1,
            0,
            sum(vec![
                lm1_w2.neg(),
                o(l(0)?, w(1)?)?.scale(&q(10, 1)),
                o(l(1)?, w(0)?)?.scale(&q(3, 1)),
                rho.mul_free(&l(1)?)?.scale(&q(-3, 1)),
            ])?
            .scale(&q(1, 6)),
        ),
        (
            2,
            0,
            sum(vec![o(l(1)?, w(1)?)?.scale(&q(2, 1)), o(l(0)?, w(2)?)?])?.scale(&q(4, 3)),
        ),
        (2, 1, o(l(1)?, w(2)?)?.scale(&q(2, 1))),
    ];
    for (i, j, value) in table {
        rel.push((id(&format!("w{i}"))?, id(&format!("w{j}"))?, value));
    }

    let (name, corrections) = if corrected {
        ("crw", crw_corrections())
    } else {
        ("crw-raw", vec![])
    };
    let sl2 = Some((id("l-1")?, id("l1")?));
    Presentation::new(name, g.clone(), rel, Convention::Weyl, corrections, sl2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(p: &Presentation, s: &str) -> String {
        p.normal_form(&p.parse_element(s).unwrap()).unwrap().render()
    }

    #[test]
    fn sample_normal_forms() {
        let p = builtin_crw_sl2(true).unwrap();
        assert_eq!(nf(&p, "l1*l-1"), "l-1*l1 + 2*eta");
        assert_eq!(nf(&p, "l-1*w2"), "l-1*w2");
        assert_eq!(nf(&p, "w1*l-1"), "3*w0 + l-1*w1");
        assert_eq!(nf(&p, "l1*w1"), "w2 + w1*l1");
        assert_eq!(nf(&p, "l1 o w2"), "w2*l1");
    }

    #[test]
    fn printed_commutators_reproduced() {
        let p = builtin_crw_sl2(true).unwrap();
        let r = p.rules();
        let c = |a: &str, b: &str| {
            r.commutator(&p.generator(a).unwrap(), &p.generator(b).unwrap())
                .unwrap()
        };
        assert_eq!(c("w2", "w1"), p.normal_form(&p.parse_element("2*w2*l1").unwrap()).unwrap());
        assert!(c("rho", "w-2").is_zero());
        assert_eq!(
            c("w2", "w-2"),
            p.normal_form(&p.parse_element("4*(l1 o w-1 + l-1 o w1 + rho*eta)").unwrap())
                .unwrap()
        );
        assert_eq!(
            c("w1", "w-1"),
            p.normal_form(
                &p.parse_element("(l1 o w-1 + 6*eta o w0 + l-1 o w1 - rho*eta)/2")
                    .unwrap()
            )
            .unwrap()
        );
    }
}
