//! Line-oriented presentation format.
//!
//! ```text
//! # comment
//! name u-sl2
//! convention weyl
//! gen l-1 weight 1
//! gen l1 weight -1
//! order l-1 < l1
//! sl2 l-1 l1
//! correction a free text
//! rel [l1,l-1] = 2*eta
//! ```
//!
//! `name`, `sl2` and `correction` are optional. Without `order` the generators
//! are ordered as declared. Pairs with a central generator default to zero.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ncpoly::{parse_element_at, Convention, GenId, GeneratorSet};

use super::{Correction, Presentation};

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Splits off whitespace-separated words, keeping 1-based columns.
fn words(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((st + 1, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st + 1, &s[st..]));
    }
    out
}

fn valid_name(s: &str) -> bool {
    let (stem, idx) = match s.find('-') {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    let stem_ok = stem.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && stem.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    let idx_ok = idx.is_none_or(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()));
    stem_ok && idx_ok
}

struct GenDecl {
    name: String,
    weight: i64,
    central: bool,
    line: usize,
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut name = String::from("unnamed");
    let mut convention = Convention::Weyl;
    let mut decls: Vec<GenDecl> = Vec::new();
    let mut order: Option<(usize, Vec<(usize, String)>)> = None;
    let mut sl2: Option<(usize, usize, String, String)> = None;
    let mut corrections = Vec::new();
    let mut rels: Vec<(usize, &str)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let ws = words(body);
        let Some(&(col, keyword)) = ws.first() else {
            continue;
        };
        match keyword {
            "name" => match ws.as_slice() {
                [_, (_, n)] => name = n.to_string(),
                _ => return Err(err(line, col, "expected 'name <id>'")),
            },
            "convention" => match ws.as_slice() {
                [_, (c, v)] => {
                    convention = v
                        .parse()
                        .map_err(|_| err(line, *c, format!("unknown convention '{v}'")))?
                }
                _ => return Err(err(line, col, "expected 'convention weyl|left|right'")),
            },
            "gen" => {
                let (gname, wcol, wtext, central) = match ws.as_slice() {
                    [_, (_, n), (_, "weight"), (c, w)] => (*n, *c, *w, false),
                    [_, (_, n), (_, "weight"), (c, w), (_, "central")] => (*n, *c, *w, true),
                    _ => return Err(err(line, col, "expected 'gen <name> weight <int> [central]'")),
                };
                if !valid_name(gname) || matches!(gname, "eta" | "o" | "l0") {
                    return Err(err(line, ws[1].0, format!("invalid generator name '{gname}'")));
                }
                if decls.iter().any(|d| d.name == gname) {
                    return Err(err(line, ws[1].0, format!("generator '{gname}' declared twice")));
                }
                let weight: i64 = wtext
                    .parse()
                    .map_err(|_| err(line, wcol, format!("weight must be an integer, got '{wtext}'")))?;
                if central && weight != 0 {
                    return Err(err(line, wcol, "central generators must have weight 0"));
                }
                decls.push(GenDecl {
                    name: gname.into(),
                    weight,
                    central,
                    line,
                });
            }
            "order" => {
                if order.is_some() {
                    return Err(err(line, col, "duplicate 'order' line"));
                }
                let rest = &ws[1..];
                let mut names = Vec::new();
                for (k, &(c, t)) in rest.iter().enumerate() {
                    if k % 2 == 1 {
                        if t != "<" {
                            return Err(err(line, c, "expected '<'"));
                        }
                    } else {
                        names.push((c, t.to_string()));
                    }
                }
                if rest.is_empty() || rest.len() % 2 == 0 {
                    return Err(err(line, col, "expected 'order <name> < <name> ...'"));
                }
                order = Some((line, names));
            }
            "sl2" => match ws.as_slice() {
                [_, (c, a), (_, b)] => sl2 = Some((line, *c, a.to_string(), b.to_string())),
                _ => return Err(err(line, col, "expected 'sl2 <lowering> <raising>'")),
            },
            "correction" => match ws.as_slice() {
                [_, (_, id), (c, _), ..] => {
                    let off = c - 1;
                    corrections.push(Correction {
                        id: id.to_string(),
                        description: body[off..].trim_end().to_string(),
                    })
                }
                _ => return Err(err(line, col, "expected 'correction <id> <text>'")),
            },
            "rel" => rels.push((line, body)),
            other => return Err(err(line, col, format!("unknown directive '{other}'"))),
        }
    }

    // canonical order
    let ordered: Vec<&GenDecl> = match &order {
        None => decls.iter().collect(),
        Some((line, names)) => {
            let mut out = Vec::new();
            for (c, n) in names {
                let d = decls
                    .iter()
                    .find(|d| &d.name == n)
                    .ok_or_else(|| err(*line, *c, format!("unknown generator '{n}'")))?;
                if out.iter().any(|o: &&GenDecl| o.name == *n) {
                    return Err(err(*line, *c, format!("'{n}' appears twice in order")));
                }
                out.push(d);
            }
            if let Some(d) = decls.iter().find(|d| !names.iter().any(|(_, n)| *n == d.name)) {
                return Err(err(d.line, 1, format!("generator '{}' missing from order", d.name)));
            }
            out
        }
    };
    let specs: Vec<(&str, i64, bool)> = ordered
        .iter()
        .map(|d| (d.name.as_str(), d.weight, d.central))
        .collect();
    let gens = Arc::new(GeneratorSet::new(&specs)?);

    let mut relations = Vec::new();
    let mut seen: HashMap<(GenId, GenId), usize> = HashMap::new();
    for (line, body) in rels {
        let (a, b, expr, col) = split_rel(body, line)?;
        let lookup = |(c, n): (usize, &str)| -> Result<GenId> {
            gens.id(n)
                .ok_or_else(|| err(line, c, format!("unknown generator '{n}'")))
        };
        let ga = lookup(a)?;
        let gb = lookup(b)?;
        if ga == gb {
            return Err(err(line, a.0, format!("diagonal relation [{0},{0}]", a.1)));
        }
        let key = (ga.max(gb), ga.min(gb));
        if let Some(prev) = seen.insert(key, line) {
            return Err(err(
                line,
                a.0,
                format!("duplicate relation for [{},{}] (first on line {prev})", a.1, b.1),
            ));
        }
        let value = parse_element_at(&gens, expr, convention, line, col)?;
        relations.push((ga, gb, value));
    }

    let sl2 = match sl2 {
        None => None,
        Some((line, c, a, b)) => {
            let ga = gens
                .id(&a)
                .ok_or_else(|| err(line, c, format!("unknown generator '{a}'")))?;
            let gb = gens
                .id(&b)
                .ok_or_else(|| err(line, c, format!("unknown generator '{b}'")))?;
            Some((ga, gb))
        }
    };
    Presentation::new(&name, gens, relations, convention, corrections, sl2)
}

/// `rel [A,B] = expr` -> names with columns, expression text and its column.
fn trim_at(s: &str, base: usize) -> (usize, &str) {
    let lead = s.len() - s.trim_start().len();
    (base + lead + 1, s.trim())
}

fn split_rel(body: &str, line: usize) -> Result<((usize, &str), (usize, &str), &str, usize)> {
    let open = body
        .find('[')
        .ok_or_else(|| err(line, 1, "expected '[' after 'rel'"))?;
    let close = body[open..]
        .find(']')
        .map(|i| i + open)
        .ok_or_else(|| err(line, open + 1, "expected ']'"))?;
    let inner = &body[open + 1..close];
    let comma = inner
        .find(',')
        .ok_or_else(|| err(line, open + 2, "expected ',' between generators"))?;
    let a = trim_at(&inner[..comma], open + 1);
    let b = trim_at(&inner[comma + 1..], open + comma + 2);
    let rest = &body[close + 1..];
    let eq = rest
        .find('=')
        .ok_or_else(|| err(line, close + 2, "expected '='"))?;
    if !rest[..eq].trim().is_empty() {
        return Err(err(line, close + 2, "expected '=' after ']'"));
    }
    let expr_start = close + 1 + eq + 1;
    Ok((a, b, &body[expr_start..], expr_start + 1))
}

pub(super) fn render(p: &Presentation) -> String {
    let g = p.generators();
    let mut s = String::new();
    let _ = writeln!(s, "name {}", p.name);
    let _ = writeln!(s, "convention {}", p.convention.as_str());
    for x in g.iter() {
        let central = if x.central { " central" } else { "" };
        let _ = writeln!(s, "gen {} weight {}{central}", x.name, x.weight);
    }
    let names: Vec<&str> = g.iter().map(|x| x.name.as_str()).collect();
    let _ = writeln!(s, "order {}", names.join(" < "));
    if let Some((a, b)) = p.sl2() {
        let _ = writeln!(s, "sl2 {} {}", g.name(a), g.name(b));
    }
    for c in &p.corrections {
        let _ = writeln!(s, "correction {} {}", c.id, c.description);
    }
    for r in p.rules().rules() {
        let comm = p
            .rules()
            .stored_commutator(r.hi, r.lo)
            .expect("rule exists");
        if comm.is_zero() && (g.get(r.hi).central || g.get(r.lo).central) {
            continue;
        }
        let _ = writeln!(s, "rel [{},{}] = {}", g.name(r.hi), g.name(r.lo), comm.render());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::builtin_u_sl2;

    const USL2: &str = "\
name u-sl2
convention weyl
gen l-1 weight 1
gen l1 weight -1
order l-1 < l1
sl2 l-1 l1
rel [l1,l-1] = 2*eta
";

    #[test]
    fn u_sl2_text_matches_builtin() {
        assert_eq!(parse_presentation(USL2).unwrap(), builtin_u_sl2().unwrap());
        let b = builtin_u_sl2().unwrap();
        assert_eq!(parse_presentation(&b.render()).unwrap(), b);
    }

    #[test]
    fn reversed_bracket_negates() {
        let t = USL2.replace("rel [l1,l-1] = 2*eta", "rel [l-1,l1] = -2*eta");
        assert_eq!(parse_presentation(&t).unwrap(), builtin_u_sl2().unwrap());
    }

    fn parse_err_at(text: &str) -> (usize, usize, String) {
        match parse_presentation(text) {
            Err(Error::Parse { line, col, msg }) => (line, col, msg),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn diagonal_and_duplicate_relations() {
        let (line, _, msg) = parse_err_at("gen w1 weight -1\ngen w2 weight -2\nrel [w1,w1] = w2\n");
        assert_eq!(line, 3);
        assert!(msg.contains("diagonal"));
        let (line, _, msg) =
            parse_err_at("gen a weight 0\ngen b weight 0\nrel [b,a] = 0\nrel [a,b] = 0\n");
        assert_eq!(line, 4);
        assert!(msg.contains("duplicate"));
    }

    #[test]
    fn error_positions() {
        let (line, col, msg) = parse_err_at("gen a weight 1/2\n");
        assert_eq!((line, col), (1, 14));
        assert!(msg.contains("integer"));
        let (line, col, _) = parse_err_at("gen a weight 0\nrel [a,z] = a\n");
        assert_eq!((line, col), (2, 8));
        let (line, col, _) = parse_err_at("gen a weight 0\ngen b weight 0\nrel [b,a] = a + * b\n");
        assert_eq!((line, col), (3, 17));
        let (line, _, _) = parse_err_at("# header\n\nfrobnicate\n");
        assert_eq!(line, 3);
    }

    #[test]
    fn central_pairs_default_to_zero() {
        let p = parse_presentation("gen a weight 1\ngen z weight 0 central\n").unwrap();
        assert!(p.rules().missing_pairs().is_empty());
    }

    #[test]
    fn conventions_expand_products() {
        let base = "gen a weight 0\ngen b weight 0\ngen c weight 0 central\nrel [b,a] = a o c\n";
        for conv in ["weyl", "left", "right"] {
            let p = parse_presentation(&format!("convention {conv}\n{base}")).unwrap();
            let c = p.rules().stored_commutator(1, 0).unwrap();
            assert_eq!(c.render(), "a*c", "{conv}");
            assert_eq!(p.convention.as_str(), conv);
        }
    }
}
