use crw_core::stepalgebra::{z_mirror, RELATION_PAIRS};
use crw_core::{builtin_crw_sl2, RationalFunction, StepAlgebra};

fn step() -> StepAlgebra {
    StepAlgebra::new(builtin_crw_sl2(true).unwrap()).unwrap()
}

fn rf(s: &str) -> RationalFunction {
    s.parse().unwrap()
}

// Computed separately with an independent sympy implementation of the
// quotient map, in factored form.
const DERIVED: &[(usize, &str, &str)] = &[
    (1, "v-2*v-1", "(eta-4)/(eta-2)"),
    (2, "v-2*v0", "1 - 6/((eta-2)*(2*eta-3))"),
    (2, "v-1^2", "-4/(eta-1)"),
    (2, "v-2", "4*eta/3"),
    (3, "v-1*v0", "(eta-4)/(eta-1)"),
    (3, "v-2*v1", "2*(eta-3)/((eta-2)*(2*eta-3))"),
    (3, "v-1", "(5*eta-2)/3"),
    (4, "v-2*v1", "1 - 6/(eta*(eta-1))"),
    (4, "v-1*v0", "-12*(eta-2)/(eta*(2*eta-1))"),
    (4, "v-1", "2*(eta-1)*(eta-2)/eta"),
    (5, "v-1*v1", "(2*eta^2-3*eta-8)/((eta-1)*(2*eta-1))"),
    (5, "v-2*v2", "eta*(2*eta-5)/(2*(eta-2)*(eta-1)*(2*eta-3))"),
    (5, "v0^2", "-9/(2*eta)"),
    (5, "v0", "3*(2*eta+1)/2"),
    (5, "r", "-eta/2"),
    (5, "1", "0"),
    (6, "v-2*v2", "eta*(2*eta-5)*(2*eta^2-eta-9)/((eta-2)*(eta+1)*(2*eta-3)*(2*eta-1))"),
    (6, "v-1*v1", "-8*(eta^2-eta-3)/(eta*(eta-1)*(eta+1))"),
    (6, "v0^2", "36/((eta+1)*(2*eta+1))"),
    (6, "v0", "-12*eta/(eta+1)"),
    (6, "r", "4*eta*(eta+2)/(eta+1)"),
    (7, "v-1*v2", "1 - 6/(eta*(eta+1))"),
    (7, "v0*v1", "-12*(eta-1)/((eta+1)*(2*eta+1))"),
    (7, "v1", "2*eta*(eta-1)/(eta+1)"),
    (8, "v0*v1", "(eta-3)/eta"),
    (8, "v-1*v2", "2*(eta-2)/((eta-1)*(2*eta-1))"),
    (8, "v1", "(5*eta+3)/3"),
    (9, "v0*v2", "1 - 6/(eta*(2*eta+1))"),
    (9, "v1^2", "-4/(eta+1)"),
    (9, "v2", "4*(eta+2)/3"),
    (10, "v1*v2", "(eta-1)/(eta+1)"),
];

#[test]
fn derived_coefficients_match_independent_values() {
    let s = step();
    let reports: Vec<_> = s.derive_all().into_iter().map(Result::unwrap).collect();
    for r in &reports {
        assert!(r.verified, "relation {:?} residual {}", r.relation_index, r.residual.render());
    }
    for &(k, word, value) in DERIVED {
        assert_eq!(reports[k - 1].derived_coefficient(word), rf(value), "relation {k} {word}");
    }
    // nothing beyond the listed words
    for r in &reports {
        let k = r.relation_index.unwrap();
        for (w, _) in &r.derived {
            assert!(
                DERIVED.iter().any(|&(kk, ww, _)| kk == k && ww == w.shape()),
                "relation {k}: unexpected {}",
                w.shape()
            );
        }
    }
}

#[test]
fn printed_relations_verify_or_report() {
    let s = step();
    let verified: Vec<bool> = s.verify_all().into_iter().map(|r| r.unwrap().verified).collect();
    assert_eq!(
        verified,
        [true, true, true, false, false, false, false, false, true, true]
    );
    let four = s.verify_relation(4).unwrap();
    assert_eq!(four.mismatches.len(), 1);
    assert_eq!(four.mismatches[0].word, "v-1*v0");
    let five = s.verify_relation(5).unwrap();
    let words: Vec<&str> = five.mismatches.iter().map(|m| m.word.as_str()).collect();
    assert_eq!(words, ["v0^2", "1", "r"]);
}

#[test]
fn pole_sets() {
    let s = step();
    let one = s.derive_relation(-1, -2).unwrap();
    let poles: Vec<String> = one.pole_set.iter().map(|p| p.to_string()).collect();
    assert_eq!(poles, ["2"]);
    let six = s.derive_relation(2, -2).unwrap();
    let poles: Vec<String> = six.pole_set.iter().map(|p| p.to_string()).collect();
    assert_eq!(poles, ["-1", "-1/2", "0", "1/2", "1", "3/2", "2"]);
}

#[test]
fn transpose_maps_relations_onto_each_other() {
    let s = step();
    let reports: Vec<_> = s.derive_all().into_iter().map(Result::unwrap).collect();
    for (k, &(i, j)) in RELATION_PAIRS.iter().enumerate() {
        let (pair, image) = z_mirror((i, j), &reports[k].derived);
        let target = RELATION_PAIRS.iter().position(|&p| p == pair).unwrap();
        assert_eq!(target + 1, [10, 9, 8, 7, 5, 6, 4, 3, 2, 1][k]);
        let mut a: Vec<_> = image.iter().map(|(w, c)| (w.shape(), c.clone())).collect();
        let mut b: Vec<_> = reports[target]
            .derived
            .iter()
            .map(|(w, c)| (w.shape(), c.clone()))
            .collect();
        a.sort_by(|x, y| x.0.cmp(&y.0));
        b.sort_by(|x, y| x.0.cmp(&y.0));
        assert_eq!(a, b, "relation {}", k + 1);
    }
    assert!(s.check_z_mirror(2, -1).unwrap());
}

#[test]
fn derive_rejects_bad_pairs() {
    let s = step();
    assert!(s.derive_relation(-2, 1).is_err());
    assert!(s.derive_relation(3, 0).is_err());
}

#[test]
fn report_json_fields() {
    let s = step();
    let j = s.verify_relation(5).unwrap().to_json();
    for key in [
        "relation_index",
        "verified",
        "residual",
        "derived_coefficients",
        "printed_coefficients",
        "pole_set",
        "mismatches",
    ] {
        assert!(j.get(key).is_some(), "{key}");
    }
    assert_eq!(j["verified"], false);
    assert_eq!(j["derived_coefficients"]["r"], "-1/2*eta");
}

#[test]
fn phi_images_are_weight_homogeneous_highest_weight_vectors() {
    let s = step();
    for &i in &[-2i64, -1, 0, 1, 2] {
        for &j in &[-2i64, -1, 0, 1, 2] {
            let w = crw_core::ZWord::new(vec![crw_core::ZLetter::V(i), crw_core::ZLetter::V(j)]);
            let x = s.phi(&w).unwrap();
            if !x.is_zero() {
                assert_eq!(x.value().homogeneous_weight(), Some(-(i + j)), "{}", w.shape());
            }
            assert!(s.raise(&x).unwrap().is_zero(), "{}", w.shape());
            // a trailing projector changes nothing
            assert_eq!(s.apply_projector(x.value()).unwrap(), x, "{}", w.shape());
        }
    }
}
