use super::spec::{build_presentation, to_spec, GenSpec, PresentationSpec};
use super::*;
use crate::families::{construct, FamilyLabel};
use crate::iso::{are_isomorphic, fingerprint, Verdict};
use crate::series::lower_central_series;
use std::collections::{BTreeMap, BTreeSet};

fn spec(gens: &[(&str, u32)], powers: &[(&str, &str)], conjugates: &[(&str, &str)]) -> PresentationSpec {
    PresentationSpec {
        prime: 3,
        gens: gens.iter().map(|(n, o)| GenSpec { name: n.to_string(), rel_order: *o }).collect(),
        powers: powers.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        conjugates: conjugates.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
    }
}

fn b2() -> PcPresentation {
    build_presentation(&spec(&[("x", 9), ("y", 3), ("s2", 3)], &[], &[("y^x", "y*s2")])).unwrap()
}

fn m21() -> PcPresentation {
    construct(&"M[e=2,i=1]".parse::<FamilyLabel>().unwrap()).unwrap()
}

fn index(g: &PcPresentation, name: &str) -> usize {
    g.names().iter().position(|n| n == name).unwrap()
}

#[test]
fn cyclic_of_order_three() {
    let g = build_presentation(&spec(&[("x", 3)], &[], &[])).unwrap();
    assert_eq!(g.order(), 3);
    assert_eq!(g.element_order(&g.gen(0)), 3);
    assert!(g.check_consistency().passed());
}

#[test]
fn small_groups_from_specs() {
    let g = b2();
    assert_eq!(g.order(), 81);
    assert_eq!(g.len(), 4);
    assert!(g.check_consistency().passed());
    assert_eq!(m21().order(), 243);
    assert!(m21().check_consistency().passed());
}

#[test]
fn collection_examples() {
    let c9 = build_presentation(&spec(&[("x", 9)], &[], &[])).unwrap();
    assert_eq!(c9.collect(&[]).unwrap(), c9.identity());
    assert_eq!(c9.collect(&[1, 1]).unwrap(), vec![2, 0]);
    assert_eq!(c9.element_order(&c9.gen(0)), 9);
    let g = b2();
    let (x, y) = (index(&g, "x") as i32 + 1, index(&g, "y") as i32 + 1);
    let c = g.collect(&[-y, -x, y, x]).unwrap();
    assert_eq!(c, g.gen(index(&g, "s2")));
    assert!(g.collect(&[0]).is_err());
    assert!(g.collect(&[9]).is_err());
}

#[test]
fn commutator_and_power_in_mainline_root() {
    let g = m21();
    let (x, y) = (g.gen(index(&g, "x")), g.gen(index(&g, "y")));
    assert_eq!(g.comm(&y, &x), g.gen(index(&g, "s2")));
    assert_eq!(g.pow(&x, 3), g.gen(index(&g, "w")));
    assert!(PcPresentation::is_identity(&g.pow(&x, 9)));
}

#[test]
fn closures() {
    let g = m21();
    assert!(g.closure(&[]).is_trivial());
    let s2 = g.gen(index(&g, "s2"));
    let n = g.normal_closure(&[s2]);
    assert!(n.is_normal(&g));
    // oracle: the subgroup generated by all commutators of pairs of elements
    let all = g.elements(8).unwrap();
    let mut set: BTreeSet<Exps> = BTreeSet::new();
    for a in &all {
        for b in &all {
            set.insert(g.comm(a, b));
        }
    }
    loop {
        let prods: Vec<Exps> = set.iter().flat_map(|a| set.iter().map(|b| g.mul(a, b))).collect();
        let before = set.len();
        set.extend(prods);
        if set.len() == before {
            break;
        }
    }
    assert_eq!(set.len(), 9);
    assert_eq!(n.log_order(), 2);
    assert!(set.iter().all(|a| n.contains(&g, a)));
}

#[test]
fn quotient_by_trivial_keeps_the_group() {
    let g = m21();
    let (q, proj) = g.quotient(&g.trivial_subgroup()).unwrap();
    assert_eq!(fingerprint(&q), fingerprint(&g));
    assert_eq!(proj.kept().len(), g.len());
    let x = g.gen(0);
    assert!(!g.quotient(&g.closure(&[x])).is_ok());
}

#[test]
fn quotients_of_family_vertices() {
    let g = construct(&"M[e=3,i=1]".parse().unwrap()).unwrap();
    let lcs = lower_central_series(&g);
    let (q, _) = g.quotient(lcs.term(2)).unwrap();
    let b3 = construct(&FamilyLabel::class2(3)).unwrap();
    assert_eq!(are_isomorphic(&q, &b3), Verdict::Yes);

    let g = construct(&"MM[e=2,i=1]".parse().unwrap()).unwrap();
    let x = g.gen(index(&g, "x"));
    let top = g.normal_closure(&[g.pow(&x, 9)]);
    assert_eq!(top.log_order(), 1);
    let (q, _) = g.quotient(&top).unwrap();
    assert_eq!(q.order(), 243);
    assert_eq!(are_isomorphic(&q, &m21()), Verdict::Yes);
}

#[test]
fn inverted_commutator_variant() {
    let alt = build_presentation(&spec(&[("x", 9), ("y", 3), ("s2", 3)], &[], &[("y^x", "y*s2^2")])).unwrap();
    assert!(alt.check_consistency().passed());
    assert_eq!(are_isomorphic(&alt, &b2()), Verdict::Yes);
}

#[test]
fn elements_from_different_presentations() {
    let (g, h) = (b2(), b2());
    let a = g.element(g.gen(0)).unwrap();
    let b = h.element(h.gen(1)).unwrap();
    assert!(matches!(g.multiply(&a, &b), Err(crate::Error::PresentationMismatch)));
    assert!(g.element(vec![3, 0, 0, 0]).is_err());
    let ab = g.multiply(&a, &g.element(g.gen(1)).unwrap()).unwrap();
    assert_eq!(g.power(&ab, -1).unwrap(), g.invert(&ab).unwrap());
}

#[test]
fn malformed_specs() {
    assert!(build_presentation(&spec(&[("x", 9)], &[], &[("y^x", "x")])).is_err());
    assert!(build_presentation(&spec(&[("x", 6)], &[], &[])).is_err());
    assert!(build_presentation(&spec(&[("x", 3), ("y", 3)], &[], &[("y^x", "y*z")])).is_err());
    assert!(build_presentation(&spec(&[], &[], &[])).is_err());
}

#[test]
fn inconsistent_spec_is_rejected() {
    // y^x = y*x is not a valid relation for a normal series
    let r = build_presentation(&spec(&[("x", 3), ("y", 3)], &[], &[("y^x", "x*y")]));
    assert!(r.is_err());
}

#[test]
fn json_round_trip() {
    let s = spec(&[("x", 9), ("y", 3), ("s2", 3)], &[], &[("y^x", "y*s2")]);
    let text = s.to_json();
    assert_eq!(PresentationSpec::from_json(&text).unwrap(), s);
    let g = m21();
    let back = build_presentation(&to_spec(&g)).unwrap();
    assert_eq!(back.len(), g.len());
    assert_eq!(fingerprint(&back), fingerprint(&g));
    assert!(PresentationSpec::from_json("{\"prime\": 3}").is_err());
}

#[test]
fn gap_export_lists_all_relators() {
    let g = b2();
    let text = gap::export_gap(&g, "G");
    assert!(text.contains("F := FreeGroup(4);;"));
    assert!(text.contains("G := F /"));
    let n = g.len();
    let relators = text.matches("F.").count();
    assert!(relators >= n + n * (n - 1) / 2);
}

#[test]
fn enumeration_order() {
    let g = b2();
    let all = g.elements(4).unwrap();
    assert_eq!(all.len(), 81);
    for (k, e) in all.iter().enumerate() {
        assert_eq!(g.index_of(e), k);
    }
    assert!(g.elements(3).is_err());
    let counts: BTreeMap<u64, usize> = all.iter().fold(BTreeMap::new(), |mut m, e| {
        *m.entry(g.element_order(e)).or_default() += 1;
        m
    });
    assert_eq!(counts.values().sum::<usize>(), 81);
    assert_eq!(counts[&1], 1);
}
