use super::*;
use crate::error::Error;
use crate::iso::are_isomorphic;

fn label(s: &str) -> FamilyLabel {
    s.parse().unwrap()
}

#[test]
fn first_cf_branch_has_seven_vertices() {
    let b = build_branch(Tree::Cf, 2, 1).unwrap();
    assert_eq!(b.cardinality(), 7);
    assert!(b.type_mismatches().is_empty(), "{:?}", b.type_mismatches());
    let count = |t| b.type_multiset().iter().filter(|(x, _, _)| *x == t).count();
    assert_eq!(count(NamedType::A1), 5);
    assert_eq!(count(NamedType::B16), 1);
    assert_eq!(count(NamedType::B3), 1);
    assert_eq!(b.root.named_type(), NamedType::A1);
}

#[test]
fn even_bcf_branch_has_two_b2_vertices() {
    let b = build_branch(Tree::Bcf, 2, 2).unwrap();
    assert_eq!(b.cardinality(), 9);
    let b2 = b.offside.iter().filter(|v| v.named_type() == NamedType::B2).count();
    assert_eq!(b2, 2);
    assert_eq!(b.root.named_type(), NamedType::D10Lower);
}

#[test]
fn predictions_for_listed_vertices() {
    let p = predicted_links(&label("M[e=4,i=1]")).unwrap();
    assert_eq!((p.p_parent, p.step, p.kind), (label("M[e=3,i=1]"), 1, PropagationKind::Exo));
    let p = predicted_links(&label("M[e=4,i=2]")).unwrap();
    assert_eq!((p.p_parent, p.step, p.kind), (label("M[e=3,i=1]"), 2, PropagationKind::Exo));
    let p = predicted_links(&label("V[e=3,i=2,kind=b3,n=1]")).unwrap();
    assert_eq!((p.p_parent, p.parent, p.kind), (label("M[e=3,i=1]"), label("M[e=3,i=1]"), PropagationKind::Endo));
    let p = predicted_links(&label("VV[e=4,i=2,kind=C4,n=1]")).unwrap();
    assert_eq!(p.p_parent, label("V[e=4,i=2,kind=bicyclic,n=1]"));
    assert!(predicted_links(&label("M[e=3,i=1]")).is_none());
    assert!(predicted_links(&label("MM[e=2,i=1]")).is_none());
}

#[test]
fn laws_hold_for_listed_vertices() {
    for l in ["M[e=4,i=1]", "M[e=4,i=2]", "V[e=3,i=2,kind=b3,n=1]", "MM[e=3,i=1]", "V[e=4,i=2,kind=twig]"] {
        let r = check_laws(&label(l), ISO_CAP_LOG).unwrap();
        assert!(!r.checks.is_empty());
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn small_law_grid() {
    for r in [
        verify_mainline_laws(3, 4, 3, ISO_CAP_LOG).unwrap(),
        verify_offside_laws(3, 4, 3, ISO_CAP_LOG).unwrap(),
        verify_bcf_laws(2, 3, 3, ISO_CAP_LOG).unwrap(),
    ] {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn subscript_table() {
    assert_eq!(k_subscript(4, 3).unwrap(), 9);
    assert_eq!(k_subscript(2, 3).unwrap(), 3);
    assert_eq!(k_subscript(3, 3).unwrap(), 7);
    assert_eq!(k_subscript(5, 2).unwrap(), 6);
    assert!(k_subscript(6, 2).is_err());
    assert_eq!(branch_position(Tree::Bcf, 5, 2, 9).unwrap(), label("VV[e=5,i=3,kind=C4,n=2]"));
    assert!(branch_position(Tree::Bcf, 5, 1, 6).is_err());
    assert!(branch_position(Tree::Cf, 5, 1, 8).is_err());
}

#[test]
fn ground_state_program() {
    let p = excited_state_metabelianization(0, 5, 2, 2).unwrap();
    assert_eq!(p.start, label("M[e=4,i=2]"));
    assert_eq!(p.steps.len(), 2);
    assert_eq!(p.steps[0].step, 2);
    assert_eq!(p.steps[0].selector.named_type, Some(NamedType::B16));
    assert_eq!(p.steps[1].step, 1);
    assert_eq!(p.steps[1].selector.named_type, Some(NamedType::D10Upper));
    assert_eq!(p.target(), Some(label("VV[e=5,i=3,kind=D10,n=1]")));
    let p = excited_state_metabelianization(0, 6, 4, 3).unwrap();
    assert_eq!(p.target(), Some(label("VV[e=6,i=3,kind=C4,n=2]")));
}

#[test]
fn first_excited_state_program() {
    let p = excited_state_metabelianization(1, 7, 4, 2).unwrap();
    let prefix: Vec<_> = p.steps[..2].iter().map(|s| (s.step, s.selector.target.unwrap())).collect();
    assert_eq!(prefix, vec![(2, label("M[e=5,i=3]")), (2, label("M[e=6,i=4]"))]);
    assert_eq!(p.log_order(), p.target().unwrap().log_order());
    assert!(excited_state_metabelianization(1, 6, 4, 2).is_err());
    assert!(excited_state_metabelianization(0, 5, 3, 2).is_err());
}

#[test]
fn program_orders_add_up() {
    let programs = [
        a1_explicit(3, 5).unwrap(),
        b3a1_explicit(4, 5, 6).unwrap(),
        b16a1_explicit(3, 6, 3).unwrap(),
        d10_explicit(4, 6).unwrap(),
        bcf_offside_explicit(4, 6, 5, 3).unwrap(),
        exhaustion_program(&label("VV[e=4,i=2,kind=D5,n=1]")).unwrap(),
    ];
    for p in programs {
        assert_eq!(p.log_order(), p.target().unwrap().log_order(), "{p}");
    }
    assert!(b3a1_explicit(3, 4, 5).is_err());
    assert!(bcf_offside_explicit(3, 4, 2, 3).is_err());
}

#[test]
fn one_exo_step_reaches_the_next_root() {
    let mut ev = PathEvaluator::new(PathOptions::default());
    let p = PathProgram::new(label("M[e=3,i=1]")).then(1, Selector::new(NamedType::A1, PropagationKind::Exo));
    let v = ev.evaluate(&p).unwrap();
    assert_eq!(are_isomorphic(&v.group, &construct(&label("M[e=4,i=1]")).unwrap()), Verdict::Yes);
    let p = p.then(1, Selector::new(NamedType::D10Lower, PropagationKind::Endo));
    let v = ev.evaluate(&p).unwrap();
    assert_eq!(v.invariants.lo, 8);
    assert_eq!(compare(&v.group, &construct(&label("MM[e=4,i=1]")).unwrap(), 8), Match::Isomorphic);
}

#[test]
fn selectors_must_be_unique() {
    let mut ev = PathEvaluator::new(PathOptions::default());
    let start = label("M[e=3,i=1]");
    let p = PathProgram::new(start).then(1, Selector::new(NamedType::A1, PropagationKind::Endo));
    assert!(matches!(ev.evaluate(&p), Err(Error::AmbiguousSelector(_))));
    let p = PathProgram::new(start).then(1, Selector::new(NamedType::B3, PropagationKind::Exo));
    assert!(matches!(ev.evaluate(&p), Err(Error::NoMatch(_))));
    let p = PathProgram::new(start)
        .then(1, Selector::new(NamedType::A1, PropagationKind::Endo).centre(CentreShape::Cyclic));
    assert_eq!(ev.evaluate(&p).unwrap().centre, CentreShape::Cyclic);
}

#[test]
fn class2_chain_to_four() {
    let r = verify_class2_chain(4, ISO_CAP_LOG).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn periodicity_of_the_e2_trees() {
    for tree in [Tree::Cf, Tree::Bcf] {
        let r = verify_periodicity(tree, 2, 4).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn tree_export() {
    let rep = tree_report(Tree::Cf, 2, 4).unwrap();
    assert_eq!(rep.vertices.len(), 7 + 9 + 7 + 9);
    assert_eq!(rep.edges.len(), rep.vertices.len() - 1);
    assert_eq!(rep.vertices.iter().filter(|v| v.mainline).count(), 4);
    assert!(rep.edges.iter().all(|e| e.step == 1));
    let json = serde_json::to_value(&rep).unwrap();
    assert!(json["vertices"].is_array() && json["edges"][0]["kind"].is_string());
    let dot = to_dot(&rep);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("style=bold").count(), 4 + 3);
}

#[test]
fn invariant_formulas() {
    let inv = expected_invariants(&label("M[e=5,i=2]"));
    assert_eq!((inv.cl, inv.cl_p, inv.cc_p), (4, 5, 4));
    let inv = expected_invariants(&label("M[e=3,i=4]"));
    assert_eq!((inv.cl, inv.cl_p, inv.cc_p), (6, 6, 3));
    let inv = expected_invariants(&label("MM[e=4,i=3]"));
    assert_eq!((inv.lo, inv.cl_p, inv.cc), (10, 5, 5));
    let inv = expected_invariants(&FamilyLabel::class2(4));
    assert_eq!((inv.lo, inv.cl, inv.cl_p), (6, 2, 4));
}
