use coclass::families::construct;
use coclass::trees::*;

fn evaluate_against_target(p: PathProgram, opts: PathOptions) {
    let target = p.target().expect("explicit programs name their target");
    let mut ev = PathEvaluator::new(opts);
    let v = ev.evaluate(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
    let m = compare(&v.group, &construct(&target).unwrap(), opts.iso_cap);
    assert_ne!(m, Match::Different, "{p}");
    assert_eq!(v.named_type(), construct_type(&target), "{p}");
}

fn construct_type(l: &coclass::families::FamilyLabel) -> coclass::artin::NamedType {
    coclass::artin::artin_pattern(&construct(l).unwrap()).unwrap().named_type
}

#[test]
fn explicit_programs_reach_their_targets() {
    let opts = PathOptions::default();
    for p in [
        a1_explicit(3, 4).unwrap(),
        a1_explicit(3, 5).unwrap(),
        d10_explicit(3, 4).unwrap(),
        b16a1_explicit(3, 4, 2).unwrap(),
        b16a1_explicit(3, 4, 4).unwrap(),
        b3a1_explicit(4, 4, 6).unwrap(),
        bcf_offside_explicit(3, 4, 2, 2).unwrap(),
    ] {
        evaluate_against_target(p, opts);
    }
}

#[test]
fn ground_state_is_executable() {
    let p = excited_state_metabelianization(0, 5, 2, 2).unwrap();
    let opts = PathOptions { cover_cap: 10, ..Default::default() };
    evaluate_against_target(p, opts);
}

#[test]
fn bifurcation_at_the_root() {
    let r = verify_bifurcation(3, &BifurcationOptions::default()).unwrap();
    assert!(r.passed(), "{r}");
}
