use coclass::artin::{canonicalize_kappa, permute_positions, relabel, Kappa};
use coclass::families::{construct, FamilyLabel};
use coclass::pc::PcPresentation;
use proptest::prelude::*;
use std::sync::OnceLock;

fn groups() -> &'static [PcPresentation] {
    static GROUPS: OnceLock<Vec<PcPresentation>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        ["B[e=3]", "M[e=3,i=2]", "MM[e=3,i=2]", "V[e=4,i=2,kind=b16]", "VV[e=4,i=3,kind=C4,n=2]"]
            .iter()
            .map(|s| construct(&s.parse::<FamilyLabel>().unwrap()).unwrap())
            .collect()
    })
}

fn element(g: &PcPresentation, raw: &[u8]) -> Vec<u8> {
    (0..g.len()).map(|k| raw[k % raw.len()] % g.prime()).collect()
}

fn perm3() -> impl Strategy<Value = [usize; 3]> {
    Just([0usize, 1, 2]).prop_shuffle().prop_map(|v| [v[0], v[1], v[2]])
}

proptest! {
    #[test]
    fn associativity(k in 0usize..5, a in prop::collection::vec(0u8..3, 16), b in prop::collection::vec(0u8..3, 16), c in prop::collection::vec(0u8..3, 16)) {
        let g = &groups()[k];
        let (a, b, c) = (element(g, &a), element(g, &b), element(g, &c));
        prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
    }

    #[test]
    fn inverse_and_commutator(k in 0usize..5, a in prop::collection::vec(0u8..3, 16), b in prop::collection::vec(0u8..3, 16)) {
        let g = &groups()[k];
        let (a, b) = (element(g, &a), element(g, &b));
        prop_assert_eq!(g.mul(&a, &g.inverse(&a)), g.identity());
        // a b [a,b] = b a with [a,b] = a^-1 b^-1 a b
        prop_assert_eq!(g.mul(&g.mul(&b, &a), &g.comm(&a, &b)), g.mul(&a, &b));
    }

    #[test]
    fn collecting_a_concatenation(k in 0usize..5, u in prop::collection::vec(1i32..=6, 0..10), v in prop::collection::vec(-6i32..=-1, 0..10)) {
        let g = &groups()[k];
        let n = g.len() as i32;
        let fit = |w: &[i32]| -> Vec<i32> { w.iter().map(|&l| l.signum() * ((l.abs() - 1) % n + 1)).collect() };
        let (u, v) = (fit(&u), fit(&v));
        let uv: Vec<i32> = u.iter().chain(&v).copied().collect();
        prop_assert_eq!(g.collect(&uv).unwrap(), g.mul(&g.collect(&u).unwrap(), &g.collect(&v).unwrap()));
    }

    #[test]
    fn coordinates_round_trip(k in 0usize..5, raw in prop::collection::vec(0u8..3, 16)) {
        let g = &groups()[k];
        let a = element(g, &raw);
        prop_assert_eq!(g.element_at(g.index_of(&a)), a);
    }

    #[test]
    fn subgroup_coordinates_round_trip(k in 0usize..5, raw in prop::collection::vec(0u8..3, 16)) {
        let g = &groups()[k];
        let a = element(g, &raw);
        let n = g.normal_closure(&[a.clone()]);
        let coords = n.coordinates(g, &a).unwrap();
        prop_assert_eq!(n.element(g, &coords), a);
    }

    #[test]
    fn quotient_order_conservation(k in 0usize..5, raw in prop::collection::vec(0u8..3, 16)) {
        let g = &groups()[k];
        let n = g.normal_closure(&[element(g, &raw)]);
        let (q, proj) = g.quotient(&n).unwrap();
        prop_assert_eq!(q.log_order() + n.log_order(), g.log_order());
        prop_assert!(q.check_consistency().passed());
        let a = element(g, &raw.iter().rev().copied().collect::<Vec<_>>());
        let b = element(g, &raw);
        prop_assert_eq!(proj.apply(g, &g.mul(&a, &b)), q.mul(&proj.apply(g, &a), &proj.apply(g, &b)));
    }

    #[test]
    fn kappa_canonical_forms(code in prop::array::uniform4(0u8..5), p in perm3(), q in perm3()) {
        let k = Kappa(code);
        let c = canonicalize_kappa(k);
        prop_assert_eq!(canonicalize_kappa(c), c);
        prop_assert_eq!(canonicalize_kappa(relabel(permute_positions(k, p), q)), c);
    }
}
