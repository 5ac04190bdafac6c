//! Lower central, lower exponent-p central and derived series, centralizers,
//! abelian invariants and the scalar invariants built from them.

use crate::error::{Error, Result};
use crate::pc::{Exps, PcPresentation, Subgroup};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesKind {
    LowerCentral,
    LowerPCentral,
    Derived,
}

/// Descending chain of normal subgroups ending in the trivial subgroup.
/// `terms[0]` is the whole group.
#[derive(Clone, Debug)]
pub struct SeriesChain {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
}

impl SeriesChain {
    /// Number of steps down to the trivial subgroup.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, k: usize) -> &Subgroup {
        &self.terms[k.min(self.terms.len() - 1)]
    }

    pub fn log_orders(&self) -> Vec<u32> {
        self.terms.iter().map(|t| t.log_order()).collect()
    }
}

fn pcgs(g: &PcPresentation) -> Vec<Exps> {
    (0..g.len()).map(|i| g.gen(i)).collect()
}

/// `[N, G]` for a normal subgroup `N`.
pub fn commutator_with_group(g: &PcPresentation, n: &Subgroup) -> Subgroup {
    let gens = pcgs(g);
    let comms: Vec<Exps> =
        n.gens().iter().flat_map(|a| gens.iter().map(|b| g.comm(a, b)).collect::<Vec<_>>()).collect();
    g.normal_closure(&comms)
}

/// `gamma_1 = G, gamma_{k+1} = [gamma_k, G]`.
pub fn lower_central_series(g: &PcPresentation) -> SeriesChain {
    let mut terms = vec![g.whole_group()];
    while !terms.last().unwrap().is_trivial() {
        let next = commutator_with_group(g, terms.last().unwrap());
        terms.push(next);
    }
    SeriesChain { kind: SeriesKind::LowerCentral, terms }
}

/// `P_0 = G, P_k = P_{k-1}^p [P_{k-1}, G]`.
pub fn lower_p_central_series(g: &PcPresentation) -> SeriesChain {
    let gens = pcgs(g);
    let mut terms = vec![g.whole_group()];
    while !terms.last().unwrap().is_trivial() {
        let cur = terms.last().unwrap();
        let mut seeds: Vec<Exps> = cur.gens().iter().map(|a| g.pth_power(a)).collect();
        for a in cur.gens() {
            for b in &gens {
                seeds.push(g.comm(a, b));
            }
        }
        terms.push(g.normal_closure(&seeds));
    }
    SeriesChain { kind: SeriesKind::LowerPCentral, terms }
}

/// Commutator subgroup `[H, H]` of a subgroup.
pub fn derived_subgroup_of(g: &PcPresentation, h: &Subgroup) -> Subgroup {
    let hg = h.gens();
    let mut comms = Vec::new();
    for (s, a) in hg.iter().enumerate() {
        for b in &hg[s + 1..] {
            comms.push(g.comm(a, b));
        }
    }
    g.closure_under(&comms, hg)
}

pub fn derived_subgroup(g: &PcPresentation) -> Subgroup {
    derived_subgroup_of(g, &g.whole_group())
}

pub fn derived_series(g: &PcPresentation) -> SeriesChain {
    let mut terms = vec![g.whole_group()];
    loop {
        let cur = terms.last().unwrap();
        let next = derived_subgroup_of(g, cur);
        if next.log_order() == cur.log_order() {
            break;
        }
        terms.push(next);
    }
    SeriesChain { kind: SeriesKind::Derived, terms }
}

/// Frattini subgroup `H^p [H, H]` of a subgroup.
pub fn frattini_of(g: &PcPresentation, h: &Subgroup) -> Subgroup {
    let hg = h.gens();
    let mut seeds: Vec<Exps> = hg.iter().map(|a| g.pth_power(a)).collect();
    for (s, a) in hg.iter().enumerate() {
        for b in &hg[s + 1..] {
            seeds.push(g.comm(a, b));
        }
    }
    g.closure_under(&seeds, hg)
}

/// `C_H(x)`, lifted one pc layer at a time: on the preimage of the
/// centralizer modulo `G_{k+1}`, the map `c -> [c, x]` read in the
/// central layer `G_k / G_{k+1}` is a homomorphism, and its kernel is the
/// next preimage.
pub fn centralizer_in(g: &PcPresentation, h: &Subgroup, x: &[u8]) -> Subgroup {
    let p = g.prime();
    let mut cur = h.clone();
    for k in 0..g.len() {
        let cg = cur.gens().to_vec();
        let values: Vec<u8> = cg
            .iter()
            .map(|c| {
                let d = g.comm(c, x);
                debug_assert!(d[..k].iter().all(|&a| a == 0));
                d[k]
            })
            .collect();
        let Some(pivot) = values.iter().position(|&v| v != 0) else {
            continue;
        };
        let inv = (1..p).find(|&b| (values[pivot] as u32 * b as u32) % p as u32 == 1).unwrap();
        let mut seeds: Vec<Exps> = cg.iter().map(|c| g.pth_power(c)).collect();
        for (s, a) in cg.iter().enumerate() {
            for b in &cg[s + 1..] {
                seeds.push(g.comm(a, b));
            }
        }
        for (t, c) in cg.iter().enumerate() {
            if t == pivot {
                continue;
            }
            // c * pivot^(-values[t] / values[pivot])
            let coef = (p as u32 - (values[t] as u32 * inv as u32) % p as u32) % p as u32;
            let fix = g.pow(&cg[pivot], coef as u64);
            seeds.push(g.mul(c, &fix));
        }
        cur = g.closure_under(&seeds, &cg);
    }
    cur
}

pub fn centralizer(g: &PcPresentation, x: &[u8]) -> Subgroup {
    centralizer_in(g, &g.whole_group(), x)
}

pub fn centre(g: &PcPresentation) -> Subgroup {
    let mut cur = g.whole_group();
    for i in 0..g.len() {
        cur = centralizer_in(g, &cur, &g.gen(i));
    }
    cur
}

/// Logarithmic abelian type of `H / K` for `K` normal in `H` with abelian
/// quotient: parts `e_1 >= e_2 >= ...` with `H/K = prod C(p^e_k)`.
pub fn abelian_invariants_mod(g: &PcPresentation, h: &Subgroup, k: &Subgroup) -> Vec<u32> {
    let base = k.log_order();
    // a[m] = log |(H/K)^(p^m)|
    let mut a = vec![h.log_order() - base];
    let mut powers: Vec<Exps> = h.gens().to_vec();
    while *a.last().unwrap() > 0 {
        powers = powers.iter().map(|x| g.pth_power(x)).collect();
        let mut seeds = k.gens().to_vec();
        seeds.extend(powers.iter().cloned());
        a.push(g.closure(&seeds).log_order() - base);
    }
    // number of cyclic factors of exponent > m is a[m] - a[m+1]
    let mut parts = Vec::new();
    for m in (0..a.len() - 1).rev() {
        let above = a[m] - a[m + 1];
        let deeper = if m + 2 < a.len() { a[m + 1] - a[m + 2] } else { 0 };
        for _ in 0..above - deeper {
            parts.push(m as u32 + 1);
        }
    }
    parts
}

/// Logarithmic abelian type of `H / H'`.
pub fn abelian_invariants(g: &PcPresentation, h: &Subgroup) -> Vec<u32> {
    abelian_invariants_mod(g, h, &derived_subgroup_of(g, h))
}

/// Logarithmic abelian type of a subgroup that is itself abelian.
pub fn abelian_type(g: &PcPresentation, h: &Subgroup) -> Vec<u32> {
    abelian_invariants_mod(g, h, &g.trivial_subgroup())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScalarInvariants {
    /// log_p of the order
    pub lo: u32,
    /// nilpotency class
    pub cl: u32,
    /// p-class
    pub cl_p: u32,
    /// coclass `lo - cl`
    pub cc: u32,
    /// p-coclass `lo - cl_p`
    pub cc_p: u32,
}

pub fn scalar_invariants(g: &PcPresentation) -> ScalarInvariants {
    let lo = g.log_order();
    let cl = lower_central_series(g).length() as u32;
    let cl_p = lower_p_central_series(g).length() as u32;
    ScalarInvariants { lo, cl, cl_p, cc: lo - cl, cc_p: lo - cl_p }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShockPosition {
    Behind,
    On,
    Ahead,
}

impl fmt::Display for ShockPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShockPosition::Behind => "behind",
            ShockPosition::On => "on",
            ShockPosition::Ahead => "ahead",
        })
    }
}

/// Position relative to the locus where class equals the coclass `r` of the
/// tree, for a group with commutator quotient `C(3^e) x C3`.
pub fn shock_wave_position(g: &PcPresentation, e: u32, r: u32) -> Result<ShockPosition> {
    let ab = abelian_invariants(g, &g.whole_group());
    if ab != vec![e, 1] {
        return Err(Error::BadParameters(format!("commutator quotient has type {ab:?}, expected [{e}, 1]")));
    }
    if r != e && r != e + 1 {
        return Err(Error::BadParameters(format!("coclass {r} is neither {e} nor {}", e + 1)));
    }
    let cl = lower_central_series(g).length() as u32;
    Ok(match cl.cmp(&r) {
        std::cmp::Ordering::Less => ShockPosition::Behind,
        std::cmp::Ordering::Equal => ShockPosition::On,
        std::cmp::Ordering::Greater => ShockPosition::Ahead,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{construct, FamilyLabel};
    use crate::pc::spec::{build_presentation, GenSpec, PresentationSpec};

    fn c9xc3() -> PcPresentation {
        build_presentation(&PresentationSpec {
            prime: 3,
            gens: vec![GenSpec { name: "a".into(), rel_order: 9 }, GenSpec { name: "b".into(), rel_order: 3 }],
            powers: Default::default(),
            conjugates: Default::default(),
        })
        .unwrap()
    }

    /// Centre by testing every element against the pc generators.
    fn centre_by_enumeration(g: &PcPresentation) -> u32 {
        let mut count = g
            .elements(12)
            .unwrap()
            .into_iter()
            .filter(|z| (0..g.len()).all(|i| g.mul(z, &g.gen(i)) == g.mul(&g.gen(i), z)))
            .count();
        let mut log = 0;
        while count > 1 {
            assert_eq!(count % 3, 0);
            count /= 3;
            log += 1;
        }
        log
    }

    #[test]
    fn abelian_group_has_class_one() {
        let g = c9xc3();
        let s = scalar_invariants(&g);
        assert_eq!((s.lo, s.cl, s.cl_p), (3, 1, 2));
        assert!(derived_subgroup(&g).is_trivial());
        assert_eq!(abelian_type(&g, &g.whole_group()), vec![2, 1]);
    }

    #[test]
    fn trivial_group_invariants_are_zero() {
        let g = PcPresentation::from_parts(3, vec![], vec![], vec![], vec![]).unwrap();
        assert_eq!(scalar_invariants(&g), ScalarInvariants::default());
    }

    #[test]
    fn class2_chain_root() {
        let g = construct(&FamilyLabel::class2(2)).unwrap();
        let s = scalar_invariants(&g);
        assert_eq!((s.cl, s.cl_p), (2, 2));
        let s2 = g.comm(&g.gen(1), &g.gen(0));
        assert!(centre(&g).contains(&g, &s2));
    }

    #[test]
    fn centre_matches_enumeration() {
        for l in [
            FamilyLabel::cf_mainline(2, 1),
            FamilyLabel::cf_mainline(2, 2),
            FamilyLabel::bcf_mainline(2, 1),
            "V[e=2,i=2,kind=b3,n=1]".parse().unwrap(),
            "V[e=2,i=2,kind=twig]".parse().unwrap(),
        ] {
            let g = construct(&l).unwrap();
            assert_eq!(centre(&g).log_order(), centre_by_enumeration(&g), "{l}");
        }
    }

    #[test]
    fn mainline_scalars() {
        let s = scalar_invariants(&construct(&FamilyLabel::cf_mainline(5, 2)).unwrap());
        assert_eq!(s, ScalarInvariants { lo: 9, cl: 4, cl_p: 5, cc: 5, cc_p: 4 });
        let s = scalar_invariants(&construct(&FamilyLabel::bcf_mainline(3, 1)).unwrap());
        assert_eq!((s.lo, s.cl, s.cl_p, s.cc), (7, 3, 4, 4));
    }

    #[test]
    fn shock_positions() {
        let pos = |e, i| shock_wave_position(&construct(&FamilyLabel::cf_mainline(e, i)).unwrap(), e, e).unwrap();
        assert_eq!(pos(4, 1), ShockPosition::Behind);
        assert_eq!(pos(4, 2), ShockPosition::On);
        assert_eq!(pos(3, 4), ShockPosition::Ahead);
        assert!(shock_wave_position(&c9xc3(), 3, 3).is_err());
    }
}
