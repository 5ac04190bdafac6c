//! Randomized and exhaustive self-checks of the group arithmetic.

use crate::artin::{artin_transfer, canonicalize_kappa, maximal_subgroups, permute_positions, relabel, transfer_value, Kappa};
use crate::error::Result;
use crate::families::{construct, FamilyLabel};
use crate::pc::{Exps, PcPresentation};
use crate::series::{derived_subgroup_of, lower_central_series, lower_p_central_series};
use crate::trees::Report;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;

/// Groups fuzzed by default, from the class-2 root up to order `3^14`.
pub const FUZZ_GROUPS: [&str; 8] = [
    "B[e=2]",
    "M[e=2,i=1]",
    "MM[e=2,i=1]",
    "V[e=3,i=2,kind=b3,n=2]",
    "V[e=4,i=3,kind=twig]",
    "VV[e=3,i=3,kind=D5,n=2]",
    "M[e=6,i=6]",
    "MM[e=5,i=5]",
];

fn random_element(g: &PcPresentation, rng: &mut ChaCha8Rng) -> Exps {
    (0..g.len()).map(|_| rng.gen_range(0..g.prime())).collect()
}

fn random_word(g: &PcPresentation, rng: &mut ChaCha8Rng) -> Vec<i32> {
    let n = g.len() as i32;
    (0..rng.gen_range(0..12)).map(|_| rng.gen_range(1..=n) * if rng.gen() { 1 } else { -1 }).collect()
}

/// Associativity, identity, inverses, and collection of concatenated words,
/// on `triples` random triples.
pub fn fuzz_group_axioms(g: &PcPresentation, triples: usize, seed: u64) -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = g.identity();
    for _ in 0..triples {
        let (a, b, c) = (random_element(g, &mut rng), random_element(g, &mut rng), random_element(g, &mut rng));
        if g.mul(&g.mul(&a, &b), &c) != g.mul(&a, &g.mul(&b, &c)) {
            return Err(format!("({})({})({}) is not associative", g.format(&a), g.format(&b), g.format(&c)));
        }
        if g.mul(&a, &id) != a || g.mul(&id, &a) != a {
            return Err(format!("identity fails on {}", g.format(&a)));
        }
        let inv = g.inverse(&a);
        if g.mul(&a, &inv) != id || g.mul(&inv, &a) != id {
            return Err(format!("inverse fails on {}", g.format(&a)));
        }
        let (u, v) = (random_word(g, &mut rng), random_word(g, &mut rng));
        let uv: Vec<i32> = u.iter().chain(&v).copied().collect();
        let lhs = g.collect(&uv).map_err(|e| e.to_string())?;
        let rhs = g.mul(&g.collect(&u).map_err(|e| e.to_string())?, &g.collect(&v).map_err(|e| e.to_string())?);
        if lhs != rhs {
            return Err(format!("collection of {uv:?} disagrees with the product"));
        }
    }
    Ok(())
}

/// Evaluates all four transfers on every element by the product formula and
/// checks the homomorphism property on every pair of elements.
pub fn transfers_are_homomorphisms(g: &PcPresentation, cap_log: u32) -> Result<bool> {
    let frame = maximal_subgroups(g)?;
    let all = g.elements(cap_log)?;
    for i in 0..4 {
        if !artin_transfer(g, &frame, i).is_homomorphism(g, &frame) {
            return Ok(false);
        }
        let h = &frame.maximal[i];
        let hd = derived_subgroup_of(g, h);
        let values: HashMap<&Exps, Exps> =
            all.iter().map(|a| (a, transfer_value(g, h, &hd, &frame.coset_reps[i], a))).collect();
        for a in &all {
            for b in &all {
                let prod = hd.sift(g, &g.mul(&values[a], &values[b]));
                if values[&g.mul(a, b)] != prod {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `log|G/N| + log|N| = log|G|` for every term of both central series.
pub fn quotient_orders_conserved(g: &PcPresentation) -> Result<bool> {
    for series in [lower_central_series(g), lower_p_central_series(g)] {
        for k in 0..series.length() {
            let n = series.term(k);
            let (q, _) = g.quotient(n)?;
            if q.log_order() + n.log_order() != g.log_order() || !q.check_consistency().passed() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Canonical forms are fixed points and constant on orbits, checked on
/// every code vector.
pub fn kappa_canonicalization_is_idempotent() -> bool {
    let all = (0..625u32).map(|k| Kappa([(k % 5) as u8, (k / 5 % 5) as u8, (k / 25 % 5) as u8, (k / 125) as u8]));
    all.into_iter().all(|k| {
        let c = canonicalize_kappa(k);
        canonicalize_kappa(c) == c
            && c <= k
            && PERMS3
                .iter()
                .all(|&p| PERMS3.iter().all(|&q| canonicalize_kappa(relabel(permute_positions(k, p), q)) == c))
    })
}

/// Runs all property checks; `triples` random triples per fuzzed group.
pub fn verify_properties(triples: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new("properties");
    let groups: Vec<(FamilyLabel, PcPresentation)> = FUZZ_GROUPS
        .iter()
        .map(|s| {
            let l: FamilyLabel = s.parse()?;
            Ok((l, construct(&l)?))
        })
        .collect::<Result<_>>()?;
    let fuzz: Vec<_> = groups
        .par_iter()
        .enumerate()
        .map(|(k, (_, g))| fuzz_group_axioms(g, triples, seed.wrapping_add(k as u64)))
        .collect();
    for ((l, g), res) in groups.iter().zip(fuzz) {
        let detail = match &res {
            Ok(()) => format!("{triples} triples"),
            Err(e) => e.clone(),
        };
        r.push("group axioms", l, res.is_ok(), detail);
        r.push("quotient orders", l, quotient_orders_conserved(g)?, "all central series terms");
    }
    for (l, g) in groups.iter().filter(|(_, g)| g.log_order() <= 7) {
        r.push("transfer homomorphism", l, transfers_are_homomorphisms(g, 7)?, "all element pairs, four transfers");
    }
    r.push("kappa canonicalization", "all codes", kappa_canonicalization_is_idempotent(), "625 codes, 36 symmetries");
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_codes() {
        assert!(kappa_canonicalization_is_idempotent());
    }

    #[test]
    fn small_groups_pass() {
        let g = construct(&"M[e=2,i=1]".parse().unwrap()).unwrap();
        assert_eq!(fuzz_group_axioms(&g, 200, 1), Ok(()));
        assert!(transfers_are_homomorphisms(&g, 7).unwrap());
        assert!(quotient_orders_conserved(&g).unwrap());
    }
}
