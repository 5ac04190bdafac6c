//! p-covering group, nucleus and immediate descendants, plus parent and
//! p-parent quotients.

use crate::error::{Error, Result};
use crate::iso::{automorphism_group, fingerprint, Automorphism, Fingerprint, AUT_CAP_LOG};
use std::collections::HashMap;
use crate::pc::{Definition, Exps, PcPresentation, Subgroup};
use crate::series::{abelian_invariants, lower_central_series, lower_p_central_series};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Default order cap (log_3) for groups handed to the cover computation.
pub const COVER_CAP_LOG: u32 = 9;

fn inv_mod(a: u8, p: u8) -> u8 {
    (1..p).find(|&b| (a as u32 * b as u32) % p as u32 == 1).expect("unit")
}

/// Row-reduced basis over GF(p), kept in echelon form by pivot column.
#[derive(Clone, Debug)]
struct Echelon {
    p: u8,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(p: u8) -> Self {
        Echelon { p, rows: vec![], pivots: vec![] }
    }

    fn reduce(&self, v: &mut [u8]) {
        let p = self.p as u32;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let a = v[pc];
            if a != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = ((*x as u32 + (p - a as u32) * r as u32) % p) as u8;
                }
            }
        }
    }

    /// Adds `v` if independent; returns whether it was added.
    fn insert(&mut self, v: &[u8]) -> bool {
        let p = self.p as u32;
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&a| a != 0) else {
            return false;
        };
        let inv = inv_mod(v[pc], self.p) as u32;
        for x in v.iter_mut() {
            *x = ((*x as u32 * inv) % p) as u8;
        }
        for row in self.rows.iter_mut() {
            let a = row[pc];
            if a != 0 {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = ((*x as u32 + (p - a as u32) * r as u32) % p) as u8;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Coordinates of `P_k / P_{k+1}` for every layer of a central series with
/// elementary abelian factors.
struct Layers {
    /// induced pcgs of `P_k` that contains the induced pcgs of `P_{k+1}`
    compatible: Vec<Subgroup>,
    /// positions in `compatible[k]` of the elements outside `P_{k+1}`
    extra: Vec<Vec<usize>>,
}

impl Layers {
    fn new(g: &PcPresentation, terms: &[Subgroup]) -> Self {
        let mut compatible = Vec::new();
        let mut extra = Vec::new();
        for k in 0..terms.len() - 1 {
            let (upper, lower) = (&terms[k], &terms[k + 1]);
            let mut gens = lower.gens().to_vec();
            gens.extend(upper.gens().iter().filter(|x| !lower.has_depth(PcPresentation::depth(x))).cloned());
            let sub = g.subgroup_from_induced(gens);
            let pos = sub
                .gens()
                .iter()
                .enumerate()
                .filter(|(_, x)| !lower.has_depth(PcPresentation::depth(x)))
                .map(|(t, _)| t)
                .collect();
            compatible.push(sub);
            extra.push(pos);
        }
        Layers { compatible, extra }
    }

    fn dim(&self, k: usize) -> usize {
        self.extra[k].len()
    }

    fn coords(&self, g: &PcPresentation, k: usize, h: &[u8]) -> Vec<u8> {
        let c = self.compatible[k].coordinates(g, h).expect("element lies in the layer's term");
        self.extra[k].iter().map(|&t| c[t]).collect()
    }
}

/// Rewrites `g` on a pcgs refining the lower exponent-p central series,
/// where every generator beyond the first layer is defined as a p-th power
/// or as a commutator with a first-layer generator.
pub fn standardize(g: &PcPresentation) -> Result<PcPresentation> {
    let p = g.prime();
    let series = lower_p_central_series(g);
    let terms = &series.terms;
    let layers = Layers::new(g, terms);
    let c = terms.len() - 1;
    let mut elts: Vec<Exps> = Vec::new();
    let mut defs: Vec<Option<Definition>> = Vec::new();
    let mut by_layer: Vec<Vec<usize>> = Vec::new();
    if c > 0 {
        let first: Vec<usize> = layers.extra[0].clone();
        let mut idx = Vec::new();
        for t in first {
            idx.push(elts.len());
            elts.push(layers.compatible[0].gens()[t].clone());
            defs.push(None);
        }
        by_layer.push(idx);
    }
    for k in 1..c {
        let mut ech = Echelon::new(p);
        let mut idx = Vec::new();
        let prev = by_layer[k - 1].clone();
        let mut candidates: Vec<(Exps, Definition)> = Vec::new();
        for &a in &prev {
            candidates.push((g.pth_power(&elts[a]), Definition::Power(a)));
            for &b in &by_layer[0] {
                if b < a {
                    candidates.push((g.comm(&elts[a], &elts[b]), Definition::Conjugate(a, b)));
                }
            }
        }
        for (h, def) in candidates {
            if ech.rank() == layers.dim(k) {
                break;
            }
            if ech.insert(&layers.coords(g, k, &h)) {
                idx.push(elts.len());
                elts.push(h);
                defs.push(Some(def));
            }
        }
        if ech.rank() != layers.dim(k) {
            return Err(Error::InconsistentPresentation(format!("layer {k} not spanned by definitions")));
        }
        by_layer.push(idx);
    }
    // inverse of each layer's basis matrix, for rewriting
    let mut inverses: Vec<Vec<Vec<u8>>> = Vec::new();
    for (k, idx) in by_layer.iter().enumerate() {
        let m = idx.len();
        let rows: Vec<Vec<u8>> = idx.iter().map(|&r| layers.coords(g, k, &elts[r])).collect();
        inverses.push(invert_matrix(&rows, p).expect("layer basis is invertible"));
        debug_assert_eq!(rows.len(), m);
    }
    let n = elts.len();
    let rewrite = |h: &[u8]| -> Exps {
        let mut out = vec![0u8; n];
        let mut rest = h.to_vec();
        for (k, idx) in by_layer.iter().enumerate() {
            let v = layers.coords(g, k, &rest);
            let a = vec_mat(&v, &inverses[k], p);
            let mut prefix = g.identity();
            for (t, &r) in idx.iter().enumerate() {
                out[r] = a[t];
                if a[t] != 0 {
                    prefix = g.mul(&prefix, &g.pow(&elts[r], a[t] as u64));
                }
            }
            rest = g.mul(&g.inverse(&prefix), &rest);
        }
        debug_assert!(PcPresentation::is_identity(&rest));
        out
    };
    let powers: Vec<Exps> = elts.iter().map(|r| rewrite(&g.pth_power(r))).collect();
    let conjugates: Vec<Vec<Exps>> =
        (0..n).map(|j| (0..j).map(|i| rewrite(&g.conj(&elts[j], &elts[i]))).collect()).collect();
    let names = elts
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let unit = e.iter().filter(|&&a| a != 0).count() == 1 && e.iter().any(|&a| a == 1);
            if unit {
                g.names()[PcPresentation::depth(e)].clone()
            } else {
                format!("g{}", k + 1)
            }
        })
        .collect();
    PcPresentation::from_parts(p, names, powers, conjugates, defs)
}

fn vec_mat(v: &[u8], m: &[Vec<u8>], p: u8) -> Vec<u8> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| (v.iter().zip(m).map(|(&a, row)| a as u32 * row[j] as u32).sum::<u32>() % p as u32) as u8)
        .collect()
}

fn invert_matrix(rows: &[Vec<u8>], p: u8) -> Option<Vec<Vec<u8>>> {
    let m = rows.len();
    let pu = p as u32;
    let mut a: Vec<Vec<u8>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..m).map(|j| (i == j) as u8));
            row
        })
        .collect();
    for col in 0..m {
        let piv = (col..m).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = inv_mod(a[col][col], p) as u32;
        for x in a[col].iter_mut() {
            *x = ((*x as u32 * inv) % pu) as u8;
        }
        for r in 0..m {
            if r != col && a[r][col] != 0 {
                let f = a[r][col] as u32;
                let pivot_row = a[col].clone();
                for (x, &y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = ((*x as u32 + (pu - f) * y as u32) % pu) as u8;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[m..].to_vec()).collect())
}

#[derive(Clone, Debug)]
pub struct PCoverResult {
    /// standardized presentation of the input group
    pub group: PcPresentation,
    pub cover: PcPresentation,
    /// tails subgroup (the last generators of `cover`)
    pub multiplicator: Subgroup,
    pub nucleus: Subgroup,
    pub nuclear_rank: u32,
    pub multiplicator_rank: u32,
    /// p-class of the input group
    pub p_class: u32,
    /// relation of `group` that each multiplicator generator is the tail of
    pub tail_relations: Vec<Definition>,
}

impl PCoverResult {
    /// Projection `cover -> group`: the first generators are the group's.
    pub fn project(&self, e: &[u8]) -> Exps {
        e[..self.group.len()].to_vec()
    }

    /// Coordinates of an element of the multiplicator.
    fn tail_coords(&self, e: &[u8]) -> Vec<u8> {
        e[self.group.len()..].to_vec()
    }

    /// Matrix of the action on the multiplicator (rows are the images of the
    /// tail generators) of a lift of an automorphism of `group` to `cover`.
    pub fn lift_automorphism(&self, aut: &Automorphism) -> Vec<Vec<u8>> {
        let (g, cov) = (&self.group, &self.cover);
        let n = g.len();
        let pad = |e: &[u8]| {
            let mut v = e.to_vec();
            v.resize(cov.len(), 0);
            v
        };
        let mut img: Vec<Exps> = Vec::with_capacity(n);
        for k in 0..n {
            let v = match g.definitions()[k] {
                None => pad(&aut.images[k]),
                Some(Definition::Power(i)) => cov.pth_power(&img[i]),
                Some(Definition::Conjugate(j, i)) => cov.comm(&img[j], &img[i]),
            };
            img.push(v);
        }
        let eval = |w: &[u8]| {
            let mut acc = cov.identity();
            for (k, &c) in w.iter().enumerate() {
                if c != 0 {
                    acc = cov.mul(&acc, &cov.pow(&img[k], c as u64));
                }
            }
            acc
        };
        self.tail_relations
            .iter()
            .map(|rel| {
                let (lhs, w) = match *rel {
                    Definition::Power(i) => (cov.pth_power(&img[i]), g.power_rhs(i)),
                    Definition::Conjugate(j, i) => (cov.conj(&img[j], &img[i]), g.conjugate_rhs(j, i)),
                };
                let t = cov.mul(&cov.inverse(&eval(w)), &lhs);
                debug_assert!(t[..n].iter().all(|&a| a == 0), "tail image outside the multiplicator");
                t[n..].to_vec()
            })
            .collect()
    }

    fn tail_element(&self, v: &[u8]) -> Exps {
        let mut e = vec![0u8; self.group.len()];
        e.extend_from_slice(v);
        e
    }
}

pub fn p_cover(g: &PcPresentation) -> Result<PCoverResult> {
    p_cover_capped(g, COVER_CAP_LOG)
}

pub fn p_cover_capped(g: &PcPresentation, cap_log: u32) -> Result<PCoverResult> {
    if g.log_order() > cap_log {
        return Err(Error::CapExceeded { what: "p-cover input".into(), log_order: g.log_order(), cap: cap_log });
    }
    let group = standardize(g)?;
    let p = group.prime();
    let n = group.len();
    let mut power_defined = vec![false; n];
    let mut conj_defined = vec![vec![false; n]; n];
    for d in group.definitions().iter().flatten() {
        match *d {
            Definition::Power(i) => power_defined[i] = true,
            Definition::Conjugate(j, i) => conj_defined[j][i] = true,
        }
    }
    // one tail per non-defining relation
    let mut tail_of_power = vec![None; n];
    let mut tail_of_conj = vec![vec![None; n]; n];
    let mut m = 0;
    for i in 0..n {
        if !power_defined[i] {
            tail_of_power[i] = Some(m);
            m += 1;
        }
    }
    for j in 0..n {
        for i in 0..j {
            if !conj_defined[j][i] {
                tail_of_conj[j][i] = Some(m);
                m += 1;
            }
        }
    }
    let total = n + m;
    let extend = |e: &[u8], tail: Option<usize>| {
        let mut v = e.to_vec();
        v.resize(total, 0);
        if let Some(t) = tail {
            v[n + t] = 1;
        }
        v
    };
    let mut names: Vec<String> = group.names().to_vec();
    names.extend((0..m).map(|t| format!("t{}", t + 1)));
    let mut powers: Vec<Exps> = (0..n).map(|i| extend(group.power_rhs(i), tail_of_power[i])).collect();
    powers.extend((0..m).map(|_| vec![0u8; total]));
    let mut conjugates: Vec<Vec<Exps>> =
        (0..n).map(|j| (0..j).map(|i| extend(group.conjugate_rhs(j, i), tail_of_conj[j][i])).collect()).collect();
    for j in n..total {
        conjugates.push(
            (0..j)
                .map(|_| {
                    let mut v = vec![0u8; total];
                    v[j] = 1;
                    v
                })
                .collect(),
        );
    }
    let mut defs: Vec<Option<Definition>> = group.definitions().to_vec();
    defs.extend((0..m).map(|_| None));
    let tails = PcPresentation::from_parts(p, names, powers, conjugates, defs)?;

    // overlaps give linear relations among the tails
    let mut relations = Echelon::new(p);
    let mut mismatch = None;
    tails.for_each_overlap(|test, left, right| {
        if left[..n] != right[..n] {
            mismatch = Some(test());
            return false;
        }
        let diff: Vec<u8> = (n..total).map(|k| (right[k] + p - left[k]) % p).collect();
        relations.insert(&diff);
        true
    });
    if let Some(test) = mismatch {
        return Err(Error::InconsistentPresentation(format!("input fails the {test}")));
    }
    let rel_elts: Vec<Exps> = relations
        .rows
        .iter()
        .map(|r| {
            let mut e = vec![0u8; n];
            e.extend_from_slice(r);
            e
        })
        .collect();
    let rel_sub = tails.closure(&rel_elts);
    let (cover, proj) = tails.quotient(&rel_sub)?;
    let mut relation_of = vec![None; m];
    for i in 0..n {
        if let Some(t) = tail_of_power[i] {
            relation_of[t] = Some(Definition::Power(i));
        }
        for j in i + 1..n {
            if let Some(t) = tail_of_conj[j][i] {
                relation_of[t] = Some(Definition::Conjugate(j, i));
            }
        }
    }
    let tail_relations: Vec<Definition> =
        proj.kept()[n..].iter().map(|&k| relation_of[k - n].expect("every tail has a relation")).collect();
    debug_assert!(cover.check_consistency().passed());
    let tail_gens: Vec<Exps> = (n..cover.len()).map(|k| cover.gen(k)).collect();
    let multiplicator = cover.closure(&tail_gens);
    let p_class = lower_p_central_series(&group).length() as u32;
    let nucleus = lower_p_central_series(&cover).term(p_class as usize).clone();
    Ok(PCoverResult {
        nuclear_rank: nucleus.log_order(),
        multiplicator_rank: multiplicator.log_order(),
        group,
        cover,
        multiplicator,
        nucleus,
        p_class,
        tail_relations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DedupMode {
    /// exact: orbits of the automorphism group of the parent on allowable
    /// subgroups (falls back to fingerprints above the automorphism cap)
    Iso,
    /// fingerprints only
    Fingerprint,
}

#[derive(Clone, Copy, Debug)]
pub struct DescendantOptions {
    pub dedup: DedupMode,
    /// largest log order of a descendant
    pub cap_log: u32,
}

impl Default for DescendantOptions {
    fn default() -> Self {
        DescendantOptions { dedup: DedupMode::Iso, cap_log: COVER_CAP_LOG + 1 }
    }
}

#[derive(Clone, Debug)]
pub struct Descendant {
    pub group: PcPresentation,
    pub fingerprint: Fingerprint,
    /// whether isomorphism classes were separated exactly (automorphism
    /// orbits) rather than by fingerprint
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct DescendantSet {
    pub step_size: u32,
    pub members: Vec<Descendant>,
    pub dedup_mode: DedupMode,
    /// number of allowable subgroups before deduplication
    pub candidates: usize,
}

/// All `s`-dimensional quotients of `F_p^len` given by surjective maps in
/// reduced row echelon form.
fn rref_matrices(p: u8, s: usize, len: usize) -> Vec<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    if s > len {
        return out;
    }
    // choose pivot columns
    fn pivots_rec(start: usize, s: usize, len: usize, cur: &mut Vec<usize>, all: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            all.push(cur.clone());
            return;
        }
        for c in start..len {
            cur.push(c);
            pivots_rec(c + 1, s, len, cur, all);
            cur.pop();
        }
    }
    let mut pivot_sets = Vec::new();
    pivots_rec(0, s, len, &mut vec![], &mut pivot_sets);
    for piv in pivot_sets {
        // free entries: row r, column c > piv[r], c not a pivot
        let free: Vec<(usize, usize)> = (0..s)
            .flat_map(|r| (piv[r] + 1..len).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let count = (p as usize).pow(free.len() as u32);
        for mut code in 0..count {
            let mut mat = vec![vec![0u8; len]; s];
            for (r, &c) in piv.iter().enumerate() {
                mat[r][c] = 1;
            }
            for &(r, c) in &free {
                mat[r][c] = (code % p as usize) as u8;
                code /= p as usize;
            }
            out.push(mat);
        }
    }
    out
}

/// Bases (in multiplicator coordinates) of the allowable subgroups of
/// codimension `s`: subgroups `U` with `U + N = M`.
fn allowable_subgroups(cov: &PCoverResult, s: usize) -> Vec<Vec<Vec<u8>>> {
    let p = cov.cover.prime();
    let m = cov.multiplicator_rank as usize;
    let mut nucleus = Echelon::new(p);
    for x in cov.nucleus.gens() {
        nucleus.insert(&cov.tail_coords(x));
    }
    let nu = nucleus.rank();
    let nbasis = nucleus.rows.clone();
    let complement: Vec<Vec<u8>> = (0..m)
        .filter(|c| !nucleus.pivots.contains(c))
        .map(|c| {
            let mut v = vec![0u8; m];
            v[c] = 1;
            v
        })
        .collect();
    let combine = |coeffs: &[u8]| -> Vec<u8> {
        let mut v = vec![0u8; m];
        for (a, row) in coeffs.iter().zip(&nbasis) {
            for (x, &r) in v.iter_mut().zip(row) {
                *x = ((*x as u32 + *a as u32 * r as u32) % p as u32) as u8;
            }
        }
        v
    };
    let mut out = Vec::new();
    for lambda in rref_matrices(p, s, nu) {
        // kernel of lambda inside N, and lifts of the unit vectors of F_p^s
        let pivots: Vec<usize> = lambda.iter().map(|r| r.iter().position(|&a| a != 0).unwrap()).collect();
        let mut kernel = Vec::new();
        for fcol in (0..nu).filter(|c| !pivots.contains(c)) {
            let mut coeffs = vec![0u8; nu];
            coeffs[fcol] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                coeffs[pc] = (p - lambda[r][fcol]) % p;
            }
            kernel.push(combine(&coeffs));
        }
        let lifts: Vec<Vec<u8>> = pivots
            .iter()
            .map(|&pc| {
                let mut coeffs = vec![0u8; nu];
                coeffs[pc] = 1;
                combine(&coeffs)
            })
            .collect();
        let graphs = (p as usize).pow((complement.len() * s) as u32);
        for mut code in 0..graphs {
            let mut basis = kernel.clone();
            for c in &complement {
                let mut v = c.clone();
                for lift in &lifts {
                    let a = (code % p as usize) as u32;
                    code /= p as usize;
                    for (x, &l) in v.iter_mut().zip(lift) {
                        *x = ((*x as u32 + a * l as u32) % p as u32) as u8;
                    }
                }
                basis.push(v);
            }
            out.push(basis);
        }
    }
    out
}

/// Number of allowable subgroups of codimension `s`.
pub fn allowable_count(cov: &PCoverResult, s: u32) -> usize {
    allowable_subgroups(cov, s as usize).len()
}

pub fn immediate_descendants(g: &PcPresentation, s: u32) -> Result<DescendantSet> {
    immediate_descendants_with(g, s, &DescendantOptions::default())
}

pub fn immediate_descendants_with(g: &PcPresentation, s: u32, opts: &DescendantOptions) -> Result<DescendantSet> {
    let cov = p_cover(g)?;
    descendants_of_cover(&cov, s, opts)
}

pub fn descendants_of_cover(cov: &PCoverResult, s: u32, opts: &DescendantOptions) -> Result<DescendantSet> {
    if s == 0 || s > cov.nuclear_rank {
        return Err(Error::StepTooLarge { step: s, nuclear_rank: cov.nuclear_rank });
    }
    let log_order = cov.group.log_order() + s;
    if log_order > opts.cap_log {
        return Err(Error::CapExceeded { what: "descendant".into(), log_order, cap: opts.cap_log });
    }
    let subgroups = allowable_subgroups(cov, s as usize);
    let candidates = subgroups.len();
    let p = cov.cover.prime();
    let quotient_by = |basis: &[Vec<u8>]| {
        let elts: Vec<Exps> = basis.iter().map(|v| cov.tail_element(v)).collect();
        let u = cov.cover.closure(&elts);
        cov.cover.quotient(&u).expect("central subgroups are normal").0
    };
    let aut = match opts.dedup {
        DedupMode::Iso if cov.group.log_order() <= AUT_CAP_LOG => Some(automorphism_group(&cov.group)?),
        _ => None,
    };
    let members: Vec<Descendant> = match aut {
        Some(aut) => {
            let mats: Vec<Vec<Vec<u8>>> = aut.generators.iter().map(|a| cov.lift_automorphism(a)).collect();
            let canon: Vec<Vec<Vec<u8>>> = subgroups.iter().map(|b| canonical_basis(b, p)).collect();
            let index: HashMap<&Vec<Vec<u8>>, usize> = canon.iter().enumerate().map(|(k, c)| (c, k)).collect();
            let mut orbit_of = vec![usize::MAX; canon.len()];
            let mut reps: Vec<usize> = Vec::new();
            for start in 0..canon.len() {
                if orbit_of[start] != usize::MAX {
                    continue;
                }
                let id = reps.len();
                let mut best = start;
                orbit_of[start] = id;
                let mut stack = vec![start];
                while let Some(k) = stack.pop() {
                    for m in &mats {
                        let image: Vec<Vec<u8>> = canon[k].iter().map(|v| vec_mat(v, m, p)).collect();
                        let c = canonical_basis(&image, p);
                        let j = *index.get(&c).expect("automorphisms permute allowable subgroups");
                        if orbit_of[j] == usize::MAX {
                            orbit_of[j] = id;
                            if canon[j] < canon[best] {
                                best = j;
                            }
                            stack.push(j);
                        }
                    }
                }
                reps.push(best);
            }
            reps.sort_by(|&a, &b| canon[a].cmp(&canon[b]));
            reps.par_iter()
                .map(|&k| {
                    let group = quotient_by(&canon[k]);
                    let fingerprint = fingerprint(&group);
                    Descendant { group, fingerprint, exact: true }
                })
                .collect()
        }
        None => {
            let mut canon: Vec<Vec<Vec<u8>>> = subgroups.iter().map(|b| canonical_basis(b, p)).collect();
            canon.sort();
            let groups: Vec<(PcPresentation, Fingerprint)> = canon
                .par_iter()
                .map(|b| {
                    let q = quotient_by(b);
                    let f = fingerprint(&q);
                    (q, f)
                })
                .collect();
            let mut out: Vec<Descendant> = Vec::new();
            for (group, fingerprint) in groups {
                if !out.iter().any(|d| d.fingerprint == fingerprint) {
                    out.push(Descendant { group, fingerprint, exact: false });
                }
            }
            out
        }
    };
    let dedup_mode = if members.iter().all(|d| d.exact) { DedupMode::Iso } else { DedupMode::Fingerprint };
    Ok(DescendantSet { step_size: s, members, dedup_mode, candidates })
}

/// Reduced row echelon basis with rows ordered by pivot.
fn canonical_basis(rows: &[Vec<u8>], p: u8) -> Vec<Vec<u8>> {
    let mut ech = Echelon::new(p);
    for r in rows {
        ech.insert(r);
    }
    let mut out: Vec<(usize, Vec<u8>)> = ech.pivots.into_iter().zip(ech.rows).collect();
    out.sort();
    out.into_iter().map(|(_, r)| r).collect()
}

/// `G / gamma_c(G)` for `G` of class `c`; the trivial group is its own parent.
pub fn parent(g: &PcPresentation) -> PcPresentation {
    let lcs = lower_central_series(g);
    let c = lcs.length();
    if c == 0 {
        return g.clone();
    }
    g.quotient(&lcs.terms[c - 1]).expect("series terms are normal").0
}

/// `G / P_{c-1}(G)` for `G` of p-class `c`.
pub fn p_parent(g: &PcPresentation) -> PcPresentation {
    let pcs = lower_p_central_series(g);
    let c = pcs.length();
    if c == 0 {
        return g.clone();
    }
    g.quotient(&pcs.terms[c - 1]).expect("series terms are normal").0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PropagationKind {
    Endo,
    Exo,
}

impl std::fmt::Display for PropagationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PropagationKind::Endo => "endo",
            PropagationKind::Exo => "exo",
        })
    }
}

/// Endo when child and parent have the same commutator quotient.
pub fn propagation_kind(child: &PcPresentation, parent: &PcPresentation) -> PropagationKind {
    if abelian_invariants(child, &child.whole_group()) == abelian_invariants(parent, &parent.whole_group()) {
        PropagationKind::Endo
    } else {
        PropagationKind::Exo
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParentLink {
    pub step: u32,
    pub kind: PropagationKind,
}

/// p-parent of `g` with the step size and kind of the link.
pub fn p_parent_link(g: &PcPresentation) -> (PcPresentation, ParentLink) {
    let pp = p_parent(g);
    let link = ParentLink { step: g.log_order() - pp.log_order(), kind: propagation_kind(g, &pp) };
    (pp, link)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{construct, FamilyLabel};
    use crate::iso::are_isomorphic;
    use crate::pc::spec::{build_presentation, GenSpec, PresentationSpec};

    fn cyclic3() -> PcPresentation {
        build_presentation(&PresentationSpec {
            prime: 3,
            gens: vec![GenSpec { name: "a".into(), rel_order: 3 }],
            powers: Default::default(),
            conjugates: Default::default(),
        })
        .unwrap()
    }

    #[test]
    fn standardized_presentations_are_consistent() {
        for l in [FamilyLabel::cf_mainline(3, 1), FamilyLabel::bcf_mainline(2, 2), FamilyLabel::class2(3)] {
            let g = construct(&l).unwrap();
            let s = standardize(&g).unwrap();
            assert!(s.check_consistency().passed(), "{l}");
            assert!(s.has_valid_definitions(), "{l}");
            assert_eq!(are_isomorphic(&g, &s), crate::iso::Verdict::Yes, "{l}");
        }
    }

    #[test]
    fn cover_of_cyclic_group() {
        let cov = p_cover(&cyclic3()).unwrap();
        assert_eq!(cov.multiplicator_rank, 1);
        assert_eq!(cov.cover.log_order(), 2);
        let d = immediate_descendants(&cyclic3(), 1).unwrap();
        assert_eq!(d.members.len(), 1);
        assert_eq!(d.members[0].fingerprint.abelianization, vec![2]);
    }

    #[test]
    fn cover_quotient_is_the_group() {
        let g = construct(&FamilyLabel::cf_mainline(2, 1)).unwrap();
        let cov = p_cover(&g).unwrap();
        assert!(cov.cover.check_consistency().passed());
        let (q, _) = cov.cover.quotient(&cov.multiplicator).unwrap();
        assert_eq!(are_isomorphic(&q, &g), crate::iso::Verdict::Yes);
        assert!(cov.nucleus.is_subgroup_of(&cov.cover, &cov.multiplicator));
    }

    #[test]
    fn nuclear_ranks_on_mainline() {
        assert_eq!(p_cover(&construct(&FamilyLabel::cf_mainline(3, 1)).unwrap()).unwrap().nuclear_rank, 2);
        assert_eq!(p_cover(&construct(&FamilyLabel::cf_mainline(3, 2)).unwrap()).unwrap().nuclear_rank, 1);
        assert_eq!(p_cover(&construct(&FamilyLabel::cf_mainline(2, 1)).unwrap()).unwrap().nuclear_rank, 1);
    }

    #[test]
    fn parents_of_class2_chain() {
        let b3 = construct(&FamilyLabel::class2(3)).unwrap();
        let m = construct(&FamilyLabel::cf_mainline(3, 1)).unwrap();
        assert_eq!(are_isomorphic(&parent(&m), &b3), crate::iso::Verdict::Yes);
        let (pp, link) = p_parent_link(&construct(&FamilyLabel::cf_mainline(4, 1)).unwrap());
        assert_eq!(link, ParentLink { step: 1, kind: PropagationKind::Exo });
        assert_eq!(are_isomorphic(&pp, &m), crate::iso::Verdict::Yes);
    }

    #[test]
    fn bifurcation_counts_at_the_first_shock_wave_vertex() {
        let g = construct(&FamilyLabel::cf_mainline(3, 1)).unwrap();
        let cov = p_cover(&g).unwrap();
        let opts = DescendantOptions::default();
        let one = descendants_of_cover(&cov, 1, &opts).unwrap();
        let two = descendants_of_cover(&cov, 2, &opts).unwrap();
        assert_eq!((one.members.len(), two.members.len()), (9, 10));
        assert!(one.members.iter().chain(&two.members).all(|d| d.exact));
        for d in one.members.iter().chain(&two.members) {
            assert_eq!(are_isomorphic(&p_parent(&d.group), &g), crate::iso::Verdict::Yes);
        }
        assert!(matches!(descendants_of_cover(&cov, 3, &opts), Err(Error::StepTooLarge { .. })));
    }

    #[test]
    fn rref_counts_are_gaussian_binomials() {
        assert_eq!(rref_matrices(3, 1, 3).len(), 13);
        assert_eq!(rref_matrices(3, 2, 4).len(), 130);
    }
}
