//! Structural fingerprints and exhaustive isomorphism search for small
//! 3-groups.
//!
//! The search writes a pcgs of `G` as a straight-line program in a minimal
//! generating set. A tuple of images in `H` defines a homomorphism exactly
//! when the images of the pcgs satisfy the pc relations of `G`; it is an
//! isomorphism when the images also generate `H` and the orders agree.

use crate::artin::{artin_pattern, Kappa};
use crate::pc::{Exps, PcPresentation, Subgroup};
use crate::series::{
    abelian_invariants, abelian_type, centre, derived_subgroup, frattini_of,
    lower_central_series, lower_p_central_series,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Groups of order up to `3^ISO_CAP_LOG` are compared by exhaustive search.
pub const ISO_CAP_LOG: u32 = 7;
/// Element-order histograms are computed up to this log order.
pub const HISTOGRAM_CAP_LOG: u32 = 8;
/// Automorphism groups are computed for groups up to this log order.
pub const AUT_CAP_LOG: u32 = 9;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub log_order: u32,
    pub cl: u32,
    pub cl_p: u32,
    pub abelianization: Vec<u32>,
    pub centre: Vec<u32>,
    pub derived_log_order: u32,
    pub derived_abelianization: Vec<u32>,
    pub lower_central: Vec<u32>,
    pub lower_p_central: Vec<u32>,
    /// AQI with the first three positions sorted; absent for groups without
    /// the required commutator quotient.
    pub aqi: Option<[Vec<u32>; 4]>,
    pub kappa_canonical: Option<Kappa>,
    /// `(element order, count)`; absent above the histogram cap.
    pub order_histogram: Option<Vec<(u64, u64)>>,
}

impl Fingerprint {
    pub fn histogram_omitted(&self) -> bool {
        self.order_histogram.is_none()
    }
}

pub fn fingerprint(g: &PcPresentation) -> Fingerprint {
    let lcs = lower_central_series(g);
    let pcs = lower_p_central_series(g);
    let whole = g.whole_group();
    let derived = derived_subgroup(g);
    let pattern = artin_pattern(g).ok();
    let aqi = pattern.as_ref().map(|p| {
        let mut a = p.alpha.clone();
        a[..3].sort();
        a
    });
    let order_histogram = (g.log_order() <= HISTOGRAM_CAP_LOG).then(|| {
        let mut hist = BTreeMap::new();
        for e in g.elements(HISTOGRAM_CAP_LOG).expect("within cap") {
            *hist.entry(g.element_order(&e)).or_insert(0u64) += 1;
        }
        hist.into_iter().collect()
    });
    Fingerprint {
        log_order: g.log_order(),
        cl: lcs.length() as u32,
        cl_p: pcs.length() as u32,
        abelianization: abelian_invariants(g, &whole),
        centre: abelian_type(g, &centre(g)),
        derived_log_order: derived.log_order(),
        derived_abelianization: abelian_invariants(g, &derived),
        lower_central: lcs.log_orders(),
        lower_p_central: pcs.log_orders(),
        aqi,
        kappa_canonical: pattern.map(|p| p.kappa_canonical),
        order_histogram,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Gen(usize),
    Mul(usize, usize),
    Pow(usize, u64),
    Comm(usize, usize),
}

/// A pcgs of a group written in a minimal generating set, with the pc
/// relations of that pcgs.
#[derive(Clone, Debug)]
pub struct GeneratorProgram {
    /// minimal generating set (pc generators outside the Frattini subgroup)
    pub generators: Vec<Exps>,
    steps: Vec<Step>,
    /// step producing the pcgs element of each depth
    pcgs_steps: Vec<usize>,
    /// coordinates of `r_d^p`
    power_coords: Vec<Vec<u8>>,
    /// coordinates of `r_i^-1 r_j r_i`, indexed `[j][i]`, `i < j`
    conj_coords: Vec<Vec<Vec<u8>>>,
    generator_orders: Vec<u64>,
    /// coordinates of each pc generator of `G` in the program's pcgs
    gen_coords: Vec<Vec<u8>>,
}

fn inv_mod(a: u8, p: u8) -> u64 {
    (1..p).find(|&b| (a as u32 * b as u32) % p as u32 == 1).expect("unit") as u64
}

impl GeneratorProgram {
    pub fn new(g: &PcPresentation) -> Self {
        let frattini = frattini_of(g, &g.whole_group());
        let generators: Vec<Exps> =
            (0..g.len()).filter(|&d| !frattini.has_depth(d)).map(|d| g.gen(d)).collect();
        Self::with_generators(g, generators)
    }

    /// Program for a generating set given by the caller.
    pub fn with_generators(g: &PcPresentation, generators: Vec<Exps>) -> Self {
        let p = g.prime();
        let n = g.len();
        let mut steps: Vec<Step> = Vec::new();
        let mut values: Vec<Exps> = Vec::new();
        let push = |step: Step, val: Exps, steps: &mut Vec<Step>, values: &mut Vec<Exps>| {
            steps.push(step);
            values.push(val);
            steps.len() - 1
        };
        let mut slots: Vec<Option<usize>> = vec![None; n];
        let mut inserted: Vec<usize> = Vec::new();
        let mut queue: Vec<usize> = Vec::new();
        for (k, gen) in generators.iter().enumerate().rev() {
            let s = push(Step::Gen(k), gen.clone(), &mut steps, &mut values);
            queue.push(s);
        }
        while let Some(mut cur) = queue.pop() {
            loop {
                let val = values[cur].clone();
                let d = PcPresentation::depth(&val);
                if d == n {
                    break;
                }
                match slots[d] {
                    Some(t) => {
                        let k = (p - val[d]) as u64;
                        let tv = g.pow(&values[t], k);
                        let ts = push(Step::Pow(t, k), tv.clone(), &mut steps, &mut values);
                        let nv = g.mul(&tv, &val);
                        cur = push(Step::Mul(ts, cur), nv, &mut steps, &mut values);
                    }
                    None => {
                        if val[d] != 1 {
                            let k = inv_mod(val[d], p);
                            let nv = g.pow(&val, k);
                            cur = push(Step::Pow(cur, k), nv, &mut steps, &mut values);
                        }
                        let pv = g.pth_power(&values[cur]);
                        let ps = push(Step::Pow(cur, p as u64), pv, &mut steps, &mut values);
                        queue.push(ps);
                        for &t in &inserted {
                            let cv = g.comm(&values[cur], &values[t]);
                            let cs = push(Step::Comm(cur, t), cv, &mut steps, &mut values);
                            queue.push(cs);
                        }
                        slots[d] = Some(cur);
                        inserted.push(cur);
                        break;
                    }
                }
            }
        }
        let pcgs_steps: Vec<usize> = slots.iter().map(|s| s.expect("generators generate the group")).collect();
        let pcgs: Vec<Exps> = pcgs_steps.iter().map(|&s| values[s].clone()).collect();
        let sub = g.subgroup_from_induced(pcgs.clone());
        let power_coords = pcgs.iter().map(|r| sub.coordinates(g, &g.pth_power(r)).unwrap()).collect();
        let conj_coords = (0..n)
            .map(|j| (0..j).map(|i| sub.coordinates(g, &g.conj(&pcgs[j], &pcgs[i])).unwrap()).collect())
            .collect();
        // keep only the steps the pcgs depends on
        let mut needed = vec![false; steps.len()];
        for &s in &pcgs_steps {
            needed[s] = true;
        }
        for s in (0..steps.len()).rev() {
            if needed[s] {
                match steps[s] {
                    Step::Gen(_) => {}
                    Step::Pow(a, _) => needed[a] = true,
                    Step::Mul(a, b) | Step::Comm(a, b) => {
                        needed[a] = true;
                        needed[b] = true;
                    }
                }
            }
        }
        let mut remap = vec![usize::MAX; steps.len()];
        let mut kept = Vec::new();
        for s in 0..steps.len() {
            if needed[s] {
                remap[s] = kept.len();
                kept.push(match steps[s] {
                    Step::Gen(k) => Step::Gen(k),
                    Step::Pow(a, k) => Step::Pow(remap[a], k),
                    Step::Mul(a, b) => Step::Mul(remap[a], remap[b]),
                    Step::Comm(a, b) => Step::Comm(remap[a], remap[b]),
                });
            }
        }
        let pcgs_steps = pcgs_steps.iter().map(|&s| remap[s]).collect();
        let generator_orders = generators.iter().map(|x| g.element_order(x)).collect();
        let gen_coords = (0..n).map(|d| sub.coordinates(g, &g.gen(d)).unwrap()).collect();
        GeneratorProgram { generators, steps: kept, pcgs_steps, power_coords, conj_coords, generator_orders, gen_coords }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Images of the pcgs of `G` under the map sending the generators to `images`.
    pub fn pcgs_images(&self, h: &PcPresentation, images: &[Exps]) -> Vec<Exps> {
        let mut vals: Vec<Exps> = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            let v = match *step {
                Step::Gen(k) => images[k].clone(),
                Step::Mul(a, b) => h.mul(&vals[a], &vals[b]),
                Step::Pow(a, k) => h.pow(&vals[a], k),
                Step::Comm(a, b) => h.comm(&vals[a], &vals[b]),
            };
            vals.push(v);
        }
        self.pcgs_steps.iter().map(|&s| vals[s].clone()).collect()
    }

    fn word(h: &PcPresentation, ims: &[Exps], coords: &[u8]) -> Exps {
        let mut acc = h.identity();
        for (r, &c) in ims.iter().zip(coords) {
            if c != 0 {
                acc = h.mul(&acc, &h.pow(r, c as u64));
            }
        }
        acc
    }

    /// Images of the pc generators of `G` under the homomorphism defined by
    /// `images` (which must extend to one).
    pub fn generator_images(&self, h: &PcPresentation, images: &[Exps]) -> Vec<Exps> {
        let ims = self.pcgs_images(h, images);
        self.gen_coords.iter().map(|c| Self::word(h, &ims, c)).collect()
    }

    /// Whether the generators extend to a homomorphism into `h`; returns the
    /// pcgs images when they do.
    pub fn extends_to_homomorphism(&self, h: &PcPresentation, images: &[Exps]) -> Option<Vec<Exps>> {
        let ims = self.pcgs_images(h, images);
        for (d, coords) in self.power_coords.iter().enumerate() {
            if h.pth_power(&ims[d]) != Self::word(h, &ims, coords) {
                return None;
            }
        }
        for (j, row) in self.conj_coords.iter().enumerate() {
            for (i, coords) in row.iter().enumerate() {
                if h.conj(&ims[j], &ims[i]) != Self::word(h, &ims, coords) {
                    return None;
                }
            }
        }
        Some(ims)
    }
}

fn generates(h: &PcPresentation, frattini_h: &Subgroup, elts: &[Exps]) -> bool {
    let mut seeds = frattini_h.gens().to_vec();
    seeds.extend(elts.iter().cloned());
    h.closure(&seeds).log_order() == h.log_order()
}

/// Conjugacy classes of `h`: class index of every element (by
/// `index_of`), one representative per class, and the class sizes.
fn conjugacy_classes(h: &PcPresentation) -> (Vec<usize>, Vec<Exps>, Vec<u64>) {
    let all = h.elements(ISO_CAP_LOG + 3).expect("class enumeration within cap");
    let mut class = vec![usize::MAX; all.len()];
    // pc generators outside the Frattini subgroup generate the group
    let frattini = frattini_of(h, &h.whole_group());
    let gens: Vec<Exps> = (0..h.len()).filter(|&i| !frattini.has_depth(i)).map(|i| h.gen(i)).collect();
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for start in 0..all.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(all[start].clone());
        class[start] = id;
        let mut size = 1;
        let mut stack = vec![all[start].clone()];
        while let Some(a) = stack.pop() {
            for t in &gens {
                let c = h.conj(&a, t);
                let idx = h.index_of(&c);
                if class[idx] == usize::MAX {
                    class[idx] = id;
                    size += 1;
                    stack.push(c);
                }
            }
        }
        sizes.push(size);
    }
    (class, reps, sizes)
}

/// Representatives of the conjugacy classes of `h` (enumerates all elements).
pub fn conjugacy_class_reps(h: &PcPresentation) -> Vec<Exps> {
    conjugacy_classes(h).1
}

/// Characteristic subgroups and Frattini data used to label elements by
/// automorphism invariants.
struct Profile {
    chars: Vec<Subgroup>,
    frattini_quotient: (PcPresentation, crate::pc::Projection),
    /// abelian invariants of each maximal subgroup, keyed by the normalized
    /// Frattini-quotient direction; only for 2-generated groups
    maximal_types: Vec<(Vec<u8>, Vec<u32>)>,
}

fn normalize(v: &[u8], p: u8) -> Vec<u8> {
    match v.iter().find(|&&a| a != 0) {
        None => v.to_vec(),
        Some(&a) => {
            let inv = inv_mod(a, p);
            v.iter().map(|&x| ((x as u64 * inv) % p as u64) as u8).collect()
        }
    }
}

impl Profile {
    fn new(g: &PcPresentation) -> Self {
        let mut chars = vec![g.trivial_subgroup(), centre(g), derived_subgroup(g)];
        let lcs = lower_central_series(g);
        chars.extend(lcs.terms[1..].iter().cloned());
        let pcs = lower_p_central_series(g);
        chars.extend(pcs.terms[1..].iter().cloned());
        let frattini = frattini_of(g, &g.whole_group());
        let fq = g.quotient(&frattini).expect("Frattini subgroup is normal");
        let mut maximal_types = Vec::new();
        if fq.0.len() == 2 {
            let p = g.prime();
            for dir in (0..p).map(|b| vec![1, b]).chain(std::iter::once(vec![0, 1])) {
                let lift = fq.1.lift(g, &dir);
                let mut seeds = frattini.gens().to_vec();
                seeds.push(lift);
                let m = g.closure(&seeds);
                maximal_types.push((dir, abelian_invariants(g, &m)));
            }
        }
        Profile { chars, frattini_quotient: fq, maximal_types }
    }

    fn frattini_image(&self, g: &PcPresentation, h: &[u8]) -> Vec<u8> {
        self.frattini_quotient.1.apply(g, h)
    }

    fn signature(&self, g: &PcPresentation, h: &[u8], class_size: u64) -> Vec<u64> {
        let mut sig = vec![class_size];
        for n in &self.chars {
            let mut x = h.to_vec();
            let mut k = 0;
            while !n.contains(g, &x) {
                x = g.pth_power(&x);
                k += 1;
            }
            sig.push(k);
        }
        let dir = normalize(&self.frattini_image(g, h), g.prime());
        if let Some((_, inv)) = self.maximal_types.iter().find(|(d, _)| *d == dir) {
            sig.extend(inv.iter().map(|&a| a as u64 + 100));
        }
        sig
    }
}

fn independent(vectors: &[Vec<u8>], p: u8) -> bool {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        for r in &rows {
            let pc = r.iter().position(|&a| a != 0).unwrap();
            let a = v[pc] as u32;
            if a != 0 {
                for (x, &y) in v.iter_mut().zip(r) {
                    *x = ((*x as u32 + (p as u32 - a) * y as u32) % p as u32) as u8;
                }
            }
        }
        match v.iter().position(|&a| a != 0) {
            None => return false,
            Some(pc) => {
                let inv = inv_mod(v[pc], p);
                for x in v.iter_mut() {
                    *x = ((*x as u64 * inv) % p as u64) as u8;
                }
                rows.push(v);
            }
        }
    }
    true
}

/// Per-group data for the isomorphism search: element signatures, class
/// representatives and a generator program. Build once and reuse when a
/// group takes part in many comparisons.
pub struct IsoData {
    group: PcPresentation,
    prog: GeneratorProgram,
    profile: Profile,
    elements: Vec<Exps>,
    reps: Vec<Exps>,
    signatures: Vec<Vec<u64>>,
    /// sorted signature multiset
    census: Vec<(Vec<u64>, usize)>,
}

impl IsoData {
    pub fn new(g: &PcPresentation) -> Self {
        let profile = Profile::new(g);
        let (class, reps, sizes) = conjugacy_classes(g);
        let elements = g.elements(ISO_CAP_LOG + 3).expect("within cap");
        // signatures are class functions
        let class_sigs: Vec<Vec<u64>> =
            reps.par_iter().zip(&sizes).map(|(x, &size)| profile.signature(g, x, size)).collect();
        let signatures: Vec<Vec<u64>> = class.iter().map(|&c| class_sigs[c].clone()).collect();
        let mut counts = BTreeMap::new();
        for s in &signatures {
            *counts.entry(s.clone()).or_insert(0usize) += 1;
        }
        // generators with the rarest signatures keep the candidate lists short
        let rank = profile.frattini_quotient.0.len();
        let mut order: Vec<usize> = (0..elements.len())
            .filter(|&k| profile.frattini_image(g, &elements[k]).iter().any(|&a| a != 0))
            .collect();
        order.sort_by_key(|&k| (counts[&signatures[k]], k));
        let mut gens: Vec<Exps> = Vec::new();
        let mut images: Vec<Vec<u8>> = Vec::new();
        for k in order {
            if gens.len() == rank {
                break;
            }
            let mut trial = images.clone();
            trial.push(profile.frattini_image(g, &elements[k]));
            if independent(&trial, g.prime()) {
                images = trial;
                gens.push(elements[k].clone());
            }
        }
        IsoData {
            group: g.clone(),
            prog: GeneratorProgram::with_generators(g, gens),
            profile,
            elements,
            reps,
            signatures,
            census: counts.into_iter().collect(),
        }
    }

    pub fn group(&self) -> &PcPresentation {
        &self.group
    }

    fn sig(&self, x: &[u8]) -> &Vec<u64> {
        &self.signatures[self.group.index_of(x)]
    }
}

/// Exhaustive search for an isomorphism `g -> h`; both groups must be
/// within the search cap.
pub fn find_isomorphism(g: &PcPresentation, h: &PcPresentation) -> Option<Vec<Exps>> {
    if g.log_order() != h.log_order() {
        return None;
    }
    find_isomorphism_with(&IsoData::new(g), &IsoData::new(h))
}

/// Candidate images in `dst` for the minimal generators of `src`.
struct Candidates<'a> {
    targets: Vec<&'a Vec<u64>>,
    lists: Vec<Vec<&'a Exps>>,
}

fn candidates<'a>(src: &'a IsoData, dst: &'a IsoData) -> Candidates<'a> {
    let targets: Vec<&Vec<u64>> = src.prog.generators.iter().map(|x| src.sig(x)).collect();
    let lists = targets
        .iter()
        .map(|t| dst.elements.iter().zip(&dst.signatures).filter(|(_, s)| s == t).map(|(e, _)| e).collect())
        .collect();
    Candidates { targets, lists }
}

/// Isomorphisms `src -> dst` whose first generator image is `chosen[0]`,
/// as tuples of generator images; stops after the first when `all` is false.
fn completions(src: &IsoData, dst: &IsoData, cands: &Candidates, chosen: &mut Vec<Exps>, all: bool, out: &mut Vec<Vec<Exps>>) {
    let prog = &src.prog;
    let h = &dst.group;
    let k = chosen.len();
    if k == prog.rank() {
        if prog.extends_to_homomorphism(h, chosen).is_some() {
            out.push(chosen.clone());
        }
        return;
    }
    for &cand in &cands.lists[k] {
        if k == 1 {
            // commutator and product of the first two generators
            let (g, a0, a1) = (&src.group, &prog.generators[0], &prog.generators[1]);
            if dst.sig(&h.comm(&chosen[0], cand)) != src.sig(&g.comm(a0, a1))
                || dst.sig(&h.mul(&chosen[0], cand)) != src.sig(&g.mul(a0, a1))
            {
                continue;
            }
        }
        chosen.push(cand.clone());
        let vecs: Vec<Vec<u8>> = chosen.iter().map(|x| dst.profile.frattini_image(h, x)).collect();
        if independent(&vecs, h.prime()) {
            completions(src, dst, cands, chosen, all, out);
            if !all && !out.is_empty() {
                return;
            }
        }
        chosen.pop();
    }
}

/// Images in `dst` of the minimal generators of `src` under an isomorphism,
/// if one exists.
pub fn find_isomorphism_with(src: &IsoData, dst: &IsoData) -> Option<Vec<Exps>> {
    let (g, h) = (&src.group, &dst.group);
    if g.log_order() != h.log_order() || src.census != dst.census || src.prog.rank() != dst.prog.rank() {
        return None;
    }
    if src.prog.rank() == 0 {
        return Some(vec![]);
    }
    let cands = candidates(src, dst);
    let first: Vec<&Exps> = dst.reps.iter().filter(|e| dst.sig(e) == cands.targets[0]).collect();
    first.par_iter().find_map_any(|a| {
        let mut out = Vec::new();
        completions(src, dst, &cands, &mut vec![(*a).clone()], false, &mut out);
        out.pop()
    })
}

/// An automorphism given by the images of the pc generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub images: Vec<Exps>,
}

impl Automorphism {
    pub fn apply(&self, g: &PcPresentation, x: &[u8]) -> Exps {
        let mut acc = g.identity();
        for (im, &c) in self.images.iter().zip(x) {
            if c != 0 {
                acc = g.mul(&acc, &g.pow(im, c as u64));
            }
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub generators: Vec<Automorphism>,
    pub order: u128,
}

/// Closes `orbit` (with membership index `seen`) under `gens`.
fn close_orbit(
    g: &PcPresentation,
    gens: &[Automorphism],
    orbit: &mut Vec<Exps>,
    seen: &mut std::collections::HashSet<usize>,
) {
    let mut k = 0;
    while k < orbit.len() {
        let x = orbit[k].clone();
        for a in gens {
            let y = a.apply(g, &x);
            if seen.insert(g.index_of(&y)) {
                orbit.push(y);
            }
        }
        k += 1;
    }
}

/// Generators and order of `Aut(G)`, by exhaustive search over generator
/// images; the group must be within the search cap.
pub fn automorphism_group(g: &PcPresentation) -> crate::error::Result<AutomorphismGroup> {
    if g.log_order() > AUT_CAP_LOG {
        return Err(crate::error::Error::CapExceeded {
            what: "automorphism group".into(),
            log_order: g.log_order(),
            cap: AUT_CAP_LOG,
        });
    }
    let data = IsoData::new(g);
    let prog = &data.prog;
    if prog.rank() == 0 {
        return Ok(AutomorphismGroup { generators: vec![], order: 1 });
    }
    let to_aut = |tuple: &[Exps]| Automorphism { images: prog.generator_images(g, tuple) };
    let cands = candidates(&data, &data);
    let g0 = prog.generators[0].clone();

    // stabilizer of the first generator: its elements are determined by the
    // remaining images, and the subgroup generated so far is tracked by the
    // orbit of that image tuple
    let mut stab_tuples = Vec::new();
    completions(&data, &data, &cands, &mut vec![g0.clone()], true, &mut stab_tuples);
    let stab_order = stab_tuples.len() as u128;
    let mut generators: Vec<Automorphism> = Vec::new();
    let mut tuple_orbit: std::collections::HashSet<Vec<Exps>> = std::collections::HashSet::new();
    tuple_orbit.insert(prog.generators[1..].to_vec());
    let mut frontier: Vec<Vec<Exps>> = vec![prog.generators[1..].to_vec()];
    for t in &stab_tuples {
        if tuple_orbit.contains(&t[1..]) {
            continue;
        }
        generators.push(to_aut(t));
        // re-close the orbit of the tuple under the enlarged generator set
        let mut k = 0;
        let mut all: Vec<Vec<Exps>> = tuple_orbit.iter().cloned().collect();
        all.sort();
        frontier.clear();
        frontier.extend(all);
        while k < frontier.len() {
            let x = frontier[k].clone();
            for a in &generators {
                let y: Vec<Exps> = x.iter().map(|e| a.apply(g, e)).collect();
                if tuple_orbit.insert(y.clone()) {
                    frontier.push(y);
                }
            }
            k += 1;
        }
    }

    // orbit of the first generator, extended by transversal automorphisms
    let mut orbit = vec![g0.clone()];
    let mut seen = std::collections::HashSet::from([g.index_of(&g0)]);
    close_orbit(g, &generators, &mut orbit, &mut seen);
    let mut failed: std::collections::HashSet<usize> = std::collections::HashSet::new();
    for a in data.elements.iter().zip(&data.signatures).filter(|(_, s)| *s == cands.targets[0]).map(|(e, _)| e) {
        let idx = g.index_of(a);
        if seen.contains(&idx) || failed.contains(&idx) {
            continue;
        }
        let mut out = Vec::new();
        completions(&data, &data, &cands, &mut vec![a.clone()], false, &mut out);
        match out.pop() {
            Some(t) => {
                generators.push(to_aut(&t));
                let start: Vec<Exps> = orbit.clone();
                orbit = start;
                close_orbit(g, &generators, &mut orbit, &mut seen);
            }
            None => {
                let mut other = vec![a.clone()];
                let mut other_seen = std::collections::HashSet::from([idx]);
                close_orbit(g, &generators, &mut other, &mut other_seen);
                failed.extend(other_seen);
            }
        }
    }
    Ok(AutomorphismGroup { generators, order: orbit.len() as u128 * stab_order })
}

pub fn are_isomorphic(g: &PcPresentation, h: &PcPresentation) -> Verdict {
    are_isomorphic_capped(g, h, ISO_CAP_LOG)
}

/// Fingerprint test, then exhaustive search when the order is at most
/// `3^cap_log`.
pub fn are_isomorphic_capped(g: &PcPresentation, h: &PcPresentation, cap_log: u32) -> Verdict {
    if g.log_order() != h.log_order() {
        return Verdict::No;
    }
    if fingerprint(g) != fingerprint(h) {
        return Verdict::No;
    }
    if g.log_order() > cap_log {
        return Verdict::Unknown;
    }
    if find_isomorphism(g, h).is_some() {
        Verdict::Yes
    } else {
        Verdict::No
    }
}

/// Whether some automorphism inverts every element modulo `G'`.
pub fn has_gi_automorphism(g: &PcPresentation) -> Verdict {
    has_gi_automorphism_capped(g, ISO_CAP_LOG)
}

pub fn has_gi_automorphism_capped(g: &PcPresentation, cap_log: u32) -> Verdict {
    if g.log_order() > cap_log {
        return Verdict::Unknown;
    }
    let prog = GeneratorProgram::new(g);
    let derived = derived_subgroup(g);
    let frattini = frattini_of(g, &g.whole_group());
    let d_elts = derived.elements(g, cap_log).expect("within cap");
    let cosets: Vec<Vec<Exps>> = prog
        .generators
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let inv = g.inverse(a);
            d_elts
                .iter()
                .map(|d| g.mul(&inv, d))
                .filter(|c| g.element_order(c) == prog.generator_orders[k])
                .collect()
        })
        .collect();
    if prog.rank() == 0 {
        return Verdict::Yes;
    }
    fn search(
        g: &PcPresentation,
        prog: &GeneratorProgram,
        frattini: &Subgroup,
        cosets: &[Vec<Exps>],
        chosen: &mut Vec<Exps>,
    ) -> bool {
        if chosen.len() == cosets.len() {
            return generates(g, frattini, chosen) && prog.extends_to_homomorphism(g, chosen).is_some();
        }
        for c in &cosets[chosen.len()] {
            chosen.push(c.clone());
            if search(g, prog, frattini, cosets, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let found = cosets[0].par_iter().any(|a| {
        let mut chosen = vec![a.clone()];
        search(g, &prog, &frattini, &cosets, &mut chosen)
    });
    if found {
        Verdict::Yes
    } else {
        Verdict::No
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{construct, degenerate_root_presentation, FamilyKind, FamilyLabel};
    use crate::pc::spec::{build_presentation, GenSpec, PresentationSpec};

    fn abelian(orders: &[u32]) -> PcPresentation {
        let gens = orders
            .iter()
            .enumerate()
            .map(|(k, &o)| GenSpec { name: format!("a{k}"), rel_order: o })
            .collect();
        build_presentation(&PresentationSpec { prime: 3, gens, powers: Default::default(), conjugates: Default::default() })
            .unwrap()
    }

    #[test]
    fn cyclic_fingerprint() {
        let f = fingerprint(&abelian(&[3]));
        assert_eq!((f.log_order, f.cl), (1, 1));
    }

    #[test]
    fn program_recovers_pcgs() {
        let g = construct(&FamilyLabel::cf_mainline(2, 2)).unwrap();
        let prog = GeneratorProgram::new(&g);
        assert_eq!(prog.rank(), 2);
        let ims = prog.extends_to_homomorphism(&g, &prog.generators).expect("identity map");
        assert_eq!(ims.len(), g.len());
    }

    #[test]
    fn reflexive_and_distinguishing() {
        let m = construct(&FamilyLabel::cf_mainline(2, 1)).unwrap();
        assert_eq!(are_isomorphic(&m, &m), Verdict::Yes);
        let b = construct(&FamilyLabel::class2(2)).unwrap();
        assert_eq!(are_isomorphic(&m, &b), Verdict::No);
        let m3 = construct(&FamilyLabel::cf_mainline(3, 1)).unwrap();
        let mm3 = construct(&FamilyLabel::bcf_mainline(2, 1)).unwrap();
        assert_ne!(fingerprint(&m3).kappa_canonical, fingerprint(&mm3).kappa_canonical);
        assert_eq!(are_isomorphic(&m3, &mm3), Verdict::No);
    }

    #[test]
    fn degenerate_root_matches_construction() {
        let a = construct(&FamilyLabel::cf_mainline(3, 1)).unwrap();
        let b = degenerate_root_presentation(FamilyKind::CfMainline, 3).unwrap();
        assert_eq!(are_isomorphic(&a, &b), Verdict::Yes);
        assert_eq!(are_isomorphic(&b, &a), Verdict::Yes);
    }

    #[test]
    fn detects_non_isomorphic_abelian_groups() {
        assert_eq!(are_isomorphic(&abelian(&[9, 3]), &abelian(&[3, 3, 3])), Verdict::No);
        assert_eq!(are_isomorphic(&abelian(&[9, 3]), &abelian(&[3, 9])), Verdict::Yes);
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(automorphism_group(&abelian(&[3])).unwrap().order, 2);
        assert_eq!(automorphism_group(&abelian(&[3, 3])).unwrap().order, 48);
        assert_eq!(automorphism_group(&abelian(&[9, 3])).unwrap().order, 108);
        let g = construct(&FamilyLabel::cf_mainline(2, 1)).unwrap();
        let aut = automorphism_group(&g).unwrap();
        let prog = GeneratorProgram::new(&g);
        for a in &aut.generators {
            let ims: Vec<Exps> = prog.generators.iter().map(|x| a.apply(&g, x)).collect();
            assert!(prog.extends_to_homomorphism(&g, &ims).is_some());
        }
    }

    #[test]
    fn generator_inversion() {
        assert_eq!(has_gi_automorphism(&abelian(&[9, 3])), Verdict::Yes);
        assert_eq!(has_gi_automorphism(&construct(&FamilyLabel::cf_mainline(2, 1)).unwrap()), Verdict::Yes);
        let b3: FamilyLabel = "V[e=2,i=2,kind=b3,n=1]".parse().unwrap();
        assert_eq!(has_gi_automorphism(&construct(&b3).unwrap()), Verdict::No);
    }
}
