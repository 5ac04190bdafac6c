//! Maximal subgroups, Artin transfers and the punctured transfer kernel
//! type of a two-generated 3-group with commutator quotient `C(3^e) x C3`.
//!
//! Coordinates are intrinsic: `x` is any element outside the maximal
//! subgroup with bicyclic commutator quotient, `y` an element of that
//! subgroup outside the Frattini subgroup with `y^3` in `G'`, and
//! `w = x^(3^(e-1))`. The maximal subgroups are `H1 = <x>Phi`,
//! `H2 = <xy>Phi`, `H3 = <xy^2>Phi`, `H4 = <y>Phi`.

use crate::error::{Error, Result};
use crate::pc::{Exps, PcPresentation, Subgroup};
use crate::series::{abelian_invariants, abelian_invariants_mod, derived_subgroup, derived_subgroup_of, frattini_of};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug)]
pub struct MaximalSubgroupFrame {
    pub e: u32,
    pub x: Exps,
    pub y: Exps,
    pub w: Exps,
    pub derived: Subgroup,
    pub frattini: Subgroup,
    /// `H1, H2, H3, H4`
    pub maximal: Vec<Subgroup>,
    /// transversal `{1, t, t^2}` of each maximal subgroup
    pub coset_reps: Vec<[Exps; 3]>,
}

/// Builds the frame of the four maximal subgroups.
pub fn maximal_subgroups(g: &PcPresentation) -> Result<MaximalSubgroupFrame> {
    let whole = g.whole_group();
    let frattini = frattini_of(g, &whole);
    let rank = g.len() - frattini.log_order() as usize;
    if rank != 2 {
        return Err(Error::NotTwoGenerated(rank));
    }
    let derived = derived_subgroup(g);
    let ab = abelian_invariants_mod(g, &whole, &derived);
    if ab.len() != 2 || ab[1] != 1 || ab[0] < 2 {
        return Err(Error::WrongAbelianization(format!("{ab:?}")));
    }
    let e = ab[0];
    let top: Vec<usize> = (0..g.len()).filter(|&d| !frattini.has_depth(d)).collect();
    let (a, b) = (g.gen(top[0]), g.gen(top[1]));
    let lines = [a.clone(), b.clone(), g.mul(&a, &b), g.mul(&a, &g.mul(&b, &b))];
    let with_frattini = |t: &Exps| {
        let mut seeds = frattini.gens().to_vec();
        seeds.push(t.clone());
        g.closure(&seeds)
    };
    let mut bicyclic_line = None;
    for t in &lines {
        let h = with_frattini(t);
        if abelian_invariants_mod(g, &h, &derived).len() == 2 {
            if bicyclic_line.is_some() {
                return Err(Error::WrongAbelianization("more than one bicyclic maximal subgroup".into()));
            }
            bicyclic_line = Some((t.clone(), h));
        }
    }
    let (y0, h4) = bicyclic_line.ok_or_else(|| Error::WrongAbelianization("no bicyclic maximal subgroup".into()))?;
    let x = if h4.contains(g, &a) { b } else { a };
    // adjust y by a power of x^3 so that y^3 lies in G'
    let x3 = g.pth_power(&x);
    let mut y = None;
    let mut cand = y0;
    for _ in 0..3u64.pow(e - 1) {
        if derived.contains(g, &g.pth_power(&cand)) {
            y = Some(cand);
            break;
        }
        cand = g.mul(&cand, &x3);
    }
    let y = y.ok_or_else(|| Error::WrongAbelianization("no element y with y^3 in G'".into()))?;
    let w = g.pow(&x, 3u64.pow(e - 1));
    let xy = g.mul(&x, &y);
    let xyy = g.mul(&xy, &y);
    let maximal = vec![with_frattini(&x), with_frattini(&xy), with_frattini(&xyy), with_frattini(&y)];
    let reps = |t: &Exps| [g.identity(), t.clone(), g.mul(t, t)];
    let coset_reps = vec![reps(&y), reps(&y), reps(&y), reps(&x)];
    Ok(MaximalSubgroupFrame { e, x, y, w, derived, frattini, maximal, coset_reps })
}

/// Transfer `G/G' -> H/H'` tabulated on the cosets of `G'`.
#[derive(Clone, Debug)]
pub struct TransferTable {
    /// coset representatives `x^a y^b`, indexed by `a * 3 + b`
    pub cosets: Vec<Exps>,
    /// transfer value of each coset, as canonical representative modulo `H'`
    pub values: Vec<Exps>,
    pub target_derived: Subgroup,
}

impl MaximalSubgroupFrame {
    pub fn quotient_order(&self) -> usize {
        3usize.pow(self.e + 1)
    }

    /// Coset representatives `x^a y^b` of `G'`.
    pub fn derived_cosets(&self, g: &PcPresentation) -> Vec<Exps> {
        let mut out = Vec::with_capacity(self.quotient_order());
        let mut xa = g.identity();
        for _ in 0..3u64.pow(self.e) {
            let mut cur = xa.clone();
            for _ in 0..3 {
                out.push(cur.clone());
                cur = g.mul(&cur, &self.y);
            }
            xa = g.mul(&xa, &self.x);
        }
        out
    }

    /// Index of the coset of `G'` containing `h`.
    pub fn coset_index(&self, g: &PcPresentation, lookup: &HashMap<Exps, usize>, h: &[u8]) -> usize {
        lookup[&self.derived.sift(g, h)]
    }

    pub fn coset_lookup(&self, g: &PcPresentation, cosets: &[Exps]) -> HashMap<Exps, usize> {
        cosets.iter().enumerate().map(|(k, c)| (self.derived.sift(g, c), k)).collect()
    }
}

/// Transfer value `prod_k h_k` where `g r_k = r_sigma(k) h_k`, reduced modulo `H'`.
pub fn transfer_value(
    g: &PcPresentation,
    h: &Subgroup,
    h_derived: &Subgroup,
    reps: &[Exps; 3],
    elt: &[u8],
) -> Exps {
    let inv_reps: Vec<Exps> = reps.iter().map(|r| g.inverse(r)).collect();
    let mut acc = g.identity();
    for r in reps {
        let gr = g.mul(elt, r);
        let m = (0..3)
            .find(|&m| h.contains(g, &g.mul(&inv_reps[m], &gr)))
            .expect("transversal covers every coset");
        let hk = g.mul(&inv_reps[m], &gr);
        acc = g.mul(&acc, &hk);
    }
    h_derived.sift(g, &acc)
}

pub fn artin_transfer(g: &PcPresentation, frame: &MaximalSubgroupFrame, i: usize) -> TransferTable {
    artin_transfer_with(g, frame, i, &frame.coset_reps[i])
}

/// Transfer computed with an arbitrary transversal of `H_i`.
pub fn artin_transfer_with(g: &PcPresentation, frame: &MaximalSubgroupFrame, i: usize, reps: &[Exps; 3]) -> TransferTable {
    let h = &frame.maximal[i];
    let hd = derived_subgroup_of(g, h);
    let cosets = frame.derived_cosets(g);
    let values = cosets.iter().map(|c| transfer_value(g, h, &hd, reps, c)).collect();
    TransferTable { cosets, values, target_derived: hd }
}

impl TransferTable {
    /// Checks `T(ab) = T(a) T(b)` on all pairs of cosets.
    pub fn is_homomorphism(&self, g: &PcPresentation, frame: &MaximalSubgroupFrame) -> bool {
        let lookup = frame.coset_lookup(g, &self.cosets);
        for (s, a) in self.cosets.iter().enumerate() {
            for (t, b) in self.cosets.iter().enumerate() {
                let ab = frame.coset_index(g, &lookup, &g.mul(a, b));
                let prod = self.target_derived.sift(g, &g.mul(&self.values[s], &self.values[t]));
                if prod != self.values[ab] {
                    return false;
                }
            }
        }
        true
    }

    /// Preimage in `G` of the kernel.
    pub fn kernel(&self, g: &PcPresentation, frame: &MaximalSubgroupFrame) -> Subgroup {
        let mut seeds = frame.derived.gens().to_vec();
        for (c, v) in self.cosets.iter().zip(&self.values) {
            if PcPresentation::is_identity(v) {
                seeds.push(c.clone());
            }
        }
        g.closure(&seeds)
    }
}

/// Codes a kernel: `<w, y>G'` is 0, `<w^(j-1) y>G'` is `j`, `<w>G'` is 4.
pub fn kernel_code(g: &PcPresentation, frame: &MaximalSubgroupFrame, kernel: &Subgroup) -> Result<u8> {
    let with_derived = |extra: &[Exps]| {
        let mut seeds = frame.derived.gens().to_vec();
        seeds.extend(extra.iter().cloned());
        g.closure(&seeds)
    };
    let w = &frame.w;
    let y = &frame.y;
    let mut candidates = vec![(0u8, with_derived(&[w.clone(), y.clone()]))];
    let mut wy = y.clone();
    for j in 1..=3u8 {
        candidates.push((j, with_derived(&[wy.clone()])));
        wy = g.mul(w, &wy);
    }
    candidates.push((4, with_derived(&[w.clone()])));
    for (code, cand) in &candidates {
        if cand.same_as(g, kernel) {
            return Ok(*code);
        }
    }
    Err(Error::UncodedKernel(format!(
        "kernel of order 3^{} over G'",
        kernel.log_order() - frame.derived.log_order()
    )))
}

pub fn transfer_kernel_code(g: &PcPresentation, frame: &MaximalSubgroupFrame, i: usize) -> Result<u8> {
    let table = artin_transfer(g, frame, i);
    kernel_code(g, frame, &table.kernel(g, frame))
}

/// Four kernel codes; the fourth position is the punctured one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Kappa(pub [u8; 4]);

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.0;
        write!(f, "{}{}{};{}", k[0], k[1], k[2], k[3])
    }
}

impl FromStr for Kappa {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let digits: Vec<u8> = s
            .chars()
            .filter(|c| *c != ';')
            .map(|c| c.to_digit(10).filter(|&d| d <= 4).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::BadParameters(format!("kappa {s:?}")))?;
        if digits.len() != 4 || s.find(';') != Some(3) {
            return Err(Error::BadParameters(format!("kappa {s:?} is not of the form abc;d")));
        }
        Ok(Kappa([digits[0], digits[1], digits[2], digits[3]]))
    }
}

impl Serialize for Kappa {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Kappa {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Applies a relabeling of the values 1, 2, 3 (0 and 4 stay fixed).
pub fn relabel(kappa: Kappa, perm: [usize; 3]) -> Kappa {
    let map = |v: u8| if (1..=3).contains(&v) { perm[v as usize - 1] as u8 + 1 } else { v };
    Kappa(kappa.0.map(map))
}

/// Permutes the first three positions.
pub fn permute_positions(kappa: Kappa, perm: [usize; 3]) -> Kappa {
    let k = kappa.0;
    Kappa([k[perm[0]], k[perm[1]], k[perm[2]], k[3]])
}

/// Lexicographically least form under position permutations and value
/// relabelings.
pub fn canonicalize_kappa(kappa: Kappa) -> Kappa {
    let mut best = kappa;
    for pos in PERMS3 {
        for val in PERMS3 {
            let cand = relabel(permute_positions(kappa, pos), val);
            if cand < best {
                best = cand;
            }
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NamedType {
    A1,
    B3,
    B16,
    D10Lower,
    B2,
    C4,
    D5,
    D10Upper,
    Unknown,
}

impl NamedType {
    pub fn as_str(self) -> &'static str {
        match self {
            NamedType::A1 => "a.1",
            NamedType::B3 => "b.3",
            NamedType::B16 => "b.16",
            NamedType::D10Lower => "d.10",
            NamedType::B2 => "B.2",
            NamedType::C4 => "C.4",
            NamedType::D5 => "D.5",
            NamedType::D10Upper => "D.10",
            NamedType::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<NamedType> {
        TYPE_TABLE.iter().map(|(t, _)| *t).chain([NamedType::Unknown]).find(|t| t.as_str() == s)
    }
}

impl fmt::Display for NamedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Named types with one listed representative each; figure variants such as
/// `(011;3)` reduce to the same canonical form.
const TYPE_TABLE: [(NamedType, [u8; 4]); 8] = [
    (NamedType::A1, [0, 0, 0, 0]),
    (NamedType::B3, [0, 0, 1, 0]),
    (NamedType::B16, [0, 0, 4, 0]),
    (NamedType::D10Lower, [1, 1, 0, 2]),
    (NamedType::B2, [1, 1, 1, 2]),
    (NamedType::C4, [1, 1, 2, 2]),
    (NamedType::D5, [1, 1, 3, 2]),
    (NamedType::D10Upper, [1, 1, 4, 2]),
];

pub fn classify_kappa(kappa: Kappa) -> NamedType {
    let canon = canonicalize_kappa(kappa);
    TYPE_TABLE
        .iter()
        .find(|(_, k)| canonicalize_kappa(Kappa(*k)) == canon)
        .map(|(t, _)| *t)
        .unwrap_or(NamedType::Unknown)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtinPattern {
    pub alpha: [Vec<u32>; 4],
    pub kappa: Kappa,
    pub rho: [usize; 4],
    pub kappa_canonical: Kappa,
    pub named_type: NamedType,
}

impl ArtinPattern {
    /// Ranks with the first three positions sorted, e.g. `[2, 2, 3, 3]`.
    pub fn sorted_rho(&self) -> [usize; 4] {
        let mut r = self.rho;
        r[..3].sort_unstable();
        r
    }
}

pub fn classify_type(pattern: &ArtinPattern) -> NamedType {
    classify_kappa(pattern.kappa)
}

pub fn artin_pattern(g: &PcPresentation) -> Result<ArtinPattern> {
    let frame = maximal_subgroups(g)?;
    artin_pattern_in(g, &frame)
}

pub fn artin_pattern_in(g: &PcPresentation, frame: &MaximalSubgroupFrame) -> Result<ArtinPattern> {
    let mut alpha: [Vec<u32>; 4] = Default::default();
    let mut kappa = [0u8; 4];
    for i in 0..4 {
        alpha[i] = abelian_invariants(g, &frame.maximal[i]);
        kappa[i] = transfer_kernel_code(g, frame, i)?;
    }
    let rho = [0, 1, 2, 3].map(|i| alpha[i].len());
    let kappa = Kappa(kappa);
    let kappa_canonical = canonicalize_kappa(kappa);
    Ok(ArtinPattern { alpha, kappa, rho, kappa_canonical, named_type: classify_kappa(kappa) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{construct, FamilyLabel};

    #[test]
    fn figure_variants_share_names() {
        let name = |s: &str| classify_kappa(s.parse().unwrap());
        assert_eq!(name("011;3"), NamedType::D10Lower);
        assert_eq!(name("111;3"), NamedType::B2);
        assert_eq!(name("311;3"), NamedType::C4);
        assert_eq!(name("211;3"), NamedType::D5);
        assert_eq!(name("411;3"), NamedType::D10Upper);
        assert_eq!(name("123;4"), NamedType::Unknown);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for s in ["110;2", "004;0", "213;1", "444;4"] {
            let k: Kappa = s.parse().unwrap();
            let c = canonicalize_kappa(k);
            assert_eq!(canonicalize_kappa(c), c);
        }
    }

    #[test]
    fn root_patterns() {
        let g = construct(&FamilyLabel::cf_mainline(2, 1)).unwrap();
        let p = artin_pattern(&g).unwrap();
        assert_eq!(p.kappa_canonical.to_string(), "000;0");
        assert_eq!(p.sorted_rho(), [2, 2, 3, 3]);
        let frame = maximal_subgroups(&g).unwrap();
        assert_eq!(abelian_invariants_mod(&g, &frame.maximal[3], &frame.derived), vec![1, 1]);
        let g = construct(&FamilyLabel::bcf_mainline(2, 1)).unwrap();
        assert_eq!(artin_pattern(&g).unwrap().named_type, NamedType::D10Lower);
    }

    #[test]
    fn transfer_is_independent_of_transversal() {
        let g = construct(&FamilyLabel::bcf_mainline(2, 1)).unwrap();
        let frame = maximal_subgroups(&g).unwrap();
        for i in 0..4 {
            let t = &frame.coset_reps[i][1];
            let h = frame.maximal[i].gens()[0].clone();
            let t2 = g.mul(t, &h);
            let other = [g.identity(), t2.clone(), g.mul(&t2, &t2)];
            let a = artin_transfer(&g, &frame, i);
            let b = artin_transfer_with(&g, &frame, i, &other);
            assert_eq!(a.values, b.values);
            assert!(a.is_homomorphism(&g, &frame));
        }
    }
}
