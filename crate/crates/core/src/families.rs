//! Parametrized presentations of the vertices of the two coclass trees and
//! of the class-2 chain.
//!
//! All groups are metabelian. The pc generators are
//! `x, y, x_3, x_9, ..., ` (the chain of 3-power powers of `x`) followed by
//! the generators of the abelian derived subgroup: `s2, ..., sc`, and for the
//! bicyclic kinds also `w = x^(3^e)`, placed right after `s2`. For the
//! cyclic kinds the last power of `x` is `w = x^(3^(e-1))` itself.
//! Conjugation by `x` and `y` on the derived subgroup is written down as a
//! module action and the relations of `x`-powers with `y` follow from
//! `x^y = x s2^-1`.

use crate::error::{Error, Result};
use crate::pc::spec::{build_presentation, GenSpec, PresentationSpec};
use crate::pc::{Definition, Exps, PcPresentation};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    CfMainline,
    CfB16,
    CfA1Twig,
    CfA1Bicyclic,
    CfB3,
    CfA1Cyclic,
    BcfMainline,
    BcfD10,
    BcfB2,
    BcfC4,
    BcfD5,
    Class2B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tree {
    Cf,
    Bcf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CentreShape {
    Cyclic,
    Bicyclic,
    Other,
}

impl fmt::Display for CentreShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CentreShape::Cyclic => "cyclic",
            CentreShape::Bicyclic => "bicyclic",
            CentreShape::Other => "other",
        })
    }
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 12] = [
        FamilyKind::CfMainline,
        FamilyKind::CfB16,
        FamilyKind::CfA1Twig,
        FamilyKind::CfA1Bicyclic,
        FamilyKind::CfB3,
        FamilyKind::CfA1Cyclic,
        FamilyKind::BcfMainline,
        FamilyKind::BcfD10,
        FamilyKind::BcfB2,
        FamilyKind::BcfC4,
        FamilyKind::BcfD5,
        FamilyKind::Class2B,
    ];

    pub fn tree(self) -> Option<Tree> {
        use FamilyKind::*;
        match self {
            CfMainline | CfB16 | CfA1Twig | CfA1Bicyclic | CfB3 | CfA1Cyclic => Some(Tree::Cf),
            BcfMainline | BcfD10 | BcfB2 | BcfC4 | BcfD5 => Some(Tree::Bcf),
            Class2B => None,
        }
    }

    pub fn is_mainline(self) -> bool {
        matches!(self, FamilyKind::CfMainline | FamilyKind::BcfMainline)
    }

    pub fn has_exponent(self) -> bool {
        use FamilyKind::*;
        matches!(self, CfA1Bicyclic | CfB3 | CfA1Cyclic | BcfD10 | BcfB2 | BcfC4 | BcfD5)
    }

    /// Named type the presentation is declared to have.
    pub fn declared_type(self) -> &'static str {
        use FamilyKind::*;
        match self {
            CfMainline | CfA1Twig | CfA1Bicyclic | CfA1Cyclic | Class2B => "a.1",
            CfB16 => "b.16",
            CfB3 => "b.3",
            BcfMainline => "d.10",
            BcfD10 => "D.10",
            BcfB2 => "B.2",
            BcfC4 => "C.4",
            BcfD5 => "D.5",
        }
    }

    /// Centre shape annotated next to the offside presentations.
    pub fn declared_centre(self) -> Option<CentreShape> {
        use FamilyKind::*;
        match self {
            CfB16 | CfA1Twig | CfA1Bicyclic => Some(CentreShape::Bicyclic),
            CfB3 | CfA1Cyclic => Some(CentreShape::Cyclic),
            _ => None,
        }
    }

    pub fn short_name(self) -> &'static str {
        use FamilyKind::*;
        match self {
            CfMainline => "mainline",
            CfB16 => "b16",
            CfA1Twig => "twig",
            CfA1Bicyclic => "bicyclic",
            CfB3 => "b3",
            CfA1Cyclic => "cyclic",
            BcfMainline => "mainline",
            BcfD10 => "D10",
            BcfB2 => "B2",
            BcfC4 => "C4",
            BcfD5 => "D5",
            Class2B => "class2",
        }
    }

    fn min_class(self) -> u32 {
        use FamilyKind::*;
        match self {
            CfMainline | BcfMainline => 3,
            Class2B => 2,
            _ => 4,
        }
    }
}

/// A vertex of the studied families: kind, exponent of the commutator
/// quotient `e`, nilpotency class `c`, and presentation exponent `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyLabel {
    pub kind: FamilyKind,
    pub e: u32,
    pub c: u32,
    pub n: u8,
}

impl FamilyLabel {
    pub fn new(kind: FamilyKind, e: u32, c: u32, n: u8) -> Result<Self> {
        let n = if kind.has_exponent() { n } else { 1 };
        let label = FamilyLabel { kind, e, c, n };
        label.validate()?;
        Ok(label)
    }

    /// Label in the `i = c - 2` indexing of the trees.
    pub fn at(kind: FamilyKind, e: u32, i: u32, n: u8) -> Result<Self> {
        Self::new(kind, e, i + 2, n)
    }

    pub fn cf_mainline(e: u32, i: u32) -> Self {
        Self::at(FamilyKind::CfMainline, e, i, 1).expect("valid mainline label")
    }

    pub fn bcf_mainline(e: u32, i: u32) -> Self {
        Self::at(FamilyKind::BcfMainline, e, i, 1).expect("valid mainline label")
    }

    pub fn class2(e: u32) -> Self {
        Self::new(FamilyKind::Class2B, e, 2, 1).expect("valid class-2 label")
    }

    pub fn i(&self) -> u32 {
        self.c - 2
    }

    pub fn validate(&self) -> Result<()> {
        if self.e < 2 {
            return Err(Error::BadParameters(format!("e = {} < 2", self.e)));
        }
        if self.kind == FamilyKind::Class2B {
            if self.c != 2 {
                return Err(Error::BadParameters("class-2 groups have c = 2".into()));
            }
            return Ok(());
        }
        if self.c < self.kind.min_class() {
            return Err(Error::BadParameters(format!(
                "{:?} needs class at least {}, got {}",
                self.kind,
                self.kind.min_class(),
                self.c
            )));
        }
        if self.kind.has_exponent() && !(1..=2).contains(&self.n) {
            return Err(Error::BadParameters(format!("exponent n = {} not in {{1, 2}}", self.n)));
        }
        Ok(())
    }

    /// log_3 of the group order.
    pub fn log_order(&self) -> u32 {
        match self.kind.tree() {
            Some(Tree::Cf) => self.e + self.c,
            Some(Tree::Bcf) => self.e + self.c + 1,
            None => self.e + 2,
        }
    }

    /// Coclass of the tree the vertex belongs to.
    pub fn coclass(&self) -> u32 {
        self.log_order() - self.c
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilyKind::*;
        let i = self.c.saturating_sub(2);
        match self.kind {
            CfMainline => write!(f, "M[e={},i={}]", self.e, i),
            BcfMainline => write!(f, "MM[e={},i={}]", self.e, i),
            Class2B => write!(f, "B[e={}]", self.e),
            k if k.tree() == Some(Tree::Cf) => {
                write!(f, "V[e={},i={},kind={}", self.e, i, k.short_name())?;
                if k.has_exponent() {
                    write!(f, ",n={}", self.n)?;
                }
                write!(f, "]")
            }
            k => write!(f, "VV[e={},i={},kind={},n={}]", self.e, i, k.short_name(), self.n),
        }
    }
}

impl FromStr for FamilyLabel {
    type Err = Error;

    /// Parses `M[e=4,i=2]`, `V[e=4,i=2,kind=b16]`, `V[e=4,i=3,kind=b3,n=2]`,
    /// `MM[e=3,i=1]`, `VV[e=3,i=2,kind=D5,n=1]`, `B[e=5]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::BadParameters(format!("label {s:?}: {m}"));
        let s = s.trim();
        let open = s.find('[').ok_or_else(|| bad("missing '['"))?;
        if !s.ends_with(']') {
            return Err(bad("missing ']'"));
        }
        let head = &s[..open];
        let mut fields = BTreeMap::new();
        for part in s[open + 1..s.len() - 1].split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| bad("field without '='"))?;
            fields.insert(k.trim().to_string(), v.trim().to_string());
        }
        let num = |k: &str| -> Result<u32> {
            fields
                .get(k)
                .ok_or_else(|| bad(&format!("missing {k}")))?
                .parse()
                .map_err(|_| bad(&format!("{k} is not a number")))
        };
        let n = match fields.get("n") {
            Some(v) => v.parse::<u8>().map_err(|_| bad("n is not a number"))?,
            None => 1,
        };
        let kind_field = fields.get("kind").map(|k| k.as_str());
        let kind = match (head, kind_field) {
            ("M", None) | ("M", Some("mainline")) => FamilyKind::CfMainline,
            ("MM", None) | ("MM", Some("mainline")) => FamilyKind::BcfMainline,
            ("B", None) => return FamilyLabel::new(FamilyKind::Class2B, num("e")?, 2, 1),
            ("V", Some(k)) => match k {
                "b16" => FamilyKind::CfB16,
                "twig" => FamilyKind::CfA1Twig,
                "bicyclic" => FamilyKind::CfA1Bicyclic,
                "b3" => FamilyKind::CfB3,
                "cyclic" => FamilyKind::CfA1Cyclic,
                _ => return Err(bad("unknown CF kind")),
            },
            ("VV", Some(k)) => match k {
                "D10" => FamilyKind::BcfD10,
                "B2" => FamilyKind::BcfB2,
                "C4" => FamilyKind::BcfC4,
                "D5" => FamilyKind::BcfD5,
                _ => return Err(bad("unknown BCF kind")),
            },
            _ => return Err(bad("unknown family")),
        };
        FamilyLabel::at(kind, num("e")?, num("i")?, n)
    }
}

/// The abelian derived subgroup, with the action of `x` and `y` on it.
struct DerivedModule {
    group: PcPresentation,
    names: Vec<String>,
    x_action: Vec<Exps>,
    y_action: Vec<Exps>,
    s_index: Vec<usize>,
    w_index: Option<usize>,
}

impl DerivedModule {
    fn zero(&self) -> Exps {
        self.group.identity()
    }
    fn s(&self, j: u32, k: u8) -> Exps {
        let mut v = self.zero();
        v[self.s_index[j as usize - 2]] = k % 3;
        v
    }
    fn add(&self, a: &[u8], b: &[u8]) -> Exps {
        self.group.mul(a, b)
    }
    fn neg(&self, a: &[u8]) -> Exps {
        self.group.inverse(a)
    }
    fn apply(&self, map: &[Exps], v: &[u8]) -> Exps {
        let mut acc = self.zero();
        for (t, &a) in v.iter().enumerate() {
            for _ in 0..a {
                acc = self.add(&acc, &map[t]);
            }
        }
        acc
    }
    /// `map^3` as images of the generators.
    fn cube(&self, map: &[Exps]) -> Vec<Exps> {
        (0..map.len())
            .map(|t| {
                let v = self.apply(map, &self.group.gen(t));
                let v = self.apply(map, &v);
                self.apply(map, &v)
            })
            .collect()
    }
    /// `sum_{m < count} X^m v`.
    fn norm(&self, v: &[u8], count: u64) -> Exps {
        let mut acc = self.zero();
        let mut cur = v.to_vec();
        for _ in 0..count {
            acc = self.add(&acc, &cur);
            cur = self.apply(&self.x_action, &cur);
        }
        acc
    }
}

fn derived_module(label: &FamilyLabel) -> Result<DerivedModule> {
    use FamilyKind::*;
    let c = label.c;
    let e = label.e;
    let n = label.n;
    let bicyclic_tree = label.kind.tree() == Some(Tree::Bcf);
    let mut names = vec!["s2".to_string()];
    if bicyclic_tree {
        names.push("w".to_string());
    }
    for j in 3..=c {
        names.push(format!("s{j}"));
    }
    let m = names.len();
    let mut s_index = vec![0usize];
    for j in 3..=c {
        s_index.push(if bicyclic_tree { j as usize - 1 } else { j as usize - 2 });
    }
    let w_index = if bicyclic_tree { Some(1) } else { None };
    let unit = |idx: usize, k: u8| {
        let mut v = vec![0u8; m];
        v[idx] = k;
        v
    };
    let s_at = |j: u32| s_index[j as usize - 2];
    // power relations of the s_j
    let mut powers = vec![vec![0u8; m]; m];
    if c >= 5 {
        for j in 2..=c - 3 {
            let mut v = unit(s_at(j + 2), 2);
            v[s_at(j + 3)] = 1;
            powers[s_at(j)] = v;
        }
    }
    if c >= 4 {
        powers[s_at(c - 2)] = unit(s_at(c), 2);
    }
    let conjugates = (0..m).map(|j| vec![unit(j, 1); j]).collect();
    let group = PcPresentation::from_parts_checked(3, names.clone(), powers, conjugates, vec![None; m])?;
    let mut module = DerivedModule {
        group,
        names,
        x_action: vec![],
        y_action: vec![],
        s_index: s_index.clone(),
        w_index,
    };
    let mut x_action = Vec::with_capacity(m);
    for t in 0..m {
        let mut v = unit(t, 1);
        if Some(t) != w_index {
            let j = (2..=c).find(|&j| s_at(j) == t).unwrap();
            if j < c && label.kind != Class2B {
                v[s_at(j + 1)] = 1;
            }
        }
        x_action.push(v);
    }
    module.x_action = x_action.clone();
    let w = |md: &DerivedModule| {
        let mut v = md.zero();
        v[md.w_index.unwrap()] = 1;
        v
    };
    let t3 = match label.kind {
        Class2B => module.zero(),
        CfMainline | CfB16 | CfB3 => module.s(3, 1),
        CfA1Twig | CfA1Bicyclic | CfA1Cyclic => module.add(&module.s(3, 1), &module.s(c, 1)),
        BcfMainline | BcfD10 => module.add(&module.s(3, 1), &w(&module)),
        BcfB2 | BcfC4 => {
            let v = module.add(&module.s(3, 1), &module.s(c, n));
            module.add(&v, &w(&module))
        }
        BcfD5 => {
            let v = module.add(&module.s(3, 1), &module.s(c, 3 - n));
            module.add(&v, &w(&module))
        }
    };
    let mut y_action = x_action;
    y_action[0] = module.add(&module.s(2, 1), &t3);
    if let Some(wi) = w_index {
        // w = x^(3^e) and x^y = x s2^-1 give w^y = w * N(s2^-1)
        let shift = module.norm(&module.neg(&module.s(2, 1)), 3u64.pow(e));
        y_action[wi] = module.add(&unit(wi, 1), &shift);
    }
    module.y_action = y_action;
    Ok(module)
}

/// Builds the presentation of a family vertex.
pub fn construct(label: &FamilyLabel) -> Result<PcPresentation> {
    use FamilyKind::*;
    label.validate()?;
    let module = derived_module(label)?;
    let e = label.e as usize;
    let c = label.c;
    let n = label.n;
    let top = e + 1;
    let m = module.names.len();
    let total = top + m;
    let x_idx = |k: usize| if k == 1 { 0 } else { k };
    let embed = |v: &[u8]| {
        let mut out = vec![0u8; total];
        out[top..].copy_from_slice(v);
        out
    };
    let mut names = vec!["x".to_string(), "y".to_string()];
    for k in 2..=e {
        if k == e && label.kind.tree() != Some(Tree::Bcf) {
            names.push("w".into());
        } else {
            names.push(format!("x_{}", 3u64.pow(k as u32 - 1)));
        }
    }
    names.extend(module.names.iter().cloned());

    let last_x_power = match label.kind {
        CfB3 | CfA1Cyclic => module.s(c, n),
        BcfMainline | BcfD10 | BcfB2 | BcfC4 | BcfD5 => {
            let mut v = module.zero();
            v[module.w_index.unwrap()] = 1;
            v
        }
        _ => module.zero(),
    };
    let y_cube = match label.kind {
        CfB16 => module.s(c, 1),
        CfA1Bicyclic | BcfD10 | BcfC4 | BcfD5 => module.s(c, n),
        _ => module.zero(),
    };
    let mut powers = vec![vec![0u8; total]; total];
    for k in 1..e {
        powers[x_idx(k)][x_idx(k + 1)] = 1;
    }
    powers[x_idx(e)] = embed(&last_x_power);
    powers[1] = embed(&y_cube);
    for t in 0..m {
        powers[top + t] = embed(module.group.power_rhs(t));
    }

    // action of x_k = x^(3^(k-1)) on the derived subgroup
    let mut x_powers_action = vec![module.x_action.clone()];
    for _ in 1..e {
        let next = module.cube(x_powers_action.last().unwrap());
        x_powers_action.push(next);
    }
    let neg_s2 = module.neg(&module.s(2, 1));
    let mut conjugates: Vec<Vec<Exps>> = Vec::with_capacity(total);
    for j in 0..total {
        let mut row = Vec::with_capacity(j);
        for i in 0..j {
            let mut trivial = vec![0u8; total];
            trivial[j] = 1;
            let rhs = if j == 1 {
                // y^x = y s2
                let mut v = embed(&module.s(2, 1));
                v[1] = 1;
                v
            } else if j < top {
                // j is x_k with k = j
                if i == 1 {
                    let mut v = embed(&module.norm(&neg_s2, 3u64.pow(j as u32 - 1)));
                    v[j] = 1;
                    v
                } else {
                    trivial
                }
            } else if i < top {
                let t = j - top;
                let image = if i == 1 {
                    &module.y_action[t]
                } else {
                    let k = if i == 0 { 1 } else { i };
                    &x_powers_action[k - 1][t]
                };
                embed(image)
            } else {
                trivial
            };
            row.push(rhs);
        }
        conjugates.push(row);
    }

    let mut defs: Vec<Option<Definition>> = vec![None; total];
    for k in 2..=e {
        defs[x_idx(k)] = Some(Definition::Power(x_idx(k - 1)));
    }
    let s_pos = |j: u32| top + module.s_index[j as usize - 2];
    defs[s_pos(2)] = Some(Definition::Conjugate(1, 0));
    for j in 3..=c {
        defs[s_pos(j)] = Some(Definition::Conjugate(s_pos(j - 1), 0));
    }
    if let Some(wi) = module.w_index {
        defs[top + wi] = Some(Definition::Power(x_idx(e)));
    }
    PcPresentation::from_parts_checked(3, names, powers, conjugates, defs)
}

/// The class-3 roots written with the literal degenerate relations
/// (`s2^3 = s3^3 = 1`, `s3 = t3`, resp. `t3 = s3 w`), built through the
/// structured spec route rather than the module construction.
pub fn degenerate_root_presentation(kind: FamilyKind, e: u32) -> Result<PcPresentation> {
    if e < 2 {
        return Err(Error::BadParameters(format!("e = {e} < 2")));
    }
    let g = |name: &str, rel_order: u32| GenSpec { name: name.into(), rel_order };
    let mut conjugates = BTreeMap::new();
    conjugates.insert("y^x".to_string(), "y*s2".to_string());
    conjugates.insert("s2^x".to_string(), "s2*s3".to_string());
    let mut powers = BTreeMap::new();
    let gens = match kind {
        FamilyKind::CfMainline => {
            conjugates.insert("s2^y".to_string(), "s2*s3".to_string());
            vec![g("x", 3u32.pow(e)), g("y", 3), g("s2", 3), g("s3", 3)]
        }
        FamilyKind::BcfMainline => {
            // t3 = s3 w with w = x^(3^e), so x^(3^e) = s3^-1 t3
            conjugates.insert("s2^y".to_string(), "s2*t3".to_string());
            powers.insert("x".to_string(), "s3^-1*t3".to_string());
            vec![g("x", 3u32.pow(e)), g("y", 3), g("s2", 3), g("s3", 3), g("t3", 3)]
        }
        other => {
            return Err(Error::BadParameters(format!("{other:?} has no degenerate root form")));
        }
    };
    build_presentation(&PresentationSpec { prime: 3, gens, powers, conjugates })
}

/// Shape of the centre: cyclic, bicyclic, or anything else.
pub fn centre_shape(g: &PcPresentation) -> CentreShape {
    let z = crate::series::centre(g);
    match crate::series::abelian_type(g, &z).len() {
        1 => CentreShape::Cyclic,
        2 => CentreShape::Bicyclic,
        _ => CentreShape::Other,
    }
}

/// Members of branch `i` (root class `i + 2`, children of class `i + 3`) in
/// the listed order: the mainline child first, then the offside vertices.
pub fn branch_children(tree: Tree, e: u32, i: u32) -> Vec<FamilyLabel> {
    use FamilyKind::*;
    let c = i + 3;
    let even = i % 2 == 0;
    let mut out = Vec::new();
    let l = |k, n| FamilyLabel::new(k, e, c, n).expect("branch label");
    match tree {
        Tree::Cf => {
            out.push(l(CfMainline, 1));
            out.push(l(CfB16, 1));
            out.push(l(CfA1Twig, 1));
            out.push(l(CfA1Bicyclic, 1));
            out.push(l(CfA1Bicyclic, 2));
            out.push(l(CfB3, 1));
            if even {
                out.push(l(CfB3, 2));
            }
            out.push(l(CfA1Cyclic, 1));
            if even {
                out.push(l(CfA1Cyclic, 2));
            }
        }
        Tree::Bcf => {
            out.push(l(BcfMainline, 1));
            for k in [BcfD10, BcfB2, BcfC4, BcfD5] {
                out.push(l(k, 1));
                if even {
                    out.push(l(k, 2));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_formulas() {
        for e in 2..=4 {
            for c in 3..=6 {
                for kind in FamilyKind::ALL {
                    if kind == FamilyKind::Class2B || c < kind.min_class() {
                        continue;
                    }
                    for n in 1..=2 {
                        let l = FamilyLabel::new(kind, e, c, n).unwrap();
                        let p = construct(&l).unwrap_or_else(|err| panic!("{l}: {err}"));
                        assert_eq!(p.log_order(), l.log_order(), "{l}");
                    }
                }
            }
            assert_eq!(construct(&FamilyLabel::class2(e)).unwrap().log_order(), e + 2);
        }
    }

    #[test]
    fn commutator_convention() {
        let g = construct(&FamilyLabel::cf_mainline(2, 1)).unwrap();
        let s2 = g.comm(&g.gen(1), &g.gen(0));
        assert_eq!(g.format(&s2), "s2");
    }

    #[test]
    fn w_is_a_power_of_x() {
        for e in 2..=6 {
            let g = construct(&FamilyLabel::cf_mainline(e, 1)).unwrap();
            let w = g.pow(&g.gen(0), 3u64.pow(e - 1));
            assert_eq!(g.format(&w), "w");
            assert!(PcPresentation::is_identity(&g.pth_power(&w)));
        }
    }

    #[test]
    fn label_round_trip() {
        for s in ["M[e=4,i=2]", "V[e=4,i=2,kind=b16]", "MM[e=3,i=1]", "B[e=5]", "VV[e=3,i=2,kind=D5,n=2]"] {
            let l: FamilyLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert!("V[e=4,i=1,kind=b16]".parse::<FamilyLabel>().is_err());
        assert!("M[e=1,i=1]".parse::<FamilyLabel>().is_err());
    }

    #[test]
    fn degenerate_roots_have_right_order() {
        assert_eq!(degenerate_root_presentation(FamilyKind::CfMainline, 3).unwrap().log_order(), 6);
        assert_eq!(degenerate_root_presentation(FamilyKind::BcfMainline, 2).unwrap().log_order(), 6);
    }

    #[test]
    fn declared_types_and_centres() {
        use crate::artin::artin_pattern;
        for tree in [Tree::Cf, Tree::Bcf] {
            for i in 1..=2 {
                for l in branch_children(tree, 3, i) {
                    let g = construct(&l).unwrap();
                    let p = artin_pattern(&g).unwrap_or_else(|err| panic!("{l}: {err}"));
                    assert_eq!(p.named_type.as_str(), l.kind.declared_type(), "{l} kappa {}", p.kappa);
                    assert_eq!(p.sorted_rho(), [2, 2, 3, 3], "{l}");
                    if let Some(shape) = l.kind.declared_centre() {
                        assert_eq!(centre_shape(&g), shape, "{l}");
                    }
                }
            }
        }
    }

    #[test]
    fn branch_cardinalities() {
        assert_eq!(branch_children(Tree::Cf, 3, 1).len(), 7);
        assert_eq!(branch_children(Tree::Cf, 3, 2).len(), 9);
        assert_eq!(branch_children(Tree::Bcf, 3, 1).len(), 5);
        assert_eq!(branch_children(Tree::Bcf, 3, 2).len(), 9);
    }
}
