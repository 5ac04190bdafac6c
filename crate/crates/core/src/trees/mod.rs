//! Branches of the two coclass trees, checks of the propagation laws,
//! descendant path programs and tree exports.

mod export;
mod paths;

pub use export::{to_dot, tree_report, EdgeReport, TreeReport, VertexReport, SCHEMA_VERSION};
pub use paths::{
    a1_explicit, b16a1_explicit, b3a1_explicit, bcf_offside_explicit, branch_position, d10_explicit,
    excited_state_metabelianization, exhaustion_program, k_subscript, verify_exhaustion, PathEvaluator,
    PathOptions, PathProgram, PathStep, Selector,
};

use crate::artin::{artin_pattern, ArtinPattern, NamedType};
use crate::error::{Error, Result};
use crate::families::{branch_children, centre_shape, construct, CentreShape, FamilyKind, FamilyLabel, Tree};
use crate::iso::{are_isomorphic_capped, find_isomorphism, fingerprint, Fingerprint, Verdict, ISO_CAP_LOG};
use crate::pc::PcPresentation;
use crate::pcover::{
    descendants_of_cover, p_cover_capped, p_parent_link, parent, propagation_kind, Descendant, DescendantOptions,
    PropagationKind, COVER_CAP_LOG,
};
use crate::series::{abelian_invariants, scalar_invariants, shock_wave_position, ScalarInvariants, ShockPosition};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

/// A vertex together with its computed invariants.
#[derive(Clone, Debug)]
pub struct TreeVertex {
    /// family label or path description
    pub label: String,
    pub family: Option<FamilyLabel>,
    pub group: PcPresentation,
    pub invariants: ScalarInvariants,
    pub pattern: ArtinPattern,
    pub centre: CentreShape,
    pub depth: u32,
    pub shock: Option<ShockPosition>,
}

impl TreeVertex {
    pub fn from_group(label: String, family: Option<FamilyLabel>, group: PcPresentation, depth: u32) -> Result<Self> {
        let pattern = artin_pattern(&group)?;
        let invariants = scalar_invariants(&group);
        let e = abelian_invariants(&group, &group.whole_group()).first().copied().unwrap_or(0);
        let shock = shock_wave_position(&group, e, invariants.cc).ok();
        Ok(TreeVertex { label, family, centre: centre_shape(&group), group, invariants, pattern, depth, shock })
    }

    pub fn from_family(label: FamilyLabel, depth: u32) -> Result<Self> {
        Self::from_group(label.to_string(), Some(label), construct(&label)?, depth)
    }

    pub fn named_type(&self) -> NamedType {
        self.pattern.named_type
    }
}

/// Mainline vertex of class `i + 2`.
pub fn mainline(tree: Tree, e: u32, i: u32) -> FamilyLabel {
    match tree {
        Tree::Cf => FamilyLabel::cf_mainline(e, i),
        Tree::Bcf => FamilyLabel::bcf_mainline(e, i),
    }
}

/// Root `M_i` of a depth-pruned branch with its offside children.
#[derive(Clone, Debug)]
pub struct Branch {
    pub tree: Tree,
    pub e: u32,
    pub index: u32,
    pub root: TreeVertex,
    pub offside: Vec<TreeVertex>,
}

impl Branch {
    /// Root plus offside vertices.
    pub fn cardinality(&self) -> usize {
        1 + self.offside.len()
    }

    /// Sorted `(type, centre, n)` triples of all vertices.
    pub fn type_multiset(&self) -> Vec<(NamedType, CentreShape, u8)> {
        let mut out: Vec<_> = std::iter::once(&self.root)
            .chain(&self.offside)
            .map(|v| (v.named_type(), v.centre, v.family.map_or(1, |l| l.n)))
            .collect();
        out.sort();
        out
    }

    /// Vertices whose computed type differs from the declared one.
    pub fn type_mismatches(&self) -> Vec<String> {
        std::iter::once(&self.root)
            .chain(&self.offside)
            .filter_map(|v| {
                let l = v.family?;
                let ok = v.named_type().as_str() == l.kind.declared_type()
                    && l.kind.declared_centre().map_or(true, |c| c == v.centre);
                (!ok).then(|| format!("{}: {} {}", l, v.named_type(), v.centre))
            })
            .collect()
    }
}

pub fn build_branch(tree: Tree, e: u32, i: u32) -> Result<Branch> {
    if e < 2 || i < 1 {
        return Err(Error::BadParameters(format!("branch needs e >= 2 and i >= 1, got e = {e}, i = {i}")));
    }
    let root = TreeVertex::from_family(mainline(tree, e, i), 0)?;
    let offside = branch_children(tree, e, i)[1..]
        .par_iter()
        .map(|&l| TreeVertex::from_family(l, 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(Branch { tree, e, index: i, root, offside })
}

/// One assertion of a verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub law: String,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), checks: Vec::new() }
    }

    pub fn push(&mut self, law: &str, subject: impl fmt::Display, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { law: law.into(), subject: subject.to_string(), passed, detail: detail.into() });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{tag} [{}] {}: {}", c.law, c.subject, c.detail)?;
        }
        let bad = self.failures().len();
        write!(f, "{}: {} checks, {} failed", self.suite, self.checks.len(), bad)
    }
}

/// How two groups were found to agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Match {
    Isomorphic,
    /// above the isomorphism cap; fingerprints agree
    SameFingerprint,
    Different,
}

impl fmt::Display for Match {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Match::Isomorphic => "isomorphic",
            Match::SameFingerprint => "same fingerprint",
            Match::Different => "different",
        })
    }
}

pub fn compare(a: &PcPresentation, b: &PcPresentation, iso_cap: u32) -> Match {
    match are_isomorphic_capped(a, b, iso_cap) {
        Verdict::Yes => Match::Isomorphic,
        Verdict::Unknown => Match::SameFingerprint,
        Verdict::No => Match::Different,
    }
}

/// [`compare`] with precomputed fingerprints.
pub fn compare_with(a: &PcPresentation, fa: &Fingerprint, b: &PcPresentation, fb: &Fingerprint, iso_cap: u32) -> Match {
    if fa != fb {
        Match::Different
    } else if a.log_order() > iso_cap {
        Match::SameFingerprint
    } else if find_isomorphism(a, b).is_some() {
        Match::Isomorphic
    } else {
        Match::Different
    }
}

/// Parent and p-parent of a family vertex as predicted by the propagation
/// laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LawPrediction {
    pub law: &'static str,
    pub p_parent: FamilyLabel,
    pub step: u32,
    pub kind: PropagationKind,
    pub parent: FamilyLabel,
    pub shock: Option<ShockPosition>,
}

/// Kind and exponent of the CF vertex below a BCF vertex behind the shock
/// wave.
pub fn bcf_source(kind: FamilyKind) -> Option<(FamilyKind, u8)> {
    use FamilyKind::*;
    Some(match kind {
        BcfMainline => (CfMainline, 1),
        BcfD10 => (CfB16, 1),
        BcfB2 => (CfA1Twig, 1),
        BcfC4 => (CfA1Bicyclic, 1),
        BcfD5 => (CfA1Bicyclic, 2),
        _ => return None,
    })
}

pub fn predicted_links(label: &FamilyLabel) -> Option<LawPrediction> {
    use FamilyKind::*;
    use PropagationKind::*;
    use ShockPosition::*;
    let (e, i) = (label.e, label.i());
    let tree = label.kind.tree()?;
    let parent = if i >= 2 { mainline(tree, e, i - 1) } else { FamilyLabel::class2(e) };
    let p = |law, pp, step, kind, shock| Some(LawPrediction { law, p_parent: pp, step, kind, parent, shock });
    let cf = FamilyLabel::cf_mainline;
    match label.kind {
        CfMainline | CfB16 | CfA1Twig | CfA1Bicyclic => {
            if i >= e.saturating_sub(1) {
                (i >= 2).then_some(())?;
                p("regular endo", cf(e, i - 1), 1, Endo, Some(Ahead))
            } else if e >= 4 && i == e - 2 {
                p("singular exo", cf(e - 1, i - 1), 2, Exo, Some(On))
            } else if label.kind == CfMainline {
                (e >= 4).then_some(())?;
                p("irregular exo", cf(e - 1, i), 1, Exo, Some(Behind))
            } else {
                (e >= 5).then_some(())?;
                let pp = FamilyLabel { e: e - 1, ..*label };
                p("irregular exo", pp, 1, Exo, Some(Behind))
            }
        }
        CfB3 | CfA1Cyclic => p("permanent endo", cf(e, i - 1), 1, Endo, None),
        BcfMainline | BcfD10 | BcfB2 | BcfC4 | BcfD5 => {
            if i >= e {
                (i >= 2).then_some(())?;
                p("regular endo", FamilyLabel::bcf_mainline(e, i - 1), 1, Endo, Some(Ahead))
            } else if i + 1 == e {
                (i >= 2).then_some(())?;
                // the commutator quotient is kept, so the link is endo even
                // though the law is stated as exo
                p("singular", cf(e, i - 1), 2, Endo, Some(On))
            } else {
                let (k, n) = bcf_source(label.kind)?;
                let pp = FamilyLabel::new(k, e, label.c, n).ok()?;
                p("irregular endo", pp, 1, Endo, Some(Behind))
            }
        }
        Class2B => None,
    }
}

/// Checks parent, p-parent, link kind and shock position of one vertex.
pub fn check_laws(label: &FamilyLabel, iso_cap: u32) -> Result<Report> {
    let mut r = Report::new("laws");
    let Some(pred) = predicted_links(label) else {
        return Ok(r);
    };
    let g = construct(label)?;
    let (pp, link) = p_parent_link(&g);
    let want = construct(&pred.p_parent)?;
    let m = compare(&pp, &want, iso_cap);
    r.push(pred.law, label, m != Match::Different, format!("p-parent vs {}: {m}", pred.p_parent));
    r.push(
        pred.law,
        label,
        link.step == pred.step && link.kind == pred.kind,
        format!("link step {} {}, expected step {} {}", link.step, link.kind, pred.step, pred.kind),
    );
    let par = parent(&g);
    let m = if pred.parent == pred.p_parent && link.step == 1 && m != Match::Different {
        compare(&par, &pp, iso_cap)
    } else {
        compare(&par, &construct(&pred.parent)?, iso_cap)
    };
    r.push("parent", label, m != Match::Different, format!("parent vs {}: {m}", pred.parent));
    if let Some(want) = pred.shock {
        let got = shock_wave_position(&g, label.e, label.coclass())?;
        r.push("shock wave", label, got == want, format!("{got}, expected {want}"));
    }
    if pred.law == "irregular endo" {
        let t = artin_pattern(&pp)?.named_type;
        let declared = pred.p_parent.kind.declared_type();
        r.push(
            "type change",
            label,
            t.as_str() == declared,
            format!("{} over {t}, expected {declared}", label.kind.declared_type()),
        );
    }
    Ok(r)
}

fn check_all(suite: &str, labels: Vec<FamilyLabel>, iso_cap: u32) -> Result<Report> {
    let parts = labels.par_iter().map(|l| check_laws(l, iso_cap)).collect::<Result<Vec<_>>>()?;
    let mut r = Report::new(suite);
    for p in parts {
        r.extend(p);
    }
    Ok(r)
}

/// Mainline vertices of the CF trees `e_min..=e_max`, `i = 1..=i_max`.
pub fn verify_mainline_laws(e_min: u32, e_max: u32, i_max: u32, iso_cap: u32) -> Result<Report> {
    let labels = (e_min..=e_max)
        .flat_map(|e| (1..=i_max).map(move |i| FamilyLabel::cf_mainline(e, i)))
        .collect();
    check_all("mainline laws", labels, iso_cap)
}

/// Offside vertices of the CF trees, `i = 2..=i_max`.
pub fn verify_offside_laws(e_min: u32, e_max: u32, i_max: u32, iso_cap: u32) -> Result<Report> {
    let labels = (e_min..=e_max)
        .flat_map(|e| (2..=i_max).flat_map(move |i| branch_children(Tree::Cf, e, i - 1).into_iter().skip(1)))
        .collect();
    check_all("offside laws", labels, iso_cap)
}

/// All BCF vertices with `i <= i_max`.
pub fn verify_bcf_laws(e_min: u32, e_max: u32, i_max: u32, iso_cap: u32) -> Result<Report> {
    let labels = (e_min..=e_max)
        .flat_map(|e| {
            (1..=i_max).flat_map(move |i| {
                let off = if i >= 2 { branch_children(Tree::Bcf, e, i - 1)[1..].to_vec() } else { vec![] };
                std::iter::once(FamilyLabel::bcf_mainline(e, i)).chain(off)
            })
        })
        .collect();
    check_all("bcf laws", labels, iso_cap)
}

/// Index of the member isomorphic to `target` (fingerprint agreement above
/// the isomorphism cap).
pub fn match_member(target: &PcPresentation, members: &[Descendant], iso_cap: u32) -> Option<(usize, Match)> {
    let fp = fingerprint(target);
    members.iter().enumerate().filter(|(_, m)| m.fingerprint == fp).find_map(|(k, m)| {
        match compare_with(target, &fp, &m.group, &m.fingerprint, iso_cap) {
            Match::Different => None,
            found => Some((k, found)),
        }
    })
}

#[derive(Clone, Copy, Debug)]
pub struct BifurcationOptions {
    pub iso_cap: u32,
    pub cap_log: u32,
}

impl Default for BifurcationOptions {
    fn default() -> Self {
        BifurcationOptions { iso_cap: ISO_CAP_LOG + 3, cap_log: COVER_CAP_LOG + 2 }
    }
}

/// Descendants of the shock-wave vertex `M^(e)_{e-2}` at step sizes 1 and
/// 2, compared with the family vertices expected there.
pub fn verify_bifurcation(e: u32, opts: &BifurcationOptions) -> Result<Report> {
    if e < 3 {
        return Err(Error::BadParameters(format!("bifurcation needs e >= 3, got {e}")));
    }
    let mut r = Report::new("bifurcation");
    let root = FamilyLabel::cf_mainline(e, e - 2);
    let g = construct(&root)?;
    let cov = p_cover_capped(&g, COVER_CAP_LOG)?;
    r.push("nuclear rank", root, cov.nuclear_rank == 2, format!("nuclear rank {}", cov.nuclear_rank));
    let dopts = DescendantOptions { cap_log: opts.cap_log, ..Default::default() };

    let mut step1 = vec![FamilyLabel::cf_mainline(e + 1, e - 2), FamilyLabel::bcf_mainline(e, e - 2)];
    step1.extend(branch_children(Tree::Cf, e, e - 2));
    let mut step2 = vec![FamilyLabel::cf_mainline(e + 1, e - 1)];
    step2.extend(branch_children(Tree::Cf, e + 1, e - 2)[1..5].iter().copied());
    step2.extend(branch_children(Tree::Bcf, e, e - 2));

    let odd = e % 2 == 1;
    for (s, expected, exo, endo) in [(1, step1, 1, if odd { 8 } else { 10 }), (2, step2, 5, if odd { 5 } else { 9 })] {
        let set = descendants_of_cover(&cov, s, &dopts)?;
        let law = if s == 1 { "bifurcation step 1" } else { "bifurcation step 2" };
        let found: Vec<Option<(usize, Match)>> = expected
            .par_iter()
            .map(|l| Ok(match_member(&construct(l)?, &set.members, opts.iso_cap)))
            .collect::<Result<_>>()?;
        let mut used = vec![false; set.members.len()];
        let (mut n_exo, mut n_endo) = (0, 0);
        for (l, f) in expected.iter().zip(&found) {
            match f {
                Some((k, m)) => {
                    let fresh = !used[*k];
                    used[*k] = true;
                    match propagation_kind(&set.members[*k].group, &g) {
                        PropagationKind::Exo => n_exo += 1,
                        PropagationKind::Endo => n_endo += 1,
                    }
                    r.push(law, l, fresh, format!("member {k} ({m}){}", if fresh { "" } else { ", already matched" }));
                }
                None => r.push(law, l, false, "no matching descendant"),
            }
        }
        r.push(law, root, n_exo == exo && n_endo == endo, format!("{n_exo} exo and {n_endo} endo, expected {exo} and {endo}"));
        let exact = set.members.iter().all(|m| m.exact);
        r.push(
            law,
            root,
            true,
            format!("{} descendants in total from {} allowable subgroups (exact: {exact})", set.members.len(), set.candidates),
        );
    }
    Ok(r)
}

/// Branch multisets are 2-periodic; cardinalities are 7/9 on CF and 5/9 on
/// BCF branches.
pub fn verify_periodicity(tree: Tree, e: u32, i_max: u32) -> Result<Report> {
    let mut r = Report::new("periodicity");
    let branches = (1..=i_max).into_par_iter().map(|i| build_branch(tree, e, i)).collect::<Result<Vec<_>>>()?;
    for b in &branches {
        let subject = format!("{:?} e={} branch {}", tree, e, b.index);
        let want = match (tree, b.index % 2 == 1) {
            (Tree::Cf, true) => 7,
            (Tree::Cf, false) => 9,
            (Tree::Bcf, true) => 5,
            (Tree::Bcf, false) => 9,
        };
        r.push("branch size", &subject, b.cardinality() == want, format!("{} vertices, expected {want}", b.cardinality()));
        let bad = b.type_mismatches();
        r.push("declared types", &subject, bad.is_empty(), bad.join("; "));
        let root_fp = fingerprint(&b.root.group);
        let strays: Vec<String> = b
            .offside
            .par_iter()
            .filter(|v| fingerprint(&parent(&v.group)) != root_fp)
            .map(|v| v.label.clone())
            .collect();
        r.push("star topology", &subject, strays.is_empty(), strays.join("; "));
    }
    for w in 0..branches.len().saturating_sub(2) {
        let (a, b) = (&branches[w], &branches[w + 2]);
        let same = a.type_multiset() == b.type_multiset();
        r.push(
            "period 2",
            format!("{:?} e={} branches {} and {}", tree, e, a.index, b.index),
            same,
            if same { "equal type multisets".to_string() } else { format!("{:?} vs {:?}", a.type_multiset(), b.type_multiset()) },
        );
    }
    Ok(r)
}

/// The class-2 chain obtained by step-1 descendant selection from `B_2`,
/// and its relation to the roots of both trees.
pub fn verify_class2_chain(e_max: u32, iso_cap: u32) -> Result<Report> {
    let mut r = Report::new("class-2 chain");
    let mut cur = construct(&FamilyLabel::class2(2))?;
    for e in 3..=e_max {
        let set = crate::pcover::immediate_descendants_with(
            &cur,
            1,
            &DescendantOptions { cap_log: cur.log_order() + 1, ..Default::default() },
        )?;
        let class2: Vec<&Descendant> = set.members.iter().filter(|m| m.fingerprint.cl == 2).collect();
        let label = FamilyLabel::class2(e);
        if class2.len() != 1 {
            r.push("class-2 chain", label, false, format!("{} class-2 descendants", class2.len()));
            return Ok(r);
        }
        let next = class2[0].group.clone();
        let m = compare(&next, &construct(&label)?, iso_cap);
        let kind = propagation_kind(&next, &cur);
        r.push(
            "class-2 chain",
            label,
            m != Match::Different && kind == PropagationKind::Exo,
            format!("unique class-2 descendant of B[e={}], {m}, {kind}", e - 1),
        );
        cur = next;
    }
    for e in 2..=e_max {
        let b = construct(&FamilyLabel::class2(e))?;
        let ab = abelian_invariants(&b, &b.whole_group());
        let inv = scalar_invariants(&b);
        r.push(
            "class-2 invariants",
            FamilyLabel::class2(e),
            inv.cl == 2 && inv.cl_p == e && ab == vec![e, 1],
            format!("cl {}, cl_p {}, abelianization {ab:?}", inv.cl, inv.cl_p),
        );
        if e >= 3 {
            let (pp, _) = p_parent_link(&b);
            let m = compare(&pp, &construct(&FamilyLabel::class2(e - 1))?, iso_cap);
            r.push("class-2 p-parent", FamilyLabel::class2(e), m != Match::Different, format!("vs B[e={}]: {m}", e - 1));
        }
        if e <= 4 {
            for root in [FamilyLabel::cf_mainline(e, 1), FamilyLabel::bcf_mainline(e, 1)] {
                let m = compare(&parent(&construct(&root)?), &b, iso_cap);
                r.push("root parent", root, m != Match::Different, format!("parent vs B[e={e}]: {m}"));
            }
        }
    }
    Ok(r)
}

/// Labels of all family presentations with `e` in range and class up to
/// `c_max`, every exponent variant included.
pub fn family_grid(e_min: u32, e_max: u32, c_max: u32) -> Vec<FamilyLabel> {
    let mut out = Vec::new();
    for e in e_min..=e_max {
        out.push(FamilyLabel::class2(e));
        for kind in FamilyKind::ALL {
            for c in 3..=c_max {
                for n in 1..=if kind.has_exponent() { 2 } else { 1 } {
                    if let Ok(l) = FamilyLabel::new(kind, e, c, n) {
                        out.push(l);
                    }
                }
            }
        }
    }
    out
}

/// Consistency of every presentation and the order formulas.
pub fn verify_consistency(e_min: u32, e_max: u32, c_max: u32) -> Result<Report> {
    let mut r = Report::new("consistency");
    let rows = family_grid(e_min, e_max, c_max)
        .into_par_iter()
        .map(|l| {
            let g = construct(&l)?;
            let rep = g.check_consistency();
            Ok((l, rep.passed(), g.log_order()))
        })
        .collect::<Result<Vec<_>>>()?;
    for (l, ok, lo) in rows {
        r.push("consistency", l, ok, "all overlaps collect to the same normal form");
        r.push("order", l, lo == l.log_order(), format!("order 3^{lo}, expected 3^{}", l.log_order()));
    }
    Ok(r)
}

/// Class, p-class and the two coclasses predicted for a family vertex.
pub fn expected_invariants(l: &FamilyLabel) -> ScalarInvariants {
    let (e, c) = (l.e, l.c);
    let lo = l.log_order();
    let cl_p = match l.kind.tree() {
        None => e,
        // one step of size 1 above a mainline vertex of p-class e
        Some(Tree::Cf) if matches!(l.kind, FamilyKind::CfB3 | FamilyKind::CfA1Cyclic) && c <= e + 1 => e + 1,
        Some(Tree::Cf) => {
            if c <= e {
                e
            } else {
                c
            }
        }
        Some(Tree::Bcf) => {
            if c <= e + 1 {
                e + 1
            } else {
                c
            }
        }
    };
    ScalarInvariants { lo, cl: c, cl_p, cc: lo - c, cc_p: lo - cl_p }
}

pub fn verify_invariants(e_min: u32, e_max: u32, c_max: u32) -> Result<Report> {
    let mut r = Report::new("invariants");
    let rows = family_grid(e_min, e_max, c_max)
        .into_par_iter()
        .map(|l| Ok((l, scalar_invariants(&construct(&l)?))))
        .collect::<Result<Vec<_>>>()?;
    for (l, got) in rows {
        let want = expected_invariants(&l);
        r.push(
            "invariants",
            l,
            got == want,
            format!("cl {} cl_p {} cc {} cc_p {}; expected {} {} {} {}", got.cl, got.cl_p, got.cc, got.cc_p, want.cl, want.cl_p, want.cc, want.cc_p),
        );
    }
    Ok(r)
}

/// Rank distribution and named type of every tree vertex on the grid.
pub fn verify_patterns(e_min: u32, e_max: u32, c_max: u32) -> Result<Report> {
    let mut r = Report::new("patterns");
    let rows = family_grid(e_min, e_max, c_max)
        .into_par_iter()
        .filter(|l| l.kind.tree().is_some())
        .map(|l| Ok((l, artin_pattern(&construct(&l)?)?)))
        .collect::<Result<Vec<_>>>()?;
    for (l, p) in rows {
        let rho = p.sorted_rho();
        r.push("rank distribution", l, rho == [2, 2, 3, 3], format!("{rho:?}"));
        let declared = l.kind.declared_type();
        r.push(
            "transfer kernel type",
            l,
            p.named_type.as_str() == declared,
            format!("kappa ({}) of type {}, declared {declared}", p.kappa, p.named_type),
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests;
