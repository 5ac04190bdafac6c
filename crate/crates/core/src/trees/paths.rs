//! Descendant paths: selectors, the explicit path programs, and the
//! evaluator that walks them through computed descendant sets.

use super::{bcf_source, compare, compare_with, Match, Report, TreeVertex};
use crate::artin::{artin_pattern, NamedType};
use crate::error::{Error, Result};
use crate::families::{branch_children, centre_shape, construct, CentreShape, FamilyKind, FamilyLabel, Tree};
use crate::iso::{Fingerprint, ISO_CAP_LOG};
use crate::pc::PcPresentation;
use crate::pcover::{descendants_of_cover, p_cover_capped, propagation_kind, DedupMode, DescendantOptions, PropagationKind, COVER_CAP_LOG};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Picks one member of a descendant set. Unset fields match anything; the
/// target, if given, must be isomorphic to the member.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Selector {
    pub named_type: Option<NamedType>,
    pub centre: Option<CentreShape>,
    pub kind: Option<PropagationKind>,
    pub target: Option<FamilyLabel>,
}

impl Selector {
    pub fn new(named_type: NamedType, kind: PropagationKind) -> Self {
        Selector { named_type: Some(named_type), kind: Some(kind), ..Default::default() }
    }

    pub fn centre(mut self, c: CentreShape) -> Self {
        self.centre = Some(c);
        self
    }

    pub fn target(mut self, l: FamilyLabel) -> Self {
        self.target = Some(l);
        self
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(t) = self.named_type {
            parts.push(t.to_string());
        }
        if let Some(c) = self.centre {
            parts.push(c.to_string());
        }
        if let Some(k) = self.kind {
            parts.push(k.to_string());
        }
        if let Some(l) = self.target {
            parts.push(format!("~{l}"));
        }
        if parts.is_empty() {
            parts.push("any".into());
        }
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PathStep {
    pub step: u32,
    pub selector: Selector,
}

/// A start vertex followed by descendant selections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathProgram {
    pub start: FamilyLabel,
    pub steps: Vec<PathStep>,
}

impl PathProgram {
    pub fn new(start: FamilyLabel) -> Self {
        PathProgram { start, steps: Vec::new() }
    }

    pub fn then(mut self, step: u32, selector: Selector) -> Self {
        self.steps.push(PathStep { step, selector });
        self
    }

    pub fn append(mut self, other: &PathProgram) -> Self {
        self.steps.extend(other.steps.iter().copied());
        self
    }

    /// Family vertex the last step is matched against, if any.
    pub fn target(&self) -> Option<FamilyLabel> {
        self.steps.last().map_or(Some(self.start), |s| s.selector.target)
    }

    /// Log order of the end vertex.
    pub fn log_order(&self) -> u32 {
        self.start.log_order() + self.steps.iter().map(|s| s.step).sum::<u32>()
    }
}

impl fmt::Display for PathProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for s in &self.steps {
            write!(f, " -#{} {}", s.step, s.selector)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PathOptions {
    /// largest log order of a vertex whose descendants are computed
    pub cover_cap: u32,
    /// largest log order for exhaustive isomorphism tests
    pub iso_cap: u32,
    pub dedup: DedupMode,
}

impl Default for PathOptions {
    fn default() -> Self {
        PathOptions { cover_cap: COVER_CAP_LOG, iso_cap: ISO_CAP_LOG + 3, dedup: DedupMode::Iso }
    }
}

/// A descendant with the data selectors look at.
struct Candidate {
    group: PcPresentation,
    fingerprint: Fingerprint,
    named_type: Option<NamedType>,
    centre: CentreShape,
    kind: PropagationKind,
}

/// Walks path programs, caching vertices by path prefix and descendant
/// sets by vertex.
pub struct PathEvaluator {
    pub opts: PathOptions,
    vertices: HashMap<String, PcPresentation>,
    descendants: HashMap<(String, u32), Arc<Vec<Candidate>>>,
    targets: HashMap<FamilyLabel, (PcPresentation, Fingerprint)>,
}

impl PathEvaluator {
    pub fn new(opts: PathOptions) -> Self {
        PathEvaluator { opts, vertices: HashMap::new(), descendants: HashMap::new(), targets: HashMap::new() }
    }

    fn family(&mut self, l: &FamilyLabel) -> Result<(PcPresentation, Fingerprint)> {
        if let Some(g) = self.targets.get(l) {
            return Ok(g.clone());
        }
        let g = construct(l)?;
        let entry = (g.clone(), crate::iso::fingerprint(&g));
        self.targets.insert(*l, entry.clone());
        Ok(entry)
    }

    fn candidates(&mut self, key: &str, g: &PcPresentation, s: u32) -> Result<Arc<Vec<Candidate>>> {
        if let Some(c) = self.descendants.get(&(key.to_string(), s)) {
            return Ok(c.clone());
        }
        let cov = p_cover_capped(g, self.opts.cover_cap)?;
        let set = descendants_of_cover(
            &cov,
            s,
            &DescendantOptions { dedup: self.opts.dedup, cap_log: g.log_order() + s },
        )?;
        let cands: Vec<Candidate> = set
            .members
            .into_par_iter()
            .map(|m| Candidate {
                named_type: artin_pattern(&m.group).ok().map(|p| p.named_type),
                centre: centre_shape(&m.group),
                kind: propagation_kind(&m.group, g),
                group: m.group,
                fingerprint: m.fingerprint,
            })
            .collect();
        let cands = Arc::new(cands);
        self.descendants.insert((key.to_string(), s), cands.clone());
        Ok(cands)
    }

    fn select(&mut self, cands: &[Candidate], sel: &Selector) -> Result<PcPresentation> {
        let target = sel.target.as_ref().map(|l| self.family(l)).transpose()?;
        let iso_cap = self.opts.iso_cap;
        let hits: Vec<&Candidate> = cands
            .par_iter()
            .filter(|c| {
                sel.named_type.map_or(true, |t| c.named_type == Some(t))
                    && sel.centre.map_or(true, |z| c.centre == z)
                    && sel.kind.map_or(true, |k| c.kind == k)
                    && target.as_ref().map_or(true, |(t, ft)| {
                        compare_with(&c.group, &c.fingerprint, t, ft, iso_cap) != Match::Different
                    })
            })
            .collect();
        match hits.len() {
            0 => Err(Error::NoMatch(sel.to_string())),
            1 => Ok(hits[0].group.clone()),
            _ => Err(Error::AmbiguousSelector(sel.to_string())),
        }
    }

    /// End vertex of the program.
    pub fn evaluate(&mut self, program: &PathProgram) -> Result<TreeVertex> {
        let mut key = program.start.to_string();
        let mut g = self.family(&program.start)?.0;
        for s in &program.steps {
            let next = format!("{key} -#{} {}", s.step, s.selector);
            g = match self.vertices.get(&next) {
                Some(h) => h.clone(),
                None => {
                    let cands = self.candidates(&key, &g, s.step)?;
                    let h = self.select(&cands, &s.selector)?;
                    self.vertices.insert(next.clone(), h.clone());
                    h
                }
            };
            key = next;
        }
        let family = program.steps.last().and_then(|s| s.selector.target).or(if program.steps.is_empty() {
            Some(program.start)
        } else {
            None
        });
        TreeVertex::from_group(program.to_string(), family, g, program.steps.len() as u32)
    }
}

fn bad(msg: String) -> Error {
    Error::BadParameters(msg)
}

/// Vertex at position `k >= 2` among the children of the mainline vertex of
/// branch `i`, in the order the branch lists use: on CF branches b.16, twig,
/// the two bicyclic a.1 vertices, then b.3 and cyclic a.1 (alternating over
/// n on even branches); on BCF branches D.10, B.2, C.4, D.5 with the second
/// exponents in the order D.10, B.2, D.5, C.4.
pub fn branch_position(tree: Tree, e: u32, i: u32, k: u32) -> Result<FamilyLabel> {
    use FamilyKind::*;
    let even = i % 2 == 0;
    let (kind, n) = match (tree, k) {
        (Tree::Cf, 2) => (CfB16, 1),
        (Tree::Cf, 3) => (CfA1Twig, 1),
        (Tree::Cf, 4) => (CfA1Bicyclic, 1),
        (Tree::Cf, 5) => (CfA1Bicyclic, 2),
        (Tree::Cf, 6) => (CfB3, 1),
        (Tree::Cf, 7) => (CfA1Cyclic, 1),
        (Tree::Cf, 8) if even => (CfB3, 2),
        (Tree::Cf, 9) if even => (CfA1Cyclic, 2),
        (Tree::Bcf, 2) => (BcfD10, 1),
        (Tree::Bcf, 3) if !even => (BcfB2, 1),
        (Tree::Bcf, 4) if !even => (BcfC4, 1),
        (Tree::Bcf, 5) if !even => (BcfD5, 1),
        (Tree::Bcf, 3) => (BcfD10, 2),
        (Tree::Bcf, 4) => (BcfB2, 1),
        (Tree::Bcf, 5) => (BcfC4, 1),
        (Tree::Bcf, 6) => (BcfD5, 1),
        (Tree::Bcf, 7) => (BcfB2, 2),
        (Tree::Bcf, 8) => (BcfD5, 2),
        (Tree::Bcf, 9) => (BcfC4, 2),
        _ => return Err(bad(format!("no position {k} on {tree:?} branch {i}"))),
    };
    if tree == Tree::Bcf && k > 5 && !even {
        return Err(bad(format!("no position {k} on odd BCF branch {i}")));
    }
    FamilyLabel::new(kind, e, i + 3, n)
}

/// Position on an even BCF branch reached from CF position `t` by the
/// `j`-th step-1 descendant.
pub fn k_subscript(t: u32, j: u32) -> Result<u32> {
    Ok(match (t, j) {
        (2, 2 | 3) => j,
        (3, 2) => 4,
        (3, 3) => 7,
        (4, 2) => 5,
        (4, 3) => 9,
        (5, 2) => 6,
        (5, 3) => 8,
        _ => return Err(bad(format!("k is defined for t in 2..=5 and j in {{2, 3}}, got t = {t}, j = {j}"))),
    })
}

fn cf_kind_type(t: u32) -> Result<(NamedType, FamilyKind, u8)> {
    Ok(match t {
        2 => (NamedType::B16, FamilyKind::CfB16, 1),
        3 => (NamedType::A1, FamilyKind::CfA1Twig, 1),
        4 => (NamedType::A1, FamilyKind::CfA1Bicyclic, 1),
        5 => (NamedType::A1, FamilyKind::CfA1Bicyclic, 2),
        _ => return Err(bad(format!("t = {t} not in 2..=5"))),
    })
}

fn type_of(kind: FamilyKind) -> NamedType {
    NamedType::parse(kind.declared_type()).unwrap_or(NamedType::Unknown)
}

/// `M^(e)_{e0-2}` from `M^(e0)_{e0-2}` by `e - e0` exo steps of size 1.
pub fn a1_explicit(e0: u32, e: u32) -> Result<PathProgram> {
    if e0 < 3 || e < e0 {
        return Err(bad(format!("need 3 <= e0 <= e, got e0 = {e0}, e = {e}")));
    }
    let mut p = PathProgram::new(FamilyLabel::cf_mainline(e0, e0 - 2));
    for k in e0 + 1..=e {
        p = p.then(1, Selector::new(NamedType::A1, PropagationKind::Exo).target(FamilyLabel::cf_mainline(k, e0 - 2)));
    }
    Ok(p)
}

/// Cyclic-centre offside vertex `V^(e)_{e0-1, j+3}` after the exo chain.
pub fn b3a1_explicit(e0: u32, e: u32, j: u32) -> Result<PathProgram> {
    let top = if e0 % 2 == 1 { 4 } else { 6 };
    if !(3..=top).contains(&j) {
        return Err(bad(format!("j = {j} not in 3..={top}")));
    }
    let target = branch_position(Tree::Cf, e, e0 - 2, j + 3)?;
    let sel = Selector::new(type_of(target.kind), PropagationKind::Endo).centre(CentreShape::Cyclic).target(target);
    Ok(a1_explicit(e0, e)?.then(1, sel))
}

/// Bicyclic-centre offside vertex `V^(e)_{e0-1, t}`: one exo step of size 2
/// off the shock wave, then exo steps of size 1.
pub fn b16a1_explicit(e0: u32, e: u32, t: u32) -> Result<PathProgram> {
    if e0 < 3 || e < e0 + 1 {
        return Err(bad(format!("need e0 >= 3 and e > e0, got e0 = {e0}, e = {e}")));
    }
    let (ty, kind, n) = cf_kind_type(t)?;
    let mut p = PathProgram::new(FamilyLabel::cf_mainline(e0, e0 - 2));
    for k in e0 + 1..=e {
        let step = if k == e0 + 1 { 2 } else { 1 };
        let target = FamilyLabel::new(kind, k, e0 + 1, n)?;
        p = p.then(step, Selector::new(ty, PropagationKind::Exo).centre(CentreShape::Bicyclic).target(target));
    }
    Ok(p)
}

/// BCF mainline vertex `MM[e, e0-2]` at the end of the exo chain.
pub fn d10_explicit(e0: u32, e: u32) -> Result<PathProgram> {
    let sel = Selector::new(NamedType::D10Lower, PropagationKind::Endo).target(FamilyLabel::bcf_mainline(e, e0 - 2));
    Ok(a1_explicit(e0, e)?.then(1, sel))
}

/// BCF offside vertex over `V^(e)_{e0-1, t}`, reached by its `j`-th step-1
/// descendant; odd `e0` only allows `j = 2`.
pub fn bcf_offside_explicit(e0: u32, e: u32, t: u32, j: u32) -> Result<PathProgram> {
    let k = if e0 % 2 == 1 {
        if j != 2 {
            return Err(bad(format!("odd branches only have j = 2, got {j}")));
        }
        t
    } else {
        k_subscript(t, j)?
    };
    cf_kind_type(t)?;
    let target = branch_position(Tree::Bcf, e, e0 - 2, k)?;
    Ok(b16a1_explicit(e0, e, t)?.then(1, Selector::new(type_of(target.kind), PropagationKind::Endo).target(target)))
}

/// A program from `M^(3)_1` to the given vertex, following the shock-wave
/// case analysis of the propagation laws.
pub fn exhaustion_program(label: &FamilyLabel) -> Result<PathProgram> {
    use FamilyKind::*;
    let root = FamilyLabel::cf_mainline(3, 1);
    let (e, i) = (label.e, label.i());
    if *label == root {
        return Ok(PathProgram::new(root));
    }
    if e < 3 || label.kind == Class2B {
        return Err(bad(format!("{label} is not a descendant of {root}")));
    }
    let ty = type_of(label.kind);
    let cf = FamilyLabel::cf_mainline;
    let (from, step, kind) = match label.kind {
        CfMainline | CfB16 | CfA1Twig | CfA1Bicyclic => {
            if i + 1 >= e {
                (cf(e, i - 1), 1, PropagationKind::Endo)
            } else if i + 2 == e {
                (cf(e - 1, i - 1), 2, PropagationKind::Exo)
            } else {
                (FamilyLabel { e: e - 1, ..*label }, 1, PropagationKind::Exo)
            }
        }
        CfB3 | CfA1Cyclic => (cf(e, i - 1), 1, PropagationKind::Endo),
        BcfMainline | BcfD10 | BcfB2 | BcfC4 | BcfD5 => {
            if i >= e {
                (FamilyLabel::bcf_mainline(e, i - 1), 1, PropagationKind::Endo)
            } else if i + 1 == e {
                (cf(e, i - 1), 2, PropagationKind::Endo)
            } else {
                let (k, n) = bcf_source(label.kind).expect("BCF kind");
                (FamilyLabel::new(k, e, label.c, n)?, 1, PropagationKind::Endo)
            }
        }
        Class2B => unreachable!(),
    };
    let mut sel = Selector::new(ty, kind).target(*label);
    if let Some(c) = label.kind.declared_centre() {
        sel = sel.centre(c);
    }
    Ok(exhaustion_program(&from)?.then(step, sel))
}

/// Every CF and BCF vertex with `3 <= e <= e_max` and `i <= i_max` is
/// reached from `M^(3)_1`.
pub fn verify_exhaustion(e_max: u32, i_max: u32, opts: &PathOptions) -> Result<Report> {
    let mut r = Report::new("exhaustion");
    let mut labels = Vec::new();
    for e in 3..=e_max {
        for tree in [Tree::Cf, Tree::Bcf] {
            for i in 1..=i_max {
                labels.push(super::mainline(tree, e, i));
                if i >= 2 {
                    labels.extend(branch_children(tree, e, i - 1).into_iter().skip(1));
                }
            }
        }
    }
    let mut ev = PathEvaluator::new(*opts);
    for l in labels {
        let program = exhaustion_program(&l)?;
        match ev.evaluate(&program) {
            Ok(v) if program.steps.is_empty() => {
                let m = compare(&v.group, &construct(&l)?, opts.iso_cap);
                r.push("exhaustion", l, m != Match::Different, format!("{m} (start vertex)"));
            }
            // the last selector already matched the vertex against `l`
            Ok(v) => r.push("exhaustion", l, v.family == Some(l), format!("reached via {program}")),
            Err(err) => r.push("exhaustion", l, false, format!("{err} via {program}")),
        }
    }
    Ok(r)
}

/// Program for the BCF vertex over the `n`-th excited state: from
/// `M^(4)_2` by `2n` singular steps along the mainline, a step of size 2 to
/// the CF vertex of kind `t`, exo steps up to `e`, and the `j`-th endo step
/// into the BCF tree.
pub fn excited_state_metabelianization(n: u32, e: u32, t: u32, j: u32) -> Result<PathProgram> {
    if ![2, 4, 5].contains(&t) || ![2, 3].contains(&j) {
        return Err(bad(format!("need t in {{2, 4, 5}} and j in {{2, 3}}, got t = {t}, j = {j}")));
    }
    if e < 5 + 2 * n {
        return Err(bad(format!("need e >= {}, got {e}", 5 + 2 * n)));
    }
    let mut p = PathProgram::new(FamilyLabel::cf_mainline(4, 2));
    for k in 1..=2 * n {
        let target = FamilyLabel::cf_mainline(4 + k, 2 + k);
        p = p.then(2, Selector::new(NamedType::A1, PropagationKind::Exo).target(target));
    }
    let (ty, kind, m) = cf_kind_type(t)?;
    let c = 5 + 2 * n;
    for k in c..=e {
        let step = if k == c { 2 } else { 1 };
        let target = FamilyLabel::new(kind, k, c, m)?;
        p = p.then(step, Selector::new(ty, PropagationKind::Exo).centre(CentreShape::Bicyclic).target(target));
    }
    let target = branch_position(Tree::Bcf, e, c - 3, k_subscript(t, j)?)?;
    Ok(p.then(1, Selector::new(type_of(target.kind), PropagationKind::Endo).target(target)))
}
