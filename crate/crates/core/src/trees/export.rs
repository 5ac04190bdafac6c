//! JSON and DOT renderings of the depth-pruned trees.

use super::{build_branch, Branch, TreeVertex};
use crate::error::Result;
use crate::families::Tree;
use crate::pcover::{propagation_kind, PropagationKind};
use crate::series::ScalarInvariants;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct VertexReport {
    pub id: String,
    pub invariants: ScalarInvariants,
    pub named_type: String,
    pub kappa: String,
    pub kappa_canonical: String,
    pub alpha: [Vec<u32>; 4],
    pub rho: [usize; 4],
    pub centre: String,
    pub depth: u32,
    pub shock: Option<String>,
    pub mainline: bool,
}

impl VertexReport {
    pub fn new(v: &TreeVertex) -> Self {
        VertexReport {
            id: v.label.clone(),
            invariants: v.invariants,
            named_type: v.named_type().to_string(),
            kappa: v.pattern.kappa.to_string(),
            kappa_canonical: v.pattern.kappa_canonical.to_string(),
            alpha: v.pattern.alpha.clone(),
            rho: v.pattern.rho,
            centre: v.centre.to_string(),
            depth: v.depth,
            shock: v.shock.map(|s| s.to_string()),
            mainline: v.family.map_or(false, |l| l.kind.is_mainline()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeReport {
    pub from: String,
    pub to: String,
    pub step: u32,
    pub kind: PropagationKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeReport {
    pub schema: u32,
    pub tree: String,
    pub e: u32,
    pub vertices: Vec<VertexReport>,
    pub edges: Vec<EdgeReport>,
}

fn edge(parent: &TreeVertex, child: &TreeVertex) -> EdgeReport {
    EdgeReport {
        from: parent.label.clone(),
        to: child.label.clone(),
        step: child.invariants.lo - parent.invariants.lo,
        kind: propagation_kind(&child.group, &parent.group),
    }
}

/// Branches `1..=i_max` of a tree, with mainline and offside edges.
pub fn tree_report(tree: Tree, e: u32, i_max: u32) -> Result<TreeReport> {
    let branches: Vec<Branch> = (1..=i_max).into_par_iter().map(|i| build_branch(tree, e, i)).collect::<Result<_>>()?;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (k, b) in branches.iter().enumerate() {
        vertices.push(VertexReport::new(&b.root));
        if let Some(next) = branches.get(k + 1) {
            edges.push(edge(&b.root, &next.root));
        }
        for v in &b.offside {
            vertices.push(VertexReport::new(v));
            edges.push(edge(&b.root, v));
        }
    }
    Ok(TreeReport { schema: SCHEMA_VERSION, tree: format!("{tree:?}"), e, vertices, edges })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// Graphviz rendering: one rank per class, mainline drawn bold.
pub fn to_dot(report: &TreeReport) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(&format!("{} e={}", report.tree, report.e))).unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    writeln!(out, "  node [shape=box, fontsize=10];").unwrap();
    for v in &report.vertices {
        let label = format!("{}\\n{} ({})", v.id, v.named_type, v.kappa);
        let style = if v.mainline { ", style=bold, penwidth=2" } else { "" };
        writeln!(out, "  {} [label={}{}];", quote(&v.id), quote(&label), style).unwrap();
    }
    let mut classes: Vec<u32> = report.vertices.iter().map(|v| v.invariants.cl).collect();
    classes.sort_unstable();
    classes.dedup();
    for c in classes {
        let ids: Vec<String> =
            report.vertices.iter().filter(|v| v.invariants.cl == c).map(|v| quote(&v.id)).collect();
        writeln!(out, "  {{ rank=same; {} }}", ids.join("; ")).unwrap();
    }
    for e in &report.edges {
        let main = report.vertices.iter().any(|v| v.id == e.to && v.mainline);
        let style = if main { ", style=bold, penwidth=2" } else { "" };
        writeln!(out, "  {} -> {} [label={}{}];", quote(&e.from), quote(&e.to), quote(&e.kind.to_string()), style).unwrap();
    }
    out.push_str("}\n");
    out
}
