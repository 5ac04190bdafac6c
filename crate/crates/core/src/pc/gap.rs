//! Export to a GAP-readable finitely presented group.

use super::PcPresentation;

fn gap_word(e: &[u8]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| if a == 1 { format!("F.{}", i + 1) } else { format!("F.{}^{}", i + 1, a) })
        .collect();
    if parts.is_empty() {
        "One(F)".into()
    } else {
        parts.join("*")
    }
}

/// GAP source defining `G` as `F / relators`; generator `F.k` is the
/// k-th pc generator, named in the leading comment.
pub fn export_gap(pres: &PcPresentation, var: &str) -> String {
    let n = pres.len();
    let mut out = String::new();
    out.push_str(&format!("# pc generators: {}\n", pres.names().join(", ")));
    out.push_str(&format!("F := FreeGroup({});;\n", n));
    let mut rels = Vec::new();
    for i in 0..n {
        rels.push(format!("F.{}^{} / ({})", i + 1, pres.prime(), gap_word(pres.power_rhs(i))));
    }
    for j in 0..n {
        for i in 0..j {
            if !pres.commutes(i, j) {
                rels.push(format!(
                    "F.{}^F.{} / ({})",
                    j + 1,
                    i + 1,
                    gap_word(pres.conjugate_rhs(j, i))
                ));
            } else {
                rels.push(format!("Comm(F.{}, F.{})", j + 1, i + 1));
            }
        }
    }
    if n == 0 {
        out.push_str(&format!("{var} := F;;\n"));
        return out;
    }
    out.push_str(&format!("{var} := F / [\n  {}\n];;\n", rels.join(",\n  ")));
    out
}
