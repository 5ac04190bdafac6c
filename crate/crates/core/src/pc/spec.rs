//! Structured (JSON) presentation specs.
//!
//! ```json
//! {"prime": 3,
//!  "gens": [{"name": "x", "rel_order": 9}, {"name": "y", "rel_order": 3}, {"name": "s2", "rel_order": 3}],
//!  "powers": {},
//!  "conjugates": {"y^x": "y*s2"}}
//! ```
//!
//! Words are products of `name` or `name^k` factors separated by `*` or
//! spaces; `1` or the empty string is the identity. A missing power relation
//! means `g^{rel_order} = 1`, a missing conjugate means the pair commutes.

use super::{Exps, PcPresentation};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub name: String,
    pub rel_order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub prime: u32,
    pub gens: Vec<GenSpec>,
    #[serde(default)]
    pub powers: BTreeMap<String, String>,
    #[serde(default)]
    pub conjugates: BTreeMap<String, String>,
}

type SpecWord = Vec<(usize, i64)>;

fn parse_word(text: &str, index: &BTreeMap<&str, usize>) -> Result<SpecWord> {
    let mut out = Vec::new();
    for tok in text.split(|c: char| c == '*' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e
                    .trim_matches(|c| c == '(' || c == ')')
                    .parse()
                    .map_err(|_| Error::MalformedSpec(format!("bad exponent in {tok:?}")))?;
                (n, e)
            }
            None => (tok, 1),
        };
        let g = *index
            .get(name)
            .ok_or_else(|| Error::MalformedSpec(format!("dangling generator {name:?}")))?;
        out.push((g, exp));
    }
    Ok(out)
}

fn log_p(order: u32, p: u32) -> Option<u32> {
    let mut k = 0;
    let mut o = order;
    if o < p {
        return None;
    }
    while o > 1 {
        if o % p != 0 {
            return None;
        }
        o /= p;
        k += 1;
    }
    Some(k)
}

impl PresentationSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

/// Builds a consistent presentation with prime relative orders.
///
/// A generator `g` of relative order `p^k` becomes the chain
/// `g, g_p, g_p2, ...` of `k` generators of relative order `p`, where
/// `g_pm` stands for `g^(p^m)`.
pub fn build_presentation(spec: &PresentationSpec) -> Result<PcPresentation> {
    let p = spec.prime;
    if !super::is_prime(p) || p > 127 {
        return Err(Error::MalformedSpec(format!("prime {p} unsupported")));
    }
    if spec.gens.is_empty() {
        return Err(Error::MalformedSpec("no generators".into()));
    }
    let mut index = BTreeMap::new();
    let mut levels = Vec::new();
    for (i, g) in spec.gens.iter().enumerate() {
        if index.insert(g.name.as_str(), i).is_some() {
            return Err(Error::MalformedSpec(format!("duplicate generator {}", g.name)));
        }
        let k = log_p(g.rel_order, p).ok_or_else(|| {
            Error::MalformedSpec(format!("relative order {} of {} is not a power of {p}", g.rel_order, g.name))
        })?;
        levels.push(k);
    }
    let m = spec.gens.len();
    let mut power_words: Vec<SpecWord> = vec![Vec::new(); m];
    for (lhs, rhs) in &spec.powers {
        let i = *index
            .get(lhs.as_str())
            .ok_or_else(|| Error::MalformedSpec(format!("dangling generator {lhs:?}")))?;
        let w = parse_word(rhs, &index)?;
        if w.iter().any(|&(g, _)| g <= i) {
            return Err(Error::MalformedSpec(format!("power relation of {lhs} must use later generators")));
        }
        power_words[i] = w;
    }
    let mut conj_words: BTreeMap<(usize, usize), SpecWord> = BTreeMap::new();
    for (lhs, rhs) in &spec.conjugates {
        let (a, b) = lhs
            .split_once('^')
            .ok_or_else(|| Error::MalformedSpec(format!("conjugate key {lhs:?} is not a^b")))?;
        let j = *index
            .get(a)
            .ok_or_else(|| Error::MalformedSpec(format!("dangling generator {a:?}")))?;
        let i = *index
            .get(b)
            .ok_or_else(|| Error::MalformedSpec(format!("dangling generator {b:?}")))?;
        if j <= i {
            return Err(Error::MalformedSpec(format!("conjugate {lhs} needs a later generator on the left")));
        }
        let w = parse_word(rhs, &index)?;
        if w.iter().any(|&(g, _)| g <= i) {
            return Err(Error::MalformedSpec(format!("conjugate {lhs} must use generators after {b}")));
        }
        conj_words.insert((j, i), w);
    }

    // Build bottom-up: `cur` presents the subgroup generated by spec
    // generators j+1.. after refinement.
    let prime = p as u8;
    let mut cur = PcPresentation::from_parts(prime, vec![], vec![], vec![], vec![])?;
    let mut start = vec![0usize; m];
    let mut origin: Vec<(usize, u32)> = Vec::new();
    for j in (0..m).rev() {
        let k = levels[j] as usize;
        let l = cur.len();
        for s in start.iter_mut().skip(j + 1) {
            *s += k;
        }
        start[j] = 0;
        let to_cur = |w: &SpecWord, cur: &PcPresentation| -> Exps {
            let mut e = cur.identity();
            for &(g, a) in w {
                let base = cur.gen(start[g] - k);
                let b = if a < 0 { cur.inverse(&base) } else { base };
                let f = cur.pow(&b, a.unsigned_abs());
                cur.mul_assign(&mut e, &f);
            }
            e
        };
        let embed = |e: &[u8]| -> Exps {
            let mut v = vec![0u8; k];
            v.extend_from_slice(e);
            v
        };
        // conjugation by the spec generator j on cur
        let mut phi: Vec<Exps> = Vec::with_capacity(l);
        for &(g, lvl) in &origin {
            let base = match conj_words.get(&(g, j)) {
                Some(w) => to_cur(w, &cur),
                None => cur.gen(start[g] - k),
            };
            phi.push(cur.pow(&base, (p as u64).pow(lvl)));
        }
        let apply = |map: &[Exps], v: &[u8], cur: &PcPresentation| -> Exps {
            let mut e = cur.identity();
            for (t, &a) in v.iter().enumerate() {
                for _ in 0..a {
                    cur.mul_assign(&mut e, &map[t]);
                }
            }
            e
        };
        let mut psis = vec![phi];
        for _ in 1..k {
            let last = psis.last().unwrap();
            let next: Vec<Exps> = (0..l)
                .map(|t| {
                    let mut v = cur.gen(t);
                    for _ in 0..p {
                        v = apply(last, &v, &cur);
                    }
                    v
                })
                .collect();
            psis.push(next);
        }
        let n = k + l;
        let mut names = Vec::with_capacity(n);
        for a in 0..k {
            let base = &spec.gens[j].name;
            names.push(if a == 0 { base.clone() } else { format!("{base}_{}", (p as u64).pow(a as u32)) });
        }
        names.extend(cur.names().iter().cloned());
        let mut powers = Vec::with_capacity(n);
        for a in 0..k {
            if a + 1 < k {
                let mut e = vec![0u8; n];
                e[a + 1] = 1;
                powers.push(e);
            } else {
                powers.push(embed(&to_cur(&power_words[j], &cur)));
            }
        }
        for t in 0..l {
            powers.push(embed(cur.power_rhs(t)));
        }
        let mut conjugates: Vec<Vec<Exps>> = Vec::with_capacity(n);
        for jj in 0..n {
            let mut row = Vec::with_capacity(jj);
            for ii in 0..jj {
                let e = if jj < k {
                    let mut e = vec![0u8; n];
                    e[jj] = 1;
                    e
                } else if ii < k {
                    embed(&psis[ii][jj - k])
                } else {
                    embed(cur.conjugate_rhs(jj - k, ii - k))
                };
                row.push(e);
            }
            conjugates.push(row);
        }
        let defs = vec![None; n];
        cur = PcPresentation::from_parts(prime, names, powers, conjugates, defs).map_err(|e| match e {
            Error::MalformedSpec(msg) => Error::InconsistentPresentation(msg),
            other => other,
        })?;
        let mut new_origin: Vec<(usize, u32)> = (0..k).map(|a| (j, a as u32)).collect();
        new_origin.extend(origin);
        origin = new_origin;
    }
    let report = cur.check_consistency();
    if let Some(f) = report.failure {
        return Err(Error::InconsistentPresentation(f.describe(&cur)));
    }
    Ok(cur)
}

/// Spec describing `pres` generator by generator (all relative orders prime).
pub fn to_spec(pres: &PcPresentation) -> PresentationSpec {
    let gens = pres
        .names()
        .iter()
        .map(|n| GenSpec { name: n.clone(), rel_order: pres.prime() as u32 })
        .collect();
    let mut powers = BTreeMap::new();
    let mut conjugates = BTreeMap::new();
    for i in 0..pres.len() {
        if !PcPresentation::is_identity(pres.power_rhs(i)) {
            powers.insert(pres.names()[i].clone(), pres.format(pres.power_rhs(i)));
        }
        for j in i + 1..pres.len() {
            if !pres.commutes(i, j) {
                conjugates.insert(
                    format!("{}^{}", pres.names()[j], pres.names()[i]),
                    pres.format(pres.conjugate_rhs(j, i)),
                );
            }
        }
    }
    PresentationSpec { prime: pres.prime() as u32, gens, powers, conjugates }
}
