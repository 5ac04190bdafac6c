use super::{Exps, PcPresentation};
use crate::error::{Error, Result};

/// A subgroup given by an induced polycyclic sequence: one element per
/// leading depth, leading exponent 1, sorted by depth.
#[derive(Clone, Debug)]
pub struct Subgroup {
    n: usize,
    slots: Vec<Option<usize>>,
    gens: Vec<Exps>,
    pows: Vec<Vec<Exps>>,
}

fn inv_mod(a: u8, p: u8) -> u8 {
    (1..p).find(|&b| (a as u32 * b as u32) % p as u32 == 1).expect("unit")
}

struct Table {
    slots: Vec<Option<(Exps, Vec<Exps>)>>,
}

impl PcPresentation {
    fn powers_of(&self, t: &[u8]) -> Vec<Exps> {
        let mut v = vec![self.identity(), t.to_vec()];
        for k in 2..self.prime as usize {
            let next = self.mul(&v[k - 1], t);
            v.push(next);
        }
        v
    }

    fn sift_new(&self, table: &Table, mut g: Exps) -> Option<Exps> {
        let p = self.prime;
        loop {
            let d = PcPresentation::depth(&g);
            if d == g.len() {
                return None;
            }
            match &table.slots[d] {
                Some((_, pows)) => {
                    let a = g[d];
                    g = self.mul(&pows[(p - a) as usize], &g);
                }
                None => {
                    let a = g[d];
                    if a != 1 {
                        g = self.pow(&g, inv_mod(a, p) as u64);
                    }
                    return Some(g);
                }
            }
        }
    }

    /// Smallest subgroup containing `gens` and normalized by `conjugators`.
    pub fn closure_under(&self, gens: &[Exps], conjugators: &[Exps]) -> Subgroup {
        let n = self.len();
        let mut table = Table { slots: vec![None; n] };
        let mut inserted: Vec<Exps> = Vec::new();
        let mut queue: Vec<Exps> = gens.iter().rev().cloned().collect();
        while let Some(g) = queue.pop() {
            if let Some(r) = self.sift_new(&table, g) {
                let d = PcPresentation::depth(&r);
                queue.push(self.pth_power(&r));
                for t in &inserted {
                    queue.push(self.comm(&r, t));
                }
                for c in conjugators {
                    queue.push(self.comm(&r, c));
                }
                let pows = self.powers_of(&r);
                table.slots[d] = Some((r.clone(), pows));
                inserted.push(r);
            }
        }
        let mut gens = Vec::new();
        let mut pows = Vec::new();
        let mut slots = vec![None; n];
        for (d, s) in table.slots.into_iter().enumerate() {
            if let Some((g, pw)) = s {
                slots[d] = Some(gens.len());
                gens.push(g);
                pows.push(pw);
            }
        }
        Subgroup { n, slots, gens, pows }
    }

    pub fn closure(&self, gens: &[Exps]) -> Subgroup {
        self.closure_under(gens, &[])
    }

    pub fn normal_closure(&self, gens: &[Exps]) -> Subgroup {
        let pcgs: Vec<Exps> = (0..self.len()).map(|i| self.gen(i)).collect();
        self.closure_under(gens, &pcgs)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.closure(&[])
    }

    pub fn whole_group(&self) -> Subgroup {
        let n = self.len();
        let gens: Vec<Exps> = (0..n).map(|i| self.gen(i)).collect();
        let pows = gens.iter().map(|g| self.powers_of(g)).collect();
        Subgroup { n, slots: (0..n).map(Some).collect(), gens, pows }
    }

    /// Subgroup from an induced sequence that is already known to be closed.
    pub fn subgroup_from_induced(&self, mut gens: Vec<Exps>) -> Subgroup {
        gens.sort_by_key(|g| PcPresentation::depth(g));
        let n = self.len();
        let mut slots = vec![None; n];
        for (k, g) in gens.iter().enumerate() {
            slots[PcPresentation::depth(g)] = Some(k);
        }
        let pows = gens.iter().map(|g| self.powers_of(g)).collect();
        Subgroup { n, slots, gens, pows }
    }
}

impl Subgroup {
    pub fn log_order(&self) -> u32 {
        self.gens.len() as u32
    }
    pub fn gens(&self) -> &[Exps] {
        &self.gens
    }
    /// Leading depths of the induced sequence, ascending.
    pub fn depths(&self) -> Vec<usize> {
        self.gens.iter().map(|g| PcPresentation::depth(g)).collect()
    }
    pub fn has_depth(&self, d: usize) -> bool {
        self.slots[d].is_some()
    }
    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    /// Canonical representative of the right coset `self * g`: the unique
    /// element of the coset with zero exponents at this subgroup's depths.
    pub fn sift(&self, pres: &PcPresentation, g: &[u8]) -> Exps {
        let p = pres.prime();
        let mut g = g.to_vec();
        for d in 0..self.n {
            if g[d] == 0 {
                continue;
            }
            if let Some(k) = self.slots[d] {
                let a = g[d];
                g = pres.mul(&self.pows[k][(p - a) as usize], &g);
            }
        }
        g
    }

    /// Exponents of `g` with respect to the induced sequence, if `g` lies in
    /// the subgroup.
    pub fn coordinates(&self, pres: &PcPresentation, g: &[u8]) -> Option<Vec<u8>> {
        let mut g = g.to_vec();
        let mut coords = vec![0u8; self.gens.len()];
        for d in 0..self.n {
            if g[d] == 0 {
                continue;
            }
            let k = self.slots[d]?;
            let a = g[d];
            coords[k] = a;
            g = pres.mul(&pres.inverse(&self.pows[k][a as usize]), &g);
        }
        Some(coords)
    }

    pub fn contains(&self, pres: &PcPresentation, g: &[u8]) -> bool {
        self.coordinates(pres, g).is_some()
    }

    pub fn is_subgroup_of(&self, pres: &PcPresentation, other: &Subgroup) -> bool {
        self.gens.iter().all(|g| other.contains(pres, g))
    }

    pub fn same_as(&self, pres: &PcPresentation, other: &Subgroup) -> bool {
        self.log_order() == other.log_order() && self.is_subgroup_of(pres, other)
    }

    pub fn is_normal(&self, pres: &PcPresentation) -> bool {
        (0..pres.len()).all(|i| {
            let c = pres.gen(i);
            self.gens.iter().all(|g| self.contains(pres, &pres.conj(g, &c)))
        })
    }

    /// Element with the given coordinates.
    pub fn element(&self, pres: &PcPresentation, coords: &[u8]) -> Exps {
        let mut e = pres.identity();
        for (k, &a) in coords.iter().enumerate() {
            if a != 0 {
                pres.mul_assign(&mut e, &self.pows[k][a as usize]);
            }
        }
        e
    }

    pub fn elements(&self, pres: &PcPresentation, cap_log: u32) -> Result<Vec<Exps>> {
        if self.log_order() > cap_log {
            return Err(Error::CapExceeded {
                what: "subgroup enumeration".into(),
                log_order: self.log_order(),
                cap: cap_log,
            });
        }
        let mut out = vec![pres.identity()];
        for k in (0..self.gens.len()).rev() {
            let mut next = Vec::with_capacity(out.len() * pres.prime() as usize);
            for a in 0..pres.prime() as usize {
                for e in &out {
                    next.push(pres.mul(&self.pows[k][a], e));
                }
            }
            out = next;
        }
        out.sort();
        Ok(out)
    }
}
