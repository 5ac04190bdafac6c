//! Polycyclic presentations of finite p-groups and collection to normal form.
//!
//! Every presentation stored here has prime relative orders. Specs with
//! relative orders p^k are refined into chains of prime steps by
//! [`spec::build_presentation`].

mod consistency;
pub mod gap;
mod quotient;
pub mod spec;
mod subgroup;

pub use consistency::{ConsistencyFailure, ConsistencyReport};
pub use quotient::Projection;
pub use subgroup::Subgroup;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicU64, Ordering};

/// Hard limit on the number of pc generators (tails included).
pub const MAX_GENS: usize = 192;

/// Normal-form exponent vector.
pub type Exps = Vec<u8>;

type Word = Vec<(u16, u8)>;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// How a generator was introduced from earlier ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Definition {
    /// `g_k` occurs in the power relation of `g_i`.
    Power(usize),
    /// `g_k` occurs in the conjugate relation `g_j^{g_i}`, `j > i`.
    Conjugate(usize, usize),
}

#[derive(Clone, Debug)]
pub struct PcPresentation {
    id: u64,
    prime: u8,
    names: Vec<String>,
    weights: Vec<u32>,
    powers: Vec<Exps>,
    conjugates: Vec<Vec<Exps>>,
    definitions: Vec<Option<Definition>>,
    power_words: Vec<Word>,
    conj_words: Vec<Vec<Word>>,
    trivial_conj: Vec<Vec<bool>>,
}

/// An element tied to the presentation it was created in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pres_id: u64,
    exps: Exps,
}

impl GroupElement {
    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }
}

fn word_of(e: &[u8]) -> Word {
    e.iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| (i as u16, a))
        .collect()
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl PcPresentation {
    /// Assembles a presentation from normal-form right-hand sides.
    ///
    /// `conjugates[j][i]` (for `i < j`) is the normal form of `g_j^{g_i}` and
    /// must read `g_j` times generators beyond `j`. Consistency is not checked
    /// here; see [`PcPresentation::check_consistency`].
    pub fn from_parts(
        prime: u8,
        names: Vec<String>,
        powers: Vec<Exps>,
        conjugates: Vec<Vec<Exps>>,
        definitions: Vec<Option<Definition>>,
    ) -> Result<Self> {
        let n = names.len();
        if !is_prime(prime as u32) {
            return Err(Error::MalformedSpec(format!("{prime} is not prime")));
        }
        if n > MAX_GENS {
            return Err(Error::MalformedSpec(format!(
                "{n} generators exceed the limit {MAX_GENS}"
            )));
        }
        if powers.len() != n || conjugates.len() != n || definitions.len() != n {
            return Err(Error::MalformedSpec("relation tables have wrong length".into()));
        }
        for (i, pw) in powers.iter().enumerate() {
            if pw.len() != n || pw.iter().any(|&a| a >= prime) {
                return Err(Error::MalformedSpec(format!("power relation of {} malformed", names[i])));
            }
            if pw[..=i].iter().any(|&a| a != 0) {
                return Err(Error::MalformedSpec(format!(
                    "power relation of {} involves an earlier generator",
                    names[i]
                )));
            }
        }
        for j in 0..n {
            if conjugates[j].len() != j {
                return Err(Error::MalformedSpec("conjugate table has wrong shape".into()));
            }
            for i in 0..j {
                let c = &conjugates[j][i];
                if c.len() != n || c.iter().any(|&a| a >= prime) {
                    return Err(Error::MalformedSpec(format!(
                        "conjugate {}^{} malformed",
                        names[j], names[i]
                    )));
                }
                if c[..j].iter().any(|&a| a != 0) || c[j] != 1 {
                    return Err(Error::MalformedSpec(format!(
                        "conjugate {}^{} is not {} times later generators",
                        names[j], names[i], names[j]
                    )));
                }
            }
        }
        let mut weights = vec![1u32; n];
        for k in 0..n {
            weights[k] = match definitions[k] {
                None => 1,
                Some(Definition::Power(i)) if i < k => weights[i] + 1,
                Some(Definition::Conjugate(j, i)) if i < j && j < k => weights[i] + weights[j],
                Some(d) => {
                    return Err(Error::MalformedSpec(format!(
                        "definition {d:?} of {} refers to later generators",
                        names[k]
                    )))
                }
            };
        }
        let power_words = powers.iter().map(|e| word_of(e)).collect();
        let conj_words = conjugates
            .iter()
            .map(|row| row.iter().map(|e| word_of(e)).collect())
            .collect();
        let mut trivial_conj = vec![vec![true; n]; n];
        for j in 0..n {
            for i in 0..j {
                let c = &conjugates[j][i];
                let trivial = c.iter().enumerate().all(|(k, &a)| a == (k == j) as u8);
                trivial_conj[i][j] = trivial;
            }
        }
        Ok(PcPresentation {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            prime,
            names,
            weights,
            powers,
            conjugates,
            definitions,
            power_words,
            conj_words,
            trivial_conj,
        })
    }

    /// Like [`from_parts`](Self::from_parts) but rejects inconsistent input.
    pub fn from_parts_checked(
        prime: u8,
        names: Vec<String>,
        powers: Vec<Exps>,
        conjugates: Vec<Vec<Exps>>,
        definitions: Vec<Option<Definition>>,
    ) -> Result<Self> {
        let p = Self::from_parts(prime, names, powers, conjugates, definitions)?;
        let report = p.check_consistency();
        match report.failure {
            None => Ok(p),
            Some(f) => Err(Error::InconsistentPresentation(f.describe(&p))),
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }
    pub fn prime(&self) -> u8 {
        self.prime
    }
    /// Number of pc generators, which is also log_p of the order.
    pub fn len(&self) -> usize {
        self.names.len()
    }
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
    pub fn log_order(&self) -> u32 {
        self.names.len() as u32
    }
    pub fn order(&self) -> u128 {
        (self.prime as u128).pow(self.log_order())
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
    pub fn definitions(&self) -> &[Option<Definition>] {
        &self.definitions
    }
    pub fn power_rhs(&self, i: usize) -> &[u8] {
        &self.powers[i]
    }
    pub fn conjugate_rhs(&self, j: usize, i: usize) -> &[u8] {
        &self.conjugates[j][i]
    }
    pub fn commutes(&self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        a == b || self.trivial_conj[a][b]
    }

    pub fn identity(&self) -> Exps {
        vec![0; self.len()]
    }
    pub fn gen(&self, i: usize) -> Exps {
        let mut e = self.identity();
        e[i] = 1;
        e
    }
    pub fn is_identity(e: &[u8]) -> bool {
        e.iter().all(|&a| a == 0)
    }

    /// Index of the first non-zero exponent, or `len()` for the identity.
    pub fn depth(e: &[u8]) -> usize {
        e.iter().position(|&a| a != 0).unwrap_or(e.len())
    }

    /// `e := e * g_i` by collection from the left.
    pub fn mul_gen(&self, e: &mut [u8], i: usize) {
        let n = e.len();
        let p = self.prime;
        let mut blocking = false;
        let mut any_after = false;
        for j in i + 1..n {
            if e[j] != 0 {
                any_after = true;
                if !self.trivial_conj[i][j] {
                    blocking = true;
                    break;
                }
            }
        }
        if !blocking {
            if e[i] + 1 < p {
                e[i] += 1;
                return;
            }
            e[i] = 0;
            if self.power_words[i].is_empty() {
                return;
            }
            if !any_after {
                self.mul_word(e, &self.power_words[i]);
                return;
            }
            let mut suffix = [0u8; MAX_GENS];
            for j in i + 1..n {
                suffix[j] = e[j];
                e[j] = 0;
            }
            self.mul_word(e, &self.power_words[i]);
            for j in i + 1..n {
                for _ in 0..suffix[j] {
                    self.mul_gen(e, j);
                }
            }
            return;
        }
        let mut suffix = [0u8; MAX_GENS];
        for j in i + 1..n {
            suffix[j] = e[j];
            e[j] = 0;
        }
        if e[i] + 1 < p {
            e[i] += 1;
        } else {
            e[i] = 0;
            self.mul_word(e, &self.power_words[i]);
        }
        for j in i + 1..n {
            let a = suffix[j];
            if a == 0 {
                continue;
            }
            if self.trivial_conj[i][j] {
                for _ in 0..a {
                    self.mul_gen(e, j);
                }
            } else {
                for _ in 0..a {
                    self.mul_word(e, &self.conj_words[j][i]);
                }
            }
        }
    }

    fn mul_word(&self, e: &mut [u8], w: &Word) {
        for &(g, a) in w {
            for _ in 0..a {
                self.mul_gen(e, g as usize);
            }
        }
    }

    /// `e := e * b` for a normal form `b`.
    pub fn mul_assign(&self, e: &mut [u8], b: &[u8]) {
        for (k, &a) in b.iter().enumerate() {
            for _ in 0..a {
                self.mul_gen(e, k);
            }
        }
    }

    pub fn mul(&self, a: &[u8], b: &[u8]) -> Exps {
        let mut e = a.to_vec();
        self.mul_assign(&mut e, b);
        e
    }

    pub fn inverse(&self, a: &[u8]) -> Exps {
        let p = self.prime;
        let mut z = a.to_vec();
        let mut r = self.identity();
        for i in 0..z.len() {
            if z[i] != 0 {
                let b = p - z[i];
                for _ in 0..b {
                    self.mul_gen(&mut z, i);
                }
                r[i] = b;
            }
        }
        r
    }

    pub fn pow(&self, a: &[u8], mut k: u64) -> Exps {
        let mut result = self.identity();
        let mut base = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// p-th power, by repeated multiplication.
    pub fn pth_power(&self, a: &[u8]) -> Exps {
        let mut e = a.to_vec();
        for _ in 1..self.prime {
            self.mul_assign(&mut e, a);
        }
        e
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn comm(&self, a: &[u8], b: &[u8]) -> Exps {
        let mut e = self.inverse(&self.mul(b, a));
        self.mul_assign(&mut e, a);
        self.mul_assign(&mut e, b);
        e
    }

    /// `a^b = b^{-1} a b`.
    pub fn conj(&self, a: &[u8], b: &[u8]) -> Exps {
        let mut e = self.inverse(b);
        self.mul_assign(&mut e, a);
        self.mul_assign(&mut e, b);
        e
    }

    /// Order of `a` (a power of p).
    pub fn element_order(&self, a: &[u8]) -> u64 {
        let mut e = a.to_vec();
        let mut ord = 1u64;
        while !Self::is_identity(&e) {
            e = self.pth_power(&e);
            ord *= self.prime as u64;
        }
        ord
    }

    /// Collects a word of signed 1-based generator indices (`-k` is `g_k^{-1}`).
    pub fn collect(&self, word: &[i32]) -> Result<Exps> {
        let n = self.len() as i32;
        let mut e = self.identity();
        for &l in word {
            if l == 0 || l.abs() > n {
                return Err(Error::MalformedSpec(format!("letter {l} out of range")));
            }
            let g = (l.unsigned_abs() - 1) as usize;
            if l > 0 {
                self.mul_gen(&mut e, g);
            } else {
                let inv = self.inverse(&self.gen(g));
                self.mul_assign(&mut e, &inv);
            }
        }
        Ok(e)
    }

    /// Wraps a normal form as an element of this presentation.
    pub fn element(&self, exps: Exps) -> Result<GroupElement> {
        if exps.len() != self.len() || exps.iter().any(|&a| a >= self.prime) {
            return Err(Error::MalformedSpec("exponent vector is not a normal form".into()));
        }
        Ok(GroupElement { pres_id: self.id, exps })
    }

    fn own(&self, a: &GroupElement) -> Result<()> {
        if a.pres_id == self.id {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.own(a)?;
        self.own(b)?;
        Ok(GroupElement { pres_id: self.id, exps: self.mul(&a.exps, &b.exps) })
    }
    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement> {
        self.own(a)?;
        Ok(GroupElement { pres_id: self.id, exps: self.inverse(&a.exps) })
    }
    pub fn power(&self, a: &GroupElement, k: i64) -> Result<GroupElement> {
        self.own(a)?;
        let base = if k < 0 { self.inverse(&a.exps) } else { a.exps.clone() };
        Ok(GroupElement { pres_id: self.id, exps: self.pow(&base, k.unsigned_abs()) })
    }
    pub fn commutator(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.own(a)?;
        self.own(b)?;
        Ok(GroupElement { pres_id: self.id, exps: self.comm(&a.exps, &b.exps) })
    }

    /// Position of a normal form in the mixed-radix enumeration order.
    pub fn index_of(&self, e: &[u8]) -> usize {
        e.iter().fold(0usize, |acc, &a| acc * self.prime as usize + a as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> Exps {
        let p = self.prime as usize;
        let mut e = self.identity();
        for k in (0..self.len()).rev() {
            e[k] = (idx % p) as u8;
            idx /= p;
        }
        e
    }

    /// All elements, in mixed-radix order; fails above `cap_log` (log_p).
    pub fn elements(&self, cap_log: u32) -> Result<Vec<Exps>> {
        if self.log_order() > cap_log {
            return Err(Error::CapExceeded {
                what: "element enumeration".into(),
                log_order: self.log_order(),
                cap: cap_log,
            });
        }
        let total = (self.prime as usize).pow(self.log_order());
        Ok((0..total).map(|i| self.element_at(i)).collect())
    }

    /// Renders a normal form such as `x*y^2*s3`.
    pub fn format(&self, e: &[u8]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| {
                if a == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], a)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// True when every generator past the minimal generating set has a
    /// definition whose right-hand side reads `u * g_k` with `u` before `k`.
    pub fn has_valid_definitions(&self) -> bool {
        let n = self.len();
        let undefined = self.definitions.iter().filter(|d| d.is_none()).count();
        if n == 0 {
            return true;
        }
        for k in 0..n {
            let rhs = match self.definitions[k] {
                None => {
                    if self.definitions[..k].iter().any(|d| d.is_some()) {
                        return false;
                    }
                    continue;
                }
                Some(Definition::Power(i)) => &self.powers[i],
                Some(Definition::Conjugate(j, i)) => &self.conjugates[j][i],
            };
            if rhs[k] != 1 || rhs[k + 1..].iter().any(|&a| a != 0) {
                return false;
            }
        }
        undefined >= 1
    }
}

#[cfg(test)]
mod tests;
