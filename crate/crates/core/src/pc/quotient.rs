use super::{Definition, Exps, PcPresentation, Subgroup};
use crate::error::{Error, Result};

/// Canonical projection `G -> G/N` produced by [`PcPresentation::quotient`].
#[derive(Clone, Debug)]
pub struct Projection {
    kept: Vec<usize>,
    kernel: Subgroup,
}

impl Projection {
    pub fn apply(&self, source: &PcPresentation, g: &[u8]) -> Exps {
        let r = self.kernel.sift(source, g);
        self.kept.iter().map(|&d| r[d]).collect()
    }

    /// The canonical preimage of a quotient element.
    pub fn lift(&self, source: &PcPresentation, q: &[u8]) -> Exps {
        let mut e = source.identity();
        for (a, &d) in self.kept.iter().enumerate() {
            e[d] = q[a];
        }
        e
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Source generator index for each quotient generator.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }
}

impl PcPresentation {
    /// Presentation of `G/N` on the generators outside the depths of `N`.
    pub fn quotient(&self, n: &Subgroup) -> Result<(PcPresentation, Projection)> {
        if !n.is_normal(self) {
            return Err(Error::NotNormal);
        }
        let kept: Vec<usize> = (0..self.len()).filter(|&d| !n.has_depth(d)).collect();
        let proj = Projection { kept: kept.clone(), kernel: n.clone() };
        let mut new_index = vec![usize::MAX; self.len()];
        for (a, &d) in kept.iter().enumerate() {
            new_index[d] = a;
        }
        let names = kept.iter().map(|&d| self.names[d].clone()).collect();
        let powers: Vec<Exps> = kept.iter().map(|&d| proj.apply(self, &self.powers[d])).collect();
        let conjugates: Vec<Vec<Exps>> = kept
            .iter()
            .enumerate()
            .map(|(b, &j)| {
                kept[..b]
                    .iter()
                    .map(|&i| proj.apply(self, &self.conjugates[j][i]))
                    .collect()
            })
            .collect();
        let mut defs = vec![None; kept.len()];
        for (a, &d) in kept.iter().enumerate() {
            let mapped = match self.definitions[d] {
                Some(Definition::Power(i)) if new_index[i] != usize::MAX => {
                    Some((Definition::Power(new_index[i]), &powers[new_index[i]]))
                }
                Some(Definition::Conjugate(j, i))
                    if new_index[i] != usize::MAX && new_index[j] != usize::MAX =>
                {
                    let (nj, ni) = (new_index[j], new_index[i]);
                    Some((Definition::Conjugate(nj, ni), &conjugates[nj][ni]))
                }
                _ => None,
            };
            if let Some((def, rhs)) = mapped {
                if rhs[a] == 1 && rhs[a + 1..].iter().all(|&x| x == 0) {
                    defs[a] = Some(def);
                }
            }
        }
        let q = PcPresentation::from_parts(self.prime, names, powers, conjugates, defs)?;
        Ok((q, proj))
    }
}
