use super::{Exps, PcPresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyFailure {
    pub test: String,
    pub left: Exps,
    pub right: Exps,
}

impl ConsistencyFailure {
    pub fn describe(&self, p: &PcPresentation) -> String {
        format!("{}: {} != {}", self.test, p.format(&self.left), p.format(&self.right))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checks: usize,
    pub failure: Option<ConsistencyFailure>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl PcPresentation {
    /// Runs the standard overlap tests and stops at the first failure.
    pub fn check_consistency(&self) -> ConsistencyReport {
        let mut checks = 0;
        let mut failure = None;
        self.for_each_overlap(|test, left, right| {
            checks += 1;
            if left != right {
                failure = Some(ConsistencyFailure { test: test(), left, right });
                false
            } else {
                true
            }
        });
        ConsistencyReport { checks, failure }
    }

    /// Calls `f(name, left, right)` with both collected sides of every
    /// overlap; `f` returns false to stop early.
    pub(crate) fn for_each_overlap<F>(&self, mut f: F)
    where
        F: FnMut(&dyn Fn() -> String, Exps, Exps) -> bool,
    {
        let n = self.len();
        let p = self.prime;
        let name = |i: usize| self.names[i].clone();
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let mut left = self.gen(k);
                    self.mul_gen(&mut left, j);
                    self.mul_gen(&mut left, i);
                    let mut ji = self.gen(j);
                    self.mul_gen(&mut ji, i);
                    let mut right = self.gen(k);
                    self.mul_assign(&mut right, &ji);
                    let t = || format!("({} {}) {} overlap", name(k), name(j), name(i));
                    if !f(&t, left, right) {
                        return;
                    }
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                let mut left = self.powers[j].clone();
                self.mul_gen(&mut left, i);
                let mut ji = self.gen(j);
                self.mul_gen(&mut ji, i);
                let mut right = self.identity();
                right[j] = p - 1;
                self.mul_assign(&mut right, &ji);
                let t = || format!("{}^{} {} overlap", name(j), p, name(i));
                if !f(&t, left, right) {
                    return;
                }
                let mut left = self.gen(j);
                for _ in 0..p {
                    self.mul_gen(&mut left, i);
                }
                let mut right = self.gen(j);
                self.mul_assign(&mut right, &self.powers[i]);
                let t = || format!("{} {}^{} overlap", name(j), name(i), p);
                if !f(&t, left, right) {
                    return;
                }
            }
        }
        for i in 0..n {
            let mut left = self.powers[i].clone();
            self.mul_gen(&mut left, i);
            let mut right = self.gen(i);
            self.mul_assign(&mut right, &self.powers[i]);
            let t = || format!("{}^{} overlap", name(i), p + 1);
            if !f(&t, left, right) {
                return;
            }
        }
    }
}
