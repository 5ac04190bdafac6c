//! Named verification suites and their default grids.

use crate::error::{Error, Result};
use crate::families::Tree;
use crate::iso::ISO_CAP_LOG;
use crate::properties::verify_properties;
use crate::trees::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    Consistency,
    Invariants,
    Patterns,
    Laws,
    Bifurcation,
    Periodicity,
    Class2,
    Exhaustion,
    Properties,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Consistency,
        Suite::Invariants,
        Suite::Patterns,
        Suite::Laws,
        Suite::Bifurcation,
        Suite::Periodicity,
        Suite::Class2,
        Suite::Exhaustion,
        Suite::Properties,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Consistency => "consistency",
            Suite::Invariants => "invariants",
            Suite::Patterns => "patterns",
            Suite::Laws => "laws",
            Suite::Bifurcation => "bifurcation",
            Suite::Periodicity => "periodicity",
            Suite::Class2 => "class2",
            Suite::Exhaustion => "exhaustion",
            Suite::Properties => "properties",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::BadParameters(format!("unknown suite {s:?}")))
    }
}

/// Grid bounds and caps. `None` fields fall back to the per-suite default.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub e_min: Option<u32>,
    pub e_max: Option<u32>,
    pub c_max: Option<u32>,
    pub i_max: Option<u32>,
    pub iso_cap: Option<u32>,
    pub cover_cap: Option<u32>,
    pub triples: Option<usize>,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.e_min.is_some_and(|e| e < 2) {
            return Err(Error::BadParameters("e_min must be at least 2".into()));
        }
        if self.e_min.zip(self.e_max).is_some_and(|(a, b)| a > b) {
            return Err(Error::BadParameters("e_min exceeds e_max".into()));
        }
        if [self.c_max, self.i_max, self.iso_cap, self.cover_cap].iter().any(|v| *v == Some(0))
            || self.triples == Some(0)
        {
            return Err(Error::BadParameters("caps and bounds must be positive".into()));
        }
        Ok(())
    }
}

/// Runs one suite. Defaults are the acceptance grids.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let iso = cfg.iso_cap.unwrap_or(ISO_CAP_LOG);
    let grid = |e_min: u32, e_max: u32| (cfg.e_min.unwrap_or(e_min), cfg.e_max.unwrap_or(e_max));
    match suite {
        Suite::Consistency | Suite::Invariants | Suite::Patterns => {
            let (a, b) = grid(2, 6);
            let c = cfg.c_max.unwrap_or(8);
            match suite {
                Suite::Consistency => verify_consistency(a, b, c),
                Suite::Invariants => verify_invariants(a, b, c),
                _ => verify_patterns(a, b, c),
            }
        }
        Suite::Laws => {
            let (a, b) = grid(3, 5);
            let i = cfg.i_max.unwrap_or(4);
            let mut r = Report::new("propagation laws");
            r.extend(verify_mainline_laws(a, b, i, iso)?);
            r.extend(verify_offside_laws(a, b, i, iso)?);
            r.extend(verify_bcf_laws(a, b, i, iso)?);
            Ok(r)
        }
        Suite::Bifurcation => {
            let (a, b) = grid(3, 4);
            let mut opts = BifurcationOptions::default();
            if let Some(c) = cfg.iso_cap {
                opts.iso_cap = c;
            }
            if let Some(c) = cfg.cover_cap {
                opts.cap_log = c;
            }
            let mut r = Report::new("bifurcation");
            for e in a.max(3)..=b {
                r.extend(verify_bifurcation(e, &opts)?);
            }
            Ok(r)
        }
        Suite::Periodicity => {
            let (a, b) = grid(3, 5);
            let i = cfg.i_max.unwrap_or(6);
            let mut r = Report::new("periodicity");
            for tree in [Tree::Cf, Tree::Bcf] {
                for e in a..=b {
                    r.extend(verify_periodicity(tree, e, i)?);
                }
            }
            Ok(r)
        }
        Suite::Class2 => verify_class2_chain(cfg.e_max.unwrap_or(5), iso),
        Suite::Exhaustion => {
            let mut opts = PathOptions::default();
            if let Some(c) = cfg.iso_cap {
                opts.iso_cap = c;
            }
            if let Some(c) = cfg.cover_cap {
                opts.cover_cap = c;
            }
            verify_exhaustion(cfg.e_max.unwrap_or(4), cfg.i_max.unwrap_or(3), &opts)
        }
        Suite::Properties => verify_properties(cfg.triples.unwrap_or(10_000), cfg.seed),
    }
}
