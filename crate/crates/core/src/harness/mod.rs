//! Seeded verification suites.
//!
//! A suite draws elements from the sample families, evaluates a list of
//! claims on each draw and aggregates the outcomes into a [`Report`]. All
//! randomness flows from [`SuiteConfig::seed`], so a configuration always
//! produces the same canonical report.

mod analyze;
mod families;
mod report;
mod suites;

use std::time::Instant;

pub use analyze::{analyze_document, analyze_matrix, sample_document, Analysis};
pub use families::{
    arrowhead, borel, g0_sample, generic, in_theta_set, mixed_sample, nilpotent, parabolic, sample_family,
    scalar_strings, sparse, theta_levels, theta_sample, xi, Family,
};
pub use report::{ClaimResult, Failure, PassRule, Report};
pub use suites::{lowdim_sreg_witness, overlap_data};

use crate::error::{Error, Result};
use crate::liealg::Kind;
use crate::sampling::SampleBounds;

/// Names accepted by [`run_suite`], in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "orbit-tables",
    "dimension-identities",
    "gzero-nsreg",
    "kostant-equivalence",
    "yq-strata",
    "xi-families",
    "nilfibre",
    "overlaps",
    "sreg-chain",
];

const MAX_N: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: String,
    /// Restrict to one algebra family.
    pub kind: Option<Kind>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    /// Trials per claim group; each suite has its own default.
    pub trials: Option<usize>,
    pub seed: u64,
    pub bounds: SampleBounds,
}

impl SuiteConfig {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteConfig {
            suite: suite.into(),
            kind: None,
            n_min: None,
            n_max: None,
            trials: None,
            seed: 0,
            bounds: SampleBounds::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = Some(trials);
        self
    }

    pub fn with_kind(mut self, kind: Kind) -> Self {
        self.kind = Some(kind);
        self
    }

    pub fn with_range(mut self, n_min: usize, n_max: usize) -> Self {
        self.n_min = Some(n_min);
        self.n_max = Some(n_max);
        self
    }

    fn validate(&self) -> Result<()> {
        if let (Some(a), Some(b)) = (self.n_min, self.n_max) {
            if a > b {
                return Err(Error::Usage(format!("n-min {a} exceeds n-max {b}")));
            }
        }
        if let Some(b) = self.n_max {
            if b > MAX_N {
                return Err(Error::Usage(format!("n-max {b} exceeds the supported maximum {MAX_N}")));
            }
        }
        Ok(())
    }

    /// The (kind, n) pairs a suite covers: its defaults, narrowed by the
    /// requested kind and overridden by any explicit bounds.
    pub(crate) fn sizes(&self, defaults: &[(Kind, usize, usize)], floor: usize) -> Vec<(Kind, usize)> {
        defaults
            .iter()
            .filter(|(k, _, _)| self.kind.is_none_or(|want| want == *k))
            .flat_map(|&(k, lo, hi)| {
                let kind_floor = match k {
                    Kind::GL => 2,
                    Kind::SO => 3,
                };
                let lo = self.n_min.unwrap_or(lo).max(floor).max(kind_floor);
                let hi = self.n_max.unwrap_or(hi).min(MAX_N);
                (lo..=hi).map(move |n| (k, n))
            })
            .collect()
    }
}

fn dispatch(name: &str, cfg: &SuiteConfig) -> Result<Vec<ClaimResult>> {
    match name {
        "orbit-tables" => suites::orbit_tables(cfg),
        "dimension-identities" => suites::dimension_identities(cfg),
        "gzero-nsreg" => suites::gzero_nsreg(cfg),
        "kostant-equivalence" => suites::kostant_equivalence(cfg),
        "yq-strata" => suites::yq_strata(cfg),
        "xi-families" => suites::xi_families(cfg),
        "nilfibre" => suites::nilfibre(cfg),
        "overlaps" => suites::overlaps(cfg),
        "sreg-chain" => suites::sreg_chain(cfg),
        other => Err(suites::unknown(other)),
    }
}

/// Run one named suite, or every suite for `all`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let claims = if cfg.suite == "all" {
        let mut all = Vec::new();
        for name in SUITES {
            all.extend(dispatch(name, cfg)?);
        }
        all
    } else {
        let claims = dispatch(&cfg.suite, cfg)?;
        if claims.is_empty() {
            return Err(Error::Usage(format!(
                "suite {} has no algebra in the requested range",
                cfg.suite
            )));
        }
        claims
    };
    Ok(Report {
        suite: cfg.suite.clone(),
        seed: cfg.seed,
        claims,
        wall_time_ms: start.elapsed().as_millis(),
    })
}
