//! Randomised and exhaustive checks of the colouring statements at desk
//! scale. Every instance is drawn from its own generator stream, keyed by
//! the run seed, the property and the instance index, so a report is
//! reproducible regardless of how many workers produced it.

mod bounds;
mod calculus;
mod generate;
mod lemmas;
mod solvers;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

pub use bounds::{check_corollary, check_theorem4_bound, theorem4_exception};
pub use calculus::{check_calculus, check_shift};
pub use generate::{
    color_system, proper_path_colorings, random_forbidden, random_near_triangulation, random_phi,
    random_proper_path, random_triangulation, stacked_triangulation,
};
pub use lemmas::{check_lemma, lemma3_configuration, LemmaId};
pub use solvers::{check_dichotomy, check_extend_two, check_short_cycle};

#[derive(Debug, Error)]
pub enum PropError {
    #[error("configuration rejected: {0}")]
    Config(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiMode {
    Uniform,
    Zero,
    Sparse,
}

impl std::str::FromStr for PhiMode {
    type Err = PropError;
    fn from_str(s: &str) -> Result<Self, PropError> {
        match s {
            "uniform" => Ok(PhiMode::Uniform),
            "zero" => Ok(PhiMode::Zero),
            "sparse" => Ok(PhiMode::Sparse),
            _ => Err(PropError::Config(format!("unknown phi mode `{s}`"))),
        }
    }
}

/// Sizes and randomness of a check run. `instances` bounds the number of
/// graphs (random ones are generated, family members are subsampled);
/// `samples` is the number of labellings and lists tried per graph.
#[derive(Debug, Clone)]
pub struct RandomInstanceConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub instances: usize,
    pub samples: usize,
    pub phi_mode: PhiMode,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for RandomInstanceConfig {
    fn default() -> Self {
        RandomInstanceConfig {
            n_min: 3,
            n_max: 10,
            instances: 100,
            samples: 20,
            phi_mode: PhiMode::Uniform,
            seed: 0,
            jobs: 1,
        }
    }
}

impl RandomInstanceConfig {
    pub(crate) fn require_n_max(&self, cap: usize) -> Result<(), PropError> {
        if self.n_max > cap {
            return Err(PropError::Config(format!("n-max {} exceeds the cap {cap} for this property", self.n_max)));
        }
        if self.n_min > self.n_max {
            return Err(PropError::Config("n-min exceeds n-max".into()));
        }
        Ok(())
    }

    /// Generator for one instance, independent of every other index.
    pub fn rng(&self, property: &str, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a(property.as_bytes()));
        rng.set_stream(index as u64);
        rng
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub index: usize,
    pub detail: String,
    /// The failing instance as a gcg document, when it is a near-triangulation.
    pub gcg: Option<String>,
}

/// What one instance contributed.
#[derive(Debug, Clone, Default)]
pub struct Tally {
    pub tested: usize,
    pub skipped: usize,
    /// Instances where the statement held through its negative branch,
    /// such as a validated obstruction.
    pub witnessed: usize,
    pub failures: Vec<Counterexample>,
}

impl Tally {
    pub fn fail(&mut self, index: usize, detail: impl Into<String>, gcg: Option<String>) {
        self.failures.push(Counterexample { index, detail: detail.into(), gcg });
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub property: String,
    pub seed: u64,
    pub jobs: usize,
    pub instances: usize,
    pub skipped: usize,
    pub witnessed: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Statements about how the check reads its hypothesis.
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn status_line(&self) -> String {
        if self.passed() {
            "PASS".to_string()
        } else {
            format!("FAIL {}", self.counterexamples.len())
        }
    }

    /// Run-dependent lines, each starting with `#`.
    pub fn header(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# property {}", self.property).unwrap();
        writeln!(out, "# seed {}", self.seed).unwrap();
        writeln!(out, "# jobs {}", self.jobs).unwrap();
        writeln!(out, "# elapsed_ms {}", self.elapsed.as_millis()).unwrap();
        for note in &self.notes {
            writeln!(out, "# note {note}").unwrap();
        }
        out
    }

    /// Everything determined by the seed and configuration alone.
    pub fn body(&self) -> String {
        let mut out = String::new();
        writeln!(out, "property {}", self.property).unwrap();
        writeln!(out, "seed {}", self.seed).unwrap();
        writeln!(out, "instances {}", self.instances).unwrap();
        writeln!(out, "skipped {}", self.skipped).unwrap();
        writeln!(out, "witnessed {}", self.witnessed).unwrap();
        for c in &self.counterexamples {
            writeln!(out, "counterexample {} {}", c.index, c.detail).unwrap();
            if let Some(doc) = &c.gcg {
                for line in doc.lines() {
                    writeln!(out, "  {line}").unwrap();
                }
            }
        }
        writeln!(out, "{}", self.status_line()).unwrap();
        out
    }

    pub fn render(&self) -> String {
        self.header() + &self.body()
    }
}

/// Runs `work` on indices `0..count` on `cfg.jobs` workers and merges the
/// tallies in index order.
pub(crate) fn run_indexed<F>(
    property: &str,
    cfg: &RandomInstanceConfig,
    count: usize,
    notes: Vec<String>,
    work: F,
) -> Result<CheckReport, PropError>
where
    F: Fn(usize, &mut ChaCha8Rng) -> Tally + Sync,
{
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| PropError::Config(format!("cannot start workers: {e}")))?;
    let tallies: Vec<Tally> = pool.install(|| {
        (0..count)
            .into_par_iter()
            .map(|i| work(i, &mut cfg.rng(property, i)))
            .collect()
    });
    let mut report = CheckReport {
        property: property.to_string(),
        seed: cfg.seed,
        jobs: cfg.jobs.max(1),
        instances: 0,
        skipped: 0,
        witnessed: 0,
        counterexamples: Vec::new(),
        notes,
        elapsed: Duration::ZERO,
    };
    for t in tallies {
        report.instances += t.tested;
        report.skipped += t.skipped;
        report.witnessed += t.witnessed;
        report.counterexamples.extend(t.failures);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Property identifiers accepted by [`check`].
pub const PROPERTIES: &[&str] = &[
    "calculus", "shift", "theorem2", "shortcycle", "theorem3", "lemma1", "lemma2", "lemma3a", "lemma3b",
    "cor1", "lemma4", "lemma5", "theorem4", "corollary2",
];

/// Runs the named property.
pub fn check(property: &str, cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    match property {
        "calculus" => check_calculus(cfg),
        "shift" => check_shift(cfg),
        "theorem2" => check_extend_two(cfg),
        "shortcycle" => check_short_cycle(cfg),
        "theorem3" => check_dichotomy(cfg),
        "theorem4" => check_theorem4_bound(cfg),
        "corollary2" => check_corollary(cfg),
        other => {
            let id = other.strip_prefix("lemma").unwrap_or(other);
            let id: LemmaId = id.parse().map_err(|_| PropError::UnknownProperty(other.to_string()))?;
            check_lemma(id, cfg)
        }
    }
}

#[cfg(test)]
mod tests;
