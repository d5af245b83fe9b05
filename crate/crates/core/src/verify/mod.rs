//! Seeded property checks of the inequalities and characterizations, run
//! over structural ensembles.
//!
//! Each registered check has a stable id and a formula anchor. Trials are
//! seeded by `(base seed, id, dim, trial index)`, so reports are identical
//! for identical inputs no matter how the trials are scheduled.

mod checks;
mod registry;
mod report;
mod tally;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::complexmat::{EnsembleKind, SeedTree, TrialRng};
use crate::error::{Error, Result};
use crate::norms::NormSpec;

pub use registry::{anchor_of, registry_ids};
pub use report::{render_table, reports_to_json, reports_to_json_value};
pub use tally::{Witness, REL_TOL};

use registry::{CheckDef, Norms};
use tally::Tally;

pub const DEFAULT_DIMS: [usize; 5] = [2, 3, 4, 6, 8];
pub const DEFAULT_P_GRID: [f64; 5] = [1.0, 1.5, 2.0, 3.0, 5.0];
pub const DEFAULT_TRIALS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Inequality,
    Equivalence,
    Scrutiny,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Inequality => "inequality",
            Mode::Equivalence => "equivalence",
            Mode::Scrutiny => "scrutiny",
        })
    }
}

/// The default norm grid: the operator norm and `p ∈ {1, 1.5, 2, 3, 5}`.
pub fn default_norms() -> Vec<NormSpec> {
    let mut v = vec![NormSpec::operator()];
    v.extend(DEFAULT_P_GRID.iter().map(|&p| NormSpec::schatten(p).expect("valid p")));
    v
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckSpec {
    pub id: String,
    /// Trial `k` draws from `ensembles[k % len]`.
    pub ensembles: Vec<EnsembleKind>,
    pub dims: Vec<usize>,
    /// Norms to sweep; checks tied to one norm ignore it.
    pub p_grid: Vec<NormSpec>,
    /// Trials per dimension.
    pub trials: usize,
    pub mode: Mode,
}

impl CheckSpec {
    /// The registered defaults for `id`.
    pub fn defaults(id: &str) -> Result<Self> {
        Self::with_options(id, &SuiteOptions::default())
    }

    /// Registered defaults overridden by suite-level options. Checks that
    /// are expensive per trial divide the trial count (see the registry).
    pub fn with_options(id: &str, opts: &SuiteOptions) -> Result<Self> {
        let def = registry::lookup(id)?;
        let trials = opts.trials.unwrap_or(DEFAULT_TRIALS);
        let trials = if def.trial_divisor > 1 {
            (trials / def.trial_divisor).max(2.min(trials))
        } else {
            trials
        };
        let dims = match (&opts.dims, def.dims) {
            (Some(d), _) => d.clone(),
            (None, Some(d)) => d.to_vec(),
            (None, None) => DEFAULT_DIMS.to_vec(),
        };
        Ok(Self {
            id: def.id.to_string(),
            ensembles: def.ensembles.to_vec(),
            dims,
            p_grid: opts.norms.clone().unwrap_or_else(default_norms),
            trials,
            mode: def.mode,
        })
    }
}

/// Suite-wide overrides of the registered defaults.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteOptions {
    pub dims: Option<Vec<usize>>,
    pub norms: Option<Vec<NormSpec>>,
    pub trials: Option<usize>,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    CounterexampleFound,
    ClaimSurvivedSampling,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::CounterexampleFound => "counterexample-found",
            Status::ClaimSurvivedSampling => "claim-survived-sampling",
            Status::Error => "error",
        }
    }
}

/// Sample counts of an equivalence check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Sides {
    pub positive: u64,
    pub negative: u64,
    /// Samples discarded for landing between `τ` and `10τ`.
    pub redrawn: u64,
    /// Trials that never left the dead band and were skipped.
    pub dead_band: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub id: String,
    pub paper_anchor: String,
    pub mode: Mode,
    pub trials: u64,
    pub violations: u64,
    /// Smallest signed slack observed; negative values are violations.
    pub max_violation: Option<f64>,
    /// Largest observed `LHS/RHS` over the inequality links.
    pub sharpness_ratio: Option<f64>,
    pub witnesses: Vec<Witness>,
    pub counterexamples: u64,
    pub sides: Option<Sides>,
    pub status: Status,
    pub error: Option<String>,
}

impl CheckReport {
    /// Scrutiny reports pass with either outcome.
    pub fn passed(&self) -> bool {
        !matches!(self.status, Status::Fail | Status::Error)
    }

    fn failed(id: &str, err: &Error) -> Self {
        let (anchor, mode) = match registry::lookup(id) {
            Ok(d) => (d.anchor.to_string(), d.mode),
            Err(_) => (String::new(), Mode::Inequality),
        };
        Self {
            id: id.to_string(),
            paper_anchor: anchor,
            mode,
            trials: 0,
            violations: 0,
            max_violation: None,
            sharpness_ratio: None,
            witnesses: Vec::new(),
            counterexamples: 0,
            sides: None,
            status: Status::Error,
            error: Some(err.to_string()),
        }
    }
}

/// Per-trial context handed to a check body.
pub(crate) struct Trial<'a> {
    pub dim: usize,
    pub index: u64,
    pub kind: EnsembleKind,
    pub ensembles: &'a [EnsembleKind],
    pub norms: &'a [NormSpec],
    pub rng: TrialRng,
    pub acc: Tally,
}

impl Trial<'_> {
    /// A single matrix from this trial's ensemble (the first of a pair).
    pub fn single(&mut self) -> crate::complexmat::ComplexMatrix {
        let kind = self.kind;
        self.single_of(kind)
    }

    pub fn single_of(&mut self, kind: EnsembleKind) -> crate::complexmat::ComplexMatrix {
        match kind.draw(self.dim, &mut self.rng) {
            crate::complexmat::Sample::Single(a) => a,
            crate::complexmat::Sample::Pair(a, _) => a,
        }
    }

    /// A pair: the ensemble's own pair, or two independent draws.
    pub fn pair(&mut self) -> (crate::complexmat::ComplexMatrix, crate::complexmat::ComplexMatrix) {
        match self.kind.draw(self.dim, &mut self.rng) {
            crate::complexmat::Sample::Pair(a, b) => (a, b),
            crate::complexmat::Sample::Single(a) => {
                let b = self.single();
                (a, b)
            }
        }
    }
}

fn resolve_norms(def: &CheckDef, grid: &[NormSpec]) -> Vec<NormSpec> {
    match def.norms {
        Norms::Grid(keep) => grid.iter().copied().filter(keep).collect(),
        Norms::Fixed(f) => f(),
        Norms::Free => Vec::new(),
    }
}

/// Runs one check. Deterministic in `(spec, seed)`.
pub fn run_check(spec: &CheckSpec, seed: u64) -> Result<CheckReport> {
    let def = registry::lookup(&spec.id)?;
    if spec.mode != def.mode {
        return Err(Error::CheckConfig(format!(
            "check `{}` runs in {} mode, not {}",
            def.id, def.mode, spec.mode
        )));
    }
    if spec.ensembles.is_empty() {
        return Err(Error::CheckConfig(format!("check `{}` needs an ensemble", def.id)));
    }
    for kind in &spec.ensembles {
        if !def.accepts.contains(kind) {
            return Err(Error::EnsembleMismatch {
                id: def.id.to_string(),
                kind: kind.name().to_string(),
            });
        }
    }
    if spec.dims.contains(&0) {
        return Err(Error::CheckConfig("dimensions must be positive".into()));
    }
    let norms = resolve_norms(def, &spec.p_grid);

    let mut acc = Tally::default();
    if let Some(anchors) = def.anchors {
        anchors(&mut acc, &norms)?;
    }

    let dims: Vec<usize> = spec.dims.iter().copied().filter(|&d| d >= def.min_dim).collect();
    let cells: Vec<(usize, u64)> = dims
        .iter()
        .flat_map(|&d| (0..spec.trials as u64).map(move |t| (d, t)))
        .collect();
    let root = SeedTree::new(seed).child(def.id);
    let parts: Vec<Result<Tally>> = cells
        .par_iter()
        .map(|&(dim, index)| {
            let mut trial = Trial {
                dim,
                index,
                kind: spec.ensembles[index as usize % spec.ensembles.len()],
                ensembles: &spec.ensembles,
                norms: &norms,
                rng: root.child(&format!("n{dim}")).index(index).rng(),
                acc: Tally::default(),
            };
            (def.run)(&mut trial)?;
            Ok(trial.acc)
        })
        .collect();
    for part in parts {
        acc.merge(part?);
    }

    let status = match def.mode {
        Mode::Scrutiny if acc.counterexamples > 0 => Status::CounterexampleFound,
        Mode::Scrutiny => Status::ClaimSurvivedSampling,
        _ if acc.violations == 0 => Status::Pass,
        _ => Status::Fail,
    };
    let sides = (def.mode == Mode::Equivalence).then_some(Sides {
        positive: acc.positives,
        negative: acc.negatives,
        redrawn: acc.redraws,
        dead_band: acc.dead_band,
    });
    Ok(CheckReport {
        id: def.id.to_string(),
        paper_anchor: def.anchor.to_string(),
        mode: def.mode,
        trials: acc.trials,
        violations: acc.violations,
        max_violation: acc.min_slack,
        sharpness_ratio: acc.sharpness,
        witnesses: acc.witnesses,
        counterexamples: acc.counterexamples,
        sides,
        status,
        error: None,
    })
}

/// Expands `"all"` and validates that the list is nonempty.
pub fn expand_ids<S: AsRef<str>>(ids: &[S]) -> Result<Vec<String>> {
    if ids.is_empty() {
        return Err(Error::InvalidArgument("no check ids given".into()));
    }
    let mut out = Vec::new();
    for id in ids {
        let id = id.as_ref().trim();
        if id == "all" {
            out.extend(registry_ids().iter().map(|s| s.to_string()));
        } else {
            out.push(id.to_string());
        }
    }
    Ok(out)
}

/// Runs several checks. Reports come back in registry order (unknown ids
/// last, in the given order); a check that errors yields a failed report
/// instead of aborting the suite.
pub fn run_suite<S: AsRef<str>>(ids: &[S], opts: &SuiteOptions) -> Result<Vec<CheckReport>> {
    let mut ids = expand_ids(ids)?;
    let order = registry_ids();
    ids.sort_by_key(|id| order.iter().position(|r| r == id).unwrap_or(usize::MAX));
    ids.dedup();
    let run_all = || {
        ids.iter()
            .map(|id| {
                CheckSpec::with_options(id, opts)
                    .and_then(|spec| run_check(&spec, opts.seed))
                    .unwrap_or_else(|e| CheckReport::failed(id, &e))
            })
            .collect::<Vec<_>>()
    };
    match opts.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            Ok(pool.install(run_all))
        }
        None => Ok(run_all()),
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inequality" => Ok(Mode::Inequality),
            "equivalence" => Ok(Mode::Equivalence),
            "scrutiny" => Ok(Mode::Scrutiny),
            other => Err(Error::InvalidArgument(format!("unknown mode `{other}`"))),
        }
    }
}
