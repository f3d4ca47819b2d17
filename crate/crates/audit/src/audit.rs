use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use seqprod_core::algebra::{rng_from_seed, AlgebraDescriptor};
use seqprod_core::{Error, ProductSpec, Result, SequentialProduct};
use serde::{Deserialize, Serialize};

use crate::law::LawId;
use crate::laws::{evaluate, sample, IsoChoice};
use crate::witness::Witness;

/// Residual above which an expected-fail row counts as a genuine
/// counterexample rather than noise.
pub const VIOLATION_THRESHOLD: f64 = 1e-3;

/// Seed of trial `i` of a row seeded with `seed` (SplitMix64 mixing).
pub fn trial_seed(seed: u64, i: usize) -> u64 {
    let mut z = seed ^ (i as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The row could not be run (inapplicable combination or numerical
    /// breakdown); see the entry's `error`.
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        })
    }
}

/// What a suite row is expected to do.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    #[default]
    Pass,
    /// A falsification demo: must fail with residual ≥ [`VIOLATION_THRESHOLD`].
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Capability,
    Precondition,
    Numerical,
    Other,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryError {
    pub kind: ErrorKind,
    pub message: String,
}

impl From<&Error> for EntryError {
    fn from(e: &Error) -> Self {
        let kind = match e {
            Error::Capability(_) | Error::DescriptorMismatch { .. } => ErrorKind::Capability,
            Error::Precondition(_) | Error::Domain { .. } => ErrorKind::Precondition,
            Error::NumericalFailure { .. } => ErrorKind::Numerical,
            _ => ErrorKind::Other,
        };
        EntryError {
            kind,
            message: e.to_string(),
        }
    }
}

/// One audited (law, product, algebra) row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub law: LawId,
    pub product: ProductSpec,
    #[serde(with = "crate::shorthand")]
    pub algebra: AlgebraDescriptor,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iso: Option<IsoChoice>,
    pub expected: Expectation,
    pub verdict: Verdict,
    pub max_residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<EntryError>,
    pub elapsed_ms: f64,
}

impl AuditEntry {
    /// Whether the entry behaved as its row declared.
    pub fn as_expected(&self) -> bool {
        match (self.expected, self.verdict) {
            (Expectation::Pass, Verdict::Pass) => true,
            (Expectation::Fail, Verdict::Fail) => self.max_residual >= VIOLATION_THRESHOLD,
            _ => false,
        }
    }
}

/// Parameters of one audit row.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditRequest {
    pub law: LawId,
    pub product: ProductSpec,
    pub algebra: AlgebraDescriptor,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub iso: Option<IsoChoice>,
    pub expected: Expectation,
}

impl AuditRequest {
    pub fn new(law: LawId, product: ProductSpec, algebra: AlgebraDescriptor) -> Self {
        Self {
            law,
            product,
            algebra,
            trials: 100,
            seed: 0,
            tol: law.default_tol(),
            iso: None,
            expected: Expectation::Pass,
        }
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn iso(mut self, iso: IsoChoice) -> Self {
        self.iso = Some(iso);
        self
    }

    pub fn expect(mut self, expected: Expectation) -> Self {
        self.expected = expected;
        self
    }
}

fn run_trial(req: &AuditRequest, product: &SequentialProduct<f64>, i: usize) -> Result<Witness> {
    let seed = trial_seed(req.seed, i);
    let mut rng = rng_from_seed(seed);
    let inputs = sample(req.law, &req.algebra, i, req.iso.unwrap_or_default(), &mut rng)?;
    let residual = evaluate(req.law, product, &inputs)?;
    Ok(Witness {
        trial: i,
        seed,
        residual,
        inputs,
    })
}

/// Runs every trial of a row (concurrently; results are order-independent)
/// and summarizes them. A failing row carries the witness of its worst trial.
pub fn audit_law(req: &AuditRequest) -> AuditEntry {
    let start = Instant::now();
    let mut entry = AuditEntry {
        law: req.law,
        product: req.product,
        algebra: req.algebra.clone(),
        trials: req.trials,
        seed: req.seed,
        tol: req.tol,
        iso: req.iso,
        expected: req.expected,
        verdict: Verdict::Pass,
        max_residual: 0.0,
        witness: None,
        error: None,
        elapsed_ms: 0.0,
    };
    let outcome = SequentialProduct::new(req.product, req.algebra.clone()).and_then(|product| {
        (0..req.trials)
            .into_par_iter()
            .map(|i| run_trial(req, &product, i))
            .collect::<Result<Vec<_>>>()
    });
    match outcome {
        Err(e) => {
            entry.verdict = Verdict::Error;
            entry.error = Some(EntryError::from(&e));
        }
        Ok(witnesses) => {
            let mut worst: Option<Witness> = None;
            for w in witnesses {
                // NaN residuals are the worst possible outcome
                let worse = match &worst {
                    None => true,
                    Some(best) => w.residual.is_nan() && !best.residual.is_nan() || w.residual > best.residual,
                };
                if worse {
                    worst = Some(w);
                }
            }
            if let Some(w) = worst {
                entry.max_residual = w.residual;
                if !(w.residual <= req.tol) {
                    entry.verdict = Verdict::Fail;
                    entry.witness = Some(w);
                }
            }
        }
    }
    entry.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    entry
}

/// Recomputes the residual of a failing entry's witness through the core
/// operations.
pub fn replay(entry: &AuditEntry) -> Result<f64> {
    let w = entry
        .witness
        .as_ref()
        .ok_or_else(|| Error::Precondition("entry has no witness".into()))?;
    let product = SequentialProduct::new(entry.product, entry.algebra.clone())?;
    evaluate(entry.law, &product, &w.inputs)
}
