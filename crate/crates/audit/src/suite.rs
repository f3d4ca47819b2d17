use seqprod_core::algebra::AlgebraDescriptor;
use seqprod_core::ProductSpec;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::audit::{audit_law, AuditEntry, AuditRequest, Expectation};
use crate::error::AuditError;
use crate::law::LawId;
use crate::laws::IsoChoice;

pub const SCHEMA_VERSION: u32 = 1;

/// Trials per SEA row in the default suite.
pub const SEA_TRIALS: usize = 200;
/// Trials per non-SEA row in the default suite.
pub const DEFAULT_TRIALS: usize = 100;
/// Trials per falsification demo row.
pub const DEMO_TRIALS: usize = 10;

/// One configured row; unset fields fall back to suite or law defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteRow {
    pub law: LawId,
    pub product: ProductSpec,
    #[serde(with = "crate::shorthand")]
    pub algebra: AlgebraDescriptor,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default)]
    pub expect: Expectation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iso: Option<IsoChoice>,
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

impl SuiteRow {
    pub fn new(law: LawId, product: ProductSpec, algebra: AlgebraDescriptor) -> Self {
        Self {
            law,
            product,
            algebra,
            trials: DEFAULT_TRIALS,
            seed: None,
            tol: None,
            expect: Expectation::Pass,
            iso: None,
        }
    }

    fn request(&self, suite_seed: u64, tol_override: Option<f64>) -> AuditRequest {
        AuditRequest {
            law: self.law,
            product: self.product,
            algebra: self.algebra.clone(),
            trials: self.trials,
            seed: self.seed.unwrap_or(suite_seed),
            tol: tol_override.or(self.tol).unwrap_or_else(|| self.law.default_tol()),
            iso: self.iso,
            expected: self.expect,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub schema: u32,
    /// Seed for rows that do not set their own.
    #[serde(default)]
    pub seed: u64,
    /// Overrides every row's tolerance when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default)]
    pub rows: Vec<SuiteRow>,
}

impl SuiteConfig {
    pub fn new(seed: u64, rows: Vec<SuiteRow>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            seed,
            tol: None,
            rows,
        }
    }

    /// Parses and validates a config document, naming the offending row.
    pub fn from_json(text: &str) -> Result<Self, AuditError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| AuditError::config(None, e.to_string()))?;
        let obj = doc
            .as_object()
            .ok_or_else(|| AuditError::config(None, "config must be a JSON object"))?;
        match obj.get("schema").and_then(Value::as_u64) {
            Some(v) if v == u64::from(SCHEMA_VERSION) => {}
            Some(v) => return Err(AuditError::config(None, format!("unsupported schema {v}"))),
            None => return Err(AuditError::config(None, "missing `schema` field")),
        }
        for key in obj.keys() {
            if !["schema", "seed", "tol", "rows"].contains(&key.as_str()) {
                return Err(AuditError::config(None, format!("unknown field `{key}`")));
            }
        }
        let seed = match obj.get("seed") {
            None => 0,
            Some(v) => v.as_u64().ok_or_else(|| AuditError::config(None, "`seed` must be a non-negative integer"))?,
        };
        let tol = match obj.get("tol") {
            None => None,
            Some(v) => Some(positive_tol(v.as_f64(), None)?),
        };
        let rows = match obj.get("rows") {
            None => Vec::new(),
            Some(Value::Array(rows)) => rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let row: SuiteRow =
                        serde_json::from_value(r.clone()).map_err(|e| AuditError::config(Some(i), e.to_string()))?;
                    if row.trials == 0 {
                        return Err(AuditError::config(Some(i), "`trials` must be at least 1"));
                    }
                    if let Some(t) = row.tol {
                        positive_tol(Some(t), Some(i))?;
                    }
                    Ok(row)
                })
                .collect::<Result<_, _>>()?,
            Some(_) => return Err(AuditError::config(None, "`rows` must be an array")),
        };
        Ok(Self {
            schema: SCHEMA_VERSION,
            seed,
            tol,
            rows,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

fn positive_tol(t: Option<f64>, row: Option<usize>) -> Result<f64, AuditError> {
    match t {
        Some(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(AuditError::config(row, "`tol` must be a positive number")),
    }
}

/// The algebras every law is audited on by default.
pub fn reference_algebras() -> Vec<AlgebraDescriptor> {
    vec![
        AlgebraDescriptor::real(4),
        AlgebraDescriptor::complex(4),
        AlgebraDescriptor::quaternionic(3),
        AlgebraDescriptor::spin(5),
        AlgebraDescriptor::direct_sum(vec![AlgebraDescriptor::complex(2), AlgebraDescriptor::real(3)]),
    ]
}

/// The three falsification demos on twisted(1.0) over ComplexHermitian(3),
/// each expected to fail.
pub fn demo_rows() -> Vec<SuiteRow> {
    LawId::CHARACTERIZING
        .iter()
        .map(|&law| SuiteRow {
            trials: DEMO_TRIALS,
            expect: Expectation::Fail,
            iso: (law == LawId::Invariance).then_some(IsoChoice::Transpose),
            ..SuiteRow::new(law, ProductSpec::Twisted(1.0), AlgebraDescriptor::complex(3))
        })
        .collect()
}

/// Demo rows followed by the same laws for the standard product, which must
/// pass at 1e-7.
pub fn characterization_rows() -> Vec<SuiteRow> {
    let mut rows = demo_rows();
    rows.extend(LawId::CHARACTERIZING.iter().map(|&law| SuiteRow {
        trials: DEMO_TRIALS,
        tol: Some(1e-7),
        iso: (law == LawId::Invariance).then_some(IsoChoice::Transpose),
        ..SuiteRow::new(law, ProductSpec::Standard, AlgebraDescriptor::complex(3))
    }));
    rows
}

/// Every law for the standard product on the reference algebras, the SEA
/// axioms and scalar law for twisted(0.5) and twisted(1.0), and the demos.
pub fn default_suite(seed: u64) -> SuiteConfig {
    let mut rows = Vec::new();
    for alg in reference_algebras() {
        for &law in LawId::ALL {
            let trials = if LawId::SEA.contains(&law) { SEA_TRIALS } else { DEFAULT_TRIALS };
            rows.push(SuiteRow {
                trials,
                ..SuiteRow::new(law, ProductSpec::Standard, alg.clone())
            });
        }
    }
    for t in [0.5, 1.0] {
        for &law in LawId::SEA.iter().chain([LawId::ScalarLinearity].iter()) {
            rows.push(SuiteRow {
                trials: SEA_TRIALS,
                ..SuiteRow::new(law, ProductSpec::Twisted(t), AlgebraDescriptor::complex(3))
            });
        }
    }
    rows.extend(demo_rows());
    SuiteConfig::new(seed, rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub schema: u32,
    pub status: Status,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn from_entries(entries: Vec<AuditEntry>) -> Self {
        let status = if entries.iter().all(AuditEntry::as_expected) { Status::Pass } else { Status::Fail };
        Self {
            schema: SCHEMA_VERSION,
            status,
            entries,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, AuditError> {
        let report: Self = serde_json::from_str(text)?;
        if report.schema != SCHEMA_VERSION {
            return Err(AuditError::config(None, format!("unsupported report schema {}", report.schema)));
        }
        Ok(report)
    }

    /// Fixed-width table, one line per entry.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<18} {:<13} {:<22} {:>6} {:>9} {:<8} {:<5} {:>10}\n",
            "law", "product", "algebra", "trials", "tol", "verdict", "ok", "max_resid"
        );
        for e in &self.entries {
            let verdict = match e.expected {
                Expectation::Fail => format!("{}*", e.verdict),
                Expectation::Pass => e.verdict.to_string(),
            };
            out.push_str(&format!(
                "{:<18} {:<13} {:<22} {:>6} {:>9.1e} {:<8} {:<5} {:>10.3e}\n",
                e.law.name(),
                e.product.to_string(),
                e.algebra.to_string(),
                e.trials,
                e.tol,
                verdict,
                if e.as_expected() { "yes" } else { "NO" },
                e.max_residual
            ));
            if let Some(err) = &e.error {
                out.push_str(&format!("    error: {}\n", err.message));
            }
        }
        let ok = self.entries.iter().filter(|e| e.as_expected()).count();
        out.push_str(&format!(
            "{ok}/{} rows as expected (* = expected to fail); status {}\n",
            self.entries.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Runs every row in order.
pub fn run_full_suite(config: &SuiteConfig) -> AuditReport {
    let entries = config
        .rows
        .iter()
        .map(|row| audit_law(&row.request(config.seed, config.tol)))
        .collect();
    AuditReport::from_entries(entries)
}

/// Zeroes timing fields so two reports can be compared byte for byte.
pub fn without_timing(report: &AuditReport) -> AuditReport {
    let mut r = report.clone();
    for e in &mut r.entries {
        e.elapsed_ms = 0.0;
    }
    r
}
