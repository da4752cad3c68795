//! Preset instances, suite configuration and suite orchestration for the
//! command-line surface.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use qml_core::{
    default_n, dispatch_field, linear_chain, subspace_quiver, subspace_theta,
    verify_correspondence, verify_engel_reineke, verify_equivariance_random,
    verify_framed_stability, verify_saturation, verify_theta_pm, verify_zelevinsky_bijection,
    Budget, DimVector, Error, Field, FieldSpec, FieldVisitor, Quiver, Result, StabilityParam,
    DEFAULT_BUDGET,
};

pub const SCHEMA_VERSION: u32 = 1;

/// A ready-made instance: quiver, dimension vector, stability parameter and
/// base field.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: String,
    pub quiver: Arc<Quiver>,
    pub alpha: DimVector,
    pub theta: StabilityParam,
    pub field: FieldSpec,
}

/// The named instances used by the verification suites: the 3- and
/// 4-subspace quivers with weight-one stability, and two linearly oriented
/// type-A instances at trivial stability.
pub fn preset(name: &str) -> Result<Preset> {
    match name {
        "subspace-3-2" => {
            let q = Arc::new(subspace_quiver(3));
            let theta = subspace_theta(&q, &[1, 1, 1], 2)?;
            Ok(Preset {
                name: name.into(),
                quiver: q,
                alpha: DimVector(vec![1, 1, 1, 2]),
                theta,
                field: FieldSpec::Prime(2),
            })
        }
        "subspace-4-2" => {
            let q = Arc::new(subspace_quiver(4));
            let theta = subspace_theta(&q, &[1, 1, 1, 1], 2)?;
            Ok(Preset {
                name: name.into(),
                quiver: q,
                alpha: DimVector(vec![1, 1, 1, 1, 2]),
                theta,
                field: FieldSpec::Prime(2),
            })
        }
        "an-linear-111" => Ok(Preset {
            name: name.into(),
            quiver: Arc::new(qml_core::linear_quiver(3)),
            alpha: DimVector(vec![1, 1, 1]),
            theta: StabilityParam::zeros(3),
            field: FieldSpec::Prime(2),
        }),
        "an-linear-121" => Ok(Preset {
            name: name.into(),
            quiver: Arc::new(qml_core::linear_quiver(3)),
            alpha: DimVector(vec![1, 2, 1]),
            theta: StabilityParam::zeros(3),
            field: FieldSpec::Prime(2),
        }),
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

pub const PRESET_NAMES: &[&str] = &[
    "subspace-3-2",
    "subspace-4-2",
    "an-linear-111",
    "an-linear-121",
];

/// Which verification operations each suite runs. Every operation is
/// reachable from exactly one named suite; "all" is their union.
pub const SUITE_OPS: &[(&str, &[&str])] = &[
    ("engel-reineke", &["verify_engel_reineke"]),
    ("theta-pm", &["verify_theta_pm"]),
    ("framed-stability", &["verify_framed_stability"]),
    ("saturation", &["verify_saturation", "verify_equivariance_random"]),
    ("correspondence", &["verify_correspondence"]),
    ("zelevinsky", &["verify_zelevinsky_bijection"]),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITE_OPS.iter().map(|(n, _)| *n).collect()
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: String,
    pub quiver: Arc<Quiver>,
    pub alpha: DimVector,
    pub theta: StabilityParam,
    pub field: FieldSpec,
    pub n_override: Option<i64>,
    pub budget: u64,
    pub workers: usize,
    pub seed: Option<u64>,
}

impl SuiteConfig {
    pub fn from_preset(suite: &str, p: &Preset) -> Self {
        SuiteConfig {
            suite: suite.to_string(),
            quiver: p.quiver.clone(),
            alpha: p.alpha.clone(),
            theta: p.theta.clone(),
            field: p.field,
            n_override: None,
            budget: DEFAULT_BUDGET,
            workers: 1,
            seed: None,
        }
    }
}

/// One named check of a suite, run against a fresh budget.
struct Check {
    name: String,
    run: CheckFn,
}

type CheckFn = Box<dyn Fn(&SuiteConfig) -> Result<Value> + Send + Sync>;

struct SuiteVisitor<'a> {
    cfg: &'a SuiteConfig,
}

impl<'a> FieldVisitor for SuiteVisitor<'a> {
    type Out = Result<Vec<Check>>;

    fn visit<K: Field>(self) -> Result<Vec<Check>> {
        if K::elements().is_none() {
            return Err(Error::UnsupportedField(
                "verification suites require a finite field".into(),
            ));
        }
        let cfg = self.cfg;
        let mut checks: Vec<Check> = Vec::new();
        let n_default = default_n(&cfg.theta, &cfg.alpha);
        let n_values: Vec<i64> = match cfg.n_override {
            Some(n) => vec![n],
            // exercise robustness in N whenever no explicit value is given
            None => vec![n_default, n_default + 7],
        };
        let (plus, minus) = cfg.theta.split();
        let beta_plus = cfg.alpha.restricted(&plus);
        let beta_minus = cfg.alpha.restricted(&minus);

        let wants = |s: &str| cfg.suite == s || cfg.suite == "all";

        if wants("engel-reineke") {
            let mut betas = vec![beta_plus.clone()];
            if beta_minus != beta_plus {
                betas.push(beta_minus.clone());
            }
            for beta in betas {
                checks.push(Check {
                    name: format!("engel-reineke[beta={beta}]"),
                    run: Box::new(move |cfg: &SuiteConfig| {
                        let mut b = Budget::new(cfg.budget);
                        let r = verify_engel_reineke::<K>(&cfg.quiver, &cfg.alpha, &beta, &mut b)?;
                        Ok(r.to_json())
                    }),
                });
            }
        }
        if wants("theta-pm") {
            for &n in &n_values {
                checks.push(Check {
                    name: format!("theta-pm[N={n}]"),
                    run: Box::new(move |cfg: &SuiteConfig| {
                        let mut b = Budget::new(cfg.budget);
                        let r = verify_theta_pm::<K>(&cfg.quiver, &cfg.alpha, &cfg.theta, n, &mut b)?;
                        Ok(r.to_json())
                    }),
                });
            }
        }
        if wants("framed-stability") {
            for &n in &n_values {
                checks.push(Check {
                    name: format!("framed-stability[N={n}]"),
                    run: Box::new(move |cfg: &SuiteConfig| {
                        let mut b = Budget::new(cfg.budget);
                        let r = verify_framed_stability::<K>(
                            &cfg.quiver,
                            &cfg.alpha,
                            &cfg.theta,
                            n,
                            &mut b,
                        )?;
                        Ok(r.to_json())
                    }),
                });
            }
        }
        if wants("saturation") {
            let n = cfg.n_override.unwrap_or(n_default);
            checks.push(Check {
                name: format!("saturation[N={n}]"),
                run: Box::new(move |cfg: &SuiteConfig| {
                    let mut b = Budget::new(cfg.budget);
                    let r = verify_saturation::<K>(&cfg.quiver, &cfg.alpha, &cfg.theta, n, &mut b)?;
                    Ok(r.to_json())
                }),
            });
            checks.push(Check {
                name: "equivariance[samples=200]".into(),
                run: Box::new(move |cfg: &SuiteConfig| {
                    let mut b = Budget::new(cfg.budget);
                    let r = verify_equivariance_random::<K>(
                        &cfg.quiver,
                        &cfg.alpha,
                        &cfg.theta,
                        200,
                        cfg.seed.unwrap_or(0),
                        &mut b,
                    )?;
                    Ok(r.to_json())
                }),
            });
        }
        if wants("correspondence") {
            checks.push(Check {
                name: "correspondence".into(),
                run: Box::new(move |cfg: &SuiteConfig| {
                    let mut b = Budget::new(cfg.budget);
                    let r = verify_correspondence::<K>(&cfg.quiver, &cfg.alpha, &cfg.theta, &mut b)?;
                    Ok(r.to_json())
                }),
            });
        }
        let linear = linear_chain(&cfg.quiver).is_ok();
        if cfg.suite == "zelevinsky" || (cfg.suite == "all" && linear) {
            checks.push(Check {
                name: "zelevinsky".into(),
                run: Box::new(move |cfg: &SuiteConfig| {
                    let mut b = Budget::new(cfg.budget);
                    let r = verify_zelevinsky_bijection::<K>(&cfg.alpha, &mut b)?;
                    Ok(r.to_json())
                }),
            });
        }
        if checks.is_empty() {
            return Err(Error::Parse(format!("unknown suite {}", cfg.suite)));
        }
        Ok(checks)
    }
}

/// Run a suite and assemble its deterministic report.
///
/// Checks run concurrently up to the worker count; the report lists them
/// sorted by name. Per-check wall times are only recorded when no seed is
/// fixed, so seeded runs are byte-identical.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Value> {
    let checks = dispatch_field(cfg.field, SuiteVisitor { cfg })??;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::Parse(format!("worker pool: {e}")))?;
    let results: Vec<(String, Result<Value>, u128)> = pool.install(|| {
        checks
            .par_iter()
            .map(|c| {
                let t0 = Instant::now();
                let r = (c.run)(cfg);
                (c.name.clone(), r, t0.elapsed().as_millis())
            })
            .collect()
    });
    let mut rows: Vec<(String, Value, u128)> = Vec::new();
    for (name, r, ms) in results {
        rows.push((name, r?, ms));
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0));

    let mut failures_total = 0u64;
    let mut checks_json = Vec::new();
    for (name, mut body, ms) in rows {
        if let Some(obj) = body.as_object_mut() {
            obj.insert("name".into(), Value::from(name.clone()));
            if cfg.seed.is_none() {
                obj.insert("elapsed_ms".into(), Value::from(ms as u64));
            }
            failures_total += obj
                .get("failures")
                .and_then(Value::as_array)
                .map_or(0, |f| f.len() as u64);
        }
        checks_json.push(body);
    }
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "suite": cfg.suite,
        "field": cfg.field.to_string(),
        "alpha": qml_core::io::dimvector_to_json(&cfg.alpha, &cfg.quiver),
        "theta": qml_core::io::param_to_json(&cfg.theta, &cfg.quiver),
        "budget": cfg.budget,
        "seed": cfg.seed,
        "checks": checks_json,
        "failures_total": failures_total,
        "pass": failures_total == 0,
    }))
}

/// Exit codes: 0 all checks pass, 1 checks failed, 2 parse error,
/// 3 budget exceeded.
pub fn exit_code_for(r: &Result<Value>) -> i32 {
    match r {
        Ok(v) => {
            if v.get("pass").and_then(Value::as_bool).unwrap_or(false) {
                0
            } else {
                1
            }
        }
        Err(Error::BudgetExceeded { .. }) => 3,
        Err(_) => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn presets_resolve() {
        for name in PRESET_NAMES {
            let p = preset(name).unwrap();
            assert_eq!(p.theta.value(&p.alpha), 0);
        }
        assert!(matches!(preset("nope"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn preset_subspace_3_2_matches_running_example() {
        let p = preset("subspace-3-2").unwrap();
        assert_eq!(p.alpha, DimVector(vec![1, 1, 1, 2]));
        assert_eq!(p.theta, StabilityParam(vec![2, 2, 2, -3]));
        assert_eq!(p.field, FieldSpec::Prime(2));
    }

    #[test]
    fn every_verify_op_has_exactly_one_suite() {
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        for (_, ops) in SUITE_OPS {
            for op in *ops {
                *seen.entry(op).or_default() += 1;
            }
        }
        let expected = [
            "verify_engel_reineke",
            "verify_theta_pm",
            "verify_framed_stability",
            "verify_saturation",
            "verify_equivariance_random",
            "verify_correspondence",
            "verify_zelevinsky_bijection",
        ];
        for op in expected {
            assert_eq!(seen.get(op), Some(&1), "op {op} must be in exactly one suite");
        }
        assert_eq!(seen.len(), expected.len());
    }

    #[test]
    fn budget_one_exceeds() {
        let p = preset("subspace-3-2").unwrap();
        let mut cfg = SuiteConfig::from_preset("engel-reineke", &p);
        cfg.budget = 1;
        let r = run_suite(&cfg);
        assert_eq!(exit_code_for(&r), 3);
    }

    #[test]
    fn seeded_runs_are_byte_identical() {
        let p = preset("an-linear-111").unwrap();
        let mut cfg = SuiteConfig::from_preset("zelevinsky", &p);
        cfg.seed = Some(7);
        let a = serde_json::to_string_pretty(&run_suite(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string_pretty(&run_suite(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(!a.contains("elapsed_ms"));
    }
}
