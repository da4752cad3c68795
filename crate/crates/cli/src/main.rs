//! qml: exact verification of quiver moduli constructions at desk scale.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qml::{exit_code_for, preset, run_suite, suite_names, SuiteConfig, PRESET_NAMES};
use qml_core::io::{
    dimvector_from_json, labeled_maps_to_json, matrix_to_json, param_from_json, quiver_from_json,
    representation_from_json, subspace_tuple_to_json, verdict_to_json,
};
use qml_core::{
    canonical_phi, canonical_psi, check_stability, dispatch_field, dual_zelevinsky_h, euler_form,
    enumerate_group, grassmannian_points, linear_quiver, orbit_partition, sigma_action,
    verify_zelevinsky_bijection, zelevinsky_g, Budget, DimVector, Error, Field, FieldSpec,
    FieldVisitor, Quiver, Result, StabilityParam, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(name = "qml", version, about = "quiver moduli laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Quiver description file (JSON)
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// Dimension vector: JSON file or inline comma list in vertex order
    #[arg(long)]
    alpha: Option<String>,
    /// Stability parameter: JSON file or inline comma list in vertex order
    #[arg(long)]
    theta: Option<String>,
    /// Base field: F2, F3, F5, F7 or Q
    #[arg(long, default_value = "F2")]
    field: String,
    /// Override for the derived-parameter bound N
    #[arg(long = "N")]
    n_value: Option<i64>,
    /// Enumeration budget per check (env QML_BUDGET overrides the default)
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads for suite execution
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Seed for randomized spot checks; fixing it makes reports byte-stable
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON result here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Euler form of two dimension vectors
    Euler {
        #[command(flatten)]
        common: Common,
        /// Second dimension vector (file or inline)
        #[arg(long)]
        beta: String,
    },
    /// Decide theta-(semi)stability of a representation by exhaustive search
    CheckStability {
        #[command(flatten)]
        common: Common,
        /// Representation file (JSON)
        #[arg(long)]
        rep: PathBuf,
    },
    /// Print the canonical projective-cover and injective-envelope maps
    /// with their labeled bases
    Resolve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Point counts and orbit decompositions of the two quiver Grassmannians
    Grassmannian {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        ambient: Ambient,
        /// Print the point count only
        #[arg(long)]
        count: bool,
    },
    /// Orbit-level two-sided correspondence report
    Correspond {
        #[command(flatten)]
        common: Common,
    },
    /// Zelevinsky and dual Zelevinsky maps on a linear type-A quiver
    Zelevinsky {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "zeta")]
        which: Which,
        /// Exhaustively verify the bijections onto the two flag loci
        #[arg(long)]
        verify: bool,
        /// Print the matrix of the chosen map for a representation file
        #[arg(long)]
        emit_matrix: bool,
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Run a verification suite
    Verify {
        /// engel-reineke, theta-pm, framed-stability, saturation,
        /// correspondence, zelevinsky, or all
        suite: String,
        #[command(flatten)]
        common: Common,
        /// Named instance: subspace-3-2, subspace-4-2, an-linear-111,
        /// an-linear-121
        #[arg(long)]
        preset: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Ambient {
    PPlus,
    IMinus,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Zeta,
    Eta,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_quiver(common: &Common) -> Result<Arc<Quiver>> {
    let path = common
        .quiver
        .as_ref()
        .ok_or_else(|| Error::Parse("--quiver is required".into()))?;
    Ok(Arc::new(quiver_from_json(&read_json(path)?)?))
}

fn parse_inline_ints(s: &str) -> Option<Vec<i64>> {
    let parts: Vec<_> = s.split(',').map(|p| p.trim().parse::<i64>()).collect();
    if parts.iter().all(std::result::Result::is_ok) && !s.trim().is_empty() {
        Some(parts.into_iter().map(std::result::Result::unwrap).collect())
    } else {
        None
    }
}

fn parse_alpha(spec: &str, q: &Quiver) -> Result<DimVector> {
    if let Some(ints) = parse_inline_ints(spec) {
        if ints.len() != q.num_vertices() || ints.iter().any(|&x| x < 0) {
            return Err(Error::Parse(format!(
                "dimension vector needs {} nonnegative entries",
                q.num_vertices()
            )));
        }
        return Ok(DimVector(ints.into_iter().map(|x| x as usize).collect()));
    }
    dimvector_from_json(&read_json(Path::new(spec))?, q)
}

fn parse_theta(spec: &str, q: &Quiver) -> Result<StabilityParam> {
    if let Some(ints) = parse_inline_ints(spec) {
        if ints.len() != q.num_vertices() {
            return Err(Error::Parse(format!(
                "stability parameter needs {} entries",
                q.num_vertices()
            )));
        }
        return Ok(StabilityParam(ints));
    }
    param_from_json(&read_json(Path::new(spec))?, q)
}

fn resolve_budget(common: &Common) -> u64 {
    common
        .budget
        .or_else(|| {
            std::env::var("QML_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_BUDGET)
}

fn field_spec(common: &Common) -> Result<FieldSpec> {
    common.field.parse()
}

fn emit(common: &Common, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v).expect("serializable report");
    match &common.out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

struct CheckStabilityCmd<'a> {
    quiver: &'a Arc<Quiver>,
    rep: &'a Value,
    theta: &'a StabilityParam,
    budget: u64,
}

impl<'a> FieldVisitor for CheckStabilityCmd<'a> {
    type Out = Result<Value>;
    fn visit<K: Field>(self) -> Result<Value> {
        if K::elements().is_none() {
            return Err(Error::UnsupportedField(
                "stability checking requires a finite field; rational \
                 representations are out of scope"
                    .into(),
            ));
        }
        let m = representation_from_json::<K>(self.rep, self.quiver)?;
        let mut b = Budget::new(self.budget);
        let verdict = check_stability(&m, self.theta, &mut b)?;
        Ok(verdict_to_json(&verdict, self.quiver))
    }
}

struct ResolveCmd<'a> {
    quiver: &'a Arc<Quiver>,
    rep: &'a Value,
    theta: &'a StabilityParam,
}

impl<'a> FieldVisitor for ResolveCmd<'a> {
    type Out = Result<Value>;
    fn visit<K: Field>(self) -> Result<Value> {
        let m = representation_from_json::<K>(self.rep, self.quiver)?;
        let (p_plus, p_basis, phi) = canonical_phi(&m, self.theta);
        let (i_minus, i_basis, psi) = canonical_psi(&m, self.theta);
        Ok(json!({
            "p_plus_dim": qml_core::io::dimvector_to_json(p_plus.dim(), self.quiver),
            "phi": labeled_maps_to_json(self.quiver, &p_basis, &phi),
            "i_minus_dim": qml_core::io::dimvector_to_json(i_minus.dim(), self.quiver),
            "psi": labeled_maps_to_json(self.quiver, &i_basis, &psi),
        }))
    }
}

struct GrassmannianCmd<'a> {
    quiver: &'a Arc<Quiver>,
    alpha: &'a DimVector,
    theta: &'a StabilityParam,
    ambient: Ambient,
    count_only: bool,
    budget: u64,
}

impl<'a> FieldVisitor for GrassmannianCmd<'a> {
    type Out = Result<Value>;
    fn visit<K: Field>(self) -> Result<Value> {
        if K::elements().is_none() {
            return Err(Error::UnsupportedField(
                "point enumeration requires a finite field".into(),
            ));
        }
        let mut b = Budget::new(self.budget);
        let (plus, minus) = self.theta.split();
        let (ambient_name, ambient_rep, basis, beta, group_dims) = match self.ambient {
            Ambient::PPlus => {
                let mult = self.alpha.restricted(&plus);
                let (p, basis) = qml_core::rep::proj_standard::<K>(self.quiver, &mult);
                let kernel_dims = p.dim().sub(self.alpha);
                ("p_plus", p, basis, kernel_dims, mult)
            }
            Ambient::IMinus => {
                let mult = self.alpha.restricted(&minus);
                let (i, basis) = qml_core::rep::inj_standard::<K>(self.quiver, &mult);
                ("i_minus", i, basis, self.alpha.clone(), mult)
            }
        };
        let points = grassmannian_points(&ambient_rep, &beta, &mut b)?;
        let mut out = json!({
            "ambient": ambient_name,
            "ambient_dim": qml_core::io::dimvector_to_json(ambient_rep.dim(), self.quiver),
            "point_dim": qml_core::io::dimvector_to_json(&beta, self.quiver),
            "points": points.len(),
        });
        if !self.count_only {
            let group = enumerate_group::<K>(&group_dims.0, &mut b)?;
            let orbits = orbit_partition(&points, &group, |h, p| sigma_action(&basis, h, p));
            let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
            let obj = out.as_object_mut().unwrap();
            obj.insert("orbits".into(), Value::from(orbits.len()));
            obj.insert("orbit_sizes".into(), json!(sizes));
            obj.insert(
                "orbit_representatives".into(),
                Value::Array(
                    orbits
                        .iter()
                        .map(|o| subspace_tuple_to_json(&o[0], self.quiver))
                        .collect(),
                ),
            );
        }
        Ok(out)
    }
}

struct CorrespondCmd<'a> {
    quiver: &'a Arc<Quiver>,
    alpha: &'a DimVector,
    theta: &'a StabilityParam,
    budget: u64,
}

impl<'a> FieldVisitor for CorrespondCmd<'a> {
    type Out = Result<Value>;
    fn visit<K: Field>(self) -> Result<Value> {
        if K::elements().is_none() {
            return Err(Error::UnsupportedField(
                "the correspondence sweep requires a finite field".into(),
            ));
        }
        let mut b = Budget::new(self.budget);
        let report =
            qml_core::verify_correspondence::<K>(self.quiver, self.alpha, self.theta, &mut b)?;
        Ok(report.to_json())
    }
}

struct ZelevinskyVerifyCmd<'a> {
    alpha: &'a DimVector,
    budget: u64,
}

impl<'a> FieldVisitor for ZelevinskyVerifyCmd<'a> {
    type Out = Result<Value>;
    fn visit<K: Field>(self) -> Result<Value> {
        if K::elements().is_none() {
            return Err(Error::UnsupportedField(
                "the flag enumeration requires a finite field".into(),
            ));
        }
        let mut b = Budget::new(self.budget);
        Ok(verify_zelevinsky_bijection::<K>(self.alpha, &mut b)?.to_json())
    }
}

struct ZelevinskyEmitCmd<'a> {
    quiver: &'a Arc<Quiver>,
    rep: &'a Value,
    which: Which,
}

impl<'a> FieldVisitor for ZelevinskyEmitCmd<'a> {
    type Out = Result<Value>;
    fn visit<K: Field>(self) -> Result<Value> {
        let m = representation_from_json::<K>(self.rep, self.quiver)?;
        let mat = match self.which {
            Which::Zeta => zelevinsky_g(&m)?,
            Which::Eta => dual_zelevinsky_h(&m)?,
        };
        Ok(json!({
            "which": match self.which { Which::Zeta => "zeta", Which::Eta => "eta" },
            "matrix": matrix_to_json(&mat),
        }))
    }
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Euler { common, beta } => {
            let q = load_quiver(&common)?;
            let a = parse_alpha(
                common
                    .alpha
                    .as_deref()
                    .ok_or_else(|| Error::Parse("--alpha is required".into()))?,
                &q,
            )?;
            let b = parse_alpha(&beta, &q)?;
            let value = euler_form(&q, &a, &b);
            println!("{value}");
            if common.out.is_some() {
                emit(&common, &json!({ "euler": value }))?;
            }
            Ok(0)
        }
        Command::CheckStability { common, rep } => {
            let q = load_quiver(&common)?;
            let theta = parse_theta(
                common
                    .theta
                    .as_deref()
                    .ok_or_else(|| Error::Parse("--theta is required".into()))?,
                &q,
            )?;
            let rep_json = read_json(&rep)?;
            let verdict = dispatch_field(
                field_spec(&common)?,
                CheckStabilityCmd {
                    quiver: &q,
                    rep: &rep_json,
                    theta: &theta,
                    budget: resolve_budget(&common),
                },
            )??;
            emit(&common, &verdict)?;
            Ok(0)
        }
        Command::Resolve { common, rep } => {
            let q = load_quiver(&common)?;
            let theta = parse_theta(
                common
                    .theta
                    .as_deref()
                    .ok_or_else(|| Error::Parse("--theta is required".into()))?,
                &q,
            )?;
            let rep_json = read_json(&rep)?;
            let out = dispatch_field(
                field_spec(&common)?,
                ResolveCmd {
                    quiver: &q,
                    rep: &rep_json,
                    theta: &theta,
                },
            )??;
            emit(&common, &out)?;
            Ok(0)
        }
        Command::Grassmannian { common, ambient, count } => {
            let q = load_quiver(&common)?;
            let alpha = parse_alpha(
                common
                    .alpha
                    .as_deref()
                    .ok_or_else(|| Error::Parse("--alpha is required".into()))?,
                &q,
            )?;
            let theta = parse_theta(
                common
                    .theta
                    .as_deref()
                    .ok_or_else(|| Error::Parse("--theta is required".into()))?,
                &q,
            )?;
            let out = dispatch_field(
                field_spec(&common)?,
                GrassmannianCmd {
                    quiver: &q,
                    alpha: &alpha,
                    theta: &theta,
                    ambient,
                    count_only: count,
                    budget: resolve_budget(&common),
                },
            )??;
            emit(&common, &out)?;
            Ok(0)
        }
        Command::Correspond { common } => {
            let q = load_quiver(&common)?;
            let alpha = parse_alpha(
                common
                    .alpha
                    .as_deref()
                    .ok_or_else(|| Error::Parse("--alpha is required".into()))?,
                &q,
            )?;
            let theta = parse_theta(
                common
                    .theta
                    .as_deref()
                    .ok_or_else(|| Error::Parse("--theta is required".into()))?,
                &q,
            )?;
            let report = dispatch_field(
                field_spec(&common)?,
                CorrespondCmd {
                    quiver: &q,
                    alpha: &alpha,
                    theta: &theta,
                    budget: resolve_budget(&common),
                },
            )??;
            let pass = report.get("pass").and_then(Value::as_bool).unwrap_or(false);
            emit(&common, &report)?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::Zelevinsky { common, which, verify, emit_matrix, rep } => {
            let alpha_spec = common
                .alpha
                .as_deref()
                .ok_or_else(|| Error::Parse("--alpha is required".into()))?;
            let ints = parse_inline_ints(alpha_spec)
                .ok_or_else(|| Error::Parse("zelevinsky expects an inline --alpha list".into()))?;
            if ints.iter().any(|&x| x < 0) || ints.is_empty() {
                return Err(Error::Parse("--alpha entries must be nonnegative".into()));
            }
            let alpha = DimVector(ints.into_iter().map(|x| x as usize).collect());
            let spec = field_spec(&common)?;
            if emit_matrix {
                let rep_path =
                    rep.ok_or_else(|| Error::Parse("--emit-matrix needs --rep".into()))?;
                let q = Arc::new(linear_quiver(alpha.len()));
                let rep_json = read_json(&rep_path)?;
                let out = dispatch_field(
                    spec,
                    ZelevinskyEmitCmd {
                        quiver: &q,
                        rep: &rep_json,
                        which,
                    },
                )??;
                emit(&common, &out)?;
                return Ok(0);
            }
            if verify {
                let out = dispatch_field(
                    spec,
                    ZelevinskyVerifyCmd {
                        alpha: &alpha,
                        budget: resolve_budget(&common),
                    },
                )??;
                let pass = out.get("pass").and_then(Value::as_bool).unwrap_or(false);
                emit(&common, &out)?;
                return Ok(if pass { 0 } else { 1 });
            }
            Err(Error::Parse(
                "zelevinsky needs either --verify or --emit-matrix".into(),
            ))
        }
        Command::Verify { suite, common, preset: preset_name } => {
            let known: Vec<&str> = suite_names();
            if suite != "all" && !known.contains(&suite.as_str()) {
                return Err(Error::Parse(format!(
                    "unknown suite {suite}; expected one of {} or all",
                    known.join(", ")
                )));
            }
            let mut cfg = match &preset_name {
                Some(name) => SuiteConfig::from_preset(&suite, &preset(name)?),
                None => {
                    let q = load_quiver(&common)?;
                    let alpha = parse_alpha(
                        common
                            .alpha
                            .as_deref()
                            .ok_or_else(|| Error::Parse("--alpha is required".into()))?,
                        &q,
                    )?;
                    let theta = parse_theta(
                        common
                            .theta
                            .as_deref()
                            .ok_or_else(|| Error::Parse("--theta is required".into()))?,
                        &q,
                    )?;
                    let mut c = SuiteConfig {
                        suite: suite.clone(),
                        quiver: q,
                        alpha,
                        theta,
                        field: field_spec(&common)?,
                        n_override: None,
                        budget: DEFAULT_BUDGET,
                        workers: 1,
                        seed: None,
                    };
                    c.field = field_spec(&common)?;
                    c
                }
            };
            if preset_name.is_some() {
                // presets fix the instance; the field flag may still narrow it
                if common.field != "F2" {
                    cfg.field = field_spec(&common)?;
                }
            }
            cfg.n_override = common.n_value;
            cfg.budget = resolve_budget(&common);
            cfg.workers = common.workers;
            cfg.seed = common.seed;
            let result = run_suite(&cfg);
            let code = exit_code_for(&result);
            let report = result?;
            emit(&common, &report)?;
            Ok(code)
        }
    }
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::UnknownPreset(_)) {
                eprintln!("available presets: {}", PRESET_NAMES.join(", "));
            }
            let code = match e {
                Error::BudgetExceeded { .. } => 3,
                _ => 2,
            };
            std::process::exit(code);
        }
    }
}
