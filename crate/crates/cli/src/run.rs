//! Executes a [`RunConfig`] and assembles the JSON report.

use std::panic::{catch_unwind, AssertUnwindSafe};

use serde::Serialize;
use serde_json::{json, Map, Value};
use tdual_core::contcheck::{check_c_form, quadrature, standard_cutoffs, StructureConstants};
use tdual_core::flagcoh::{
    build_complex, class_in_h3, cohomology_report, dualizability_report, h3_of_k, is_cycle,
};
use tdual_core::loopext::{
    admissibility_check, commutator_from_level, fibrewise_trivializable, CommutatorMap,
    ExtensionInput,
};
use tdual_core::rootdata::{
    all_roots, basic_form, find_phi, langlands_dual, PhiSearch, RootDatum, FORM_NORMALIZATION,
};
use tdual_core::tduality::{
    dual_chern, langlands_twist, reduction_torsor_shift, verify_langlands_tdual, ShiftMatrix,
    TwistClass, BASIS_CONVENTION,
};
use tdual_core::zlinalg::{FgAbGroup, Lattice};
use tdual_core::Error;

use crate::args::{RunConfig, TwistSpec, UsageError, Verb};
use crate::input::{check_square, int_matrix, load_group, rat_matrix};

pub const SCHEMA: &str = "tdual-lie/1";
pub const DEFAULT_PRECISION: usize = 4096;
const CUTOFF_TOLERANCE: f64 = 1e-9;

/// Boolean findings a verb can be asked to assert with `--expect`.
pub fn findings_for(verb: Verb) -> &'static [&'static str] {
    match verb {
        Verb::Group => &["simply_connected", "adjoint", "simply_laced"],
        Verb::Cohomology => &["torsion_free"],
        Verb::Twist => &["cycle"],
        Verb::Dualize => &["dualizable", "cycle", "langlands_match"],
        Verb::Langlands => &["available", "match", "cycle"],
        Verb::Extension => &["trivializable", "admissible"],
        Verb::Contcheck => &["passed"],
    }
}

/// Report for one group (or for `contcheck`) with its findings.
#[derive(Debug, Clone)]
struct Section {
    group: Option<Value>,
    result: Value,
    findings: Vec<(&'static str, bool)>,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: Value,
    pub exit_code: i32,
}

pub fn conventions() -> Value {
    json!({
        "coordinates": "t in fundamental coweights, t* in fundamental weights; cartan[i][j] = <α_i^∨, α_j>, Bourbaki numbering",
        "form_normalization": FORM_NORMALIZATION,
        "twist_basis": BASIS_CONVENTION,
        "twist_matrix": "column a is u(λ_a) in fundamental weight coordinates",
        "lattices": "generators are listed as vectors in canonical Hermite form",
    })
}

/// Runs the config. Usage errors (unknown groups, malformed matrices) are returned as `Err`.
pub fn run(config: &RunConfig) -> Result<RunOutput, UsageError> {
    let sections = if config.verb == Verb::Contcheck {
        vec![guarded(|| {
            contcheck(config.precision.unwrap_or(DEFAULT_PRECISION))
        })]
    } else {
        let groups = config
            .groups
            .iter()
            .map(load_group)
            .collect::<Result<Vec<_>, _>>()?;
        let inputs = groups
            .iter()
            .map(|rd| VerbInput::prepare(config, rd))
            .collect::<Result<Vec<_>, _>>()?;
        if inputs.len() == 1 {
            vec![run_group(config.verb, &groups[0], &inputs[0])]
        } else {
            std::thread::scope(|s| {
                let handles: Vec<_> = groups
                    .iter()
                    .zip(&inputs)
                    .map(|(rd, inp)| s.spawn(move || run_group(config.verb, rd, inp)))
                    .collect();
                handles
                    .into_iter()
                    .zip(&groups)
                    .map(|(h, rd)| {
                        h.join().unwrap_or_else(|_| Section {
                            group: Some(group_summary(rd)),
                            result: error_value("internal", "worker thread failed"),
                            findings: Vec::new(),
                        })
                    })
                    .collect()
            })
        }
    };

    let mut expectations = Vec::new();
    let mut all_ok = true;
    for section in &sections {
        for e in &config.expect {
            let (name, wanted) = match e.strip_prefix("not-") {
                Some(n) => (n, false),
                None => (e.as_str(), true),
            };
            let observed = section
                .findings
                .iter()
                .find(|(k, _)| *k == name)
                .map(|(_, v)| *v);
            let ok = observed == Some(wanted);
            all_ok &= ok;
            let mut entry = Map::new();
            if let Some(g) = &section.group {
                entry.insert("group".into(), g["label"].clone());
            }
            entry.insert("finding".into(), json!(name));
            entry.insert("expected".into(), json!(wanted));
            entry.insert("observed".into(), json!(observed));
            entry.insert("ok".into(), json!(ok));
            expectations.push(Value::Object(entry));
        }
    }

    let mut report = Map::new();
    report.insert("schema".into(), json!(SCHEMA));
    report.insert("verb".into(), json!(config.verb.name()));
    report.insert("conventions".into(), conventions());
    report.insert("level".into(), json!(config.level));
    let section_value = |s: &Section| {
        let mut m = Map::new();
        if let Some(g) = &s.group {
            m.insert("group".into(), g.clone());
        }
        m.insert("result".into(), s.result.clone());
        m
    };
    if config.groups.len() > 1 {
        let runs: Vec<Value> = sections
            .iter()
            .map(|s| Value::Object(section_value(s)))
            .collect();
        report.insert("runs".into(), Value::Array(runs));
    } else {
        report.extend(section_value(&sections[0]));
    }
    if !expectations.is_empty() {
        report.insert("expectations".into(), Value::Array(expectations));
    }
    Ok(RunOutput {
        report: Value::Object(report),
        exit_code: if all_ok { 0 } else { 1 },
    })
}

/// Per-group inputs validated up front, so malformed matrices are usage errors.
#[derive(Debug, Clone)]
enum VerbInput {
    None,
    Twist {
        twist: TwistSpec,
        shift: Option<ShiftMatrix>,
    },
    Extension {
        level: i64,
        b: Option<Vec<Vec<num_rational::BigRational>>>,
    },
}

impl VerbInput {
    fn prepare(config: &RunConfig, rd: &RootDatum) -> Result<VerbInput, UsageError> {
        let r = rd.rank();
        Ok(match config.verb {
            Verb::Twist | Verb::Dualize => {
                let twist = match config.twist.clone().unwrap_or(TwistSpec::Level(None)) {
                    TwistSpec::Level(None) => TwistSpec::Level(Some(config.level)),
                    TwistSpec::Level(Some(k)) if k < 0 => {
                        return Err(UsageError(format!("negative level {k}")))
                    }
                    TwistSpec::Matrix(rows) => {
                        check_square(&int_matrix(&rows, "twist")?, r, "twist")?;
                        TwistSpec::Matrix(rows)
                    }
                    other => other,
                };
                let shift = match &config.shift {
                    None => None,
                    Some(rows) => {
                        let m = int_matrix(rows, "shift")?;
                        check_square(&m, r, "shift")?;
                        let below = (0..r).any(|i| (0..=i).any(|j| m[(i, j)] != 0.into()));
                        if below {
                            return Err(UsageError(
                                "shift must be strictly upper triangular".into(),
                            ));
                        }
                        Some(ShiftMatrix::new(m).map_err(|e| UsageError(format!("shift: {e}")))?)
                    }
                };
                VerbInput::Twist { twist, shift }
            }
            Verb::Extension => {
                let b = match &config.b {
                    None => None,
                    Some(rows) => {
                        let b = rat_matrix(rows, "commutator")?;
                        if b.len() != r || b.iter().any(|row| row.len() != r) {
                            return Err(UsageError(format!("commutator map must be {r}×{r}")));
                        }
                        Some(b)
                    }
                };
                VerbInput::Extension {
                    level: config.level,
                    b,
                }
            }
            _ => VerbInput::None,
        })
    }
}

fn run_group(verb: Verb, rd: &RootDatum, input: &VerbInput) -> Section {
    let mut s = guarded(|| match (verb, input) {
        (Verb::Group, _) => group_section(rd),
        (Verb::Cohomology, _) => cohomology_section(rd),
        (Verb::Twist, VerbInput::Twist { twist, .. }) => twist_section(rd, twist),
        (Verb::Dualize, VerbInput::Twist { twist, shift }) => {
            dualize_section(rd, twist, shift.as_ref())
        }
        (Verb::Langlands, _) => langlands_section(rd),
        (Verb::Extension, VerbInput::Extension { level, b }) => extension_section(rd, *level, b),
        _ => Section {
            group: None,
            result: error_value("internal", "verb and input do not match"),
            findings: Vec::new(),
        },
    });
    s.group = Some(group_summary(rd));
    s
}

/// Runs `f`, turning a panic inside the library into a structured error entry.
fn guarded(f: impl FnOnce() -> Section) -> Section {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        Section {
            group: None,
            result: error_value("internal", &msg),
            findings: Vec::new(),
        }
    })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or_else(|e| error_value("serialization", &e.to_string()))
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotSublattice => "not_sublattice",
        Error::NotCompatible(_) => "not_compatible",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::DependentBasis => "dependent_basis",
        Error::InvalidSeries(_) => "invalid_series",
        Error::InvalidCenterSubgroup(_) => "invalid_center_subgroup",
        Error::NotBetweenLattices => "not_between_lattices",
        Error::RequiresExplicitB(_) => "requires_explicit_b",
        Error::NotACycle => "not_a_cycle",
        Error::Unavailable(_) => "unavailable",
        Error::InadmissibleCutoff(_) => "inadmissible_cutoff",
        Error::InvalidInput(_) => "invalid_input",
        Error::Internal(_) => "internal",
    }
}

fn error_value(kind: &str, message: &str) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

fn module_error(e: &Error) -> Value {
    error_value(error_kind(e), &e.to_string())
}

fn errored(e: &Error) -> Section {
    Section {
        group: None,
        result: module_error(e),
        findings: Vec::new(),
    }
}

/// Generators of a lattice as a list of vectors.
fn generators(l: &Lattice) -> Value {
    to_value(&l.basis.transpose())
}

fn fg_group(g: &FgAbGroup) -> Value {
    let mut v = to_value(g);
    if let Value::Object(m) = &mut v {
        m.insert("description".into(), json!(g.describe()));
    }
    v
}

fn group_summary(rd: &RootDatum) -> Value {
    json!({
        "label": rd.label,
        "components": to_value(&rd.components),
        "rank": rd.rank(),
        "fundamental_group_order": to_value_bigint(&rd.fundamental_group_order()),
    })
}

fn to_value_bigint(x: &num_bigint::BigInt) -> Value {
    x.to_string()
        .parse::<i64>()
        .map(Value::from)
        .unwrap_or_else(|_| Value::from(x.to_string()))
}

fn group_section(rd: &RootDatum) -> Section {
    let kind = if rd.is_simply_connected() && rd.is_adjoint() {
        "simply_connected_and_adjoint"
    } else if rd.is_simply_connected() {
        "simply_connected"
    } else if rd.is_adjoint() {
        "adjoint"
    } else {
        "intermediate"
    };
    let phi = match find_phi(rd) {
        PhiSearch::Found(iso) => json!({ "available": true, "permutation": iso.perm }),
        PhiSearch::Absent {
            obstructions,
            nodes_explored,
        } => json!({
            "available": false,
            "obstructions": obstructions,
            "nodes_explored": nodes_explored,
        }),
    };
    let result = json!({
        "cartan": to_value(&rd.cartan),
        "integral_lattice": generators(&rd.integral_lattice),
        "fundamental_group": {
            "kind": kind,
            "structure": rd.fundamental_group_structure().describe(),
        },
        "simply_laced": rd.is_simply_laced(),
        "root_count": all_roots(rd).len(),
        "coroot_symmetrizer": to_value(&rd.coroot_symmetrizer().iter().map(to_value_bigint).collect::<Vec<_>>()),
        "iota_star": to_value(&rd.dual_basis()),
        "langlands_dual": langlands_dual(rd).label,
        "dynkin_isomorphism_to_dual": phi,
    });
    Section {
        group: None,
        result,
        findings: vec![
            ("simply_connected", rd.is_simply_connected()),
            ("adjoint", rd.is_adjoint()),
            ("simply_laced", rd.is_simply_laced()),
        ],
    }
}

fn cohomology_section(rd: &RootDatum) -> Section {
    let rep = match cohomology_report(rd) {
        Ok(r) => r,
        Err(e) => return errored(&e),
    };
    let result = json!({
        "h1_k": fg_group(&rep.h1_k),
        "h2_k": fg_group(&rep.h2_k),
        "h3_k": fg_group(&rep.h3_k),
        "h2_b": fg_group(&rep.h2_b),
        "h4_b": fg_group(&rep.h4_b),
        "h4_b_torsion_flag": rep.h4_b_torsion_flag,
        "chern_classes": to_value(&rep.chern),
        "complex_ranks": rep.complex_ranks,
        "filtration": rep.filtration,
    });
    Section {
        group: None,
        result,
        findings: vec![("torsion_free", !rep.h4_b_torsion_flag)],
    }
}

fn resolve_twist(rd: &RootDatum, spec: &TwistSpec) -> Result<TwistClass, Error> {
    match spec {
        TwistSpec::Langlands => langlands_twist(rd),
        TwistSpec::Level(k) => TwistClass::from_level(rd, k.unwrap_or(1)),
        TwistSpec::Matrix(rows) => {
            let m = int_matrix(rows, "twist").map_err(|e| Error::InvalidInput(e.0))?;
            TwistClass::from_matrix(rd, m)
        }
    }
}

fn twist_spec_label(spec: &TwistSpec) -> String {
    match spec {
        TwistSpec::Langlands => "langlands".into(),
        TwistSpec::Level(k) => format!("level:{}", k.unwrap_or(1)),
        TwistSpec::Matrix(_) => "matrix".into(),
    }
}

/// Twist matrix, cycle test and class in `H³`.
fn twist_value(rd: &RootDatum, spec: &TwistSpec, u: &TwistClass) -> Result<(Value, bool), Error> {
    let cx = build_complex(rd)?;
    let h3 = h3_of_k(&cx)?;
    let cycle = is_cycle(&cx, u);
    let mut m = Map::new();
    m.insert("source".into(), json!(twist_spec_label(spec)));
    m.insert("matrix".into(), to_value(u.matrix()));
    m.insert("cycle".into(), json!(cycle));
    m.insert("h3_k".into(), json!(h3.describe()));
    if cycle {
        let class = class_in_h3(&cx, &h3, u)?;
        m.insert(
            "class".into(),
            Value::Array(class.iter().map(to_value_bigint).collect()),
        );
    }
    Ok((Value::Object(m), cycle))
}

fn twist_section(rd: &RootDatum, spec: &TwistSpec) -> Section {
    let run = || -> Result<Section, Error> {
        let u = resolve_twist(rd, spec)?;
        let (v, cycle) = twist_value(rd, spec, &u)?;
        Ok(Section {
            group: None,
            result: json!({ "twist_class": v }),
            findings: vec![("cycle", cycle)],
        })
    };
    run().unwrap_or_else(|e| errored(&e))
}

fn langlands_summary(rd: &RootDatum) -> (Value, bool) {
    match verify_langlands_tdual(rd) {
        Ok(r) => (
            json!({
                "available": true,
                "match": r.lattices_equal,
                "twist_is_cycle": r.twist_is_cycle,
            }),
            r.lattices_equal,
        ),
        Err(Error::Unavailable(msg)) => (
            json!({ "available": false, "match": false, "reason": msg }),
            false,
        ),
        Err(e) => (
            json!({ "available": false, "match": false, "error": module_error(&e)["error"] }),
            false,
        ),
    }
}

fn dualize_section(rd: &RootDatum, spec: &TwistSpec, shift: Option<&ShiftMatrix>) -> Section {
    let run = || -> Result<Section, Error> {
        let u = resolve_twist(rd, spec)?;
        let (twist, cycle) = twist_value(rd, spec, &u)?;
        let mut m = Map::new();
        m.insert("twist_class".into(), twist);
        let mut findings = vec![("cycle", cycle)];
        if cycle {
            let rep = dualizability_report(rd, &u)?;
            let d = dual_chern(rd, &u)?;
            findings.push(("dualizable", rep.dualizable));
            m.insert("dualizable".into(), json!(rep.dualizable));
            m.insert("dualizability".into(), to_value(&rep));
            m.insert("dual_chern_lattice".into(), generators(&d.lattice));
            m.insert("dual_chern_index".into(), to_value_bigint(&d.index));
            m.insert("dual_chern_classes".into(), to_value(&d.classes));
            if let Some(b) = shift {
                let t = reduction_torsor_shift(rd, &u, b)?;
                let shifted = dual_chern(rd, &t.twist)?;
                m.insert(
                    "shift".into(),
                    json!({
                        "b": to_value(&b.b),
                        "twist": to_value(t.twist.matrix()),
                        "dual_chern_classes": to_value(&t.dual_chern),
                        "dual_chern_lattice": generators(&shifted.lattice),
                        "class": Value::Array(t.class.iter().map(to_value_bigint).collect()),
                        "class_unchanged": t.class == rep.class,
                    }),
                );
            }
        } else {
            findings.push(("dualizable", false));
            m.insert("dualizable".into(), json!(false));
            m.insert("dualizability".into(), module_error(&Error::NotACycle));
        }
        let (lang, matched) = langlands_summary(rd);
        findings.push(("langlands_match", matched));
        m.insert("langlands".into(), lang);
        Ok(Section {
            group: None,
            result: Value::Object(m),
            findings,
        })
    };
    run().unwrap_or_else(|e| errored(&e))
}

fn langlands_section(rd: &RootDatum) -> Section {
    match verify_langlands_tdual(rd) {
        Ok(r) => Section {
            group: None,
            result: json!({
                "available": true,
                "match": r.lattices_equal,
                "twist_is_cycle": r.twist_is_cycle,
                "dual_group": r.dual_group,
                "permutation": r.permutation,
                "twist": to_value(r.twist.matrix()),
                "twist_image": generators(&r.twist_image),
                "dual_chern_lattice": generators(&r.dual_chern_lattice),
                "index_in_p": to_value_bigint(&r.index_in_p),
            }),
            findings: vec![
                ("available", true),
                ("match", r.lattices_equal),
                ("cycle", r.twist_is_cycle),
            ],
        },
        Err(e) => {
            let mut result = json!({
                "available": false,
                "match": Value::Null,
                "twist_is_cycle": Value::Null,
                "dual_group": langlands_dual(rd).label,
            });
            result["reason"] = match &e {
                Error::Unavailable(msg) => json!(msg),
                other => module_error(other)["error"].clone(),
            };
            if let PhiSearch::Absent { obstructions, .. } = find_phi(rd) {
                result["obstructions"] = json!(obstructions);
            }
            Section {
                group: None,
                result,
                findings: vec![("available", false), ("match", false), ("cycle", false)],
            }
        }
    }
}

fn extension_section(
    rd: &RootDatum,
    level: i64,
    explicit: &Option<Vec<Vec<num_rational::BigRational>>>,
) -> Section {
    let run = || -> Result<Section, Error> {
        let form = basic_form(rd, level)?;
        let mut m = Map::new();
        m.insert("form_gram".into(), to_value(&form.gram));
        let b = match explicit {
            Some(values) => CommutatorMap::new(rd.integral_lattice.clone(), values.clone())?,
            None => match commutator_from_level(rd, &form) {
                Ok(b) => b,
                Err(e) => {
                    m.insert("trivializability".into(), module_error(&e));
                    return Ok(Section {
                        group: None,
                        result: Value::Object(m),
                        findings: Vec::new(),
                    });
                }
            },
        };
        m.insert(
            "b_source".into(),
            json!(if explicit.is_some() {
                "explicit"
            } else {
                "level"
            }),
        );
        let adm = admissibility_check(rd, &form, &b)?;
        let rep = fibrewise_trivializable(rd, ExtensionInput::Explicit(b))?;
        m.insert("trivializable".into(), json!(rep.trivializable));
        m.insert("trivializability".into(), to_value(&rep));
        m.insert("admissibility".into(), to_value(&adm));
        Ok(Section {
            group: None,
            result: Value::Object(m),
            findings: vec![
                ("trivializable", rep.trivializable),
                ("admissible", adm.passed),
            ],
        })
    };
    run().unwrap_or_else(|e| errored(&e))
}

fn contcheck(n: usize) -> Section {
    let mut rows = Vec::new();
    let mut passed = true;
    for chi in standard_cutoffs(n) {
        match quadrature(&chi) {
            Ok(q) => {
                let error = (q.richardson + 1.0 / 6.0).abs();
                let ok = error < CUTOFF_TOLERANCE;
                passed &= ok;
                rows.push(json!({
                    "cutoff": q.name,
                    "smoothness": chi.smoothness,
                    "intervals": q.intervals,
                    "trapezoid": q.trapezoid,
                    "integral": q.richardson,
                    "error": error,
                    "passed": ok,
                }));
            }
            Err(e) => {
                passed = false;
                rows.push(json!({
                    "cutoff": chi.name,
                    "smoothness": chi.smoothness,
                    "intervals": chi.intervals(),
                    "error": e.to_string(),
                    "passed": false,
                }));
            }
        }
    }
    let mut forms = Vec::new();
    for tag in ["su2", "su3", "su4"] {
        match StructureConstants::from_tag(tag) {
            Ok(sc) => {
                let r = check_c_form(&sc);
                passed &= r.passed;
                forms.push(to_value(&r));
            }
            Err(e) => {
                passed = false;
                forms.push(module_error(&e));
            }
        }
    }
    Section {
        group: None,
        result: json!({
            "target": -1.0 / 6.0,
            "tolerance": CUTOFF_TOLERANCE,
            "cutoffs": rows,
            "c_forms": forms,
            "passed": passed,
        }),
        findings: vec![("passed", passed)],
    }
}
