//! Command implementations. Each one builds its full report as a JSON value,
//! then renders it as pretty JSON or as CSV, so both formats always agree on
//! content.

use std::path::PathBuf;

use serde_json::{json, Value};

use crate::args::{
    Cli, Command, EntangleArgs, OutputFormat, StateArgs, SweepArgs, TeleportArgs,
};
use crate::render::{fmt12, fmt12_opt, json_to_kv_rows, to_csv, to_json};
use crate::spec::{parse_input, resolve_state, InputSpec, ResolvedState};
use crate::SCHEMA_VERSION;
use wteleport::conditions::{
    check_ap_concurrence_condition_with_tolerance, check_ap_condition_with_tolerance,
    check_proposed_concurrence_condition_with_tolerance, check_proposed_condition_with_tolerance,
    ConditionVerdict, GeometryPoint,
};
use wteleport::entanglement::{
    concurrence_closed_form, negativity_closed_form, o_operator_expectations,
    pairwise_concurrences, pairwise_negativities, three_pi, three_pi_closed_form,
};
use wteleport::nmr::{nmr_ap_params, nmr_proposed_params};
use wteleport::protocols::{
    haar_input_from_seed, run_ap_protocol_exact, run_monte_carlo, run_proposed_protocol_exact,
    InputSampler, Protocol,
};
use wteleport::states::{
    ap_family, make_w_state, proposed_family, FamilyParameter, InputQubit, WBasis, WParams,
};

/// Rendered report plus its destination and exit code.
#[derive(Debug)]
pub struct CommandOutput {
    pub body: String,
    pub exit_code: i32,
    pub path: Option<PathBuf>,
}

/// Runs one parsed invocation. `Err` carries a diagnostic for standard error
/// and maps to exit code 1.
pub fn execute(cli: &Cli) -> Result<CommandOutput, String> {
    match &cli.command {
        Command::Teleport(args) => cmd_teleport(args),
        Command::Check(args) => cmd_check(args),
        Command::Entangle(args) => cmd_entangle(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Version => cmd_version(),
    }
}

fn check_tolerance(tolerance: f64) -> Result<(), String> {
    if tolerance.is_finite() && tolerance > 0.0 {
        Ok(())
    } else {
        Err(format!("tolerance must be a positive number, got {tolerance}"))
    }
}

fn jsonify<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn require_params(resolved: &ResolvedState, command: &str) -> Result<WParams, String> {
    resolved.params.ok_or_else(|| {
        format!(
            "{command} needs a W-class resource description \
             (lambda triple, family, or an amplitude vector with W-class support)"
        )
    })
}

fn condition_for(protocol: Protocol, params: &WParams, tolerance: f64) -> ConditionVerdict {
    match protocol {
        Protocol::Ap => check_ap_condition_with_tolerance(params, tolerance),
        Protocol::Proposed => check_proposed_condition_with_tolerance(params, tolerance),
    }
}

fn geometry_name(verdict: &ConditionVerdict) -> String {
    jsonify(&verdict.geometry).as_str().expect("geometry is a string").to_string()
}

fn correction_name(value: &Value) -> String {
    value["correction"].as_str().unwrap_or_default().to_string()
}

fn cmd_teleport(args: &TeleportArgs) -> Result<CommandOutput, String> {
    check_tolerance(args.tolerance)?;
    let resolved = resolve_state(args.family.as_deref(), args.state.as_deref())?;
    let params = require_params(&resolved, "teleport")?;
    let protocol: Protocol = args.protocol.into();
    let condition = condition_for(protocol, &params, args.tolerance);
    let exit_code = if args.strict && !condition.satisfied { 2 } else { 0 };
    let input = parse_input(&args.input)?;

    let mut record = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "teleport",
        "protocol": jsonify(&protocol),
        "seed": args.seed,
        "tolerance": args.tolerance,
        "strict": args.strict,
        "state_description": resolved.description,
        "state": jsonify(&params),
        "condition": jsonify(&condition),
    });

    let body = if args.trials == 0 {
        let qubit: InputQubit = match &input {
            InputSpec::Haar => haar_input_from_seed(args.seed),
            InputSpec::Fixed(q) => *q,
        };
        let reports = match protocol {
            Protocol::Ap => run_ap_protocol_exact(&params, &qubit),
            Protocol::Proposed => run_proposed_protocol_exact(&params, &qubit),
        };
        record["mode"] = json!("exact");
        record["input"] = jsonify(&qubit);
        record["reports"] = jsonify(&reports);
        match args.format {
            OutputFormat::Json => to_json(&record),
            OutputFormat::Csv => {
                let rows: Vec<Vec<String>> = record["reports"]
                    .as_array()
                    .expect("reports is an array")
                    .iter()
                    .map(|r| {
                        vec![
                            r["outcome_label"].as_str().unwrap_or_default().to_string(),
                            fmt12(r["outcome_probability"].as_f64().unwrap_or(0.0)),
                            fmt12(r["branch_probability"].as_f64().unwrap_or(0.0)),
                            correction_name(r),
                            fmt12_opt(r["fidelity"].as_f64()),
                            r["success"].as_bool().unwrap_or(false).to_string(),
                        ]
                    })
                    .collect();
                let table = to_csv(
                    &[
                        "outcome",
                        "joint_probability",
                        "branch_probability",
                        "correction",
                        "fidelity",
                        "success",
                    ],
                    &rows,
                );
                csv_with_preamble("teleport", &table)
            }
        }
    } else {
        let sampler = match &input {
            InputSpec::Haar => InputSampler::Haar,
            InputSpec::Fixed(q) => InputSampler::Fixed { qubit: *q },
        };
        let summary = run_monte_carlo(protocol, &params, &sampler, args.trials, args.seed)
            .map_err(|e| format!("sampling failed: {e}"))?;
        record["mode"] = json!("sampled");
        record["trials"] = json!(args.trials);
        record["summary"] = jsonify(&summary);
        match args.format {
            OutputFormat::Json => to_json(&record),
            OutputFormat::Csv => {
                let mut rows: Vec<Vec<String>> = Vec::new();
                let stat_rows = |section: &str, stats: &Value, rows: &mut Vec<Vec<String>>| {
                    for s in stats.as_array().into_iter().flatten() {
                        rows.push(vec![
                            section.to_string(),
                            s["label"].as_str().unwrap_or_default().to_string(),
                            s["count"].as_u64().unwrap_or(0).to_string(),
                            fmt12(s["frequency"].as_f64().unwrap_or(0.0)),
                            fmt12(s["std_error"].as_f64().unwrap_or(0.0)),
                        ]);
                    }
                };
                stat_rows("branch", &record["summary"]["branch_stats"], &mut rows);
                stat_rows("outcome", &record["summary"]["outcome_stats"], &mut rows);
                // The fidelity row reuses the frequency column for the mean.
                if let Some(mean) = record["summary"]["mean_fidelity"].as_f64() {
                    rows.push(vec![
                        "fidelity".to_string(),
                        "mean".to_string(),
                        record["summary"]["fidelity_samples"].as_u64().unwrap_or(0).to_string(),
                        fmt12(mean),
                        fmt12_opt(record["summary"]["fidelity_std_error"].as_f64()),
                    ]);
                }
                let table = to_csv(
                    &["section", "label", "count", "frequency", "std_error"],
                    &rows,
                );
                csv_with_preamble("teleport", &table)
            }
        }
    };

    Ok(CommandOutput { body, exit_code, path: args.out.clone() })
}

fn cmd_check(args: &StateArgs) -> Result<CommandOutput, String> {
    check_tolerance(args.tolerance)?;
    let resolved = resolve_state(args.family.as_deref(), args.state.as_deref())?;
    let params = require_params(&resolved, "check")?;

    let ap = check_ap_condition_with_tolerance(&params, args.tolerance);
    let proposed = check_proposed_condition_with_tolerance(&params, args.tolerance);
    let concurrences = concurrence_closed_form(&params);
    let mut notes: Vec<String> = Vec::new();

    let ap_concurrence_form =
        match check_ap_concurrence_condition_with_tolerance(&concurrences, args.tolerance) {
            Ok(report) => jsonify(&report),
            Err(e) => {
                notes.push(format!("concurrence-form check for the deterministic scheme skipped: {e}"));
                Value::Null
            }
        };
    let proposed_concurrence_form =
        check_proposed_concurrence_condition_with_tolerance(&concurrences, args.tolerance);

    // Operator expectations live on the canonical placement, where each one
    // equals twice the corresponding pairwise concurrence for real
    // parameters.
    let canonical_state = make_w_state(&params.in_basis(WBasis::Canonical));
    let o_exp = o_operator_expectations(&canonical_state).map_err(|e| e.to_string())?;

    let record = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "check",
        "tolerance": args.tolerance,
        "state_description": resolved.description,
        "state": jsonify(&params),
        "geometry_point": jsonify(&GeometryPoint::from_params(&params)),
        "ap": jsonify(&ap),
        "proposed": jsonify(&proposed),
        "concurrences": jsonify(&concurrences),
        "ap_concurrence_form": ap_concurrence_form,
        "proposed_concurrence_form": jsonify(&proposed_concurrence_form),
        "o_operator_expectations": jsonify(&o_exp),
        "notes": notes,
    });

    let body = match args.format {
        OutputFormat::Json => to_json(&record),
        OutputFormat::Csv => {
            let table = to_csv(&["key", "value"], &json_to_kv_rows(&record));
            csv_with_preamble("check", &table)
        }
    };
    Ok(CommandOutput { body, exit_code: 0, path: args.out.clone() })
}

fn cmd_entangle(args: &EntangleArgs) -> Result<CommandOutput, String> {
    check_tolerance(args.tolerance)?;
    let resolved = resolve_state(args.family.as_deref(), args.state.as_deref())?;
    let state = &resolved.state;

    let concurrences = pairwise_concurrences(state).map_err(|e| e.to_string())?;
    let negativities = pairwise_negativities(state).map_err(|e| e.to_string())?;
    let report = three_pi(state).map_err(|e| e.to_string())?;
    let o_exp = o_operator_expectations(state).map_err(|e| e.to_string())?;

    let closed_form = match resolved.params {
        Some(params) => json!({
            "concurrences": jsonify(&concurrence_closed_form(&params)),
            "negativities": jsonify(&negativity_closed_form(&params)),
            "three_pi": jsonify(&three_pi_closed_form(&params)),
        }),
        None => Value::Null,
    };

    let record = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "entangle",
        "state_description": resolved.description,
        "concurrences": jsonify(&concurrences),
        "negativities": jsonify(&negativities),
        "three_pi": jsonify(&report),
        "o_operator_expectations": jsonify(&o_exp),
        "closed_form": closed_form,
    });

    let body = match args.format {
        OutputFormat::Json => to_json(&record),
        OutputFormat::Csv => {
            let table = to_csv(&["key", "value"], &json_to_kv_rows(&record));
            csv_with_preamble("entangle", &table)
        }
    };
    Ok(CommandOutput { body, exit_code: 0, path: args.out.clone() })
}

type ParamBuilder = Box<dyn Fn(f64) -> Result<WParams, String>>;

fn sweep_family(name: &str) -> Result<(ParamBuilder, Protocol), String> {
    match name {
        "ap" => Ok((
            Box::new(|n| {
                ap_family(&FamilyParameter::new(n)).map_err(|e| format!("n={n}: {e}"))
            }),
            Protocol::Ap,
        )),
        "proposed" => Ok((
            Box::new(|m| {
                proposed_family(&FamilyParameter::new(m)).map_err(|e| format!("m={m}: {e}"))
            }),
            Protocol::Proposed,
        )),
        "nmr-ap" => Ok((
            Box::new(|beta| nmr_ap_params(beta).map_err(|e| format!("beta={beta}: {e}"))),
            Protocol::Ap,
        )),
        "nmr-proposed" => Ok((
            Box::new(|beta| nmr_proposed_params(beta).map_err(|e| format!("beta={beta}: {e}"))),
            Protocol::Proposed,
        )),
        other => Err(format!(
            "unknown sweep family {other:?}; expected ap, proposed, nmr-ap, nmr-proposed"
        )),
    }
}

fn grid_values(start: f64, stop: f64, steps: usize) -> Result<Vec<f64>, String> {
    if steps == 0 {
        return Err("steps must be at least 1".into());
    }
    if !start.is_finite() || !stop.is_finite() {
        return Err(format!("grid bounds must be finite, got start={start} stop={stop}"));
    }
    if steps == 1 {
        return Ok(vec![start]);
    }
    let span = stop - start;
    Ok((0..steps)
        .map(|i| start + span * (i as f64) / ((steps - 1) as f64))
        .collect())
}

const SWEEP_HEADER: [&str; 20] = [
    "family",
    "value",
    "m0",
    "m2",
    "m3",
    "ap_satisfied",
    "ap_residual",
    "ap_geometry",
    "proposed_satisfied",
    "proposed_residual",
    "proposed_geometry",
    "success_probability",
    "cab",
    "cbc",
    "cac",
    "nab",
    "nbc",
    "nca",
    "pi_abc",
    "tangle",
];

fn cmd_sweep(args: &SweepArgs) -> Result<CommandOutput, String> {
    check_tolerance(args.tolerance)?;
    let (build, protocol) = sweep_family(&args.family)?;
    let values = grid_values(args.start, args.stop, args.steps)?;

    let mut rows_json = Vec::with_capacity(values.len());
    let mut rows_csv = Vec::with_capacity(values.len());
    for value in values {
        let params = build(value).map_err(|e| format!("sweep point failed: {e}"))?;
        let [m0, m2, m3] = params.moduli();
        let ap = check_ap_condition_with_tolerance(&params, args.tolerance);
        let proposed = check_proposed_condition_with_tolerance(&params, args.tolerance);
        let success = match protocol {
            Protocol::Ap => ap.success_probability,
            Protocol::Proposed => proposed.success_probability,
        };
        let c = concurrence_closed_form(&params);
        let n = negativity_closed_form(&params);
        let pi = three_pi_closed_form(&params);

        rows_json.push(json!({
            "value": value,
            "moduli": [m0, m2, m3],
            "ap": jsonify(&ap),
            "proposed": jsonify(&proposed),
            "success_probability": success,
            "concurrences": jsonify(&c),
            "negativities": jsonify(&n),
            "pi_abc": pi.pi_abc,
            "tangle": pi.tangle,
        }));
        rows_csv.push(vec![
            args.family.clone(),
            fmt12(value),
            fmt12(m0),
            fmt12(m2),
            fmt12(m3),
            ap.satisfied.to_string(),
            fmt12(ap.residual),
            geometry_name(&ap),
            proposed.satisfied.to_string(),
            fmt12(proposed.residual),
            geometry_name(&proposed),
            fmt12(success),
            fmt12(c.cab),
            fmt12(c.cbc),
            fmt12(c.cac),
            fmt12(n.nab),
            fmt12(n.nbc),
            fmt12(n.nca),
            fmt12(pi.pi_abc),
            fmt12(pi.tangle),
        ]);
    }

    let body = match args.format {
        OutputFormat::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "sweep",
            "family": args.family,
            "protocol": jsonify(&protocol),
            "start": args.start,
            "stop": args.stop,
            "steps": args.steps,
            "tolerance": args.tolerance,
            "rows": rows_json,
        })),
        OutputFormat::Csv => {
            let table = to_csv(&SWEEP_HEADER, &rows_csv);
            csv_with_preamble("sweep", &table)
        }
    };
    Ok(CommandOutput { body, exit_code: 0, path: args.out.clone() })
}

fn cmd_version() -> Result<CommandOutput, String> {
    let record = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "version",
        "name": "wteleport",
        "version": env!("CARGO_PKG_VERSION"),
    });
    Ok(CommandOutput { body: to_json(&record), exit_code: 0, path: None })
}

/// CSV outputs declare the record layout in a comment line ahead of the
/// header, mirroring the "schema_version" field of the JSON records.
fn csv_with_preamble(command: &str, table: &str) -> String {
    format!("# schema_version={SCHEMA_VERSION} command={command}\n{table}")
}
