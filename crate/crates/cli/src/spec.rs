//! Parsing of state descriptions, family shorthands, and input qubits.
//!
//! Complex values are accepted in three spellings: a bare number, a
//! two-element `[re, im]` array, or a string like `"0.5-0.25i"`. User-supplied
//! amplitude vectors are normalized, so descriptions such as
//! `{"lambda":[0.577,0.577,0.577]}` parse cleanly and are then judged by the
//! condition checks rather than rejected up front.

use serde_json::Value;
use wteleport::Complex64;
use wteleport::nmr::{
    nmr_ap_params, nmr_general_state, nmr_proposed_params, nmr_w_params, NmrParams,
};
use wteleport::qmath::PureState;
use wteleport::states::{
    ap_family, make_w_state, proposed_family, FamilyParameter, InputQubit, WBasis, WParams,
};

/// A state ready for a command: the canonical echo of its description, the
/// resource parameters when the description defines them, and the built
/// three-qubit state.
#[derive(Debug, Clone)]
pub struct ResolvedState {
    pub description: Value,
    pub params: Option<WParams>,
    pub state: PureState,
}

/// Parses one complex value in any accepted spelling.
pub fn parse_complex(value: &Value) -> Result<Complex64, String> {
    match value {
        Value::Number(n) => n
            .as_f64()
            .map(|re| Complex64::new(re, 0.0))
            .ok_or_else(|| format!("number out of range: {n}")),
        Value::Array(parts) => {
            if parts.len() != 2 {
                return Err(format!(
                    "complex pair must have two entries, got {}",
                    parts.len()
                ));
            }
            let re = parts[0]
                .as_f64()
                .ok_or_else(|| format!("real part is not a number: {}", parts[0]))?;
            let im = parts[1]
                .as_f64()
                .ok_or_else(|| format!("imaginary part is not a number: {}", parts[1]))?;
            Ok(Complex64::new(re, im))
        }
        Value::String(s) => parse_complex_str(s),
        other => Err(format!("cannot read a complex value from {other}")),
    }
}

/// Parses strings like "1", "-0.5", "2i", "-i", "1+2i", "3.5e-2-1e-3i".
pub fn parse_complex_str(raw: &str) -> Result<Complex64, String> {
    let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex value".into());
    }
    let bad = || format!("cannot parse complex value {raw:?}");
    if !s.ends_with('i') {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    }
    let body = &s[..s.len() - 1];
    // Split at the last +/- that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let mut split = None;
    for j in (1..bytes.len()).rev() {
        let c = bytes[j];
        if (c == b'+' || c == b'-') && !matches!(bytes[j - 1], b'e' | b'E') {
            split = Some(j);
            break;
        }
    }
    let (re_str, im_str) = match split {
        Some(j) => (&body[..j], &body[j..]),
        None => ("", body),
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

fn field<'v>(map: &'v serde_json::Map<String, Value>, key: &str) -> Result<&'v Value, String> {
    map.get(key).ok_or_else(|| format!("missing field {key:?}"))
}

fn angle(map: &serde_json::Map<String, Value>, key: &str) -> Result<f64, String> {
    field(map, key)?
        .as_f64()
        .ok_or_else(|| format!("field {key:?} must be a number"))
}

fn optional_angle(
    map: &serde_json::Map<String, Value>,
    key: &str,
    default: f64,
) -> Result<f64, String> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_f64()
            .ok_or_else(|| format!("field {key:?} must be a number")),
    }
}

fn from_params(params: WParams, description: Value) -> ResolvedState {
    let state = make_w_state(&params);
    ResolvedState {
        description,
        params: Some(params),
        state,
    }
}

/// Resolves a `--state` JSON description.
pub fn resolve_state_json(raw: &str) -> Result<ResolvedState, String> {
    let value: Value = serde_json::from_str(raw).map_err(|e| format!("invalid JSON: {e}"))?;
    let map = value
        .as_object()
        .ok_or_else(|| "state description must be a JSON object".to_string())?;

    if let Some(lambda) = map.get("lambda") {
        let parts = lambda
            .as_array()
            .ok_or_else(|| "\"lambda\" must be an array of three values".to_string())?;
        if parts.len() != 3 {
            return Err(format!("\"lambda\" needs three entries, got {}", parts.len()));
        }
        let l0 = parse_complex(&parts[0])?;
        let l2 = parse_complex(&parts[1])?;
        let l3 = parse_complex(&parts[2])?;
        let basis = match map.get("basis").and_then(Value::as_str) {
            None | Some("resource") => WBasis::Resource,
            Some("canonical") => WBasis::Canonical,
            Some(other) => return Err(format!("unknown basis {other:?}")),
        };
        let params =
            WParams::normalized(l0, l2, l3, basis).map_err(|e| format!("bad lambda triple: {e}"))?;
        return Ok(from_params(params, value.clone()));
    }

    if let Some(family) = map.get("family") {
        let name = family
            .as_str()
            .ok_or_else(|| "\"family\" must be a string".to_string())?;
        let params = match name {
            "ap" => {
                let knob = FamilyParameter::with_phases(
                    angle(map, "n")?,
                    optional_angle(map, "phase1", 0.0)?,
                    optional_angle(map, "phase2", 0.0)?,
                );
                ap_family(&knob).map_err(|e| format!("bad ap family: {e}"))?
            }
            "proposed" => {
                let knob = FamilyParameter::with_phases(
                    angle(map, "m")?,
                    optional_angle(map, "phase1", 0.0)?,
                    optional_angle(map, "phase2", 0.0)?,
                );
                proposed_family(&knob).map_err(|e| format!("bad proposed family: {e}"))?
            }
            "nmr_ap" => nmr_ap_params(angle(map, "beta")?)
                .map_err(|e| format!("bad nmr_ap family: {e}"))?,
            "nmr_proposed" => nmr_proposed_params(angle(map, "beta")?)
                .map_err(|e| format!("bad nmr_proposed family: {e}"))?,
            "nmr_w" => nmr_w_params(angle(map, "beta")?, angle(map, "gamma")?),
            "nmr" => {
                let params = NmrParams::new(
                    angle(map, "alpha")?,
                    angle(map, "beta")?,
                    angle(map, "gamma")?,
                    angle(map, "delta")?,
                    optional_angle(map, "phi", 0.0)?,
                )
                .map_err(|e| format!("bad nmr angles: {e}"))?;
                let state = nmr_general_state(&params);
                return Ok(ResolvedState {
                    description: value.clone(),
                    params: None,
                    state,
                });
            }
            other => return Err(format!("unknown family {other:?}")),
        };
        return Ok(from_params(params, value.clone()));
    }

    if let Some(amps) = map.get("amplitudes") {
        let parts = amps
            .as_array()
            .ok_or_else(|| "\"amplitudes\" must be an array of eight values".to_string())?;
        if parts.len() != 8 {
            return Err(format!(
                "\"amplitudes\" needs eight entries, got {}",
                parts.len()
            ));
        }
        let mut values = Vec::with_capacity(8);
        for p in parts {
            values.push(parse_complex(p)?);
        }
        let state = PureState::normalized(3, values)
            .map_err(|e| format!("bad amplitude vector: {e}"))?;
        let params = infer_params(&state);
        return Ok(ResolvedState {
            description: value.clone(),
            params,
            state,
        });
    }

    Err("state description needs one of \"lambda\", \"family\", \"amplitudes\"".into())
}

/// Recognizes an amplitude vector whose support matches one of the two
/// W-class placements and recovers its parameter triple, so commands that
/// need resource parameters also accept such states spelled out in full.
fn infer_params(state: &PureState) -> Option<WParams> {
    let a = state.amplitudes();
    let placements = [
        ([0b100usize, 0b001, 0b010], WBasis::Resource),
        ([0b000, 0b101, 0b110], WBasis::Canonical),
    ];
    for (positions, basis) in placements {
        let off_support: f64 = (0..8)
            .filter(|i| !positions.contains(i))
            .map(|i| a[i].norm_sqr())
            .sum();
        if off_support < 1e-24 {
            return WParams::new(a[positions[0]], a[positions[1]], a[positions[2]], basis).ok();
        }
    }
    None
}

/// Resolves a `--family` shorthand such as "n=1", "m=99", "nmr-ap:beta=0.5",
/// or "nmr-proposed:beta=0.1".
pub fn resolve_family_shorthand(raw: &str) -> Result<ResolvedState, String> {
    let text = raw.trim();
    let (key, value_str) = text
        .split_once('=')
        .ok_or_else(|| format!("family shorthand {text:?} needs the form key=value"))?;
    let value: f64 = value_str
        .trim()
        .parse()
        .map_err(|_| format!("family value {value_str:?} is not a number"))?;
    let params = match key.trim() {
        "n" => ap_family(&FamilyParameter::new(value))
            .map_err(|e| format!("bad family {text:?}: {e}"))?,
        "m" => proposed_family(&FamilyParameter::new(value))
            .map_err(|e| format!("bad family {text:?}: {e}"))?,
        "nmr-ap:beta" => {
            nmr_ap_params(value).map_err(|e| format!("bad family {text:?}: {e}"))?
        }
        "nmr-proposed:beta" => {
            nmr_proposed_params(value).map_err(|e| format!("bad family {text:?}: {e}"))?
        }
        other => return Err(format!("unknown family key {other:?}")),
    };
    let description = serde_json::json!({ "shorthand": text });
    Ok(from_params(params, description))
}

/// Resolves `--family`/`--state` for a command that requires a state.
pub fn resolve_state(
    family: Option<&str>,
    state: Option<&str>,
) -> Result<ResolvedState, String> {
    match (family, state) {
        (Some(f), None) => resolve_family_shorthand(f),
        (None, Some(s)) => resolve_state_json(s),
        (None, None) => Err("one of --family or --state is required".into()),
        (Some(_), Some(_)) => Err("--family and --state are mutually exclusive".into()),
    }
}

/// How the input qubit for a teleport run is chosen.
#[derive(Debug, Clone)]
pub enum InputSpec {
    /// Draw the input from the seeded uniform distribution on pure qubit
    /// states.
    Haar,
    /// Use the given fixed qubit.
    Fixed(InputQubit),
}

/// Parses `--input`: "haar", or two amplitudes "a,b" where each amplitude is
/// a real number, a "re+imi" string, or a `[re, im]` pair.
pub fn parse_input(raw: &str) -> Result<InputSpec, String> {
    let text = raw.trim();
    if text.eq_ignore_ascii_case("haar") {
        return Ok(InputSpec::Haar);
    }
    let parts = split_top_level(text);
    if parts.len() != 2 {
        return Err(format!(
            "input {text:?} must be \"haar\" or two comma-separated amplitudes"
        ));
    }
    let alpha = parse_input_part(&parts[0])?;
    let beta = parse_input_part(&parts[1])?;
    let qubit =
        InputQubit::normalized(alpha, beta).map_err(|e| format!("bad input qubit: {e}"))?;
    Ok(InputSpec::Fixed(qubit))
}

fn parse_input_part(part: &str) -> Result<Complex64, String> {
    let t = part.trim();
    if t.starts_with('[') {
        let value: Value =
            serde_json::from_str(t).map_err(|e| format!("bad amplitude {t:?}: {e}"))?;
        parse_complex(&value)
    } else {
        parse_complex_str(t)
    }
}

/// Splits on commas that are not nested inside brackets, so "[1,0],[0,1]"
/// yields two parts.
fn split_top_level(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '[' => {
                depth += 1;
                current.push(c);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                current.push(c);
            }
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut current));
            }
            _ => current.push(c),
        }
    }
    parts.push(current);
    parts
}
