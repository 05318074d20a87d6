use branchlink::Int;
use serde_json::Value;

use crate::CliError;

/// Parses `8,12,26,53` or any JSON object carrying a `generators` array of
/// numbers or decimal strings.
pub fn parse_generators(raw: &str) -> Result<Vec<Int>, CliError> {
    let raw = raw.trim();
    if raw.starts_with('{') {
        let value: Value = serde_json::from_str(raw).map_err(|e| CliError::Invalid(format!("malformed JSON: {e}")))?;
        let list = value
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::Invalid("JSON input needs a \"generators\" array".into()))?;
        return list
            .iter()
            .map(|v| match v {
                Value::Number(n) => parse_int(&n.to_string()),
                Value::String(s) => parse_int(s),
                other => Err(CliError::Invalid(format!("not an integer: {other}"))),
            })
            .collect();
    }
    if raw.is_empty() {
        return Err(CliError::Invalid("empty input".into()));
    }
    raw.split(',').map(parse_int).collect()
}

pub fn parse_int(s: &str) -> Result<Int, CliError> {
    s.trim()
        .parse::<Int>()
        .map_err(|_| CliError::Invalid(format!("not an integer: {:?}", s.trim())))
}
