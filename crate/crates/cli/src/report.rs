//! Report rendering: exact values as symbolic text plus a 7-significant-
//! digit float, and the JSON shapes shared by the subcommands.

use capgraph_core::capacity::CapacityBounds;
use capgraph_core::exact::{render_significant, ExactValue};
use serde_json::{json, Value};

/// Symbolic render plus a float rounded half-even to 7 significant digits.
pub fn value_json(v: &ExactValue) -> Value {
    json!({
        "render": v.render(),
        "value": render_significant(v.to_f64(), 7),
        "exact": v.is_exact(),
    })
}

pub fn value_text(v: &ExactValue) -> String {
    if v.is_exact() {
        format!("{} ({})", v.render(), render_significant(v.to_f64(), 7))
    } else {
        let (lo, hi) = v.to_interval();
        format!(
            "[{}, {}]",
            render_significant(lo, 8),
            render_significant(hi, 8)
        )
    }
}

pub fn bounds_json(expr: &str, b: &CapacityBounds) -> Value {
    json!({
        "expr": expr,
        "lower": {
            "value": render_significant(b.lower.value.to_f64(), 7),
            "render": b.lower.value.render(),
            "witness": b.lower.witness,
        },
        "upper": {
            "value": render_significant(b.upper.value.to_f64(), 7),
            "render": b.upper.value.render(),
            "witness": b.upper.witness,
        },
        "exact": b.exact,
        "rules_fired": b.rules_fired,
        "provenance": b.provenance,
    })
}

pub fn bounds_text(expr: &str, b: &CapacityBounds) -> String {
    let mut out = String::new();
    out.push_str(&format!("capacity of {expr}\n"));
    if b.exact {
        out.push_str(&format!(
            "  exact: {}\n",
            value_text(&b.lower.value)
        ));
    } else {
        out.push_str(&format!(
            "  lower: {}\n         from {}\n",
            value_text(&b.lower.value),
            b.lower.witness
        ));
        out.push_str(&format!(
            "  upper: {}\n         from {}\n",
            value_text(&b.upper.value),
            b.upper.witness
        ));
    }
    out.push_str(&format!("  rules: {}\n", b.rules_fired.join(", ")));
    if !b.provenance.is_empty() {
        out.push_str(&format!("  provenance: {}\n", b.provenance.join(", ")));
    }
    out
}

/// Wrap a JSON payload with the only non-deterministic field of the output.
pub fn with_timestamp(mut payload: Value) -> Value {
    if let Value::Object(map) = &mut payload {
        let stamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        map.insert("timestamp".into(), json!(stamp));
    }
    payload
}
