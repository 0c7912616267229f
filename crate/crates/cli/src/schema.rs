//! The shipped report schema and a checker for the JSON Schema subset it
//! uses: `type`, `enum`, `required`, `properties`, `additionalProperties`
//! (boolean), `items`, `minimum`, `minItems`, `maxItems` and local `$ref`s
//! into `definitions`.

use serde_json::Value;

pub const ANALYSIS_REPORT_SCHEMA: &str = include_str!("../schema/analysis_report.schema.json");

pub fn analysis_report_schema() -> Value {
    serde_json::from_str(ANALYSIS_REPORT_SCHEMA).expect("the shipped schema is valid JSON")
}

/// Violations of `schema` by `instance`, each prefixed with its JSON
/// pointer. Empty when the instance conforms.
pub fn validate(schema: &Value, instance: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(schema, schema, instance, "", &mut errors);
    errors
}

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "null" => v.is_null(),
        "boolean" => v.is_boolean(),
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "number" => v.is_number(),
        "integer" => v.is_u64() || v.is_i64(),
        _ => false,
    }
}

fn resolve<'a>(root: &'a Value, reference: &str) -> Option<&'a Value> {
    reference
        .strip_prefix('#')
        .and_then(|pointer| root.pointer(pointer))
}

fn check(root: &Value, schema: &Value, v: &Value, path: &str, errors: &mut Vec<String>) {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        match resolve(root, reference) {
            Some(target) => check(root, target, v, path, errors),
            None => errors.push(format!("{path}: unresolved reference {reference}")),
        }
        return;
    }
    if let Some(t) = schema.get("type") {
        let ok = match t {
            Value::String(name) => type_matches(name, v),
            Value::Array(names) => names
                .iter()
                .filter_map(Value::as_str)
                .any(|n| type_matches(n, v)),
            _ => true,
        };
        if !ok {
            errors.push(format!("{path}: expected type {t}, found {v}"));
            return;
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            errors.push(format!("{path}: {v} is not one of {options:?}"));
        }
    }
    if let (Some(min), Some(x)) = (schema.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < min {
            errors.push(format!("{path}: {x} is below the minimum {min}"));
        }
    }
    if let Value::Object(map) = v {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !map.contains_key(key) {
                    errors.push(format!("{path}: missing required field `{key}`"));
                }
            }
        }
        let properties = schema.get("properties").and_then(Value::as_object);
        for (key, value) in map {
            let child = format!("{path}/{key}");
            match properties.and_then(|p| p.get(key)) {
                Some(sub) => check(root, sub, value, &child, errors),
                None => {
                    if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                        errors.push(format!("{path}: unexpected field `{key}`"));
                    }
                }
            }
        }
    }
    if let Value::Array(items) = v {
        let len = items.len() as u64;
        if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
            if len < min {
                errors.push(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(max) = schema.get("maxItems").and_then(Value::as_u64) {
            if len > max {
                errors.push(format!("{path}: more than {max} items"));
            }
        }
        if let Some(sub) = schema.get("items") {
            for (i, item) in items.iter().enumerate() {
                check(root, sub, item, &format!("{path}/{i}"), errors);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn checker_subset() {
        let schema = json!({
            "definitions": {"pos": {"type": "integer", "minimum": 0}},
            "type": "object",
            "required": ["a"],
            "additionalProperties": false,
            "properties": {
                "a": {"$ref": "#/definitions/pos"},
                "b": {"type": ["string", "null"], "enum": ["x", null]},
                "c": {"type": "array", "items": {"type": "boolean"}, "maxItems": 2}
            }
        });
        assert!(validate(&schema, &json!({"a": 3, "b": null, "c": [true]})).is_empty());
        assert_eq!(validate(&schema, &json!({"a": -1})).len(), 1);
        assert_eq!(validate(&schema, &json!({"b": "y"})).len(), 2);
        assert_eq!(validate(&schema, &json!({"a": 0, "d": 1})).len(), 1);
        assert_eq!(
            validate(&schema, &json!({"a": 0, "c": [1, true, false]})).len(),
            2
        );
    }

    #[test]
    fn shipped_schema_parses() {
        let schema = analysis_report_schema();
        assert_eq!(schema["type"], "object");
    }
}
