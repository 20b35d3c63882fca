use serde_json::{Map, Value};

/// An ordered list of fields, printed either as `key: value` lines or as
/// one JSON object.
#[derive(Debug, Default)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new() -> Record {
        Record::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Record {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let map: Map<String, Value> = self.fields.iter().cloned().collect();
            return format!("{}\n", Value::Object(map));
        }
        let mut out = String::new();
        for (k, v) in &self.fields {
            let text = match v {
                Value::String(s) => s.clone(),
                Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(" "),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {text}\n"));
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}
