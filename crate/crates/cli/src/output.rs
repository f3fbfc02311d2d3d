use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use twist_core::exactla::Matrix;

/// A command's result: human-readable lines plus the same content as JSON
/// fields.
#[derive(Debug)]
pub struct Output {
    fields: Map<String, Value>,
    lines: Vec<String>,
}

impl Output {
    pub fn new(command: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), command.into());
        Output { fields, lines: Vec::new() }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s =
                serde_json::to_string_pretty(&Value::Object(self.fields.clone())).expect("JSON values serialize");
            s.push('\n');
            s
        } else {
            let mut s = self.lines.join("\n");
            s.push('\n');
            s
        }
    }
}

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => v.into(),
        None => n.to_string().into(),
    }
}

pub fn int_matrix(m: &Matrix<BigInt>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(int).collect())).collect())
}
