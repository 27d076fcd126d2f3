use kantorovich::rational::{format_decimal, format_exact};
use kantorovich::Rational;
use serde_json::{json, Map, Value};

/// Significant digits of the decimal rendering.
const DECIMAL_DIGITS: usize = 12;

/// Command output, kept both as text lines and as a JSON object.
#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<String>,
    fields: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.fields.insert("command".into(), json!(command));
        r
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn field(&mut self, key: &str, value: Value) {
        self.fields.insert(key.into(), value);
    }

    /// `key: p/q` followed by the decimal line.
    pub fn rational(&mut self, key: &str, r: &Rational) {
        self.line(format!("{key}: {}", format_exact(r)));
        self.line(format!("{key} decimal: {}", approx(r)));
        self.field(key, exact_value(r));
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&Value::Object(self.fields.clone()))
                .expect("report is valid JSON");
            s.push('\n');
            s
        } else {
            self.lines.iter().map(|l| format!("{l}\n")).collect()
        }
    }
}

pub fn exact(r: &Rational) -> String {
    format_exact(r)
}

pub fn approx(r: &Rational) -> String {
    format!("{} (approx)", format_decimal(r, DECIMAL_DIGITS))
}

/// `{"exact": "p/q", "decimal": "..."}`.
pub fn exact_value(r: &Rational) -> Value {
    json!({ "exact": format_exact(r), "decimal": format_decimal(r, DECIMAL_DIGITS) })
}
