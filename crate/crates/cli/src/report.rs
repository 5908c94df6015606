//! Rendering of single results as JSON, text or CSV.

use serde_json::{json, Map, Value};

use logser_core::EvalResult;

use crate::args::OutputFormat;

/// Significand bits of every real in the output.
pub const PRECISION_BITS: u32 = f64::MANTISSA_DIGITS;

pub const CSV_RESULT_HEADER: &str =
    "command,value,error_bound,bound_is_heuristic,blocks_used,wall_time_micros";

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub value: Option<f64>,
    pub error_bound: Option<f64>,
    pub bound_is_heuristic: bool,
    pub blocks_used: Option<u64>,
    pub wall_time_micros: u128,
    pub details: Map<String, Value>,
}

/// Shortest decimal that parses back to the same `f64`.
pub fn real(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn opt_real(x: Option<f64>) -> Value {
    x.map_or(Value::Null, |x| Value::String(real(x)))
}

impl Report {
    pub fn new(command: &'static str, inputs: Map<String, Value>) -> Self {
        Self {
            command,
            inputs,
            value: None,
            error_bound: None,
            bound_is_heuristic: false,
            blocks_used: None,
            wall_time_micros: 0,
            details: Map::new(),
        }
    }

    pub fn with_eval(mut self, r: &EvalResult) -> Self {
        self.value = Some(r.value);
        self.error_bound = Some(r.error_bound);
        self.bound_is_heuristic = r.bound_is_heuristic;
        self.blocks_used = Some(r.blocks_used);
        self.details
            .insert("method".into(), json!(r.method.as_str()));
        self
    }

    pub fn detail(mut self, key: &str, value: Value) -> Self {
        self.details.insert(key.into(), value);
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "value": opt_real(self.value),
            "error_bound": opt_real(self.error_bound),
            "bound_is_heuristic": self.bound_is_heuristic,
            "blocks_used": self.blocks_used,
            "wall_time_micros": self.wall_time_micros,
            "precision_bits": PRECISION_BITS,
            "details": self.details,
        })
    }

    fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        let mut line = |k: &str, v: &Value| {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {v}\n"));
        };
        for (k, v) in &self.inputs {
            line(k, v);
        }
        line("value", &opt_real(self.value));
        line("error_bound", &opt_real(self.error_bound));
        line("bound_is_heuristic", &json!(self.bound_is_heuristic));
        line("blocks_used", &json!(self.blocks_used));
        line("wall_time_micros", &json!(self.wall_time_micros));
        for (k, v) in &self.details {
            line(k, v);
        }
        out
    }

    fn to_csv(&self) -> String {
        let field = |x: Option<String>| x.unwrap_or_default();
        format!(
            "{CSV_RESULT_HEADER}\n{},{},{},{},{},{}\n",
            self.command,
            field(self.value.map(real)),
            field(self.error_bound.map(real)),
            self.bound_is_heuristic,
            field(self.blocks_used.map(|b| b.to_string())),
            self.wall_time_micros
        )
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => format!("{}\n", self.to_json()),
            OutputFormat::Text => self.to_text(),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}
