//! Text and JSON-lines rendering of command output.

use std::fmt::Display;
use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    JsonLines,
}

#[derive(Clone, Debug)]
pub enum Field {
    Int(i64),
    Bool(bool),
    Str(String),
    /// Rendered with three decimals in both formats.
    Seconds(f64),
    /// Comma-joined in text, an array in JSON.
    List(Vec<String>),
    None,
}

impl Field {
    pub fn text(x: impl Display) -> Field {
        Field::Str(x.to_string())
    }

    fn render(&self) -> String {
        match self {
            Field::Int(x) => x.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Str(s) => s.clone(),
            Field::Seconds(s) => format!("{s:.3}"),
            Field::List(items) => items.join(","),
            Field::None => "none".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Int(x) => Value::from(*x),
            Field::Bool(b) => Value::from(*b),
            Field::Str(s) => Value::from(s.as_str()),
            Field::Seconds(s) => format!("{s:.3}").parse::<serde_json::Number>().map_or(Value::Null, Value::Number),
            Field::List(items) => Value::from(items.clone()),
            Field::None => Value::Null,
        }
    }
}

pub struct Output {
    format: Format,
    buf: String,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output {
            format,
            buf: String::new(),
        }
    }

    /// A `key=value` line in text mode.
    pub fn record(&mut self, fields: &[(&str, Field)]) {
        let text: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={}", v.render())).collect();
        self.line(&text.join(" "), fields);
    }

    /// A line whose text form is fixed by the caller.
    pub fn line(&mut self, text: &str, fields: &[(&str, Field)]) {
        match self.format {
            Format::Text => self.buf.push_str(text),
            Format::JsonLines => {
                let obj: Map<String, Value> = fields.iter().map(|(k, v)| (k.to_string(), v.json())).collect();
                self.buf.push_str(&Value::Object(obj).to_string());
            }
        }
        self.buf.push('\n');
    }

    pub fn flush(&mut self) -> std::io::Result<()> {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(self.buf.as_bytes())?;
        self.buf.clear();
        stdout.flush()
    }
}
