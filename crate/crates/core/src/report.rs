//! Plain-text and CSV reports produced by the command-line tool.

use std::fmt::Write as _;
use std::io;
use std::time::Duration;

use num_traits::ToPrimitive;
use sha2::{Digest, Sha256};

use crate::quadratic::QuadIrrational;
use crate::Rational;

/// Digits after the decimal point in rendered values.
pub const DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Text(String),
    Integer(i128),
    Rational(Rational),
    Quadratic(QuadIrrational),
}

impl Value {
    /// Exact form only.
    pub fn exact(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Integer(i) => i.to_string(),
            Value::Rational(q) => q.to_string(),
            Value::Quadratic(q) => q.to_string(),
        }
    }

    /// Exact form followed by a decimal rendering where one applies.
    pub fn render(&self) -> String {
        match self {
            Value::Rational(q) if !q.is_integer() => format!("{q} ({})", rational_decimal(q)),
            Value::Quadratic(q) if q.as_rational().is_none_or(|v| !v.is_integer()) => {
                format!("{q} ({})", q.to_decimal(DECIMAL_DIGITS))
            }
            other => other.exact(),
        }
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_owned())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<Rational> for Value {
    fn from(q: Rational) -> Self {
        Value::Rational(q)
    }
}

impl From<&Rational> for Value {
    fn from(q: &Rational) -> Self {
        Value::Rational(q.clone())
    }
}

impl From<QuadIrrational> for Value {
    fn from(q: QuadIrrational) -> Self {
        Value::Quadratic(q)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Text(if b { "yes" } else { "no" }.to_owned())
    }
}

macro_rules! int_value {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(i: $t) -> Self {
                Value::Integer(i as i128)
            }
        }
    )*};
}
int_value!(usize, u64, u32, i64);

/// Rational rendered with [`DECIMAL_DIGITS`] digits, rounded half away from
/// zero using exact arithmetic.
pub fn rational_decimal(q: &Rational) -> String {
    let scale = num_bigint::BigInt::from(10u32).pow(DECIMAL_DIGITS as u32);
    let scaled = q * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let negative = rounded < num_bigint::BigInt::from(0);
    let digits = if negative { -rounded } else { rounded };
    let int_part = &digits / &scale;
    let frac_part = &digits % &scale;
    let frac = frac_part.to_string();
    format!(
        "{}{}.{}{}",
        if negative { "-" } else { "" },
        int_part,
        "0".repeat(DECIMAL_DIGITS - frac.len()),
        frac
    )
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, headers: &[&str]) -> Self {
        Self {
            title: title.to_owned(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    /// SHA-256 of the input file, hex encoded.
    pub input_digest: Option<String>,
    pub entries: Vec<(String, Value)>,
    pub tables: Vec<Table>,
    /// Free-form text appended after the tables (e.g. a coloring).
    pub attachment: Option<String>,
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            ..Self::default()
        }
    }

    pub fn digest_of(&mut self, bytes: &[u8]) {
        self.input_digest = Some(sha256_hex(bytes));
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.entries.push((key.to_owned(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// Everything except the timing line.
    pub fn body(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(d) = &self.input_digest {
            let _ = writeln!(out, "input-sha256: {d}");
        }
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k}: {}", v.render());
        }
        for table in &self.tables {
            let _ = writeln!(out, "\n[{}]", table.title);
            let _ = writeln!(out, "{}", table.headers.join("\t"));
            for row in &table.rows {
                let _ = writeln!(out, "{}", row.join("\t"));
            }
        }
        if let Some(text) = &self.attachment {
            out.push('\n');
            out.push_str(text);
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = self.body();
        if let Some(t) = self.elapsed {
            let _ = writeln!(out, "elapsed: {:.3}s", t.as_secs_f64());
        }
        out
    }

    /// CSV of the first table, or of the key/value entries when there is
    /// no table.
    pub fn write_csv<W: io::Write>(&self, writer: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        match self.tables.first() {
            Some(table) => {
                w.write_record(&table.headers)?;
                for row in &table.rows {
                    w.write_record(row)?;
                }
            }
            None => {
                w.write_record(["key", "value", "decimal"])?;
                for (k, v) in &self.entries {
                    w.write_record([k.as_str(), &v.exact(), &decimal_of(v)])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn decimal_of(v: &Value) -> String {
    match v {
        Value::Rational(q) => rational_decimal(q),
        Value::Quadratic(q) => match q.as_rational() {
            Some(r) => rational_decimal(r),
            None => q.to_decimal(DECIMAL_DIGITS),
        },
        Value::Integer(i) => i.to_f64().map(|f| format!("{f:.DECIMAL_DIGITS$}")).unwrap_or_default(),
        Value::Text(_) => String::new(),
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
