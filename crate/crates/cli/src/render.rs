//! Output values and their plain/JSON renderings.

/// A result tree. Maps keep insertion order.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Bool(bool),
    Str(String),
    List(Vec<Value>),
    Map(Vec<(String, Value)>),
}

const PLAIN_DIGITS: usize = 6;
const JSON_DIGITS: usize = 17;

impl Value {
    pub fn nums(xs: &[f64]) -> Value {
        Value::List(xs.iter().map(|&x| Value::Num(x)).collect())
    }

    pub fn map<K: Into<String>, const N: usize>(fields: [(K, Value); N]) -> Value {
        Value::Map(fields.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    fn is_scalar(&self) -> bool {
        !matches!(self, Value::List(_) | Value::Map(_))
    }

    /// Scalars and flat lists on one line, lists of lists one item per line,
    /// maps as `key: value` lines with nested maps flattened to dotted keys.
    pub fn to_plain(&self) -> String {
        match self {
            Value::List(items) if !items.iter().all(Value::is_scalar) => {
                items.iter().map(Value::plain_inline).collect::<Vec<_>>().join("\n")
            }
            Value::Map(_) => {
                let mut lines = Vec::new();
                self.plain_lines("", &mut lines);
                lines.join("\n")
            }
            other => other.plain_inline(),
        }
    }

    fn plain_lines(&self, prefix: &str, lines: &mut Vec<String>) {
        if let Value::Map(fields) = self {
            for (k, v) in fields {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                match v {
                    Value::Map(_) => v.plain_lines(&key, lines),
                    _ => lines.push(format!("{key}: {}", v.plain_inline())),
                }
            }
        }
    }

    fn plain_inline(&self) -> String {
        match self {
            Value::Num(x) => format_g(*x, PLAIN_DIGITS),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Str(s) => s.clone(),
            Value::List(items) => format!("[{}]", items.iter().map(Value::plain_inline).collect::<Vec<_>>().join(",")),
            Value::Map(fields) => format!(
                "{{{}}}",
                fields.iter().map(|(k, v)| format!("{k}: {}", v.plain_inline())).collect::<Vec<_>>().join(", ")
            ),
        }
    }

    /// Compact JSON with numbers at 17 significant digits; non-finite
    /// numbers become `null`.
    pub fn to_json(&self) -> String {
        match self {
            Value::Num(x) if !x.is_finite() => "null".to_string(),
            Value::Num(x) => format_g(*x, JSON_DIGITS),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Str(s) => serde_json::to_string(s).expect("strings serialize"),
            Value::List(items) => format!("[{}]", items.iter().map(Value::to_json).collect::<Vec<_>>().join(",")),
            Value::Map(fields) => format!(
                "{{{}}}",
                fields
                    .iter()
                    .map(|(k, v)| format!("{}:{}", serde_json::to_string(k).expect("strings serialize"), v.to_json()))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

/// C-style `%.{digits}g`, with `-0` printed as `0`.
pub fn format_g(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
