use num_bigint::BigInt;
use num_traits::ToPrimitive;
use orbimukai_core::rational::approx;
use orbimukai_core::{ExtendedRational, Rational};
use serde_json::{json, Map, Value};

/// A scalar output value.
#[derive(Debug, Clone)]
pub enum Field {
    Rat(Rational),
    Ext(ExtendedRational),
    Text(String),
    Bool(bool),
    /// Pre-rendered text with a structured JSON form.
    Structured(String, Value),
}

impl Field {
    fn text(&self, with_approx: bool) -> String {
        match self {
            Field::Rat(q) => {
                if with_approx && !q.is_integer() {
                    format!("{q}  [approx {}]", approx(q))
                } else {
                    q.to_string()
                }
            }
            Field::Ext(ExtendedRational::Finite(q)) => Field::Rat(q.clone()).text(with_approx),
            Field::Ext(e) => e.to_string(),
            Field::Text(s) => s.clone(),
            Field::Bool(b) => b.to_string(),
            Field::Structured(s, _) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Rat(q) => json!(q.to_string()),
            Field::Ext(e) => json!(e.to_string()),
            Field::Text(s) => json!(s),
            Field::Bool(b) => json!(b),
            Field::Structured(_, v) => v.clone(),
        }
    }
}

/// Command output: either ordered `key = value` lines or bare lines.
#[derive(Debug, Clone)]
pub enum Report {
    Fields(Vec<(String, Field)>),
    Lines(Vec<String>, Value),
}

impl Report {
    pub fn fields() -> FieldsBuilder {
        FieldsBuilder(Vec::new())
    }

    pub fn to_text(&self, with_approx: bool) -> String {
        let mut out = String::new();
        match self {
            Report::Fields(fields) => {
                for (k, v) in fields {
                    out.push_str(&format!("{k} = {}\n", v.text(with_approx)));
                }
            }
            Report::Lines(lines, _) => {
                for l in lines {
                    out.push_str(l);
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let value = match self {
            Report::Fields(fields) => {
                let mut m = Map::new();
                for (k, v) in fields {
                    m.insert(k.clone(), v.json());
                }
                Value::Object(m)
            }
            Report::Lines(_, v) => v.clone(),
        };
        let mut s = serde_json::to_string_pretty(&value).expect("json renders");
        s.push('\n');
        s
    }
}

pub struct FieldsBuilder(Vec<(String, Field)>);

impl FieldsBuilder {
    pub fn push(mut self, key: &str, value: Field) -> Self {
        self.0.push((key.to_string(), value));
        self
    }

    pub fn build(self) -> Report {
        Report::Fields(self.0)
    }
}

/// Integer coordinates as a JSON array of numbers.
pub fn int_array(xs: &[i64]) -> Value {
    Value::Array(xs.iter().map(|&x| json!(x)).collect())
}

pub fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}
