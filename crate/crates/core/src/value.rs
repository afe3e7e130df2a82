//! Runtime values.

use std::fmt;

use crate::types::GipsyType;

/// A host record instance: an immutable per-tag snapshot. Methods that
/// "mutate" a field produce a fresh snapshot, which is what lets record
/// streams compose with fby and be warehoused safely.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordValue {
    pub class_name: String,
    /// Fields in the record type's declared order.
    pub fields: Vec<(String, Value)>,
}

impl RecordValue {
    pub fn field(&self, name: &str) -> Option<&Value> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn set_field(&mut self, name: &str, value: Value) {
        if let Some(slot) = self.fields.iter_mut().find(|(n, _)| n == name) {
            slot.1 = value;
        } else {
            self.fields.push((name.to_string(), value));
        }
    }
}

/// A runtime datum. Scalars mirror the Lucid surface types; `Dim` is a
/// first-class dimension name (the result of evaluating a dimension
/// identifier); `HostFn` is a by-name reference to an operator, function,
/// or sequential-thread binding.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f32),
    Double(f64),
    Bool(bool),
    Str(String),
    Dim(String),
    Arr { elem: GipsyType, items: Vec<Value> },
    Rec(RecordValue),
    HostFn(String),
}

impl Value {
    pub fn type_of(&self) -> GipsyType {
        match self {
            Value::Int(_) => GipsyType::Int,
            Value::Float(_) => GipsyType::Float,
            Value::Double(_) => GipsyType::Double,
            Value::Bool(_) => GipsyType::Bool,
            Value::Str(_) => GipsyType::String,
            Value::Dim(_) => GipsyType::Dimension,
            Value::Arr { elem, .. } => GipsyType::Array(Box::new(elem.clone())),
            Value::Rec(r) => GipsyType::Record(r.class_name.clone()),
            Value::HostFn(_) => GipsyType::Function(vec![], Box::new(GipsyType::Void)),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Int(_) => "int",
            Value::Float(_) => "float",
            Value::Double(_) => "double",
            Value::Bool(_) => "bool",
            Value::Str(_) => "string",
            Value::Dim(_) => "dimension",
            Value::Arr { .. } => "array",
            Value::Rec(_) => "record",
            Value::HostFn(_) => "function",
        }
    }

    /// Canonical rendering: ints in decimal, floats in shortest
    /// round-trip form, bools as true/false, arrays bracketed, records as
    /// ClassName{field=value,...}. This is the format the CLI prints and
    /// the regression goldens pin down.
    pub fn render(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Float(v) => v.to_string(),
            Value::Double(v) => v.to_string(),
            Value::Bool(v) => v.to_string(),
            Value::Str(s) => s.clone(),
            Value::Dim(d) => d.clone(),
            Value::Arr { items, .. } => {
                let parts: Vec<String> = items.iter().map(Value::render).collect();
                format!("[{}]", parts.join(", "))
            }
            Value::Rec(r) => {
                let parts: Vec<String> = r
                    .fields
                    .iter()
                    .map(|(n, v)| format!("{n}={}", v.render()))
                    .collect();
                format!("{}{{{}}}", r.class_name, parts.join(", "))
            }
            Value::HostFn(name) => format!("<function {name}>"),
        }
    }

    /// A rendering that is injective on values (strings quoted, float
    /// bit patterns exact), used for warehouse keys over argument lists.
    pub fn key_render(&self) -> String {
        match self {
            Value::Int(v) => format!("i{v}"),
            Value::Float(v) => format!("f{:08x}", v.to_bits()),
            Value::Double(v) => format!("d{:016x}", v.to_bits()),
            Value::Bool(v) => format!("b{v}"),
            Value::Str(s) => format!("s{s:?}"),
            Value::Dim(d) => format!("D{d}"),
            Value::Arr { items, .. } => {
                let parts: Vec<String> = items.iter().map(Value::key_render).collect();
                format!("a[{}]", parts.join(","))
            }
            Value::Rec(r) => {
                let parts: Vec<String> = r
                    .fields
                    .iter()
                    .map(|(n, v)| format!("{n}={}", v.key_render()))
                    .collect();
                format!("r{}{{{}}}", r.class_name, parts.join(","))
            }
            Value::HostFn(name) => format!("h{name}"),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_rendering() {
        assert_eq!(Value::Int(44).render(), "44");
        assert_eq!(Value::Double(1.0).render(), "1");
        assert_eq!(Value::Double(0.5).render(), "0.5");
        assert_eq!(Value::Bool(true).render(), "true");
        assert_eq!(
            Value::Arr {
                elem: GipsyType::Int,
                items: vec![Value::Int(1), Value::Int(2)]
            }
            .render(),
            "[1, 2]"
        );
        let rec = Value::Rec(RecordValue {
            class_name: "Nat42".into(),
            fields: vec![("n".into(), Value::Int(42))],
        });
        assert_eq!(rec.render(), "Nat42{n=42}");
    }

    #[test]
    fn key_render_distinguishes_float_widths() {
        assert_ne!(Value::Float(1.0).key_render(), Value::Double(1.0).key_render());
        assert_ne!(Value::Int(1).key_render(), Value::Double(1.0).key_render());
    }
}
