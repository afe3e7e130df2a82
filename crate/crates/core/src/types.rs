//! The GIPSY type system and the Lucid/host boundary matching table.

use std::fmt;

use thiserror::Error;

/// Type kinds understood across the toolchain. Scalar kinds mirror the
/// Lucid surface types; the rest describe host records, functions, and
/// the transitional kinds used during compilation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GipsyType {
    Int,
    Float,
    Double,
    Bool,
    String,
    Void,
    Dimension,
    Array(Box<GipsyType>),
    Record(String),
    Function(Vec<GipsyType>, Box<GipsyType>),
    Embed,
    Identifier,
    Operator,
}

impl GipsyType {
    /// Lexeme used in `.gipsy` files and manifests.
    pub fn lexeme(&self) -> String {
        match self {
            GipsyType::Int => "int".into(),
            GipsyType::Float => "float".into(),
            GipsyType::Double => "double".into(),
            GipsyType::Bool => "bool".into(),
            GipsyType::String => "string".into(),
            GipsyType::Void => "void".into(),
            GipsyType::Dimension => "dimension".into(),
            GipsyType::Array(t) => format!("{}[]", t.lexeme()),
            GipsyType::Record(name) => name.clone(),
            GipsyType::Function(params, ret) => {
                let ps: Vec<String> = params.iter().map(|t| t.lexeme()).collect();
                format!("({}) -> {}", ps.join(","), ret.lexeme())
            }
            GipsyType::Embed => "embed".into(),
            GipsyType::Identifier => "identifier".into(),
            GipsyType::Operator => "operator".into(),
        }
    }

    /// Parses the scalar lexemes of the preprocessor TYPE production.
    /// `char` maps to string (a host char becomes a length-1 Lucid
    /// string); unknown names are user-declared record types.
    pub fn from_decl_name(name: &str) -> GipsyType {
        match name {
            "int" => GipsyType::Int,
            "float" => GipsyType::Float,
            "double" => GipsyType::Double,
            "bool" => GipsyType::Bool,
            "char" | "string" => GipsyType::String,
            "void" => GipsyType::Void,
            "dimension" => GipsyType::Dimension,
            other => GipsyType::Record(other.to_string()),
        }
    }
}

impl fmt::Display for GipsyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lexeme())
    }
}

/// Which half of the matching table applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Host return type flowing into a Lucid expression.
    Return,
    /// Lucid value flowing into a host parameter.
    Parameter,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeMatchError {
    #[error("unknown host type: {0}")]
    UnknownHostType(String),
}

const HOST_TYPE_NAMES: &[&str] = &[
    "int", "byte", "long", "float", "double", "boolean", "char", "String", "void",
];

/// The boundary matching table.
///
/// Return direction (host -> Lucid): int/byte/long -> int, float -> float,
/// double -> double, boolean -> bool, char/String -> string, and void ->
/// bool (a void host call evaluates to boolean true).
///
/// Parameter direction (Lucid -> host): string -> String, float -> float,
/// double -> double, int and dimension -> int, bool -> boolean. void is
/// never a parameter type, so in that direction it matches nothing.
pub fn type_match(
    host_type: &str,
    lucid_type: &GipsyType,
    direction: Direction,
) -> Result<bool, TypeMatchError> {
    if !HOST_TYPE_NAMES.contains(&host_type) {
        return Err(TypeMatchError::UnknownHostType(host_type.to_string()));
    }
    let matched = match direction {
        Direction::Return => matches!(
            (host_type, lucid_type),
            ("int" | "byte" | "long", GipsyType::Int)
                | ("float", GipsyType::Float)
                | ("double", GipsyType::Double)
                | ("boolean", GipsyType::Bool)
                | ("char" | "String", GipsyType::String)
                | ("void", GipsyType::Bool)
        ),
        Direction::Parameter => matches!(
            (host_type, lucid_type),
            ("String", GipsyType::String)
                | ("float", GipsyType::Float)
                | ("double", GipsyType::Double)
                | ("int", GipsyType::Int | GipsyType::Dimension)
                | ("boolean", GipsyType::Bool)
        ),
    };
    Ok(matched)
}

/// All host-side type names the table knows about.
pub fn host_type_names() -> &'static [&'static str] {
    HOST_TYPE_NAMES
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_row_matches_in_return_direction() {
        assert_eq!(type_match("int", &GipsyType::Int, Direction::Return), Ok(true));
        assert_eq!(type_match("byte", &GipsyType::Int, Direction::Return), Ok(true));
        assert_eq!(type_match("long", &GipsyType::Int, Direction::Return), Ok(true));
    }

    #[test]
    fn void_matches_only_bool_and_only_on_return() {
        assert_eq!(type_match("void", &GipsyType::Bool, Direction::Return), Ok(true));
        assert_eq!(type_match("void", &GipsyType::Int, Direction::Return), Ok(false));
        assert_eq!(type_match("void", &GipsyType::Bool, Direction::Parameter), Ok(false));
    }

    #[test]
    fn boolean_does_not_pair_with_string() {
        assert_eq!(
            type_match("boolean", &GipsyType::String, Direction::Parameter),
            Ok(false)
        );
    }

    #[test]
    fn unknown_host_type_is_rejected() {
        assert!(matches!(
            type_match("size_t", &GipsyType::Int, Direction::Return),
            Err(TypeMatchError::UnknownHostType(_))
        ));
    }

    #[test]
    fn return_direction_is_a_function_of_host_type() {
        // Each host row pairs with exactly one Lucid kind on return.
        let kinds = [
            GipsyType::Int,
            GipsyType::Float,
            GipsyType::Double,
            GipsyType::Bool,
            GipsyType::String,
            GipsyType::Void,
            GipsyType::Dimension,
        ];
        for host in host_type_names() {
            let matched: Vec<_> = kinds
                .iter()
                .filter(|k| type_match(host, k, Direction::Return).unwrap())
                .collect();
            assert_eq!(matched.len(), 1, "host type {host} matched {matched:?}");
        }
    }
}
