use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::iri::XSD;
use super::ModelError;

/// Range types available to data properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Datatype {
    Boolean,
    Integer,
    String,
}

impl Datatype {
    pub fn xsd_iri(self) -> String {
        format!("{XSD}{}", self.xsd_local())
    }

    pub fn xsd_local(self) -> &'static str {
        match self {
            Datatype::Boolean => "boolean",
            Datatype::Integer => "integer",
            Datatype::String => "string",
        }
    }

    /// Maps an XSD datatype IRI onto the supported set. `xsd:int` folds into integer.
    pub fn from_xsd(iri: &str) -> Option<Self> {
        match iri.strip_prefix(XSD)? {
            "boolean" => Some(Datatype::Boolean),
            "integer" | "int" => Some(Datatype::Integer),
            "string" => Some(Datatype::String),
            _ => None,
        }
    }
}

impl fmt::Display for Datatype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.xsd_local())
    }
}

/// A typed data value. Integer and boolean literals are held in canonical form,
/// so equal values compare equal regardless of how they were written.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Literal {
    Boolean(bool),
    Integer(i64),
    String(String),
}

impl Literal {
    pub fn new(lexical: &str, datatype: Datatype) -> Result<Self, ModelError> {
        match datatype {
            Datatype::Boolean => match lexical {
                "true" => Ok(Literal::Boolean(true)),
                "false" => Ok(Literal::Boolean(false)),
                _ => Err(ModelError::InvalidLiteral { lexical: lexical.to_owned(), datatype }),
            },
            Datatype::Integer => parse_integer(lexical)
                .map(Literal::Integer)
                .ok_or_else(|| ModelError::InvalidLiteral { lexical: lexical.to_owned(), datatype }),
            Datatype::String => Ok(Literal::String(lexical.to_owned())),
        }
    }

    pub fn string(value: impl Into<String>) -> Self {
        Literal::String(value.into())
    }

    pub fn datatype(&self) -> Datatype {
        match self {
            Literal::Boolean(_) => Datatype::Boolean,
            Literal::Integer(_) => Datatype::Integer,
            Literal::String(_) => Datatype::String,
        }
    }

    pub fn lexical(&self) -> String {
        match self {
            Literal::Boolean(b) => b.to_string(),
            Literal::Integer(i) => i.to_string(),
            Literal::String(s) => s.clone(),
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self {
            Literal::Integer(i) => Some(*i),
            _ => None,
        }
    }

    /// Ordering between two literals of the same datatype; `None` across datatypes.
    pub fn compare(&self, other: &Literal) -> Option<Ordering> {
        match (self, other) {
            (Literal::Boolean(a), Literal::Boolean(b)) => Some(a.cmp(b)),
            (Literal::Integer(a), Literal::Integer(b)) => Some(a.cmp(b)),
            (Literal::String(a), Literal::String(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }
}

/// Signed decimal integer: optional sign followed by at least one ASCII digit.
pub(crate) fn parse_integer(lexical: &str) -> Option<i64> {
    let digits = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    lexical.strip_prefix('+').unwrap_or(lexical).parse().ok()
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Boolean(b) => write!(f, "{b}"),
            Literal::Integer(i) => write!(f, "{i}"),
            Literal::String(s) => write!(f, "{s:?}"),
        }
    }
}

impl Serialize for Literal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Literal::Boolean(b) => serializer.serialize_bool(*b),
            Literal::Integer(i) => serializer.serialize_i64(*i),
            Literal::String(s) => serializer.serialize_str(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_lexical_forms_are_exact() {
        assert_eq!(Literal::new("true", Datatype::Boolean).unwrap(), Literal::Boolean(true));
        assert!(Literal::new("True", Datatype::Boolean).is_err());
        assert!(Literal::new("1", Datatype::Boolean).is_err());
    }

    #[test]
    fn integers_are_canonicalised() {
        assert_eq!(Literal::new("+007", Datatype::Integer).unwrap(), Literal::Integer(7));
        assert_eq!(Literal::new("-12", Datatype::Integer).unwrap().lexical(), "-12");
        assert!(Literal::new("abc", Datatype::Integer).is_err());
        assert!(Literal::new("", Datatype::Integer).is_err());
        assert!(Literal::new("+-1", Datatype::Integer).is_err());
        assert!(Literal::new("1.5", Datatype::Integer).is_err());
        assert!(Literal::new("99999999999999999999", Datatype::Integer).is_err());
    }

    #[test]
    fn xsd_mapping() {
        assert_eq!(Datatype::from_xsd(&format!("{XSD}int")), Some(Datatype::Integer));
        assert_eq!(Datatype::from_xsd(&format!("{XSD}double")), None);
    }

    #[test]
    fn compare_within_datatype_only() {
        let a = Literal::Integer(3);
        assert_eq!(a.compare(&Literal::Integer(5)), Some(Ordering::Less));
        assert_eq!(a.compare(&Literal::string("3")), None);
    }
}
