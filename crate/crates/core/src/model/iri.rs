use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::ModelError;

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

/// Namespace of the bundled corpus. Query names and the empty Turtle prefix
/// resolve against it.
pub const PMOMH: &str = "https://w3id.org/pmomh#";

/// An absolute, resolved IRI.
///
/// Cloning is cheap; equality and ordering are byte-wise on the resolved string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, ModelError> {
        let value = value.as_ref();
        if value.is_empty() {
            return Err(ModelError::InvalidIri { iri: value.to_owned(), reason: "empty" });
        }
        if value.chars().any(char::is_whitespace) {
            return Err(ModelError::InvalidIri { iri: value.to_owned(), reason: "contains whitespace" });
        }
        Ok(Iri(Arc::from(value)))
    }

    /// Resolves a local name against the corpus namespace.
    ///
    /// Panics if `local` contains whitespace; intended for names known at compile
    /// time. Use [`Iri::new`] for untrusted input.
    pub fn pmomh(local: &str) -> Self {
        Iri::new(format!("{PMOMH}{local}")).expect("corpus local names contain no whitespace")
    }

    /// Inverse of [`Iri::compact`] for user input: `<iri>` or anything with
    /// a `:` is a full IRI, otherwise a local name in the corpus namespace.
    pub fn resolve(name: &str) -> Result<Self, ModelError> {
        let name = name.trim();
        let bare = name.strip_prefix('<').and_then(|n| n.strip_suffix('>')).unwrap_or(name);
        if bare.is_empty() || bare.contains(':') {
            Iri::new(bare)
        } else {
            Iri::new(format!("{PMOMH}{bare}"))
        }
    }

    pub(crate) fn vocab(ns: &str, local: &str) -> Self {
        Iri(Arc::from(format!("{ns}{local}")))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The part after the last `#`, or after the last `/` when there is no `#`.
    pub fn local_name(&self) -> &str {
        let s = self.as_str();
        match s.rfind('#') {
            Some(i) => &s[i + 1..],
            None => match s.rfind('/') {
                Some(i) => &s[i + 1..],
                None => s,
            },
        }
    }

    /// Local name for IRIs in the corpus namespace, `<iri>` otherwise.
    pub fn compact(&self) -> String {
        match self.as_str().strip_prefix(PMOMH) {
            Some(local) if !local.is_empty() => local.to_owned(),
            _ => format!("<{}>", self.as_str()),
        }
    }

    pub fn in_namespace(&self, ns: &str) -> bool {
        self.as_str().starts_with(ns)
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl Serialize for Iri {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_whitespace() {
        assert!(Iri::new("").is_err());
        assert!(Iri::new("http://x/a b").is_err());
        assert!(Iri::new("http://x/a\tb").is_err());
    }

    #[test]
    fn equality_is_bytewise() {
        assert_eq!(Iri::new("http://x/A").unwrap(), Iri::new("http://x/A").unwrap());
        assert_ne!(Iri::new("http://x/A").unwrap(), Iri::new("http://x/a").unwrap());
    }

    #[test]
    fn local_names() {
        assert_eq!(Iri::pmomh("MOEA/D-PWA").local_name(), "MOEA/D-PWA");
        assert_eq!(Iri::new("http://x.org/a/b").unwrap().local_name(), "b");
        assert_eq!(Iri::pmomh("R-NSGA-II").compact(), "R-NSGA-II");
        assert_eq!(Iri::new("http://x.org/a").unwrap().compact(), "<http://x.org/a>");
    }

    #[test]
    fn resolve_inverts_compact() {
        for i in [Iri::pmomh("Trade-off"), Iri::new("http://x.org/a").unwrap()] {
            assert_eq!(Iri::resolve(&i.compact()).unwrap(), i);
        }
        assert_eq!(Iri::resolve("http://x.org/a").unwrap().as_str(), "http://x.org/a");
        assert!(Iri::resolve("").is_err());
    }
}
