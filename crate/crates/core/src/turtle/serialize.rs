use std::collections::BTreeMap;
use std::fmt::Write;

use crate::model::{
    Assertion, Axiom, ClassExpression, CompareOp, EntityKind, Iri, KnowledgeBase, Literal, OWL, PMOMH, RDF, RDFS, XSD,
};

const PREFIXES: [(&str, &str); 5] = [("", PMOMH), ("owl", OWL), ("rdf", RDF), ("rdfs", RDFS), ("xsd", XSD)];

fn is_escapable(c: char) -> bool {
    "_~.-!$&'()*+,;=/?#@%".contains(c)
}

/// Renders a local name in `PN_LOCAL` form, escaping where the grammar allows.
fn render_local(local: &str) -> Option<String> {
    let chars: Vec<char> = local.chars().collect();
    let mut out = String::with_capacity(local.len());
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let first = i == 0;
        let last = i + 1 == chars.len();
        match c {
            'a'..='z' | 'A'..='Z' | '0'..='9' | '_' | ':' => out.push(c),
            '-' if !first => out.push(c),
            '.' if !first && !last => out.push(c),
            '%' if chars.get(i + 1).is_some_and(char::is_ascii_hexdigit)
                && chars.get(i + 2).is_some_and(char::is_ascii_hexdigit) =>
            {
                out.push_str(&local[local.char_indices().nth(i).unwrap().0..][..3]);
                i += 3;
                continue;
            }
            _ if is_escapable(c) => {
                out.push('\\');
                out.push(c);
            }
            _ if !c.is_ascii() && !c.is_whitespace() => out.push(c),
            _ => return None,
        }
        i += 1;
    }
    Some(out)
}

fn render_iri(iri: &Iri) -> String {
    for (prefix, ns) in PREFIXES {
        if let Some(local) = iri.as_str().strip_prefix(ns) {
            if let Some(l) = render_local(local) {
                return format!("{prefix}:{l}");
            }
        }
    }
    let mut out = String::from("<");
    for c in iri.as_str().chars() {
        match c {
            '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\' | '\0'..=' ' => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            _ => out.push(c),
        }
    }
    out.push('>');
    out
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn render_literal(l: &Literal) -> String {
    match l {
        Literal::Boolean(b) => b.to_string(),
        Literal::Integer(i) => i.to_string(),
        Literal::String(s) => quote(s),
    }
}

fn vocab(ns: &str, local: &str) -> String {
    render_iri(&Iri::vocab(ns, local))
}

fn render_expr(e: &ClassExpression) -> String {
    let restriction = |p: &Iri, rest: String| {
        format!("[ a owl:Restriction ; owl:onProperty {} ; {rest} ]", render_iri(p))
    };
    let list = |xs: &[ClassExpression]| xs.iter().map(render_expr).collect::<Vec<_>>().join(" ");
    match e {
        ClassExpression::Named(c) => render_iri(c),
        ClassExpression::And(xs) => format!("[ a owl:Class ; owl:intersectionOf ( {} ) ]", list(xs)),
        ClassExpression::Or(xs) => format!("[ a owl:Class ; owl:unionOf ( {} ) ]", list(xs)),
        ClassExpression::Not(x) => format!("[ a owl:Class ; owl:complementOf {} ]", render_expr(x)),
        ClassExpression::Some { property, filler } => {
            restriction(property, format!("owl:someValuesFrom {}", render_expr(filler)))
        }
        ClassExpression::ValueObj { property, individual } => {
            restriction(property, format!("owl:hasValue {}", render_iri(individual)))
        }
        ClassExpression::ValueData { property, literal } => {
            restriction(property, format!("owl:hasValue {}", render_literal(literal)))
        }
        ClassExpression::DataCompare { property, op, literal } => {
            let one_of = format!("[ a rdfs:Datatype ; owl:oneOf ( {} ) ]", render_literal(literal));
            let range = match op {
                CompareOp::Eq => one_of,
                CompareOp::Ne => format!("[ a rdfs:Datatype ; owl:datatypeComplementOf {one_of} ]"),
                _ => {
                    let facet = match op {
                        CompareOp::Ge => "minInclusive",
                        CompareOp::Gt => "minExclusive",
                        CompareOp::Le => "maxInclusive",
                        _ => "maxExclusive",
                    };
                    format!(
                        "[ a rdfs:Datatype ; owl:onDatatype xsd:{} ; owl:withRestrictions ( [ xsd:{facet} {} ] ) ]",
                        literal.datatype().xsd_local(),
                        render_literal(literal)
                    )
                }
            };
            restriction(property, format!("owl:someValuesFrom {range}"))
        }
    }
}

/// Canonical Turtle for a knowledge base: fixed prefixes, subjects sorted by
/// IRI, predicates sorted by IRI, objects sorted by their rendered text.
///
/// Annotation keys are written back as predicates, so annotations keyed by
/// structural vocabulary or by corpus properties do not survive a round trip.
pub fn serialize_turtle(kb: &KnowledgeBase) -> String {
    let mut subjects: BTreeMap<Iri, Vec<(String, String)>> = BTreeMap::new();
    let mut add = |s: &Iri, p: String, o: String| subjects.entry(s.clone()).or_default().push((p, o));
    let rdf_type = format!("{RDF}type");

    for d in kb.declarations() {
        let class = match d.kind {
            EntityKind::Class => "Class",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::DataProperty => "DatatypeProperty",
            EntityKind::NamedIndividual => "NamedIndividual",
        };
        add(&d.iri, rdf_type.clone(), vocab(OWL, class));
    }
    for ax in kb.axioms() {
        match ax {
            Axiom::SubClassOf { sub, sup } => add(sub, format!("{RDFS}subClassOf"), render_iri(sup)),
            Axiom::EquivalentClasses { class, expr } => add(class, format!("{OWL}equivalentClass"), render_expr(expr)),
            Axiom::DisjointClasses { a, b } => add(a, format!("{OWL}disjointWith"), render_iri(b)),
            Axiom::ObjectPropertyDomain { property, class } | Axiom::DataPropertyDomain { property, class } => {
                add(property, format!("{RDFS}domain"), render_iri(class))
            }
            Axiom::ObjectPropertyRange { property, class } => add(property, format!("{RDFS}range"), render_iri(class)),
            Axiom::DataPropertyRange { property, datatype } => {
                add(property, format!("{RDFS}range"), vocab(XSD, datatype.xsd_local()))
            }
            Axiom::InverseProperties { p, q } => add(p, format!("{OWL}inverseOf"), render_iri(q)),
        }
    }
    for a in kb.assertions() {
        match a {
            Assertion::ClassAssertion { individual, class } => add(individual, rdf_type.clone(), render_iri(class)),
            Assertion::ObjectAssertion { subject, property, object } => {
                add(subject, property.as_str().to_owned(), render_iri(object))
            }
            Assertion::DataAssertion { subject, property, value } => {
                add(subject, property.as_str().to_owned(), render_literal(value))
            }
        }
    }
    for (s, anns) in kb.annotations() {
        for ann in anns {
            add(s, ann.key.clone(), quote(&ann.value));
        }
    }

    let mut out = String::new();
    for (prefix, ns) in PREFIXES {
        let _ = writeln!(out, "@prefix {prefix}: <{ns}> .");
    }
    for (s, mut pos) in subjects {
        pos.sort();
        pos.dedup();
        out.push('\n');
        out.push_str(&render_iri(&s));
        let mut i = 0;
        while i < pos.len() {
            let p = &pos[i].0;
            let objects: Vec<&str> = pos[i..].iter().take_while(|(q, _)| q == p).map(|(_, o)| o.as_str()).collect();
            i += objects.len();
            let pred = if *p == rdf_type {
                "a".to_owned()
            } else {
                Iri::new(p).map(|iri| render_iri(&iri)).unwrap_or_else(|_| format!("<{p}>"))
            };
            let sep = if i == objects.len() { " " } else { " ;\n    " };
            let _ = write!(out, "{sep}{pred} {}", objects.join(" , "));
        }
        out.push_str(" .\n");
    }
    out
}
