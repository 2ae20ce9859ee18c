use std::collections::{BTreeMap, HashSet};

use super::{Graph, Term, Triple};
use crate::model::{
    Assertion, Axiom, ClassExpression, CompareOp, Datatype, Diagnostic, DiagnosticKind, EntityDeclaration,
    EntityKind, Iri, KnowledgeBase, Literal, OWL, RDF, RDFS, XSD,
};

/// How to treat RDF/RDFS/OWL/XSD vocabulary that has no model counterpart.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Unknown vocabulary is a diagnostic.
    #[default]
    Strict,
    /// Unknown vocabulary is kept as an annotation on its subject.
    Lenient,
}

const ANNOTATION_PREDICATES: [(&str, &str); 7] = [
    (RDFS, "comment"),
    (RDFS, "label"),
    (RDFS, "seeAlso"),
    (RDFS, "isDefinedBy"),
    (OWL, "versionInfo"),
    (OWL, "sameAs"),
    (OWL, "equivalentProperty"),
];

fn is(iri: &Iri, ns: &str, local: &str) -> bool {
    iri.as_str().len() == ns.len() + local.len() && iri.as_str().starts_with(ns) && iri.as_str().ends_with(local)
}

fn is_vocab(iri: &Iri) -> bool {
    [RDF, RDFS, OWL, XSD].iter().any(|ns| iri.in_namespace(ns))
}

fn declaration_kind(iri: &Iri) -> Option<EntityKind> {
    if is(iri, OWL, "Class") {
        Some(EntityKind::Class)
    } else if is(iri, OWL, "ObjectProperty") {
        Some(EntityKind::ObjectProperty)
    } else if is(iri, OWL, "DatatypeProperty") {
        Some(EntityKind::DataProperty)
    } else if is(iri, OWL, "NamedIndividual") {
        Some(EntityKind::NamedIndividual)
    } else {
        None
    }
}

fn term_text(t: &Term) -> String {
    match t {
        Term::Iri(i) => i.as_str().to_owned(),
        Term::Blank(b) => format!("_:{b}"),
        Term::Literal(l) => l.lexical(),
    }
}

struct Recognizer<'g> {
    mode: Mode,
    kb: KnowledgeBase,
    diags: Vec<Diagnostic>,
    blanks: BTreeMap<&'g str, Vec<(&'g Iri, &'g Term)>>,
    consumed: HashSet<&'g str>,
    visiting: HashSet<&'g str>,
}

/// Maps a parsed graph onto declarations, axioms, assertions and annotations.
///
/// Predicates outside the RDF/RDFS/OWL/XSD namespaces become object assertions
/// when the object is an IRI and data assertions when it is a literal, so an
/// individuals file can be recognized without the schema that declares its
/// properties. Kind agreement is checked later by validation.
pub fn recognize(graph: &Graph, mode: Mode) -> Result<KnowledgeBase, Vec<Diagnostic>> {
    let mut r = Recognizer {
        mode,
        kb: KnowledgeBase::new(),
        diags: Vec::new(),
        blanks: BTreeMap::new(),
        consumed: HashSet::new(),
        visiting: HashSet::new(),
    };
    let mut named: Vec<(&Iri, &Iri, &Term)> = Vec::new();
    for Triple { subject, predicate, object } in &graph.triples {
        match subject {
            Term::Iri(s) => named.push((s, predicate, object)),
            Term::Blank(b) => r.blanks.entry(b.as_str()).or_default().push((predicate, object)),
            Term::Literal(_) => unreachable!("parser never produces literal subjects"),
        }
    }

    for &(s, p, o) in &named {
        if let (true, Term::Iri(o)) = (is(p, RDF, "type"), o) {
            if let Some(kind) = declaration_kind(o) {
                if let Err(e) = r.kb.declare(EntityDeclaration::new(s.clone(), kind)) {
                    r.diag(DiagnosticKind::KindMismatch, e.to_string());
                }
            }
        }
    }
    for &(s, p, o) in &named {
        r.statement(s, p, o);
    }
    r.all_disjoint();

    let dangling: Vec<&str> = r.blanks.keys().copied().filter(|b| !r.consumed.contains(b)).collect();
    for b in dangling {
        r.diag(DiagnosticKind::Vocabulary, format!("blank node _:{b} is not part of any recognized construct"));
    }

    if r.diags.is_empty() {
        Ok(r.kb)
    } else {
        r.diags.sort();
        r.diags.dedup();
        Err(r.diags)
    }
}

impl<'g> Recognizer<'g> {
    fn diag(&mut self, kind: DiagnosticKind, message: impl Into<String>) {
        self.diags.push(Diagnostic::new(kind, message));
    }

    fn unknown(&mut self, s: &Iri, p: &Iri, o: &Term) {
        match self.mode {
            Mode::Strict => self.diag(
                DiagnosticKind::Vocabulary,
                format!("unsupported vocabulary in {s:?} {p:?} {o}"),
            ),
            Mode::Lenient => self.kb.annotate(s.clone(), p.as_str(), term_text(o)),
        }
    }

    fn statement(&mut self, s: &Iri, p: &'g Iri, o: &'g Term) {
        let obj_iri = match o {
            Term::Iri(i) => Some(i),
            _ => None,
        };
        if is(p, RDF, "type") {
            match obj_iri {
                Some(c) if declaration_kind(c).is_some() || is(c, OWL, "Ontology") => {}
                Some(c) if is_vocab(c) => self.unknown(s, p, o),
                Some(c) => self.kb.add_assertion(Assertion::class(s.clone(), c.clone())),
                None => self.diag(DiagnosticKind::Vocabulary, format!("{s:?} rdf:type {o} is not a named class")),
            }
        } else if is(p, RDFS, "subClassOf") {
            match obj_iri {
                Some(c) => self.kb.add_axiom(Axiom::subclass(s.clone(), c.clone())),
                None => self.diag(DiagnosticKind::Vocabulary, format!("{s:?} rdfs:subClassOf {o}: only named superclasses are supported")),
            }
        } else if is(p, OWL, "equivalentClass") {
            if let Some(expr) = self.class_expr(o) {
                self.kb.add_axiom(Axiom::equivalent(s.clone(), expr));
            }
        } else if is(p, OWL, "disjointWith") {
            match obj_iri {
                Some(c) => self.kb.add_axiom(Axiom::disjoint(s.clone(), c.clone())),
                None => self.diag(DiagnosticKind::Vocabulary, format!("{s:?} owl:disjointWith {o}: expected a named class")),
            }
        } else if is(p, RDFS, "domain") {
            let Some(c) = obj_iri else {
                return self.diag(DiagnosticKind::Vocabulary, format!("{s:?} rdfs:domain {o}: expected a named class"));
            };
            match self.kb.kind_of(s) {
                Some(EntityKind::ObjectProperty) => {
                    self.kb.add_axiom(Axiom::ObjectPropertyDomain { property: s.clone(), class: c.clone() })
                }
                Some(EntityKind::DataProperty) => {
                    self.kb.add_axiom(Axiom::DataPropertyDomain { property: s.clone(), class: c.clone() })
                }
                _ => self.diag(DiagnosticKind::Vocabulary, format!("rdfs:domain on {s:?}, which is not declared as a property in this document")),
            }
        } else if is(p, RDFS, "range") {
            let Some(c) = obj_iri else {
                return self.diag(DiagnosticKind::Vocabulary, format!("{s:?} rdfs:range {o}: expected an IRI"));
            };
            match self.kb.kind_of(s) {
                Some(EntityKind::ObjectProperty) => {
                    self.kb.add_axiom(Axiom::ObjectPropertyRange { property: s.clone(), class: c.clone() })
                }
                Some(EntityKind::DataProperty) => match Datatype::from_xsd(c.as_str()) {
                    Some(datatype) => self.kb.add_axiom(Axiom::DataPropertyRange { property: s.clone(), datatype }),
                    None => self.diag(DiagnosticKind::Vocabulary, format!("unsupported datatype {c:?} as range of {s:?}")),
                },
                _ => self.diag(DiagnosticKind::Vocabulary, format!("rdfs:range on {s:?}, which is not declared as a property in this document")),
            }
        } else if is(p, OWL, "inverseOf") {
            match obj_iri {
                Some(q) => self.kb.add_axiom(Axiom::InverseProperties { p: s.clone(), q: q.clone() }),
                None => self.diag(DiagnosticKind::Vocabulary, format!("{s:?} owl:inverseOf {o}: expected a named property")),
            }
        } else if ANNOTATION_PREDICATES.iter().any(|(ns, l)| is(p, ns, l)) {
            match o {
                Term::Blank(_) => self.diag(DiagnosticKind::Vocabulary, format!("annotation {p:?} on {s:?} has a blank value")),
                _ => self.kb.annotate(s.clone(), p.as_str(), term_text(o)),
            }
        } else if is_vocab(p) {
            self.unknown(s, p, o);
        } else {
            match o {
                Term::Iri(v) => self.kb.add_assertion(Assertion::object(s.clone(), p.clone(), v.clone())),
                Term::Literal(l) => self.kb.add_assertion(Assertion::data(s.clone(), p.clone(), l.clone())),
                Term::Blank(_) => self.diag(
                    DiagnosticKind::Vocabulary,
                    format!("{s:?} {p:?} {o}: anonymous individuals are not supported"),
                ),
            }
        }
    }

    fn all_disjoint(&mut self) {
        let candidates: Vec<&'g str> = self
            .blanks
            .iter()
            .filter(|(_, po)| {
                po.iter().any(|(p, o)| is(p, RDF, "type") && matches!(o, Term::Iri(c) if is(c, OWL, "AllDisjointClasses")))
            })
            .map(|(b, _)| *b)
            .collect();
        for b in candidates {
            self.consumed.insert(b);
            let po = self.blanks[b].clone();
            let mut members = None;
            for (p, o) in po {
                if is(p, RDF, "type") {
                    continue;
                }
                if is(p, OWL, "members") && members.is_none() {
                    members = self.list(o);
                } else {
                    self.diag(DiagnosticKind::Vocabulary, format!("unexpected {p:?} on owl:AllDisjointClasses _:{b}"));
                }
            }
            let Some(members) = members else {
                self.diag(DiagnosticKind::Vocabulary, format!("owl:AllDisjointClasses _:{b} has no usable owl:members"));
                continue;
            };
            let mut classes = Vec::new();
            for m in members {
                match m {
                    Term::Iri(c) => classes.push(c.clone()),
                    _ => self.diag(DiagnosticKind::Vocabulary, format!("owl:AllDisjointClasses _:{b} has a non-IRI member")),
                }
            }
            for (i, a) in classes.iter().enumerate() {
                for c in &classes[i + 1..] {
                    self.kb.add_axiom(Axiom::disjoint(a.clone(), c.clone()));
                }
            }
        }
    }

    /// Items of an RDF collection, or `None` (with a diagnostic) when malformed.
    fn list(&mut self, head: &'g Term) -> Option<Vec<&'g Term>> {
        let mut items = Vec::new();
        let mut seen = HashSet::new();
        let mut node = head;
        loop {
            let b = match node {
                Term::Iri(i) if is(i, RDF, "nil") => return Some(items),
                Term::Blank(b) => b.as_str(),
                _ => {
                    self.diag(DiagnosticKind::Vocabulary, format!("malformed list: {node} is not a list node"));
                    return None;
                }
            };
            if !seen.insert(b) {
                self.diag(DiagnosticKind::Vocabulary, format!("malformed list: cycle through _:{b}"));
                return None;
            }
            self.consumed.insert(b);
            let po = self.blanks.get(b).cloned().unwrap_or_default();
            let firsts: Vec<_> = po.iter().filter(|(p, _)| is(p, RDF, "first")).collect();
            let rests: Vec<_> = po.iter().filter(|(p, _)| is(p, RDF, "rest")).collect();
            if firsts.len() != 1 || rests.len() != 1 || po.len() != 2 {
                self.diag(
                    DiagnosticKind::Vocabulary,
                    format!("malformed list: _:{b} needs exactly one rdf:first and one rdf:rest"),
                );
                return None;
            }
            items.push(firsts[0].1);
            node = rests[0].1;
        }
    }

    fn class_expr(&mut self, term: &'g Term) -> Option<ClassExpression> {
        let b = match term {
            Term::Iri(c) => return Some(ClassExpression::Named(c.clone())),
            Term::Literal(l) => {
                self.diag(DiagnosticKind::Vocabulary, format!("literal {l} used as a class expression"));
                return None;
            }
            Term::Blank(b) => b.as_str(),
        };
        if !self.visiting.insert(b) {
            self.diag(DiagnosticKind::Vocabulary, format!("class expression _:{b} refers to itself"));
            return None;
        }
        self.consumed.insert(b);
        let result = self.blank_expr(b);
        self.visiting.remove(b);
        result
    }

    fn blank_expr(&mut self, b: &'g str) -> Option<ClassExpression> {
        let po = self.blanks.get(b).cloned().unwrap_or_default();
        let mut by_pred: BTreeMap<&str, Vec<&'g Term>> = BTreeMap::new();
        for (p, o) in &po {
            by_pred.entry(p.as_str()).or_default().push(o);
        }
        let one = |this: &mut Self, ns: &str, local: &str| -> Result<Option<&'g Term>, ()> {
            match by_pred.get(format!("{ns}{local}").as_str()) {
                None => Ok(None),
                Some(v) if v.len() == 1 => Ok(Some(v[0])),
                Some(_) => {
                    this.diag(DiagnosticKind::Vocabulary, format!("_:{b} has more than one {local}"));
                    Err(())
                }
            }
        };
        let types: Vec<&Term> = by_pred.get(format!("{RDF}type").as_str()).cloned().unwrap_or_default();
        let typed = |ns: &str, local: &str| types.iter().any(|t| matches!(t, Term::Iri(i) if is(i, ns, local)));

        let mut allowed: Vec<String> = vec![format!("{RDF}type")];
        let expected_type: &[(&str, &str)];
        let result = if let Some(list) = one(self, OWL, "intersectionOf").ok()? {
            allowed.push(format!("{OWL}intersectionOf"));
            expected_type = &[(OWL, "Class")];
            self.operands(b, list).map(ClassExpression::and)
        } else if let Some(list) = one(self, OWL, "unionOf").ok()? {
            allowed.push(format!("{OWL}unionOf"));
            expected_type = &[(OWL, "Class")];
            self.operands(b, list).map(ClassExpression::or)
        } else if let Some(inner) = one(self, OWL, "complementOf").ok()? {
            allowed.push(format!("{OWL}complementOf"));
            expected_type = &[(OWL, "Class")];
            self.class_expr(inner).map(ClassExpression::not)
        } else if let Some(prop) = one(self, OWL, "onProperty").ok()? {
            allowed.push(format!("{OWL}onProperty"));
            expected_type = &[(OWL, "Restriction")];
            let Term::Iri(property) = prop else {
                self.diag(DiagnosticKind::Vocabulary, format!("restriction _:{b} has a non-IRI owl:onProperty"));
                return None;
            };
            let some = one(self, OWL, "someValuesFrom").ok()?;
            let value = one(self, OWL, "hasValue").ok()?;
            match (some, value) {
                (Some(f), None) => {
                    allowed.push(format!("{OWL}someValuesFrom"));
                    if self.is_data_range(f) {
                        self.data_range(f).map(|(op, literal)| ClassExpression::DataCompare {
                            property: property.clone(),
                            op,
                            literal,
                        })
                    } else {
                        self.class_expr(f).map(|filler| ClassExpression::some(property.clone(), filler))
                    }
                }
                (None, Some(v)) => {
                    allowed.push(format!("{OWL}hasValue"));
                    match v {
                        Term::Iri(i) => {
                            Some(ClassExpression::ValueObj { property: property.clone(), individual: i.clone() })
                        }
                        Term::Literal(l) => {
                            Some(ClassExpression::ValueData { property: property.clone(), literal: l.clone() })
                        }
                        Term::Blank(_) => {
                            self.diag(DiagnosticKind::Vocabulary, format!("restriction _:{b} has a blank owl:hasValue"));
                            None
                        }
                    }
                }
                _ => {
                    self.diag(
                        DiagnosticKind::Vocabulary,
                        format!("restriction _:{b} needs exactly one of owl:someValuesFrom or owl:hasValue"),
                    );
                    None
                }
            }
        } else {
            if typed(OWL, "Restriction") {
                self.diag(DiagnosticKind::Vocabulary, format!("restriction _:{b} is missing owl:onProperty"));
            } else {
                self.diag(DiagnosticKind::Vocabulary, format!("_:{b} is not a supported class expression"));
            }
            return None;
        };

        for t in &types {
            if !matches!(t, Term::Iri(i) if expected_type.iter().any(|(ns, l)| is(i, ns, l))) {
                self.diag(DiagnosticKind::Vocabulary, format!("unexpected rdf:type {t} on _:{b}"));
            }
        }
        for (p, _) in &po {
            if !allowed.iter().any(|a| a == p.as_str()) {
                self.diag(DiagnosticKind::Vocabulary, format!("unexpected {p:?} on class expression _:{b}"));
            }
        }
        result
    }

    fn operands(&mut self, b: &str, list: &'g Term) -> Option<Vec<ClassExpression>> {
        let items = self.list(list)?;
        if items.is_empty() {
            self.diag(DiagnosticKind::Vocabulary, format!("_:{b} has an empty operand list"));
            return None;
        }
        let mut out = Vec::with_capacity(items.len());
        for item in items {
            out.push(self.class_expr(item)?);
        }
        Some(out)
    }

    fn is_data_range(&self, t: &Term) -> bool {
        let Term::Blank(b) = t else { return false };
        self.blanks.get(b.as_str()).is_some_and(|po| {
            po.iter().any(|(p, o)| {
                (is(p, RDF, "type") && matches!(o, Term::Iri(i) if is(i, RDFS, "Datatype")))
                    || is(p, OWL, "onDatatype")
                    || is(p, OWL, "oneOf")
                    || is(p, OWL, "datatypeComplementOf")
            })
        })
    }

    /// Decodes the data ranges the serializer writes for comparisons:
    /// `owl:oneOf ( v )` for `=`, its `owl:datatypeComplementOf` for `!=`, and
    /// a single-facet `owl:withRestrictions` for the orderings.
    fn data_range(&mut self, t: &'g Term) -> Option<(CompareOp, Literal)> {
        let Term::Blank(b) = t else { return None };
        let b = b.as_str();
        if !self.visiting.insert(b) {
            self.diag(DiagnosticKind::Vocabulary, format!("data range _:{b} refers to itself"));
            return None;
        }
        self.consumed.insert(b);
        let result = self.data_range_inner(b);
        self.visiting.remove(b);
        result
    }

    fn data_range_inner(&mut self, b: &'g str) -> Option<(CompareOp, Literal)> {
        let po = self.blanks.get(b).cloned().unwrap_or_default();
        let get = |ns: &str, local: &str| -> Vec<&'g Term> {
            po.iter().filter(|(p, _)| is(p, ns, local)).map(|(_, o)| *o).collect()
        };
        for t in get(RDF, "type") {
            if !matches!(t, Term::Iri(i) if is(i, RDFS, "Datatype")) {
                self.diag(DiagnosticKind::Vocabulary, format!("unexpected rdf:type {t} on data range _:{b}"));
            }
        }
        let one_of = get(OWL, "oneOf");
        let complement = get(OWL, "datatypeComplementOf");
        let on_datatype = get(OWL, "onDatatype");
        let restrictions = get(OWL, "withRestrictions");
        let known = get(RDF, "type").len() + one_of.len() + complement.len() + on_datatype.len() + restrictions.len();
        if known != po.len() {
            self.diag(DiagnosticKind::Vocabulary, format!("unexpected predicate on data range _:{b}"));
            return None;
        }
        match (one_of.as_slice(), complement.as_slice(), on_datatype.as_slice(), restrictions.as_slice()) {
            ([list], [], [], []) => match self.list(list)?.as_slice() {
                [Term::Literal(l)] => Some((CompareOp::Eq, l.clone())),
                _ => {
                    self.diag(DiagnosticKind::Vocabulary, format!("owl:oneOf on _:{b} must hold exactly one literal"));
                    None
                }
            },
            ([], [inner], [], []) => match self.data_range(inner)? {
                (CompareOp::Eq, l) => Some((CompareOp::Ne, l)),
                _ => {
                    self.diag(DiagnosticKind::Vocabulary, format!("unsupported datatype complement on _:{b}"));
                    None
                }
            },
            ([], [], [Term::Iri(dt)], [list]) => {
                let Some(datatype) = Datatype::from_xsd(dt.as_str()) else {
                    self.diag(DiagnosticKind::Vocabulary, format!("unsupported datatype {dt:?} on _:{b}"));
                    return None;
                };
                let facet = match self.list(list)?.as_slice() {
                    [Term::Blank(f)] => f.as_str(),
                    _ => {
                        self.diag(DiagnosticKind::Vocabulary, format!("_:{b} must have exactly one facet restriction"));
                        return None;
                    }
                };
                self.consumed.insert(facet);
                let (op, literal) = match self.blanks.get(facet).map(Vec::as_slice) {
                    Some([(p, Term::Literal(l))]) if p.in_namespace(XSD) => {
                        let op = match p.local_name() {
                            "minInclusive" => CompareOp::Ge,
                            "minExclusive" => CompareOp::Gt,
                            "maxInclusive" => CompareOp::Le,
                            "maxExclusive" => CompareOp::Lt,
                            other => {
                                self.diag(DiagnosticKind::Vocabulary, format!("unsupported facet xsd:{other} on _:{facet}"));
                                return None;
                            }
                        };
                        (op, l.clone())
                    }
                    _ => {
                        self.diag(DiagnosticKind::Vocabulary, format!("facet _:{facet} must be a single xsd facet with a literal"));
                        return None;
                    }
                };
                if literal.datatype() != datatype {
                    self.diag(
                        DiagnosticKind::Vocabulary,
                        format!("facet literal {literal} does not match owl:onDatatype {dt:?}"),
                    );
                    return None;
                }
                Some((op, literal))
            }
            _ => {
                self.diag(DiagnosticKind::Vocabulary, format!("_:{b} is not a supported data range"));
                None
            }
        }
    }
}
