//! Random knowledge bases and class expressions over a small vocabulary.

use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::Rng;

use prefonto::model::{
    Assertion, Axiom, ClassExpression, CompareOp, Datatype, EntityDeclaration, EntityKind, Iri, KnowledgeBase, Literal,
};

/// Names that exercise local-name escaping in the serializer.
const ODD_LOCALS: [&str; 6] = ["Trade-off", "MOEA/D", "R.1", "it's", "n%41x", "Ünï"];

#[derive(Clone, Debug, Default)]
pub struct Vocab {
    pub classes: Vec<Iri>,
    pub individuals: Vec<Iri>,
    pub object_properties: Vec<Iri>,
    /// With their declared range.
    pub data_properties: Vec<(Iri, Datatype)>,
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_classes: usize,
    pub max_individuals: usize,
    /// Object plus data properties.
    pub max_properties: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_classes: 20, max_individuals: 20, max_properties: 5 }
    }
}

fn name(rng: &mut StdRng, prefix: &str, i: usize) -> Iri {
    match rng.random_range(0..12) {
        0 => Iri::pmomh(&format!("{}{prefix}{i}", ODD_LOCALS.choose(rng).unwrap())),
        1 => Iri::new(format!("http://example.org/other#{prefix}{i}")).unwrap(),
        _ => Iri::pmomh(&format!("{prefix}{i}")),
    }
}

pub fn literal(rng: &mut StdRng, dt: Datatype) -> Literal {
    match dt {
        Datatype::Boolean => Literal::Boolean(rng.random()),
        Datatype::Integer => Literal::Integer(rng.random_range(-2..4)),
        Datatype::String => {
            let pool = ["a", "b", "two words", "quote \" and \\ slash", "line\nbreak", "tab\there", "ü€😀", ""];
            Literal::string(*pool.choose(rng).unwrap())
        }
    }
}

pub fn random_vocab(rng: &mut StdRng, limits: Limits) -> Vocab {
    let nc = rng.random_range(1..=limits.max_classes);
    let ni = rng.random_range(1..=limits.max_individuals);
    let np = rng.random_range(0..=limits.max_properties);
    let nd = rng.random_range(0..=limits.max_properties - np);
    let dts = [Datatype::Boolean, Datatype::Integer, Datatype::String];
    Vocab {
        classes: (0..nc).map(|i| name(rng, "C", i)).collect(),
        individuals: (0..ni).map(|i| name(rng, "i", i)).collect(),
        object_properties: (0..np).map(|i| name(rng, "p", i)).collect(),
        data_properties: (0..nd).map(|i| (name(rng, "d", i), *dts.choose(rng).unwrap())).collect(),
    }
}

/// An expression the reasoner accepts as a class definition.
pub fn definitional_expr(rng: &mut StdRng, v: &Vocab, depth: u32) -> ClassExpression {
    let class = |rng: &mut StdRng| ClassExpression::Named(v.classes.choose(rng).unwrap().clone());
    let choice = if depth == 0 { 0 } else { rng.random_range(0..5) };
    match choice {
        1 if !v.object_properties.is_empty() => ClassExpression::some(
            v.object_properties.choose(rng).unwrap().clone(),
            definitional_expr(rng, v, depth - 1),
        ),
        2 if !v.object_properties.is_empty() => ClassExpression::ValueObj {
            property: v.object_properties.choose(rng).unwrap().clone(),
            individual: v.individuals.choose(rng).unwrap().clone(),
        },
        3 if !v.data_properties.is_empty() => {
            let (p, dt) = v.data_properties.choose(rng).unwrap().clone();
            ClassExpression::ValueData { property: p, literal: literal(rng, dt) }
        }
        4 => {
            let n = rng.random_range(2..=3);
            ClassExpression::And((0..n).map(|_| definitional_expr(rng, v, depth - 1)).collect())
        }
        _ => class(rng),
    }
}

/// Any well-typed expression over the vocabulary.
pub fn random_expr(rng: &mut StdRng, v: &Vocab, depth: u32) -> ClassExpression {
    let choice = if depth == 0 { rng.random_range(0..2) } else { rng.random_range(0..8) };
    match choice {
        1 if !v.object_properties.is_empty() => ClassExpression::ValueObj {
            property: v.object_properties.choose(rng).unwrap().clone(),
            individual: v.individuals.choose(rng).unwrap().clone(),
        },
        2 => ClassExpression::And(vec![random_expr(rng, v, depth - 1), random_expr(rng, v, depth - 1)]),
        3 => ClassExpression::Or(vec![random_expr(rng, v, depth - 1), random_expr(rng, v, depth - 1)]),
        4 => ClassExpression::not(random_expr(rng, v, depth - 1)),
        5 if !v.object_properties.is_empty() => ClassExpression::some(
            v.object_properties.choose(rng).unwrap().clone(),
            random_expr(rng, v, depth - 1),
        ),
        6 if !v.data_properties.is_empty() => {
            let (p, dt) = v.data_properties.choose(rng).unwrap().clone();
            ClassExpression::ValueData { property: p, literal: literal(rng, dt) }
        }
        7 if !v.data_properties.is_empty() => {
            let (p, dt) = v.data_properties.choose(rng).unwrap().clone();
            let op = if dt == Datatype::Integer {
                *CompareOp::ALL.choose(rng).unwrap()
            } else {
                *[CompareOp::Eq, CompareOp::Ne].choose(rng).unwrap()
            };
            ClassExpression::DataCompare { property: p, op, literal: literal(rng, dt) }
        }
        _ => ClassExpression::Named(v.classes.choose(rng).unwrap().clone()),
    }
}

/// A knowledge base that validates cleanly: everything it mentions is declared
/// and data values match their property's range.
pub fn random_kb(rng: &mut StdRng, limits: Limits) -> (KnowledgeBase, Vocab) {
    let v = random_vocab(rng, limits);
    let mut kb = KnowledgeBase::new();
    let decl = |kb: &mut KnowledgeBase, iri: &Iri, kind| kb.declare(EntityDeclaration::new(iri.clone(), kind)).unwrap();
    v.classes.iter().for_each(|c| decl(&mut kb, c, EntityKind::Class));
    v.individuals.iter().for_each(|i| decl(&mut kb, i, EntityKind::NamedIndividual));
    v.object_properties.iter().for_each(|p| decl(&mut kb, p, EntityKind::ObjectProperty));
    v.data_properties.iter().for_each(|(p, _)| decl(&mut kb, p, EntityKind::DataProperty));

    let class = |rng: &mut StdRng| v.classes.choose(rng).unwrap().clone();
    let ind = |rng: &mut StdRng| v.individuals.choose(rng).unwrap().clone();

    for _ in 0..rng.random_range(0..=v.classes.len() * 2) {
        let (a, b) = (class(rng), class(rng));
        kb.add_axiom(Axiom::subclass(a, b));
    }
    for _ in 0..rng.random_range(0..=3) {
        let c = class(rng);
        let expr = match rng.random_range(0..4) {
            0 => ClassExpression::Named(class(rng)),
            1 => random_expr(rng, &v, 2),
            _ => definitional_expr(rng, &v, 2),
        };
        kb.add_axiom(Axiom::equivalent(c, expr));
    }
    if rng.random_bool(0.3) {
        kb.add_axiom(Axiom::disjoint(class(rng), class(rng)));
    }
    for p in &v.object_properties {
        if rng.random_bool(0.4) {
            kb.add_axiom(Axiom::ObjectPropertyDomain { property: p.clone(), class: class(rng) });
        }
        if rng.random_bool(0.4) {
            kb.add_axiom(Axiom::ObjectPropertyRange { property: p.clone(), class: class(rng) });
        }
    }
    if v.object_properties.len() >= 2 && rng.random_bool(0.5) {
        let mut ps = v.object_properties.choose_multiple(rng, 2);
        let (p, q) = (ps.next().unwrap().clone(), ps.next().unwrap().clone());
        kb.add_axiom(Axiom::InverseProperties { p, q });
    }
    for (p, dt) in &v.data_properties {
        kb.add_axiom(Axiom::DataPropertyRange { property: p.clone(), datatype: *dt });
        if rng.random_bool(0.4) {
            kb.add_axiom(Axiom::DataPropertyDomain { property: p.clone(), class: class(rng) });
        }
    }

    for _ in 0..rng.random_range(0..=v.individuals.len() * 2) {
        kb.add_assertion(Assertion::class(ind(rng), class(rng)));
    }
    if !v.object_properties.is_empty() {
        for _ in 0..rng.random_range(0..=v.individuals.len() * 2) {
            let p = v.object_properties.choose(rng).unwrap().clone();
            kb.add_assertion(Assertion::object(ind(rng), p, ind(rng)));
        }
    }
    if !v.data_properties.is_empty() {
        for _ in 0..rng.random_range(0..=v.individuals.len()) {
            let (p, dt) = v.data_properties.choose(rng).unwrap().clone();
            kb.add_assertion(Assertion::data(ind(rng), p, literal(rng, dt)));
        }
    }
    (kb, v)
}

/// [`random_kb`] plus label and comment annotations, for serializer tests.
pub fn random_annotated_kb(rng: &mut StdRng, limits: Limits) -> KnowledgeBase {
    let (mut kb, v) = random_kb(rng, limits);
    for _ in 0..rng.random_range(0..4) {
        let s = v.classes.iter().chain(&v.individuals).collect::<Vec<_>>().choose(rng).map(|s| (*s).clone()).unwrap();
        let key = if rng.random() { "label" } else { "comment" };
        let Literal::String(text) = literal(rng, Datatype::String) else { unreachable!() };
        kb.annotate(s, format!("http://www.w3.org/2000/01/rdf-schema#{key}"), text);
    }
    kb
}

/// Random DAG edges `(i, j)` with `i < j` over `n` nodes.
pub fn random_dag(rng: &mut StdRng, n: usize) -> Vec<(usize, usize)> {
    let density = rng.random_range(0.0..0.3);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                edges.push((i, j));
            }
        }
    }
    edges
}
