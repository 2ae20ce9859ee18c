//! Reference implementations written without reference to the library's own
//! algorithms: slow, obviously-correct versions used as test oracles.

use std::collections::{BTreeMap, BTreeSet};

use prefonto::model::{Assertion, Axiom, ClassExpression, CompareOp, EntityKind, Iri, KnowledgeBase, Literal};
use prefonto::reasoner::{Fact, MaterializedKB};
use prefonto::turtle::{Graph, Term};

fn conjuncts(e: &ClassExpression) -> Vec<Iri> {
    match e {
        ClassExpression::Named(c) => vec![c.clone()],
        ClassExpression::And(xs) => xs.iter().flat_map(conjuncts).collect(),
        _ => Vec::new(),
    }
}

fn definitional(e: &ClassExpression) -> bool {
    match e {
        ClassExpression::Named(_) | ClassExpression::ValueObj { .. } | ClassExpression::ValueData { .. } => true,
        ClassExpression::And(xs) => xs.iter().all(definitional),
        ClassExpression::Some { filler, .. } => definitional(filler),
        _ => false,
    }
}

fn holds(facts: &BTreeSet<Fact>, i: &Iri, e: &ClassExpression) -> bool {
    match e {
        ClassExpression::Named(c) => facts.contains(&Fact::Type(i.clone(), c.clone())),
        ClassExpression::And(xs) => xs.iter().all(|x| holds(facts, i, x)),
        ClassExpression::Some { property, filler } => facts.iter().any(|f| {
            matches!(f, Fact::Obj(s, p, o) if s == i && p == property && holds(facts, o, filler))
        }),
        ClassExpression::ValueObj { property, individual } => {
            facts.contains(&Fact::Obj(i.clone(), property.clone(), individual.clone()))
        }
        ClassExpression::ValueData { property, literal } => {
            facts.contains(&Fact::Data(i.clone(), property.clone(), literal.clone()))
        }
        _ => false,
    }
}

/// Applies every rule to every fact until nothing changes.
pub fn naive_closure(kb: &KnowledgeBase) -> BTreeSet<Fact> {
    let mut facts = BTreeSet::new();
    for c in kb.entities(EntityKind::Class) {
        facts.insert(Fact::SubClass(c.clone(), c.clone()));
    }
    let mut definitions = Vec::new();
    for ax in kb.axioms() {
        match ax {
            Axiom::SubClassOf { sub, sup } => {
                facts.insert(Fact::SubClass(sub.clone(), sup.clone()));
            }
            Axiom::EquivalentClasses { class, expr: ClassExpression::Named(b) } => {
                facts.insert(Fact::SubClass(class.clone(), b.clone()));
                facts.insert(Fact::SubClass(b.clone(), class.clone()));
            }
            Axiom::EquivalentClasses { class, expr } => {
                for a in conjuncts(expr) {
                    facts.insert(Fact::SubClass(class.clone(), a));
                }
                if definitional(expr) {
                    definitions.push((class.clone(), expr.clone()));
                }
            }
            _ => {}
        }
    }
    for a in kb.assertions() {
        facts.insert(match a {
            Assertion::ClassAssertion { individual, class } => Fact::Type(individual.clone(), class.clone()),
            Assertion::ObjectAssertion { subject, property, object } => {
                Fact::Obj(subject.clone(), property.clone(), object.clone())
            }
            Assertion::DataAssertion { subject, property, value } => {
                Fact::Data(subject.clone(), property.clone(), value.clone())
            }
        });
    }
    loop {
        let mut new = BTreeSet::new();
        for f in &facts {
            for g in &facts {
                match (f, g) {
                    (Fact::SubClass(a, b), Fact::SubClass(b2, c)) if b == b2 => {
                        new.insert(Fact::SubClass(a.clone(), c.clone()));
                    }
                    (Fact::Type(i, a), Fact::SubClass(a2, b)) if a == a2 => {
                        new.insert(Fact::Type(i.clone(), b.clone()));
                    }
                    _ => {}
                }
            }
            for ax in kb.axioms() {
                match (f, ax) {
                    (Fact::Obj(x, p, _), Axiom::ObjectPropertyDomain { property, class }) if p == property => {
                        new.insert(Fact::Type(x.clone(), class.clone()));
                    }
                    (Fact::Obj(_, p, y), Axiom::ObjectPropertyRange { property, class }) if p == property => {
                        new.insert(Fact::Type(y.clone(), class.clone()));
                    }
                    (Fact::Data(x, p, _), Axiom::DataPropertyDomain { property, class }) if p == property => {
                        new.insert(Fact::Type(x.clone(), class.clone()));
                    }
                    (Fact::Obj(x, p, y), Axiom::InverseProperties { p: a, q: b }) => {
                        if p == a {
                            new.insert(Fact::Obj(y.clone(), b.clone(), x.clone()));
                        }
                        if p == b {
                            new.insert(Fact::Obj(y.clone(), a.clone(), x.clone()));
                        }
                    }
                    _ => {}
                }
            }
        }
        let terms: BTreeSet<Iri> = facts
            .iter()
            .flat_map(|f| match f {
                Fact::Type(i, _) | Fact::Data(i, _, _) => vec![i.clone()],
                Fact::Obj(s, _, o) => vec![s.clone(), o.clone()],
                Fact::SubClass(..) => vec![],
            })
            .collect();
        for (class, expr) in &definitions {
            for i in &terms {
                if holds(&facts, i, expr) {
                    new.insert(Fact::Type(i.clone(), class.clone()));
                }
            }
        }
        let before = facts.len();
        facts.extend(new);
        if facts.len() == before {
            return facts;
        }
    }
}

/// Reflexive-transitive reachability over `n` nodes.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in edges {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

fn compare(v: &Literal, op: CompareOp, lit: &Literal) -> bool {
    use std::cmp::Ordering;
    let ord = match (v, lit) {
        (Literal::Integer(a), Literal::Integer(b)) => a.cmp(b),
        _ if std::mem::discriminant(v) != std::mem::discriminant(lit) => return false,
        _ if v == lit => Ordering::Equal,
        // Unordered types: only equality is meaningful.
        _ => return op == CompareOp::Ne,
    };
    match op {
        CompareOp::Eq => ord == Ordering::Equal,
        CompareOp::Ne => ord != Ordering::Equal,
        CompareOp::Lt => ord == Ordering::Less,
        CompareOp::Le => ord != Ordering::Greater,
        CompareOp::Gt => ord == Ordering::Greater,
        CompareOp::Ge => ord != Ordering::Less,
    }
}

/// Closed-world satisfaction of `e` by `i`, read off the materialized facts.
pub fn satisfies(mkb: &MaterializedKB, i: &Iri, e: &ClassExpression) -> bool {
    match e {
        ClassExpression::Named(c) => mkb.types_of(i).contains(c),
        ClassExpression::And(xs) => xs.iter().all(|x| satisfies(mkb, i, x)),
        ClassExpression::Or(xs) => xs.iter().any(|x| satisfies(mkb, i, x)),
        ClassExpression::Not(x) => mkb.individuals().contains(i) && !satisfies(mkb, i, x),
        ClassExpression::Some { property, filler } => {
            mkb.objects(property, i).iter().any(|j| satisfies(mkb, j, filler))
        }
        ClassExpression::ValueObj { property, individual } => mkb.objects(property, i).contains(individual),
        ClassExpression::ValueData { property, literal } => mkb.values(property, i).contains(literal),
        ClassExpression::DataCompare { property, op, literal } => {
            mkb.values(property, i).iter().any(|v| compare(v, *op, literal))
        }
    }
}

/// Individuals satisfying `e`, checked one at a time.
pub fn brute_force_eval(mkb: &MaterializedKB, e: &ClassExpression) -> BTreeSet<Iri> {
    mkb.individuals().iter().filter(|i| satisfies(mkb, i, e)).cloned().collect()
}

/// Isomorphism for graphs whose blank nodes form trees (each blank is the
/// object of at most one triple and blanks never reach themselves). That
/// covers everything the serializer writes: restrictions and RDF lists.
/// Each blank is replaced by a canonical rendering of its subtree.
/// `owl:disjointWith` is symmetric, so its two directions count as the same
/// triple.
pub fn isomorphic(a: &Graph, b: &Graph) -> Result<bool, String> {
    Ok(canonical(a)? == canonical(b)?)
}

const DISJOINT_WITH: &str = "http://www.w3.org/2002/07/owl#disjointWith";

fn canonical(g: &Graph) -> Result<Vec<String>, String> {
    let mut out_edges: BTreeMap<&str, Vec<(&Iri, &Term)>> = BTreeMap::new();
    let mut in_degree: BTreeMap<&str, usize> = BTreeMap::new();
    for t in &g.triples {
        if let Term::Blank(b) = &t.subject {
            out_edges.entry(b).or_default().push((&t.predicate, &t.object));
        }
        if let Term::Blank(b) = &t.object {
            *in_degree.entry(b).or_default() += 1;
        }
    }
    if let Some((b, _)) = in_degree.iter().find(|(_, &n)| n > 1) {
        return Err(format!("blank node _:{b} is shared"));
    }
    fn render(
        t: &Term,
        out: &BTreeMap<&str, Vec<(&Iri, &Term)>>,
        depth: usize,
    ) -> Result<String, String> {
        match t {
            Term::Blank(b) => {
                if depth > 10_000 {
                    return Err("blank node cycle".into());
                }
                let mut parts = out
                    .get(b.as_str())
                    .into_iter()
                    .flatten()
                    .map(|(p, o)| Ok(format!("{} {}", p.as_str(), render(o, out, depth + 1)?)))
                    .collect::<Result<Vec<_>, String>>()?;
                parts.sort();
                Ok(format!("[{}]", parts.join("; ")))
            }
            other => Ok(other.to_string()),
        }
    }
    let mut lines = Vec::new();
    for t in &g.triples {
        match &t.subject {
            Term::Blank(b) if in_degree.contains_key(b.as_str()) => continue,
            Term::Blank(_) => {
                // Root blank: rendered once, as a whole.
            }
            s => {
                let o = render(&t.object, &out_edges, 0)?;
                let (s, o) = match t.predicate.as_str() == DISJOINT_WITH && o.starts_with('<') {
                    true if o < s.to_string() => (o, s.to_string()),
                    _ => (s.to_string(), o),
                };
                lines.push(format!("{s} {} {o}", t.predicate.as_str()));
                continue;
            }
        }
    }
    let roots: BTreeSet<&str> =
        out_edges.keys().copied().filter(|b| !in_degree.contains_key(b)).collect();
    for b in roots {
        lines.push(render(&Term::Blank(b.to_owned()), &out_edges, 0)?);
    }
    lines.sort();
    lines.dedup();
    Ok(lines)
}

/// 1-based line and byte column of `offset`, counting from scratch.
pub fn line_col(src: &[u8], offset: usize) -> (usize, usize) {
    let (mut line, mut col) = (1, 1);
    for &b in &src[..offset] {
        if b == b'\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}
