use std::collections::{BTreeMap, BTreeSet};

use super::Fact;
use crate::model::{ClassExpression, Iri, Literal};

type Adjacency<V> = BTreeMap<Iri, BTreeMap<Iri, BTreeSet<V>>>;

/// Indexed fact store shared by the materializer and query evaluation.
#[derive(Clone, Debug, Default)]
pub(crate) struct State {
    pub supers: BTreeMap<Iri, BTreeSet<Iri>>,
    pub subs: BTreeMap<Iri, BTreeSet<Iri>>,
    pub types: BTreeMap<Iri, BTreeSet<Iri>>,
    pub members: BTreeMap<Iri, BTreeSet<Iri>>,
    /// property → subject → objects
    pub obj: Adjacency<Iri>,
    /// property → object → subjects
    pub obj_inv: Adjacency<Iri>,
    /// property → subject → values
    pub data: Adjacency<Literal>,
    /// Universe for closed-world complement.
    pub individuals: BTreeSet<Iri>,
}

fn insert2<V: Ord>(m: &mut Adjacency<V>, a: &Iri, b: &Iri, v: V) -> bool {
    m.entry(a.clone()).or_default().entry(b.clone()).or_default().insert(v)
}

static EMPTY_IRIS: BTreeSet<Iri> = BTreeSet::new();
static EMPTY_LITS: BTreeSet<Literal> = BTreeSet::new();

impl State {
    pub fn contains(&self, fact: &Fact) -> bool {
        match fact {
            Fact::SubClass(a, b) => self.supers.get(a).is_some_and(|s| s.contains(b)),
            Fact::Type(i, c) => self.types.get(i).is_some_and(|s| s.contains(c)),
            Fact::Obj(s, p, o) => self.objects(p, s).contains(o),
            Fact::Data(s, p, v) => self.values(p, s).contains(v),
        }
    }

    /// Adds a fact; returns false if it was already present.
    pub fn insert(&mut self, fact: &Fact) -> bool {
        match fact {
            Fact::SubClass(a, b) => {
                if !self.supers.entry(a.clone()).or_default().insert(b.clone()) {
                    return false;
                }
                self.subs.entry(b.clone()).or_default().insert(a.clone());
            }
            Fact::Type(i, c) => {
                if !self.types.entry(i.clone()).or_default().insert(c.clone()) {
                    return false;
                }
                self.members.entry(c.clone()).or_default().insert(i.clone());
            }
            Fact::Obj(s, p, o) => {
                if !insert2(&mut self.obj, p, s, o.clone()) {
                    return false;
                }
                insert2(&mut self.obj_inv, p, o, s.clone());
            }
            Fact::Data(s, p, v) => return insert2(&mut self.data, p, s, v.clone()),
        }
        true
    }

    pub fn supers_of(&self, c: &Iri) -> &BTreeSet<Iri> {
        self.supers.get(c).unwrap_or(&EMPTY_IRIS)
    }

    pub fn subs_of(&self, c: &Iri) -> &BTreeSet<Iri> {
        self.subs.get(c).unwrap_or(&EMPTY_IRIS)
    }

    pub fn members_of(&self, c: &Iri) -> &BTreeSet<Iri> {
        self.members.get(c).unwrap_or(&EMPTY_IRIS)
    }

    pub fn types_of(&self, i: &Iri) -> &BTreeSet<Iri> {
        self.types.get(i).unwrap_or(&EMPTY_IRIS)
    }

    pub fn objects(&self, p: &Iri, s: &Iri) -> &BTreeSet<Iri> {
        self.obj.get(p).and_then(|m| m.get(s)).unwrap_or(&EMPTY_IRIS)
    }

    pub fn subjects(&self, p: &Iri, o: &Iri) -> &BTreeSet<Iri> {
        self.obj_inv.get(p).and_then(|m| m.get(o)).unwrap_or(&EMPTY_IRIS)
    }

    pub fn values(&self, p: &Iri, s: &Iri) -> &BTreeSet<Literal> {
        self.data.get(p).and_then(|m| m.get(s)).unwrap_or(&EMPTY_LITS)
    }

    fn data_matching(&self, p: &Iri, pred: impl Fn(&Literal) -> bool) -> BTreeSet<Iri> {
        self.data
            .get(p)
            .into_iter()
            .flatten()
            .filter(|(_, vs)| vs.iter().any(&pred))
            .map(|(s, _)| s.clone())
            .collect()
    }

    /// Closed-world evaluation of a class expression against the current facts.
    pub fn eval(&self, expr: &ClassExpression) -> BTreeSet<Iri> {
        match expr {
            ClassExpression::Named(c) => self.members_of(c).clone(),
            ClassExpression::And(xs) => {
                let mut sets: Vec<BTreeSet<Iri>> = xs.iter().map(|x| self.eval(x)).collect();
                sets.sort_by_key(BTreeSet::len);
                let mut it = sets.into_iter();
                let first = it.next().unwrap_or_default();
                it.fold(first, |acc, s| acc.intersection(&s).cloned().collect())
            }
            ClassExpression::Or(xs) => xs.iter().flat_map(|x| self.eval(x)).collect(),
            ClassExpression::Not(x) => {
                let inner = self.eval(x);
                self.individuals.difference(&inner).cloned().collect()
            }
            ClassExpression::Some { property, filler } => self
                .eval(filler)
                .iter()
                .flat_map(|j| self.subjects(property, j).iter().cloned())
                .collect(),
            ClassExpression::ValueObj { property, individual } => self.subjects(property, individual).clone(),
            ClassExpression::ValueData { property, literal } => self.data_matching(property, |v| v == literal),
            ClassExpression::DataCompare { property, op, literal } => {
                self.data_matching(property, |v| v.compare(literal).is_some_and(|o| op.holds(o)))
            }
        }
    }

    /// Facts that make `i` satisfy a definitional expression, or `None` if it
    /// does not. Used as the premises of a defined-class inference.
    pub fn witness(&self, i: &Iri, expr: &ClassExpression) -> Option<Vec<Fact>> {
        match expr {
            ClassExpression::Named(c) => {
                self.types_of(i).contains(c).then(|| vec![Fact::Type(i.clone(), c.clone())])
            }
            ClassExpression::And(xs) => {
                let mut out = Vec::new();
                for x in xs {
                    out.extend(self.witness(i, x)?);
                }
                Some(out)
            }
            ClassExpression::Some { property, filler } => self.objects(property, i).iter().find_map(|j| {
                let mut w = self.witness(j, filler)?;
                w.insert(0, Fact::Obj(i.clone(), property.clone(), j.clone()));
                Some(w)
            }),
            ClassExpression::ValueObj { property, individual } => self
                .objects(property, i)
                .contains(individual)
                .then(|| vec![Fact::Obj(i.clone(), property.clone(), individual.clone())]),
            ClassExpression::ValueData { property, literal } => self
                .values(property, i)
                .contains(literal)
                .then(|| vec![Fact::Data(i.clone(), property.clone(), literal.clone())]),
            ClassExpression::Or(_) | ClassExpression::Not(_) | ClassExpression::DataCompare { .. } => None,
        }
    }
}
