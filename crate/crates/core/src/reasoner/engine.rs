use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use super::state::State;
use super::{Derivation, Fact, Rule, Schedule};
use crate::model::{Assertion, Axiom, ClassExpression, EntityKind, Iri, KnowledgeBase};

struct Agenda {
    queue: VecDeque<Fact>,
    rng: Option<StdRng>,
}

impl Agenda {
    fn push(&mut self, f: Fact) {
        self.queue.push_back(f);
    }

    fn pop(&mut self) -> Option<Fact> {
        match &mut self.rng {
            None => self.queue.pop_front(),
            Some(rng) if !self.queue.is_empty() => {
                let i = rng.random_range(0..self.queue.len());
                self.queue.swap_remove_back(i)
            }
            Some(_) => None,
        }
    }
}

/// Static TBox lookups used by the per-fact rules.
#[derive(Default)]
struct Tbox {
    obj_domains: BTreeMap<Iri, Vec<(Iri, Axiom)>>,
    obj_ranges: BTreeMap<Iri, Vec<(Iri, Axiom)>>,
    data_domains: BTreeMap<Iri, Vec<(Iri, Axiom)>>,
    inverses: BTreeMap<Iri, Vec<(Iri, Axiom)>>,
    definitions: Vec<(Iri, ClassExpression, Axiom)>,
}

pub(super) struct Engine {
    pub state: State,
    pub provenance: HashMap<Fact, Derivation>,
    tbox: Tbox,
    agenda: Agenda,
}

impl Engine {
    pub fn run(kb: &KnowledgeBase, schedule: Schedule) -> Engine {
        let rng = match schedule {
            Schedule::Fifo => None,
            Schedule::Random(seed) => Some(StdRng::seed_from_u64(seed)),
        };
        let mut e = Engine {
            state: State::default(),
            provenance: HashMap::new(),
            tbox: Tbox::default(),
            agenda: Agenda { queue: VecDeque::new(), rng },
        };
        e.state.individuals = kb.entities(EntityKind::NamedIndividual).cloned().collect();
        e.seed(kb);
        loop {
            e.saturate();
            if !e.defined_classes() {
                break;
            }
        }
        e
    }

    fn add(&mut self, fact: Fact, rule: Rule, premises: Vec<Fact>, axiom: Option<&Axiom>) {
        if self.state.insert(&fact) {
            self.provenance.insert(fact.clone(), Derivation { rule, premises, axiom: axiom.cloned() });
            self.agenda.push(fact);
        }
    }

    fn seed(&mut self, kb: &KnowledgeBase) {
        let mut seeds: Vec<(Fact, Rule, Option<Axiom>)> = Vec::new();
        for c in kb.entities(EntityKind::Class) {
            seeds.push((Fact::SubClass(c.clone(), c.clone()), Rule::Reflexivity, None));
        }
        for ax in kb.axioms() {
            match ax {
                Axiom::SubClassOf { sub, sup } => {
                    seeds.push((Fact::SubClass(sub.clone(), sup.clone()), Rule::Asserted, Some(ax.clone())))
                }
                Axiom::EquivalentClasses { class, expr } => {
                    if let ClassExpression::Named(b) = expr {
                        seeds.push((Fact::SubClass(class.clone(), b.clone()), Rule::R6Equivalence, Some(ax.clone())));
                        seeds.push((Fact::SubClass(b.clone(), class.clone()), Rule::R6Equivalence, Some(ax.clone())));
                    } else {
                        for a in expr.named_conjuncts() {
                            seeds.push((Fact::SubClass(class.clone(), a.clone()), Rule::R6Equivalence, Some(ax.clone())));
                        }
                        if expr.is_definitional() {
                            self.tbox.definitions.push((class.clone(), expr.clone(), ax.clone()));
                        }
                    }
                }
                Axiom::ObjectPropertyDomain { property, class } => {
                    self.tbox.obj_domains.entry(property.clone()).or_default().push((class.clone(), ax.clone()))
                }
                Axiom::ObjectPropertyRange { property, class } => {
                    self.tbox.obj_ranges.entry(property.clone()).or_default().push((class.clone(), ax.clone()))
                }
                Axiom::DataPropertyDomain { property, class } => {
                    self.tbox.data_domains.entry(property.clone()).or_default().push((class.clone(), ax.clone()))
                }
                Axiom::InverseProperties { p, q } => {
                    self.tbox.inverses.entry(p.clone()).or_default().push((q.clone(), ax.clone()));
                    self.tbox.inverses.entry(q.clone()).or_default().push((p.clone(), ax.clone()));
                }
                Axiom::DisjointClasses { .. } | Axiom::DataPropertyRange { .. } => {}
            }
        }
        for a in kb.assertions() {
            let fact = match a {
                Assertion::ClassAssertion { individual, class } => Fact::Type(individual.clone(), class.clone()),
                Assertion::ObjectAssertion { subject, property, object } => {
                    Fact::Obj(subject.clone(), property.clone(), object.clone())
                }
                Assertion::DataAssertion { subject, property, value } => {
                    Fact::Data(subject.clone(), property.clone(), value.clone())
                }
            };
            seeds.push((fact, Rule::Asserted, None));
        }
        // Asserted facts must keep their `Asserted` provenance even when a rule
        // would also derive them, so they are inserted before any rule fires.
        seeds.sort_by_key(|(_, r, _)| *r != Rule::Asserted);
        if let Some(rng) = &mut self.agenda.rng {
            let split = seeds.iter().position(|(_, r, _)| *r != Rule::Asserted).unwrap_or(seeds.len());
            seeds[..split].shuffle(rng);
            seeds[split..].shuffle(rng);
            self.tbox.definitions.shuffle(rng);
        }
        for (fact, rule, axiom) in seeds {
            self.add(fact, rule, Vec::new(), axiom.as_ref());
        }
    }

    fn saturate(&mut self) {
        while let Some(fact) = self.agenda.pop() {
            self.fire(&fact);
        }
    }

    fn fire(&mut self, fact: &Fact) {
        match fact {
            Fact::SubClass(a, b) => {
                for x in self.state.subs_of(a).clone() {
                    let f = Fact::SubClass(x.clone(), b.clone());
                    self.add(f, Rule::R1Transitivity, vec![Fact::SubClass(x, a.clone()), fact.clone()], None);
                }
                for c in self.state.supers_of(b).clone() {
                    let f = Fact::SubClass(a.clone(), c.clone());
                    self.add(f, Rule::R1Transitivity, vec![fact.clone(), Fact::SubClass(b.clone(), c)], None);
                }
                for i in self.state.members_of(a).clone() {
                    let f = Fact::Type(i.clone(), b.clone());
                    self.add(f, Rule::R2TypeInheritance, vec![Fact::Type(i, a.clone()), fact.clone()], None);
                }
            }
            Fact::Type(i, a) => {
                for b in self.state.supers_of(a).clone() {
                    let f = Fact::Type(i.clone(), b.clone());
                    self.add(f, Rule::R2TypeInheritance, vec![fact.clone(), Fact::SubClass(a.clone(), b)], None);
                }
            }
            Fact::Obj(x, p, y) => {
                for (c, ax) in self.tbox.obj_domains.get(p).cloned().unwrap_or_default() {
                    self.add(Fact::Type(x.clone(), c), Rule::R3Domain, vec![fact.clone()], Some(&ax));
                }
                for (c, ax) in self.tbox.obj_ranges.get(p).cloned().unwrap_or_default() {
                    self.add(Fact::Type(y.clone(), c), Rule::R4Range, vec![fact.clone()], Some(&ax));
                }
                for (q, ax) in self.tbox.inverses.get(p).cloned().unwrap_or_default() {
                    self.add(Fact::Obj(y.clone(), q, x.clone()), Rule::R5Inverse, vec![fact.clone()], Some(&ax));
                }
            }
            Fact::Data(x, p, _) => {
                for (c, ax) in self.tbox.data_domains.get(p).cloned().unwrap_or_default() {
                    self.add(Fact::Type(x.clone(), c), Rule::R3Domain, vec![fact.clone()], Some(&ax));
                }
            }
        }
    }

    /// One sweep of defined-class membership over the current state.
    /// Returns whether anything new was derived.
    fn defined_classes(&mut self) -> bool {
        let mut derived = Vec::new();
        for (class, expr, ax) in &self.tbox.definitions {
            let have: &BTreeSet<Iri> = self.state.members_of(class);
            for i in self.state.eval(expr) {
                if have.contains(&i) {
                    continue;
                }
                let premises = self.state.witness(&i, expr).expect("evaluated members have witnesses");
                derived.push((Fact::Type(i, class.clone()), premises, ax.clone()));
            }
        }
        let mut any = false;
        for (fact, premises, ax) in derived {
            if !self.state.contains(&fact) {
                any = true;
                self.add(fact, Rule::R7Definition, premises, Some(&ax));
            }
        }
        any
    }
}
