use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Rational;

pub type EventId = String;
pub type OutcomeValue = String;

/// Outcome names of a Boolean event.
pub const TRUE: &str = "t";
pub const FALSE: &str = "f";

/// A global random event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Event {
    /// Boolean event, true with the given probability in `[0, 1]`.
    Bool(Rational),
    /// Multivalued event with its outcome distribution.
    Enum(Vec<(OutcomeValue, Rational)>),
}

impl Event {
    pub fn is_bool(&self) -> bool {
        matches!(self, Event::Bool(_))
    }

    /// Outcomes with nonzero probability.
    pub fn outcomes(&self) -> Vec<(OutcomeValue, Rational)> {
        match self {
            Event::Bool(p) => {
                let q = Rational::one() - p;
                [(TRUE, p.clone()), (FALSE, q)]
                    .into_iter()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(v, p)| (v.to_owned(), p))
                    .collect()
            }
            Event::Enum(outcomes) => outcomes.clone(),
        }
    }

    /// Whether `value` is a declared outcome (Boolean events accept `t` and `f`).
    pub fn has_outcome(&self, value: &str) -> bool {
        match self {
            Event::Bool(_) => value == TRUE || value == FALSE,
            Event::Enum(outcomes) => outcomes.iter().any(|(v, _)| v == value),
        }
    }

    pub fn probability_of(&self, value: &str) -> Rational {
        match self {
            Event::Bool(p) if value == TRUE => p.clone(),
            Event::Bool(p) if value == FALSE => Rational::one() - p,
            Event::Bool(_) => Rational::zero(),
            Event::Enum(outcomes) => outcomes
                .iter()
                .find(|(v, _)| v == value)
                .map(|(_, p)| p.clone())
                .unwrap_or_else(Rational::zero),
        }
    }
}

/// The event table of a document, keyed and iterated by event id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EventTable {
    events: BTreeMap<EventId, Event>,
}

impl EventTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: impl Into<EventId>, event: Event) -> Option<Event> {
        self.events.insert(id.into(), event)
    }

    pub fn with(mut self, id: impl Into<EventId>, event: Event) -> Self {
        self.insert(id, event);
        self
    }

    pub fn remove(&mut self, id: &str) -> Option<Event> {
        self.events.remove(id)
    }

    pub fn get(&self, id: &str) -> Option<&Event> {
        self.events.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.events.contains_key(id)
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EventId, &Event)> {
        self.events.iter()
    }
}

/// An event or its negation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub event: EventId,
    pub positive: bool,
}

impl Literal {
    pub fn pos(event: impl Into<EventId>) -> Self {
        Literal { event: event.into(), positive: true }
    }

    pub fn neg(event: impl Into<EventId>) -> Self {
        Literal { event: event.into(), positive: false }
    }

    pub fn negated(&self) -> Self {
        Literal { event: self.event.clone(), positive: !self.positive }
    }

    /// Truth value given the outcome of the literal's Boolean event.
    pub fn holds(&self, outcome: &str) -> bool {
        (outcome == TRUE) == self.positive
    }
}

/// Boolean formula over event literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Lit(Literal),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
}

impl Formula {
    pub fn eval(&self, outcome_of: &impl Fn(&str) -> Option<bool>) -> Option<bool> {
        Some(match self {
            Formula::Lit(l) => outcome_of(&l.event)? == l.positive,
            Formula::And(fs) => {
                let mut all = true;
                for f in fs {
                    all &= f.eval(outcome_of)?;
                }
                all
            }
            Formula::Or(fs) => {
                let mut any = false;
                for f in fs {
                    any |= f.eval(outcome_of)?;
                }
                any
            }
            Formula::Not(f) => !f.eval(outcome_of)?,
        })
    }

    pub fn literals(&self) -> Vec<&Literal> {
        let mut out = Vec::new();
        self.collect_literals(&mut out);
        out
    }

    fn collect_literals<'a>(&'a self, out: &mut Vec<&'a Literal>) {
        match self {
            Formula::Lit(l) => out.push(l),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_literals(out)),
            Formula::Not(f) => f.collect_literals(out),
        }
    }
}
