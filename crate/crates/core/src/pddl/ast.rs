use std::collections::{BTreeMap, BTreeSet};

use crate::cost::Cost;

pub const ROOT_TYPE: &str = "object";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Const(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomAst {
    pub predicate: String,
    pub args: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Literal {
    pub positive: bool,
    pub atom: AtomAst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateDecl {
    pub name: String,
    pub params: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSchema {
    pub name: String,
    /// `(variable, type)` pairs, variables including the leading `?`.
    pub params: Vec<(String, String)>,
    pub precondition: Vec<Literal>,
    pub add: Vec<AtomAst>,
    pub del: Vec<AtomAst>,
    /// Cost 1 when the schema has no `(increase (total-cost) k)` effect.
    pub cost: Cost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainAst {
    pub name: String,
    pub requirements: BTreeSet<String>,
    /// Every declared type mapped to its parent; `object` is the root.
    pub types: BTreeMap<String, String>,
    pub constants: Vec<(String, String)>,
    pub predicates: Vec<PredicateDecl>,
    pub actions: Vec<ActionSchema>,
}

impl DomainAst {
    pub fn predicate(&self, name: &str) -> Option<&PredicateDecl> {
        self.predicates.iter().find(|p| p.name == name)
    }

    pub fn is_subtype(&self, sub: &str, sup: &str) -> bool {
        let mut cur = sub;
        loop {
            if cur == sup {
                return true;
            }
            match self.types.get(cur) {
                Some(parent) if parent != cur => cur = parent,
                _ => return false,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtomAst {
    pub predicate: String,
    pub args: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemAst {
    pub name: String,
    pub domain: String,
    pub objects: Vec<(String, String)>,
    pub init: Vec<GroundAtomAst>,
    pub goal: Vec<GroundAtomAst>,
    pub minimize_total_cost: bool,
}
