//! Leaf bindings derived from action specs.
//!
//! An action leaf reports Success when its postcondition holds, Failure when
//! one of its preconditions is false, and Running otherwise.

use crate::bt::{Bindings, BtError, Status};
use crate::compiler::{find_action, ActionSpec};
use crate::gridworld::{self, WorldState};
use crate::names::same;

/// Evaluates named conditions on a state; `None` for unknown names.
pub trait ConditionSource<S: ?Sized> {
    fn eval(&self, name: &str, state: &S) -> Option<bool>;
}

/// The gridworld's condition predicates.
#[derive(Debug, Clone, Copy, Default)]
pub struct GridConditions;

impl ConditionSource<WorldState> for GridConditions {
    fn eval(&self, name: &str, state: &WorldState) -> Option<bool> {
        gridworld::condition(name, state).ok()
    }
}

/// An abstract state: a truth assignment to a fixed list of conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Valuation {
    pub bits: u64,
}

/// Condition names backing [`Valuation`] bit positions.
#[derive(Debug, Clone)]
pub struct ValuationSpace {
    pub names: Vec<String>,
}

impl ValuationSpace {
    pub fn new(names: Vec<String>) -> Self {
        assert!(names.len() <= 20, "valuation space too large to enumerate");
        ValuationSpace { names }
    }

    /// All 2^k valuations.
    pub fn all(&self) -> impl Iterator<Item = Valuation> {
        (0..1u64 << self.names.len()).map(|bits| Valuation { bits })
    }

    pub fn truth(&self, name: &str, v: &Valuation) -> Option<bool> {
        let i = self.names.iter().position(|n| same(n, name))?;
        Some(v.bits >> i & 1 == 1)
    }
}

impl ConditionSource<Valuation> for ValuationSpace {
    fn eval(&self, name: &str, state: &Valuation) -> Option<bool> {
        self.truth(name, state)
    }
}

pub struct SpecBindings<'a, C> {
    actions: &'a [ActionSpec],
    conditions: C,
}

impl<'a, C> SpecBindings<'a, C> {
    pub fn new(actions: &'a [ActionSpec], conditions: C) -> Self {
        SpecBindings { actions, conditions }
    }
}

impl<'a> SpecBindings<'a, GridConditions> {
    pub fn grid(actions: &'a [ActionSpec]) -> Self {
        SpecBindings::new(actions, GridConditions)
    }
}

impl<S: ?Sized, C: ConditionSource<S>> Bindings<S> for SpecBindings<'_, C> {
    fn condition(&self, name: &str, state: &S) -> Result<bool, BtError> {
        self.conditions.eval(name, state).ok_or_else(|| BtError::UnresolvedId(name.to_string()))
    }

    fn action_status(&self, name: &str, state: &S) -> Result<Status, BtError> {
        let spec = find_action(self.actions, name).ok_or_else(|| BtError::UnresolvedId(name.to_string()))?;
        if self.condition(&spec.postcondition, state)? {
            return Ok(Status::Success);
        }
        for p in &spec.preconditions {
            if !self.condition(p, state)? {
                return Ok(Status::Failure);
            }
        }
        Ok(Status::Running)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bt::ImplKind;

    fn space() -> (ValuationSpace, Vec<ActionSpec>) {
        let s = ValuationSpace::new(vec!["pre".into(), "post".into()]);
        let a = vec![ActionSpec {
            name: "A".into(),
            preconditions: vec!["pre".into()],
            postcondition: "post".into(),
            impl_kind: ImplKind::Scripted,
        }];
        (s, a)
    }

    #[test]
    fn action_status_convention() {
        let (s, a) = space();
        let b = SpecBindings::new(&a, s);
        assert_eq!(b.action_status("A", &Valuation { bits: 0b10 }).unwrap(), Status::Success);
        assert_eq!(b.action_status("A", &Valuation { bits: 0b11 }).unwrap(), Status::Success);
        assert_eq!(b.action_status("A", &Valuation { bits: 0b00 }).unwrap(), Status::Failure);
        assert_eq!(b.action_status("a", &Valuation { bits: 0b01 }).unwrap(), Status::Running);
    }

    #[test]
    fn unknown_names_are_unresolved() {
        let (s, a) = space();
        let b = SpecBindings::new(&a, s);
        assert!(matches!(b.action_status("B", &Valuation { bits: 0 }), Err(BtError::UnresolvedId(_))));
        assert!(matches!(b.condition("nope", &Valuation { bits: 0 }), Err(BtError::UnresolvedId(_))));
    }
}
