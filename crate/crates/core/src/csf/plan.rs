use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::state::{Params, State};

type PredicateFn = dyn Fn(&Params, &State) -> Result<bool> + Send + Sync;

/// A labeled total predicate over `(params, state)`.
///
/// Evaluation may fail with [`Error::Unbound`] when a variable is missing, and
/// with [`Error::IndexOutOfRange`] or [`Error::Overflow`] on states the
/// predicate cannot judge. Bounded checking reads the latter two as `false`.
#[derive(Clone)]
pub struct Predicate {
    label: String,
    f: Arc<PredicateFn>,
}

impl Predicate {
    pub fn new<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Params, &State) -> Result<bool> + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    pub fn always(label: impl Into<String>) -> Self {
        Self::new(label, |_, _| Ok(true))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, params: &Params, state: &State) -> Result<bool> {
        (self.f)(params, state)
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Predicate").field(&self.label).finish()
    }
}

/// One cumulative subgoal of an algorithm plan.
#[derive(Clone, Debug)]
pub struct Subgoal {
    predicate: Predicate,
    /// Logically redundant but useful; written `[SG` in plan listings.
    pub pragmatic: bool,
    /// Fulfilled from constants only and never restored; written `SG>`.
    pub constant_only: bool,
}

impl Subgoal {
    pub fn new<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Params, &State) -> Result<bool> + Send + Sync + 'static,
    {
        Self {
            predicate: Predicate::new(label, f),
            pragmatic: false,
            constant_only: false,
        }
    }

    pub fn pragmatic(mut self) -> Self {
        self.pragmatic = true;
        self
    }

    pub fn constant_only(mut self) -> Self {
        self.constant_only = true;
        self
    }

    pub fn label(&self) -> &str {
        self.predicate.label()
    }

    pub fn predicate(&self) -> &Predicate {
        &self.predicate
    }

    pub fn eval(&self, params: &Params, state: &State) -> Result<bool> {
        self.predicate.eval(params, state)
    }

    /// Plan notation for the subgoal at zero-based `index`, e.g.
    /// `[SG2 (Quadratic)` or `SG1> (Log N)`.
    pub fn notation(&self, index: usize) -> String {
        format!(
            "{}SG{}{} ({})",
            if self.pragmatic { "[" } else { "" },
            index + 1,
            if self.constant_only { ">" } else { "" },
            self.label()
        )
    }
}

/// Evaluates `sg` on `(params, state)`. Never mutates the state.
pub fn evaluate_subgoal(sg: &Subgoal, params: &Params, state: &State) -> Result<bool> {
    sg.eval(params, state)
}

/// Preconditions, invariants, postconditions and the ordered subgoals meant
/// to satisfy `pre ∧ s1 ∧ … ∧ sn ∧ inv ⇒ post ∧ inv`.
#[derive(Clone, Debug)]
pub struct AlgorithmPlan {
    pub pre: Predicate,
    pub inv: Predicate,
    pub post: Predicate,
    pub subgoals: Vec<Subgoal>,
}

impl AlgorithmPlan {
    /// A plan with `pre`, `inv` and `post` all `true` and no subgoals.
    pub fn trivial() -> Self {
        Self {
            pre: Predicate::always("pre"),
            inv: Predicate::always("inv"),
            post: Predicate::always("post"),
            subgoals: Vec::new(),
        }
    }

    /// The plan with subgoal `index` removed.
    pub fn without(&self, index: usize) -> Result<Self> {
        if index >= self.subgoals.len() {
            return Err(Error::Domain(format!(
                "subgoal index {index} out of range (plan has {})",
                self.subgoals.len()
            )));
        }
        let mut plan = self.clone();
        plan.subgoals.remove(index);
        Ok(plan)
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.subgoals.iter().position(|sg| sg.label() == label)
    }
}
