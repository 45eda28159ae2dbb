//! Bounded exhaustive checking of plan sufficiency and subgoal pragmatism.
//!
//! The search binds variables in name order, each over ascending values, so
//! the first counterexample it returns is the first in lexicographic order.
//! A subtree is skipped as soon as some antecedent (`pre`, `inv` or a subgoal)
//! evaluates to false on the variables bound so far: a predicate that
//! returns without touching an unbound variable returns the same answer on
//! every completion.

use std::ops::RangeInclusive;

use crate::csf::plan::{AlgorithmPlan, Predicate};
use crate::error::{Error, Result};
use crate::state::{Params, State, Value};

/// Default ceiling on visited partial assignments.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Param,
    State,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarRange {
    Scalar(RangeInclusive<i64>),
    Array {
        len: RangeInclusive<usize>,
        entries: RangeInclusive<i64>,
    },
}

impl VarRange {
    /// All values in enumeration order: scalars ascending; arrays by length,
    /// then lexicographically.
    fn values(&self) -> Vec<Value> {
        match self {
            VarRange::Scalar(r) => r.clone().map(Value::Int).collect(),
            VarRange::Array { len, entries } => {
                let (lo, hi) = (*entries.start(), *entries.end());
                let mut out = Vec::new();
                for n in len.clone() {
                    if n == 0 {
                        out.push(Value::Array(Vec::new()));
                        continue;
                    }
                    if entries.is_empty() {
                        continue;
                    }
                    // odometer, last position fastest
                    let mut cur = vec![lo; n];
                    'next: loop {
                        out.push(Value::Array(cur.clone()));
                        for i in (0..n).rev() {
                            if cur[i] < hi {
                                cur[i] += 1;
                                cur[i + 1..].fill(lo);
                                continue 'next;
                            }
                        }
                        break;
                    }
                }
                out
            }
        }
    }

    fn size(&self) -> u128 {
        match self {
            VarRange::Scalar(r) => range_len(r),
            VarRange::Array { len, entries } => {
                let k = range_len(entries);
                len.clone()
                    .map(|n| k.saturating_pow(n.min(u32::MAX as usize) as u32))
                    .fold(0u128, u128::saturating_add)
            }
        }
    }
}

fn range_len(r: &RangeInclusive<i64>) -> u128 {
    if r.is_empty() {
        0
    } else {
        (i128::from(*r.end()) - i128::from(*r.start()) + 1) as u128
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarBound {
    pub name: String,
    pub role: Role,
    pub range: VarRange,
}

/// Finite ranges for every variable the plan's predicates read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainBounds {
    vars: Vec<VarBound>,
    budget: u64,
}

impl Default for DomainBounds {
    fn default() -> Self {
        Self {
            vars: Vec::new(),
            budget: DEFAULT_BUDGET,
        }
    }
}

impl DomainBounds {
    pub fn new() -> Self {
        Self::default()
    }

    fn with_var(mut self, name: &str, role: Role, range: VarRange) -> Self {
        self.vars.retain(|v| v.name != name);
        self.vars.push(VarBound {
            name: name.to_owned(),
            role,
            range,
        });
        self.vars.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    pub fn param(self, name: &str, range: RangeInclusive<i64>) -> Self {
        self.with_var(name, Role::Param, VarRange::Scalar(range))
    }

    pub fn param_array(
        self,
        name: &str,
        len: RangeInclusive<usize>,
        entries: RangeInclusive<i64>,
    ) -> Self {
        self.with_var(name, Role::Param, VarRange::Array { len, entries })
    }

    pub fn scalar(self, name: &str, range: RangeInclusive<i64>) -> Self {
        self.with_var(name, Role::State, VarRange::Scalar(range))
    }

    pub fn array(
        self,
        name: &str,
        len: RangeInclusive<usize>,
        entries: RangeInclusive<i64>,
    ) -> Self {
        self.with_var(name, Role::State, VarRange::Array { len, entries })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn vars(&self) -> &[VarBound] {
        &self.vars
    }

    /// Number of full assignments, before pruning.
    pub fn size(&self) -> u128 {
        self.vars
            .iter()
            .map(|v| v.range.size())
            .fold(1u128, u128::saturating_mul)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sufficiency {
    pub sufficient: bool,
    pub counterexample: Option<(Params, State)>,
    /// Partial assignments visited.
    pub visited: u64,
}

/// Checks `pre ∧ s1 ∧ … ∧ sn ∧ inv ⇒ post ∧ inv` at every point of `dom`.
///
/// Fails with [`Error::BudgetExceeded`] once the search visits more than
/// `dom.budget()` partial assignments, and with [`Error::Unbound`] when a
/// predicate reads a variable the domain does not bind.
pub fn check_plan_sufficiency(plan: &AlgorithmPlan, dom: &DomainBounds) -> Result<Sufficiency> {
    let antecedents: Vec<&Predicate> = [&plan.pre, &plan.inv]
        .into_iter()
        .chain(plan.subgoals.iter().map(|sg| sg.predicate()))
        .collect();
    if antecedents.len() > 64 {
        return Err(Error::Domain("more than 62 subgoals".into()));
    }
    let mut search = Search {
        antecedents,
        consequents: [&plan.post, &plan.inv],
        vars: dom.vars(),
        values: dom.vars().iter().map(|v| v.range.values()).collect(),
        params: Params::new(),
        state: State::new(),
        visited: 0,
        budget: dom.budget(),
    };
    let known = search.refine(0, false)?;
    let counterexample = match known {
        Some(mask) => search.descend(0, mask)?,
        None => None,
    };
    Ok(Sufficiency {
        sufficient: counterexample.is_none(),
        counterexample,
        visited: search.visited,
    })
}

/// True iff the plan without subgoal `index` is still sufficient on `dom`.
pub fn check_pragmatic(plan: &AlgorithmPlan, index: usize, dom: &DomainBounds) -> Result<bool> {
    Ok(check_plan_sufficiency(&plan.without(index)?, dom)?.sufficient)
}

struct Search<'a> {
    antecedents: Vec<&'a Predicate>,
    consequents: [&'a Predicate; 2],
    vars: &'a [VarBound],
    values: Vec<Vec<Value>>,
    params: Params,
    state: State,
    visited: u64,
    budget: u64,
}

/// How a predicate's outcome is read on a partial assignment.
enum Verdict {
    True,
    False,
    Undetermined,
}

fn judge(p: &Predicate, params: &Params, state: &State, complete: bool) -> Result<Verdict> {
    match p.eval(params, state) {
        Ok(true) => Ok(Verdict::True),
        Ok(false) => Ok(Verdict::False),
        // totality: unjudgeable states count as false
        Err(Error::IndexOutOfRange { .. } | Error::Overflow { .. }) => Ok(Verdict::False),
        Err(Error::Unbound(_)) if !complete => Ok(Verdict::Undetermined),
        Err(e) => Err(e),
    }
}

impl Search<'_> {
    /// Re-evaluates antecedents not yet known true. `None` when one is false.
    fn refine(&self, mut known: u64, complete: bool) -> Result<Option<u64>> {
        for (i, p) in self.antecedents.iter().enumerate() {
            if known & (1 << i) != 0 {
                continue;
            }
            match judge(p, &self.params, &self.state, complete)? {
                Verdict::True => known |= 1 << i,
                Verdict::False => return Ok(None),
                Verdict::Undetermined => {}
            }
        }
        Ok(Some(known))
    }

    fn descend(&mut self, depth: usize, known: u64) -> Result<Option<(Params, State)>> {
        if depth == self.vars.len() {
            for p in self.consequents {
                if let Verdict::False = judge(p, &self.params, &self.state, true)? {
                    return Ok(Some((self.params.clone(), self.state.clone())));
                }
            }
            return Ok(None);
        }
        let var = &self.vars[depth];
        let complete = depth + 1 == self.vars.len();
        for i in 0..self.values[depth].len() {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                });
            }
            let value = self.values[depth][i].clone();
            match var.role {
                Role::Param => self.params.slots_mut().insert(&var.name, value),
                Role::State => self.state.insert(&var.name, value),
            }
            if let Some(mask) = self.refine(known, complete)? {
                if let Some(cex) = self.descend(depth + 1, mask)? {
                    return Ok(Some(cex));
                }
            }
        }
        match var.role {
            Role::Param => self.params.slots_mut().remove(&var.name),
            Role::State => self.state.remove(&var.name),
        };
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csf::plan::Subgoal;

    #[test]
    fn array_values_in_order() {
        let r = VarRange::Array {
            len: 0..=2,
            entries: 0..=1,
        };
        let vals: Vec<String> = r.values().iter().map(|v| v.to_string()).collect();
        assert_eq!(
            vals,
            ["[]", "[0]", "[1]", "[0,0]", "[0,1]", "[1,0]", "[1,1]"]
        );
        assert_eq!(r.size(), 7);
        let full = VarRange::Array {
            len: 0..=3,
            entries: 0..=8,
        };
        assert_eq!(full.values().len(), 820);
        assert_eq!(full.size(), 820);
    }

    #[test]
    fn empty_plan_with_true_post_is_sufficient() {
        let dom = DomainBounds::new().scalar("x", 0..=3);
        let res = check_plan_sufficiency(&AlgorithmPlan::trivial(), &dom).unwrap();
        assert!(res.sufficient);
        let res = check_plan_sufficiency(&AlgorithmPlan::trivial(), &DomainBounds::new()).unwrap();
        assert!(res.sufficient);
    }

    #[test]
    fn first_counterexample_in_name_order() {
        let mut plan = AlgorithmPlan::trivial();
        plan.post = Predicate::new("post", |_, s| Ok(s.get("a")? + s.get("b")? < 3));
        plan.subgoals
            .push(Subgoal::new("a small", |_, s| Ok(s.get("a")? <= 1)));
        let dom = DomainBounds::new().scalar("b", 0..=4).scalar("a", 0..=4);
        let res = check_plan_sufficiency(&plan, &dom).unwrap();
        assert!(!res.sufficient);
        let (_, st) = res.counterexample.unwrap();
        assert_eq!((st.get("a"), st.get("b")), (Ok(0), Ok(3)));
    }

    #[test]
    fn budget_is_enforced() {
        let dom = DomainBounds::new()
            .scalar("x", 0..=99)
            .scalar("y", 0..=99)
            .with_budget(1000);
        let err = check_plan_sufficiency(&AlgorithmPlan::trivial(), &dom).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 1000 });
    }

    #[test]
    fn variable_outside_domain_is_an_error() {
        let mut plan = AlgorithmPlan::trivial();
        plan.post = Predicate::new("post", |_, s| Ok(s.get("zz")? == 0));
        let dom = DomainBounds::new().scalar("x", 0..=1);
        assert_eq!(
            check_plan_sufficiency(&plan, &dom).unwrap_err(),
            Error::Unbound("zz".into())
        );
    }

    #[test]
    fn out_of_range_index_reads_as_false() {
        let mut plan = AlgorithmPlan::trivial();
        plan.post = Predicate::new("post", |_, s| Ok(s.at("b", 0)? == 1));
        plan.subgoals
            .push(Subgoal::new("head", |_, s| Ok(s.at("b", 0)? == 1)));
        let dom = DomainBounds::new().array("b", 0..=2, 0..=1);
        assert!(check_plan_sufficiency(&plan, &dom).unwrap().sufficient);
        assert!(!check_pragmatic(&plan, 0, &dom).unwrap());
    }
}
