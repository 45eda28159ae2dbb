use std::fmt;
use std::sync::Arc;

use crate::addonly::Ops;
use crate::csf::plan::{AlgorithmPlan, Predicate, Subgoal};
use crate::error::{Error, Result};
use crate::state::{Params, State, Value};

type TransformFn = dyn Fn(&Params, &mut State, &mut Ops) -> Result<()> + Send + Sync;
type GuardFn = dyn Fn(&Params, &State, &mut Ops) -> Result<bool> + Send + Sync;

/// A code block step: mutates the state, counting arithmetic on `ops`.
#[derive(Clone)]
pub struct Transform(Arc<TransformFn>);

impl Transform {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(&Params, &mut State, &mut Ops) -> Result<()> + Send + Sync + 'static,
    {
        Self(Arc::new(f))
    }

    pub fn apply(&self, params: &Params, state: &mut State, ops: &mut Ops) -> Result<()> {
        (self.0)(params, state, ops)
    }
}

/// A loop guard. Comparisons it makes are counted.
#[derive(Clone)]
pub struct Guard(Arc<GuardFn>);

impl Guard {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(&Params, &State, &mut Ops) -> Result<bool> + Send + Sync + 'static,
    {
        Self(Arc::new(f))
    }

    pub fn holds(&self, params: &Params, state: &State, ops: &mut Ops) -> Result<bool> {
        (self.0)(params, state, ops)
    }
}

/// Iteration ceiling for a loop block, derived from the run's parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IterationCap {
    /// `2·P + 64` for scalar parameter `P`.
    Linear(&'static str),
    /// `4·⌈log₂(P + 2)⌉ + 8` for scalar parameter `P`.
    Logarithmic(&'static str),
    /// `2·len(P) + 64` for array parameter `P`.
    Length(&'static str),
    Fixed(u64),
}

impl IterationCap {
    pub fn limit(&self, params: &Params) -> Result<u64> {
        Ok(match self {
            IterationCap::Linear(name) => {
                let n = params.get(name)?.max(0).unsigned_abs();
                n.saturating_mul(2).saturating_add(64)
            }
            IterationCap::Logarithmic(name) => {
                let n = params.get(name)?.max(0).unsigned_abs();
                let m = n.saturating_add(2);
                // ceil(log2(m)) for m >= 2
                let ceil_log = u64::from(u64::BITS - (m - 1).leading_zeros());
                4 * ceil_log + 8
            }
            IterationCap::Length(name) => {
                let len = params.array(name)?.len() as u64;
                len.saturating_mul(2).saturating_add(64)
            }
            IterationCap::Fixed(n) => *n,
        })
    }
}

#[derive(Clone)]
pub enum BlockKind {
    Straight(Transform),
    /// `setup; while guard { body }`. Each `body` run is one perturb/restore
    /// iteration.
    Loop {
        setup: Option<Transform>,
        guard: Guard,
        body: Transform,
        cap: IterationCap,
    },
}

/// A code block fulfilling one subgoal, or several jointly.
#[derive(Clone)]
pub struct Block {
    pub label: String,
    /// Zero-based subgoal indices this block fulfills, contiguous and ascending.
    pub fulfills: Vec<usize>,
    pub kind: BlockKind,
}

impl Block {
    pub fn straight<F>(label: impl Into<String>, fulfills: &[usize], f: F) -> Self
    where
        F: Fn(&Params, &mut State, &mut Ops) -> Result<()> + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            fulfills: fulfills.to_vec(),
            kind: BlockKind::Straight(Transform::new(f)),
        }
    }

    pub fn looping<G, B>(
        label: impl Into<String>,
        fulfills: &[usize],
        cap: IterationCap,
        guard: G,
        body: B,
    ) -> Self
    where
        G: Fn(&Params, &State, &mut Ops) -> Result<bool> + Send + Sync + 'static,
        B: Fn(&Params, &mut State, &mut Ops) -> Result<()> + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            fulfills: fulfills.to_vec(),
            kind: BlockKind::Loop {
                setup: None,
                guard: Guard::new(guard),
                body: Transform::new(body),
                cap,
            },
        }
    }

    /// Adds the code that runs once before a loop's first guard test.
    pub fn with_setup<F>(mut self, f: F) -> Self
    where
        F: Fn(&Params, &mut State, &mut Ops) -> Result<()> + Send + Sync + 'static,
    {
        if let BlockKind::Loop { setup, .. } = &mut self.kind {
            *setup = Some(Transform::new(f));
        }
        self
    }

    pub fn is_loop(&self) -> bool {
        matches!(self.kind, BlockKind::Loop { .. })
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Block")
            .field("label", &self.label)
            .field("fulfills", &self.fulfills)
            .field("loop", &self.is_loop())
            .finish()
    }
}

/// An input region the plan does not cover, handled by a direct assignment
/// whose result is still held to `post ∧ inv`.
#[derive(Clone)]
pub struct ShortCircuit {
    pub applies: Predicate,
    pub establish: Transform,
}

impl fmt::Debug for ShortCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ShortCircuit")
            .field(&self.applies.label())
            .finish()
    }
}

/// An algorithm plan together with its code blocks: a CSF implementation.
#[derive(Clone, Debug)]
pub struct ProcedureSpec {
    name: String,
    plan: AlgorithmPlan,
    blocks: Vec<Block>,
    result: String,
    short_circuit: Option<ShortCircuit>,
}

impl ProcedureSpec {
    pub fn builder(name: impl Into<String>) -> ProcedureBuilder {
        ProcedureBuilder {
            name: name.into(),
            plan: AlgorithmPlan::trivial(),
            blocks: Vec::new(),
            result: None,
            short_circuit: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn plan(&self) -> &AlgorithmPlan {
        &self.plan
    }

    pub fn subgoals(&self) -> &[Subgoal] {
        &self.plan.subgoals
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Name of the variable holding the procedure's return value.
    pub fn result_var(&self) -> &str {
        &self.result
    }

    pub fn short_circuit(&self) -> Option<&ShortCircuit> {
        self.short_circuit.as_ref()
    }

    /// The partition of subgoal indices into jointly fulfilled groups, one
    /// group per block.
    pub fn joint_fulfillment(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.fulfills.clone()).collect()
    }

    /// Reads the result variable from a final state.
    pub fn result_of(&self, state: &State) -> Option<Value> {
        state.value(&self.result).cloned()
    }

    /// A copy with block `index` swapped out, e.g. to inject a mutation. The
    /// replacement must fulfill the same subgoals.
    pub fn with_block(&self, index: usize, block: Block) -> Result<Self> {
        let mut spec = self.clone();
        let slot = spec.blocks.get_mut(index).ok_or_else(|| Error::Malformed {
            procedure: self.name.clone(),
            reason: format!("no block {index}"),
        })?;
        if slot.fulfills != block.fulfills {
            return Err(Error::Malformed {
                procedure: self.name.clone(),
                reason: format!(
                    "replacement block fulfills {:?}, expected {:?}",
                    block.fulfills, slot.fulfills
                ),
            });
        }
        *slot = block;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let bad = |reason: String| Error::Malformed {
            procedure: self.name.clone(),
            reason,
        };
        let mut next = 0usize;
        for (bi, block) in self.blocks.iter().enumerate() {
            if block.fulfills.is_empty() {
                return Err(bad(format!("block {bi} fulfills no subgoal")));
            }
            for &sg in &block.fulfills {
                if sg != next {
                    return Err(bad(format!(
                        "block {bi} fulfills subgoal {sg}, expected {next}"
                    )));
                }
                next += 1;
            }
        }
        if next != self.plan.subgoals.len() {
            return Err(bad(format!(
                "blocks fulfill {next} of {} subgoals",
                self.plan.subgoals.len()
            )));
        }
        Ok(())
    }
}

pub struct ProcedureBuilder {
    name: String,
    plan: AlgorithmPlan,
    blocks: Vec<Block>,
    result: Option<String>,
    short_circuit: Option<ShortCircuit>,
}

impl ProcedureBuilder {
    pub fn pre<F>(mut self, f: F) -> Self
    where
        F: Fn(&Params, &State) -> Result<bool> + Send + Sync + 'static,
    {
        self.plan.pre = Predicate::new("pre", f);
        self
    }

    pub fn inv<F>(mut self, f: F) -> Self
    where
        F: Fn(&Params, &State) -> Result<bool> + Send + Sync + 'static,
    {
        self.plan.inv = Predicate::new("inv", f);
        self
    }

    pub fn post<F>(mut self, f: F) -> Self
    where
        F: Fn(&Params, &State) -> Result<bool> + Send + Sync + 'static,
    {
        self.plan.post = Predicate::new("post", f);
        self
    }

    pub fn plan(mut self, plan: AlgorithmPlan) -> Self {
        self.plan = plan;
        self
    }

    pub fn subgoal(mut self, sg: Subgoal) -> Self {
        self.plan.subgoals.push(sg);
        self
    }

    pub fn block(mut self, block: Block) -> Self {
        self.blocks.push(block);
        self
    }

    pub fn result(mut self, var: &str) -> Self {
        self.result = Some(var.to_owned());
        self
    }

    pub fn short_circuit<A, E>(mut self, label: &str, applies: A, establish: E) -> Self
    where
        A: Fn(&Params, &State) -> Result<bool> + Send + Sync + 'static,
        E: Fn(&Params, &mut State, &mut Ops) -> Result<()> + Send + Sync + 'static,
    {
        self.short_circuit = Some(ShortCircuit {
            applies: Predicate::new(label, applies),
            establish: Transform::new(establish),
        });
        self
    }

    pub fn build(self) -> Result<ProcedureSpec> {
        let result = self.result.ok_or_else(|| Error::Malformed {
            procedure: self.name.clone(),
            reason: "no result variable".into(),
        })?;
        let spec = ProcedureSpec {
            name: self.name,
            plan: self.plan,
            blocks: self.blocks,
            result,
            short_circuit: self.short_circuit,
        };
        spec.validate()?;
        Ok(spec)
    }
}
