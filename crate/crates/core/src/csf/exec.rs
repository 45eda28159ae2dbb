//! Checkpointed execution of a [`ProcedureSpec`].
//!
//! After block `i` the executor asserts `inv ∧ s1 ∧ … ∧ si`; in strict mode
//! it also asserts `inv ∧ s1 ∧ … ∧ s(i-1)` after every loop iteration of
//! block `i`. The final state must satisfy `post ∧ inv`.

use serde::{Deserialize, Serialize};

use crate::addonly::{OpCounter, Ops};
use crate::csf::plan::Predicate;
use crate::csf::spec::{BlockKind, ProcedureSpec};
use crate::error::{Error, Result};
use crate::state::{Params, State, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    /// Block boundaries plus every loop-body iteration.
    #[default]
    Strict,
    /// Block boundaries only.
    Lenient,
    /// No checks; counting only.
    Off,
}

impl CheckMode {
    fn checks_blocks(self) -> bool {
        self != CheckMode::Off
    }

    fn checks_iterations(self) -> bool {
        self == CheckMode::Strict
    }
}

/// How much of the trace to keep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceLevel {
    None,
    Blocks,
    #[default]
    Iterations,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub mode: CheckMode,
    pub trace: TraceLevel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Checkpoint {
    BlockStart,
    IterationEnd,
    BlockEnd,
    RunEnd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub label: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    /// Position in execution order, starting at 0.
    pub seq: u64,
    pub kind: Checkpoint,
    pub block: Option<usize>,
    /// 1-based loop iteration.
    pub iteration: Option<u64>,
    pub checks: Vec<CheckResult>,
    pub counters: OpCounter,
}

/// The first failed checkpoint of a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub procedure: String,
    /// `None` for the final `post ∧ inv` check.
    pub block: Option<usize>,
    /// 1-based iteration for loop-iteration checkpoints.
    pub iteration: Option<u64>,
    /// `"pre"`, `"inv"`, `"post"` or a subgoal label.
    pub failed: String,
    pub state: State,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub procedure: String,
    pub mode: CheckMode,
    pub params: Params,
    /// State when execution stopped, at the end or at the first violation.
    pub final_state: State,
    /// The result variable, absent when a violation halted the run.
    pub result: Option<Value>,
    pub counters: OpCounter,
    pub trace: Vec<TraceEvent>,
    pub violation: Option<ViolationReport>,
    /// Loop iterations per block; zero for straight blocks.
    pub block_iterations: Vec<u64>,
    pub short_circuited: bool,
}

impl RunReport {
    pub fn is_clean(&self) -> bool {
        self.violation.is_none()
    }

    /// Iterations of the last loop block, the one that particularizes the
    /// plan. Zero when the procedure has no loop block or short-circuited.
    pub fn principal_iterations(&self, spec: &ProcedureSpec) -> u64 {
        spec.blocks()
            .iter()
            .zip(&self.block_iterations)
            .rev()
            .find(|(b, _)| b.is_loop())
            .map_or(0, |(_, &n)| n)
    }

    pub fn total_iterations(&self) -> u64 {
        self.block_iterations.iter().sum()
    }
}

/// Runs `spec` with full tracing.
pub fn run_procedure(spec: &ProcedureSpec, params: &Params, mode: CheckMode) -> Result<RunReport> {
    run_procedure_with(
        spec,
        params,
        RunOptions {
            mode,
            trace: TraceLevel::Iterations,
        },
    )
}

/// Runs `spec` on `params`.
///
/// A failed checkpoint halts the run and is reported in
/// [`RunReport::violation`]. Refused preconditions, arithmetic overflow,
/// evaluation errors and runaway loops are returned as `Err`.
pub fn run_procedure_with(
    spec: &ProcedureSpec,
    params: &Params,
    opts: RunOptions,
) -> Result<RunReport> {
    Runner::new(spec, params, opts).run()
}

struct Runner<'a> {
    spec: &'a ProcedureSpec,
    params: &'a Params,
    opts: RunOptions,
    state: State,
    ops: Ops,
    trace: Vec<TraceEvent>,
    seq: u64,
    block_iterations: Vec<u64>,
}

enum Flow {
    Continue,
    Halt(ViolationReport),
}

impl<'a> Runner<'a> {
    fn new(spec: &'a ProcedureSpec, params: &'a Params, opts: RunOptions) -> Self {
        Self {
            spec,
            params,
            opts,
            state: State::new(),
            ops: Ops::new(),
            trace: Vec::new(),
            seq: 0,
            block_iterations: vec![0; spec.blocks().len()],
        }
    }

    fn run(mut self) -> Result<RunReport> {
        let plan = self.spec.plan();
        if !plan.pre.eval(self.params, &self.state)? {
            return Err(Error::Precondition(self.spec.name().to_owned()));
        }

        let short_circuited = match self.spec.short_circuit() {
            Some(sc) if sc.applies.eval(self.params, &self.state)? => {
                sc.establish
                    .apply(self.params, &mut self.state, &mut self.ops)?;
                true
            }
            _ => false,
        };

        if !short_circuited {
            for index in 0..self.spec.blocks().len() {
                if let Flow::Halt(v) = self.run_block(index)? {
                    return Ok(self.finish(Some(v), false));
                }
            }
        }

        let violation = self.check_final()?;
        Ok(self.finish(violation, short_circuited))
    }

    fn run_block(&mut self, index: usize) -> Result<Flow> {
        let block = &self.spec.blocks()[index];
        self.record(Checkpoint::BlockStart, Some(index), None, Vec::new());

        match &block.kind {
            BlockKind::Straight(t) => t.apply(self.params, &mut self.state, &mut self.ops)?,
            BlockKind::Loop {
                setup,
                guard,
                body,
                cap,
            } => {
                let cap = cap.limit(self.params)?;
                if let Some(setup) = setup {
                    setup.apply(self.params, &mut self.state, &mut self.ops)?;
                }
                // subgoals fulfilled before this block: the loop invariant
                let prior = block.fulfills[0];
                let mut iteration = 0u64;
                while guard.holds(self.params, &self.state, &mut self.ops)? {
                    if iteration == cap {
                        return Err(Error::Nontermination {
                            procedure: self.spec.name().to_owned(),
                            block: index,
                            cap,
                        });
                    }
                    body.apply(self.params, &mut self.state, &mut self.ops)?;
                    iteration += 1;
                    self.block_iterations[index] = iteration;

                    let checks = if self.opts.mode.checks_iterations() {
                        self.evaluate(prior)?
                    } else {
                        Vec::new()
                    };
                    let failed = first_failure(&checks);
                    if self.opts.trace >= TraceLevel::Iterations || failed.is_some() {
                        self.record(
                            Checkpoint::IterationEnd,
                            Some(index),
                            Some(iteration),
                            checks,
                        );
                    }
                    if let Some(label) = failed {
                        return Ok(Flow::Halt(self.violation(
                            Some(index),
                            Some(iteration),
                            label,
                        )));
                    }
                }
            }
        }

        let checks = if self.opts.mode.checks_blocks() {
            self.evaluate(block.fulfills[block.fulfills.len() - 1] + 1)?
        } else {
            Vec::new()
        };
        let failed = first_failure(&checks);
        self.record(Checkpoint::BlockEnd, Some(index), None, checks);
        Ok(match failed {
            Some(label) => Flow::Halt(self.violation(Some(index), None, label)),
            None => Flow::Continue,
        })
    }

    /// Evaluates `inv` then the first `upto` subgoals, stopping at the first
    /// failure.
    fn evaluate(&self, upto: usize) -> Result<Vec<CheckResult>> {
        let plan = self.spec.plan();
        let preds =
            std::iter::once(&plan.inv).chain(plan.subgoals[..upto].iter().map(|sg| sg.predicate()));
        self.evaluate_all(preds)
    }

    fn evaluate_all<'p>(
        &self,
        preds: impl Iterator<Item = &'p Predicate>,
    ) -> Result<Vec<CheckResult>> {
        let mut out = Vec::new();
        for p in preds {
            let holds = p.eval(self.params, &self.state)?;
            out.push(CheckResult {
                label: p.label().to_owned(),
                holds,
            });
            if !holds {
                break;
            }
        }
        Ok(out)
    }

    fn check_final(&mut self) -> Result<Option<ViolationReport>> {
        let checks = if self.opts.mode.checks_blocks() {
            let plan = self.spec.plan();
            self.evaluate_all([&plan.post, &plan.inv].into_iter())?
        } else {
            Vec::new()
        };
        let failed = first_failure(&checks);
        self.record(Checkpoint::RunEnd, None, None, checks);
        Ok(failed.map(|label| self.violation(None, None, label)))
    }

    fn record(
        &mut self,
        kind: Checkpoint,
        block: Option<usize>,
        iteration: Option<u64>,
        checks: Vec<CheckResult>,
    ) {
        if self.opts.trace == TraceLevel::None {
            return;
        }
        self.trace.push(TraceEvent {
            seq: self.seq,
            kind,
            block,
            iteration,
            checks,
            counters: self.ops.snapshot(),
        });
        self.seq += 1;
    }

    fn violation(
        &self,
        block: Option<usize>,
        iteration: Option<u64>,
        failed: String,
    ) -> ViolationReport {
        ViolationReport {
            procedure: self.spec.name().to_owned(),
            block,
            iteration,
            failed,
            state: self.state.clone(),
        }
    }

    fn finish(self, violation: Option<ViolationReport>, short_circuited: bool) -> RunReport {
        let result = match violation {
            Some(_) => None,
            None => self.spec.result_of(&self.state),
        };
        RunReport {
            procedure: self.spec.name().to_owned(),
            mode: self.opts.mode,
            params: self.params.clone(),
            final_state: self.state,
            result,
            counters: self.ops.snapshot(),
            trace: self.trace,
            violation,
            block_iterations: self.block_iterations,
            short_circuited,
        }
    }
}

fn first_failure(checks: &[CheckResult]) -> Option<String> {
    checks.iter().find(|c| !c.holds).map(|c| c.label.clone())
}
