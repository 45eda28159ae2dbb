//! Algorithm plans, their code blocks, and the machinery that runs and
//! checks them.

mod check;
mod exec;
mod plan;
mod spec;

pub use check::{
    check_plan_sufficiency, check_pragmatic, DomainBounds, Role, Sufficiency, VarBound, VarRange,
    DEFAULT_BUDGET,
};
pub use exec::{
    run_procedure, run_procedure_with, CheckMode, CheckResult, Checkpoint, RunOptions, RunReport,
    TraceEvent, TraceLevel, ViolationReport,
};
pub use plan::{evaluate_subgoal, AlgorithmPlan, Predicate, Subgoal};
pub use spec::{
    Block, BlockKind, Guard, IterationCap, ProcedureBuilder, ProcedureSpec, ShortCircuit, Transform,
};
